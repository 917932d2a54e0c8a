#include "lazard/verify.hpp"

#include <algorithm>

#include "lazard/errors.hpp"

namespace lazard {

namespace {

using nlohmann::json;

int prime_power(int p, int k) { return static_cast<int>(ipow(p, static_cast<unsigned>(k)).get_si()); }

// Invariant-prime degree |v_n| = 1 - p^n.
int v_degree(int p, int n) { return 1 - prime_power(p, n); }

int v_index(const std::string& name) {
  if (name.size() < 2 || name[0] != 'v') throw ShapeError("expected generators v1, v2, ...: " + name);
  return std::stoi(name.substr(1));
}

RingPtr ideal_ring(int p, int num_v) { return bp_ring(p, kMaxCodegree, std::max(num_v, 1)); }

Poly v_power(const RingPtr& ring, int n, int k) {
  if (k == 0) return Poly::constant(ring, 1);
  return Poly::generator(ring, "v" + std::to_string(n), static_cast<unsigned>(k));
}

MonomialIdeal j_ideal(int p, const PMonomial& u, int n) {
  std::vector<int> ks(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < u.k.size() && i < ks.size(); ++i) ks[i] = u.k[i];
  return MonomialIdeal::linearity_ideal(ideal_ring(p, n), u.k0, ks);
}

// Every t-coefficient of f lies in the ideal.
bool series_in(const MonomialIdeal& ideal, const LaurentSeries& f) {
  for (int k : f.support()) {
    if (!ideal.contains(f.coeff(k))) return false;
  }
  return true;
}

json window_json(std::optional<int> codegree, std::optional<int> t_lo, std::optional<int> t_hi) {
  json w = json::object();
  if (codegree) w["codegree"] = *codegree;
  if (t_lo) w["t_lo"] = *t_lo;
  if (t_hi) w["t_hi"] = *t_hi;
  return w;
}

}  // namespace

int PMonomial::degree(int p) const {
  int d = 0;
  for (std::size_t i = 0; i < k.size(); ++i) d += k[i] * v_degree(p, static_cast<int>(i) + 1);
  return d;
}

PMonomial decompose_monomial(const Poly& u, int p) {
  if (u.size() != 1) throw ShapeError("expected a monomial, got " + u.to_string());
  const Term& term = u.terms().front();
  if (term.mono.t != 0) throw ShapeError("monomial must not involve the Laurent variable");
  if (!is_p_integral(term.coeff, p)) throw ShapeError("monomial coefficient must be p-integral");
  PMonomial out;
  out.k0 = static_cast<int>(p_valuation(term.coeff, p));
  const auto& gens = u.ring()->generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (term.mono.exp[i] == 0) continue;
    int n = v_index(gens[i].name);
    if (static_cast<int>(out.k.size()) < n) out.k.resize(static_cast<std::size_t>(n), 0);
    out.k[static_cast<std::size_t>(n - 1)] = term.mono.exp[i];
  }
  return out;
}

CheckReport verify_st_vn(int p, int n, OpWindow w) {
  if (n < 1) throw PreconditionError("n must be positive");
  const int d = v_degree(p, n);
  const int t_hi = w.t_hi.value_or(p * p);
  const int codegree = w.codegree.value_or(t_hi - p * d);
  RingPtr ring = bp_ring(p, std::max(codegree, -d), n);
  Poly vn = Poly::generator(ring, "v" + std::to_string(n));
  LaurentSeries st = steenrod_point(p, vn, OpWindow{codegree, std::nullopt});
  const int shift = (p - 1) * d;
  LaurentSeries expected = LaurentSeries::monomial("t", change_ring(vn, st.ring()), shift, st.hi());
  LaurentSeries diff = st - expected;
  MonomialIdeal ideal = MonomialIdeal::invariant_prime(ideal_ring(p, n), n);

  CheckReport r;
  r.claim_id = "st_vn";
  r.params = {{"p", p}, {"n", n}};
  r.lhs = st.to_string();
  r.rhs = expected.to_string();
  r.modulus_ideal = ideal.to_string();
  r.member = series_in(ideal, diff);
  r.window = window_json(codegree, st.lo(), st.hi());
  r.exact = !st.truncation_touched();
  return r;
}

CheckReport verify_phi_division(int p, int n, const Poly& u, int i, OpWindow w) {
  if (n < 1 || i < 1) throw PreconditionError("need n >= 1 and i >= 1");
  PMonomial um = decompose_monomial(u, p);
  if (static_cast<int>(um.k.size()) > n - 1) {
    throw PreconditionError("u may only involve p, v1, ..., v" + std::to_string(n - 1));
  }
  const int deg_lambda = um.degree(p) + i * v_degree(p, n);
  const int m = (p - 1) * deg_lambda - (prime_power(p, n) - 1);
  const int codegree = w.codegree.value_or(-p * deg_lambda);
  RingPtr ring = bp_ring(p, std::max(codegree, 0), n);
  Poly base = change_ring(u, ring);
  Poly lambda = base * v_power(ring, n, i);
  LaurentSeries phi = phi_total(p, lambda, OpWindow{codegree, std::nullopt});
  Poly lhs = phi.coeff(m);
  Poly rhs = -change_ring(base * v_power(ring, n, i - 1), lhs.ring());
  MonomialIdeal ideal = j_ideal(p, um, n - 1);

  CheckReport r;
  r.claim_id = "phi_divide";
  r.params = {{"p", p}, {"n", n}, {"u", u.to_string()}, {"i", i}, {"slice", m}};
  r.lhs = lhs.to_string();
  r.rhs = rhs.to_string();
  r.modulus_ideal = ideal.to_string();
  r.member = ideal.contains(lhs - rhs);
  r.window = window_json(codegree, phi.lo(), phi.hi());
  r.exact = !phi.truncation_touched() && m >= phi.lo() && m <= phi.hi();
  return r;
}

std::vector<CheckReport> verify_phi_linearity(int p, int n, const Poly& u, const Poly& lambda, OpWindow w) {
  if (n < 1) throw PreconditionError("n must be positive");
  PMonomial um = decompose_monomial(u, p);
  if (static_cast<int>(um.k.size()) > n - 1) {
    throw PreconditionError("u may only involve p, v1, ..., v" + std::to_string(n - 1));
  }
  if (lambda.size() > 1 || (!lambda.is_zero() && !lambda.homogeneous_degree())) {
    throw PreconditionError("lambda must be a homogeneous monomial");
  }
  const int deg_u = um.degree(p);
  const int deg_lambda = lambda.is_zero() ? 0 : *lambda.homogeneous_degree();
  const int top = (p - 1) * deg_u - (prime_power(p, n - 1) - 1) - 1;
  const int bottom = p * (deg_u + deg_lambda);
  const int codegree = w.codegree.value_or(-bottom);
  const int num_v = std::max(n, highest_v_index(lambda));
  RingPtr ring = bp_ring(p, std::max(codegree, 0), num_v);
  Poly uu = change_ring(u, ring);
  Poly ll = change_ring(lambda, ring);
  LaurentSeries phi_prod = phi_total(p, uu * ll, OpWindow{codegree, std::nullopt});
  LaurentSeries phi_lambda = phi_total(p, ll, OpWindow{codegree, std::nullopt});
  const RingPtr& common = phi_prod.ring();
  Poly u_common = change_ring(uu, common);
  MonomialIdeal ideal = j_ideal(p, um, n - 1);

  std::vector<CheckReport> out;
  for (int m = bottom; m <= top; ++m) {
    const int m2 = m - (p - 1) * deg_u;
    Poly lhs = phi_prod.coeff(m);
    Poly rhs = u_common * phi_lambda.coeff(m2).with_ring(common);
    CheckReport r;
    r.claim_id = "phi_linear";
    r.params = {{"p", p}, {"n", n}, {"u", u.to_string()}, {"lambda", lambda.to_string()}, {"slice", m}};
    r.lhs = lhs.to_string();
    r.rhs = rhs.to_string();
    r.modulus_ideal = ideal.to_string();
    r.member = ideal.contains(lhs - rhs);
    r.window = window_json(codegree, bottom, top);
    r.exact = !phi_prod.truncation_touched() && !phi_lambda.truncation_touched();
    out.push_back(std::move(r));
  }
  return out;
}

CheckReport verify_ln_vn(int p, int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  RingPtr ring = bp_ring(p, -v_degree(p, n), n);
  Poly vn = Poly::generator(ring, "v" + std::to_string(n));
  Poly s = ln_total_bp(p, vn);
  Poly rhs = change_ring(vn, s.ring());
  MonomialIdeal ideal = MonomialIdeal::invariant_prime(ideal_ring(p, n), n);

  CheckReport r;
  r.claim_id = "ln_vn";
  r.params = {{"p", p}, {"n", n}};
  r.lhs = s.to_string();
  r.rhs = rhs.to_string();
  r.modulus_ideal = ideal.to_string();
  r.member = ideal.contains(s - rhs);
  r.window = window_json(s.ring()->codegree(), std::nullopt, std::nullopt);
  r.exact = !s.truncated();
  return r;
}

CheckReport verify_ln_linearity(int p, int n, const Poly& u) {
  if (n < 1) throw PreconditionError("n must be positive");
  PMonomial um = decompose_monomial(u, p);
  if (static_cast<int>(um.k.size()) > n) {
    throw PreconditionError("u may only involve p, v1, ..., v" + std::to_string(n));
  }
  Poly s = ln_total_bp(p, u);
  Poly rhs = change_ring(u, s.ring());
  MonomialIdeal ideal = j_ideal(p, um, n);

  CheckReport r;
  r.claim_id = "ln_linear";
  r.params = {{"p", p}, {"n", n}, {"u", u.to_string()}};
  r.lhs = s.to_string();
  r.rhs = rhs.to_string();
  r.modulus_ideal = ideal.to_string();
  r.member = ideal.contains(s - rhs);
  r.window = window_json(s.ring()->codegree(), std::nullopt, std::nullopt);
  r.exact = !s.truncated();
  return r;
}

CheckReport verify_hopf_axioms(int k) {
  if (k < 1) throw PreconditionError("need at least one generator");
  RingPtr one = b_model_ring(k, k);
  RingPtr two = b_model_ring(k, k, {"", "'"});
  RingPtr three = b_model_ring(k, k, {"", "'", "''"});
  auto b = [](int i, const std::string& s) { return "b" + std::to_string(i) + s; };

  std::vector<Poly> psi;
  for (int i = 1; i <= k; ++i) psi.push_back(ln_coaction_b_model(Poly::generator(one, b(i, ""))));

  // psi(b) with (b, b') renamed to (b', b'') inside the triple ring.
  std::vector<Poly> psi_shifted, counit_images;
  {
    std::vector<Poly> rename;
    for (int i = 1; i <= k; ++i) rename.push_back(Poly::generator(three, b(i, "'")));
    for (int i = 1; i <= k; ++i) rename.push_back(Poly::generator(three, b(i, "''")));
    for (const auto& f : psi) psi_shifted.push_back(substitute(f.with_ring(two), three, rename));
  }
  std::vector<Poly> side_a_images, side_b_images;
  for (int i = 1; i <= k; ++i) {
    side_a_images.push_back(Poly::generator(three, b(i, "")));
    side_b_images.push_back(change_ring(psi[static_cast<std::size_t>(i - 1)], three));
    counit_images.push_back(Poly::generator(one, b(i, "")));
  }
  for (int i = 1; i <= k; ++i) {
    side_a_images.push_back(psi_shifted[static_cast<std::size_t>(i - 1)]);
    side_b_images.push_back(Poly::generator(three, b(i, "''")));
    counit_images.emplace_back(one);
  }

  bool counit = true, coassoc = true;
  std::string lhs, rhs;
  for (int i = 1; i <= k; ++i) {
    const Poly f = psi[static_cast<std::size_t>(i - 1)].with_ring(two);
    counit = counit && substitute(f, one, counit_images) == Poly::generator(one, b(i, ""));
    Poly a = substitute(f, three, side_a_images);
    Poly c = substitute(f, three, side_b_images);
    coassoc = coassoc && a == c;
    if (i == k) {
      lhs = a.to_string();
      rhs = c.to_string();
    }
  }
  CheckReport r;
  r.claim_id = "hopf";
  r.params = {{"k", k}, {"counit", counit}, {"coassociative", coassoc}};
  r.lhs = lhs;
  r.rhs = rhs;
  r.modulus_ideal = "0";
  r.member = counit && coassoc;
  r.window = window_json(k, std::nullopt, std::nullopt);
  r.exact = true;
  return r;
}

CheckReport verify_bracket_p(int p, int n) {
  if (n < 1) throw PreconditionError("n must be positive");
  const int target = prime_power(p, n) - 1;
  LaurentSeries bracket = bp_bracket_p_series(p, target);
  MonomialIdeal ideal = MonomialIdeal::invariant_prime(ideal_ring(p, n), n);
  std::optional<int> lowest;
  Poly lead(bracket.ring());
  for (int k = 0; k <= bracket.hi(); ++k) {
    Poly c = ideal.normal_form(bracket.coeff(k));
    if (!c.is_zero()) {
      lowest = k;
      lead = c;
      break;
    }
  }
  Poly vn = Poly::generator(bracket.ring(), "v" + std::to_string(n));
  CheckReport r;
  r.claim_id = "pseries";
  r.params = {{"p", p}, {"n", n}, {"lowest_exponent", lowest ? json(*lowest) : json(nullptr)}};
  r.lhs = lead.to_string();
  r.rhs = vn.to_string();
  r.modulus_ideal = ideal.to_string();
  r.member = lowest == target && lead == vn;
  r.window = window_json(target, 0, bracket.hi());
  r.exact = !bracket.truncation_touched();
  return r;
}

CheckReport verify_phi_window_stability(int p, const Poly& lambda) {
  const int d = lambda.is_zero() ? 0 : lambda.homogeneous_degree().value_or(0);
  const int base = -p * d;
  const int doubled = std::max(2 * base, 2 * p);
  if (doubled > kMaxCodegree) throw TruncationError("doubled window exceeds the codegree limit", "smaller element");
  LaurentSeries small = phi_total(p, lambda, OpWindow{base, std::nullopt});
  LaurentSeries big = phi_total(p, lambda, OpWindow{doubled, std::nullopt});
  bool agree = true, integral = true;
  for (int m = std::min(small.lo(), big.lo()); m <= 0; ++m) {
    const Poly& a = small.coeff(m);
    const Poly& b = big.coeff(m);
    integral = integral && a.is_p_integral(p) && b.is_p_integral(p);
    agree = agree && change_ring(a, b.ring()) == b;
  }
  CheckReport r;
  r.claim_id = "phi_window";
  r.params = {{"p", p}, {"lambda", lambda.to_string()}, {"integral", integral}, {"agree", agree}};
  r.lhs = small.to_string();
  r.rhs = big.to_string();
  r.modulus_ideal = "0";
  r.member = agree && integral;
  r.window = window_json(base, small.lo(), 0);
  r.window["doubled_codegree"] = doubled;
  r.exact = !small.truncation_touched() && !big.truncation_touched();
  return r;
}

}  // namespace lazard
