#include "lazard/operations.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "lazard/errors.hpp"
#include "lazard/fgl.hpp"

namespace lazard {

namespace {

Integer power_of(int p, int k) { return ipow(p, static_cast<unsigned>(k)); }

int bp_generator_count(int p, int codegree, int at_least) {
  int k = 0;
  for (Integer pk = p; pk - 1 <= codegree; pk *= p) ++k;
  return std::max({k, at_least, 1});
}

RingPtr laurent_bp_ring(int p, int codegree, int n_max) {
  return bp_ring(p, codegree, bp_generator_count(p, codegree, n_max), "t");
}

Integer binomial(int n, int k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void require_homogeneous(const Poly& lambda, const char* where) {
  if (!lambda.is_zero() && !lambda.homogeneous_degree()) {
    throw PreconditionError(std::string(where) + " needs a homogeneous element");
  }
  if (lambda.has_laurent_terms()) throw ShapeError(std::string(where) + " takes an element of BP");
}

int degree_of(const Poly& lambda) { return lambda.is_zero() ? 0 : *lambda.homogeneous_degree(); }

void require_prime(int p, const Poly& lambda) {
  if (p < 2 || !mpz_probab_prime_p(Integer(p).get_mpz_t(), 25)) throw ShapeError("p must be prime");
  if (lambda.ring()->prime() && *lambda.ring()->prime() != p) throw ShapeError("element lives at another prime");
}

// Images of the generators of lambda's ring, taken from 'images' (v_1, v_2, ...).
std::vector<Poly> generator_images(const Poly& lambda, const RingPtr& target,
                                   const std::vector<Poly>& images) {
  std::vector<Poly> out;
  for (const auto& g : lambda.ring()->generators()) {
    if (g.name.size() < 2 || g.name[0] != 'v') throw ShapeError("expected generators v1, v2, ...");
    std::size_t i = std::stoul(g.name.substr(1));
    if (i >= 1 && i <= images.size()) {
      out.push_back(images[i - 1].with_ring(target));
    } else {
      out.emplace_back(target);
    }
  }
  return out;
}

std::string codegree_hint(int d) { return "codegree >= " + std::to_string(d); }

std::mutex cache_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const LaurentSeries>> exp_cache;
std::map<std::tuple<int, int, Representatives>, std::shared_ptr<const SteenrodImages>> st_cache;
std::map<std::pair<int, int>, LaurentSeries> bracket_cache;
std::map<std::pair<int, int>, std::vector<Poly>> ln_cache;

std::shared_ptr<const LaurentSeries> compute_bp_exp(int p, int codegree) {
  RingPtr ring = laurent_bp_ring(p, codegree, 1);
  int order = codegree + 1;
  return std::make_shared<const LaurentSeries>(reversion(bp_log(ring, p, order), order));
}

// [i](t) and the series F(y, [i](t)) through y^order, over BP[t, 1/t].
LaurentSeries sum_with_point(const RingPtr& ring, const LaurentSeries& exp, const Poly& log_t,
                             const LaurentSeries& log_y, int i, int order) {
  const int m_max = exp.hi();
  Poly w = log_t * Rational(i);
  std::vector<Poly> wp{Poly::constant(ring, 1)};
  for (int k = 1; k <= m_max; ++k) wp.push_back(wp.back() * w);
  // e(w + z) = sum_r (sum_m C(m, r) e_m w^(m-r)) z^r with z = log(y).
  std::vector<Poly> taylor;
  for (int r = 0; r <= order; ++r) {
    Poly acc(ring);
    for (int m = std::max(r, 1); m <= m_max; ++m) {
      const Poly& em = exp.coeff(m);
      if (em.is_zero()) continue;
      acc += em * wp[static_cast<std::size_t>(m - r)] * Rational(binomial(m, r));
    }
    taylor.push_back(std::move(acc));
  }
  LaurentSeries result = LaurentSeries::constant("y", taylor[0], order);
  LaurentSeries power = LaurentSeries::constant("y", Poly::constant(ring, 1), order);
  for (int r = 1; r <= order; ++r) {
    power = mul_capped(power, log_y, order);
    result = result + power * taylor[static_cast<std::size_t>(r)];
  }
  return result;
}

std::shared_ptr<const SteenrodImages> compute_steenrod_images(int p, int n_max, int codegree,
                                                              Representatives reps) {
  RingPtr ring = laurent_bp_ring(p, codegree, n_max);
  const int order = static_cast<int>(power_of(p, n_max).get_si());
  auto exp = bp_exp(p, codegree);
  LaurentSeries e = exp->change_ring(ring);
  int kmax = 0;
  while (power_of(p, kmax + 1) <= std::max(order, codegree + 1)) ++kmax;
  auto l = bp_log_coefficients(ring, p, kmax);
  Poly log_t(ring);
  for (int k = 0; k <= kmax; ++k) {
    log_t += l[static_cast<std::size_t>(k)] * Poly::laurent(ring, static_cast<int>(power_of(p, k).get_si()));
  }
  LaurentSeries log_y = bp_log(ring, p, order, "y");

  // gamma(y) = y * prod_i F(y, [i](t)); Q = gamma / y.
  LaurentSeries q = LaurentSeries::constant("y", Poly::constant(ring, 1), order);
  for (int i : steenrod_representatives(p, reps)) {
    q = mul_capped(q, sum_with_point(ring, e, log_t, log_y, i, order), order);
  }
  Poly c = q.coeff(0);
  LaurentSeries q_inv = inverse(q, order - 1);
  LaurentSeries dlog = derivative(log_y);

  // Lagrange inversion: [X^m] log(gamma^-1(X)) = (1/m) [y^(m-1)] log'(y) (y/gamma(y))^m.
  LaurentSeries twisted_log("x", ring, 0, order);
  std::vector<Poly> coeffs(static_cast<std::size_t>(order + 1), Poly(ring));
  coeffs[1] = Poly::constant(ring, 1);
  for (int k = 1; k <= n_max; ++k) {
    int m = static_cast<int>(power_of(p, k).get_si());
    LaurentSeries pw = pow(q_inv, static_cast<unsigned>(m), m - 1);
    Poly lk = mul_capped(dlog, pw, m - 1).coeff(m - 1) * c * Rational(1, m);
    coeffs[static_cast<std::size_t>(m)] = std::move(lk);
  }
  LaurentSeries typical = LaurentSeries::from_coefficients("x", ring, 0, std::move(coeffs), order);
  auto images = hazewinkel_images(typical, p, n_max);
  for (int n = 1; n <= n_max; ++n) {
    const Poly& v = images[static_cast<std::size_t>(n - 1)];
    Integer deg = p * (1 - power_of(p, n));
    if (!v.is_zero() && !v.is_homogeneous_of(static_cast<int>(deg.get_si()))) {
      throw ConsistencyError("St(v" + std::to_string(n) + ") is not homogeneous");
    }
    if (!v.is_p_integral(p)) throw IntegralityViolation(0, v.to_string());
  }
  return std::make_shared<const SteenrodImages>(SteenrodImages{p, codegree, ring, std::move(images)});
}

LaurentSeries compute_bracket(int p, int codegree) {
  RingPtr ring = laurent_bp_ring(p, codegree, 1);
  auto exp = bp_exp(p, codegree);
  LaurentSeries e = exp->change_ring(ring);
  int kmax = 0;
  while (power_of(p, kmax + 1) <= codegree + 1) ++kmax;
  auto l = bp_log_coefficients(ring, p, kmax);
  Poly w(ring);
  for (int k = 0; k <= kmax; ++k) {
    w += l[static_cast<std::size_t>(k)] * Poly::laurent(ring, static_cast<int>(power_of(p, k).get_si()));
  }
  w = w * Rational(p);
  // Horner evaluation of e at p * log(t).
  Poly acc(ring);
  for (int m = e.hi(); m >= 1; --m) acc = (acc + e.coeff(m)) * w;
  RingPtr plain = with_laurent(ring, std::nullopt);
  return laurent_from_poly(acc.shift_laurent(-1), plain, "t", 0, codegree);
}

std::vector<Poly> compute_ln_images(int p, int n_max) {
  const int order = static_cast<int>(power_of(p, n_max).get_si());
  const int codegree = order - 1;
  RingPtr bp = bp_ring(p, codegree, n_max);
  std::vector<Generator> bs;
  for (int i = 1; i <= codegree; ++i) bs.push_back({"b" + std::to_string(i), -i});
  RingPtr ring = extend_ring(bp, bs, RingLabel::BP, codegree);
  // gamma(y) = y (1 + sum b_i y^i).
  std::vector<Poly> qc{Poly::constant(ring, 1)};
  for (int i = 1; i < order; ++i) qc.push_back(Poly::generator(ring, "b" + std::to_string(i)));
  LaurentSeries q = LaurentSeries::from_coefficients("y", ring, 0, std::move(qc), order - 1);
  LaurentSeries q_inv = inverse(q, order - 1);
  LaurentSeries log_y = bp_log(ring, p, order, "y");
  LaurentSeries dlog = derivative(log_y);
  std::vector<Poly> coeffs(static_cast<std::size_t>(order + 1), Poly(ring));
  coeffs[1] = Poly::constant(ring, 1);
  for (int k = 1; k <= n_max; ++k) {
    int m = static_cast<int>(power_of(p, k).get_si());
    LaurentSeries pw = pow(q_inv, static_cast<unsigned>(m), m - 1);
    coeffs[static_cast<std::size_t>(m)] = mul_capped(dlog, pw, m - 1).coeff(m - 1) * Rational(1, m);
  }
  LaurentSeries typical = LaurentSeries::from_coefficients("x", ring, 0, std::move(coeffs), order);
  auto images = hazewinkel_images(typical, p, n_max);
  std::vector<Poly> zero_b;
  for (const auto& g : ring->generators()) {
    zero_b.push_back(g.name[0] == 'b' ? Poly(bp) : Poly::generator(bp, g.name));
  }
  for (int n = 1; n <= n_max; ++n) {
    const Poly& v = images[static_cast<std::size_t>(n - 1)];
    if (!v.is_homogeneous_of(static_cast<int>(1 - power_of(p, n).get_si()))) {
      throw ConsistencyError("S(v" + std::to_string(n) + ") is not homogeneous");
    }
    if (!v.is_p_integral(p)) throw IntegralityViolation(0, v.to_string());
    if (!(substitute(v, bp, zero_b) == Poly::generator(bp, "v" + std::to_string(n)))) {
      throw ConsistencyError("counit fails on S(v" + std::to_string(n) + ")");
    }
  }
  return images;
}

}  // namespace

std::shared_ptr<const LaurentSeries> bp_exp(int p, int codegree) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = exp_cache[{p, codegree}];
  if (!slot) slot = compute_bp_exp(p, codegree);
  return slot;
}

std::shared_ptr<const SteenrodImages> steenrod_images(int p, int n_max, int codegree,
                                                      Representatives reps) {
  const auto key = std::make_tuple(p, codegree, reps);
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = st_cache.find(key);
    if (it != st_cache.end() && static_cast<int>(it->second->images.size()) >= n_max) return it->second;
  }
  auto fresh = compute_steenrod_images(p, n_max, codegree, reps);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = st_cache[key];
  if (!slot || slot->images.size() < fresh->images.size()) slot = fresh;
  return slot;
}

LaurentSeries bp_bracket_p_series(int p, int codegree) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = bracket_cache.find({p, codegree});
    if (it != bracket_cache.end()) return it->second;
  }
  LaurentSeries b = compute_bracket(p, codegree);
  std::lock_guard<std::mutex> lock(cache_mutex);
  bracket_cache.insert_or_assign({p, codegree}, b);
  return b;
}

std::vector<int> steenrod_representatives(int p, Representatives reps) {
  std::vector<int> out;
  if (reps == Representatives::Positive || p == 2) {
    for (int j = 1; j < p; ++j) out.push_back(j);
  } else {
    for (int j = 1; 2 * j < p; ++j) {
      out.push_back(j);
      out.push_back(-j);
    }
  }
  return out;
}

long steenrod_unit(int p, Representatives reps) {
  long f = 1;
  for (int j : steenrod_representatives(p, reps)) f *= j;
  return f;
}

int highest_v_index(const Poly& lambda) {
  int n = 0;
  const auto& gens = lambda.ring()->generators();
  for (const auto& t : lambda.terms()) {
    for (std::size_t i = 0; i < gens.size(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (gens[i].name.size() < 2 || gens[i].name[0] != 'v') throw ShapeError("expected generators v1, v2, ...");
      n = std::max(n, std::stoi(gens[i].name.substr(1)));
    }
  }
  return n;
}

LaurentSeries steenrod_point(int p, const Poly& lambda, OpWindow w, Representatives reps) {
  require_prime(p, lambda);
  require_homogeneous(lambda, "St");
  const int d = degree_of(lambda);
  int codegree = w.codegree ? *w.codegree : (w.t_hi ? *w.t_hi - p * d : -p * d);
  if (codegree < -d) {
    throw TruncationError("codegree " + std::to_string(codegree) + " cannot hold an element of degree " +
                              std::to_string(d),
                          codegree_hint(-p * d));
  }
  int n = highest_v_index(lambda);
  RingPtr ring;
  Poly value(lambda.ring());
  if (n == 0) {
    ring = laurent_bp_ring(p, codegree, 1);
    value = change_ring(lambda, ring);
  } else {
    auto st = steenrod_images(p, n, codegree, reps);
    ring = st->ring;
    value = substitute(lambda, ring, generator_images(lambda, ring, st->images));
  }
  if (!value.is_zero() && !value.is_homogeneous_of(p * d)) throw ConsistencyError("St is not homogeneous");
  RingPtr plain = with_laurent(ring, std::nullopt);
  return laurent_from_poly(value, plain, "t", p * d, p * d + codegree);
}

LaurentSeries phi_total(int p, const Poly& lambda, OpWindow w, Representatives reps) {
  require_prime(p, lambda);
  require_homogeneous(lambda, "Phi");
  const int d = degree_of(lambda);
  int codegree = w.codegree ? *w.codegree : (w.t_hi ? std::max(*w.t_hi, 0) - p * d : -p * d);
  if (codegree < -p * d) {
    throw TruncationError("Phi needs coefficient degrees down to " + std::to_string(p * d),
                          codegree_hint(-p * d));
  }
  LaurentSeries st = steenrod_point(p, lambda, OpWindow{codegree, std::nullopt}, reps);
  const RingPtr& ring = st.ring();
  Poly lp = change_ring(lambda, ring).pow(static_cast<unsigned>(p));
  LaurentSeries n = (LaurentSeries::constant("t", lp) - st).restricted(p * d, 0);
  LaurentSeries bracket = bp_bracket_p_series(p, codegree);
  LaurentSeries phi = divide_nonpositive(n, bracket.change_ring(ring), p);
  if (!phi.homogeneous_of(p * d)) throw ConsistencyError("Phi is not homogeneous");
  return phi;
}

Poly phi_slice(int p, const Poly& lambda, int m, OpWindow w, Representatives reps) {
  LaurentSeries phi = phi_total(p, lambda, w, reps);
  if (m > 0) return Poly(phi.ring());
  return phi.coeff(m);
}

LaurentSeries act_phi_on_class(int p, const Poly& lambda, int r, OpWindow w, Representatives reps) {
  if (r < 0) throw PreconditionError("class degree must be nonnegative");
  LaurentSeries phi = phi_total(p, lambda, w, reps);
  int cut = -r * (p - 1);
  Rational scale(ipow(steenrod_unit(p, reps), static_cast<unsigned>(r)));
  return phi.restricted(phi.lo(), cut).shifted(-cut) * scale;
}

Poly ln_coaction_b_model(const Poly& f) {
  const RingPtr& src = f.ring();
  int k = 0;
  for (const auto& g : src->generators()) {
    if (g.name != "b" + std::to_string(-g.degree)) throw ShapeError("expected a ring Z[b1, ..., bk]");
    k = std::max(k, -g.degree);
  }
  int codegree = std::max(src->codegree(), k);
  RingPtr ring = b_model_ring(k, codegree, {"", "'"});
  const int order = k + 1;
  std::vector<Poly> bc{Poly(ring), Poly::constant(ring, 1)}, gc = bc;
  for (int i = 1; i <= k; ++i) {
    bc.push_back(Poly::generator(ring, "b" + std::to_string(i)));
    gc.push_back(Poly::generator(ring, "b" + std::to_string(i) + "'"));
  }
  LaurentSeries big_b = LaurentSeries::from_coefficients("t", ring, 0, std::move(bc), order);
  LaurentSeries gamma = LaurentSeries::from_coefficients("t", ring, 0, std::move(gc), order);
  LaurentSeries composed = compose(gamma, big_b, order);
  std::vector<Poly> images;
  for (const auto& g : src->generators()) images.push_back(composed.coeff(-g.degree + 1));
  return substitute(f, ring, images);
}

std::vector<Poly> ln_images_bp(int p, int n_max) {
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    for (const auto& [key, imgs] : ln_cache) {
      if (key.first == p && key.second >= n_max) {
        return std::vector<Poly>(imgs.begin(), imgs.begin() + n_max);
      }
    }
  }
  auto images = compute_ln_images(p, n_max);
  std::lock_guard<std::mutex> lock(cache_mutex);
  ln_cache.insert_or_assign({p, n_max}, images);
  return images;
}

Poly ln_total_bp(int p, const Poly& lambda, OpWindow w) {
  require_prime(p, lambda);
  require_homogeneous(lambda, "S");
  const int d = degree_of(lambda);
  int codegree = w.codegree ? *w.codegree : -d;
  if (codegree < -d) throw TruncationError("codegree too small for S", codegree_hint(-d));
  int n = std::max(highest_v_index(lambda), 1);
  auto images = ln_images_bp(p, n);
  RingPtr base = images.front().ring();
  RingPtr ring = with_codegree(base, std::max(codegree, base->codegree()));
  Poly value = substitute(lambda, ring, generator_images(lambda, ring, images));
  if (!value.is_zero() && !value.is_homogeneous_of(d)) throw ConsistencyError("S is not homogeneous");
  return value;
}

Poly act_ln_on_class(int p, const Poly& lambda, OpWindow w) { return ln_total_bp(p, lambda, w); }

}  // namespace lazard
