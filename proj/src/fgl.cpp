#include "lazard/fgl.hpp"

#include <algorithm>

#include "lazard/errors.hpp"

namespace lazard {

namespace {

const std::vector<std::string> kXY{"x", "y"};
const std::vector<std::string> kXYZ{"x", "y", "z"};

Integer power_of(int p, int k) { return ipow(p, static_cast<unsigned>(k)); }

// v^e in the ring, or zero if it cannot survive the codegree bound.
Poly generator_power(const RingPtr& ring, std::size_t idx, const Integer& e) {
  Integer deg = e * ring->generators()[idx].degree;
  if (deg < -ring->codegree()) return Poly(ring);
  return Poly::generator(ring, idx, static_cast<unsigned>(e.get_ui()));
}

void check_law_domain(const MultiSeries& law) {
  for (const auto& [e, c] : law.terms()) c.check_domain();
}

}  // namespace

AxiomReport check_axioms(const FormalGroupLaw& f) {
  AxiomReport r;
  const auto& F = f.law;
  const int n = f.order;
  // F(x, 0) = x and F(0, y) = y.
  Poly one = Poly::constant(f.ring, 1);
  int axis_terms = 0;
  r.unit = true;
  for (const auto& [e, c] : F.terms()) {
    if (e[0] != 0 && e[1] != 0) continue;
    ++axis_terms;
    if (!(total_degree(e) == 1 && c == one)) r.unit = false;
  }
  r.unit = r.unit && axis_terms == (n >= 1 ? 2 : 0);
  r.symmetric = F.permuted({1, 0}) == F;
  MultiSeries fxy = F.embedded(kXYZ, {0, 1});
  MultiSeries fyz = F.embedded(kXYZ, {1, 2});
  MultiSeries X = MultiSeries::variable(kXYZ, f.ring, n, 0);
  MultiSeries Z = MultiSeries::variable(kXYZ, f.ring, n, 2);
  r.associative = compose_bivariate(F, fxy, Z) == compose_bivariate(F, X, fyz);
  return r;
}

FormalGroupLaw law_from_log(std::string name, const LaurentSeries& log, int order,
                            std::optional<LaurentSeries> exp) {
  if (log.hi() < order) throw TruncationError("logarithm too short", "order <= " + std::to_string(log.hi()));
  LaurentSeries e = exp ? *exp : reversion(log, order);
  MultiSeries z = MultiSeries::from_univariate(kXY, 0, log, order) +
                  MultiSeries::from_univariate(kXY, 1, log, order);
  MultiSeries law = compose_univariate(e, z);
  check_law_domain(law);
  FormalGroupLaw f{std::move(name), log.ring(), order, std::move(law), log.with_hi(order)};
  if (!check_axioms(f).ok()) throw ConsistencyError("formal group law axioms fail for " + f.name);
  return f;
}

FormalGroupLaw universal_fgl(int num_b, int order) {
  if (num_b < 1 || order < 1) throw ShapeError("universal law needs at least one generator");
  RingPtr ring = b_model_ring(num_b, std::max(order - 1, 0));
  std::vector<Poly> b{Poly(ring), Poly::constant(ring, 1)};
  for (int i = 1; i + 1 <= order; ++i) {
    b.push_back(i <= num_b ? Poly::generator(ring, static_cast<std::size_t>(i - 1)) : Poly(ring));
  }
  LaurentSeries big_b = LaurentSeries::from_coefficients("x", ring, 0, b, order);
  LaurentSeries log = reversion(big_b, order);
  return law_from_log("universal", log, order, big_b);
}

std::vector<Poly> bp_log_coefficients(const RingPtr& ring, int p, int kmax) {
  std::vector<Poly> l{Poly::constant(ring, 1)};
  for (int n = 1; n <= kmax; ++n) {
    Poly acc(ring);
    for (int i = 0; i < n; ++i) {
      auto idx = ring->index_of("v" + std::to_string(n - i));
      if (!idx) continue;
      acc += l[static_cast<std::size_t>(i)] * generator_power(ring, *idx, power_of(p, i));
    }
    l.push_back(acc * Rational(1, p));
  }
  return l;
}

LaurentSeries bp_log(const RingPtr& ring, int p, int order, const std::string& var) {
  int kmax = 0;
  while (power_of(p, kmax + 1) <= order) ++kmax;
  auto l = bp_log_coefficients(ring, p, kmax);
  std::vector<Poly> c(static_cast<std::size_t>(order + 1), Poly(ring));
  for (int k = 0; k <= kmax; ++k) c[power_of(p, k).get_ui()] = l[static_cast<std::size_t>(k)];
  return LaurentSeries::from_coefficients(var, ring, 0, std::move(c), order);
}

FormalGroupLaw bp_fgl(int p, int order) {
  RingPtr ring = bp_ring(p, std::max(order - 1, 0));
  return law_from_log("BP", bp_log(ring, p, order), order);
}

FormalGroupLaw additive_fgl(const RingPtr& ring, int order) {
  LaurentSeries log = LaurentSeries::variable("x", ring, order);
  return law_from_log("additive", log, order, log);
}

FormalGroupLaw multiplicative_fgl(int order, bool graded) {
  RingPtr ring = graded ? make_ring(RingLabel::Custom, std::nullopt, {{"beta", -1}},
                                    CoefficientDomain::Integer, std::max(order - 1, 0))
                        : scalar_ring(CoefficientDomain::Integer);
  std::vector<Poly> c{Poly(ring)};
  for (int i = 1; i <= order; ++i) {
    if (graded) {
      // log of x + y + beta*x*y is sum (-beta)^(i-1) x^i / i.
      Poly b = Poly::generator(ring, std::size_t{0}).pow(static_cast<unsigned>(i - 1));
      c.push_back(b * Rational((i % 2 == 1) ? 1 : -1, i));
    } else {
      c.push_back(Poly::constant(ring, Rational(1, i)));
    }
  }
  LaurentSeries log = LaurentSeries::from_coefficients("x", ring, 0, std::move(c), order);
  return law_from_log(graded ? "multiplicative-graded" : "multiplicative", log, order);
}

FormalGroupLaw ck1_fgl(int p, int order) {
  RingPtr ring = ck1_ring(p, std::max(order - 1, 0));
  std::vector<Poly> c(static_cast<std::size_t>(order + 1), Poly(ring));
  for (int i = 0; power_of(p, i) <= order; ++i) {
    Integer pi = power_of(p, i);
    Integer e = (pi - 1) / (p - 1);
    c[pi.get_ui()] = generator_power(ring, 0, e) * Rational(Integer(1), pi);
  }
  LaurentSeries log = LaurentSeries::from_coefficients("x", ring, 0, std::move(c), order);
  return law_from_log("CK1", log, order);
}

LaurentSeries log_from_law(const FormalGroupLaw& f) {
  if (f.log) return *f.log;
  // log'(x) = 1 / (dF/dy)(x, 0).
  std::vector<Poly> d(static_cast<std::size_t>(f.order), Poly(f.ring));
  for (const auto& [e, c] : f.law.terms()) {
    if (e[1] == 1 && e[0] < f.order) d[static_cast<std::size_t>(e[0])] = c;
  }
  LaurentSeries dy = LaurentSeries::from_coefficients("x", f.ring, 0, std::move(d), f.order - 1);
  LaurentSeries inv = inverse(dy);
  std::vector<Poly> c{Poly(f.ring)};
  for (int k = 0; k < f.order; ++k) c.push_back(inv.coeff(k) * Rational(1, k + 1));
  return LaurentSeries::from_coefficients("x", f.ring, 0, std::move(c), f.order);
}

LaurentSeries exp_of(const FormalGroupLaw& f) { return reversion(log_from_law(f), f.order); }

LaurentSeries n_series(const FormalGroupLaw& f, long n, const std::string& var) {
  LaurentSeries log = log_from_law(f);
  LaurentSeries e = reversion(log, f.order);
  LaurentSeries inner = (log * Rational(n)).with_var(var);
  return compose(e.with_var(var), inner, f.order);
}

LaurentSeries bracket_p(const FormalGroupLaw& f, int p, const std::string& var) {
  return n_series(f, p, var).shifted(-1);
}

MultiSeries formal_sum(const FormalGroupLaw& f, const MultiSeries& a, const MultiSeries& b) {
  return compose_bivariate(f.law.change_ring(a.ring()), a, b);
}

MultiSeries formal_sum(const FormalGroupLaw& f, const LaurentSeries& a, const LaurentSeries& b) {
  int order = std::min({f.order, a.hi(), b.hi()});
  if (a.var() == b.var()) {
    std::vector<std::string> v{a.var()};
    return formal_sum(f, MultiSeries::from_univariate(v, 0, a, order),
                      MultiSeries::from_univariate(v, 0, b, order));
  }
  std::vector<std::string> v{a.var(), b.var()};
  return formal_sum(f, MultiSeries::from_univariate(v, 0, a, order),
                    MultiSeries::from_univariate(v, 1, b, order));
}

FormalGroupLaw twist(const FormalGroupLaw& f, const LaurentSeries& gamma) {
  const RingPtr& ring = gamma.ring();
  int order = std::min(f.order, gamma.hi());
  if (gamma.lo() > 1 || !gamma.coeff(0).is_zero()) throw PreconditionError("gamma must have zero constant term");
  LaurentSeries g = gamma.with_var("x");
  LaurentSeries ginv = reversion(g, order);
  MultiSeries base = f.law.change_ring(ring);
  MultiSeries u = MultiSeries::from_univariate(kXY, 0, ginv, order);
  MultiSeries v = MultiSeries::from_univariate(kXY, 1, ginv, order);
  MultiSeries law = compose_univariate(g, compose_bivariate(base, u, v));
  LaurentSeries log = compose(log_from_law(f).change_ring(ring), ginv, order) * g.coeff(1);
  return FormalGroupLaw{f.name + "-twisted", ring, order, std::move(law), log};
}

Typification p_typify(const FormalGroupLaw& f, int p) {
  if (f.ring->prime() && *f.ring->prime() != p) {
    throw Unsupported("p-typification at " + std::to_string(p) + " of a law over a " +
                      std::to_string(*f.ring->prime()) + "-local ring");
  }
  LaurentSeries log = log_from_law(f);
  std::vector<Poly> c(static_cast<std::size_t>(f.order + 1), Poly(f.ring));
  bool typical = true;
  for (int k : log.support()) {
    if (k > f.order) break;
    Integer pk = 1;
    while (pk < k) pk *= p;
    if (pk == k) {
      c[static_cast<std::size_t>(k)] = log.coeff(k);
    } else {
      typical = false;
    }
  }
  LaurentSeries identity = LaurentSeries::variable("x", f.ring, f.order);
  if (typical) return {f, identity};
  RingPtr ring = f.ring->domain() == CoefficientDomain::Integer
                     ? with_domain(f.ring, CoefficientDomain::PLocal, p)
                     : f.ring;
  for (auto& x : c) x = x.with_ring(ring);
  LaurentSeries typ_log = LaurentSeries::from_coefficients("x", ring, 0, std::move(c), f.order);
  FormalGroupLaw law = law_from_log(f.name + "-typical", typ_log, f.order);
  LaurentSeries iso = compose(reversion(typ_log, f.order), log.change_ring(ring), f.order);
  return {std::move(law), std::move(iso)};
}

std::vector<Poly> hazewinkel_images(const LaurentSeries& log, int p, int n_max) {
  std::vector<Poly> l;
  Integer pk = 1;
  for (int k : log.support()) {
    Integer q = 1;
    while (q < k) q *= p;
    if (q != k) throw ShapeError("logarithm is not p-typical (term of degree " + std::to_string(k) + ")");
  }
  if (!(log.coeff(1) == Poly::constant(log.ring(), 1))) throw ShapeError("logarithm must be normalised");
  for (int k = 0; k <= n_max; ++k, pk *= p) {
    if (!pk.fits_sint_p()) throw ShapeError("index too large");
    l.push_back(log.coeff(static_cast<int>(pk.get_si())));
  }
  std::vector<Poly> v;
  for (int n = 1; n <= n_max; ++n) {
    Poly acc = l[static_cast<std::size_t>(n)] * Rational(p);
    for (int i = 1; i < n; ++i) {
      acc -= l[static_cast<std::size_t>(i)] *
             v[static_cast<std::size_t>(n - i - 1)].pow(static_cast<unsigned>(power_of(p, i).get_ui()));
    }
    v.push_back(std::move(acc));
  }
  return v;
}

LaurentSeries artin_hasse(int p, int order) {
  RingPtr ring = scalar_ring(CoefficientDomain::PLocal, p);
  std::vector<Poly> c(static_cast<std::size_t>(order + 1), Poly(ring));
  for (Integer q = 1; q <= order; q *= p) c[q.get_ui()] = Poly::constant(ring, Rational(Integer(1), q));
  LaurentSeries e = exp_series(LaurentSeries::from_coefficients("x", ring, 0, std::move(c), order));
  for (int k : e.support()) {
    if (!e.coeff(k).is_p_integral(p)) {
      throw ConsistencyError("Artin-Hasse coefficient " + e.coeff(k).to_string() + " is not p-integral");
    }
  }
  return e;
}

}  // namespace lazard
