#include <vector>

#include "doctest.h"
#include "lazard/errors.hpp"
#include "lazard/fgl.hpp"
#include "lazard/ideal.hpp"
#include "lazard/text.hpp"

using namespace lazard;

namespace {

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational scalar(const LaurentSeries& s, int k) { return *s.coeff(k).constant_value(); }

// Coefficients of exp(sum_k x^(p^k) / p^k) from E' = E * sum_k x^(p^k - 1).
std::vector<Rational> artin_hasse_oracle(int p, int order) {
  std::vector<Rational> a(static_cast<std::size_t>(order) + 1);
  a[0] = 1;
  for (int n = 1; n <= order; ++n) {
    Rational s = 0;
    for (int q = 1; q <= n; q *= p) s += a[static_cast<std::size_t>(n - q)];
    a[static_cast<std::size_t>(n)] = s / n;
  }
  return a;
}

MultiSeries diagonal(const FormalGroupLaw& f, const LaurentSeries& u) {
  MultiSeries m = MultiSeries::from_univariate({"t"}, 0, u, f.order);
  return compose_bivariate(f.law, m, m);
}

}  // namespace

TEST_CASE("every constructed law satisfies the axioms") {
  CHECK(check_axioms(universal_fgl(3, 4)).ok());
  CHECK(check_axioms(universal_fgl(4, 6)).ok());
  CHECK(check_axioms(bp_fgl(2, 9)).ok());
  CHECK(check_axioms(bp_fgl(3, 10)).ok());
  CHECK(check_axioms(multiplicative_fgl(6)).ok());
  CHECK(check_axioms(multiplicative_fgl(6, true)).ok());
  CHECK(check_axioms(ck1_fgl(3, 7)).ok());
}

TEST_CASE("universal law at low order") {
  FormalGroupLaw f = universal_fgl(1, 2);
  CHECK(f.law.to_string() == "x + y + 2*b1*x*y");
}

TEST_CASE("exp and log are mutually inverse") {
  for (const FormalGroupLaw& f : {bp_fgl(2, 9), universal_fgl(4, 5), ck1_fgl(2, 8)}) {
    LaurentSeries lg = log_from_law(f);
    LaurentSeries ex = exp_of(f);
    LaurentSeries t = LaurentSeries::variable(lg.var(), lg.ring(), f.order);
    CHECK(compose(ex, lg, f.order) == t.with_hi(compose(ex, lg, f.order).hi()));
    CHECK(compose(lg, ex, f.order).restricted(0, f.order) == t.restricted(0, f.order));
  }
}

TEST_CASE("multiplicative n-series are binomial") {
  FormalGroupLaw f = multiplicative_fgl(7);
  for (long n : {2L, 3L, 5L}) {
    LaurentSeries s = n_series(f, n);
    for (int k = 1; k <= std::min<long>(n, 7); ++k) {
      Integer c = binomial(n, k);
      CHECK(scalar(s, k) == Rational(k % 2 ? c : Integer(-c)));
    }
  }
}

TEST_CASE("the two-series is the law on the diagonal") {
  for (const FormalGroupLaw& f : {bp_fgl(2, 8), universal_fgl(3, 5), multiplicative_fgl(6)}) {
    LaurentSeries one = n_series(f, 1);
    LaurentSeries two = n_series(f, 2);
    MultiSeries d = diagonal(f, one);
    for (int k = 1; k <= f.order; ++k) CHECK(d.coeff({k, 0, 0}) == two.coeff(k));
  }
}

TEST_CASE("n-series are additive under the law") {
  FormalGroupLaw f = bp_fgl(3, 10);
  LaurentSeries s1 = n_series(f, 1), s2 = n_series(f, 2), s3 = n_series(f, 3);
  MultiSeries a = MultiSeries::from_univariate({"t"}, 0, s1, f.order);
  MultiSeries b = MultiSeries::from_univariate({"t"}, 0, s2, f.order);
  MultiSeries sum = compose_bivariate(f.law, a, b);
  for (int k = 1; k <= f.order; ++k) CHECK(sum.coeff({k, 0, 0}) == s3.coeff(k));
}

TEST_CASE("p-typical logarithm coefficients follow the recursion") {
  for (int p : {2, 3}) {
    RingPtr r = bp_ring(p, 60, 2);
    std::vector<Poly> l = bp_log_coefficients(r, p, 2);
    const Rational ip(Integer(1), Integer(p));
    CHECK(l[0] == Poly::constant(r, 1));
    CHECK(l[1] == parse_poly("v1", r) * ip);
    CHECK(l[2] == parse_poly("v2", r) * ip + parse_poly("v1", r).pow(static_cast<unsigned>(p + 1)) * (ip * ip));
  }
}

TEST_CASE("p-series modulo p starts with v1") {
  for (int p : {2, 3}) {
    FormalGroupLaw f = bp_fgl(p, p * p + 1);
    LaurentSeries s = n_series(f, p);
    MonomialIdeal mod_p = MonomialIdeal::invariant_prime(f.ring, 1);
    for (int k = 1; k < p; ++k) CHECK(mod_p.contains(s.coeff(k)));
    CHECK(mod_p.normal_form(s.coeff(p)) == parse_poly("v1", f.ring));
  }
}

TEST_CASE("classifying images of a p-typical law are the generators") {
  for (int p : {2, 3}) {
    RingPtr r = bp_ring(p, 80, 3);
    std::vector<Poly> v = hazewinkel_images(bp_log(r, p, 30), p, 3);
    REQUIRE(v.size() == 3);
    CHECK(v[0] == parse_poly("v1", r));
    CHECK(v[1] == parse_poly("v2", r));
    CHECK(v[2] == parse_poly("v3", r));
  }
}

TEST_CASE("p-typification keeps only p-power logarithm terms and is idempotent") {
  FormalGroupLaw f = multiplicative_fgl(9);
  Typification once = p_typify(f, 2);
  REQUIRE(once.law.log);
  for (int k : once.law.log->support()) CHECK((k == 1 || k == 2 || k == 4 || k == 8));
  Typification twice = p_typify(once.law, 2);
  CHECK(twice.law.law == once.law.law);
  CHECK(check_axioms(once.law).ok());
}

TEST_CASE("Artin-Hasse exponential matches the derivative recursion") {
  for (int p : {2, 3, 5}) {
    LaurentSeries e = artin_hasse(p, 20);
    std::vector<Rational> oracle = artin_hasse_oracle(p, 20);
    for (int k = 0; k <= 20; ++k) {
      CHECK(scalar(e, k) == oracle[static_cast<std::size_t>(k)]);
      CHECK(is_p_integral(oracle[static_cast<std::size_t>(k)], p));
    }
  }
  CHECK(scalar(artin_hasse(2, 4), 2) == 1);
}

TEST_CASE("connective K-theory law") {
  for (int p : {2, 3}) {
    FormalGroupLaw f = ck1_fgl(p, p + 2);
    LaurentSeries lg = log_from_law(f);
    CHECK(lg.coeff(p) == parse_poly("v1", f.ring) * Rational(Integer(1), Integer(p)));
    for (int k = 2; k <= p + 2; ++k) {
      if (k != p && k != p * p) CHECK(lg.coeff(k).is_zero());
    }
  }
}
