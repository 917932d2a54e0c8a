#include <map>

#include "doctest.h"
#include "lazard/errors.hpp"
#include "lazard/series.hpp"
#include "lazard/text.hpp"

using namespace lazard;

namespace {

RingPtr qring() { return scalar_ring(CoefficientDomain::Rational); }

LaurentSeries series(const RingPtr& r, const std::map<int, std::string>& coeffs, int hi = LaurentSeries::kUnbounded) {
  const int lo = coeffs.empty() ? 0 : std::min(0, coeffs.begin()->first);
  LaurentSeries s(std::string("t"), r, lo, hi);
  for (const auto& [k, c] : coeffs) s = s + LaurentSeries::monomial("t", parse_poly(c, r), k, hi);
  return s;
}

Rational q(long n, long d = 1) {
  Rational x(n, d);
  x.canonicalize();
  return x;
}

Rational scalar(const LaurentSeries& s, int k) { return *s.coeff(k).constant_value(); }

Integer binomial(long n, long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

}  // namespace

TEST_CASE("products of Laurent series") {
  RingPtr r = qring();
  CHECK(series(r, {{1, "1"}}) * series(r, {{-1, "1"}}) == series(r, {{0, "1"}}));
  CHECK(series(r, {{0, "2"}, {1, "1"}}) * series(r, {{-1, "1"}}) == series(r, {{-1, "2"}, {0, "1"}}));
  RingPtr b = b_model_ring(2, 6);
  CHECK(series(b, {{0, "1"}, {1, "b1"}}) * series(b, {{0, "1"}, {1, "-b1"}}) == series(b, {{0, "1"}, {2, "-b1^2"}}));
}

TEST_CASE("products agree with a schoolbook convolution") {
  RingPtr r = qring();
  std::vector<long> f{3, -1, 4, 1, -5}, g{2, 7, -1, 8};
  LaurentSeries sf(std::string("t"), r), sg(std::string("t"), r);
  for (std::size_t i = 0; i < f.size(); ++i) sf = sf + LaurentSeries::monomial("t", Poly::constant(r, f[i]), static_cast<int>(i) - 2);
  for (std::size_t i = 0; i < g.size(); ++i) sg = sg + LaurentSeries::monomial("t", Poly::constant(r, g[i]), static_cast<int>(i) + 1);
  LaurentSeries prod = sf * sg;
  for (std::size_t k = 0; k + 1 < f.size() + g.size(); ++k) {
    long c = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (k >= i && k - i < g.size()) c += f[i] * g[k - i];
    }
    CHECK(scalar(prod, static_cast<int>(k) - 1) == q(c));
  }
}

TEST_CASE("composition examples") {
  RingPtr r = qring();
  LaurentSeries t = series(r, {{1, "1"}});
  CHECK(compose(series(r, {{1, "1"}, {2, "1"}}), t) == series(r, {{1, "1"}, {2, "1"}}));
  CHECK(compose(series(r, {{2, "1"}}), series(r, {{1, "1"}, {3, "1"}})) == series(r, {{2, "1"}, {4, "2"}, {6, "1"}}));
  CHECK(compose(series(r, {{-1, "1"}}), series(r, {{1, "2"}})) == series(r, {{-1, "1/2"}}));
}

TEST_CASE("reversion matches Lagrange inversion") {
  RingPtr r = qring();
  LaurentSeries f = series(r, {{1, "1"}, {2, "1"}}, 12);
  LaurentSeries g = reversion(f, 12);
  // Inverse of t + t^2: coefficient of t^n is (-1)^(n-1) Catalan(n-1).
  for (int n = 1; n <= 12; ++n) {
    Integer catalan = binomial(2 * (n - 1), n - 1) / n;
    CHECK(scalar(g, n) == Rational(n % 2 ? catalan : Integer(-catalan)));
  }
  CHECK(reversion(series(r, {{1, "1"}}, 6), 6) == series(r, {{1, "1"}}, 6));
  RingPtr b = b_model_ring(3, 3);
  LaurentSeries h = reversion(series(b, {{1, "1"}, {2, "b1"}}, 3), 3);
  CHECK(h == series(b, {{1, "1"}, {2, "-b1"}, {3, "2*b1^2"}}, 3));
}

TEST_CASE("reversion is a two-sided compositional inverse") {
  RingPtr b = b_model_ring(4, 8);
  LaurentSeries f = series(b, {{1, "1"}, {2, "b1"}, {3, "b2 - b1^2"}, {4, "3*b3"}, {5, "b4"}}, 8);
  LaurentSeries g = reversion(f, 8);
  LaurentSeries t = series(b, {{1, "1"}}, 8);
  CHECK(compose(f, g, 8) == t);
  CHECK(compose(g, f, 8) == t);
  CHECK(g.homogeneous_of(1));
}

TEST_CASE("reversion needs an invertible linear coefficient") {
  RingPtr b = b_model_ring(2, 4);
  CHECK_THROWS_AS(reversion(series(b, {{1, "2"}, {2, "b1"}}, 4), 4), NotInvertible);
  CHECK_THROWS_AS(reversion(series(b, {{2, "1"}}, 4), 4), NotInvertible);
}

TEST_CASE("forward-substitution division") {
  RingPtr r = scalar_ring(CoefficientDomain::PLocal, 2);
  LaurentSeries n = series(r, {{-1, "4"}, {0, "2"}});
  LaurentSeries p = series(r, {{0, "2"}, {1, "1"}});
  LaurentSeries phi = divide_nonpositive(n, p, 2);
  CHECK(scalar(phi, -1) == 2);
  CHECK(phi.coeff(0).is_zero());
  CHECK(divide_nonpositive(series(r, {}), p, 2).is_zero());
  try {
    divide_nonpositive(series(r, {{0, "1"}}), p, 2);
    FAIL("expected an integrality violation");
  } catch (const IntegralityViolation& e) {
    CHECK(e.exponent() == 0);
  }
}

TEST_CASE("division inverts multiplication on nonpositive exponents") {
  RingPtr c = bp_ring(3, 30, 2);
  LaurentSeries p = series(c, {{0, "3"}, {2, "-8*v1"}, {4, "v1^2"}});
  LaurentSeries phi = series(c, {{-6, "1"}, {-4, "-v1"}, {-2, "5*v1^2"}, {0, "v2 - 2*v1^4"}});
  LaurentSeries n = (p * phi).restricted(-6, 0);
  LaurentSeries back = divide_nonpositive(n, p, 3);
  CHECK(back == phi.restricted(-6, 0));
  CHECK((p * back).restricted(-6, 0) == n);
}

TEST_CASE("homogeneity is preserved") {
  RingPtr b = b_model_ring(3, 8);
  LaurentSeries f = series(b, {{1, "1"}, {2, "b1"}, {3, "b2"}}, 6);
  LaurentSeries g = series(b, {{2, "b1"}, {3, "b1^2 - b2"}}, 6);
  REQUIRE(f.homogeneous_of(1));
  REQUIRE(g.homogeneous_of(1));
  CHECK((f * g).homogeneous_of(2));
  CHECK(compose(g, f, 6).homogeneous_of(1));
  CHECK_FALSE(series(b, {{1, "1"}, {2, "1"}}).homogeneous_of(1));
}

TEST_CASE("larger windows agree on the overlap") {
  RingPtr b = b_model_ring(4, 10);
  LaurentSeries f6 = series(b, {{1, "1"}, {2, "b1"}, {3, "b2"}}, 6);
  LaurentSeries f10 = series(b, {{1, "1"}, {2, "b1"}, {3, "b2"}}, 10);
  CHECK(agree_on_overlap(reversion(f6, 6), reversion(f10, 10)));
  CHECK(agree_on_overlap(inverse(series(b, {{0, "1"}, {1, "b1"}}, 6)), inverse(series(b, {{0, "1"}, {1, "b1"}}, 10))));
  CHECK_THROWS_AS(reversion(f6, 6).coeff(7), TruncationError);
}

TEST_CASE("exponential of a logarithm") {
  RingPtr r = qring();
  LaurentSeries x = series(r, {{1, "1"}}, 8);
  LaurentSeries e = exp_series(x, 8);
  Integer fact = 1;
  for (int k = 0; k <= 8; ++k) {
    if (k > 0) fact *= k;
    CHECK(scalar(e, k) == Rational(Integer(1), fact));
  }
}
