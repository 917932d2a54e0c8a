#include <random>

#include "doctest.h"
#include "lazard/errors.hpp"
#include "lazard/ideal.hpp"
#include "lazard/text.hpp"

using namespace lazard;

namespace {

RingPtr bp2() { return bp_ring(2, 40, 3); }

Poly P(const std::string& s, const RingPtr& r) { return parse_poly(s, r); }
MonomialIdeal I(const std::string& s, const RingPtr& r) { return parse_ideal(s, r); }

// Valuation by repeated division, independent of the library helper.
int naive_valuation(long n, long p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// Term-by-term divisibility: some generator divides c * v^alpha.
bool naive_member(const Poly& f, const std::vector<std::pair<int, std::vector<int>>>& gens, long p) {
  for (const auto& t : f.terms()) {
    if (!is_integer(t.coeff)) return false;
    const long c = t.coeff.get_num().get_si();
    bool hit = false;
    for (const auto& [a, beta] : gens) {
      bool div = naive_valuation(c, p) >= a;
      for (std::size_t i = 0; i < beta.size() && div; ++i) div = beta[i] <= t.mono.exp[i];
      hit = hit || div;
    }
    if (!hit) return false;
  }
  return true;
}

IdealGenerator gen(int a, std::vector<int> v) { return IdealGenerator{a, std::move(v)}; }

}  // namespace

TEST_CASE("rationals stay in lowest terms and test p-integrality") {
  Rational q(6, -4);
  q.canonicalize();
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  CHECK(is_p_integral(Rational(5, 3), 2));
  CHECK_FALSE(is_p_integral(Rational(5, 6), 2));
  CHECK(p_valuation(Rational(12, 5), 2) == 2);
  CHECK(p_valuation(Rational(5, 12), 2) == -2);
  CHECK(residue_mod_prime_power(Rational(1, 3), 2, 2) == 3);  // 3 * 3 = 9 = 1 mod 4
}

TEST_CASE("monomial degrees follow the grading rules") {
  RingPtr r = bp_ring(2, 40, 2);
  CHECK(monomial_degree(std::vector<int>{1, 1}, *r) == -4);
  CHECK(monomial_degree(std::vector<int>{0, 0}, *r) == 0);
  RingPtr b = b_model_ring(3, 6);
  CHECK(monomial_degree(std::vector<int>{3, 0, 0}, *b) == -3);
  CHECK_THROWS_AS(monomial_degree(std::vector<int>{1}, *r), ShapeError);
  RingPtr r3 = bp_ring(3, 40, 2);
  CHECK(P("v2", r3).homogeneous_degree() == -8);
}

TEST_CASE("codegree bound drops low-degree terms and flags it") {
  RingPtr r = bp_ring(2, 3, 2);
  Poly f = P("v1^2 + v1^4", r);
  CHECK(f.to_string() == "v1^2");
  CHECK(f.truncated());
  CHECK_FALSE(P("v1^3", r).truncated());
}

TEST_CASE("ideal membership matches the spec examples") {
  RingPtr r = bp2();
  CHECK(I("2", r).contains(P("2*v1", r)));
  CHECK_FALSE(I("2, v1", r).contains(P("v2", r)));
  CHECK(I("2*v1", r).contains(P("4*v1 + 2*v1^2", r)));
  CHECK_FALSE(I("2*v1", r).contains(P("4 + 2*v1^2", r)));
  CHECK(I("p^2, p*v1^3, v2", r) == I("4, 2*v1^3, v2", r));
}

TEST_CASE("membership agrees with a term-by-term oracle") {
  RingPtr r = bp2();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> e(0, 3), c(-12, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<int, std::vector<int>>> gens;
    std::vector<IdealGenerator> igens;
    for (int g = 0; g < 2; ++g) {
      std::vector<int> v{e(rng), e(rng), e(rng) % 2};
      int a = e(rng);
      gens.emplace_back(a, v);
      igens.push_back(gen(a, v));
    }
    MonomialIdeal ideal(r, igens);
    Poly f(r);
    for (int k = 0; k < 3; ++k) {
      Monomial m;
      m.exp[0] = static_cast<std::uint8_t>(e(rng));
      m.exp[1] = static_cast<std::uint8_t>(e(rng));
      f += Poly::monomial(r, m, c(rng));
    }
    CHECK(ideal.contains(f) == naive_member(f, gens, 2));
  }
}

TEST_CASE("colon and sum follow the spec examples") {
  RingPtr r = bp2();
  CHECK(I("p^2", r).colon(1, std::vector<int>{0, 0, 0}) == I("p", r));
  CHECK(I("2, v1^2", r).colon(0, std::vector<int>{1, 0, 0}) == I("2, v1", r));
  CHECK(I("2, v1^2", r).colon(0, std::vector<int>{0, 0, 0}) == I("2, v1^2", r));
  CHECK(I("4", r) + I("2", r) == I("2", r));
  CHECK(I("2, v1^2", r) + I("v1", r) == I("2, v1", r));
  CHECK((I("2, v1^2", r) + MonomialIdeal::unit(r)).is_unit());
}

TEST_CASE("colon ideal is consistent with membership") {
  RingPtr r = bp2();
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> e(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    MonomialIdeal ideal(r, {gen(e(rng), {e(rng), e(rng), 0}), gen(e(rng), {e(rng), 0, e(rng)})});
    const int c = e(rng);
    std::vector<int> beta{e(rng), e(rng), 0};
    MonomialIdeal q = ideal.colon(c, beta);
    for (int a = 0; a <= 4; ++a) {
      for (int x = 0; x <= 4; ++x) {
        for (int y = 0; y <= 3; ++y) {
          std::vector<int> alpha{x, y, 0};
          std::vector<int> prod{x + beta[0], y + beta[1], 0};
          CHECK(ideal.contains_monomial(a + c, prod) == q.contains_monomial(a, alpha));
        }
      }
    }
  }
}

TEST_CASE("membership respects sums and multiples") {
  RingPtr r = bp2();
  MonomialIdeal ideal = I("4, 2*v1, v1^3*v2", r);
  Poly f = P("4*v1 + 2*v1^2", r);
  Poly g = P("6*v1 + v1^3*v2", r);
  REQUIRE(ideal.contains(f));
  REQUIRE(ideal.contains(g));
  CHECK(ideal.contains(f + g));
  CHECK(ideal.contains(f * P("v1 + 3*v2", r)));
  CHECK(ideal.contains(g * Rational(5)));
}

TEST_CASE("minimal form is idempotent and drops divisible generators") {
  RingPtr r = bp2();
  MonomialIdeal ideal(r, {gen(1, {0, 0, 0}), gen(2, {1, 0, 0}), gen(0, {2, 0, 0}), gen(0, {3, 1, 0})});
  CHECK(ideal.generators().size() == 2);
  MonomialIdeal again(r, ideal.generators());
  CHECK(again == ideal);
}

TEST_CASE("invariant primes are recognised") {
  RingPtr r = bp2();
  CHECK(I("p, v1", r).recognize_invariant_prime() == InRecognition{InRecognition::Kind::In, 2});
  CHECK(I("p", r).recognize_invariant_prime() == InRecognition{InRecognition::Kind::In, 1});
  CHECK(I("v1", r).recognize_invariant_prime().kind == InRecognition::Kind::NotOfForm);
  CHECK(I("p, v2", r).recognize_invariant_prime().kind == InRecognition::Kind::NotOfForm);
  CHECK(MonomialIdeal::zero(r).recognize_invariant_prime().kind == InRecognition::Kind::Zero);
  CHECK(MonomialIdeal::invariant_prime(r, 3) == I("2, v1, v2", r));
}

TEST_CASE("linearity ideals have the expected generators") {
  RingPtr r = bp2();
  std::vector<int> ks{2};
  // u = 2 v1^2: J_1(u) = (4, 2 v1^3).
  CHECK(MonomialIdeal::linearity_ideal(r, 1, ks) == I("4, 2*v1^3", r));
  std::vector<int> none;
  CHECK(MonomialIdeal::linearity_ideal(r, 0, none) == I("2", r));
}

TEST_CASE("normal form keeps residues in [0, p^a)") {
  RingPtr r = bp2();
  CHECK(I("2", r).normal_form(P("-v1 + 3*v2 + 4", r)) == P("v1 + v2", r));
  CHECK(I("4, v1", r).normal_form(P("-1 + v1 + 7*v2", r)) == P("3 + 3*v2", r));
}

TEST_CASE("parse and print round-trip") {
  RingPtr r = bp_ring(3, 60, 3);
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(0, 3), n(-9, 9), d(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    Poly f(r);
    for (int k = 0; k < 4; ++k) {
      Monomial m;
      for (int i = 0; i < 3; ++i) m.exp[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e(rng));
      f += Poly::monomial(r, m, Rational(n(rng), d(rng)));
    }
    const std::string text = f.to_string();
    Poly g = P(text, r);
    CHECK(g == f);
    CHECK(g.to_string() == text);
  }
  RingPtr id = bp_ring(3, 60, 3);
  for (const std::string s : {"p^2, p*v1^3, v2", "v1*v2, 9", "0"}) {
    MonomialIdeal ideal = I(s, id);
    CHECK(I(ideal.to_string(), id) == ideal);
  }
}

TEST_CASE("parse errors carry positions") {
  RingPtr r = bp2();
  try {
    P("v1 + * v2", r);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
  CHECK_THROWS_AS(P("v9", r), ParseError);
  CHECK_THROWS_AS(I("p, (v1)", r), ParseError);
  CHECK(P("2^3*v1", r) == P("8*v1", r));
}

TEST_CASE("units and inverses in the graded ring") {
  RingPtr r = bp_ring(2, 12, 2);
  Poly f = P("3 + v1", r);
  REQUIRE(f.is_unit());
  Poly g = f.inverse();
  CHECK(f * g == Poly::constant(r, 1));
  CHECK_FALSE(P("v1", r).is_unit());
  CHECK_THROWS_AS(P("v1", r).inverse(), NotInvertible);
}
