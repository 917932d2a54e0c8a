#include "doctest.h"
#include "lazard/errors.hpp"
#include "lazard/fgl.hpp"
#include "lazard/ideal.hpp"
#include "lazard/operations.hpp"
#include "lazard/text.hpp"
#include "lazard/verify.hpp"

using namespace lazard;

namespace {

RingPtr bp(int p, int n = 3) { return bp_ring(p, kMaxCodegree, n); }

Poly P(const std::string& s, int p, int n = 3) { return parse_poly(s, bp(p, n)); }

// Reduce a coefficient modulo an ideal written in the same ring.
Poly mod(const Poly& f, const std::string& ideal) { return parse_ideal(ideal, f.ring()).normal_form(f); }

bool in_ideal(const Poly& f, const std::string& ideal) { return parse_ideal(ideal, f.ring()).contains(f); }

// The same text read in the ring of 'like'.
Poly as(const std::string& s, const Poly& like) { return parse_poly(s, like.ring()); }

}  // namespace

TEST_CASE("representatives and their product") {
  CHECK(steenrod_representatives(2, Representatives::Symmetric) == std::vector<int>{1});
  CHECK(steenrod_representatives(5, Representatives::Symmetric) == std::vector<int>{1, -1, 2, -2});
  CHECK(steenrod_representatives(5, Representatives::Positive) == std::vector<int>{1, 2, 3, 4});
  CHECK(steenrod_unit(3) == -1);
  CHECK(steenrod_unit(5, Representatives::Positive) == 24);
}

TEST_CASE("St is multiplicative and fixes scalars") {
  CHECK(steenrod_point(2, P("1", 2)).restricted(-8, 0).to_string() == "1 + O(t^1)");
  CHECK(steenrod_point(3, P("3", 3)).restricted(-8, 0).to_string() == "3 + O(t^1)");
  LaurentSeries a = steenrod_point(2, P("v1", 2), OpWindow{12, std::nullopt});
  LaurentSeries b = steenrod_point(2, P("v1^2", 2), OpWindow{12, std::nullopt});
  CHECK(agree_on_overlap(a * a, b));
}

TEST_CASE("St(v_n) reduces to a shifted v_n modulo I(n)") {
  LaurentSeries s1 = steenrod_point(2, P("v1", 2));
  CHECK(mod(s1.coeff(-1), "2") == as("v1", s1.coeff(-1)));
  for (int k : s1.support()) {
    if (k != -1) CHECK(in_ideal(s1.coeff(k), "2"));
  }
  LaurentSeries s2 = steenrod_point(2, P("v2", 2));
  CHECK(mod(s2.coeff(-3), "2, v1") == as("v2", s2.coeff(-3)));
  for (int k : s2.support()) {
    if (k != -3) CHECK(in_ideal(s2.coeff(k), "2, v1"));
  }
  for (auto [p, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) CHECK(verify_st_vn(p, n).member);
}

TEST_CASE("St and Phi are homogeneous of p times the input degree") {
  for (const std::string e : {"v1", "v1^2", "2*v1", "v2"}) {
    Poly l = P(e, 2);
    const int d = *l.homogeneous_degree();
    CHECK(steenrod_point(2, l).homogeneous_of(2 * d));
    CHECK(phi_total(2, l).homogeneous_of(2 * d));
  }
  CHECK(phi_total(3, P("v1", 3)).homogeneous_of(3 * -2));
}

TEST_CASE("Phi on scalars") {
  CHECK(phi_total(2, P("1", 2)).is_zero());
  CHECK(phi_slice(2, P("1", 2), -1).is_zero());
  // Forward substitution at t^0: p * Phi_0 = p^p - p.
  CHECK(phi_slice(2, P("2", 2), 0).to_string() == "1");
  CHECK(phi_slice(3, P("3", 3), 0).to_string() == "8");
  CHECK(phi_slice(5, P("5", 5), 0).to_string() == "624");
}

TEST_CASE("Phi slices satisfy the division congruence") {
  CHECK(mod(phi_slice(2, P("v1", 2), -2), "2").to_string() == "1");
  Poly a = phi_slice(2, P("v1^2", 2), -3);
  CHECK(mod(a + as("v1", a), "2").is_zero());
  Poly b = phi_slice(2, P("2*v1", 2), -2);
  CHECK(in_ideal(b + as("2", b), "4"));
  Poly c = phi_slice(3, P("v1", 3), -6);
  CHECK(in_ideal(c + as("1", c), "3"));
  CHECK(verify_phi_division(2, 2, P("v1", 2), 1).member);
  CHECK(verify_phi_division(3, 2, P("9", 3), 2).member);
}

TEST_CASE("Phi defines lambda^p - St(lambda) on nonpositive exponents") {
  for (const std::string e : {"v1", "v1^3", "2*v1^2"}) {
    Poly l = P(e, 2);
    LaurentSeries phi = phi_total(2, l);
    const int lo = phi.lo();
    LaurentSeries bracket = bp_bracket_p_series(2, -2 * *l.homogeneous_degree());
    bracket = bracket.change_ring(phi.ring());
    LaurentSeries st = steenrod_point(2, l).change_ring(phi.ring());
    LaurentSeries lhs = LaurentSeries::constant("t", l * l).change_ring(phi.ring()) - st;
    CHECK(agree_on_overlap((bracket * phi).restricted(lo, 0), lhs.restricted(lo, 0)));
  }
}

TEST_CASE("negative slices are additive and linear in scalars") {
  Poly a = P("v1^2", 2);
  Poly b = P("3*v1^2", 2);
  for (int m = -3; m < 0; ++m) {
    CHECK(phi_slice(2, a + b, m) == phi_slice(2, a, m) + phi_slice(2, b, m));
  }
  CHECK(in_ideal(phi_slice(2, P("2*v1", 2), -2) - phi_slice(2, P("v1", 2), -2) * Rational(2), "4"));
  for (const auto& r : verify_phi_linearity(2, 2, P("v1", 2), P("v2", 2))) CHECK(r.member);
}

TEST_CASE("Phi is p-integral and stable under a larger window") {
  CHECK(verify_phi_window_stability(2, P("v1^2", 2)).member);
  CHECK(verify_phi_window_stability(3, P("v1*v2", 3)).member);
}

TEST_CASE("action of Phi on a class of positive degree") {
  CHECK(act_phi_on_class(2, P("1", 2), 1).is_zero());
  LaurentSeries r1 = act_phi_on_class(2, P("v1", 2), 1);
  CHECK(mod(r1.coeff(-1), "2").to_string() == "1");
  LaurentSeries r2 = act_phi_on_class(2, P("v1", 2), 2);
  CHECK(r2.support() == std::vector<int>{0});
  CHECK(r2.coeff(0) == phi_slice(2, P("v1", 2), -2));
}

TEST_CASE("b-model coaction") {
  RingPtr r = b_model_ring(3, 6, {"", "'"});
  CHECK(ln_coaction_b_model(parse_poly("b1", b_model_ring(3, 6))) == parse_poly("b1 + b1'", r));
  CHECK(ln_coaction_b_model(parse_poly("b2", b_model_ring(3, 6))) == parse_poly("b2 + 2*b1*b1' + b2'", r));
  CHECK(verify_hopf_axioms(4).member);
}

TEST_CASE("Landweber-Novikov operation on BP") {
  CHECK(ln_total_bp(2, P("2", 2)).to_string() == "2");
  CHECK(ln_total_bp(3, P("1", 3)).to_string() == "1");
  Poly s1 = ln_total_bp(2, P("v1", 2));
  // Dropping every b_i recovers the input.
  Poly counit = s1;
  for (const auto& t : s1.terms()) {
    bool has_b = false;
    for (std::size_t i = 0; i < s1.ring()->size(); ++i) {
      has_b = has_b || (s1.ring()->generators()[i].name[0] == 'b' && t.mono.exp[i] != 0);
    }
    if (has_b) counit -= Poly::monomial(s1.ring(), t.mono, t.coeff);
  }
  CHECK(counit.to_string() == "v1");
  CHECK(act_ln_on_class(2, P("v1", 2)) == s1);
  for (auto [p, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) CHECK(verify_ln_vn(p, n).member);
  CHECK(verify_ln_linearity(2, 1, P("2*v1", 2)).member);
  CHECK(verify_ln_linearity(2, 2, P("v1*v2", 2)).member);
}

TEST_CASE("p-series leading terms modulo I(n)") {
  for (auto [p, n] : {std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}}) CHECK(verify_bracket_p(p, n).member);
}
