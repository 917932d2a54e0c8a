#pragma once

#include <string>
#include <vector>

#include "lazard/ideal.hpp"
#include "lazard/operations.hpp"
#include "lazard/report.hpp"

namespace lazard {

// u = p^k0 * v_1^k1 * ... (up to a unit).
struct PMonomial {
  int k0 = 0;
  std::vector<int> k;  // k[i] is the exponent of v_(i+1)
  int degree(int p) const;
};

PMonomial decompose_monomial(const Poly& u, int p);

// St(v_n) - v_n t^(-(p-1)(p^n-1)) lies in I(n), coefficientwise in t.
CheckReport verify_st_vn(int p, int n, OpWindow w = {});

// Phi_{(p-1)deg(lambda) - (p^n-1)}(lambda) = -u v_n^(i-1) mod J_{n-1}(u), lambda = u v_n^i.
CheckReport verify_phi_division(int p, int n, const Poly& u, int i, OpWindow w = {});

// Phi_m(u lambda) = u Phi_{m-(p-1)deg u}(lambda) mod J_{n-1}(u) for each valid m.
std::vector<CheckReport> verify_phi_linearity(int p, int n, const Poly& u, const Poly& lambda,
                                              OpWindow w = {});

// S(v_n) = v_n mod I(n).
CheckReport verify_ln_vn(int p, int n);

// S(u) = u mod J_n(u).
CheckReport verify_ln_linearity(int p, int n, const Poly& u);

// Counit and coassociativity of the b-model coaction on b_1..b_k.
CheckReport verify_hopf_axioms(int k = 4);

// [p](t)/t mod I(n) starts with a unit times v_n t^(p^n-1).
CheckReport verify_bracket_p(int p, int n);

// Phi(lambda) recomputed with twice the codegree agrees on the common window and
// every coefficient is p-integral.
CheckReport verify_phi_window_stability(int p, const Poly& lambda);

}  // namespace lazard
