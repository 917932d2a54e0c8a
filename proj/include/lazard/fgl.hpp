#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lazard/multiseries.hpp"
#include "lazard/series.hpp"

namespace lazard {

// A formal group law F(x, y) known through total degree 'order', with its
// logarithm (over the rationalised coefficients) when one is available.
struct FormalGroupLaw {
  std::string name;
  RingPtr ring;
  int order;
  MultiSeries law;
  std::optional<LaurentSeries> log;
};

struct AxiomReport {
  bool unit = false;
  bool symmetric = false;
  bool associative = false;
  bool ok() const { return unit && symmetric && associative; }
};

AxiomReport check_axioms(const FormalGroupLaw& f);

// F(x, y) = exp(log x + log y); the coefficients are checked against the ring's
// coefficient domain and the axioms are asserted.
FormalGroupLaw law_from_log(std::string name, const LaurentSeries& log, int order,
                            std::optional<LaurentSeries> exp = {});

// F = B(B^-1 x + B^-1 y) with B(t) = t + sum b_i t^(i+1). With fewer than
// order - 1 generators this is the specialisation b_i = 0 for the missing i.
FormalGroupLaw universal_fgl(int num_b, int order);
// p-typical law with logarithm sum l_k x^(p^k), p l_n = sum_{i<n} l_i v_(n-i)^(p^i).
FormalGroupLaw bp_fgl(int p, int order);
FormalGroupLaw additive_fgl(const RingPtr& ring, int order);
// x + y - xy over Z; the graded version x + y + beta*x*y has deg beta = -1.
FormalGroupLaw multiplicative_fgl(int order, bool graded = false);
FormalGroupLaw ck1_fgl(int p, int order);

// Logarithm l_0..l_kmax of the p-typical law over a BP ring; generators absent
// from the ring are treated as zero.
std::vector<Poly> bp_log_coefficients(const RingPtr& ring, int p, int kmax);
LaurentSeries bp_log(const RingPtr& ring, int p, int order, const std::string& var = "x");

LaurentSeries log_from_law(const FormalGroupLaw& f);
LaurentSeries exp_of(const FormalGroupLaw& f);

// [n](t).
LaurentSeries n_series(const FormalGroupLaw& f, long n, const std::string& var = "t");
// [p](t) / t.
LaurentSeries bracket_p(const FormalGroupLaw& f, int p, const std::string& var = "t");

MultiSeries formal_sum(const FormalGroupLaw& f, const MultiSeries& a, const MultiSeries& b);
// F(a, b) for two power series; if the variables differ the result is bivariate.
MultiSeries formal_sum(const FormalGroupLaw& f, const LaurentSeries& a, const LaurentSeries& b);

// gamma o F o gamma^-1; the logarithm is c * (log_F o gamma^-1) with c the linear
// coefficient of gamma, so that it is again normalised.
FormalGroupLaw twist(const FormalGroupLaw& f, const LaurentSeries& gamma);

struct Typification {
  FormalGroupLaw law;
  LaurentSeries iso;  // strict isomorphism from the input law to 'law'
};

// Cartier p-typification: keep the x^(p^k) terms of the logarithm.
Typification p_typify(const FormalGroupLaw& f, int p);

// Images of v_1..v_n_max under the classifying map of a p-typical logarithm.
std::vector<Poly> hazewinkel_images(const LaurentSeries& log, int p, int n_max);

// exp(sum_i x^(p^i) / p^i) over Z_(p); p-integrality is asserted.
LaurentSeries artin_hasse(int p, int order);

}  // namespace lazard
