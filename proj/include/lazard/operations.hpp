#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "lazard/series.hpp"

namespace lazard {

// Explicit computation window. When both fields are empty the smallest window
// that makes the requested values exact is used.
struct OpWindow {
  std::optional<int> codegree;  // coefficient degrees >= -codegree are kept
  std::optional<int> t_hi;      // highest power of t requested
};

// Residues i_j used in gamma_St(x) = x prod_j (x +_F [i_j](t)).
// Symmetric: 1, -1, 2, -2, ..., (p-1)/2, -(p-1)/2 (just 1 for p = 2).
// Positive: 1, 2, ..., p-1.
enum class Representatives { Symmetric, Positive };

std::vector<int> steenrod_representatives(int p, Representatives reps);
// Product of the representatives.
long steenrod_unit(int p, Representatives reps = Representatives::Symmetric);

// Images St(v_1), ..., St(v_n) in BP[t, 1/t] with coefficient degrees >= -codegree.
struct SteenrodImages {
  int p;
  int codegree;
  RingPtr ring;
  std::vector<Poly> images;
};

std::shared_ptr<const SteenrodImages> steenrod_images(int p, int n_max, int codegree,
                                                      Representatives reps = Representatives::Symmetric);

// Exponential of the p-typical logarithm over BP[t, 1/t], through x^(codegree+1).
std::shared_ptr<const LaurentSeries> bp_exp(int p, int codegree);

// [p](t)/t over BP, known through t^codegree.
LaurentSeries bp_bracket_p_series(int p, int codegree);

int highest_v_index(const Poly& lambda);

// Total Steenrod operation on a homogeneous element of BP; a Laurent series in t
// of total degree p * deg(lambda).
LaurentSeries steenrod_point(int p, const Poly& lambda, OpWindow w = {},
                             Representatives reps = Representatives::Symmetric);
// Phi(lambda) with lambda^p - St(lambda) = ([p](t)/t) * Phi(lambda) in exponents <= 0.
LaurentSeries phi_total(int p, const Poly& lambda, OpWindow w = {},
                        Representatives reps = Representatives::Symmetric);
Poly phi_slice(int p, const Poly& lambda, int m, OpWindow w = {},
               Representatives reps = Representatives::Symmetric);
// i^r t^(r(p-1)) Phi_{<= -r(p-1)}(lambda), the action on lambda * x for |x| = r.
LaurentSeries act_phi_on_class(int p, const Poly& lambda, int r, OpWindow w = {},
                               Representatives reps = Representatives::Symmetric);

// Landweber-Novikov total operation.
// b-model: psi(b_i) is the coefficient of t^(i+1) in gamma_b'(B(t)).
Poly ln_coaction_b_model(const Poly& f);
// S(v_1), ..., S(v_n) in BP (x) Z[b_1, b_2, ...].
std::vector<Poly> ln_images_bp(int p, int n_max);
Poly ln_total_bp(int p, const Poly& lambda, OpWindow w = {});
Poly act_ln_on_class(int p, const Poly& lambda, OpWindow w = {});

}  // namespace lazard
