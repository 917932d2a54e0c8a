#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lazard/polynomial.hpp"

namespace lazard {

// Laurent series in one variable with polynomial coefficients. The window
// [lo, hi] records what is known: coefficients below lo are zero, coefficients
// in [lo, hi] are exact, and nothing is claimed above hi. hi == kUnbounded marks
// a series known exactly (a Laurent polynomial).
class LaurentSeries {
 public:
  static constexpr int kUnbounded = 1 << 29;

  LaurentSeries(std::string var, RingPtr ring, int lo = 0, int hi = kUnbounded);
  static LaurentSeries from_coefficients(std::string var, RingPtr ring, int lo,
                                         std::vector<Poly> coeffs, int hi = kUnbounded);
  static LaurentSeries monomial(std::string var, const Poly& c, int k, int hi = kUnbounded);
  static LaurentSeries variable(std::string var, RingPtr ring, int hi = kUnbounded);
  static LaurentSeries constant(std::string var, const Poly& c, int hi = kUnbounded);

  const std::string& var() const { return var_; }
  const RingPtr& ring() const { return ring_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool bounded() const { return hi_ < kUnbounded; }
  // Set when an operation could not produce every coefficient it was asked for.
  bool truncation_touched() const { return touched_; }

  bool is_zero() const;
  std::optional<int> valuation() const;
  std::optional<int> top_exponent() const;
  // Lowest exponent that may be nonzero: the valuation, or hi + 1 for a zero series.
  int effective_valuation() const;

  // Zero below lo; throws TruncationError above hi.
  const Poly& coeff(int k) const;
  std::vector<int> support() const;

  LaurentSeries with_hi(int hi) const;
  LaurentSeries restricted(int lo, int hi) const;
  LaurentSeries shifted(int k) const;
  LaurentSeries with_var(std::string var) const;
  LaurentSeries touched(bool flag = true) const;
  LaurentSeries map_coefficients(const std::function<Poly(int, const Poly&)>& f) const;
  LaurentSeries change_ring(const RingPtr& target) const;

  // Coefficient of var^k has total degree d - k * var_degree.
  bool homogeneous_of(int d, int var_degree = 1) const;

  LaurentSeries operator-() const;
  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator*(const Poly& c) const;
  LaurentSeries operator*(const Rational& c) const;

  std::string to_string() const;

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b);

 private:
  void set(int k, Poly c);
  void trim();
  friend LaurentSeries mul_capped(const LaurentSeries&, const LaurentSeries&, int);

  std::string var_;
  RingPtr ring_;
  int lo_;
  int hi_;
  std::vector<Poly> c_;  // c_[i] is the coefficient of var^(lo_ + i)
  Poly zero_;
  bool touched_ = false;
};

int saturating_add(int a, int b);

// Product with the result window capped at 'cap'.
LaurentSeries mul_capped(const LaurentSeries& f, const LaurentSeries& g, int cap);
LaurentSeries pow(const LaurentSeries& f, unsigned n, int cap = LaurentSeries::kUnbounded);

// f(g). Needs g of positive valuation unless f is a polynomial; negative powers of
// f need g's lowest coefficient to be a unit.
LaurentSeries compose(const LaurentSeries& f, const LaurentSeries& g,
                      int cap = LaurentSeries::kUnbounded);

// Compositional inverse of f = c1 t + c2 t^2 + ... with c1 a unit.
LaurentSeries reversion(const LaurentSeries& f, std::optional<int> order = {});

// Multiplicative inverse; f's lowest coefficient must be a unit.
LaurentSeries inverse(const LaurentSeries& f, std::optional<int> hi = {});

// exp(f) for f without constant term.
LaurentSeries exp_series(const LaurentSeries& f, std::optional<int> order = {});
LaurentSeries derivative(const LaurentSeries& f);

// Solves P * Phi = N for Phi supported in exponents <= 0 by forward substitution.
// P is a power series with invertible constant term, N is supported in exponents
// <= 0. Each coefficient is checked for p-integrality when a prime is given.
LaurentSeries divide_nonpositive(const LaurentSeries& n, const LaurentSeries& p,
                                 std::optional<int> prime);

// Coefficientwise comparison on the intersection of the two windows.
bool agree_on_overlap(const LaurentSeries& a, const LaurentSeries& b);

// Regroup a polynomial with Laurent variable into a series over a ring without it.
LaurentSeries laurent_from_poly(const Poly& f, const RingPtr& coeff_ring, std::string var,
                                int lo, int hi);

}  // namespace lazard
