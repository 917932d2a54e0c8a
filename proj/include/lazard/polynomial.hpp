#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lazard/rational.hpp"
#include "lazard/ring.hpp"

namespace lazard {

struct Term {
  Monomial mono;
  int degree;  // coefficient degree, Laurent variable excluded
  Rational coeff;
};

// Sparse graded polynomial over a RingSpec. Terms are kept in canonical order:
// descending degree, then descending exponent vector, then descending Laurent
// exponent. Terms below the ring's codegree bound are dropped on construction.
class Poly {
 public:
  explicit Poly(RingPtr ring);
  Poly(RingPtr ring, std::vector<Term> terms);

  static Poly constant(RingPtr ring, const Rational& c);
  static Poly generator(RingPtr ring, std::string_view name, unsigned power = 1);
  static Poly generator(RingPtr ring, std::size_t index, unsigned power = 1);
  static Poly monomial(RingPtr ring, const Monomial& m, const Rational& c);
  static Poly laurent(RingPtr ring, int k, const Rational& c = 1);

  const RingPtr& ring() const { return ring_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  // True if some term was dropped by the codegree bound while building this value.
  bool truncated() const { return truncated_; }

  std::optional<Rational> constant_value() const;
  Rational coefficient(const Monomial& m) const;

  std::optional<int> max_degree() const;
  std::optional<int> min_degree() const;
  // Homogeneity uses the total degree, in which the Laurent variable has degree 1.
  bool is_homogeneous_of(int d) const;
  std::optional<int> homogeneous_degree() const;
  bool has_laurent_terms() const;

  // Units are c*t^k plus nilpotent terms of negative coefficient degree.
  bool is_unit() const;
  Poly inverse() const;

  bool is_p_integral(long p) const;
  bool is_integral() const;
  // Throws IntegralityViolation if a coefficient leaves the ring's domain.
  void check_domain() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(const Rational& c) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly pow(unsigned n) const;

  // Multiply by t^k.
  Poly shift_laurent(int k) const;
  // Terms with Laurent exponent k, the Laurent variable removed.
  Poly laurent_component(int k) const;
  std::optional<int> min_laurent() const;
  std::optional<int> max_laurent() const;

  Poly filter(const std::function<bool(const Term&)>& keep) const;
  Poly map_coefficients(const std::function<Rational(const Term&)>& f) const;
  Poly with_ring(RingPtr ring) const;  // same generators, different bound/domain

  std::string to_string() const;

  friend bool operator==(const Poly& a, const Poly& b);

 private:
  void normalize(std::vector<Term> raw);
  friend Poly mul_impl(const Poly&, const Poly&);
  friend Poly add_scaled(const Poly&, const Poly&, int);

  RingPtr ring_;
  std::vector<Term> terms_;
  bool truncated_ = false;
};

inline Poly operator*(const Rational& c, const Poly& f) { return f * c; }

bool term_before(const Term& a, const Term& b);

// Ring map sending generator i of f's ring to images[i]; the Laurent variable is kept.
Poly substitute(const Poly& f, const RingPtr& target, std::span<const Poly> images);

// Reinterpret f in a ring containing its generators (matched by name).
Poly change_ring(const Poly& f, const RingPtr& target);

// Drop generators not present in target (they are sent to zero).
Poly project_ring(const Poly& f, const RingPtr& target);

}  // namespace lazard
