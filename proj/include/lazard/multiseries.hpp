#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "lazard/series.hpp"

namespace lazard {

// Power series in up to three variables, truncated above a total degree.
class MultiSeries {
 public:
  using Exponent = std::array<int, 3>;

  MultiSeries(std::vector<std::string> vars, RingPtr ring, int order);
  static MultiSeries variable(std::vector<std::string> vars, RingPtr ring, int order, std::size_t i);
  static MultiSeries constant(std::vector<std::string> vars, const Poly& c, int order);
  // A power series in one variable placed in slot i.
  static MultiSeries from_univariate(std::vector<std::string> vars, std::size_t i,
                                     const LaurentSeries& f, int order);

  const std::vector<std::string>& vars() const { return vars_; }
  const RingPtr& ring() const { return ring_; }
  int order() const { return order_; }
  const std::map<Exponent, Poly>& terms() const { return c_; }

  Poly coeff(const Exponent& e) const;
  bool has_constant_term() const;

  MultiSeries operator-() const;
  MultiSeries operator+(const MultiSeries& o) const;
  MultiSeries operator-(const MultiSeries& o) const;
  MultiSeries operator*(const MultiSeries& o) const;
  MultiSeries operator*(const Poly& c) const;
  MultiSeries operator*(const Rational& c) const;
  MultiSeries pow(unsigned n) const;

  // Variable i of the result is variable perm[i] of this series.
  MultiSeries permuted(const std::vector<std::size_t>& perm) const;
  // Re-home into new_vars; variable i moves to slot slots[i].
  MultiSeries embedded(std::vector<std::string> new_vars, const std::vector<std::size_t>& slots) const;
  MultiSeries with_order(int order) const;
  MultiSeries map_coefficients(const std::function<Poly(const Poly&)>& f) const;
  MultiSeries change_ring(const RingPtr& target) const;

  std::string to_string() const;
  friend bool operator==(const MultiSeries& a, const MultiSeries& b);

 private:
  void add_to(const Exponent& e, const Poly& c);

  std::vector<std::string> vars_;
  RingPtr ring_;
  int order_;
  std::map<Exponent, Poly> c_;
};

int total_degree(const MultiSeries::Exponent& e);

// f(g) for a power series f and g without constant term.
MultiSeries compose_univariate(const LaurentSeries& f, const MultiSeries& g);
// F(u, v) for a bivariate F and u, v without constant term.
MultiSeries compose_bivariate(const MultiSeries& law, const MultiSeries& u, const MultiSeries& v);

}  // namespace lazard
