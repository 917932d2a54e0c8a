#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lazard/polynomial.hpp"

namespace lazard {

// p^p_exp * v^v_exps over the generators of the ideal's ring.
struct IdealGenerator {
  int p_exp = 0;
  std::vector<int> v_exps;
  friend bool operator==(const IdealGenerator&, const IdealGenerator&) = default;
  friend auto operator<=>(const IdealGenerator&, const IdealGenerator&) = default;
};

struct InRecognition {
  enum class Kind { Zero, NotOfForm, In };
  Kind kind;
  int n = 0;
  friend bool operator==(const InRecognition&, const InRecognition&) = default;
};

// Ideal of Z_(p)[v_1, ...] generated by monomials times powers of p.
// Generators are kept minimal and sorted.
class MonomialIdeal {
 public:
  MonomialIdeal(RingPtr ring, std::vector<IdealGenerator> gens);

  static MonomialIdeal zero(RingPtr ring);
  static MonomialIdeal unit(RingPtr ring);
  // I(n) = (p, v_1, ..., v_{n-1}).
  static MonomialIdeal invariant_prime(RingPtr ring, int n);
  // J_n(u) for u = p^k0 v_1^k1 ... v_n^kn (k_exps holds k1..kn).
  static MonomialIdeal linearity_ideal(RingPtr ring, int k0, std::span<const int> k_exps);

  const RingPtr& ring() const { return ring_; }
  int prime() const { return *ring_->prime(); }
  const std::vector<IdealGenerator>& generators() const { return gens_; }
  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const;

  // Smallest a with p^a * v^alpha in the ideal, if any.
  std::optional<int> p_exponent_at(std::span<const int> alpha) const;
  bool contains_monomial(int a, std::span<const int> alpha) const;
  // Coefficientwise over Z_(p); generators of f's ring unknown to the ideal and the
  // Laurent variable are treated as scalars.
  bool contains(const Poly& f) const;
  Poly normal_form(const Poly& f) const;

  MonomialIdeal colon(int c, std::span<const int> beta) const;
  MonomialIdeal operator+(const MonomialIdeal& o) const;
  InRecognition recognize_invariant_prime() const;

  std::string to_string() const;
  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b);

 private:
  std::vector<std::optional<std::size_t>> index_map(const RingSpec& other) const;

  RingPtr ring_;
  std::vector<IdealGenerator> gens_;
};

}  // namespace lazard
