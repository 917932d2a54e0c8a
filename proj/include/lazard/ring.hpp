#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lazard {

inline constexpr std::size_t kMaxGenerators = 16;
inline constexpr int kMaxCodegree = 255;

enum class RingLabel { LazardBModel, BP, BCoaction, CK1, Custom };
enum class CoefficientDomain { Integer, PLocal, Rational };

std::string_view label_name(RingLabel label);

struct Generator {
  std::string name;
  int degree;
  friend bool operator==(const Generator&, const Generator&) = default;
};

// Exponents of the generators plus an optional Laurent variable of degree +1.
struct Monomial {
  std::array<std::uint8_t, kMaxGenerators> exp{};
  std::int32_t t = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept;
};

// Throws ShapeError if an exponent would exceed the packed range.
Monomial multiply(const Monomial& a, const Monomial& b);

// Graded commutative ring over Z, Z_(p) or Q with generators of negative degree.
// Elements of degree below -codegree are set to zero; this is the quotient by an
// ideal, so every computation below that bound is exact.
class RingSpec {
 public:
  RingSpec(RingLabel label, std::optional<int> prime, std::vector<Generator> generators,
           CoefficientDomain domain, int codegree, std::optional<std::string> laurent = {});

  RingLabel label() const { return label_; }
  std::optional<int> prime() const { return prime_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  CoefficientDomain domain() const { return domain_; }
  int codegree() const { return codegree_; }
  const std::optional<std::string>& laurent() const { return laurent_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::size_t require_index(std::string_view name) const;

  // Degree ignoring the Laurent variable.
  int coefficient_degree(const Monomial& m) const;
  int total_degree(const Monomial& m) const { return coefficient_degree(m) + m.t; }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;

 private:
  RingLabel label_;
  std::optional<int> prime_;
  std::vector<Generator> generators_;
  CoefficientDomain domain_;
  int codegree_;
  std::optional<std::string> laurent_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

bool same_ring(const RingPtr& a, const RingPtr& b);
void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where);

// Degree of an exponent vector; ShapeError if the length is wrong.
int monomial_degree(std::span<const int> exponents, const RingSpec& ring);

RingPtr make_ring(RingLabel label, std::optional<int> prime, std::vector<Generator> generators,
                  CoefficientDomain domain, int codegree, std::optional<std::string> laurent = {});

// BP at p with generators v_1..v_k of degree 1 - p^i. When num_v is omitted, every
// generator that can be nonzero above the codegree bound is included.
RingPtr bp_ring(int p, int codegree, std::optional<int> num_v = {},
                std::optional<std::string> laurent = {});

// Z[b_1..b_k] with deg b_i = -i; one copy per suffix ("" gives b1, "'" gives b1', ...).
RingPtr b_model_ring(int num_b, int codegree, const std::vector<std::string>& suffixes = {""});

// Z_(p)[v1] with deg v1 = 1 - p.
RingPtr ck1_ring(int p, int codegree);

// Generators of 'extra' appended to those of 'base'.
RingPtr extend_ring(const RingPtr& base, const std::vector<Generator>& extra, RingLabel label,
                    int codegree);

RingPtr with_codegree(const RingPtr& ring, int codegree);
RingPtr with_laurent(const RingPtr& ring, std::optional<std::string> laurent);
RingPtr with_domain(const RingPtr& ring, CoefficientDomain domain, std::optional<int> prime);

// Ring with no generators.
RingPtr scalar_ring(CoefficientDomain domain, std::optional<int> prime = {},
                    std::optional<std::string> laurent = {});

}  // namespace lazard
