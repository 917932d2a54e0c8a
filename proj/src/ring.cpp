#include "lazard/ring.hpp"

#include <cstring>
#include <set>

#include "lazard/errors.hpp"
#include "lazard/rational.hpp"

namespace lazard {

std::string_view label_name(RingLabel label) {
  switch (label) {
    case RingLabel::LazardBModel: return "LAZARD_B_MODEL";
    case RingLabel::BP: return "BP";
    case RingLabel::BCoaction: return "B_COACTION";
    case RingLabel::CK1: return "CK1";
    case RingLabel::Custom: return "CUSTOM";
  }
  return "CUSTOM";
}

std::size_t MonomialHash::operator()(const Monomial& m) const noexcept {
  std::uint64_t w[2];
  std::memcpy(w, m.exp.data(), sizeof(w));
  std::uint64_t h = w[0] * 0x9E3779B97F4A7C15ULL;
  h ^= (w[1] + 0x632BE59BD9B4E019ULL + (h << 6) + (h >> 2));
  h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(m.t)) * 0xC2B2AE3D27D4EB4FULL;
  return static_cast<std::size_t>(h ^ (h >> 29));
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxGenerators; ++i) {
    unsigned s = unsigned(a.exp[i]) + unsigned(b.exp[i]);
    if (s > 255) throw ShapeError("monomial exponent overflow");
    r.exp[i] = static_cast<std::uint8_t>(s);
  }
  r.t = a.t + b.t;
  return r;
}

RingSpec::RingSpec(RingLabel label, std::optional<int> prime, std::vector<Generator> generators,
                   CoefficientDomain domain, int codegree, std::optional<std::string> laurent)
    : label_(label),
      prime_(prime),
      generators_(std::move(generators)),
      domain_(domain),
      codegree_(codegree),
      laurent_(std::move(laurent)) {
  if (generators_.size() > kMaxGenerators) {
    throw ShapeError("at most " + std::to_string(kMaxGenerators) + " generators supported");
  }
  if (codegree_ < 0 || codegree_ > kMaxCodegree) {
    throw ShapeError("codegree must lie in [0, " + std::to_string(kMaxCodegree) + "]");
  }
  if (domain_ == CoefficientDomain::PLocal && !prime_) {
    throw ShapeError("p-local coefficients need a prime");
  }
  std::set<std::string> names;
  for (const auto& g : generators_) {
    // Degree-zero generators would make the graded pieces infinite.
    if (g.degree >= 0) throw ShapeError("generator " + g.name + " must have negative degree");
    if (!names.insert(g.name).second) throw ShapeError("duplicate generator " + g.name);
  }
  if (laurent_ && names.count(*laurent_)) throw ShapeError("Laurent variable clashes with a generator");
}

std::optional<std::size_t> RingSpec::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t RingSpec::require_index(std::string_view name) const {
  auto i = index_of(name);
  if (!i) throw ShapeError("ring has no generator " + std::string(name));
  return *i;
}

int RingSpec::coefficient_degree(const Monomial& m) const {
  int d = 0;
  for (std::size_t i = 0; i < generators_.size(); ++i) d += generators_[i].degree * int(m.exp[i]);
  return d;
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

void require_same_ring(const RingPtr& a, const RingPtr& b, const char* where) {
  if (!same_ring(a, b)) throw ShapeError(std::string("ring mismatch in ") + where);
}

int monomial_degree(std::span<const int> exponents, const RingSpec& ring) {
  if (exponents.size() != ring.size()) {
    throw ShapeError("exponent vector has length " + std::to_string(exponents.size()) +
                     ", ring has " + std::to_string(ring.size()) + " generators");
  }
  int d = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) throw ShapeError("negative exponent");
    d += exponents[i] * ring.generators()[i].degree;
  }
  return d;
}

RingPtr make_ring(RingLabel label, std::optional<int> prime, std::vector<Generator> generators,
                  CoefficientDomain domain, int codegree, std::optional<std::string> laurent) {
  return std::make_shared<const RingSpec>(label, prime, std::move(generators), domain, codegree,
                                          std::move(laurent));
}

RingPtr bp_ring(int p, int codegree, std::optional<int> num_v, std::optional<std::string> laurent) {
  if (p < 2) throw ShapeError("prime expected");
  std::vector<Generator> gens;
  Integer pk = p;
  for (int i = 1;; ++i, pk *= p) {
    Integer deg = 1 - pk;
    if (num_v ? i > *num_v : (-deg > codegree && i > 1)) break;
    if (!deg.fits_sint_p()) throw ShapeError("generator degree out of range");
    gens.push_back({"v" + std::to_string(i), static_cast<int>(deg.get_si())});
  }
  return make_ring(RingLabel::BP, p, std::move(gens), CoefficientDomain::PLocal, codegree,
                   std::move(laurent));
}

RingPtr b_model_ring(int num_b, int codegree, const std::vector<std::string>& suffixes) {
  std::vector<Generator> gens;
  for (const auto& s : suffixes) {
    for (int i = 1; i <= num_b; ++i) gens.push_back({"b" + std::to_string(i) + s, -i});
  }
  RingLabel label = suffixes.size() > 1 ? RingLabel::BCoaction : RingLabel::LazardBModel;
  return make_ring(label, std::nullopt, std::move(gens), CoefficientDomain::Integer, codegree);
}

RingPtr ck1_ring(int p, int codegree) {
  return make_ring(RingLabel::CK1, p, {{"v1", 1 - p}}, CoefficientDomain::PLocal, codegree);
}

RingPtr extend_ring(const RingPtr& base, const std::vector<Generator>& extra, RingLabel label,
                    int codegree) {
  auto gens = base->generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  return make_ring(label, base->prime(), std::move(gens), base->domain(), codegree, base->laurent());
}

RingPtr with_codegree(const RingPtr& ring, int codegree) {
  if (ring->codegree() == codegree) return ring;
  return make_ring(ring->label(), ring->prime(), ring->generators(), ring->domain(), codegree,
                   ring->laurent());
}

RingPtr with_laurent(const RingPtr& ring, std::optional<std::string> laurent) {
  if (ring->laurent() == laurent) return ring;
  return make_ring(ring->label(), ring->prime(), ring->generators(), ring->domain(),
                   ring->codegree(), std::move(laurent));
}

RingPtr with_domain(const RingPtr& ring, CoefficientDomain domain, std::optional<int> prime) {
  return make_ring(ring->label(), prime, ring->generators(), domain, ring->codegree(),
                   ring->laurent());
}

RingPtr scalar_ring(CoefficientDomain domain, std::optional<int> prime,
                    std::optional<std::string> laurent) {
  return make_ring(RingLabel::Custom, prime, {}, domain, 0, std::move(laurent));
}

}  // namespace lazard
