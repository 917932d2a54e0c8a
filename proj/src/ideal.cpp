#include "lazard/ideal.hpp"

#include <algorithm>
#include <sstream>

#include "lazard/errors.hpp"

namespace lazard {

namespace {

bool divides(const IdealGenerator& g, int a, std::span<const int> alpha) {
  if (g.p_exp > a) return false;
  for (std::size_t i = 0; i < g.v_exps.size(); ++i) {
    if (g.v_exps[i] > alpha[i]) return false;
  }
  return true;
}

}  // namespace

MonomialIdeal::MonomialIdeal(RingPtr ring, std::vector<IdealGenerator> gens) : ring_(std::move(ring)) {
  if (!ring_->prime()) throw ShapeError("monomial ideals need a ring with a prime");
  for (auto& g : gens) {
    if (g.v_exps.size() != ring_->size()) throw ShapeError("ideal generator has wrong length");
    if (g.p_exp < 0 || std::any_of(g.v_exps.begin(), g.v_exps.end(), [](int e) { return e < 0; })) {
      throw ShapeError("negative exponent in ideal generator");
    }
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < gens.size() && !redundant; ++j) {
      if (i != j && divides(gens[j], gens[i].p_exp, gens[i].v_exps)) redundant = true;
    }
    if (!redundant) gens_.push_back(gens[i]);
  }
}

MonomialIdeal MonomialIdeal::zero(RingPtr ring) { return MonomialIdeal(std::move(ring), {}); }

MonomialIdeal MonomialIdeal::unit(RingPtr ring) {
  std::size_t k = ring->size();
  return MonomialIdeal(std::move(ring), {IdealGenerator{0, std::vector<int>(k, 0)}});
}

MonomialIdeal MonomialIdeal::invariant_prime(RingPtr ring, int n) {
  if (n < 0) throw ShapeError("I(n) needs n >= 0");
  std::size_t k = ring->size();
  std::vector<IdealGenerator> gens;
  if (n >= 1) gens.push_back({1, std::vector<int>(k, 0)});
  for (int i = 1; i < n; ++i) {
    auto idx = ring->require_index("v" + std::to_string(i));
    IdealGenerator g{0, std::vector<int>(k, 0)};
    g.v_exps[idx] = 1;
    gens.push_back(std::move(g));
  }
  return MonomialIdeal(std::move(ring), std::move(gens));
}

MonomialIdeal MonomialIdeal::linearity_ideal(RingPtr ring, int k0, std::span<const int> k_exps) {
  std::size_t k = ring->size();
  std::vector<IdealGenerator> gens;
  IdealGenerator base{k0, std::vector<int>(k, 0)};
  gens.push_back({k0 + 1, base.v_exps});
  for (std::size_t i = 0; i < k_exps.size(); ++i) {
    auto idx = ring->require_index("v" + std::to_string(i + 1));
    IdealGenerator g = base;
    g.v_exps[idx] = k_exps[i] + 1;
    gens.push_back(g);
    base.v_exps[idx] = k_exps[i];
  }
  return MonomialIdeal(std::move(ring), std::move(gens));
}

bool MonomialIdeal::is_unit() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const IdealGenerator& g) {
    return g.p_exp == 0 && std::all_of(g.v_exps.begin(), g.v_exps.end(), [](int e) { return e == 0; });
  });
}

std::optional<int> MonomialIdeal::p_exponent_at(std::span<const int> alpha) const {
  if (alpha.size() != ring_->size()) throw ShapeError("exponent vector has wrong length");
  std::optional<int> best;
  for (const auto& g : gens_) {
    bool ok = true;
    for (std::size_t i = 0; i < alpha.size() && ok; ++i) ok = g.v_exps[i] <= alpha[i];
    if (ok && (!best || g.p_exp < *best)) best = g.p_exp;
  }
  return best;
}

bool MonomialIdeal::contains_monomial(int a, std::span<const int> alpha) const {
  auto e = p_exponent_at(alpha);
  return e && *e <= a;
}

std::vector<std::optional<std::size_t>> MonomialIdeal::index_map(const RingSpec& other) const {
  std::vector<std::optional<std::size_t>> map(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    const auto& g = ring_->generators()[i];
    map[i] = other.index_of(g.name);
    if (map[i] && other.generators()[*map[i]].degree != g.degree) {
      throw ShapeError("generator " + g.name + " has different degrees");
    }
  }
  return map;
}

bool MonomialIdeal::contains(const Poly& f) const {
  auto map = index_map(*f.ring());
  const long p = prime();
  std::vector<int> alpha(ring_->size());
  for (const auto& t : f.terms()) {
    if (!is_p_integral(t.coeff, p)) return false;
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = map[i] ? t.mono.exp[*map[i]] : 0;
    auto e = p_exponent_at(alpha);
    if (!e || p_valuation(t.coeff, p) < *e) return false;
  }
  return true;
}

Poly MonomialIdeal::normal_form(const Poly& f) const {
  auto map = index_map(*f.ring());
  const long p = prime();
  std::vector<int> alpha(ring_->size());
  return f.map_coefficients([&](const Term& t) -> Rational {
    for (std::size_t i = 0; i < alpha.size(); ++i) alpha[i] = map[i] ? t.mono.exp[*map[i]] : 0;
    auto e = p_exponent_at(alpha);
    if (!e) return t.coeff;
    if (!is_p_integral(t.coeff, p)) {
      throw IntegralityViolation(t.mono.t, t.coeff.get_str());
    }
    return Rational(residue_mod_prime_power(t.coeff, p, *e));
  });
}

MonomialIdeal MonomialIdeal::colon(int c, std::span<const int> beta) const {
  if (beta.size() != ring_->size() || c < 0) throw ShapeError("bad monomial for colon ideal");
  std::vector<IdealGenerator> gens;
  for (const auto& g : gens_) {
    IdealGenerator h{std::max(0, g.p_exp - c), std::vector<int>(beta.size())};
    for (std::size_t i = 0; i < beta.size(); ++i) h.v_exps[i] = std::max(0, g.v_exps[i] - beta[i]);
    gens.push_back(std::move(h));
  }
  return MonomialIdeal(ring_, std::move(gens));
}

MonomialIdeal MonomialIdeal::operator+(const MonomialIdeal& o) const {
  require_same_ring(ring_, o.ring_, "ideal sum");
  auto gens = gens_;
  gens.insert(gens.end(), o.gens_.begin(), o.gens_.end());
  return MonomialIdeal(ring_, std::move(gens));
}

InRecognition MonomialIdeal::recognize_invariant_prime() const {
  if (gens_.empty()) return {InRecognition::Kind::Zero, 0};
  // I(n) has generators p, v_1, ..., v_{n-1}, each to the first power.
  std::vector<bool> seen(ring_->size() + 1, false);
  bool has_p = false;
  for (const auto& g : gens_) {
    int nonzero = 0;
    std::size_t which = 0;
    for (std::size_t i = 0; i < g.v_exps.size(); ++i) {
      if (g.v_exps[i] != 0) {
        ++nonzero;
        which = i;
      }
    }
    if (g.p_exp == 1 && nonzero == 0) {
      has_p = true;
    } else if (g.p_exp == 0 && nonzero == 1 && g.v_exps[which] == 1) {
      const auto& name = ring_->generators()[which].name;
      if (name.size() < 2 || name[0] != 'v') return {InRecognition::Kind::NotOfForm, 0};
      int idx = std::stoi(name.substr(1));
      if (idx < 1 || static_cast<std::size_t>(idx) > ring_->size()) return {InRecognition::Kind::NotOfForm, 0};
      seen[idx] = true;
    } else {
      return {InRecognition::Kind::NotOfForm, 0};
    }
  }
  if (!has_p) return {InRecognition::Kind::NotOfForm, 0};
  int n = 1;
  while (static_cast<std::size_t>(n) < seen.size() && seen[n]) ++n;
  if (static_cast<int>(gens_.size()) != n) return {InRecognition::Kind::NotOfForm, 0};
  return {InRecognition::Kind::In, n};
}

std::string MonomialIdeal::to_string() const {
  if (gens_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t k = 0; k < gens_.size(); ++k) {
    const auto& g = gens_[k];
    if (k) os << ", ";
    std::string s;
    if (g.p_exp > 0) s = g.p_exp == 1 ? "p" : "p^" + std::to_string(g.p_exp);
    for (std::size_t i = 0; i < g.v_exps.size(); ++i) {
      if (g.v_exps[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += ring_->generators()[i].name;
      if (g.v_exps[i] != 1) s += '^' + std::to_string(g.v_exps[i]);
    }
    os << (s.empty() ? "1" : s);
  }
  return os.str();
}

bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
  return same_ring(a.ring_, b.ring_) && a.gens_ == b.gens_;
}

}  // namespace lazard
