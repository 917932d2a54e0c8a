#include "lazard/multiseries.hpp"

#include <algorithm>
#include <sstream>

#include "lazard/errors.hpp"

namespace lazard {

int total_degree(const MultiSeries::Exponent& e) { return e[0] + e[1] + e[2]; }

MultiSeries::MultiSeries(std::vector<std::string> vars, RingPtr ring, int order)
    : vars_(std::move(vars)), ring_(std::move(ring)), order_(order) {
  if (vars_.empty() || vars_.size() > 3) throw ShapeError("one to three variables supported");
  if (order_ < 0) throw ShapeError("negative truncation order");
}

MultiSeries MultiSeries::variable(std::vector<std::string> vars, RingPtr ring, int order, std::size_t i) {
  MultiSeries s(std::move(vars), ring, order);
  if (i >= s.vars_.size()) throw ShapeError("variable index out of range");
  Exponent e{0, 0, 0};
  e[i] = 1;
  if (order >= 1) s.c_.emplace(e, Poly::constant(ring, 1));
  return s;
}

MultiSeries MultiSeries::constant(std::vector<std::string> vars, const Poly& c, int order) {
  MultiSeries s(std::move(vars), c.ring(), order);
  if (!c.is_zero()) s.c_.emplace(Exponent{0, 0, 0}, c);
  return s;
}

MultiSeries MultiSeries::from_univariate(std::vector<std::string> vars, std::size_t i,
                                         const LaurentSeries& f, int order) {
  MultiSeries s(std::move(vars), f.ring(), order);
  if (i >= s.vars_.size()) throw ShapeError("variable index out of range");
  if (f.hi() < order) throw TruncationError("series known only through order " + std::to_string(f.hi()),
                                            "order <= " + std::to_string(f.hi()));
  for (int k : f.support()) {
    if (k < 0) throw PreconditionError("power series expected");
    if (k > order) break;
    Exponent e{0, 0, 0};
    e[i] = k;
    s.c_.emplace(e, f.coeff(k));
  }
  return s;
}

Poly MultiSeries::coeff(const Exponent& e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Poly(ring_) : it->second;
}

bool MultiSeries::has_constant_term() const { return c_.count(Exponent{0, 0, 0}) > 0; }

void MultiSeries::add_to(const Exponent& e, const Poly& c) {
  if (c.is_zero() || total_degree(e) > order_) return;
  auto it = c_.find(e);
  if (it == c_.end()) {
    c_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) c_.erase(it);
}

MultiSeries MultiSeries::operator-() const {
  MultiSeries s = *this;
  for (auto& [e, c] : s.c_) c = -c;
  return s;
}

MultiSeries MultiSeries::operator+(const MultiSeries& o) const {
  require_same_ring(ring_, o.ring_, "multivariate addition");
  if (vars_ != o.vars_) throw ShapeError("variable lists differ");
  MultiSeries s(vars_, ring_, std::min(order_, o.order_));
  for (const auto& [e, c] : c_) s.add_to(e, c);
  for (const auto& [e, c] : o.c_) s.add_to(e, c);
  return s;
}

MultiSeries MultiSeries::operator-(const MultiSeries& o) const { return *this + (-o); }

MultiSeries MultiSeries::operator*(const MultiSeries& o) const {
  require_same_ring(ring_, o.ring_, "multivariate product");
  if (vars_ != o.vars_) throw ShapeError("variable lists differ");
  MultiSeries s(vars_, ring_, std::min(order_, o.order_));
  for (const auto& [ea, ca] : c_) {
    int da = total_degree(ea);
    for (const auto& [eb, cb] : o.c_) {
      if (da + total_degree(eb) > s.order_) continue;
      s.add_to({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    }
  }
  return s;
}

MultiSeries MultiSeries::operator*(const Poly& c) const {
  MultiSeries s(vars_, ring_, order_);
  for (const auto& [e, x] : c_) s.add_to(e, x * c);
  return s;
}

MultiSeries MultiSeries::operator*(const Rational& c) const {
  MultiSeries s(vars_, ring_, order_);
  for (const auto& [e, x] : c_) s.add_to(e, x * c);
  return s;
}

MultiSeries MultiSeries::pow(unsigned n) const {
  MultiSeries result = constant(vars_, Poly::constant(ring_, 1), order_);
  MultiSeries base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

MultiSeries MultiSeries::permuted(const std::vector<std::size_t>& perm) const {
  if (perm.size() != vars_.size()) throw ShapeError("permutation has wrong length");
  MultiSeries s(vars_, ring_, order_);
  for (const auto& [e, c] : c_) {
    Exponent f{0, 0, 0};
    for (std::size_t i = 0; i < perm.size(); ++i) f[i] = e[perm[i]];
    s.add_to(f, c);
  }
  return s;
}

MultiSeries MultiSeries::embedded(std::vector<std::string> new_vars,
                                  const std::vector<std::size_t>& slots) const {
  if (slots.size() != vars_.size()) throw ShapeError("slot list has wrong length");
  MultiSeries s(std::move(new_vars), ring_, order_);
  for (const auto& [e, c] : c_) {
    Exponent f{0, 0, 0};
    for (std::size_t i = 0; i < slots.size(); ++i) {
      if (slots[i] >= s.vars_.size()) throw ShapeError("slot out of range");
      f[slots[i]] += e[i];
    }
    s.add_to(f, c);
  }
  return s;
}

MultiSeries MultiSeries::with_order(int order) const {
  MultiSeries s(vars_, ring_, std::min(order, order_));
  for (const auto& [e, c] : c_) s.add_to(e, c);
  return s;
}

MultiSeries MultiSeries::map_coefficients(const std::function<Poly(const Poly&)>& f) const {
  std::map<Exponent, Poly> out;
  RingPtr ring = ring_;
  for (const auto& [e, c] : c_) {
    Poly d = f(c);
    ring = d.ring();
    if (!d.is_zero()) out.emplace(e, std::move(d));
  }
  MultiSeries s(vars_, ring, order_);
  s.c_ = std::move(out);
  return s;
}

MultiSeries MultiSeries::change_ring(const RingPtr& target) const {
  MultiSeries s(vars_, target, order_);
  for (const auto& [e, c] : c_) s.add_to(e, lazard::change_ring(c, target));
  return s;
}

std::string MultiSeries::to_string() const {
  std::vector<std::pair<Exponent, const Poly*>> items;
  for (const auto& [e, c] : c_) items.emplace_back(e, &c);
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    int da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : items) {
    std::string mono;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += vars_[i];
      if (e[i] != 1) mono += '^' + std::to_string(e[i]);
    }
    std::string cs = c->to_string();
    std::string body;
    if (c->size() > 1) {
      body = "(" + cs + ")" + (mono.empty() ? "" : "*" + mono);
    } else if (mono.empty()) {
      body = cs;
    } else if (cs == "1") {
      body = mono;
    } else if (cs == "-1") {
      body = "-" + mono;
    } else {
      body = cs + "*" + mono;
    }
    if (first) {
      os << body;
      first = false;
    } else if (body[0] == '-') {
      os << " - " << body.substr(1);
    } else {
      os << " + " << body;
    }
  }
  return first ? "0" : os.str();
}

bool operator==(const MultiSeries& a, const MultiSeries& b) {
  if (a.vars_ != b.vars_ || !same_ring(a.ring_, b.ring_) || a.order_ != b.order_) return false;
  if (a.c_.size() != b.c_.size()) return false;
  for (const auto& [e, c] : a.c_) {
    auto it = b.c_.find(e);
    if (it == b.c_.end() || !(it->second == c)) return false;
  }
  return true;
}

MultiSeries compose_univariate(const LaurentSeries& f, const MultiSeries& g) {
  if (g.has_constant_term()) throw PreconditionError("inner series must have no constant term");
  require_same_ring(f.ring(), g.ring(), "composition");
  if (f.hi() < g.order()) {
    throw TruncationError("outer series known only through order " + std::to_string(f.hi()),
                          "order <= " + std::to_string(f.hi()));
  }
  MultiSeries result(g.vars(), g.ring(), g.order());
  MultiSeries power = MultiSeries::constant(g.vars(), Poly::constant(g.ring(), 1), g.order());
  int reached = 0;
  for (int k : f.support()) {
    if (k < 0) throw PreconditionError("outer series must be a power series");
    if (k > g.order()) break;
    while (reached < k) {
      power = power * g;
      ++reached;
    }
    result = result + power * f.coeff(k);
  }
  return result;
}

MultiSeries compose_bivariate(const MultiSeries& law, const MultiSeries& u, const MultiSeries& v) {
  if (law.vars().size() != 2) throw ShapeError("bivariate outer series expected");
  if (u.has_constant_term() || v.has_constant_term()) {
    throw PreconditionError("inner series must have no constant term");
  }
  int order = std::min({law.order(), u.order(), v.order()});
  std::vector<MultiSeries> up{MultiSeries::constant(u.vars(), Poly::constant(u.ring(), 1), order)};
  std::vector<MultiSeries> vp{MultiSeries::constant(v.vars(), Poly::constant(v.ring(), 1), order)};
  // Group by the power of u so only one product per power is needed.
  std::map<int, MultiSeries> rows;
  for (const auto& [e, c] : law.terms()) {
    if (total_degree(e) > order) continue;
    while (static_cast<int>(vp.size()) <= e[1]) vp.push_back((vp.back() * v).with_order(order));
    auto it = rows.find(e[0]);
    if (it == rows.end()) it = rows.emplace(e[0], MultiSeries(v.vars(), v.ring(), order)).first;
    it->second = it->second + vp[e[1]] * c;
  }
  MultiSeries result(u.vars(), u.ring(), order);
  for (const auto& [i, row] : rows) {
    while (static_cast<int>(up.size()) <= i) up.push_back((up.back() * u).with_order(order));
    result = result + up[i] * row;
  }
  return result;
}

}  // namespace lazard
