#include "lazard/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "lazard/errors.hpp"

namespace lazard {

bool term_before(const Term& a, const Term& b) {
  if (a.degree != b.degree) return a.degree > b.degree;
  if (a.mono.exp != b.mono.exp) return a.mono.exp > b.mono.exp;
  return a.mono.t > b.mono.t;
}

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw ShapeError("null ring");
}

Poly::Poly(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  if (!ring_) throw ShapeError("null ring");
  for (auto& t : terms) {
    for (std::size_t i = ring_->size(); i < kMaxGenerators; ++i) {
      if (t.mono.exp[i] != 0) throw ShapeError("exponent on a nonexistent generator");
    }
    if (t.mono.t != 0 && !ring_->laurent()) throw ShapeError("ring has no Laurent variable");
    t.coeff.canonicalize();
    t.degree = ring_->coefficient_degree(t.mono);
  }
  normalize(std::move(terms));
}

void Poly::normalize(std::vector<Term> raw) {
  std::sort(raw.begin(), raw.end(), term_before);
  terms_.clear();
  terms_.reserve(raw.size());
  const int floor = -ring_->codegree();
  for (auto& t : raw) {
    if (t.degree < floor) {
      truncated_ = true;
      continue;
    }
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff += t.coeff;
    } else {
      if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
      terms_.push_back(std::move(t));
    }
  }
  if (!terms_.empty() && terms_.back().coeff == 0) terms_.pop_back();
}

Poly Poly::constant(RingPtr ring, const Rational& c) {
  Poly r(std::move(ring));
  if (c != 0) {
    r.terms_.push_back({Monomial{}, 0, c});
    r.terms_.back().coeff.canonicalize();
  }
  return r;
}

Poly Poly::generator(RingPtr ring, std::string_view name, unsigned power) {
  auto idx = ring->require_index(name);
  return generator(std::move(ring), idx, power);
}

Poly Poly::generator(RingPtr ring, std::size_t index, unsigned power) {
  if (index >= ring->size()) throw ShapeError("generator index out of range");
  if (power > 255) throw ShapeError("monomial exponent overflow");
  Monomial m;
  m.exp[index] = static_cast<std::uint8_t>(power);
  return monomial(std::move(ring), m, 1);
}

Poly Poly::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  return Poly(std::move(ring), {Term{m, 0, c}});
}

Poly Poly::laurent(RingPtr ring, int k, const Rational& c) {
  Monomial m;
  m.t = k;
  return monomial(std::move(ring), m, c);
}

std::optional<Rational> Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].mono == Monomial{}) return terms_[0].coeff;
  return std::nullopt;
}

Rational Poly::coefficient(const Monomial& m) const {
  for (const auto& t : terms_) {
    if (t.mono == m) return t.coeff;
  }
  return 0;
}

std::optional<int> Poly::max_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.front().degree;
}

std::optional<int> Poly::min_degree() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.back().degree;
}

bool Poly::is_homogeneous_of(int d) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const Term& t) { return t.degree + t.mono.t == d; });
}

std::optional<int> Poly::homogeneous_degree() const {
  if (terms_.empty()) return std::nullopt;
  int d = terms_.front().degree + terms_.front().mono.t;
  if (!is_homogeneous_of(d)) return std::nullopt;
  return d;
}

bool Poly::has_laurent_terms() const {
  return std::any_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.mono.t != 0; });
}

bool Poly::is_unit() const {
  return !terms_.empty() && terms_.front().degree == 0 &&
         (terms_.size() == 1 || terms_[1].degree < 0);
}

Poly Poly::inverse() const {
  if (!is_unit()) throw NotInvertible("element " + to_string() + " is not a unit");
  const Term& lead = terms_.front();
  Monomial inv_mono;
  inv_mono.t = -lead.mono.t;
  Poly lead_inv = monomial(ring_, inv_mono, 1 / lead.coeff);
  // f = u (1 + n) with n nilpotent.
  Poly n = (*this * lead_inv) - constant(ring_, 1);
  Poly sum = constant(ring_, 1);
  Poly power = constant(ring_, 1);
  Poly neg_n = -n;
  while (true) {
    power = power * neg_n;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * lead_inv;
}

bool Poly::is_p_integral(long p) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [p](const Term& t) { return lazard::is_p_integral(t.coeff, p); });
}

bool Poly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return is_integer(t.coeff); });
}

void Poly::check_domain() const {
  for (const auto& t : terms_) {
    bool ok = true;
    switch (ring_->domain()) {
      case CoefficientDomain::Integer: ok = is_integer(t.coeff); break;
      case CoefficientDomain::PLocal: ok = lazard::is_p_integral(t.coeff, *ring_->prime()); break;
      case CoefficientDomain::Rational: break;
    }
    if (!ok) throw IntegralityViolation(t.mono.t, to_string());
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly add_scaled(const Poly& a, const Poly& b, int sign) {
  require_same_ring(a.ring(), b.ring(), "polynomial addition");
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto x = a.terms().begin(), xe = a.terms().end();
  auto y = b.terms().begin(), ye = b.terms().end();
  while (x != xe || y != ye) {
    if (y == ye || (x != xe && term_before(*x, *y))) {
      out.push_back(*x++);
    } else if (x == xe || term_before(*y, *x)) {
      out.push_back(*y++);
      if (sign < 0) out.back().coeff = -out.back().coeff;
    } else {
      Rational c = sign > 0 ? Rational(x->coeff + y->coeff) : Rational(x->coeff - y->coeff);
      if (c != 0) out.push_back(Term{x->mono, x->degree, c});
      ++x;
      ++y;
    }
  }
  // Inputs are canonical, so the merge is canonical too.
  Poly r(a.ring());
  r.terms_ = std::move(out);
  r.truncated_ = a.truncated_ || b.truncated_;
  return r;
}

Poly Poly::operator+(const Poly& o) const { return add_scaled(*this, o, 1); }

Poly Poly::operator-(const Poly& o) const { return add_scaled(*this, o, -1); }

Poly mul_impl(const Poly& f, const Poly& g) {
  require_same_ring(f.ring(), g.ring(), "polynomial product");
  Poly r(f.ring());
  r.truncated_ = f.truncated_ || g.truncated_;
  if (f.is_zero() || g.is_zero()) return r;
  const int floor = -f.ring()->codegree();

  // Integer arithmetic on numerators scaled to a common denominator.
  auto scale = [](const Poly& p, Integer& lcm, std::vector<Integer>& nums) {
    lcm = 1;
    for (const auto& t : p.terms()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coeff.get_den_mpz_t());
    nums.reserve(p.size());
    for (const auto& t : p.terms()) nums.push_back(t.coeff.get_num() * (lcm / t.coeff.get_den()));
  };
  Integer lf, lg;
  std::vector<Integer> nf, ng;
  scale(f, lf, nf);
  scale(g, lg, ng);

  std::unordered_map<Monomial, std::pair<int, Integer>, MonomialHash> acc;
  acc.reserve(std::min<std::size_t>(f.size() * g.size(), 1 << 16));
  auto gt = g.terms();
  bool dropped = false;
  std::size_t i = 0;
  for (const auto& a : f.terms()) {
    std::size_t j = 0;
    for (; j < gt.size(); ++j) {
      const Term& b = gt[j];
      int d = a.degree + b.degree;
      if (d < floor) break;
      auto [it, fresh] = acc.try_emplace(multiply(a.mono, b.mono));
      if (fresh) it->second.first = d;
      mpz_addmul(it->second.second.get_mpz_t(), nf[i].get_mpz_t(), ng[j].get_mpz_t());
    }
    if (j < gt.size()) dropped = true;
    ++i;
  }
  Integer den = lf * lg;
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, v] : acc) {
    if (v.second == 0) continue;
    Rational c(v.second, den);
    c.canonicalize();
    out.push_back(Term{m, v.first, std::move(c)});
  }
  std::sort(out.begin(), out.end(), term_before);
  r.terms_ = std::move(out);
  r.truncated_ = r.truncated_ || dropped;
  return r;
}

Poly Poly::operator*(const Poly& o) const { return mul_impl(*this, o); }

Poly Poly::operator*(const Rational& c) const {
  if (c == 0) return Poly(ring_);
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

Poly Poly::shift_laurent(int k) const {
  if (k == 0) return *this;
  if (!ring_->laurent()) throw ShapeError("ring has no Laurent variable");
  Poly r = *this;
  for (auto& t : r.terms_) t.mono.t += k;
  return r;
}

Poly Poly::laurent_component(int k) const {
  Poly r(ring_);
  r.truncated_ = truncated_;
  for (const auto& t : terms_) {
    if (t.mono.t != k) continue;
    Term u = t;
    u.mono.t = 0;
    r.terms_.push_back(std::move(u));
  }
  return r;
}

std::optional<int> Poly::min_laurent() const {
  if (terms_.empty()) return std::nullopt;
  int m = terms_[0].mono.t;
  for (const auto& t : terms_) m = std::min(m, t.mono.t);
  return m;
}

std::optional<int> Poly::max_laurent() const {
  if (terms_.empty()) return std::nullopt;
  int m = terms_[0].mono.t;
  for (const auto& t : terms_) m = std::max(m, t.mono.t);
  return m;
}

Poly Poly::filter(const std::function<bool(const Term&)>& keep) const {
  Poly r(ring_);
  r.truncated_ = truncated_;
  for (const auto& t : terms_) {
    if (keep(t)) r.terms_.push_back(t);
  }
  return r;
}

Poly Poly::map_coefficients(const std::function<Rational(const Term&)>& f) const {
  Poly r(ring_);
  r.truncated_ = truncated_;
  for (const auto& t : terms_) {
    Rational c = f(t);
    if (c != 0) r.terms_.push_back(Term{t.mono, t.degree, std::move(c)});
  }
  return r;
}

Poly Poly::with_ring(RingPtr ring) const {
  if (ring->generators() != ring_->generators()) throw ShapeError("generator lists differ");
  Poly r(std::move(ring), std::vector<Term>(terms_.begin(), terms_.end()));
  r.truncated_ = r.truncated_ || truncated_;
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    std::string factors;
    for (std::size_t i = 0; i < ring_->size(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (!factors.empty()) factors += '*';
      factors += ring_->generators()[i].name;
      if (t.mono.exp[i] != 1) factors += '^' + std::to_string(t.mono.exp[i]);
    }
    if (t.mono.t != 0) {
      if (!factors.empty()) factors += '*';
      factors += *ring_->laurent();
      if (t.mono.t != 1) factors += '^' + std::to_string(t.mono.t);
    }
    bool negative = t.coeff < 0;
    Rational mag = abs(t.coeff);
    std::string body;
    if (factors.empty()) {
      body = mag.get_str();
    } else if (mag == 1) {
      body = factors;
    } else {
      body = mag.get_str() + "*" + factors;
    }
    if (first) {
      os << (negative ? "-" : "") << body;
      first = false;
    } else {
      os << (negative ? " - " : " + ") << body;
    }
  }
  return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
  if (!same_ring(a.ring_, b.ring_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].mono != b.terms_[i].mono || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  }
  return true;
}

Poly substitute(const Poly& f, const RingPtr& target, std::span<const Poly> images) {
  const auto& src = *f.ring();
  if (images.size() != src.size()) throw ShapeError("one image per generator expected");
  for (const auto& im : images) require_same_ring(im.ring(), target, "substitution");
  if (f.has_laurent_terms() && !target->laurent()) throw ShapeError("target lacks Laurent variable");
  std::vector<std::vector<Poly>> powers(src.size());
  auto power = [&](std::size_t i, unsigned e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly result(target);
  for (const auto& t : f.terms()) {
    Monomial tm;
    tm.t = t.mono.t;
    Poly term = Poly::monomial(target, tm, t.coeff);
    for (std::size_t i = 0; i < src.size() && !term.is_zero(); ++i) {
      if (t.mono.exp[i] != 0) term = term * power(i, t.mono.exp[i]);
    }
    result += term;
  }
  return result;
}

namespace {

Poly remap(const Poly& f, const RingPtr& target, bool allow_drop) {
  const auto& src = *f.ring();
  std::vector<std::optional<std::size_t>> map(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    map[i] = target->index_of(src.generators()[i].name);
    if (map[i] && target->generators()[*map[i]].degree != src.generators()[i].degree) {
      throw ShapeError("generator " + src.generators()[i].name + " changes degree");
    }
  }
  if (f.has_laurent_terms() && !target->laurent()) throw ShapeError("target lacks Laurent variable");
  std::vector<Term> terms;
  for (const auto& t : f.terms()) {
    Monomial m;
    m.t = t.mono.t;
    bool keep = true;
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.mono.exp[i] == 0) continue;
      if (!map[i]) {
        if (!allow_drop) throw ShapeError("target ring lacks generator " + src.generators()[i].name);
        keep = false;
        break;
      }
      m.exp[*map[i]] = t.mono.exp[i];
    }
    if (keep) terms.push_back(Term{m, 0, t.coeff});
  }
  return Poly(target, std::move(terms));
}

}  // namespace

Poly change_ring(const Poly& f, const RingPtr& target) { return remap(f, target, false); }

Poly project_ring(const Poly& f, const RingPtr& target) { return remap(f, target, true); }

}  // namespace lazard
