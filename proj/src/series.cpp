#include "lazard/series.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lazard/errors.hpp"

namespace lazard {

namespace {

constexpr int kInf = LaurentSeries::kUnbounded;

std::string window_hint(const std::string& var, int lo, int hi) {
  return var + " in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
}

}  // namespace

int saturating_add(int a, int b) {
  if (a >= kInf || b >= kInf) return kInf;
  long long s = static_cast<long long>(a) + b;
  if (s >= kInf) return kInf;
  return static_cast<int>(s);
}

LaurentSeries::LaurentSeries(std::string var, RingPtr ring, int lo, int hi)
    : var_(std::move(var)), ring_(std::move(ring)), lo_(lo), hi_(std::min(hi, kInf)), zero_(ring_) {
  if (hi_ < lo_ - 1) throw ShapeError("series window has hi < lo - 1");
}

LaurentSeries LaurentSeries::from_coefficients(std::string var, RingPtr ring, int lo,
                                               std::vector<Poly> coeffs, int hi) {
  LaurentSeries s(std::move(var), std::move(ring), lo, hi);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    int k = lo + static_cast<int>(i);
    if (k > s.hi_) {
      if (!coeffs[i].is_zero()) s.touched_ = true;
      continue;
    }
    s.set(k, std::move(coeffs[i]));
  }
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::monomial(std::string var, const Poly& c, int k, int hi) {
  LaurentSeries s(std::move(var), c.ring(), k, std::max(hi, k - 1));
  if (k <= s.hi_) s.set(k, c);
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::variable(std::string var, RingPtr ring, int hi) {
  return monomial(std::move(var), Poly::constant(ring, 1), 1, hi);
}

LaurentSeries LaurentSeries::constant(std::string var, const Poly& c, int hi) {
  return monomial(std::move(var), c, 0, hi);
}

void LaurentSeries::set(int k, Poly c) {
  require_same_ring(c.ring(), ring_, "series coefficient");
  if (k < lo_ || k > hi_) throw ShapeError("coefficient outside series window");
  std::size_t i = static_cast<std::size_t>(k - lo_);
  if (i >= c_.size()) {
    if (c.is_zero()) return;
    c_.resize(i + 1, zero_);
  }
  c_[i] = std::move(c);
}

void LaurentSeries::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

bool LaurentSeries::is_zero() const { return !valuation().has_value(); }

std::optional<int> LaurentSeries::valuation() const {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) return lo_ + static_cast<int>(i);
  }
  return std::nullopt;
}

std::optional<int> LaurentSeries::top_exponent() const {
  if (c_.empty()) return std::nullopt;
  return lo_ + static_cast<int>(c_.size()) - 1;
}

int LaurentSeries::effective_valuation() const {
  if (auto v = valuation()) return *v;
  return saturating_add(hi_, 1);
}

const Poly& LaurentSeries::coeff(int k) const {
  if (k > hi_) {
    throw TruncationError("coefficient of " + var_ + "^" + std::to_string(k) +
                              " lies outside the window",
                          window_hint(var_, lo_, k));
  }
  if (k < lo_) return zero_;
  std::size_t i = static_cast<std::size_t>(k - lo_);
  return i < c_.size() ? c_[i] : zero_;
}

std::vector<int> LaurentSeries::support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i].is_zero()) s.push_back(lo_ + static_cast<int>(i));
  }
  return s;
}

LaurentSeries LaurentSeries::with_hi(int hi) const {
  if (hi >= hi_) return *this;
  return restricted(lo_, hi);
}

LaurentSeries LaurentSeries::restricted(int lo, int hi) const {
  hi = std::min(hi, hi_);
  LaurentSeries s(var_, ring_, lo, std::max(hi, lo - 1));
  s.touched_ = touched_;
  for (int k : support()) {
    if (k >= lo && k <= hi) s.set(k, coeff(k));
  }
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries s = *this;
  s.lo_ += k;
  s.hi_ = saturating_add(hi_, k);
  return s;
}

LaurentSeries LaurentSeries::with_var(std::string var) const {
  LaurentSeries s = *this;
  s.var_ = std::move(var);
  return s;
}

LaurentSeries LaurentSeries::touched(bool flag) const {
  LaurentSeries s = *this;
  s.touched_ = s.touched_ || flag;
  return s;
}

LaurentSeries LaurentSeries::map_coefficients(const std::function<Poly(int, const Poly&)>& f) const {
  std::optional<RingPtr> target;
  std::vector<std::pair<int, Poly>> out;
  for (int k : support()) {
    Poly c = f(k, coeff(k));
    if (!target) target = c.ring();
    out.emplace_back(k, std::move(c));
  }
  LaurentSeries s(var_, target ? *target : ring_, lo_, hi_);
  s.touched_ = touched_;
  for (auto& [k, c] : out) s.set(k, std::move(c));
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::change_ring(const RingPtr& target) const {
  LaurentSeries s(var_, target, lo_, hi_);
  s.touched_ = touched_;
  for (int k : support()) s.set(k, lazard::change_ring(coeff(k), target));
  s.trim();
  return s;
}

bool LaurentSeries::homogeneous_of(int d, int var_degree) const {
  for (int k : support()) {
    if (!coeff(k).is_homogeneous_of(d - k * var_degree)) return false;
  }
  return true;
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries s = *this;
  for (auto& c : s.c_) c = -c;
  return s;
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  require_same_ring(ring_, o.ring_, "series addition");
  if (var_ != o.var_) throw ShapeError("series variables differ");
  LaurentSeries s(var_, ring_, std::min(lo_, o.lo_), std::min(hi_, o.hi_));
  s.touched_ = touched_ || o.touched_;
  for (int k : support()) {
    if (k <= s.hi_) s.set(k, coeff(k));
  }
  for (int k : o.support()) {
    if (k <= s.hi_) s.set(k, s.coeff(k) + o.coeff(k));
  }
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries mul_capped(const LaurentSeries& f, const LaurentSeries& g, int cap) {
  require_same_ring(f.ring_, g.ring_, "series product");
  if (f.var_ != g.var_) throw ShapeError("series variables differ");
  int hi = std::min(saturating_add(f.effective_valuation(), g.hi_),
                    saturating_add(g.effective_valuation(), f.hi_));
  hi = std::min(hi, cap);
  int lo = f.lo_ + g.lo_;
  LaurentSeries s(f.var_, f.ring_, lo, std::max(hi, lo - 1));
  s.touched_ = f.touched_ || g.touched_;
  auto fs = f.support();
  auto gs = g.support();
  std::map<int, Poly> acc;
  for (int i : fs) {
    for (int j : gs) {
      int k = i + j;
      if (k > hi) break;
      Poly prod = f.coeff(i) * g.coeff(j);
      auto it = acc.find(k);
      if (it == acc.end()) {
        acc.emplace(k, std::move(prod));
      } else {
        it->second += prod;
      }
    }
  }
  for (auto& [k, c] : acc) s.set(k, std::move(c));
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const { return mul_capped(*this, o, kInf); }

LaurentSeries LaurentSeries::operator*(const Poly& c) const {
  require_same_ring(ring_, c.ring(), "series scaling");
  LaurentSeries s = *this;
  for (auto& x : s.c_) x = x * c;
  s.trim();
  return s;
}

LaurentSeries LaurentSeries::operator*(const Rational& c) const {
  LaurentSeries s = *this;
  for (auto& x : s.c_) x = x * c;
  s.trim();
  return s;
}

std::string LaurentSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto power = [&](int k) -> std::string {
    if (k == 0) return "";
    if (k == 1) return var_;
    return var_ + "^" + std::to_string(k);
  };
  for (int k : support()) {
    const Poly& c = coeff(k);
    std::string body;
    if (c.size() == 1) {
      std::string cs = c.to_string();
      if (k == 0) {
        body = cs;
      } else if (cs == "1") {
        body = power(k);
      } else if (cs == "-1") {
        body = "-" + power(k);
      } else {
        body = cs + "*" + power(k);
      }
    } else {
      body = "(" + c.to_string() + ")";
      if (k != 0) body += "*" + power(k);
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
  if (bounded()) {
    if (!first) os << " + ";
    os << "O(" << var_ << "^" << (hi_ + 1) << ")";
  } else if (first) {
    os << "0";
  }
  return os.str();
}

bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.var_ != b.var_ || !same_ring(a.ring_, b.ring_) || a.hi_ != b.hi_) return false;
  auto sa = a.support();
  if (sa != b.support()) return false;
  for (int k : sa) {
    if (!(a.coeff(k) == b.coeff(k))) return false;
  }
  return true;
}

LaurentSeries pow(const LaurentSeries& f, unsigned n, int cap) {
  LaurentSeries result = LaurentSeries::constant(f.var(), Poly::constant(f.ring(), 1));
  result = result.with_hi(cap);
  LaurentSeries base = f.with_hi(cap);
  while (n > 0) {
    if (n & 1U) result = mul_capped(result, base, cap);
    n >>= 1U;
    if (n > 0) base = mul_capped(base, base, cap);
  }
  return result.touched(f.truncation_touched());
}

LaurentSeries inverse(const LaurentSeries& f, std::optional<int> hi) {
  auto v = f.valuation();
  if (!v) throw NotInvertible("zero series is not invertible");
  const Poly& u0 = f.coeff(*v);
  if (!u0.is_unit()) throw NotInvertible("lowest coefficient " + u0.to_string() + " is not a unit");
  Poly w0 = u0.inverse();
  int hi_u = f.bounded() ? f.hi() - *v : kInf;
  if (hi) hi_u = std::min(hi_u, *hi + *v);
  if (hi_u >= kInf) {
    if (f.support().size() == 1) return LaurentSeries::monomial(f.var(), w0, -*v);
    throw PreconditionError("inverse of a Laurent polynomial needs an explicit window");
  }
  std::vector<Poly> u, w;
  for (int m = 0; m <= hi_u; ++m) u.push_back(f.coeff(*v + m));
  w.push_back(w0);
  for (int m = 1; m <= hi_u; ++m) {
    Poly acc(f.ring());
    for (int i = 1; i <= m; ++i) {
      if (!u[i].is_zero() && !w[m - i].is_zero()) acc += u[i] * w[m - i];
    }
    w.push_back(-(acc * w0));
  }
  return LaurentSeries::from_coefficients(f.var(), f.ring(), -*v, std::move(w), hi_u - *v)
      .touched(f.truncation_touched());
}

LaurentSeries compose(const LaurentSeries& f, const LaurentSeries& g, int cap) {
  require_same_ring(f.ring(), g.ring(), "composition");
  auto fs = f.support();
  const int v = g.effective_valuation();
  const bool finite_f = !f.bounded();
  if (!finite_f && v < 1) throw PreconditionError("composition needs an inner series of positive valuation");
  bool negative = !fs.empty() && fs.front() < 0;
  if (negative && (!g.valuation() || !g.coeff(*g.valuation()).is_unit())) {
    throw NotInvertible("negative powers need an inner series with unit lowest coefficient");
  }
  int hi = kInf;
  if (!finite_f) hi = saturating_add(static_cast<int>(std::min<long long>(
                                         static_cast<long long>(f.hi() + 1) * v, kInf)),
                                     -1);
  for (int k : fs) {
    int hk = kInf;
    if (k >= 1) {
      hk = saturating_add(g.hi(), (k - 1) * v);
    } else if (k < 0) {
      hk = g.bounded() ? g.hi() - (-k + 1) * v : kInf;
    }
    hi = std::min(hi, hk);
  }
  hi = std::min(hi, cap);
  int lo = 0;
  for (int k : fs) lo = std::min(lo, k > 0 ? k * g.lo() : k * v);
  LaurentSeries result(g.var(), f.ring(), std::min(lo, saturating_add(hi, 1)), hi);
  result = result.touched(f.truncation_touched() || g.truncation_touched());
  if (fs.empty()) return result;

  int kmax = std::max(0, fs.back());
  bool dense = static_cast<int>(fs.size()) * 3 > kmax;
  std::map<int, LaurentSeries> powers;
  LaurentSeries one = LaurentSeries::constant(g.var(), Poly::constant(g.ring(), 1));
  auto positive_power = [&](int k) -> LaurentSeries {
    if (k == 0) return one;
    if (dense) {
      if (powers.empty()) powers.emplace(1, g.with_hi(hi));
      while (powers.rbegin()->first < k) {
        int last = powers.rbegin()->first;
        powers.emplace(last + 1, mul_capped(powers.rbegin()->second, g, hi));
      }
      return powers.at(k);
    }
    return pow(g, static_cast<unsigned>(k), hi);
  };
  std::optional<LaurentSeries> ginv;
  for (int k : fs) {
    LaurentSeries term = one;
    if (k > 0) {
      term = positive_power(k);
    } else if (k < 0) {
      if (!ginv) {
        std::optional<int> need;
        if (hi < kInf) need = hi + (-fs.front()) * v;
        ginv = inverse(g, need);
      }
      term = pow(*ginv, static_cast<unsigned>(-k), hi);
    }
    result = result + (term * f.coeff(k)).with_hi(hi);
  }
  return result.with_hi(hi);
}

namespace {

// The degree-0 coefficient of a unit must itself be invertible in the coefficient domain.
bool lead_unit_in_domain(const Poly& c) {
  const Rational& a = c.terms().front().coeff;
  switch (c.ring()->domain()) {
    case CoefficientDomain::Integer: return abs(a) == 1;
    case CoefficientDomain::PLocal: return p_valuation(a, *c.ring()->prime()) == 0;
    case CoefficientDomain::Rational: return true;
  }
  return true;
}

}  // namespace

LaurentSeries reversion(const LaurentSeries& f, std::optional<int> order) {
  for (int k : f.support()) {
    if (k < 1) throw PreconditionError("reversion needs a series with zero constant term");
  }
  if (f.lo() > 1) throw PreconditionError("reversion needs a known linear coefficient");
  const Poly& c1 = f.coeff(1);
  if (!c1.is_unit() || !lead_unit_in_domain(c1)) {
    throw NotInvertible("linear coefficient " + c1.to_string() + " is not a unit");
  }
  int n = f.hi();
  if (order) n = std::min(n, *order);
  if (n >= kInf) throw PreconditionError("reversion of a polynomial needs an explicit order");
  const RingPtr& R = f.ring();
  Poly c1_inv = c1.inverse();
  // g = t * G; powers G^k are tracked with the J.C.P. Miller recurrence.
  std::vector<Poly> G{c1_inv};
  std::vector<int> ks;
  for (int k : f.support()) {
    if (k >= 2 && k <= n) ks.push_back(k);
  }
  std::map<int, std::vector<Poly>> H;
  for (int k : ks) H[k].push_back(c1_inv.pow(static_cast<unsigned>(k)));
  auto extend = [&](int k, int j) {
    auto& h = H[k];
    while (static_cast<int>(h.size()) <= j) {
      int jj = static_cast<int>(h.size());
      Poly acc(R);
      for (int i = 1; i <= jj; ++i) {
        if (G[i].is_zero() || h[jj - i].is_zero()) continue;
        acc += G[i] * h[jj - i] * Rational((k + 1) * i - jj);
      }
      h.push_back(acc * c1 * Rational(1, jj));
    }
  };
  for (int m = 2; m <= n; ++m) {
    Poly acc(R);
    for (int k : ks) {
      if (k > m) break;
      extend(k, m - k);
      const Poly& hk = H[k][m - k];
      if (!hk.is_zero()) acc += f.coeff(k) * hk;
    }
    G.push_back(-(acc * c1_inv));
  }
  return LaurentSeries::from_coefficients(f.var(), R, 1, std::move(G), n).touched(f.truncation_touched());
}

LaurentSeries exp_series(const LaurentSeries& f, std::optional<int> order) {
  for (int k : f.support()) {
    if (k < 1) throw PreconditionError("exp needs a series without constant term");
  }
  int n = f.hi();
  if (order) n = std::min(n, *order);
  if (n >= kInf) throw PreconditionError("exp of a polynomial needs an explicit order");
  std::vector<Poly> e{Poly::constant(f.ring(), 1)};
  for (int m = 1; m <= n; ++m) {
    Poly acc(f.ring());
    for (int k = 1; k <= m; ++k) {
      const Poly& fk = f.coeff(k);
      if (!fk.is_zero() && !e[m - k].is_zero()) acc += fk * e[m - k] * Rational(k);
    }
    e.push_back(acc * Rational(1, m));
  }
  return LaurentSeries::from_coefficients(f.var(), f.ring(), 0, std::move(e), n)
      .touched(f.truncation_touched());
}

LaurentSeries derivative(const LaurentSeries& f) {
  LaurentSeries d(f.var(), f.ring(), f.lo() - 1, f.bounded() ? f.hi() - 1 : LaurentSeries::kUnbounded);
  std::vector<Poly> coeffs;
  int lo = f.lo() - 1;
  for (int k = f.lo(); k <= (f.top_exponent() ? *f.top_exponent() : f.lo() - 1); ++k) {
    coeffs.push_back(f.coeff(k) * Rational(k));
  }
  return LaurentSeries::from_coefficients(f.var(), f.ring(), lo, std::move(coeffs), d.hi())
      .touched(f.truncation_touched());
}

LaurentSeries divide_nonpositive(const LaurentSeries& n, const LaurentSeries& p,
                                 std::optional<int> prime) {
  require_same_ring(n.ring(), p.ring(), "division");
  for (int k : p.support()) {
    if (k < 0) throw PreconditionError("divisor must be a power series");
  }
  const Poly& a0 = p.coeff(0);
  if (!a0.is_unit()) throw NotInvertible("constant term of the divisor is not invertible");
  for (int k : n.support()) {
    if (k > 0) throw PreconditionError("dividend must be supported in exponents <= 0");
  }
  Poly a0_inv = a0.inverse();
  const int lo = std::min(n.lo(), 0);
  int top = std::min(0, n.hi());
  bool touched = n.truncation_touched() || p.truncation_touched() || n.hi() < 0;
  std::vector<Poly> phi;
  for (int m = lo; m <= top; ++m) {
    if (m - lo > p.hi()) {
      top = m - 1;
      touched = true;
      break;
    }
    Poly acc = n.coeff(m);
    for (int j = 1; j <= m - lo; ++j) {
      const Poly& pj = p.coeff(j);
      const Poly& prev = phi[static_cast<std::size_t>(m - j - lo)];
      if (!pj.is_zero() && !prev.is_zero()) acc -= pj * prev;
    }
    Poly c = acc * a0_inv;
    if (prime) {
      for (const auto& t : c.terms()) {
        if (!is_p_integral(t.coeff, *prime)) throw IntegralityViolation(m, c.to_string());
      }
    }
    phi.push_back(std::move(c));
  }
  return LaurentSeries::from_coefficients(n.var(), n.ring(), lo, std::move(phi), top).touched(touched);
}

bool agree_on_overlap(const LaurentSeries& a, const LaurentSeries& b) {
  if (a.var() != b.var() || !same_ring(a.ring(), b.ring())) return false;
  int lo = std::min(a.lo(), b.lo());
  int hi = std::min(a.hi(), b.hi());
  std::vector<int> ks = a.support();
  auto sb = b.support();
  ks.insert(ks.end(), sb.begin(), sb.end());
  for (int k : ks) {
    if (k < lo || k > hi) continue;
    if (!(a.coeff(k) == b.coeff(k))) return false;
  }
  return true;
}

LaurentSeries laurent_from_poly(const Poly& f, const RingPtr& coeff_ring, std::string var, int lo,
                                int hi) {
  std::map<int, std::vector<Term>> parts;
  for (const auto& t : f.terms()) {
    Term u = t;
    u.mono.t = 0;
    parts[t.mono.t].push_back(std::move(u));
  }
  LaurentSeries s(std::move(var), coeff_ring, lo, hi);
  std::vector<Poly> coeffs;
  for (auto& [k, terms] : parts) {
    if (k < lo) throw ShapeError("term below the requested window");
    if (k > hi) continue;
    while (static_cast<int>(coeffs.size()) < k - lo) coeffs.emplace_back(coeff_ring);
    coeffs.push_back(change_ring(Poly(f.ring(), std::move(terms)), coeff_ring));
  }
  return LaurentSeries::from_coefficients(s.var(), coeff_ring, lo, std::move(coeffs), hi);
}

}  // namespace lazard
