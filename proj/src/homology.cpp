#include "lazard/homology.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "lazard/errors.hpp"
#include "lazard/polynomial.hpp"

namespace lazard {

namespace {

using nlohmann::json;

// Prime-power decomposition by trial division; orders here are small.
std::vector<std::pair<Integer, int>> factorize(Integer n) {
  std::vector<std::pair<Integer, int>> out;
  for (Integer q = 2; q * q <= n; ++q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e) out.emplace_back(q, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

int rank_mod_p(IntMatrix m, const Integer& p) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  int rank = 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
    auto& top = m[static_cast<std::size_t>(rank)];
    Integer inv;
    Integer a = ((top[c] % p) + p) % p;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    for (std::size_t r = static_cast<std::size_t>(rank) + 1; r < rows; ++r) {
      Integer f = (m[r][c] * inv) % p;
      if (f == 0) continue;
      for (std::size_t k = c; k < cols; ++k) m[r][k] = (m[r][k] - f * top[k]) % p;
    }
    ++rank;
  }
  return rank;
}

std::string summand_text(const std::vector<std::pair<int, int>>& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " + " : "") << "BP/I(" << s[i].first << ")@" << s[i].second;
  return os.str();
}

std::string tor_text(const TorReport& r) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [j, by_degree] : r.groups) {
    for (const auto& [d, g] : by_degree) {
      os << (first ? "" : "; ") << "Tor_" << j << "@" << d << " = " << g.to_string();
      first = false;
    }
  }
  return first ? "0" : os.str();
}

json integer_json(const Integer& n) {
  if (!n.fits_slong_p()) return n.get_str();
  return n.get_si();
}

Integer integer_from_json(const json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<long>());
}

}  // namespace

AbelianGroup AbelianGroup::from_cyclics(int free_rank, std::vector<Integer> orders) {
  AbelianGroup g;
  g.free_rank = free_rank;
  std::map<Integer, std::vector<int>> by_prime;
  for (Integer n : orders) {
    n = abs(n);
    if (n == 0) {
      ++g.free_rank;
      continue;
    }
    for (const auto& [q, e] : factorize(n)) by_prime[q].push_back(e);
  }
  std::size_t len = 0;
  for (auto& [q, es] : by_prime) {
    std::sort(es.rbegin(), es.rend());
    len = std::max(len, es.size());
  }
  // The k-th largest invariant factor collects the k-th largest power of each prime.
  for (std::size_t k = 0; k < len; ++k) {
    Integer d = 1;
    for (const auto& [q, es] : by_prime) {
      if (k < es.size()) d *= ipow(q.get_si(), static_cast<unsigned>(es[k]));
    }
    g.factors.push_back(d);
  }
  std::reverse(g.factors.begin(), g.factors.end());
  return g;
}

AbelianGroup AbelianGroup::cyclic(const Integer& order) { return from_cyclics(0, {order}); }

AbelianGroup AbelianGroup::integers(int rank) { return AbelianGroup{rank, {}}; }

std::vector<Integer> AbelianGroup::elementary_divisors() const {
  std::vector<Integer> out;
  for (const auto& d : factors) {
    for (const auto& [q, e] : factorize(d)) out.push_back(ipow(q.get_si(), static_cast<unsigned>(e)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbelianGroup::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank > 0) {
    os << "Z";
    if (free_rank > 1) os << "^" << free_rank;
    first = false;
  }
  for (const auto& d : factors) {
    os << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Integer> orders = a.factors;
  orders.insert(orders.end(), b.factors.begin(), b.factors.end());
  return AbelianGroup::from_cyclics(a.free_rank + b.free_rank, std::move(orders));
}

std::vector<Integer> smith_diagonal(IntMatrix m) {
  std::vector<Integer> diag;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: smallest nonzero entry of the remaining block.
    std::optional<std::pair<std::size_t, std::size_t>> piv;
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        if (m[r][c] != 0 && (!piv || abs(m[r][c]) < abs(m[piv->first][piv->second]))) piv = {{r, c}};
      }
    }
    if (!piv) break;
    std::swap(m[t], m[piv->first]);
    for (auto& row : m) std::swap(row[t], row[piv->second]);
    bool clean = true;
    for (std::size_t r = t + 1; r < rows; ++r) {
      Integer q = m[r][t] / m[t][t];
      if (q != 0) {
        for (std::size_t c = t; c < cols; ++c) m[r][c] -= q * m[t][c];
      }
      if (m[r][t] != 0) clean = false;
    }
    for (std::size_t c = t + 1; c < cols; ++c) {
      Integer q = m[t][c] / m[t][t];
      if (q != 0) {
        for (std::size_t r = t; r < rows; ++r) m[r][c] -= q * m[r][t];
      }
      if (m[t][c] != 0) clean = false;
    }
    if (!clean) continue;  // a smaller remainder becomes the next pivot
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  for (std::size_t i = 0; i < diag.size(); ++i) {
    for (std::size_t j = i + 1; j < diag.size(); ++j) {
      Integer g;
      mpz_gcd(g.get_mpz_t(), diag[i].get_mpz_t(), diag[j].get_mpz_t());
      diag[j] = diag[i] / g * diag[j];
      diag[i] = g;
    }
  }
  return diag;
}

AbelianGroup homology_at(const IntMatrix& in, const IntMatrix& out, int middle) {
  if (!in.empty() && static_cast<int>(in.size()) != middle) throw ShapeError("incoming matrix has wrong row count");
  if (!out.empty() && static_cast<int>(out[0].size()) != middle) throw ShapeError("outgoing matrix has wrong column count");
  const int rank_out = static_cast<int>(smith_diagonal(out).size());
  std::vector<Integer> d_in = smith_diagonal(in);
  const int rank_in = static_cast<int>(d_in.size());
  // ker(out) is saturated in Z^middle, so the torsion of ker/im is that of Z^middle/im.
  std::vector<Integer> torsion;
  for (const auto& d : d_in) {
    if (d != 1) torsion.push_back(d);
  }
  return AbelianGroup::from_cyclics(middle - rank_out - rank_in, std::move(torsion));
}

int KoszulComplex::degree(std::span<const int> subset) const {
  int d = deg_x;
  for (int i : subset) {
    if (i > 0) d += 1 - static_cast<int>(ipow(p, static_cast<unsigned>(i)).get_si());
  }
  return d;
}

KoszulComplex koszul_complex(int p, int n, int deg_x) {
  if (n < 1) throw PreconditionError("Koszul complex needs n >= 1");
  if (p < 2 || !mpz_probab_prime_p(Integer(p).get_mpz_t(), 25)) throw ShapeError("p must be prime");
  KoszulComplex k{p, n, deg_x, std::vector<std::vector<std::vector<int>>>(static_cast<std::size_t>(n + 1))};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) s.push_back(i);
    }
    k.terms[s.size()].push_back(std::move(s));
  }
  for (auto& level : k.terms) std::sort(level.begin(), level.end());
  return k;
}

bool koszul_square_zero(const KoszulComplex& k) {
  RingPtr ring = bp_ring(k.p, kMaxCodegree, std::max(k.n - 1, 1));
  auto c = [&](int i) {
    return i == 0 ? Poly::constant(ring, k.p) : Poly::generator(ring, "v" + std::to_string(i));
  };
  auto d = [&](const std::vector<int>& s) {
    std::map<std::vector<int>, Poly> out;
    for (std::size_t pos = 0; pos < s.size(); ++pos) {
      std::vector<int> rest = s;
      rest.erase(rest.begin() + static_cast<long>(pos));
      Poly coeff = c(s[pos]) * Rational(pos % 2 ? -1 : 1);
      out.emplace(rest, coeff);
    }
    return out;
  };
  for (std::size_t j = 2; j < k.terms.size(); ++j) {
    for (const auto& s : k.terms[j]) {
      std::map<std::vector<int>, Poly> twice;
      for (const auto& [t, a] : d(s)) {
        for (const auto& [u, b] : d(t)) {
          auto it = twice.find(u);
          if (it == twice.end()) {
            twice.emplace(u, a * b);
          } else {
            it->second += a * b;
          }
        }
      }
      for (const auto& [u, v] : twice) {
        if (!v.is_zero()) return false;
      }
    }
  }
  return true;
}

IntMatrix koszul_matrix_over_z(const KoszulComplex& k, int j, int degree) {
  if (j < 1 || j > k.n) return {};
  std::vector<const std::vector<int>*> rows, cols;
  for (const auto& s : k.terms[static_cast<std::size_t>(j - 1)]) {
    if (k.degree(s) == degree) rows.push_back(&s);
  }
  for (const auto& s : k.terms[static_cast<std::size_t>(j)]) {
    if (k.degree(s) == degree) cols.push_back(&s);
  }
  IntMatrix m(rows.size(), std::vector<Integer>(cols.size(), Integer(0)));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto& s = *cols[c];
    // Only c_0 = p survives; 0 sits in position 0, so the sign is +.
    if (s.empty() || s.front() != 0) continue;
    std::vector<int> rest(s.begin() + 1, s.end());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (*rows[r] == rest) m[r][c] = k.p;
    }
  }
  return m;
}

int TorReport::max_n() const {
  int n = 0;
  for (const auto& s : summands) n = std::max(n, s.first);
  return n;
}

TorReport koszul_tor(int p, int n, int deg_x) {
  KoszulComplex k = koszul_complex(p, n, deg_x);
  if (!koszul_square_zero(k)) throw ConsistencyError("Koszul differential does not square to zero");
  TorReport report{p, {{n, deg_x}}, {}};
  for (int j = 0; j <= n; ++j) {
    std::set<int> degrees;
    for (const auto& s : k.terms[static_cast<std::size_t>(j)]) degrees.insert(k.degree(s));
    for (int d : degrees) {
      int middle = 0;
      for (const auto& s : k.terms[static_cast<std::size_t>(j)]) middle += k.degree(s) == d;
      AbelianGroup h = homology_at(koszul_matrix_over_z(k, j + 1, d), koszul_matrix_over_z(k, j, d), middle);
      if (!h.is_zero()) report.groups[j][d] = h;
    }
  }
  return report;
}

TorReport koszul_tor_sum(int p, const std::vector<std::pair<int, int>>& summands) {
  if (summands.empty()) throw PreconditionError("need at least one summand");
  TorReport total{p, summands, {}};
  for (const auto& [n, deg_x] : summands) {
    TorReport part = koszul_tor(p, n, deg_x);
    for (const auto& [j, by_degree] : part.groups) {
      for (const auto& [d, g] : by_degree) {
        auto& slot = total.groups[j][d];
        slot = direct_sum(slot, g);
      }
    }
  }
  return total;
}

CheckReport check_tor_window(const TorReport& report, int d, bool strict) {
  std::vector<std::string> problems;
  for (const auto& [j, by_degree] : report.groups) {
    for (const auto& [k, g] : by_degree) {
      const std::string at = "Tor_" + std::to_string(j) + " at degree " + std::to_string(k);
      if (k > d) problems.push_back(at + " exceeds d");
      if (k < j) problems.push_back(at + " lies below j");
      if (k == j && !g.is_free()) problems.push_back(at + " has torsion");
      if (k == j && strict) problems.push_back(at + " is nonzero");
    }
  }
  json summands = json::array();
  for (const auto& [n, x] : report.summands) summands.push_back({n, x});
  CheckReport r;
  r.claim_id = "tor_window";
  r.params = {{"p", report.p}, {"summands", summands}, {"d", d}, {"strict", strict}, {"problems", problems}};
  r.lhs = tor_text(report);
  r.rhs = strict ? "Tor_j supported in [j+1, d]" : "Tor_j supported in [j, d], free in degree j";
  r.modulus_ideal = summand_text(report.summands);
  r.member = problems.empty();
  r.window = {{"d", d}};
  r.exact = true;
  return r;
}

bool check_euler_characteristic(const KoszulComplex& k, const TorReport& report) {
  std::set<int> degrees;
  for (const auto& level : k.terms) {
    for (const auto& s : level) degrees.insert(k.degree(s));
  }
  const Integer p = k.p;
  for (int d : degrees) {
    long chain = 0, tor = 0, mod_p = 0;
    for (int j = 0; j <= k.n; ++j) {
      const long sign = j % 2 ? -1 : 1;
      int size = 0;
      for (const auto& s : k.terms[static_cast<std::size_t>(j)]) size += k.degree(s) == d;
      chain += sign * size;
      auto jt = report.groups.find(j);
      if (jt != report.groups.end()) {
        auto dt = jt->second.find(d);
        if (dt != jt->second.end()) tor += sign * dt->second.free_rank;
      }
      const int dim = size - rank_mod_p(koszul_matrix_over_z(k, j, d), p) -
                      rank_mod_p(koszul_matrix_over_z(k, j + 1, d), p);
      mod_p += sign * dim;
    }
    if (chain != tor || chain != mod_p) return false;
  }
  return true;
}

json to_json(const TorReport& r) {
  json groups = json::object();
  for (const auto& [j, by_degree] : r.groups) {
    json level = json::object();
    for (const auto& [d, g] : by_degree) {
      json torsion = json::array();
      for (const auto& f : g.factors) torsion.push_back(integer_json(f));
      level[std::to_string(d)] = {{"rank", g.free_rank}, {"torsion", torsion}};
    }
    groups[std::to_string(j)] = level;
  }
  json summands = json::array();
  for (const auto& [n, x] : r.summands) summands.push_back({{"n", n}, {"deg_x", x}});
  return {{"schema", kReportSchema}, {"p", r.p}, {"summands", summands}, {"tor", groups}};
}

TorReport tor_report_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kReportSchema) throw ParseError("unsupported report schema", 0);
    TorReport r;
    r.p = j.at("p").get<int>();
    for (const auto& s : j.at("summands")) r.summands.emplace_back(s.at("n").get<int>(), s.at("deg_x").get<int>());
    for (const auto& [jk, level] : j.at("tor").items()) {
      for (const auto& [dk, g] : level.items()) {
        AbelianGroup group;
        group.free_rank = g.at("rank").get<int>();
        for (const auto& f : g.at("torsion")) group.factors.push_back(integer_from_json(f));
        r.groups[std::stoi(jk)][std::stoi(dk)] = group;
      }
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad Tor report: ") + e.what(), 0);
  }
}

AbelianGroup ext1_abelian(const AbelianGroup& a, const AbelianGroup& b) {
  std::vector<Integer> orders;
  for (const auto& n : a.factors) {
    for (int i = 0; i < b.free_rank; ++i) orders.push_back(n);  // Ext(Z/n, Z) = Z/n
    for (const auto& m : b.factors) orders.push_back(gcd(n, m));
  }
  return AbelianGroup::from_cyclics(0, std::move(orders));
}

bool ExtElement::is_split() const {
  return std::all_of(coords.begin(), coords.end(), [](const Integer& c) { return c == 0; });
}

ExtElement make_ext_element(const AbelianGroup& group, std::vector<Integer> coords) {
  if (group.free_rank != 0) throw ShapeError("Ext of finitely generated groups is finite");
  if (coords.size() != group.factors.size()) throw ShapeError("one coordinate per invariant factor expected");
  for (std::size_t i = 0; i < coords.size(); ++i) {
    coords[i] %= group.factors[i];
    if (coords[i] < 0) coords[i] += group.factors[i];
  }
  return ExtElement{group, std::move(coords)};
}

int lazard_basis_size(int k) {
  if (k < 0) return 0;
  std::vector<long> count(static_cast<std::size_t>(k + 1), 0);
  count[0] = 1;
  for (int part = 1; part <= k; ++part) {
    for (int s = part; s <= k; ++s) count[static_cast<std::size_t>(s)] += count[static_cast<std::size_t>(s - part)];
  }
  return static_cast<int>(count[static_cast<std::size_t>(k)]);
}

ExtElement specify_extension(const ExtElement& e, std::span<const Integer> v_coords, std::optional<int> lazard_degree) {
  if (v_coords.empty()) throw ShapeError("need at least one coordinate");
  if (lazard_degree && static_cast<int>(v_coords.size()) != lazard_basis_size(*lazard_degree)) {
    throw ShapeError("expected " + std::to_string(lazard_basis_size(*lazard_degree)) +
                     " coordinates for Lazard degree " + std::to_string(-*lazard_degree));
  }
  const std::size_t rank = v_coords.size();
  // Ext(A, B)^rank in invariant-factor order: factor i of copy k sits at i * rank + k.
  AbelianGroup group;
  std::vector<Integer> coords;
  for (std::size_t i = 0; i < e.group.factors.size(); ++i) {
    for (std::size_t k = 0; k < rank; ++k) {
      group.factors.push_back(e.group.factors[i]);
      coords.push_back(v_coords[k] * e.coords[i]);
    }
  }
  return make_ext_element(group, std::move(coords));
}

}  // namespace lazard
