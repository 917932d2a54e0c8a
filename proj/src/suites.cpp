#include "lazard/suites.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <random>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "lazard/errors.hpp"
#include "lazard/fgl.hpp"
#include "lazard/homology.hpp"
#include "lazard/phimod.hpp"
#include "lazard/text.hpp"
#include "lazard/verify.hpp"

namespace lazard {

namespace {

using nlohmann::json;

struct SuiteInfo {
  std::string id;
  std::set<std::string> keys;
  std::string grid;
  std::string window;
};

const std::vector<SuiteInfo>& suite_table() {
  static const std::vector<SuiteInfo> table = {
      {"st_vn", {"p", "n"}, "p=2:n=1,2; p=3:n=1", "t up to p^2, codegree t_hi - p*deg v_n"},
      {"phi_divide", {"p", "n", "i", "u"}, "p=2,3:n=1,2:i=1,2:u=1,p,p^2,v1", "codegree -p*deg(lambda)"},
      {"phi_linear", {"p", "n", "u", "l"}, "p=2,3:n=1,2:u=1,p,p^2,v1:l=0,1,2", "codegree -p*deg(u*lambda); doubled for stability"},
      {"ln_linear", {"p", "n", "u", "i"}, "p=2,3:n=1,2:u=1,p,p^2,v1:i=0,1,2", "codegree -deg(lambda)"},
      {"hopf", {"k"}, "k=4", "codegree k"},
      {"pseries", {"p", "n"}, "p=2:n=1,2; p=3:n=1", "t up to p^n - 1"},
      {"artin_hasse", {"p", "N"}, "p=2,3,5:N=20", "order N"},
      {"ck1", {"p", "N"}, "p=2,3:N=8", "order N"},
      {"filtration",
       {"p", "r", "ann", "expect", "depth"},
       "p=2:r=1:ann=(p),(p^2),(p^3); p=2:r=3:ann=(p,v1); p=2:r=2:ann=(p,v1^2):expect=DEGREE_BOUND",
       "graded ranks over depth degrees (default 6)"},
      {"tor", {"p", "n", "offset", "d", "strict", "expect"}, "p=2,3:n=1,2,3:offset=0,-1", "exact over Z"},
  };
  return table;
}

const SuiteInfo& suite_info(std::string_view id) {
  for (const auto& s : suite_table()) {
    if (s.id == id) return s;
  }
  throw ParseError("unknown suite '" + std::string(id) + "'", 0);
}

bool is_int(const std::string& s) {
  static const std::regex re("-?[0-9]+");
  return std::regex_match(s, re);
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Splits at sep outside parentheses; offsets are kept for error positions.
std::vector<std::pair<std::string, std::size_t>> split_top(std::string_view s, char sep, std::size_t base) {
  std::vector<std::pair<std::string, std::size_t>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == sep && depth == 0)) {
      out.emplace_back(std::string(s.substr(start, i - start)), base + start);
      start = i + 1;
    } else if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      if (--depth < 0) throw ParseError("unbalanced ')'", base + i);
    }
  }
  if (depth != 0) throw ParseError("unbalanced '('", base + s.size());
  return out;
}

using Clause = std::map<std::string, std::vector<std::string>>;

Clause parse_clause(const std::string& text, std::size_t base, const SuiteInfo& info) {
  Clause c;
  for (const auto& [part, at] : split_top(text, ':', base)) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=values", at);
    std::string key = trim(std::string_view(part).substr(0, eq));
    if (!info.keys.count(key)) throw ParseError("unknown key '" + key + "' for suite " + info.id, at);
    if (c.count(key)) throw ParseError("repeated key '" + key + "'", at);
    auto& values = c[key];
    for (auto [v, vat] : split_top(std::string_view(part).substr(eq + 1), ',', at + eq + 1)) {
      std::string t = trim(v);
      if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = trim(std::string_view(t).substr(1, t.size() - 2));
      if (t.empty()) throw ParseError("empty value for '" + key + "'", vat);
      values.push_back(t);
    }
  }
  return c;
}

void parse_grid(std::string_view grid, const SuiteInfo& info, std::vector<Clause>& blocks, Clause& globals) {
  for (const auto& [text, at] : split_top(grid, ';', 0)) {
    if (trim(text).empty()) continue;
    Clause c = parse_clause(text, at, info);
    if (c.count("p")) {
      blocks.push_back(std::move(c));
    } else {
      for (auto& [k, v] : c) globals[k] = std::move(v);
    }
  }
}

void expand(const Clause& c, std::vector<GridPoint>& out) {
  std::vector<GridPoint> acc{GridPoint{}};
  for (const auto& [key, values] : c) {
    std::vector<GridPoint> next;
    for (const auto& g : acc) {
      for (const auto& v : values) {
        GridPoint h = g;
        h.values[key] = v;
        next.push_back(std::move(h));
      }
    }
    acc = std::move(next);
  }
  out.insert(out.end(), acc.begin(), acc.end());
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int q = 2; q * q <= p; ++q) {
    if (p % q == 0) return false;
  }
  return true;
}

void require_range(const GridPoint& g, const std::string& key, int lo, int hi) {
  if (!g.has(key)) return;
  const std::string& v = g.values.at(key);
  if (!is_int(v)) throw ParseError(key + "=" + v + " is not an integer", 0);
  const int x = std::stoi(v);
  if (x < lo || x > hi) {
    throw ParseError(key + "=" + v + " outside supported range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", 0);
  }
}

RingPtr grid_ring(int p, int n) { return bp_ring(p, kMaxCodegree, std::max(n, 1)); }

Poly grid_monomial(const GridPoint& g, int p, int n) {
  return parse_poly(g.get("u", "1"), grid_ring(p, n));
}

// Highest v index in u, or 0.
int u_height(const GridPoint& g, int p) {
  PMonomial m = decompose_monomial(grid_monomial(g, p, 4), p);
  return static_cast<int>(m.k.size());
}

// Products may pair u with n too small for it; those points are dropped.
bool admissible(const std::string& suite, const GridPoint& g) {
  if (!g.has("u")) return true;
  const int p = g.get_int("p");
  const int n = g.get_int("n");
  const int h = u_height(g, p);
  return suite == "ln_linear" ? h <= n : h <= n - 1;
}

void validate(const std::string& suite, const GridPoint& g) {
  if (g.has("p")) {
    require_range(g, "p", 2, 7);
    if (!is_prime(g.get_int("p"))) throw ParseError("p=" + g.get("p") + " is not prime", 0);
  }
  const int n_max = (suite == "st_vn" || suite == "pseries" || suite == "tor") ? 3 : 2;
  require_range(g, "n", 1, n_max);
  require_range(g, "i", suite == "phi_divide" ? 1 : 0, 3);
  require_range(g, "l", 0, 3);
  require_range(g, "k", 1, 6);
  require_range(g, "N", 1, 64);
  require_range(g, "r", 1, 64);
  require_range(g, "depth", 0, 40);
  require_range(g, "offset", -3, 3);
  require_range(g, "d", -64, 64);
  require_range(g, "strict", 0, 1);
  if (g.has("u")) {
    try {
      decompose_monomial(grid_monomial(g, g.get_int("p"), 4), g.get_int("p"));
    } catch (const Error& e) {
      throw ParseError("u=" + g.get("u") + ": " + e.what(), 0);
    }
  }
  if (g.has("expect")) {
    static const std::set<std::string> ok = {"ok", "pass", "fail", "DEGREE_BOUND", "ANNIHILATOR_NOT_IN"};
    if (!ok.count(g.get("expect"))) throw ParseError("unknown expectation '" + g.get("expect") + "'", 0);
  }
  if (suite == "filtration" && !g.has("ann")) throw ParseError("filtration needs ann=", 0);
}

Poly v_power(const RingPtr& ring, int n, int k) {
  if (k == 0) return Poly::constant(ring, 1);
  return Poly::generator(ring, "v" + std::to_string(n), static_cast<unsigned>(k));
}

std::vector<CheckReport> run_artin_hasse(int p, int order) {
  CheckReport r;
  r.claim_id = "artin_hasse";
  r.params = {{"p", p}, {"N", order}};
  r.rhs = "Z_(" + std::to_string(p) + ")[[x]]";
  r.window = {{"order", order}};
  r.exact = true;
  try {
    LaurentSeries e = artin_hasse(p, order);
    r.lhs = e.to_string();
    r.member = true;
  } catch (const ConsistencyError& e) {
    r.lhs = e.what();
    r.member = false;
  }
  return {r};
}

std::vector<CheckReport> run_ck1(int p, int order) {
  FormalGroupLaw ck = ck1_fgl(p, order);
  CheckReport integral;
  integral.claim_id = "ck1_integral";
  integral.params = {{"p", p}, {"N", order}};
  integral.lhs = ck.law.to_string();
  integral.rhs = "homogeneous coefficients in Z_(" + std::to_string(p) + ")[v1]";
  integral.member = true;
  for (const auto& [e, c] : ck.law.terms()) {
    if (!c.is_p_integral(p) || !c.is_homogeneous_of(1 - e[0] - e[1])) integral.member = false;
  }
  integral.window = {{"order", order}};
  integral.exact = true;

  FormalGroupLaw mult = p_typify(multiplicative_fgl(order), p).law;
  std::vector<Poly> one{Poly::constant(mult.ring, 1)};
  std::set<MultiSeries::Exponent> exps;
  for (const auto& [e, c] : ck.law.terms()) exps.insert(e);
  for (const auto& [e, c] : mult.law.terms()) exps.insert(e);
  CheckReport special;
  special.claim_id = "ck1_specialize";
  special.params = {{"p", p}, {"N", order}};
  special.member = true;
  MultiSeries at_one = ck.law.map_coefficients([&](const Poly& c) { return substitute(c, mult.ring, one); });
  for (const auto& e : exps) {
    Poly a = substitute(ck.law.coeff(e), mult.ring, one);
    if (!(a - mult.law.coeff(e)).is_zero()) special.member = false;
  }
  special.lhs = at_one.to_string();
  special.rhs = mult.law.to_string();
  special.window = {{"order", order}};
  special.exact = true;
  return {integral, special};
}

std::string factor_list(const std::vector<FiltrationFactor>& fs, const RingPtr& ring) {
  std::string s = "[";
  for (std::size_t i = 0; i < fs.size(); ++i) {
    s += (i ? ", " : "") + to_string(fs[i], ring);
  }
  return s + "]";
}

std::vector<CheckReport> run_filtration(const GridPoint& g) {
  const int p = g.get_int("p");
  const int r = g.get_int("r", 1);
  const int depth = g.get_int("depth", 6);
  const std::string expect = g.get("expect", "ok");
  PhiModule m = make_phi_module(p, r, g.get("ann"));
  FiltrationResult res = filtrate(m);
  CheckReport out;
  out.claim_id = "filtration";
  out.params = {{"p", p}, {"r", r}, {"ann", m.ann.to_string()}, {"depth", depth}};
  out.rhs = expect;
  out.modulus_ideal = m.ann.to_string();
  out.window = {{"depth", depth}};
  out.exact = true;
  if (const auto* c = std::get_if<FiltrationCertificate>(&res)) {
    CertificateCheck chk = check_certificate(m, *c, depth);
    out.lhs = factor_list(c->factors, m.ann.ring());
    out.params["problems"] = chk.problems;
    out.member = (expect == "ok" || expect == "pass") && chk.ok;
  } else {
    const auto& w = std::get<NonRealizableWitness>(res);
    out.lhs = to_string(w.violated) + " at u=" + monomial_string(w.u, m.ann.ring()) + " n=" + std::to_string(w.n) +
              " deg=" + std::to_string(w.gen_degree);
    out.member = expect == to_string(w.violated);
  }
  return {out};
}

std::vector<CheckReport> run_tor(const GridPoint& g) {
  const int p = g.get_int("p");
  const int n = g.get_int("n");
  const int offset = g.get_int("offset", 0);
  const int deg_x = f_bound(p, n) + offset;
  const int d = g.get_int("d", deg_x);
  const bool strict = g.get_int("strict", 1) != 0;
  const std::string expect = g.get("expect", offset >= 0 ? "pass" : "fail");
  TorReport report = koszul_tor(p, n, deg_x);
  CheckReport r = check_tor_window(report, d, strict);
  const bool euler = check_euler_characteristic(koszul_complex(p, n, deg_x), report);
  const bool top_zero = !report.groups.count(n);
  r.claim_id = "tor";
  r.params["deg_x"] = deg_x;
  r.params["expect"] = expect;
  r.params["window_holds"] = r.member;
  r.params["euler"] = euler;
  r.params["top_zero"] = top_zero;
  r.member = (r.member == (expect == "pass" || expect == "ok")) && euler && top_zero;
  return {r};
}

}  // namespace

std::string GridPoint::get(const std::string& key, const std::string& fallback) const {
  auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

int GridPoint::get_int(const std::string& key, std::optional<int> fallback) const {
  auto it = values.find(key);
  if (it == values.end()) {
    if (fallback) return *fallback;
    throw ParseError("missing grid key '" + key + "'", 0);
  }
  if (!is_int(it->second)) throw ParseError(key + "=" + it->second + " is not an integer", 0);
  return std::stoi(it->second);
}

std::string GridPoint::key() const {
  std::string s;
  for (const auto& [k, v] : values) s += (s.empty() ? "" : " ") + k + "=" + v;
  return s;
}

bool operator<(const GridPoint& a, const GridPoint& b) {
  auto x = a.values.begin();
  auto y = b.values.begin();
  for (; x != a.values.end() && y != b.values.end(); ++x, ++y) {
    if (x->first != y->first) return x->first < y->first;
    if (x->second == y->second) continue;
    if (is_int(x->second) && is_int(y->second)) return std::stol(x->second) < std::stol(y->second);
    return x->second < y->second;
  }
  return x == a.values.end() && y != b.values.end();
}

bool operator==(const GridPoint& a, const GridPoint& b) { return a.values == b.values; }

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& s : suite_table()) v.push_back(s.id);
    return v;
  }();
  return ids;
}

std::string default_grid(std::string_view suite) { return suite_info(suite).grid; }

std::string window_table() {
  std::ostringstream os;
  for (const auto& s : suite_table()) os << "  " << s.id << ": grid \"" << s.grid << "\"; " << s.window << "\n";
  return os.str();
}

SuiteSpec parse_suite_spec(std::string_view suite, std::string_view grid, OpWindow window) {
  const SuiteInfo& info = suite_info(suite);
  std::vector<Clause> blocks;
  Clause globals;
  parse_grid(grid, info, blocks, globals);
  if (blocks.empty()) {
    Clause default_globals;
    parse_grid(info.grid, info, blocks, default_globals);
    for (auto& [k, v] : globals) default_globals[k] = v;
    globals = std::move(default_globals);
  }
  if (blocks.empty()) blocks.emplace_back();
  std::vector<GridPoint> points;
  for (auto& b : blocks) {
    for (const auto& [k, v] : globals) b.emplace(k, v);  // block values take precedence
    expand(b, points);
  }
  SuiteSpec spec{info.id, {}, window};
  for (auto& g : points) {
    validate(info.id, g);
    if (admissible(info.id, g)) spec.points.push_back(std::move(g));
  }
  std::sort(spec.points.begin(), spec.points.end());
  spec.points.erase(std::unique(spec.points.begin(), spec.points.end()), spec.points.end());
  if (spec.points.empty()) throw ParseError("grid for " + info.id + " has no admissible points", 0);
  return spec;
}

std::vector<CheckReport> run_point(const std::string& suite, const GridPoint& g, OpWindow w) {
  if (suite == "st_vn") return {verify_st_vn(g.get_int("p"), g.get_int("n"), w)};
  if (suite == "pseries") return {verify_bracket_p(g.get_int("p"), g.get_int("n"))};
  if (suite == "hopf") return {verify_hopf_axioms(g.get_int("k", 4))};
  if (suite == "artin_hasse") return run_artin_hasse(g.get_int("p"), g.get_int("N", 20));
  if (suite == "ck1") return run_ck1(g.get_int("p"), g.get_int("N", 8));
  if (suite == "filtration") return run_filtration(g);
  if (suite == "tor") return run_tor(g);

  const int p = g.get_int("p");
  const int n = g.get_int("n");
  Poly u = grid_monomial(g, p, n);
  if (suite == "phi_divide") return {verify_phi_division(p, n, u, g.get_int("i"), w)};
  if (suite == "phi_linear") {
    Poly lambda = v_power(u.ring(), n, g.get_int("l"));
    std::vector<CheckReport> out = verify_phi_linearity(p, n, u, lambda, w);
    out.push_back(verify_phi_window_stability(p, u * lambda));
    return out;
  }
  if (suite == "ln_linear") {
    std::vector<CheckReport> out;
    const int i = g.get_int("i");
    out.push_back(verify_ln_linearity(p, n, u * v_power(u.ring(), n, i)));
    if (u == Poly::constant(u.ring(), 1) && i == 1) out.push_back(verify_ln_vn(p, n));
    return out;
  }
  throw ParseError("unknown suite '" + suite + "'", 0);
}

SuiteReport run_suite(const SuiteSpec& spec, const RunOptions& options) {
  std::vector<GridPoint> points = spec.points;
  if (options.sample && *options.sample < points.size()) {
    std::vector<GridPoint> chosen;
    std::mt19937_64 rng(options.seed);
    std::sample(points.begin(), points.end(), std::back_inserter(chosen), *options.sample, rng);
    points = std::move(chosen);
  }
  struct Outcome {
    std::vector<CheckReport> checks;
    std::optional<std::string> error;
  };
  std::vector<Outcome> outcomes(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        outcomes[i].checks = run_point(spec.suite, points[i], spec.window);
      } catch (const TruncationError& e) {
        outcomes[i].error = "truncation: " + points[i].key() + ": " + e.what();
      } catch (const std::exception& e) {
        outcomes[i].error = points[i].key() + ": " + e.what();
      }
    }
  };
  const int jobs = std::clamp(options.jobs, 1, static_cast<int>(std::max<std::size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SuiteReport report{spec.suite, {}, {}};
  for (auto& o : outcomes) {
    for (auto& c : o.checks) report.checks.push_back(std::move(c));
    if (o.error) report.errors.push_back(*o.error);
  }
  return report;
}

Verdict verdict(const SuiteReport& r) {
  bool truncated = false;
  for (const auto& e : r.errors) {
    if (e.rfind("truncation: ", 0) != 0) return Verdict::Fail;
    truncated = true;
  }
  if (!std::all_of(r.checks.begin(), r.checks.end(), [](const CheckReport& c) { return c.member; })) return Verdict::Fail;
  if (truncated || !r.all_exact()) return Verdict::Inconclusive;
  return Verdict::Pass;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "";
}

std::optional<int> env_codegree() {
  const char* s = std::getenv("LAZARD_CODEGREE");
  if (!s || !is_int(s)) return std::nullopt;
  const int d = std::atoi(s);
  if (d < 0 || d > kMaxCodegree) return std::nullopt;
  return d;
}

}  // namespace lazard
