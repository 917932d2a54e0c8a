#include <iostream>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "lazard/errors.hpp"
#include "lazard/eval.hpp"
#include "lazard/homology.hpp"
#include "lazard/phimod.hpp"
#include "lazard/suites.hpp"

using namespace lazard;
using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFail = 2;
constexpr int kExitInconclusive = 3;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::Pass: return kExitPass;
    case Verdict::Fail: return kExitFail;
    case Verdict::Inconclusive: return kExitInconclusive;
  }
  return kExitFail;
}

struct EvalArgs {
  EvalRequest req;
  std::string t_window;
  bool json = false;
};

int run_eval(EvalArgs& a) {
  if (!a.t_window.empty()) a.req.t_window = parse_window(a.t_window);
  if (!a.req.codegree) a.req.codegree = env_codegree();
  EvalResult r = evaluate(a.req);
  std::cout << (a.json ? dump(r.report) : r.value) << "\n";
  return kExitPass;
}

struct VerifyArgs {
  std::string suite;
  std::string grid;
  int jobs = 1;
  std::optional<std::size_t> sample;
  std::optional<std::uint64_t> seed;
  std::optional<int> codegree;
  std::optional<int> t_hi;
  bool json = false;
};

json verify_json(const SuiteReport& r) {
  json j = to_json(r);
  j["verdict"] = to_string(verdict(r));
  return j;
}

int run_verify(const VerifyArgs& a) {
  if (a.sample && !a.seed) throw ParseError("--sample needs an explicit --seed", 0);
  OpWindow w{a.codegree ? a.codegree : env_codegree(), a.t_hi};
  SuiteSpec spec = parse_suite_spec(a.suite, a.grid, w);
  SuiteReport report = run_suite(spec, RunOptions{a.jobs, a.sample, a.seed.value_or(0)});
  const Verdict v = verdict(report);
  if (a.json) {
    std::cout << dump(verify_json(report)) << "\n";
  } else {
    for (const auto& c : report.checks) {
      const char* tag = !c.member ? "FAIL" : c.exact ? "PASS" : "INCONCLUSIVE";
      std::cout << tag << "  " << c.claim_id << " " << c.params.dump() << "\n";
    }
    for (const auto& e : report.errors) std::cout << "ERROR " << e << "\n";
    std::cout << "suite " << report.suite << ": " << to_string(v) << " (" << report.checks.size() << " checks, "
              << report.errors.size() << " errors)\n";
  }
  return exit_code(v);
}

struct FiltrateArgs {
  int p = 2;
  int r = 1;
  std::string ann;
  std::optional<int> depth;
  bool json = false;
};

int run_filtrate(const FiltrateArgs& a) {
  PhiModule m = make_phi_module(a.p, a.r, a.ann);
  FiltrationResult res = filtrate(m);
  json j = to_json(res);
  int code = std::holds_alternative<FiltrationCertificate>(res) ? kExitPass : kExitFail;
  std::string human;
  if (const auto* c = std::get_if<FiltrationCertificate>(&res)) {
    human = "[";
    for (std::size_t i = 0; i < c->factors.size(); ++i) {
      const auto& f = c->factors[i];
      human += (i ? ", " : "") + (f.n ? "I(" + std::to_string(*f.n) + ")" : std::string("free")) + "@" +
               std::to_string(f.gen_degree);
    }
    human += "]";
    if (a.depth) {
      CertificateCheck chk = check_certificate(m, *c, *a.depth);
      j["check"] = {{"depth", *a.depth}, {"ok", chk.ok}, {"problems", chk.problems}};
      human += chk.ok ? "\ncertificate check: PASS" : "\ncertificate check: FAIL";
      for (const auto& p : chk.problems) human += "\n  " + p;
      if (!chk.ok) code = kExitFail;
    }
  } else {
    const auto& w = std::get<NonRealizableWitness>(res);
    human = "NonRealizableWitness(" + to_string(w.violated) + ") u=" + monomial_string(w.u, m.ann.ring()) +
            " n=" + std::to_string(w.n) + " deg=" + std::to_string(w.gen_degree);
    if (w.n > 0) human += " f(n)=" + std::to_string(f_bound(m.p, w.n));
  }
  std::cout << (a.json ? dump(j) : human) << "\n";
  return code;
}

struct TorArgs {
  int p = 2;
  std::optional<int> n;
  std::optional<int> deg_x;
  std::optional<int> d;
  std::string sum;
  bool strict = false;
  bool assume_generated = false;
  bool json = false;
};

std::vector<std::pair<int, int>> parse_summands(const std::string& text) {
  static const std::regex item("\\s*([0-9]+)\\s*@\\s*(-?[0-9]+)\\s*");
  std::vector<std::pair<int, int>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    std::smatch m;
    if (!std::regex_match(part, m, item)) throw ParseError("summands look like n@degx,n@degx", start);
    out.emplace_back(std::stoi(m[1].str()), std::stoi(m[2].str()));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_tor(const TorArgs& a) {
  TorReport report;
  int default_d = 0;
  if (!a.sum.empty()) {
    if (a.n || a.deg_x) throw ParseError("--sum replaces --n and --degx", 0);
    // The Tor criterion presumes generation in degrees [0, d]; a direct sum carries no
    // presentation, so the caller has to vouch for it.
    if (!a.assume_generated) throw ParseError("--sum needs --assume-generated", 0);
    auto summands = parse_summands(a.sum);
    for (const auto& [n, x] : summands) default_d = std::max(default_d, x);
    report = koszul_tor_sum(a.p, summands);
  } else {
    if (!a.n || !a.deg_x) throw ParseError("--n and --degx are required", 0);
    default_d = *a.deg_x;
    report = koszul_tor(a.p, *a.n, *a.deg_x);
  }
  CheckReport check = check_tor_window(report, a.d.value_or(default_d), a.strict);
  if (a.json) {
    json j = to_json(report);
    j["check"] = to_json(check);
    std::cout << dump(j) << "\n";
  } else {
    for (const auto& [j, by_degree] : report.groups) {
      for (const auto& [deg, g] : by_degree) std::cout << "Tor_" << j << " @" << deg << ": " << g.to_string() << "\n";
    }
    std::cout << "window " << check.rhs << ": " << (check.member ? "PASS" : "FAIL") << "\n";
    for (const auto& p : check.params.at("problems")) std::cout << "  " << p.get<std::string>() << "\n";
  }
  return check.member ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact formal-group-law algebra: operations, congruence checks, filtrations, Tor"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a series or an operation");
  eval->add_option("--ring", ev.req.ring, "universal | bp | ck1")->check(CLI::IsMember({"universal", "bp", "ck1"}));
  eval->add_option("--p", ev.req.p, "prime");
  eval->add_option("--expr", ev.req.expr, "F | log | exp | pseries | nseries");
  eval->add_option("--op", ev.req.op, "st | phi | ln");
  eval->add_option("--elem", ev.req.elem, "element of BP, e.g. v1^2*v2");
  eval->add_option("--slice", ev.req.slice, "t-exponent of Phi to extract");
  eval->add_option("--n", ev.req.n, "multiplier for nseries");
  eval->add_option("--order", ev.req.order, "truncation order of FGL expressions");
  eval->add_option("--t-window", ev.t_window, "lo:hi, both inclusive");
  eval->add_option("--codeg", ev.req.codegree, "coefficient codegree bound");
  eval->add_option("--mod", ev.req.mod, "reduce coefficients modulo this monomial ideal");
  eval->add_flag("--json", ev.json);

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "Run a verification suite over a parameter grid");
  verify->add_option("--suite", vf.suite)->required()->check(CLI::IsMember(suite_ids()));
  verify->add_option("--grid", vf.grid, "e.g. \"p=2:n=1,2; p=3:n=1\"");
  verify->add_option("--jobs", vf.jobs, "worker threads")->check(CLI::Range(1, 256));
  verify->add_option("--sample", vf.sample, "random subset size");
  verify->add_option("--seed", vf.seed, "seed for --sample");
  verify->add_option("--codeg", vf.codegree, "codegree override")->check(CLI::Range(0, kMaxCodegree));
  verify->add_option("--t-hi", vf.t_hi, "highest t-exponent override");
  verify->add_flag("--json", vf.json);
  verify->footer("Defaults (LAZARD_CODEGREE sets the codegree when --codeg is absent):\n" + window_table());

  FiltrateArgs fa;
  auto* filt = app.add_subcommand("filtrate", "Filtrate a cyclic module BP/ann * x");
  filt->add_option("--p", fa.p)->required();
  filt->add_option("--r", fa.r, "degree of the generator")->required();
  filt->add_option("--ann", fa.ann, "monomial annihilator, e.g. \"p, v1^2\"")->required();
  filt->add_option("--check-depth", fa.depth, "compare graded ranks over this many degrees");
  filt->add_flag("--json", fa.json);

  TorArgs ta;
  auto* tor = app.add_subcommand("tor", "Tor over BP of BP/I(n) x via the Koszul complex");
  tor->add_option("--p", ta.p)->required();
  tor->add_option("--n", ta.n);
  tor->add_option("--degx", ta.deg_x);
  tor->add_option("--d", ta.d, "upper degree bound (default deg x)");
  tor->add_option("--sum", ta.sum, "direct sum n@degx,n@degx,...");
  tor->add_flag("--assume-generated", ta.assume_generated, "assert generation in degrees [0, d] for --sum");
  tor->add_flag("--strict", ta.strict, "require Tor_j in degrees >= j + 1");
  tor->add_flag("--json", ta.json);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*eval) return run_eval(ev);
    if (*verify) return run_verify(vf);
    if (*filt) return run_filtrate(fa);
    if (*tor) return run_tor(ta);
  } catch (const TruncationError& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kExitInconclusive;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Unsupported& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
