#include "lazard/eval.hpp"

#include <algorithm>
#include <regex>

#include "lazard/errors.hpp"
#include "lazard/fgl.hpp"
#include "lazard/ideal.hpp"
#include "lazard/operations.hpp"
#include "lazard/text.hpp"

namespace lazard {

namespace {

using nlohmann::json;

int max_v_index(const std::string& text) {
  static const std::regex v_re("v([0-9]+)");
  int n = 1;
  for (auto it = std::sregex_iterator(text.begin(), text.end(), v_re); it != std::sregex_iterator(); ++it) {
    n = std::max(n, std::stoi((*it)[1].str()));
  }
  return n;
}

int require_p(const EvalRequest& req) {
  if (!req.p) throw ParseError("--p is required for ring " + req.ring, 0);
  if (*req.p < 2 || !mpz_probab_prime_p(Integer(*req.p).get_mpz_t(), 25)) throw ParseError("--p must be prime", 0);
  return *req.p;
}

FormalGroupLaw build_law(const EvalRequest& req, int order) {
  if (req.ring == "universal") return universal_fgl(std::max(order - 1, 1), order);
  if (req.ring == "bp") return bp_fgl(require_p(req), order);
  if (req.ring == "ck1") return ck1_fgl(require_p(req), order);
  throw ParseError("unknown ring '" + req.ring + "'", 0);
}

std::optional<MonomialIdeal> modulus(const EvalRequest& req, const std::string& elem_text) {
  if (!req.mod) return std::nullopt;
  if (req.ring == "universal") throw Unsupported("--mod needs a p-local ring (bp or ck1)");
  const int p = require_p(req);
  RingPtr ring = req.ring == "ck1" ? ck1_ring(p, kMaxCodegree)
                                   : bp_ring(p, kMaxCodegree, std::max(max_v_index(*req.mod), max_v_index(elem_text)));
  return parse_ideal(*req.mod, ring);
}

LaurentSeries windowed(const LaurentSeries& s, const EvalRequest& req, const std::string& hint) {
  if (!req.t_window) return s;
  auto [lo, hi] = *req.t_window;
  if (s.bounded() && hi > s.hi()) {
    throw TruncationError("t^" + std::to_string(hi) + " lies beyond the computed window t^" + std::to_string(s.hi()), hint);
  }
  return s.restricted(lo, hi);
}

json series_json(const LaurentSeries& s) {
  json c = json::object();
  for (int k : s.support()) c[std::to_string(k)] = s.coeff(k).to_string();
  return c;
}

}  // namespace

std::pair<int, int> parse_window(const std::string& text) {
  static const std::regex re("\\s*(-?[0-9]+)\\s*:\\s*(-?[0-9]+)\\s*");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw ParseError("window must look like lo:hi", 0);
  int lo = std::stoi(m[1].str());
  int hi = std::stoi(m[2].str());
  if (lo > hi) throw ParseError("window has lo > hi", 0);
  return {lo, hi};
}

EvalResult evaluate(const EvalRequest& req) {
  if (req.expr.has_value() == req.op.has_value()) throw ParseError("give exactly one of --expr and --op", 0);
  if (req.codegree && (*req.codegree < 0 || *req.codegree > kMaxCodegree)) {
    throw ParseError("--codeg must lie in [0, " + std::to_string(kMaxCodegree) + "]", 0);
  }
  json report = {{"schema", 1}, {"ring", req.ring}};
  if (req.p) report["p"] = *req.p;
  json window = json::object();
  if (req.t_window) window["t"] = {req.t_window->first, req.t_window->second};
  if (req.codegree) window["codegree"] = *req.codegree;

  std::optional<LaurentSeries> series;
  std::optional<Poly> poly;
  std::string value;
  bool touched = false;
  const std::string elem_text = req.elem.value_or("");
  std::optional<MonomialIdeal> ideal = modulus(req, elem_text);
  auto reduce = [&](const Poly& c) { return ideal ? ideal->normal_form(c) : c; };

  if (req.expr) {
    const std::string& e = *req.expr;
    report["expr"] = e;
    int order = req.order.value_or(req.t_window ? std::max(req.t_window->second, 2) : 4);
    if (order < 1 || order > 64) throw ParseError("--order must lie in [1, 64]", 0);
    window["order"] = order;
    FormalGroupLaw f = build_law(req, order);
    const std::string hint = "--order " + std::to_string(req.t_window ? req.t_window->second : order + 1);
    if (e == "F") {
      MultiSeries law = f.law.map_coefficients(reduce);
      value = law.to_string();
    } else if (e == "log" || e == "exp" || e == "pseries" || e == "nseries") {
      LaurentSeries s = e == "log"       ? log_from_law(f)
                        : e == "exp"     ? exp_of(f)
                        : e == "pseries" ? n_series(f, require_p(req))
                                         : n_series(f, req.n.value_or(2));
      series = windowed(s, req, hint);
    } else {
      throw ParseError("unknown expression '" + e + "' (F, log, exp, pseries, nseries)", 0);
    }
  } else {
    const std::string& op = *req.op;
    report["op"] = op;
    if (req.ring != "bp") throw Unsupported("operations act on the bp ring");
    if (!req.elem) throw ParseError("--op needs --elem", 0);
    const int p = require_p(req);
    Poly lambda = parse_poly(*req.elem, bp_ring(p, kMaxCodegree, max_v_index(*req.elem)));
    report["elem"] = lambda.to_string();
    OpWindow w{req.codegree, req.t_window ? std::optional<int>(req.t_window->second) : std::nullopt};
    const std::string hint = "--codeg " + std::to_string(std::min(2 * req.codegree.value_or(16) + 8, kMaxCodegree));
    if (op == "st") {
      series = windowed(steenrod_point(p, lambda, w), req, hint);
    } else if (op == "phi") {
      if (req.slice) {
        report["slice"] = *req.slice;
        poly = phi_slice(p, lambda, *req.slice, w);
      } else {
        series = windowed(phi_total(p, lambda, w), req, hint);
      }
    } else if (op == "ln") {
      poly = ln_total_bp(p, lambda, w);
    } else {
      throw ParseError("unknown operation '" + op + "' (st, phi, ln)", 0);
    }
  }

  if (series) {
    LaurentSeries s = series->map_coefficients([&](int, const Poly& c) { return reduce(c); });
    value = s.to_string();
    touched = s.truncation_touched();
    report["coefficients"] = series_json(s);
    report["t_hi"] = s.hi();
  } else if (poly) {
    Poly r = reduce(*poly);
    value = r.to_string();
    touched = poly->truncated();
    window["codegree"] = poly->ring()->codegree();
  }
  if (req.mod) report["modulus"] = ideal->to_string();
  report["value"] = value;
  report["window"] = window;
  report["truncation_touched"] = touched;
  return EvalResult{value, report, touched};
}

}  // namespace lazard
