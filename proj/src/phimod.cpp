#include "lazard/phimod.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <regex>

#include "lazard/errors.hpp"
#include "lazard/text.hpp"

namespace lazard {

namespace {

using nlohmann::json;

long prime_power(int p, int k) { return ipow(p, static_cast<unsigned>(k)).get_si(); }

// Position of v_n in the ring, if present.
std::optional<std::size_t> v_slot(const RingSpec& ring, int n) { return ring.index_of("v" + std::to_string(n)); }

int generator_degree(const IdealGenerator& g, const RingSpec& ring) {
  int d = 0;
  for (std::size_t i = 0; i < g.v_exps.size(); ++i) d += g.v_exps[i] * ring.generators()[i].degree;
  return d;
}

IdealGenerator zero_generator(const RingSpec& ring) { return {0, std::vector<int>(ring.size(), 0)}; }

// Exponent vectors over v_1..v_k (k as large as the degree allows) of total degree -s.
void enumerate_v_monomials(int p, int s, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<long> weights;  // p^i - 1
  for (int i = 1; prime_power(p, i) - 1 <= std::max(s, 0); ++i) weights.push_back(prime_power(p, i) - 1);
  std::vector<int> exps(weights.size(), 0);
  std::function<void(std::size_t, long)> rec = [&](std::size_t i, long rest) {
    if (i == weights.size()) {
      if (rest == 0) visit(exps);
      return;
    }
    for (int e = 0; e * weights[i] <= rest; ++e) {
      exps[i] = e;
      rec(i + 1, rest - e * weights[i]);
    }
    exps[i] = 0;
  };
  if (s >= 0) rec(0, s);
}

// Minimal p-exponent killing v^exps (exponents over v_1..v_k) in the ideal. Generators
// outside the ideal's ring never occur in its generators, so they are dropped.
std::optional<int> killing_exponent(const MonomialIdeal& ideal, const std::vector<int>& exps) {
  const RingSpec& ring = *ideal.ring();
  std::vector<int> alpha(ring.size(), 0);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (auto slot = v_slot(ring, static_cast<int>(i) + 1)) alpha[*slot] = exps[i];
  }
  return ideal.p_exponent_at(alpha);
}

void add_piece(GradedPiece& piece, std::optional<int> a) {
  if (!a) {
    ++piece.free_rank;
  } else if (*a > 0) {
    piece.torsion.push_back(*a);
  }
}

void finish(GradedRanks& g) {
  for (auto& [d, piece] : g) std::sort(piece.torsion.rbegin(), piece.torsion.rend());
}

MonomialIdeal single(const RingPtr& ring, const IdealGenerator& u) { return MonomialIdeal(ring, {u}); }

}  // namespace

PhiModule make_phi_module(int p, int r, std::string_view ann) {
  if (r <= 0) throw PreconditionError("Phi-module degree must be positive");
  int num_v = 1;
  std::string text(ann);
  static const std::regex v_re("v([0-9]+)");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), v_re); it != std::sregex_iterator(); ++it) {
    num_v = std::max(num_v, std::stoi((*it)[1].str()));
  }
  RingPtr ring = bp_ring(p, kMaxCodegree, num_v + 1);
  return PhiModule{p, r, parse_ideal(ann, ring)};
}

int f_bound(int p, int n) {
  if (n < 1) throw PreconditionError("f(n) needs n >= 1");
  return static_cast<int>((prime_power(p, n) - 1) / (p - 1));
}

TorsionSearch find_torsion_generator(const PhiModule& m) {
  const RingSpec& ring = *m.ann.ring();
  if (m.ann.is_unit()) throw PreconditionError("the module is zero");
  if (m.ann.is_zero()) return {TorsionSearch::Kind::Free, zero_generator(ring), 0};
  IdealGenerator u = zero_generator(ring);
  auto a = m.ann.p_exponent_at(u.v_exps);
  if (!a) return {TorsionSearch::Kind::NotPTorsion, u, 0};
  u.p_exp = *a - 1;
  for (int n = 1;; ++n) {
    auto slot = v_slot(ring, n);
    if (!slot) return {TorsionSearch::Kind::Torsion, u, n};
    // Smallest j with p^k0 v^alpha v_n^j in ann.
    std::optional<int> j;
    for (const auto& g : m.ann.generators()) {
      if (g.p_exp > u.p_exp) continue;
      bool fits = true;
      for (std::size_t i = 0; i < g.v_exps.size() && fits; ++i) {
        if (i != *slot) fits = g.v_exps[i] <= u.v_exps[i];
      }
      if (fits && (!j || g.v_exps[*slot] < *j)) j = g.v_exps[*slot];
    }
    if (!j) return {TorsionSearch::Kind::Torsion, u, n};
    if (*j == 0) throw ConsistencyError("current monomial already lies in the annihilator");
    u.v_exps[*slot] = *j - 1;
  }
}

FiltrationResult filtrate(const PhiModule& m) {
  const RingPtr& ring = m.ann.ring();
  FiltrationCertificate cert{m, {}};
  if (m.ann.is_zero()) {
    cert.factors.push_back({std::nullopt, m.r, zero_generator(*ring)});
    return cert;
  }
  MonomialIdeal stage = m.ann;
  while (!stage.is_unit()) {
    TorsionSearch found = find_torsion_generator(PhiModule{m.p, m.r, stage});
    const int gen_degree = m.r + generator_degree(found.u, *ring);
    if (found.kind != TorsionSearch::Kind::Torsion) {
      return NonRealizableWitness{m, stage, found.u, 0, gen_degree, Violation::AnnihilatorNotIn, cert.factors};
    }
    InRecognition rec = stage.colon(found.u.p_exp, found.u.v_exps).recognize_invariant_prime();
    if (rec.kind != InRecognition::Kind::In || rec.n != found.n) {
      return NonRealizableWitness{m, stage, found.u, found.n, gen_degree, Violation::AnnihilatorNotIn, cert.factors};
    }
    if (gen_degree < f_bound(m.p, found.n)) {
      return NonRealizableWitness{m, stage, found.u, found.n, gen_degree, Violation::DegreeBound, cert.factors};
    }
    cert.factors.push_back({found.n, gen_degree, found.u});
    stage = stage + single(ring, found.u);
  }
  return cert;
}

int GradedPiece::length() const { return std::accumulate(torsion.begin(), torsion.end(), 0); }

GradedRanks graded_ranks(const PhiModule& m, int depth) {
  if (depth < 0) throw PreconditionError("depth must be nonnegative");
  GradedRanks out;
  for (int d = m.r - depth; d <= m.r; ++d) {
    GradedPiece& piece = out[d];
    enumerate_v_monomials(m.p, m.r - d, [&](const std::vector<int>& exps) {
      add_piece(piece, killing_exponent(m.ann, exps));
    });
  }
  finish(out);
  return out;
}

GradedRanks certificate_ranks(const FiltrationCertificate& c, int depth) {
  if (depth < 0) throw PreconditionError("depth must be nonnegative");
  const int p = c.input.p;
  GradedRanks out;
  for (int d = c.input.r - depth; d <= c.input.r; ++d) out[d];
  for (const auto& f : c.factors) {
    for (auto& [d, piece] : out) {
      enumerate_v_monomials(p, f.gen_degree - d, [&](const std::vector<int>& exps) {
        if (!f.n) {
          add_piece(piece, std::nullopt);
          return;
        }
        // BP/I(n) is F_p[v_n, v_n+1, ...].
        for (int i = 0; i + 1 < *f.n && i < static_cast<int>(exps.size()); ++i) {
          if (exps[static_cast<std::size_t>(i)] != 0) return;
        }
        add_piece(piece, 1);
      });
    }
  }
  finish(out);
  return out;
}

CertificateCheck check_certificate(const PhiModule& m, const FiltrationCertificate& c, int depth) {
  CertificateCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.problems.push_back(std::move(msg));
  };
  const RingPtr& ring = m.ann.ring();
  MonomialIdeal stage = m.ann;
  for (const auto& f : c.factors) {
    const std::string label = to_string(f, ring);
    if (!f.n) {
      if (!m.ann.is_zero() || f.gen_degree != m.r) fail(label + ": free factor only for a zero annihilator");
      continue;
    }
    if (f.gen_degree < f_bound(m.p, *f.n)) fail(label + ": degree below f(n) = " + std::to_string(f_bound(m.p, *f.n)));
    if (f.gen_degree != m.r + generator_degree(f.u, *ring)) fail(label + ": degree does not match u");
    InRecognition rec = stage.colon(f.u.p_exp, f.u.v_exps).recognize_invariant_prime();
    if (rec.kind != InRecognition::Kind::In || rec.n != *f.n) fail(label + ": annihilator of u*x is not I(n)");
    stage = stage + single(ring, f.u);
  }
  if (!m.ann.is_zero() && !stage.is_unit()) fail("quotient steps do not reach the unit ideal");

  GradedRanks lhs = graded_ranks(m, depth);
  GradedRanks rhs = certificate_ranks(c, depth);
  for (const auto& [d, a] : lhs) {
    const GradedPiece& b = rhs[d];
    const std::string at = "degree " + std::to_string(d) + ": ";
    if (a.free_rank != b.free_rank) fail(at + "free rank differs");
    if (a.length() != b.length()) fail(at + "torsion length " + std::to_string(a.length()) + " vs " + std::to_string(b.length()));
    if (a.torsion.size() > b.torsion.size()) fail(at + "module has more cyclic summands than the filtration");
  }
  return out;
}

std::string monomial_string(const IdealGenerator& g, const RingPtr& ring) { return single(ring, g).to_string(); }

std::string to_string(const FiltrationFactor& f, const RingPtr& ring) {
  std::string head = f.n ? "I(" + std::to_string(*f.n) + ")" : std::string("free");
  return head + "@" + std::to_string(f.gen_degree) + " u=" + monomial_string(f.u, ring);
}

std::string to_string(Violation v) { return v == Violation::DegreeBound ? "DEGREE_BOUND" : "ANNIHILATOR_NOT_IN"; }

namespace {

json input_json(const PhiModule& m) { return {{"p", m.p}, {"r", m.r}, {"ann", m.ann.to_string()}}; }

json factors_json(const std::vector<FiltrationFactor>& fs, const RingPtr& ring) {
  json arr = json::array();
  for (const auto& f : fs) {
    arr.push_back({{"n", f.n ? json(*f.n) : json("free")},
                   {"gen_degree", f.gen_degree},
                   {"u", monomial_string(f.u, ring)}});
  }
  return arr;
}

}  // namespace

json to_json(const FiltrationResult& r) {
  if (const auto* c = std::get_if<FiltrationCertificate>(&r)) {
    return {{"schema", 1},
            {"input", input_json(c->input)},
            {"factors", factors_json(c->factors, c->input.ann.ring())},
            {"status", "ok"}};
  }
  const auto& w = std::get<NonRealizableWitness>(r);
  const RingPtr& ring = w.input.ann.ring();
  return {{"schema", 1},
          {"input", input_json(w.input)},
          {"factors", factors_json(w.factors, ring)},
          {"status", "non_realizable"},
          {"witness",
           {{"stage", w.stage.to_string()},
            {"u", monomial_string(w.u, ring)},
            {"n", w.n},
            {"gen_degree", w.gen_degree},
            {"bound", w.n > 0 ? json(f_bound(w.input.p, w.n)) : json(nullptr)},
            {"violated", to_string(w.violated)}}}};
}

json to_json(const GradedRanks& g, int p) {
  json out = json::object();
  for (const auto& [d, piece] : g) {
    json orders = json::array();
    for (int a : piece.torsion) orders.push_back(ipow(p, static_cast<unsigned>(a)).get_si());
    out[std::to_string(d)] = {{"rank", piece.free_rank}, {"torsion", orders}};
  }
  return out;
}

}  // namespace lazard
