#include <algorithm>
#include <optional>

#include "doctest.h"
#include "lazard/errors.hpp"
#include "lazard/phimod.hpp"
#include "lazard/text.hpp"

using namespace lazard;

namespace {

// At p = 2 through degree -6 the only generators that matter are v1 (deg -1) and v2 (deg -3).
struct Gen {
  int a, e1, e2;
};

std::optional<int> killing_power(const std::vector<Gen>& ann, int e1, int e2) {
  std::optional<int> best;
  for (const auto& g : ann) {
    if (g.e1 <= e1 && g.e2 <= e2) best = best ? std::min(*best, g.a) : g.a;
  }
  return best;
}

// Graded pieces of BP/ann * x at p = 2 by direct enumeration of v1^i v2^j.
GradedRanks naive_ranks(const std::vector<Gen>& ann, int r, int depth) {
  GradedRanks out;
  for (int d = r - depth; d <= r; ++d) {
    GradedPiece& piece = out[d];
    const int drop = r - d;
    for (int j = 0; 3 * j <= drop; ++j) {
      const int i = drop - 3 * j;
      std::optional<int> a = killing_power(ann, i, j);
      if (!a) {
        ++piece.free_rank;
      } else if (*a > 0) {
        piece.torsion.push_back(*a);
      }
    }
    std::sort(piece.torsion.rbegin(), piece.torsion.rend());
  }
  return out;
}

FiltrationCertificate cert(const FiltrationResult& r) {
  REQUIRE(std::holds_alternative<FiltrationCertificate>(r));
  return std::get<FiltrationCertificate>(r);
}

}  // namespace

TEST_CASE("degree bound f(n)") {
  CHECK(f_bound(2, 2) == 3);
  CHECK(f_bound(3, 1) == 1);
  CHECK(f_bound(2, 3) == 7);
  CHECK(f_bound(5, 2) == 6);
  CHECK_THROWS_AS(f_bound(2, 0), PreconditionError);
}

TEST_CASE("torsion generator search") {
  TorsionSearch s = find_torsion_generator(make_phi_module(2, 1, "p^2"));
  CHECK(s.kind == TorsionSearch::Kind::Torsion);
  CHECK(s.n == 1);
  CHECK(s.u.p_exp == 1);
  TorsionSearch t = find_torsion_generator(make_phi_module(2, 3, "2, v1"));
  CHECK(t.n == 2);
  CHECK(t.u.p_exp == 0);
  CHECK(std::all_of(t.u.v_exps.begin(), t.u.v_exps.end(), [](int e) { return e == 0; }));
  CHECK(find_torsion_generator(make_phi_module(2, 2, "0")).kind == TorsionSearch::Kind::Free);
  CHECK(find_torsion_generator(make_phi_module(2, 2, "v1")).kind == TorsionSearch::Kind::NotPTorsion);
}

TEST_CASE("filtrations of the worked examples") {
  for (int s = 1; s <= 3; ++s) {
    PhiModule m = make_phi_module(2, 1, "p^" + std::to_string(s));
    const FiltrationCertificate c = cert(filtrate(m));
    REQUIRE(c.factors.size() == static_cast<std::size_t>(s));
    for (const auto& f : c.factors) {
      CHECK(f.n == 1);
      CHECK(f.gen_degree == 1);
    }
    CHECK(check_certificate(m, c, 6).ok);
  }
  PhiModule m2 = make_phi_module(2, 3, "2, v1");
  const FiltrationCertificate c2 = cert(filtrate(m2));
  REQUIRE(c2.factors.size() == 1);
  CHECK(c2.factors[0].n == 2);
  CHECK(c2.factors[0].gen_degree == f_bound(2, 2));
  CHECK(check_certificate(m2, c2, 6).ok);

  FiltrationResult w = filtrate(make_phi_module(2, 2, "2, v1^2"));
  REQUIRE(std::holds_alternative<NonRealizableWitness>(w));
  const auto& wit = std::get<NonRealizableWitness>(w);
  CHECK(wit.violated == Violation::DegreeBound);
  CHECK(wit.n == 2);
  CHECK(wit.gen_degree == 1);
  CHECK(wit.gen_degree < f_bound(2, wit.n));
}

TEST_CASE("free modules and non-p-torsion annihilators") {
  const FiltrationCertificate c = cert(filtrate(make_phi_module(3, 2, "0")));
  REQUIRE(c.factors.size() == 1);
  CHECK_FALSE(c.factors[0].n.has_value());
  CHECK(c.factors[0].gen_degree == 2);
  FiltrationResult w = filtrate(make_phi_module(2, 2, "v1"));
  REQUIRE(std::holds_alternative<NonRealizableWitness>(w));
  CHECK(std::get<NonRealizableWitness>(w).violated == Violation::AnnihilatorNotIn);
}

TEST_CASE("graded ranks agree with monomial enumeration") {
  const std::vector<std::pair<std::string, std::vector<Gen>>> cases{
      {"4", {{2, 0, 0}}},
      {"2, v1", {{1, 0, 0}, {0, 1, 0}}},
      {"8, 2*v1^2, v2", {{3, 0, 0}, {1, 2, 0}, {0, 0, 1}}},
      {"4*v2, 2*v1^3, 16", {{2, 0, 1}, {1, 3, 0}, {4, 0, 0}}},
      {"0", {}},
  };
  for (const auto& [text, gens] : cases) {
    for (int r : {1, 4}) {
      CHECK(graded_ranks(make_phi_module(2, r, text), 6) == naive_ranks(gens, r, 6));
    }
  }
  GradedRanks g = graded_ranks(make_phi_module(2, 1, "4"), 0);
  CHECK(g.at(1) == GradedPiece{0, {2}});
  GradedRanks h = graded_ranks(make_phi_module(2, 3, "2, v1"), 1);
  CHECK(h.at(3) == GradedPiece{0, {1}});
  CHECK(h.at(2) == GradedPiece{});
}

TEST_CASE("every certificate in a grid passes its own check and respects the bound") {
  for (int p : {2, 3}) {
    for (const std::string ann : {"p", "p^2", "p^3", "p, v1", "p^2, p*v1, v1^2", "p, v1, v2", "p^2, v1^3"}) {
      for (int r = 1; r <= 12; ++r) {
        PhiModule m = make_phi_module(p, r, ann);
        FiltrationResult res = filtrate(m);
        CHECK(to_json(res) == to_json(filtrate(m)));
        if (const auto* c = std::get_if<FiltrationCertificate>(&res)) {
          for (const auto& f : c->factors) CHECK(f.gen_degree >= f_bound(p, *f.n));
          CHECK(check_certificate(m, *c, 8).ok);
        } else {
          const auto& w = std::get<NonRealizableWitness>(res);
          if (w.violated == Violation::DegreeBound) CHECK(w.gen_degree < f_bound(p, w.n));
        }
      }
    }
  }
}

TEST_CASE("tampered certificates are rejected") {
  PhiModule m = make_phi_module(2, 3, "4");
  FiltrationCertificate c = cert(filtrate(m));
  REQUIRE(check_certificate(m, c, 6).ok);
  c.factors[0].n = 2;
  CertificateCheck bad = check_certificate(m, c, 6);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.problems.empty());
  FiltrationCertificate dropped = cert(filtrate(m));
  dropped.factors.pop_back();
  CHECK_FALSE(check_certificate(m, dropped, 6).ok);
}

TEST_CASE("certificate JSON") {
  nlohmann::json j = to_json(filtrate(make_phi_module(2, 3, "2, v1")));
  CHECK(j["schema"] == 1);
  CHECK(j["status"] == "ok");
  REQUIRE(j["factors"].size() == 1);
  CHECK(j["factors"][0]["n"] == 2);
  CHECK(j["factors"][0]["gen_degree"] == 3);
  nlohmann::json w = to_json(filtrate(make_phi_module(2, 2, "2, v1^2")));
  CHECK(w["status"] == "non_realizable");
  CHECK(w["witness"]["violated"] == to_string(Violation::DegreeBound));
  CHECK(w["witness"]["bound"] == 3);
}
