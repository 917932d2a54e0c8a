#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "lazard/ideal.hpp"

namespace lazard {

// Cyclic graded BP-module BP/ann * x with deg x = r > 0.
struct PhiModule {
  int p;
  int r;
  MonomialIdeal ann;
};

// Build a module over a BP ring large enough for the annihilator text.
PhiModule make_phi_module(int p, int r, std::string_view ann);

struct FiltrationFactor {
  std::optional<int> n;  // empty for a free factor
  int gen_degree = 0;
  IdealGenerator u;      // over the annihilator's ring

  friend bool operator==(const FiltrationFactor&, const FiltrationFactor&) = default;
};

struct FiltrationCertificate {
  PhiModule input;
  std::vector<FiltrationFactor> factors;
};

enum class Violation { DegreeBound, AnnihilatorNotIn };

struct NonRealizableWitness {
  PhiModule input;
  MonomialIdeal stage;
  IdealGenerator u;
  int n = 0;
  int gen_degree = 0;
  Violation violated = Violation::DegreeBound;
  std::vector<FiltrationFactor> factors;  // accepted before the failure
};

using FiltrationResult = std::variant<FiltrationCertificate, NonRealizableWitness>;

int f_bound(int p, int n);

struct TorsionSearch {
  enum class Kind { Free, Torsion, NotPTorsion } kind;
  IdealGenerator u;
  int n = 0;
};

TorsionSearch find_torsion_generator(const PhiModule& m);
FiltrationResult filtrate(const PhiModule& m);

// Graded piece of a module: free rank plus cyclic summands Z_(p)/p^a.
struct GradedPiece {
  int free_rank = 0;
  std::vector<int> torsion;  // exponents a, descending

  int length() const;
  friend bool operator==(const GradedPiece&, const GradedPiece&) = default;
};

using GradedRanks = std::map<int, GradedPiece>;

// Degrees r - depth .. r of BP/ann * x.
GradedRanks graded_ranks(const PhiModule& m, int depth);
// Same for the direct sum of BP/I(n_i) shifted to the certified degrees.
GradedRanks certificate_ranks(const FiltrationCertificate& c, int depth);

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> problems;
};

// Degree bounds, replay of the quotient steps, and a per-degree comparison: equal
// free rank, equal torsion length, and no more cyclic summands in the module than
// in the filtration.
CertificateCheck check_certificate(const PhiModule& m, const FiltrationCertificate& c, int depth);

std::string to_string(const FiltrationFactor& f, const RingPtr& ring);
std::string to_string(Violation v);
std::string monomial_string(const IdealGenerator& g, const RingPtr& ring);

nlohmann::json to_json(const FiltrationResult& r);
nlohmann::json to_json(const GradedRanks& g, int p);

}  // namespace lazard
