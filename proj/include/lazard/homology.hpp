#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lazard/rational.hpp"
#include "lazard/report.hpp"

namespace lazard {

// Finitely generated abelian group Z^free_rank + Z/d_1 + ... with d_i | d_(i+1), d_i >= 2.
struct AbelianGroup {
  int free_rank = 0;
  std::vector<Integer> factors;

  // Normalises arbitrary cyclic orders; 1 is dropped and 0 adds a copy of Z.
  static AbelianGroup from_cyclics(int free_rank, std::vector<Integer> orders);
  static AbelianGroup cyclic(const Integer& order);  // order 0 gives Z
  static AbelianGroup integers(int rank = 1);

  bool is_zero() const { return free_rank == 0 && factors.empty(); }
  bool is_free() const { return factors.empty(); }
  // Elementary divisors p^a, sorted.
  std::vector<Integer> elementary_divisors() const;
  std::string to_string() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

AbelianGroup direct_sum(const AbelianGroup& a, const AbelianGroup& b);

using IntMatrix = std::vector<std::vector<Integer>>;  // row-major

// Nonzero invariant factors of m, each dividing the next.
std::vector<Integer> smith_diagonal(IntMatrix m);
// ker(out) / im(in) at the middle term Z^middle.
AbelianGroup homology_at(const IntMatrix& in, const IntMatrix& out, int middle);

// Koszul complex of (c_0, ..., c_(n-1)) = (p, v_1, ..., v_(n-1)) on a generator of degree deg_x.
struct KoszulComplex {
  int p;
  int n;
  int deg_x;
  std::vector<std::vector<std::vector<int>>> terms;  // terms[j]: subsets of size j, ascending

  int degree(std::span<const int> subset) const;
};

KoszulComplex koszul_complex(int p, int n, int deg_x);
// d o d = 0 over BP, before tensoring.
bool koszul_square_zero(const KoszulComplex& k);
// Differential K_j -> K_(j-1) after v_i -> 0, restricted to one internal degree.
IntMatrix koszul_matrix_over_z(const KoszulComplex& k, int j, int degree);

struct TorReport {
  int p = 0;
  // Cyclic summands (n, deg_x) of the module; a single entry for BP/I(n) x.
  std::vector<std::pair<int, int>> summands;
  // j -> degree -> group; zero groups are omitted.
  std::map<int, std::map<int, AbelianGroup>> groups;

  int max_n() const;
  friend bool operator==(const TorReport&, const TorReport&) = default;
};

TorReport koszul_tor(int p, int n, int deg_x);
// Tor of a direct sum of cyclic pieces.
TorReport koszul_tor_sum(int p, const std::vector<std::pair<int, int>>& summands);

// Support of Tor_j in [j, d] (strict: [j + 1, d]) and free in degree j.
CheckReport check_tor_window(const TorReport& report, int d, bool strict);

// Alternating sums of Z-ranks of Tor_j and of mod-p homology against chain ranks.
bool check_euler_characteristic(const KoszulComplex& k, const TorReport& report);

nlohmann::json to_json(const TorReport& r);
TorReport tor_report_from_json(const nlohmann::json& j);

AbelianGroup ext1_abelian(const AbelianGroup& a, const AbelianGroup& b);

// Element of a finite Ext group, coordinates against its invariant factors.
struct ExtElement {
  AbelianGroup group;
  std::vector<Integer> coords;

  bool is_split() const;
  friend bool operator==(const ExtElement&, const ExtElement&) = default;
};

ExtElement make_ext_element(const AbelianGroup& group, std::vector<Integer> coords);
// Number of monomials of degree -k in Z[b_1, b_2, ...] (partitions of k).
int lazard_basis_size(int k);
// (c_1 e, ..., c_rank e) in Ext(A, B)^rank. With lazard_degree the rank must equal the
// size of the monomial basis in that degree.
ExtElement specify_extension(const ExtElement& e, std::span<const Integer> v_coords,
                             std::optional<int> lazard_degree = {});

}  // namespace lazard
