#pragma once
// Root systems, Weyl group tables, and the dual root datum.
//
// Coordinate conventions used across the whole workbench:
//   * cartan[i][j] = <alpha_j, alpha_i^vee>, so column j of the Cartan matrix
//     is alpha_j written in fundamental-weight coordinates.
//   * Weights are integer vectors in the fundamental-weight basis ("fw
//     coordinates") of the root system at hand; roots are integer vectors in
//     simple-root coordinates; coroots in simple-coroot coordinates.
//   * fw = cartan * (root coordinates).
// Representations, h, the principal nilpotent and its centralizer all live on
// the DUAL group; RootDatum therefore carries both systems, the dual one being
// the transpose-Cartan system.

#include <optional>
#include <string>
#include <vector>

#include "satake/linalg.hpp"

namespace satake {

using IVec = std::vector<long long>;
using IMat = std::vector<IVec>;
using Weight = IVec;  // fw coordinates

long long ivec_dot(const IVec& a, const IVec& b);
IVec ivec_add(const IVec& a, const IVec& b);
IVec ivec_sub(const IVec& a, const IVec& b);
IVec ivec_neg(const IVec& a);
IVec imat_apply(const IMat& m, const IVec& v);
IMat imat_mul(const IMat& a, const IMat& b);
IMat imat_transpose(const IMat& a);
IMat imat_identity(int n);
std::string ivec_csv(const IVec& v);
IVec parse_ivec_csv(const std::string& s, int expect_len = -1);

// Finite Weyl group, fully tabulated (every supported group has |W| <= 48).
// Elements are indexed 0..size()-1 with 0 = identity; simple reflections are
// indexed 1..rank in API digits but 0..rank-1 in the table dimension.
struct WeylGroup {
  int rank = 0;
  std::vector<IMat> fw_action;              // action on fw coordinates
  std::vector<std::vector<int>> root_perm;  // [w][k] = signed 1-based image index of positive root k
  std::vector<int> length;
  std::vector<int> inverse;
  std::vector<std::vector<int>> left_mul;   // [i][w] = s_{i+1} * w
  std::vector<std::vector<int>> right_mul;  // [i][w] = w * s_{i+1}
  std::vector<std::vector<int>> word;       // reduced word, digits 1..rank
  int w0 = 0;

  int size() const { return static_cast<int>(length.size()); }
  IVec apply(int w, const IVec& fw) const { return imat_apply(fw_action[w], fw); }
  int mul(int u, int v) const;              // group product u*v via word of u
  bool left_descent(int i, int w) const {   // i in 1..rank
    return length[left_mul[i - 1][w]] < length[w];
  }
  bool right_descent(int i, int w) const {
    return length[right_mul[i - 1][w]] < length[w];
  }
};

struct RootSystem {
  int rank = 0;
  IMat cartan;        // cartan[i][j] = <alpha_j, alpha_i^vee>
  IMat pos_roots;     // simple-root coordinates, sorted by (height, lex)
  IMat pos_coroots;   // simple-coroot coordinates, index-aligned with pos_roots
  std::vector<int> height;  // height of pos_roots[k]
  IVec hvec;          // sum of positive coroots = 2 rho^vee, simple-coroot coords
  int highest_root = -1;    // index of the (unique) root of maximal height
  int highest_short = -1;   // index of the root whose coroot is the highest coroot
  IMat snf_U;         // unimodular U with U * cartan * V = diag(snf_diag)
  IVec snf_diag;      // invariant factors of the Cartan matrix
  QMat inv_cartan;    // exact inverse, for coordinate conversions
  WeylGroup weyl;

  int num_pos_roots() const { return static_cast<int>(pos_roots.size()); }
  IVec root_fw(int k) const { return imat_apply(cartan, pos_roots[k]); }
  IVec simple_root_fw(int i) const;  // i in 1..rank: column i-1 of the Cartan matrix

  // <fw, beta_k^vee>
  long long pair(const IVec& fw, int k) const { return ivec_dot(fw, pos_coroots[k]); }
  // lambda(h) where h = sum of positive coroots
  long long pair_h(const IVec& fw) const { return ivec_dot(fw, hvec); }

  IVec simple_reflect_fw(int i, IVec fw) const;  // i in 1..rank
  IVec reflect_fw(int k, IVec fw) const;         // reflection in pos_roots[k]
  bool is_dominant(const IVec& fw) const;

  // Dominant representative; if word != nullptr it receives digits d1..dm with
  // fw = s_{d1} ... s_{dm} (dominant rep).
  IVec dominant_rep(IVec fw, std::vector<int>* word = nullptr) const;

  // Orbit (deduplicated, sorted) together with, per element, the index of a
  // minimal-length Weyl element carrying the dominant representative to it.
  struct Orbit {
    IVec dominant;
    std::vector<IVec> elements;
    std::vector<int> witness;  // elements[k] == weyl.apply(witness[k], dominant)
  };
  Orbit weyl_orbit(const IVec& fw) const;

  // Exact conversion fw -> simple-root coordinates (rational in general).
  QVec fw_to_root_coords(const IVec& fw) const;
  // Integer simple-root coordinates when fw lies in the root lattice.
  std::optional<IVec> root_lattice_coords(const IVec& fw) const;
  bool in_root_lattice(const IVec& fw) const { return root_lattice_coords(fw).has_value(); }

  // Class of fw in (weight lattice)/(root lattice): residues of U*fw mod snf_diag.
  IVec component_tag(const IVec& fw) const;

  // mu <= lambda in dominance order: lambda - mu a non-negative integer
  // combination of simple roots.
  bool dominance_leq(const IVec& mu_fw, const IVec& lambda_fw) const;

  // All dominant mu <= lambda (lambda must be dominant), sorted by decreasing
  // pair_h then lex — the processing order used by the Freudenthal recursion.
  std::vector<IVec> dominant_below(const IVec& lambda_fw) const;

  // Full weight support of the irreducible with highest weight lambda:
  // every nu with dominant_rep(nu) <= lambda and lambda - nu in the root lattice.
  std::vector<IVec> weight_support(const IVec& lambda_fw) const;

  // Invariant factors > 1 of the Cartan matrix (the fundamental group).
  IVec pi1() const;
};

struct RootDatum {
  std::string label;  // A1, A2, A3, B2, C2, G2
  RootSystem group;   // Cartan matrix of the label
  RootSystem dual;    // transpose Cartan: home of all representations
};

// Throws UsageError for unsupported labels.
RootDatum build_root_datum(const std::string& label);
const std::vector<std::string>& supported_labels();

}  // namespace satake
