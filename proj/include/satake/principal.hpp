#pragma once
// Principal sl2 machinery on the dual side: the triple (n, h, f) with
// n = sum of simple raising generators and h = sum of positive coroots, the
// centralizer a = Z(n) graded by ad-h eigenvalues (exponents), the Brylinski
// filtration of weight spaces by kernels of powers of n, generalized
// exponents with exact rank certificates, graded Hom over a, and the pairing
// of centralizer words against the lowest-weight line.
//
// Elements of the dual Lie algebra are stored as coordinate vectors over a
// structural basis built from iterated brackets of Chevalley generators
// (one bracketing word per root, plus the coroot basis of the Cartan), so
// every element can be materialized as an exact matrix on any built irrep.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "satake/linalg.hpp"
#include "satake/poly.hpp"
#include "satake/repbuild.hpp"
#include "satake/rootdata.hpp"

namespace satake {

struct PrincipalTriple {
  IVec probe;     // highest weight of the faithful module carrying the matrices
  QVec f_coeffs;  // f = sum_i f_coeffs[i] f_i, solved from [n, f] = h

  // realization inside the probe module
  QMat n_probe, h_probe, f_probe;
  // adjoint action on the dual Lie algebra, in the structural basis
  QMat ad_n, ad_h, ad_f;
};

struct CentralizerElement {
  int eigenvalue = 0;  // ad-h eigenvalue, an even positive integer 2 e_i
  QVec coords;         // coordinates over the structural basis
};

struct CentralizerBasis {
  std::vector<CentralizerElement> elements;  // sorted by eigenvalue; [0] is n
  std::vector<int> exponents;                // {e_1 <= ... <= e_r}
};

class PrincipalContext {
 public:
  explicit PrincipalContext(const RootDatum& datum);

  const RootDatum& datum() const { return datum_; }
  const RootSystem& rs() const { return datum_.dual; }
  int rank() const { return rs().rank; }
  std::size_t dim_g() const { return tags_.size(); }
  const PrincipalTriple& triple() const { return triple_; }
  const CentralizerBasis& centralizer() const { return centralizer_; }
  const Irrep& probe() const { return probe_; }

  // ad-h eigenvalue of the structural basis element idx
  int basis_tag(std::size_t idx) const { return tags_[idx]; }

  // exact full matrices on a module built over the same root system
  QMat basis_matrix(const Irrep& rep, std::size_t idx) const;
  QMat element_matrix(const Irrep& rep, const QVec& coords) const;
  QMat centralizer_matrix(const Irrep& rep, std::size_t i) const;

  void require_same_system(const Irrep& rep) const;  // UsageError on mismatch

 private:
  RootDatum datum_;
  Irrep probe_;
  std::vector<std::vector<int>> chains_;  // bracketing word per positive root
  std::vector<int> tags_;                 // ad-h eigenvalue per basis element
  std::vector<QMat> probe_mats_;          // structural basis inside the probe
  PrincipalTriple triple_;
  CentralizerBasis centralizer_;

  void build_chains();
  void build_probe_basis();
  void build_triple();
  void build_centralizer();
};

PrincipalTriple principal_triple(const RootDatum& datum);
CentralizerBasis centralizer_basis(const RootDatum& datum);

struct FiltrationReport {
  IVec lambda, mu;
  bool dominant = false;
  std::string note;
  // nonzero graded dimensions (i, dim V_i(mu)/V_{i-1}(mu))
  std::vector<std::pair<int, long long>> jumps;
  IntPoly poincare;  // sum over jumps of q^{2i} dim
};

// Requires dominant mu (the theorem's hypothesis); a non-dominant mu yields a
// report with dominant = false and an explanatory note.
FiltrationReport brylinski_poincare(const Irrep& rep, const IVec& mu);

// The same filtration without the dominance gate, for property checks that
// range over full Weyl orbits.
FiltrationReport brylinski_filtration(const Irrep& rep, const IVec& mu);

struct AInvariantsReport {
  IVec lambda;
  IVec coset;                  // component tag of lambda
  IVec mu_c;                   // minuscule weight of that component
  long long dim_fixed = 0;     // dim V^a = dim V(mu_c)
  std::vector<int> exponents;  // generalized exponents, ascending
  IntPoly exponent_poly;       // sum_i q^{2 k_i}
};

// Computes V^a as the exact joint kernel of the centralizer basis and
// certifies Prop-style generators: a basis v_1..v_m of V(mu_c) with
// {n^{k_i} v_i} a basis of V^a (exact rank checks; MathError on failure).
AInvariantsReport a_invariants(const PrincipalContext& ctx, const Irrep& rep, const IVec& coset);

struct CyclicityReport {
  IVec coset, mu_c;
  long long dim = 0;
  int rounds = 0;
  bool cyclic = false;
};

// Checks that V_{mu_c} is generated from its lowest-weight vector by the
// centralizer algebra.
CyclicityReport minuscule_cyclicity_check(const PrincipalContext& ctx, const IVec& coset);

struct GradedHomReport {
  IVec lambda, mu;
  std::map<int, long long> by_degree;  // h-degree shift -> dimension
  long long total = 0;
  long long tensor_side = 0;  // sum over constituents of V_lambda^* (x) V_mu
};

// Solves {T : T a = a T for every centralizer element} exactly, graded by the
// h-degree shift; cross-checks the total against the tensor decomposition.
GradedHomReport graded_hom_over_a(const PrincipalContext& ctx, const IVec& lambda,
                                  const IVec& mu, long long budget = 400);

// A polynomial in the (commuting) centralizer generators: a sum of scaled
// monomials, each factor a (generator index, power) pair.
struct AWord {
  Rat coeff = 1;
  std::vector<std::pair<int, int>> factors;
};
using AExpr = std::vector<AWord>;

// <v^lambda, u . v_lambda>: applies u to the lowest-weight basis vector of
// V_lambda and reads the coefficient of the highest-weight basis vector.
// Nonzero only when the h-degree of a monomial equals 2 lambda(h).
Rat schubert_pairing(const PrincipalContext& ctx, const AExpr& u, const IVec& lambda,
                     long long budget = 400);

// Invariant verifiers; each throws MathError on violation.
void check_weight_parity(const Irrep& rep);   // mu(h) == lambda(h) mod 2; even on the root lattice
void check_h_symmetry(const Irrep& rep);      // dim of h-level k == dim of h-level -k
void check_hard_lefschetz(const Irrep& rep);  // n^k : level -k -> level k is an isomorphism

// Sum of Brylinski Poincare polynomials over the Weyl orbit of mu; asserts
// palindromicity (the filtration-shift symmetry) and returns the sum.
IntPoly filtration_shift_orbit_sum(const Irrep& rep, const IVec& mu);

}  // namespace satake
