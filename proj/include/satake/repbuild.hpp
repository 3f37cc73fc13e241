#pragma once
// Exact irreducible representations of the dual group: weight multiplicities
// by Freudenthal's recursion, the Weyl dimension formula, characters, tensor
// decomposition, and explicit Chevalley generator matrices.
//
// build_irrep constructs the irreducible quotient of the Verma module level
// by level: at each weight the candidate vectors f_i * b (b ranging over the
// basis one level up, ordered lexicographically in (i, b)) are pruned to a
// maximal subset of nonzero contravariant-Gram rank, and every chosen vector
// is rescaled so that the monomial basis consists of divided-power words
// f_{i}^{(a)} ... v_lambda.  All arithmetic is exact rational.

#include <map>
#include <vector>

#include "satake/rootdata.hpp"

namespace satake {

long long weyl_dimension(const RootSystem& rs, const IVec& lambda);

// Full character: weight (fw coords) -> multiplicity, over the whole support.
std::map<IVec, long long> character(const RootSystem& rs, const IVec& lambda);

long long freudenthal_multiplicity(const RootSystem& rs, const IVec& lambda, const IVec& mu);

// V_lambda (x) V_mu as a multiset of dominant highest weights.
// budget bounds dim(lambda) * dim(mu).
std::map<IVec, long long> tensor_decompose(const RootSystem& rs, const IVec& lambda,
                                           const IVec& mu, long long budget = 160000);

struct Irrep {
  const RootSystem* rs = nullptr;  // not owned; the datum must outlive the module
  IVec lambda;
  long long dim = 0;

  // weights sorted by (decreasing pairing with h, then lex); block k of the
  // global basis holds the vectors of weight weights[k]
  std::vector<IVec> weights;
  std::map<IVec, int> weight_index;   // weight -> block index
  std::vector<int> dims;              // block dimensions
  std::vector<int> offset;            // global offset of each block
  std::vector<std::vector<std::vector<int>>> words;  // divided-power word per basis vector

  // eblk[i-1][k]: matrix of e_i restricted to block k, target block of
  // weight weights[k] + alpha_i (rows = target dim; 0 x dims[k] if the target
  // weight is off-support).  fblk analogously for f_i with target - alpha_i.
  std::vector<std::vector<QMat>> eblk, fblk;
  std::vector<QMat> gram;             // contravariant Gram matrix per block

  int block_of(const IVec& weight) const;            // -1 if off-support
  long long block_dim(const IVec& weight) const;     // 0 if off-support
  // h_i acts on block k by the scalar weights[k][i-1]

  QMat e_matrix(int i) const;  // full dim x dim matrix of e_i
  QMat f_matrix(int i) const;
  QMat h_matrix(int i) const;
  QMat generator_n() const;    // sum of all e_i
};

// Throws BudgetError when weyl_dimension(lambda) > budget.
Irrep build_irrep(const RootSystem& rs, const IVec& lambda, long long budget = 400);

}  // namespace satake
