#include "satake/repbuild.hpp"

#include <algorithm>
#include <limits>

#include "satake/errors.hpp"

namespace satake {

namespace {

// W-invariant integral form B(x,y) = sum over positive coroots of
// <x,beta^vee><y,beta^vee>; any invariant form works in Freudenthal's
// recursion since the algebra is simple.
BigInt inv_form(const RootSystem& rs, const IVec& x, const IVec& y) {
  BigInt s = 0;
  for (int k = 0; k < rs.num_pos_roots(); ++k)
    s += BigInt(rs.pair(x, k)) * rs.pair(y, k);
  return s;
}

std::map<IVec, BigInt> dominant_multiplicities(const RootSystem& rs, const IVec& lambda) {
  if (!rs.is_dominant(lambda)) throw UsageError("highest weight must be dominant");
  const IVec rho(rs.rank, 1);
  const BigInt top = inv_form(rs, ivec_add(lambda, rho), ivec_add(lambda, rho));
  const long long hmax = rs.pair_h(lambda);
  std::map<IVec, BigInt> mult;
  for (const IVec& mu : rs.dominant_below(lambda)) {  // decreasing pair_h order
    if (mu == lambda) {
      mult[mu] = 1;
      continue;
    }
    BigInt num = 0;
    for (int k = 0; k < rs.num_pos_roots(); ++k) {
      const IVec beta = rs.root_fw(k);
      IVec nu = mu;
      for (;;) {
        nu = ivec_add(nu, beta);
        if (rs.pair_h(nu) > hmax) break;
        auto it = mult.find(rs.dominant_rep(nu));
        if (it != mult.end()) num += it->second * inv_form(rs, nu, beta);
      }
    }
    const BigInt den = top - inv_form(rs, ivec_add(mu, rho), ivec_add(mu, rho));
    if (den <= 0) throw MathError("Freudenthal denominator not positive");
    if ((2 * num) % den != 0) throw MathError("Freudenthal division is not exact");
    mult[mu] = 2 * num / den;
  }
  return mult;
}

}  // namespace

long long weyl_dimension(const RootSystem& rs, const IVec& lambda) {
  if (!rs.is_dominant(lambda)) throw UsageError("weyl_dimension requires a dominant weight");
  const IVec rho(rs.rank, 1);
  const IVec shifted = ivec_add(lambda, rho);
  BigInt num = 1, den = 1;
  for (int k = 0; k < rs.num_pos_roots(); ++k) {
    num *= rs.pair(shifted, k);
    den *= rs.pair(rho, k);
  }
  if (num % den != 0) throw MathError("Weyl dimension is not an integer");
  BigInt dim = num / den;
  if (dim > std::numeric_limits<long long>::max())
    throw BudgetError("Weyl dimension exceeds the representable range");
  return static_cast<long long>(dim);
}

std::map<IVec, long long> character(const RootSystem& rs, const IVec& lambda) {
  auto dom_mult = dominant_multiplicities(rs, lambda);
  std::map<IVec, long long> chi;
  for (const IVec& nu : rs.weight_support(lambda)) {
    BigInt m = dom_mult.at(rs.dominant_rep(nu));
    if (m > std::numeric_limits<long long>::max())
      throw BudgetError("weight multiplicity exceeds the representable range");
    chi[nu] = static_cast<long long>(m);
  }
  BigInt total = 0;
  for (const auto& [nu, m] : chi) total += m;
  if (total != weyl_dimension(rs, lambda))
    throw MathError("character total does not match the Weyl dimension formula");
  return chi;
}

long long freudenthal_multiplicity(const RootSystem& rs, const IVec& lambda, const IVec& mu) {
  if (!rs.is_dominant(lambda)) throw UsageError("highest weight must be dominant");
  const IVec dom = rs.dominant_rep(mu);
  if (!rs.dominance_leq(dom, lambda)) return 0;
  auto dom_mult = dominant_multiplicities(rs, lambda);
  auto it = dom_mult.find(dom);
  if (it == dom_mult.end()) return 0;
  return static_cast<long long>(it->second);
}

std::map<IVec, long long> tensor_decompose(const RootSystem& rs, const IVec& lambda,
                                           const IVec& mu, long long budget) {
  const long long dl = weyl_dimension(rs, lambda), dm = weyl_dimension(rs, mu);
  if (BigInt(dl) * dm > budget)
    throw BudgetError("tensor_decompose: dimension product " + std::to_string(dl) + "*" +
                      std::to_string(dm) + " exceeds budget " + std::to_string(budget));
  auto chi_l = character(rs, lambda), chi_m = character(rs, mu);
  std::map<IVec, long long> prod;
  for (const auto& [a, ma] : chi_l)
    for (const auto& [b, mb] : chi_m) prod[ivec_add(a, b)] += ma * mb;

  std::map<IVec, long long> result;
  long long remaining = dl * dm;
  while (remaining > 0) {
    // extract the constituent with the highest remaining weight
    IVec best;
    long long best_h = -1;
    for (const auto& [nu, m] : prod) {
      if (m == 0) continue;
      long long h = rs.pair_h(nu);
      if (h > best_h || (h == best_h && nu < best)) {
        best_h = h;
        best = nu;
      }
    }
    if (best_h < 0) throw MathError("tensor extraction ran out of weights early");
    long long m = prod.at(best);
    if (m < 0 || !rs.is_dominant(best))
      throw MathError("tensor extraction hit a non-dominant or negative leading term");
    for (const auto& [nu, c] : character(rs, best)) {
      auto it = prod.find(nu);
      if (it == prod.end() || it->second < m * c)
        throw MathError("tensor extraction produced a negative multiplicity");
      it->second -= m * c;
      if (it->second == 0) prod.erase(it);
    }
    result[best] += m;
    remaining -= m * weyl_dimension(rs, best);
  }
  if (!prod.empty()) throw MathError("tensor extraction left unexplained weights");
  return result;
}

int Irrep::block_of(const IVec& weight) const {
  auto it = weight_index.find(weight);
  return it == weight_index.end() ? -1 : it->second;
}

long long Irrep::block_dim(const IVec& weight) const {
  int k = block_of(weight);
  return k < 0 ? 0 : dims[k];
}

QMat Irrep::e_matrix(int i) const {
  QMat m = qmat_zero(dim, dim);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    int target = block_of(ivec_add(weights[k], rs->simple_root_fw(i)));
    if (target < 0) continue;
    const QMat& blk = eblk[i - 1][k];
    for (int r = 0; r < dims[target]; ++r)
      for (int c = 0; c < dims[k]; ++c) m[offset[target] + r][offset[k] + c] = blk[r][c];
  }
  return m;
}

QMat Irrep::f_matrix(int i) const {
  QMat m = qmat_zero(dim, dim);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    int target = block_of(ivec_sub(weights[k], rs->simple_root_fw(i)));
    if (target < 0) continue;
    const QMat& blk = fblk[i - 1][k];
    for (int r = 0; r < dims[target]; ++r)
      for (int c = 0; c < dims[k]; ++c) m[offset[target] + r][offset[k] + c] = blk[r][c];
  }
  return m;
}

QMat Irrep::h_matrix(int i) const {
  QMat m = qmat_zero(dim, dim);
  for (std::size_t k = 0; k < weights.size(); ++k)
    for (int c = 0; c < dims[k]; ++c) m[offset[k] + c][offset[k] + c] = weights[k][i - 1];
  return m;
}

QMat Irrep::generator_n() const {
  QMat m = qmat_zero(dim, dim);
  for (int i = 1; i <= rs->rank; ++i) m = qmat_add(m, e_matrix(i));
  return m;
}

namespace {

struct Candidate {
  int gen;    // lowering generator index, 1..rank
  int src;    // basis index (within its block) of the vector one level up
};

}  // namespace

Irrep build_irrep(const RootSystem& rs, const IVec& lambda, long long budget) {
  if (!rs.is_dominant(lambda)) throw UsageError("build_irrep requires a dominant weight");
  const long long dim = weyl_dimension(rs, lambda);
  if (dim > budget)
    throw BudgetError("build_irrep: dimension " + std::to_string(dim) + " exceeds budget " +
                      std::to_string(budget));
  auto dom_mult = dominant_multiplicities(rs, lambda);

  Irrep V;
  V.rs = &rs;
  V.lambda = lambda;
  V.dim = dim;
  V.weights = rs.weight_support(lambda);
  int off = 0;
  for (std::size_t k = 0; k < V.weights.size(); ++k) {
    V.weight_index[V.weights[k]] = static_cast<int>(k);
    long long m = static_cast<long long>(dom_mult.at(rs.dominant_rep(V.weights[k])));
    V.dims.push_back(static_cast<int>(m));
    V.offset.push_back(off);
    off += static_cast<int>(m);
  }
  if (off != dim) throw MathError("weight-space dimensions do not sum to the total dimension");
  const int nblocks = static_cast<int>(V.weights.size());
  V.words.assign(nblocks, {});
  V.gram.assign(nblocks, {});
  V.eblk.assign(rs.rank, std::vector<QMat>(nblocks));
  V.fblk.assign(rs.rank, std::vector<QMat>(nblocks));

  // group weights by level = height of lambda - weight
  std::map<long long, std::vector<int>> levels;
  for (int k = 0; k < nblocks; ++k) {
    auto coords = rs.root_lattice_coords(ivec_sub(lambda, V.weights[k]));
    if (!coords) throw MathError("weight not in the highest weight's root-lattice coset");
    long long lvl = 0;
    for (long long c : *coords) lvl += c;
    levels[lvl].push_back(k);
  }
  for (auto& [lvl, blocks] : levels)
    std::sort(blocks.begin(), blocks.end(),
              [&](int a, int b) { return V.weights[a] < V.weights[b]; });

  // level 0: the highest-weight line
  {
    int top = V.weight_index.at(lambda);
    if (V.dims[top] != 1) throw MathError("highest weight space is not one-dimensional");
    V.words[top] = {{}};
    V.gram[top] = {{Rat(1)}};
    for (int i = 1; i <= rs.rank; ++i) {
      V.eblk[i - 1][top] = QMat(static_cast<std::size_t>(V.block_dim(
                                    ivec_add(lambda, rs.simple_root_fw(i)))),
                                QVec(1, Rat(0)));  // always 0 x 1
    }
  }

  for (const auto& [lvl, blocks] : levels) {
    if (lvl == 0) continue;
    for (int k : blocks) {
      const IVec& nu = V.weights[k];
      // candidates f_i * b, b in the basis of nu + alpha_i
      std::vector<Candidate> cands;
      std::vector<int> upper_block(rs.rank + 1, -1);
      for (int i = 1; i <= rs.rank; ++i) {
        int up = V.block_of(ivec_add(nu, rs.simple_root_fw(i)));
        upper_block[i] = up;
        if (up < 0) continue;
        for (int b = 0; b < V.dims[up]; ++b) cands.push_back({i, b});
      }
      const int nc = static_cast<int>(cands.size());
      if (nc < V.dims[k]) throw MathError("not enough lowering candidates at a weight space");

      // candidate contravariant Gram:
      //   <f_i b, f_j b'> = <b, f_j (e_i b')> + delta_ij (nu+alpha_i)_i <b, b'>
      QMat G = qmat_zero(nc, nc);
      for (int s = 0; s < nc; ++s) {
        const int i = cands[s].gen, up_i = upper_block[i];
        const QMat& gram_up = V.gram[up_i];
        for (int t = 0; t < nc; ++t) {
          const int j = cands[t].gen, up_j = upper_block[j];
          // e_i b' lives at nu + alpha_j + alpha_i
          int upper2 = V.block_of(
              ivec_add(ivec_add(nu, rs.simple_root_fw(j)), rs.simple_root_fw(i)));
          Rat val = 0;
          if (upper2 >= 0 && V.dims[upper2] > 0) {
            const QMat& e_up = V.eblk[i - 1][up_j];    // V(nu+alpha_j) -> V(+alpha_i)
            const QMat& f_dn = V.fblk[j - 1][upper2];  // V(upper2) -> V(nu+alpha_i)
            QVec eb(V.dims[upper2]);
            for (int r = 0; r < V.dims[upper2]; ++r) eb[r] = e_up[r][cands[t].src];
            QVec feb = qmat_apply(f_dn, eb);
            for (int r = 0; r < V.dims[up_i]; ++r)
              val += gram_up[cands[s].src][r] * feb[r];
          }
          if (i == j) {
            long long hval = nu[i - 1] + rs.cartan[i - 1][i - 1];  // (nu+alpha_i)_i
            val += Rat(hval) * gram_up[cands[s].src][cands[t].src];
          }
          G[s][t] = val;
        }
      }
      for (int s = 0; s < nc; ++s)
        for (int t = 0; t < nc; ++t)
          if (G[s][t] != G[t][s]) throw MathError("contravariant Gram is not symmetric");

      // greedy lex-first maximal-rank subset = pivot columns of the RREF
      std::vector<std::size_t> pivots;
      {
        QMat work = G;
        rref_in_place(work, &pivots);
      }
      if (static_cast<int>(pivots.size()) != V.dims[k])
        throw MathError("Gram rank " + std::to_string(pivots.size()) +
                        " does not match the Freudenthal multiplicity at a weight");
      std::vector<int> chosen(pivots.begin(), pivots.end());

      // divided-power scale: new word [i] ++ word(b); divide by its leading run
      std::vector<Rat> scale(nc);
      std::vector<std::vector<int>> cand_word(nc);
      for (int s = 0; s < nc; ++s) {
        const int i = cands[s].gen, up = upper_block[i];
        std::vector<int> w = {i};
        const auto& wb = V.words[up][cands[s].src];
        w.insert(w.end(), wb.begin(), wb.end());
        cand_word[s] = w;
        int run = 0;
        while (run < static_cast<int>(w.size()) && w[run] == i) ++run;
        scale[s] = Rat(1) / run;
      }
      for (int s : chosen) V.words[k].push_back(cand_word[s]);

      // basis Gram: scaled candidate pairings
      const int d = V.dims[k];
      QMat gram_k = qmat_zero(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b)
          gram_k[a][b] = scale[chosen[a]] * scale[chosen[b]] * G[chosen[a]][chosen[b]];
      V.gram[k] = gram_k;

      // express every candidate in the new basis: coords x solve gram_k x = rhs
      // with rhs_a = <v_a, cand_s>
      std::vector<QVec> cand_coords(nc);
      for (int s = 0; s < nc; ++s) {
        QVec rhs(d);
        for (int a = 0; a < d; ++a) rhs[a] = scale[chosen[a]] * G[chosen[a]][s];
        cand_coords[s] = qmat_solve(gram_k, rhs);
      }

      // f blocks into this weight: column for basis vector b of nu+alpha_i is
      // the coordinate vector of f_i b
      for (int i = 1; i <= rs.rank; ++i) {
        int up = upper_block[i];
        if (up < 0) continue;
        QMat blk = qmat_zero(d, V.dims[up]);
        for (int s = 0; s < nc; ++s) {
          if (cands[s].gen != i) continue;
          for (int a = 0; a < d; ++a) blk[a][cands[s].src] = cand_coords[s][a];
        }
        V.fblk[i - 1][up] = blk;
      }

      // e blocks out of this weight:
      //   e_j (scale * f_i b) = scale * ( f_i (e_j b) + delta_ij (nu+alpha_i)_i b )
      for (int j = 1; j <= rs.rank; ++j) {
        int tgt = upper_block[j];  // weight nu + alpha_j
        const int tdim = tgt < 0 ? 0 : V.dims[tgt];
        QMat blk = qmat_zero(tdim, d);
        for (int a = 0; a < d; ++a) {
          const int s = chosen[a];
          const int i = cands[s].gen, up = upper_block[i];
          if (tgt < 0) continue;
          QVec col(tdim, Rat(0));
          int upper2 = V.block_of(
              ivec_add(ivec_add(nu, rs.simple_root_fw(i)), rs.simple_root_fw(j)));
          if (upper2 >= 0 && V.dims[upper2] > 0) {
            const QMat& e_up = V.eblk[j - 1][up];      // V(nu+alpha_i) -> V(+alpha_j)
            const QMat& f_dn = V.fblk[i - 1][upper2];  // V(upper2) -> V(nu+alpha_j)
            QVec eb(V.dims[upper2]);
            for (int r = 0; r < V.dims[upper2]; ++r) eb[r] = e_up[r][cands[s].src];
            col = qmat_apply(f_dn, eb);
          }
          if (i == j) {
            long long hval = nu[i - 1] + rs.cartan[i - 1][i - 1];
            col[cands[s].src] += hval;
          }
          for (int r = 0; r < tdim; ++r) blk[r][a] = scale[s] * col[r];
        }
        V.eblk[j - 1][k] = blk;
      }
    }
  }

  // certification: [e_i, f_j] = delta_ij h_i on every block, and the
  // irreducibility probe (stacked e-matrices have full column rank below the top)
  for (int k = 0; k < nblocks; ++k) {
    const IVec& mu = V.weights[k];
    for (int i = 1; i <= rs.rank; ++i)
      for (int j = 1; j <= rs.rank; ++j) {
        // [e_i, f_j] : V(mu) -> V(mu + alpha_i - alpha_j)
        const int down = V.block_of(ivec_sub(mu, rs.simple_root_fw(j)));
        const int up = V.block_of(ivec_add(mu, rs.simple_root_fw(i)));
        const int tgt_idx = V.block_of(
            ivec_add(ivec_sub(mu, rs.simple_root_fw(j)), rs.simple_root_fw(i)));
        const int rows = tgt_idx < 0 ? 0 : V.dims[tgt_idx];
        QMat commutator = qmat_zero(rows, V.dims[k]);
        if (down >= 0 && V.dims[down] > 0 && rows > 0)
          commutator = qmat_add(commutator, qmat_mul(V.eblk[i - 1][down], V.fblk[j - 1][k]));
        if (up >= 0 && V.dims[up] > 0 && rows > 0)
          commutator = qmat_sub(commutator, qmat_mul(V.fblk[j - 1][up], V.eblk[i - 1][k]));
        if (i == j) {
          for (int c = 0; c < V.dims[k]; ++c) commutator[c][c] -= mu[i - 1];
        }
        if (!qmat_is_zero(commutator))
          throw MathError("Chevalley relation [e_i,f_j] = delta_ij h_i fails on a block");
      }
    if (mu != lambda && V.dims[k] > 0) {
      QMat stacked;
      for (int i = 1; i <= rs.rank; ++i) {
        const QMat& blk = V.eblk[i - 1][k];
        for (const auto& row : blk) stacked.push_back(row);
      }
      if (qmat_rank(stacked) != static_cast<std::size_t>(V.dims[k]))
        throw MathError("irreducibility probe found a singular vector below the top weight");
    }
    // Gram symmetric and nonsingular
    if (V.dims[k] > 0 && qmat_rank(V.gram[k]) != static_cast<std::size_t>(V.dims[k]))
      throw MathError("contravariant Gram is singular on a weight space");
  }
  return V;
}

}  // namespace satake
