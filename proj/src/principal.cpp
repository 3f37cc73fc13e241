#include "satake/principal.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "satake/errors.hpp"
#include "satake/grassview.hpp"

namespace satake {
namespace {

// ---------------------------------------------------------------------------
// Weight-graded block operators: a map V -> V shifting every weight by a
// fixed vector, stored per weight block.  blocks[k] has dims[target] rows
// (empty when the target weight is off-support) and dims[k] columns, the
// same convention as Irrep::eblk.
// ---------------------------------------------------------------------------

struct BlockOp {
  IVec shift;
  std::vector<QMat> blocks;
};

int target_block(const Irrep& rep, int k, const IVec& shift) {
  return rep.block_of(ivec_add(rep.weights[k], shift));
}

BlockOp zero_op(const Irrep& rep, const IVec& shift) {
  BlockOp op;
  op.shift = shift;
  op.blocks.resize(rep.weights.size());
  for (std::size_t k = 0; k < rep.weights.size(); ++k) {
    int t = target_block(rep, static_cast<int>(k), shift);
    op.blocks[k] = qmat_zero(t < 0 ? 0 : rep.dims[t], rep.dims[k]);
  }
  return op;
}

BlockOp gen_e(const Irrep& rep, int i) {
  return BlockOp{rep.rs->simple_root_fw(i), rep.eblk[i - 1]};
}

BlockOp gen_f(const Irrep& rep, int i) {
  return BlockOp{ivec_neg(rep.rs->simple_root_fw(i)), rep.fblk[i - 1]};
}

BlockOp compose(const Irrep& rep, const BlockOp& x, const BlockOp& y) {
  BlockOp out = zero_op(rep, ivec_add(x.shift, y.shift));
  for (std::size_t k = 0; k < rep.weights.size(); ++k) {
    int mid = target_block(rep, static_cast<int>(k), y.shift);
    if (mid < 0) continue;
    int t = target_block(rep, mid, x.shift);
    if (t < 0) continue;
    const QMat& xb = x.blocks[mid];
    const QMat& yb = y.blocks[k];
    if (qmat_rows(xb) == 0 || qmat_rows(yb) == 0) continue;
    out.blocks[k] = qmat_add(out.blocks[k], qmat_mul(xb, yb));
  }
  return out;
}

BlockOp commutator(const Irrep& rep, const BlockOp& x, const BlockOp& y) {
  BlockOp xy = compose(rep, x, y), yx = compose(rep, y, x);
  for (std::size_t k = 0; k < xy.blocks.size(); ++k)
    xy.blocks[k] = qmat_sub(xy.blocks[k], yx.blocks[k]);
  return xy;
}

QMat to_full(const Irrep& rep, const BlockOp& op) {
  QMat full = qmat_zero(rep.dim, rep.dim);
  for (std::size_t k = 0; k < rep.weights.size(); ++k) {
    int t = target_block(rep, static_cast<int>(k), op.shift);
    if (t < 0 || qmat_rows(op.blocks[k]) == 0) continue;
    for (int r = 0; r < rep.dims[t]; ++r)
      for (int c = 0; c < rep.dims[k]; ++c)
        full[rep.offset[t] + r][rep.offset[k] + c] = op.blocks[k][r][c];
  }
  return full;
}

// Matrix of the structural basis element idx: iterated commutators of the
// Chevalley generators along the bracketing word of the corresponding root.
QMat structural_matrix(const Irrep& rep, const std::vector<std::vector<int>>& chains,
                       std::size_t num_pos, std::size_t rank, std::size_t idx) {
  if (idx < num_pos) {
    const std::vector<int>& chain = chains[idx];
    BlockOp op = gen_e(rep, chain[0]);
    for (std::size_t j = 1; j < chain.size(); ++j)
      op = commutator(rep, gen_e(rep, chain[j]), op);
    return to_full(rep, op);
  }
  if (idx < num_pos + rank) return rep.h_matrix(static_cast<int>(idx - num_pos) + 1);
  const std::vector<int>& chain = chains[idx - num_pos - rank];
  BlockOp op = gen_f(rep, chain[0]);
  for (std::size_t j = 1; j < chain.size(); ++j)
    op = commutator(rep, gen_f(rep, chain[j]), op);
  return to_full(rep, op);
}

QVec flatten(const QMat& m) {
  QVec v;
  v.reserve(qmat_rows(m) * qmat_cols(m));
  for (const auto& row : m)
    for (const auto& x : row) v.push_back(x);
  return v;
}

QMat mat_comm(const QMat& a, const QMat& b) {
  return qmat_sub(qmat_mul(a, b), qmat_mul(b, a));
}

QMat mat_scale(QMat a, const Rat& c) {
  for (auto& row : a)
    for (auto& x : row) x *= c;
  return a;
}

void primitive_normalize(QVec& v) {
  BigInt den = 1;
  for (const auto& x : v) den = boost::multiprecision::lcm(den, denominator(x));
  BigInt num = 0;
  for (auto& x : v) {
    x *= den;
    num = boost::multiprecision::gcd(num, numerator(x));
  }
  if (num == 0) return;
  for (auto& x : v) x /= num;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
}

// ---------------------------------------------------------------------------
// The h-grading of a module: weights grouped by their pairing with h.
// ---------------------------------------------------------------------------

struct Levels {
  std::map<int, std::vector<int>> blocks_at;
  std::map<int, long long> dim_at;
  std::map<std::pair<int, int>, long long> offset;  // (level, block) -> offset
};

Levels level_decomp(const Irrep& rep) {
  Levels lv;
  for (std::size_t k = 0; k < rep.weights.size(); ++k) {
    int ell = static_cast<int>(rep.rs->pair_h(rep.weights[k]));
    lv.offset[{ell, static_cast<int>(k)}] = lv.dim_at[ell];
    lv.blocks_at[ell].push_back(static_cast<int>(k));
    lv.dim_at[ell] += rep.dims[k];
  }
  return lv;
}

long long level_dim(const Levels& lv, int ell) {
  auto it = lv.dim_at.find(ell);
  return it == lv.dim_at.end() ? 0 : it->second;
}

// Matrix of n restricted to h-level ell, mapping into level ell + 2.
QMat n_level_matrix(const Irrep& rep, const Levels& lv, int ell) {
  QMat m = qmat_zero(level_dim(lv, ell + 2), level_dim(lv, ell));
  auto it = lv.blocks_at.find(ell);
  if (it == lv.blocks_at.end()) return m;
  for (int k : it->second) {
    for (int i = 1; i <= rep.rs->rank; ++i) {
      int t = rep.block_of(ivec_add(rep.weights[k], rep.rs->simple_root_fw(i)));
      if (t < 0) continue;
      const QMat& eb = rep.eblk[i - 1][k];
      long long r0 = lv.offset.at({ell + 2, t}), c0 = lv.offset.at({ell, k});
      for (int r = 0; r < rep.dims[t]; ++r)
        for (int c = 0; c < rep.dims[k]; ++c) m[r0 + r][c0 + c] += eb[r][c];
    }
  }
  return m;
}

// Slice of a full matrix that maps h-level ell_from into h-level ell_to.
QMat level_slice(const Irrep& rep, const Levels& lv, const QMat& full, int ell_from,
                 int ell_to) {
  QMat m = qmat_zero(level_dim(lv, ell_to), level_dim(lv, ell_from));
  auto from = lv.blocks_at.find(ell_from), to = lv.blocks_at.find(ell_to);
  if (from == lv.blocks_at.end() || to == lv.blocks_at.end()) return m;
  for (int kt : to->second)
    for (int kf : from->second) {
      long long r0 = lv.offset.at({ell_to, kt}), c0 = lv.offset.at({ell_from, kf});
      for (int r = 0; r < rep.dims[kt]; ++r)
        for (int c = 0; c < rep.dims[kf]; ++c)
          m[r0 + r][c0 + c] = full[rep.offset[kt] + r][rep.offset[kf] + c];
    }
  return m;
}

// Lift a vector in level coordinates to global module coordinates.
QVec level_to_global(const Irrep& rep, const Levels& lv, int ell, const QVec& v) {
  QVec out(rep.dim, Rat(0));
  auto it = lv.blocks_at.find(ell);
  if (it == lv.blocks_at.end()) return out;
  for (int k : it->second) {
    long long o = lv.offset.at({ell, k});
    for (int r = 0; r < rep.dims[k]; ++r) out[rep.offset[k] + r] = v[o + r];
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PrincipalContext
// ---------------------------------------------------------------------------

PrincipalContext::PrincipalContext(const RootDatum& datum) : datum_(datum) {
  build_chains();
  const RootSystem& g = rs();
  IVec best;
  long long best_dim = -1;
  for (int i = 1; i <= g.rank; ++i) {
    IVec fw(g.rank, 0);
    fw[i - 1] = 1;
    long long d = weyl_dimension(g, fw);
    if (best_dim < 0 || d < best_dim) {
      best_dim = d;
      best = fw;
    }
  }
  probe_ = build_irrep(g, best, 64);
  build_probe_basis();
  build_triple();
  build_centralizer();
}

void PrincipalContext::build_chains() {
  const RootSystem& g = rs();
  const std::size_t m = g.pos_roots.size();
  std::map<IVec, int> index;
  for (std::size_t k = 0; k < m; ++k) index[g.pos_roots[k]] = static_cast<int>(k);

  std::vector<int> order(m);
  for (std::size_t k = 0; k < m; ++k) order[k] = static_cast<int>(k);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return g.height[a] < g.height[b]; });

  chains_.assign(m, {});
  for (int k : order) {
    const IVec& c = g.pos_roots[k];
    if (g.height[k] == 1) {
      for (int i = 0; i < g.rank; ++i)
        if (c[i] == 1) chains_[k] = {i + 1};
      continue;
    }
    for (int i = 1; i <= g.rank && chains_[k].empty(); ++i) {
      if (c[i - 1] == 0) continue;
      IVec below = c;
      below[i - 1] -= 1;
      auto it = index.find(below);
      if (it == index.end()) continue;
      chains_[k] = chains_[it->second];
      chains_[k].push_back(i);
    }
    if (chains_[k].empty())
      throw MathError("positive root admits no simple-root lowering");
  }

  tags_.assign(2 * m + g.rank, 0);
  for (std::size_t k = 0; k < m; ++k) {
    tags_[k] = 2 * g.height[k];
    tags_[m + g.rank + k] = -2 * g.height[k];
  }
}

void PrincipalContext::build_probe_basis() {
  const std::size_t m = rs().pos_roots.size();
  const std::size_t r = rs().rank;
  probe_mats_.resize(dim_g());
  for (std::size_t idx = 0; idx < dim_g(); ++idx)
    probe_mats_[idx] = structural_matrix(probe_, chains_, m, r, idx);

  // faithfulness: the flattened basis matrices must be independent
  QMat flat = qmat_zero(probe_.dim * probe_.dim, dim_g());
  for (std::size_t idx = 0; idx < dim_g(); ++idx) {
    QVec col = flatten(probe_mats_[idx]);
    for (std::size_t i = 0; i < col.size(); ++i) flat[i][idx] = col[i];
  }
  if (qmat_rank(flat) != dim_g())
    throw MathError("structural basis is not faithful on the probe module");
}

void PrincipalContext::build_triple() {
  const RootSystem& g = rs();
  const int r = g.rank;

  QMat n = probe_.generator_n();
  QMat h = qmat_zero(probe_.dim, probe_.dim);
  for (int i = 1; i <= r; ++i)
    h = qmat_add(h, mat_scale(probe_.h_matrix(i), Rat(g.hvec[i - 1])));

  // solve [n, f] = h for f = sum c_i f_i
  QMat sys = qmat_zero(probe_.dim * probe_.dim, r);
  for (int i = 1; i <= r; ++i) {
    QVec col = flatten(mat_comm(n, probe_.f_matrix(i)));
    for (std::size_t j = 0; j < col.size(); ++j) sys[j][i - 1] = col[j];
  }
  QVec coeffs = qmat_solve(sys, flatten(h));

  QMat f = qmat_zero(probe_.dim, probe_.dim);
  for (int i = 1; i <= r; ++i)
    f = qmat_add(f, mat_scale(probe_.f_matrix(i), coeffs[i - 1]));

  if (mat_comm(h, n) != mat_scale(n, Rat(2)) || mat_comm(h, f) != mat_scale(f, Rat(-2)) ||
      mat_comm(n, f) != h)
    throw MathError("principal sl2 relations fail in the probe module");

  // h acts on each weight vector by the pairing with the sum of pos. coroots
  for (std::size_t k = 0; k < probe_.weights.size(); ++k) {
    Rat expect(g.pair_h(probe_.weights[k]));
    for (int c = 0; c < probe_.dims[k]; ++c)
      if (h[probe_.offset[k] + c][probe_.offset[k] + c] != expect)
        throw MathError("h does not act by mu(h) on a weight vector");
  }

  // adjoint matrices over the structural basis
  QMat flat = qmat_zero(probe_.dim * probe_.dim, dim_g());
  for (std::size_t idx = 0; idx < dim_g(); ++idx) {
    QVec col = flatten(probe_mats_[idx]);
    for (std::size_t i = 0; i < col.size(); ++i) flat[i][idx] = col[i];
  }
  auto ad_of = [&](const QMat& x) {
    QMat rhs = qmat_zero(probe_.dim * probe_.dim, dim_g());
    for (std::size_t idx = 0; idx < dim_g(); ++idx) {
      QVec col = flatten(mat_comm(x, probe_mats_[idx]));
      for (std::size_t i = 0; i < col.size(); ++i) rhs[i][idx] = col[i];
    }
    return qmat_solve_mat(flat, rhs);
  };

  triple_.probe = probe_.lambda;
  triple_.f_coeffs = coeffs;
  triple_.n_probe = n;
  triple_.h_probe = h;
  triple_.f_probe = f;
  triple_.ad_n = ad_of(n);
  triple_.ad_h = ad_of(h);
  triple_.ad_f = ad_of(f);

  if (mat_comm(triple_.ad_h, triple_.ad_n) != mat_scale(triple_.ad_n, Rat(2)) ||
      mat_comm(triple_.ad_h, triple_.ad_f) != mat_scale(triple_.ad_f, Rat(-2)) ||
      mat_comm(triple_.ad_n, triple_.ad_f) != triple_.ad_h)
    throw MathError("principal sl2 relations fail in the adjoint realization");

  // ad h is diagonal with the degree tags, certifying the grading
  for (std::size_t i = 0; i < dim_g(); ++i)
    for (std::size_t j = 0; j < dim_g(); ++j)
      if (triple_.ad_h[i][j] != (i == j ? Rat(tags_[i]) : Rat(0)))
        throw MathError("ad h is not diagonal with the height grading");
}

void PrincipalContext::build_centralizer() {
  const RootSystem& g = rs();
  const std::size_t m = g.pos_roots.size();

  std::map<int, std::vector<std::size_t>> by_tag;
  for (std::size_t idx = 0; idx < dim_g(); ++idx) by_tag[tags_[idx]].push_back(idx);

  std::vector<CentralizerElement> found;
  for (const auto& [deg, cols] : by_tag) {
    auto up = by_tag.find(deg + 2);
    const std::vector<std::size_t>* rows = up == by_tag.end() ? nullptr : &up->second;

    // ad n must raise the grading by exactly 2
    for (std::size_t c : cols)
      for (std::size_t r = 0; r < dim_g(); ++r)
        if (triple_.ad_n[r][c] != 0 && tags_[r] != deg + 2)
          throw MathError("ad n does not raise the h-grading by 2");

    std::vector<QVec> kernel;
    if (!rows) {
      for (std::size_t j = 0; j < cols.size(); ++j) {
        QVec v(cols.size(), Rat(0));
        v[j] = 1;
        kernel.push_back(std::move(v));
      }
    } else {
      QMat blk = qmat_zero(rows->size(), cols.size());
      for (std::size_t r = 0; r < rows->size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c)
          blk[r][c] = triple_.ad_n[(*rows)[r]][cols[c]];
      kernel = qmat_kernel(blk);
    }
    for (auto& v : kernel) {
      QVec coords(dim_g(), Rat(0));
      for (std::size_t c = 0; c < cols.size(); ++c) coords[cols[c]] = v[c];
      primitive_normalize(coords);
      found.push_back({deg, std::move(coords)});
    }
  }

  std::stable_sort(found.begin(), found.end(),
                   [](const CentralizerElement& a, const CentralizerElement& b) {
                     return a.eigenvalue < b.eigenvalue;
                   });

  if (found.size() != static_cast<std::size_t>(g.rank))
    throw MathError("centralizer of the principal nilpotent has wrong dimension");
  for (const auto& el : found)
    if (el.eigenvalue <= 0 || el.eigenvalue % 2 != 0)
      throw MathError("centralizer element with non-positive or odd ad-h eigenvalue");

  // the degree-2 element is n itself
  QVec n_coords(dim_g(), Rat(0));
  for (std::size_t k = 0; k < m; ++k)
    if (g.height[k] == 1) n_coords[k] = 1;
  if (found[0].eigenvalue != 2 || found[0].coords != n_coords)
    throw MathError("degree-2 centralizer element is not the principal nilpotent");

  // exponents from the root-height histogram (conjugate partition)
  std::map<int, int> hist;
  for (std::size_t k = 0; k < m; ++k) hist[g.height[k]] += 1;
  std::vector<int> expected;
  for (int j = 1; j <= hist[1]; ++j) {
    int count = 0;
    for (const auto& [ht, cnt] : hist)
      if (cnt >= j) ++count;
    expected.push_back(count);
  }
  std::sort(expected.begin(), expected.end());

  std::vector<int> exps;
  for (const auto& el : found) exps.push_back(el.eigenvalue / 2);
  std::sort(exps.begin(), exps.end());
  if (exps != expected)
    throw MathError("centralizer eigenvalues disagree with the exponents");

  // abelian: all pairwise brackets vanish (checked in the faithful probe)
  std::vector<QMat> probe_el;
  for (const auto& el : found) {
    QMat x = qmat_zero(probe_.dim, probe_.dim);
    for (std::size_t idx = 0; idx < dim_g(); ++idx)
      if (el.coords[idx] != 0)
        x = qmat_add(x, mat_scale(probe_mats_[idx], el.coords[idx]));
    probe_el.push_back(std::move(x));
  }
  for (std::size_t a = 0; a < probe_el.size(); ++a)
    for (std::size_t b = a + 1; b < probe_el.size(); ++b)
      if (!qmat_is_zero(mat_comm(probe_el[a], probe_el[b])))
        throw MathError("centralizer of the principal nilpotent is not abelian");

  centralizer_.elements = std::move(found);
  centralizer_.exponents = std::move(exps);
}

QMat PrincipalContext::basis_matrix(const Irrep& rep, std::size_t idx) const {
  require_same_system(rep);
  return structural_matrix(rep, chains_, rs().pos_roots.size(), rs().rank, idx);
}

QMat PrincipalContext::element_matrix(const Irrep& rep, const QVec& coords) const {
  require_same_system(rep);
  QMat out = qmat_zero(rep.dim, rep.dim);
  for (std::size_t idx = 0; idx < dim_g(); ++idx)
    if (coords[idx] != 0)
      out = qmat_add(out, mat_scale(basis_matrix(rep, idx), coords[idx]));
  return out;
}

QMat PrincipalContext::centralizer_matrix(const Irrep& rep, std::size_t i) const {
  return element_matrix(rep, centralizer_.elements.at(i).coords);
}

void PrincipalContext::require_same_system(const Irrep& rep) const {
  if (rep.rs == nullptr || rep.rs->cartan != rs().cartan)
    throw UsageError("module was built over a different root system");
}

PrincipalTriple principal_triple(const RootDatum& datum) {
  return PrincipalContext(datum).triple();
}

CentralizerBasis centralizer_basis(const RootDatum& datum) {
  return PrincipalContext(datum).centralizer();
}

// ---------------------------------------------------------------------------
// Brylinski filtration
// ---------------------------------------------------------------------------

namespace {

FiltrationReport filtration_impl(const Irrep& rep, const IVec& mu) {
  const RootSystem& g = *rep.rs;
  FiltrationReport rep_out;
  rep_out.lambda = rep.lambda;
  rep_out.mu = mu;
  rep_out.dominant = g.is_dominant(mu);

  int b = rep.block_of(mu);
  if (b < 0) {
    rep_out.note = "weight is not in the support of the module";
    return rep_out;
  }

  Levels lv = level_decomp(rep);
  const int ell0 = static_cast<int>(g.pair_h(mu));
  const long long dim_mu = rep.dims[b];
  const long long bound = (g.pair_h(rep.lambda) - g.pair_h(mu)) / 2;

  QMat m = qmat_zero(level_dim(lv, ell0), dim_mu);
  long long o = lv.offset.at({ell0, b});
  for (long long r = 0; r < dim_mu; ++r) m[o + r][r] = 1;

  // dims[i] = dim V_i(mu); the filtration stabilizes once n^{i+1} vanishes
  std::vector<long long> fdims;
  for (int i = 0;; ++i) {
    if (level_dim(lv, ell0 + 2 * i + 2) == 0) {  // above the top of the module
      fdims.push_back(dim_mu);
      break;
    }
    m = qmat_mul(n_level_matrix(rep, lv, ell0 + 2 * i), m);
    long long rank = static_cast<long long>(qmat_rank(m));
    fdims.push_back(dim_mu - rank);
    if (rank == 0) break;
    if (i >= bound) throw MathError("Brylinski filtration exceeds its jump bound");
  }

  long long total = 0;
  for (std::size_t i = 0; i < fdims.size(); ++i) {
    long long grade = fdims[i] - (i == 0 ? 0 : fdims[i - 1]);
    if (grade < 0) throw MathError("Brylinski filtration is not increasing");
    if (grade == 0) continue;
    if (static_cast<long long>(i) > bound)
      throw MathError("Brylinski jump exceeds (lambda(h)-mu(h))/2");
    rep_out.jumps.emplace_back(static_cast<int>(i), grade);
    rep_out.poincare.add_term(2 * static_cast<int>(i), grade);
    total += grade;
  }
  if (total != dim_mu)
    throw MathError("Brylinski graded dimensions do not sum to the weight multiplicity");
  return rep_out;
}

}  // namespace

FiltrationReport brylinski_poincare(const Irrep& rep, const IVec& mu) {
  if (!rep.rs->is_dominant(mu)) {
    FiltrationReport out;
    out.lambda = rep.lambda;
    out.mu = mu;
    out.dominant = false;
    out.note = "mu is not dominant; the filtration theorem requires dominance";
    return out;
  }
  return filtration_impl(rep, mu);
}

FiltrationReport brylinski_filtration(const Irrep& rep, const IVec& mu) {
  return filtration_impl(rep, mu);
}

// ---------------------------------------------------------------------------
// Generalized exponents with certificates
// ---------------------------------------------------------------------------

AInvariantsReport a_invariants(const PrincipalContext& ctx, const Irrep& rep,
                               const IVec& coset) {
  ctx.require_same_system(rep);
  const RootSystem& g = ctx.rs();
  if (g.component_tag(rep.lambda) != coset)
    throw UsageError("coset is not the component of the highest weight");

  AInvariantsReport out;
  out.lambda = rep.lambda;
  out.coset = coset;
  out.mu_c = minuscule_weight(g, coset);

  const long long m = rep.block_dim(out.mu_c);
  const int r = g.rank;
  Levels lv = level_decomp(rep);

  std::vector<QMat> cent;
  for (int j = 0; j < r; ++j) cent.push_back(ctx.centralizer_matrix(rep, j));

  // joint kernel of the centralizer, level by level
  std::map<int, long long> fixed_at;
  long long total = 0;
  for (const auto& [ell, blocks] : lv.blocks_at) {
    (void)blocks;
    long long cols = level_dim(lv, ell), rows = 0;
    for (int j = 0; j < r; ++j)
      rows += level_dim(lv, ell + ctx.centralizer().elements[j].eigenvalue);
    long long d;
    if (rows == 0) {
      d = cols;
    } else {
      QMat stack = qmat_zero(rows, cols);
      long long at = 0;
      for (int j = 0; j < r; ++j) {
        int e2 = ctx.centralizer().elements[j].eigenvalue;
        QMat s = level_slice(rep, lv, cent[j], ell, ell + e2);
        for (std::size_t rr = 0; rr < qmat_rows(s); ++rr) stack[at + rr] = s[rr];
        at += static_cast<long long>(qmat_rows(s));
      }
      d = cols - static_cast<long long>(qmat_rank(stack));
    }
    if (d > 0) {
      fixed_at[ell] = d;
      total += d;
    }
  }
  out.dim_fixed = total;
  if (total != m)
    throw MathError("dim V^a differs from the minuscule weight multiplicity");

  const int ell_mu = static_cast<int>(g.pair_h(out.mu_c));
  for (const auto& [ell, d] : fixed_at) {
    (void)d;
    if (ell < ell_mu || (ell - ell_mu) % 2 != 0)
      throw MathError("V^a occupies a level not reachable from the minuscule weight");
  }

  // choose v_i in V(mu_c) with n^{k_i} v_i a basis of V^a, exponent by exponent
  int b = rep.block_of(out.mu_c);
  if (b < 0) throw MathError("minuscule weight is off the module support");
  QMat power = qmat_zero(level_dim(lv, ell_mu), m);
  long long o = lv.offset.at({ell_mu, b});
  for (long long rr = 0; rr < m; ++rr) power[o + rr][rr] = 1;

  QMat chosen_v = qmat_zero(m, m);
  QMat chosen_img = qmat_zero(rep.dim, m);
  long long filled = 0;
  int max_k = fixed_at.empty() ? -1 : (fixed_at.rbegin()->first - ell_mu) / 2;
  for (int k = 0; k <= max_k; ++k) {
    const int ell = ell_mu + 2 * k;
    if (k > 0) power = qmat_mul(n_level_matrix(rep, lv, ell - 2), power);
    auto it = fixed_at.find(ell);
    if (it == fixed_at.end()) continue;
    const long long d = it->second;

    // {v in V(mu_c) : a_j n^k v = 0 for all j}
    long long rows = 0;
    for (int j = 0; j < r; ++j)
      rows += level_dim(lv, ell + ctx.centralizer().elements[j].eigenvalue);
    std::vector<QVec> w_basis;
    if (rows == 0) {
      for (long long c = 0; c < m; ++c) {
        QVec v(m, Rat(0));
        v[c] = 1;
        w_basis.push_back(std::move(v));
      }
    } else {
      QMat stack = qmat_zero(rows, m);
      long long at = 0;
      for (int j = 0; j < r; ++j) {
        int e2 = ctx.centralizer().elements[j].eigenvalue;
        if (level_dim(lv, ell + e2) == 0) continue;  // vacuous constraint
        QMat s = qmat_mul(level_slice(rep, lv, cent[j], ell, ell + e2), power);
        for (std::size_t rr = 0; rr < qmat_rows(s); ++rr) stack[at + rr] = s[rr];
        at += static_cast<long long>(qmat_rows(s));
      }
      w_basis = qmat_kernel(stack);
    }

    // images n^k w must span the level-ell piece of V^a
    QMat images = qmat_zero(level_dim(lv, ell), w_basis.size());
    for (std::size_t c = 0; c < w_basis.size(); ++c) {
      QVec img = qmat_apply(power, w_basis[c]);
      for (std::size_t rr = 0; rr < img.size(); ++rr) images[rr][c] = img[rr];
    }
    std::vector<std::size_t> piv;
    QMat images_copy = images;
    if (static_cast<long long>(rref_in_place(images_copy, &piv)) != d)
      throw MathError("generalized exponent certificate failed: images do not span");

    for (std::size_t p = 0; p < piv.size(); ++p) {
      const QVec& v = w_basis[piv[p]];
      for (long long rr = 0; rr < m; ++rr) chosen_v[rr][filled] = v[rr];
      QVec img = level_to_global(rep, lv, ell, qmat_apply(power, v));
      for (long long rr = 0; rr < rep.dim; ++rr) chosen_img[rr][filled] = img[rr];
      out.exponents.push_back(k);
      ++filled;
    }
  }

  if (filled != m || static_cast<long long>(qmat_rank(chosen_v)) != m)
    throw MathError("certificate vectors do not form a basis of V(mu_c)");
  if (static_cast<long long>(qmat_rank(chosen_img)) != m)
    throw MathError("certificate images do not form a basis of V^a");

  std::sort(out.exponents.begin(), out.exponents.end());
  for (int k : out.exponents) out.exponent_poly.add_term(2 * k, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Minuscule cyclicity
// ---------------------------------------------------------------------------

CyclicityReport minuscule_cyclicity_check(const PrincipalContext& ctx, const IVec& coset) {
  const RootSystem& g = ctx.rs();
  CyclicityReport out;
  out.coset = coset;
  out.mu_c = minuscule_weight(g, coset);

  Irrep rep = build_irrep(g, out.mu_c, 64);
  out.dim = rep.dim;

  int b = rep.block_of(g.weyl.apply(g.weyl.w0, out.mu_c));
  if (b < 0 || rep.dims[b] != 1)
    throw MathError("lowest weight space of a minuscule module is not a line");

  std::vector<QMat> cent;
  for (int j = 0; j < g.rank; ++j) cent.push_back(ctx.centralizer_matrix(rep, j));

  std::vector<QVec> basis;
  QVec start(rep.dim, Rat(0));
  start[rep.offset[b]] = 1;

  auto rank_with = [&](const QVec& v) {
    QMat m(basis.begin(), basis.end());
    m.push_back(v);
    return qmat_rank(m);
  };

  basis.push_back(start);
  std::vector<QVec> frontier{start};
  while (!frontier.empty() && static_cast<long long>(basis.size()) < rep.dim) {
    ++out.rounds;
    std::vector<QVec> next;
    for (const QVec& v : frontier)
      for (const QMat& a : cent) {
        QVec w = qmat_apply(a, v);
        if (rank_with(w) > basis.size()) {
          basis.push_back(w);
          next.push_back(std::move(w));
        }
      }
    frontier = std::move(next);
  }

  out.cyclic = static_cast<long long>(basis.size()) == rep.dim;
  if (!out.cyclic)
    throw MathError("minuscule module is not cyclic under the centralizer");
  return out;
}

// ---------------------------------------------------------------------------
// Graded Hom over the centralizer
// ---------------------------------------------------------------------------

GradedHomReport graded_hom_over_a(const PrincipalContext& ctx, const IVec& lambda,
                                  const IVec& mu, long long budget) {
  const RootSystem& g = ctx.rs();
  if (!g.is_dominant(lambda) || !g.is_dominant(mu))
    throw UsageError("graded_hom_over_a requires dominant weights");

  GradedHomReport out;
  out.lambda = lambda;
  out.mu = mu;

  Irrep src = build_irrep(g, lambda, budget);
  Irrep dst = build_irrep(g, mu, budget);
  if (src.dim * dst.dim > 20000)
    throw BudgetError("hom system too large: " + std::to_string(src.dim) + " x " +
                      std::to_string(dst.dim));

  const int r = g.rank;
  std::vector<QMat> a_src, a_dst;
  for (int j = 0; j < r; ++j) {
    a_src.push_back(ctx.centralizer_matrix(src, j));
    a_dst.push_back(ctx.centralizer_matrix(dst, j));
  }
  Levels lv_src = level_decomp(src), lv_dst = level_decomp(dst);

  std::set<int> shifts;
  for (const auto& [ls, d1] : lv_src.dim_at) {
    (void)d1;
    for (const auto& [ld, d2] : lv_dst.dim_at) {
      (void)d2;
      shifts.insert(ld - ls);
    }
  }

  for (int d : shifts) {
    // unknown blocks T_ell : src level ell -> dst level ell + d
    std::map<int, long long> var_offset;
    long long nvars = 0;
    for (const auto& [ell, dim_s] : lv_src.dim_at) {
      long long dim_d = level_dim(lv_dst, ell + d);
      if (dim_d == 0) continue;
      var_offset[ell] = nvars;
      nvars += dim_d * dim_s;
    }
    if (nvars == 0) continue;

    auto var_of = [&](int ell, long long row, long long col) {
      return var_offset.at(ell) + row * level_dim(lv_src, ell) + col;
    };

    std::vector<QVec> eqs;
    for (int j = 0; j < r; ++j) {
      const int e2 = ctx.centralizer().elements[j].eigenvalue;
      for (const auto& [ell, dim_s] : lv_src.dim_at) {
        const long long rows = level_dim(lv_dst, ell + d + e2);
        if (rows == 0) continue;
        const bool has_t1 = var_offset.count(ell) > 0;
        const bool has_t2 =
            level_dim(lv_src, ell + e2) > 0 && var_offset.count(ell + e2) > 0;
        if (!has_t1 && !has_t2) continue;
        QMat a_up = has_t1 ? level_slice(dst, lv_dst, a_dst[j], ell + d, ell + d + e2)
                           : QMat{};
        QMat a_dn = has_t2 ? level_slice(src, lv_src, a_src[j], ell, ell + e2) : QMat{};
        for (long long a = 0; a < rows; ++a) {
          for (long long bcol = 0; bcol < dim_s; ++bcol) {
            QVec eq(nvars, Rat(0));
            bool nonzero = false;
            if (has_t1) {
              for (long long c = 0; c < level_dim(lv_dst, ell + d); ++c) {
                if (a_up[a][c] == 0) continue;
                eq[var_of(ell, c, bcol)] += a_up[a][c];
                nonzero = true;
              }
            }
            if (has_t2) {
              for (long long c = 0; c < level_dim(lv_src, ell + e2); ++c) {
                if (a_dn[c][bcol] == 0) continue;
                eq[var_of(ell + e2, a, c)] -= a_dn[c][bcol];
                nonzero = true;
              }
            }
            if (nonzero) eqs.push_back(std::move(eq));
          }
        }
      }
    }

    long long rank = 0;
    if (!eqs.empty()) {
      QMat sys(eqs.begin(), eqs.end());
      rank = static_cast<long long>(qmat_rank(sys));
    }
    long long dim = nvars - rank;
    if (dim > 0) {
      out.by_degree[d] = dim;
      out.total += dim;
    }
  }

  // independent route: decompose V_lambda^* (x) V_mu and count fixed vectors
  IVec lstar = g.dominant_rep(ivec_neg(lambda));
  long long tensor_budget = std::max<long long>(160000, src.dim * dst.dim);
  std::map<IVec, long long> decomp = tensor_decompose(g, lstar, mu, tensor_budget);
  IVec tag = g.component_tag(ivec_add(lstar, mu));
  IVec mu_c = minuscule_weight(g, tag);
  for (const auto& [nu, mult] : decomp)
    out.tensor_side += mult * freudenthal_multiplicity(g, nu, mu_c);

  if (out.tensor_side != out.total)
    throw MathError("graded Hom total disagrees with the tensor-side count");
  return out;
}

// ---------------------------------------------------------------------------
// Pairing against the lowest-weight line
// ---------------------------------------------------------------------------

Rat schubert_pairing(const PrincipalContext& ctx, const AExpr& u, const IVec& lambda,
                     long long budget) {
  const RootSystem& g = ctx.rs();
  if (!g.is_dominant(lambda)) throw UsageError("schubert_pairing requires dominant lambda");

  Irrep rep = build_irrep(g, lambda, budget);
  int b = rep.block_of(g.weyl.apply(g.weyl.w0, lambda));
  if (b < 0 || rep.dims[b] != 1)
    throw MathError("lowest weight space is not a line");

  std::map<int, QMat> mats;
  auto mat_of = [&](int gen) -> const QMat& {
    if (gen < 0 || gen >= g.rank)
      throw UsageError("centralizer generator index out of range");
    auto it = mats.find(gen);
    if (it == mats.end()) it = mats.emplace(gen, ctx.centralizer_matrix(rep, gen)).first;
    return it->second;
  };

  const long long gate = 2 * g.pair_h(lambda);
  Rat total = 0;
  for (const AWord& word : u) {
    QVec v(rep.dim, Rat(0));
    v[rep.offset[b]] = 1;
    long long degree = 0;
    for (const auto& [gen, pow] : word.factors) {
      if (pow < 0) throw UsageError("negative power in centralizer word");
      if (gen < 0 || gen >= g.rank)
        throw UsageError("centralizer generator index out of range");
      degree += static_cast<long long>(ctx.centralizer().elements[gen].eigenvalue) * pow;
      for (int t = 0; t < pow; ++t) v = qmat_apply(mat_of(gen), v);
    }
    Rat contribution = word.coeff * v[0];
    if (degree != gate && contribution != 0)
      throw MathError("pairing grading violation: off-degree word acts nontrivially");
    total += contribution;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Invariant verifiers
// ---------------------------------------------------------------------------

void check_weight_parity(const Irrep& rep) {
  const RootSystem& g = *rep.rs;
  const long long par = ((g.pair_h(rep.lambda) % 2) + 2) % 2;
  for (const auto& w : rep.weights)
    if (((g.pair_h(w) % 2) + 2) % 2 != par)
      throw MathError("weight with mismatched mu(h) parity");
  if (g.in_root_lattice(rep.lambda) && par != 0)
    throw MathError("root-lattice highest weight with odd lambda(h)");
}

void check_h_symmetry(const Irrep& rep) {
  Levels lv = level_decomp(rep);
  for (const auto& [ell, d] : lv.dim_at)
    if (level_dim(lv, -ell) != d)
      throw MathError("h-eigenspace dimensions are not symmetric");
}

void check_hard_lefschetz(const Irrep& rep) {
  Levels lv = level_decomp(rep);
  for (const auto& [ell, d] : lv.dim_at) {
    if (ell >= 0) continue;
    const int k = -ell;
    if (level_dim(lv, k) != d)
      throw MathError("hard Lefschetz: mismatched level dimensions");
    QMat m = qmat_identity(d);
    for (int at = -k; at < k; at += 2) m = qmat_mul(n_level_matrix(rep, lv, at), m);
    if (static_cast<long long>(qmat_rank(m)) != d)
      throw MathError("hard Lefschetz: n^k is not an isomorphism from level -k to k");
  }
}

IntPoly filtration_shift_orbit_sum(const Irrep& rep, const IVec& mu) {
  const RootSystem& g = *rep.rs;
  RootSystem::Orbit orbit = g.weyl_orbit(g.dominant_rep(mu));
  IntPoly sum;
  for (const IVec& w : orbit.elements) sum += brylinski_filtration(rep, w).poincare;
  if (!sum.palindromic())
    throw MathError("orbit sum of Brylinski polynomials is not palindromic");
  return sum;
}

}  // namespace satake
