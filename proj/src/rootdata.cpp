#include "satake/rootdata.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "satake/errors.hpp"

namespace satake {

long long ivec_dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw MathError("ivec_dot: length mismatch");
  long long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

IVec ivec_add(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw MathError("ivec_add: length mismatch");
  IVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

IVec ivec_sub(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw MathError("ivec_sub: length mismatch");
  IVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

IVec ivec_neg(const IVec& a) {
  IVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
  return c;
}

IVec imat_apply(const IMat& m, const IVec& v) {
  IVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw MathError("imat_apply: shape mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IMat c(n, IVec(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw MathError("imat_mul: shape mismatch");
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  }
  return c;
}

IMat imat_transpose(const IMat& a) {
  const std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  IMat t(m, IVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) t[j][i] = a[i][j];
  return t;
}

IMat imat_identity(int n) {
  IMat m(n, IVec(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::string ivec_csv(const IVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

IVec parse_ivec_csv(const std::string& s, int expect_len) {
  IVec out;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &pos);
    } catch (const std::exception&) {
      throw UsageError("invalid integer '" + token + "' in weight '" + s + "'");
    }
    if (pos != token.size())
      throw UsageError("invalid integer '" + token + "' in weight '" + s + "'");
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("empty weight string");
  if (expect_len >= 0 && static_cast<int>(out.size()) != expect_len)
    throw UsageError("weight '" + s + "' has " + std::to_string(out.size()) +
                     " coordinates, expected " + std::to_string(expect_len));
  return out;
}

int WeylGroup::mul(int u, int v) const {
  int x = v;
  const auto& du = word[u];
  for (auto it = du.rbegin(); it != du.rend(); ++it) x = left_mul[*it - 1][x];
  return x;
}

namespace {

// Smith normal form with left transform tracking: U * a * V = diag.
void smith_normal_form(const IMat& a, IMat& U, IVec& diag) {
  const int n = static_cast<int>(a.size());
  IMat s = a;
  U = imat_identity(n);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      int pi = -1, pj = -1;
      for (int i = t; i < n; ++i)
        for (int j = t; j < n; ++j)
          if (s[i][j] != 0 && (pi < 0 || std::abs(s[i][j]) < std::abs(s[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) break;  // zero block
      std::swap(s[pi], s[t]);
      std::swap(U[pi], U[t]);
      for (int i = 0; i < n; ++i) std::swap(s[i][pj], s[i][t]);
      bool clean = true;
      for (int i = t + 1; i < n; ++i) {
        if (s[i][t] == 0) continue;
        long long q = s[i][t] / s[t][t];
        for (int j = 0; j < n; ++j) {
          s[i][j] -= q * s[t][j];
          U[i][j] -= q * U[t][j];
        }
        if (s[i][t] != 0) clean = false;
      }
      for (int j = t + 1; j < n; ++j) {
        if (s[t][j] == 0) continue;
        long long q = s[t][j] / s[t][t];
        for (int i = 0; i < n; ++i) s[i][j] -= q * s[i][t];
        if (s[t][j] != 0) clean = false;
      }
      if (!clean) continue;
      // enforce divisibility of the remaining block by the pivot
      bool divides = true;
      for (int i = t + 1; i < n && divides; ++i)
        for (int j = t + 1; j < n && divides; ++j)
          if (s[i][j] % s[t][t] != 0) {
            for (int k = 0; k < n; ++k) {
              s[t][k] += s[i][k];
              U[t][k] += U[i][k];
            }
            divides = false;
          }
      if (divides) break;
    }
  }
  diag.assign(n, 0);
  for (int i = 0; i < n; ++i) diag[i] = std::abs(s[i][i]);
}

struct RootPair {
  IVec root;    // simple-root coordinates
  IVec coroot;  // simple-coroot coordinates
};

IVec reflect_root_coords(const IMat& cartan, int i, IVec c) {
  long long pairing = 0;
  for (std::size_t k = 0; k < c.size(); ++k) pairing += cartan[i][k] * c[k];
  c[i] -= pairing;
  return c;
}

IVec reflect_coroot_coords(const IMat& cartan, int i, IVec d) {
  long long pairing = 0;
  for (std::size_t k = 0; k < d.size(); ++k) pairing += cartan[k][i] * d[k];
  d[i] -= pairing;
  return d;
}

void build_roots(RootSystem& rs) {
  const int n = rs.rank;
  std::map<IVec, IVec> seen;  // root -> coroot, over the full (pos+neg) system
  std::queue<RootPair> work;
  for (int i = 0; i < n; ++i) {
    IVec e(n, 0);
    e[i] = 1;
    seen[e] = e;
    work.push({e, e});
  }
  while (!work.empty()) {
    RootPair p = work.front();
    work.pop();
    for (int i = 0; i < n; ++i) {
      RootPair q{reflect_root_coords(rs.cartan, i, p.root),
                 reflect_coroot_coords(rs.cartan, i, p.coroot)};
      auto it = seen.find(q.root);
      if (it == seen.end()) {
        seen.emplace(q.root, q.coroot);
        work.push(q);
      } else if (it->second != q.coroot) {
        throw MathError("root closure produced inconsistent coroots");
      }
    }
  }
  std::vector<RootPair> pos;
  for (const auto& [root, coroot] : seen) {
    bool nonneg = true, nonpos = true;
    for (long long c : root) {
      nonneg = nonneg && c >= 0;
      nonpos = nonpos && c <= 0;
    }
    if (!nonneg && !nonpos) throw MathError("root with mixed-sign coordinates");
    if (nonneg) pos.push_back({root, coroot});
  }
  auto ht = [](const IVec& v) {
    long long s = 0;
    for (long long c : v) s += c;
    return s;
  };
  std::sort(pos.begin(), pos.end(), [&](const RootPair& a, const RootPair& b) {
    long long ha = ht(a.root), hb = ht(b.root);
    if (ha != hb) return ha < hb;
    return a.root < b.root;
  });
  rs.pos_roots.clear();
  rs.pos_coroots.clear();
  rs.height.clear();
  rs.hvec.assign(n, 0);
  for (const auto& p : pos) {
    rs.pos_roots.push_back(p.root);
    rs.pos_coroots.push_back(p.coroot);
    rs.height.push_back(static_cast<int>(ht(p.root)));
    for (int i = 0; i < n; ++i) rs.hvec[i] += p.coroot[i];
  }
  const int m = rs.num_pos_roots();
  rs.highest_root = m - 1;
  if (m >= 2 && rs.height[m - 1] == rs.height[m - 2])
    throw MathError("highest root is not unique");
  long long best = -1;
  int best_count = 0;
  for (int k = 0; k < m; ++k) {
    long long ch = ht(rs.pos_coroots[k]);
    if (ch > best) {
      best = ch;
      best_count = 1;
      rs.highest_short = k;
    } else if (ch == best) {
      ++best_count;
    }
  }
  if (best_count != 1) throw MathError("highest coroot is not unique");
  // closure check: each simple reflection permutes R+ \ {alpha_i} and negates alpha_i
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) {
      IVec image = reflect_root_coords(rs.cartan, i, rs.pos_roots[k]);
      if (rs.height[k] == 1 && rs.pos_roots[k][i] == 1) {
        if (image != ivec_neg(rs.pos_roots[k]))
          throw MathError("simple reflection does not negate its simple root");
      } else if (!std::binary_search(rs.pos_roots.begin(), rs.pos_roots.end(), image,
                                     [&](const IVec& a, const IVec& b) {
                                       long long ha = ht(a), hb = ht(b);
                                       if (ha != hb) return ha < hb;
                                       return a < b;
                                     }) &&
                 std::find(rs.pos_roots.begin(), rs.pos_roots.end(), image) ==
                     rs.pos_roots.end()) {
        throw MathError("simple reflection does not permute the other positive roots");
      }
    }
  }
}

// signed index (+/-(j+1)) of a root-coordinate vector in the positive list
int signed_root_index(const RootSystem& rs, const IVec& root) {
  for (int j = 0; j < rs.num_pos_roots(); ++j) {
    if (rs.pos_roots[j] == root) return j + 1;
    if (ivec_neg(rs.pos_roots[j]) == root) return -(j + 1);
  }
  throw MathError("vector is not a root");
}

void build_weyl(RootSystem& rs) {
  const int n = rs.rank;
  const int m = rs.num_pos_roots();
  WeylGroup& wg = rs.weyl;
  wg.rank = n;

  std::vector<IMat> simple_fw(n);
  std::vector<std::vector<int>> simple_perm(n);
  for (int i = 0; i < n; ++i) {
    IMat s = imat_identity(n);
    for (int k = 0; k < n; ++k) s[k][i] -= rs.cartan[k][i];
    simple_fw[i] = s;
    simple_perm[i].resize(m);
    for (int k = 0; k < m; ++k)
      simple_perm[i][k] = signed_root_index(rs, reflect_root_coords(rs.cartan, i, rs.pos_roots[k]));
  }
  auto compose_perm = [&](const std::vector<int>& outer, const std::vector<int>& inner) {
    std::vector<int> out(m);
    for (int k = 0; k < m; ++k) {
      int p = inner[k];
      out[k] = p > 0 ? outer[p - 1] : -outer[-p - 1];
    }
    return out;
  };

  std::map<IMat, int> index;
  wg.fw_action = {imat_identity(n)};
  wg.root_perm = {std::vector<int>(m)};
  for (int k = 0; k < m; ++k) wg.root_perm[0][k] = k + 1;
  wg.word = {{}};
  index[wg.fw_action[0]] = 0;
  wg.left_mul.assign(n, std::vector<int>(1, -1));

  std::queue<int> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    int w = bfs.front();
    bfs.pop();
    for (int i = 0; i < n; ++i) {
      IMat mat = imat_mul(simple_fw[i], wg.fw_action[w]);
      auto it = index.find(mat);
      int target;
      if (it == index.end()) {
        target = static_cast<int>(wg.fw_action.size());
        index[mat] = target;
        wg.fw_action.push_back(mat);
        wg.root_perm.push_back(compose_perm(simple_perm[i], wg.root_perm[w]));
        std::vector<int> word = {i + 1};
        word.insert(word.end(), wg.word[w].begin(), wg.word[w].end());
        wg.word.push_back(std::move(word));
        for (int j = 0; j < n; ++j) wg.left_mul[j].push_back(-1);
        bfs.push(target);
      } else {
        target = it->second;
      }
      wg.left_mul[i][w] = target;
    }
  }

  const int order = static_cast<int>(wg.fw_action.size());
  wg.length.resize(order);
  for (int w = 0; w < order; ++w) {
    int inv = 0;
    for (int k = 0; k < m; ++k)
      if (wg.root_perm[w][k] < 0) ++inv;
    wg.length[w] = inv;
    if (inv != static_cast<int>(wg.word[w].size()))
      throw MathError("Weyl length does not match BFS word length");
  }
  wg.right_mul.assign(n, std::vector<int>(order, -1));
  for (int w = 0; w < order; ++w)
    for (int i = 0; i < n; ++i) {
      IMat mat = imat_mul(wg.fw_action[w], simple_fw[i]);
      wg.right_mul[i][w] = index.at(mat);
    }
  wg.inverse.resize(order);
  for (int w = 0; w < order; ++w) {
    int x = 0;
    for (int d : wg.word[w]) x = wg.left_mul[d - 1][x];
    wg.inverse[w] = x;
    if (wg.mul(w, x) != 0) throw MathError("Weyl inverse check failed");
  }
  wg.w0 = -1;
  for (int w = 0; w < order; ++w)
    if (wg.length[w] == m) {
      if (wg.w0 >= 0) throw MathError("longest element is not unique");
      wg.w0 = w;
    }
  if (wg.w0 < 0) throw MathError("no longest element found");
}

RootSystem build_system(const IMat& cartan) {
  RootSystem rs;
  rs.rank = static_cast<int>(cartan.size());
  rs.cartan = cartan;
  for (int i = 0; i < rs.rank; ++i) {
    if (cartan[i][i] != 2) throw MathError("Cartan diagonal entry is not 2");
    for (int j = 0; j < rs.rank; ++j) {
      if (i != j && cartan[i][j] > 0) throw MathError("positive off-diagonal Cartan entry");
      if ((cartan[i][j] == 0) != (cartan[j][i] == 0))
        throw MathError("Cartan zero pattern is not symmetric");
    }
  }
  build_roots(rs);
  build_weyl(rs);
  smith_normal_form(cartan, rs.snf_U, rs.snf_diag);
  QMat a = qmat_zero(rs.rank, rs.rank);
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) a[i][j] = cartan[i][j];
  rs.inv_cartan = qmat_solve_mat(a, qmat_identity(rs.rank));
  return rs;
}

}  // namespace

IVec RootSystem::simple_root_fw(int i) const {
  IVec v(rank);
  for (int k = 0; k < rank; ++k) v[k] = cartan[k][i - 1];
  return v;
}

IVec RootSystem::simple_reflect_fw(int i, IVec fw) const {
  const long long c = fw[i - 1];
  for (int k = 0; k < rank; ++k) fw[k] -= c * cartan[k][i - 1];
  return fw;
}

IVec RootSystem::reflect_fw(int k, IVec fw) const {
  const long long c = pair(fw, k);
  IVec beta = root_fw(k);
  for (int j = 0; j < rank; ++j) fw[j] -= c * beta[j];
  return fw;
}

bool RootSystem::is_dominant(const IVec& fw) const {
  for (long long c : fw)
    if (c < 0) return false;
  return true;
}

IVec RootSystem::dominant_rep(IVec fw, std::vector<int>* word) const {
  if (word) word->clear();
  for (;;) {
    int i = 0;
    for (int k = 0; k < rank; ++k)
      if (fw[k] < 0) {
        i = k + 1;
        break;
      }
    if (i == 0) break;
    fw = simple_reflect_fw(i, fw);
    if (word) word->push_back(i);
  }
  if (word) std::reverse(word->begin(), word->end());
  return fw;
}

RootSystem::Orbit RootSystem::weyl_orbit(const IVec& fw) const {
  Orbit orbit;
  orbit.dominant = dominant_rep(fw);
  std::map<IVec, int> witness;  // element -> Weyl index
  witness[orbit.dominant] = 0;
  std::queue<std::pair<IVec, int>> work;
  work.push({orbit.dominant, 0});
  while (!work.empty()) {
    auto [v, w] = work.front();
    work.pop();
    for (int i = 1; i <= rank; ++i) {
      IVec u = simple_reflect_fw(i, v);
      if (witness.count(u)) continue;
      int sw = weyl.left_mul[i - 1][w];
      witness[u] = sw;
      work.push({u, sw});
    }
  }
  for (const auto& [v, w] : witness) {
    orbit.elements.push_back(v);
    orbit.witness.push_back(w);
  }
  return orbit;
}

QVec RootSystem::fw_to_root_coords(const IVec& fw) const {
  QVec v(rank);
  for (int i = 0; i < rank; ++i) v[i] = fw[i];
  return qmat_apply(inv_cartan, v);
}

std::optional<IVec> RootSystem::root_lattice_coords(const IVec& fw) const {
  QVec c = fw_to_root_coords(fw);
  IVec out(rank);
  for (int i = 0; i < rank; ++i) {
    if (boost::multiprecision::denominator(c[i]) != 1) return std::nullopt;
    out[i] = static_cast<long long>(boost::multiprecision::numerator(c[i]));
  }
  return out;
}

IVec RootSystem::component_tag(const IVec& fw) const {
  IVec u = imat_apply(snf_U, fw);
  IVec tag(rank, 0);
  for (int i = 0; i < rank; ++i) {
    long long s = snf_diag[i];
    if (s <= 1) continue;
    tag[i] = ((u[i] % s) + s) % s;
  }
  return tag;
}

bool RootSystem::dominance_leq(const IVec& mu_fw, const IVec& lambda_fw) const {
  auto coords = root_lattice_coords(ivec_sub(lambda_fw, mu_fw));
  if (!coords) return false;
  for (long long c : *coords)
    if (c < 0) return false;
  return true;
}

std::vector<IVec> RootSystem::weight_support(const IVec& lambda_fw) const {
  if (!is_dominant(lambda_fw)) throw UsageError("weight_support: highest weight must be dominant");
  std::set<IVec> supp;
  supp.insert(lambda_fw);
  std::queue<IVec> work;
  work.push(lambda_fw);
  while (!work.empty()) {
    IVec v = work.front();
    work.pop();
    for (int i = 1; i <= rank; ++i) {
      IVec u = ivec_sub(v, simple_root_fw(i));
      if (supp.count(u)) continue;
      if (!dominance_leq(dominant_rep(u), lambda_fw)) continue;
      supp.insert(u);
      work.push(u);
    }
  }
  std::vector<IVec> out(supp.begin(), supp.end());
  std::sort(out.begin(), out.end(), [&](const IVec& a, const IVec& b) {
    long long ha = pair_h(a), hb = pair_h(b);
    if (ha != hb) return ha > hb;
    return a < b;
  });
  return out;
}

std::vector<IVec> RootSystem::dominant_below(const IVec& lambda_fw) const {
  std::vector<IVec> out;
  for (const IVec& v : weight_support(lambda_fw))
    if (is_dominant(v)) out.push_back(v);
  return out;
}

IVec RootSystem::pi1() const {
  IVec out;
  for (long long s : snf_diag)
    if (s > 1) out.push_back(s);
  return out;
}

const std::vector<std::string>& supported_labels() {
  static const std::vector<std::string> labels = {"A1", "A2", "A3", "B2", "C2", "G2"};
  return labels;
}

RootDatum build_root_datum(const std::string& label) {
  IMat cartan;
  if (label == "A1") {
    cartan = {{2}};
  } else if (label == "A2") {
    cartan = {{2, -1}, {-1, 2}};
  } else if (label == "A3") {
    cartan = {{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}};
  } else if (label == "B2") {
    cartan = {{2, -1}, {-2, 2}};
  } else if (label == "C2") {
    cartan = {{2, -2}, {-1, 2}};
  } else if (label == "G2") {
    cartan = {{2, -3}, {-1, 2}};
  } else {
    throw UsageError("unsupported root datum label '" + label +
                     "'; supported: A1, A2, A3, B2, C2, G2");
  }
  RootDatum datum;
  datum.label = label;
  datum.group = build_system(cartan);
  datum.dual = build_system(imat_transpose(cartan));
  if (imat_transpose(imat_transpose(cartan)) != cartan)
    throw MathError("Cartan transpose is not an involution");
  if (datum.group.num_pos_roots() != datum.dual.num_pos_roots())
    throw MathError("dual system has a different number of positive roots");
  return datum;
}

}  // namespace satake
