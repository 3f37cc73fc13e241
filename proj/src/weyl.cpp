#include "satake/weyl.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <queue>
#include <set>
#include <sstream>

#include "satake/errors.hpp"

namespace satake {

namespace {
std::atomic<std::uint32_t> next_stamp{1};
}

std::string lattice_name(Lattice lat) {
  return lat == Lattice::Weight ? "weight" : "root";
}

Lattice parse_lattice(const std::string& name) {
  if (name == "weight") return Lattice::Weight;
  if (name == "root") return Lattice::Root;
  throw UsageError("unknown lattice '" + name + "'; use 'weight' or 'root'");
}

AffineCtx::AffineCtx(const RootDatum& datum, Lattice lattice)
    : datum_(datum), lattice_(lattice), stamp_(next_stamp.fetch_add(1)) {
  const RootSystem& R = rs();
  theta_s_fw_ = R.root_fw(R.highest_short);
  // locate the reflection in theta_s among the finite elements
  IMat mat(R.rank, IVec(R.rank));
  for (int j = 0; j < R.rank; ++j) {
    IVec e(R.rank, 0);
    e[j] = 1;
    IVec col = R.reflect_fw(R.highest_short, e);
    for (int i = 0; i < R.rank; ++i) mat[i][j] = col[i];
  }
  s_theta_ = -1;
  for (int w = 0; w < R.weyl.size(); ++w)
    if (R.weyl.fw_action[w] == mat) {
      s_theta_ = w;
      break;
    }
  if (s_theta_ < 0) throw MathError("reflection in theta_s not found in the Weyl tables");
}

std::string AffineCtx::name() const {
  return datum_.label + "/" + lattice_name(lattice_);
}

void AffineCtx::check(const AffElt& x) const {
  if (x.stamp != stamp_)
    throw UsageError("affine element does not belong to this context (datum/lattice mismatch)");
}

AffElt AffineCtx::identity() const { return {IVec(rank(), 0), 0, stamp_}; }

AffElt AffineCtx::finite(int w) const {
  if (w < 0 || w >= rs().weyl.size()) throw UsageError("finite Weyl index out of range");
  return {IVec(rank(), 0), w, stamp_};
}

AffElt AffineCtx::translation(const IVec& tau) const {
  if (static_cast<int>(tau.size()) != rank())
    throw UsageError("translation vector has wrong rank");
  if (lattice_ == Lattice::Root && !rs().in_root_lattice(tau))
    throw UsageError("translation " + ivec_csv(tau) +
                     " is not in the root lattice (context uses lattice=root)");
  return {tau, 0, stamp_};
}

AffElt AffineCtx::simple(int i) const {
  if (i < 0 || i > rank()) throw UsageError("affine simple index out of range");
  if (i == 0) return {theta_s_fw_, s_theta_, stamp_};
  IVec zero(rank(), 0);
  // s_i as a finite element: its index is left_mul[i-1][identity]
  return {zero, rs().weyl.left_mul[i - 1][0], stamp_};
}

AffElt AffineCtx::mul(const AffElt& x, const AffElt& y) const {
  check(x);
  check(y);
  const WeylGroup& W = rs().weyl;
  return {ivec_add(x.tau, W.apply(x.w, y.tau)), W.mul(x.w, y.w), stamp_};
}

AffElt AffineCtx::inv(const AffElt& x) const {
  check(x);
  const WeylGroup& W = rs().weyl;
  int winv = W.inverse[x.w];
  return {ivec_neg(W.apply(winv, x.tau)), winv, stamp_};
}

AffElt AffineCtx::lmul_simple(int i, const AffElt& x) const {
  check(x);
  const RootSystem& R = rs();
  const WeylGroup& W = R.weyl;
  if (i == 0) {
    // s_0 (t_a w) = t_{theta_s + s_theta(a)} (s_theta w)
    IVec a = imat_apply(W.fw_action[s_theta_], x.tau);
    return {ivec_add(theta_s_fw_, a), W.mul(s_theta_, x.w), stamp_};
  }
  return {R.simple_reflect_fw(i, x.tau), W.left_mul[i - 1][x.w], stamp_};
}

AffElt AffineCtx::rmul_simple(const AffElt& x, int i) const {
  check(x);
  const WeylGroup& W = rs().weyl;
  if (i == 0) {
    // (t_a w) s_0 = t_{a + w(theta_s)} (w s_theta)
    return {ivec_add(x.tau, W.apply(x.w, theta_s_fw_)), W.mul(x.w, s_theta_), stamp_};
  }
  return {x.tau, W.right_mul[i - 1][x.w], stamp_};
}

long long AffineCtx::length(const AffElt& x) const {
  check(x);
  const RootSystem& R = rs();
  const int winv = R.weyl.inverse[x.w];
  long long len = 0;
  for (int k = 0; k < R.num_pos_roots(); ++k) {
    long long p = R.pair(x.tau, k);
    if (R.weyl.root_perm[winv][k] > 0)
      len += std::llabs(p);
    else
      len += std::llabs(p - 1);
  }
  return len;
}

bool AffineCtx::left_descent(int i, const AffElt& x) const {
  return length(lmul_simple(i, x)) < length(x);
}

bool AffineCtx::right_descent(int i, const AffElt& x) const {
  return length(rmul_simple(x, i)) < length(x);
}

std::vector<int> AffineCtx::left_descents(const AffElt& x) const {
  std::vector<int> out;
  const long long len = length(x);
  for (int i = 0; i <= rank(); ++i)
    if (length(lmul_simple(i, x)) < len) out.push_back(i);
  return out;
}

std::vector<int> AffineCtx::right_descents(const AffElt& x) const {
  std::vector<int> out;
  const long long len = length(x);
  for (int i = 0; i <= rank(); ++i)
    if (length(rmul_simple(x, i)) < len) out.push_back(i);
  return out;
}

IVec AffineCtx::component(const AffElt& x) const {
  check(x);
  return rs().component_tag(x.tau);
}

AffineCtx::Word AffineCtx::reduced_word(const AffElt& x) const {
  check(x);
  Word out;
  AffElt cur = x;
  long long len = length(cur);
  out.digits.reserve(static_cast<std::size_t>(len));
  while (len > 0) {
    int down = -1;
    for (int i = 0; i <= rank(); ++i) {
      AffElt next = lmul_simple(i, cur);
      if (length(next) < len) {
        down = i;
        cur = next;
        break;
      }
    }
    if (down < 0) throw MathError("positive-length element with no left descent");
    out.digits.push_back(down);
    --len;
  }
  out.omega = cur;
  return out;
}

bool AffineCtx::bruhat_leq(const AffElt& x, const AffElt& y) const {
  check(x);
  check(y);
  if (component(x) != component(y)) return false;
  AffElt a = x, b = y;
  long long la = length(a), lb = length(b);
  for (;;) {
    if (la > lb) return false;
    if (la == lb) return a == b;
    if (lb == 0) return false;
    int s = -1;
    for (int i = 0; i <= rank(); ++i)
      if (left_descent(i, b)) {
        s = i;
        break;
      }
    if (s < 0) throw MathError("positive-length element with no left descent");
    b = lmul_simple(s, b);
    --lb;
    AffElt sa = lmul_simple(s, a);
    if (length(sa) < la) {
      a = sa;
      --la;
    }
  }
}

std::vector<AffElt> AffineCtx::lower_interval(const AffElt& y) const {
  Word word = reduced_word(y);
  std::set<AffKey> seen;
  std::vector<AffElt> out;
  seen.insert(aff_key(word.omega));
  out.push_back(word.omega);
  for (auto it = word.digits.rbegin(); it != word.digits.rend(); ++it) {
    const std::size_t frozen = out.size();
    for (std::size_t k = 0; k < frozen; ++k) {
      AffElt z = lmul_simple(*it, out[k]);
      if (seen.insert(aff_key(z)).second) out.push_back(z);
    }
  }
  std::sort(out.begin(), out.end(), [&](const AffElt& a, const AffElt& b) {
    long long la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return aff_key(a) < aff_key(b);
  });
  return out;
}

std::vector<AffElt> AffineCtx::length_ball(long long maxlen, const AffElt& seed) const {
  check(seed);
  if (length(seed) != 0) throw UsageError("length_ball seed must have length zero");
  std::set<AffKey> seen{aff_key(seed)};
  std::vector<AffElt> out{seed};
  std::queue<AffElt> work;
  work.push(seed);
  while (!work.empty()) {
    AffElt x = work.front();
    work.pop();
    long long len = length(x);
    if (len >= maxlen) continue;
    for (int i = 0; i <= rank(); ++i) {
      AffElt z = lmul_simple(i, x);
      if (length(z) != len + 1) continue;
      if (seen.insert(aff_key(z)).second) {
        out.push_back(z);
        work.push(z);
      }
    }
  }
  std::sort(out.begin(), out.end(), [&](const AffElt& a, const AffElt& b) {
    long long la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return aff_key(a) < aff_key(b);
  });
  return out;
}

AffElt AffineCtx::max_coset_rep(const IVec& lambda) const {
  const RootSystem& R = rs();
  if (static_cast<int>(lambda.size()) != rank())
    throw UsageError("weight has wrong rank");
  if (!R.is_dominant(lambda))
    throw UsageError("max_coset_rep requires a dominant weight, got " + ivec_csv(lambda));
  translation(lambda);  // lattice membership check
  const int w0 = R.weyl.w0;
  AffElt x{R.weyl.apply(w0, lambda), w0, stamp_};  // w_0 t_lambda = t_{w_0 lambda} w_0
  const long long expected = R.pair_h(lambda) + R.weyl.length[w0];
  if (length(x) != expected)
    throw MathError("w(lambda) certification failed: length " + std::to_string(length(x)) +
                    " != lambda(h) + l(w0) = " + std::to_string(expected));
  for (int i = 1; i <= rank(); ++i)
    if (!left_descent(i, x) || !right_descent(i, x))
      throw MathError("w(lambda) certification failed: finite descent sets are not full");
  return x;
}

std::string AffineCtx::serialize(const AffElt& x) const {
  check(x);
  std::string word;
  for (int d : rs().weyl.word[x.w]) word += static_cast<char>('0' + d);
  if (word.empty()) word = "e";
  return ivec_csv(component(x)) + ";" + ivec_csv(x.tau) + ";" + word;
}

AffElt AffineCtx::deserialize(const std::string& s) const {
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, ';')) parts.push_back(token);
  if (parts.size() != 3) throw UsageError("malformed affine element '" + s + "'");
  IVec tag = parse_ivec_csv(parts[0], rank());
  IVec tau = parse_ivec_csv(parts[1], rank());
  int w = 0;
  if (parts[2] != "e") {
    std::vector<int> digits;
    for (char c : parts[2]) {
      int d = c - '0';
      if (d < 1 || d > rank()) throw UsageError("malformed finite word in '" + s + "'");
      digits.push_back(d);
    }
    for (auto it = digits.rbegin(); it != digits.rend(); ++it)
      w = rs().weyl.left_mul[*it - 1][w];
  }
  AffElt x{tau, w, stamp_};
  if (lattice_ == Lattice::Root && !rs().in_root_lattice(tau))
    throw UsageError("affine element '" + s + "' is not in the root-lattice group");
  if (component(x) != tag)
    throw UsageError("affine element '" + s + "' has an inconsistent component tag");
  return x;
}

}  // namespace satake
