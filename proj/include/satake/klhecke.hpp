#pragma once
// Kazhdan-Lusztig polynomials over the (extended) affine Weyl group and the
// affine Hecke algebra.
//
// Normalization: generators satisfy (T_s - t)(T_s + t^{-1}) = 0 and the
// canonical basis starts from c_s = T_s + t^{-1}, so c_s c_s = (t+t^{-1}) c_s.
// The KL variable is q = t^2:
//   c_y = sum_{x <= y} t^{l(x)-l(y)} P_{x,y}(t^2) T_x.
// KL polynomials are computed by the standard first-left-descent recursion
// with mu-coefficient corrections and memoized under the canonical element
// serialization, optionally persisted through a versioned append-only cache
// file (one checksummed record per line).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "satake/poly.hpp"
#include "satake/weyl.hpp"

namespace satake {

struct KLResult {
  IntPoly poly;
  bool comparable = true;  // false => cross-component or x !<= y; poly is zero
};

class KLCache {
 public:
  static constexpr const char* kFormatTag = "SATAKE-KL-CACHE v1";

  KLCache() = default;                 // in-memory only
  explicit KLCache(std::string path);  // file-backed; creates the file if absent

  const IntPoly* lookup(const std::string& key) const;
  void store(const std::string& key, const IntPoly& poly);
  std::size_t size() const { return table_.size(); }
  std::size_t skipped_records() const { return skipped_; }
  const std::string& path() const { return path_; }

  static std::string checksum_hex(const std::string& payload);  // FNV-1a 64

 private:
  std::map<std::string, IntPoly> table_;
  std::string path_;
  std::size_t skipped_ = 0;
};

struct HeckeExpr {
  enum class Basis { T, C };
  Basis basis = Basis::T;
  std::map<AffKey, IntPoly> terms;  // element -> Laurent coefficient in t
};

class KLEngine {
 public:
  explicit KLEngine(const AffineCtx& ctx, KLCache* cache = nullptr,
                    long long max_length = 64, std::size_t max_interval = 200000);

  const AffineCtx& ctx() const { return ctx_; }

  KLResult kl_polynomial(const AffElt& x, const AffElt& y);
  // coefficient of q^{(l(w)-l(z)-1)/2} in P_{z,w}; 0 on parity mismatch
  long long mu_coeff(const AffElt& z, const AffElt& w);

  HeckeExpr t_element(const AffElt& x) const;   // T_x
  HeckeExpr c_element(const AffElt& x) const;   // c_x as a C-basis expression
  HeckeExpr to_standard(const HeckeExpr& expr);   // -> T basis
  HeckeExpr to_canonical(const HeckeExpr& expr);  // -> C basis
  HeckeExpr multiply(const HeckeExpr& a, const HeckeExpr& b);  // result in T basis
  // c_x * c_y expanded in the canonical basis
  HeckeExpr hecke_product_canonical(const AffElt& x, const AffElt& y);

  // All x <= y (memoized per y)
  const std::vector<AffElt>& interval(const AffElt& y);

  AffElt elt(const AffKey& key) const { return {key.first, key.second, ctx_.stamp()}; }

 private:
  const std::map<AffKey, IntPoly>& c_expansion(const AffElt& y);
  HeckeExpr mul_T_right(const HeckeExpr& expr, const AffElt& w) const;
  std::string pair_key(const AffElt& x, const AffElt& y) const;

  const AffineCtx& ctx_;
  KLCache* cache_;
  long long max_length_;
  std::size_t max_interval_;
  std::map<std::pair<AffKey, AffKey>, IntPoly> memo_;
  std::map<AffKey, std::vector<AffElt>> interval_memo_;
  std::map<AffKey, std::map<AffKey, IntPoly>> c_expansion_memo_;
};

struct SatakeReport {
  IVec lambda, mu;
  std::map<IVec, IntPoly> constants;  // nu -> coefficient of c_{w(nu)}
  std::map<IVec, long long> tensor;   // nu -> multiplicity of V_nu
  bool parameter_free = false;        // every Hecke coefficient is a constant
  bool match = false;                 // constants == tensor, all non-negative
  bool complete = false;              // false when the Hecke side hit a budget
  std::string note;
};

// Structure constants of c_{w(lambda)} c_{w(mu)} versus tensor multiplicities
// (the exact character-ring form of the Satake isomorphism).
SatakeReport satake_structure_check(KLEngine& engine, const IVec& lambda, const IVec& mu,
                                    long long tensor_budget = 160000);

}  // namespace satake
