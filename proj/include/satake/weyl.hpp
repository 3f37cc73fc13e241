#pragma once
// Finite and (extended) affine Weyl group of the dual system.
//
// Elements are stored in the normal form x = t_tau * w (translation first):
// x(v) = w(v) + tau.  The group law is (t_a u)(t_b v) = t_{a+u(b)} (uv).
// Affine simple reflections are indexed 0..rank, with s_0 = t_{theta_s} s_{theta_s}
// where theta_s is the positive root whose coroot is the highest coroot; the
// finite simples are 1..rank.
//
// Length is evaluated directly by the affine inversion count
//   l(t_a w) = sum_{beta>0, w^{-1}beta>0} |<a,beta^vee>|
//            + sum_{beta>0, w^{-1}beta<0} |<a,beta^vee> - 1|,
// which extends to the extended group (translations by the full weight
// lattice); the length-zero elements of a component form the Omega part.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "satake/rootdata.hpp"

namespace satake {

enum class Lattice { Weight, Root };

std::string lattice_name(Lattice lat);
Lattice parse_lattice(const std::string& name);

struct AffElt {
  IVec tau;            // translation part in fw coordinates
  int w = 0;           // finite part, index into the Weyl tables
  std::uint32_t stamp = 0;  // identity of the owning context
};

using AffKey = std::pair<IVec, int>;
inline AffKey aff_key(const AffElt& x) { return {x.tau, x.w}; }
inline bool operator==(const AffElt& a, const AffElt& b) {
  return a.tau == b.tau && a.w == b.w;
}

class AffineCtx {
 public:
  AffineCtx(const RootDatum& datum, Lattice lattice);

  const RootDatum& datum() const { return datum_; }
  const RootSystem& rs() const { return datum_.dual; }
  Lattice lattice() const { return lattice_; }
  int rank() const { return rs().rank; }
  std::uint32_t stamp() const { return stamp_; }
  // "label/lattice", e.g. "A2/weight" — prefixes every cache key
  std::string name() const;

  AffElt identity() const;
  AffElt finite(int w) const;
  AffElt translation(const IVec& tau) const;  // validates lattice membership
  AffElt simple(int i) const;                 // i in 0..rank

  AffElt mul(const AffElt& x, const AffElt& y) const;
  AffElt inv(const AffElt& x) const;
  AffElt lmul_simple(int i, const AffElt& x) const;
  AffElt rmul_simple(const AffElt& x, int i) const;

  long long length(const AffElt& x) const;
  bool left_descent(int i, const AffElt& x) const;
  bool right_descent(int i, const AffElt& x) const;
  std::vector<int> left_descents(const AffElt& x) const;
  std::vector<int> right_descents(const AffElt& x) const;

  // Omega-component of x: class of the translation part mod the root lattice.
  IVec component(const AffElt& x) const;

  struct Word {
    std::vector<int> digits;  // x = s_{d1} ... s_{dk} * omega, k = length(x)
    AffElt omega;             // length-zero remainder
  };
  Word reduced_word(const AffElt& x) const;

  bool bruhat_leq(const AffElt& x, const AffElt& y) const;

  // All x <= y, sorted by (length, translation, finite part).
  std::vector<AffElt> lower_interval(const AffElt& y) const;

  // Monotone ball of the component of `seed` (which must have length 0):
  // every element x = x' * seed with length <= maxlen.
  std::vector<AffElt> length_ball(long long maxlen, const AffElt& seed) const;

  // w(lambda): the maximal element of the double coset W t_lambda W, certified
  // by its length (= lambda(h) + l(w_0)) and full finite descent sets.
  AffElt max_coset_rep(const IVec& lambda) const;

  // Canonical form "<component tag>;<tau csv>;<finite reduced word digits>"
  // with "e" for the empty word.
  std::string serialize(const AffElt& x) const;
  AffElt deserialize(const std::string& s) const;

 private:
  void check(const AffElt& x) const;

  RootDatum datum_;
  Lattice lattice_;
  std::uint32_t stamp_;
  int s_theta_;       // finite index of the reflection in theta_s
  IVec theta_s_fw_;   // theta_s in fw coordinates
};

}  // namespace satake
