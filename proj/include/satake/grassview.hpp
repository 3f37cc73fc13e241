#pragma once
// Stratum combinatorics of the affine Grassmannian: dimensions and closure
// order of the spherical orbits, minuscule weights per connected component,
// IC stalk Poincare polynomials through affine Kazhdan-Lusztig data, the
// q-analog of Kostant's partition function, Lusztig's q-analog of weight
// multiplicity, and the three-route verifier tying them to the Brylinski
// filtration.

#include <string>
#include <vector>

#include "satake/klhecke.hpp"
#include "satake/poly.hpp"
#include "satake/principal.hpp"
#include "satake/repbuild.hpp"
#include "satake/rootdata.hpp"

namespace satake {

struct StratumInfo {
  IVec lambda;
  long long dim = 0;  // complex dimension = lambda(h)
  IVec component;     // class in the weight-mod-root-lattice quotient
};

// Requires dominant lambda (UsageError otherwise).
StratumInfo stratum_info(const RootSystem& rs, const IVec& lambda);

// Closure order of strata: same component and mu <= lambda in dominance.
bool closure_leq(const RootSystem& rs, const IVec& mu, const IVec& lambda);

// The unique dominance-minimal dominant weight of the component; certified by
// an exhaustive bounded-window search whose cap comes from coordinate bounds
// on the inverse Cartan matrix, plus the minuscule single-orbit property of
// the resulting module.
IVec minuscule_weight(const RootSystem& rs, const IVec& coset);

// The substitution convention carrying standard Kazhdan-Lusztig polynomials
// into the stalk normalization, calibrated once against the Brylinski value
// on the anchor instance and applied uniformly afterwards.
enum class KlConvention { Direct, Reversed };
KlConvention kl_convention();
const char* kl_convention_name(KlConvention c);

struct StalkPoincare {
  IntPoly poly;
  bool in_closure = false;  // false -> poly is zero and mu lies outside
};

// q^{lambda(h)} times the calibrated substitution of P_{w(mu),w(lambda)}.
// Engine must live on the weight lattice.
StalkPoincare ic_stalk_poincare(KLEngine& engine, const IVec& lambda, const IVec& mu);

// Coefficient of q^k counts expressions of beta as a sum of exactly k
// positive roots; zero off the positive cone (beta in fundamental-weight
// coordinates).
IntPoly q_kostant_partition(const RootSystem& rs, const IVec& beta);

// Alternating Weyl sum of q_kostant_partition(w(lambda+rho) - (mu+rho));
// specializes at q=1 to the weight multiplicity (asserted), with nonnegative
// coefficients (asserted).
IntPoly lusztig_q_analog(const RootSystem& rs, const IVec& lambda, const IVec& mu);

struct QklReport {
  IVec lambda, mu;
  IntPoly brylinski;       // route (i): filtration of V_lambda at mu
  IntPoly lusztig;         // route (ii): q-analog evaluated at q^2
  IntPoly kl_route;        // route (iii): stalk polynomial divided by q^{mu(h)}
  std::string convention;  // calibration tag in force
  bool b_vs_l = false, b_vs_kl = false, l_vs_kl = false, pass = false;
  long long multiplicity = 0;  // common value at q=1
};

// Three independent computations of the q-multiplicity; PASS iff they agree
// as exact polynomials.  Engine must live on the weight lattice.
QklReport verify_qkl_theorem(KLEngine& engine, const IVec& lambda, const IVec& mu,
                             long long budget = 400);

}  // namespace satake
