#include "doctest.h"

#include <map>
#include <set>
#include <string>
#include <vector>

#include "satake/errors.hpp"
#include "satake/grassview.hpp"

using namespace satake;

TEST_CASE("stratum dimensions and components") {
  const RootSystem& g = build_root_datum("A2").dual;
  StratumInfo s = stratum_info(g, {1, 1});
  CHECK(s.dim == 4);                     // theta(h) = 2 h_cox - 2
  CHECK(s.component == g.component_tag({1, 1}));
  CHECK(stratum_info(g, {0, 0}).dim == 0);
  CHECK(stratum_info(g, {1, 0}).dim == 2);
  CHECK_THROWS_AS((void)stratum_info(g, {-1, 0}), UsageError);

  // Root-lattice strata are even-dimensional (they live in one component of
  // a space whose cells pair up in complex dimension).
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      if (g.in_root_lattice({a, b}))
        CHECK(stratum_info(g, {a, b}).dim % 2 == 0);
}

TEST_CASE("closure order") {
  const RootSystem& g = build_root_datum("A2").dual;
  CHECK(closure_leq(g, {1, 1}, {2, 2}));
  CHECK(closure_leq(g, {0, 0}, {1, 1}));
  CHECK(closure_leq(g, {1, 1}, {1, 1}));
  CHECK_FALSE(closure_leq(g, {2, 2}, {1, 1}));
  CHECK(closure_leq(g, {1, 1}, {3, 0}));         // (3,0) - (1,1) = alpha_1
  CHECK_FALSE(closure_leq(g, {3, 0}, {0, 3}));   // incomparable pair
  CHECK_FALSE(closure_leq(g, {0, 3}, {3, 0}));
  CHECK_FALSE(closure_leq(g, {1, 0}, {0, 0}));   // different components
  CHECK_FALSE(closure_leq(g, {0, 0}, {1, 0}));
  CHECK(closure_leq(g, {1, 0}, {0, 2}));         // same nontrivial component
}

TEST_CASE("minuscule weights per component") {
  struct Row {
    const char* label;
    IVec probe;      // a weight in the component
    IVec minuscule;  // dominance-minimal dominant weight of that component
  };
  const Row rows[] = {
      {"A1", {3}, {1}},
      {"A1", {4}, {0}},
      {"A2", {1, 0}, {1, 0}},
      {"A2", {0, 1}, {0, 1}},
      {"A2", {2, 0}, {0, 1}},        // 2 omega_1 lies in the omega_2 class
      {"A3", {0, 1, 0}, {0, 1, 0}},
      {"A3", {1, 0, 0}, {1, 0, 0}},
      {"A3", {0, 0, 3}, {1, 0, 0}},  // 3 omega_3 folds onto the omega_1 class
      {"B2", {1, 0}, {1, 0}},        // the 4-dim module generates Z/2
      {"B2", {0, 1}, {0, 0}},        // the 5-dim weight is in the root lattice
      {"C2", {0, 1}, {0, 1}},
      {"C2", {1, 0}, {0, 0}},        // vector class is in the root lattice
      {"G2", {1, 0}, {0, 0}},
  };
  for (const Row& r : rows) {
    CAPTURE(std::string(r.label));
    CAPTURE(ivec_csv(r.probe));
    const RootSystem& g = build_root_datum(r.label).dual;
    IVec m = minuscule_weight(g, g.component_tag(r.probe));
    CHECK(m == r.minuscule);
    // Minimality: the minuscule weight sits below the probe's dominant rep.
    CHECK(closure_leq(g, m, g.dominant_rep(r.probe, nullptr)));
    // Single-orbit property: dim V(m) equals the Weyl orbit size of m.
    CHECK(weyl_dimension(g, m) == (long long)g.weyl_orbit(m).elements.size());
  }
}

TEST_CASE("q-analog of the Kostant partition function") {
  const RootSystem& a2 = build_root_datum("A2").dual;
  IVec zero = {0, 0};
  CHECK(q_kostant_partition(a2, zero).compact() == "0:1");
  // theta = alpha_1 + alpha_2 has expressions {theta} and {alpha_1, alpha_2}.
  CHECK(q_kostant_partition(a2, a2.root_fw(a2.highest_root)).compact() == "1:1,2:1");
  // A simple root has a single expression.
  CHECK(q_kostant_partition(a2, a2.simple_root_fw(1)).compact() == "1:1");
  // Off the positive cone and off the lattice: zero.
  CHECK(q_kostant_partition(a2, {1, 0}).is_zero());
  CHECK(q_kostant_partition(a2, ivec_neg(a2.simple_root_fw(1))).is_zero());
}

TEST_CASE("q-Kostant brute-force oracle") {
  const RootSystem& g = build_root_datum("G2").dual;
  const int n = g.num_pos_roots();
  // All beta = a alpha_1 + b alpha_2 with 0 <= a,b <= 3: enumerate multisets
  // by bounded exponent vectors over the positive roots.
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      IVec target = {a, b};
      std::map<int, long long> count;  // #roots used -> ways
      std::vector<int> caps(n);
      for (int k = 0; k < n; ++k) {
        int cap = 6;
        for (int i = 0; i < g.rank; ++i)
          if (g.pos_roots[k][i] > 0)
            cap = std::min<long long>(cap, target[i] / g.pos_roots[k][i]);
        caps[k] = cap;
      }
      std::vector<int> e(n, 0);
      while (true) {
        IVec sum(g.rank, 0);
        int used = 0;
        for (int k = 0; k < n; ++k) {
          used += e[k];
          for (int i = 0; i < g.rank; ++i) sum[i] += (long long)e[k] * g.pos_roots[k][i];
        }
        if (sum == target) ++count[used];
        int k = 0;
        while (k < n && e[k] == caps[k]) e[k++] = 0;
        if (k == n) break;
        ++e[k];
      }
      IntPoly want;
      for (const auto& [deg, c] : count) want.add_term(deg, c);
      IVec beta_fw(g.rank, 0);
      for (int i = 0; i < g.rank; ++i)
        for (int j = 0; j < g.rank; ++j)
          beta_fw[i] += g.cartan[i][j] * target[j];
      CHECK(q_kostant_partition(g, beta_fw) == want);
    }
}

TEST_CASE("Lusztig q-analog: frozen values and q=1 specialization") {
  const RootSystem& a1 = build_root_datum("A1").dual;
  CHECK(lusztig_q_analog(a1, {4}, {2}).compact() == "1:1");
  CHECK(lusztig_q_analog(a1, {4}, {0}).compact() == "2:1");
  CHECK(lusztig_q_analog(a1, {4}, {4}).compact() == "0:1");

  const RootSystem& a2 = build_root_datum("A2").dual;
  CHECK(lusztig_q_analog(a2, {1, 1}, {0, 0}).compact() == "1:1,2:1");
  CHECK(lusztig_q_analog(a2, {2, 2}, {0, 0}).compact() == "2:1,3:1,4:1");
  CHECK(lusztig_q_analog(a2, {2, 2}, {1, 1}).compact() == "1:1,2:1");
  CHECK(lusztig_q_analog(a2, {3, 0}, {1, 1}).compact() == "1:1");
  CHECK(lusztig_q_analog(a2, {1, 1}, {1, 1}).compact() == "0:1");
  // mu outside the support gives zero.
  CHECK(lusztig_q_analog(a2, {1, 0}, {0, 2}).is_zero());

  for (const char* l : {"A2", "C2", "G2"}) {
    CAPTURE(std::string(l));
    const RootSystem& g = build_root_datum(l).dual;
    IVec lam = g.root_fw(g.highest_root);
    for (const IVec& mu : g.dominant_below(lam))
      CHECK(lusztig_q_analog(g, lam, mu).at_one() ==
            freudenthal_multiplicity(g, lam, mu));
  }
}

TEST_CASE("IC stalks through affine KL data") {
  CHECK(std::string(kl_convention_name(kl_convention())) == "reversed");

  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  KLEngine engine(ctx);

  // Frozen stalks on the adjoint stratum closure.
  StalkPoincare top = ic_stalk_poincare(engine, {1, 1}, {1, 1});
  REQUIRE(top.in_closure);
  CHECK(top.poly.compact() == "4:1");      // q^{lambda(h)} on the open stratum
  StalkPoincare origin = ic_stalk_poincare(engine, {1, 1}, {0, 0});
  REQUIRE(origin.in_closure);
  CHECK(origin.poly.compact() == "2:1,4:1");
  StalkPoincare deep = ic_stalk_poincare(engine, {2, 1}, {1, 0});
  REQUIRE(deep.in_closure);
  CHECK(deep.poly.compact() == "4:1,6:1");

  // Outside the closure: flagged, zero.
  StalkPoincare out = ic_stalk_poincare(engine, {1, 1}, {1, 0});
  CHECK_FALSE(out.in_closure);
  CHECK(out.poly.is_zero());

  // A root-lattice engine is rejected (the translation lattice is too small).
  AffineCtx rctx(d, Lattice::Root);
  KLEngine rengine(rctx);
  CHECK_THROWS_AS((void)ic_stalk_poincare(rengine, {1, 0}, {1, 0}), UsageError);
}

TEST_CASE("three-route q-multiplicity agreement") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  KLEngine engine(ctx);

  QklReport r = verify_qkl_theorem(engine, {1, 1}, {0, 0});
  CHECK(r.pass);
  CHECK(r.b_vs_l);
  CHECK(r.b_vs_kl);
  CHECK(r.l_vs_kl);
  CHECK(r.multiplicity == 2);
  CHECK(r.brylinski.compact() == "2:1,4:1");  // Lusztig value at q -> q^2
  CHECK(r.convention == "reversed");

  QklReport top = verify_qkl_theorem(engine, {1, 1}, {1, 1});
  CHECK(top.pass);
  CHECK(top.multiplicity == 1);
  CHECK(top.kl_route.compact() == "0:1");

  QklReport deep = verify_qkl_theorem(engine, {2, 1}, {1, 0});
  CHECK(deep.pass);
  CHECK(deep.multiplicity == 2);
  CHECK(deep.kl_route.compact() == "2:1,4:1");

  // Cross-component mu: all three routes vanish and still agree.
  QklReport cross = verify_qkl_theorem(engine, {1, 1}, {1, 0});
  CHECK(cross.pass);
  CHECK(cross.multiplicity == 0);
  CHECK(cross.brylinski.is_zero());
  CHECK(cross.kl_route.is_zero());

  RootDatum a1 = build_root_datum("A1");
  AffineCtx ctx1(a1, Lattice::Weight);
  KLEngine engine1(ctx1);
  QklReport r1 = verify_qkl_theorem(engine1, {4}, {0});
  CHECK(r1.pass);
  CHECK(r1.kl_route.compact() == "4:1");
  QklReport r2 = verify_qkl_theorem(engine1, {4}, {2});
  CHECK(r2.pass);
  CHECK(r2.kl_route.compact() == "2:1");
}
