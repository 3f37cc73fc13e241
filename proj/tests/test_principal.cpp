#include "doctest.h"

#include <map>
#include <string>
#include <vector>

#include "satake/errors.hpp"
#include "satake/linalg.hpp"
#include "satake/principal.hpp"

using namespace satake;

namespace {

QMat commutator(const QMat& a, const QMat& b) {
  return qmat_sub(qmat_mul(a, b), qmat_mul(b, a));
}

QMat scale(QMat m, const Rat& c) {
  for (auto& row : m)
    for (auto& x : row) x *= c;
  return m;
}

}  // namespace

TEST_CASE("principal triple: sl2 relations in both realizations") {
  for (const char* l : {"A1", "A2", "A3", "B2", "C2", "G2"}) {
    CAPTURE(std::string(l));
    RootDatum d = build_root_datum(l);
    PrincipalTriple t = principal_triple(d);

    // f is solved against the regular element: its simple coefficients are
    // exactly the coordinates of h = 2 rho^vee.
    const RootSystem& g = d.dual;
    REQUIRE(t.f_coeffs.size() == (std::size_t)g.rank);
    for (int i = 0; i < g.rank; ++i) CHECK(t.f_coeffs[i] == Rat(g.hvec[i]));

    const QMat* sets[2][3] = {{&t.n_probe, &t.h_probe, &t.f_probe},
                              {&t.ad_n, &t.ad_h, &t.ad_f}};
    for (const auto& s : sets) {
      const QMat &n = *s[0], &h = *s[1], &f = *s[2];
      CHECK(commutator(n, f) == h);
      CHECK(commutator(h, n) == scale(n, 2));
      CHECK(commutator(h, f) == scale(f, -2));
    }
  }
}

TEST_CASE("centralizer: frozen eigenvalues, abelian, sorted") {
  struct Row {
    const char* label;
    std::vector<int> exponents;
  };
  const Row rows[] = {
      {"A1", {1}},        {"A2", {1, 2}},     {"A3", {1, 2, 3}},
      {"B2", {1, 3}},     {"C2", {1, 3}},     {"G2", {1, 5}},
  };
  for (const Row& r : rows) {
    CAPTURE(std::string(r.label));
    RootDatum d = build_root_datum(r.label);
    PrincipalContext ctx(d);
    const CentralizerBasis& c = ctx.centralizer();
    CHECK(c.exponents == r.exponents);
    REQUIRE(c.elements.size() == r.exponents.size());
    for (std::size_t i = 0; i < c.elements.size(); ++i)
      CHECK(c.elements[i].eigenvalue == 2 * r.exponents[i]);

    // dim g = 2 |Phi^+| + rank; the centralizer of a principal nilpotent has
    // dimension equal to the rank.
    CHECK(ctx.dim_g() ==
          (std::size_t)(2 * ctx.rs().num_pos_roots() + ctx.rank()));

    // The first element is n itself, and all elements commute on the probe.
    const Irrep& probe = ctx.probe();
    QMat nmat = ctx.centralizer_matrix(probe, 0);
    CHECK(nmat == probe.generator_n());
    for (std::size_t i = 0; i < c.elements.size(); ++i)
      for (std::size_t j = i; j < c.elements.size(); ++j)
        CHECK(qmat_is_zero(commutator(ctx.centralizer_matrix(probe, i),
                                      ctx.centralizer_matrix(probe, j))));

    // Each element is an ad-h eigenvector centralizing n on the adjoint side.
    const PrincipalTriple& t = ctx.triple();
    for (const CentralizerElement& el : c.elements) {
      QVec hit = qmat_apply(t.ad_n, el.coords);
      CHECK(hit == QVec(hit.size(), Rat(0)));
      QVec scaled = qmat_apply(t.ad_h, el.coords);
      for (std::size_t k = 0; k < scaled.size(); ++k)
        CHECK(scaled[k] == el.coords[k] * el.eigenvalue);
    }
  }
}

TEST_CASE("modules from another root system are refused") {
  PrincipalContext ctx(build_root_datum("A2"));
  Irrep foreign = build_irrep(build_root_datum("A1").dual, {2});
  CHECK_THROWS_AS(ctx.require_same_system(foreign), UsageError);
  CHECK_THROWS_AS((void)a_invariants(ctx, foreign, {0}), UsageError);
}

TEST_CASE("Brylinski filtration: closed rank-1 form and frozen A2 anchor") {
  const RootSystem& a1 = build_root_datum("A1").dual;
  for (int lh = 0; lh <= 8; lh += 2)
    for (int mh = 0; mh <= lh; mh += 2) {
      Irrep rep = build_irrep(a1, {lh});
      FiltrationReport r = brylinski_poincare(rep, {mh});
      CHECK(r.dominant);
      CHECK(r.poincare == IntPoly::monomial(lh - mh, 1));
      REQUIRE(r.jumps.size() == 1);
      CHECK(r.jumps[0].first == (lh - mh) / 2);
      CHECK(r.jumps[0].second == 1);
    }

  const RootSystem& a2 = build_root_datum("A2").dual;
  Irrep adj = build_irrep(a2, {1, 1});
  FiltrationReport r = brylinski_poincare(adj, {0, 0});
  CHECK(r.poincare.compact() == "2:1,4:1");  // q^2 + q^4
  REQUIRE(r.jumps.size() == 2);
  CHECK(r.jumps[0] == std::pair<int, long long>{1, 1});
  CHECK(r.jumps[1] == std::pair<int, long long>{2, 1});

  // At q = 1 the filtration exhausts the weight multiplicity.
  for (const IVec& mu : a2.dominant_below({1, 1}))
    CHECK(brylinski_poincare(adj, mu).poincare.at_one() ==
          freudenthal_multiplicity(a2, {1, 1}, mu));

  // Non-dominant mu: gated, documented, not computed as a theorem statement.
  IVec nd = a2.simple_reflect_fw(1, {0, 0});
  FiltrationReport gated = brylinski_poincare(adj, {-1, 2});
  CHECK_FALSE(gated.dominant);
  CHECK_FALSE(gated.note.empty());
  (void)nd;

  // The ungated filtration at a Weyl image still fills the multiplicity.
  FiltrationReport raw = brylinski_filtration(adj, {-1, 2});
  CHECK(raw.poincare.at_one() == 1);
}

TEST_CASE("filtration orbit sums are palindromic") {
  const RootSystem& a1 = build_root_datum("A1").dual;
  Irrep v2 = build_irrep(a1, {2});
  CHECK(filtration_shift_orbit_sum(v2, {2}).compact() == "0:1,4:1");
  Irrep v4 = build_irrep(a1, {4});
  CHECK(filtration_shift_orbit_sum(v4, {2}).compact() == "2:1,6:1");

  const RootSystem& a2 = build_root_datum("A2").dual;
  Irrep adj = build_irrep(a2, {1, 1});
  CHECK(filtration_shift_orbit_sum(adj, {0, 0}).compact() == "2:1,4:1");
  CHECK(filtration_shift_orbit_sum(adj, {1, 1}).compact() == "0:1,2:2,6:2,8:1");
}

TEST_CASE("generalized exponents with rank certificates") {
  // Adjoint modules: the generalized exponents are the classical exponents.
  struct Row {
    const char* label;
    IVec theta;
    std::vector<int> exponents;
  };
  const Row rows[] = {
      {"A1", {2}, {1}},
      {"A2", {1, 1}, {1, 2}},
      {"B2", {2, 0}, {1, 3}},
      {"G2", {1, 0}, {1, 5}},
  };
  for (const Row& r : rows) {
    CAPTURE(std::string(r.label));
    RootDatum d = build_root_datum(r.label);
    PrincipalContext ctx(d);
    Irrep rep = build_irrep(ctx.rs(), r.theta);
    AInvariantsReport a = a_invariants(ctx, rep, ctx.rs().component_tag(r.theta));
    CHECK(a.exponents == r.exponents);
    CHECK(a.dim_fixed == (long long)r.exponents.size());
    CHECK(a.mu_c == IVec(ctx.rank(), 0));
    // dim V^a equals the zero-weight block only for the adjoint of rank =
    // multiplicity; structurally it equals dim V(mu_c).
    CHECK(a.dim_fixed == rep.block_dim(a.mu_c));
  }

  // Frozen polynomial spellings.
  PrincipalContext a2(build_root_datum("A2"));
  Irrep adj = build_irrep(a2.rs(), {1, 1});
  AInvariantsReport rep = a_invariants(a2, adj, a2.rs().component_tag({1, 1}));
  CHECK(rep.exponent_poly.compact() == "2:1,4:1");
  Irrep triv = build_irrep(a2.rs(), {0, 0});
  AInvariantsReport rt = a_invariants(a2, triv, a2.rs().component_tag({0, 0}));
  CHECK(rt.exponents == std::vector<int>{0});
  CHECK(rt.exponent_poly.compact() == "0:1");

  // Nontrivial coset: the standard module of A2 is a-cyclic of dim 3.
  Irrep std3 = build_irrep(a2.rs(), {1, 0});
  AInvariantsReport rs3 = a_invariants(a2, std3, a2.rs().component_tag({1, 0}));
  CHECK(rs3.dim_fixed == 1);
  CHECK(rs3.mu_c == IVec{1, 0});

  // The coset argument must match the module's component.
  CHECK_THROWS_AS((void)a_invariants(a2, std3, a2.rs().component_tag({0, 0})),
                  UsageError);
}

TEST_CASE("minuscule modules are cyclic over the centralizer") {
  for (const char* l : {"A1", "A2", "A3", "B2", "C2"}) {
    CAPTURE(std::string(l));
    RootDatum d = build_root_datum(l);
    PrincipalContext ctx(d);
    const RootSystem& g = ctx.rs();
    // Every nontrivial component tag names one minuscule module.
    IVec omega1(g.rank, 0);
    omega1[0] = 1;
    for (const IVec& probe : {g.component_tag(omega1), g.component_tag(IVec(g.rank, 0))}) {
      CyclicityReport r = minuscule_cyclicity_check(ctx, probe);
      CHECK(r.cyclic);
      CHECK(r.dim == weyl_dimension(g, r.mu_c));
    }
  }
  // Frozen small table for A2.
  PrincipalContext ctx(build_root_datum("A2"));
  CyclicityReport r0 = minuscule_cyclicity_check(ctx, {0, 0});
  CHECK(r0.mu_c == IVec{0, 0});
  CHECK(r0.dim == 1);
  CHECK(r0.rounds == 0);
  CyclicityReport r1 = minuscule_cyclicity_check(ctx, {0, 1});
  CHECK(r1.mu_c == IVec{0, 1});
  CHECK(r1.dim == 3);
  CHECK(r1.cyclic);
}

TEST_CASE("graded Hom over the centralizer") {
  PrincipalContext ctx(build_root_datum("A2"));
  GradedHomReport hom = graded_hom_over_a(ctx, {1, 1}, {1, 1});
  CHECK(hom.total == 10);
  CHECK(hom.tensor_side == 10);
  std::map<int, long long> want = {{0, 1}, {2, 2}, {4, 3}, {6, 3}, {8, 1}};
  CHECK(hom.by_degree == want);

  GradedHomReport triv = graded_hom_over_a(ctx, {0, 0}, {0, 0});
  CHECK(triv.total == 1);
  CHECK(triv.tensor_side == 1);

  // Rank one in both directions: the trivial module maps into the adjoint
  // through the top of the filtration, and conversely through the bottom.
  PrincipalContext a1(build_root_datum("A1"));
  GradedHomReport up = graded_hom_over_a(a1, {0}, {2});
  CHECK(up.total == 1);
  CHECK(up.by_degree == std::map<int, long long>{{2, 1}});
  GradedHomReport down = graded_hom_over_a(a1, {2}, {0});
  CHECK(down.total == 1);
  CHECK(down.by_degree == std::map<int, long long>{{2, 1}});

  CHECK_THROWS_AS((void)graded_hom_over_a(ctx, {3, 3}, {3, 3}, 10), BudgetError);
}

TEST_CASE("pairing of centralizer words against the lowest-weight line") {
  PrincipalContext a1(build_root_datum("A1"));
  // Generator 0 is n.  <v^lam, n^k v_lam> on V(2k): frozen values 2 and 24.
  AExpr n2 = {AWord{Rat(1), {{0, 2}}}};
  CHECK(schubert_pairing(a1, n2, {2}) == Rat(2));
  AExpr n4 = {AWord{Rat(1), {{0, 4}}}};
  CHECK(schubert_pairing(a1, n4, {4}) == Rat(24));
  // Degree mismatch pairs to zero.
  CHECK(schubert_pairing(a1, n2, {4}) == Rat(0));
  // Rational combinations evaluate linearly: 3/2 * 2 - 1 * 2 = 1.
  AExpr comb = {AWord{Rat(3, 2), {{0, 2}}}, AWord{Rat(-1), {{0, 1}, {0, 1}}}};
  CHECK(schubert_pairing(a1, comb, {2}) == Rat(1));

  PrincipalContext a2(build_root_datum("A2"));
  AExpr n4b = {AWord{Rat(1), {{0, 4}}}};
  CHECK(schubert_pairing(a2, n4b, {1, 1}) == Rat(6));

  PrincipalContext g2(build_root_datum("G2"));
  AExpr n6 = {AWord{Rat(1), {{0, 6}}}};
  CHECK(schubert_pairing(g2, n6, {0, 1}) == Rat(2));

  // Generator indices outside the centralizer basis are refused.
  AExpr bad = {AWord{Rat(1), {{2, 1}}}};
  CHECK_THROWS_AS((void)schubert_pairing(a2, bad, {1, 1}), UsageError);
}

TEST_CASE("module shape verifiers accept true theorems") {
  for (const char* l : {"A1", "A2", "A3", "B2", "C2", "G2"}) {
    CAPTURE(std::string(l));
    const RootSystem& g = build_root_datum(l).dual;
    std::vector<IVec> lams;
    for (int i = 0; i < g.rank; ++i) {
      IVec v(g.rank, 0);
      v[i] = 1;
      lams.push_back(v);
    }
    lams.push_back(g.root_fw(g.highest_root));
    for (const IVec& lam : lams) {
      CAPTURE(ivec_csv(lam));
      Irrep rep = build_irrep(g, lam);
      CHECK_NOTHROW(check_weight_parity(rep));
      CHECK_NOTHROW(check_h_symmetry(rep));
      CHECK_NOTHROW(check_hard_lefschetz(rep));
    }
  }
}
