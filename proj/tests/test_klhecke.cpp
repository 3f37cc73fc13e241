#include "doctest.h"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "satake/errors.hpp"
#include "satake/klhecke.hpp"

using namespace satake;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "satake-kl-XXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    REQUIRE(mkdtemp(buf.data()) != nullptr);
    path = buf.data();
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

// Hecke expressions compare equal up to dropped zero terms.
bool expr_eq(const HeckeExpr& a, const HeckeExpr& b) {
  if (a.basis != b.basis) return false;
  std::map<AffKey, IntPoly> ta, tb;
  for (const auto& [k, p] : a.terms)
    if (!p.is_zero()) ta[k] = p;
  for (const auto& [k, p] : b.terms)
    if (!p.is_zero()) tb[k] = p;
  return ta == tb;
}

IntPoly one() { return IntPoly::monomial(0, 1); }

}  // namespace

TEST_CASE("KL polynomials of the infinite dihedral group are trivial") {
  RootDatum d = build_root_datum("A1");
  for (Lattice lat : {Lattice::Root, Lattice::Weight}) {
    CAPTURE(lattice_name(lat));
    AffineCtx ctx(d, lat);
    KLEngine engine(ctx);
    std::vector<AffElt> ball = ctx.length_ball(6, ctx.identity());
    for (const AffElt& y : ball)
      for (const AffElt& x : ball) {
        KLResult r = engine.kl_polynomial(x, y);
        if (ctx.bruhat_leq(x, y)) {
          CHECK(r.comparable);
          CHECK(r.poly == one());
          // mu is 1 exactly on covers.
          CHECK(engine.mu_coeff(x, y) ==
                (ctx.length(y) - ctx.length(x) == 1 ? 1 : 0));
        } else {
          CHECK_FALSE(r.comparable);
          CHECK(r.poly.is_zero());
        }
      }
  }
}

TEST_CASE("KL normalization, degree bound, frozen A2 value") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  KLEngine engine(ctx);

  // Frozen anchor: the spherical pair w(0) <= w(theta) carries P = 1 + q.
  AffElt x = ctx.max_coset_rep({0, 0});
  AffElt y = ctx.max_coset_rep({1, 1});
  CHECK(ctx.length(x) == 3);
  CHECK(ctx.length(y) == 7);
  KLResult r = engine.kl_polynomial(x, y);
  REQUIRE(r.comparable);
  CHECK(r.poly.compact() == "0:1,1:1");

  // Cross-component pairs are incomparable.
  AffElt t1 = ctx.translation({1, 0});
  CHECK_FALSE(engine.kl_polynomial(t1, y).comparable);

  // General properties on a small ball.
  std::vector<AffElt> ball = ctx.length_ball(4, ctx.identity());
  for (const AffElt& w : ball)
    for (const AffElt& z : ball) {
      if (!ctx.bruhat_leq(z, w)) continue;
      IntPoly p = engine.kl_polynomial(z, w).poly;
      CHECK(p.coeff(0) == 1);  // constant term 1
      CHECK(p.nonneg_coeffs());
      if (!(z == w))
        CHECK(2 * p.degree() <= ctx.length(w) - ctx.length(z) - 1);
      else
        CHECK(p == one());
    }
}

TEST_CASE("Hecke algebra relations in the T and canonical bases") {
  RootDatum d = build_root_datum("C2");
  AffineCtx ctx(d, Lattice::Root);
  KLEngine engine(ctx);
  IntPoly t = IntPoly::q();  // the Hecke variable is t; q = t^2 only inside KL

  for (int i = 0; i <= ctx.rank(); ++i) {
    AffElt s = ctx.simple(i);
    // (T_s - t)(T_s + t^-1) = 0, i.e. T_s^2 = (t - t^-1) T_s + T_e.
    HeckeExpr sq = engine.multiply(engine.t_element(s), engine.t_element(s));
    HeckeExpr want;
    want.basis = HeckeExpr::Basis::T;
    want.terms[aff_key(s)] = t - IntPoly::monomial(-1, 1);
    want.terms[aff_key(ctx.identity())] = one();
    CHECK(expr_eq(sq, want));

    // c_s = T_s + t^-1 and c_s^2 = (t + t^-1) c_s.
    HeckeExpr cs = engine.to_standard(engine.c_element(s));
    HeckeExpr cwant;
    cwant.basis = HeckeExpr::Basis::T;
    cwant.terms[aff_key(s)] = one();
    cwant.terms[aff_key(ctx.identity())] = IntPoly::monomial(-1, 1);
    CHECK(expr_eq(cs, cwant));
    HeckeExpr csq = engine.hecke_product_canonical(s, s);
    HeckeExpr cexp;
    cexp.basis = HeckeExpr::Basis::C;
    cexp.terms[aff_key(s)] = t + IntPoly::monomial(-1, 1);
    CHECK(expr_eq(csq, cexp));
  }

  std::vector<AffElt> ball = ctx.length_ball(3, ctx.identity());
  for (const AffElt& x : ball) {
    // T_x is the product of its reduced word.
    AffineCtx::Word w = ctx.reduced_word(x);
    HeckeExpr acc = engine.t_element(ctx.identity());
    for (int dgt : w.digits)
      acc = engine.multiply(acc, engine.t_element(ctx.simple(dgt)));
    acc = engine.multiply(acc, engine.t_element(w.omega));
    CHECK(expr_eq(acc, engine.t_element(x)));

    // Unitriangularity of c_x over the T basis:
    // coefficient at x is 1, all others have strictly negative degree in t.
    HeckeExpr std_form = engine.to_standard(engine.c_element(x));
    for (const auto& [key, coef] : std_form.terms) {
      if (coef.is_zero()) continue;
      if (key == aff_key(x))
        CHECK(coef == one());
      else
        CHECK(coef.degree() < 0);
    }

    // Round trip through both basis conversions.
    CHECK(expr_eq(engine.to_canonical(std_form), engine.c_element(x)));
  }
}

TEST_CASE("canonical products agree with mu-coefficients") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Root);
  KLEngine engine(ctx);
  IntPoly tp = IntPoly::q() + IntPoly::monomial(-1, 1);  // t + t^-1

  for (const AffElt& y : ctx.length_ball(3, ctx.identity())) {
    for (int i = 0; i <= ctx.rank(); ++i) {
      AffElt s = ctx.simple(i);
      AffElt sy = ctx.lmul_simple(i, y);
      HeckeExpr got = engine.hecke_product_canonical(s, y);
      HeckeExpr want;
      want.basis = HeckeExpr::Basis::C;
      if (ctx.length(sy) < ctx.length(y)) {
        // s is a left descent: c_s c_y = (t + t^-1) c_y.
        want.terms[aff_key(y)] = tp;
      } else {
        // Otherwise c_s c_y = c_{sy} + sum over z < y with sz < z of mu(z,y) c_z.
        want.terms[aff_key(sy)] = one();
        for (const AffElt& z : engine.interval(y)) {
          if (aff_key(z) == aff_key(y)) continue;
          if (ctx.length(ctx.lmul_simple(i, z)) > ctx.length(z)) continue;
          long long mu = engine.mu_coeff(z, y);
          if (mu != 0) want.terms[aff_key(z)] = IntPoly::monomial(0, mu);
        }
      }
      CHECK(expr_eq(got, want));
    }
  }
}

TEST_CASE("spherical structure constants match tensor multiplicities") {
  RootDatum d = build_root_datum("A1");
  AffineCtx ctx(d, Lattice::Root);
  KLCache cache;
  KLEngine engine(ctx, &cache);

  SatakeReport r = satake_structure_check(engine, {2}, {2});
  CHECK(r.complete);
  CHECK(r.parameter_free);
  CHECK(r.match);
  REQUIRE(r.constants.size() == 3);
  CHECK(r.constants.at({0}) == one());
  CHECK(r.constants.at({2}) == one());
  CHECK(r.constants.at({4}) == one());
  CHECK(r.tensor.at({0}) == 1);
  CHECK(r.tensor.at({2}) == 1);
  CHECK(r.tensor.at({4}) == 1);

  RootDatum a2 = build_root_datum("A2");
  AffineCtx ctx2(a2, Lattice::Root);
  KLEngine engine2(ctx2);
  SatakeReport r2 = satake_structure_check(engine2, {1, 1}, {1, 1});
  CHECK(r2.complete);
  CHECK(r2.parameter_free);
  CHECK(r2.match);
  // 8 x 8 = 27 + 10 + 10bar + 8 + 8 + 1.
  REQUIRE(r2.tensor.size() == 5);
  CHECK(r2.tensor.at({2, 2}) == 1);
  CHECK(r2.tensor.at({3, 0}) == 1);
  CHECK(r2.tensor.at({0, 3}) == 1);
  CHECK(r2.tensor.at({1, 1}) == 2);
  CHECK(r2.tensor.at({0, 0}) == 1);
  CHECK(r2.constants.at({1, 1}) == IntPoly::monomial(0, 2));
}

TEST_CASE("engine budgets are enforced") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  KLEngine engine(ctx, nullptr, /*max_length=*/4, /*max_interval=*/200000);
  AffElt y = ctx.max_coset_rep({1, 1});  // length 7 > 4
  CHECK_THROWS_AS((void)engine.kl_polynomial(ctx.identity(), y), BudgetError);
  KLEngine tiny(ctx, nullptr, 64, /*max_interval=*/3);
  CHECK_THROWS_AS((void)tiny.kl_polynomial(ctx.identity(), y), BudgetError);
}

TEST_CASE("cache round-trips through its file") {
  TempDir dir;
  fs::path file = dir.path / "kl.cache";
  IntPoly p = IntPoly::monomial(0, 1) + IntPoly::q();
  {
    KLCache cache(file.string());
    CHECK(cache.size() == 0);
    cache.store("alpha", p);
    cache.store("beta", IntPoly());
    CHECK(cache.size() == 2);
  }
  {
    KLCache cache(file.string());
    CHECK(cache.size() == 2);
    CHECK(cache.skipped_records() == 0);
    REQUIRE(cache.lookup("alpha") != nullptr);
    CHECK(*cache.lookup("alpha") == p);
    REQUIRE(cache.lookup("beta") != nullptr);
    CHECK(cache.lookup("beta")->is_zero());
    CHECK(cache.lookup("gamma") == nullptr);
  }
  // The file begins with the format tag.
  std::ifstream in(file);
  std::string first;
  std::getline(in, first);
  CHECK(first == KLCache::kFormatTag);
}

TEST_CASE("corrupt cache records are skipped, not trusted") {
  TempDir dir;
  fs::path file = dir.path / "kl.cache";
  {
    KLCache cache(file.string());
    cache.store("alpha", IntPoly::q());
    cache.store("beta", IntPoly::monomial(2, 5));
  }
  // Flip one byte inside the first record's payload.
  std::string content;
  {
    std::ifstream in(file, std::ios::binary);
    content.assign(std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>());
  }
  std::size_t pos = content.find("alpha");
  REQUIRE(pos != std::string::npos);
  content[pos] = 'A';
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << content;
  }
  {
    KLCache cache(file.string());
    CHECK(cache.skipped_records() == 1);
    CHECK(cache.size() == 1);
    CHECK(cache.lookup("alpha") == nullptr);      // damaged record dropped
    REQUIRE(cache.lookup("beta") != nullptr);     // later record survives
    CHECK(*cache.lookup("beta") == IntPoly::monomial(2, 5));
  }
}

TEST_CASE("a truncated trailing record is ignored silently") {
  TempDir dir;
  fs::path file = dir.path / "kl.cache";
  {
    KLCache cache(file.string());
    cache.store("alpha", IntPoly::q());
  }
  {
    std::ofstream out(file, std::ios::binary | std::ios::app);
    out << "beta\t0:1";  // no checksum, no newline: interrupted write
  }
  KLCache cache(file.string());
  CHECK(cache.size() == 1);
  CHECK(cache.skipped_records() == 0);
  CHECK(cache.lookup("beta") == nullptr);
}

TEST_CASE("unknown cache versions are refused") {
  TempDir dir;
  fs::path file = dir.path / "kl.cache";
  {
    std::ofstream out(file, std::ios::binary);
    out << "SATAKE-KL-CACHE v0\n";
  }
  CHECK_THROWS_WITH((void)KLCache(file.string()),
                    doctest::Contains("refusing to read it"));
}

TEST_CASE("checksums are stable FNV-1a hex") {
  std::string sum = KLCache::checksum_hex("alpha\t1:1");
  CHECK(sum.size() == 16);
  CHECK(sum == KLCache::checksum_hex("alpha\t1:1"));
  CHECK(sum != KLCache::checksum_hex("alpha\t1:2"));
  for (char c : sum) CHECK(std::isxdigit(static_cast<unsigned char>(c)));
}

TEST_CASE("a warm cache reproduces cold results without recomputing") {
  TempDir dir;
  fs::path file = dir.path / "kl.cache";
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  AffElt x = ctx.max_coset_rep({0, 0});
  AffElt y = ctx.max_coset_rep({1, 1});

  IntPoly cold;
  std::size_t persisted;
  {
    KLCache cache(file.string());
    KLEngine engine(ctx, &cache);
    cold = engine.kl_polynomial(x, y).poly;
    persisted = cache.size();
    CHECK(persisted > 0);
  }
  {
    KLCache cache(file.string());
    CHECK(cache.size() == persisted);  // fully reloaded
    KLEngine engine(ctx, &cache);
    CHECK(engine.kl_polynomial(x, y).poly == cold);
    CHECK(cache.size() == persisted);  // nothing new was computed
  }
}
