#include "doctest.h"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <vector>

#include "satake/errors.hpp"
#include "satake/weyl.hpp"

using namespace satake;

namespace {

// Graph-distance oracle: BFS over left multiplication by affine simples,
// starting from a length-zero seed.  Independent of the inversion-count
// formula used by AffineCtx::length.
std::map<AffKey, long long> bfs_depths(const AffineCtx& ctx, const AffElt& seed,
                                       long long maxdepth) {
  std::map<AffKey, long long> depth;
  std::queue<AffElt> todo;
  depth[aff_key(seed)] = 0;
  todo.push(seed);
  while (!todo.empty()) {
    AffElt x = todo.front();
    todo.pop();
    long long d = depth[aff_key(x)];
    if (d == maxdepth) continue;
    for (int i = 0; i <= ctx.rank(); ++i) {
      AffElt y = ctx.lmul_simple(i, x);
      if (depth.emplace(aff_key(y), d + 1).second) todo.push(y);
    }
  }
  return depth;
}

// Classical translation length: l(t_tau) = sum_{beta>0} |<tau, beta^vee>|.
long long translation_length_oracle(const RootSystem& g, const IVec& tau) {
  long long s = 0;
  for (int k = 0; k < g.num_pos_roots(); ++k) {
    long long p = g.pair(tau, k);
    s += p < 0 ? -p : p;
  }
  return s;
}

AffElt word_product(const AffineCtx& ctx, const std::vector<int>& digits,
                    const AffElt& omega) {
  AffElt acc = ctx.identity();
  for (int d : digits) acc = ctx.rmul_simple(acc, d);
  return ctx.mul(acc, omega);
}

}  // namespace

TEST_CASE("lattice names") {
  CHECK(lattice_name(Lattice::Weight) == "weight");
  CHECK(lattice_name(Lattice::Root) == "root");
  CHECK(parse_lattice("weight") == Lattice::Weight);
  CHECK(parse_lattice("root") == Lattice::Root);
  CHECK_THROWS_AS((void)parse_lattice("coweight"), UsageError);
}

TEST_CASE("context basics and lattice validation") {
  RootDatum d = build_root_datum("A2");
  AffineCtx wctx(d, Lattice::Weight);
  AffineCtx rctx(d, Lattice::Root);
  CHECK(wctx.name() == "A2/weight");
  CHECK(rctx.name() == "A2/root");
  CHECK(wctx.rank() == 2);

  CHECK(wctx.length(wctx.identity()) == 0);
  for (int i = 0; i <= 2; ++i) {
    AffElt s = rctx.simple(i);
    CHECK(rctx.length(s) == 1);
    CHECK(rctx.mul(s, s) == rctx.identity());
    CHECK(rctx.inv(s) == s);
  }

  // The root-lattice context refuses translations outside the root lattice.
  CHECK(wctx.translation({1, 0}).tau == IVec{1, 0});
  CHECK_THROWS_WITH((void)rctx.translation({1, 0}),
                    doctest::Contains("not in the root lattice"));
  CHECK(rctx.translation({1, 1}).tau == IVec{1, 1});

  // Elements are bound to their owning context.
  AffineCtx other(build_root_datum("A1"), Lattice::Root);
  CHECK_THROWS_AS((void)rctx.length(other.identity()), UsageError);
}

TEST_CASE("translations form a lattice embedding") {
  RootDatum d = build_root_datum("B2");
  AffineCtx ctx(d, Lattice::Weight);
  const RootSystem& g = ctx.rs();
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      IVec u = {a, b}, v = {b, -a};
      AffElt tu = ctx.translation(u), tv = ctx.translation(v);
      CHECK(ctx.mul(tu, tv) == ctx.translation(ivec_add(u, v)));
      CHECK(ctx.inv(tu) == ctx.translation(ivec_neg(u)));
      CHECK(ctx.length(tu) == translation_length_oracle(g, u));
    }
}

TEST_CASE("length equals Cayley-graph distance") {
  // Root-lattice contexts: one component, BFS from the identity.
  for (const char* l : {"A1", "A2", "C2"}) {
    CAPTURE(l);
    RootDatum d = build_root_datum(l);
    AffineCtx ctx(d, Lattice::Root);
    auto depth = bfs_depths(ctx, ctx.identity(), 5);
    for (const auto& [key, dep] : depth) {
      AffElt x{key.first, key.second, ctx.stamp()};
      CHECK(ctx.length(x) == dep);
    }
    // The ball reported by the context is exactly the BFS ball.
    for (long long m = 0; m <= 4; ++m) {
      std::set<AffKey> want;
      for (const auto& [key, dep] : depth)
        if (dep <= m) want.insert(key);
      std::set<AffKey> got;
      for (const AffElt& x : ctx.length_ball(m, ctx.identity()))
        got.insert(aff_key(x));
      CHECK(got == want);
    }
  }

  // Weight-lattice context: BFS each component from a length-zero seed.
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  AffElt omega = ctx.reduced_word(ctx.translation({1, 0})).omega;
  REQUIRE(ctx.length(omega) == 0);
  CHECK(ctx.component(omega) == ctx.rs().component_tag({1, 0}));
  for (const AffElt& seed : {ctx.identity(), omega}) {
    auto depth = bfs_depths(ctx, seed, 4);
    for (const auto& [key, dep] : depth) {
      AffElt x{key.first, key.second, ctx.stamp()};
      CHECK(ctx.length(x) == dep);
      CHECK(ctx.component(x) == ctx.component(seed));
    }
    std::set<AffKey> got;
    for (const AffElt& x : ctx.length_ball(4, seed)) got.insert(aff_key(x));
    CHECK(got.size() == depth.size());
    for (const auto& [key, dep] : depth) CHECK(got.count(key) == 1);
  }

  // length_ball refuses seeds of positive length.
  CHECK_THROWS_AS((void)ctx.length_ball(2, ctx.simple(1)), UsageError);
}

TEST_CASE("group laws, descents, reduced words") {
  RootDatum d = build_root_datum("C2");
  AffineCtx ctx(d, Lattice::Weight);
  std::vector<AffElt> ball = ctx.length_ball(3, ctx.identity());

  for (const AffElt& x : ball) {
    CHECK(ctx.mul(x, ctx.inv(x)) == ctx.identity());
    CHECK(ctx.length(ctx.inv(x)) == ctx.length(x));
    for (int i = 0; i <= ctx.rank(); ++i) {
      CHECK(ctx.lmul_simple(i, x) == ctx.mul(ctx.simple(i), x));
      CHECK(ctx.rmul_simple(x, i) == ctx.mul(x, ctx.simple(i)));
      CHECK(ctx.left_descent(i, x) ==
            (ctx.length(ctx.lmul_simple(i, x)) < ctx.length(x)));
      CHECK(ctx.right_descent(i, x) ==
            (ctx.length(ctx.rmul_simple(x, i)) < ctx.length(x)));
    }
    auto ld = ctx.left_descents(x);
    for (int i = 0; i <= ctx.rank(); ++i)
      CHECK(ctx.left_descent(i, x) ==
            (std::find(ld.begin(), ld.end(), i) != ld.end()));

    AffineCtx::Word word = ctx.reduced_word(x);
    CHECK((long long)word.digits.size() == ctx.length(x));
    CHECK(ctx.length(word.omega) == 0);
    CHECK(word_product(ctx, word.digits, word.omega) == x);
  }

  // Associativity on a sample of triples.
  for (std::size_t a = 0; a < ball.size(); a += 7)
    for (std::size_t b = 1; b < ball.size(); b += 11)
      for (std::size_t c = 2; c < ball.size(); c += 13)
        CHECK(ctx.mul(ctx.mul(ball[a], ball[b]), ball[c]) ==
              ctx.mul(ball[a], ctx.mul(ball[b], ball[c])));
}

TEST_CASE("Bruhat order matches the subword oracle") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Root);
  std::vector<AffElt> ball = ctx.length_ball(4, ctx.identity());

  for (const AffElt& y : ball) {
    AffineCtx::Word word = ctx.reduced_word(y);
    REQUIRE(word.omega == ctx.identity());
    // Products over all subwords of a fixed reduced word of y give exactly
    // the lower Bruhat interval of y.
    std::set<AffKey> below;
    const std::size_t m = word.digits.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      std::vector<int> sub;
      for (std::size_t p = 0; p < m; ++p)
        if (mask & (std::size_t(1) << p)) sub.push_back(word.digits[p]);
      below.insert(aff_key(word_product(ctx, sub, ctx.identity())));
    }
    for (const AffElt& x : ball)
      CHECK(ctx.bruhat_leq(x, y) == (below.count(aff_key(x)) == 1));

    // lower_interval agrees and is sorted by length first.
    std::vector<AffElt> interval = ctx.lower_interval(y);
    CHECK(interval.size() == below.size());
    for (const AffElt& x : interval) CHECK(below.count(aff_key(x)) == 1);
    for (std::size_t k = 1; k < interval.size(); ++k)
      CHECK(ctx.length(interval[k - 1]) <= ctx.length(interval[k]));
  }
}

TEST_CASE("Bruhat order separates components") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  AffElt omega = ctx.reduced_word(ctx.translation({1, 0})).omega;
  AffElt x = ctx.mul(ctx.simple(1), omega);
  AffElt y = ctx.rmul_simple(ctx.simple(1), 2);
  CHECK(ctx.length(x) == 1);
  CHECK(ctx.length(y) == 2);
  CHECK_FALSE(ctx.bruhat_leq(x, y));            // different components
  CHECK(ctx.bruhat_leq(ctx.mul(ctx.identity(), omega), x));
  CHECK(ctx.bruhat_leq(x, x));
}

TEST_CASE("maximal double-coset representatives") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  const RootSystem& g = ctx.rs();
  long long lw0 = g.weyl.length[g.weyl.w0];
  REQUIRE(lw0 == 3);

  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b) {
      IVec lam = {a, b};
      AffElt w = ctx.max_coset_rep(lam);
      CHECK(ctx.length(w) == g.pair_h(lam) + lw0);
      CHECK(ctx.component(w) == g.component_tag(lam));
      // Every finite simple is a two-sided descent.
      for (int i = 1; i <= ctx.rank(); ++i) {
        CHECK(ctx.left_descent(i, w));
        CHECK(ctx.right_descent(i, w));
      }
      // w contains the translation by the antidominant representative.
      CHECK(ctx.bruhat_leq(ctx.translation(g.weyl.apply(g.weyl.w0, lam)), w));
    }

  // Frozen normal form: w(1,1) = t_{(-1,-1)} s1s2s1 at length 7.
  AffElt w11 = ctx.max_coset_rep({1, 1});
  CHECK(ctx.length(w11) == 7);
  CHECK(w11.tau == IVec{-1, -1});
  CHECK(ctx.serialize(w11) == "0,0;-1,-1;121");
  // max_coset_rep requires a dominant weight.
  CHECK_THROWS_AS((void)ctx.max_coset_rep({-1, 0}), UsageError);
}

TEST_CASE("serialization round-trips") {
  RootDatum d = build_root_datum("A2");
  AffineCtx ctx(d, Lattice::Weight);
  CHECK(ctx.serialize(ctx.identity()) == "0,0;0,0;e");
  CHECK(ctx.serialize(ctx.simple(0)) == "0,0;1,1;121");
  CHECK(ctx.serialize(ctx.translation({1, 0})) == "0,2;1,0;e");
  for (const AffElt& x : ctx.length_ball(3, ctx.identity()))
    CHECK(ctx.deserialize(ctx.serialize(x)) == x);
  AffElt omega = ctx.reduced_word(ctx.translation({1, 0})).omega;
  for (const AffElt& x : ctx.length_ball(3, omega))
    CHECK(ctx.deserialize(ctx.serialize(x)) == x);
  CHECK_THROWS_AS((void)ctx.deserialize("junk"), UsageError);
  CHECK_THROWS_AS((void)ctx.deserialize("0,0;1,0;e"), UsageError);
}
