// Command-line frontend for the workbench.  One subcommand per operation;
// --json switches every subcommand from the human-readable form to a
// deterministic JSON schema (ordered keys, ascending exponents, canonical
// weight ordering), so identical inputs produce byte-identical output no
// matter the cache state.
//
// Exit codes: 0 success, 1 mathematical failure, 2 usage error, 3 budget
// exceeded.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "satake/acceptance.hpp"
#include "satake/errors.hpp"
#include "satake/grassview.hpp"
#include "satake/jsonio.hpp"
#include "satake/klhecke.hpp"
#include "satake/principal.hpp"
#include "satake/repbuild.hpp"
#include "satake/rootdata.hpp"
#include "satake/weyl.hpp"

namespace {

using namespace satake;
namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// shared plumbing

std::unique_ptr<KLCache> open_cache() {
  fs::path dir;
  if (const char* env = std::getenv("SATAKE_CACHE"); env && *env) {
    dir = env;
  } else if (const char* home = std::getenv("HOME"); home && *home) {
    dir = fs::path(home) / ".cache" / "satake";
  } else {
    return std::make_unique<KLCache>();  // nowhere to persist: in-memory table
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw UsageError("cannot create cache directory '" + dir.string() + "'");
  return std::make_unique<KLCache>((dir / "kl.cache").string());
}

std::string poly_pretty(const IntPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    long long a = c < 0 ? -c : c;
    if (first) {
      if (c < 0) s += "-";
      first = false;
    } else {
      s += c < 0 ? " - " : " + ";
    }
    if (a != 1 || e == 0) s += std::to_string(a);
    if (e != 0) {
      s += var;
      if (e != 1) s += "^" + std::to_string(e);
    }
  }
  return s;
}

void require_dominant(const RootSystem& g, const IVec& v, const std::string& name) {
  if (!g.is_dominant(v))
    throw UsageError(name + " = " + ivec_csv(v) + " is not dominant");
}

// exponents as the conjugate partition of the root-height histogram
std::vector<int> system_exponents(const RootSystem& g) {
  std::map<int, int> hist;
  for (int h : g.height) ++hist[h];
  std::vector<int> out;
  for (int i = 1;; ++i) {
    int c = 0;
    for (const auto& [h, m] : hist) {
      (void)h;
      if (m >= i) ++c;
    }
    if (c == 0) break;
    out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IVec> all_component_tags(const RootSystem& g) {
  std::vector<IVec> out;
  IVec v(g.rank, 0);
  while (true) {
    out.push_back(v);
    int i = 0;
    while (i < g.rank && (g.snf_diag[i] <= 1 || v[i] + 1 == g.snf_diag[i])) v[i++] = 0;
    if (i == g.rank) break;
    ++v[i];
  }
  return out;
}

OJson json_imat(const IMat& m) {
  OJson a = OJson::array();
  for (const IVec& row : m) a.push_back(row);
  return a;
}

std::string self_path(const char* argv0) {
  std::error_code ec;
  fs::path p = fs::read_symlink("/proc/self/exe", ec);
  if (!ec) return p.string();
  return argv0 ? argv0 : "";
}

// ---------------------------------------------------------------------------
// rootdata

void side_json(OJson& o, const RootSystem& g) {
  o["cartan"] = json_imat(g.cartan);
  o["positive_roots"] = g.num_pos_roots();
  o["highest_root"] = g.root_fw(g.highest_root);
  o["hvec"] = g.hvec;
  o["exponents"] = system_exponents(g);
  o["fundamental_group"] = g.pi1();
  o["weyl_order"] = g.weyl.size();
}

void side_text(const char* name, const RootSystem& g) {
  std::cout << name << ":\n  cartan:";
  for (const IVec& row : g.cartan) std::cout << " [" << ivec_csv(row) << "]";
  std::cout << "\n  positive roots: " << g.num_pos_roots()
            << "\n  highest root (fw): " << ivec_csv(g.root_fw(g.highest_root))
            << "\n  h (coroot coords): " << ivec_csv(g.hvec) << "\n  exponents:";
  for (int e : system_exponents(g)) std::cout << ' ' << e;
  std::cout << "\n  fundamental group:";
  IVec p = g.pi1();
  if (p.empty()) std::cout << " trivial";
  for (long long v : p) std::cout << " Z/" << v;
  std::cout << "\n  Weyl order: " << g.weyl.size() << '\n';
}

int cmd_rootdata(const std::string& label, bool json) {
  RootDatum d = build_root_datum(label);
  if (json) {
    OJson o;
    o["command"] = "rootdata";
    o["datum"] = d.label;
    o["rank"] = d.group.rank;
    OJson grp = OJson::object(), dual = OJson::object();
    side_json(grp, d.group);
    side_json(dual, d.dual);
    o["group"] = grp;
    o["dual"] = dual;
    emit_json(std::cout, o);
  } else {
    std::cout << d.label << ": rank " << d.group.rank << '\n';
    side_text("group", d.group);
    side_text("dual", d.dual);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// orbit

int cmd_orbit(const std::string& label, const std::string& lambda_s, bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank);
  RootSystem::Orbit orb = g.weyl_orbit(lam);
  if (json) {
    OJson o;
    o["command"] = "orbit";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["dominant"] = orb.dominant;
    o["size"] = orb.elements.size();
    OJson els = OJson::array();
    for (const IVec& e : orb.elements) els.push_back(e);
    o["elements"] = els;
    emit_json(std::cout, o);
  } else {
    std::cout << "dominant: " << ivec_csv(orb.dominant) << "\nsize: " << orb.elements.size()
              << '\n';
    for (const IVec& e : orb.elements) std::cout << "  " << ivec_csv(e) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// klpoly

int cmd_klpoly(const std::string& label, const std::string& lambda_s, const std::string& mu_s,
               const std::string& lattice_s, bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank), mu = parse_ivec_csv(mu_s, g.rank);
  require_dominant(g, lam, "lambda");
  require_dominant(g, mu, "mu");
  AffineCtx ctx(d, parse_lattice(lattice_s));
  auto cache = open_cache();
  KLEngine engine(ctx, cache.get());
  AffElt y = ctx.max_coset_rep(lam), x = ctx.max_coset_rep(mu);
  KLResult r = engine.kl_polynomial(x, y);
  if (json) {
    OJson o;
    o["command"] = "klpoly";
    o["datum"] = d.label;
    o["lattice"] = lattice_name(ctx.lattice());
    o["lambda"] = lam;
    o["mu"] = mu;
    o["length_x"] = ctx.length(x);
    o["length_y"] = ctx.length(y);
    o["comparable"] = r.comparable;
    o["poly"] = json_poly(r.poly);
    emit_json(std::cout, o);
  } else {
    std::cout << "w(mu):     length " << ctx.length(x) << "\nw(lambda): length " << ctx.length(y)
              << '\n';
    if (!r.comparable)
      std::cout << "incomparable (different component or not below): P = 0\n";
    else
      std::cout << "P_{w(mu),w(lambda)} = " << poly_pretty(r.poly, "q") << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// stalks

int cmd_stalks(const std::string& label, const std::string& lambda_s, const std::string& mu_s,
               bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank);
  require_dominant(g, lam, "lambda");
  AffineCtx ctx(d, Lattice::Weight);
  auto cache = open_cache();
  KLEngine engine(ctx, cache.get());
  std::vector<IVec> mus;
  if (mu_s.empty())
    mus = g.dominant_below(lam);
  else
    mus.push_back(parse_ivec_csv(mu_s, g.rank));
  OJson rows = OJson::array();
  for (const IVec& mu : mus) {
    StalkPoincare st = ic_stalk_poincare(engine, lam, mu);
    if (json) {
      OJson row;
      row["mu"] = mu;
      row["in_closure"] = st.in_closure;
      row["poly"] = json_poly(st.poly);
      rows.push_back(row);
    } else {
      std::cout << "mu=" << ivec_csv(mu) << ": ";
      if (!st.in_closure)
        std::cout << "outside the closure\n";
      else
        std::cout << poly_pretty(st.poly, "q") << '\n';
    }
  }
  if (json) {
    OJson o;
    o["command"] = "stalks";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["stratum_dim"] = g.pair_h(lam);
    o["convention"] = kl_convention_name(kl_convention());
    o["stalks"] = rows;
    emit_json(std::cout, o);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// qmult

int cmd_qmult(const std::string& label, const std::string& lambda_s, const std::string& mu_s,
              bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank), mu = parse_ivec_csv(mu_s, g.rank);
  require_dominant(g, lam, "lambda");
  require_dominant(g, mu, "mu");
  IntPoly p = lusztig_q_analog(g, lam, mu);
  if (json) {
    OJson o;
    o["command"] = "qmult";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["mu"] = mu;
    o["poly"] = json_poly(p);
    o["multiplicity"] = p.at_one();
    emit_json(std::cout, o);
  } else {
    std::cout << poly_pretty(p, "q") << "   (multiplicity " << p.at_one() << ")\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// brylinski

int cmd_brylinski(const std::string& label, const std::string& lambda_s, const std::string& mu_s,
                  long long budget, bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank), mu = parse_ivec_csv(mu_s, g.rank);
  require_dominant(g, lam, "lambda");
  Irrep rep = build_irrep(g, lam, budget);
  FiltrationReport r = brylinski_poincare(rep, mu);
  if (json) {
    OJson o;
    o["command"] = "brylinski";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["mu"] = mu;
    o["dominant_mu"] = r.dominant;
    OJson jumps = OJson::array();
    for (const auto& [i, dim] : r.jumps) jumps.push_back(OJson::array({i, dim}));
    o["jumps"] = jumps;
    o["poly"] = json_poly(r.poincare);
    o["multiplicity"] = r.poincare.at_one();
    o["note"] = r.note;
    emit_json(std::cout, o);
  } else {
    std::cout << "filtration polynomial: " << poly_pretty(r.poincare, "q") << '\n';
    std::cout << "jumps:";
    for (const auto& [i, dim] : r.jumps) std::cout << ' ' << i << ":" << dim;
    std::cout << '\n';
    if (!r.note.empty()) std::cout << "note: " << r.note << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// tensor

int cmd_tensor(const std::string& label, const std::string& lambda_s, const std::string& mu_s,
               long long budget, bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank), mu = parse_ivec_csv(mu_s, g.rank);
  require_dominant(g, lam, "lambda");
  require_dominant(g, mu, "mu");
  std::map<IVec, long long> dec = tensor_decompose(g, lam, mu, budget);
  std::vector<IVec> order;
  for (const auto& [nu, m] : dec) {
    (void)m;
    order.push_back(nu);
  }
  order = sorted_weights(g, order);
  if (json) {
    OJson o;
    o["command"] = "tensor";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["mu"] = mu;
    OJson rows = OJson::array();
    for (const IVec& nu : order) {
      OJson row;
      row["weight"] = nu;
      row["mult"] = dec.at(nu);
      rows.push_back(row);
    }
    o["constituents"] = rows;
    emit_json(std::cout, o);
  } else {
    std::string s;
    for (const IVec& nu : order) {
      if (!s.empty()) s += ", ";
      s += ivec_csv(nu) + ":" + std::to_string(dec.at(nu));
    }
    std::cout << s << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// hecke-check

bool expr_eq(const HeckeExpr& a, const HeckeExpr& b) {
  if (a.basis != b.basis) return false;
  auto prune = [](const HeckeExpr& e) {
    std::map<AffKey, IntPoly> m;
    for (const auto& [k, p] : e.terms)
      if (!p.is_zero()) m.emplace(k, p);
    return m;
  };
  return prune(a) == prune(b);
}

int cmd_hecke_check(const std::string& label, std::string lattice_s, bool extended,
                    long long maxlen, bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  if (lattice_s.empty()) lattice_s = extended ? "weight" : "root";
  AffineCtx ctx(d, parse_lattice(lattice_s));
  if (extended && ctx.lattice() != Lattice::Weight)
    throw UsageError("--extended needs the weight lattice");
  auto cache = open_cache();
  KLEngine engine(ctx, cache.get());

  long long n_quad = 0, n_csq = 0, n_word = 0, n_tri = 0, n_rt = 0, n_kl = 0;
  bool pass = true;
  std::string detail;
  auto fail = [&](const std::string& m) {
    if (pass) {
      pass = false;
      detail = m;
    }
  };

  const IntPoly one = IntPoly::monomial(0, 1);
  IntPoly t_minus;  // t - t^{-1}
  t_minus.add_term(1, 1);
  t_minus.add_term(-1, -1);
  IntPoly t_plus;  // t + t^{-1}
  t_plus.add_term(1, 1);
  t_plus.add_term(-1, 1);

  // quadratic relation and canonical square at every affine simple reflection
  for (int i = 0; i <= ctx.rank(); ++i) {
    AffElt s = ctx.simple(i);
    HeckeExpr ts = engine.t_element(s);
    HeckeExpr want;
    want.terms[aff_key(s)] = t_minus;
    want.terms[aff_key(ctx.identity())] = one;
    ++n_quad;
    if (!expr_eq(engine.multiply(ts, ts), want))
      fail("quadratic relation fails at s" + std::to_string(i));
    HeckeExpr cwant;
    cwant.basis = HeckeExpr::Basis::C;
    cwant.terms[aff_key(s)] = t_plus;
    ++n_csq;
    if (!expr_eq(engine.hecke_product_canonical(s, s), cwant))
      fail("canonical square fails at s" + std::to_string(i));
  }

  // one length-zero seed per component (identity only, unless extended)
  std::vector<AffElt> seeds{ctx.identity()};
  if (extended) {
    for (const IVec& tag : all_component_tags(g)) {
      if (tag == IVec(g.rank, 0)) continue;
      AffElt tmu = ctx.translation(minuscule_weight(g, tag));
      bool found = false;
      for (int w = 0; w < g.weyl.size() && !found; ++w) {
        AffElt x = ctx.mul(tmu, ctx.finite(w));
        if (ctx.length(x) == 0) {
          seeds.push_back(x);
          found = true;
        }
      }
      if (!found) fail("component " + ivec_csv(tag) + " has no length-zero element");
    }
  }

  for (const AffElt& seed : seeds) {
    std::vector<AffElt> ball = ctx.length_ball(maxlen, seed);
    for (const AffElt& x : ball) {
      // product of the reduced word re-assembles T_x
      AffineCtx::Word word = ctx.reduced_word(x);
      HeckeExpr prod = engine.t_element(ctx.identity());
      for (int digit : word.digits) prod = engine.multiply(prod, engine.t_element(ctx.simple(digit)));
      prod = engine.multiply(prod, engine.t_element(word.omega));
      ++n_word;
      if (!expr_eq(prod, engine.t_element(x)))
        fail("reduced-word product differs from T_x at " + ctx.serialize(x));

      // triangularity of the canonical basis: diagonal 1, strictly negative
      // t-exponents below the diagonal
      HeckeExpr std_c = engine.to_standard(engine.c_element(x));
      ++n_tri;
      for (const auto& [key, coefp] : std_c.terms) {
        if (coefp.is_zero()) continue;
        if (key == aff_key(x)) {
          if (!(coefp == one)) fail("diagonal canonical coefficient is not 1 at " + ctx.serialize(x));
        } else if (coefp.degree() >= 0) {
          fail("canonical coefficient has a non-negative t-power below " + ctx.serialize(x));
        }
      }

      // basis change round-trip
      HeckeExpr back = engine.to_canonical(std_c);
      HeckeExpr cwant;
      cwant.basis = HeckeExpr::Basis::C;
      cwant.terms[aff_key(x)] = one;
      ++n_rt;
      if (!expr_eq(back, cwant)) fail("canonical round-trip fails at " + ctx.serialize(x));
    }

    // Kazhdan-Lusztig tripwires over comparable ball pairs
    for (const AffElt& x : ball) {
      for (const AffElt& y : ball) {
        if (ctx.length(x) > ctx.length(y)) continue;
        KLResult r = engine.kl_polynomial(x, y);
        if (!r.comparable) continue;
        ++n_kl;
        if (r.poly.coeff(0) != 1)
          fail("KL constant term differs from 1 at (" + ctx.serialize(x) + ", " + ctx.serialize(y) + ")");
        if (!(x == y) && 2 * r.poly.degree() > ctx.length(y) - ctx.length(x) - 1)
          fail("KL degree bound violated at (" + ctx.serialize(x) + ", " + ctx.serialize(y) + ")");
      }
    }
  }

  if (json) {
    OJson o;
    o["command"] = "hecke-check";
    o["datum"] = d.label;
    o["lattice"] = lattice_name(ctx.lattice());
    o["extended"] = extended;
    o["maxlen"] = maxlen;
    OJson checks;
    checks["quadratic"] = n_quad;
    checks["canonical_square"] = n_csq;
    checks["word_products"] = n_word;
    checks["triangularity"] = n_tri;
    checks["round_trips"] = n_rt;
    checks["kl_tripwires"] = n_kl;
    o["checks"] = checks;
    o["pass"] = pass;
    o["detail"] = detail;
    emit_json(std::cout, o);
  } else {
    std::cout << "quadratic relations:     " << n_quad << "\ncanonical squares:       " << n_csq
              << "\nreduced-word products:   " << n_word << "\ntriangularity checks:    " << n_tri
              << "\nround-trips:             " << n_rt << "\nKL tripwires:            " << n_kl
              << '\n'
              << (pass ? "PASS" : "FAIL: " + detail) << '\n';
  }
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------
// satake-check

int cmd_satake_check(const std::string& label, const std::string& lambda_s,
                     const std::string& mu_s, bool extended, long long budget, bool json) {
  RootDatum d = build_root_datum(label);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank), mu = parse_ivec_csv(mu_s, g.rank);
  require_dominant(g, lam, "lambda");
  require_dominant(g, mu, "mu");
  AffineCtx ctx(d, extended ? Lattice::Weight : Lattice::Root);
  auto cache = open_cache();
  KLEngine engine(ctx, cache.get());
  SatakeReport r = satake_structure_check(engine, lam, mu, budget);
  if (!r.complete) throw BudgetError("Hecke expansion incomplete: " + r.note);

  std::set<IVec> keys;
  for (const auto& [nu, p] : r.constants) {
    (void)p;
    keys.insert(nu);
  }
  for (const auto& [nu, m] : r.tensor) {
    (void)m;
    keys.insert(nu);
  }
  std::vector<IVec> order = sorted_weights(g, std::vector<IVec>(keys.begin(), keys.end()));

  if (json) {
    OJson o;
    o["command"] = "satake-check";
    o["datum"] = d.label;
    o["lattice"] = lattice_name(ctx.lattice());
    o["lambda"] = lam;
    o["mu"] = mu;
    OJson rows = OJson::array();
    for (const IVec& nu : order) {
      OJson row;
      row["weight"] = nu;
      auto itc = r.constants.find(nu);
      row["constant"] = json_poly(itc == r.constants.end() ? IntPoly() : itc->second);
      auto itt = r.tensor.find(nu);
      row["tensor"] = itt == r.tensor.end() ? 0 : itt->second;
      rows.push_back(row);
    }
    o["constituents"] = rows;
    o["parameter_free"] = r.parameter_free;
    o["match"] = r.match;
    o["note"] = r.note;
    emit_json(std::cout, o);
  } else {
    for (const IVec& nu : order) {
      auto itc = r.constants.find(nu);
      auto itt = r.tensor.find(nu);
      std::cout << ivec_csv(nu) << ": hecke "
                << poly_pretty(itc == r.constants.end() ? IntPoly() : itc->second, "t")
                << ", tensor " << (itt == r.tensor.end() ? 0 : itt->second) << '\n';
    }
    std::cout << (r.match && r.parameter_free ? "MATCH" : "MISMATCH: " + r.note) << '\n';
  }
  return r.match && r.parameter_free ? 0 : 1;
}

// ---------------------------------------------------------------------------
// exponents

int cmd_exponents(const std::string& label, const std::string& lambda_s, long long budget,
                  bool json) {
  RootDatum d = build_root_datum(label);
  PrincipalContext ctx(d);
  const RootSystem& g = d.dual;
  if (lambda_s.empty()) {
    if (json) {
      OJson o;
      o["command"] = "exponents";
      o["datum"] = d.label;
      o["exponents"] = ctx.centralizer().exponents;
      OJson eig = OJson::array();
      for (const CentralizerElement& e : ctx.centralizer().elements) eig.push_back(e.eigenvalue);
      o["eigenvalues"] = eig;
      emit_json(std::cout, o);
    } else {
      std::cout << "exponents:";
      for (int e : ctx.centralizer().exponents) std::cout << ' ' << e;
      std::cout << "\nad-h eigenvalues:";
      for (const CentralizerElement& e : ctx.centralizer().elements) std::cout << ' ' << e.eigenvalue;
      std::cout << '\n';
    }
    return 0;
  }
  IVec lam = parse_ivec_csv(lambda_s, g.rank);
  require_dominant(g, lam, "lambda");
  Irrep rep = build_irrep(g, lam, budget);
  AInvariantsReport r = a_invariants(ctx, rep, g.component_tag(lam));
  if (json) {
    OJson o;
    o["command"] = "exponents";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["coset"] = r.coset;
    o["minuscule"] = r.mu_c;
    o["dim_fixed"] = r.dim_fixed;
    o["generalized_exponents"] = r.exponents;
    o["poly"] = json_poly(r.exponent_poly);
    emit_json(std::cout, o);
  } else {
    std::cout << "coset: " << ivec_csv(r.coset) << "\nminuscule weight: " << ivec_csv(r.mu_c)
              << "\ndim V^a: " << r.dim_fixed << "\ngeneralized exponents:";
    for (int e : r.exponents) std::cout << ' ' << e;
    std::cout << "\npolynomial: " << poly_pretty(r.exponent_poly, "q") << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// minuscule

int cmd_minuscule(const std::string& label, const std::string& coset_s, bool json) {
  RootDatum d = build_root_datum(label);
  PrincipalContext ctx(d);
  const RootSystem& g = d.dual;
  std::vector<IVec> tags;
  if (coset_s.empty())
    tags = all_component_tags(g);
  else
    tags.push_back(parse_ivec_csv(coset_s, g.rank));
  bool all_cyclic = true;
  OJson rows = OJson::array();
  for (const IVec& tag : tags) {
    CyclicityReport r = minuscule_cyclicity_check(ctx, tag);
    all_cyclic = all_cyclic && r.cyclic;
    if (json) {
      OJson row;
      row["coset"] = tag;
      row["minuscule"] = r.mu_c;
      row["dim"] = r.dim;
      row["rounds"] = r.rounds;
      row["cyclic"] = r.cyclic;
      rows.push_back(row);
    } else {
      std::cout << "coset " << ivec_csv(tag) << ": minuscule " << ivec_csv(r.mu_c) << ", dim "
                << r.dim << ", " << (r.cyclic ? "cyclic" : "NOT CYCLIC") << " (" << r.rounds
                << (r.rounds == 1 ? " round)" : " rounds)") << '\n';
    }
  }
  if (json) {
    OJson o;
    o["command"] = "minuscule";
    o["datum"] = d.label;
    o["cosets"] = rows;
    o["pass"] = all_cyclic;
    emit_json(std::cout, o);
  }
  return all_cyclic ? 0 : 1;
}

// ---------------------------------------------------------------------------
// hom-a

int cmd_hom_a(const std::string& label, const std::string& lambda_s, const std::string& mu_s,
              long long budget, bool json) {
  RootDatum d = build_root_datum(label);
  PrincipalContext ctx(d);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank), mu = parse_ivec_csv(mu_s, g.rank);
  require_dominant(g, lam, "lambda");
  require_dominant(g, mu, "mu");
  GradedHomReport r = graded_hom_over_a(ctx, lam, mu, budget);
  if (json) {
    OJson o;
    o["command"] = "hom-a";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["mu"] = mu;
    OJson deg;
    for (const auto& [k, m] : r.by_degree) deg[std::to_string(k)] = m;
    o["by_degree"] = deg;
    o["total"] = r.total;
    o["tensor_side"] = r.tensor_side;
    emit_json(std::cout, o);
  } else {
    std::cout << "total: " << r.total << " (tensor side " << r.tensor_side << ")\nby degree:";
    for (const auto& [k, m] : r.by_degree) std::cout << ' ' << k << ":" << m;
    std::cout << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// pairing

Rat parse_rat(const std::string& s) {
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw UsageError("zero denominator in '" + s + "'");
    return Rat(BigInt(s.substr(0, slash)), den);
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("invalid rational '" + s + "'");
  }
}

AExpr parse_aexpr(const std::string& s, int rank) {
  AExpr expr;
  std::istringstream terms(s);
  std::string part;
  while (std::getline(terms, part, '+')) {
    AWord w;
    bool coeff_seen = false, any = false;
    std::istringstream ts(part);
    std::string tok;
    while (ts >> tok) {
      any = true;
      if (tok[0] == 'a' && tok.size() > 1 && std::isdigit(static_cast<unsigned char>(tok[1]))) {
        std::size_t caret = tok.find('^');
        int idx = 0, power = 1;
        try {
          idx = std::stoi(tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
          if (caret != std::string::npos) power = std::stoi(tok.substr(caret + 1));
        } catch (const std::exception&) {
          throw UsageError("invalid generator token '" + tok + "'");
        }
        if (idx < 1 || idx > rank)
          throw UsageError("generator a" + std::to_string(idx) + " is out of range (rank " +
                           std::to_string(rank) + ")");
        if (power < 0) throw UsageError("negative power in '" + tok + "'");
        if (power > 0) w.factors.emplace_back(idx - 1, power);
      } else {
        if (coeff_seen) throw UsageError("two coefficients in term '" + part + "'");
        coeff_seen = true;
        w.coeff = parse_rat(tok);
      }
    }
    if (!any) throw UsageError("empty term in word '" + s + "'");
    expr.push_back(w);
  }
  if (expr.empty()) throw UsageError("empty word");
  return expr;
}

int cmd_pairing(const std::string& label, const std::string& lambda_s, const std::string& word_s,
                long long budget, bool json) {
  RootDatum d = build_root_datum(label);
  PrincipalContext ctx(d);
  const RootSystem& g = d.dual;
  IVec lam = parse_ivec_csv(lambda_s, g.rank);
  require_dominant(g, lam, "lambda");
  AExpr expr = parse_aexpr(word_s, g.rank);
  Rat v = schubert_pairing(ctx, expr, lam, budget);
  if (json) {
    OJson o;
    o["command"] = "pairing";
    o["datum"] = d.label;
    o["lambda"] = lam;
    o["word"] = word_s;
    o["degree_required"] = 2 * g.pair_h(lam);
    o["value"] = rat_text(v);
    emit_json(std::cout, o);
  } else {
    std::cout << "value = " << rat_text(v) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const std::string& datum_filter, int max_height, bool no_subprocess, bool json,
               const char* argv0) {
  if (!datum_filter.empty()) build_root_datum(datum_filter);  // validate the label
  auto cache = open_cache();
  AcceptanceOptions opt;
  opt.datum_filter = datum_filter;
  opt.max_height = max_height;
  opt.subprocess = !no_subprocess;
  opt.cli_path = self_path(argv0);
  opt.cache = cache.get();
  std::vector<CriterionResult> results = run_acceptance(opt);

  long long passed = 0, failed = 0, skipped = 0;
  for (const CriterionResult& r : results) {
    if (r.status == "PASS") ++passed;
    if (r.status == "FAIL") ++failed;
    if (r.status == "SKIP") ++skipped;
  }

  if (json) {
    OJson o;
    o["command"] = "verify";
    o["datum"] = datum_filter.empty() ? "all" : datum_filter;
    o["max_height"] = max_height;
    OJson arr = OJson::array();
    for (const CriterionResult& r : results) {
      OJson row;
      row["id"] = r.id;
      row["name"] = r.name;
      row["status"] = r.status;
      row["cases"] = r.cases;
      row["detail"] = r.detail;
      arr.push_back(row);
    }
    o["criteria"] = arr;
    o["pass"] = failed == 0;
    emit_json(std::cout, o);
  } else {
    std::cout << std::left << std::setw(36) << "criterion" << std::setw(8) << "status"
              << std::setw(8) << "cases" << "name\n";
    for (const CriterionResult& r : results) {
      std::cout << std::left << std::setw(36) << r.id << std::setw(8) << r.status << std::setw(8)
                << r.cases << r.name << '\n';
      if (!r.detail.empty()) std::cout << "    " << r.detail << '\n';
    }
    std::cout << "result: " << (failed == 0 ? "PASS" : "FAIL") << " (" << passed << " passed, "
              << failed << " failed, " << skipped << " skipped)\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{
      "satake — exact workbench for dual root data, affine Kazhdan-Lusztig\n"
      "combinatorics, and the principal sl2 structure of the dual group"};
  app.require_subcommand(1);

  std::string label, lambda_s, mu_s, coset_s, word_s, datum_filter;
  std::string kl_lattice = "weight", hecke_lattice;
  long long budget = 400, tensor_budget = 160000, maxlen = 4;
  int max_height = 0;
  bool json = false, extended = false, no_subprocess = false;

  const std::string datum_help = "root datum label: A1, A2, A3, B2, C2 or G2";
  const std::string weight_help = " (comma-separated fundamental-weight coordinates)";

  CLI::App* c_rootdata = app.add_subcommand("rootdata", "both sides of a root datum");
  c_rootdata->add_option("datum", label, datum_help)->required();

  CLI::App* c_orbit = app.add_subcommand("orbit", "Weyl orbit of a weight of the dual group");
  c_orbit->add_option("datum", label, datum_help)->required();
  c_orbit->add_option("--lambda", lambda_s, "weight" + weight_help)->required();

  CLI::App* c_klpoly =
      app.add_subcommand("klpoly", "Kazhdan-Lusztig polynomial at maximal coset representatives");
  c_klpoly->add_option("datum", label, datum_help)->required();
  c_klpoly->add_option("--lambda", lambda_s, "dominant weight" + weight_help)->required();
  c_klpoly->add_option("--mu", mu_s, "dominant weight" + weight_help)->required();
  c_klpoly->add_option("--lattice", kl_lattice, "translation lattice: weight (default) or root");

  CLI::App* c_stalks = app.add_subcommand("stalks", "IC stalk Poincare polynomials of a stratum");
  c_stalks->add_option("datum", label, datum_help)->required();
  c_stalks->add_option("--lambda", lambda_s, "dominant weight" + weight_help)->required();
  c_stalks->add_option("--mu", mu_s, "single dominant weight (default: all below lambda)");

  CLI::App* c_qmult = app.add_subcommand("qmult", "Lusztig q-analog of a weight multiplicity");
  c_qmult->add_option("datum", label, datum_help)->required();
  c_qmult->add_option("--lambda", lambda_s, "dominant weight" + weight_help)->required();
  c_qmult->add_option("--mu", mu_s, "dominant weight" + weight_help)->required();

  CLI::App* c_brylinski =
      app.add_subcommand("brylinski", "Brylinski filtration of a weight space");
  c_brylinski->add_option("datum", label, datum_help)->required();
  c_brylinski->add_option("--lambda", lambda_s, "dominant highest weight" + weight_help)->required();
  c_brylinski->add_option("--mu", mu_s, "weight" + weight_help)->required();
  c_brylinski->add_option("--budget", budget, "module dimension budget (default 400)");

  CLI::App* c_tensor = app.add_subcommand("tensor", "tensor product decomposition");
  c_tensor->add_option("datum", label, datum_help)->required();
  c_tensor->add_option("--lambda", lambda_s, "dominant weight" + weight_help)->required();
  c_tensor->add_option("--mu", mu_s, "dominant weight" + weight_help)->required();
  c_tensor->add_option("--budget", tensor_budget,
                       "bound on the product of the two dimensions (default 160000)");

  CLI::App* c_hecke = app.add_subcommand("hecke-check", "affine Hecke algebra invariants");
  c_hecke->add_option("datum", label, datum_help)->required();
  c_hecke->add_option("--lattice", hecke_lattice,
                      "translation lattice (default: root, or weight with --extended)");
  c_hecke->add_flag("--extended", extended, "extended group: weight lattice, all components");
  c_hecke->add_option("--maxlen", maxlen, "length bound of the test ball (default 4)");

  CLI::App* c_satake =
      app.add_subcommand("satake-check", "canonical-basis structure constants vs tensor product");
  c_satake->add_option("datum", label, datum_help)->required();
  c_satake->add_option("--lambda", lambda_s, "dominant weight" + weight_help)->required();
  c_satake->add_option("--mu", mu_s, "dominant weight" + weight_help)->required();
  c_satake->add_flag("--extended", extended, "extended group (weight-lattice translations)");
  c_satake->add_option("--budget", tensor_budget,
                       "bound on the tensor dimension product (default 160000)");

  CLI::App* c_exponents =
      app.add_subcommand("exponents", "centralizer grading; with --lambda, generalized exponents");
  c_exponents->add_option("datum", label, datum_help)->required();
  c_exponents->add_option("--lambda", lambda_s, "dominant highest weight" + weight_help);
  c_exponents->add_option("--budget", budget, "module dimension budget (default 400)");

  CLI::App* c_minuscule =
      app.add_subcommand("minuscule", "minuscule weight and cyclicity per component");
  c_minuscule->add_option("datum", label, datum_help)->required();
  c_minuscule->add_option("--coset", coset_s, "single component tag (default: all)");

  CLI::App* c_hom = app.add_subcommand("hom-a", "graded Hom over the centralizer");
  c_hom->add_option("datum", label, datum_help)->required();
  c_hom->add_option("--lambda", lambda_s, "dominant weight" + weight_help)->required();
  c_hom->add_option("--mu", mu_s, "dominant weight" + weight_help)->required();
  c_hom->add_option("--budget", budget, "module dimension budget (default 400)");

  CLI::App* c_pairing =
      app.add_subcommand("pairing", "pairing of a centralizer word against the lowest line");
  c_pairing->add_option("datum", label, datum_help)->required();
  c_pairing->add_option("--lambda", lambda_s, "dominant highest weight" + weight_help)->required();
  c_pairing
      ->add_option("--word", word_s,
                   "sum of terms '[coeff] a1^p a2^q ...' joined by '+', e.g. '2 a1^2 + 1/3 a2'")
      ->required();
  c_pairing->add_option("--budget", budget, "module dimension budget (default 400)");

  CLI::App* c_verify = app.add_subcommand("verify", "run the acceptance battery");
  c_verify->add_option("--datum", datum_filter, "restrict to one datum label");
  c_verify->add_option("--max-height", max_height, "cap lambda(h) (0 = per-criterion defaults)");
  c_verify->add_flag("--no-subprocess", no_subprocess, "skip checks that spawn this binary");

  for (CLI::App* c : {c_rootdata, c_orbit, c_klpoly, c_stalks, c_qmult, c_brylinski, c_tensor,
                      c_hecke, c_satake, c_exponents, c_minuscule, c_hom, c_pairing, c_verify})
    c->add_flag("--json", json, "emit JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c_rootdata)) return cmd_rootdata(label, json);
    if (app.got_subcommand(c_orbit)) return cmd_orbit(label, lambda_s, json);
    if (app.got_subcommand(c_klpoly)) return cmd_klpoly(label, lambda_s, mu_s, kl_lattice, json);
    if (app.got_subcommand(c_stalks)) return cmd_stalks(label, lambda_s, mu_s, json);
    if (app.got_subcommand(c_qmult)) return cmd_qmult(label, lambda_s, mu_s, json);
    if (app.got_subcommand(c_brylinski))
      return cmd_brylinski(label, lambda_s, mu_s, budget, json);
    if (app.got_subcommand(c_tensor))
      return cmd_tensor(label, lambda_s, mu_s, tensor_budget, json);
    if (app.got_subcommand(c_hecke))
      return cmd_hecke_check(label, hecke_lattice, extended, maxlen, json);
    if (app.got_subcommand(c_satake))
      return cmd_satake_check(label, lambda_s, mu_s, extended, tensor_budget, json);
    if (app.got_subcommand(c_exponents)) return cmd_exponents(label, lambda_s, budget, json);
    if (app.got_subcommand(c_minuscule)) return cmd_minuscule(label, coset_s, json);
    if (app.got_subcommand(c_hom)) return cmd_hom_a(label, lambda_s, mu_s, budget, json);
    if (app.got_subcommand(c_pairing)) return cmd_pairing(label, lambda_s, word_s, budget, json);
    if (app.got_subcommand(c_verify))
      return cmd_verify(datum_filter, max_height, no_subprocess, json, argv[0]);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const MathError& e) {
    std::cerr << "FAIL: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
