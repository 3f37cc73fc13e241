#include "satake/klhecke.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "satake/errors.hpp"
#include "satake/repbuild.hpp"

namespace satake {

std::string KLCache::checksum_hex(const std::string& payload) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : payload) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

KLCache::KLCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw UsageError("cannot create cache file '" + path_ + "'");
    out << kFormatTag << '\n';
    return;
  }
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (content.empty()) {
    std::ofstream out(path_, std::ios::binary);
    out << kFormatTag << '\n';
    return;
  }
  std::size_t pos = content.find('\n');
  if (pos == std::string::npos || content.substr(0, pos) != kFormatTag)
    throw UsageError("cache file '" + path_ + "' has an unknown format tag (expected '" +
                     kFormatTag + "'); refusing to read it");
  std::size_t start = pos + 1;
  while (start < content.size()) {
    std::size_t end = content.find('\n', start);
    if (end == std::string::npos) break;  // unterminated trailing record: crash-safe skip
    std::string line = content.substr(start, end - start);
    start = end + 1;
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
    bool ok = t2 != std::string::npos && line.find('\t', t2 + 1) == std::string::npos;
    if (ok) {
      std::string key = line.substr(0, t1);
      std::string poly = line.substr(t1 + 1, t2 - t1 - 1);
      std::string sum = line.substr(t2 + 1);
      if (sum == checksum_hex(key + '\t' + poly)) {
        try {
          table_[key] = IntPoly::from_compact(poly);
          continue;
        } catch (const std::exception&) {
          ok = false;
        }
      } else {
        ok = false;
      }
    }
    if (!ok) {
      ++skipped_;
      std::fprintf(stderr, "warning: skipping corrupt cache record in %s\n", path_.c_str());
    }
  }
}

const IntPoly* KLCache::lookup(const std::string& key) const {
  auto it = table_.find(key);
  return it == table_.end() ? nullptr : &it->second;
}

void KLCache::store(const std::string& key, const IntPoly& poly) {
  auto [it, inserted] = table_.emplace(key, poly);
  if (!inserted) return;
  if (path_.empty()) return;
  std::string payload = key + '\t' + poly.compact();
  std::string record = payload + '\t' + checksum_hex(payload) + '\n';
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  out.write(record.data(), static_cast<std::streamsize>(record.size()));
  out.flush();
}

KLEngine::KLEngine(const AffineCtx& ctx, KLCache* cache, long long max_length,
                   std::size_t max_interval)
    : ctx_(ctx), cache_(cache), max_length_(max_length), max_interval_(max_interval) {}

std::string KLEngine::pair_key(const AffElt& x, const AffElt& y) const {
  return ctx_.name() + "|" + ctx_.serialize(x) + "|" + ctx_.serialize(y);
}

const std::vector<AffElt>& KLEngine::interval(const AffElt& y) {
  auto it = interval_memo_.find(aff_key(y));
  if (it != interval_memo_.end()) return it->second;
  if (ctx_.length(y) > max_length_)
    throw BudgetError("Bruhat interval below an element of length " +
                      std::to_string(ctx_.length(y)) + " exceeds the length budget " +
                      std::to_string(max_length_));
  std::vector<AffElt> ivl = ctx_.lower_interval(y);
  if (ivl.size() > max_interval_)
    throw BudgetError("Bruhat interval of size " + std::to_string(ivl.size()) +
                      " exceeds the interval budget " + std::to_string(max_interval_));
  return interval_memo_.emplace(aff_key(y), std::move(ivl)).first->second;
}

KLResult KLEngine::kl_polynomial(const AffElt& x, const AffElt& y) {
  if (ctx_.component(x) != ctx_.component(y)) return {IntPoly(), false};
  if (!ctx_.bruhat_leq(x, y)) return {IntPoly(), false};
  if (x == y) return {IntPoly::monomial(0, 1), true};

  auto memo_key = std::make_pair(aff_key(x), aff_key(y));
  auto hit = memo_.find(memo_key);
  if (hit != memo_.end()) return {hit->second, true};
  if (cache_) {
    if (const IntPoly* p = cache_->lookup(pair_key(x, y))) {
      memo_[memo_key] = *p;
      return {*p, true};
    }
  }

  int s = -1;
  for (int i = 0; i <= ctx_.rank(); ++i)
    if (ctx_.left_descent(i, y)) {
      s = i;
      break;
    }
  if (s < 0) throw MathError("element of positive length has no left descent");
  const AffElt sy = ctx_.lmul_simple(s, y);
  const AffElt sx = ctx_.lmul_simple(s, x);

  IntPoly result;
  if (ctx_.length(sx) > ctx_.length(x)) {
    result = kl_polynomial(sx, y).poly;
  } else {
    result = kl_polynomial(sx, sy).poly;
    result += kl_polynomial(x, sy).poly.shifted(1);
    const long long ly = ctx_.length(y);
    for (const AffElt& z : interval(sy)) {
      if (!ctx_.left_descent(s, z)) continue;
      long long m = mu_coeff(z, sy);
      if (m == 0) continue;
      KLResult pxz = kl_polynomial(x, z);
      if (!pxz.comparable || pxz.poly.is_zero()) continue;
      long long gap = ly - ctx_.length(z);
      if (gap % 2 != 0) throw MathError("odd exponent in the KL correction term");
      result -= pxz.poly.scaled(m).shifted(static_cast<int>(gap / 2));
    }
  }
  const long long bound = (ctx_.length(y) - ctx_.length(x) - 1) / 2;
  if (result.is_zero() || result.degree() > bound || result.coeff(0) != 1)
    throw MathError("KL polynomial violates its degree/constant-term bounds");
  memo_[memo_key] = result;
  if (cache_) cache_->store(pair_key(x, y), result);
  return {result, true};
}

long long KLEngine::mu_coeff(const AffElt& z, const AffElt& w) {
  const long long gap = ctx_.length(w) - ctx_.length(z);
  if (gap <= 0 || gap % 2 == 0) return 0;
  KLResult p = kl_polynomial(z, w);
  if (!p.comparable) return 0;
  return p.poly.coeff(static_cast<int>((gap - 1) / 2));
}

HeckeExpr KLEngine::t_element(const AffElt& x) const {
  HeckeExpr e;
  e.basis = HeckeExpr::Basis::T;
  e.terms[aff_key(x)] = IntPoly::monomial(0, 1);
  return e;
}

HeckeExpr KLEngine::c_element(const AffElt& x) const {
  HeckeExpr e;
  e.basis = HeckeExpr::Basis::C;
  e.terms[aff_key(x)] = IntPoly::monomial(0, 1);
  return e;
}

const std::map<AffKey, IntPoly>& KLEngine::c_expansion(const AffElt& y) {
  auto it = c_expansion_memo_.find(aff_key(y));
  if (it != c_expansion_memo_.end()) return it->second;
  std::map<AffKey, IntPoly> expansion;
  const long long ly = ctx_.length(y);
  for (const AffElt& x : interval(y)) {
    IntPoly p = kl_polynomial(x, y).poly;
    if (p.is_zero()) throw MathError("interval element with zero KL polynomial");
    // t^{l(x)-l(y)} P_{x,y}(t^2)
    expansion[aff_key(x)] = p.substituted(2).shifted(static_cast<int>(ctx_.length(x) - ly));
  }
  return c_expansion_memo_.emplace(aff_key(y), std::move(expansion)).first->second;
}

HeckeExpr KLEngine::mul_T_right(const HeckeExpr& expr, const AffElt& w) const {
  AffineCtx::Word word = ctx_.reduced_word(w);
  HeckeExpr cur = expr;
  for (int d : word.digits) {
    HeckeExpr next;
    next.basis = HeckeExpr::Basis::T;
    for (const auto& [key, coeff] : cur.terms) {
      AffElt z = elt(key);
      AffElt zs = ctx_.rmul_simple(z, d);
      if (ctx_.length(zs) > ctx_.length(z)) {
        next.terms[aff_key(zs)] += coeff;
      } else {
        next.terms[aff_key(zs)] += coeff;
        // (t - t^{-1}) T_z
        IntPoly extra = coeff.shifted(1);
        extra -= coeff.shifted(-1);
        next.terms[aff_key(z)] += extra;
      }
    }
    for (auto it = next.terms.begin(); it != next.terms.end();)
      it = it->second.is_zero() ? next.terms.erase(it) : std::next(it);
    cur = std::move(next);
  }
  if (!(word.omega == ctx_.identity())) {
    HeckeExpr next;
    next.basis = HeckeExpr::Basis::T;
    for (const auto& [key, coeff] : cur.terms)
      next.terms[aff_key(ctx_.mul(elt(key), word.omega))] = coeff;
    cur = std::move(next);
  }
  return cur;
}

HeckeExpr KLEngine::to_standard(const HeckeExpr& expr) {
  if (expr.basis == HeckeExpr::Basis::T) return expr;
  HeckeExpr out;
  out.basis = HeckeExpr::Basis::T;
  for (const auto& [key, coeff] : expr.terms)
    for (const auto& [tkey, tcoeff] : c_expansion(elt(key))) {
      out.terms[tkey] += coeff * tcoeff;
    }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  return out;
}

HeckeExpr KLEngine::to_canonical(const HeckeExpr& expr) {
  if (expr.basis == HeckeExpr::Basis::C) return expr;
  HeckeExpr rest = expr;
  HeckeExpr out;
  out.basis = HeckeExpr::Basis::C;
  while (!rest.terms.empty()) {
    // leading term: maximal length, then smallest key — c_z has unit leading T_z
    auto lead = rest.terms.begin();
    long long best = ctx_.length(elt(lead->first));
    for (auto it = std::next(rest.terms.begin()); it != rest.terms.end(); ++it) {
      long long len = ctx_.length(elt(it->first));
      if (len > best) {
        best = len;
        lead = it;
      }
    }
    AffElt z = elt(lead->first);
    IntPoly gamma = lead->second;
    out.terms[aff_key(z)] += gamma;
    for (const auto& [tkey, tcoeff] : c_expansion(z)) {
      auto it = rest.terms.find(tkey);
      IntPoly updated = (it == rest.terms.end() ? IntPoly() : it->second) - gamma * tcoeff;
      if (updated.is_zero()) {
        if (it != rest.terms.end()) rest.terms.erase(it);
      } else {
        rest.terms[tkey] = updated;
      }
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  return out;
}

HeckeExpr KLEngine::multiply(const HeckeExpr& a, const HeckeExpr& b) {
  HeckeExpr ta = to_standard(a), tb = to_standard(b);
  HeckeExpr out;
  out.basis = HeckeExpr::Basis::T;
  for (const auto& [key, coeff] : tb.terms) {
    HeckeExpr part = mul_T_right(ta, elt(key));
    for (auto& [tkey, tcoeff] : part.terms) {
      out.terms[tkey] += coeff * tcoeff;
    }
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second.is_zero() ? out.terms.erase(it) : std::next(it);
  return out;
}

HeckeExpr KLEngine::hecke_product_canonical(const AffElt& x, const AffElt& y) {
  return to_canonical(multiply(c_element(x), c_element(y)));
}

namespace {

// Exact division of Laurent polynomials; throws MathError when not exact.
IntPoly exact_div(const IntPoly& a, const IntPoly& b, const char* what) {
  if (b.is_zero()) throw MathError("division by the zero polynomial");
  if (a.is_zero()) return {};
  long long max_steps =
      (a.degree() - a.valuation()) - (b.degree() - b.valuation()) + 1;
  IntPoly rem = a, quot;
  const long long lead_b = b.coeff(b.degree());
  for (long long step = 0; step < max_steps && !rem.is_zero(); ++step) {
    long long lead_r = rem.coeff(rem.degree());
    if (lead_r % lead_b != 0) throw MathError(what);
    long long c = lead_r / lead_b;
    int e = rem.degree() - b.degree();
    quot.add_term(e, c);
    rem -= b.scaled(c).shifted(e);
  }
  if (!rem.is_zero()) throw MathError(what);
  return quot;
}

// Poincare polynomial of the finite Weyl group, sum_w t^{2 l(w) - l(w0)}.
// c_{w0} = pi(t) e_W for the spherical idempotent e_W, so the structure
// constants of the convolution algebra (unit e_W) are the raw c-basis
// coefficients of c_{w(lambda)} c_{w(mu)} divided by pi(t).
IntPoly finite_poincare(const WeylGroup& weyl) {
  IntPoly pi;
  for (std::size_t w = 0; w < weyl.size(); ++w)
    pi.add_term(2 * weyl.length[w] - weyl.length[weyl.w0], 1);
  return pi;
}

}  // namespace

SatakeReport satake_structure_check(KLEngine& engine, const IVec& lambda, const IVec& mu,
                                    long long tensor_budget) {
  const AffineCtx& ctx = engine.ctx();
  const RootSystem& rs = ctx.rs();
  SatakeReport report;
  report.lambda = lambda;
  report.mu = mu;
  report.tensor = tensor_decompose(rs, lambda, mu, tensor_budget);

  HeckeExpr product;
  try {
    product = engine.hecke_product_canonical(ctx.max_coset_rep(lambda), ctx.max_coset_rep(mu));
  } catch (const BudgetError& e) {
    report.complete = false;
    report.note = e.what();
    return report;
  }
  report.complete = true;
  report.parameter_free = true;
  const int w0 = rs.weyl.w0;
  const IntPoly pi = finite_poincare(rs.weyl);
  for (const auto& [key, coeff] : product.terms) {
    AffElt z = engine.elt(key);
    if (z.w != w0)
      throw MathError("canonical product support contains a non-maximal coset element");
    IVec nu = rs.weyl.apply(w0, z.tau);  // z = t_{w0 nu} w0
    if (!rs.is_dominant(nu))
      throw MathError("canonical product support element is not of the form w(nu)");
    IntPoly constant = exact_div(
        coeff, pi, "canonical product coefficient not divisible by the finite Poincare factor");
    if (!constant.is_constant()) report.parameter_free = false;
    report.constants[nu] = constant;
  }
  report.match = report.parameter_free;
  if (report.match) {
    std::map<IVec, long long> as_ints;
    for (const auto& [nu, coeff] : report.constants) {
      long long c = coeff.constant_term();
      if (c <= 0) report.match = false;
      as_ints[nu] = c;
    }
    if (as_ints != report.tensor) report.match = false;
  }
  return report;
}

}  // namespace satake
