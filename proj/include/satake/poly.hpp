#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "satake/errors.hpp"

namespace satake {

// Sparse univariate Laurent polynomial with exact integer coefficients.
// Coefficients stay tiny at the supported ranks (KL, Hecke and q-Kostant
// values fit comfortably in 64 bits); arithmetic asserts against overflow
// where products are formed.
class IntPoly {
public:
  using Coef = long long;

  IntPoly() = default;
  explicit IntPoly(Coef c) {
    if (c != 0)
      terms_[0] = c;
  }
  static IntPoly monomial(int exp, Coef c = 1) {
    IntPoly p;
    if (c != 0)
      p.terms_[exp] = c;
    return p;
  }
  static IntPoly q() { return monomial(1); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }
  Coef constant_term() const { return coeff(0); }

  Coef coeff(int exp) const {
    auto it = terms_.find(exp);
    return it == terms_.end() ? 0 : it->second;
  }
  // Degree of the zero polynomial is reported as INT_MIN-ish sentinel via
  // these helpers; callers must check is_zero() first where it matters.
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }
  int valuation() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  const std::map<int, Coef>& terms() const { return terms_; }

  void set(int exp, Coef c) {
    if (c == 0)
      terms_.erase(exp);
    else
      terms_[exp] = c;
  }
  void add_term(int exp, Coef c) { set(exp, coeff(exp) + c); }

  IntPoly operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (auto& [e, c] : o.terms_)
      r.add_term(e, c);
    return r;
  }
  IntPoly operator-(const IntPoly& o) const {
    IntPoly r = *this;
    for (auto& [e, c] : o.terms_)
      r.add_term(e, -c);
    return r;
  }
  IntPoly operator-() const {
    IntPoly r;
    for (auto& [e, c] : terms_)
      r.terms_[e] = -c;
    return r;
  }
  IntPoly operator*(const IntPoly& o) const {
    IntPoly r;
    for (auto& [e1, c1] : terms_)
      for (auto& [e2, c2] : o.terms_) {
        mul_guard(c1, c2);
        r.add_term(e1 + e2, c1 * c2);
      }
    return r;
  }
  IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
  IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
  bool operator==(const IntPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const IntPoly& o) const { return terms_ != o.terms_; }

  IntPoly scaled(Coef k) const {
    IntPoly r;
    if (k != 0)
      for (auto& [e, c] : terms_) {
        mul_guard(c, k);
        r.terms_[e] = c * k;
      }
    return r;
  }
  // Multiply by q^k.
  IntPoly shifted(int k) const {
    IntPoly r;
    for (auto& [e, c] : terms_)
      r.terms_[e + k] = c;
    return r;
  }
  // Substitute q -> q^k (k may be negative: the Laurent reversal q -> q^{-1}
  // and the squarings q -> q^{±2} are both used by the KL calibration).
  IntPoly substituted(int k) const {
    if (k == 0)
      throw UsageError("IntPoly: substitution q->q^0 is not invertible");
    IntPoly r;
    for (auto& [e, c] : terms_)
      r.terms_[e * k] = c;
    return r;
  }

  Coef evaluate(Coef x) const {
    if (!terms_.empty() && terms_.begin()->first < 0 && x == 0)
      throw UsageError("IntPoly: evaluating a Laurent polynomial at 0");
    Coef acc = 0;
    for (auto& [e, c] : terms_) {
      Coef p = 1;
      for (int i = 0; i < (e < 0 ? -e : e); ++i) {
        mul_guard(p, x);
        p *= x;
      }
      if (e < 0) {
        if (p == 0 || c % p != 0)
          throw MathError("IntPoly: non-integral Laurent evaluation");
        acc += c / p;
      } else {
        mul_guard(c, p);
        acc += c * p;
      }
    }
    return acc;
  }
  Coef at_one() const {
    Coef acc = 0;
    for (auto& [e, c] : terms_)
      acc += c;
    return acc;
  }

  bool nonneg_coeffs() const {
    for (auto& [e, c] : terms_)
      if (c < 0)
        return false;
    return true;
  }
  // Coefficient list reads the same from both ends of the support.
  bool palindromic() const {
    if (terms_.empty())
      return true;
    int lo = valuation(), hi = degree();
    for (int e = lo; e <= hi; ++e)
      if (coeff(e) != coeff(hi - (e - lo)))
        return false;
    return true;
  }

  // Compact form used by the cache file and the canonical JSON encoder:
  // comma-separated "exponent:coefficient" pairs in increasing exponent
  // order; the zero polynomial is "0".
  std::string compact() const {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      if (!first)
        os << ',';
      os << e << ':' << c;
      first = false;
    }
    return os.str();
  }
  static IntPoly from_compact(const std::string& s) {
    IntPoly p;
    if (s == "0")
      return p;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) {
      auto colon = item.find(':');
      if (colon == std::string::npos)
        throw UsageError("IntPoly: malformed compact term '" + item + "'");
      int e = std::stoi(item.substr(0, colon));
      Coef c = std::stoll(item.substr(colon + 1));
      if (c == 0 || p.coeff(e) != 0)
        throw UsageError("IntPoly: non-canonical compact form '" + s + "'");
      p.terms_[e] = c;
    }
    return p;
  }

  // Human form, e.g. "q^2 + q^4", "1 + 2q", "0".
  std::string pretty(const std::string& var = "q") const {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, c] : terms_) {
      Coef a = c;
      if (first) {
        if (a < 0) {
          os << '-';
          a = -a;
        }
      } else {
        os << (a < 0 ? " - " : " + ");
        if (a < 0)
          a = -a;
      }
      if (a != 1 || e == 0)
        os << a;
      if (e != 0) {
        if (a != 1)
          os << '*';
        os << var;
        if (e != 1)
          os << '^' << e;
      }
      first = false;
    }
    return os.str();
  }

private:
  static void mul_guard(Coef a, Coef b) {
    if (a == 0 || b == 0)
      return;
    Coef hi = std::numeric_limits<Coef>::max();
    Coef aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    if (aa > hi / bb)
      throw MathError("IntPoly: 64-bit coefficient overflow");
  }

  std::map<int, Coef> terms_;
};

} // namespace satake
