#pragma once
// Canonical JSON emission helpers.  Every encoder here is deterministic:
// object keys are inserted in a fixed order (nlohmann::ordered_json keeps
// insertion order), polynomials list exponents ascending, weight lists are
// sorted by (pairing with h descending, lex ascending).  Byte-identical
// output for identical inputs is a documented guarantee of the CLI.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "satake/linalg.hpp"
#include "satake/poly.hpp"
#include "satake/rootdata.hpp"

namespace satake {

using OJson = nlohmann::ordered_json;

// {"exponent": coefficient} with exponents ascending; {} is zero.
inline OJson json_poly(const IntPoly& p) {
  OJson o = OJson::object();
  for (const auto& [e, c] : p.terms()) o[std::to_string(e)] = c;
  return o;
}

inline std::string rat_text(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

// Canonical display order for sets of weights: higher strata first.
inline std::vector<IVec> sorted_weights(const RootSystem& rs, std::vector<IVec> v) {
  std::sort(v.begin(), v.end(), [&rs](const IVec& a, const IVec& b) {
    long long ha = rs.pair_h(a), hb = rs.pair_h(b);
    if (ha != hb) return ha > hb;
    return a < b;
  });
  return v;
}

inline void emit_json(std::ostream& os, const OJson& o) { os << o.dump(2) << '\n'; }

}  // namespace satake
