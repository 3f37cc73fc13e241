// Python facade: a Datum handle plus thin wrappers returning plain dicts,
// tuples, and ints, so the exact C++ results stay exact (polynomials come
// back as {exponent: coefficient} maps, rationals as strings).
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "satake/acceptance.hpp"
#include "satake/grassview.hpp"
#include "satake/klhecke.hpp"
#include "satake/principal.hpp"
#include "satake/repbuild.hpp"
#include "satake/rootdata.hpp"
#include "satake/weyl.hpp"

namespace py = pybind11;
using namespace satake;

namespace {

py::dict poly_dict(const IntPoly& p) {
  py::dict d;
  for (const auto& [e, c] : p.terms()) d[py::int_(e)] = py::int_(c);
  return d;
}

std::string rat_str(const Rat& x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

struct Datum {
  RootDatum datum;
  explicit Datum(const std::string& label) : datum(build_root_datum(label)) {}
  const RootSystem& dual() const { return datum.dual; }
};

py::dict filtration_dict(const FiltrationReport& r) {
  py::dict d;
  d["lambda"] = r.lambda;
  d["mu"] = r.mu;
  d["dominant"] = r.dominant;
  d["note"] = r.note;
  py::list jumps;
  for (const auto& [i, m] : r.jumps) jumps.append(py::make_tuple(i, m));
  d["jumps"] = jumps;
  d["poly"] = poly_dict(r.poincare);
  return d;
}

AExpr build_aexpr(const py::sequence& words, int rank) {
  AExpr expr;
  for (const auto& item : words) {
    py::sequence w = py::cast<py::sequence>(item);
    if (w.size() != 2)
      throw UsageError("each word must be ((num, den), [(generator, power), ...])");
    py::sequence coeff = py::cast<py::sequence>(w[0]);
    if (coeff.size() != 2) throw UsageError("coefficient must be a (num, den) pair");
    long long num = py::cast<long long>(coeff[0]);
    long long den = py::cast<long long>(coeff[1]);
    if (den == 0) throw UsageError("coefficient denominator is zero");
    AWord word;
    word.coeff = Rat(num, den);
    for (const auto& f : py::cast<py::sequence>(w[1])) {
      py::sequence fp = py::cast<py::sequence>(f);
      if (fp.size() != 2) throw UsageError("each factor must be (generator, power)");
      int gen = py::cast<int>(fp[0]);  // 1-based, as in the command line
      int pow = py::cast<int>(fp[1]);
      if (gen < 1 || gen > rank)
        throw UsageError("generator index out of range 1.." + std::to_string(rank));
      word.factors.emplace_back(gen - 1, pow);
    }
    expr.push_back(std::move(word));
  }
  return expr;
}

}  // namespace

PYBIND11_MODULE(_satakelab, m) {
  m.doc() = "exact dual-group combinatorics: root data, affine Hecke/KL, "
            "representations, principal filtrations";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<BudgetError>(m, "BudgetError", PyExc_RuntimeError);
  py::register_exception<MathError>(m, "MathError", PyExc_ArithmeticError);

  m.def("supported_labels", &supported_labels);

  py::class_<Datum>(m, "Datum")
      .def(py::init<const std::string&>(), py::arg("label"))
      .def_property_readonly("label", [](const Datum& d) { return d.datum.label; })
      .def_property_readonly("rank", [](const Datum& d) { return d.dual().rank; })
      .def_property_readonly("cartan", [](const Datum& d) { return d.datum.group.cartan; })
      .def_property_readonly("dual_cartan", [](const Datum& d) { return d.dual().cartan; })
      .def_property_readonly("hvec", [](const Datum& d) { return d.dual().hvec; })
      .def_property_readonly("fundamental_group",
                             [](const Datum& d) { return d.dual().pi1(); })
      .def_property_readonly("exponents",
                             [](const Datum& d) {
                               PrincipalContext ctx(d.datum);
                               return ctx.centralizer().exponents;
                             })
      .def("positive_roots",
           [](const Datum& d) {
             std::vector<IVec> out;
             for (int k = 0; k < d.dual().num_pos_roots(); ++k)
               out.push_back(d.dual().root_fw(k));
             return out;
           })
      .def("highest_root", [](const Datum& d) {
        return d.dual().root_fw(d.dual().highest_root);
      })
      .def("is_dominant",
           [](const Datum& d, const IVec& v) { return d.dual().is_dominant(v); })
      .def("dominant_rep",
           [](const Datum& d, const IVec& v) { return d.dual().dominant_rep(v, nullptr); })
      .def("component_tag",
           [](const Datum& d, const IVec& v) { return d.dual().component_tag(v); })
      .def("weyl_orbit",
           [](const Datum& d, const IVec& v) { return d.dual().weyl_orbit(v).elements; })
      .def("dominant_below",
           [](const Datum& d, const IVec& v) { return d.dual().dominant_below(v); })
      .def("__repr__", [](const Datum& d) { return "Datum('" + d.datum.label + "')"; });

  m.def("dimension",
        [](const Datum& d, const IVec& lam) { return weyl_dimension(d.dual(), lam); },
        py::arg("datum"), py::arg("lam"));

  m.def("character",
        [](const Datum& d, const IVec& lam) {
          py::dict out;
          for (const auto& [v, mult] : character(d.dual(), lam))
            out[py::tuple(py::cast(v))] = mult;
          return out;
        },
        py::arg("datum"), py::arg("lam"));

  m.def("weight_multiplicity",
        [](const Datum& d, const IVec& lam, const IVec& mu) {
          return freudenthal_multiplicity(d.dual(), lam, mu);
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"));

  m.def("tensor_decompose",
        [](const Datum& d, const IVec& lam, const IVec& mu, long long budget) {
          py::dict out;
          for (const auto& [nu, mult] : tensor_decompose(d.dual(), lam, mu, budget))
            out[py::tuple(py::cast(nu))] = mult;
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"), py::arg("budget") = 160000);

  m.def("brylinski",
        [](const Datum& d, const IVec& lam, const IVec& mu, long long budget) {
          Irrep rep = build_irrep(d.dual(), lam, budget);
          return filtration_dict(brylinski_poincare(rep, mu));
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"), py::arg("budget") = 400);

  m.def("lusztig_q_analog",
        [](const Datum& d, const IVec& lam, const IVec& mu) {
          return poly_dict(lusztig_q_analog(d.dual(), lam, mu));
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"));

  m.def("q_kostant_partition",
        [](const Datum& d, const IVec& beta) {
          return poly_dict(q_kostant_partition(d.dual(), beta));
        },
        py::arg("datum"), py::arg("beta"));

  m.def("kl_polynomial",
        [](const Datum& d, const IVec& lam, const IVec& mu, const std::string& lattice) {
          AffineCtx ctx(d.datum, parse_lattice(lattice));
          KLEngine engine(ctx);
          AffElt x = ctx.max_coset_rep(mu);
          AffElt y = ctx.max_coset_rep(lam);
          KLResult r = engine.kl_polynomial(x, y);
          py::dict out;
          out["comparable"] = r.comparable;
          out["poly"] = poly_dict(r.poly);
          out["length_x"] = ctx.length(x);
          out["length_y"] = ctx.length(y);
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"), py::arg("lattice") = "weight");

  m.def("ic_stalk",
        [](const Datum& d, const IVec& lam, const IVec& mu) {
          AffineCtx ctx(d.datum, Lattice::Weight);
          KLEngine engine(ctx);
          StalkPoincare s = ic_stalk_poincare(engine, lam, mu);
          py::dict out;
          out["in_closure"] = s.in_closure;
          out["poly"] = poly_dict(s.poly);
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"));

  m.def("verify_qkl",
        [](const Datum& d, const IVec& lam, const IVec& mu, long long budget) {
          AffineCtx ctx(d.datum, Lattice::Weight);
          KLEngine engine(ctx);
          QklReport r = verify_qkl_theorem(engine, lam, mu, budget);
          py::dict out;
          out["pass"] = r.pass;
          out["multiplicity"] = r.multiplicity;
          out["brylinski"] = poly_dict(r.brylinski);
          out["lusztig"] = poly_dict(r.lusztig);
          out["kl_route"] = poly_dict(r.kl_route);
          out["convention"] = r.convention;
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"), py::arg("budget") = 400);

  m.def("satake_check",
        [](const Datum& d, const IVec& lam, const IVec& mu, bool extended,
           long long budget) {
          AffineCtx ctx(d.datum, extended ? Lattice::Weight : Lattice::Root);
          KLEngine engine(ctx);
          SatakeReport r = satake_structure_check(engine, lam, mu, budget);
          py::dict out;
          out["match"] = r.match;
          out["parameter_free"] = r.parameter_free;
          out["complete"] = r.complete;
          out["note"] = r.note;
          py::dict constants, tensor;
          for (const auto& [nu, p] : r.constants)
            constants[py::tuple(py::cast(nu))] = poly_dict(p);
          for (const auto& [nu, mult] : r.tensor)
            tensor[py::tuple(py::cast(nu))] = mult;
          out["constants"] = constants;
          out["tensor"] = tensor;
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"), py::arg("extended") = false,
        py::arg("budget") = 160000);

  m.def("minuscule_weight",
        [](const Datum& d, const IVec& coset) { return minuscule_weight(d.dual(), coset); },
        py::arg("datum"), py::arg("coset"));

  m.def("minuscule_cyclicity",
        [](const Datum& d, const IVec& coset) {
          PrincipalContext ctx(d.datum);
          CyclicityReport r = minuscule_cyclicity_check(ctx, coset);
          py::dict out;
          out["coset"] = r.coset;
          out["minuscule"] = r.mu_c;
          out["dim"] = r.dim;
          out["rounds"] = r.rounds;
          out["cyclic"] = r.cyclic;
          return out;
        },
        py::arg("datum"), py::arg("coset"));

  m.def("generalized_exponents",
        [](const Datum& d, const IVec& lam, long long budget) {
          PrincipalContext ctx(d.datum);
          Irrep rep = build_irrep(d.dual(), lam, budget);
          AInvariantsReport r = a_invariants(ctx, rep, d.dual().component_tag(lam));
          py::dict out;
          out["dim_fixed"] = r.dim_fixed;
          out["exponents"] = r.exponents;
          out["poly"] = poly_dict(r.exponent_poly);
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("budget") = 400);

  m.def("graded_hom",
        [](const Datum& d, const IVec& lam, const IVec& mu, long long budget) {
          PrincipalContext ctx(d.datum);
          GradedHomReport r = graded_hom_over_a(ctx, lam, mu, budget);
          py::dict out;
          py::dict by_degree;
          for (const auto& [deg, n] : r.by_degree) by_degree[py::int_(deg)] = n;
          out["by_degree"] = by_degree;
          out["total"] = r.total;
          out["tensor_side"] = r.tensor_side;
          return out;
        },
        py::arg("datum"), py::arg("lam"), py::arg("mu"), py::arg("budget") = 400);

  m.def("schubert_pairing",
        [](const Datum& d, const IVec& lam, const py::sequence& words, long long budget) {
          PrincipalContext ctx(d.datum);
          return rat_str(schubert_pairing(ctx, build_aexpr(words, ctx.rank()), lam, budget));
        },
        py::arg("datum"), py::arg("lam"), py::arg("words"), py::arg("budget") = 400);

  m.def("run_acceptance",
        [](const std::string& datum_filter, int max_height) {
          AcceptanceOptions opt;
          opt.datum_filter = datum_filter;
          opt.max_height = max_height;
          opt.subprocess = false;  // CLI round-trips run through ctest instead
          auto results = run_acceptance(opt);
          py::list out;
          for (const auto& r : results) {
            py::dict row;
            row["id"] = r.id;
            row["name"] = r.name;
            row["status"] = r.status;
            row["cases"] = r.cases;
            row["detail"] = r.detail;
            out.append(row);
          }
          return out;
        },
        py::arg("datum_filter") = "", py::arg("max_height") = 0);
}
