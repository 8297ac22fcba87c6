// Python bindings. Rationals cross the boundary as fractions.Fraction (or
// int / "p/q" strings on the way in); floats are rejected to keep every value
// exact. Polyhedra are immutable views carrying both descriptions.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "polystab/errors.hpp"
#include "polystab/io.hpp"
#include "polystab/multipliers.hpp"
#include "polystab/oracle.hpp"
#include "polystab/stability.hpp"

namespace py = pybind11;
using namespace polystab;

namespace pybind11 {
namespace detail {

template <>
struct type_caster<mpq_class> {
 public:
  PYBIND11_TYPE_CASTER(mpq_class, const_name("Fraction"));

  bool load(handle src, bool) {
    if (PyFloat_Check(src.ptr())) return false;
    std::string text;
    try {
      text = py::str(src).cast<std::string>();
    } catch (...) {
      return false;
    }
    try {
      mpq_class q(text, 10);
      if (q.get_den() == 0) return false;
      q.canonicalize();
      value = q;
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }

  static handle cast(const mpq_class& src, return_value_policy, handle) {
    object fraction = module_::import("fractions").attr("Fraction");
    return fraction(src.get_str()).release();
  }
};

}  // namespace detail
}  // namespace pybind11

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in.good()) throw input_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

py::list rows_list(const std::vector<LinRow>& rows) {
  py::list out;
  for (const LinRow& r : rows) out.append(py::make_tuple(r.a, r.b));
  return out;
}

py::object support_py(const Polyhedron& p, const QVec& d) {
  SupportValue s = support(p, d);
  if (s.kind == SupportValue::Finite) return py::cast(s.value);
  double inf = std::numeric_limits<double>::infinity();
  return py::float_(s.kind == SupportValue::PlusInf ? inf : -inf);
}

const char* relation_name(SetRelation r) {
  switch (r) {
    case SetRelation::Equal: return "equal";
    case SetRelation::ProperSubset: return "proper_subset";
    case SetRelation::ProperSuperset: return "proper_superset";
    default: return "incomparable";
  }
}

QVec anchor_minimizer(const Program& p, const QVec& xbar,
                      const py::object& ybar) {
  if (!ybar.is_none()) return ybar.cast<QVec>();
  Solution s = solve(p, xbar);
  if (s.kind != Solution::Finite)
    throw precondition_error(
        "value function is not finite at the parameter; pass ybar to pick an "
        "anchor");
  return s.ybar;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact subdifferentials, multiplier sets and stability reports for "
      "piecewise-linear parametric convex programs over the rationals.";

  py::register_exception<input_error>(m, "InputError", PyExc_ValueError);
  py::register_exception<precondition_error>(m, "PreconditionError",
                                             PyExc_ValueError);
  py::register_exception<qualification_error>(m, "QualificationError",
                                              PyExc_RuntimeError);
  py::register_exception<internal_error>(m, "InternalError",
                                         PyExc_RuntimeError);

  py::class_<Polyhedron>(m, "Polyhedron",
                         "Immutable rational polyhedron holding canonical H- "
                         "and V-descriptions.")
      .def_property_readonly("dim", &Polyhedron::dim)
      .def_property_readonly("is_empty", &Polyhedron::is_empty)
      .def("contains", &Polyhedron::contains, py::arg("point"))
      .def("__contains__", &Polyhedron::contains)
      .def("admits_ray", &Polyhedron::admits_ray, py::arg("direction"))
      .def("ineqs", [](const Polyhedron& p) { return rows_list(p.hrep().ineqs); },
           "Facet rows as (coefficients, bound) with <a, z> <= b.")
      .def("eqs", [](const Polyhedron& p) { return rows_list(p.hrep().eqs); })
      .def("points", [](const Polyhedron& p) { return p.vrep().points; })
      .def("rays", [](const Polyhedron& p) { return p.vrep().rays; })
      .def("lines", [](const Polyhedron& p) { return p.vrep().lines; })
      .def("support", &support_py, py::arg("direction"),
           "Support value max <z, d>; mathematical infinities come back as "
           "float inf.")
      .def("issubset", &subset_of, py::arg("other"))
      .def("__eq__",
           [](const Polyhedron& p, const Polyhedron& q) {
             return set_relation(p, q) == SetRelation::Equal;
           })
      .def("__repr__", [](const Polyhedron& p) {
        std::ostringstream ss;
        ss << "Polyhedron(dim=" << p.dim();
        if (p.is_empty()) {
          ss << ", empty";
        } else {
          const VRep& v = p.vrep();
          ss << ", points=" << v.points.size() << ", rays=" << v.rays.size()
             << ", lines=" << v.lines.size();
        }
        ss << ")";
        return ss.str();
      });

  m.def("set_relation",
        [](const Polyhedron& p, const Polyhedron& q) {
          return relation_name(set_relation(p, q));
        },
        py::arg("p"), py::arg("q"),
        "'equal', 'proper_subset', 'proper_superset' or 'incomparable'.");

  py::class_<Solution>(m, "Solution")
      .def_property_readonly("status",
                             [](const Solution& s) {
                               switch (s.kind) {
                                 case Solution::Finite: return "finite";
                                 case Solution::Unbounded: return "unbounded";
                                 default: return "infeasible";
                               }
                             })
      .def_property_readonly("value",
                             [](const Solution& s) -> py::object {
                               if (s.kind != Solution::Finite) return py::none();
                               return py::cast(s.value);
                             },
                             "Optimal value as a Fraction; None when the "
                             "program is infeasible or unbounded at x.")
      .def_property_readonly("ybar",
                             [](const Solution& s) -> py::object {
                               if (s.kind != Solution::Finite) return py::none();
                               return py::cast(s.ybar);
                             })
      .def_property_readonly("argmin",
                             [](const Solution& s) -> py::object {
                               if (s.kind != Solution::Finite) return py::none();
                               return py::cast(s.argmin);
                             })
      .def("__repr__", [](const Solution& s) {
        switch (s.kind) {
          case Solution::Finite:
            return "Solution(finite, value=" + format_rational(s.value) + ")";
          case Solution::Unbounded: return std::string("Solution(unbounded)");
          default: return std::string("Solution(infeasible)");
        }
      });

  py::class_<DirDerivative>(m, "DirDerivative")
      .def_readonly("finite", &DirDerivative::finite)
      .def_property_readonly("slope",
                             [](const DirDerivative& d) -> py::object {
                               if (!d.finite) return py::none();
                               return py::cast(d.slope);
                             })
      .def_readonly("steps", &DirDerivative::steps);

  py::class_<SlaterResult>(m, "SlaterResult")
      .def_readonly("ok", &SlaterResult::ok)
      .def_readonly("x", &SlaterResult::x)
      .def_readonly("y", &SlaterResult::y)
      .def_readonly("reason", &SlaterResult::reason);

  py::class_<KktResult>(m, "KktResult")
      .def_readonly("holds", &KktResult::holds)
      .def_property_readonly("certificate",
                             [](const KktResult& r) -> py::object {
                               if (!r.certificate) return py::none();
                               return py::make_tuple(r.certificate->first,
                                                     r.certificate->second);
                             })
      .def_readonly("interior_constraints", &KktResult::interior_constraints)
      .def_readonly("interior_objective", &KktResult::interior_objective)
      .def_readonly("optimal", &KktResult::optimal);

  py::class_<StabilityReport>(m, "StabilityReport")
      .def_property_readonly("status",
                             [](const StabilityReport& r) {
                               switch (r.status) {
                                 case Solution::Finite: return "finite";
                                 case Solution::Unbounded: return "unbounded";
                                 default: return "infeasible";
                               }
                             })
      .def_property_readonly("value",
                             [](const StabilityReport& r) -> py::object {
                               if (r.status != Solution::Finite)
                                 return py::none();
                               return py::cast(r.value);
                             })
      .def_property_readonly("ybar",
                             [](const StabilityReport& r) -> py::object {
                               if (r.status != Solution::Finite)
                                 return py::none();
                               return py::cast(r.ybar);
                             })
      .def_readonly("lambda0", &StabilityReport::lambda0)
      .def_readonly("lambda_", &StabilityReport::lambda)
      .def_readonly("lambda_inf", &StabilityReport::lambda_inf)
      .def_readonly("subdifferential", &StabilityReport::sub)
      .def_readonly("estimate", &StabilityReport::sub_estimate)
      .def_readonly("estimate_strict", &StabilityReport::sub_estimate_strict)
      .def_readonly("singular_subdifferential", &StabilityReport::sing)
      .def_readonly("singular_estimate", &StabilityReport::sing_estimate)
      .def_readonly("singular_estimate_strict",
                    &StabilityReport::sing_estimate_strict)
      .def_readonly("mu_domain", &StabilityReport::mu_dom)
      .def_readonly("mu_proper", &StabilityReport::mu_proper)
      .def_readonly("singular_matches_domain_cone",
                    &StabilityReport::singular_matches_domain_cone)
      .def_readonly("slater_ok", &StabilityReport::slater_ok)
      .def_readonly("slater_reason", &StabilityReport::slater_reason);

  py::class_<Program>(m, "Program",
                      "A parametric program min_y phi(x, y) subject to "
                      "g(x, y) <= 0, h(x, y) = 0, (x, y) in C.")
      .def_readonly("nx", &Program::nx)
      .def_readonly("ny", &Program::ny)
      .def_property_readonly("m",
                             [](const Program& p) { return p.g.size(); })
      .def_property_readonly("k",
                             [](const Program& p) { return p.h.size(); })
      .def("solve", &solve, py::arg("x"))
      .def("mu_domain", &mu_domain,
           "Effective domain of the optimal value function.")
      .def("subdifferential", &mu_subdifferential, py::arg("x"),
           "Exact subdifferential of the optimal value function at x.")
      .def("singular_subdifferential", &mu_singular_subdifferential,
           py::arg("x"))
      .def("multipliers",
           [](const Program& p, const QVec& xbar, const py::object& ybar) {
             QVec y = anchor_minimizer(p, xbar, ybar);
             py::dict out;
             out["lambda0"] = lambda0_set(p, xbar, y);
             out["lambda"] = lambda_set(p, xbar, y);
             out["lambda_inf"] = lambda_inf_set(p, xbar, y);
             return out;
           },
           py::arg("x"), py::arg("ybar") = py::none(),
           "Multiplier sets at the anchor (x, ybar); ybar defaults to the "
           "solve minimizer.")
      .def("analyze",
           [](const Program& p, const QVec& xbar) {
             return analyze_stability(p, xbar);
           },
           py::arg("x"), "Full stability report at x.")
      .def("directional_derivative", &directional_derivative, py::arg("x"),
           py::arg("direction"),
           "Exact one-sided directional derivative of the value function, "
           "measured by repeated halving; independent of the set formulas.")
      .def("slater_point", &slater_point)
      .def("kkt_check", &kkt_inclusion_check, py::arg("x"), py::arg("y"),
           "Tests 0 in d_y phi(x, y) + N(y; G(x)).")
      .def("to_json", &format_program_json,
           "Canonical JSON serialization of the problem data.")
      .def("__repr__", [](const Program& p) {
        std::ostringstream ss;
        ss << "Program(nx=" << p.nx << ", ny=" << p.ny << ", m=" << p.g.size()
           << ", k=" << p.h.size() << ")";
        return ss.str();
      });

  m.def("loads", &parse_program_json, py::arg("text"),
        "Parse a problem from JSON text.");
  m.def("load",
        [](const std::string& path) { return parse_program_json(read_file(path)); },
        py::arg("path"), "Parse a problem from a JSON file.");
}
