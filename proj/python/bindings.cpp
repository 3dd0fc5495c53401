#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "convbody/body_spec.hpp"
#include "convbody/errors.hpp"
#include "convbody/inequalities.hpp"
#include "convbody/projbody.hpp"
#include "convbody/serialization.hpp"
#include "convbody/version.hpp"

namespace py = pybind11;
using namespace convbody;

namespace {

py::dict report_dict(const InequalityReport& r) {
  py::dict d;
  d["name"] = r.name;
  d["inputs"] = r.inputs;
  d["n"] = r.n;
  d["theta"] = r.theta < 0 ? py::object(py::none()) : py::object(py::float_(r.theta));
  d["lhs"] = r.lhs;
  d["rhs"] = r.rhs;
  d["slack"] = r.slack;
  d["tightness"] = r.tightness;
  d["tol"] = r.tol;
  d["mc_error"] = r.mc_error;
  d["quad_error"] = r.quad_error;
  d["passed"] = r.passed;
  d["skipped"] = r.skipped;
  d["seed"] = r.seed;
  d["note"] = r.note;
  return d;
}

py::list report_list(const std::vector<InequalityReport>& rs) {
  py::list out;
  for (const auto& r : rs) out.append(report_dict(r));
  return out;
}

}  // namespace

PYBIND11_MODULE(_convbody, m) {
  m.doc() = "Convolution bodies of convex sets";
  m.attr("__version__") = kVersion;

  static py::exception<Error> exc(m, "ConvbodyError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(exc, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<ConvexBody>(m, "ConvexBody")
      .def_static("from_halfspaces", &ConvexBody::from_halfspaces, py::arg("A"), py::arg("b"))
      .def_static("from_vertices", &ConvexBody::from_vertices, py::arg("points"))
      .def_static("ball", &ConvexBody::ball, py::arg("center"), py::arg("radius"))
      .def_static("cube", &ConvexBody::cube, py::arg("n"), py::arg("side") = 1.0)
      .def_static("simplex", &ConvexBody::simplex, py::arg("n"))
      .def_static("cross_polytope", &ConvexBody::cross_polytope, py::arg("n"))
      .def_static("interval", &ConvexBody::interval, py::arg("lo"), py::arg("hi"))
      .def_static("named", &named_body, py::arg("name"), py::arg("n") = 2, py::arg("r") = 1.0)
      .def_static("from_spec", [](const std::string& text) { return parse_body_spec(text).body; })
      .def_property_readonly("dim", &ConvexBody::dim)
      .def_property_readonly("is_ball", &ConvexBody::is_ball)
      .def_property_readonly("vertices", [](const ConvexBody& b) { return PointMatrix(b.vertices()); })
      .def_property_readonly("normals", [](const ConvexBody& b) { return PointMatrix(b.normals()); })
      .def_property_readonly("offsets", [](const ConvexBody& b) { return Vector(b.offsets()); })
      .def("volume", &ConvexBody::volume)
      .def("__neg__", [](const ConvexBody& b) { return reflect(b); })
      .def("translate", [](const ConvexBody& b, const Vector& t) { return translate(b, t); })
      .def("scale", [](const ConvexBody& b, double s) { return scale(b, s); });

  m.def("volume", &volume);
  m.def("support", &support);
  m.def("gauge", &gauge);
  m.def("contains", &contains, py::arg("body"), py::arg("x"), py::arg("tol") = 0.0);
  m.def("minkowski_sum", &minkowski_sum);
  m.def("projection_volume", &projection_volume);
  m.def("apply", [](const Eigen::MatrixXd& a, const Vector& t, const ConvexBody& b) {
    return apply(AffineMap(a, t), b);
  });

  m.def("intersection_volume", &intersection_volume, py::arg("K"), py::arg("L"), py::arg("x"));
  m.def("max_intersection", [](const ConvexBody& k, const ConvexBody& l) {
    const auto r = max_intersection(k, l);
    return py::make_tuple(r.M, r.xstar);
  });

  py::class_<NormalizedPair>(m, "NormalizedPair")
      .def_readonly("K", &NormalizedPair::K)
      .def_readonly("L", &NormalizedPair::L)
      .def_readonly("M", &NormalizedPair::M)
      .def_readonly("shift", &NormalizedPair::shift)
      .def_property_readonly("dim", &NormalizedPair::dim)
      .def("f", &NormalizedPair::f);
  m.def("normalize", &normalize, py::arg("K"), py::arg("L"));

  py::class_<NormalizedTuple>(m, "NormalizedTuple")
      .def_readonly("bodies", &NormalizedTuple::bodies)
      .def_readonly("M", &NormalizedTuple::M)
      .def_property_readonly("dim", &NormalizedTuple::dim)
      .def("f", &NormalizedTuple::f);
  m.def("mfold_value", &mfold_value, py::arg("bodies"), py::arg("x"));
  m.def("mfold_normalize", &mfold_normalize, py::arg("bodies"));

  py::class_<SphereGrid>(m, "SphereGrid")
      .def_static("make", &SphereGrid::make, py::arg("n"), py::arg("size") = 0,
                  py::arg("seed") = kDefaultSeed)
      .def_property_readonly("dim", &SphereGrid::dim)
      .def_property_readonly("size", &SphereGrid::size)
      .def_property_readonly("seed", &SphereGrid::seed)
      .def_property_readonly("kind", [](const SphereGrid& g) { return std::string(to_string(g.kind())); })
      .def_property_readonly("directions", [](const SphereGrid& g) { return PointMatrix(g.directions()); })
      .def_property_readonly("weights", &SphereGrid::weights);

  py::class_<RadialBody>(m, "RadialBody")
      .def_readonly("dim", &RadialBody::dim)
      .def_readonly("center", &RadialBody::center)
      .def_readonly("grid", &RadialBody::grid)
      .def_readonly("radii", &RadialBody::radii)
      .def_readonly("theta", &RadialBody::theta)
      .def_property_readonly("unbounded",
                             [](const RadialBody& rb) {
                               std::vector<bool> u(rb.unbounded.begin(), rb.unbounded.end());
                               return u;
                             })
      .def_property_readonly("bounded", &RadialBody::bounded)
      .def("volume", [](const RadialBody& rb) {
        const auto v = radial_volume(rb);
        return py::make_tuple(v.value, v.std_error);
      })
      .def("to_text", &radial_body_to_text, py::arg("seed") = kDefaultSeed)
      .def_static("from_text", &radial_body_from_text);

  m.def("theta_radius", &theta_radius, py::arg("pair"), py::arg("theta"), py::arg("u"));
  m.def("theta_body", &theta_body, py::arg("pair"), py::arg("theta"), py::arg("grid"));
  m.def("theta_profile", &theta_profile, py::arg("pair"), py::arg("thetas"), py::arg("grid"));
  m.def("limit_body", &limit_body, py::arg("pair"), py::arg("grid"));
  m.def("mfold_theta_body", &mfold_theta_body, py::arg("tuple"), py::arg("theta"), py::arg("grid"));
  m.def("mfold_limit_body", &mfold_limit_body, py::arg("tuple"), py::arg("grid"));
  m.def("polar_projection_body", &polar_projection_body, py::arg("K"), py::arg("grid"));
  m.def("petty_zhang_functional", [](const ConvexBody& k, const SphereGrid& g) {
    const auto v = petty_zhang_functional(k, g);
    return py::make_tuple(v.value, v.std_error);
  });
  m.def("hull_union", &hull_union);

  m.def("check_bm_theta", [](const NormalizedPair& p, double t, const SphereGrid& g, uint64_t seed) {
    return report_dict(check_bm_theta(p, t, g, CheckOptions{seed}));
  }, py::arg("pair"), py::arg("theta"), py::arg("grid"), py::arg("seed") = kDefaultSeed);
  m.def("check_equivalent_forms", [](const NormalizedPair& p, double t, double lambda,
                                     const SphereGrid& g, uint64_t seed) {
    return report_list(check_equivalent_forms(p, t, lambda, g, CheckOptions{seed}));
  }, py::arg("pair"), py::arg("theta"), py::arg("lam"), py::arg("grid"), py::arg("seed") = kDefaultSeed);
  m.def("check_inclusion_chain", [](const NormalizedPair& p, double t, const SphereGrid& g, uint64_t seed) {
    return report_list(check_inclusion_chain(p, t, g, CheckOptions{seed}));
  }, py::arg("pair"), py::arg("theta"), py::arg("grid"), py::arg("seed") = kDefaultSeed);
  m.def("check_monotonicity", [](const NormalizedPair& p, const std::vector<double>& t,
                                 const SphereGrid& g, uint64_t seed) {
    return report_dict(check_monotonicity(p, t, g, CheckOptions{seed}));
  }, py::arg("pair"), py::arg("thetas"), py::arg("grid"), py::arg("seed") = kDefaultSeed);
  m.def("check_zhang_extension", [](const NormalizedPair& p, const SphereGrid& g, uint64_t seed) {
    return report_list(check_zhang_extension(p, g, CheckOptions{seed}));
  }, py::arg("pair"), py::arg("grid"), py::arg("seed") = kDefaultSeed);
  m.def("check_rogers_shephard", [](const NormalizedPair& p, uint64_t seed) {
    return report_dict(check_rogers_shephard(p, CheckOptions{seed}));
  }, py::arg("pair"), py::arg("seed") = kDefaultSeed);
  m.def("check_mfold", [](const NormalizedTuple& t, double theta, const SphereGrid& g, uint64_t seed) {
    return report_list(check_mfold(t, theta, g, CheckOptions{seed}));
  }, py::arg("tuple"), py::arg("theta"), py::arg("grid"), py::arg("seed") = kDefaultSeed);
  m.def("detect_equality_case", [](const ConvexBody& k, const ConvexBody& l) {
    return std::string(to_string(detect_equality_case(k, l)));
  });
  m.def("fuzz", [](uint64_t seed, int n, int count, std::vector<std::string> checks, int dirs) {
    FuzzOptions fo;
    if (!checks.empty()) fo.checks = std::move(checks);
    fo.directions = dirs;
    return report_list(fuzz(seed, n, count, fo));
  }, py::arg("seed"), py::arg("n"), py::arg("count"), py::arg("checks") = std::vector<std::string>{},
     py::arg("dirs") = 0);
  m.def("known_checks", &known_checks);
}
