#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "holoschwarz/config.hpp"
#include "holoschwarz/criterion.hpp"
#include "holoschwarz/errors.hpp"
#include "holoschwarz/fixtures.hpp"
#include "holoschwarz/nehari.hpp"
#include "holoschwarz/oracle.hpp"
#include "holoschwarz/run.hpp"
#include "holoschwarz/schwarzian.hpp"

namespace py = pybind11;
namespace hs = holoschwarz;

namespace {

py::dict profile_point(const hs::ProfilePoint& p) {
  py::dict d;
  d["x"] = p.x;
  d["u0"] = p.u0;
  d["Phi"] = p.Phi;
  d["PhiP"] = p.PhiP;
  d["U"] = p.U;
  d["Psi"] = p.Psi;
  d["A"] = p.A;
  d["p"] = p.p;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Schwarzian univalence criteria for holomorphic curves";

  py::register_exception<hs::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<hs::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  // registered last so it is tried first
  py::register_exception<hs::ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<hs::HoloCurve>(m, "HoloCurve")
      .def_static("identity", &hs::HoloCurve::identity)
      .def_static("polynomial", &hs::HoloCurve::polynomial, py::arg("coeffs"), py::arg("label") = "",
                  "One coefficient list per component, lowest degree first.")
      .def_static("example1", [](double c) { return hs::example1_curve({c}); }, py::arg("c") = 1700.0)
      .def_static("example2", [](double c) { return hs::example2_curve({c}); }, py::arg("c") = 0.05)
      .def("scaled", &hs::HoloCurve::scaled)
      .def("values", &hs::HoloCurve::values)
      .def_property_readonly("dimension", &hs::HoloCurve::dimension)
      .def_property_readonly("label", &hs::HoloCurve::label)
      .def("__repr__", [](const hs::HoloCurve& c) { return "<HoloCurve " + c.label() + ">"; });

  m.def("builtin_curves", [] {
    py::dict d;
    for (const auto& nc : hs::builtin_curves()) d[py::str(nc.name)] = nc.curve;
    return d;
  });

  m.def(
      "conformal_data",
      [](const hs::HoloCurve& c, hs::cplx z) {
        const hs::ConformalData d = hs::conformal_data(hs::eval_curve(c, z));
        py::dict out;
        out["sigma"] = d.sigma;
        out["schwarzian"] = d.schwarzian;
        out["curvature"] = d.curvature;
        out["scaled_curvature"] = d.scaled_curvature();
        out["second_form_sq"] = d.second_form_sq;
        out["lhs"] = hs::criterion_lhs(d);
        return out;
      },
      py::arg("curve"), py::arg("z"));

  py::class_<hs::NehariFunction>(m, "NehariFunction")
      .def_static("constant", &hs::NehariFunction::constant, py::arg("value") = hs::kPi * hs::kPi / 4.0)
      .def_static("inverse_square", &hs::NehariFunction::inverse_square)
      .def_static("half_strip", &hs::NehariFunction::half_strip)
      .def_static("tabulated", &hs::NehariFunction::tabulated, py::arg("x"), py::arg("p"))
      .def_static("custom", &hs::NehariFunction::custom, py::arg("fn"), py::arg("label"))
      .def("scaled", &hs::NehariFunction::scaled)
      .def("__call__", &hs::NehariFunction::operator())
      .def("lambda_", &hs::NehariFunction::lambda)
      .def_property_readonly("label", &hs::NehariFunction::label);

  m.def(
      "validate_nehari",
      [](const hs::NehariFunction& p) {
        const hs::NehariValidation v = hs::validate_nehari(p);
        py::dict d;
        d["valid"] = v.valid();
        d["positive"] = v.positive;
        d["even"] = v.even;
        d["weighted_nonincreasing"] = v.weighted_nonincreasing;
        d["disconjugate"] = v.disconjugate;
        d["zero_count"] = v.zero_count;
        d["message"] = v.message;
        return d;
      },
      py::arg("p"));
  m.def("disconjugacy_count", [](const hs::NehariFunction& p) { return hs::disconjugacy_count(p); });
  m.def("extremality_margin", [](const hs::NehariFunction& p) { return hs::extremality_margin(p); });

  py::class_<hs::ExtremalProfile>(m, "Profile")
      .def("at", [](const hs::ExtremalProfile& pr, double r) { return profile_point(pr.at(r)); })
      .def("inverse_phi", &hs::ExtremalProfile::inverse_phi)
      .def_property_readonly("lambda_", &hs::ExtremalProfile::lambda)
      .def_property_readonly("mu", &hs::ExtremalProfile::mu)
      .def_property_readonly("alpha", &hs::ExtremalProfile::alpha)
      .def_property_readonly("x_max", &hs::ExtremalProfile::x_max)
      .def_property_readonly("phi_divergent", &hs::ExtremalProfile::phi_divergent);
  m.def(
      "extremal_profile", [](const hs::NehariFunction& p, double eps) { return hs::extremal_profile(p, {eps}); },
      py::arg("p"), py::arg("eps") = 1e-6);

  m.def(
      "scan",
      [](const hs::HoloCurve& c, const hs::NehariFunction& p, int n_r, int n_theta, double r_max, int refine) {
        const hs::CriterionReport r = hs::scan(c, p, hs::GridSpec{n_r, n_theta, r_max, refine});
        py::dict d;
        d["verdict"] = hs::to_string(r.verdict);
        d["min_margin"] = r.min_margin;
        d["argmin"] = r.argmin;
        d["tol_eq"] = r.tol_eq;
        d["points"] = r.points.size();
        d["equality_locus_size"] = r.equality_locus.size();
        return d;
      },
      py::arg("curve"), py::arg("p"), py::arg("n_r") = 64, py::arg("n_theta") = 64, py::arg("r_max") = 0.99,
      py::arg("refine") = 0);

  m.def(
      "normalize",
      [](const hs::HoloCurve& c) {
        const hs::NormalizedCurve n = hs::normalize(c);
        return py::make_tuple(n.curve, n.tangent_at_0, n.phi2_at_0);
      },
      "Returns (curve, |phi'(0)|, |phi''(0)| after scaling).");
  m.def("covering_bound", &hs::covering_bound, py::arg("profile"), py::arg("phi2"), py::arg("r"));
  m.def(
      "intrinsic_min_distance",
      [](const hs::HoloCurve& c, double r, int resolution) {
        return hs::intrinsic_min_distance(c, r, {resolution, true, 1e-3});
      },
      py::arg("curve"), py::arg("r"), py::arg("resolution") = 200);

  m.def("disk_samples", &hs::disk_samples, py::arg("count"), py::arg("seed") = 0, py::arg("r_min") = 0.0,
        py::arg("r_max") = 1.0 - 1e-4);
  m.def(
      "injectivity_scan",
      [](const hs::HoloCurve& c, std::size_t samples, double delta, std::uint64_t seed, double r_min) {
        hs::InjectivityOptions o;
        o.r_min = r_min;
        const hs::InjectivityReport r = hs::injectivity_scan(c, samples, delta, seed, o);
        py::dict d;
        d["min_distance"] = r.min_distance;
        d["z1"] = r.min_z1;
        d["z2"] = r.min_z2;
        d["collision"] = r.collision;
        return d;
      },
      py::arg("curve"), py::arg("samples") = 10000, py::arg("delta") = 0.05, py::arg("seed") = 0,
      py::arg("r_min") = 0.0);

  m.def(
      "identity_suite",
      [](const std::vector<hs::HoloCurve>& curves, std::uint64_t seed, std::size_t points) {
        const std::vector<hs::PlaneCurve> paths{hs::PlaneCurve::diameter(0.0), hs::PlaneCurve::circle_arc(0.0, 0.3),
                                                hs::PlaneCurve::circle_arc(0.0, 0.6)};
        hs::IdentitySuiteOptions o;
        o.points_per_curve = points;
        py::dict d;
        for (const auto& id : hs::identity_suite(curves, paths, seed, o).identities)
          d[py::str(id.name)] = py::make_tuple(id.worst, id.tolerance, id.pass());
        return d;
      },
      py::arg("curves"), py::arg("seed") = 0, py::arg("points") = 16,
      "Maps identity name to (worst deviation, tolerance, passed).");

  m.def(
      "lemma7_check",
      [](double c, std::size_t samples, std::uint64_t seed) {
        const hs::Lemma7Report r = hs::lemma7_check({c}, hs::lemma7_strip_samples(samples, seed));
        return py::make_tuple(r.A, r.B, r.C);
      },
      py::arg("c"), py::arg("samples") = 10000, py::arg("seed") = 0);

  m.def(
      "run",
      [](const std::string& config_text, const std::string& output_dir) {
        hs::RunConfig cfg = hs::parse_config(config_text);
        if (!output_dir.empty()) cfg.output_dir = output_dir;
        const hs::RunReport r = hs::run(cfg);
        return py::make_tuple(r.exit_code, r.summary, r.artifacts);
      },
      py::arg("config"), py::arg("output_dir") = "",
      "Runs a config given as text; returns (exit_code, summary, artifacts).");
}
