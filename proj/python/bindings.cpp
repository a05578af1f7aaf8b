#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "orfd/beam_model.hpp"
#include "orfd/config.hpp"
#include "orfd/dynamics.hpp"
#include "orfd/eigen_qr.hpp"
#include "orfd/errors.hpp"
#include "orfd/experiments.hpp"
#include "orfd/operators.hpp"
#include "orfd/shear.hpp"
#include "orfd/spectral.hpp"

namespace py = pybind11;
using namespace orfd;

PYBIND11_MODULE(_core, m) {
  m.doc() = "ORFD and FD semi-discretizations of the clamped-free three-layer sandwich beam";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);

  py::class_<LayerSpec>(m, "LayerSpec")
      .def(py::init([](double rho, double thickness, double youngs_gpa, double shear_gpa,
                       double poisson) {
             return LayerSpec{rho, thickness, youngs_gpa, shear_gpa, poisson};
           }),
           py::arg("rho"), py::arg("thickness"), py::arg("youngs_gpa"), py::arg("shear_gpa"),
           py::arg("poisson"))
      .def_readwrite("rho", &LayerSpec::rho)
      .def_readwrite("thickness", &LayerSpec::thickness)
      .def_readwrite("youngs_gpa", &LayerSpec::youngs_gpa)
      .def_readwrite("shear_gpa", &LayerSpec::shear_gpa)
      .def_readwrite("poisson", &LayerSpec::poisson);

  py::class_<BeamCoefficients>(m, "BeamCoefficients")
      .def(py::init([](double B, double C, double P, double time_scale) {
             BeamCoefficients c{B, C, P, time_scale};
             validate(c);
             return c;
           }),
           py::arg("B"), py::arg("C"), py::arg("P"), py::arg("time_scale") = kDefaultTimeScale)
      .def_readonly("B", &BeamCoefficients::B)
      .def_readonly("C", &BeamCoefficients::C)
      .def_readonly("P", &BeamCoefficients::P)
      .def_readonly("time_scale", &BeamCoefficients::time_scale)
      .def("__repr__", [](const BeamCoefficients& c) {
        return "BeamCoefficients(B=" + std::to_string(c.B) + ", C=" + std::to_string(c.C) +
               ", P=" + std::to_string(c.P) + ")";
      });

  m.def("derive_coefficients", &derive_coefficients, py::arg("top"), py::arg("core"),
        py::arg("bottom"), py::arg("time_scale") = kDefaultTimeScale);
  m.def(
      "large_shear_condition",
      [](const BeamCoefficients& c, double h) {
        const ShearCondition s = large_shear_condition(c, h);
        return py::make_tuple(s.holds, s.margin);
      },
      py::arg("coeffs"), py::arg("h"), "Returns (holds, margin).");
  m.def("pde_observability_bound", &pde_observability_bound, py::arg("T"), py::arg("L"));

  py::class_<Grid>(m, "Grid")
      .def(py::init<int>(), py::arg("N"))
      .def_property_readonly("N", &Grid::N)
      .def_property_readonly("h", &Grid::h)
      .def_property_readonly("nodes", &Grid::nodes);

  m.def("assemble_Ah", [](const Grid& g) { return assemble_Ah(g).to_dense(); }, py::arg("grid"));
  m.def("assemble_M", [](const Grid& g) { return assemble_M(g).to_dense(); }, py::arg("grid"));

  py::enum_<Scheme>(m, "Scheme").value("ORFD", Scheme::ORFD).value("FD", Scheme::FD);

  py::class_<OperatorBundle>(m, "OperatorBundle")
      .def_readonly("scheme", &OperatorBundle::scheme)
      .def_readonly("xi", &OperatorBundle::xi)
      .def_property_readonly("N", [](const OperatorBundle& b) { return b.grid.N(); })
      .def_property_readonly("mass", [](const OperatorBundle& b) { return b.mass.to_dense(); })
      .def_readonly("stiffness", &OperatorBundle::stiffness)
      .def_property_readonly("damping", &OperatorBundle::damping)
      .def("apply_stiffness", [](const OperatorBundle& b, const Eigen::VectorXd& z) {
        return apply_stiffness(b, z);
      })
      .def("first_order_matrix", [](const OperatorBundle& b) { return to_first_order(b).A; });

  m.def(
      "assemble",
      [](Scheme s, const BeamCoefficients& c, int N, double xi) {
        return assemble(s, c, Grid(N), xi);
      },
      py::arg("scheme"), py::arg("coeffs"), py::arg("N"), py::arg("xi") = 0.0);

  m.def(
      "analytic_eigenvalues",
      [](int N) {
        const AnalyticSpectra a = analytic_eigenpairs(Grid(N));
        auto real = [](const EigenPairSet& s) {
          std::vector<double> v;
          for (const auto& x : s.values) v.push_back(x.real());
          return v;
        };
        py::dict d;
        d["Ah"] = real(a.Ah);
        d["M"] = real(a.M);
        d["MinvAh"] = real(a.MinvAh);
        d["vectors_Ah"] = a.Ah.vectors;
        return d;
      },
      py::arg("N"));

  m.def(
      "dense_eigenvalues",
      [](const Eigen::MatrixXd& A) {
        const EigenvalueResult r = dense_eigenvalues(A);
        if (!r.converged) throw NumericalError("QR iteration did not converge");
        return r.values;
      },
      py::arg("A"));

  py::class_<SpectrumReport>(m, "SpectrumReport")
      .def_readonly("scheme", &SpectrumReport::scheme)
      .def_readonly("xi", &SpectrumReport::xi)
      .def_readonly("N", &SpectrumReport::N)
      .def_readonly("eigenvalues", &SpectrumReport::eigenvalues)
      .def_readonly("min_gap", &SpectrumReport::min_gap)
      .def_readonly("top_gap", &SpectrumReport::top_gap)
      .def_readonly("max_real", &SpectrumReport::max_real)
      .def_readonly("spectral_radius", &SpectrumReport::spectral_radius);
  m.def("spectrum_report", [](const OperatorBundle& b) { return spectrum_report(b); },
        py::arg("bundle"));

  py::class_<BeamState>(m, "BeamState")
      .def(py::init([](const Eigen::VectorXd& z, const Eigen::VectorXd& zdot, double t) {
             return BeamState{z, zdot, t};
           }),
           py::arg("z"), py::arg("zdot"), py::arg("t") = 0.0)
      .def_readonly("z", &BeamState::z)
      .def_readonly("zdot", &BeamState::zdot)
      .def_readonly("t", &BeamState::t);

  m.def("make_box_initial", &make_box_initial, py::arg("grid"), py::arg("amplitude") = 1e-3,
        py::arg("a") = 0.25, py::arg("b") = 0.75);
  m.def("make_random_initial", &make_random_initial, py::arg("grid"), py::arg("seed"),
        py::arg("amplitude") = 1.0);
  m.def("discrete_energy", &discrete_energy, py::arg("bundle"), py::arg("state"));

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def_readonly("times", &TrajectoryRecord::times)
      .def_readonly("energies", &TrajectoryRecord::energies)
      .def_readonly("sensor", &TrajectoryRecord::sensor)
      .def_readonly("dt", &TrajectoryRecord::dt)
      .def_readonly("steps", &TrajectoryRecord::steps);
  m.def(
      "simulate",
      [](const OperatorBundle& b, const BeamState& s0, double T, double dt) {
        py::gil_scoped_release release;
        return simulate(b, s0, T, dt);
      },
      py::arg("bundle"), py::arg("initial"), py::arg("T"), py::arg("dt"));

  py::class_<ObservabilityCertificate>(m, "ObservabilityCertificate")
      .def_readonly("integral", &ObservabilityCertificate::integral)
      .def_readonly("E0", &ObservabilityCertificate::E0)
      .def_readonly("theorem_bound", &ObservabilityCertificate::theorem_bound)
      .def_readonly("quadrature_error", &ObservabilityCertificate::quadrature_error)
      .def_readonly("condition_margin", &ObservabilityCertificate::condition_margin)
      .def_readonly("satisfied", &ObservabilityCertificate::satisfied);
  m.def(
      "observability_certificate",
      [](const OperatorBundle& b, const BeamState& s0, double T, double dt) {
        py::gil_scoped_release release;
        return observability_certificate(b, s0, T, dt);
      },
      py::arg("bundle"), py::arg("initial"), py::arg("T"), py::arg("dt"));

  m.def(
      "_run_command",
      [](const std::string& name, const std::string& config_json) {
        const ExperimentConfig cfg = config_from_json(nlohmann::json::parse(config_json));
        CommandResult r;
        {
          py::gil_scoped_release release;
          r = run_command(name, cfg);
        }
        return py::make_tuple(r.summary.dump(), r.exit_code);
      },
      py::arg("name"), py::arg("config_json"));
}
