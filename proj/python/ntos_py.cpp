// Python bindings for the sensor-chain laboratory core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ntos/analytic.hpp"
#include "ntos/eig.hpp"
#include "ntos/experiments.hpp"
#include "ntos/model.hpp"
#include "ntos/rootfind.hpp"

namespace py = pybind11;
using namespace ntos;

namespace {

ChainParams make_params(double t1, double t2, double gamma, double lambda_L,
                        double lambda_R) {
  ChainParams p{t1, t2, gamma, lambda_L, lambda_R};
  p.validate();
  return p;
}

py::array_t<double> grid_values(const PhaseGrid& g) {
  const py::ssize_t rows = static_cast<py::ssize_t>(g.t1_axis.size());
  const py::ssize_t cols = static_cast<py::ssize_t>(g.t2_axis.size());
  py::array_t<double> out({rows, cols});
  std::copy(g.values.begin(), g.values.end(), out.mutable_data());
  return out;
}

py::array_t<bool> grid_mask(const PhaseGrid& g) {
  const py::ssize_t rows = static_cast<py::ssize_t>(g.t1_axis.size());
  const py::ssize_t cols = static_cast<py::ssize_t>(g.t2_axis.size());
  py::array_t<bool> out({rows, cols});
  bool* dst = out.mutable_data();
  for (std::size_t k = 0; k < g.mask.size(); ++k) dst[k] = g.mask[k] != 0;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Numerical core for non-Hermitian terminal-coupled SSH chains";

  py::register_exception<boundary_degenerate_error>(m, "BoundaryDegenerateError",
                                                    PyExc_ValueError);
  py::register_exception<formula_domain_error>(m, "FormulaDomainError",
                                               PyExc_ValueError);
  py::register_exception<no_root_error>(m, "NoRootError", PyExc_RuntimeError);
  py::register_exception<insufficient_data_error>(m, "InsufficientDataError",
                                                  PyExc_RuntimeError);

  py::class_<ChainParams>(m, "ChainParams")
      .def(py::init(&make_params), py::arg("t1"), py::arg("t2"),
           py::arg("gamma"), py::arg("lambda_L") = 0.0,
           py::arg("lambda_R") = 0.0)
      .def_readwrite("t1", &ChainParams::t1)
      .def_readwrite("t2", &ChainParams::t2)
      .def_readwrite("gamma", &ChainParams::gamma)
      .def_readwrite("lambda_L", &ChainParams::lambda_L)
      .def_readwrite("lambda_R", &ChainParams::lambda_R)
      .def("validate", &ChainParams::validate)
      .def("__repr__", [](const ChainParams& p) {
        return "ChainParams(t1=" + std::to_string(p.t1) +
               ", t2=" + std::to_string(p.t2) +
               ", gamma=" + std::to_string(p.gamma) +
               ", lambda_L=" + std::to_string(p.lambda_L) +
               ", lambda_R=" + std::to_string(p.lambda_R) + ")";
      });

  py::enum_<GapClass>(m, "GapClass")
      .value("LG", GapClass::LG)
      .value("PG", GapClass::PG);
  py::enum_<LambdaSide>(m, "LambdaSide")
      .value("L", LambdaSide::L)
      .value("R", LambdaSide::R);
  py::enum_<EminSource>(m, "EminSource")
      .value("dense_eig", EminSource::dense_eig)
      .value("consistency_root", EminSource::consistency_root);
  py::enum_<CurveKind>(m, "CurveKind")
      .value("PBC", CurveKind::PBC)
      .value("GBZ", CurveKind::GBZ);
  py::enum_<ZeroedSide>(m, "ZeroedSide")
      .value("L", ZeroedSide::L)
      .value("R", ZeroedSide::R);
  py::enum_<SaturationBranch>(m, "SaturationBranch")
      .value("beta_lt_1", SaturationBranch::beta_lt_1)
      .value("beta_gt_1", SaturationBranch::beta_gt_1);
  py::enum_<SaturationCriterion>(m, "SaturationCriterion")
      .value("imaginary_onset", SaturationCriterion::imaginary_onset)
      .value("growth_stall", SaturationCriterion::growth_stall);
  py::enum_<PhaseQuantity>(m, "PhaseQuantity")
      .value("slope", PhaseQuantity::slope)
      .value("intercept", PhaseQuantity::intercept)
      .value("winding", PhaseQuantity::winding)
      .value("N_c", PhaseQuantity::N_c)
      .value("ln_E_c", PhaseQuantity::ln_E_c);

  py::class_<TopologySigns>(m, "TopologySigns")
      .def_readonly("cls", &TopologySigns::cls)
      .def_readonly("W", &TopologySigns::W)
      .def_readonly("s_t", &TopologySigns::s_t)
      .def_readonly("s_g", &TopologySigns::s_g)
      .def_readonly("lambda_selected", &TopologySigns::lambda_selected)
      .def_readonly("g", &TopologySigns::g)
      .def_readonly("exp_g", &TopologySigns::exp_g);

  py::class_<BetaPair>(m, "BetaPair")
      .def_readonly("beta1", &BetaPair::beta1)
      .def_readonly("beta2", &BetaPair::beta2)
      .def_readonly("degenerate", &BetaPair::degenerate);

  py::class_<SpectrumRecord>(m, "SpectrumRecord")
      .def_readonly("N", &SpectrumRecord::N)
      .def_readonly("eigenvalues", &SpectrumRecord::eigenvalues)
      .def_readonly("e_min", &SpectrumRecord::e_min)
      .def_readonly("e_min_source", &SpectrumRecord::e_min_source)
      .def_readonly("max_residual", &SpectrumRecord::max_residual);

  py::class_<LinearLaw>(m, "LinearLaw")
      .def_readonly("slope", &LinearLaw::slope)
      .def_readonly("intercept", &LinearLaw::intercept)
      .def_readonly("s_t", &LinearLaw::s_t)
      .def_readonly("s_g", &LinearLaw::s_g)
      .def_readonly("lambda_used", &LinearLaw::lambda_used);

  py::class_<SaturationPrediction>(m, "SaturationPrediction")
      .def_readonly("E_c", &SaturationPrediction::E_c)
      .def_readonly("N_c", &SaturationPrediction::N_c)
      .def_readonly("branch", &SaturationPrediction::branch)
      .def_readonly("lambert_arg", &SaturationPrediction::lambert_arg);

  py::class_<BulkCurve>(m, "BulkCurve")
      .def_readonly("kind", &BulkCurve::kind)
      .def_readonly("parameter", &BulkCurve::parameter)
      .def_readonly("plus_branch", &BulkCurve::plus_branch)
      .def_readonly("minus_branch", &BulkCurve::minus_branch);

  py::class_<EminRoot>(m, "EminRoot")
      .def_readonly("value", &EminRoot::value)
      .def_readonly("ln_abs", &EminRoot::ln_abs)
      .def_readonly("sign", &EminRoot::sign)
      .def_readonly("residual", &EminRoot::residual);

  py::class_<SweepEntry>(m, "SweepEntry")
      .def_readonly("N", &SweepEntry::N)
      .def_readonly("e_min", &SweepEntry::e_min)
      .def_readonly("ln_abs_emin", &SweepEntry::ln_abs_emin)
      .def_readonly("source", &SweepEntry::source)
      .def_readonly("residual", &SweepEntry::residual)
      .def_readonly("pred_ln_abs", &SweepEntry::pred_ln_abs)
      .def_readonly("ok", &SweepEntry::ok)
      .def_readonly("error", &SweepEntry::error);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("params", &SweepResult::params)
      .def_readonly("entries", &SweepResult::entries)
      .def_property_readonly("law", [](const SweepResult& s) {
        return s.law ? py::cast(*s.law) : py::none().cast<py::object>();
      });

  py::class_<FitResult>(m, "FitResult")
      .def_readonly("slope", &FitResult::slope)
      .def_readonly("intercept", &FitResult::intercept)
      .def_readonly("n_lo", &FitResult::n_lo)
      .def_readonly("n_hi", &FitResult::n_hi)
      .def_readonly("r2", &FitResult::r2)
      .def_readonly("points_used", &FitResult::points_used);

  py::class_<NumericSaturation>(m, "NumericSaturation")
      .def_readonly("saturated", &NumericSaturation::saturated)
      .def_readonly("N_c_num", &NumericSaturation::N_c_num)
      .def_readonly("E_c_num", &NumericSaturation::E_c_num)
      .def_readonly("criterion", &NumericSaturation::criterion);

  py::class_<PhaseGridSpec>(m, "PhaseGridSpec")
      .def(py::init<>())
      .def_readwrite("t1_lo", &PhaseGridSpec::t1_lo)
      .def_readwrite("t1_hi", &PhaseGridSpec::t1_hi)
      .def_readwrite("t2_lo", &PhaseGridSpec::t2_lo)
      .def_readwrite("t2_hi", &PhaseGridSpec::t2_hi)
      .def_readwrite("resolution", &PhaseGridSpec::resolution)
      .def_readwrite("gamma", &PhaseGridSpec::gamma)
      .def_readwrite("lambda_L", &PhaseGridSpec::lambda_L)
      .def_readwrite("lambda_R", &PhaseGridSpec::lambda_R)
      .def_readwrite("quantity", &PhaseGridSpec::quantity)
      .def_readwrite("tube_halfwidth", &PhaseGridSpec::tube_halfwidth);

  py::class_<PhaseGrid>(m, "PhaseGrid")
      .def_readonly("t1_axis", &PhaseGrid::t1_axis)
      .def_readonly("t2_axis", &PhaseGrid::t2_axis)
      .def_readonly("quantity", &PhaseGrid::quantity)
      .def_property_readonly("values", &grid_values)
      .def_property_readonly("mask", &grid_mask);

  m.def("build_hamiltonian",
        [](const ChainParams& p, int N) {
          return build_hamiltonian(p, SystemSize{N});
        },
        py::arg("params"), py::arg("N"),
        "Dense (2N-1) x (2N-1) chain Hamiltonian");
  m.def("classify_topology", &classify_topology, py::arg("params"));
  m.def("winding_number", &winding_number, py::arg("params"),
        py::arg("resolution") = 256);
  m.def("beta_exact", &beta_exact, py::arg("params"), py::arg("E"));
  m.def("theta_of", &theta_of, py::arg("params"), py::arg("E"));
  m.def("spectrum",
        [](const ChainParams& p, int N) { return spectrum(p, SystemSize{N}); },
        py::arg("params"), py::arg("N"));
  m.def("linear_law", &linear_law, py::arg("params"));
  m.def("unidirectional_law", &unidirectional_law, py::arg("params"),
        py::arg("zeroed_side"));
  m.def("zero_limit_condition", &zero_limit_condition, py::arg("params"));
  m.def("lambert_w0", &lambert_w0, py::arg("x"));
  m.def("saturation_prediction", &saturation_prediction, py::arg("params"));
  m.def("bulk_curves", &bulk_curves, py::arg("params"), py::arg("kind"),
        py::arg("samples") = 512);
  m.def("emin_root", &emin_root, py::arg("params"), py::arg("N"),
        py::arg("ln_center"), py::arg("ln_halfwidth") = 4.0,
        py::call_guard<py::gil_scoped_release>());
  m.def("nsweep", &nsweep, py::arg("params"), py::arg("n_min"),
        py::arg("n_max"), py::call_guard<py::gil_scoped_release>());
  m.def("fit_linear_regime", &fit_linear_regime, py::arg("sweep"));
  m.def("detect_saturation", &detect_saturation, py::arg("sweep"),
        py::arg("im_tol") = 0.01);
  m.def("phase_grid", &phase_grid, py::arg("spec"),
        py::call_guard<py::gil_scoped_release>());
  m.def("bulk_convergence", &bulk_convergence, py::arg("params"),
        py::arg("n_list"), py::arg("target"),
        py::call_guard<py::gil_scoped_release>());
}
