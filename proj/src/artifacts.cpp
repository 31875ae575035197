#include "ntos/artifacts.hpp"

#include <cmath>

namespace ntos {

namespace {

void echo_params(TableArtifact& a, const ChainParams& p) {
  a.set_meta("tool_version", std::string(kToolVersion));
  a.set_meta("t1", p.t1);
  a.set_meta("t2", p.t2);
  a.set_meta("gamma", p.gamma);
  a.set_meta("lambda_L", p.lambda_L);
  a.set_meta("lambda_R", p.lambda_R);
}

}  // namespace

const char* quantity_name(PhaseQuantity q) {
  switch (q) {
    case PhaseQuantity::slope: return "slope";
    case PhaseQuantity::intercept: return "intercept";
    case PhaseQuantity::winding: return "winding";
    case PhaseQuantity::N_c: return "N_c";
    case PhaseQuantity::ln_E_c: return "ln_E_c";
  }
  return "?";
}

TableArtifact spectrum_artifact(const ChainParams& p,
                                const std::vector<SpectrumRecord>& records) {
  TableArtifact a;
  a.schema_id = "ntos.spectrum.v1";
  a.columns = {"N", "index", "re_e", "im_e", "is_emin"};
  echo_params(a, p);
  for (const SpectrumRecord& rec : records) {
    a.set_meta("max_residual_N" + std::to_string(rec.N), rec.max_residual);
    for (std::size_t i = 0; i < rec.eigenvalues.size(); ++i) {
      const Complex e = rec.eigenvalues[i];
      a.add_row({static_cast<double>(rec.N), static_cast<double>(i), e.real(),
                 e.imag(), e == rec.e_min ? 1.0 : 0.0});
    }
  }
  return a;
}

TableArtifact sweep_artifact(const SweepResult& sweep) {
  TableArtifact a;
  a.schema_id = "ntos.nsweep.v1";
  a.columns = {"N", "re_emin", "im_emin", "ln_abs_emin", "pred_ln_abs"};
  echo_params(a, sweep.params);
  if (sweep.law) {
    a.set_meta("law_slope", sweep.law->slope);
    a.set_meta("law_intercept", sweep.law->intercept);
    a.set_meta("law_s_t", static_cast<double>(sweep.law->s_t));
    a.set_meta("law_s_g", static_cast<double>(sweep.law->s_g));
  }
  int root_sourced = 0;
  for (const SweepEntry& e : sweep.entries) {
    if (e.ok && e.source == EminSource::consistency_root) ++root_sourced;
    if (!e.ok) a.set_meta("error_N" + std::to_string(e.N), e.error);
    a.add_row({static_cast<double>(e.N), e.e_min.real(), e.e_min.imag(),
               e.ln_abs_emin, e.pred_ln_abs});
  }
  a.set_meta("root_sourced_points", static_cast<double>(root_sourced));
  return a;
}

TableArtifact phase_artifact(const PhaseGridSpec& spec, const PhaseGrid& grid) {
  TableArtifact a;
  a.schema_id = "ntos.phase.v1";
  a.columns = {"t1", "t2", "value", "mask"};
  a.set_meta("tool_version", std::string(kToolVersion));
  a.set_meta("quantity", std::string(quantity_name(spec.quantity)));
  a.set_meta("gamma", spec.gamma);
  a.set_meta("lambda_L", spec.lambda_L);
  a.set_meta("lambda_R", spec.lambda_R);
  a.set_meta("resolution", static_cast<double>(spec.resolution));
  a.set_meta("tube_halfwidth", spec.tube_halfwidth);
  for (std::size_t i = 0; i < grid.t1_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.t2_axis.size(); ++j) {
      a.add_row({grid.t1_axis[i], grid.t2_axis[j], grid.value(i, j),
                 grid.masked(i, j) ? 1.0 : 0.0});
    }
  }
  return a;
}

TableArtifact saturation_artifact(const SweepResult& sweep,
                                  const NumericSaturation& numeric,
                                  double im_tol) {
  TableArtifact a;
  a.schema_id = "ntos.saturation.v1";
  a.columns = {"saturated",  "N_c_num",  "E_c_num", "criterion",
               "N_c_pred",   "E_c_pred", "lambert_arg"};
  echo_params(a, sweep.params);
  a.set_meta("im_tol", im_tol);
  a.set_meta("growth_stall_fraction", 0.1);
  double nc_pred = std::nan(""), ec_pred = std::nan(""), arg = std::nan("");
  try {
    const SaturationPrediction pred = saturation_prediction(sweep.params);
    nc_pred = pred.N_c;
    ec_pred = pred.E_c;
    arg = pred.lambert_arg;
  } catch (const std::domain_error& e) {
    a.set_meta("prediction_unavailable", std::string(e.what()));
  }
  a.add_row({numeric.saturated ? 1.0 : 0.0,
             static_cast<double>(numeric.N_c_num), numeric.E_c_num,
             static_cast<double>(numeric.criterion), nc_pred, ec_pred, arg});
  return a;
}

TableArtifact curves_artifact(const ChainParams& p, const BulkCurve& curve) {
  TableArtifact a;
  a.schema_id = "ntos.curves.v1";
  a.columns = {"parameter", "re_plus", "im_plus", "re_minus", "im_minus"};
  echo_params(a, p);
  a.set_meta("kind", curve.kind == CurveKind::PBC ? "PBC" : "GBZ");
  for (std::size_t i = 0; i < curve.parameter.size(); ++i) {
    a.add_row({curve.parameter[i], curve.plus_branch[i].real(),
               curve.plus_branch[i].imag(), curve.minus_branch[i].real(),
               curve.minus_branch[i].imag()});
  }
  return a;
}

}  // namespace ntos
