#include "ntos/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ntos/rootfind.hpp"

namespace ntos {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::optional<LinearLaw> law_of(const ChainParams& p) {
  const bool l_zero = p.lambda_L == 0.0;
  const bool r_zero = p.lambda_R == 0.0;
  try {
    if (l_zero != r_zero) {
      return unidirectional_law(p, l_zero ? ZeroedSide::L : ZeroedSide::R);
    }
    if (!l_zero) return linear_law(p);
  } catch (const std::domain_error&) {
  }
  return std::nullopt;
}

}  // namespace

SweepResult nsweep(const ChainParams& p, int N_min, int N_max) {
  p.validate();
  if (N_min < 2 || N_min >= N_max || N_max > 200) {
    throw std::invalid_argument("nsweep: need 2 <= N_min < N_max <= 200");
  }
  SweepResult sweep;
  sweep.params = p;
  sweep.law = law_of(p);

  std::optional<double> prev_root_ln;  // warm start for the root solver
  for (int N = N_min; N <= N_max; ++N) {
    SweepEntry e;
    e.N = N;
    e.pred_ln_abs =
        sweep.law ? sweep.law->slope * N + sweep.law->intercept : kNaN;
    try {
      const ComplexMatrix H = build_hamiltonian(p, SystemSize{N});
      const double floor = 1e-10 * H.norm();
      std::vector<Complex> ev = eig_dense(H, &e.residual);
      e.e_min = select_emin(ev);
      e.ln_abs_emin = std::log(std::abs(e.e_min));
      e.source = EminSource::dense_eig;
      if (std::abs(e.e_min) < floor) {
        // Dense result untrusted this far below ||H||; switch to the
        // certified extended-precision root of the consistency condition.
        double center = prev_root_ln
                            ? *prev_root_ln + (sweep.law ? sweep.law->slope : 0.0)
                            : (sweep.law ? e.pred_ln_abs : e.ln_abs_emin);
        double halfwidth = prev_root_ln ? 2.0 : 4.0;
        std::optional<EminRoot> root;
        for (int attempt = 0; attempt < 3 && !root; ++attempt) {
          try {
            root = emin_root(p, N, center, halfwidth);
          } catch (const no_root_error&) {
            halfwidth *= 2.0;
          }
        }
        if (!root) throw no_root_error("nsweep: root bracketing failed");
        e.e_min = Complex(root->value, 0.0);
        e.ln_abs_emin = root->ln_abs;
        e.residual = root->residual;
        e.source = EminSource::consistency_root;
        prev_root_ln = root->ln_abs;
      }
    } catch (const std::exception& ex) {
      e.ok = false;
      e.error = ex.what();
      e.e_min = Complex(kNaN, kNaN);
      e.ln_abs_emin = kNaN;
    }
    sweep.entries.push_back(e);
  }
  return sweep;
}

namespace {

struct WindowBounds {
  double ln_upper;
  double ln_lower_dense;
  double ln_lower_root;
};

std::vector<const SweepEntry*> qualifying_points(const SweepResult& sweep,
                                                 const WindowBounds& w) {
  const ChainParams& p = sweep.params;
  // Decay ratio of the sub-dominant boundary solution; entries where the
  // transient has not yet died off bias the fit.
  double ratio;
  if ((p.lambda_L == 0.0) != (p.lambda_R == 0.0)) {
    const double ba = std::abs((p.t1 - p.gamma) / p.t2);
    const double bb = std::abs(p.t2 / (p.t1 + p.gamma));
    ratio = std::min(ba, bb) / std::max(ba, bb);
  } else {
    const double eg = std::sqrt(std::abs((p.t1 - p.gamma) / (p.t1 + p.gamma)));
    ratio = std::min(eg, 1.0 / eg);
    ratio *= ratio;
  }

  std::vector<const SweepEntry*> pts;
  for (const SweepEntry& e : sweep.entries) {
    if (!e.ok || !std::isfinite(e.ln_abs_emin)) continue;
    if (std::pow(ratio, e.N - 1) >= 1e-4) continue;
    if (e.source == EminSource::dense_eig) {
      const double abs_e = std::abs(e.e_min);
      if (std::abs(e.e_min.imag()) >= 1e-6 * abs_e) continue;
      if (e.ln_abs_emin <= w.ln_lower_dense) continue;
    } else {
      if (e.ln_abs_emin <= w.ln_lower_root) continue;
    }
    if (e.ln_abs_emin >= w.ln_upper) continue;
    pts.push_back(&e);
  }
  return pts;
}

FitResult least_squares(const std::vector<const SweepEntry*>& pts) {
  const int n = static_cast<int>(pts.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const SweepEntry* e : pts) {
    const double x = e->N, y = e->ln_abs_emin;
    sx += x; sy += y; sxx += x * x; sxy += x * y; syy += y * y;
  }
  const double det = n * sxx - sx * sx;
  FitResult fit;
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.points_used = n;
  fit.n_lo = pts.front()->N;
  fit.n_hi = pts.back()->N;
  double ss_res = 0;
  const double mean_y = sy / n;
  double ss_tot = 0;
  for (const SweepEntry* e : pts) {
    const double r = e->ln_abs_emin - (fit.slope * e->N + fit.intercept);
    ss_res += r * r;
    ss_tot += (e->ln_abs_emin - mean_y) * (e->ln_abs_emin - mean_y);
  }
  fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace

FitResult fit_linear_regime(const SweepResult& sweep) {
  WindowBounds w;
  w.ln_upper = std::log(1e-3);
  w.ln_lower_dense = std::log(1e-12);
  // Root-sourced points are certified in >= 100-bit arithmetic; their trusted
  // range extends far below the dense floor.
  w.ln_lower_root = -185.0;

  auto pts = qualifying_points(sweep, w);
  if (static_cast<int>(pts.size()) < 6) {
    // A growing |E_min| can saturate before reaching 1e-3 from below the
    // window; widen the cutoff up to a quarter of the saturation level.
    try {
      const SaturationPrediction sat = saturation_prediction(sweep.params);
      w.ln_upper = std::max(w.ln_upper, std::log(sat.E_c / 4.0));
      pts = qualifying_points(sweep, w);
    } catch (const std::domain_error&) {
    }
  }
  if (static_cast<int>(pts.size()) < 6) {
    throw insufficient_data_error(
        "fit_linear_regime: fewer than 6 qualifying points");
  }
  return least_squares(pts);
}

NumericSaturation detect_saturation(const SweepResult& sweep, double im_tol) {
  NumericSaturation out;
  const SweepEntry* prev = nullptr;
  for (const SweepEntry& e : sweep.entries) {
    if (!e.ok) continue;
    const double abs_e = std::abs(e.e_min);
    if (e.source == EminSource::dense_eig && abs_e > 0 &&
        std::abs(e.e_min.imag()) > im_tol * abs_e) {
      out.saturated = true;
      out.N_c_num = e.N;
      out.E_c_num = prev ? std::exp(prev->ln_abs_emin) : abs_e;
      out.criterion = SaturationCriterion::imaginary_onset;
      return out;
    }
    prev = &e;
  }
  // Growth stall: a predicted-positive slope dropping below 10% of the
  // analytic rate marks the shoulder even if E_min stays real.
  if (sweep.law && sweep.law->slope > 0) {
    prev = nullptr;
    for (const SweepEntry& e : sweep.entries) {
      if (!e.ok || !std::isfinite(e.ln_abs_emin)) continue;
      if (prev && e.N == prev->N + 1 &&
          e.ln_abs_emin - prev->ln_abs_emin < 0.1 * sweep.law->slope &&
          std::exp(prev->ln_abs_emin) > 1e-8) {
        out.saturated = true;
        out.N_c_num = e.N;
        out.E_c_num = std::exp(prev->ln_abs_emin);
        out.criterion = SaturationCriterion::growth_stall;
        return out;
      }
      prev = &e;
    }
  }
  return out;  // not saturated
}

namespace {

// Distance (in coupling units) from (t1,t2) to the nearest classification
// boundary, via |f| / ||grad f|| for each boundary curve.
double boundary_distance(double t1, double t2, double gamma) {
  const double sqrt2 = std::sqrt(2.0);
  double d = std::abs(std::abs(t2) - std::abs(t1 + gamma)) / sqrt2;
  d = std::min(d, std::abs(std::abs(t2) - std::abs(t1 - gamma)) / sqrt2);
  const double grad = 2.0 * std::hypot(t1, t2);
  if (grad > 0) {
    d = std::min(d, std::abs(t1 * t1 - t2 * t2 - gamma * gamma) / grad);
    d = std::min(d, std::abs(t1 * t1 - t2 * t2 + gamma * gamma) / grad);
  }
  return d;
}

double cell_value(const PhaseGridSpec& spec, const ChainParams& p) {
  switch (spec.quantity) {
    case PhaseQuantity::slope:
      return linear_law(p).slope;
    case PhaseQuantity::intercept:
      return linear_law(p).intercept;
    case PhaseQuantity::winding:
      return winding_number(p);
    case PhaseQuantity::N_c:
      return saturation_prediction(p).N_c;
    case PhaseQuantity::ln_E_c:
      return std::log(saturation_prediction(p).E_c);
  }
  return kNaN;
}

}  // namespace

PhaseGrid phase_grid(const PhaseGridSpec& spec) {
  if (spec.resolution < 2 || spec.resolution > 512) {
    throw std::invalid_argument("phase_grid: resolution out of range [2, 512]");
  }
  PhaseGrid grid;
  grid.quantity = spec.quantity;
  for (int i = 0; i < spec.resolution; ++i) {
    grid.t1_axis.push_back(spec.t1_lo + (spec.t1_hi - spec.t1_lo) * i /
                                            (spec.resolution - 1));
    grid.t2_axis.push_back(spec.t2_lo + (spec.t2_hi - spec.t2_lo) * i /
                                            (spec.resolution - 1));
  }
  grid.values.assign(spec.resolution * spec.resolution, kNaN);
  grid.mask.assign(spec.resolution * spec.resolution, 1);

  for (int i = 0; i < spec.resolution; ++i) {
    for (int j = 0; j < spec.resolution; ++j) {
      const double t1 = grid.t1_axis[i], t2 = grid.t2_axis[j];
      const std::size_t idx = i * grid.t2_axis.size() + j;
      if (boundary_distance(t1, t2, spec.gamma) < spec.tube_halfwidth) continue;
      const ChainParams p{t1, t2, spec.gamma, spec.lambda_L, spec.lambda_R};
      try {
        const double v = cell_value(spec, p);
        if (std::isfinite(v)) {
          grid.values[idx] = v;
          grid.mask[idx] = 0;
        }
      } catch (const std::exception&) {
        // formula domain / boundary degeneracy: stays masked
      }
    }
  }
  return grid;
}

std::vector<double> bulk_convergence(const ChainParams& p,
                                     const std::vector<int>& N_list,
                                     CurveKind target) {
  if (!std::is_sorted(N_list.begin(), N_list.end())) {
    throw std::invalid_argument("bulk_convergence: N_list must be ascending");
  }
  const BulkCurve curve = bulk_curves(p, target, 2048);
  std::vector<Complex> samples;
  samples.reserve(2 * curve.parameter.size());
  samples.insert(samples.end(), curve.plus_branch.begin(), curve.plus_branch.end());
  samples.insert(samples.end(), curve.minus_branch.begin(), curve.minus_branch.end());

  std::vector<double> out;
  for (int N : N_list) {
    const SpectrumRecord rec = spectrum(p, SystemSize{N});
    // E_min is the defect mode, not a bulk state; drop it and the
    // eigenvalue closest to its conjugate.
    std::vector<Complex> bulk = rec.eigenvalues;
    auto drop_nearest = [&bulk](Complex target_e) {
      auto it = std::min_element(bulk.begin(), bulk.end(),
                                 [&](const Complex& a, const Complex& b) {
                                   return std::abs(a - target_e) <
                                          std::abs(b - target_e);
                                 });
      if (it != bulk.end()) bulk.erase(it);
    };
    drop_nearest(rec.e_min);
    drop_nearest(std::conj(rec.e_min));

    double worst = 0.0;
    for (const Complex& e : bulk) {
      double best = std::numeric_limits<double>::infinity();
      for (const Complex& s : samples) best = std::min(best, std::abs(e - s));
      worst = std::max(worst, best);
    }
    out.push_back(worst);
  }
  return out;
}

}  // namespace ntos
