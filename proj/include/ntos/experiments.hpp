#ifndef NTOS_EXPERIMENTS_HPP
#define NTOS_EXPERIMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ntos/analytic.hpp"
#include "ntos/eig.hpp"

namespace ntos {

class insufficient_data_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One N of a sweep. ln_abs_emin is authoritative: for entries sourced from
/// the extended-precision root solver the double `e_min` may underflow.
struct SweepEntry {
  int N = 0;
  Complex e_min;
  double ln_abs_emin = 0.0;
  EminSource source = EminSource::dense_eig;
  double residual = 0.0;  // eig certification or root residual
  double pred_ln_abs = 0.0;  // analytic linear-law prediction (NaN if n/a)
  bool ok = true;
  std::string error;
};

struct SweepResult {
  ChainParams params;
  std::vector<SweepEntry> entries;  // strictly increasing N
  std::optional<LinearLaw> law;     // absent when the closed form degenerates
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  int n_lo = 0, n_hi = 0;  // window actually used
  double r2 = 0.0;
  int points_used = 0;
};

enum class SaturationCriterion { imaginary_onset, growth_stall };

struct NumericSaturation {
  bool saturated = false;
  int N_c_num = 0;
  double E_c_num = 0.0;  // |E_min| at N_c_num - 1
  SaturationCriterion criterion = SaturationCriterion::imaginary_onset;
};

enum class PhaseQuantity { slope, intercept, winding, N_c, ln_E_c };

struct PhaseGridSpec {
  double t1_lo = -4.0, t1_hi = 4.0;
  double t2_lo = -4.0, t2_hi = 4.0;
  int resolution = 161;  // points per axis
  double gamma = 1.0;
  double lambda_L = 1e-5, lambda_R = 1e-5;
  PhaseQuantity quantity = PhaseQuantity::slope;
  double tube_halfwidth = 0.05;  // exclusion distance around boundary lines
};

struct PhaseGrid {
  std::vector<double> t1_axis, t2_axis;
  PhaseQuantity quantity = PhaseQuantity::slope;
  std::vector<double> values;        // row-major, t1-major; NaN where masked
  std::vector<std::uint8_t> mask;    // 1 = excluded (tube or domain error)
  double value(int i, int j) const { return values[i * t2_axis.size() + j]; }
  bool masked(int i, int j) const { return mask[i * t2_axis.size() + j] != 0; }
};

// Per-N spectrum and E_min over [N_min, N_max]. Below the dense precision
// floor (|E_min| < 1e-10 ||H||_F) the E_min source switches to the
// extended-precision consistency-root solver; solver failures at single N
// produce error-marked entries rather than aborting the sweep.
SweepResult nsweep(const ChainParams& p, int N_min, int N_max);

// Least-squares line through (N, ln|E_min|) over the qualifying window:
// relatively real E_min, |E_min| below an upper cutoff and above the
// trusted floor of its source, and past the boundary transient.
FitResult fit_linear_regime(const SweepResult& sweep);

// First N whose E_min has a relative imaginary part above im_tol; falls
// back to a growth-stall criterion when the sweep has an analytic slope.
NumericSaturation detect_saturation(const SweepResult& sweep, double im_tol = 0.01);

PhaseGrid phase_grid(const PhaseGridSpec& spec);

// Directed distance: max over bulk eigenvalues (E_min and its conjugate
// partner excluded) of the min distance to 2048 samples of the target curve.
std::vector<double> bulk_convergence(const ChainParams& p,
                                     const std::vector<int>& N_list,
                                     CurveKind target);

}  // namespace ntos

#endif
