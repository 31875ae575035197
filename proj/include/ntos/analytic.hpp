#ifndef NTOS_ANALYTIC_HPP
#define NTOS_ANALYTIC_HPP

#include <vector>

#include "ntos/model.hpp"

namespace ntos {

class formula_domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Analytic slope and intercept of ln|E_min| vs N in the linear regime.
struct LinearLaw {
  double slope = 0.0;      // per unit N
  double intercept = 0.0;  // value of ln|E_min| extrapolated to N = 0
  int s_t = +1;
  int s_g = -1;
  double lambda_used = 0.0;
};

enum class SaturationBranch { beta_lt_1, beta_gt_1 };

/// Closed-form saturation point of the PG-topology growth.
struct SaturationPrediction {
  double E_c = 0.0;  // modulus of the critical eigenvalue
  double N_c = 0.0;  // critical system size (real-valued prediction)
  SaturationBranch branch = SaturationBranch::beta_lt_1;
  double lambert_arg = 0.0;
};

/// Coefficients of the reduced consistency form exp((b0 + b2 E^2) mu) = c0 lambda / E.
struct LnBeta2Taylor {
  double b0 = 0.0;  // ln |beta2| at E = 0
  double b2 = 0.0;  // curvature coefficient used by the closed forms
  double c0 = 0.0;  // lambda-free coefficient of the dominant 1/E term
};

enum class CurveKind { PBC, GBZ };

/// Sampled bulk-limit spectral curve (both +/- energy branches).
struct BulkCurve {
  CurveKind kind = CurveKind::PBC;
  std::vector<double> parameter;  // k or theta, uniform in [-pi, pi)
  std::vector<Complex> plus_branch;
  std::vector<Complex> minus_branch;
};

enum class ZeroedSide { L, R };

// Signs s_t, s_g and the selected terminal coupling (same data as
// classify_topology; kept as the analytic-module entry point).
TopologySigns topology_signs(const ChainParams& p);

LinearLaw linear_law(const ChainParams& p);

// True iff |E_min| -> 0 as N -> infinity (exactly the LG condition).
bool zero_limit_condition(const ChainParams& p);

// Principal branch of w e^w = x for x >= -1/e.
double lambert_w0(double x);

SaturationPrediction saturation_prediction(const ChainParams& p);

LnBeta2Taylor taylor_ln_beta2(const ChainParams& p);

BulkCurve bulk_curves(const ChainParams& p, CurveKind kind, int samples);

// Linear law under unidirectional coupling (exactly one lambda nonzero);
// s_g is replaced by -1 (zeroed R) or +1 (zeroed L).
LinearLaw unidirectional_law(const ChainParams& p, ZeroedSide zeroed_side);

}  // namespace ntos

#endif
