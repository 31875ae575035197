#include "ntos/analytic.hpp"

#include <cmath>
#include <numbers>

namespace ntos {

TopologySigns topology_signs(const ChainParams& p) { return classify_topology(p); }

namespace {

double selected_lambda(const ChainParams& p, int s_g) {
  return s_g < 0 ? p.lambda_L : p.lambda_R;
}

LinearLaw law_for_signs(const ChainParams& p, int s_t, int s_g, double lambda) {
  if (lambda == 0.0) {
    throw formula_domain_error("linear law: selected terminal coupling is zero");
  }
  const double num = p.t1 * p.t1 - p.gamma * p.gamma - p.t2 * p.t2;
  if (num == 0.0) {
    throw formula_domain_error("linear law: t1^2 - gamma^2 - t2^2 == 0, intercept diverges");
  }
  LinearLaw law;
  law.s_t = s_t;
  law.s_g = s_g;
  law.lambda_used = lambda;
  law.slope = s_t * std::log(std::abs(p.t2 / (p.t1 + s_t * s_g * p.gamma)));
  law.intercept = std::log(std::abs(lambda)) +
                  std::log(std::abs(num / (p.t2 * (p.t1 - s_g * p.gamma))));
  return law;
}

}  // namespace

LinearLaw linear_law(const ChainParams& p) {
  const TopologySigns s = topology_signs(p);
  return law_for_signs(p, s.s_t, s.s_g, selected_lambda(p, s.s_g));
}

LinearLaw unidirectional_law(const ChainParams& p, ZeroedSide zeroed_side) {
  const bool l_zero = p.lambda_L == 0.0;
  const bool r_zero = p.lambda_R == 0.0;
  if (l_zero == r_zero) {
    throw std::invalid_argument("unidirectional_law: exactly one lambda must be zero");
  }
  if ((zeroed_side == ZeroedSide::L) != l_zero) {
    throw std::invalid_argument("unidirectional_law: zeroed_side does not match params");
  }
  const TopologySigns s = topology_signs(p);
  const int s_g_eff = zeroed_side == ZeroedSide::R ? -1 : +1;
  const double lambda = zeroed_side == ZeroedSide::R ? p.lambda_L : p.lambda_R;
  return law_for_signs(p, s.s_t, s_g_eff, lambda);
}

bool zero_limit_condition(const ChainParams& p) {
  p.validate();
  const double ba = std::abs((p.t1 - p.gamma) / p.t2);
  const double bb = std::abs(p.t2 / (p.t1 + p.gamma));
  if (ba == 1.0 || bb == 1.0) {
    throw boundary_degenerate_error("zero_limit_condition: |beta(0)| == 1");
  }
  return (ba < 1.0) != (bb < 1.0);
}

double lambert_w0(double x) {
  constexpr double inv_e = 0.36787944117144233;
  if (!(x >= -inv_e)) {
    throw std::domain_error("lambert_w0: x < -1/e");
  }
  if (x == 0.0) return 0.0;

  double w;
  if (x < -inv_e + 1e-3) {
    // Series around the branch point.
    const double q = std::sqrt(std::max(0.0, 2.0 * (std::exp(1.0) * x + 1.0)));
    w = -1.0 + q - q * q / 3.0 + 11.0 / 72.0 * q * q * q;
  } else if (x < 1.0) {
    w = x * (1.0 - x + 1.5 * x * x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(l1 > 1.0 ? l1 : 1.0);
    w = l1 - l2 + (l1 > 1.0 ? l2 / l1 : 0.0);
  }
  for (int i = 0; i < 64; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double wp1 = w + 1.0;
    if (std::abs(wp1) < 1e-12) break;  // branch point: series value is final
    const double step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
    w -= step;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

namespace {

// Moduli of the two non-Bloch factors at E = 0.
void beta0_moduli(const ChainParams& p, double* small, double* large) {
  const double ba = std::abs((p.t1 - p.gamma) / p.t2);
  const double bb = std::abs(p.t2 / (p.t1 + p.gamma));
  *small = std::min(ba, bb);
  *large = std::max(ba, bb);
}

}  // namespace

LnBeta2Taylor taylor_ln_beta2(const ChainParams& p) {
  const TopologySigns s = topology_signs(p);
  double b_small, b_large;
  beta0_moduli(p, &b_small, &b_large);
  if (s.cls != GapClass::PG || b_large >= 1.0) {
    throw formula_domain_error("taylor_ln_beta2: requires PG with |beta1|<|beta2|<1");
  }
  const double A = std::abs(p.t1 * p.t1 - p.t2 * p.t2 - p.gamma * p.gamma);
  if (A == 0.0) throw formula_domain_error("taylor_ln_beta2: expansion singular");
  // Signed value of the larger-modulus root at E = 0.
  const double ba = -(p.t1 - p.gamma) / p.t2;
  const double bb = -p.t2 / (p.t1 + p.gamma);
  const double beta2_0 = std::abs(ba) >= std::abs(bb) ? ba : bb;

  LnBeta2Taylor t;
  t.b0 = std::log(b_large);
  // Exact derivative d(ln beta2)/d(E^2) at E = 0, from implicit
  // differentiation of the quadratic: 1/(2 a beta2(0) + b(0)). Its
  // magnitude is always 1/|t1^2 - t2^2 - gamma^2|.
  t.b2 = 1.0 / (2.0 * p.t2 * (p.t1 + p.gamma) * beta2_0 +
                (p.t1 * p.t1 - p.gamma * p.gamma + p.t2 * p.t2));
  t.c0 = A / std::abs(p.t2 * (p.t1 - p.gamma));
  return t;
}

SaturationPrediction saturation_prediction(const ChainParams& p) {
  const TopologySigns s = topology_signs(p);
  if (s.cls != GapClass::PG) {
    throw formula_domain_error("saturation_prediction: no saturation in LG topology");
  }
  double b_small, b_large;
  beta0_moduli(p, &b_small, &b_large);
  const double A = std::abs(p.t1 * p.t1 - p.t2 * p.t2 - p.gamma * p.gamma);
  if (A == 0.0) {
    throw formula_domain_error("saturation_prediction: t1^2 - t2^2 - gamma^2 == 0");
  }

  SaturationPrediction out;
  double b0_abs, c0_lambda;
  if (b_large < 1.0) {
    out.branch = SaturationBranch::beta_lt_1;
    b0_abs = -std::log(b_large);  // |ln |beta2(0)||
    c0_lambda = A / std::abs(p.t2 * (p.t1 - p.gamma)) * std::abs(p.lambda_L);
  } else {
    out.branch = SaturationBranch::beta_gt_1;
    b0_abs = std::log(b_small);  // ln |beta1(0)| > 0
    c0_lambda = A / std::abs(p.t1 * p.t1 - p.gamma * p.gamma) * std::abs(p.lambda_R);
  }
  if (!(b0_abs > 0.0) || !(c0_lambda > 0.0)) {
    throw formula_domain_error("saturation_prediction: Lambert argument not positive");
  }
  out.lambert_arg = b0_abs * A / (std::numbers::e * c0_lambda * c0_lambda);
  const double w = lambert_w0(out.lambert_arg);
  if (!(w > 0.0)) {
    throw formula_domain_error("saturation_prediction: Lambert value not positive");
  }
  out.E_c = std::sqrt(b0_abs * A / w);
  const double mu_c = A / (2.0 * out.E_c * out.E_c);
  out.N_c = (out.branch == SaturationBranch::beta_lt_1 ? 2.0 : 1.0) + mu_c;
  return out;
}

BulkCurve bulk_curves(const ChainParams& p, CurveKind kind, int samples) {
  p.validate();
  if (samples < 16) throw std::invalid_argument("bulk_curves: samples must be >= 16");
  BulkCurve c;
  c.kind = kind;
  c.parameter.reserve(samples);
  c.plus_branch.reserve(samples);
  c.minus_branch.reserve(samples);
  double radius = 1.0;
  if (kind == CurveKind::GBZ) {
    if (!p.g_is_real()) {
      throw std::domain_error("bulk_curves: GBZ radius undefined for |t1| < |gamma|");
    }
    radius = std::sqrt((p.t1 - p.gamma) / (p.t1 + p.gamma));
  }
  constexpr double pi = std::numbers::pi;
  for (int i = 0; i < samples; ++i) {
    const double a = -pi + 2.0 * pi * i / samples;
    const Complex beta = radius * Complex(std::cos(a), std::sin(a));
    const Complex e2 =
        ((p.t1 + p.gamma) + p.t2 / beta) * ((p.t1 - p.gamma) + p.t2 * beta);
    const Complex e = std::sqrt(e2);
    c.parameter.push_back(a);
    c.plus_branch.push_back(e);
    c.minus_branch.push_back(-e);
  }
  return c;
}

}  // namespace ntos
