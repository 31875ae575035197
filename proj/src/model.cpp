#include "ntos/model.hpp"

#include <cmath>
#include <numbers>

namespace ntos {

void ChainParams::validate() const {
  for (double v : {t1, t2, gamma, lambda_L, lambda_R}) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("ChainParams: all couplings must be finite");
    }
  }
  if (std::abs(t1) == std::abs(gamma)) {
    throw std::invalid_argument("ChainParams: |t1| == |gamma| makes g singular");
  }
}

bool ChainParams::g_is_real() const {
  return (t1 - gamma) / (t1 + gamma) > 0.0;
}

void SystemSize::validate() const {
  if (N < 2) throw std::invalid_argument("SystemSize: N must be >= 2");
}

ComplexMatrix build_hamiltonian(const ChainParams& p, const SystemSize& size) {
  size.validate();
  const int N = size.N;
  ComplexMatrix H = ComplexMatrix::Zero(2 * N - 1, 2 * N - 1);
  // A_n at index 2n-2, B_n at 2n-1 (1-based n).
  for (int n = 0; n < N - 1; ++n) {
    const int A = 2 * n, B = 2 * n + 1, A_next = 2 * n + 2;
    H(A, B) = p.t1 + p.gamma;
    H(B, A) = p.t1 - p.gamma;
    H(A_next, B) = p.t2;
    H(B, A_next) = p.t2;
  }
  H(0, 2 * N - 2) = p.lambda_R;
  H(2 * N - 2, 0) = p.lambda_L;
  return H;
}

TopologySigns classify_topology(const ChainParams& p) {
  p.validate();
  if (p.t2 == 0.0) throw std::invalid_argument("classify_topology: t2 == 0");
  if (p.t1 + p.gamma == 0.0) {
    throw std::invalid_argument("classify_topology: t1 + gamma == 0");
  }

  const double r1 = std::abs(p.t2 / (p.t1 + p.gamma));
  const double r2 = std::abs((p.t1 - p.gamma) / p.t2);
  if (r1 == 1.0 || r2 == 1.0) {
    throw boundary_degenerate_error("parameters on a |t2| = |t1 +/- gamma| boundary");
  }

  TopologySigns s;
  if (r1 < 1.0 && r2 < 1.0) {
    s.cls = GapClass::PG;
    s.W = +1;
  } else if (r1 > 1.0 && r2 > 1.0) {
    s.cls = GapClass::PG;
    s.W = -1;
  } else {
    s.cls = GapClass::LG;
    s.W = 0;
  }

  const double st_arg = r2 - r1;
  if (st_arg == 0.0) {
    throw boundary_degenerate_error("s_t degenerate: |beta_a(0)| == |beta_b(0)|");
  }
  s.s_t = st_arg > 0.0 ? +1 : -1;

  if (!p.g_is_real()) {
    throw std::domain_error(
        "classify_topology: (t1-gamma)/(t1+gamma) < 0, g is complex; "
        "restrict to |t1| > |gamma|");
  }
  s.exp_g = std::sqrt((p.t1 - p.gamma) / (p.t1 + p.gamma));
  s.g = std::log(s.exp_g);
  if (s.g == 0.0) {
    throw boundary_degenerate_error("s_g degenerate: gamma == 0");
  }
  s.s_g = s.g > 0.0 ? +1 : -1;
  s.lambda_selected = s.s_g < 0 ? LambdaSide::L : LambdaSide::R;
  return s;
}

namespace {

Complex det_hk(const ChainParams& p, double k) {
  const Complex ephase(std::cos(k), std::sin(k));
  return ((p.t1 + p.gamma) + p.t2 / ephase) * ((p.t1 - p.gamma) + p.t2 * ephase);
}

}  // namespace

int winding_number(const ChainParams& p, int resolution) {
  p.validate();
  if (resolution < 64) {
    throw std::invalid_argument("winding_number: resolution must be >= 64");
  }
  constexpr double pi = std::numbers::pi;
  int n = resolution;
  for (int refine = 0; refine < 16; ++refine) {
    double total = 0.0;
    double prev_arg = std::arg(det_hk(p, -pi));
    bool ok = true;
    for (int i = 1; i <= n; ++i) {
      const double k = -pi + 2.0 * pi * i / n;
      const Complex d = det_hk(p, k);
      if (std::abs(d) < 1e-12) {
        throw gap_closed_error("winding_number: det H(k) ~ 0, point gap closed");
      }
      double darg = std::arg(d) - prev_arg;
      if (darg > pi) darg -= 2.0 * pi;
      if (darg < -pi) darg += 2.0 * pi;
      if (std::abs(darg) >= pi / 2.0) {
        ok = false;
        break;
      }
      total += darg;
      prev_arg = std::arg(d);
    }
    if (ok) return static_cast<int>(std::lround(total / (2.0 * pi)));
    n *= 2;
  }
  throw std::runtime_error("winding_number: failed to resolve phase increments");
}

BetaPair beta_exact(const ChainParams& p, Complex E) {
  p.validate();
  if (p.t2 * (p.t1 + p.gamma) == 0.0) {
    throw std::invalid_argument("beta_exact: t2 (t1 + gamma) == 0");
  }
  const Complex a = p.t2 * (p.t1 + p.gamma);
  const Complex b = p.t1 * p.t1 - p.gamma * p.gamma + p.t2 * p.t2 - E * E;
  const Complex c = p.t2 * (p.t1 - p.gamma);
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  // Avoid cancellation: compute the larger-magnitude numerator first.
  const Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -(b + disc) / 2.0
                                                            : -(b - disc) / 2.0;
  Complex r_plus = (-b + disc) / (2.0 * a);
  Complex r1 = q / a;          // root matching the stable numerator
  Complex r2 = c / q;          // Vieta partner
  if (std::abs(r1) > std::abs(r2)) std::swap(r1, r2);

  BetaPair out;
  out.beta1 = r1;
  out.beta2 = r2;
  out.degenerate = std::abs(r1 - r2) < 1e-10 * std::abs(r2);
  out.assignment = std::abs(r_plus - r1) <= std::abs(r_plus - r2)
                       ? BetaAssignment::plus_is_small
                       : BetaAssignment::minus_is_small;
  const Complex beta_a0 = -(p.t1 - p.gamma) / p.t2;
  const Complex beta_b0 = -p.t2 / (p.t1 + p.gamma);
  out.taylor_match = std::abs(r1 - beta_a0) <= std::abs(r1 - beta_b0)
                         ? TaylorMatch::a_is_1
                         : TaylorMatch::b_is_1;
  return out;
}

BetaTaylor beta_taylor(const ChainParams& p, Complex E) {
  p.validate();
  const double denom = p.t1 * p.t1 - p.t2 * p.t2 - p.gamma * p.gamma;
  if (denom == 0.0) {
    throw std::domain_error("beta_taylor: t1^2 - t2^2 - gamma^2 == 0, expansion singular");
  }
  BetaTaylor t;
  t.beta_a = -(p.t1 - p.gamma) / p.t2 + E * E / denom;
  t.beta_b = -p.t2 / (p.t1 + p.gamma) - E * E / denom;
  return t;
}

Complex chi_component(const ChainParams& p, Complex E, Complex beta) {
  const Complex den = p.t2 + beta * (p.t1 + p.gamma);
  if (std::abs(den) < 1e-14) {
    throw std::domain_error("chi_component: t2 + beta (t1 + gamma) ~ 0 (pole)");
  }
  return E * beta / den;
}

Complex theta_of(const ChainParams& p, Complex E) {
  const BetaPair bp = beta_exact(p, E);
  if (std::abs(bp.beta1) == 0.0) {
    throw std::domain_error("theta_of: beta1 == 0");
  }
  // exp(g) = principal sqrt of the (E-independent) product beta1 beta2;
  // all E dependence sits in theta.
  const Complex exp_g = std::sqrt(bp.beta1 * bp.beta2);
  const Complex eith = bp.beta2 / exp_g;  // |e^{i theta}| >= 1 by ordering
  return Complex(0, -1) * std::log(eith);
}

}  // namespace ntos
