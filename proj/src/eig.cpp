#include "ntos/eig.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace ntos {

std::vector<Complex> eig_dense(const ComplexMatrix& H, double* max_residual) {
  if (H.rows() != H.cols()) throw std::invalid_argument("eig_dense: matrix not square");
  if (H.rows() > 1000) throw std::invalid_argument("eig_dense: dim > 1000");

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(H, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw solver_failure_error("eig_dense: QR iteration did not converge");
  }
  const double h_norm = H.norm();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < H.rows(); ++i) {
    const auto v = solver.eigenvectors().col(i);
    const double r = (H * v - solver.eigenvalues()(i) * v).norm() / h_norm;
    worst = std::max(worst, r);
  }
  if (worst > 1e-8) {
    throw solver_failure_error("eig_dense: residual certification failed, max r = " +
                               std::to_string(worst));
  }
  if (max_residual) *max_residual = worst;
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

Complex select_emin(const std::vector<Complex>& eigenvalues) {
  if (eigenvalues.empty()) throw std::invalid_argument("select_emin: empty list");
  Complex best = eigenvalues.front();
  for (const Complex& e : eigenvalues) {
    const double d = std::abs(e) - std::abs(best);
    if (d < -1e-12 * std::abs(best)) {
      best = e;
    } else if (std::abs(d) <= 1e-12 * std::abs(best)) {
      // Tie: prefer Im >= 0, then Re >= 0.
      auto rank = [](const Complex& z) {
        return (z.imag() >= 0.0 ? 2 : 0) + (z.real() >= 0.0 ? 1 : 0);
      };
      if (rank(e) > rank(best)) best = e;
    }
  }
  return best;
}

SpectrumRecord spectrum(const ChainParams& p, const SystemSize& size) {
  SpectrumRecord rec;
  rec.N = size.N;
  rec.eigenvalues = eig_dense(build_hamiltonian(p, size), &rec.max_residual);
  rec.e_min = select_emin(rec.eigenvalues);
  rec.e_min_source = EminSource::dense_eig;
  return rec;
}

namespace {

Complex cpow_int(Complex b, int n) {
  Complex r = 1.0;
  Complex x = b;
  for (int k = n; k > 0; k >>= 1) {
    if (k & 1) r *= x;
    x *= x;
  }
  return r;
}

}  // namespace

ConsistencyPoint consistency_point(const ChainParams& p, int N, Complex E) {
  if (N < 2) throw std::invalid_argument("consistency_point: N < 2");
  const BetaPair bp = beta_exact(p, E);
  if (bp.degenerate) {
    throw std::domain_error("consistency_point: degenerate beta pair");
  }
  const Complex b1 = bp.beta1, b2 = bp.beta2;
  const double t1g = p.t1 + p.gamma;
  const Complex P1 = p.t2 + b1 * t1g;
  const Complex P2 = p.t2 + b2 * t1g;
  const Complex b1N = cpow_int(b1, N);
  const Complex b2N = cpow_int(b2, N);

  const Complex n1 = b1 * (P1 * p.lambda_L - E * b1N * t1g);
  const Complex d1 = b2 * (P2 * p.lambda_L - E * b2N * t1g);
  const Complex n2 = E * p.t2 * b1 - b1N * P1 * p.lambda_R;
  const Complex d2 = E * p.t2 * b2 - b2N * P2 * p.lambda_R;

  const Complex exp_g = std::sqrt(b1 * b2);
  const Complex g = std::log(exp_g);
  const Complex theta = Complex(0, -1) * std::log(b2 / exp_g);
  const Complex lam2 = Complex(p.lambda_L * p.lambda_R, 0.0);
  const Complex den = E * E - lam2;

  // Cross-multiplied Eq.-(10) route, rescaled into the trig normalization:
  //   n1 d2 - n2 d1 = 2i t2 (t1+gamma) (E^2 - lL lR) e^{g(N+2)} D_trig.
  const Complex scale =
      Complex(0, 2) * p.t2 * t1g * den * std::exp(g * static_cast<double>(N + 2));

  ConsistencyPoint cp;
  cp.E = E;
  cp.N = N;
  cp.D_full = (n1 * d2 - n2 * d1) / scale;
  cp.residual_full = std::abs(n1 * d2 - n2 * d1) /
                     std::max(std::abs(n1 * d2), std::abs(n2 * d1));

  const Complex t0 = -E * (std::exp(-g * static_cast<double>(N - 1)) * p.lambda_L +
                           std::exp(g * static_cast<double>(N - 1)) * p.lambda_R) /
                     den * std::sin(theta);
  const Complex t1_ = -lam2 / den * std::sin(static_cast<double>(N - 2) * theta);
  const Complex t2_ = -(p.t2 / (exp_g * t1g) + exp_g * t1g / p.t2) * lam2 / den *
                      std::sin(static_cast<double>(N - 1) * theta);
  const Complex t3 = std::sin(static_cast<double>(N) * theta);
  cp.D_trig = t0 + t1_ + t2_ + t3;
  cp.residual_trig =
      std::abs(cp.D_trig) / std::max({std::abs(t0), std::abs(t1_), std::abs(t2_),
                                      std::abs(t3)});
  return cp;
}

Complex consistency_residual(const ChainParams& p, int N, Complex E,
                             ConsistencyForm form, double* normalized) {
  const ConsistencyPoint cp = consistency_point(p, N, E);
  if (form == ConsistencyForm::full) {
    if (normalized) *normalized = cp.residual_full;
    return cp.D_full;
  }
  if (normalized) *normalized = cp.residual_trig;
  return cp.D_trig;
}

std::vector<Complex> reconstruct_eigenvector(const ChainParams& p, int N, Complex E) {
  if (N < 2) throw std::invalid_argument("reconstruct_eigenvector: N < 2");
  std::vector<Complex> psi(2 * N - 1);

  const double lam_scale = std::max(std::abs(p.lambda_L), std::abs(p.lambda_R));
  if (std::abs(E) < 1e-14 && lam_scale < 1e-14) {
    // Decoupled zero mode: psi^B = 0, psi^A(n+1)/psi^A(n) = -(t1-gamma)/t2.
    const Complex r = -(p.t1 - p.gamma) / p.t2;
    Complex v = 1.0;
    for (int n = 0; n < N; ++n) {
      psi[2 * n] = v;
      v *= r;
    }
    return psi;
  }

  const BetaPair bp = beta_exact(p, E);
  if (bp.degenerate) {
    throw std::domain_error("reconstruct_eigenvector: near-degenerate beta pair");
  }
  const Complex b1 = bp.beta1, b2 = bp.beta2;
  const Complex chi1 = chi_component(p, E, b1);
  const Complex chi2 = chi_component(p, E, b2);
  const double t1g = p.t1 + p.gamma;

  // c from the n=1 boundary condition:
  // (t1+gamma)(b1 chi1 + c b2 chi2) + lambda_R (b1^N + c b2^N) = E (b1 + c b2)
  const Complex b1N = cpow_int(b1, N);
  const Complex b2N = cpow_int(b2, N);
  const Complex num = E * b1 - t1g * b1 * chi1 - p.lambda_R * b1N;
  const Complex den = t1g * b2 * chi2 + p.lambda_R * b2N - E * b2;
  const Complex c = num / den;

  Complex p1 = b1, p2 = b2;
  for (int n = 1; n <= N; ++n) {
    psi[2 * (n - 1)] = p1 + c * p2;
    if (n < N) psi[2 * (n - 1) + 1] = p1 * chi1 + c * p2 * chi2;
    p1 *= b1;
    p2 *= b2;
  }
  return psi;
}

DeltaMap delta_map(const ChainParams& p, int n_min, int n_max, double e_min,
                   double e_max, int e_samples) {
  if (n_min < 2 || n_max < n_min) throw std::invalid_argument("delta_map: bad N range");
  if (e_samples < 2) throw std::invalid_argument("delta_map: need >= 2 E samples");
  if (std::abs((p.t1 - p.gamma) / p.t2) >= 1.0 ||
      std::abs(p.t2 / (p.t1 + p.gamma)) >= 1.0) {
    throw std::domain_error("delta_map: requires both |beta(0)| < 1");
  }
  DeltaMap m;
  for (int n = n_min; n <= n_max; ++n) m.n_values.push_back(n);
  for (int i = 0; i < e_samples; ++i) {
    const double e = e_min + (e_max - e_min) * i / (e_samples - 1);
    if (e != 0.0) m.e_values.push_back(e);  // E = 0 row excluded (pole)
  }
  m.ln_delta.resize(m.n_values.size() * m.e_values.size());
  for (std::size_t ni = 0; ni < m.n_values.size(); ++ni) {
    const int N = m.n_values[ni];
    for (std::size_t ei = 0; ei < m.e_values.size(); ++ei) {
      const Complex E(m.e_values[ei], 0.0);
      const BetaPair bp = beta_exact(p, E);
      const Complex rhs = (bp.beta2 - bp.beta1) * (p.t1 + p.gamma) * p.lambda_L /
                          (E * (p.t1 - p.gamma));
      const Complex delta = cpow_int(bp.beta2, N - 2) - rhs;
      m.ln_delta[ni * m.e_values.size() + ei] = std::log(std::abs(delta));
    }
  }
  return m;
}

}  // namespace ntos
