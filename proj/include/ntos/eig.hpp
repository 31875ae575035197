#ifndef NTOS_EIG_HPP
#define NTOS_EIG_HPP

#include <vector>

#include "ntos/model.hpp"

namespace ntos {

class solver_failure_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class EminSource { dense_eig, consistency_root };

/// Full spectrum of the finite chain at one system size.
struct SpectrumRecord {
  int N = 0;
  std::vector<Complex> eigenvalues;  // length 2N-1
  Complex e_min;
  EminSource e_min_source = EminSource::dense_eig;
  double max_residual = 0.0;  // max_i ||H v_i - E_i v_i|| / ||H||_F
};

enum class ConsistencyForm { full, trig };

/// The consistency function evaluated through both algebraic routes, in a
/// common normalization where the leading term is sin(N theta).
struct ConsistencyPoint {
  Complex E;
  int N = 0;
  Complex D_full;
  Complex D_trig;
  double residual_full = 0.0;  // |D| / largest single term, scale free
  double residual_trig = 0.0;
};

// Dense eigenvalues with per-eigenpair residual certification.
// Throws solver_failure_error if Eigen's QR iteration does not converge.
std::vector<Complex> eig_dense(const ComplexMatrix& H, double* max_residual = nullptr);

// Minimal-modulus element; ties (1e-12 relative) broken by nonnegative
// imaginary part, then nonnegative real part.
Complex select_emin(const std::vector<Complex>& eigenvalues);

SpectrumRecord spectrum(const ChainParams& p, const SystemSize& size);

ConsistencyPoint consistency_point(const ChainParams& p, int N, Complex E);

// Value of the chosen form; ~0 iff E is an eigenvalue of the finite chain.
Complex consistency_residual(const ChainParams& p, int N, Complex E,
                             ConsistencyForm form, double* normalized = nullptr);

// psi(n) = beta1^n (1, chi1)^t + c beta2^n (1, chi2)^t, assembled over the
// A1,B1,...,A_N basis. E must satisfy the consistency condition.
std::vector<Complex> reconstruct_eigenvector(const ChainParams& p, int N, Complex E);

/// ln Delta(E, N) raster of the reduced consistency map (|beta|<1 branch).
struct DeltaMap {
  std::vector<int> n_values;
  std::vector<double> e_values;
  std::vector<double> ln_delta;  // row-major, n_values.size() x e_values.size()
  double at(std::size_t ni, std::size_t ei) const {
    return ln_delta[ni * e_values.size() + ei];
  }
};

DeltaMap delta_map(const ChainParams& p, int n_min, int n_max, double e_min,
                   double e_max, int e_samples);

}  // namespace ntos

#endif
