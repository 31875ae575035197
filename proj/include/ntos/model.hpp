#ifndef NTOS_MODEL_HPP
#define NTOS_MODEL_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ntos {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

// Raised when parameters sit exactly on a phase boundary where the
// classification (and the closed-form laws) degenerate.
class boundary_degenerate_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class gap_closed_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The five real couplings defining one sensor chain instance.
/// Intra-cell hopping is t1 +/- gamma, inter-cell hopping t2, and the two
/// chain ends are joined through the terminal couplings lambda_L, lambda_R.
struct ChainParams {
  double t1 = 0.0;
  double t2 = 0.0;
  double gamma = 0.0;
  double lambda_L = 0.0;
  double lambda_R = 0.0;

  // Throws std::invalid_argument on non-finite values, and emits a domain
  // warning flag for |t1| < |gamma| (g becomes complex there; analytics are
  // restricted to |t1| > |gamma|).
  void validate() const;
  bool g_is_real() const;
};

/// Number of A sites. The chain has N-1 complete unit cells plus one extra
/// A site, so the Hamiltonian dimension is 2N-1.
struct SystemSize {
  int N = 2;
  int dim() const { return 2 * N - 1; }
  void validate() const;
};

enum class BetaAssignment { plus_is_small, minus_is_small };
enum class TaylorMatch { a_is_1, b_is_1 };

/// The two non-Bloch factors at a given energy, sorted |beta1| <= |beta2|.
struct BetaPair {
  Complex beta1;
  Complex beta2;
  BetaAssignment assignment = BetaAssignment::plus_is_small;
  TaylorMatch taylor_match = TaylorMatch::a_is_1;
  bool degenerate = false;  // warning tag: |beta1 - beta2| < 1e-10 |beta2|
};

enum class GapClass { LG, PG };
enum class LambdaSide { L, R };

/// Discrete topology data derived from the couplings alone.
struct TopologySigns {
  GapClass cls = GapClass::LG;
  int W = 0;         // winding number, in {-1, 0, 1}
  int s_t = +1;      // which of beta_+/- dominates at E = 0
  int s_g = -1;      // sign of g; localization side of the GBZ states
  LambdaSide lambda_selected = LambdaSide::L;
  double g = 0.0;        // g = ln sqrt((t1-gamma)/(t1+gamma))
  double exp_g = 1.0;    // modulus of beta on the GBZ
};

// Matrix basis ordering is A1,B1,A2,B2,...,A_{N-1},B_{N-1},A_N.
// Terminal orientation: entry(A_1,A_N) = lambda_R, entry(A_N,A_1) = lambda_L,
// calibrated so the matrix spectrum coincides with the roots of the
// consistency condition.
ComplexMatrix build_hamiltonian(const ChainParams& p, const SystemSize& size);

TopologySigns classify_topology(const ChainParams& p);

// Total phase winding of det H(k) around the origin, k in [-pi, pi].
// Auto-refines until every per-step phase increment is below pi/2.
int winding_number(const ChainParams& p, int resolution = 256);

// Both roots of t2(t1+g) b^2 + (t1^2 - g^2 + t2^2 - E^2) b + t2(t1-g) = 0.
BetaPair beta_exact(const ChainParams& p, Complex E);

// Taylor expansions of the two roots around E = 0.
struct BetaTaylor {
  Complex beta_a;
  Complex beta_b;
};
BetaTaylor beta_taylor(const ChainParams& p, Complex E);

// Second eigenvector component: (1, chi)^t is the eigenvector of the
// non-Bloch Hamiltonian at energy E and factor beta.
Complex chi_component(const ChainParams& p, Complex E, Complex beta);

// Branch angle theta with beta1 = e^g e^{-i theta}, beta2 = e^g e^{i theta};
// the branch is fixed by |e^{i theta}| >= 1.
Complex theta_of(const ChainParams& p, Complex E);

}  // namespace ntos

#endif
