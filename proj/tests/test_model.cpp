#include <doctest.h>

#include <cmath>

#include "ntos/eig.hpp"
#include "ntos/model.hpp"

using namespace ntos;

namespace {
const ChainParams kPG{2.5, 2.8, 1.0, 1e-5, 1e-5};
const ChainParams kLG{2.8, 1.5, 1.0, 1e-5, 1e-5};
}  // namespace

TEST_CASE("hamiltonian structure and terminal orientation") {
  const ChainParams p{2.5, 2.8, 1.0, 3e-4, 7e-5};
  const int N = 4;
  const ComplexMatrix H = build_hamiltonian(p, SystemSize{N});
  REQUIRE(H.rows() == 2 * N - 1);
  CHECK(std::abs(H.trace()) == 0.0);
  CHECK(H(0, 1) == Complex(3.5, 0));   // A1 <- B1: t1 + gamma
  CHECK(H(1, 0) == Complex(1.5, 0));   // B1 <- A1: t1 - gamma
  CHECK(H(2, 1) == Complex(2.8, 0));   // A2 <- B1: t2
  CHECK(H(1, 2) == Complex(2.8, 0));
  CHECK(H(0, 2 * N - 2) == Complex(7e-5, 0));  // lambda_R in the A1 row
  CHECK(H(2 * N - 2, 0) == Complex(3e-4, 0));  // lambda_L in the A_N row
  // only the specified bands/corners are populated
  int nonzeros = 0;
  for (int i = 0; i < H.rows(); ++i) {
    for (int j = 0; j < H.cols(); ++j) {
      if (H(i, j) != Complex(0, 0)) ++nonzeros;
    }
  }
  CHECK(nonzeros == 4 * (N - 1) + 2);
}

TEST_CASE("eigenvalues match trace/determinant oracles at small N") {
  for (int N : {2, 3, 4, 6}) {
    const ComplexMatrix H = build_hamiltonian(kPG, SystemSize{N});
    const auto ev = eig_dense(H);
    Complex sum = 0, sum2 = 0, prod = 1;
    for (const Complex& e : ev) {
      sum += e;
      sum2 += e * e;
      prod *= e;
    }
    const double scale = std::pow(H.norm(), 2);
    CHECK(std::abs(sum) < 1e-10 * H.norm());
    CHECK(std::abs(sum2 - (H * H).trace()) < 1e-10 * scale);
    const Complex det = Eigen::FullPivLU<ComplexMatrix>(H).determinant();
    CHECK(std::abs(prod - det) < 1e-8 * std::max(1.0, std::abs(det)));
  }
}

TEST_CASE("topology classification at reference points") {
  {
    const TopologySigns s = classify_topology(ChainParams{2.0, 1.5, 1.0, 0, 0});
    CHECK(s.cls == GapClass::PG);
    CHECK(s.W == 1);
  }
  {
    const TopologySigns s = classify_topology(kLG);
    CHECK(s.cls == GapClass::LG);
    CHECK(s.W == 0);
    CHECK(s.s_t == 1);
    CHECK(s.s_g == -1);
    CHECK(s.lambda_selected == LambdaSide::L);
  }
  {
    const TopologySigns s = classify_topology(kPG);
    CHECK(s.cls == GapClass::PG);
    CHECK(s.W == 1);
    CHECK(s.s_t == -1);
    CHECK(s.s_g == -1);
    CHECK(s.exp_g == doctest::Approx(std::sqrt(1.5 / 3.5)).epsilon(1e-12));
  }
  {
    // both roots outside the unit circle: opposite winding
    const TopologySigns s = classify_topology(ChainParams{-2.5, 2.8, 1.0, 0, 0});
    CHECK(s.cls == GapClass::PG);
    CHECK(s.W == -1);
  }
  CHECK_THROWS_AS((classify_topology(ChainParams{2.5, 3.5, 1.0, 0, 0})),
                  boundary_degenerate_error);
}

TEST_CASE("winding number agrees with the inequality rule off the boundaries") {
  for (double t1 : {-3.2, -1.7, -0.4, 0.6, 1.8, 3.1}) {
    for (double t2 : {-3.3, -1.4, 0.7, 2.2, 3.6}) {
      const ChainParams p{t1, t2, 1.0, 0, 0};
      const double r1 = std::abs(t2 / (t1 + 1.0));
      const double r2 = std::abs((t1 - 1.0) / t2);
      if (std::abs(r1 - 1) < 0.05 || std::abs(r2 - 1) < 0.05) continue;
      const int expected = (r1 < 1 && r2 < 1) ? 1 : (r1 > 1 && r2 > 1) ? -1 : 0;
      CHECK(winding_number(p) == expected);
    }
  }
}

TEST_CASE("beta roots at E = 0") {
  {
    const BetaPair bp = beta_exact(kPG, Complex(0, 0));
    CHECK(bp.beta1.real() == doctest::Approx(-1.5 / 2.8).epsilon(1e-12));
    CHECK(bp.beta2.real() == doctest::Approx(-0.8).epsilon(1e-12));
  }
  {
    const BetaPair bp = beta_exact(kLG, Complex(0, 0));
    CHECK(bp.beta1.real() == doctest::Approx(-1.5 / 3.8).epsilon(1e-12));
    CHECK(bp.beta2.real() == doctest::Approx(-1.2).epsilon(1e-12));
    CHECK(std::abs(bp.beta1) < 1.0);
    CHECK(std::abs(bp.beta2) > 1.0);
  }
}

TEST_CASE("beta roots satisfy the characteristic equation and Vieta product") {
  const std::vector<Complex> energies = {{0.3, 0}, {0, 0.4}, {-1.1, 0.9}, {2.0, -0.1}};
  for (const ChainParams& p : {kPG, kLG, ChainParams{2.0, 1.5, 1.0, 1e-7, 1e-7}}) {
    const double prod = (p.t1 - p.gamma) / (p.t1 + p.gamma);
    for (const Complex& e : energies) {
      const BetaPair bp = beta_exact(p, e);
      CHECK(std::abs(bp.beta1) <= std::abs(bp.beta2));
      CHECK(std::abs(bp.beta1 * bp.beta2 - prod) < 1e-12);
      for (const Complex& b : {bp.beta1, bp.beta2}) {
        const Complex lhs =
            ((p.t1 + p.gamma) + p.t2 / b) * ((p.t1 - p.gamma) + p.t2 * b);
        CHECK(std::abs(lhs - e * e) < 1e-10 * std::max(1.0, std::abs(e * e)));
      }
    }
  }
}

TEST_CASE("printed small-E expansion: exact at E = 0, O(E^2) nearby") {
  // The quoted expansion coefficient omits a beta(0) factor relative to the
  // exact implicit derivative, so the agreement order is E^2, not E^4.
  const BetaTaylor t0 = beta_taylor(kPG, Complex(0, 0));
  const BetaPair b0 = beta_exact(kPG, Complex(0, 0));
  CHECK(std::abs(t0.beta_a - b0.beta1) < 1e-14);
  CHECK(std::abs(t0.beta_b - b0.beta2) < 1e-14);
  for (double e : {0.2, 0.1, 0.05}) {
    const BetaTaylor t = beta_taylor(kPG, Complex(e, 0));
    const BetaPair b = beta_exact(kPG, Complex(e, 0));
    CHECK(std::abs(t.beta_a - b.beta1) < 0.5 * e * e);
    CHECK(std::abs(t.beta_b - b.beta2) < 0.5 * e * e);
  }
  CHECK_THROWS_AS((beta_taylor(ChainParams{2.5, std::sqrt(5.25), 1.0, 0, 0},
                              Complex(0.1, 0))),
                  std::domain_error);
}

TEST_CASE("chi solves both bulk equations") {
  for (const ChainParams& p : {kPG, kLG}) {
    for (const Complex& e : {Complex(0.4, 0.1), Complex(-0.2, 0.7)}) {
      const BetaPair bp = beta_exact(p, e);
      for (const Complex& b : {bp.beta1, bp.beta2}) {
        const Complex chi = chi_component(p, e, b);
        CHECK(std::abs(e - (p.t1 + p.gamma) * chi - p.t2 * chi / b) < 1e-10);
        CHECK(std::abs(e * chi - (p.t1 - p.gamma) - p.t2 * b) < 1e-10);
      }
    }
  }
}

TEST_CASE("theta branch reproduces both beta factors") {
  for (const ChainParams& p : {kPG, kLG}) {
    const TopologySigns s = classify_topology(p);
    for (const Complex& e : {Complex(0, 0), Complex(0.3, 0), Complex(0.1, 0.2)}) {
      const BetaPair bp = beta_exact(p, e);
      const Complex th = theta_of(p, e);
      const Complex eith = std::exp(Complex(0, 1) * th);
      CHECK(std::abs(eith) >= 1.0 - 1e-12);
      CHECK(std::abs(s.exp_g * eith - bp.beta2) < 1e-10);
      CHECK(std::abs(s.exp_g / eith - bp.beta1) < 1e-10);
    }
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((ChainParams{1.0, 2.0, 1.0, 0, 0}.validate()),
                  std::invalid_argument);
  CHECK_THROWS_AS((build_hamiltonian(kPG, SystemSize{1})), std::invalid_argument);
  CHECK(SystemSize{7}.dim() == 13);
}
