#include <doctest.h>

#include <cmath>

#include "ntos/experiments.hpp"

using namespace ntos;

TEST_CASE("growing-phase sweep: real growth, then complex plateau") {
  const SweepResult s = nsweep(ChainParams{2.0, 1.5, 1.0, 1e-7, 1e-7}, 2, 60);
  REQUIRE(s.entries.size() == 59);
  REQUIRE(s.law.has_value());
  CHECK(s.law->slope == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  // in the linear regime |E_min| grows and stays real
  for (std::size_t i = 5; i < 25; ++i) {
    const SweepEntry& e = s.entries[i];
    REQUIRE(e.ok);
    CHECK(std::abs(e.e_min.imag()) < 1e-6 * std::abs(e.e_min));
    CHECK(e.ln_abs_emin > s.entries[i - 1].ln_abs_emin);
  }
  // past the shoulder the minimum eigenvalue is genuinely complex
  const SweepEntry& tail = s.entries.back();
  CHECK(std::abs(tail.e_min.imag()) > 0.01 * std::abs(tail.e_min));
}

TEST_CASE("shrinking-phase sweep: monotone decay through the root solver") {
  const SweepResult s = nsweep(ChainParams{1.5, 2.8, 1.0, 1e-7, 1e-7}, 2, 60);
  int root_points = 0;
  for (std::size_t i = 1; i < s.entries.size(); ++i) {
    const SweepEntry& e = s.entries[i];
    REQUIRE(e.ok);
    if (e.source == EminSource::consistency_root) ++root_points;
    if (i > 3) CHECK(e.ln_abs_emin < s.entries[i - 1].ln_abs_emin);
  }
  CHECK(root_points > 10);
}

TEST_CASE("fitted slopes reproduce the closed forms within 2 percent") {
  struct Case {
    ChainParams p;
    double slope;
  };
  const std::vector<Case> cases = {
      {{2.5, 2.8, 1.0, 1e-5, 1e-5}, 0.22314355131420976},
      {{2.8, 1.5, 1.0, 1e-5, 1e-5}, -0.18232155679395465},
      {{2.5, 2.8, 1.0, 1e-5, 0.0}, 0.22314355131420976},
      {{2.5, 2.8, 1.0, 0.0, 1e-5}, -0.6241543090729939},
  };
  for (const Case& c : cases) {
    const FitResult fit = fit_linear_regime(nsweep(c.p, 2, 80));
    CHECK(fit.points_used >= 6);
    CHECK(fit.r2 > 0.99);
    CHECK(std::abs(fit.slope - c.slope) <= 0.02 * std::abs(c.slope));
  }
}

TEST_CASE("fit intercepts track the lambda decade shift") {
  const FitResult f5 =
      fit_linear_regime(nsweep(ChainParams{2.5, 2.8, 1.0, 1e-5, 1e-5}, 2, 80));
  const FitResult f7 =
      fit_linear_regime(nsweep(ChainParams{2.5, 2.8, 1.0, 1e-7, 1e-7}, 2, 80));
  const double ln100 = std::log(100.0);
  CHECK(std::abs((f5.intercept - f7.intercept) - ln100) <= 0.02 * ln100);
}

TEST_CASE("too-narrow sweeps raise instead of fitting junk") {
  CHECK_THROWS_AS((
      fit_linear_regime(nsweep(ChainParams{2.5, 2.8, 1.0, 1e-5, 1e-5}, 2, 6))),
      insufficient_data_error);
}

TEST_CASE("numeric saturation near the closed-form prediction") {
  {
    const NumericSaturation d =
        detect_saturation(nsweep(ChainParams{2.5, 2.8, 1.0, 1e-5, 1e-5}, 2, 80));
    CHECK(d.saturated);
    CHECK(d.criterion == SaturationCriterion::imaginary_onset);
    const SaturationPrediction pred =
        saturation_prediction(ChainParams{2.5, 2.8, 1.0, 1e-5, 1e-5});
    CHECK(std::abs(d.N_c_num - pred.N_c) <= 0.2 * pred.N_c);
  }
  {
    // expanding-branch closed form checked against the same numeric oracle
    const ChainParams p{-2.5, 2.8, 1.0, 1e-5, 1e-5};
    const NumericSaturation d = detect_saturation(nsweep(p, 2, 80));
    const SaturationPrediction pred = saturation_prediction(p);
    CHECK(d.saturated);
    CHECK(std::abs(d.N_c_num - pred.N_c) <= 0.2 * pred.N_c);
    CHECK(std::abs(std::log(d.E_c_num) - std::log(pred.E_c)) <=
          0.2 * std::abs(std::log(pred.E_c)));
  }
}

TEST_CASE("no saturation in the shrinking phase") {
  const NumericSaturation d =
      detect_saturation(nsweep(ChainParams{2.8, 1.5, 1.0, 1e-5, 1e-5}, 2, 60));
  CHECK_FALSE(d.saturated);
}

TEST_CASE("phase grid: winding cells match the inequality rule") {
  PhaseGridSpec spec;
  spec.resolution = 41;
  spec.quantity = PhaseQuantity::winding;
  const PhaseGrid g = phase_grid(spec);
  int unmasked = 0;
  for (std::size_t i = 0; i < g.t1_axis.size(); ++i) {
    for (std::size_t j = 0; j < g.t2_axis.size(); ++j) {
      if (g.masked(i, j)) {
        CHECK(std::isnan(g.value(i, j)));
        continue;
      }
      ++unmasked;
      const double r1 = std::abs(g.t2_axis[j] / (g.t1_axis[i] + 1.0));
      const double r2 = std::abs((g.t1_axis[i] - 1.0) / g.t2_axis[j]);
      const int expected = (r1 < 1 && r2 < 1) ? 1 : (r1 > 1 && r2 > 1) ? -1 : 0;
      CHECK(static_cast<int>(g.value(i, j)) == expected);
    }
  }
  CHECK(unmasked > 1000);
}

TEST_CASE("phase grid: slope sign separates the phases") {
  PhaseGridSpec spec;
  spec.resolution = 41;
  spec.quantity = PhaseQuantity::slope;
  const PhaseGrid g = phase_grid(spec);
  for (std::size_t i = 0; i < g.t1_axis.size(); ++i) {
    for (std::size_t j = 0; j < g.t2_axis.size(); ++j) {
      if (g.masked(i, j)) continue;
      const double r1 = std::abs(g.t2_axis[j] / (g.t1_axis[i] + 1.0));
      const double r2 = std::abs((g.t1_axis[i] - 1.0) / g.t2_axis[j]);
      const bool pg = (r1 < 1 && r2 < 1) || (r1 > 1 && r2 > 1);
      CHECK((g.value(i, j) > 0) == pg);
    }
  }
}

TEST_CASE("bulk spectra drift towards their limit curves") {
  {
    const auto d = bulk_convergence(ChainParams{2.0, 1.5, 1.0, 1e-7, 1e-7},
                                    {20, 40, 60}, CurveKind::PBC);
    REQUIRE(d.size() == 3);
    CHECK(d[0] > d[1]);
    CHECK(d[1] > d[2]);
  }
  {
    // one-sided coupling on the amplified side flows to the PBC loop
    const auto d = bulk_convergence(ChainParams{2.5, 2.8, 1.0, 1e-5, 0.0},
                                    {20, 40, 60}, CurveKind::PBC);
    CHECK(d[0] > d[2]);
  }
}
