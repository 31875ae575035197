#ifndef NTOS_ARTIFACTS_HPP
#define NTOS_ARTIFACTS_HPP

#include "ntos/experiments.hpp"
#include "ntos/tables.hpp"

namespace ntos {

inline constexpr const char* kToolVersion = "0.1.0";

// Fixed-schema artifact builders shared by the CLI and the validation suite.
// Builders are pure: identical inputs give identical artifacts.

TableArtifact spectrum_artifact(const ChainParams& p,
                                const std::vector<SpectrumRecord>& records);

TableArtifact sweep_artifact(const SweepResult& sweep);

TableArtifact phase_artifact(const PhaseGridSpec& spec, const PhaseGrid& grid);

TableArtifact saturation_artifact(const SweepResult& sweep,
                                  const NumericSaturation& numeric,
                                  double im_tol);

TableArtifact curves_artifact(const ChainParams& p, const BulkCurve& curve);

const char* quantity_name(PhaseQuantity q);

}  // namespace ntos

#endif
