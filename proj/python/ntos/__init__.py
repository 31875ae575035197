"""Python interface to the non-Hermitian sensor-chain numerical core."""

from ._core import (
    BetaPair,
    BoundaryDegenerateError,
    BulkCurve,
    ChainParams,
    CurveKind,
    EminRoot,
    EminSource,
    FitResult,
    FormulaDomainError,
    GapClass,
    InsufficientDataError,
    LambdaSide,
    LinearLaw,
    NoRootError,
    NumericSaturation,
    PhaseGrid,
    PhaseGridSpec,
    PhaseQuantity,
    SaturationBranch,
    SaturationCriterion,
    SaturationPrediction,
    SpectrumRecord,
    SweepEntry,
    SweepResult,
    TopologySigns,
    ZeroedSide,
    beta_exact,
    build_hamiltonian,
    bulk_convergence,
    bulk_curves,
    classify_topology,
    detect_saturation,
    emin_root,
    fit_linear_regime,
    lambert_w0,
    linear_law,
    nsweep,
    phase_grid,
    saturation_prediction,
    spectrum,
    theta_of,
    unidirectional_law,
    winding_number,
    zero_limit_condition,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
