"""End-to-end smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import ntos


PG = dict(t1=2.5, t2=2.8, gamma=1.0, lambda_L=1e-5, lambda_R=1e-5)
LG = dict(t1=2.8, t2=1.5, gamma=1.0, lambda_L=1e-5, lambda_R=1e-5)


def test_hamiltonian_shape_and_corners():
    p = ntos.ChainParams(**PG)
    H = ntos.build_hamiltonian(p, 6)
    assert H.shape == (11, 11)
    assert H[0, 1] == pytest.approx(3.5)
    assert H[1, 0] == pytest.approx(1.5)
    assert H[0, 10] == pytest.approx(1e-5)
    assert H[10, 0] == pytest.approx(1e-5)


def test_spectrum_matches_numpy():
    p = ntos.ChainParams(**LG)
    rec = ntos.spectrum(p, 10)
    H = ntos.build_hamiltonian(p, 10)
    ours = np.sort_complex(np.asarray(rec.eigenvalues))
    ref = np.sort_complex(np.linalg.eigvals(H))
    assert np.allclose(ours, ref, atol=1e-8)
    assert abs(rec.e_min) == pytest.approx(np.min(np.abs(ref)), rel=1e-10)


def test_topology_and_winding():
    s = ntos.classify_topology(ntos.ChainParams(**PG))
    assert s.cls == ntos.GapClass.PG
    assert s.W == 1
    assert ntos.winding_number(ntos.ChainParams(**LG)) == 0


def test_linear_law_reference_slopes():
    law = ntos.linear_law(ntos.ChainParams(**PG))
    assert law.slope == pytest.approx(0.22314355131420976, abs=1e-12)
    law = ntos.linear_law(ntos.ChainParams(**LG))
    assert law.slope == pytest.approx(-0.18232155679395465, abs=1e-12)


def test_unidirectional_flip():
    p = ntos.ChainParams(**PG)
    p.lambda_L = 0.0
    law = ntos.unidirectional_law(p, ntos.ZeroedSide.L)
    assert law.slope == pytest.approx(-0.6241543090729939, abs=1e-12)


def test_lambert_w_identity():
    for x in (0.5, 3.0, 1e6):
        w = ntos.lambert_w0(x)
        assert w * math.exp(w) == pytest.approx(x, rel=1e-12)


def test_saturation_prediction():
    s = ntos.saturation_prediction(ntos.ChainParams(**PG))
    assert s.branch == ntos.SaturationBranch.beta_lt_1
    assert s.E_c == pytest.approx(0.172266, abs=1e-4)
    assert s.N_c == pytest.approx(45.638, abs=0.05)
    with pytest.raises(ValueError):
        ntos.saturation_prediction(ntos.ChainParams(**LG))


def test_nsweep_fit_and_detection():
    sweep = ntos.nsweep(ntos.ChainParams(**PG), 2, 70)
    assert [e.N for e in sweep.entries] == list(range(2, 71))
    fit = ntos.fit_linear_regime(sweep)
    assert fit.slope == pytest.approx(0.223144, rel=0.02)
    sat = ntos.detect_saturation(sweep)
    assert sat.saturated
    assert abs(sat.N_c_num - 45.6) <= 0.2 * 45.6


def test_root_solver_below_the_floor():
    p = ntos.ChainParams(**LG)
    p.lambda_L = p.lambda_R = 1e-9
    law = ntos.linear_law(p)
    pred = law.slope * 60 + law.intercept
    root = ntos.emin_root(p, 60, pred)
    assert abs(root.ln_abs - pred) < 0.1
    assert root.residual < 1e-18


def test_phase_grid_arrays():
    spec = ntos.PhaseGridSpec()
    spec.resolution = 21
    spec.quantity = ntos.PhaseQuantity.winding
    g = ntos.phase_grid(spec)
    assert g.values.shape == (21, 21)
    assert g.mask.shape == (21, 21)
    unmasked = g.values[~g.mask]
    assert set(np.unique(unmasked)) <= {-1.0, 0.0, 1.0}


def test_bulk_curves_and_convergence():
    c = ntos.bulk_curves(ntos.ChainParams(**PG), ntos.CurveKind.PBC, 128)
    assert len(c.parameter) == 128
    d = ntos.bulk_convergence(
        ntos.ChainParams(t1=2.0, t2=1.5, gamma=1.0, lambda_L=1e-7, lambda_R=1e-7),
        [20, 40],
        ntos.CurveKind.PBC,
    )
    assert d[0] > d[1] > 0


def test_invalid_params_raise():
    with pytest.raises(ValueError):
        ntos.ChainParams(t1=1.0, t2=2.0, gamma=1.0)  # |t1| == |gamma|
