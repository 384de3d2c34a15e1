import math

import numpy as np
import pytest

import spinglass as sg


def test_version():
    assert sg.__version__ == sg.version()
    assert sg.version().count(".") == 2


def test_basis_patterns_and_rank():
    b = sg.SectorBasis(5, 2)
    assert len(b) == 10
    assert b.states() == sorted(b.states())
    assert all(bin(p).count("1") == 2 for p in b.states())
    assert [b.rank(p) for p in b.states()] == list(range(10))


def test_wide_patterns_round_trip():
    b = sg.SectorBasis(128, 1)
    top = 1 << 127
    assert b[127] == top
    assert b.rank(top) == 127


def test_all_one_state_is_an_eigenstate():
    J = sg.sample_couplings(sg.Model.infinite_range(), 9, 3)
    M = sg.assemble(J, 3)
    u = np.full(M.H.shape[0], 1 / math.sqrt(M.H.shape[0]))
    assert np.allclose(M.H @ u, J.coupling_sum * u, atol=1e-10)
    assert np.allclose(M.H, M.H.T)


def test_spectrum_is_sorted_and_orthonormal():
    J = sg.sample_couplings(sg.Model.power_law(1.5), 8, 5)
    s = sg.diagonalize(sg.assemble(J, 2).H)
    assert np.all(np.diff(s.eigenvalues) >= 0)
    V = s.eigenvectors
    assert np.allclose(V.T @ V, np.eye(V.shape[1]), atol=1e-12)


def test_all_one_concurrence_closed_form():
    L = 12
    b = sg.SectorBasis(L, 1)
    a = np.full(L, 1 / math.sqrt(L))
    assert sg.concurrence(sg.pair_rdm(b, a, 0, 5)) == pytest.approx(2 / L, abs=1e-12)
    avg, frac = sg.pair_statistics(b, a)
    assert avg == pytest.approx(2 / L, abs=1e-12)
    assert frac == 1.0


def test_promotion_and_ipr():
    L = 8
    rng = np.random.default_rng(0)
    a = rng.normal(size=L)
    a -= a.mean()
    a /= np.linalg.norm(a)
    phi = sg.promote(sg.SectorBasis(L, 1), a)
    assert np.linalg.norm(phi) == pytest.approx(1.0)
    assert sg.inverse_participation_ratio(phi) == pytest.approx(1 / 12, abs=1e-14)


def test_sector_analysis_counts():
    J = sg.sample_couplings(sg.Model.infinite_range(), 10, 1)
    out = sg.analyze_sector(J, 2)
    assert (out["promoted"], out["new"], out["ambiguous"]) == (10, 35, 0)
    assert len(out["states"]) == 45
    assert all(1.0 <= row["PR"] <= 45 * (1 + 1e-12) for row in out["states"])


def test_ensemble_estimate_is_deterministic():
    first = sg.estimate("random-promoted-2p", 20, 500, 7, workers=1)
    second = sg.estimate("random-promoted-2p", 20, 500, 7, workers=2)
    assert first == second
    assert 0.4 < first["P(C>0)"]["mean"] < 0.8
    assert first["mean_C"]["samples"] == 500


def test_fit_recovers_power_law():
    L = np.arange(8, 41, 4, dtype=float)
    y = 0.9 / L**1.138
    result = sg.fit("power_law", L.tolist(), y.tolist())
    assert result["parameters"]["a"] == pytest.approx(1.138, rel=1e-6)
    assert result["parameters"]["b"] == pytest.approx(0.9, rel=1e-6)


def test_errors_are_translated():
    with pytest.raises(ValueError):
        sg.SectorBasis(4, 7)
    with pytest.raises(sg.InvalidArgument):
        sg.estimate("random-2p", 10, 50, 1)
    with pytest.raises(ValueError):
        sg.fit("spline", [1.0], [1.0])


def test_verify_checks_pass():
    checks = sg.verify()
    assert checks
    assert all(passed for _, passed, _ in checks), checks
