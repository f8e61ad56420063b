"""Smoke tests for the python bindings: import, shapes, and a few
reference values. The heavy numerical checks live in the C++ suite."""

import numpy as np
import pytest

import qstab


def test_version_string():
    assert qstab.__version__.count(".") == 2


def test_circuit_shape_and_oracle():
    c = qstab.build_qft(3)
    assert c.n == 3
    assert c.dim == 8
    assert len(c) == c.gate_count
    u = qstab.circuit_unitary(c)
    assert u.shape == (8, 8)
    np.testing.assert_allclose(u, qstab.dft_matrix(3), atol=1e-10)
    np.testing.assert_allclose(u @ u.conj().T, np.eye(8), atol=1e-12)


def test_iqft_matches_qft():
    q = qstab.circuit_unitary(qstab.build_qft(4))
    i = qstab.circuit_unitary(qstab.build_iqft(4))
    np.testing.assert_allclose(i, q, atol=1e-10)


def test_circuit_text_roundtrip():
    c = qstab.build_iqft(3)
    text = qstab.circuit_to_text(c)
    back = qstab.circuit_from_text(text, 3)
    assert qstab.circuit_to_text(back) == text


def test_rng_determinism():
    a = qstab.SeededRng(5, 1)
    b = qstab.SeededRng(5, 1)
    v1 = qstab.sample_gue(16, a)
    v2 = qstab.sample_gue(16, b)
    np.testing.assert_array_equal(v1, v2)
    np.testing.assert_allclose(v1, v1.conj().T, atol=0)


def test_chi_reference_value():
    assert qstab.chi(qstab.build_qft(4)) == pytest.approx(15.110, abs=0.01)


def test_fidelity_model_and_baseline():
    assert qstab.fidelity_model(10.0, 0.1) == pytest.approx(np.exp(-0.1))
    assert qstab.noise_baseline(24, 0.1) == pytest.approx(np.exp(-0.12))


def test_fidelity_exact_unperturbed():
    c = qstab.build_qft(3)
    v = qstab.sample_gue(8, qstab.SeededRng(1, 0))
    assert qstab.fidelity_exact(c, v, 0.0) == pytest.approx(1.0, abs=1e-12)


def test_ensemble_deterministic_across_threads():
    c = qstab.build_qft(3)
    kwargs = dict(mode="static", delta=0.1, realizations=4, seed=11)
    e1 = qstab.fidelity_ensemble(c, threads=1, **kwargs)
    e2 = qstab.fidelity_ensemble(c, threads=3, **kwargs)
    assert e1.abs_mean == e2.abs_mean
    assert e1.std_error == e2.std_error
    assert 0.0 < e1.abs_mean <= 1.0 + 1e-9


def test_fit_recovers_synthetic_polynomial():
    pts = [(n, 0.25 * n**3 - 0.4 * n**2 + 1.5 * n) for n in range(4, 11)]
    fit = qstab.fit_scaling(pts, [3, 2, 1])
    np.testing.assert_allclose(fit.coefficients, [0.25, -0.4, 1.5], atol=1e-9)
    assert fit.residual_rms < 1e-9
