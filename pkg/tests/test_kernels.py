"""Backend agreement: compiled kernels versus the pure-numpy fallbacks."""

import subprocess
import sys

import numpy as np
import pytest

from tailclust import kernels

needs_numba = pytest.mark.skipif(not kernels.HAVE_NUMBA, reason="numba not installed")


def brute_pairwise(u):
    k, d = u.shape
    out = np.zeros((d, d))
    for a in range(d):
        for b in range(d):
            if a != b:
                out[a, b] = sum(abs(u[i, a] - u[i, b]) for i in range(k))
    return out


def random_chi(rng, d, quantize=False):
    vals = rng.uniform(-0.2, 1.0, size=(d, d))
    if quantize:
        vals = np.round(vals, 1)  # heavy ties to stress the tie-break
    vals = np.triu(vals, k=1)
    vals = vals + vals.T
    np.fill_diagonal(vals, 1.0)
    return vals


def test_numpy_pairwise_matches_brute_force(rng):
    u = rng.random((7, 4))
    assert np.allclose(kernels._pairwise_abs_diff_sums_numpy(u), brute_pairwise(u), atol=1e-12)


def test_numpy_gap_sum_matches_brute_force(rng):
    u = rng.random((9, 5))
    idx = np.array([0, 2, 4], dtype=np.int64)
    expect = sum(u[i, idx].max() - u[i, idx].mean() for i in range(9))
    assert kernels._subset_gap_sum_numpy(u, idx) == pytest.approx(expect, abs=1e-12)


def test_loop_bodies_match_numpy_paths(rng):
    # the python loop source is what numba compiles; equality here plus the
    # compiled checks below covers all three implementations
    for _ in range(20):
        k = int(rng.integers(1, 30))
        d = int(rng.integers(2, 8))
        u = rng.random((k, d))
        assert np.allclose(
            kernels._pairwise_abs_diff_sums_loops(u),
            kernels._pairwise_abs_diff_sums_numpy(u),
            atol=1e-12,
        )
        idx = np.sort(rng.choice(d, size=int(rng.integers(1, d + 1)), replace=False)).astype(np.int64)
        assert kernels._subset_gap_sum_loops(u, idx) == pytest.approx(
            kernels._subset_gap_sum_numpy(u, idx), abs=1e-12
        )


def test_eco_label_paths_agree_exactly(rng):
    for trial in range(60):
        d = int(rng.integers(2, 10))
        chi = random_chi(rng, d, quantize=trial % 2 == 0)
        tau = float(rng.uniform(0.0, 1.0))
        a = kernels._eco_labels_loops(chi, tau)
        b = kernels._eco_labels_numpy(chi, tau)
        assert np.array_equal(a, b)


@needs_numba
def test_compiled_kernels_match_loops(rng):
    u = rng.random((40, 6))
    idx = np.array([1, 3, 4], dtype=np.int64)
    assert np.allclose(
        kernels._pairwise_abs_diff_sums_njit(u),
        kernels._pairwise_abs_diff_sums_loops(u),
        atol=1e-12,
    )
    assert kernels._subset_gap_sum_njit(u, idx) == pytest.approx(
        kernels._subset_gap_sum_loops(u, idx), abs=1e-12
    )
    for trial in range(20):
        chi = random_chi(rng, int(rng.integers(2, 9)), quantize=trial % 2 == 0)
        tau = float(rng.uniform(0.0, 1.0))
        assert np.array_equal(
            kernels._eco_labels_njit(chi, tau), kernels._eco_labels_loops(chi, tau)
        )


def test_gap_sum_never_negative_for_identical_columns():
    # max - mean of equal columns is 0 in real arithmetic; the kernels clamp
    # the floating-point dust so downstream madograms stay at exactly 0
    u = np.repeat(np.linspace(0.1, 1.0, 10).reshape(-1, 1), 3, axis=1)
    idx = np.arange(3, dtype=np.int64)
    assert kernels._subset_gap_sum_numpy(u, idx) == 0.0
    assert kernels._subset_gap_sum_loops(u, idx) == 0.0


def test_env_flag_selects_numpy_backend():
    code = (
        "import tailclust.kernels as k; "
        "print(k.USE_NUMBA, k.pairwise_abs_diff_sums is k._pairwise_abs_diff_sums_numpy)"
    )
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin", "TAILCLUST_NO_NUMBA": "1"},
        check=True,
    )
    assert out.stdout.split() == ["False", "True"]


@needs_numba
def test_default_environment_uses_compiled_backend():
    code = "import tailclust.kernels as k; print(k.USE_NUMBA)"
    out = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        env={"PATH": "/usr/bin:/bin"},
        check=True,
    )
    assert out.stdout.split() == ["True"]
