"""Backend equivalence and selection for the hot kernels."""

import os
import subprocess
import sys

import numpy as np
import pytest

from hardyz import _kernels
from hardyz._kernels import pykernels

import oracles

try:
    from hardyz._kernels import _ckernels
except ImportError:
    _ckernels = None

needs_compiled = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def _inputs(n_terms=3000, nt=64, sigma=0.5, seed=0):
    rng = np.random.default_rng(seed)
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    logn = np.log(n)
    amp = n**-sigma
    t = np.sort(rng.uniform(1.0, 2000.0, nt))
    return amp, logn, t


@needs_compiled
def test_power_log_sums_backends_agree():
    amp, logn, t = _inputs()
    a = pykernels.power_log_sums(amp, logn, t, 3)
    b = _ckernels.power_log_sums(amp, logn, t, 3)
    scale = np.abs(a).max()
    assert np.abs(a - b).max() < 1e-11 * scale


@needs_compiled
def test_sieve_tables_backends_agree():
    dd_p, ol_p = pykernels.sieve_tables(2000)
    dd_c, ol_c = _ckernels.sieve_tables(2000)
    assert np.abs(dd_p - dd_c).max() < 1e-12
    assert np.abs(ol_p - ol_c).max() < 1e-12


@pytest.mark.parametrize("backend", [pykernels] + ([_ckernels] if _ckernels else []))
def test_sieve_tables_match_bruteforce(backend):
    dd, ol = backend.sieve_tables(300)
    for n in range(1, 301):
        assert dd[n] == pytest.approx(oracles.dlog_divisor_bruteforce(n), abs=1e-12)
    assert ol[12] == pytest.approx(np.log(2) + np.log(3) + np.log(4) + np.log(6) + np.log(12), abs=1e-12)
    assert ol[1] == 0.0


def test_power_log_sums_small_case_exact():
    # two terms, one t: sum = 1 + amp*e^{-i t log 2} * (1, log2, log2^2)
    amp = np.array([1.0, 0.25])
    logn = np.array([0.0, np.log(2.0)])
    t = np.array([3.0])
    out = pykernels.power_log_sums(amp, logn, t, 3)
    expected0 = 1.0 + 0.25 * np.exp(-3j * np.log(2.0))
    assert out[0, 0] == pytest.approx(expected0, abs=1e-15)
    assert out[1, 0] == pytest.approx(0.25 * np.log(2.0) * np.exp(-3j * np.log(2.0)), abs=1e-15)


def test_power_log_sums_rejects_bad_orders():
    amp, logn, t = _inputs(n_terms=10, nt=2)
    with pytest.raises(ValueError):
        pykernels.power_log_sums(amp, logn, t, 4)


def test_backend_env_override_selects_python():
    code = (
        "import hardyz._kernels as k; print(k.BACKEND)"
    )
    env = dict(os.environ, HARDYZ_KERNELS="python")
    out = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert out.stdout.strip() == "python"


def test_backend_default_is_deterministic():
    amp, logn, t = _inputs(seed=7)
    a = _kernels.power_log_sums(amp, logn, t, 2)
    b = _kernels.power_log_sums(amp, logn, t, 2)
    assert np.array_equal(a, b)
