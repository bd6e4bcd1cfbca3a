"""Euler-Maclaurin evaluation of zeta and its first two derivatives, plus
Hardy's Z, Z' and the completed derivative Z1.

A single strategy covers the whole desk-scale envelope |Im s| <= 1e5: the
main sum runs to N = max(20, ceil(2|Im s|)) and the tail is corrected with
8 Bernoulli terms,

    zeta(s) = sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2
              + sum_k B_2k/(2k)! (s)_{2k-1} N^(-s-2k+1) + R_K.

Derivative orders differentiate every piece analytically (the main sum picks
up (-log n)^j weights; finite differences are never used).  Near the pole,
|s-1| < 0.1, evaluation switches to the truncated Laurent expansion from
`laurent`, which removes the cancellation between the main sum and the
N^(1-s)/(s-1) term.

Z(t) = e^{i theta(t)} zeta(1/2 + it); the imaginary part of the rotated
value is asserted small and discarded.  Z'(t) comes from the product rule,
Re[i e^{i theta} (theta' zeta + zeta')], and on the critical line satisfies
|Z'(t)| = |Z1(1/2 + it)| with Z1(s) = zeta'(s) - omega(s) zeta(s) / 2.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import laurent, specfun
from ._kernels import power_log_sums
from .bernoulli import B2K
from .config import DEFAULT_CONFIG, PrecisionConfig
from .errors import AccuracyError, EnvelopeError, PoleError

T_ENVELOPE = 1e5
_EM_BERNOULLI_TERMS = 8
_POLE_RADIUS = 1e-8
_LAURENT_RADIUS = 0.1
_EPS = float(np.finfo(np.float64).eps)

# t-block size for shared-N batched evaluation; blocks sort ascending so the
# term count tracks the largest t in the block.
_BATCH = 512


@dataclass(frozen=True)
class ZetaEvaluation:
    """One zeta^{(order)}(s) value with its estimated absolute error."""

    value: complex
    derivative_order: int
    est_abs_err: float


@dataclass(frozen=True)
class Z1Value:
    """Z1(s) = zeta'(s) - omega(s) zeta(s) / 2 at the point s."""

    s: complex
    value: complex


_laurent_series_cache = None


def _near_pole_series() -> laurent.LaurentSeries:
    global _laurent_series_cache
    if _laurent_series_cache is None:
        _laurent_series_cache = laurent.series_zeta(8)
    return _laurent_series_cache


def _em_tail(s: np.ndarray, n_terms: np.ndarray, n_orders: int) -> np.ndarray:
    """Analytic s-derivatives (orders 0..n_orders-1) of the EM tail at cut N."""
    lN = np.log(n_terms.astype(np.float64))
    u = s - 1.0
    out = np.zeros((n_orders, s.shape[0]), dtype=np.complex128)
    # N^{1-s}/(s-1)
    a = np.exp(-u * lN)
    out[0] += a / u
    if n_orders > 1:
        out[1] += a * (-lN / u - 1.0 / u**2)
    if n_orders > 2:
        out[2] += a * (lN**2 / u + 2.0 * lN / u**2 + 2.0 / u**3)
    # N^{-s}/2
    b = 0.5 * np.exp(-s * lN)
    out[0] += b
    if n_orders > 1:
        out[1] += -lN * b
    if n_orders > 2:
        out[2] += lN**2 * b
    # Bernoulli corrections with rising-factorial derivatives built by the
    # product rule (safe at s = 0 where log-derivative forms blow up).
    fac = 1.0
    for k in range(1, _EM_BERNOULLI_TERMS + 1):
        fac *= (2 * k - 1) * (2 * k)
        P = np.ones_like(s)
        dP = np.zeros_like(s)
        d2P = np.zeros_like(s)
        for j in range(2 * k - 1):
            P, dP, d2P = P * (s + j), dP * (s + j) + P, d2P * (s + j) + 2.0 * dP
        w = (B2K[k - 1] / fac) * np.exp(-(s + 2 * k - 1) * lN)
        out[0] += w * P
        if n_orders > 1:
            out[1] += w * (dP - P * lN)
        if n_orders > 2:
            out[2] += w * (d2P - 2.0 * dP * lN + P * lN**2)
    return out


def _em_remainder_bound(sigma: float, t: np.ndarray, n_terms: int) -> np.ndarray:
    # Standard bound: first omitted Bernoulli term times |(s+2K+1)/(sigma+2K+1)|.
    K = _EM_BERNOULLI_TERMS
    m = 2 * K + 1
    s_abs = np.hypot(sigma, t)
    prod = np.ones_like(t)
    for j in range(m):
        prod *= np.hypot(sigma + j, t)
    bnext = abs(B2K[min(K, len(B2K) - 1)])
    fac = 1.0
    for j in range(1, 2 * K + 3):
        fac *= j
    scale = (s_abs + m) / max(sigma + m, 0.5)
    return bnext / fac * prod * n_terms ** (-(sigma + 2 * K + 1)) * scale


def _roundoff_est(sigma: float, t: np.ndarray, n_terms: int, order: int) -> np.ndarray:
    # Two float64 effects: pairwise-sum accumulation over the main sum and the
    # ~eps-relative phase error of t*log n.  Constants calibrated against
    # 30-digit reference values with >= 2x headroom.
    n = np.arange(1, max(n_terms, 2), dtype=np.float64)
    s_abs = float(np.sum(np.log(n) ** order * n ** (-sigma)))
    lN = np.log(max(n_terms, 2))
    phase = t * lN / np.sqrt(n_terms)
    return _EPS * s_abs * (32.0 + 3.0 * phase)


def zeta_batch(
    sigma: float,
    t: np.ndarray,
    n_orders: int = 1,
    config: PrecisionConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """zeta^{(j)}(sigma + i t) for j < n_orders over an array of ordinates.

    Returns (values (n_orders, len(t)), est_abs_err (n_orders, len(t))).
    All t must satisfy |sigma + it - 1| >= 0.1 (callers with near-pole points
    must go through `zeta`) and |t| <= 1e5.
    """
    t = np.ascontiguousarray(t, dtype=np.float64)
    if t.size == 0:
        return np.zeros((n_orders, 0), dtype=np.complex128), np.zeros((n_orders, 0))
    if np.any(np.abs(t) > T_ENVELOPE):
        raise EnvelopeError("zeta_engine", "zeta", f"|Im s| beyond supported envelope {T_ENVELOPE:g}")
    neg = t < 0.0
    ta = np.abs(t)
    order_idx = np.argsort(ta, kind="stable")
    vals = np.empty((n_orders, t.size), dtype=np.complex128)
    errs = np.empty((n_orders, t.size))

    # Blocks share one main-sum length N = 2*max(t); keep them geometrically
    # narrow in t so small ordinates never sum (and round off over) the term
    # count a much larger ordinate needs.
    blocks = []
    lo = 0
    sorted_t = ta[order_idx]
    while lo < t.size:
        cap = max(1.6 * sorted_t[lo] + 40.0, 60.0)
        hi = lo + 1
        while hi < t.size and hi - lo < _BATCH and sorted_t[hi] <= cap:
            hi += 1
        blocks.append(order_idx[lo:hi])
        lo = hi

    def run_block(idx):
        tb = ta[idx]
        t_hi = float(tb[-1])
        n_terms = max(20, int(np.ceil(2.0 * t_hi)))
        n = np.arange(1, n_terms, dtype=np.float64)
        logn = np.log(n)
        amp = np.exp(-sigma * logn)
        sums = power_log_sums(amp, logn, tb, n_orders)
        signs = np.array([(-1.0) ** j for j in range(n_orders)])
        sb = (sigma + 1j * tb).astype(np.complex128)
        res = signs[:, None] * sums + _em_tail(sb, np.full(tb.shape, n_terms), n_orders)
        eb = np.empty((n_orders, tb.size))
        rem = _em_remainder_bound(sigma, tb, n_terms)
        for j in range(n_orders):
            eb[j, :] = rem + _roundoff_est(sigma, tb, n_terms, j)
        return res, eb

    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_block, blocks))
    else:
        results = [run_block(b) for b in blocks]
    for idx, (res, eb) in zip(blocks, results):
        vals[:, idx] = res
        errs[:, idx] = eb
    flip = neg
    if np.any(flip):
        vals[:, flip] = np.conj(vals[:, flip])
    # Success criterion is abs-or-rel: a pure absolute bound is unattainable
    # in float64 once |zeta| grows like t^(1/2-sigma) left of the strip.
    tol = config.target_abs_tol + config.target_rel_tol * np.abs(vals)
    if np.any(errs > tol):
        worst = float((errs / tol).max())
        raise AccuracyError(
            "zeta_engine",
            "zeta",
            f"estimated error exceeds tolerance by factor {worst:.2f} "
            f"(abs_tol={config.target_abs_tol:g}, rel_tol={config.target_rel_tol:g})",
        )
    return vals, errs


def zeta(s, order: int = 0, config: PrecisionConfig = DEFAULT_CONFIG) -> ZetaEvaluation:
    """zeta^{(order)}(s) for order in {0, 1, 2}, |Im s| <= 1e5, s != 1."""
    s = complex(s)
    if order not in (0, 1, 2):
        raise EnvelopeError("zeta_engine", "zeta", f"derivative order {order} not in {{0,1,2}}")
    d = abs(s - 1.0)
    if d < _POLE_RADIUS:
        raise PoleError("zeta_engine", "zeta", f"s within {_POLE_RADIUS:g} of the pole at 1")
    if d < _LAURENT_RADIUS:
        ser = _near_pole_series()
        val = ser.evaluate(s - 1.0, order)
        err = max(ser.err) * 16.0 + abs(ser.coeff(ser.trunc_order)) * d**ser.trunc_order
        return ZetaEvaluation(value=complex(val), derivative_order=order, est_abs_err=float(err))
    if abs(s.imag) > T_ENVELOPE:
        raise EnvelopeError("zeta_engine", "zeta", f"|Im s| beyond supported envelope {T_ENVELOPE:g}")
    vals, errs = zeta_batch(s.real, np.array([s.imag]), n_orders=order + 1, config=config)
    return ZetaEvaluation(value=complex(vals[order, 0]), derivative_order=order, est_abs_err=float(errs[order, 0]))


# ---------------------------------------------------------------------------
# Hardy Z and friends
# ---------------------------------------------------------------------------

def _check_real_rotation(rotated: np.ndarray, zeta_abs: np.ndarray, where: str):
    bound = 1e-7 * (1.0 + zeta_abs)
    bad = np.abs(rotated.imag) > bound
    if np.any(bad):
        worst = float(np.abs(rotated.imag)[bad].max())
        raise AccuracyError("zeta_engine", where, f"rotated value has imaginary part {worst:.3e}; phase broken")


def hardy_z(t, config: PrecisionConfig = DEFAULT_CONFIG, threads: int = 1):
    """Z(t) = e^{i theta(t)} zeta(1/2 + it), real by construction; t >= 1."""
    arr = np.asarray(t, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    vals, _ = zeta_batch(0.5, arr, n_orders=1, config=config, threads=threads)
    theta = specfun.riemann_siegel_theta(arr, config)
    rotated = np.exp(1j * theta) * vals[0]
    _check_real_rotation(rotated, np.abs(vals[0]), "hardy_z")
    out = rotated.real
    return float(out[0]) if scalar else out


def hardy_z_prime(t, config: PrecisionConfig = DEFAULT_CONFIG, threads: int = 1):
    """Z'(t) = Re[i e^{i theta(t)} (theta'(t) zeta + zeta')(1/2 + it)]; t >= 1."""
    arr = np.asarray(t, dtype=np.float64)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    vals, _ = zeta_batch(0.5, arr, n_orders=2, config=config, threads=threads)
    theta = specfun.riemann_siegel_theta(arr, config)
    theta_p = specfun.theta_deriv(arr, config)
    rotated = 1j * np.exp(1j * theta) * (theta_p * vals[0] + vals[1])
    _check_real_rotation(rotated, np.abs(theta_p * vals[0]) + np.abs(vals[1]), "hardy_z_prime")
    out = rotated.real
    return float(out[0]) if scalar else out


def z1(s, config: PrecisionConfig = DEFAULT_CONFIG) -> Z1Value:
    """Z1(s) = zeta'(s) - omega(s) zeta(s)/2; needs |Im s| >= 1.

    Satisfies -Z1(s) = chi(s) Z1(1-s) and |Z1(1/2+it)| = |Z'(t)|.
    """
    s = complex(s)
    z0 = zeta(s, 0, config).value
    z1v = zeta(s, 1, config).value
    om = specfun.omega(s, config)
    return Z1Value(s=s, value=z1v - 0.5 * om * z0)
