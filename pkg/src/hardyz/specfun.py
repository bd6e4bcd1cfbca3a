"""Gamma-family special functions and the chi / theta phase apparatus.

Everything here is a pure function of its arguments.  log_gamma and digamma
use recurrence shifts into the Stirling region followed by the asymptotic
series with Bernoulli corrections, which keeps relative error near 1e-14
across the envelope |Im s| <= 1e5 used by the rest of the package.

chi(s) = 2^s pi^(s-1) sin(pi s / 2) Gamma(1 - s) is always assembled in log
domain and exponentiated last: |chi| grows like (t/2pi)^(1/2-sigma) and the
linear-domain product overflows long before the envelope edge.

theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi is the phase that makes
e^{i theta(t)} zeta(1/2 + it) real.  The branch is the continuous one with
theta(0) = 0, matching the large-t asymptotic (t/2) log(t/(2 pi e)) - pi/8;
with this convention theta(T)/pi + 1 counts critical-line zeros.  It obeys
e^{2 i theta(t)} * chi(1/2 + it) = 1.
"""

from __future__ import annotations

import numpy as np

from .bernoulli import B2K
from .config import DEFAULT_CONFIG, PrecisionConfig
from .errors import DomainError, PoleError, RangeOverflowError

LOG_PI = float(np.log(np.pi))
LOG_2 = float(np.log(2.0))
LOG_2PI = float(np.log(2.0 * np.pi))
TWO_PI = 2.0 * np.pi

# Shift below this modulus before applying the Stirling series.
_STIRLING_RADIUS = 12.0
# log-domain |Re log chi| beyond which exp() is refused.
_EXP_LIMIT = 700.0


def _as_complex_array(s):
    arr = np.asarray(s, dtype=np.complex128)
    return arr, arr.ndim == 0


def _stirling_log_gamma(z, n_terms: int):
    # Valid for |z| >= _STIRLING_RADIUS, Re z > 0.
    out = (z - 0.5) * np.log(z) - z + 0.5 * LOG_2PI
    zinv2 = 1.0 / (z * z)
    p = 1.0 / z
    for k in range(1, n_terms + 1):
        out = out + B2K[k - 1] / ((2 * k - 1) * (2 * k)) * p
        p = p * zinv2
    return out


def log_gamma(s, config: PrecisionConfig = DEFAULT_CONFIG):
    """Principal branch of log Gamma(s), scalar or elementwise on arrays.

    Not defined on the non-positive integers; a PoleError is raised if s is
    within 1e-8 of one.
    """
    z, scalar = _as_complex_array(s)
    near_int = np.abs(z - np.round(z.real)) < 1e-8
    if np.any(near_int & (np.round(z.real) <= 0)):
        raise PoleError("specfun", "log_gamma", "s within 1e-8 of a pole of Gamma (non-positive integer)")

    flip = z.imag < 0.0
    z = np.where(flip, np.conj(z), z)
    acc = np.zeros_like(z)
    # Recurrence shift: log Gamma(z) = log Gamma(z + n) - sum log(z + k).
    for _ in range(64):
        mask = np.abs(z) < _STIRLING_RADIUS
        if not np.any(mask):
            break
        acc = np.where(mask, acc - np.log(np.where(mask, z, 1.0)), acc)
        z = np.where(mask, z + 1.0, z)
    n_terms = min(10, max(8, config.max_series_terms))
    out = _stirling_log_gamma(z, n_terms) + acc
    out = np.where(flip, np.conj(out), out)
    return complex(out) if scalar else out


def digamma(s, config: PrecisionConfig = DEFAULT_CONFIG):
    """psi(s) = Gamma'(s)/Gamma(s), same domain handling as log_gamma."""
    z, scalar = _as_complex_array(s)
    near_int = np.abs(z - np.round(z.real)) < 1e-8
    if np.any(near_int & (np.round(z.real) <= 0)):
        raise PoleError("specfun", "digamma", "s within 1e-8 of a pole of psi (non-positive integer)")

    flip = z.imag < 0.0
    z = np.where(flip, np.conj(z), z)
    acc = np.zeros_like(z)
    for _ in range(64):
        mask = np.abs(z) < _STIRLING_RADIUS
        if not np.any(mask):
            break
        acc = np.where(mask, acc - 1.0 / np.where(mask, z, 1.0), acc)
        z = np.where(mask, z + 1.0, z)
    out = np.log(z) - 0.5 / z
    zinv2 = 1.0 / (z * z)
    p = zinv2
    n_terms = min(10, max(8, config.max_series_terms))
    for k in range(1, n_terms + 1):
        out = out - B2K[k - 1] / (2 * k) * p
        p = p * zinv2
    out = out + acc
    out = np.where(flip, np.conj(out), out)
    return complex(out) if scalar else out


def _log_sin_upper(z):
    # log sin(z) for Im z > 0, continuous there:
    # sin z = (i/2) e^{-iz} (1 - e^{2iz}).
    return 1j * (np.pi / 2) - LOG_2 - 1j * z + np.log1p(-np.exp(2j * z))


def _cot_upper(z):
    # cot(z) for Im z > 0 via q = e^{2iz}; stable as Im z -> +inf.
    q = np.exp(2j * z)
    return -1j * (1.0 + 2.0 * q / (1.0 - q))


def log_chi_upper(s):
    """log chi(s) for Im s >= 0.5 (vectorized); branch irrelevant after exp."""
    s = np.asarray(s, dtype=np.complex128)
    return s * LOG_2 + (s - 1.0) * LOG_PI + _log_sin_upper(np.pi * s / 2.0) + np.conj(
        log_gamma(np.conj(1.0 - s))
    )


def chi(s, config: PrecisionConfig = DEFAULT_CONFIG):
    """chi(s) in the functional equation zeta(s) = chi(s) zeta(1-s).

    Scalar or elementwise.  Raises PoleError at the poles (odd integers >= 1)
    and RangeOverflowError if even the log-domain magnitude exceeds the
    representable range.
    """
    z, scalar = _as_complex_array(s)
    out = np.empty_like(z)
    t = z.imag

    upper = t >= 0.5
    lower = t <= -0.5
    middle = ~(upper | lower)
    if np.any(upper):
        lc = log_chi_upper(z[upper])
        if np.any(lc.real > _EXP_LIMIT):
            raise RangeOverflowError("specfun", "chi", "|chi| exceeds double range even in log domain")
        out[upper] = np.exp(lc)
    if np.any(lower):
        lc = log_chi_upper(np.conj(z[lower]))
        if np.any(lc.real > _EXP_LIMIT):
            raise RangeOverflowError("specfun", "chi", "|chi| exceeds double range even in log domain")
        out[lower] = np.conj(np.exp(lc))
    if np.any(middle):
        out[middle] = [_chi_near_real_axis(complex(w)) for w in np.atleast_1d(z[middle])]
    return complex(out) if scalar else out


def _chi_near_real_axis(w: complex) -> complex:
    # |Im w| < 0.5: evaluate the product directly, reflecting chi(w) = 1/chi(1-w)
    # for Re w > 1/2 so Gamma(1-.) is evaluated away from its poles.
    near = round(w.real)
    if near >= 1 and near % 2 == 1 and abs(w - near) < 1e-8:
        raise PoleError("specfun", "chi", f"chi has a pole at s={w!r} (odd positive integer)")

    def direct(v: complex) -> complex:
        return (2.0**v) * np.pi ** (v - 1.0) * np.sin(np.pi * v / 2.0) * np.exp(log_gamma(1.0 - v))

    if w.real <= 0.5:
        return complex(direct(w))
    return 1.0 / complex(direct(1.0 - w))


def omega(s, config: PrecisionConfig = DEFAULT_CONFIG):
    """omega(s) = chi'(s)/chi(s), computed analytically as
    log 2 + log pi + (pi/2) cot(pi s/2) - psi(1 - s).

    Requires |Im s| >= 1; asymptotically -log(t/2pi) + O(1/t).
    """
    z, scalar = _as_complex_array(s)
    t = z.imag
    if np.any(np.abs(t) < 1.0):
        raise DomainError("specfun", "omega", "requires |Im s| >= 1")
    flip = t < 0.0
    z = np.where(flip, np.conj(z), z)
    cot = _cot_upper(np.pi * z / 2.0)
    psi = np.conj(digamma(np.conj(1.0 - z), config))
    out = LOG_2 + LOG_PI + (np.pi / 2.0) * cot - psi
    out = np.where(flip, np.conj(out), out)
    return complex(out) if scalar else out


def riemann_siegel_theta(t, config: PrecisionConfig = DEFAULT_CONFIG):
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi for t >= 1."""
    arr = np.asarray(t, dtype=np.float64)
    scalar = arr.ndim == 0
    if np.any(arr < 1.0):
        raise DomainError("specfun", "riemann_siegel_theta", "requires t >= 1")
    lg = log_gamma(0.25 + 0.5j * arr, config)
    out = np.imag(lg) - 0.5 * arr * LOG_PI
    return float(out) if scalar else out


def theta_deriv(t, config: PrecisionConfig = DEFAULT_CONFIG):
    """theta'(t) = Re psi(1/4 + it/2)/2 - log(pi)/2; ~ (1/2) log(t/2pi)."""
    arr = np.asarray(t, dtype=np.float64)
    scalar = arr.ndim == 0
    if np.any(arr < 1.0):
        raise DomainError("specfun", "theta_deriv", "requires t >= 1")
    psi = digamma(0.25 + 0.5j * arr, config)
    out = 0.5 * np.real(psi) - 0.5 * LOG_PI
    return float(out) if scalar else out
