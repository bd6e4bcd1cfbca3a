"""NumPy implementations of the hot kernels.

Semantically identical to the compiled versions in ``_ckernels.pyx``;
results may differ from the compiled backend at the level of floating-point
rounding (different summation orders), never beyond ~1e-12 relative.
"""

import numpy as np

BACKEND = "python"

# Bound on the scratch matrix (t-block x n_terms) in complex128 entries.
_BLOCK_BUDGET = 4_000_000


def power_log_sums(amp: np.ndarray, logn: np.ndarray, t: np.ndarray, n_orders: int) -> np.ndarray:
    """Dirichlet-type partial sums S_j(t) = sum_n amp[n] * logn[n]**j * e^{-i t logn[n]}.

    Returns a complex128 array of shape (n_orders, len(t)).  With
    amp = n**-sigma and logn = log n this is the main-sum block of the
    Euler-Maclaurin evaluation of zeta^{(j)}(sigma + i t) up to sign.
    """
    amp = np.ascontiguousarray(amp, dtype=np.float64)
    logn = np.ascontiguousarray(logn, dtype=np.float64)
    t = np.ascontiguousarray(t, dtype=np.float64)
    if n_orders < 1 or n_orders > 3:
        raise ValueError("n_orders must be 1, 2 or 3")
    n_terms = amp.shape[0]
    out = np.empty((n_orders, t.shape[0]), dtype=np.complex128)
    block = max(1, _BLOCK_BUDGET // max(n_terms, 1))
    for lo in range(0, t.shape[0], block):
        tb = t[lo : lo + block]
        base = np.exp(np.outer(tb, -1j * logn))
        base *= amp
        out[0, lo : lo + block] = base.sum(axis=1)
        if n_orders > 1:
            base *= logn
            out[1, lo : lo + block] = base.sum(axis=1)
        if n_orders > 2:
            base *= logn
            out[2, lo : lo + block] = base.sum(axis=1)
    return out


def sieve_tables(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Tables of D(n) = sum_{d|n} log d log(n/d) and (1*log)(n) = sum_{d|n} log d.

    Index 0 is unused; both tables are exact divisor enumerations built in
    O(n_max log n_max).
    """
    dd = np.zeros(n_max + 1)
    ol = np.zeros(n_max + 1)
    logs = np.log(np.arange(1, n_max + 1, dtype=np.float64))
    for d in range(2, n_max + 1):
        ld = logs[d - 1]
        m = n_max // d
        ol[d::d] += ld
        if m >= 2:
            dd[2 * d :: d] += ld * logs[1:m]
    return dd, ol
