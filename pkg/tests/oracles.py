"""Independent oracles the tests compare the library against.

Nothing here shares code with the package: zeta values come from an
alternating-series accelerator, Stieltjes constants from a generalised
Richardson extrapolation of the defining limit, residues from numeric
contour integration at high working precision, and special-function spot
values from mpmath.
"""

import math

import mpmath as mp
import numpy as np


def borwein_zeta(s: complex, n: int = 48) -> complex:
    """zeta(s) from the Chebyshev-accelerated alternating series.

    Error decays like (3 + sqrt 8)^-n; float64-roundoff-limited for
    moderate |s|.  Not valid at s = 1 or where 1 - 2^(1-s) vanishes.
    """
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
    d = [0.0] * (n + 1)
    acc = 0.0
    for i in range(n + 1):
        acc += math.factorial(n + i - 1) * 4**i / (math.factorial(n - i) * math.factorial(2 * i))
        d[i] = n * acc
    eta = 0.0 + 0.0j
    for k in range(n):
        eta += (-1) ** k * (d[k] - d[n]) * (k + 1) ** (-complex(s))
    eta /= -d[n]
    return eta / (1.0 - 2.0 ** (1.0 - complex(s)))


def stieltjes_limit(h: int, base_n: int = 4000, rungs: int = None) -> float:
    """gamma_h by generalised Richardson extrapolation of
    s(n) = sum_{k<=n} log^h k / k - log^(h+1) n / (h+1).

    The error of s(n) is (a_0 + a_1 log n + ... + a_h log^h n)/n + O(1/n^2);
    sampling on a geometric ladder and solving for the limit removes the
    whole 1/n * polylog layer.
    """
    if rungs is None:
        rungs = h + 3
    ns = [base_n * 2**i for i in range(rungs)]
    svals = []
    for n in ns:
        ks = np.arange(1, n + 1, dtype=np.float64)
        terms = np.log(ks) ** h / ks
        svals.append(math.fsum(terms.tolist()) - math.log(n) ** (h + 1) / (h + 1))
    a = np.zeros((rungs, h + 2))
    a[:, 0] = 1.0
    for j in range(h + 1):
        a[:, j + 1] = [math.log(n) ** j / n for n in ns]
    sol, *_ = np.linalg.lstsq(a, np.array(svals), rcond=None)
    return float(sol[0])


def contour_residue(f_mp, x: float, nodes: int = 2048, radius: float = 0.5, dps: int = 25) -> float:
    """Res_{s=1} f(s) x^s / s by the trapezoid rule on |s-1| = radius.

    Spectrally accurate: the integrand is analytic in an annulus around the
    contour, so 2048 nodes is vast overkill; dps bounds the result instead.
    """
    with mp.workdps(dps):
        tot = mp.mpc(0)
        r = mp.mpf(radius)
        for j in range(nodes):
            e = mp.expjpi(2 * mp.mpf(j) / nodes)
            s = 1 + r * e
            tot += f_mp(s) * mp.power(x, s) / s * e
        return float((tot * r / nodes).real)


def w_defining_integral(g: int, v: float, dps: int = 20) -> float:
    """W_g(v) = e^-v int_0^(e^v) log^g u du, via the substitution u = e^w."""
    with mp.workdps(dps):
        val = mp.quad(lambda w: w**g * mp.e**w, [-60, mp.mpf(v)])
        return float(mp.e ** (-mp.mpf(v)) * val)


def mp_zeta(s: complex, order: int = 0, dps: int = 25) -> complex:
    with mp.workdps(dps):
        return complex(mp.zeta(mp.mpc(s.real, s.imag), derivative=order))


def mp_theta_prime(t: float, dps: int = 25) -> float:
    with mp.workdps(dps):
        return float(mp.re(mp.psi(0, mp.mpf(1) / 4 + 1j * mp.mpf(t) / 2)) / 2 - mp.log(mp.pi) / 2)


def bisect_root(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    flo, fhi = f(lo), f(hi)
    assert flo * fhi < 0, "oracle bisection needs a sign change"
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def dlog_divisor_bruteforce(n: int) -> float:
    """D(n) by literal divisor enumeration."""
    total = 0.0
    for d in range(1, n + 1):
        if n % d == 0:
            total += math.log(d) * math.log(n // d)
    return total


def vonmangoldt_bruteforce(n: int) -> float:
    if n < 2:
        return 0.0
    for p in range(2, n + 1):
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return math.log(p) if m == 1 else 0.0
    return 0.0
