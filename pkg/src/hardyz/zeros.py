"""Locate every zero of Z(t) on (0, t_max] and validate the census.

The scan walks a grid denser than the local average zero gap (step
min(0.5, pi / (2 theta'(t))), so the expected count per cell stays below
one half), brackets each sign change, and polishes brackets with a
bisection/secant hybrid that never loses the bracket.  The zero count is
reconciled block-by-block against the theta-based expectation
(theta(b) - theta(a))/pi; blocks that disagree are rescanned on a grid
refined by a factor of 4, up to 3 levels, before a CountMismatchError is
raised.

All zeros are treated as simple: no multiple zero of Z has ever been found,
and any |Z'(gamma)| below 1e-12 is flagged loudly (logging + the
`suspect_multiple` list) rather than folded silently into downstream sums.

Scans over disjoint t-intervals are independent, so the evaluation work can
be spread over worker threads; the work decomposition is fixed by t alone,
which keeps ordinate lists identical whatever the worker count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import specfun
from .config import DEFAULT_CONFIG, PrecisionConfig
from .errors import CountMismatchError, DomainError, EnvelopeError
from .zeta_engine import hardy_z, hardy_z_prime

logger = logging.getLogger(__name__)

_SCAN_START = 1.0
_BRACKET_WIDTH = 1e-10  # refined below the 1e-9 contract for reproducibility
_SIMPLE_FLOOR = 1e-12
_COUNT_SLACK = 2


@dataclass(frozen=True)
class ZeroRecord:
    """One ordinate gamma of Z with its refinement metadata."""

    gamma: float
    bracket: tuple
    z_prime: float
    refine_iters: int


@dataclass
class ZeroSet:
    """Ordered zeros on (0, t_max] plus the theta-based expected count."""

    t_max: float
    zeros: list
    count_expected: float
    suspect_multiple: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.zeros)

    def gammas(self) -> np.ndarray:
        return np.array([z.gamma for z in self.zeros])

    def z_primes(self) -> np.ndarray:
        return np.array([z.z_prime for z in self.zeros])

    def restrict(self, t_max: float) -> "ZeroSet":
        """Sub-census on (0, t_max]; valid because scans are prefix-stable."""
        kept = [z for z in self.zeros if z.gamma <= t_max]
        sub = ZeroSet(
            t_max=t_max,
            zeros=kept,
            count_expected=count_expected(t_max),
            suspect_multiple=[i for i in self.suspect_multiple if i < len(kept)],
        )
        sub.validate()
        return sub

    def validate(self):
        g = self.gammas()
        if g.size and (np.any(np.diff(g) <= 0) or g[0] <= 0 or g[-1] > self.t_max + 1e-9):
            raise CountMismatchError("zeros", "ZeroSet", "ordinates not strictly increasing within (0, t_max]")
        if abs(len(self.zeros) - round(self.count_expected)) > _COUNT_SLACK:
            raise CountMismatchError(
                "zeros",
                "ZeroSet",
                f"found {len(self.zeros)} zeros but theta-count expects {self.count_expected:.3f} (+/-{_COUNT_SLACK})",
            )


def count_expected(t: float, config: PrecisionConfig = DEFAULT_CONFIG) -> float:
    """Riemann-von Mangoldt expectation theta(t)/pi + 1 for t >= 10."""
    if t < 10.0:
        raise DomainError("zeros", "count_expected", f"requires t >= 10, got {t}")
    return specfun.riemann_siegel_theta(t, config) / np.pi + 1.0


def _grid_step(t: np.ndarray) -> np.ndarray:
    # Keep expected zeros per cell below 1/2: step <= pi / (2 theta'(t)).
    tp = np.maximum(specfun.theta_deriv(np.maximum(t, 2.0)), 1e-3)
    return np.minimum(0.5, np.pi / (2.0 * tp))


def _build_grid(t_lo: float, t_hi: float, refine: int = 1) -> np.ndarray:
    pts = [t_lo]
    t = t_lo
    while t < t_hi:
        t = min(t_hi, t + float(_grid_step(np.array([t]))[0]) / refine)
        pts.append(t)
    return np.array(pts)


def _bracket_signs(grid: np.ndarray, z: np.ndarray) -> np.ndarray:
    # Exact zeros on grid points are vanishingly unlikely; nudge them so every
    # sign change lives strictly inside a cell.
    z = np.where(z == 0.0, 1e-300, z)
    return np.nonzero(np.signbit(z[:-1]) != np.signbit(z[1:]))[0]


def _refine_brackets(lo, hi, flo, fhi, config, threads):
    """Vectorised bracket polishing: alternate secant and bisection steps."""
    lo = lo.copy()
    hi = hi.copy()
    flo = flo.copy()
    fhi = fhi.copy()
    iters = np.zeros(lo.shape, dtype=int)
    active = np.ones(lo.shape, dtype=bool)
    for sweep in range(80):
        width = hi - lo
        active = width > _BRACKET_WIDTH
        if not np.any(active):
            break
        mid = 0.5 * (lo + hi)
        if sweep % 2 == 1:
            denom = fhi - flo
            safe = np.abs(denom) > 1e-300
            sec = np.where(safe, hi - fhi * (hi - lo) / np.where(safe, denom, 1.0), mid)
            frac = np.clip((sec - lo) / np.maximum(width, 1e-300), 0.1, 0.9)
            mid = lo + frac * width
        xs = mid[active]
        fs = hardy_z(xs, config, threads=threads)
        fmid = np.zeros_like(mid)
        fmid[active] = fs
        go_left = (np.signbit(flo) != np.signbit(fmid)) & active
        go_right = active & ~go_left
        hi = np.where(go_left, mid, hi)
        fhi = np.where(go_left, fmid, fhi)
        lo = np.where(go_right, mid, lo)
        flo = np.where(go_right, fmid, flo)
        iters += active.astype(int)
    return lo, hi, iters


_SIGN_FLOOR = 1e-12  # |Z| below this is evaluation noise; its sign is meaningless
_NUDGE = 1.5e-10


def _ensure_straddle(lo, hi, config, threads):
    """Push an endpoint outward when the refiner landed it so close to the
    zero that its sign is noise; the sign change must be carried by values
    above the noise floor so every evaluator agrees on it.  Five fixed
    nudges keep the worst-case width at ~8.5e-10, inside the 1e-9 contract."""
    flo = hardy_z(lo, config, threads=threads)
    fhi = hardy_z(hi, config, threads=threads)
    for _ in range(5):
        bad = (
            (np.signbit(flo) == np.signbit(fhi))
            | (np.abs(flo) < _SIGN_FLOOR)
            | (np.abs(fhi) < _SIGN_FLOOR)
        )
        if not np.any(bad):
            break
        move_lo = bad & (np.abs(flo) <= np.abs(fhi))
        move_hi = bad & ~move_lo
        lo = np.where(move_lo, lo - _NUDGE, lo)
        hi = np.where(move_hi, hi + _NUDGE, hi)
        if np.any(move_lo):
            flo[move_lo] = hardy_z(lo[move_lo], config, threads=threads)
        if np.any(move_hi):
            fhi[move_hi] = hardy_z(hi[move_hi], config, threads=threads)
    return lo, hi


def scan_zeros(
    t_max: float,
    config: PrecisionConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> ZeroSet:
    """All zeros of Z on (0, t_max], 10 <= t_max <= 1e5.

    Raises CountMismatchError if, after grid refinement, the census still
    disagrees with round(theta(t_max)/pi + 1) by more than 2.
    """
    if not (10.0 <= t_max <= 1e5):
        raise EnvelopeError("zeros", "scan_zeros", f"t_max must be in [10, 1e5], got {t_max}")
    expected = count_expected(t_max, config)

    grid = _build_grid(_SCAN_START, t_max)
    z = hardy_z(grid, config, threads=threads)
    idx = _bracket_signs(grid, z)

    # Block reconciliation against the theta-based running count.
    for level in range(1, 4):
        if abs(len(idx) - round(expected)) <= 0:
            break
        anchors = np.linspace(0, len(grid) - 1, 65).astype(int)
        missing_blocks = []
        for a, b in zip(anchors[:-1], anchors[1:]):
            ta, tb = max(grid[a], 14.0), grid[b]
            if tb <= ta:
                continue
            exp_blk = (
                specfun.riemann_siegel_theta(tb, config) - specfun.riemann_siegel_theta(ta, config)
            ) / np.pi
            found_blk = int(np.sum((idx >= a) & (idx < b)))
            if found_blk < exp_blk - 0.8:
                missing_blocks.append((grid[a], grid[b]))
        if not missing_blocks:
            break
        logger.info("zero scan level %d: rescanning %d suspicious blocks", level, len(missing_blocks))
        refined = [grid]
        for ta, tb in missing_blocks:
            refined.append(_build_grid(ta, tb, refine=4**level))
        grid = np.unique(np.concatenate(refined))
        z = hardy_z(grid, config, threads=threads)
        idx = _bracket_signs(grid, z)

    lo, hi = grid[idx], grid[idx + 1]
    flo, fhi = z[idx], z[idx + 1]
    lo, hi, iters = _refine_brackets(lo, hi, flo, fhi, config, threads)
    if lo.size:
        lo, hi = _ensure_straddle(lo, hi, config, threads)
    gammas = 0.5 * (lo + hi)

    zp = hardy_z_prime(gammas, config, threads=threads) if gammas.size else np.array([])
    records = [
        ZeroRecord(gamma=float(g), bracket=(float(a), float(b)), z_prime=float(d), refine_iters=int(it))
        for g, a, b, d, it in zip(gammas, lo, hi, zp, iters)
    ]
    suspect = [i for i, r in enumerate(records) if abs(r.z_prime) < _SIMPLE_FLOOR]
    for i in suspect:
        logger.warning(
            "zero at gamma=%.12f has |Z'| = %.3e < %.0e: possible multiple zero",
            records[i].gamma,
            abs(records[i].z_prime),
            _SIMPLE_FLOOR,
        )
    zs = ZeroSet(t_max=t_max, zeros=records, count_expected=expected, suspect_multiple=suspect)
    zs.validate()
    return zs


def to_csv(zero_set: ZeroSet) -> str:
    """CSV export: gamma, z_prime, bracket_lo, bracket_hi at 17 significant digits."""
    lines = ["gamma,z_prime,bracket_lo,bracket_hi"]
    for r in zero_set.zeros:
        lines.append(f"{r.gamma:.17g},{r.z_prime:.17g},{r.bracket[0]:.17g},{r.bracket[1]:.17g}")
    return "\n".join(lines) + "\n"
