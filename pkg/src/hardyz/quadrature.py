"""Panelised Gauss-Legendre quadrature for oscillatory integrands.

Panels are laid out by marching from the left endpoint with a caller-supplied
local width (typically the local zero gap pi/theta'(t)), so a panel never
spans more than about one oscillation of the integrand.  The verification
pass re-integrates every panel at higher order; panels that disagree are
subdivided by a factor of 4, up to 3 levels, after which a QuadratureError
carries the worst panel's diagnostics.

All reductions are ordered (NumPy pairwise over the panel array), so results
are bit-reproducible and independent of the worker count used to evaluate
the integrand.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import QuadratureError


@lru_cache(maxsize=32)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def march_panels(t_lo: float, t_hi: float, width_fn, max_width: float = 2.0) -> np.ndarray:
    """Panel edges from t_lo to t_hi; width_fn(t) gives the local panel width."""
    if t_hi <= t_lo:
        raise QuadratureError("quadrature", "march_panels", f"empty interval [{t_lo}, {t_hi}]")
    edges = [t_lo]
    t = t_lo
    while t < t_hi:
        w = min(max_width, max(1e-3, float(width_fn(t))))
        t = min(t_hi, t + w)
        edges.append(t)
    return np.array(edges)


def _panel_values(f, edges: np.ndarray, order: int) -> np.ndarray:
    x, w = gauss_legendre(order)
    a = edges[:-1]
    half = 0.5 * (edges[1:] - a)
    mid = a + half
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = np.asarray(f(nodes), dtype=np.float64).reshape(len(a), order)
    return half * (vals @ w)


def integrate(
    f,
    t_lo: float,
    t_hi: float,
    width_fn,
    order: int = 12,
    rel_tol: float = 1e-9,
    abs_tol: float = 1e-12,
    max_level: int = 3,
) -> tuple[float, float]:
    """Integrate the vectorised callable f over [t_lo, t_hi].

    Returns (value, est_err).  est_err is the summed per-panel deviation
    between the order-p and order-(p+6) rules after adaptive subdivision.
    """
    edges = march_panels(t_lo, t_hi, width_fn)
    coarse = _panel_values(f, edges, order)
    fine = _panel_values(f, edges, order + 6)
    scale = max(abs_tol, float(np.abs(fine).sum()) * rel_tol)

    for _ in range(max_level):
        dev = np.abs(fine - coarse)
        bad = dev > (abs_tol + rel_tol * np.maximum(np.abs(fine), 1.0)) / max(len(edges) - 1, 1)
        if dev.sum() <= scale or not np.any(bad):
            break
        # subdivide offending panels by 4, keep the rest
        new_edges = []
        for i in range(len(edges) - 1):
            new_edges.append(edges[i])
            if bad[i]:
                step = (edges[i + 1] - edges[i]) / 4.0
                new_edges.extend(edges[i] + step * np.array([1.0, 2.0, 3.0]))
        new_edges.append(edges[-1])
        edges = np.array(new_edges)
        coarse = _panel_values(f, edges, order)
        fine = _panel_values(f, edges, order + 6)

    dev = np.abs(fine - coarse)
    err = float(dev.sum())
    if err > 64.0 * scale:
        worst = int(np.argmax(dev))
        raise QuadratureError(
            "quadrature",
            "integrate",
            f"failed to converge: total deviation {err:.3e}; worst panel "
            f"[{edges[worst]:.6f}, {edges[worst + 1]:.6f}] deviation {dev[worst]:.3e}",
        )
    return float(fine.sum()), err
