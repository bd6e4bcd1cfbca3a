"""Moment computations and the asymptotic main-term assembly.

Main-term polynomials live in the variable x = log(T/2pi) and predict a
moment as normalization * T * P(x).  The building blocks W_g satisfy the
integration-by-parts recurrence W_g(v) = v^g - g W_{g-1}(v) with W_0 = 1,
and the degree-(2k+1) monic moment polynomial is

    P_{2k+1}(x) = W_{2k+1}(x) + (4k+2) sum_{h<=2k} C(2k,h) (-2)^h gamma_h W_{2k-h}(x),

predicting integral_0^T Z^(k)(t)^2 dt = T P_{2k+1}(x) / (4^k (2k+1)).

The discrete moment sum_{0<gamma<=T} Z'(gamma)^2 gets a five-block main term
assembled from two sources:

  * the log-weighted second moment (1/2pi) int_1^T log(t/2pi) Z'(t)^2 dt,
    reduced by parts to (1/24pi) [x T P_3(x) - T sum_k p_k W_k(x)] using
    int_1^T log^k(t/2pi) dt = T W_k(x) + O(1);

  * the shifted-contour piece, whose three convolution sums are replaced by
    their Perron residues from `laurent` (signs fixed against the exact
    sieve sums in `dirichlet`, not trusted from hand derivation):
    sum_{mn<=x} Lambda(m) D(n)   ~ -Res (zeta'/zeta) zeta'^2 x^s/s,
    sum_{n<=x} D(n) log n        ~  Res (-2 zeta' zeta'') x^s/s,
    sum_{n<=x} (1*log)(n) log^2n ~  Res (-(zeta zeta')'') x^s/s,
    combined as 2 Re I = (T/pi) [ -R_LD(x) - R_Dlog(x) + R_1log(x)/4 ].

The assembled log^4 and log^3 coefficients must reproduce 1/(24 pi) and
(2 gamma_0 - 1)/(6 pi) to 1e-12; anything else raises AssemblyError.
Endpoint constants from the t=1 boundary are O(1) and are deliberately
folded into the residual (the error envelope is T^(3/4) log^(7/2) T).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import laurent, quadrature, specfun
from .config import DEFAULT_CONFIG, PrecisionConfig
from .errors import AssemblyError, DomainError, SeriesError
from .zeros import ZeroSet
from .zeta_engine import hardy_z, hardy_z_prime

LOG_2PI = float(np.log(2.0 * np.pi))


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _poly_eval(coeffs, x: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class MainTermPolynomial:
    """Coefficients (ascending in x = log(T/2pi)) of a main term
    normalization * T * P(x)."""

    coeffs: tuple
    normalization: float = 1.0
    label: str = ""

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> float:
        return self.coeffs[-1]

    def poly(self, x: float) -> float:
        return _poly_eval(self.coeffs, x)

    def value(self, t_max: float) -> float:
        x = math.log(t_max / (2.0 * math.pi))
        return self.normalization * t_max * self.poly(x)

    def parts(self, t_max: float) -> dict:
        x = math.log(t_max / (2.0 * math.pi))
        return {
            f"log{j}": self.normalization * t_max * c * x**j
            for j, c in enumerate(self.coeffs)
        }


def w_poly(g: int) -> MainTermPolynomial:
    """W_g via W_g(v) = v^g - g W_{g-1}(v), W_0 = 1; integer coefficients."""
    if not (0 <= g <= 6):
        raise DomainError("moments_asymptotics", "w_poly", f"g must be in [0, 6], got {g}")
    coeffs = [1.0]
    for m in range(1, g + 1):
        nxt = [-m * c for c in coeffs]
        while len(nxt) < m + 1:
            nxt.append(0.0)
        nxt[m] += 1.0
        coeffs = nxt
    return MainTermPolynomial(coeffs=tuple(coeffs), normalization=1.0, label=f"W_{g}")


def hall_poly(k: int, gammas: laurent.StieltjesTable | None = None) -> MainTermPolynomial:
    """Monic degree-(2k+1) moment polynomial, normalization 1/(4^k (2k+1))."""
    if k not in (0, 1, 2):
        raise DomainError("moments_asymptotics", "hall_poly", f"k must be 0, 1 or 2, got {k}")
    if gammas is None:
        gammas = laurent.stieltjes(2 * k if k else 0)
    if len(gammas) < 2 * k + 1:
        raise SeriesError("moments_asymptotics", "hall_poly", f"need gamma_0..gamma_{2*k}, table has {len(gammas)}")
    coeffs = [0.0] * (2 * k + 2)
    for j, c in enumerate(w_poly(2 * k + 1).coeffs):
        coeffs[j] += c
    for h in range(2 * k + 1):
        factor = (4 * k + 2) * math.comb(2 * k, h) * (-2.0) ** h * gammas[h]
        for j, c in enumerate(w_poly(2 * k - h).coeffs):
            coeffs[j] += factor * c
    poly = MainTermPolynomial(
        coeffs=tuple(coeffs), normalization=1.0 / (4**k * (2 * k + 1)), label=f"P_{2*k+1}"
    )
    if abs(poly.leading - 1.0) > 1e-12:
        raise AssemblyError("moments_asymptotics", "hall_poly", f"P_{2*k+1} not monic: leading {poly.leading!r}")
    return poly


# ---------------------------------------------------------------------------
# theorem main term
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremMainTerm:
    """Five-block prediction for sum_{0<gamma<=T} Z'(gamma)^2.

    `poly` carries the absolute coefficients a_0..a_4 (value = T sum a_j x^j);
    `log_weighted_block` and `contour_block` are the two assembly sources with
    the same convention.
    """

    poly: MainTermPolynomial
    log_weighted_block: MainTermPolynomial
    contour_block: MainTermPolynomial

    def value(self, t_max: float) -> float:
        return self.poly.value(t_max)

    def leading_only(self, t_max: float) -> float:
        x = math.log(t_max / (2.0 * math.pi))
        return self.poly.coeffs[4] * t_max * x**4


def log_weighted_block_from_p3(p3: MainTermPolynomial) -> list:
    """Coefficients of (1/24pi)[x P_3(x) - sum_k p_k W_k(x)], ascending.

    This is the reduction of (1/2pi) int_1^T log(t/2pi) Z'^2 dt using
    int_1^T log^k(t/2pi) dt = T W_k(log(T/2pi)) + O(1).
    """
    b = [0.0] * (p3.degree + 2)
    for j, c in enumerate(p3.coeffs):
        b[j + 1] += c
    for kdeg, pk in enumerate(p3.coeffs):
        for j, c in enumerate(w_poly(kdeg).coeffs):
            b[j] -= pk * c
    return [c / (24.0 * math.pi) for c in b]


def main_term_theorem(config: PrecisionConfig = DEFAULT_CONFIG) -> TheoremMainTerm:
    """Assemble the five-block main term and verify its top coefficients."""
    g = laurent.stieltjes(4, config)
    b = log_weighted_block_from_p3(hall_poly(1, g))

    # (1/pi) [-R_LD - R_Dlog + R_1log/4], all residue log-polynomials
    r_ld = laurent.residue_log_poly(laurent.series_conv_lambda_dlog(config))
    r_dlog = laurent.residue_log_poly(laurent.series_dlog_weighted(config))
    r_1log = laurent.residue_log_poly(laurent.series_logsq_divisor(config))
    q = [0.0] * 5
    for j in range(5):
        q[j] = (-r_ld[j] - r_dlog[j] + 0.25 * r_1log[j]) / math.pi

    total = [bj + qj for bj, qj in zip(b, q)]

    lead_expected = 1.0 / (24.0 * math.pi)
    cube_expected = (2.0 * g[0] - 1.0) / (6.0 * math.pi)
    if abs(total[4] - lead_expected) > 1e-12:
        raise AssemblyError(
            "moments_asymptotics",
            "main_term_theorem",
            f"log^4 coefficient {total[4]!r} != 1/(24 pi) = {lead_expected!r}",
        )
    if abs(total[3] - cube_expected) > 1e-12:
        raise AssemblyError(
            "moments_asymptotics",
            "main_term_theorem",
            f"log^3 coefficient {total[3]!r} != (2 gamma_0 - 1)/(6 pi) = {cube_expected!r}",
        )
    return TheoremMainTerm(
        poly=MainTermPolynomial(coeffs=tuple(total), normalization=1.0, label="theorem"),
        log_weighted_block=MainTermPolynomial(coeffs=tuple(b), normalization=1.0, label="log_weighted"),
        contour_block=MainTermPolynomial(coeffs=tuple(q), normalization=1.0, label="contour"),
    )


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MomentReport:
    """Computed vs predicted moment at one T, with residual diagnostics."""

    kind: str
    t_max: float
    computed: float
    predicted: float
    parts: dict
    envelope: float

    @property
    def residual(self) -> float:
        return self.computed - self.predicted

    @property
    def residual_over_envelope(self) -> float:
        return self.residual / self.envelope

    @property
    def ratio(self) -> float:
        return self.computed / self.predicted if self.predicted else math.inf

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "t_max": self.t_max,
            "computed": self.computed,
            "predicted": self.predicted,
            "residual": self.residual,
            "residual_over_envelope": self.residual_over_envelope,
            "ratio": self.ratio,
            "parts": dict(self.parts),
        }


def _gap_width(t):
    tp = max(specfun.theta_deriv(max(float(t), 2.0)), 0.4)
    return min(2.0, math.pi / tp)


def continuous_moment(
    k: int,
    t_max: float,
    t_lo: float = 1.0,
    config: PrecisionConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> MomentReport:
    """Quadrature of Z^(k)(t)^2 over [t_lo, t_max] vs the Hall main term.

    k in {0, 1}; 100 <= t_max <= 1e4.  Panels track the local zero gap with
    >= 12 Gauss-Legendre nodes each; target absolute error 1e-6 * t_max.
    """
    if k not in (0, 1):
        raise DomainError("moments_asymptotics", "continuous_moment", f"k must be 0 or 1, got {k}")
    if not (100.0 <= t_max <= 1e4):
        raise DomainError("moments_asymptotics", "continuous_moment", f"t_max must be in [100, 1e4], got {t_max}")
    if t_lo < 1.0 or t_lo >= t_max:
        raise DomainError("moments_asymptotics", "continuous_moment", f"t_lo must be in [1, t_max), got {t_lo}")

    fn = hardy_z if k == 0 else hardy_z_prime

    def integrand(t):
        return fn(t, config, threads=threads) ** 2

    value, _ = quadrature.integrate(
        integrand, t_lo, t_max, _gap_width, order=12, rel_tol=1e-9, abs_tol=5e-7 * t_max
    )
    poly = hall_poly(k)
    predicted = poly.value(t_max) - (poly.value(t_lo) if t_lo > 1.0 else 0.0)
    envelope = t_max**0.75 * math.log(t_max) ** (2 * k + 0.5)
    return MomentReport(
        kind=f"continuous_k{k}",
        t_max=t_max,
        computed=value,
        predicted=predicted,
        parts=poly.parts(t_max),
        envelope=envelope,
    )


def discrete_moment(
    zero_set: ZeroSet,
    theorem: TheoremMainTerm | None = None,
    config: PrecisionConfig = DEFAULT_CONFIG,
) -> MomentReport:
    """sum Z'(gamma)^2 over the census vs the five-block theorem prediction."""
    zero_set.validate()
    if theorem is None:
        theorem = main_term_theorem(config)
    computed = float(np.sum(zero_set.z_primes() ** 2))
    t = zero_set.t_max
    predicted = theorem.value(t)
    envelope = t**0.75 * math.log(t) ** 3.5
    return MomentReport(
        kind="discrete",
        t_max=t,
        computed=computed,
        predicted=predicted,
        parts=theorem.poly.parts(t),
        envelope=envelope,
    )


def weighted_continuous_moment(
    t_max: float,
    t_lo: float = 1.0,
    config: PrecisionConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> MomentReport:
    """(1/2pi) int log(t/2pi) Z'(t)^2 dt vs the log-weighted assembly block."""
    if not (100.0 <= t_max <= 1e4):
        raise DomainError(
            "moments_asymptotics", "weighted_continuous_moment", f"t_max must be in [100, 1e4], got {t_max}"
        )

    def integrand(t):
        return np.log(t / (2.0 * np.pi)) * hardy_z_prime(t, config, threads=threads) ** 2 / (2.0 * np.pi)

    value, _ = quadrature.integrate(
        integrand, t_lo, t_max, _gap_width, order=12, rel_tol=1e-9, abs_tol=5e-7 * t_max
    )
    block = main_term_theorem(config).log_weighted_block
    return MomentReport(
        kind="weighted",
        t_max=t_max,
        computed=value,
        predicted=block.value(t_max),
        parts=block.parts(t_max),
        envelope=t_max**0.75 * math.log(t_max) ** 3.5,
    )


def weighted_moment_by_parts(
    t_max: float,
    config: PrecisionConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> float:
    """The same weighted moment through integration by parts:
    (1/2pi)[log(T/2pi) I(T) - int_1^T I(t)/t dt] with I(t) = int_1^t Z'(x)^2 dx.

    Used as a calculus-identity cross-check on the direct quadrature.
    """
    edges = quadrature.march_panels(1.0, t_max, _gap_width)
    order = 12
    x, w = quadrature.gauss_legendre(order)

    a = edges[:-1]
    half = 0.5 * (edges[1:] - a)
    mid = a + half
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = hardy_z_prime(nodes, config, threads=threads) ** 2
    panel_ints = half * (vals.reshape(len(a), order) @ w)
    I_edges = np.concatenate([[0.0], np.cumsum(panel_ints)])
    I_total = float(I_edges[-1])

    # inner integrals I(t_node) = I(edge) + int_edge^node Z'^2, 8-node rule
    xi, wi = quadrature.gauss_legendre(8)
    outer_nodes = mid[:, None] + half[:, None] * x[None, :]
    inner_half = 0.5 * (outer_nodes - a[:, None])
    inner_mid = a[:, None] + inner_half
    inner_pts = (inner_mid[..., None] + inner_half[..., None] * xi).ravel()
    inner_vals = hardy_z_prime(inner_pts, config, threads=threads) ** 2
    inner_ints = (inner_vals.reshape(len(a), order, 8) @ wi) * inner_half
    I_nodes = I_edges[:-1][:, None] + inner_ints

    outer_vals = I_nodes / outer_nodes
    integral_I_over_t = float(np.sum(half * (outer_vals @ w)))
    return (math.log(t_max / (2.0 * math.pi)) * I_total - integral_I_over_t) / (2.0 * math.pi)


def fit_lower_coeffs(t_grid, computed, theorem: TheoremMainTerm) -> dict:
    """Least-squares [a2, a1, a0] from measured moments after removing the
    exact log^4 and log^3 blocks; the analytic counterparts ride along so
    reports can print both."""
    t = np.asarray(t_grid, dtype=np.float64)
    y = np.asarray(computed, dtype=np.float64)
    if t.size < 3:
        raise DomainError("moments_asymptotics", "fit_lower_coeffs", "need at least 3 grid points")
    x = np.log(t / (2.0 * np.pi))
    known = theorem.poly.coeffs[4] * t * x**4 + theorem.poly.coeffs[3] * t * x**3
    design = np.stack([t * x**2, t * x, t], axis=1)
    sol, *_ = np.linalg.lstsq(design, y - known, rcond=None)
    return {
        "fitted": {"log2": float(sol[0]), "log1": float(sol[1]), "log0": float(sol[2])},
        "analytic": {
            "log2": theorem.poly.coeffs[2],
            "log1": theorem.poly.coeffs[1],
            "log0": theorem.poly.coeffs[0],
        },
    }
