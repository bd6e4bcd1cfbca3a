"""Exact Dirichlet-coefficient tables and the brute-force convolution sums.

These are the oracles against which the residue main terms from `laurent`
are validated: Lambda(n) (log p on prime powers), D(n) = sum_{d|n} log d
log(n/d) with Dirichlet series zeta'(s)^2, and (1*log)(n) = sum_{d|n} log d
with series -zeta(s) zeta'(s).  Everything a table answers is an exact
finite sum; nothing here depends on the analytic machinery.

The lemma check at the bottom numerically integrates

    (1/2pi) integral_1^T A(a+it) chi(1-a-it) log^m(t/2pi) dt

for A the closed form of the coefficient Dirichlet series, and compares it
with the exact cut-off sum sum_{n <= T/2pi} b_n (log n)^m.  The two sides
share no code path: the left side goes through the zeta engine and chi, the
right side through the sieve tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import quadrature, specfun
from ._kernels import sieve_tables
from .config import DEFAULT_CONFIG, PrecisionConfig
from .errors import DomainError, TableSizeError
from .zeta_engine import zeta_batch

N_MAX_CAP = 10_000_000

SUM_KINDS = ("conv_lambda_dlog", "D_logn", "one_star_log_log2n")


@dataclass
class CoeffTable:
    """Lambda, D and 1*log up to n_max, with cached weighted prefix sums."""

    n_max: int
    lam: np.ndarray
    dd: np.ndarray
    ol: np.ndarray
    _prefix: dict = field(default_factory=dict, repr=False)

    def prefix(self, name: str, log_weight: int) -> np.ndarray:
        """Cumulative sum of table[n] * (log n)^w, index n; entry 0 is 0."""
        key = (name, log_weight)
        if key not in self._prefix:
            base = getattr(self, name).copy()
            if log_weight:
                logs = np.zeros(self.n_max + 1)
                logs[1:] = np.log(np.arange(1, self.n_max + 1, dtype=np.float64))
                base *= logs**log_weight
            self._prefix[key] = np.cumsum(base)
        return self._prefix[key]

    def prefix_at(self, name: str, log_weight: int, x: float) -> float:
        n = int(np.floor(x))
        if n > self.n_max:
            raise TableSizeError("arithmetic_sums", "prefix", f"x={x} beyond table n_max={self.n_max}")
        if n < 1:
            return 0.0
        return float(self.prefix(name, log_weight)[n])


def build_tables(n_max: int, config: PrecisionConfig = DEFAULT_CONFIG) -> CoeffTable:
    """Sieve Lambda, D and 1*log up to n_max (1 <= n_max <= 1e7)."""
    if not (1 <= n_max <= N_MAX_CAP):
        raise TableSizeError(
            "arithmetic_sums", "build_tables", f"n_max must be in [1, {N_MAX_CAP}], got {n_max}"
        )
    lam = np.zeros(n_max + 1)
    is_comp = np.zeros(n_max + 1, dtype=bool)
    for p in range(2, n_max + 1):
        if is_comp[p]:
            continue
        is_comp[p * p :: p] = True
        lp = np.log(float(p))
        pk = p
        while pk <= n_max:
            lam[pk] = lp
            pk *= p
    dd, ol = sieve_tables(n_max)
    return CoeffTable(n_max=n_max, lam=lam, dd=dd, ol=ol)


def conv_sum_LD(x: float, table: CoeffTable, log_weight: int = 0) -> float:
    """sum over mn <= x of Lambda(m) D(n) (log mn)^w, exactly (w in {0,1,2}).

    The log weight expands binomially, so only prefix sums of D (log n)^j
    are needed: each prime power m contributes Lambda(m) sum_j C(w,j)
    (log m)^(w-j) * SD_j(x/m).
    """
    if x > table.n_max:
        raise TableSizeError("arithmetic_sums", "conv_sum_LD", f"x={x} beyond table n_max={table.n_max}")
    if log_weight not in (0, 1, 2):
        raise DomainError("arithmetic_sums", "conv_sum_LD", "log_weight must be 0, 1 or 2")
    if x < 2.0:
        return 0.0
    ms = np.nonzero(table.lam[: int(np.floor(x)) + 1] > 0.0)[0]
    logm = np.log(ms.astype(np.float64))
    cut = np.floor(x / ms).astype(np.int64)
    total = 0.0
    binom = {0: [1.0], 1: [1.0, 1.0], 2: [1.0, 2.0, 1.0]}[log_weight]
    for j, c in enumerate(binom):
        sd = table.prefix("dd", j)
        total += c * float(np.sum(table.lam[ms] * logm ** (log_weight - j) * sd[cut]))
    return total


def weighted_sums(x: float, kind: str, table: CoeffTable) -> float:
    """Exact cut-off sums feeding the lower-order main terms.

    kind='D_logn': sum_{n<=x} D(n) log n;
    kind='one_star_log_log2n': sum_{n<=x} (1*log)(n) (log n)^2.
    """
    if kind == "D_logn":
        return table.prefix_at("dd", 1, x)
    if kind == "one_star_log_log2n":
        return table.prefix_at("ol", 2, x)
    raise DomainError("arithmetic_sums", "weighted_sums", f"unknown kind {kind!r}")


def cutoff_sum(x: float, kind: str, table: CoeffTable, log_weight: int) -> float:
    """sum_{n<=x} b_n (log n)^m for the coefficient family `kind`."""
    if kind == "conv_lambda_dlog":
        return conv_sum_LD(x, table, log_weight)
    if kind == "D_logn":
        return table.prefix_at("dd", log_weight, x)
    if kind == "one_star_log_log2n":
        return table.prefix_at("ol", log_weight, x)
    raise DomainError("arithmetic_sums", "cutoff_sum", f"unknown kind {kind!r}")


@dataclass(frozen=True)
class GonekCheck:
    """Both sides of the sum-vs-integral identity plus the residual envelope."""

    a: float
    m: int
    t_max: float
    coeff_kind: str
    sum_side: float
    integral_side: float

    @property
    def residual(self) -> float:
        return abs(self.integral_side - self.sum_side)

    @property
    def envelope(self) -> float:
        return self.t_max ** (self.a - 0.5) * np.log(self.t_max) ** self.m


def _series_closed_form(kind: str, a: float, t: np.ndarray, config: PrecisionConfig) -> np.ndarray:
    # A(s) = sum b_n n^-s via the zeta engine, never via truncation.
    if kind == "conv_lambda_dlog":
        vals, _ = zeta_batch(a, t, n_orders=2, config=config)
        return -(vals[1] / vals[0]) * vals[1] ** 2
    if kind == "D_logn":
        vals, _ = zeta_batch(a, t, n_orders=2, config=config)
        return vals[1] ** 2
    if kind == "one_star_log_log2n":
        vals, _ = zeta_batch(a, t, n_orders=2, config=config)
        return -vals[0] * vals[1]
    raise DomainError("arithmetic_sums", "gonek_lemma_check", f"unknown coeff_kind {kind!r}")


def gonek_lemma_check(
    a: float,
    m: int,
    t_max: float,
    coeff_kind: str,
    table: CoeffTable,
    config: PrecisionConfig = DEFAULT_CONFIG,
    threads: int = 1,
) -> GonekCheck:
    """Sum side and integral side of the stationary-phase identity.

    a in (1, 1.5], m in {0, 1, 2}, t_max <= 2000; the cut-off sum needs the
    table to reach T/2pi.
    """
    if not (1.0 < a <= 1.5):
        raise DomainError("arithmetic_sums", "gonek_lemma_check", f"a must be in (1, 1.5], got {a}")
    if m not in (0, 1, 2):
        raise DomainError("arithmetic_sums", "gonek_lemma_check", f"m must be 0, 1 or 2, got {m}")
    if t_max > 2000.0:
        raise DomainError("arithmetic_sums", "gonek_lemma_check", f"t_max must be <= 2000, got {t_max}")
    x = t_max / (2.0 * np.pi)
    s_side = cutoff_sum(x, coeff_kind, table, m) if x >= 1.0 else 0.0

    def integrand(t):
        series = _series_closed_form(coeff_kind, a, t, config)
        lc = specfun.log_chi_upper(np.conj((1.0 - a) - 1j * t))
        chi_val = np.conj(np.exp(lc))
        w = np.log(t / (2.0 * np.pi)) ** m if m else 1.0
        return (series * chi_val).real * w / (2.0 * np.pi)

    def width(t):
        # resolve the chi phase t log(t/2pi e) and the slow Dirichlet content
        return 2.0 / (1.0 + abs(np.log(max(t, 2.0) / (2.0 * np.pi))))

    val, _ = quadrature.integrate(integrand, 1.0, t_max, width, order=16, rel_tol=1e-10, abs_tol=1e-9)
    return GonekCheck(a=a, m=m, t_max=t_max, coeff_kind=coeff_kind, sum_side=s_side, integral_side=val)
