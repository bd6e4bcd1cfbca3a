"""Command-line surface: reproducible experiments with CSV/JSON artifacts.

Every artifact starts with a meta header (version string, precision
configuration, command echo); identical configurations produce byte-identical
artifacts, so wall-clock timing goes to stderr, never into the output.
Exit codes: 0 ok, 2 configuration error, 3 numeric failure, 4 zero-count
mismatch.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, dirichlet, laurent, moments, zeros
from ._kernels import BACKEND
from .config import DEFAULT_CONFIG, PrecisionConfig
from .errors import ConfigError, HardyZError

CACHE_ENV = "HARDYZ_CACHE_DIR"


def version_string() -> str:
    env = os.environ.get("HARDYZ_VERSION")
    if env:
        return env
    try:
        desc = subprocess.run(
            ["git", "describe", "--always", "--dirty"],
            capture_output=True,
            text=True,
            timeout=5,
            cwd=Path(__file__).parent,
        )
        if desc.returncode == 0 and desc.stdout.strip():
            return f"{__version__}+g{desc.stdout.strip()}"
    except (OSError, subprocess.SubprocessError):
        pass
    return __version__


def _meta(args, command: str) -> dict:
    return {
        "tool": "hardyz",
        "version": version_string(),
        "kernel_backend": BACKEND,
        "command": command,
        "precision": _config(args).as_dict(),
    }


def _config(args) -> PrecisionConfig:
    return PrecisionConfig(
        target_abs_tol=args.abs_tol,
        target_rel_tol=args.rel_tol,
        max_series_terms=args.series_terms,
    )


def _fmt(x) -> str:
    return f"{x:.17g}"


def _emit(args, payload: dict, csv_rows=None, csv_header=None):
    """Write the artifact as JSON (default) or CSV with a comment header."""
    if args.format == "json":
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    else:
        meta = payload["meta"]
        lines = [f"# {k}={json.dumps(meta[k], sort_keys=True)}" for k in sorted(meta)]
        lines.append(",".join(csv_header))
        for row in csv_rows:
            lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row))
        text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)


# ---------------------------------------------------------------------------
# zero-set caching
# ---------------------------------------------------------------------------

def _cache_dir(args) -> Path | None:
    d = args.cache or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def _scan_cached(t_max: float, config: PrecisionConfig, threads: int, cache: Path | None) -> zeros.ZeroSet:
    if cache is None:
        return zeros.scan_zeros(t_max, config, threads=threads)
    cache.mkdir(parents=True, exist_ok=True)
    key = hashlib.sha1(f"{t_max!r}|{config.cache_key()}".encode()).hexdigest()[:16]
    path = cache / f"zeros_{key}.npz"
    if path.exists():
        data = np.load(path)
        records = [
            zeros.ZeroRecord(gamma=float(g), bracket=(float(a), float(b)), z_prime=float(z), refine_iters=int(i))
            for g, a, b, z, i in zip(data["gamma"], data["lo"], data["hi"], data["z_prime"], data["iters"])
        ]
        zs = zeros.ZeroSet(
            t_max=t_max,
            zeros=records,
            count_expected=zeros.count_expected(t_max, config),
            suspect_multiple=list(data["suspect"]),
        )
        zs.validate()
        return zs
    zs = zeros.scan_zeros(t_max, config, threads=threads)
    np.savez(
        path,
        gamma=zs.gammas(),
        lo=np.array([r.bracket[0] for r in zs.zeros]),
        hi=np.array([r.bracket[1] for r in zs.zeros]),
        z_prime=zs.z_primes(),
        iters=np.array([r.refine_iters for r in zs.zeros], dtype=np.int64),
        suspect=np.array(zs.suspect_multiple, dtype=np.int64),
    )
    return zs


def _zero_rows(zs: zeros.ZeroSet):
    return [(r.gamma, r.z_prime, r.bracket[0], r.bracket[1]) for r in zs.zeros]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _require(cond: bool, command: str, reason: str):
    if not cond:
        raise ConfigError("cli", command, reason)


def cmd_zeros(args) -> dict:
    _require(10.0 <= args.t_max <= 1e5, "zeros", f"--t-max must be in [10, 1e5], got {args.t_max}")
    cfg = _config(args)
    zs = _scan_cached(args.t_max, cfg, args.threads, _cache_dir(args))
    payload = {
        "meta": _meta(args, "zeros"),
        "t_max": args.t_max,
        "count": len(zs),
        "count_expected": zs.count_expected,
        "suspect_multiple": zs.suspect_multiple,
        "zeros": [
            {
                "gamma": r.gamma,
                "z_prime": r.z_prime,
                "bracket_lo": r.bracket[0],
                "bracket_hi": r.bracket[1],
                "refine_iters": r.refine_iters,
            }
            for r in zs.zeros
        ],
    }
    _emit(args, payload, _zero_rows(zs), ["gamma", "z_prime", "bracket_lo", "bracket_hi"])
    return payload


def _report_row(rep: moments.MomentReport):
    return (
        rep.t_max,
        rep.computed,
        rep.predicted,
        rep.residual,
        rep.residual_over_envelope,
        rep.ratio,
    )


_REPORT_HEADER = ["t_max", "computed", "predicted", "residual", "residual_over_envelope", "ratio"]


def cmd_dmoment(args) -> dict:
    _require(10.0 <= args.t_max <= 1e5, "dmoment", f"--t-max must be in [10, 1e5], got {args.t_max}")
    cfg = _config(args)
    zs = _scan_cached(args.t_max, cfg, args.threads, _cache_dir(args))
    rep = moments.discrete_moment(zs, config=cfg)
    payload = {"meta": _meta(args, "dmoment"), "report": rep.as_dict()}
    _emit(args, payload, [_report_row(rep)], _REPORT_HEADER)
    return payload


def cmd_cmoment(args) -> dict:
    _require(100.0 <= args.t_max <= 1e4, "cmoment", f"--t-max must be in [100, 1e4], got {args.t_max}")
    cfg = _config(args)
    rep = moments.continuous_moment(args.k, args.t_max, config=cfg, threads=args.threads)
    payload = {"meta": _meta(args, "cmoment"), "report": rep.as_dict()}
    _emit(args, payload, [_report_row(rep)], _REPORT_HEADER)
    return payload


def cmd_wmoment(args) -> dict:
    _require(100.0 <= args.t_max <= 1e4, "wmoment", f"--t-max must be in [100, 1e4], got {args.t_max}")
    cfg = _config(args)
    rep = moments.weighted_continuous_moment(args.t_max, config=cfg, threads=args.threads)
    payload = {"meta": _meta(args, "wmoment"), "report": rep.as_dict()}
    _emit(args, payload, [_report_row(rep)], _REPORT_HEADER)
    return payload


def cmd_constants(args) -> dict:
    cfg = _config(args)
    table = laurent.stieltjes(args.order, cfg)
    etas = laurent.eta_coeffs(min(args.order, 6), cfg)
    check = laurent.block_form_check(cfg)
    _, poly = laurent.residue_main_term(laurent.series_conv_lambda_dlog(cfg), x=2.0)
    payload = {
        "meta": _meta(args, "constants"),
        "stieltjes": list(table.values),
        "stieltjes_est_err": list(table.est_err),
        "eta": list(etas),
        "residue_log_poly": poly,
        "block_check": {
            "series": check["series"],
            "hand": check["hand"],
            "variant": check["variant"],
            "max_dev_hand": check["max_dev_hand"],
            "dev_variant": check["dev_variant"],
            "variant_matches": check["variant_matches"],
        },
    }
    rows = [(h, table.values[h], table.est_err[h]) for h in range(len(table))]
    _emit(args, payload, rows, ["h", "gamma_h", "est_err"])
    return payload


def cmd_convsum(args) -> dict:
    _require(1.0 < args.x <= dirichlet.N_MAX_CAP, "convsum", f"--x must be in (1, {dirichlet.N_MAX_CAP}], got {args.x}")
    cfg = _config(args)
    n_max = int(np.ceil(args.x))
    table = dirichlet.build_tables(n_max, cfg)
    value = dirichlet.cutoff_sum(args.x, args.kind, table, 0)
    series_map = {
        "conv_lambda_dlog": laurent.series_conv_lambda_dlog,
        "D_logn": laurent.series_dlog_weighted,
        "one_star_log_log2n": laurent.series_logsq_divisor,
    }
    res_val, res_poly = laurent.residue_main_term(series_map[args.kind](cfg), args.x)
    main = -res_val if args.kind == "conv_lambda_dlog" else res_val
    payload = {
        "meta": _meta(args, "convsum"),
        "x": args.x,
        "kind": args.kind,
        "sum": value,
        "residue_main_term": main,
        "relative_gap": (value - main) / main if main else float("inf"),
        "residue_log_poly": res_poly,
    }
    _emit(args, payload, [(args.x, value, main, payload["relative_gap"])], ["x", "sum", "main_term", "relative_gap"])
    return payload


def cmd_asympt(args) -> dict:
    cfg = _config(args)
    thm = moments.main_term_theorem(cfg)
    payload = {
        "meta": _meta(args, "asympt"),
        "theorem_coeffs": list(thm.poly.coeffs),
        "log_weighted_block": list(thm.log_weighted_block.coeffs),
        "contour_block": list(thm.contour_block.coeffs),
        "hall_P1": list(moments.hall_poly(0).coeffs),
        "hall_P3": list(moments.hall_poly(1).coeffs),
        "w_polys": {f"W_{g}": list(moments.w_poly(g).coeffs) for g in range(5)},
    }
    rows = [(j, thm.poly.coeffs[j], thm.log_weighted_block.coeffs[j], thm.contour_block.coeffs[j]) for j in range(5)]
    _emit(args, payload, rows, ["degree", "total", "log_weighted_block", "contour_block"])
    return payload


def cmd_compare(args) -> dict:
    cfg = _config(args)
    t_grid = sorted(float(v) for v in args.t_grid.split(","))
    _require(bool(t_grid) and t_grid[0] >= 15 and t_grid[-1] <= 1e5, "compare", "--t-grid entries must lie in [15, 1e5]")
    thm = moments.main_term_theorem(cfg)
    big = _scan_cached(t_grid[-1], cfg, args.threads, _cache_dir(args))
    reports = []
    for t in t_grid:
        zs = big.restrict(t)
        reports.append(moments.discrete_moment(zs, thm, cfg))
    fit = (
        moments.fit_lower_coeffs(t_grid, [r.computed for r in reports], thm)
        if len(t_grid) >= 3
        else None
    )
    payload = {
        "meta": _meta(args, "compare"),
        "t_grid": t_grid,
        "reports": [r.as_dict() for r in reports],
        "summary": [
            {
                "t_max": r.t_max,
                "ratio": r.ratio,
                "ratio_leading_only": r.computed / thm.leading_only(r.t_max),
                "residual_over_envelope": r.residual_over_envelope,
            }
            for r in reports
        ],
        "lower_coeff_fit": fit,
    }
    _emit(args, payload, [_report_row(r) for r in reports], _REPORT_HEADER)
    return payload


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="json")
    common.add_argument("--out", default="-", help="output path, '-' for stdout")
    common.add_argument("--threads", type=int, default=1, help="worker threads for evaluation batches")
    common.add_argument("--cache", default=None, help=f"zero-scan cache dir (or ${CACHE_ENV})")
    common.add_argument("--abs-tol", type=float, default=DEFAULT_CONFIG.target_abs_tol)
    common.add_argument("--rel-tol", type=float, default=DEFAULT_CONFIG.target_rel_tol)
    common.add_argument("--series-terms", type=int, default=DEFAULT_CONFIG.max_series_terms)

    # global flags live on the subparsers (after the subcommand) so that a
    # subparser default can never clobber an already-parsed root value
    p = argparse.ArgumentParser(prog="hardyz", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("zeros", help="scan zeros of Z on (0, t_max]", parents=[common])
    s.add_argument("--t-max", type=float, required=True)
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("dmoment", help="discrete moment sum Z'(gamma)^2", parents=[common])
    s.add_argument("--t-max", type=float, required=True)
    s.set_defaults(func=cmd_dmoment)

    s = sub.add_parser("cmoment", help="continuous moment of Z^(k) squared", parents=[common])
    s.add_argument("--t-max", type=float, required=True)
    s.add_argument("--k", type=int, default=0, choices=[0, 1])
    s.set_defaults(func=cmd_cmoment)

    s = sub.add_parser("wmoment", help="log-weighted continuous moment of Z'^2", parents=[common])
    s.add_argument("--t-max", type=float, required=True)
    s.set_defaults(func=cmd_wmoment)

    s = sub.add_parser("constants", help="Stieltjes constants, eta coefficients, residue blocks", parents=[common])
    s.add_argument("--order", type=int, default=6)
    s.set_defaults(func=cmd_constants)

    s = sub.add_parser("convsum", help="exact convolution cut-off sums vs residue main terms", parents=[common])
    s.add_argument(
        "--x",
        type=float,
        required=True,
        help="cut-off; any real is accepted, half-integers avoid boundary terms in comparisons",
    )
    s.add_argument("--kind", choices=list(dirichlet.SUM_KINDS), default="conv_lambda_dlog")
    s.set_defaults(func=cmd_convsum)

    s = sub.add_parser("asympt", help="main-term polynomial assembly", parents=[common])
    s.set_defaults(func=cmd_asympt)

    s = sub.add_parser("compare", help="discrete moment vs prediction over a T grid", parents=[common])
    s.add_argument("--t-grid", default="500,1000,2000,5000")
    s.set_defaults(func=cmd_compare)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    start = time.monotonic()
    try:
        args.func(args)
    except HardyZError as exc:
        sys.stderr.write(json.dumps({"error": exc.as_dict()}, sort_keys=True) + "\n")
        return exc.exit_code
    sys.stderr.write(f"hardyz {args.command}: {time.monotonic() - start:.2f}s\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
