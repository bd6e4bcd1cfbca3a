#!/usr/bin/env python3
"""Benchmark the compiled kernels against the NumPy fallback.

Times the two hot paths (the Dirichlet power sums behind every zeta/Z
evaluation, and the divisor-log sieve) plus one end-to-end zero scan per
backend.  Run after `python setup.py build_ext --inplace`; without the
extension only the fallback rows are printed.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from hardyz._kernels import pykernels

try:
    from hardyz._kernels import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_power_sums(backend, n_terms, nt, orders):
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    logn = np.log(n)
    amp = n**-0.5
    t = np.linspace(0.7 * n_terms / 2, n_terms / 2, nt)
    return _time(lambda: backend.power_log_sums(amp, logn, t, orders))


def bench_sieve(backend, n_max):
    return _time(lambda: backend.sieve_tables(n_max), repeats=1)


def bench_scan(backend_name, t_max):
    env = dict(os.environ, HARDYZ_KERNELS=backend_name)
    code = f"import hardyz; hardyz.scan_zeros({t_max})"
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-c", code], check=True, env=env)
    return time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--quick", action="store_true", help="smaller sizes, skip the scan")
    args = ap.parse_args()

    backends = [("python", pykernels)] + ([("compiled", _ckernels)] if _ckernels else [])
    if _ckernels is None:
        print("note: compiled extension not built; only the fallback is timed\n")

    sizes = [(2000, 256), (10000, 256)] if args.quick else [(2000, 512), (10000, 512), (50000, 128)]
    rows = []
    for n_terms, nt in sizes:
        for orders in (1, 3):
            entry = {"case": f"power_log_sums N={n_terms} nt={nt} orders={orders}"}
            for name, mod in backends:
                entry[name] = bench_power_sums(mod, n_terms, nt, orders)
            rows.append(entry)
    n_sieve = 200_000 if args.quick else 1_000_000
    entry = {"case": f"sieve_tables n_max={n_sieve}"}
    for name, mod in backends:
        entry[name] = bench_sieve(mod, n_sieve)
    rows.append(entry)

    if not args.quick:
        entry = {"case": "scan_zeros t_max=500 (end-to-end)"}
        for name, _ in backends:
            entry[name] = bench_scan(name, 500.0)
        rows.append(entry)

    width = max(len(r["case"]) for r in rows)
    names = [n for n, _ in backends]
    header = f"{'case':<{width}}  " + "  ".join(f"{n:>10}" for n in names)
    if len(names) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for r in rows:
        line = f"{r['case']:<{width}}  " + "  ".join(f"{r[n] * 1e3:9.1f}ms" for n in names)
        if len(names) == 2:
            line += f"  {r['python'] / r['compiled']:7.2f}x"
        print(line)


if __name__ == "__main__":
    main()
