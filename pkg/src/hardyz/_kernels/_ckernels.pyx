# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; mirrors pykernels.py exactly (same signatures,
same semantics, summation order differs only at rounding level)."""

from libc.math cimport cos, sin, log

import numpy as np

BACKEND = "compiled"


cdef void _psums(const double* amp, const double* logn, Py_ssize_t nn,
                 const double* t, Py_ssize_t nt, int n_orders,
                 double complex* out) noexcept nogil:
    cdef Py_ssize_t i, n
    cdef double ti, ln, a, ph, c, s
    cdef double re0, im0, re1, im1, re2, im2
    for i in range(nt):
        ti = t[i]
        re0 = im0 = re1 = im1 = re2 = im2 = 0.0
        if n_orders == 1:
            for n in range(nn):
                ph = -ti * logn[n]
                a = amp[n]
                re0 += a * cos(ph)
                im0 += a * sin(ph)
        else:
            for n in range(nn):
                ln = logn[n]
                ph = -ti * ln
                a = amp[n]
                c = a * cos(ph)
                s = a * sin(ph)
                re0 += c
                im0 += s
                re1 += c * ln
                im1 += s * ln
                if n_orders > 2:
                    re2 += c * ln * ln
                    im2 += s * ln * ln
        out[i] = re0 + 1j * im0
        if n_orders > 1:
            out[nt + i] = re1 + 1j * im1
        if n_orders > 2:
            out[2 * nt + i] = re2 + 1j * im2


def power_log_sums(amp, logn, t, int n_orders):
    """Dirichlet-type partial sums S_j(t) = sum_n amp[n] * logn[n]**j * e^{-i t logn[n]}."""
    if n_orders < 1 or n_orders > 3:
        raise ValueError("n_orders must be 1, 2 or 3")
    cdef double[::1] amp_v = np.ascontiguousarray(amp, dtype=np.float64)
    cdef double[::1] logn_v = np.ascontiguousarray(logn, dtype=np.float64)
    cdef double[::1] t_v = np.ascontiguousarray(t, dtype=np.float64)
    if amp_v.shape[0] != logn_v.shape[0]:
        raise ValueError("amp and logn must have equal length")
    out = np.empty((n_orders, t_v.shape[0]), dtype=np.complex128)
    cdef double complex[:, ::1] o = out
    cdef Py_ssize_t nn = amp_v.shape[0], nt = t_v.shape[0]
    if nt == 0 or nn == 0:
        out[...] = 0.0
        return out
    with nogil:
        _psums(&amp_v[0], &logn_v[0], nn, &t_v[0], nt, n_orders, &o[0, 0])
    return out


def sieve_tables(Py_ssize_t n_max):
    """Tables of D(n) = sum_{d|n} log d log(n/d) and (1*log)(n) = sum_{d|n} log d."""
    dd_arr = np.zeros(n_max + 1)
    ol_arr = np.zeros(n_max + 1)
    cdef double[::1] dd = dd_arr
    cdef double[::1] ol = ol_arr
    cdef Py_ssize_t d, k, m
    cdef double ld
    with nogil:
        for d in range(2, n_max + 1):
            ld = log(<double> d)
            m = n_max / d
            for k in range(1, m + 1):
                ol[d * k] += ld
            for k in range(2, m + 1):
                dd[d * k] += ld * log(<double> k)
    return dd_arr, ol_arr
