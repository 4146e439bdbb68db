# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for rearrangement-based norms and maximal functions."""

from libc.math cimport pow, log1p, expm1, log, fabs, sqrt

import numpy as np


def lorentz_step_sum(const double[::1] desc, double mu, double p, double q):
    """sum_i a_i^q (p/q) (t_i^(q/p) - t_(i-1)^(q/p)) with t_i = (i+1) mu."""
    cdef Py_ssize_t i, n = desc.shape[0]
    cdef double a = q / p
    cdef double total = 0.0, w, v
    if n == 0:
        return 0.0
    for i in range(n):
        v = desc[i]
        if v == 0.0:
            break
        if i == 0:
            w = 1.0
        else:
            # (i+1)^a - i^a = i^a * expm1(a * log1p(1/i))
            w = pow(<double>i, a) * expm1(a * log1p(1.0 / i))
        total += pow(v, q) * w
    return total * (p / q) * pow(mu, a)


def lorentz_step_sup(const double[::1] desc, double mu, double p):
    """max_i a_i t_i^(1/p) with t_i = (i+1) mu."""
    cdef Py_ssize_t i, n = desc.shape[0]
    cdef double best = 0.0, v
    cdef double inv = 1.0 / p
    for i in range(n):
        if desc[i] == 0.0:
            break
        v = desc[i] * pow((i + 1) * mu, inv)
        if v > best:
            best = v
    return best


def running_max_abs(double[::1] acc, const double complex[::1] z):
    """acc <- max(acc, |z|) elementwise, in place."""
    cdef Py_ssize_t i, n = acc.shape[0]
    cdef double m
    for i in range(n):
        m = sqrt(z[i].real * z[i].real + z[i].imag * z[i].imag)
        if m > acc[i]:
            acc[i] = m
