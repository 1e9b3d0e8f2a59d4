# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled optimizer kernels; same contract as ``_kernels_py``."""

import numpy as np
from libc.math cimport exp, log

BACKEND = "cython"


cdef void _gram(const double complex[:, :, ::1] v, const double[::1] w,
                double complex[:, ::1] c) noexcept nogil:
    cdef Py_ssize_t m = v.shape[0], n = v.shape[1], k = w.shape[0]
    cdef Py_ssize_t x, y, a, i
    cdef double complex s, p, q
    for x in range(m):
        for y in range(x, m):
            s = 0
            for a in range(n):
                for i in range(k):
                    p = v[x, a, i]
                    q = v[y, a, i]
                    s = s + (p.real * q.real + p.imag * q.imag
                             + 1j * (p.real * q.imag - p.imag * q.real)) * w[i]
            c[x, y] = s
            c[y, x] = s.conjugate()


def overlap_gram(ops, weights):
    cdef const double complex[:, :, ::1] v = np.ascontiguousarray(ops, dtype=np.complex128)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    if w.shape[0] > v.shape[2]:
        raise ValueError("more weights than columns")
    out = np.empty((v.shape[0], v.shape[0]), dtype=np.complex128)
    cdef double complex[:, ::1] c = out
    with nogil:
        _gram(v, w, c)
    return out


def smooth_value_grad(ops, weights, double beta):
    cdef const double complex[:, :, ::1] v = np.ascontiguousarray(ops, dtype=np.complex128)
    cdef const double[::1] w = np.ascontiguousarray(weights, dtype=np.float64)
    cdef Py_ssize_t m = v.shape[0], n = v.shape[1], k = w.shape[0]
    if w.shape[0] > v.shape[2]:
        raise ValueError("more weights than columns")
    if m < 2:
        raise ValueError("need at least two members")
    cgram = np.empty((m, m), dtype=np.complex128)
    grad_arr = np.zeros((m, n, v.shape[2]), dtype=np.complex128)
    cdef double complex[:, ::1] c = cgram
    cdef double complex[:, :, ::1] g = grad_arr
    cdef Py_ssize_t x, y, a, i
    cdef double qmax = -1.0, qv, total = 0.0, e, value
    cdef double complex cx, cy
    with nogil:
        _gram(v, w, c)
        for x in range(m):
            for y in range(x + 1, m):
                qv = c[x, y].real * c[x, y].real + c[x, y].imag * c[x, y].imag
                if qv > qmax:
                    qmax = qv
        for x in range(m):
            for y in range(x + 1, m):
                qv = c[x, y].real * c[x, y].real + c[x, y].imag * c[x, y].imag
                total = total + exp(beta * (qv - qmax))
        value = qmax + log(total) / beta
        for x in range(m):
            for y in range(x + 1, m):
                qv = c[x, y].real * c[x, y].real + c[x, y].imag * c[x, y].imag
                e = 2.0 * exp(beta * (qv - qmax)) / total
                cx = e * c[x, y].conjugate()
                cy = e * c[x, y]
                for a in range(n):
                    for i in range(k):
                        g[x, a, i] = g[x, a, i] + cx * v[y, a, i] * w[i]
                        g[y, a, i] = g[y, a, i] + cy * v[x, a, i] * w[i]
    return value, qmax, grad_arr
