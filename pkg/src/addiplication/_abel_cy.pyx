# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""C implementation of the elementwise iteration kernels.

Mirrors the public surface of ``_abel_py``; see that module for the
shared numeric conventions.
"""

from libc.math cimport exp, expm1, floor, isfinite, log, log1p, INFINITY

import numpy as np

EXP_OVERFLOW = 709.782712893384
DERIV_CLAMP = 1e308
PSI_INV_SATURATION = 6.0

cdef double _EXP_OVERFLOW = 709.782712893384
cdef double _CLAMP = 1e308
cdef double _SAT = 6.0


cdef inline double _psi(double x) nogil:
    cdef double t
    cdef int k
    if x < 0.0:
        return expm1(x)  # -inf maps to -1
    if x == INFINITY:
        return INFINITY
    t = x
    k = 0
    while t >= 1.0:
        t = log(t)
        k += 1
    return t + k


cdef inline double _psi_prime(double x) nogil:
    cdef double t, p
    if x < 0.0:
        return exp(x)
    if x == INFINITY:
        return 0.0
    t = x
    p = 1.0
    while t >= 1.0:
        p /= t
        t = log(t)
    return p


cdef inline double _psi_inv(double y) nogil:
    cdef double t
    cdef long k, i
    if y <= -1.0:
        return -INFINITY
    if y < 0.0:
        return log1p(y)
    if y >= _SAT:
        return INFINITY
    k = <long>floor(y)
    t = y - k
    for i in range(k):
        if t > _EXP_OVERFLOW:
            return INFINITY
        t = exp(t)
    return t


cdef inline double _psi_inv_prime(double y) nogil:
    cdef double t, p
    cdef long k, i
    if y <= -1.0:
        return 0.0
    if y < 0.0:
        p = 1.0 / (1.0 + y)
        if p > _CLAMP:
            p = _CLAMP
        return p
    if y >= _SAT:
        return INFINITY
    k = <long>floor(y)
    t = y - k
    p = 1.0
    for i in range(k):
        if t > _EXP_OVERFLOW:
            return INFINITY
        t = exp(t)
        p *= t
    return p


cdef inline double _expn(double n, double x) nogil:
    if n == 0.0:
        return x
    return _psi_inv(_psi(x) + n)


def psi(x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        ov[i] = _psi(xv[i])
    return out


def psi_prime(x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        ov[i] = _psi_prime(xv[i])
    return out


def psi_inv(y):
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    out = np.empty(yv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(yv.shape[0]):
        ov[i] = _psi_inv(yv[i])
    return out


def psi_inv_prime(y):
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=np.float64)
    out = np.empty(yv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(yv.shape[0]):
        ov[i] = _psi_inv_prime(yv[i])
    return out


def expn(n, x):
    cdef double[::1] nv = np.ascontiguousarray(n, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    out = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        ov[i] = _expn(nv[i], xv[i])
    return out


def expn_grads(n, x):
    cdef double[::1] nv = np.ascontiguousarray(n, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t size = xv.shape[0]
    val = np.empty(size, dtype=np.float64)
    d_dn = np.empty(size, dtype=np.float64)
    d_dx = np.empty(size, dtype=np.float64)
    cdef double[::1] vv = val
    cdef double[::1] gn = d_dn
    cdef double[::1] gx = d_dx
    cdef Py_ssize_t i
    cdef double px, y, v, g
    for i in range(size):
        px = _psi(xv[i])
        y = px + nv[i]
        v = xv[i] if nv[i] == 0.0 else _psi_inv(y)
        vv[i] = v
        if not isfinite(v) or y <= -1.0:
            gn[i] = 0.0
            gx[i] = 0.0
            continue
        g = _psi_inv_prime(y)
        if g > _CLAMP:
            g = _CLAMP
        gn[i] = g
        if nv[i] == 0.0:
            gx[i] = 1.0
        else:
            g = g * _psi_prime(xv[i])
            if g > _CLAMP:
                g = _CLAMP
            gx[i] = g
    return val, d_dn, d_dx
