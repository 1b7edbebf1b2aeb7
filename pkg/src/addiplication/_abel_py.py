"""NumPy implementation of the elementwise iteration kernels.

This is the fallback backend; ``_abel_cy`` implements the same set of
functions in C via Cython. All functions take 1-D float64 arrays (already
broadcast by the caller) and return newly allocated arrays.

Conventions shared by both backends:

* inputs are never NaN (callers validate); +/-inf are handled by the
  continuous extension psi(-inf) = -1, psi(+inf) = +inf,
* psi_inv saturates to -inf for arguments <= -1 and to +inf on overflow
  of the iterated exponential,
* derivative kernels return 0 on saturated points and are clamped to
  DERIV_CLAMP so chain-rule products stay NaN-free.
"""

from __future__ import annotations

import numpy as np

# exp(x) overflows double precision above this
EXP_OVERFLOW = 709.782712893384
# largest magnitude a derivative kernel may report
DERIV_CLAMP = 1e308
# psi of the largest finite double is ~4.6322; anything >= 6 cannot be inverted
PSI_INV_SATURATION = 6.0


def psi(x):
    """Piecewise solution of the unit-shift equation for exp, elementwise."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    neg = x < 0.0
    out[neg] = np.expm1(x[neg])
    pos = ~neg
    t = x[pos].copy()
    k = np.zeros(t.shape, dtype=np.float64)
    live = (t >= 1.0) & np.isfinite(t)
    while live.any():
        t[live] = np.log(t[live])
        k[live] += 1.0
        live = (t >= 1.0) & np.isfinite(t)
    out[pos] = t + k
    return out


def psi_prime(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    neg = x < 0.0
    out[neg] = np.exp(x[neg])
    pos = ~neg
    t = x[pos].copy()
    p = np.ones_like(t)
    live = (t >= 1.0) & np.isfinite(t)
    while live.any():
        p[live] /= t[live]
        t[live] = np.log(t[live])
        live = (t >= 1.0) & np.isfinite(t)
    out[pos] = p
    out[pos & np.isinf(x)] = 0.0
    return out


def psi_inv(y):
    y = np.asarray(y, dtype=np.float64)
    out = np.empty_like(y)
    out[y <= -1.0] = -np.inf
    mid = (y > -1.0) & (y < 0.0)
    out[mid] = np.log1p(y[mid])
    hi = y >= 0.0
    yh = y[hi]
    sat = yh >= PSI_INV_SATURATION  # guards the int cast below as well
    k = np.floor(np.where(sat, 0.0, yh)).astype(np.int64)
    t = yh - k
    t[sat] = np.inf
    for i in range(int(k.max()) if k.size else 0):
        live = k > i
        over = live & (t > EXP_OVERFLOW)
        t[over] = np.inf
        with np.errstate(over="ignore"):
            t[live] = np.exp(t[live])
    out[hi] = t
    return out


def psi_inv_prime(y):
    y = np.asarray(y, dtype=np.float64)
    out = np.zeros_like(y)  # plateau convention below -1
    mid = (y > -1.0) & (y < 0.0)
    with np.errstate(over="ignore", divide="ignore"):
        out[mid] = np.minimum(1.0 / (1.0 + y[mid]), DERIV_CLAMP)
    hi = y >= 0.0
    yh = y[hi]
    sat = yh >= PSI_INV_SATURATION
    k = np.floor(np.where(sat, 0.0, yh)).astype(np.int64)
    t = yh - k
    p = np.ones_like(t)
    p[sat] = np.inf
    for i in range(int(k.max()) if k.size else 0):
        live = k > i
        over = live & (t > EXP_OVERFLOW)
        t[over] = np.inf
        with np.errstate(over="ignore"):
            t[live] = np.exp(t[live])
            p[live] *= t[live]
    out[hi] = p
    return out


def expn(n, x):
    """exp iterated n times (n real), elementwise over paired arrays."""
    n = np.asarray(n, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    out = psi_inv(psi(x) + n)
    ident = n == 0.0
    if ident.any():
        out[ident] = x[ident]  # keep the identity iterate exact
    return out


def expn_grads(n, x):
    """Value of the n-th iterate plus its partials in n and x.

    Returns (value, d_dn, d_dx). Both derivatives are zero wherever the
    value saturates (non-finite result, or argument on the -inf plateau).
    """
    n = np.asarray(n, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    px = psi(x)
    y = px + n
    val = psi_inv(y)
    ident = n == 0.0
    if ident.any():
        val[ident] = x[ident]
    ok = np.isfinite(val) & (y > -1.0)
    d_dn = np.where(ok, np.minimum(psi_inv_prime(y), DERIV_CLAMP), 0.0)
    with np.errstate(over="ignore"):
        d_dx = np.minimum(d_dn * psi_prime(x), DERIV_CLAMP)
    d_dx[~ok] = 0.0
    exact = ident & ok
    if exact.any():
        d_dx[exact] = 1.0
    return val, d_dn, d_dx
