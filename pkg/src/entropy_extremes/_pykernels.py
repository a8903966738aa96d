"""Vectorized numpy kernels; the fallback when the compiled core is absent.

Every function takes and returns float64 arrays and assumes its inputs have
already been range-checked by the caller. ``alpha = inf`` selects the
max-entry norm. Inversions are bisections on the closed-form profiles.
"""
import numpy as np

MAX_ITER = 200
SNAP = 1e-12
BREAK_SNAP = 1e-15
DUST = 2.5e-16
LARGE_ALPHA = 1e6


def _xlogx(x):
    out = np.zeros_like(x)
    m = x > 0
    out[m] = x[m] * np.log(x[m])
    return out


def _floor_inv(p):
    """floor(1/p) with a 1e-12 snap to the nearest integer."""
    x = 1.0 / p
    r = np.rint(x)
    return np.where(np.abs(x - r) <= SNAP, r, np.floor(x))


def _w_parts(p):
    k = _floor_inv(p)
    rem = 1.0 - k * p
    # |1 - k*fl(1/k)| <= 2**-52, so anything that small is rounding dust
    return k, np.where(rem <= DUST, 0.0, rem)


def _two_level_norm(a, ca, b, cb, alpha):
    """Norm of a vector holding ``ca`` copies of ``a`` and ``cb`` of ``b``."""
    top = np.maximum(a, b)
    if np.isinf(alpha) or alpha > LARGE_ALPHA:
        return top
    s = ca * (a / top) ** alpha + cb * (b / top) ** alpha
    return top * s ** (1.0 / alpha)


def h_v(n, p):
    p = np.asarray(p, dtype=float)
    a = np.maximum(1.0 - (n - 1) * p, 0.0)
    return -_xlogx(a) - (n - 1) * _xlogx(p)


def h_w(n, p):
    p = np.asarray(p, dtype=float)
    k, rem = _w_parts(p)
    return -k * _xlogx(p) - _xlogx(rem)


def _h_w_bracket(k, p):
    rem = np.maximum(1.0 - k * p, 0.0)
    return -k * _xlogx(p) - _xlogx(rem)


def norm_v(n, p, alpha):
    p = np.asarray(p, dtype=float)
    a = np.maximum(1.0 - (n - 1) * p, 0.0)
    return _two_level_norm(a, 1.0, p, n - 1.0, alpha)


def norm_w(n, p, alpha):
    p = np.asarray(p, dtype=float)
    k, rem = _w_parts(p)
    return _two_level_norm(p, k, rem, 1.0, alpha)


def _norm_w_bracket(k, p, alpha):
    rem = np.maximum(1.0 - k * p, 0.0)
    return _two_level_norm(p, k, rem, 1.0, alpha)


def _bisect(f, target, lo, hi, increasing):
    """Per-element bisection of a monotone ``f`` on ``[lo, hi]``; returns
    whichever final endpoint has the smaller residual."""
    lo = lo.copy()
    hi = hi.copy()
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        active = (mid > lo) & (mid < hi)
        if not active.any():
            break
        fm = f(mid)
        go_right = (fm < target) if increasing else (fm > target)
        lo = np.where(active & go_right, mid, lo)
        hi = np.where(active & ~go_right, mid, hi)
    use_lo = np.abs(f(lo) - target) <= np.abs(f(hi) - target)
    return np.where(use_lo, lo, hi)


def _locate_bracket(n, u):
    """k in 1..n-1 with ln k <= u <= ln(k+1)."""
    k = np.clip(np.floor(np.exp(u)), 1, n - 1)
    k = np.where((k > 1) & (np.log(k) > u), k - 1, k)
    k = np.where((k < n - 1) & (np.log(k + 1) <= u), k + 1, k)
    return k


def inv_h_v(n, h):
    h = np.atleast_1d(np.asarray(h, dtype=float))
    top = np.log(n)
    lo = np.zeros_like(h)
    hi = np.full_like(h, 1.0 / n)
    p = _bisect(lambda q: h_v(n, q), h, lo, hi, increasing=True)
    p = np.where(h <= SNAP, 0.0, p)
    return np.where(h >= top - SNAP, 1.0 / n, p)


def inv_h_w(n, h):
    if n == 2:
        # v_2(p) and w_2(1 - p) are the same distribution
        return 1.0 - inv_h_v(2, h)
    h = np.atleast_1d(np.asarray(h, dtype=float))
    top = np.log(n)
    k = _locate_bracket(n, h)
    lo = 1.0 / (k + 1.0)
    hi = 1.0 / k
    p = _bisect(lambda q: _h_w_bracket(k, q), h, lo, hi, increasing=False)
    p = np.where(np.abs(h - np.log(k + 1.0)) <= BREAK_SNAP, 1.0 / (k + 1.0), p)
    p = np.where(np.abs(h - np.log(k)) <= BREAK_SNAP, 1.0 / k, p)
    p = np.where(h <= SNAP, 1.0, p)
    return np.where(h >= top - SNAP, 1.0 / n, p)


def inv_norm_v(n, t, alpha):
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.isinf(alpha) or alpha > LARGE_ALPHA:
        return np.clip((1.0 - t) / (n - 1), 0.0, 1.0 / n)
    at_uniform = n ** (1.0 / alpha - 1.0)
    tol = SNAP * np.maximum(1.0, t)
    lo = np.zeros_like(t)
    hi = np.full_like(t, 1.0 / n)
    p = _bisect(lambda q: norm_v(n, q, alpha), t, lo, hi, increasing=alpha < 1.0)
    p = np.where(np.abs(t - 1.0) <= tol, 0.0, p)
    return np.where(np.abs(t - at_uniform) <= tol, 1.0 / n, p)


def inv_norm_w(n, t, alpha):
    if n == 2:
        return 1.0 - inv_norm_v(2, t, alpha)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if np.isinf(alpha) or alpha > LARGE_ALPHA:
        return np.clip(t, 1.0 / n, 1.0)
    at_uniform = n ** (1.0 / alpha - 1.0)
    tol = SNAP * np.maximum(1.0, t)
    # on the Renyi-entropy scale the breakpoints 1/k sit at ln k
    u = alpha / (1.0 - alpha) * np.log(np.maximum(t, 1e-300))
    k = _locate_bracket(n, u)
    lo = 1.0 / (k + 1.0)
    hi = 1.0 / k
    p = _bisect(lambda q: _norm_w_bracket(k, q, alpha), t, lo, hi,
                increasing=alpha > 1.0)
    e = 1.0 / alpha - 1.0
    scale = BREAK_SNAP * np.maximum(1.0, t)
    p = np.where(np.abs(t - (k + 1.0) ** e) <= scale, 1.0 / (k + 1.0), p)
    p = np.where(np.abs(t - k ** e) <= scale, 1.0 / k, p)
    p = np.where(np.abs(t - 1.0) <= tol, 1.0, p)
    return np.where(np.abs(t - at_uniform) <= tol, 1.0 / n, p)


def entropy_rows(P):
    """Shannon entropy of each row, summed in decreasing-entry order."""
    P = np.asarray(P, dtype=float)
    S = -np.sort(-P, axis=1)
    T = _xlogx(S)
    acc = np.zeros(P.shape[0])
    for j in range(P.shape[1]):
        acc -= T[:, j]
    return np.maximum(acc, 0.0)


def norm_rows(P, alpha):
    P = np.asarray(P, dtype=float)
    S = -np.sort(-P, axis=1)
    top = S[:, 0]
    if np.isinf(alpha) or alpha > LARGE_ALPHA:
        return top.copy()
    R = (S / top[:, None]) ** alpha
    acc = np.zeros(P.shape[0])
    for j in range(P.shape[1]):
        acc += R[:, j]
    return top * acc ** (1.0 / alpha)
