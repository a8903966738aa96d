# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Same contracts as ``_pykernels``; loops run without the
GIL so sharded verification scales across threads."""
import numpy as np

from libc.math cimport log, exp, floor, fabs, pow, sqrt, isinf

cdef enum:
    MAX_ITER = 200
    MAX_N = 4096

cdef double SNAP = 1e-12
cdef double BREAK_SNAP = 1e-15
cdef double DUST = 2.5e-16
cdef double LARGE_ALPHA = 1e6


cdef inline double xlogx(double x) noexcept nogil:
    if x > 0.0:
        return x * log(x)
    return 0.0


cdef inline double floor_inv(double p) noexcept nogil:
    cdef double x = 1.0 / p
    cdef double r = floor(x + 0.5)
    if fabs(x - r) <= SNAP:
        return r
    return floor(x)


cdef inline double w_remainder(double k, double p) noexcept nogil:
    # |1 - k*fl(1/k)| <= 2**-52, so anything that small is rounding dust
    cdef double rem = 1.0 - k * p
    if rem <= DUST:
        return 0.0
    return rem


cdef inline double two_level_norm(double a, double ca, double b, double cb,
                                  double alpha) noexcept nogil:
    cdef double top, r, s
    cdef double ctop, crest
    if a >= b:
        top, r, ctop, crest = a, b / a, ca, cb
    else:
        top, r, ctop, crest = b, a / b, cb, ca
    if isinf(alpha) or alpha > LARGE_ALPHA:
        return top
    # the top level contributes (top/top)**alpha == 1 exactly
    if alpha == 2.0:
        return top * sqrt(ctop + crest * r * r)
    s = ctop + crest * pow(r, alpha)
    return top * pow(s, 1.0 / alpha)


cdef inline double c_h_v(int n, double p) noexcept nogil:
    cdef double a = 1.0 - (n - 1) * p
    if a < 0.0:
        a = 0.0
    return -xlogx(a) - (n - 1) * xlogx(p)


cdef inline double c_h_w_bracket(double k, double p) noexcept nogil:
    cdef double rem = 1.0 - k * p
    if rem < 0.0:
        rem = 0.0
    return -k * xlogx(p) - xlogx(rem)


cdef inline double c_h_w(int n, double p) noexcept nogil:
    cdef double k = floor_inv(p)
    return -k * xlogx(p) - xlogx(w_remainder(k, p))


cdef inline double c_norm_v(int n, double p, double alpha) noexcept nogil:
    cdef double a = 1.0 - (n - 1) * p
    if a < 0.0:
        a = 0.0
    return two_level_norm(a, 1.0, p, n - 1.0, alpha)


cdef inline double c_norm_w_bracket(double k, double p, double alpha) noexcept nogil:
    cdef double rem = 1.0 - k * p
    if rem < 0.0:
        rem = 0.0
    return two_level_norm(p, k, rem, 1.0, alpha)


cdef inline double c_norm_w(int n, double p, double alpha) noexcept nogil:
    cdef double k = floor_inv(p)
    return two_level_norm(p, k, w_remainder(k, p), 1.0, alpha)


cdef inline double locate_bracket(int n, double u) noexcept nogil:
    cdef double k = floor(exp(u))
    if k < 1.0:
        k = 1.0
    if k > n - 1:
        k = n - 1
    if k > 1.0 and log(k) > u:
        k -= 1.0
    if k < n - 1 and log(k + 1.0) <= u:
        k += 1.0
    return k


# Each bisection mirrors _pykernels._bisect: stop when the midpoint is no
# longer strictly inside, return the endpoint with the smaller residual.

cdef double bisect_h_v(int n, double h) noexcept nogil:
    cdef double lo = 0.0, hi = 1.0 / n, mid
    cdef int i
    for i in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if not (mid > lo and mid < hi):
            break
        if c_h_v(n, mid) < h:
            lo = mid
        else:
            hi = mid
    if fabs(c_h_v(n, lo) - h) <= fabs(c_h_v(n, hi) - h):
        return lo
    return hi


cdef double bisect_h_w(double k, double h) noexcept nogil:
    cdef double lo = 1.0 / (k + 1.0), hi = 1.0 / k, mid
    cdef int i
    for i in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if not (mid > lo and mid < hi):
            break
        if c_h_w_bracket(k, mid) > h:
            lo = mid
        else:
            hi = mid
    if fabs(c_h_w_bracket(k, lo) - h) <= fabs(c_h_w_bracket(k, hi) - h):
        return lo
    return hi


cdef double bisect_norm_v(int n, double t, double alpha) noexcept nogil:
    cdef double lo = 0.0, hi = 1.0 / n, mid, g
    cdef bint increasing = alpha < 1.0
    cdef int i
    for i in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if not (mid > lo and mid < hi):
            break
        g = c_norm_v(n, mid, alpha)
        if (g < t) if increasing else (g > t):
            lo = mid
        else:
            hi = mid
    if fabs(c_norm_v(n, lo, alpha) - t) <= fabs(c_norm_v(n, hi, alpha) - t):
        return lo
    return hi


cdef double bisect_norm_w(double k, double t, double alpha) noexcept nogil:
    cdef double lo = 1.0 / (k + 1.0), hi = 1.0 / k, mid, g
    cdef bint increasing = alpha > 1.0
    cdef int i
    for i in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        if not (mid > lo and mid < hi):
            break
        g = c_norm_w_bracket(k, mid, alpha)
        if (g < t) if increasing else (g > t):
            lo = mid
        else:
            hi = mid
    if fabs(c_norm_w_bracket(k, lo, alpha) - t) <= fabs(c_norm_w_bracket(k, hi, alpha) - t):
        return lo
    return hi


def _as_array(x):
    return np.ascontiguousarray(np.atleast_1d(np.asarray(x, dtype=np.float64)))


def h_v(int n, p):
    cdef double[::1] pv = _as_array(p)
    out = np.empty(pv.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(pv.shape[0]):
            o[i] = c_h_v(n, pv[i])
    return out.reshape(np.shape(p))


def h_w(int n, p):
    cdef double[::1] pv = _as_array(p)
    out = np.empty(pv.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(pv.shape[0]):
            o[i] = c_h_w(n, pv[i])
    return out.reshape(np.shape(p))


def norm_v(int n, p, double alpha):
    cdef double[::1] pv = _as_array(p)
    out = np.empty(pv.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(pv.shape[0]):
            o[i] = c_norm_v(n, pv[i], alpha)
    return out.reshape(np.shape(p))


def norm_w(int n, p, double alpha):
    cdef double[::1] pv = _as_array(p)
    out = np.empty(pv.shape[0])
    cdef double[::1] o = out
    cdef Py_ssize_t i
    with nogil:
        for i in range(pv.shape[0]):
            o[i] = c_norm_w(n, pv[i], alpha)
    return out.reshape(np.shape(p))


def inv_h_v(int n, h):
    cdef double[::1] hv = _as_array(h)
    out = np.empty(hv.shape[0])
    cdef double[::1] o = out
    cdef double top = log(n)
    cdef Py_ssize_t i
    with nogil:
        for i in range(hv.shape[0]):
            if hv[i] >= top - SNAP:
                o[i] = 1.0 / n
            elif hv[i] <= SNAP:
                o[i] = 0.0
            else:
                o[i] = bisect_h_v(n, hv[i])
    return out


def inv_h_w(int n, h):
    if n == 2:
        # v_2(p) and w_2(1 - p) are the same distribution
        return 1.0 - inv_h_v(2, h)
    cdef double[::1] hv = _as_array(h)
    out = np.empty(hv.shape[0])
    cdef double[::1] o = out
    cdef double top = log(n), k
    cdef Py_ssize_t i
    with nogil:
        for i in range(hv.shape[0]):
            if hv[i] >= top - SNAP:
                o[i] = 1.0 / n
            elif hv[i] <= SNAP:
                o[i] = 1.0
            else:
                k = locate_bracket(n, hv[i])
                if fabs(hv[i] - log(k)) <= BREAK_SNAP:
                    o[i] = 1.0 / k
                elif fabs(hv[i] - log(k + 1.0)) <= BREAK_SNAP:
                    o[i] = 1.0 / (k + 1.0)
                else:
                    o[i] = bisect_h_w(k, hv[i])
    return out


def inv_norm_v(int n, t, double alpha):
    cdef double[::1] tv = _as_array(t)
    out = np.empty(tv.shape[0])
    cdef double[::1] o = out
    cdef double at_uniform, tol, p
    cdef Py_ssize_t i
    cdef bint limit = isinf(alpha) or alpha > LARGE_ALPHA
    if not limit:
        at_uniform = pow(n, 1.0 / alpha - 1.0)
    with nogil:
        for i in range(tv.shape[0]):
            if limit:
                p = (1.0 - tv[i]) / (n - 1)
                o[i] = 0.0 if p < 0.0 else (1.0 / n if p > 1.0 / n else p)
                continue
            tol = SNAP * (tv[i] if tv[i] > 1.0 else 1.0)
            if fabs(tv[i] - at_uniform) <= tol:
                o[i] = 1.0 / n
            elif fabs(tv[i] - 1.0) <= tol:
                o[i] = 0.0
            else:
                o[i] = bisect_norm_v(n, tv[i], alpha)
    return out


def inv_norm_w(int n, t, double alpha):
    if n == 2:
        return 1.0 - inv_norm_v(2, t, alpha)
    cdef double[::1] tv = _as_array(t)
    out = np.empty(tv.shape[0])
    cdef double[::1] o = out
    cdef double at_uniform, tol, k, u, scale
    cdef Py_ssize_t i
    cdef bint limit = isinf(alpha) or alpha > LARGE_ALPHA
    if not limit:
        at_uniform = pow(n, 1.0 / alpha - 1.0)
    with nogil:
        for i in range(tv.shape[0]):
            if limit:
                o[i] = 1.0 / n if tv[i] < 1.0 / n else (1.0 if tv[i] > 1.0 else tv[i])
                continue
            scale = tv[i] if tv[i] > 1.0 else 1.0
            tol = SNAP * scale
            if fabs(tv[i] - at_uniform) <= tol:
                o[i] = 1.0 / n
            elif fabs(tv[i] - 1.0) <= tol:
                o[i] = 1.0
            else:
                u = alpha / (1.0 - alpha) * log(tv[i] if tv[i] > 1e-300 else 1e-300)
                k = locate_bracket(n, u)
                if fabs(tv[i] - pow(k, 1.0 / alpha - 1.0)) <= BREAK_SNAP * scale:
                    o[i] = 1.0 / k
                elif fabs(tv[i] - pow(k + 1.0, 1.0 / alpha - 1.0)) <= BREAK_SNAP * scale:
                    o[i] = 1.0 / (k + 1.0)
                else:
                    o[i] = bisect_norm_w(k, tv[i], alpha)
    return out


cdef inline void sort_desc(double* buf, Py_ssize_t m) noexcept nogil:
    cdef Py_ssize_t i, j
    cdef double key
    for i in range(1, m):
        key = buf[i]
        j = i - 1
        while j >= 0 and buf[j] < key:
            buf[j + 1] = buf[j]
            j -= 1
        buf[j + 1] = key


def entropy_rows(P):
    cdef double[:, ::1] A = np.ascontiguousarray(P, dtype=np.float64)
    cdef Py_ssize_t rows = A.shape[0], m = A.shape[1], i, j
    if m > MAX_N:
        raise ValueError(f"rows longer than {MAX_N} are not supported")
    out = np.empty(rows)
    cdef double[::1] o = out
    cdef double buf[MAX_N]
    cdef double acc
    with nogil:
        for i in range(rows):
            for j in range(m):
                buf[j] = A[i, j]
            sort_desc(buf, m)
            acc = 0.0
            for j in range(m):
                acc = acc - xlogx(buf[j])
            o[i] = acc if acc > 0.0 else 0.0
    return out


def norm_rows(P, double alpha):
    cdef double[:, ::1] A = np.ascontiguousarray(P, dtype=np.float64)
    cdef Py_ssize_t rows = A.shape[0], m = A.shape[1], i, j
    if m > MAX_N:
        raise ValueError(f"rows longer than {MAX_N} are not supported")
    out = np.empty(rows)
    cdef double[::1] o = out
    cdef double buf[MAX_N]
    cdef double acc, top
    cdef bint limit = isinf(alpha) or alpha > LARGE_ALPHA
    with nogil:
        for i in range(rows):
            for j in range(m):
                buf[j] = A[i, j]
            sort_desc(buf, m)
            top = buf[0]
            if limit:
                o[i] = top
                continue
            # the leading ratio is exactly 1
            acc = 1.0
            if alpha == 2.0:
                for j in range(1, m):
                    acc = acc + (buf[j] / top) * (buf[j] / top)
                o[i] = top * sqrt(acc)
            elif alpha == 0.5:
                for j in range(1, m):
                    acc = acc + sqrt(buf[j] / top)
                o[i] = top * (acc * acc)
            else:
                for j in range(1, m):
                    acc = acc + pow(buf[j] / top, alpha)
                o[i] = top * pow(acc, 1.0 / alpha)
    return out
