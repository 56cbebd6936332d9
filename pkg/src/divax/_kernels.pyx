# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Keep in lockstep with ``_pykernels.py``."""
from libc.math cimport log, exp, expm1, pow, fabs, INFINITY


cpdef double neumaier_sum(values):
    cdef double s = 0.0, c = 0.0, t, x
    for v in values:
        x = v
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


cpdef list prefix_sums(values):
    cdef double s = 0.0, c = 0.0, t, x
    cdef list out = []
    for v in values:
        x = v
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out.append(s + c)
    return out


cpdef double ln_alpha(double x, double alpha):
    cdef double a
    if alpha == 1.0:
        return log(x)
    a = 1.0 - alpha
    return expm1(a * log(x)) / a


cpdef double pow_convention(double x, double e):
    if x == 0.0:
        return 0.0
    return pow(x, e)


cpdef double recursion_weight(double s, double t, double alpha):
    cdef double w
    if s == 0.0 or t == 0.0:
        return 0.0
    w = pow(s, alpha) * pow(t, 1.0 - alpha)
    if w != w:  # 0 * inf from opposite under/overflow
        w = exp(alpha * log(s) + (1.0 - alpha) * log(t))
    return w


cdef inline double _term(double pi, double qi, bint one, double a):
    cdef double r = qi / pi
    if one:
        return -pi * log(r)
    return -pi * (expm1(a * log(r)) / a)


cpdef double divergence_open(p, q, double alpha):
    cdef Py_ssize_t i, n = len(p)
    cdef double s = 0.0, c = 0.0, t, x
    cdef bint one = alpha == 1.0
    cdef double a = 1.0 - alpha
    for i in range(n):
        x = _term(p[i], q[i], one, a)
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


cpdef double divergence_closed(p, q, double alpha):
    cdef Py_ssize_t i, n = len(p)
    cdef double s = 0.0, c = 0.0, t, x, pi, qi
    cdef bint one = alpha == 1.0
    cdef double a = 1.0 - alpha
    for i in range(n):
        pi = p[i]
        qi = q[i]
        if pi == 0.0:
            continue
        if qi == 0.0:
            if one:
                return INFINITY
            x = pi / a
        else:
            x = _term(pi, qi, one, a)
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


cpdef list divergence_rows(P, Q, double alpha):
    return [divergence_open(p, q, alpha) for p, q in zip(P, Q)]


cpdef double lemma_sum(f, p, q, double alpha):
    cdef list S = prefix_sums(p)
    cdef list T = prefix_sums(q)
    cdef Py_ssize_t i, n = len(p)
    cdef double s = 0.0, c = 0.0, t, x, si, ti
    for i in range(1, n):
        si = S[i]
        ti = T[i]
        x = recursion_weight(si, ti, alpha) * <double>f(p[i] / si, q[i] / ti)
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c
