"""Pure-Python kernels.

Operation-for-operation mirror of ``_kernels.pyx`` so that both backends
return bit-identical floats on the same platform libm.
"""
import math

INF = math.inf


# libm returns +inf on overflow where Python raises; these restore the C result.
def _expm1(x):
    try:
        return math.expm1(x)
    except OverflowError:
        return INF


def _exp(x):
    try:
        return math.exp(x)
    except OverflowError:
        return INF


def _pow(x, e):
    try:
        return x ** e
    except OverflowError:
        return INF


def neumaier_sum(values):
    """Compensated left-to-right sum (Neumaier's variant of Kahan)."""
    s = 0.0
    c = 0.0
    for x in values:
        x = float(x)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def prefix_sums(values):
    """Running compensated sums; element k is the sum of values[:k+1]."""
    out = []
    s = 0.0
    c = 0.0
    for x in values:
        x = float(x)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
        out.append(s + c)
    return out


def ln_alpha(x, alpha):
    if alpha == 1.0:
        return math.log(x)
    a = 1.0 - alpha
    return _expm1(a * math.log(x)) / a


def pow_convention(x, e):
    if x == 0.0:
        return 0.0
    return _pow(x, e)


def recursion_weight(s, t, alpha):
    """``s**alpha * t**(1 - alpha)`` with zero powers mapped to 0."""
    if s == 0.0 or t == 0.0:
        return 0.0
    w = _pow(s, alpha) * _pow(t, 1.0 - alpha)
    if w != w:  # 0 * inf from opposite under/overflow
        w = _exp(alpha * math.log(s) + (1.0 - alpha) * math.log(t))
    return w


def divergence_open(p, q, alpha):
    n = len(p)
    s = 0.0
    c = 0.0
    one = alpha == 1.0
    a = 1.0 - alpha
    for i in range(n):
        pi = p[i]
        r = q[i] / pi
        if one:
            x = -pi * math.log(r)
        else:
            x = -pi * (_expm1(a * math.log(r)) / a)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def divergence_closed(p, q, alpha):
    n = len(p)
    s = 0.0
    c = 0.0
    one = alpha == 1.0
    a = 1.0 - alpha
    for i in range(n):
        pi = p[i]
        qi = q[i]
        if pi == 0.0:
            continue
        if qi == 0.0:
            if one:
                return INF
            # -(0**(1-alpha) * pi**alpha - pi) / (1 - alpha) under 0**e = 0
            x = pi / a
        else:
            r = qi / pi
            if one:
                x = -pi * math.log(r)
            else:
                x = -pi * (_expm1(a * math.log(r)) / a)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def divergence_rows(P, Q, alpha):
    return [divergence_open(p, q, alpha) for p, q in zip(P, Q)]


def lemma_sum(f, p, q, alpha):
    """Sum over i >= 2 of w(S_i, T_i) * f(p_i / S_i, q_i / T_i)."""
    S = prefix_sums(p)
    T = prefix_sums(q)
    s = 0.0
    c = 0.0
    for i in range(1, len(p)):
        si = S[i]
        ti = T[i]
        x = recursion_weight(si, ti, alpha) * f(p[i] / si, q[i] / ti)
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c
