"""Relative entropies ``D^a(p|q) = -sum_i p_i ln_a(q_i / p_i)``.

Values are plain floats. On the closed simplex the alpha = 1 member may be
``math.inf``; every other value is finite.
"""
from __future__ import annotations

from ._backend import kernels
from .errors import DomainMismatch
from .qlog import as_alpha
from .simplex import DistPair, Domain


def relative_entropy(pair: DistPair, alpha) -> float:
    """Open-simplex relative entropy of order ``alpha``."""
    if pair.domain is not Domain.OPEN:
        raise DomainMismatch("closed-domain pair; use relative_entropy_closed")
    return kernels.divergence_open(pair.p.entries, pair.q.entries, as_alpha(alpha).value)


def relative_entropy_closed(pair: DistPair, alpha) -> float:
    """Closed-simplex relative entropy under the zero conventions.

    For alpha != 1 this is ``-sum_i (p_i**a q_i**(1-a) - p_i) / (1-a)`` with
    ``0**e = 0`` for every exponent, so a term with p_i = 0 vanishes and a term
    with p_i > 0 = q_i contributes ``p_i / (1-a)``. Terms with both entries
    positive are evaluated exactly as in :func:`relative_entropy`, so the two
    functions agree bit for bit on strictly positive input.

    For alpha == 1, ``0 ln(0/q) = 0`` and ``p ln(p/0) = +inf``.
    """
    return kernels.divergence_closed(pair.p.entries, pair.q.entries, as_alpha(alpha).value)


def evaluate(pair: DistPair, alpha) -> float:
    """Dispatch on the pair's domain."""
    if pair.domain is Domain.OPEN:
        return relative_entropy(pair, alpha)
    return relative_entropy_closed(pair, alpha)
