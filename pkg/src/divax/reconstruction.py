"""Rebuilding an alpha-recursive measure from its two-point section.

An alpha-recursive ``(I_n)`` is fixed by ``f(x, y) = I_2(1-x, x | 1-y, y)``:

    I_n(p|q) = sum_{i=2..n} S_i**a T_i**(1-a) f(p_i / S_i, q_i / T_i)

with prefix sums ``S_i = p_1 + ... + p_i`` and ``T_i`` likewise. This module
evaluates that sum, the one-step recursion it is checked against, and the
closed-form solution families of the recursivity + semisymmetry equations.

Logarithmic functions appear only as ``c * ln``: the non-measurable solutions
(nonzero real derivations) have no numerical representation.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

from ._backend import kernels
from .axioms import Measure, check_self_distance, recursion_rhs
from .errors import DomainMismatch
from .qlog import Alpha, as_alpha
from .simplex import Distribution, DistPair, Domain


@dataclass(frozen=True)
class InitialElement:
    f: Callable[[float, float], float]
    label: str = "f"

    def __call__(self, x: float, y: float) -> float:
        return self.f(x, y)


def divergence_initial_element(alpha, gamma: float = 1.0) -> InitialElement:
    """``f(x, y) = gamma * D^a(1-x, x | 1-y, y)``."""
    a = as_alpha(alpha).value
    div = kernels.divergence_open
    if gamma == 1.0:
        return InitialElement(lambda x, y: div((1.0 - x, x), (1.0 - y, y), a), f"D^{a!r}")
    return InitialElement(lambda x, y: gamma * div((1.0 - x, x), (1.0 - y, y), a), f"{gamma!r}*D^{a!r}")


ZERO_ELEMENT = InitialElement(lambda x, y: 0.0, "zero")


def initial_element_of(m: Measure) -> InitialElement:
    """Two-point section of an open-domain measure."""
    return InitialElement(
        lambda x, y: m(DistPair(Distribution((1.0 - x, x)), Distribution((1.0 - y, y)))),
        f"section({m.name})",
    )


def reconstruct(f: InitialElement | Callable, alpha, pair: DistPair) -> float:
    """Value of the alpha-recursive measure generated by ``f`` at ``pair``."""
    if pair.domain is not Domain.OPEN:
        raise DomainMismatch("reconstruction is defined on the open simplex")
    p, q = pair.p.entries, pair.q.entries
    if pair.n == 2:
        return float(f(p[1], q[1]))
    return kernels.lemma_sum(f, p, q, as_alpha(alpha).value)


def reconstructed_measure(f: InitialElement, alpha, name: str | None = None) -> Measure:
    a = as_alpha(alpha)
    label = getattr(f, "label", "f")
    return Measure(lambda pr: reconstruct(f, a, pr), Domain.OPEN, name or f"reconstruct({label})")


def recursion_step(m: Measure, alpha, pair: DistPair) -> float:
    """Right-hand side of the recursivity identity: one unfolding of ``I_n``."""
    if pair.domain is not Domain.OPEN:
        raise DomainMismatch("recursion_step works on the open simplex")
    return recursion_rhs(m, alpha, pair)


def iterate_recursion(f: InitialElement | Callable, alpha, pair: DistPair) -> float:
    """Evaluate the measure generated by ``f`` by repeated merging down to n = 2.

    Shares no code path with :func:`reconstruct` beyond ``f`` itself; used as
    its oracle.
    """
    if pair.domain is not Domain.OPEN:
        raise DomainMismatch("recursion works on the open simplex")
    if pair.n == 2:
        return float(f(pair.p[1], pair.q[1]))
    a = as_alpha(alpha)
    m = Measure(lambda pr: iterate_recursion(f, a, pr), Domain.OPEN, "unfold")
    return recursion_step(m, a, pair)


# -- sum forms --------------------------------------------------------------


@dataclass(frozen=True)
class SumFormParams:
    """Parameters of the general recursive, 3-semisymmetric solution.

    ``b``/``c`` enter for alpha not in {0, 1}; ``c`` and the logarithmic
    coefficients (``l_k(x) = l_k_coeff * ln x``) enter for alpha in {0, 1}.
    """

    alpha: Alpha
    b: float = 0.0
    c: float = 0.0
    l1_coeff: float = 0.0
    l2_coeff: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_alpha(self.alpha))


def _sum_form_value(params: SumFormParams, p: tuple, q: tuple) -> float:
    a = params.alpha
    nsum = kernels.neumaier_sum
    if a.is_one:
        l1, l2 = params.l1_coeff, params.l2_coeff
        terms = [pi * (l1 * math.log(pi) + l2 * math.log(qi)) for pi, qi in zip(p, q)]
        terms.append(params.c * (1.0 - p[0]))
        return nsum(terms)
    if a.is_zero:
        l1, l2 = params.l1_coeff, params.l2_coeff
        terms = [qi * (l1 * math.log(pi) + l2 * math.log(qi)) for pi, qi in zip(p, q)]
        terms.append(params.c * (1.0 - q[0]))
        return nsum(terms)
    av = a.value
    w = [pi**av * qi ** (1.0 - av) for pi, qi in zip(p, q)]
    terms = [params.b * w[0]] + [params.c * x for x in w[1:]] + [-params.b]
    return nsum(terms)


def sum_form_measure(params: SumFormParams) -> Measure:
    """Open-domain measure given by the sum form selected by ``params.alpha``.

    alpha not in {0,1}:  b p_1^a q_1^(1-a) + c sum_{i>=2} p_i^a q_i^(1-a) - b
    alpha == 1:          sum p_i (l1 ln p_i + l2 ln q_i) + c (1 - p_1)
    alpha == 0:          sum q_i (l1 ln p_i + l2 ln q_i) + c (1 - q_1)
    """
    a = params.alpha
    name = (
        f"sum-form(a={a.value!r}, b={params.b!r}, c={params.c!r}, "
        f"l1={params.l1_coeff!r}, l2={params.l2_coeff!r})"
    )
    return Measure(lambda pr: _sum_form_value(params, pr.p.entries, pr.q.entries), Domain.OPEN, name)


def characterization_gamma(b: float, alpha) -> float:
    """Scale relating the b = c sum form to D^a: ``sum_form = b (a - 1) D^a``."""
    return b * (as_alpha(alpha).value - 1.0)


def _gamma2_points(k: int = 99) -> list[Distribution]:
    return [Distribution((1.0 - j / (k + 1), j / (k + 1))) for j in range(1, k + 1)]


def worst_self_distance(m: Measure, points: Iterable[Distribution] | None = None) -> tuple[float, Distribution]:
    """Largest ``|I_2(p|p)|`` over ``points`` and the point attaining it."""
    best = (-1.0, None)
    for p in points if points is not None else _gamma2_points():
        r = check_self_distance(m, p)
        if r > best[0]:
            best = (r, p)
    return best


def constraint_b_equals_c(params: SumFormParams, atol: float = 1e-10) -> bool:
    """Whether the alpha not in {0,1} sum form vanishes on the diagonal ``p = q``.

    Holds exactly when ``b == c``: on the diagonal the form reduces to
    ``(c - b) p_2``.
    """
    a = params.alpha
    if a.is_one or a.is_zero:
        raise ValueError("b = c constraint concerns alpha not in {0, 1}")
    worst, _ = worst_self_distance(sum_form_measure(params))
    return worst <= atol


def symmetry_equation_residual(l_coeff: float, x: float) -> float:
    """``|x l(x) + (1-x) l(1-x)|`` for ``l = l_coeff * ln``."""
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    return abs(x * l_coeff * math.log(x) + (1.0 - x) * l_coeff * math.log1p(-x))


def shannon_information_function(x: float) -> float:
    """Binary entropy in bits, 0 at both endpoints.

    Evaluated from the larger of ``x`` and ``1 - x`` so that ``g(x)`` and
    ``g(1 - x)`` see the same pair of floats and agree exactly.
    """
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    big = x if x >= 0.5 else 1.0 - x
    small = 1.0 - big
    if small == 0.0:
        return 0.0
    return -(small * math.log2(small) + big * math.log2(big))
