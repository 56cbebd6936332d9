"""Built-in measures: the divergence family, its relatives, and negative controls.

Each negative control breaks exactly one axiom among those that apply on its
domain. All of them live on the open simplex: on the closed simplex,
generalized additivity and expansibility force decisivity and recursivity,
and under recursivity expansibility and decisivity fail or hold together, so
a closed-domain control cannot isolate those axioms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ._backend import kernels
from .axioms import Axiom, Measure
from .qlog import Alpha, as_alpha
from .reconstruction import InitialElement, SumFormParams, reconstructed_measure, sum_form_measure
from .simplex import Domain


def divergence_measure(alpha, domain: Domain = Domain.CLOSED, gamma: float = 1.0) -> Measure:
    a = as_alpha(alpha).value
    kern = kernels.divergence_closed if domain is Domain.CLOSED else kernels.divergence_open
    if gamma == 1.0:
        ev = lambda pr: kern(pr.p.entries, pr.q.entries, a)
        return Measure(ev, domain, f"D^{a!r}")
    ev = lambda pr: gamma * kern(pr.p.entries, pr.q.entries, a)
    return Measure(ev, domain, f"{gamma!r}*D^{a!r}")


def zero_measure(domain: Domain = Domain.CLOSED) -> Measure:
    return Measure(lambda pr: 0.0, domain, "zero")


def natural_sum_form(alpha) -> SumFormParams:
    """A self-distance-normalized member of the sum-form family at ``alpha``."""
    a = as_alpha(alpha)
    if a.is_one or a.is_zero:
        return SumFormParams(a, c=0.0, l1_coeff=1.0, l2_coeff=-1.0)
    return SumFormParams(a, b=1.0, c=1.0)


# -- negative controls -------------------------------------------------------


def wrong_coefficient(alpha) -> Measure:
    """``D^(a+1/2)``: recursive, but with the weight exponent of a + 1/2."""
    a = as_alpha(alpha).value
    b = a + 0.5
    return Measure(lambda pr: kernels.divergence_open(pr.p.entries, pr.q.entries, b), Domain.OPEN, "wrong-coefficient")


def squared_euclidean(alpha) -> Measure:
    def ev(pr):
        return kernels.neumaier_sum([(x - y) ** 2 for x, y in zip(pr.p.entries, pr.q.entries)])

    return Measure(ev, Domain.OPEN, "squared-euclidean")


def _perturbed_section(alpha, bump: Callable[[float, float], float], label: str) -> InitialElement:
    a = as_alpha(alpha).value
    div = kernels.divergence_open
    return InitialElement(lambda x, y: div((1.0 - x, x), (1.0 - y, y), a) + bump(x, y), label)


def asymmetric_initial_element(alpha) -> Measure:
    """Measure generated by ``f_D + (x - y)**2``: recursive and normalized, not 3-semisymmetric."""
    f = _perturbed_section(alpha, lambda x, y: (x - y) ** 2, "f_D+(x-y)^2")
    return reconstructed_measure(f, alpha, "asymmetric-initial-element")


def skewed_initial_element(alpha) -> Measure:
    """Measure generated by ``f_D + x (x - y)``."""
    f = _perturbed_section(alpha, lambda x, y: x * (x - y), "f_D+x(x-y)")
    return reconstructed_measure(f, alpha, "skewed-initial-element")


def offset_sum_form(alpha, delta: float = 0.5) -> Measure:
    """``D^a + delta (p_1^a q_1^(1-a) - 1)``: the b != c sum form, not normalized."""
    a = as_alpha(alpha).value

    def ev(pr):
        p, q = pr.p.entries, pr.q.entries
        w1 = kernels.recursion_weight(p[0], q[0], a)
        return kernels.neumaier_sum([kernels.divergence_open(p, q, a), delta * w1, -delta])

    return Measure(ev, Domain.OPEN, "offset-sum-form")


@dataclass(frozen=True)
class BuiltinMeasure:
    name: str
    build: Callable[[Alpha], Measure]
    expected_failures: frozenset = field(default_factory=frozenset)

    @property
    def broken(self) -> bool:
        return bool(self.expected_failures)

    def make(self, alpha) -> Measure:
        m = self.build(as_alpha(alpha))
        return Measure(m.evaluate, m.domain, self.name)


def _catalog() -> dict[str, BuiltinMeasure]:
    entries = [
        BuiltinMeasure("divergence", lambda a: divergence_measure(a, Domain.CLOSED)),
        BuiltinMeasure("divergence-open", lambda a: divergence_measure(a, Domain.OPEN)),
        BuiltinMeasure("scaled-divergence(-2)", lambda a: divergence_measure(a, Domain.CLOSED, -2.0)),
        BuiltinMeasure("scaled-divergence(0.5)", lambda a: divergence_measure(a, Domain.CLOSED, 0.5)),
        BuiltinMeasure("scaled-divergence(10)", lambda a: divergence_measure(a, Domain.CLOSED, 10.0)),
        BuiltinMeasure("sum-form", lambda a: sum_form_measure(natural_sum_form(a))),
        BuiltinMeasure("zero", lambda a: zero_measure(Domain.CLOSED)),
        BuiltinMeasure("wrong-coefficient", wrong_coefficient, frozenset({Axiom.ALPHA_RECURSIVITY})),
        BuiltinMeasure("squared-euclidean", squared_euclidean, frozenset({Axiom.ALPHA_RECURSIVITY})),
        BuiltinMeasure("asymmetric-initial-element", asymmetric_initial_element, frozenset({Axiom.THREE_SEMISYMMETRY})),
        BuiltinMeasure("skewed-initial-element", skewed_initial_element, frozenset({Axiom.THREE_SEMISYMMETRY})),
        BuiltinMeasure("offset-sum-form", offset_sum_form, frozenset({Axiom.SELF_DISTANCE_ZERO})),
    ]
    return {e.name: e for e in entries}


BUILTIN = _catalog()
DEFAULT_MEASURES = tuple(name for name, e in BUILTIN.items() if not e.broken)
BROKEN_MEASURES = tuple(name for name, e in BUILTIN.items() if e.broken)
