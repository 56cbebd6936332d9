"""Numerical checks of the functional equations characterizing ``D^a``.

Every check returns the residual ``|lhs - rhs|`` of one identity instance.
:func:`run_axiom_suite` samples many instances and folds them into
:class:`AxiomReport` records.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from ._backend import kernels
from .errors import DomainMismatch, IncomparableInfinity
from .qlog import Alpha, as_alpha
from .simplex import (
    Distribution,
    DistPair,
    Domain,
    SamplerConfig,
    derive_seed,
    ratio_convention,
    sample_closed_grid,
    sample_closed_pair,
    sample_open_grid,
    sample_pair,
    _draw_open,
)


@dataclass(frozen=True)
class Measure:
    """A relative information measure ``(I_n)`` given by a callback on pairs."""

    evaluate: Callable[[DistPair], float]
    domain: Domain
    name: str

    def __call__(self, pair: DistPair) -> float:
        if pair.domain is not self.domain:
            pair = pair.as_domain(self.domain)
        return float(self.evaluate(pair))

    def scaled(self, gamma: float, name: str | None = None) -> "Measure":
        ev = self.evaluate
        return Measure(lambda pr: gamma * ev(pr), self.domain, name or f"{gamma!r}*{self.name}")


class Axiom(str, enum.Enum):
    ALPHA_RECURSIVITY = "AlphaRecursivity"
    THREE_SEMISYMMETRY = "ThreeSemisymmetry"
    GENERALIZED_ADDITIVITY = "GeneralizedAdditivity"
    EXPANSIBILITY = "Expansibility"
    DECISIVITY = "Decisivity"
    SELF_DISTANCE_ZERO = "SelfDistanceZero"


OPEN_AXIOMS = (Axiom.ALPHA_RECURSIVITY, Axiom.THREE_SEMISYMMETRY, Axiom.SELF_DISTANCE_ZERO)
ALL_AXIOMS = tuple(Axiom)


class Verdict(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"


@dataclass(frozen=True)
class Tolerance:
    rel: float = 1e-9
    abs: float = 1e-12

    def __post_init__(self):
        if not (self.rel > 0 and self.abs > 0):
            raise ValueError("tolerances must be positive")

    def bound(self, reference: float) -> float:
        return self.abs + self.rel * abs(reference)


@dataclass
class AxiomReport:
    axiom: Axiom
    measure: str
    alpha: float
    trials: int
    max_residual: float
    tolerance_used: float
    worst_witness: dict | None
    verdict: Verdict
    incomparable_infinities: int = 0
    largest_residual: float = 0.0

    def to_dict(self) -> dict:
        return {
            "measure": self.measure,
            "axiom": self.axiom.value,
            "alpha": self.alpha,
            "trials": self.trials,
            "max_residual": self.max_residual,
            "tolerance_used": self.tolerance_used,
            "largest_residual": self.largest_residual,
            "incomparable_infinities": self.incomparable_infinities,
            "verdict": self.verdict.value,
            "worst_witness": self.worst_witness,
        }


# -- identity sides ---------------------------------------------------------


def _residual(lhs: float, rhs: float) -> float:
    if math.isinf(lhs) and math.isinf(rhs) and (lhs > 0) == (rhs > 0):
        raise IncomparableInfinity(f"both sides are {lhs}")
    if math.isinf(lhs) or math.isinf(rhs):
        return math.inf
    return abs(lhs - rhs)


def _weight(s: float, t: float, alpha: float) -> float:
    return kernels.recursion_weight(s, t, alpha)


def _dist(entries, domain: Domain) -> Distribution:
    return Distribution(tuple(entries), domain)


def _weighted_term(m: Measure, w: float, p_part, q_part, domain: Domain) -> float:
    """``w * I(p_part/sum | q_part/sum)``; zero weight short-circuits (0 * x = 0)."""
    if w == 0.0:
        return 0.0
    sp = kernels.neumaier_sum(p_part)
    sq = kernels.neumaier_sum(q_part)
    inner = DistPair(
        _dist([ratio_convention(x, sp) for x in p_part], domain),
        _dist([ratio_convention(x, sq) for x in q_part], domain),
    )
    return w * m(inner)


def recursion_rhs(m: Measure, alpha, pair: DistPair) -> float:
    """``I_{n-1}(merged) + w * I_2(inner)`` after merging the first two entries."""
    a = as_alpha(alpha).value
    if pair.n < 3:
        raise ValueError("alpha-recursivity needs n >= 3")
    _require_domain(m, pair)
    p, q = pair.p.entries, pair.q.entries
    s, t = p[0] + p[1], q[0] + q[1]
    merged = DistPair(_dist((s,) + p[2:], pair.domain), _dist((t,) + q[2:], pair.domain))
    head = m(merged)
    tail = _weighted_term(m, _weight(s, t, a), p[:2], q[:2], pair.domain)
    return head + tail


def recursivity_sides(m: Measure, alpha, pair: DistPair) -> tuple[float, float]:
    rhs = recursion_rhs(m, alpha, pair)
    return m(pair), rhs


def _require_domain(m: Measure, pair: DistPair) -> None:
    if pair.domain is not m.domain:
        raise DomainMismatch(f"measure {m.name!r} is {m.domain.value}, pair is {pair.domain.value}")


def check_alpha_recursivity(m: Measure, alpha, pair: DistPair) -> float:
    return _residual(*recursivity_sides(m, alpha, pair))


def semisymmetry_sides(m: Measure, pair: DistPair) -> tuple[float, float]:
    if pair.n != 3:
        raise ValueError("3-semisymmetry is defined for n == 3 only")
    _require_domain(m, pair)
    p, q = pair.p.entries, pair.q.entries
    swapped = DistPair(_dist((p[0], p[2], p[1]), pair.domain), _dist((q[0], q[2], q[1]), pair.domain))
    return m(pair), m(swapped)


def check_3_semisymmetry(m: Measure, pair: DistPair) -> float:
    return _residual(*semisymmetry_sides(m, pair))


def additivity_sides(m: Measure, alpha, outer_n: int, inner_m: int, grid: DistPair) -> tuple[float, float]:
    """Sides of the two-stage chain rule for a row-major ``outer_n x inner_m`` grid."""
    a = as_alpha(alpha).value
    if outer_n < 2 or inner_m < 2:
        raise ValueError("generalized additivity needs outer_n >= 2 and inner_m >= 2")
    if grid.n != outer_n * inner_m:
        raise ValueError(f"grid has {grid.n} cells, expected {outer_n * inner_m}")
    _require_domain(m, grid)
    p, q = grid.p.entries, grid.q.entries
    blocks = [slice(i * inner_m, (i + 1) * inner_m) for i in range(outer_n)]
    P = [kernels.neumaier_sum(p[b]) for b in blocks]
    Q = [kernels.neumaier_sum(q[b]) for b in blocks]
    lhs = m(grid)
    marg = m(DistPair(_dist(P, grid.domain), _dist(Q, grid.domain)))
    terms = [marg]
    for i, b in enumerate(blocks):
        terms.append(_weighted_term(m, _weight(P[i], Q[i], a), p[b], q[b], grid.domain))
    if any(math.isinf(x) for x in terms):
        rhs = math.fsum(x for x in terms if math.isinf(x))
    else:
        rhs = kernels.neumaier_sum(terms)
    return lhs, rhs


def check_generalized_additivity(
    m: Measure, alpha, outer_n: int, inner_m: int, grid: DistPair
) -> float:
    return _residual(*additivity_sides(m, alpha, outer_n, inner_m, grid))


def expansibility_sides(m: Measure, pair: DistPair) -> tuple[float, float]:
    if m.domain is not Domain.CLOSED:
        raise DomainMismatch("expansibility is a closed-domain property")
    pair = pair.as_domain(Domain.CLOSED)
    padded = DistPair(
        _dist(pair.p.entries + (0.0,), Domain.CLOSED), _dist(pair.q.entries + (0.0,), Domain.CLOSED)
    )
    return m(padded), m(pair)


def check_expansibility(m: Measure, pair: DistPair) -> float:
    return _residual(*expansibility_sides(m, pair))


DECISIVE_POINT = DistPair(Distribution((1.0, 0.0), Domain.CLOSED), Distribution((1.0, 0.0), Domain.CLOSED))


def check_decisivity(m: Measure) -> float:
    if m.domain is not Domain.CLOSED:
        raise DomainMismatch("decisivity is a closed-domain property")
    return abs(m(DECISIVE_POINT))


def check_self_distance(m: Measure, p: Distribution) -> float:
    if len(p) != 2:
        raise ValueError("self-distance normalization is stated for n == 2")
    p = p.as_domain(m.domain) if p.domain is not m.domain else p
    return abs(m(DistPair(p, p)))


# -- batch suite ------------------------------------------------------------

_STREAM = {ax: k for k, ax in enumerate(ALL_AXIOMS)}


@dataclass
class _Trial:
    residual: float
    bound: float
    witness: dict
    inconclusive: bool = False


def sample_instance(axiom: Axiom, domain: Domain, alpha: Alpha, config: SamplerConfig, trial: int,
                    n_range: Sequence[int], nm_range: Sequence[tuple[int, int]]) -> dict:
    """Arguments of trial ``trial`` of ``axiom`` exactly as :func:`run_axiom_suite` draws them."""
    seed = derive_seed(config.seed, _STREAM[axiom], trial)
    rng = np.random.default_rng(seed)
    q_zeros = not alpha.is_one
    mc = config.min_component

    def pair_of(n):
        cfg = SamplerConfig(seed=seed, n=n, min_component=min(mc, 0.5 / n))
        if domain is Domain.OPEN:
            return sample_pair(cfg, rng)
        return sample_closed_pair(cfg, rng, q_zeros=q_zeros)

    if axiom is Axiom.ALPHA_RECURSIVITY:
        n = int(n_range[rng.integers(len(n_range))])
        return {"pair": pair_of(n)}
    if axiom is Axiom.THREE_SEMISYMMETRY:
        return {"pair": pair_of(3)}
    if axiom is Axiom.EXPANSIBILITY:
        n = int(n_range[rng.integers(len(n_range))])
        return {"pair": pair_of(n)}
    if axiom is Axiom.GENERALIZED_ADDITIVITY:
        on, im = nm_range[rng.integers(len(nm_range))]
        cfg = SamplerConfig(seed=seed, n=on * im, min_component=min(mc, 0.5 / (on * im)))
        if domain is Domain.OPEN:
            grid = sample_open_grid(cfg, on, im, rng)
        else:
            grid = sample_closed_grid(cfg, on, im, rng, q_zeros=q_zeros)
        return {"outer_n": int(on), "inner_m": int(im), "grid": grid}
    if axiom is Axiom.SELF_DISTANCE_ZERO:
        if domain is Domain.CLOSED and rng.random() < 0.1:
            x = (1.0, 0.0) if rng.random() < 0.5 else (0.0, 1.0)
        else:
            x = _draw_open(rng, 2, min(mc, 0.25))
        return {"p": Distribution(x, domain)}
    raise AssertionError(axiom)


def _run_trial(m: Measure, axiom: Axiom, alpha: Alpha, tol: Tolerance, inst: dict) -> _Trial:
    if axiom is Axiom.ALPHA_RECURSIVITY:
        fn = lambda: recursivity_sides(m, alpha, inst["pair"])
        witness = {"n": inst["pair"].n, **inst["pair"].to_dict()}
    elif axiom is Axiom.THREE_SEMISYMMETRY:
        fn = lambda: semisymmetry_sides(m, inst["pair"])
        witness = inst["pair"].to_dict()
    elif axiom is Axiom.EXPANSIBILITY:
        fn = lambda: expansibility_sides(m, inst["pair"])
        witness = {"n": inst["pair"].n, **inst["pair"].to_dict()}
    elif axiom is Axiom.GENERALIZED_ADDITIVITY:
        fn = lambda: additivity_sides(m, alpha, inst["outer_n"], inst["inner_m"], inst["grid"])
        witness = {"outer_n": inst["outer_n"], "inner_m": inst["inner_m"], **inst["grid"].to_dict()}
    elif axiom is Axiom.SELF_DISTANCE_ZERO:
        p = inst["p"]
        fn = lambda: (m(DistPair(p, p)), 0.0)
        witness = {"p": list(p.entries), "q": list(p.entries)}
    elif axiom is Axiom.DECISIVITY:
        fn = lambda: (m(DECISIVE_POINT), 0.0)
        witness = DECISIVE_POINT.to_dict()
    else:
        raise AssertionError(axiom)
    lhs, rhs = fn()
    try:
        res = _residual(lhs, rhs)
    except IncomparableInfinity:
        return _Trial(math.nan, 0.0, witness, inconclusive=True)
    ref = lhs if math.isfinite(lhs) else 0.0
    return _Trial(res, tol.bound(ref), witness)


def _fold(m: Measure, axiom: Axiom, alpha: Alpha, results: list[_Trial]) -> AxiomReport:
    worst = None
    worst_key = -math.inf
    largest = 0.0
    inconclusive = 0
    first_inconclusive = None
    for r in results:
        if r.inconclusive:
            inconclusive += 1
            if first_inconclusive is None:
                first_inconclusive = r
            continue
        largest = max(largest, r.residual)
        key = math.inf if math.isinf(r.residual) else r.residual / r.bound
        if key > worst_key:
            worst, worst_key = r, key
    if worst is None:
        max_res, tol_used = math.nan, 0.0
        witness = first_inconclusive.witness
    else:
        max_res, tol_used = worst.residual, worst.bound
        witness = worst.witness
        if inconclusive and max_res <= tol_used:
            witness = first_inconclusive.witness
    ok = inconclusive == 0 and max_res <= tol_used
    return AxiomReport(
        axiom=axiom,
        measure=m.name,
        alpha=alpha.value,
        trials=len(results),
        max_residual=max_res,
        tolerance_used=tol_used,
        worst_witness=witness,
        verdict=Verdict.PASS if ok else Verdict.FAIL,
        incomparable_infinities=inconclusive,
        largest_residual=largest,
    )


def applicable_axioms(domain: Domain) -> tuple[Axiom, ...]:
    return ALL_AXIOMS if domain is Domain.CLOSED else OPEN_AXIOMS


def run_axiom_suite(
    m: Measure,
    alpha,
    config: SamplerConfig,
    tolerances: Tolerance | None = None,
    trials: int = 200,
    n_range: Sequence[int] = range(3, 9),
    nm_range: Sequence[tuple[int, int]] = ((2, 2), (2, 3), (3, 2), (3, 3)),
    axioms: Sequence[Axiom] | None = None,
    threads: int = 1,
) -> list[AxiomReport]:
    """Run every applicable axiom check ``trials`` times on sampled instances.

    Instance ``k`` of an axiom is drawn from a seed derived from
    ``(config.seed, axiom, k)``, so reports do not depend on the order in
    which trials execute, and different measures see the same instances.
    Decisivity has a single instance and always reports one trial.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    alpha = as_alpha(alpha)
    tol = tolerances or Tolerance()
    n_range = [int(n) for n in n_range]
    if not n_range or min(n_range) < 3:
        raise ValueError("n_range must be nonempty with every n >= 3")
    nm_range = [(int(a), int(b)) for a, b in nm_range]
    todo = [ax for ax in applicable_axioms(m.domain) if axioms is None or ax in axioms]

    def one(ax: Axiom, k: int) -> _Trial:
        inst = {} if ax is Axiom.DECISIVITY else sample_instance(ax, m.domain, alpha, config, k, n_range, nm_range)
        return _run_trial(m, ax, alpha, tol, inst)

    reports = []
    for ax in todo:
        count = 1 if ax is Axiom.DECISIVITY else trials
        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda k: one(ax, k), range(count)))
        else:
            results = [one(ax, k) for k in range(count)]
        reports.append(_fold(m, ax, alpha, results))
    return reports
