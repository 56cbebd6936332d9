import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from divax.axioms import (
    ALL_AXIOMS,
    OPEN_AXIOMS,
    Axiom,
    Measure,
    Tolerance,
    Verdict,
    check_3_semisymmetry,
    check_alpha_recursivity,
    check_decisivity,
    check_expansibility,
    check_generalized_additivity,
    check_self_distance,
    run_axiom_suite,
)
from divax.errors import DomainMismatch, IncomparableInfinity
from divax.measures import divergence_measure, zero_measure
from divax.reconstruction import SumFormParams
from divax.simplex import Distribution, DistPair, Domain, SamplerConfig, sample_open_grid, sample_pair

from conftest import ALPHAS, pair

P3 = (0.2, 0.3, 0.5)
Q3 = (0.3, 0.3, 0.4)

projection = Measure(lambda pr: pr.p[1], Domain.OPEN, "projection")
first = Measure(lambda pr: pr.p[0], Domain.OPEN, "first")
counting = Measure(lambda pr: float(pr.n), Domain.CLOSED, "counting")
constant = Measure(lambda pr: 1.0, Domain.CLOSED, "one")


def sampled_pairs(seed, count, n):
    rng = np.random.default_rng(seed)
    return [sample_pair(SamplerConfig(seed=0, n=n), rng) for _ in range(count)]


# -- single checks --------------------------------------------------------------


def test_recursivity_of_divergence(alpha):
    m = divergence_measure(alpha, Domain.OPEN)
    for pr in sampled_pairs(1, 100, 5):
        assert check_alpha_recursivity(m, alpha, pr) <= 1e-10 * (1 + abs(m(pr))) + 1e-12


def test_recursivity_zero_measure(alpha):
    m = zero_measure(Domain.OPEN)
    assert check_alpha_recursivity(m, alpha, pair(P3, Q3)) == 0.0


@pytest.mark.parametrize(
    "a, a_check, expected",
    [
        (2.0, 2.5, 0.0014521511804120524),
        (1.0, 1.5, 0.00087719429312507172),
        (0.5, 1.0, 0.00048331945882066001),
        (-1.0, -0.5, 0.0013069360623708472),
    ],
)
def test_recursivity_at_wrong_exponent(a, a_check, expected):
    # reference residuals computed at 40 digits
    m = divergence_measure(a, Domain.OPEN)
    r = check_alpha_recursivity(m, a_check, pair(P3, Q3))
    assert r == pytest.approx(expected, rel=1e-9)
    assert r > Tolerance().bound(m(pair(P3, Q3)))


def test_recursivity_needs_three():
    with pytest.raises(ValueError):
        check_alpha_recursivity(zero_measure(Domain.OPEN), 1, pair((0.5, 0.5), (0.5, 0.5)))


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        check_alpha_recursivity(divergence_measure(1, Domain.OPEN), 1, pair(P3, Q3, "closed"))
    with pytest.raises(DomainMismatch):
        check_expansibility(divergence_measure(1, Domain.OPEN), pair(P3, Q3))
    with pytest.raises(DomainMismatch):
        check_decisivity(divergence_measure(1, Domain.OPEN))


def test_semisymmetry_of_divergence(alpha):
    m = divergence_measure(alpha, Domain.OPEN)
    for pr in sampled_pairs(2, 100, 3):
        assert check_3_semisymmetry(m, pr) <= 1e-10 * (1 + abs(m(pr))) + 1e-12


def test_semisymmetry_equal_tail_is_exact():
    pr = pair((0.4, 0.3, 0.3), (0.2, 0.4, 0.4))
    assert check_3_semisymmetry(projection, pr) == 0.0


def test_semisymmetry_projection():
    assert check_3_semisymmetry(projection, pair(P3, Q3)) == pytest.approx(0.2, abs=1e-16)


def test_semisymmetry_length():
    with pytest.raises(ValueError):
        check_3_semisymmetry(projection, pair((0.5, 0.5), (0.5, 0.5)))


def test_additivity_product_grid_by_hand():
    # p = (0.6, 0.4) x (0.5, 0.5), q = (0.3, 0.7) x (0.2, 0.8) at alpha = 2.
    # D^2(p|q) = sum p^2/q - 1; for a product it is (1 + D(P|Q)) (1 + D(r|s)) - 1
    # and the chain rule gives D(P|Q) + (sum P^2/Q) D(r|s), the same number.
    P, Q, r, s = (0.6, 0.4), (0.3, 0.7), (0.5, 0.5), (0.2, 0.8)
    grid = pair([a * b for a in P for b in r], [a * b for a in Q for b in s])
    dPQ = 0.36 / 0.3 + 0.16 / 0.7 - 1
    drs = 0.25 / 0.2 + 0.25 / 0.8 - 1
    m = divergence_measure(2.0, Domain.OPEN)
    assert m(grid) == pytest.approx((1 + dPQ) * (1 + drs) - 1, rel=1e-14)
    assert check_generalized_additivity(m, 2.0, 2, 2, grid) <= 1e-15


def test_additivity_sampled(alpha):
    m = divergence_measure(alpha, Domain.OPEN)
    rng = np.random.default_rng(3)
    for on, im in [(2, 2), (2, 3), (3, 4), (4, 4)]:
        for _ in range(25):
            grid = sample_open_grid(SamplerConfig(seed=0, n=on * im, min_component=1e-6), on, im, rng)
            assert check_generalized_additivity(m, alpha, on, im, grid) <= 1e-9 * (1 + abs(m(grid)))


def test_additivity_preconditions():
    m = zero_measure(Domain.OPEN)
    grid = pair((0.25,) * 4, (0.25,) * 4)
    with pytest.raises(ValueError):
        check_generalized_additivity(m, 1, 4, 1, grid)
    with pytest.raises(ValueError):
        check_generalized_additivity(m, 1, 3, 2, grid)


def test_expansibility_examples(alpha):
    pr = pair(P3, Q3, "closed")
    assert check_expansibility(divergence_measure(alpha), pr) <= 1e-15
    assert check_expansibility(zero_measure(), pr) == 0.0
    assert check_expansibility(counting, pr) == 1.0


def test_decisivity_examples(alpha):
    assert check_decisivity(divergence_measure(alpha)) == 0.0
    assert check_decisivity(constant) == 1.0


def test_decisivity_unnormalized_sum_form():
    # b p1^a q1^(1-a) + c p2^a q2^(1-a) - b at (1,0|1,0) is b + 0 - b
    params = SumFormParams(2.0, b=1.5, c=0.25)
    m = Measure(_closed_sum_form(params), Domain.CLOSED, "sf")
    assert check_decisivity(m) == 0.0


def _closed_sum_form(params):
    a = params.alpha.value

    def pw(x, e):
        return 0.0 if x == 0 else x**e

    def ev(pr):
        p, q = pr.p.entries, pr.q.entries
        w = [pw(x, a) * pw(y, 1 - a) for x, y in zip(p, q)]
        return params.b * w[0] + params.c * sum(w[1:]) - params.b

    return ev


def test_self_distance_examples(alpha):
    p = Distribution((0.3, 0.7))
    assert check_self_distance(divergence_measure(alpha, Domain.OPEN), p) == 0.0
    assert check_self_distance(first, p) == 0.3
    for g in (-2.0, 0.5, 10.0):
        assert check_self_distance(divergence_measure(alpha, Domain.OPEN, g), p) == 0.0
    with pytest.raises(ValueError):
        check_self_distance(first, Distribution(P3))


def test_both_sides_infinite_is_flagged():
    m = divergence_measure(1.0)
    pr = pair((0.5, 0.5), (1.0, 0.0), "closed")
    with pytest.raises(IncomparableInfinity):
        check_expansibility(m, pr)


# -- batch suite --------------------------------------------------------------


def test_suite_divergence_passes(alpha):
    reports = run_axiom_suite(divergence_measure(alpha), alpha, SamplerConfig(seed=5, n=3), trials=100)
    assert [r.axiom for r in reports] == list(ALL_AXIOMS)
    for r in reports:
        assert r.verdict is Verdict.PASS, r
        assert r.max_residual <= r.tolerance_used
        assert r.trials == (1 if r.axiom is Axiom.DECISIVITY else 100)


def test_suite_open_domain_axioms():
    reports = run_axiom_suite(divergence_measure(0.5, Domain.OPEN), 0.5, SamplerConfig(seed=5, n=3), trials=20)
    assert [r.axiom for r in reports] == list(OPEN_AXIOMS)


def test_suite_mismatched_alpha_fails():
    reports = run_axiom_suite(
        divergence_measure(2.0, Domain.OPEN), 2.5, SamplerConfig(seed=1, n=3), trials=50,
        axioms=[Axiom.ALPHA_RECURSIVITY],
    )
    (r,) = reports
    assert r.verdict is Verdict.FAIL
    assert r.max_residual > r.tolerance_used
    assert r.worst_witness["n"] >= 3


def test_suite_rejects_zero_trials():
    with pytest.raises(ValueError):
        run_axiom_suite(zero_measure(), 1, SamplerConfig(seed=0, n=3), trials=0)


@pytest.mark.parametrize("gamma", [-2.0, 0.5, 10.0])
@pytest.mark.parametrize("a", [-1.0, 0.5, 2.0])
def test_scaling_closure(gamma, a):
    base_tol = Tolerance(rel=1e-10, abs=1e-12)
    tol = Tolerance(rel=abs(gamma) * base_tol.rel, abs=abs(gamma) * base_tol.abs + 1e-12)
    cfg = SamplerConfig(seed=9, n=3)
    base = run_axiom_suite(divergence_measure(a), a, cfg, base_tol, trials=50)
    scaled = run_axiom_suite(divergence_measure(a).scaled(gamma), a, cfg, tol, trials=50)
    assert all(r.verdict is Verdict.PASS for r in base)
    assert all(r.verdict is Verdict.PASS for r in scaled)


def test_additivity_and_expansibility_imply_the_rest():
    cfg = SamplerConfig(seed=13, n=3)
    families = [divergence_measure(a, Domain.CLOSED, g) for a in ALPHAS for g in (1.0, -2.0)]
    families.append(zero_measure())
    for m in families:
        a = float(m.name.split("D^")[1]) if "D^" in m.name else 1.0
        reps = {r.axiom: r for r in run_axiom_suite(m, a, cfg, trials=40)}
        if reps[Axiom.GENERALIZED_ADDITIVITY].verdict is Verdict.PASS and reps[Axiom.EXPANSIBILITY].verdict is Verdict.PASS:
            assert reps[Axiom.DECISIVITY].verdict is Verdict.PASS
            assert reps[Axiom.ALPHA_RECURSIVITY].verdict is Verdict.PASS


def test_order_independence():
    m = divergence_measure(1.5)
    cfg = SamplerConfig(seed=21, n=3)
    serial = [r.to_dict() for r in run_axiom_suite(m, 1.5, cfg, trials=30)]
    threaded = [r.to_dict() for r in run_axiom_suite(m, 1.5, cfg, trials=30, threads=4)]
    assert serial == threaded
    ax = [Axiom.SELF_DISTANCE_ZERO, Axiom.ALPHA_RECURSIVITY]
    one_by_one = [run_axiom_suite(m, 1.5, cfg, trials=30, axioms=[x])[0].to_dict() for x in reversed(ax)]
    together = [r.to_dict() for r in run_axiom_suite(m, 1.5, cfg, trials=30, axioms=ax)]
    assert sorted(one_by_one, key=str) == sorted(together, key=str)


def test_incomparable_infinities_force_fail():
    # every identity compares inf with inf
    inf_measure = Measure(lambda pr: math.inf, Domain.CLOSED, "inf")
    reps = run_axiom_suite(inf_measure, 1.0, SamplerConfig(seed=0, n=3), trials=5,
                           axioms=[Axiom.EXPANSIBILITY])
    (r,) = reps
    assert r.verdict is Verdict.FAIL
    assert r.incomparable_infinities == 5
    assert r.worst_witness is not None


def test_kl_closed_suite_counts_no_infinities():
    reps = run_axiom_suite(divergence_measure(1.0), 1.0, SamplerConfig(seed=0, n=3), trials=50)
    assert all(r.incomparable_infinities == 0 for r in reps)


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(rel=0)
    with pytest.raises(ValueError):
        Tolerance(abs=-1)
    assert Tolerance(1e-9, 1e-12).bound(-2.0) == pytest.approx(1e-12 + 2e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(ALPHAS), st.integers(3, 10))
def test_recursivity_property(seed, a, n):
    m = divergence_measure(a, Domain.OPEN)
    pr = sample_pair(SamplerConfig(seed=seed, n=n, min_component=1e-6))
    assert check_alpha_recursivity(m, a, pr) <= 1e-10 * (1 + abs(m(pr))) + 1e-12
