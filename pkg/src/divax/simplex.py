"""Probability vectors on the open and closed simplex.

Validation never rescales its input; sampling is deterministic given a seed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .errors import (
    ConfigInfeasible,
    DomainMismatch,
    LengthTooSmall,
    NegativeEntry,
    NonPositiveEntry,
    SumNotOne,
    UndefinedRatio,
    ValidationError,
)

SUM_TOL = 1e-12
MAX_DRAWS = 1000
UINT64_MAX = 2**64 - 1


class Domain(str, enum.Enum):
    OPEN = "open"
    CLOSED = "closed"


def _check(entries: tuple, domain: Domain) -> None:
    n = len(entries)
    if n < 2:
        raise LengthTooSmall(f"need at least 2 entries, got {n}")
    for i, x in enumerate(entries):
        if not math.isfinite(x):
            raise ValidationError(f"entry {i} is not finite: {x!r}")
        if domain is Domain.OPEN and x <= 0.0:
            raise NonPositiveEntry(f"entry {i} = {x!r} is not > 0")
        if domain is Domain.CLOSED and x < 0.0:
            raise NegativeEntry(f"entry {i} = {x!r} is negative")
    total = math.fsum(entries)
    if abs(total - 1.0) > SUM_TOL:
        raise SumNotOne(f"entries sum to {total!r}, not 1")


@dataclass(frozen=True)
class Distribution:
    """A probability vector, validated on construction."""

    entries: tuple
    domain: Domain = Domain.OPEN

    def __post_init__(self):
        entries = tuple(float(x) for x in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "domain", Domain(self.domain))
        _check(entries, self.domain)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def as_domain(self, domain: Domain) -> "Distribution":
        return Distribution(self.entries, domain)


def validate(entries: Iterable[float], domain: Domain | str = Domain.OPEN) -> Distribution:
    """Return ``entries`` as a :class:`Distribution` or raise a ValidationError.

    The values are kept as given. A vector that sums to 0.9 is rejected, not
    rescaled.
    """
    entries = tuple(entries)
    if not entries:
        raise LengthTooSmall("empty entry list")
    return Distribution(entries, Domain(domain))


@dataclass(frozen=True)
class DistPair:
    p: Distribution
    q: Distribution

    def __post_init__(self):
        if len(self.p) != len(self.q):
            raise DomainMismatch(f"length mismatch: {len(self.p)} vs {len(self.q)}")
        if self.p.domain is not self.q.domain:
            raise DomainMismatch("p and q live on different domains")

    @classmethod
    def of(cls, p: Sequence[float], q: Sequence[float], domain: Domain | str = Domain.OPEN) -> "DistPair":
        return cls(validate(p, domain), validate(q, domain))

    @property
    def n(self) -> int:
        return len(self.p)

    @property
    def domain(self) -> Domain:
        return self.p.domain

    def as_domain(self, domain: Domain) -> "DistPair":
        return DistPair(self.p.as_domain(domain), self.q.as_domain(domain))

    def to_dict(self) -> dict:
        return {"p": list(self.p.entries), "q": list(self.q.entries)}


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    n: int
    min_component: float = 1e-9

    def __post_init__(self):
        if not 0 <= int(self.seed) <= UINT64_MAX:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if not 0.0 <= self.min_component < 1.0 / self.n:
            raise ValueError(f"min_component must lie in [0, 1/n), got {self.min_component}")


def derive_seed(master: int, *key: int) -> int:
    """Child seed for stream ``key`` of ``master``; independent of call order."""
    ss = np.random.SeedSequence(int(master), spawn_key=tuple(int(k) for k in key))
    lo, hi = ss.generate_state(2, np.uint32)
    return int(lo) | (int(hi) << 32)


def _draw_open(rng: np.random.Generator, n: int, min_component: float) -> tuple:
    for _ in range(MAX_DRAWS):
        e = rng.standard_exponential(n)
        x = e / e.sum()
        if x.min() >= min_component:
            return tuple(float(v) for v in x)
    raise ConfigInfeasible(f"no draw with all components >= {min_component} in {MAX_DRAWS} tries (n={n})")


def sample_simplex(config: SamplerConfig, rng: np.random.Generator | None = None) -> Distribution:
    """Uniform draw from the open simplex via normalized exponentials.

    Draws with a component below ``config.min_component`` are rejected and
    redrawn. Without ``rng`` a fresh generator is seeded from ``config.seed``,
    so repeated calls return the same vector.
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    return Distribution(_draw_open(rng, config.n, config.min_component), Domain.OPEN)


def sample_pair(config: SamplerConfig, rng: np.random.Generator | None = None) -> DistPair:
    if rng is None:
        rng = np.random.default_rng(config.seed)
    p = _draw_open(rng, config.n, config.min_component)
    q = _draw_open(rng, config.n, config.min_component)
    return DistPair(Distribution(p, Domain.OPEN), Distribution(q, Domain.OPEN))


def _normalize_masked(x, keep, rng, allowed=None) -> tuple:
    if not keep.any():
        choices = np.flatnonzero(allowed) if allowed is not None else np.arange(len(keep))
        keep[choices[rng.integers(len(choices))]] = True
    x = np.where(keep, x, 0.0)
    x = x / x.sum()
    return tuple(float(v) for v in x)


def _zero_masks(rng, n, q_zeros, zero_rate):
    u = rng.random(n)
    third = zero_rate / 3.0
    both = u < third
    p_only = (u >= third) & (u < 2 * third)
    q_only = (u >= 2 * third) & (u < zero_rate)
    if not q_zeros:
        p_only |= q_only
        q_only[:] = False
    return ~(both | p_only), ~(both | q_only)


def _closed_from_masks(rng, keep_p, keep_q, min_component, q_zeros):
    n = len(keep_p)
    p = np.asarray(_draw_open(rng, n, min_component))
    q = np.asarray(_draw_open(rng, n, min_component))
    qp = _normalize_masked(q, keep_q, rng)
    if not q_zeros:
        # support(p) must stay inside support(q)
        keep_p &= np.asarray(qp) > 0.0
        pp = _normalize_masked(p, keep_p, rng, allowed=np.asarray(qp) > 0.0)
    else:
        pp = _normalize_masked(p, keep_p, rng)
    return DistPair(Distribution(pp, Domain.CLOSED), Distribution(qp, Domain.CLOSED))


def sample_closed_pair(
    config: SamplerConfig,
    rng: np.random.Generator | None = None,
    q_zeros: bool = True,
    zero_rate: float = 0.3,
) -> DistPair:
    """Closed-simplex pair with randomly placed exact zeros.

    Zeros are shared, p-only, or (when ``q_zeros``) q-only. With
    ``q_zeros=False`` the support of p is contained in the support of q.
    """
    if rng is None:
        rng = np.random.default_rng(config.seed)
    keep_p, keep_q = _zero_masks(rng, config.n, q_zeros, zero_rate)
    return _closed_from_masks(rng, keep_p, keep_q, config.min_component, q_zeros)


def sample_closed_grid(
    config: SamplerConfig,
    outer_n: int,
    inner_m: int,
    rng: np.random.Generator | None = None,
    q_zeros: bool = True,
    zero_rate: float = 0.3,
    block_rate: float = 0.2,
) -> DistPair:
    """Closed pair of length ``outer_n * inner_m``, row-major blocks, some blocks zeroed."""
    if rng is None:
        rng = np.random.default_rng(config.seed)
    size = outer_n * inner_m
    keep_p, keep_q = _zero_masks(rng, size, q_zeros, zero_rate)
    for i in range(outer_n):
        block = slice(i * inner_m, (i + 1) * inner_m)
        u, v = rng.random(2)
        if u < block_rate:
            keep_p[block] = False
        if v < block_rate:
            keep_q[block] = False
            if not q_zeros:
                keep_p[block] = False
    return _closed_from_masks(rng, keep_p, keep_q, config.min_component, q_zeros)


def sample_open_grid(config: SamplerConfig, outer_n: int, inner_m: int, rng=None) -> DistPair:
    if rng is None:
        rng = np.random.default_rng(config.seed)
    size = outer_n * inner_m
    p = _draw_open(rng, size, config.min_component)
    q = _draw_open(rng, size, config.min_component)
    return DistPair(Distribution(p, Domain.OPEN), Distribution(q, Domain.OPEN))


def pow_convention(x: float, e: float) -> float:
    """``x**e`` for x > 0, and 0 for x == 0 whatever the exponent."""
    if x < 0:
        raise ValueError(f"base must be >= 0, got {x}")
    return kernels.pow_convention(x, e)


def ratio_convention(num: float, den: float) -> float:
    """``num/den`` with 0/0 read as 0."""
    if num == 0.0:
        return 0.0
    if den == 0.0:
        raise UndefinedRatio(f"{num}/0")
    return num / den
