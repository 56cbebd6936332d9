"""The deformed logarithm ``ln_a(x) = (x**(1-a) - 1) / (1 - a)``, ``ln_1 = ln``."""
from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .errors import DomainError


@dataclass(frozen=True)
class Alpha:
    """Deformation parameter. ``is_one``/``is_zero`` compare exactly."""

    value: float

    def __post_init__(self):
        v = float(self.value)
        if not math.isfinite(v):
            raise ValueError(f"alpha must be finite, got {self.value!r}")
        object.__setattr__(self, "value", v)

    @property
    def is_one(self) -> bool:
        return self.value == 1.0

    @property
    def is_zero(self) -> bool:
        return self.value == 0.0

    def __float__(self):
        return self.value


def as_alpha(alpha) -> Alpha:
    return alpha if isinstance(alpha, Alpha) else Alpha(alpha)


def ln_alpha(x: float, alpha) -> float:
    """Deformed logarithm of ``x > 0``.

    For alpha != 1 this is evaluated as ``expm1((1-alpha)*ln x) / (1-alpha)``,
    which has no cancellation when ``(1-alpha)*ln x`` is small. There is no
    switching window around alpha = 1; only alpha == 1 exactly takes the
    natural-log branch.
    """
    a = as_alpha(alpha).value
    if not x > 0:
        raise DomainError(f"ln_alpha needs x > 0, got {x!r}")
    return kernels.ln_alpha(float(x), a)


def ln_alpha_inverse_arg(x: float, alpha) -> float:
    """``ln_alpha(1/x)`` computed as ``-x**(alpha-1) * ln_alpha(x)``."""
    a = as_alpha(alpha).value
    if not x > 0:
        raise DomainError(f"ln_alpha needs x > 0, got {x!r}")
    x = float(x)
    return -(x ** (a - 1.0)) * kernels.ln_alpha(x, a)


def naive_ln_alpha(x: float, alpha) -> float:
    """Textbook ``(x**(1-a) - 1) / (1 - a)``; kept only for accuracy comparisons."""
    a = as_alpha(alpha).value
    if a == 1.0:
        return math.log(x)
    return (x ** (1.0 - a) - 1.0) / (1.0 - a)
