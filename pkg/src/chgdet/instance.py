"""Problem instances: kernel family, parameters, interval half-width and the
thinning parameter in either of its two coordinates (gamma or nu)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .kernels import KernelKind, KernelParams

__all__ = ["Deformation", "GapInstance", "nu_gamma_map", "gamma_to_nu", "nu_to_gamma"]


def gamma_to_nu(gamma: float) -> float:
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    if gamma == 1.0:
        return math.inf
    return -math.log1p(-gamma)


def nu_to_gamma(nu: float) -> float:
    if math.isnan(nu) or nu < 0.0:
        raise ValueError(f"nu must lie in [0, +inf], got {nu}")
    if math.isinf(nu):
        return 1.0
    return -math.expm1(-nu)


def nu_gamma_map(gamma: float | None = None, nu: float | None = None) -> float:
    """Convert between gamma and nu = -ln(1 - gamma); pass exactly one."""
    if (gamma is None) == (nu is None):
        raise ValueError("pass exactly one of gamma, nu")
    if gamma is not None:
        return gamma_to_nu(gamma)
    return nu_to_gamma(nu)


@dataclass(frozen=True)
class Deformation:
    """gamma in [0, 1] together with nu = -ln(1 - gamma) in [0, inf]."""

    gamma: float
    nu: float

    @classmethod
    def from_gamma(cls, gamma: float) -> "Deformation":
        return cls(float(gamma), gamma_to_nu(gamma))

    @classmethod
    def from_nu(cls, nu: float) -> "Deformation":
        return cls(nu_to_gamma(nu), float(nu))

    @property
    def exp_minus_nu(self) -> float:
        """1 - gamma, taken from nu so that it stays accurate as gamma -> 1."""
        return math.exp(-self.nu)


@dataclass(frozen=True)
class GapInstance:
    kind: KernelKind
    params: KernelParams
    s: float
    deformation: Deformation = field(default_factory=lambda: Deformation.from_gamma(1.0))

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError(f"s must be positive, got {self.s}")
        object.__setattr__(self, "params", self.kind.params(self.params))

    @property
    def t(self) -> complex:
        return -4j * self.s

    @property
    def gamma(self) -> float:
        return self.deformation.gamma

    @property
    def nu(self) -> float:
        return self.deformation.nu

    def with_deformation(self, d: Deformation) -> "GapInstance":
        return GapInstance(self.kind, self.params, self.s, d)

    def with_s(self, s: float) -> "GapInstance":
        return GapInstance(self.kind, self.params, s, self.deformation)
