"""Closed-form large-gap predictions for log det(I - gamma K_s), evaluated in
log space with a term-by-term breakdown, and the eigenvalue predictions for
1 - lambda_k.

Regions:
  * SUPER_EXP  - nu >= 2s - (chi + alpha) ln(4s); e^{-s^2/2} decay plus a
                 finite product of corrections built from h_k.
  * GAMMA1     - gamma = 1 (nu = inf), the undeformed determinant.
  * EXP_REGION - gamma fixed in [0, 1); e^{-2 nu s / pi} decay.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .instance import GapInstance, nu_gamma_map
from .kernels import KernelKind, KernelParams
from .orthopoly import OrthoData, hankel_dets
from .specfun import ZETA_PRIME_MINUS1, barnes_g_log

__all__ = [
    "Region",
    "RegionError",
    "AsyBreakdown",
    "nu_gamma_map",
    "p_of_chi",
    "chi_split",
    "region_check",
    "boundary_nu",
    "barnes_constant",
    "asy_theorem",
    "asy_gamma1",
    "asy_exp_region",
    "asy_sine_gamma1",
    "product_coefficient_log",
    "eig_asy",
]


class Region(enum.Enum):
    SUPER_EXP = "super-exp"
    EXP_REGION = "exp-region"
    GAMMA1 = "gamma1"


class RegionError(ValueError):
    pass


@dataclass
class AsyBreakdown:
    quadratic: float
    linear: float
    log_term: float
    constant: float
    product_terms: list = field(default_factory=list)  # complex ln(1 + c_k)
    total_log: float = 0.0
    region: Region = Region.GAMMA1
    in_region: bool = True

    def resum(self) -> float:
        prod = sum(complex(c) for c in self.product_terms).real if self.product_terms else 0.0
        return self.quadratic + self.linear + self.log_term + self.constant + prod


def p_of_chi(chi: float) -> int:
    """Number of product terms: 1 for chi < 1/2, floor(chi + 3/2) otherwise."""
    if chi < 0.5:
        return 1
    return int(math.floor(chi + 1.5))


def chi_split(chi: float) -> tuple[int, float]:
    """chi = k + mu with mu in [-1/2, 1/2)."""
    k = int(math.floor(chi + 0.5))
    return k, chi - k


def boundary_nu(s: float, chi: float, alpha: float = 0.0) -> float:
    """nu on the edge of the super-exponential region, 2s - (chi + alpha) ln(4s)."""
    return 2.0 * s - (chi + alpha) * math.log(4.0 * s)


def region_check(s: float, nu: float, chi: float, alpha: float = 0.0) -> bool:
    if not s > 0:
        raise ValueError("s must be positive")
    if math.isinf(nu):
        return True
    # tiny slack so that nu set exactly on the boundary counts as inside
    return nu >= boundary_nu(s, chi, alpha) - 1e-12 * max(1.0, abs(nu))


def barnes_constant(p: KernelParams) -> float:
    """ln[sqrt(pi) G(1/2)^2 G(1+2a) / (2^{2a^2} G(1+a+b) G(1+a-b))].

    For imaginary b the two G factors in the denominator are complex
    conjugates, so their product is 2 Re ln G(1 + a + b).
    """
    a = p.alpha
    val = 0.5 * math.log(math.pi) + 2.0 * barnes_g_log(0.5).real
    val += barnes_g_log(1.0 + 2.0 * a).real
    val -= 2.0 * a * a * math.log(2.0)
    val -= 2.0 * barnes_g_log(complex(1.0 + a, p.beta_im)).real
    return val


def _gamma1_parts(s: float, p: KernelParams):
    quad = -0.5 * s * s
    lin = 2.0 * p.alpha * s
    logt = (-0.25 - p.alpha**2 + p.beta_sq) * math.log(s)
    return quad, lin, logt, barnes_constant(p)


def product_coefficient_log(k: int, s: float, nu: float, p: KernelParams, ortho: OrthoData) -> complex:
    """ln c_k with c_k = h_k e^{pi i beta}/(2 pi) (4s)^{-1/2-k-alpha} e^{2s - nu}."""
    hrot = ortho.h[k] * math.exp(-math.pi * p.beta_im)
    return (
        np.log(complex(hrot) / (2.0 * math.pi))
        - (0.5 + k + p.alpha) * math.log(4.0 * s)
        + 2.0 * s
        - nu
    )


def _log1p_exp(lc: complex) -> complex:
    """ln(1 + e^{lc}) without overflow or loss for small e^{lc}."""
    if lc.real > 0:
        return lc + np.log1p(np.exp(-lc))
    return complex(np.log1p(np.exp(lc)))


def _ortho_for(inst: GapInstance, k_max: int, ortho: OrthoData | None) -> OrthoData:
    if ortho is not None and ortho.k_max >= k_max:
        return ortho
    return hankel_dets(inst.params, k_max)


def asy_theorem(inst: GapInstance, chi: float, ortho: OrthoData | None = None,
                check: bool = True) -> AsyBreakdown:
    """Super-exponential-region prediction with p = p(chi) product terms."""
    s, nu, p = inst.s, inst.nu, inst.params
    inside = region_check(s, nu, chi, p.alpha)
    if check and not inside:
        raise RegionError(
            f"nu={nu} is below the super-exponential boundary {boundary_nu(s, chi, p.alpha)} (chi={chi})"
        )
    npr = p_of_chi(chi)
    quad, lin, logt, const = _gamma1_parts(s, p)
    terms: list[complex] = []
    if not math.isinf(nu):
        ortho = _ortho_for(inst, npr - 1, ortho)
        for k in range(npr):
            terms.append(_log1p_exp(product_coefficient_log(k, s, nu, p, ortho)))
    else:
        terms = [0j] * npr
    out = AsyBreakdown(quad, lin, logt, const, terms, region=Region.SUPER_EXP, in_region=inside)
    out.total_log = out.resum()
    return out


def asy_gamma1(inst: GapInstance) -> AsyBreakdown:
    """gamma = 1 formula; evaluated for any instance, flagged when gamma < 1."""
    quad, lin, logt, const = _gamma1_parts(inst.s, inst.params)
    out = AsyBreakdown(quad, lin, logt, const, [], region=Region.GAMMA1, in_region=inst.gamma == 1.0)
    out.total_log = out.resum()
    return out


def asy_exp_region(inst: GapInstance) -> AsyBreakdown:
    """Fixed-gamma prediction: -2 nu s/pi + nu^2/(2 pi^2) ln(4s) + alpha nu
    + 2 ln[G(1 + i nu/2pi) G(1 - i nu/2pi)]."""
    s, nu = inst.s, inst.nu
    if math.isinf(nu):
        raise RegionError("the exponential-region formula needs gamma < 1")
    lin = -2.0 * nu * s / math.pi
    logt = nu * nu / (2.0 * math.pi**2) * math.log(4.0 * s)
    g = barnes_g_log(complex(1.0, nu / (2.0 * math.pi)))
    const = inst.params.alpha * nu + 4.0 * g.real
    out = AsyBreakdown(0.0, lin, logt, const, [], region=Region.EXP_REGION, in_region=True)
    out.total_log = out.resum()
    return out


def asy_sine_gamma1(s: float, zeta_coeff: float = 3.0) -> float:
    """-s^2/2 - ln(s)/4 + ln(2)/12 + zeta_coeff * zeta'(-1).

    ``zeta_coeff`` exists only to evaluate the variant with 2 zeta'(-1).
    """
    if not s > 0:
        raise ValueError("s must be positive")
    return -0.5 * s * s - 0.25 * math.log(s) + math.log(2.0) / 12.0 + zeta_coeff * ZETA_PRIME_MINUS1


def eig_asy(k: int, inst: GapInstance, ortho: OrthoData | None = None) -> float:
    """Leading-order 1 - lambda_k = 2 pi / (h_k e^{pi i beta}) (4s)^{1/2+k+alpha} e^{-2s}."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    p = inst.params
    if inst.kind is KernelKind.SINE:
        # h_k = sqrt(pi) k! 2^{-k}
        return (
            math.sqrt(math.pi) * 2.0 ** (3 * k + 2) / math.factorial(k)
            * inst.s ** (0.5 + k) * math.exp(-2.0 * inst.s)
        )
    ortho = _ortho_for(inst, k, ortho)
    hrot = ortho.h_rot(k)
    return 2.0 * math.pi / hrot * (4.0 * inst.s) ** (0.5 + k + p.alpha) * math.exp(-2.0 * inst.s)
