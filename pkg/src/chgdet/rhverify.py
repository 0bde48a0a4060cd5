"""Explicit Riemann-Hilbert parametrices for the large-gap analysis and
numerical checks of their defining properties (jumps, determinants,
behaviour at infinity, analyticity of the prefactors, matching).

Conventions
-----------
* z-plane contours (all oriented left to right, Sigma_4 downward; the "+"
  side is on the left):
    Sigma_1 = 1 + e^{i pi/4} R+,   Sigma_2 = -1 + e^{3 i pi/4} R+,
    Sigma_3 = -1 + e^{-3 i pi/4} R+, Sigma_4 = -i R+,
    Sigma_5 = 1 + e^{-i pi/4} R+,  Sigma_6 = (0, 1),  Sigma_7 = (-1, 0).
* sqrt(z^2 - 1) is the branch analytic off [-1, 1] that behaves like z at
  infinity, i.e. sqrt(z - 1) sqrt(z + 1) with principal factors.
* Boundary values on a contour are two-sided limits at offsets eps along
  the normal, combined by Richardson extrapolation; nothing is evaluated
  on a cut.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .asymptotics import chi_split
from .instance import Deformation, GapInstance, nu_to_gamma
from .kernels import KernelKind, KernelParams
from .orthopoly import MonicPoly, OrthoData, cauchy_transform, hankel_dets, monic_polys
from .specfun import bessel_modified

__all__ = [
    "RHConfig",
    "JumpReport",
    "BranchError",
    "d_func",
    "g_func",
    "sqrt_z2m1",
    "p_infinity",
    "conformal_maps",
    "bessel_phi",
    "bessel_parametrix",
    "op_parametrix_h",
    "op_parametrix_h_normalized",
    "e_prefactor",
    "local_parametrix",
    "model_jump_J",
    "boundary_values",
    "jump_report",
    "CONTOURS",
    "CheckResult",
    "pinf_jump",
    "check_pinf",
    "check_bessel",
    "extract_h1",
    "gamma_hat",
    "check_h1",
    "check_e_prefactors",
    "check_local_jump_m1",
    "matching_norm",
    "check_matching",
    "run_checks",
]

EPS_OFFSETS = (1e-5, 1e-6)

SIGMA3 = np.diag([1.0 + 0j, -1.0 + 0j])
_L = np.array([[1, -1j], [-1j, 1]]) / math.sqrt(2.0)
_R = np.array([[1, 1j], [1j, 1]]) / math.sqrt(2.0)
_ROT = np.array([[0, 1], [-1, 0]], dtype=complex)  # [[0, 1], [-1, 0]]
_ROT_INV = np.array([[0, -1], [1, 0]], dtype=complex)


class BranchError(ValueError):
    """Evaluation requested on a branch cut or jump contour."""


def mat(a, b, c, d) -> np.ndarray:
    return np.array([[a, b], [c, d]], dtype=complex)


def sig3_exp(a: complex) -> np.ndarray:
    """e^{a sigma_3}."""
    return np.diag([cmath.exp(a), cmath.exp(-a)])


@dataclass(frozen=True)
class RHConfig:
    """Parameters shared by the parametrices. chi = k_int + mu with mu in
    [-1/2, 1/2); nu = inf means gamma = 1."""

    params: KernelParams
    s: float
    chi: float = 0.0
    delta: float = 1.0 / 3.0
    nu: float = math.inf

    def __post_init__(self):
        if not self.s > 0:
            raise ValueError("s must be positive")
        if self.chi < -0.5:
            raise ValueError("chi must be at least -1/2")
        if not 0 < self.delta < 0.5:
            raise ValueError("delta must lie in (0, 1/2)")

    @property
    def k_int(self) -> int:
        return chi_split(self.chi)[0]

    @property
    def mu(self) -> float:
        return chi_split(self.chi)[1]

    @property
    def t(self) -> complex:
        return -4j * self.s

    @property
    def abs_t(self) -> float:
        return 4.0 * self.s

    @property
    def gamma(self) -> float:
        return nu_to_gamma(self.nu)

    @property
    def alpha(self) -> float:
        return self.params.alpha

    @property
    def beta(self) -> complex:
        return self.params.beta

    @classmethod
    def from_instance(cls, inst: GapInstance, chi: float = 0.0, delta: float = 1.0 / 3.0):
        return cls(inst.params, inst.s, chi, delta, inst.nu)


# ---------------------------------------------------------------- scalar maps


def _on_interval(z: complex) -> bool:
    return z.imag == 0.0 and -1.0 <= z.real <= 1.0


def sqrt_z2m1(z: complex) -> complex:
    """sqrt(z^2 - 1), analytic off [-1, 1], ~ z at infinity."""
    z = complex(z)
    if _on_interval(z):
        raise BranchError(f"z={z} lies on the cut [-1, 1]")
    return cmath.sqrt(z - 1.0) * cmath.sqrt(z + 1.0)


def d_func(z: complex) -> complex:
    """D(z) = z / (1 + i sqrt(z^2 - 1)); takes values in the lower half-plane."""
    z = complex(z)
    sq = sqrt_z2m1(z)
    a, b = 1.0 + 1j * sq, 1.0 - 1j * sq
    # a * b = z^2; divide by whichever factor does not cancel
    if abs(a) >= abs(b):
        return z / a
    return b / z


def log_d(z: complex) -> complex:
    return cmath.log(d_func(z))


def g_func(z: complex, cfg: RHConfig) -> complex:
    """g(z) = sqrt(z^2 - 1)/4 - (chi/t) ln D(z)."""
    z = complex(z)
    return 0.25 * sqrt_z2m1(z) - cfg.chi / cfg.t * log_d(z)


def _arg_shifted(w: complex) -> float:
    """arg w in (-pi/2, 3 pi/2)."""
    a = cmath.phase(w)
    if a <= -0.5 * math.pi:
        a += 2.0 * math.pi
    return a


def _on_sigma4(z: complex) -> bool:
    return z.real == 0.0 and z.imag <= 0.0


def p_infinity(z: complex, cfg: RHConfig) -> np.ndarray:
    """Global parametrix with jumps on Sigma_4, Sigma_6, Sigma_7 and
    P(z) z^{beta sigma_3} -> I at infinity.

    The power (z + sqrt(z^2 - 1))^{-beta} uses arg in (-pi/2, 3 pi/2) so its
    cut lies on Sigma_4 (the image of Sigma_4 is the negative imaginary axis).
    """
    z = complex(z)
    if _on_interval(z) or _on_sigma4(z):
        raise BranchError(f"z={z} lies on a jump contour of the global parametrix")
    a, b, mu = cfg.alpha, cfg.beta, cfg.mu
    sq = sqrt_z2m1(z)
    quarter = 0.25 * (cmath.log(z - 1.0) - cmath.log(z + 1.0))
    w = z + sq
    lw = complex(math.log(abs(w)), _arg_shifted(w))
    q = (-1j + sq) / z
    m = sig3_exp(b * math.log(2.0)) @ sig3_exp(0.5j * math.pi * (mu - b))
    m = m @ _L @ sig3_exp(quarter) @ _R
    m = m @ sig3_exp(-b * lw) @ sig3_exp(0.5j * math.pi * b)
    m = m @ sig3_exp(a * cmath.log(q)) @ sig3_exp(mu * log_d(z))
    return m


def z_power_beta(z: complex, beta: complex) -> complex:
    """z^beta with arg z in (-pi/2, 3 pi/2)."""
    return cmath.exp(beta * complex(math.log(abs(z)), _arg_shifted(z)))


def conformal_maps(which: str, z: complex, cfg: RHConfig) -> complex:
    """Local variables f^(-1), f^(1), f^(0) in the closed discs of radius
    delta around -1, 1, 0."""
    z = complex(z)
    if which == "m1":
        if abs(z + 1.0) > cfg.delta * (1.0 + 1e-12):
            raise BranchError("f^(-1) is defined in the disc around -1")
        u = 0.25 * sqrt_z2m1(z) - cfg.k_int / cfg.t * (log_d(z) + 1j * math.pi)
        return -u * u
    if which == "p1":
        if abs(z - 1.0) > cfg.delta * (1.0 + 1e-12):
            raise BranchError("f^(1) is defined in the disc around 1")
        u = 0.25 * sqrt_z2m1(z) - cfg.k_int / cfg.t * log_d(z)
        return -u * u
    if which == "zero":
        if abs(z) > cfg.delta * (1.0 + 1e-12):
            raise BranchError("f^(0) is defined in the disc around 0")
        # (1/2 +- (i/2) sqrt(z^2-1))^{1/2} on either half-disc equals
        # sqrt((1 - sqrt(1 - z^2)) / 2); the branch ~ z/2 is taken
        return z / cmath.sqrt(2.0 * (1.0 + cmath.sqrt(1.0 - z * z)))
    raise ValueError(f"unknown map {which!r}")


# ------------------------------------------------------------ model pieces


def bessel_phi(zeta: complex) -> np.ndarray:
    """Phi_B(zeta) built from I_0, K_0 at sqrt(zeta); cut on (-inf, 0]."""
    zeta = complex(zeta)
    if zeta.imag == 0.0 and zeta.real <= 0.0:
        raise BranchError("Phi_B is evaluated off (-inf, 0]")
    r = cmath.sqrt(zeta)
    i0 = bessel_modified("I0", r)
    k0 = bessel_modified("K0", r)
    di0 = bessel_modified("I0'", r)
    dk0 = bessel_modified("K0'", r)
    m = mat(i0, 1j / math.pi * k0, math.pi * 1j * r * di0, -r * dk0)
    return np.diag([math.sqrt(math.pi), 1.0 / math.sqrt(math.pi)]) @ m


def bessel_parametrix(zeta: complex) -> np.ndarray:
    """Phi^B: Phi_B times the sector matrices, with jumps on the rays
    arg zeta = +-2pi/3 and pi."""
    zeta = complex(zeta)
    a = cmath.phase(zeta)
    third = 2.0 * math.pi / 3.0
    if zeta == 0 or abs(abs(a) - third) < 1e-15 or (zeta.imag == 0 and zeta.real < 0):
        raise BranchError("zeta lies on a jump ray of the Bessel parametrix")
    m = bessel_phi(zeta)
    if a > third:
        return m @ mat(1, 0, -1, 1)
    if a < -third:
        return m @ mat(1, 0, 1, 1)
    return m


def _poly_list(ortho: OrthoData, k: int) -> list[MonicPoly]:
    return monic_polys(ortho.params, max(k, 0), ortho)


def op_parametrix_h_normalized(zeta: complex, ortho: OrthoData, k: int,
                               polys: list[MonicPoly] | None = None) -> np.ndarray:
    """H(zeta) e^{zeta^2 sigma_3 / 2} zeta^{-k sigma_3}, which tends to I.

    The second row carries the normalising constant -2 pi i / h_{k-1}, the
    value that makes det H = 1 and H -> zeta^{k sigma_3} e^{-zeta^2 sigma_3/2}.
    For k = 0 the second row is (0, 1).
    """
    zeta = complex(zeta)
    if zeta.imag == 0.0:
        raise BranchError("H is evaluated off the real axis")
    if k < 0 or k > ortho.k_max:
        raise ValueError("k outside the range of the orthogonal-polynomial data")
    if polys is None:
        polys = _poly_list(ortho, k)
    p = ortho.params
    zk = zeta**k
    a11 = polys[k](zeta) / zk
    a12 = cauchy_transform(k, p, zeta, polys) * zk
    if k == 0:
        return mat(a11, a12, 0, 1)
    c = -2j * math.pi / ortho.h[k - 1]
    a21 = c * polys[k - 1](zeta) / zk
    a22 = c * cauchy_transform(k - 1, p, zeta, polys) * zk
    return mat(a11, a12, a21, a22)


def op_parametrix_h(zeta: complex, ortho: OrthoData, k: int,
                    polys: list[MonicPoly] | None = None) -> np.ndarray:
    """Orthogonal-polynomial parametrix, including e^{-zeta^2 sigma_3/2}.

    Overflows once |Re zeta^2| exceeds ~1400; use the normalized form for
    large zeta.
    """
    zeta = complex(zeta)
    n = op_parametrix_h_normalized(zeta, ortho, k, polys)
    return n @ np.diag([zeta**k, zeta**-k]) @ sig3_exp(-0.5 * zeta * zeta)


# ---------------------------------------------------- local parametrices


def _pow_sig3(base_log: complex, power: float) -> np.ndarray:
    return sig3_exp(power * base_log)


def _log_cut_positive_axis(w: complex) -> complex:
    """log w with arg in (0, 2 pi)."""
    a = cmath.phase(w)
    if a < 0 or (a == 0 and w.imag < 0):
        a += 2.0 * math.pi
    return complex(math.log(abs(w)), a)


def e_prefactor(which: str, z: complex, cfg: RHConfig) -> np.ndarray:
    """Analytic prefactors E^(-1), E^(1), E^(0) of the local parametrices."""
    z = complex(z)
    a, b, mu, k = cfg.alpha, cfg.beta, cfg.mu, cfg.k_int
    pinf = p_infinity(z, cfg)
    abs_t = cfg.abs_t
    if which == "m1":
        f = conformal_maps("m1", z, cfg)
        right = _L if z.imag > 0 else mat(1j, -1, 1, -1j) / math.sqrt(2.0)
        m = pinf @ sig3_exp(-0.5j * math.pi * (a - b)) @ sig3_exp(-mu * log_d(z))
        m = m @ sig3_exp(1j * math.pi * k) @ right
        return m @ sig3_exp(0.5 * math.log(abs_t)) @ sig3_exp(0.25 * cmath.log(f))
    if which == "p1":
        f = conformal_maps("p1", z, cfg)
        right = _R if z.imag > 0 else mat(-1j, -1, 1, 1j) / math.sqrt(2.0)
        m = pinf @ sig3_exp(0.5j * math.pi * (a - b)) @ sig3_exp(-mu * log_d(z)) @ right
        return m @ sig3_exp(0.5 * math.log(abs_t)) @ sig3_exp(0.25 * cmath.log(f))
    if which == "zero":
        f = conformal_maps("zero", z, cfg)
        lf = _log_cut_positive_axis(f)
        ld = log_d(z)
        chi = cfg.chi
        arg = cmath.phase(z)
        if z.imag > 0:
            return pinf @ _pow_sig3(lf, -(k + a)) @ sig3_exp(-chi * ld) @ sig3_exp(0.5j * math.pi * (a + b))
        if arg < -0.5 * math.pi:
            tail = sig3_exp(0.5j * math.pi * (3 * a - b))
        else:
            tail = sig3_exp(1.5j * math.pi * (a + b))
        return pinf @ _ROT_INV @ _pow_sig3(lf, -(k + a)) @ sig3_exp(chi * ld) @ tail
    raise ValueError(f"unknown disc {which!r}")


def _k_matrix_m1(z: complex, cfg: RHConfig) -> np.ndarray:
    a = cmath.phase(z + 1.0)
    third = 2.0 * math.pi / 3.0
    tail = sig3_exp(0.5j * math.pi * (cfg.alpha - cfg.beta)) @ sig3_exp(-cfg.t * g_func(z, cfg))
    if 0 < a < third:
        return tail
    if a >= third:
        return mat(1, 0, -1, 1) @ tail
    if a <= -third:
        return mat(0, 1, -1, 1) @ tail
    return _ROT @ tail


def _k_matrix_p1(z: complex, cfg: RHConfig) -> np.ndarray:
    a = cmath.phase(z - 1.0)
    third = math.pi / 3.0
    tail = sig3_exp(-0.5j * math.pi * (cfg.alpha - cfg.beta)) @ sig3_exp(-cfg.t * g_func(z, cfg))
    if 0 < a < third:
        return mat(1, 0, -1, 1) @ tail
    if a >= third:
        return tail
    if a <= -third:
        return _ROT @ tail
    return mat(0, 1, -1, 1) @ tail


def _k_matrix_zero(z: complex, cfg: RHConfig) -> np.ndarray:
    a, b = cfg.alpha, cfg.beta
    eg = sig3_exp(-cfg.t * g_func(z, cfg))
    if z.imag > 0:
        return sig3_exp(-0.5j * math.pi * (a + b)) @ eg
    if cmath.phase(z) < -0.5 * math.pi:
        return sig3_exp(-0.5j * math.pi * (3 * a - b)) @ _ROT @ eg
    return sig3_exp(-1.5j * math.pi * (a + b)) @ _ROT @ eg


def local_parametrix(which: str, z: complex, cfg: RHConfig, ortho: OrthoData | None = None) -> np.ndarray:
    """P^(-1), P^(1) (Bessel model) or P^(0) (orthogonal-polynomial model)."""
    z = complex(z)
    if z.imag == 0.0:
        raise BranchError("local parametrices are evaluated off the real axis")
    gm1 = cfg.gamma - 1.0
    if which == "m1":
        e = e_prefactor("m1", z, cfg)
        zeta = cfg.abs_t**2 * conformal_maps("m1", z, cfg)
        ln = _log_cut_positive_axis(z + 1.0)
        tri = mat(1, gm1 / (2j * math.pi) * ln, 0, 1)
        return e @ bessel_phi(zeta) @ tri @ _k_matrix_m1(z, cfg)
    if which == "p1":
        e = e_prefactor("p1", z, cfg)
        zeta = cfg.abs_t**2 * conformal_maps("p1", z, cfg)
        tri = mat(1, gm1 / (2j * math.pi) * cmath.log(z - 1.0), 0, 1)
        return e @ SIGMA3 @ bessel_phi(zeta) @ tri @ SIGMA3 @ _k_matrix_p1(z, cfg)
    if which == "zero":
        if math.isinf(cfg.nu):
            raise ValueError("the parametrix at 0 needs gamma < 1 (finite nu)")
        k = cfg.k_int
        if ortho is None or ortho.k_max < k:
            ortho = hankel_dets(cfg.params, max(k, 1))
        e = e_prefactor("zero", z, cfg)
        f = conformal_maps("zero", z, cfg)
        lf = _log_cut_positive_axis(f)
        h = op_parametrix_h(math.sqrt(cfg.abs_t) * f, ortho, k)
        m = e @ sig3_exp(0.5 * cfg.mu * math.log(cfg.abs_t)) @ h
        m = m @ sig3_exp(0.5 * cfg.nu) @ _pow_sig3(lf, cfg.alpha)
        return m @ sig3_exp(0.5 * cfg.alpha * math.log(cfg.abs_t)) @ _k_matrix_zero(z, cfg)
    raise ValueError(f"unknown disc {which!r}")


# ---------------------------------------------------------- jump matrices


def _phase(alpha: float, beta: complex, sign: int = 1) -> complex:
    return cmath.exp(sign * 1j * math.pi * (alpha - beta))


def model_jump_J(i: int, z: complex, inst, cfg: RHConfig | None = None,
                 variant: str = "psi", literal: bool = False) -> np.ndarray:
    """Jump matrix J_i of the model problem (variant "psi") or of the
    normalized problem A = e^{pi i chi sigma_3/2} Psi e^{-t g sigma_3}
    (variant "A").

    For the A variant on Sigma_6/Sigma_7 the off-diagonal entries carry
    e^{+-t(g_+ + g_-)}, which is 1 on Sigma_6 and e^{+-2 pi i chi} on
    Sigma_7. ``literal=True`` drops that factor; it matters only when chi
    is not an integer.
    """
    if i not in range(1, 8):
        raise ValueError("contour index must be in 1..7")
    z = complex(z)
    p = inst.params
    a, b = p.alpha, p.beta
    gamma = inst.gamma
    e_p, e_m = _phase(a, b, 1), _phase(a, b, -1)
    if i == 4:
        return sig3_exp(2j * math.pi * b)
    if variant == "psi":
        return {
            1: mat(1, 0, e_m, 1),
            2: mat(1, 0, e_p, 1),
            3: mat(1, -e_m, 0, 1),
            5: mat(1, -e_p, 0, 1),
            6: mat(0, -e_p, e_m, 1 - gamma),
            7: mat(0, -e_m, e_p, 1 - gamma),
        }[i]
    if variant != "A":
        raise ValueError("variant must be 'psi' or 'A'")
    if cfg is None:
        raise ValueError("the A variant needs an RHConfig for g")
    t = cfg.t
    if i in (1, 2, 3, 5):
        eg = cmath.exp(-2 * t * g_func(z, cfg))
        return {
            1: mat(1, 0, e_m * eg, 1),
            2: mat(1, 0, e_p * eg, 1),
            3: mat(1, -e_m / eg, 0, 1),
            5: mat(1, -e_p / eg, 0, 1),
        }[i]
    x = z.real
    if not -1.0 < x < 1.0 or x == 0.0:
        raise BranchError("Sigma_6/7 points must lie in (-1, 0) or (0, 1)")
    gp, gm = _g_boundary(x, cfg)
    diag = (1.0 - gamma) * cmath.exp(t * (gp - gm)) if gamma < 1.0 else 0.0
    ph = 1.0 if literal else cmath.exp(t * (gp + gm))
    if i == 6:
        return mat(0, -e_p * ph, e_m / ph, diag)
    return mat(0, -e_m * ph, e_p / ph, diag)


def _g_boundary(x: float, cfg: RHConfig) -> tuple[complex, complex]:
    """g_+(x), g_-(x) on (-1, 1) from the closed-form boundary values."""
    r = math.sqrt(1.0 - x * x)
    # D_+ D_- = 1; take each side from its half-plane limit
    dp = x / (1.0 + 1j * (1j * r))
    dm = x / (1.0 + 1j * (-1j * r))
    ldp = complex(math.log(abs(dp)), -math.pi if x < 0 else 0.0)
    ldm = complex(math.log(abs(dm)), -math.pi if x < 0 else 0.0)
    gp = 0.25j * r - cfg.chi / cfg.t * ldp
    gm = -0.25j * r - cfg.chi / cfg.t * ldm
    return gp, gm


# --------------------------------------------------------- jump checking


@dataclass(frozen=True)
class Contour:
    """z(r) = origin + r * direction for r in (r_min, r_max); + side is to
    the left of the direction."""

    name: str
    origin: complex
    direction: complex
    r_min: float
    r_max: float

    def points(self, n: int) -> np.ndarray:
        # interior Chebyshev-like spacing keeps samples off the endpoints
        u = 0.5 * (1 - np.cos(np.pi * (np.arange(n) + 0.5) / n))
        return self.origin + (self.r_min + (self.r_max - self.r_min) * u) * self.direction

    @property
    def normal_plus(self) -> complex:
        return 1j * self.direction


CONTOURS = {
    "sigma1": Contour("sigma1", 1.0, cmath.exp(0.25j * math.pi), 0.05, 3.0),
    "sigma2": Contour("sigma2", -1.0, -cmath.exp(0.75j * math.pi), -3.0, -0.05),
    "sigma3": Contour("sigma3", -1.0, -cmath.exp(-0.75j * math.pi), -3.0, -0.05),
    "sigma4": Contour("sigma4", 0.0, -1j, 0.05, 5.0),
    "sigma5": Contour("sigma5", 1.0, cmath.exp(-0.25j * math.pi), 0.05, 3.0),
    "sigma6": Contour("sigma6", 0.0, 1.0, 0.02, 0.98),
    "sigma7": Contour("sigma7", -1.0, 1.0, 0.02, 0.98),
}


@dataclass
class JumpReport:
    contour: str
    points: np.ndarray
    residuals: dict  # eps -> array of residual norms, plus "extrapolated"
    max_residual: float = 0.0
    tol: float | None = None
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.tol is None or self.max_residual <= self.tol

    @property
    def decreasing(self) -> bool:
        """Residual norms fall as the offset shrinks."""
        keys = sorted(k for k in self.residuals if isinstance(k, float))
        vals = [float(np.max(self.residuals[k])) for k in keys]
        return all(vals[i] <= vals[i + 1] for i in range(len(vals) - 1))

    def summary(self) -> dict:
        return {
            "contour": self.contour,
            "n_points": int(len(self.points)),
            "max_residual": self.max_residual,
            "tol": self.tol,
            "passed": bool(self.passed),
            "notes": self.notes,
        }


def boundary_values(func: Callable[[complex], np.ndarray], z: complex, normal_plus: complex,
                    eps=EPS_OFFSETS) -> tuple[np.ndarray, np.ndarray]:
    """(F_+(z), F_-(z)) by linear Richardson extrapolation of F(z +- eps n)."""
    e1, e2 = eps
    fp1, fp2 = func(z + e1 * normal_plus), func(z + e2 * normal_plus)
    fm1, fm2 = func(z - e1 * normal_plus), func(z - e2 * normal_plus)
    w = e1 / (e1 - e2)
    return w * fp2 - (w - 1) * fp1, w * fm2 - (w - 1) * fm1


def jump_report(func: Callable[[complex], np.ndarray], contour: Contour,
                jump: Callable[[complex], np.ndarray], n_points: int = 20,
                eps=EPS_OFFSETS, tol: float | None = None, notes: str = "") -> JumpReport:
    """Residuals ||F_-^{-1} F_+ - J|| at sample points of a contour, at each
    raw offset and after extrapolation."""
    pts = contour.points(n_points)
    n = contour.normal_plus
    res: dict = {e: np.empty(n_points) for e in eps}
    res["extrapolated"] = np.empty(n_points)
    for j, z in enumerate(pts):
        jz = jump(z)
        for e in eps:
            fp, fm = func(z + e * n), func(z - e * n)
            res[e][j] = np.linalg.norm(np.linalg.solve(fm, fp) - jz, 2)
        fp, fm = boundary_values(func, z, n, eps)
        res["extrapolated"][j] = np.linalg.norm(np.linalg.solve(fm, fp) - jz, 2)
    return JumpReport(contour.name, pts, res, float(np.max(res["extrapolated"])), tol, notes)


# ------------------------------------------------------------ check suites


@dataclass(frozen=True)
class CheckResult:
    """A scalar check: value compared against a tolerance (or a band)."""

    name: str
    value: float
    tol: float | None = None
    band: tuple[float, float] | None = None
    notes: str = ""

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        if self.band is not None:
            return self.band[0] <= self.value <= self.band[1]
        return self.tol is None or self.value <= self.tol

    def summary(self) -> dict:
        return {"check": self.name, "value": float(self.value), "tol": self.tol,
                "band": list(self.band) if self.band else None,
                "passed": bool(self.passed), "notes": self.notes}


def pinf_jump(i: int, z: complex, cfg: RHConfig, literal: bool = False) -> np.ndarray:
    """Jump of the global parametrix on Sigma_4, Sigma_6 or Sigma_7.

    On Sigma_7 the factor D^{mu sigma_3} contributes e^{+-2 pi i mu} to the
    off-diagonal entries (D_+ D_- = 1 there but both boundary values have
    argument -pi). ``literal=True`` drops it; the two agree when mu = 0.
    """
    a, b = cfg.alpha, cfg.beta
    if i == 4:
        return sig3_exp(2j * math.pi * b)
    if i == 6:
        return mat(0, -_phase(a, b, 1), _phase(a, b, -1), 0)
    if i == 7:
        ph = 1.0 if literal else cmath.exp(2j * math.pi * cfg.mu)
        return mat(0, -_phase(a, b, -1) * ph, _phase(a, b, 1) / ph, 0)
    raise ValueError("the global parametrix jumps only on Sigma_4, Sigma_6, Sigma_7")


def check_pinf(cfg: RHConfig, n_points: int = 20, tol: float = 1e-10,
               literal: bool = False) -> list:
    """Jump residuals on Sigma_4/6/7, unit determinant and the behaviour at
    infinity of the global parametrix."""
    f = lambda z: p_infinity(z, cfg)
    out: list = []
    for i in (4, 6, 7):
        out.append(jump_report(f, CONTOURS[f"sigma{i}"], lambda z, i=i: pinf_jump(i, z, cfg, literal),
                               n_points, tol=tol))
    rng = np.random.default_rng(7)
    pts = (rng.uniform(-3, 3, 50) + 1j * rng.uniform(-3, 3, 50))
    det_res = max(abs(np.linalg.det(f(z)) - 1.0) for z in pts)
    out.append(CheckResult("pinf det", float(det_res), tol))

    def at_inf(r):
        vals = []
        for th in (0.3, 1.9, -1.2, -2.5):
            z = r * cmath.exp(1j * th)
            zb = z_power_beta(z, cfg.beta)
            vals.append(np.linalg.norm(f(z) @ np.diag([zb, 1.0 / zb]) - np.eye(2), 2))
        return max(vals)

    r3, r4 = at_inf(1e3), at_inf(1e4)
    out.append(CheckResult("pinf infinity decay ratio 1e3/1e4", r3 / r4, band=(8.0, 12.0)))
    return out


BESSEL_RAYS = {
    "gamma1": (Contour("gamma1", 0.0, -cmath.exp(2j * math.pi / 3), -50.0, -0.1), mat(1, 0, 1, 1)),
    "gamma2": (Contour("gamma2", 0.0, 1.0, -50.0, -0.1), mat(0, 1, -1, 0)),
    "gamma3": (Contour("gamma3", 0.0, -cmath.exp(-2j * math.pi / 3), -50.0, -0.1), mat(1, 0, 1, 1)),
}

_ODE_POINTS = (1 + 1j, 5 - 2j, 0.5 + 3j, 20 + 0.1j, -4 + 1j, -6 - 0.5j, 0.2 - 0.1j)


def bessel_ode_residual(zeta: complex, h: float = 1e-3) -> float:
    """|| Phi' Phi^{-1} - [[0, -i/(2 zeta)], [i/2, 0]] || with a five-point stencil."""
    f = bessel_parametrix
    d = (-f(zeta + 2 * h) + 8 * f(zeta + h) - 8 * f(zeta - h) + f(zeta - 2 * h)) / (12 * h)
    return float(np.linalg.norm(d @ np.linalg.inv(f(zeta)) - mat(0, -0.5j / zeta, 0.5j, 0), 2))


def bessel_remainder(zeta: complex) -> float:
    """Size of the O(1/zeta) part of the normalized Bessel parametrix."""
    r = cmath.sqrt(zeta)
    pre = np.diag([zeta**-0.25, zeta**0.25]) @ _R
    n = np.linalg.solve(pre, bessel_parametrix(zeta)) @ sig3_exp(-r)
    return float(np.linalg.norm(n - np.eye(2) - mat(-1, -2j, -2j, 1) / (8 * r), 2))


def check_bessel(n_points: int = 20, tol: float = 1e-10) -> list:
    out: list = [jump_report(bessel_parametrix, c, lambda z, j=j: j, n_points, tol=tol)
                 for c, j in BESSEL_RAYS.values()]
    ode = max(bessel_ode_residual(z) for z in _ODE_POINTS)
    out.append(CheckResult("bessel ODE identity", ode, 1e-8))
    ratios = [bessel_remainder(100 * cmath.exp(1j * th)) / bessel_remainder(1000 * cmath.exp(1j * th))
              for th in (0.0, 0.3, 1.0, -1.5, 2.0)]
    out.append(CheckResult("bessel remainder decay 1e2/1e3 (min over directions)", min(ratios),
                           band=(10.0, math.inf)))
    return out


H1_RADII = tuple(30.0 * 1.4**j for j in range(6))


def extract_h1(ortho: OrthoData, k: int, radii=H1_RADII) -> np.ndarray:
    """H_1 from zeta (H_norm(zeta) - I) on the positive imaginary axis,
    extrapolated to 1/zeta = 0 by Neville's scheme."""
    polys = _poly_list(ortho, k)
    xs = [1.0 / r for r in radii]
    ys = [1j * r * (op_parametrix_h_normalized(1j * r, ortho, k, polys) - np.eye(2)) for r in radii]
    n = len(xs)
    for m in range(1, n):
        ys = [(xs[i + m] * ys[i] - xs[i] * ys[i + 1]) / (xs[i + m] - xs[i]) for i in range(n - m)]
    return ys[0]


def gamma_hat(ortho: OrthoData, k: int) -> complex:
    """-2 pi i / h_k, the normalising constant of H (reciprocal of gamma_k up to sign convention)."""
    return -2j * math.pi / ortho.h[k]


def check_h1(params: KernelParams, k_max: int = 3, tol: float = 1e-6) -> list:
    """Relative errors of H_1[0,1] against 1/gamma_hat_k and H_1[1,0] against gamma_hat_{k-1}."""
    ortho = hankel_dets(params, max(k_max, 1))
    out = []
    for k in range(k_max + 1):
        h1 = extract_h1(ortho, k)
        e12 = abs(h1[0, 1] * gamma_hat(ortho, k) - 1.0)
        out.append(CheckResult(f"H1[0,1] k={k}", float(e12), tol))
        if k:
            e21 = abs(h1[1, 0] / gamma_hat(ortho, k - 1) - 1.0)
            out.append(CheckResult(f"H1[1,0] k={k}", float(e21), tol))
    for k in range(k_max + 1):
        dets = max(abs(np.linalg.det(op_parametrix_h_normalized(z, ortho, k)) - 1.0)
                   for z in (0.5 + 0.7j, -1.2 - 0.4j, 2.5 + 2.5j))
        out.append(CheckResult(f"H det k={k}", float(dets), 1e-10))
    return out


def _disc_cuts(which: str, delta: float) -> list[Contour]:
    lo, hi = 0.02 * delta, 0.95 * delta
    c = {"m1": -1.0, "p1": 1.0, "zero": 0.0}[which]
    cuts = [Contour(f"{which}:right", c, 1.0, lo, hi), Contour(f"{which}:left", c, 1.0, -hi, -lo)]
    if which == "zero":
        cuts.append(Contour("zero:down", 0.0, -1j, lo, hi))
    return cuts


def check_e_prefactors(cfg: RHConfig, n_points: int = 10, tol: float = 1e-9) -> list:
    """E_-^{-1} E_+ - I across every cut inside each disc."""
    out = []
    for which in ("m1", "p1", "zero"):
        f = lambda z, w=which: e_prefactor(w, z, cfg)
        for c in _disc_cuts(which, cfg.delta):
            out.append(jump_report(f, c, lambda z: np.eye(2), n_points, tol=tol))
    return out


def check_local_jump_m1(cfg: RHConfig, inst, n_points: int = 10, tol: float = 1e-9) -> JumpReport:
    """Jump of P^(-1) on Sigma_7 inside the disc against J_A."""
    c = Contour("m1:sigma7", -1.0, 1.0, 0.05 * cfg.delta, 0.95 * cfg.delta)
    return jump_report(lambda z: local_parametrix("m1", z, cfg), c,
                       lambda z: model_jump_J(7, z, inst, cfg, "A"), n_points, tol=tol)


def matching_norm(which: str, cfg: RHConfig, n: int = 48) -> float:
    """max over the circle |z - c| = delta of ||P^(c) (P^inf)^{-1} - I||."""
    c = {"m1": -1.0, "p1": 1.0, "zero": 0.0}[which]
    th = (np.arange(n) + 0.37) * 2.0 * math.pi / n
    vals = []
    for t in th:
        z = c + cfg.delta * cmath.exp(1j * t)
        m = local_parametrix(which, z, cfg) @ np.linalg.inv(p_infinity(z, cfg))
        vals.append(np.linalg.norm(m - np.eye(2), 2))
    return float(max(vals))


def check_matching(params: KernelParams, chi: float = 0.0, s_pair=(6.0, 12.0),
                   delta: float = 1.0 / 3.0) -> CheckResult:
    """Ratio of P^(-1) matching norms at s and 2s with gamma = 1; O(1/t)
    decay gives 2."""
    a = matching_norm("m1", RHConfig(params, s_pair[0], chi, delta))
    b = matching_norm("m1", RHConfig(params, s_pair[1], chi, delta))
    return CheckResult(f"P^(-1) matching ratio s={s_pair[0]:g}->{s_pair[1]:g}", a / b,
                       band=(1.6, 2.4), notes=f"norms {a:.6g}, {b:.6g}")


CHECK_GROUPS = ("pinf", "bessel", "h", "e", "local", "matching")


def run_checks(cfg: RHConfig, which: str = "all", n_points: int = 20,
               matching_chi: float = 0.0) -> list:
    """Check suites by name; 'all' runs every group.

    The matching check runs with gamma = 1, where the g-function of the
    undeformed problem has chi = 0 (``matching_chi``).
    """
    groups = CHECK_GROUPS if which == "all" else (which,)
    out: list = []
    for g in groups:
        if g == "pinf":
            out += check_pinf(cfg, n_points)
        elif g == "bessel":
            out += check_bessel(n_points)
        elif g == "h":
            out += check_h1(cfg.params)
        elif g == "e":
            out += check_e_prefactors(cfg)
        elif g == "local":
            inst = GapInstance(KernelKind.CHG, cfg.params, cfg.s, Deformation.from_nu(cfg.nu))
            out.append(check_local_jump_m1(cfg, inst))
        elif g == "matching":
            out.append(check_matching(cfg.params, matching_chi, (cfg.s, 2 * cfg.s), cfg.delta))
        else:
            raise ValueError(f"unknown check group {g!r}; choose from {CHECK_GROUPS} or 'all'")
    return out
