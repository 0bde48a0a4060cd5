"""Pointwise evaluation of the sine, type-I Bessel and confluent
hypergeometric (CHG) correlation kernels.

The CHG kernel with parameters (alpha, beta), beta = i*beta_im, is

    K(x, y) = c / (2 pi i) * (A(x) B(y) - A(y) B(x)) / (x - y),
    A(x) = chi(x)^{1/2} |2x|^alpha e^{-ix} M(1+alpha+beta, 1+2alpha, 2ix),
    B(x) = conj(A(x)),

with c = Gamma(1+alpha+beta) Gamma(1+alpha-beta) / Gamma(1+2alpha)^2 and
chi(x)^{1/2} = e^{+pi i beta / 2} for x < 0, e^{-pi i beta / 2} for x > 0.
It factors as K(x, y) = |2x|^alpha G(x, y) |2y|^alpha with G smooth on each
half-line; :func:`reduced_kernel_matrix` returns G.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

from .specfun import kummer_m_pair, log_gamma

__all__ = [
    "KernelDomainError",
    "KernelParams",
    "KernelKind",
    "sine_kernel",
    "chg_kernel",
    "chg_kernel_complex",
    "chg_kernel_diag",
    "bessel1_kernel",
    "bessel1_kernel_diag",
    "kernel_value",
    "kernel_diag",
    "reduced_kernel_matrix",
    "kernel_matrix",
]


class KernelDomainError(ValueError):
    pass


@dataclass(frozen=True)
class KernelParams:
    """alpha > -1/2 and beta = i * beta_im (purely imaginary)."""

    alpha: float = 0.0
    beta_im: float = 0.0

    def __post_init__(self):
        if not self.alpha > -0.5:
            raise ValueError(f"alpha must exceed -1/2, got {self.alpha}")
        if not math.isfinite(self.beta_im):
            raise ValueError("beta_im must be finite")

    @property
    def beta(self) -> complex:
        return 1j * self.beta_im

    @property
    def beta_sq(self) -> float:
        """beta**2, which is -beta_im**2 for imaginary beta."""
        return -self.beta_im * self.beta_im


class KernelKind(enum.Enum):
    SINE = "sine"
    BESSEL1 = "bessel1"
    CHG = "chg"

    def params(self, p: KernelParams) -> KernelParams:
        """Parameters actually used by this family (sine ignores p, type-I
        Bessel drops beta)."""
        if self is KernelKind.SINE:
            return KernelParams(0.0, 0.0)
        if self is KernelKind.BESSEL1:
            return KernelParams(p.alpha, 0.0)
        return p


def sine_kernel(x: float, y: float) -> float:
    d = x - y
    if d == 0.0:
        return 1.0 / math.pi
    return math.sin(d) / (math.pi * d)


def _chg_prefactor(p: KernelParams) -> float:
    a = 1.0 + p.alpha + 1j * p.beta_im
    val = 2.0 * log_gamma(a).real - 2.0 * log_gamma(1.0 + 2.0 * p.alpha).real
    return math.exp(val)


def _chi_half(p: KernelParams, x: float) -> float:
    # e^{-+ pi i beta / 2} with beta = i beta_im is real
    if x < 0:
        return math.exp(-0.5 * math.pi * p.beta_im)
    return math.exp(0.5 * math.pi * p.beta_im)


def _reduced_a(p: KernelParams, x: float, conj: bool = False) -> tuple[complex, complex]:
    """(A(x), A'(x)) without the |2x|^alpha factor.

    With ``conj=True`` the conjugate function B is returned, evaluated
    through Kummer's transformation as e^{-ix} M(alpha - beta, 1 + 2 alpha, 2ix)
    so that it does not share round-off with A.
    """
    b = 1.0 + 2.0 * p.alpha
    if conj:
        a = complex(p.alpha, p.beta_im)
    else:
        a = complex(1.0 + p.alpha, p.beta_im)
    m, dm = kummer_m_pair(a, b, 2j * x)
    ph = complex(math.cos(x), -math.sin(x))
    c = _chi_half(p, x)
    return c * ph * m, c * ph * (-1j * m + 2j * dm)


def _check_points(p: KernelParams, x: float, y: float | None = None):
    pts = (x,) if y is None else (x, y)
    for v in pts:
        if v == 0.0 and not p.alpha > 0.0:
            raise KernelDomainError(
                "x = 0 is the Fisher-Hartwig point; the kernel is undefined there for alpha <= 0"
            )


def chg_kernel_complex(p: KernelParams, x: float, y: float) -> complex:
    """The CHG kernel computed in complex arithmetic with A and B evaluated
    independently; the imaginary part is a round-off diagnostic."""
    if x == y:
        raise KernelDomainError("x == y: use chg_kernel_diag")
    _check_points(p, x, y)
    ax, _ = _reduced_a(p, x)
    ay, _ = _reduced_a(p, y)
    bx, _ = _reduced_a(p, x, conj=True)
    by, _ = _reduced_a(p, y, conj=True)
    scale = abs(2 * x) ** p.alpha * abs(2 * y) ** p.alpha
    num = ax * by - ay * bx
    return _chg_prefactor(p) * scale * num / (2j * math.pi * (x - y))


def chg_kernel(p: KernelParams, x: float, y: float) -> float:
    val = chg_kernel_complex(p, x, y)
    if abs(val.imag) > 1e-10 * (1.0 + abs(val.real)):
        raise ArithmeticError(f"CHG kernel not real at ({x}, {y}): {val}")
    return val.real


def chg_kernel_diag(p: KernelParams, x: float) -> float:
    """K(x, x) from the derivative of A (L'Hopital)."""
    if x == 0.0:
        raise KernelDomainError("diagonal at the singular point x = 0")
    a, da = _reduced_a(p, x)
    g = _chg_prefactor(p) / math.pi * (da * a.conjugate()).imag
    return abs(2 * x) ** (2 * p.alpha) * g


def _bessel_even(nu: float, x):
    """J_nu(x) / x^nu, continued as an even function of real x."""
    ax = np.abs(x)
    return sp.jv(nu, ax) / ax**nu


def bessel1_kernel(alpha: float, x: float, y: float) -> float:
    """Type-I Bessel kernel, written through the even functions J_nu(x)/x^nu
    so that negative arguments need no branch choices."""
    if x == y:
        raise KernelDomainError("x == y: use bessel1_kernel_diag")
    if (x == 0.0 or y == 0.0) and not alpha > 0.0:
        raise KernelDomainError("x*y = 0 is singular for alpha <= 0")
    ep_x, em_x = _bessel_even(alpha + 0.5, x), _bessel_even(alpha - 0.5, x)
    ep_y, em_y = _bessel_even(alpha + 0.5, y), _bessel_even(alpha - 0.5, y)
    num = x * ep_x * em_y - y * em_x * ep_y
    return float(abs(x) ** alpha * abs(y) ** alpha * 0.5 * num / (x - y))


def bessel1_kernel_diag(alpha: float, x: float) -> float:
    if x == 0.0:
        raise KernelDomainError("diagonal at the singular point x = 0")
    ep, em = _bessel_even(alpha + 0.5, x), _bessel_even(alpha - 0.5, x)
    # (J_nu / x^nu)' = -x J_{nu+1} / x^{nu+1}
    dep = -x * _bessel_even(alpha + 1.5, x)
    dem = -x * _bessel_even(alpha + 0.5, x)
    val = ep * em + x * dep * em - x * dem * ep
    return float(abs(x) ** (2 * alpha) * 0.5 * val)


def kernel_value(kind: KernelKind, p: KernelParams, x: float, y: float) -> float:
    if x == y:
        return kernel_diag(kind, p, x)
    if kind is KernelKind.SINE:
        return sine_kernel(x, y)
    if kind is KernelKind.BESSEL1:
        return bessel1_kernel(p.alpha, x, y)
    return chg_kernel(p, x, y)


def kernel_diag(kind: KernelKind, p: KernelParams, x: float) -> float:
    if kind is KernelKind.SINE:
        return 1.0 / math.pi
    if kind is KernelKind.BESSEL1:
        return bessel1_kernel_diag(p.alpha, x)
    return chg_kernel_diag(p, x)


def reduced_kernel_matrix(kind: KernelKind, p: KernelParams, nodes) -> np.ndarray:
    """G(x_i, x_j) = K(x_i, x_j) / (|2x_i|^alpha |2x_j|^alpha) on the nodes.

    Nodes must be distinct and nonzero. The result is symmetric by
    construction.
    """
    x = np.asarray(nodes, dtype=float)
    if np.any(x == 0.0):
        raise KernelDomainError("quadrature nodes must avoid x = 0")
    n = x.size
    dx = x[:, None] - x[None, :]
    np.fill_diagonal(dx, 1.0)
    if kind is KernelKind.SINE:
        g = np.sin(dx) / (math.pi * dx)
        np.fill_diagonal(g, 1.0 / math.pi)
        return g
    if kind is KernelKind.BESSEL1:
        al = p.alpha
        ep, em = _bessel_even(al + 0.5, x), _bessel_even(al - 0.5, x)
        num = x[:, None] * ep[:, None] * em[None, :] - x[None, :] * em[:, None] * ep[None, :]
        g = 4.0**-al * 0.5 * num / dx
        dep = -x * _bessel_even(al + 1.5, x)
        diag = ep * em + x * dep * em - x * (-x * ep) * ep
        np.fill_diagonal(g, 4.0**-al * 0.5 * diag)
        return 0.5 * (g + g.T)
    vals = np.empty(n, dtype=complex)
    ders = np.empty(n, dtype=complex)
    for i, xi in enumerate(x):
        vals[i], ders[i] = _reduced_a(p, float(xi))
    c = _chg_prefactor(p) / math.pi
    prod = vals[:, None] * vals.conj()[None, :]
    g = c * prod.imag / dx
    np.fill_diagonal(g, c * (ders * vals.conj()).imag)
    return 0.5 * (g + g.T)


def kernel_matrix(kind: KernelKind, p: KernelParams, nodes) -> np.ndarray:
    """K(x_i, x_j) on distinct nonzero nodes."""
    x = np.asarray(nodes, dtype=float)
    g = reduced_kernel_matrix(kind, p, x)
    al = kind.params(p).alpha
    if al == 0.0:
        return g
    s = np.abs(2 * x) ** al
    k = s[:, None] * g * s[None, :]
    return 0.5 * (k + k.T)
