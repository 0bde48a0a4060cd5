"""Monic orthogonal polynomials for the weight

    w(x) = |x|^{2 alpha} e^{-x^2} * (1 for x < 0, e^{-2 pi i beta} for x > 0),

their norms h_k, the constants gamma_k = -h_k / (2 pi i) and the Cauchy
transforms that make up the second column of the polynomial RH parametrix.

For beta = i*beta_im the jump factor e^{-2 pi i beta} = e^{2 pi beta_im} is a
positive real number, so w > 0 and the h_k are positive.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as sp

from .kernels import KernelParams
from .specfun import log_gamma

__all__ = [
    "SingularHankelError",
    "OrthoData",
    "MonicPoly",
    "moment",
    "hankel_dets",
    "monic_polys",
    "cauchy_transform",
    "K_MAX_CAP",
]

# Hankel matrices of the Hermite-type moments become hopelessly ill
# conditioned beyond this size in double precision.
K_MAX_CAP = 12
COND_WARN = 1e13


class SingularHankelError(ArithmeticError):
    pass


def _jump_factor(p: KernelParams) -> complex:
    """e^{-2 pi i beta} for beta = i beta_im."""
    return complex(math.exp(2.0 * math.pi * p.beta_im), 0.0)


def moment(j: int, p: KernelParams) -> complex:
    """m_j = int x^j w(x) dx = (1/2) Gamma((j + 2 alpha + 1)/2) ((-1)^j + e^{-2 pi i beta})."""
    if j < 0:
        raise ValueError("moment index must be nonnegative")
    g = cmath.exp(log_gamma(0.5 * (j + 2.0 * p.alpha + 1.0)))
    sign = 1.0 if j % 2 == 0 else -1.0
    return 0.5 * g * (sign + _jump_factor(p))


@dataclass
class MonicPoly:
    """pi_k(x) = sum_j coeffs[j] x^j with coeffs[k] = 1."""

    degree: int
    coeffs: np.ndarray

    def __call__(self, x):
        x = np.asarray(x, dtype=complex)
        acc = np.zeros_like(x)
        for c in self.coeffs[::-1]:
            acc = acc * x + c
        return acc if acc.ndim else complex(acc)


@dataclass
class OrthoData:
    params: KernelParams
    k_max: int
    moments: np.ndarray
    hankel: np.ndarray  # D_1 .. D_{k_max+1}
    h: np.ndarray  # h_0 .. h_{k_max}
    gamma_k: np.ndarray  # -h_k / (2 pi i)
    cond: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def ill_conditioned(self) -> bool:
        return bool(self.cond.size and np.max(self.cond) > COND_WARN)

    def h_rot(self, k: int) -> float:
        """h_k e^{pi i beta}, real and positive for imaginary beta."""
        return (self.h[k] * math.exp(-math.pi * self.params.beta_im)).real


def _hankel(mom: np.ndarray, size: int) -> np.ndarray:
    i = np.arange(size)
    return mom[i[:, None] + i[None, :]]


def hankel_dets(p: KernelParams, k_max: int) -> OrthoData:
    """D_k = det[m_{i+j}]_{i,j<k} for k = 1..k_max+1 and h_k = D_{k+1}/D_k."""
    if k_max < 0:
        raise ValueError("k_max must be nonnegative")
    if k_max > K_MAX_CAP:
        raise ValueError(f"k_max is capped at {K_MAX_CAP} (Hankel conditioning)")
    mom = np.array([moment(j, p) for j in range(2 * k_max + 2)], dtype=complex)
    dets = np.empty(k_max + 1, dtype=complex)
    cond = np.empty(k_max + 1)
    for k in range(1, k_max + 2):
        hk = _hankel(mom, k)
        # numpy's det is an LU factorization with partial pivoting
        dets[k - 1] = np.linalg.det(hk)
        cond[k - 1] = np.linalg.cond(hk)
        if dets[k - 1] == 0 or not np.isfinite(dets[k - 1]):
            raise SingularHankelError(f"Hankel determinant D_{k} vanishes")
    prev = np.concatenate([[1.0 + 0j], dets[:-1]])
    h = dets / prev
    return OrthoData(p, k_max, mom, dets, h, -h / (2j * math.pi), cond)


def monic_polys(p: KernelParams, k_max: int, ortho: OrthoData | None = None) -> list[MonicPoly]:
    """pi_0..pi_{k_max} from the Hankel systems sum_j m_{i+j} c_j = -m_{i+k}."""
    if ortho is None or ortho.k_max < k_max:
        ortho = hankel_dets(p, k_max)
    mom = ortho.moments
    out = [MonicPoly(0, np.array([1.0 + 0j]))]
    for k in range(1, k_max + 1):
        a = _hankel(mom, k)
        rhs = -mom[k : 2 * k]
        try:
            c = np.linalg.solve(a, rhs)
        except np.linalg.LinAlgError as exc:
            raise SingularHankelError(f"singular Hankel system at degree {k}") from exc
        out.append(MonicPoly(k, np.concatenate([c, [1.0 + 0j]])))
    return out


# e^{-x^2} is below 1e-40 beyond this point
_CUTOFF = 10.0
_PANEL_NODES = 24
_REDUCE_ABOVE = 2.0


def _half_line_rule(alpha: float, center: float, dist: float):
    """Composite rule for int_0^L x^{2 alpha} f(x) dx, with f smooth except
    for a pole at distance ``dist`` from the real point ``center``.

    Panels are graded geometrically toward ``center`` so that each panel is
    no wider than its distance to the pole; the panel touching 0 carries
    the x^{2 alpha} factor through a Gauss-Jacobi rule.
    """
    d = max(dist, 1e-12)
    c = min(max(center, 0.0), _CUTOFF)
    brk = set(np.linspace(0.0, _CUTOFF, 21).tolist())
    step = d
    while step < 0.5:
        brk.update([c - step, c + step])
        step *= 2.0
    brk.add(c)
    pts = np.array(sorted(b for b in brk if 0.0 <= b <= _CUTOFF))
    # very thin first panels would waste nodes on x^{2 alpha} alone
    pts = pts[(pts == 0.0) | (pts >= 1e-14)]
    # a Legendre panel [a, b] with a << b - a cannot resolve x^{2 alpha};
    # merge it into the Jacobi panel at 0
    while pts.size > 2 and pts[1] < 0.5 * (pts[2] - pts[1]):
        pts = np.delete(pts, 1)
    tl, wl = np.polynomial.legendre.leggauss(_PANEL_NODES)
    tj, wj = sp.roots_jacobi(_PANEL_NODES, 0.0, 2.0 * alpha)
    xs, ws = [], []
    for a, b in zip(pts[:-1], pts[1:]):
        half = 0.5 * (b - a)
        if a == 0.0:
            xs.append(half * (1.0 + tj))
            ws.append(wj * half ** (2.0 * alpha + 1.0))
        else:
            x = a + half * (1.0 + tl)
            xs.append(x)
            ws.append(wl * half * x ** (2.0 * alpha))
    return np.concatenate(xs), np.concatenate(ws)


def cauchy_transform(k: int, p: KernelParams, zeta: complex, polys: list[MonicPoly] | None = None) -> complex:
    """(1/(2 pi i)) int pi_k(x) w(x) / (x - zeta) dx for zeta off the real axis.

    Composite Gauss quadrature on each half-line, refined toward Re(zeta).
    For |zeta| > 2 the integrand is replaced by pi_k(x) (x/zeta)^k / (x - zeta),
    equal by orthogonality, which avoids cancelling the k leading terms.
    """
    zeta = complex(zeta)
    if zeta.imag == 0.0:
        raise ValueError("the Cauchy transform is two-valued on the real axis")
    if polys is None or len(polys) <= k:
        polys = monic_polys(p, k)
    pk = polys[k]
    if k and abs(zeta) > _REDUCE_ABOVE:
        base = pk
        pk = lambda x: base(x) * (x / zeta) ** k
    d = abs(zeta.imag)
    x, w = _half_line_rule(p.alpha, zeta.real, d)
    w = w * np.exp(-x * x)
    right = np.sum(w * pk(x) / (x - zeta)) * _jump_factor(p)
    x, w = _half_line_rule(p.alpha, -zeta.real, d)
    w = w * np.exp(-x * x)
    left = np.sum(w * pk(-x) / (-x - zeta))
    return complex((right + left) / (2j * math.pi))
