"""Gauss rules for the Nystrom discretization.

Both rules are built on the split interval (-s, 0) U (0, s) so that no node
lands on the Fisher-Hartwig point x = 0.
"""
from __future__ import annotations

import enum
import functools
from dataclasses import dataclass

import numpy as np
from scipy import special as sp

__all__ = [
    "QuadMode",
    "QuadratureRule",
    "gauss_legendre",
    "gauss_jacobi_half",
    "split_rule",
]


class QuadMode(enum.Enum):
    LEGENDRE = "legendre"
    JACOBI = "jacobi"


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and positive weights.

    In Jacobi mode ``weights`` include the factor |x|^exponent, i.e. the rule
    approximates the integral of |x|^exponent f(x).
    """

    nodes: np.ndarray
    weights: np.ndarray
    mode: QuadMode = QuadMode.LEGENDRE
    exponent: float = 0.0

    def __len__(self):
        return self.nodes.size

    def integrate(self, f) -> float:
        return float(np.dot(self.weights, f(self.nodes)))


_LD = np.longdouble


def _legendre_pair(n: int, x):
    """(P_n(x), P_{n-1}(x)) by the three-term recurrence."""
    p0 = np.ones_like(x)
    p1 = x.copy()
    for j in range(1, n):
        p0, p1 = p1, ((2 * j + 1) * x * p1 - j * p0) / (j + 1)
    return p1, p0


@functools.lru_cache(maxsize=64)
def _legendre_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes/weights on (-1, 1) in long double.

    Newton on P_n in extended precision. Weights from the double-precision
    eigenvalue-based routines lose ~n^2 eps near the endpoints (1e-10
    relative at n = 400), which shows up in determinants with 1 - lambda
    of order 1e-8.
    """
    if n == 1:
        return np.zeros(1, dtype=_LD), np.full(1, 2, dtype=_LD)
    m = (n + 1) // 2
    x = np.cos(np.pi * (np.arange(1, m + 1) - 0.25) / (n + 0.5)).astype(_LD)
    tol = 8 * np.finfo(_LD).eps
    for _ in range(50):
        pn, pm = _legendre_pair(n, x)
        dp = n * (pm - x * pn) / ((1 - x) * (1 + x))
        dx = pn / dp
        x = x - dx
        if np.max(np.abs(dx)) <= tol:
            break
    pn, pm = _legendre_pair(n, x)
    dp = n * (pm - x * pn) / ((1 - x) * (1 + x))
    w = 2 / ((1 - x) * (1 + x) * dp * dp)
    # x is descending in (0, 1]; mirror it
    if n % 2:
        x[-1] = 0
        nodes = np.concatenate([-x, x[-2::-1]])
        weights = np.concatenate([w, w[-2::-1]])
    else:
        nodes = np.concatenate([-x, x[::-1]])
        weights = np.concatenate([w, w[::-1]])
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def gauss_legendre(n: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """n-point Gauss-Legendre rule on (a, b), exact to degree 2n - 1."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if not a < b:
        raise ValueError("need a < b")
    t, w = _legendre_nodes(n)
    half = _LD(0.5) * (_LD(b) - _LD(a))
    mid = _LD(0.5) * (_LD(a) + _LD(b))
    return QuadratureRule((half * t + mid).astype(float), (half * w).astype(float), QuadMode.LEGENDRE)


def gauss_jacobi_half(n: int, s: float, exponent: float) -> QuadratureRule:
    """n-point rule on (0, s) for the weight x^exponent.

    Exact for x^exponent * p(x) with deg p <= 2n - 1.
    """
    if not exponent > -1.0:
        raise ValueError(f"exponent must exceed -1, got {exponent}")
    if n < 1:
        raise ValueError("n must be at least 1")
    if exponent == 0.0:
        return gauss_legendre(n, 0.0, s)
    # (1 - t)^0 (1 + t)^e on (-1, 1), then x = s (1 + t) / 2
    t, w = sp.roots_jacobi(n, 0.0, exponent)
    x = 0.5 * s * (1.0 + t)
    return QuadratureRule(x, w * (0.5 * s) ** (exponent + 1.0), QuadMode.JACOBI, exponent)


def split_rule(n: int, s: float, mode: QuadMode = QuadMode.LEGENDRE, exponent: float = 0.0):
    """Rule on (-s, 0) U (0, s) with n nodes in total, mirror-symmetric.

    Jacobi mode carries the weight |x|^exponent; Legendre mode ignores
    ``exponent``.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    n_right = (n + 1) // 2
    n_left = n - n_right
    if mode is QuadMode.LEGENDRE:
        right = gauss_legendre(n_right, 0.0, s)
        left = gauss_legendre(n_left, 0.0, s)
    else:
        right = gauss_jacobi_half(n_right, s, exponent)
        left = gauss_jacobi_half(n_left, s, exponent)
    nodes = np.concatenate([-left.nodes[::-1], right.nodes])
    weights = np.concatenate([left.weights[::-1], right.weights])
    exp = exponent if mode is QuadMode.JACOBI else 0.0
    return QuadratureRule(nodes, weights, mode, exp)
