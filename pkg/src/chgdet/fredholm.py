"""Nystrom discretization of the integral operator on L^2(-s, s), its
spectrum and the deformed determinant log det(I - gamma K_s)."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .instance import Deformation, GapInstance
from .kernels import KernelKind, reduced_kernel_matrix
from .quadrature import QuadMode, QuadratureRule, split_rule

__all__ = [
    "DiscreteOperator",
    "SpectrumResult",
    "EigenvalueRangeError",
    "discretize",
    "spectrum",
    "log_det",
    "log_det_from_spectrum",
]


class EigenvalueRangeError(ArithmeticError):
    """A discrete eigenvalue makes 1 - gamma * lambda non-positive."""

    def __init__(self, index: int, value: float, gamma: float):
        super().__init__(
            f"1 - gamma*lambda_{index} <= 0 (lambda={value!r}, gamma={gamma!r})"
        )
        self.index = index
        self.value = value


@dataclass(frozen=True)
class DiscreteOperator:
    matrix: np.ndarray
    rule: QuadratureRule
    instance: GapInstance

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class SpectrumResult:
    """Eigenvalues in descending order, with 1 - lambda taken from the
    spectrum of I - M (ascending, so entries pair up index by index)."""

    lam: np.ndarray
    one_minus_lam: np.ndarray


def discretize(inst: GapInstance, n: int, mode: QuadMode | str = QuadMode.LEGENDRE) -> DiscreteOperator:
    """Symmetric Nystrom matrix of the kernel on (-s, s).

    Legendre mode: M_ij = sqrt(w_i w_j) K(x_i, x_j).
    Jacobi mode: the weight |2y|^{2 alpha} is absorbed into Gauss-Jacobi
    weights and M_ij = sqrt(w_i w_j) G(x_i, x_j) with K = |2x|^a G |2y|^a,
    which is similar to the Legendre-mode operator and converges spectrally.
    """
    mode = QuadMode(mode)
    if n < 2:
        raise ValueError("n must be at least 2")
    alpha = inst.params.alpha
    if mode is QuadMode.JACOBI and inst.kind is not KernelKind.SINE and alpha != 0.0:
        rule = split_rule(n, inst.s, QuadMode.JACOBI, 2.0 * alpha)
        w = rule.weights * 4.0**alpha
        g = reduced_kernel_matrix(inst.kind, inst.params, rule.nodes)
    else:
        rule = split_rule(n, inst.s, QuadMode.LEGENDRE)
        if mode is QuadMode.JACOBI:
            rule = QuadratureRule(rule.nodes, rule.weights, QuadMode.JACOBI, 0.0)
        w = rule.weights
        g = reduced_kernel_matrix(inst.kind, inst.params, rule.nodes)
        if alpha != 0.0:
            scale = np.abs(2.0 * rule.nodes) ** alpha
            g = scale[:, None] * g * scale[None, :]
    sw = np.sqrt(w)
    m = sw[:, None] * g * sw[None, :]
    m = 0.5 * (m + m.T)
    return DiscreteOperator(m, rule, inst)


# eigenvalues of I - M below this are re-evaluated as Rayleigh quotients
# with a long-double residual
REFINE_BELOW = 1e-3


def _refine_small(matrix: np.ndarray, vals: np.ndarray, vecs: np.ndarray) -> np.ndarray:
    """Rayleigh quotients v^T (I - M) v for the eigenpairs with small values.

    LAPACK's backward error puts an absolute error of a few n*eps on each
    eigenvalue of I - M, which is a large relative error once 1 - lambda is
    ~1e-8. The residual v - M v is formed in extended precision; the
    eigenvector error enters only quadratically.
    """
    idx = np.nonzero(vals < REFINE_BELOW)[0]
    if idx.size == 0:
        return vals
    v = vecs[:, idx].astype(np.longdouble)
    r = v - matrix.astype(np.longdouble) @ v
    q = np.einsum("ij,ij->j", v, r) / np.einsum("ij,ij->j", v, v)
    out = vals.copy()
    out[idx] = q.astype(float)
    return out


def spectrum(op: DiscreteOperator, k_max: int | None = None) -> SpectrumResult:
    n = op.n
    if k_max is None:
        k_max = n
    if not 0 < k_max <= n:
        raise ValueError(f"k_max must lie in [1, {n}]")
    lam = np.linalg.eigvalsh(op.matrix)[::-1]
    vals, vecs = np.linalg.eigh(np.eye(n) - op.matrix)
    one_minus = _refine_small(op.matrix, vals, vecs)
    order = np.argsort(one_minus, kind="stable")
    return SpectrumResult(lam[:k_max].copy(), one_minus[order][:k_max].copy())


def log_det_from_spectrum(spec: SpectrumResult, deformation: Deformation) -> float:
    """Sum of ln(1 - gamma lambda_k), with 1 - gamma lambda assembled as
    (1 - lambda) + e^{-nu} lambda."""
    if deformation.gamma == 0.0:
        return 0.0
    q = deformation.exp_minus_nu
    arg = spec.one_minus_lam + q * spec.lam
    bad = np.nonzero(arg <= 0.0)[0]
    if bad.size:
        k = int(bad[0])
        raise EigenvalueRangeError(k, float(spec.lam[k]), deformation.gamma)
    return float(np.sum(np.log(arg)))


def log_det(op: DiscreteOperator, deformation: Deformation | None = None) -> float:
    """log det(I - gamma K_s) over the full discrete spectrum."""
    if deformation is None:
        deformation = op.instance.deformation
    if deformation.gamma == 0.0:
        return 0.0
    return log_det_from_spectrum(spectrum(op), deformation)
