"""Deformed Fredholm determinants of the sine, type-I Bessel and confluent
hypergeometric kernels: numerics, large-gap asymptotics and checks of the
Riemann-Hilbert parametrices behind them."""
from .instance import Deformation, GapInstance, nu_gamma_map
from .kernels import KernelKind, KernelParams
from .quadrature import QuadMode

__version__ = "0.1.0"

__all__ = ["Deformation", "GapInstance", "KernelKind", "KernelParams", "QuadMode", "nu_gamma_map"]
