"""Complex special functions used by the kernels, the asymptotic formulas and
the Riemann-Hilbert parametrices.

Everything here runs in double precision. Gamma and the modified Bessel
functions are delegated to :mod:`scipy.special`; the Barnes G-function and
Kummer's function with complex parameters are implemented locally.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np
from scipy import special as sp

__all__ = [
    "SpecialFunctionError",
    "log_gamma",
    "barnes_g_log",
    "kummer_m",
    "kummer_m_deriv",
    "kummer_m_pair",
    "bessel_modified",
    "constants",
    "ZETA_PRIME_MINUS1",
    "SQRT_PI",
    "KUMMER_SERIES_RADIUS",
    "KUMMER_MAX_STEP",
]

ZETA_PRIME_MINUS1 = -0.16542114370045092921
SQRT_PI = 1.7724538509055160273

# |z| at or below which Kummer's series is summed directly; beyond it the
# solution is continued by Taylor steps of the Kummer ODE.
KUMMER_SERIES_RADIUS = 2.0
KUMMER_MAX_STEP = 2.0
KUMMER_MAX_TERMS = 600

# Barnes G: argument is shifted up by the recurrence until |w| >= this.
_BARNES_SHIFT_RADIUS = 18.0

# B_{2k+2} / (4 k (k+1)) for the Stirling-type expansion of log G.
_BARNES_COEFFS = [
    float(Fraction(b) / (4 * k * (k + 1)))
    for k, b in enumerate(
        [
            Fraction(-1, 30),
            Fraction(1, 42),
            Fraction(-1, 30),
            Fraction(5, 66),
            Fraction(-691, 2730),
            Fraction(7, 6),
            Fraction(-3617, 510),
            Fraction(43867, 798),
        ],
        start=1,
    )
]


class SpecialFunctionError(ValueError):
    """Raised for arguments on a pole, a zero or a branch cut, or when a
    series fails to converge within its term budget."""


def constants() -> dict[str, float]:
    return {"zeta_prime_minus1": ZETA_PRIME_MINUS1, "sqrt_pi": SQRT_PI}


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def log_gamma(z: complex) -> complex:
    """Principal branch of log Gamma(z)."""
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise SpecialFunctionError(f"Gamma has a pole at z={z.real:g}")
    if z.imag == 0.0 and z.real > 0.0:
        return complex(math.lgamma(z.real), 0.0)
    return complex(sp.loggamma(z))


def _log_barnes_g_large(w: complex) -> complex:
    """log G(w + 1) for |w| large, Re w > 0."""
    lw = cmath.log(w)
    w2 = w * w
    val = (w2 / 2 - 1.0 / 12) * lw - 0.75 * w2 + 0.5 * w * math.log(2 * math.pi)
    val += ZETA_PRIME_MINUS1
    inv = 1.0 / w2
    p = inv
    for c in _BARNES_COEFFS:
        val += c * p
        p *= inv
    return val


def barnes_g_log(z: complex) -> complex:
    """log G(z), continued from the positive real axis (where it is real).

    Uses G(z+1) = Gamma(z) G(z) to move the argument into the region where
    the asymptotic expansion is accurate to double precision.
    """
    z = complex(z)
    if _is_nonpositive_integer(z):
        raise SpecialFunctionError(f"Barnes G vanishes at z={z.real:g}")
    if z.imag == 0.0 and z.real == int(z.real) and z.real <= _BARNES_SHIFT_RADIUS:
        # G(n) = prod_{j<n-1} j!
        return complex(sum(math.lgamma(j + 1.0) for j in range(1, int(z.real) - 1)), 0.0)
    w = z - 1.0
    n_shift = 0
    while abs(w + n_shift) < _BARNES_SHIFT_RADIUS or (w + n_shift).real < 1.0:
        n_shift += 1
    acc = _log_barnes_g_large(w + n_shift)
    # G(w + N + 1) = G(w + 1) * prod_{j=1}^{N} Gamma(w + j)
    for j in range(1, n_shift + 1):
        acc -= log_gamma(w + j)
    if z.imag == 0.0 and z.real > 0.0:
        return complex(acc.real, 0.0)
    return acc


def _kummer_series(a: complex, b: complex, z: complex) -> tuple[complex, complex]:
    """Direct Maclaurin series for (M, M')."""
    term = 1.0 + 0j
    m = term
    dterm = a / b
    dm = dterm
    for k in range(KUMMER_MAX_TERMS):
        term *= (a + k) / ((b + k) * (k + 1)) * z
        dterm *= (a + 1 + k) / ((b + 1 + k) * (k + 1)) * z
        m += term
        dm += dterm
        if abs(term) <= 1e-17 * abs(m) and abs(dterm) <= 1e-17 * abs(dm):
            return m, dm
        if term == 0 and dterm == 0:
            return m, dm
    raise SpecialFunctionError(
        f"Kummer series did not converge in {KUMMER_MAX_TERMS} terms (z={z})"
    )


def _kummer_taylor_step(a, b, c, u0, u1, h):
    """Advance (u, u') of z u'' + (b - z) u' - a u = 0 from c to c + h."""
    # Taylor coefficients about c:
    # c (n+1)(n+2) t_{n+2} = (n + a) t_n - (n+1)(n + b - c) t_{n+1}
    t0, t1 = u0, u1
    val = t0 + t1 * h
    dval = t1
    hp = h  # h**(n+1) for the derivative sum
    n = 0
    small = 0
    while n < KUMMER_MAX_TERMS:
        t2 = ((n + a) * t0 - (n + 1) * (n + b - c) * t1) / (c * (n + 1) * (n + 2))
        hp_next = hp * h
        term = t2 * hp_next
        dterm = (n + 2) * t2 * hp
        val += term
        dval += dterm
        if abs(term) <= 1e-17 * abs(val) and abs(dterm) <= 1e-17 * abs(dval):
            small += 1
            if small >= 2:
                return val, dval
        else:
            small = 0
        t0, t1 = t1, t2
        hp = hp_next
        n += 1
    raise SpecialFunctionError("Kummer Taylor continuation did not converge")


def kummer_m_pair(a: complex, b: complex, z: complex) -> tuple[complex, complex]:
    """Return (M(a, b, z), dM/dz) for complex a, b, z."""
    a, b, z = complex(a), complex(b), complex(z)
    if _is_nonpositive_integer(b):
        raise SpecialFunctionError(f"b={b.real:g} is a non-positive integer")
    r = abs(z)
    if r <= KUMMER_SERIES_RADIUS:
        return _kummer_series(a, b, z)
    direction = z / r
    c = direction * KUMMER_SERIES_RADIUS
    u0, u1 = _kummer_series(a, b, c)
    rc = KUMMER_SERIES_RADIUS
    while rc < r:
        step = min(0.5 * rc, KUMMER_MAX_STEP, r - rc)
        u0, u1 = _kummer_taylor_step(a, b, c, u0, u1, direction * step)
        rc += step
        c = direction * rc
    return u0, u1


def kummer_m(a: complex, b: complex, z: complex) -> complex:
    """Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z)."""
    return kummer_m_pair(a, b, z)[0]


def kummer_m_deriv(a: complex, b: complex, z: complex) -> complex:
    """dM/dz, equal to (a/b) M(a+1, b+1, z)."""
    return kummer_m_pair(a, b, z)[1]


_BESSEL_KINDS = {
    "I0": lambda x: sp.iv(0, x),
    "K0": lambda x: sp.kv(0, x),
    "I0'": lambda x: sp.ivp(0, x),
    "K0'": lambda x: sp.kvp(0, x),
}


def bessel_modified(kind: str, x):
    """I0, K0 and their derivatives on the principal branch, cut on (-inf, 0].

    Accepts scalars or arrays.
    """
    try:
        fn = _BESSEL_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown Bessel kind {kind!r}") from None
    arr = np.asarray(x, dtype=complex)
    on_cut = (arr.imag == 0) & (arr.real <= 0)
    if kind == "I0" or kind == "I0'":
        on_cut = np.zeros_like(on_cut)  # I0 is entire
    if np.any(on_cut):
        raise SpecialFunctionError("argument on the branch cut (-inf, 0]")
    out = fn(arr)
    if np.ndim(x) == 0:
        return complex(out)
    return out
