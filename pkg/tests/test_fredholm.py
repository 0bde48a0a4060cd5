import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chgdet.asymptotics import asy_sine_gamma1, eig_asy
from chgdet.fredholm import (
    EigenvalueRangeError,
    SpectrumResult,
    discretize,
    log_det,
    log_det_from_spectrum,
    spectrum,
)
from chgdet.instance import Deformation, GapInstance, gamma_to_nu, nu_gamma_map, nu_to_gamma
from chgdet.kernels import KernelKind, KernelParams

SINE = KernelKind.SINE
CHG = KernelKind.CHG


def inst(kind=SINE, s=4.0, alpha=0.0, beta_im=0.0, gamma=1.0):
    return GapInstance(kind, KernelParams(alpha, beta_im), s, Deformation.from_gamma(gamma))


class TestDeformation:
    def test_map(self):
        assert gamma_to_nu(1.0) == math.inf
        assert nu_to_gamma(math.inf) == 1.0
        assert gamma_to_nu(0.0) == 0.0
        assert nu_gamma_map(gamma=0.9) == pytest.approx(math.log(10))
        with pytest.raises(ValueError):
            nu_gamma_map(gamma=0.5, nu=1.0)
        with pytest.raises(ValueError):
            gamma_to_nu(1.2)

    @given(st.floats(0, 1 - 1e-12))
    def test_roundtrip(self, g):
        assert nu_to_gamma(gamma_to_nu(g)) == pytest.approx(g, rel=1e-12, abs=1e-15)

    def test_instance(self):
        i = inst(s=2.5)
        assert i.t == -10j
        with pytest.raises(ValueError):
            inst(s=0.0)
        # the sine family ignores (alpha, beta)
        assert inst(SINE, alpha=0.4, beta_im=1.0).params == KernelParams()


class TestDiscretize:
    def test_trace_small_interval(self):
        op = discretize(inst(s=0.01), 2)
        assert op.matrix.shape == (2, 2)
        assert np.trace(op.matrix) == pytest.approx(0.02 / math.pi, rel=1e-14)

    def test_symmetric_and_gamma_independent(self):
        a = discretize(inst(CHG, 3.0, 0.3, 0.4, gamma=1.0), 60)
        b = discretize(inst(CHG, 3.0, 0.3, 0.4, gamma=0.0), 60)
        assert np.array_equal(a.matrix, a.matrix.T)
        assert np.array_equal(a.matrix, b.matrix)

    def test_jacobi_matches_legendre(self):
        # the Jacobi-mode matrix is similar to the continuum operator; both converge to it
        i = inst(CHG, 3.0, 0.3, 0.4)
        lj = np.linalg.eigvalsh(discretize(i, 120, "jacobi").matrix)[::-1][:6]
        ll = np.linalg.eigvalsh(discretize(i, 800, "legendre").matrix)[::-1][:6]
        assert np.max(np.abs(lj - ll)) < 1e-5
        lj2 = np.linalg.eigvalsh(discretize(i, 240, "jacobi").matrix)[::-1][:6]
        assert np.max(np.abs(lj - lj2)) < 1e-12

    def test_bad_n(self):
        with pytest.raises(ValueError):
            discretize(inst(), 1)


def _neumann(s, terms=4, n=60):
    # plain Gauss-Legendre on (-s, s), no split: independent of the package rule
    t, w = np.polynomial.legendre.leggauss(n)
    x, w = s * t, s * w
    d = x[:, None] - x[None, :]
    k = np.sinc(d / math.pi) / math.pi
    a = np.sqrt(w)[:, None] * k * np.sqrt(w)[None, :]
    out, p = 0.0, np.eye(n)
    for m in range(1, terms + 1):
        p = p @ a
        out -= np.trace(p) / m
    return out


class TestLogDet:
    def test_gamma_zero(self):
        assert log_det(discretize(inst(gamma=0.0), 50)) == 0.0

    def test_neumann_oracle(self):
        v = log_det(discretize(inst(s=0.1), 40))
        assert v == pytest.approx(-0.0657739, abs=1e-7)
        assert abs(v - _neumann(0.1)) < 1e-6

    def test_large_gap_formula(self):
        v = log_det(discretize(inst(s=8.0), 400))
        assert abs(v - asy_sine_gamma1(8.0)) < 0.1

    def test_spectrum_consistency(self):
        op = discretize(inst(CHG, 5.0, 0.3, 0.4, gamma=0.7), 200)
        spec = spectrum(op)
        direct = float(np.sum(np.log1p(-0.7 * spec.lam)))
        assert log_det(op) == pytest.approx(direct, abs=1e-12)

    def test_monotone_in_gamma(self):
        op = discretize(inst(CHG, 4.0, -0.2, 0.6), 150)
        vals = [log_det(op, Deformation.from_gamma(g)) for g in np.linspace(0, 1, 21)]
        assert np.all(np.diff(vals) <= 1e-13)

    @pytest.mark.parametrize("s", [2.0, 6.0, 10.0])
    def test_node_doubling(self, s):
        a = log_det(discretize(inst(s=s), 300))
        b = log_det(discretize(inst(s=s), 600))
        assert abs(a - b) <= 1e-8

    def test_range_error(self):
        spec = SpectrumResult(np.array([1.5, 0.2]), np.array([-0.5, 0.8]))
        with pytest.raises(EigenvalueRangeError) as exc:
            log_det_from_spectrum(spec, Deformation.from_gamma(1.0))
        assert exc.value.index == 0


class TestSpectrum:
    def test_sine_in_unit_interval(self):
        spec = spectrum(discretize(inst(s=5.0), 200))
        assert np.all(spec.lam > -1e-10) and np.all(spec.lam < 1 + 1e-10)
        assert spec.lam[0] < 1 and spec.lam[0] > 0.99
        assert np.all(np.diff(spec.lam) <= 0)

    def test_rank_one_limit(self):
        s = 1e-3
        spec = spectrum(discretize(inst(s=s), 20), 2)
        assert spec.lam[0] == pytest.approx(2 * s / math.pi, rel=1e-5)

    def test_stability_identity(self):
        spec = spectrum(discretize(inst(CHG, 6.0, 0.3, 0.4), 300))
        big = spec.one_minus_lam >= 1e-6
        assert np.max(np.abs(spec.one_minus_lam[big] + spec.lam[big] - 1)) < 1e-12

    def test_small_gap_refined(self):
        # at s=10 the top gap is ~1e-8; node doubling agrees to a few digits
        a = spectrum(discretize(inst(s=10.0), 300), 1).one_minus_lam[0]
        b = spectrum(discretize(inst(s=10.0), 600), 1).one_minus_lam[0]
        assert a > 0 and abs(a - b) < 1e-4 * a

    def test_leading_gap_against_prediction(self):
        i = inst(s=8.0)
        gap = spectrum(discretize(i, 400), 1).one_minus_lam[0]
        assert abs(gap / eig_asy(0, i) - 1) < 0.3

    def test_k_max(self):
        op = discretize(inst(), 30)
        assert spectrum(op, 5).lam.size == 5
        with pytest.raises(ValueError):
            spectrum(op, 31)


@settings(max_examples=15, deadline=None)
@given(st.floats(-0.45, 1.0), st.floats(-1.0, 1.0), st.floats(0.5, 8.0))
def test_eigenvalue_range(alpha, beta_im, s):
    spec = spectrum(discretize(inst(CHG, s, alpha, beta_im), 120, "jacobi"))
    assert np.all(spec.lam > -1e-10) and np.all(spec.lam < 1 + 1e-10)
