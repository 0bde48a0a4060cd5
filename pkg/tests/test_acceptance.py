"""Acceptance criteria A1-A9. Each test records one PASS/FAIL line, shown in
the terminal summary, and fails when its criterion is not met."""
import math
import time

import numpy as np
import pytest
from scipy import integrate

from chgdet.asymptotics import (
    asy_exp_region,
    asy_gamma1,
    asy_sine_gamma1,
    asy_theorem,
    barnes_constant,
    boundary_nu,
    eig_asy,
)
from chgdet.fredholm import discretize, log_det, spectrum
from chgdet.instance import Deformation, GapInstance
from chgdet.kernels import KernelKind, KernelParams, bessel1_kernel, chg_kernel, chg_kernel_complex, sine_kernel
from chgdet.orthopoly import hankel_dets, monic_polys
from chgdet.rhverify import (
    RHConfig,
    check_bessel,
    check_e_prefactors,
    check_h1,
    check_matching,
    check_pinf,
    extract_h1,
)
from chgdet.specfun import barnes_g_log, constants, kummer_m, log_gamma

SINE, CHG = KernelKind.SINE, KernelKind.CHG
NODES = 400


def sine_logdet(s):
    return log_det(discretize(GapInstance(SINE, KernelParams(), s), NODES))


def test_a1_sine_large_gap(report):
    t0 = time.perf_counter()
    diffs = [abs(sine_logdet(s) - asy_sine_gamma1(s)) for s in (4.0, 6.0, 8.0)]
    elapsed = time.perf_counter() - t0
    ok = diffs[0] > diffs[1] > diffs[2] and diffs[2] <= 0.1 and elapsed <= 60
    report("A1", ok, f"|diff| at s=4,6,8: {diffs[0]:.3g}, {diffs[1]:.3g}, {diffs[2]:.3g}; {elapsed:.2f}s")
    assert ok


def test_a2_exponential_region(report):
    diffs = []
    for s in (6.0, 8.0):
        inst = GapInstance(CHG, KernelParams(0.3, 0.4), s, Deformation.from_gamma(0.9))
        diffs.append(abs(log_det(discretize(inst, NODES, "jacobi")) - asy_exp_region(inst).total_log))
    ok = diffs[1] < diffs[0] and diffs[1] <= 0.15
    report("A2", ok, f"|diff| at s=6,8: {diffs[0]:.3g}, {diffs[1]:.3g}")
    assert ok


def test_a3_theorem_beats_gamma1(report):
    s, chi = 8.0, 1.0
    lines, ok = [], True
    for alpha, kind, mode in ((0.0, SINE, "legendre"), (0.3, CHG, "jacobi")):
        for nu in (2 * s - chi * math.log(4 * s), boundary_nu(s, chi, alpha)):
            inst = GapInstance(kind, KernelParams(alpha, 0.0), s, Deformation.from_nu(nu))
            num = log_det(discretize(inst, NODES, mode))
            e_thm = abs(num - asy_theorem(inst, chi).total_log)
            e_g1 = abs(num - asy_gamma1(inst).total_log)
            ok &= e_thm < e_g1
            lines.append(f"alpha={alpha} nu={nu:.4f}: {e_thm:.3g} < {e_g1:.3g}")
            if alpha == 0.0:
                break  # both nu choices coincide
    report("A3", ok, "; ".join(lines))
    assert ok


def test_a4_zeta_prime_coefficient(report):
    c = constants()
    ident = abs(barnes_constant(KernelParams()) - (math.log(2) / 12 + 3 * c["zeta_prime_minus1"]))
    lhs = 0.5 * math.log(math.pi) + 2 * barnes_g_log(0.5).real
    ident = max(ident, abs(lhs - (math.log(2) / 12 + 3 * c["zeta_prime_minus1"])))
    num = sine_logdet(8.0)
    d3 = abs(num - asy_sine_gamma1(8.0, 3.0))
    d2 = abs(num - asy_sine_gamma1(8.0, 2.0))
    ok_ident = ident <= 1e-10
    ok_3 = d3 <= 0.1
    ok_2 = d2 > 0.3
    ok = ok_ident and ok_3 and ok_2
    report("A4", ok, f"Barnes identity residual {ident:.2g} ({'ok' if ok_ident else 'bad'}); "
                     f"|diff| with 3zeta' {d3:.3g} ({'ok' if ok_3 else 'bad'}); "
                     f"|diff| with 2zeta' {d2:.3g}, required > 0.3 ({'ok' if ok_2 else 'bad'}: "
                     f"the two constants differ by |zeta'(-1)| = {abs(c['zeta_prime_minus1']):.4f})")
    assert ok


def test_a5_eigenvalue_asymptotics(report):
    parts, ok = [], True
    inst8 = GapInstance(SINE, KernelParams(), 8.0)
    gaps = spectrum(discretize(inst8, NODES), 3).one_minus_lam
    for k in range(3):
        r = gaps[k] / eig_asy(k, inst8)
        good = 0.7 <= r <= 1.4
        ok &= good
        parts.append(f"sine s=8 k={k} ratio {r:.4f}{'' if good else ' (outside [0.7, 1.4])'}")
    inst10 = GapInstance(SINE, KernelParams(), 10.0)
    r8 = gaps[0] / eig_asy(0, inst8)
    r10 = spectrum(discretize(inst10, NODES), 1).one_minus_lam[0] / eig_asy(0, inst10)
    ok &= abs(r10 - 1) < abs(r8 - 1)
    parts.append(f"k=0 ratio s=10 {r10:.4f} vs s=8 {r8:.4f}")
    ic = GapInstance(CHG, KernelParams(0.3, 0.4), 8.0)
    rc = spectrum(discretize(ic, NODES, "jacobi"), 1).one_minus_lam[0] / eig_asy(0, ic)
    ok &= 0.6 <= rc <= 1.6
    parts.append(f"CHG k=0 ratio {rc:.4f}")
    report("A5", ok, "; ".join(parts))
    assert ok


def _weighted(f, p, epsabs=1e-14):
    e = 1.0 / (1.0 + 2.0 * p.alpha)

    def side(sign):
        g = lambda u: f(sign * u**e) * math.exp(-(u ** (2 * e)))
        return e * integrate.quad(g, 0, np.inf, epsabs=epsabs, epsrel=1e-13, limit=400)[0]

    return side(-1) + math.exp(2 * math.pi * p.beta_im) * side(1)


def test_a6_hk_suite(report):
    worst_quad = worst_herm = worst_im = 0.0
    for a in (-0.3, 0.0, 0.5):
        for b in (0.0, 0.5):
            p = KernelParams(a, b)
            o = hankel_dets(p, 6)
            polys = monic_polys(p, 6, o)
            for k in range(7):
                ref = _weighted(lambda x: polys[k](x).real ** 2, p)
                worst_quad = max(worst_quad, abs(o.h[k] - ref) / ref)
                worst_im = max(worst_im, abs((o.h[k] * math.exp(-math.pi * b)).imag) / abs(o.h[k]))
    o = hankel_dets(KernelParams(), 8)
    for k in range(9):
        ref = math.sqrt(math.pi) * math.factorial(k) / 2**k
        worst_herm = max(worst_herm, abs(o.h[k] - ref) / ref)
    ok = worst_quad <= 1e-8 and worst_herm <= 1e-10 and worst_im <= 1e-10
    report("A6", ok, f"quadrature {worst_quad:.2g}, Hermite {worst_herm:.2g}, imaginary part {worst_im:.2g}")
    assert ok


def test_a7_kernel_reductions(report):
    rng = np.random.default_rng(7)
    x = rng.uniform(-5, 5, 200)
    y = rng.uniform(-5, 5, 200)
    sine_err = max(abs(chg_kernel(KernelParams(), a, b) - sine_kernel(a, b)) for a, b in zip(x, y))
    bes_err = 0.0
    for alpha in (0.5, 1.0):
        p = KernelParams(alpha, 0.0)
        for a, b in zip(x, y):
            ref = bessel1_kernel(alpha, a, b)
            bes_err = max(bes_err, abs(chg_kernel(p, a, b) - ref) / max(abs(ref), 1e-3))
    ok = sine_err <= 1e-12 and bes_err <= 1e-10
    report("A7", ok, f"chg(0,0)-sine {sine_err:.2g}; chg(alpha,0)-bessel1 {bes_err:.2g} (relative)")
    assert ok


def test_a8_rh_parametrices(report):
    p = KernelParams(0.3, 0.4)
    parts, ok = [], True
    # P^inf at integer chi (mu = 0) and at chi = 1.3 with the mu-phase on Sigma_7
    for chi in (1.0, 1.3):
        res = check_pinf(RHConfig(p, 8.0, chi))
        jumps = max(r.max_residual for r in res[:3])
        ok &= all(r.passed for r in res)
        parts.append(f"P^inf chi={chi}: jumps {jumps:.2g}, det {res[3].value:.2g}, "
                     f"decay {res[4].value:.2f}")
    bes = check_bessel()
    ok &= all(r.passed for r in bes)
    parts.append(f"Phi^B jumps {max(r.max_residual for r in bes[:3]):.2g}, ODE {bes[3].value:.2g}, "
                 f"decay {bes[4].value:.2f}")
    h = check_h1(p, k_max=3)
    ok &= all(r.passed for r in h)
    worst = max(r.value for r in h if r.name.startswith("H1"))
    # the same entries against gamma_k = -h_k/(2 pi i) taken literally
    o = hankel_dets(p, 3)
    h1 = extract_h1(o, 2)
    literal = abs(h1[0, 1] * o.gamma_k[2] - 1)
    parts.append(f"H_1 entries {worst:.2g} with gamma_k = -2 pi i/h_k (literal -h_k/(2 pi i) gives {literal:.2g})")
    e = check_e_prefactors(RHConfig(p, 8.0, 1.0, nu=5.0))
    ok &= all(r.passed for r in e)
    parts.append(f"E analyticity {max(r.max_residual for r in e):.2g}")
    m = check_matching(p, chi=0.0, s_pair=(6.0, 12.0))
    ok &= m.passed
    parts.append(f"matching ratio 6->12 {m.value:.3f}")
    report("A8", ok, "; ".join(parts))
    assert ok


def test_a9_property_suite(report):
    rng = np.random.default_rng(11)
    parts, ok = [], True
    lo, hi = 1.0, 0.0
    # Legendre nodes are spectrally accurate only for alpha = 0; the CHG
    # cases use the Jacobi rule that absorbs |x|^{2 alpha}
    for kind, a, b, mode in ((SINE, 0.0, 0.0, "legendre"), (CHG, 0.3, 0.4, "jacobi"),
                             (CHG, -0.3, -0.8, "jacobi"), (CHG, 1.2, 1.0, "jacobi")):
        for s in (1.0, 5.0, 10.0):
            lam = spectrum(discretize(GapInstance(kind, KernelParams(a, b), s), 200, mode)).lam
            lo, hi = min(lo, lam.min()), max(hi, lam.max())
    ok &= lo > -1e-10 and hi < 1 + 1e-10
    parts.append(f"eigenvalues in [{lo:.2g}, 1{hi - 1:+.2g}]")
    op = discretize(GapInstance(CHG, KernelParams(0.3, 0.4), 6.0), 200)
    vals = [log_det(op, Deformation.from_gamma(g)) for g in np.linspace(0, 1, 21)]
    mono = bool(np.all(np.diff(vals) <= 1e-13))
    ok &= mono
    parts.append(f"monotone in gamma: {mono}")
    dbl = max(abs(log_det(discretize(GapInstance(SINE, KernelParams(), s), n))
                  - log_det(discretize(GapInstance(SINE, KernelParams(), s), 2 * n)))
              for s in (2.0, 6.0, 10.0) for n in (300,))
    ok &= dbl <= 1e-8
    parts.append(f"node doubling {dbl:.2g}")
    kum = 0.0
    for _ in range(100):
        aa = complex(rng.uniform(-2, 3), rng.uniform(-1, 1))
        bb = rng.uniform(0.3, 4)
        z = rng.uniform(0, 10) * np.exp(1j * rng.uniform(-np.pi, np.pi))
        l, r = kummer_m(aa, bb, z), np.exp(z) * kummer_m(bb - aa, bb, -z)
        kum = max(kum, abs(l - r) / max(abs(l), abs(r)))
    gam = 0.0
    for xr in np.linspace(-4.3, 6.1, 10):
        for yi in np.linspace(-5.2, 5.2, 10):
            zz = complex(xr, yi)
            gam = max(gam, abs(np.exp(log_gamma(zz + 1) - log_gamma(zz)) - zz) / abs(zz))
    bar = 0.0
    for _ in range(50):
        zz = complex(rng.uniform(0.2, 6), rng.uniform(-4, 4))
        l = np.exp(barnes_g_log(zz + 1))
        r = np.exp(log_gamma(zz) + barnes_g_log(zz))
        bar = max(bar, abs(l - r) / abs(r))
    ok &= kum <= 1e-12 and gam <= 1e-13 and bar <= 1e-12
    parts.append(f"Kummer {kum:.2g}, Gamma {gam:.2g}, Barnes {bar:.2g}")
    # the CHG value is real to round-off on a random sample
    im = max(abs(chg_kernel_complex(KernelParams(0.3, 0.4), a, b).imag)
             for a, b in rng.uniform(-5, 5, (50, 2)))
    parts.append(f"kernel imaginary residue {im:.2g}")
    report("A9", ok, "; ".join(parts))
    assert ok
