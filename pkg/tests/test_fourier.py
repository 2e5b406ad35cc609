import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.special import gamma as gamma_fn

from stripzeros.errors import NoDecay, NotRealOnAxis, PrefixTooShort, TolNotMet
from stripzeros.fourier import (
    KernelPoly,
    adaptive_gl,
    approximant_eval,
    approximant_straight,
    corner_point,
    f0_closed_form,
    fourier_cor_check,
    fourier_eval,
    gamma_from_poly,
    gaussian_closed_form,
    jensen_bound_check,
    kernel_on_axis,
    real_zero_verdict,
)
from stripzeros.polycore import Poly
from stripzeros.stripcls import Status

GAUSS = Poly([0, 0, 1])  # H(it) = -t^2
QUARTIC = Poly([0, 0, 0, 0, -1])  # H(it) = -t^4
MIXED = Poly([0, 0, 1, 0, -1])  # H(it) = -t^2 - t^4


def test_kernel_on_axis_examples():
    assert kernel_on_axis(GAUSS, 2.0) == -4
    assert kernel_on_axis(QUARTIC, 1.0) == -1
    assert kernel_on_axis(Poly([0, 0, 0, 1]), 1.0) == -1j


def test_kernel_properties():
    kp = KernelPoly(QUARTIC)
    assert kp.leading_ok and kp.even_branch
    assert kp.d == 2 and kp.c == 1
    assert not KernelPoly(Poly([0, 0, -1])).leading_ok
    with pytest.raises(ValueError):
        KernelPoly(Poly([0, 1j]))


def test_adaptive_gl_and_tol_not_met():
    val = adaptive_gl(lambda t: np.exp(-t * t), -8, 8, 1e-12)
    assert abs(val - math.sqrt(math.pi)) <= 1e-12
    with pytest.raises(TolNotMet):
        adaptive_gl(lambda t: 1 / np.abs(t - 0.3) ** 0.9, 0, 1, 1e-12, max_panels=50)


def test_fourier_eval_examples():
    assert fourier_eval(GAUSS, 0) == pytest.approx(math.sqrt(math.pi), abs=1e-10)
    # sqrt(pi) * e, the closed form at z = 2i
    assert fourier_eval(GAUSS, 2j) == pytest.approx(math.sqrt(math.pi) * math.e, abs=1e-9)
    assert fourier_eval(QUARTIC, 0) == pytest.approx(2 * gamma_fn(1.25), abs=1e-10)
    with pytest.raises(NoDecay):
        fourier_eval(Poly([0, 0, -1]), 0)


def test_fourier_eval_matches_gaussian_on_grid():
    x = np.linspace(-2, 2, 5)
    Z = (x[:, None] + 1j * x[None, :]).ravel()
    Z = Z[np.abs(Z) <= 3]
    err = np.abs(fourier_eval(GAUSS, Z) - gaussian_closed_form(Z))
    assert np.max(err) <= 1e-9


def test_fourier_eval_matches_scipy_quad():
    for z in (0.5, 2.0, 0.3 + 0.4j):
        re = quad(lambda t: np.real(np.exp(-t**4 - t**2) * np.exp(1j * t * z)), -10, 10, epsabs=1e-13)[0]
        im = quad(lambda t: np.imag(np.exp(-t**4 - t**2) * np.exp(1j * t * z)), -10, 10, epsabs=1e-13)[0]
        assert abs(fourier_eval(MIXED, z) - complex(re, im)) <= 1e-10


def test_conjugate_symmetry():
    rng = np.random.default_rng(0)
    z = rng.uniform(-3, 3, 20) + 1j * rng.uniform(-1.5, 1.5, 20)
    for H in (GAUSS, QUARTIC, MIXED):
        F = fourier_eval(H, z)
        Fc = fourier_eval(H, np.conj(z))
        assert np.all(np.abs(Fc - np.conj(F)) <= 1e-9 * (1 + np.abs(F)))


def test_corner_point_examples():
    assert corner_point(GAUSS, 4) == pytest.approx(2, abs=1e-12)
    assert corner_point(QUARTIC, 16) == pytest.approx(2, abs=1e-12)
    assert corner_point(MIXED, 2) == pytest.approx(1, abs=1e-12)


def test_f0_closed_form():
    for H, m in ((GAUSS, 4.0), (QUARTIC, 16.0), (MIXED, 2.0)):
        a = corner_point(H, m)
        for z in (0.7, -1.3, 0.4 + 0.2j):
            assert abs(approximant_eval(H, 0, m, z) - f0_closed_form(a, z)) <= 1e-8
    a = corner_point(GAUSS, 4.0)
    assert f0_closed_form(a, 0) == pytest.approx(2 * a.real)
    assert approximant_eval(GAUSS, 0, 4.0, 0) == pytest.approx(2 * a.real, abs=1e-10)


def test_path_independence_for_even_kernels():
    for H, m in ((GAUSS, 9.0), (QUARTIC, 16.0)):
        for n in (1, 4):
            for z in (0.0, 1.0, 0.5j):
                tol = 1e-10
                three = approximant_eval(H, n, m, z, tol)
                straight = approximant_straight(H, n, m, z, tol)
                assert abs(three - straight) <= 2 * tol * max(1.0, abs(three))


def test_convergence_ladder():
    for z in (0.0, 1.0, 0.5j):
        F = fourier_eval(GAUSS, z)
        errs = [abs(approximant_eval(GAUSS, m, m, z) - F) for m in (8, 32, 128)]
        assert errs[0] > errs[1] > errs[2]


def test_real_zero_examples():
    rep = real_zero_verdict(gaussian_closed_form)
    assert rep.count == 0 and rep.sign_changes == 0 and rep.passed
    rep = real_zero_verdict(lambda z: fourier_eval(QUARTIC, z))
    assert rep.count == 0 and rep.sign_changes >= 2 and rep.passed
    rep = real_zero_verdict(Poly([1, 0, 1]), x_range=(-2, 2), y_band=(0.5, 2))
    assert rep.count == 1 and not rep.passed
    with pytest.raises(NotRealOnAxis):
        real_zero_verdict(lambda z: np.exp(1j * z))


def test_fourier_cor_examples():
    assert fourier_cor_check(gamma_from_poly(Poly([0, 0, 0, 0, -1])), 2).status == Status.PASS
    assert list(gamma_from_poly(Poly([0, 0, 0, 0, -1]))) == [0, 0, 0, 0, -24]
    assert fourier_cor_check(gamma_from_poly(Poly([0, 0, 0, 0, 1])), 2).status == Status.COUNTEREXAMPLE
    # with K = 1 the sign rule asks for gamma_2 > 0
    assert fourier_cor_check([0, 0, 2], 1).status == Status.PASS
    assert fourier_cor_check([0, 0, -2], 1).status == Status.COUNTEREXAMPLE
    assert fourier_cor_check([0, 0, 2, 0, 5], 1).status == Status.COUNTEREXAMPLE
    assert fourier_cor_check([0, 0, 2], 1, h_prime_lp=False).status == Status.INCONCLUSIVE
    with pytest.raises(PrefixTooShort):
        fourier_cor_check([0, 0], 1)


def test_jensen_examples():
    assert abs(1 + 0 / 10) ** 10 == math.exp(0)
    assert abs(1 - 1 / 10) ** 10 == pytest.approx(0.3486784401)
    assert abs(1 - 1 / 10) ** 10 <= math.exp(-0.5)
    n = 10
    z = -n * 0.9 + 0.1j * n
    assert abs(1 + z / n) ** n <= math.exp(z.real / 2)
    v = jensen_bound_check([2, 10, 100])
    assert v.status == Status.PASS
    assert v.samples_used == 3 * (2500 + 7500)
