import math

import numpy as np
import pytest

from stripzeros import ops
from stripzeros.errors import NonReal, PreconditionFailed
from stripzeros.polycore import Poly, affine_compose
from stripzeros.stripcls import (
    SampleGrid,
    Status,
    classical_wronskian,
    enestrom_kakeya_check,
    hb_pencil_test,
    impart_test,
    in_Dmu_sampled,
    mu_wronskian,
)
from stripzeros.suites import random_stable_poly

ONE = Poly([1])
Z = Poly([0, 1])
XS = np.linspace(-3, 3, 13)


def random_real(rng, max_deg=6):
    return Poly(rng.normal(size=int(rng.integers(1, max_deg + 1)) + 1))


def test_mu_wronskian_examples():
    for mu in (0.1, 1.0, 3.0):
        assert np.allclose(mu_wronskian(ONE, Z, mu, XS), -1, atol=1e-12)
        assert np.allclose(mu_wronskian(Z, ONE, mu, XS), 1, atol=1e-12)
    f = Poly([1, -2, 0.5, 1])
    assert np.all(mu_wronskian(f, f, 0.7, XS) == 0)
    with pytest.raises(NonReal):
        mu_wronskian(Poly([1j, 1]), ONE, 1.0, XS)


def test_classical_wronskian_examples():
    assert classical_wronskian(ONE, Z, 1.5) == -1
    assert classical_wronskian(Z, Z, 1.5) == 0
    assert classical_wronskian(Z, Poly([0, 0, 1]), 2.0) == -4


def test_mu_wronskian_antisymmetry():
    rng = np.random.default_rng(0)
    for _ in range(50):
        f, g = random_real(rng), random_real(rng)
        mu = rng.uniform(0.05, 2)
        assert np.array_equal(mu_wronskian(f, g, mu, XS), -mu_wronskian(g, f, mu, XS))


def test_mu_wronskian_first_order_limit():
    rng = np.random.default_rng(1)
    for _ in range(30):
        f, g = random_real(rng), random_real(rng)
        ref = classical_wronskian(f, g, XS)
        errs = [np.max(np.abs(mu_wronskian(f, g, mu, XS) - ref)) for mu in (1e-2, 1e-3, 1e-4)]
        # the difference is even in mu, so it shrinks at least linearly
        C = errs[0] / 1e-2
        assert errs[1] <= C * 1e-3 * 1.01 + 1e-9
        assert errs[2] <= C * 1e-4 * 1.01 + 1e-9


def test_in_dmu_examples():
    assert in_Dmu_sampled(Poly([2j, 1]), 0.0).status == Status.PASS
    v = in_Dmu_sampled(Poly([-2j, 1]), 1.0)
    assert v.status == Status.COUNTEREXAMPLE
    assert v.witness is not None


def test_in_dmu_debruijn_lemma_instances():
    rng = np.random.default_rng(2)
    for _ in range(15):
        delta = rng.uniform(0.5, 2)
        lam = rng.uniform(0.1, 1.5) * delta
        p = ops.random_strip_poly(rng, int(rng.integers(2, 9)), delta)
        f = affine_compose(p, 1, 1j * lam)
        mu = math.sqrt(max(delta**2 - lam**2, 0.0))
        assert in_Dmu_sampled(f, mu).status == Status.PASS


def test_hb_pencil_examples():
    assert hb_pencil_test(Poly([-1, 0, 1]), Z, 0.0).status == Status.PASS
    v = hb_pencil_test(Poly([0, 0, 1]), ONE, 0.0)
    assert v.status == Status.COUNTEREXAMPLE
    g = Poly.from_roots([0.5j, -0.5j, 2]).real_part()
    assert hb_pencil_test(g, g * 0.3, 1.0).status == Status.PASS


def test_hb_pencil_stable_inclusion():
    rng = np.random.default_rng(3)
    for _ in range(10):
        f = random_stable_poly(rng, int(rng.integers(2, 7)))
        g, h = f.real_part(), f.imag_part()
        for mu in (0.0, 0.5, 1.0):
            assert hb_pencil_test(g, h, mu).status == Status.PASS


def interlacing_partner(roots, weights):
    """sum_i w_i g(z) / (z - r_i) for g with simple real roots r_i."""
    out = Poly([0])
    for i, w in enumerate(weights):
        out = out + Poly.from_roots(np.delete(roots, i)) * float(w)
    return out.real_part()


def test_hb_pencil_cone_property():
    rng = np.random.default_rng(4)
    for _ in range(4):
        deg = int(rng.integers(2, 6))
        r = np.sort(rng.uniform(-3, 3, deg))
        g = Poly.from_roots(r).real_part()
        h1 = interlacing_partner(r, rng.uniform(0.2, 2, deg))
        h2 = interlacing_partner(r, rng.uniform(0.2, 2, deg))
        for mu in (0.0, 0.5):
            assert hb_pencil_test(g, h1, mu).status == Status.PASS
            assert hb_pencil_test(g, h2, mu).status == Status.PASS
            for t in (0.25, 0.5, 0.75):
                assert hb_pencil_test(g, h1 * t + h2 * (1 - t), mu).status == Status.PASS


def test_enestrom_kakeya_examples():
    assert enestrom_kakeya_check(Poly([1, 1, 1])).status == Status.PASS
    assert enestrom_kakeya_check(Poly([1, 2, 3])).status == Status.PASS
    with pytest.raises(PreconditionFailed):
        enestrom_kakeya_check(Poly([3, 2, 1]))


def test_impart_examples():
    assert impart_test(Poly([1, 0, 1]), 1.0).status == Status.PASS
    v = impart_test(Poly([4, 0, 1]), 1.0)
    assert v.status == Status.PASS
    assert v.witness is not None
    assert impart_test(ONE, 1.0).status == Status.INCONCLUSIVE


def test_sample_grid_is_open_below_and_deterministic():
    g = SampleGrid.above(1.0)
    pts = g.points()
    assert np.all(pts.imag > 1.0)
    assert np.array_equal(pts, SampleGrid.above(1.0).points())
    assert len(pts) == 60 * 40 + 500
