import math

import numpy as np
import pytest

from stripzeros import ops
from stripzeros.errors import TableTooShort, ZeroPolynomial
from stripzeros.polycore import Poly
from stripzeros.stripcls import SampleGrid, Status
from stripzeros.symbolmod import (
    BivarTrunc,
    HalfPlane,
    LinearOpTable,
    algebraic_symbol,
    bistability_sample_test,
    diffop_symbol_oracle,
    finite_diffop_symbol,
    rz_example_table,
    strip_char_falsify,
    transcendental_symbol,
)


def coeffs(G, shape):
    out = np.zeros(shape, complex)
    c = G.coeffs
    out[: c.shape[0], : c.shape[1]] = c
    return out


def test_algebraic_symbol_examples():
    G = algebraic_symbol(LinearOpTable.identity(2), 2)
    assert np.array_equal(coeffs(G, (3, 3)), [[0, 0, 1], [0, 2, 0], [1, 0, 0]])
    G = algebraic_symbol(LinearOpTable.derivative(2), 2)
    assert np.array_equal(coeffs(G, (3, 3)), [[0, 2, 0], [2, 0, 0], [0, 0, 0]])
    G = algebraic_symbol(LinearOpTable.multiplier([1, 1, 2]), 2)
    assert np.array_equal(coeffs(G, (3, 3)), [[0, 0, 1], [0, 2, 0], [2, 0, 0]])


def test_transcendental_symbol_examples():
    N = 6
    G = transcendental_symbol(LinearOpTable.identity(N), N)
    expect = np.zeros((N + 1, N + 1))
    for k in range(N + 1):
        expect[k, k] = (-1) ** k / math.factorial(k)
    assert np.allclose(coeffs(G, (N + 1, N + 1)), expect, atol=1e-15)
    a1 = 0.7
    T = LinearOpTable.from_diffop(ops.DiffOp([1, a1] + [0] * N), N)
    G = transcendental_symbol(T, N)
    oracle = diffop_symbol_oracle([1, a1], N, N)
    assert np.max(np.abs(coeffs(G, (N + 1, N + 1)) - coeffs(oracle, (N + 1, N + 1)))) <= 1e-15
    assert transcendental_symbol(LinearOpTable.zero(N), N).is_zero


def test_symbol_consistency_for_built_in_operators():
    N = 10
    for op in (ops.op_gauss(0.8, N), ops.op_sinc(1.2, N), ops.op_debruijn(0.5, 0.9, N), ops.op_bessel0(N)):
        G = transcendental_symbol(LinearOpTable.from_diffop(op, N), N)
        oracle = diffop_symbol_oracle(op.series, N, N)
        assert np.max(np.abs(coeffs(G, (N + 1, N + 1)) - coeffs(oracle, (N + 1, N + 1)))) <= 1e-12


def test_finite_diffop_symbol_examples():
    assert np.array_equal(coeffs(finite_diffop_symbol([Poly([1])]), (1, 1)), [[1]])
    G = finite_diffop_symbol([Poly([1]), Poly([0, 1])])
    assert np.array_equal(coeffs(G, (2, 2)), [[1, 0], [0, 1]])
    G = finite_diffop_symbol([Poly([0, 0, 1]), Poly([0]), Poly([1])])
    assert np.array_equal(coeffs(G, (3, 3)), [[0, 0, 1], [0, 0, 0], [1, 0, 0]])


def test_table_errors_and_round_trip():
    T = LinearOpTable.identity(3)
    with pytest.raises(TableTooShort):
        T.require(5)
    back = LinearOpTable.from_json(T.to_json())
    assert back.n == T.n
    assert all(a == b for a, b in zip(back.images, T.images))


def test_bistability_examples():
    F = finite_diffop_symbol([Poly([1]), Poly([0, 1])])
    v = bistability_sample_test(F, HalfPlane(1.0, True), HalfPlane(0.0, True))
    assert v.status == Status.COUNTEREXAMPLE
    z, w = v.witness
    assert abs(F(z, w)) <= 1e-9
    v = bistability_sample_test(BivarTrunc([[1.0]]), HalfPlane(1.0, True), HalfPlane(0.0, True),
                                exp_factor="e^{-zw}")
    assert v.status == Status.PASS
    assert "zero-free factor" in v.note
    G = BivarTrunc([[0, -1], [1, 0]])  # z - w
    assert bistability_sample_test(G, HalfPlane(1.0, True), HalfPlane(-1.0, False)).status == Status.PASS
    with pytest.raises(ZeroPolynomial):
        bistability_sample_test(BivarTrunc([[0.0]]), HalfPlane(), HalfPlane())


def test_degree_restriction_coherence():
    n = 6
    for op in (ops.op_gauss(1.0, n), ops.op_sinc(1.0, n), ops.op_debruijn(0.5, 0.5, n)):
        T = LinearOpTable.from_diffop(op, n)
        verdicts = [
            bistability_sample_test(algebraic_symbol(T, m), HalfPlane(1.0, True), HalfPlane(0.0, True),
                                    n_det=60, n_rand=60).status
            for m in range(1, n + 1)
        ]
        assert verdicts[-1] == Status.PASS
        assert all(s == Status.PASS for s in verdicts)


def test_strip_char_examples():
    T = LinearOpTable.from_diffop(ops.op_gauss(1.0, 8), 8)
    assert strip_char_falsify(T, 1.0, 8, n_random=60).status == Status.PASS
    assert strip_char_falsify(LinearOpTable.identity(8), 1.0, 8, n_random=60).status == Status.PASS
    v = strip_char_falsify(rz_example_table(8), 1.0, 8)
    assert v.status == Status.COUNTEREXAMPLE
    assert v.witness["input"] == Poly([-1j, 1])
    assert abs(v.witness["escaped_root"] - 2j) <= 1e-9


def test_strip_char_never_fires_on_narrowing_operators():
    n = 8
    for op in (ops.op_gauss(0.5, n), ops.op_sinc(1.0, n), ops.op_debruijn(0.5, 0.5, n), ops.op_bessel0(n)):
        T = LinearOpTable.from_diffop(op, n)
        for seed in range(10):
            v = strip_char_falsify(T, 1.0, n, SampleGrid(seed=seed), n_random=40)
            assert v.status != Status.COUNTEREXAMPLE


def test_then_composes_in_application_order():
    n = 4
    D = LinearOpTable.derivative(n)
    S = LinearOpTable.scale(2.0, n)
    p = Poly([1, 1, 1, 1, 1])
    # scale after derivative: p'(2z)
    got = D.then(S).apply(p)
    assert np.allclose(got.coeffs, [1, 4, 12, 32])
