"""Acceptance criteria, one test per criterion.

Each test prints a single "criterion N: PASS|FAIL ..." line (also collected
into the terminal summary) and then asserts. Tolerances, case counts and
runtime limits are pinned here and not derived from the code under test.
"""

import time

from conftest import ACCEPTANCE_LINES

from stripzeros import ops
from stripzeros.polycore import Poly
from stripzeros.roots import width_of
from stripzeros.stripcls import Status
from stripzeros.suites import cos_limit_deviation, run_suite
from stripzeros.symbolmod import rz_example_table, strip_char_falsify


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    return ok


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


def failing(rep):
    return [c for c in rep.cases if c["status"] != "PASS"]


def test_criterion_1_debruijn_narrowing():
    rep, secs = timed(run_suite, "debruijn", seed=0, n=300, tol=1e-8)
    sharp = [c for c in rep.cases if c.get("kind") == "sharpness"]
    bound = [c for c in rep.cases if c.get("kind") != "sharpness"]
    ok = len(bound) == 300 and len(sharp) >= 3 and not failing(rep) and secs < 5.0
    assert report(1, ok, f"{len(bound)} bound cases, {len(sharp)} sharpness witnesses, "
                         f"{len(failing(rep))} failures, {secs:.2f}s (limit 5s)")


def test_criterion_2_gaussian_narrowing():
    rep, secs = timed(run_suite, "gauss", seed=0, n=300, tol=1e-8)
    sharp = [c for c in rep.cases if c.get("kind") == "sharpness"]
    ok = len(rep.cases) >= 300 and sharp and not failing(rep) and secs < 5.0
    assert report(2, ok, f"{len(rep.cases)} cases incl. {len(sharp)} collapse witnesses, "
                         f"{len(failing(rep))} failures, {secs:.2f}s (limit 5s)")


def test_criterion_3_strong_operators():
    rep, secs = timed(run_suite, "stab-strip", seed=0, n=2400, tol=1e-8)
    combos = {}
    for c in rep.cases:
        key = (str(c["inputs"]["h"]), c["inputs"]["lam"])
        combos[key] = combos.get(key, 0) + 1
    ok = len(combos) == 12 and min(combos.values()) >= 200 and not failing(rep) and secs < 10.0
    assert report(3, ok, f"{len(combos)} (h, lam) combinations x >= {min(combos.values())} cases, "
                         f"{len(failing(rep))} failures, {secs:.2f}s (limit 10s)")


def test_criterion_4_cosine_transform_operators():
    rep = run_suite("integral-shrink", seed=0, n=200, tol=1e-8)
    kinds = {c["inputs"].get("g") for c in rep.cases if "g" in c["inputs"]}
    q = ops.apply(ops.op_sinc(1.0, 2), Poly([1, 0, 1]))
    exact = q == Poly([2 / 3, 0, 1]) or max(abs(q.coeffs - [2 / 3, 0, 1])) <= 1e-15
    w = width_of(q)
    ok = (not failing(rep) and kinds == {"one", "t", "t2", "expm1", "bessel0"} and exact
          and abs(w - (2 / 3) ** 0.5) <= 1e-10)
    assert report(4, ok, f"{len(rep.cases) - 1} bound cases over g in {sorted(kinds)}, "
                         f"{len(failing(rep))} failures; sinc on z^2+1 -> {q}, width {w:.12f}")


def test_criterion_5_cos_limit():
    # stated deviation: (cos(sqrt(lam/n) D))^n against exp(-lam D^2) on degree-6 inputs
    import numpy as np

    lam = 1.0
    worst_limit = 0.0
    monotone = True
    for i in range(5):
        p = ops.random_strip_poly(np.random.default_rng([0, i]), 6, 1.0)
        devs = [cos_limit_deviation(p, lam, n) for n in (10, 20, 40, 80)]
        monotone &= all(b < a for a, b in zip(devs, devs[1:]))
        worst_limit = max(worst_limit, cos_limit_deviation(p, lam, 10_000))
    ok = monotone and worst_limit <= 1e-3
    assert report(5, ok, f"ladder decreasing: {monotone}; deviation at n = 10^4: {worst_limit:.4g} (limit 1e-3)")


def test_criterion_6_enestrom_kakeya():
    rep = run_suite("enestrom-kakeya", seed=0, n=500)
    worst = max(c["observed"] for c in rep.cases)
    ok = len(rep.cases) == 500 and not failing(rep) and worst <= 1 + 1e-8
    assert report(6, ok, f"{len(rep.cases)} cases, max root modulus {worst:.12g}")


def test_criterion_7_class_tests():
    dmu = run_suite("dmu", seed=0, n=100)
    hb = run_suite("hb-pencil", seed=0, n=100)
    control = [c for c in hb.cases if c["inputs"].get("negative_control")]
    ok = (len(dmu.cases) == 100 and not failing(dmu) and len(hb.cases) - len(control) == 100
          and len(control) == 1 and not failing(hb))
    assert report(7, ok, f"lemma instances {len(dmu.cases) - len(failing(dmu))}/100; "
                         f"pencil pairs {len(hb.cases) - len(control) - len(failing(hb))}/100; "
                         f"z^2,1 control {'rejected' if not failing(hb) else 'NOT rejected'}")


def test_criterion_8_rz_negative_control():
    v = strip_char_falsify(rz_example_table(8), 1.0, 8)
    ok = (v.status is Status.COUNTEREXAMPLE and v.witness["input"] == Poly([-1j, 1])
          and abs(v.witness["escaped_root"] - 2j) <= 1e-9)
    detail = v.status.value
    if v.witness:
        detail += f" with input {v.witness['input']} and escaped root {v.witness['escaped_root']:.12g}"
    assert report(8, ok, detail)


def test_criterion_9_fourier():
    rep, secs = timed(run_suite, "fourier", seed=0)
    by_kind = {}
    for c in rep.cases:
        by_kind.setdefault(c.get("kind"), []).append(c)
    quad = by_kind.get("quadrature_oracle", [])
    f0 = by_kind.get("F0m_closed_form", [])
    zero = by_kind.get("real_zero", [])
    ok = (len(quad) == 25 and all(c["observed"] <= 1e-9 for c in quad)
          and f0 and all(c["observed"] <= 1e-8 for c in f0)
          and len(zero) == 1 and zero[0]["observed"] == 0 and zero[0]["sign_changes"] >= 2
          and not failing(rep) and secs < 30.0)
    assert report(9, ok, f"max quadrature error {max(c['observed'] for c in quad):.2e} on 25 points; "
                         f"max F0m error {max(c['observed'] for c in f0):.2e}; "
                         f"-t^4 zero count {zero[0]['observed']}, sign changes {zero[0]['sign_changes']}; "
                         f"{secs:.2f}s (limit 30s)")


def test_criterion_10_fock_bound():
    rep = run_suite("fock-bound", seed=0, n=100)
    worst = min(c["margin"] for c in rep.cases)
    ok = len(rep.cases) == 100 and worst >= -1e-9
    assert report(10, ok, f"{len(rep.cases)} pairs, smallest relative margin {worst:.3e}")


def test_criterion_11_jensen():
    rep = run_suite("jensen", seed=0)
    ns = sorted(c["inputs"]["n"] for c in rep.cases)
    samples = [c["inputs"]["samples"] for c in rep.cases]
    ok = ns == [2, 10, 100] and all(s >= 10_000 for s in samples) and not failing(rep)
    assert report(11, ok, f"n in {ns}, {min(samples)} wedge samples each, {len(failing(rep))} counterexamples")
