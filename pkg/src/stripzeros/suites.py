"""Verification suites: seeded batches of cases, one suite per narrowing or class claim.

Every case is generated from ``default_rng([seed, index])`` so results do
not depend on evaluation order or thread count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from . import ops
from .fock import bound_check
from .fourier import (
    KernelPoly,
    approximant_eval,
    corner_point,
    f0_closed_form,
    fourier_cor_check,
    fourier_eval,
    gamma_from_poly,
    gaussian_closed_form,
    jensen_bound_check,
    real_zero_verdict,
)
from .polycore import Poly, affine_compose
from .roots import find_roots, strip_width, width_of
from .stripcls import (
    SampleGrid,
    Status,
    enestrom_kakeya_check,
    hb_pencil_test,
    impart_test,
    in_Dmu_sampled,
)
from .symbolmod import (
    BivarTrunc,
    HalfPlane,
    LinearOpTable,
    bistability_sample_test,
    diffop_symbol_oracle,
    finite_diffop_symbol,
    rz_example_table,
    strip_char_falsify,
    transcendental_symbol,
)

PASS = Status.PASS.value
CE = Status.COUNTEREXAMPLE.value
INC = Status.INCONCLUSIVE.value


@dataclass
class SuiteReport:
    suite_id: str
    seed: int
    cases: List[dict] = field(default_factory=list)
    elapsed_ms: int = 0
    params: Dict[str, object] = field(default_factory=dict)

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, CE: 0, INC: 0}
        for c in self.cases:
            out[c["status"]] = out.get(c["status"], 0) + 1
        return out

    @property
    def all_pass(self) -> bool:
        return all(c["status"] == PASS for c in self.cases)

    def to_json(self) -> dict:
        return {
            "suite_id": self.suite_id,
            "seed": self.seed,
            "params": self.params,
            "elapsed_ms": self.elapsed_ms,
            "counts": self.counts(),
            "cases": self.cases,
        }

    @classmethod
    def from_json(cls, d: dict) -> "SuiteReport":
        return cls(d["suite_id"], int(d["seed"]), list(d.get("cases", [])),
                   int(d.get("elapsed_ms", 0)), dict(d.get("params", {})))


def case(inputs: dict, predicted, observed, margin, status: str, **extra) -> dict:
    d = {
        "inputs": inputs,
        "predicted": _num(predicted),
        "observed": _num(observed),
        "margin": _num(margin),
        "status": status,
    }
    d.update(extra)
    return d


def _num(v):
    if v is None:
        return None
    if isinstance(v, str):
        return v
    if isinstance(v, (complex, np.complexfloating)):
        return [float(v.real), float(v.imag)]
    return float(v)


def _coeffs(p: Poly) -> list:
    c = p.coeffs
    if p.is_real:
        return [float(x) for x in c.real]
    return [[float(x.real), float(x.imag)] for x in c]


def _bound_case(inputs, predicted, observed, tol) -> dict:
    margin = predicted + tol - observed
    return case(inputs, predicted, observed, margin, PASS if margin >= 0 else CE)


def _sharp_case(inputs, predicted, observed, tol) -> dict:
    margin = tol - abs(observed - predicted)
    return case(inputs, predicted, observed, margin, PASS if margin >= 0 else CE, kind="sharpness")


@dataclass
class Context:
    seed: int = 0
    n: Optional[int] = None
    tol: float = 1e-8
    threads: int = 1
    kernel: Optional[Poly] = None

    def rng(self, i: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, i])

    def map(self, fn: Callable[[int], dict], count: int) -> List[dict]:
        if self.threads > 1 and count > 1:
            with ThreadPoolExecutor(self.threads) as ex:
                return list(ex.map(fn, range(count)))
        return [fn(i) for i in range(count)]


MUS = (0.5, 1.0, 2.0)


# --- narrowing suites ---------------------------------------------------------


def suite_debruijn(ctx: Context) -> List[dict]:
    n = ctx.n or 300
    combos = [(mu, f * mu) for mu in MUS for f in (0.25, 0.6, 1.0, 1.5)]

    def one(i):
        mu, lam = combos[i % len(combos)]
        rng = ctx.rng(i)
        deg = int(rng.integers(2, 11))
        p = ops.random_strip_poly(rng, deg, mu)
        xi = complex(rng.normal(), rng.normal()) or 0.5
        op = ops.op_debruijn(xi, lam, deg)
        q = ops.apply(op, p).real_part()
        inputs = {"mu": mu, "lam": lam, "xi": [xi.real, xi.imag], "p": _coeffs(p)}
        return _bound_case(inputs, ops.predicted_width(op, mu), width_of(q), ctx.tol)

    cases = ctx.map(one, n)
    for mu, lam in combos:
        op = ops.op_debruijn(0.5, lam, 2)
        q = ops.apply(op, Poly([mu * mu, 0, 1]))
        cases.append(_sharp_case({"mu": mu, "lam": lam, "p": "z^2+mu^2"},
                                 ops.predicted_width(op, mu), width_of(q), 1e-10))
    return cases


def suite_gauss(ctx: Context) -> List[dict]:
    n = ctx.n or 300
    combos = [(mu, r * mu * mu) for mu in MUS for r in (0.1, 0.25, 0.5, 0.75)]

    def one(i):
        mu, lam = combos[i % len(combos)]
        rng = ctx.rng(i)
        deg = int(rng.integers(2, 11))
        p = ops.random_strip_poly(rng, deg, mu)
        op = ops.op_gauss(lam, deg)
        q = ops.apply(op, p).real_part()
        return _bound_case({"mu": mu, "lam": lam, "p": _coeffs(p)},
                           ops.predicted_width(op, mu), width_of(q), ctx.tol)

    cases = ctx.map(one, n)
    for mu, lam in combos:
        op = ops.op_gauss(lam, 2)
        cases.append(_sharp_case({"mu": mu, "lam": lam, "p": "z^2+mu^2"}, ops.predicted_width(op, mu),
                                 width_of(ops.apply(op, Poly([mu * mu, 0, 1]))), 1e-10))
    for mu in MUS:
        op = ops.op_gauss(mu * mu / 2, 2)
        cases.append(_sharp_case({"mu": mu, "lam": mu * mu / 2, "p": "z^2+mu^2"}, 0.0,
                                 width_of(ops.apply(op, Poly([mu * mu, 0, 1]))), 1e-9))
    return cases


STRONG_H = {
    "1": Poly([1]),
    "w-i": Poly([-1j, 1]),
    "(w-i)(w-2i)": Poly.from_roots([1j, 2j]),
    "w^2-2iw": Poly([0, -2j, 1]),
}


def suite_stab_strip(ctx: Context) -> List[dict]:
    n = ctx.n or 2400
    mu = 1.0
    combos = [(name, lam) for name in STRONG_H for lam in (0.0, 0.5, 1.0)]

    def one(i):
        name, lam = combos[i % len(combos)]
        rng = ctx.rng(i)
        deg = int(rng.integers(2, 11))
        p = ops.random_strip_poly(rng, deg, mu)
        pair = ops.op_strong(STRONG_H[name], lam, deg)
        q = ops.apply_strong_sum(pair, p)
        return _bound_case({"mu": mu, "lam": lam, "h": name, "p": _coeffs(p)},
                           ops.predicted_width(pair[0], mu), width_of(q), ctx.tol)

    return ctx.map(one, n)


MOMENT_KINDS = ("one", "t", "t2", "expm1")


def suite_integral_shrink(ctx: Context) -> List[dict]:
    n = ctx.n or 200
    combos = [(g, lam, mu) for g in MOMENT_KINDS + ("bessel0",) for lam in (0.5, 1.0, 2.0, 3.0)
              for mu in MUS]

    def one(i):
        g, lam, mu = combos[i % len(combos)]
        rng = ctx.rng(i)
        deg = int(rng.integers(2, 11))
        p = ops.random_strip_poly(rng, deg, mu)
        if g == "bessel0":
            op = ops.op_bessel0(deg)
            lam = 1.0
        else:
            op = ops.op_cosine_transform(ops.moments_closed_form(g, deg // 2 + 1), lam, deg)
        q = ops.apply(op, p).real_part()
        return _bound_case({"g": g, "lam": lam, "mu": mu, "p": _coeffs(p)},
                           ops.predicted_width(op, mu), width_of(q), ctx.tol)

    cases = ctx.map(one, n)
    q = ops.apply(ops.op_sinc(1.0, 2), Poly([1, 0, 1]))
    cases.append(_sharp_case({"op": "sinc", "lam": 1.0, "p": "z^2+1"}, math.sqrt(2 / 3), width_of(q), 1e-10))
    return cases


def suite_sinc(ctx: Context) -> List[dict]:
    n = ctx.n or 300
    combos = [(mu, f * mu) for mu in MUS for f in (0.25, 0.6, 1.0, 1.5, 2.0)]

    def one(i):
        mu, lam = combos[i % len(combos)]
        rng = ctx.rng(i)
        deg = int(rng.integers(2, 11))
        p = ops.random_strip_poly(rng, deg, mu)
        op = ops.op_sinc(lam, deg)
        q = ops.apply(op, p).real_part()
        return _bound_case({"mu": mu, "lam": lam, "p": _coeffs(p)},
                           ops.predicted_width(op, mu), width_of(q), ctx.tol)

    cases = ctx.map(one, n)
    for mu, lam in combos:
        op = ops.op_sinc(lam, 2)
        cases.append(_sharp_case({"mu": mu, "lam": lam, "p": "z^2+mu^2"}, ops.predicted_width(op, mu),
                                 width_of(ops.apply(op, Poly([mu * mu, 0, 1]))), 1e-10))
    return cases


def cos_limit_deviation(p: Poly, lam: float, n: int, scale: float = 1.0) -> float:
    """Max coefficient gap between (cos(sqrt(scale*lam/n) D))^n p and exp(-lam D^2) p.

    The gap is divided by the largest coefficient modulus of exp(-lam D^2) p
    so that it does not depend on how p is normalized.
    """
    deg = p.degree
    approx = ops.apply(ops.cos_power(scale * lam, n, deg), p)
    exact = ops.apply(ops.op_gauss(lam, deg), p)
    return float(np.max(np.abs((approx - exact).coeffs)) / np.max(np.abs(exact.coeffs)))


def suite_cos_limit(ctx: Context) -> List[dict]:
    """Deviation ladder for the cos-power limit as stated, plus the rescaled variant.

    The variant uses (cos(sqrt(2 lam/n) D))^n, whose limit is exp(-lam D^2).
    """
    n_polys = ctx.n or 5
    lam = 1.0
    ladder = (10, 20, 40, 80)
    cases = []
    for i in range(n_polys):
        rng = ctx.rng(i)
        p = ops.random_strip_poly(rng, 6, 1.0)
        for variant, scale in (("as_stated", 1.0), ("rescaled", 2.0)):
            prev = None
            for n in ladder:
                dev = cos_limit_deviation(p, lam, n, scale)
                inputs = {"variant": variant, "n": n, "lam": lam, "p": _coeffs(p)}
                if prev is None:
                    cases.append(case(inputs, None, dev, None, PASS, kind="ladder_start"))
                else:
                    margin = prev - dev
                    cases.append(case(inputs, prev, dev, margin, PASS if margin > 0 else CE, kind="ladder"))
                prev = dev
            dev = cos_limit_deviation(p, lam, 10_000, scale)
            margin = 1e-3 - dev
            cases.append(case({"variant": variant, "n": 10_000, "lam": lam, "p": _coeffs(p)}, 1e-3, dev,
                              margin, PASS if margin >= 0 else CE, kind="limit"))
    return cases


def random_ek_poly(rng: np.random.Generator, max_degree: int = 12) -> Poly:
    deg = int(rng.integers(1, max_degree + 1))
    inc = rng.exponential(1.0, deg + 1) * (rng.random(deg + 1) > 0.25)
    c = np.cumsum(inc)
    if c[-1] == 0:
        c[-1] = 1.0
    return Poly(c)


def suite_enestrom_kakeya(ctx: Context) -> List[dict]:
    n = ctx.n or 500

    def one(i):
        p = random_ek_poly(ctx.rng(i))
        v = enestrom_kakeya_check(p, ctx.tol)
        mx = float(np.max(np.abs(find_roots(p).roots))) if p.degree else 0.0
        return case({"p": _coeffs(p)}, 1.0, mx, 1.0 + ctx.tol - mx, v.status.value)

    return ctx.map(one, n)


def suite_multiplier(ctx: Context) -> List[dict]:
    n = ctx.n or 300
    fams = {
        "k": lambda k: k,
        "k+1": lambda k: k + 1,
        "k^2": lambda k: k * k,
        "2^k": lambda k: 2.0**k,
        "(k+1)(k+2)": lambda k: (k + 1) * (k + 2),
    }
    combos = [(name, alt, mu) for name in fams for alt in (False, True) for mu in MUS]

    def one(i):
        name, alt, mu = combos[i % len(combos)]
        rng = ctx.rng(i)
        deg = int(rng.integers(2, 11))
        if rng.random() < 0.5:
            p = ops.random_complex_strip_poly(rng, deg, mu)
        else:
            p = ops.random_strip_poly(rng, deg, mu)
        gamma = [fams[name](k) * ((-1) ** k if alt else 1) for k in range(deg + 1)]
        q = ops.apply_multiplier(ops.MultiplierOp(gamma), p)
        inputs = {"gamma": name, "alternating": alt, "mu": mu, "p": _coeffs(p)}
        return _bound_case(inputs, mu, width_of(q), ctx.tol)

    return ctx.map(one, n)


# --- class suites ----------------------------------------------------------------


def suite_dmu(ctx: Context) -> List[dict]:
    n = ctx.n or 100

    def one(i):
        rng = ctx.rng(i)
        delta = float(rng.uniform(0.2, 2.0))
        lam = float(rng.uniform(0.05, 2.0))
        p = ops.random_strip_poly(rng, int(rng.integers(2, 9)), delta)
        f = affine_compose(p, 1, 1j * lam)
        mu = math.sqrt(max(delta * delta - lam * lam, 0.0))
        v = in_Dmu_sampled(f, mu, SampleGrid.above(mu, seed=i))
        return case({"delta": delta, "lam": lam, "mu": mu, "p": _coeffs(p)}, None, None, None,
                    v.status.value, witness=v.to_json()["witness"])

    return ctx.map(one, n)


def random_stable_poly(rng: np.random.Generator, degree: int) -> Poly:
    """Roots x - iy with y in [0.1, 2], times a random unit-modulus constant."""
    xs = rng.uniform(-3, 3, degree)
    ys = rng.uniform(0.1, 2.0, degree)
    return Poly.from_roots(xs - 1j * ys, np.exp(2j * np.pi * rng.random()))


def suite_hb_pencil(ctx: Context) -> List[dict]:
    n = ctx.n or 100

    def one(i):
        rng = ctx.rng(i)
        f = random_stable_poly(rng, int(rng.integers(1, 9)))
        mu = (0.0, 0.5, 1.0)[i % 3]
        v = hb_pencil_test(f.real_part(), f.imag_part(), mu, tol=1e-8)
        return case({"f": _coeffs(f), "mu": mu}, None, None, None, v.status.value, note=v.note)

    cases = ctx.map(one, n)
    v = hb_pencil_test(Poly([0, 0, 1]), Poly([1]), 0.0)
    cases.append(case({"g": "z^2", "h": "1", "mu": 0.0, "negative_control": True}, CE, v.status.value,
                      None, PASS if v.status is Status.COUNTEREXAMPLE else CE, kind="negative_control"))
    return cases


def suite_impart(ctx: Context) -> List[dict]:
    n = ctx.n or 100

    def one(i):
        rng = ctx.rng(i)
        width = float(rng.uniform(0.2, 2.0))
        p = ops.random_strip_poly(rng, int(rng.integers(2, 9)), width)
        w = strip_width(find_roots(p))
        mu = w + 0.1 if i % 2 == 0 else max(w - 0.1, 0.0) * float(rng.uniform(0.3, 1.0))
        v = impart_test(p, mu, SampleGrid.above(mu, seed=i))
        return case({"mu": mu, "p": _coeffs(p)}, None, w, None, v.status.value, note=v.note)

    return ctx.map(one, n)


# --- symbols ---------------------------------------------------------------------


def _narrowing_tables(n: int):
    return {
        "gauss(1)": (LinearOpTable.from_diffop(ops.op_gauss(1.0, n), n), ops.op_gauss(1.0, n)),
        "sinc(1)": (LinearOpTable.from_diffop(ops.op_sinc(1.0, n), n), ops.op_sinc(1.0, n)),
        "cos(0.5D)": (LinearOpTable.from_diffop(ops.op_debruijn(0.5, 0.5, n), n), ops.op_debruijn(0.5, 0.5, n)),
        "J0(D)": (LinearOpTable.from_diffop(ops.op_bessel0(n), n), ops.op_bessel0(n)),
        "identity": (LinearOpTable.identity(n), ops.identity(n)),
    }


def suite_symbol(ctx: Context) -> List[dict]:
    seeds = ctx.n or 10
    deg = 8
    cases = []
    for name, (T, op) in _narrowing_tables(deg).items():
        err = float(np.max(np.abs(transcendental_symbol(T, deg).coeffs
                                  - diffop_symbol_oracle(op.series, deg, deg).coeffs)))
        cases.append(case({"op": name}, 0.0, err, 1e-12 - err, PASS if err <= 1e-12 else CE,
                          kind="symbol_consistency"))
    for s in range(seeds):
        for name, (T, _) in _narrowing_tables(deg).items():
            v = strip_char_falsify(T, 1.0, deg, SampleGrid(seed=ctx.seed * 1000 + s), n_random=60)
            status = CE if v.status is Status.COUNTEREXAMPLE else PASS
            cases.append(case({"op": name, "mu": 1.0, "n": deg, "seed": s}, None, None, None, status,
                              kind="strip_char", note=v.note))
    v = strip_char_falsify(rz_example_table(deg), 1.0, deg, SampleGrid(seed=ctx.seed))
    ok = False
    root = None
    if v.status is Status.COUNTEREXAMPLE:
        root = v.witness["escaped_root"]
        ok = v.witness["input"] == Poly([-1j, 1]) and abs(root - 2j) <= 1e-9
    cases.append(case({"op": "scale(1/2) after exp(-3D^2/8)", "negative_control": True}, 2j, root,
                      None if root is None else 1e-9 - abs(root - 2j), PASS if ok else CE,
                      kind="negative_control"))
    F = finite_diffop_symbol([Poly([1]), Poly([0, 1])])
    v = bistability_sample_test(F, HalfPlane(1.0, True), HalfPlane(0.0, True))
    cases.append(case({"F": "1+zw", "negative_control": True}, CE, v.status.value, None,
                      PASS if v.status is Status.COUNTEREXAMPLE else CE, kind="negative_control"))
    G = BivarTrunc([[0, -1], [1, 0]])
    v = bistability_sample_test(G, HalfPlane(1.0, True), HalfPlane(-1.0, False))
    cases.append(case({"F": "z-w"}, PASS, v.status.value, None, v.status.value, kind="bistability"))
    return cases


# --- norms, transforms, estimates --------------------------------------------------


def _fock_tables(rng: np.random.Generator, n: int):
    choice = int(rng.integers(0, 7))
    lam = float(rng.uniform(0.1, 2.0))
    if choice == 0:
        return f"gauss({lam:.3f})", LinearOpTable.from_diffop(ops.op_gauss(lam, n), n), min(1.0, 1.0 / lam)
    if choice == 1:
        return f"sinc({lam:.3f})", LinearOpTable.from_diffop(ops.op_sinc(lam, n), n), 0.25
    if choice == 2:
        xi = complex(rng.normal(), rng.normal())
        return f"debruijn({lam:.3f})", LinearOpTable.from_diffop(ops.op_debruijn(xi, lam, n), n), 0.25
    if choice == 3:
        return "J0(D)", LinearOpTable.from_diffop(ops.op_bessel0(n), n), 0.25
    if choice == 4:
        return "multiplier k+1", LinearOpTable.multiplier([k + 1 for k in range(n + 1)]), 0.25
    if choice == 5:
        return "derivative", LinearOpTable.derivative(n), 0.25
    return "identity", LinearOpTable.identity(n), 0.25


def suite_fock_bound(ctx: Context) -> List[dict]:
    n = ctx.n or 100

    def one(i):
        rng = ctx.rng(i)
        deg = int(rng.integers(0, 9))
        f = Poly(rng.normal(size=deg + 1) + 1j * rng.normal(size=deg + 1))
        name, T, a = _fock_tables(rng, deg)
        b = float(rng.uniform(0.5, 2.0))
        rep = bound_check(T, f, a, b, deg)
        rel = (rep.rhs - rep.lhs) / max(rep.rhs, 1e-300)
        return case({"T": name, "f": _coeffs(f), "a": a, "b": b, "N": deg}, rep.rhs, rep.lhs, rel,
                    PASS if rel >= -1e-9 else CE, truncated=rep.truncated)

    return ctx.map(one, n)


QUARTIC = Poly([0, 0, 0, 0, -1])


def suite_fourier(ctx: Context) -> List[dict]:
    kernel = ctx.kernel if ctx.kernel is not None else QUARTIC
    cases = []
    gk = Poly([0, 0, 1])
    x = np.linspace(-3 / math.sqrt(2), 3 / math.sqrt(2), 5)
    Z = (x[:, None] + 1j * x[None, :]).ravel()
    err = np.abs(fourier_eval(gk, Z) - gaussian_closed_form(Z))
    for z, e in zip(Z, err):
        cases.append(case({"kernel": "-t^2", "z": [z.real, z.imag]}, 0.0, float(e), 1e-9 - e,
                          PASS if e <= 1e-9 else CE, kind="quadrature_oracle"))
    zs = np.array([0.0, 0.5, 1.0, 2.0 - 0.5j, 0.3 + 1j])
    for H, m in ((gk, 4.0), (QUARTIC, 16.0), (Poly([0, 0, 1, 0, -1]), 2.0), (Poly([0.3, 0, 1, 0, -1]), 5.0)):
        a = corner_point(H, m)
        e = np.abs(approximant_eval(H, 0, m, zs) - f0_closed_form(a, zs))
        for z, ei in zip(zs, e):
            cases.append(case({"H": _coeffs(H), "m": m, "z": [z.real, z.imag]}, 0.0, float(ei), 1e-8 - ei,
                              PASS if ei <= 1e-8 else CE, kind="F0m_closed_form"))
    kp = KernelPoly(kernel)
    rep = real_zero_verdict(lambda z: fourier_eval(kp, z), (-8.0, 8.0), (0.05, 2.0))
    ok = rep.passed and rep.sign_changes >= 2
    cases.append(case({"H": _coeffs(kernel), "rect": list(rep.rect)}, 0, rep.count, None, PASS if ok else CE,
                      kind="real_zero", sign_changes=rep.sign_changes, h_prime_lp=kp.h_prime_lp))
    rep = real_zero_verdict(lambda z: z**2 + 1, (-2.0, 2.0), (0.5, 2.0))
    cases.append(case({"F": "z^2+1", "negative_control": True}, 1, rep.count, None,
                      PASS if rep.count == 1 and not rep.passed else CE, kind="negative_control"))
    v = fourier_cor_check(gamma_from_poly(QUARTIC), 2, KernelPoly(QUARTIC).h_prime_lp)
    cases.append(case({"H": "-t^4", "K": 2}, PASS, v.status.value, None, v.status.value, kind="sign_condition"))
    v = fourier_cor_check(gamma_from_poly(Poly([0, 0, 0, 0, 1])), 2)
    cases.append(case({"H": "t^4", "K": 2, "negative_control": True}, CE, v.status.value, None,
                      PASS if v.status is Status.COUNTEREXAMPLE else CE, kind="negative_control"))
    return cases


def suite_jensen(ctx: Context) -> List[dict]:
    cases = []
    for n in (2, 10, 100):
        v = jensen_bound_check([n], SampleGrid(x_range=(-1.0, 0.0), y_range=(-0.5, 0.5), nx=50, ny=50,
                                               extra_random=7500, seed=ctx.seed))
        cases.append(case({"n": n, "A": 1.0, "samples": v.samples_used}, None, None, None, v.status.value,
                          witness=v.to_json()["witness"]))
    return cases


SUITES: Dict[str, Callable[[Context], List[dict]]] = {
    "debruijn": suite_debruijn,
    "gauss": suite_gauss,
    "stab-strip": suite_stab_strip,
    "integral-shrink": suite_integral_shrink,
    "sinc": suite_sinc,
    "cos-limit": suite_cos_limit,
    "enestrom-kakeya": suite_enestrom_kakeya,
    "dmu": suite_dmu,
    "hb-pencil": suite_hb_pencil,
    "impart": suite_impart,
    "multiplier": suite_multiplier,
    "symbol": suite_symbol,
    "fock-bound": suite_fock_bound,
    "fourier": suite_fourier,
    "jensen": suite_jensen,
}


def run_suite(suite_id: str, seed: int = 0, n: Optional[int] = None, tol: float = 1e-8,
              threads: int = 1, kernel: Optional[Poly] = None) -> SuiteReport:
    if suite_id not in SUITES:
        raise KeyError(suite_id)
    ctx = Context(seed=seed, n=n, tol=tol, threads=threads, kernel=kernel)
    t0 = time.perf_counter()
    cases = SUITES[suite_id](ctx)
    for i, c in enumerate(cases):
        c["case"] = i
    ms = int(round(1000 * (time.perf_counter() - t0)))
    params = {"n": n, "tol": tol}
    if kernel is not None:
        params["kernel"] = _coeffs(kernel)
    return SuiteReport(suite_id, seed, cases, ms, params)
