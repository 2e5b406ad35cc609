"""Operator symbols in two variables and sampled stability tests on them.

A linear operator on polynomials of degree <= n is stored as the table of
its images ``T(z^k)``. From the table we build the algebraic symbol
``T((z+w)^n)``, the truncated transcendental symbol ``T(e^{-zw})``, and the
symbol ``sum_k Q_k(z) w^k`` of a finite differential operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence

import numpy as np

from .errors import MalformedInput, TableTooShort, ZeroPolynomial
from .ops import DiffOp, apply, random_complex_strip_poly, random_strip_poly
from .polycore import Poly, derivative
from .roots import Strip, find_roots
from .stripcls import SampleGrid, Status, Verdict

__all__ = [
    "BivarTrunc",
    "LinearOpTable",
    "HalfPlane",
    "algebraic_symbol",
    "transcendental_symbol",
    "finite_diffop_symbol",
    "bistability_sample_test",
    "strip_char_falsify",
    "diffop_symbol_oracle",
    "rz_example_table",
]


@dataclass(frozen=True)
class BivarTrunc:
    """coeffs[j, k] multiplies z^j w^k."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_2d(np.array(self.coeffs, dtype=complex))
        if c.ndim != 2 or c.size == 0:
            raise MalformedInput("bivariate coefficients must be a non-empty 2-D array")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def max_z(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def max_w(self) -> int:
        return self.coeffs.shape[1] - 1

    @property
    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def __call__(self, z, w):
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        c = self.coeffs
        acc = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for j in range(c.shape[0] - 1, -1, -1):
            inner = np.zeros_like(acc) + c[j, -1]
            for k in range(c.shape[1] - 2, -1, -1):
                inner = inner * w + c[j, k]
            acc = acc * z + inner
        return complex(acc) if acc.ndim == 0 else acc

    def at_w(self, w0: complex) -> Poly:
        """Univariate polynomial in z obtained by fixing w = w0."""
        powers = np.power(complex(w0), np.arange(self.coeffs.shape[1]))
        return Poly(self.coeffs @ powers)

    def at_z(self, z0: complex) -> Poly:
        powers = np.power(complex(z0), np.arange(self.coeffs.shape[0]))
        return Poly(powers @ self.coeffs)

    def scale_w(self, a: complex) -> "BivarTrunc":
        """Symbol with w replaced by a*w."""
        return BivarTrunc(self.coeffs * np.power(complex(a), np.arange(self.coeffs.shape[1]))[None, :])

    def truncate(self, max_z: int, max_w: int) -> "BivarTrunc":
        out = np.zeros((max_z + 1, max_w + 1), dtype=complex)
        a = min(max_z + 1, self.coeffs.shape[0])
        b = min(max_w + 1, self.coeffs.shape[1])
        out[:a, :b] = self.coeffs[:a, :b]
        return BivarTrunc(out)


@dataclass(frozen=True)
class LinearOpTable:
    """A linear map on polynomials of degree <= n, given by images[k] = T(z^k)."""

    images: tuple

    def __init__(self, images: Sequence[Poly]):
        imgs = tuple(images)
        if not imgs:
            raise MalformedInput("an operator table needs at least one image")
        object.__setattr__(self, "images", imgs)

    @property
    def n(self) -> int:
        return len(self.images) - 1

    def require(self, n: int):
        if self.n < n:
            raise TableTooShort(f"table covers degree {self.n}, need {n}")

    def apply(self, p: Poly) -> Poly:
        deg = len(p.coeffs) - 1
        self.require(deg)
        out = Poly([0])
        for ck, img in zip(p.coeffs, self.images):
            if ck != 0:
                out = out + ck * img
        return out

    def image_matrix(self, n: Optional[int] = None) -> np.ndarray:
        """Column k holds the coefficients of T(z^k)."""
        n = self.n if n is None else n
        rows = max(len(img.coeffs) for img in self.images[: n + 1])
        M = np.zeros((rows, n + 1), dtype=complex)
        for k, img in enumerate(self.images[: n + 1]):
            M[: len(img.coeffs), k] = img.coeffs
        return M

    def numeric_rank(self, n: Optional[int] = None, rel: float = 1e-10) -> int:
        sv = np.linalg.svd(self.image_matrix(n), compute_uv=False)
        if sv.size == 0 or sv[0] == 0:
            return 0
        return int(np.sum(sv > rel * sv[0]))

    def to_json(self) -> dict:
        return {"images": [p.to_json() for p in self.images]}

    @classmethod
    def from_json(cls, d: dict) -> "LinearOpTable":
        if not isinstance(d, dict) or "images" not in d:
            raise MalformedInput("operator table JSON needs an 'images' list")
        return cls([Poly.from_json(x) for x in d["images"]])

    # constructors

    @classmethod
    def from_diffop(cls, op: DiffOp, n: int) -> "LinearOpTable":
        return cls([apply(op, Poly.monomial(k)) for k in range(n + 1)])

    @classmethod
    def from_map(cls, fn: Callable[[Poly], Poly], n: int) -> "LinearOpTable":
        return cls([fn(Poly.monomial(k)) for k in range(n + 1)])

    @classmethod
    def identity(cls, n: int) -> "LinearOpTable":
        return cls([Poly.monomial(k) for k in range(n + 1)])

    @classmethod
    def zero(cls, n: int) -> "LinearOpTable":
        return cls([Poly([0])] * (n + 1))

    @classmethod
    def derivative(cls, n: int) -> "LinearOpTable":
        return cls([derivative(Poly.monomial(k)) for k in range(n + 1)])

    @classmethod
    def multiplier(cls, gamma: Sequence[float]) -> "LinearOpTable":
        return cls([Poly.monomial(k, g) for k, g in enumerate(gamma)])

    @classmethod
    def scale(cls, a: complex, n: int) -> "LinearOpTable":
        """p(z) -> p(a z)."""
        return cls([Poly.monomial(k, complex(a) ** k) for k in range(n + 1)])

    def then(self, other: "LinearOpTable") -> "LinearOpTable":
        """Table of ``other`` applied after ``self``."""
        return LinearOpTable([other.apply(img) for img in self.images])


def _poly_in_z_times_w(q: Poly, k: int, out: np.ndarray, coef: complex):
    c = q.coeffs
    if q.is_zero:
        return
    if len(c) > out.shape[0]:
        raise ValueError("symbol array too small")
    out[: len(c), k] += coef * c


def _assemble(terms, max_w: int) -> BivarTrunc:
    """terms: iterable of (k, coef, Poly) meaning coef * w^k * Q(z)."""
    terms = list(terms)
    rows = max((len(q.coeffs) for _, _, q in terms), default=1)
    out = np.zeros((rows, max_w + 1), dtype=complex)
    for k, coef, q in terms:
        _poly_in_z_times_w(q, k, out, coef)
    return BivarTrunc(out)


def algebraic_symbol(T: LinearOpTable, n: int) -> BivarTrunc:
    """T((z + w)^n) with T acting on z: sum_k C(n,k) w^{n-k} T(z^k)."""
    T.require(n)
    return _assemble(((n - k, math.comb(n, k), T.images[k]) for k in range(n + 1)), n)


def transcendental_symbol(T: LinearOpTable, N: int) -> BivarTrunc:
    """T(e^{-zw}) truncated at w-order N: sum_k (-1)^k w^k / k! T(z^k)."""
    T.require(N)
    return _assemble((((k, (-1) ** k / math.factorial(k), T.images[k]) for k in range(N + 1))), N)


def finite_diffop_symbol(Q: Sequence[Poly]) -> BivarTrunc:
    """sum_k Q_k(z) w^k for the operator sum_k Q_k(z) D^k."""
    if not Q:
        raise MalformedInput("need at least one coefficient polynomial")
    return _assemble(((k, 1.0, q) for k, q in enumerate(Q)), len(Q) - 1)


def diffop_symbol_oracle(series: Sequence[complex], N: int, max_z: int) -> BivarTrunc:
    """Truncation of f(-w) e^{-zw} for f(D) = sum a_k D^k, built by series product."""
    a = np.zeros(N + 1, dtype=complex)
    s = np.asarray(series, dtype=complex)[: N + 1]
    a[: len(s)] = s
    fneg = a * (-1.0) ** np.arange(N + 1)
    out = np.zeros((max_z + 1, N + 1), dtype=complex)
    for j in range(min(max_z, N) + 1):
        # e^{-zw} contributes (-1)^j z^j w^j / j!
        e = (-1) ** j / math.factorial(j)
        out[j, j:] += e * fneg[: N + 1 - j]
    return BivarTrunc(out)


# --- sampled stability tests ---------------------------------------------------


@dataclass(frozen=True)
class HalfPlane:
    """Open half-plane {Im v > c} (upper=True) or {Im v < c}."""

    c: float = 0.0
    upper: bool = True

    def contains(self, v, slack: float = 0.0):
        v = np.asarray(v)
        if self.upper:
            return v.imag > self.c + slack
        return v.imag < self.c - slack

    def samples(self, n_det: int = 200, n_rand: int = 300, seed: int = 0,
                x_span: float = 10.0, depth: float = 5.0) -> np.ndarray:
        """Deterministic lattice then seeded random points inside the half-plane."""
        nx = max(1, int(round(math.sqrt(n_det * 2))))
        ny = max(1, n_det // nx)
        xs = np.linspace(-x_span, x_span, nx)
        ds = depth * np.arange(1, ny + 1) / ny
        X, Dd = np.meshgrid(xs, ds)
        det = (X + 1j * (self.c + (Dd if self.upper else -Dd))).ravel()[:n_det]
        rng = np.random.default_rng(seed)
        rx = rng.uniform(-x_span, x_span, n_rand)
        rd = depth * (1.0 - rng.uniform(0, 1, n_rand))  # in (0, depth]
        rnd = rx + 1j * (self.c + (rd if self.upper else -rd))
        return np.concatenate([det, rnd])


def bistability_sample_test(F: BivarTrunc, zone_z: HalfPlane, zone_w: HalfPlane,
                            grid: Optional[SampleGrid] = None, slack: float = 1e-9,
                            exp_factor: Optional[str] = None, n_det: int = 200,
                            n_rand: int = 300) -> Verdict:
    """Sampled test that F(z, w) != 0 whenever z is in zone_z and w in zone_w.

    For each sampled w the specialization F(., w) is root-solved in z. An
    exponential factor such as e^{i mu w} never vanishes; pass its name as
    ``exp_factor`` and it is only recorded in the note.
    """
    if F.is_zero:
        raise ZeroPolynomial("symbol is identically zero")
    seed = grid.seed if grid is not None else 0
    ws = zone_w.samples(n_det, n_rand, seed)
    note = []
    if exp_factor:
        note.append(f"zero-free factor {exp_factor} omitted from root checks")
    used = 0
    for w0 in ws:
        q = F.at_w(w0)
        used += 1
        if q.is_zero:
            return Verdict(Status.COUNTEREXAMPLE, witness=(complex(0), complex(w0)), samples_used=used,
                           note="specialization vanishes identically")
        if q.degree == 0:
            continue
        roots = find_roots(q).roots
        hit = roots[zone_z.contains(roots, slack)]
        if hit.size:
            return Verdict(Status.COUNTEREXAMPLE, witness=(complex(hit[0]), complex(w0)),
                           samples_used=used, note="; ".join(note + ["zero inside the zone pair"]))
    if not note:
        note.append("no zero found in the zone pair")
    return Verdict(Status.PASS, samples_used=used, note="; ".join(note))


def _probe_polys(mu: float, n: int, rng: np.random.Generator, n_random: int) -> List[Poly]:
    probes = [Poly([-1j * mu, 1]), Poly([1j * mu, 1])]
    if n >= 2:
        probes.append(Poly([mu * mu, 0, 1]))
    for _ in range(n_random):
        d = int(rng.integers(1, n + 1))
        if rng.random() < 0.5:
            probes.append(random_complex_strip_poly(rng, d, mu))
        else:
            probes.append(random_strip_poly(rng, d, mu))
    return [p for p in probes if p.degree is not None and p.degree <= n]


def strip_char_falsify(T: LinearOpTable, mu: float, n: int, grid: Optional[SampleGrid] = None,
                       n_random: int = 200, tol: float = 1e-8) -> Verdict:
    """Push strip-rooted inputs of degree <= n through T and look for escaped roots.

    Inputs are the boundary probes z - i mu, z + i mu, z^2 + mu^2 followed by
    seeded random complex and real polynomials with roots in |Im z| <= mu.
    Zero outputs are accepted.
    """
    T.require(n)
    seed = grid.seed if grid is not None else 0
    rng = np.random.default_rng(seed)
    rank = T.numeric_rank(n)
    notes = []
    if rank <= 1:
        notes.append(f"image rank {rank}: rank-one branch, functional not validated")
    strip = Strip(mu)
    zero_outputs = 0
    used = 0
    for p in _probe_polys(mu, n, rng, n_random):
        q = T.apply(p)
        used += 1
        scale = max(float(np.max(np.abs(p.coeffs))), 1.0)
        q = q.trimmed(1e-13) if not q.is_zero else q
        if q.is_zero or float(np.max(np.abs(q.coeffs))) <= 1e-14 * scale:
            zero_outputs += 1
            continue
        if q.degree == 0:
            continue
        rs = find_roots(q)
        out = rs.roots[~strip.contains(rs.roots, tol)]
        if out.size:
            k = int(np.argmax(np.abs(out.imag)))
            notes.append("output root escapes the strip")
            return Verdict(Status.COUNTEREXAMPLE, witness={"input": p, "escaped_root": complex(out[k])},
                           samples_used=used, note="; ".join(notes))
    if zero_outputs:
        notes.append(f"{zero_outputs} zero outputs accepted")
    notes.append("sampled test: PASS means no escaped root found")
    return Verdict(Status.PASS, samples_used=used, note="; ".join(notes))


def rz_example_table(n: int) -> LinearOpTable:
    """p -> (e^{-3 D^2 / 8} p)(z / 2): a strip-narrowing map composed with a scaling."""
    from .ops import op_gauss

    gauss = LinearOpTable.from_diffop(op_gauss(3.0 / 8.0, max(n, 1)), n)
    return gauss.then(LinearOpTable.scale(0.5, n))
