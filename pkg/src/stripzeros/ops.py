"""Constant-coefficient differential operators acting exactly on polynomials.

An operator ``sum_k a_k D^k`` is stored by its series ``a_k``. On a
degree-n polynomial only ``a_0 .. a_n`` matter, so application is an exact
finite sum and the only numerical error downstream comes from root finding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Sequence, Tuple

import numpy as np

from .errors import (
    MalformedInput,
    MomentsMisordered,
    NoClaim,
    RootPlacement,
    TruncationTooShort,
    ZeroXi,
)
from .polycore import Poly
from .roots import find_roots

DEFAULT_ORDER = 40

FAMILIES = (
    "identity",
    "shift",
    "debruijn_cos",
    "gauss",
    "strong_pair_half",
    "sinc",
    "cosine_transform",
    "bessel0",
    "custom",
)


def _sqrt_pos(x: float) -> float:
    return math.sqrt(max(x, 0.0))


@dataclass(frozen=True)
class DiffOp:
    series: np.ndarray
    family: str = "custom"
    params: Dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        s = np.array(self.series, dtype=complex).ravel()
        if s.size == 0:
            raise MalformedInput("operator series must be non-empty")
        s.setflags(write=False)
        object.__setattr__(self, "series", s)
        if self.family not in FAMILIES:
            raise MalformedInput(f"unknown operator family {self.family!r}")

    @property
    def order(self) -> int:
        """Highest stored index."""
        return len(self.series) - 1

    @property
    def is_real(self) -> bool:
        return bool(np.all(self.series.imag == 0))

    def claimed_delta(self, mu: float) -> float:
        return predicted_width(self, mu)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": {k: _json_num(v) for k, v in self.params.items()},
            "series": [[float(c.real), float(c.imag)] for c in self.series],
        }


def _json_num(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    return v


@dataclass(frozen=True)
class MultiplierOp:
    """T(z^k) = gamma_k z^k on the stored prefix."""

    gamma: np.ndarray

    def __post_init__(self):
        g = np.array(self.gamma, dtype=float).ravel()
        g.setflags(write=False)
        object.__setattr__(self, "gamma", g)


def identity(order: int = DEFAULT_ORDER) -> DiffOp:
    s = np.zeros(order + 1, dtype=complex)
    s[0] = 1
    return DiffOp(s, "identity", {})


def apply(op: DiffOp, p: Poly) -> Poly:
    """sum_k a_k p^{(k)}, exact on the polynomial."""
    c = p.coeffs
    n = len(c) - 1
    if op.order < n:
        raise TruncationTooShort(f"series stops at order {op.order}, polynomial has degree {n}")
    a = op.series
    out = np.zeros(n + 1, dtype=complex)
    # ff[j] = (j+k)!/j!, the factor D^k puts on c_{j+k} z^{j+k}
    ff = np.ones(n + 1)
    for k in range(n + 1):
        if k > 0:
            ff = ff[1:] * np.arange(1, n + 2 - k)
        if a[k] != 0:
            out[: n + 1 - k] += a[k] * c[k:] * ff
    return Poly(out)


def compose(op1: DiffOp, op2: DiffOp, n: int) -> DiffOp:
    """Cauchy product of the two series truncated at order n."""
    if op1.order < n or op2.order < n:
        raise TruncationTooShort(f"both series must reach order {n}")
    s = np.convolve(op1.series[: n + 1], op2.series[: n + 1])[: n + 1]
    return DiffOp(s, "custom", {"composed": 1.0})


def power(op: DiffOp, k: int, n: int) -> DiffOp:
    """op composed with itself k times, truncated at order n."""
    if op.order < n:
        raise TruncationTooShort(f"series must reach order {n}")
    result = identity(n).series
    base = op.series[: n + 1].copy()
    while k:
        if k & 1:
            result = np.convolve(result, base)[: n + 1]
        base = np.convolve(base, base)[: n + 1]
        k >>= 1
    return DiffOp(result, "custom", {})


def apply_multiplier(m: MultiplierOp, p: Poly) -> Poly:
    n = len(p.coeffs)
    if len(m.gamma) < n:
        raise TruncationTooShort(f"multiplier prefix has {len(m.gamma)} entries, need {n}")
    return Poly(p.coeffs * m.gamma[:n])


# --- operator families -----------------------------------------------------


def _exp_series(x: complex, order: int) -> np.ndarray:
    """Coefficients x^k / k! for k = 0..order."""
    s = np.empty(order + 1, dtype=complex)
    s[0] = 1.0
    for k in range(1, order + 1):
        s[k] = s[k - 1] * x / k
    return s


def op_shift(lam: float, order: int = DEFAULT_ORDER) -> DiffOp:
    """e^{i lam D}, translation z -> z + i lam."""
    return DiffOp(_exp_series(1j * lam, order), "shift", {"lam": float(lam)})


def op_debruijn(xi: complex, lam: float, order: int = DEFAULT_ORDER) -> DiffOp:
    """xi e^{i lam D} + conj(xi) e^{-i lam D}."""
    if xi == 0:
        raise ZeroXi("xi must be nonzero")
    e = _exp_series(1j * lam, order)
    s = 2.0 * (xi * e).real
    return DiffOp(s.astype(complex), "debruijn_cos", {"lam": float(lam), "xi": complex(xi)})


def op_gauss(lam: float, order: int = DEFAULT_ORDER) -> DiffOp:
    """e^{-lam D^2}."""
    s = np.zeros(order + 1, dtype=complex)
    even = _exp_series(-lam, order // 2)
    s[0::2] = even[: len(s[0::2])]
    return DiffOp(s, "gauss", {"lam": float(lam)})


def op_strong(h: Poly, lam: float, order: int = DEFAULT_ORDER,
              slack: float = 1e-9) -> Tuple[DiffOp, DiffOp]:
    """The pair (h(D) e^{i lam D}, its coefficientwise conjugate).

    Summing the two images of a real polynomial gives a real polynomial.
    ``h`` must have every root in the closed upper half-plane.
    """
    if h.degree is None:
        raise RootPlacement("h must be nonzero")
    if h.degree >= 1:
        rs = find_roots(h)
        low = rs.roots[rs.roots.imag < -slack]
        if low.size:
            raise RootPlacement(f"h has roots below the real axis: {low}")
    hc = np.zeros(order + 1, dtype=complex)
    m = min(len(h.coeffs), order + 1)
    hc[:m] = h.coeffs[:m]
    s = np.convolve(hc, _exp_series(1j * lam, order))[: order + 1]
    params = {"lam": float(lam), "h_degree": float(h.degree)}
    return (
        DiffOp(s, "strong_pair_half", params),
        DiffOp(np.conj(s), "strong_pair_half", params),
    )


def apply_strong_sum(pair: Tuple[DiffOp, DiffOp], p: Poly) -> Poly:
    """T(p) + T*(p), made exactly real when p is real."""
    t, ts = pair
    out = apply(t, p) + apply(ts, p)
    if p.is_real:
        out = out.real_part()
    return out


def op_sinc(lam: float, order: int = DEFAULT_ORDER) -> DiffOp:
    """sin(lam D)/D, scaled so the constant term is lam."""
    s = np.zeros(order + 1, dtype=complex)
    for k in range(order // 2 + 1):
        s[2 * k] = (-1) ** k * lam ** (2 * k + 1) / math.factorial(2 * k + 1)
    return DiffOp(s, "sinc", {"lam": float(lam)})


def op_cosine_transform(moments: Sequence[float], lam: float, n: int) -> DiffOp:
    """Operator f(D) with f(z) = int_0^1 cos(lam z t) g(t) dt.

    ``moments[k]`` is int_0^1 t^{2k} g(t) dt; entries up to index ceil(n/2)
    are needed for a degree-n input.
    """
    m = np.asarray(moments, dtype=float)
    need = n // 2 + 1
    if len(m) < need:
        raise TruncationTooShort(f"need {need} moments for degree {n}, got {len(m)}")
    if np.any(m <= 0) or np.any(np.diff(m) >= 0):
        raise MomentsMisordered("moments must be positive and strictly decreasing")
    s = np.zeros(max(n, 2 * (len(m) - 1)) + 1, dtype=complex)
    for k in range(len(m)):
        s[2 * k] = (-1) ** k * lam ** (2 * k) * m[k] / math.factorial(2 * k)
    return DiffOp(s, "cosine_transform", {"lam": float(lam)})


def op_bessel0(order: int = DEFAULT_ORDER) -> DiffOp:
    """J_0(D) = sum_k (-1)^k D^{2k} / (4^k (k!)^2)."""
    s = np.zeros(order + 1, dtype=complex)
    for k in range(order // 2 + 1):
        s[2 * k] = (-1) ** k / (4.0 ** k * math.factorial(k) ** 2)
    return DiffOp(s, "bessel0", {"lam": 1.0})


def cos_power(lam: float, n: int, order: int) -> DiffOp:
    """(cos(sqrt(lam/n) D))^n truncated at ``order``."""
    a = math.sqrt(lam / n)
    base = np.zeros(order + 1, dtype=complex)
    for k in range(order // 2 + 1):
        base[2 * k] = (-1) ** k * a ** (2 * k) / math.factorial(2 * k)
    return power(DiffOp(base), n, order)


_DELTA: Dict[str, Callable[[DiffOp, float], float]] = {
    "identity": lambda op, mu: mu,
    "debruijn_cos": lambda op, mu: _sqrt_pos(mu**2 - op.params["lam"] ** 2),
    "strong_pair_half": lambda op, mu: _sqrt_pos(mu**2 - op.params["lam"] ** 2),
    "gauss": lambda op, mu: _sqrt_pos(mu**2 - 2 * op.params["lam"]),
    "sinc": lambda op, mu: _sqrt_pos(mu**2 - op.params["lam"] ** 2 / 3),
    "cosine_transform": lambda op, mu: _sqrt_pos(mu**2 - op.params["lam"] ** 2 / 4),
    "bessel0": lambda op, mu: _sqrt_pos(mu**2 - 0.25),
}


def predicted_width(op: DiffOp, mu: float) -> float:
    """Strip width guaranteed for the image of a width-mu input."""
    rule = _DELTA.get(op.family)
    if rule is None:
        raise NoClaim(f"no narrowing rule for family {op.family!r}")
    return rule(op, mu)


def multiplier_is_admissible(gamma: Sequence[float]) -> bool:
    """True when gamma or (-1)^k gamma is non-negative and non-decreasing."""
    g = np.asarray(gamma, dtype=float)
    for cand in (g, g * (-1.0) ** np.arange(len(g))):
        if np.all(cand >= 0) and np.all(np.diff(cand) >= 0):
            return True
    return False


def is_degenerate(p: Poly) -> bool:
    """Output collapsed to a constant or to zero."""
    return p.degree is None or p.degree == 0


def from_json(d: dict, order: int = DEFAULT_ORDER) -> DiffOp:
    """Build an operator from {"family": ..., "params": {...}, "series": ...}."""
    if not isinstance(d, dict) or "family" not in d:
        raise MalformedInput("operator JSON needs a 'family'")
    fam = d["family"]
    pr = d.get("params", {}) or {}
    try:
        if "series" in d and d["series"] is not None and fam == "custom":
            return DiffOp([complex(*c) if isinstance(c, list) else complex(c) for c in d["series"]], "custom", {})
        if fam == "identity":
            return identity(order)
        if fam == "shift":
            return op_shift(float(pr["lam"]), order)
        if fam == "debruijn_cos":
            xi = pr.get("xi", 0.5)
            xi = complex(*xi) if isinstance(xi, list) else complex(xi)
            return op_debruijn(xi, float(pr["lam"]), order)
        if fam == "gauss":
            return op_gauss(float(pr["lam"]), order)
        if fam == "sinc":
            return op_sinc(float(pr["lam"]), order)
        if fam == "bessel0":
            return op_bessel0(order)
        if fam == "cosine_transform":
            return op_cosine_transform(pr["moments"], float(pr["lam"]), int(pr.get("n", order)))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, (MomentsMisordered, TruncationTooShort, ZeroXi)):
            raise
        raise MalformedInput(f"bad operator parameters: {exc}") from exc
    raise MalformedInput(f"operator family {fam!r} cannot be built from JSON")


# --- random inputs ---------------------------------------------------------


def random_strip_poly(rng: np.random.Generator, degree: int, mu: float,
                      real_span: float = 3.0) -> Poly:
    """Random real polynomial whose roots all satisfy |Im z| <= mu.

    Roots are real (uniform in [-real_span, real_span]) or conjugate pairs
    x +- iy with y uniform in [0, mu].
    """
    roots = []
    while len(roots) < degree:
        if degree - len(roots) >= 2 and mu > 0 and rng.random() < 0.6:
            x = rng.uniform(-real_span, real_span)
            y = rng.uniform(0, mu)
            roots += [complex(x, y), complex(x, -y)]
        else:
            roots.append(complex(rng.uniform(-real_span, real_span)))
    lead = rng.choice([-1.0, 1.0]) * rng.uniform(0.5, 2.0)
    return Poly.from_roots(roots, lead).real_part()


def random_complex_strip_poly(rng: np.random.Generator, degree: int, mu: float,
                              real_span: float = 3.0) -> Poly:
    """Random complex polynomial with every root in |Im z| <= mu."""
    xs = rng.uniform(-real_span, real_span, degree)
    ys = rng.uniform(-mu, mu, degree)
    lead = np.exp(2j * np.pi * rng.random())
    return Poly.from_roots(xs + 1j * ys, lead)


# --- moments for the cosine-transform family ------------------------------


def moments_closed_form(kind: str, count: int) -> np.ndarray:
    """m_k = int_0^1 t^{2k} g(t) dt for the built-in weights g.

    kinds: "one" (g = 1), "t" (g = t), "t2" (g = t^2), "expm1" (g = e^t - 1).
    """
    k = np.arange(count, dtype=float)
    if kind == "one":
        return 1.0 / (2 * k + 1)
    if kind == "t":
        return 1.0 / (2 * k + 2)
    if kind == "t2":
        return 1.0 / (2 * k + 3)
    if kind == "expm1":
        out = np.empty(count)
        for i in range(count):
            # int_0^1 t^m e^t dt = sum_j 1/(j! (m + j + 1))
            m = 2 * i
            tot = 0.0
            term = 1.0
            for j in range(200):
                inc = term / (m + j + 1)
                tot += inc
                if inc < 1e-18 * tot:
                    break
                term /= j + 1
            out[i] = tot - 1.0 / (m + 1)
        return out
    raise MalformedInput(f"unknown moment weight {kind!r}")
