"""Dense complex univariate polynomials and the elementary maps on them.

Coefficients are stored in increasing powers: ``coeffs[k]`` multiplies ``z**k``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DegreeTooSmall, InvalidMobius, MalformedInput

__all__ = [
    "Poly",
    "MobiusMap",
    "evaluate",
    "derivative",
    "conj_flip",
    "affine_compose",
    "mobius_push",
]


class Poly:
    """Immutable dense polynomial with complex coefficients.

    Trailing coefficients whose modulus is ``<= trim`` are dropped on
    construction; with the default ``trim=0`` only exact zeros go.
    The zero polynomial is ``Poly([0])`` and has ``degree is None``.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex] | np.ndarray, trim: float = 0.0):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        nz = np.nonzero(np.abs(c) > trim)[0]
        c = c[: nz[-1] + 1].copy() if nz.size else np.zeros(1, dtype=complex)
        c.setflags(write=False)
        self._c = c

    @classmethod
    def from_roots(cls, roots: Sequence[complex], lead: complex = 1.0) -> "Poly":
        c = np.array([1.0 + 0j])
        for r in roots:
            c = np.convolve(c, [-r, 1.0])
        return cls(lead * c)

    @classmethod
    def monomial(cls, k: int, coef: complex = 1.0) -> "Poly":
        c = np.zeros(k + 1, dtype=complex)
        c[k] = coef
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def degree(self) -> Optional[int]:
        """Degree, or ``None`` for the zero polynomial."""
        if self.is_zero:
            return None
        return len(self._c) - 1

    @property
    def is_zero(self) -> bool:
        return len(self._c) == 1 and self._c[0] == 0

    @property
    def is_real(self) -> bool:
        return bool(np.all(self._c.imag == 0))

    @property
    def lead(self) -> complex:
        return complex(self._c[-1])

    def trimmed(self, rel: float) -> "Poly":
        """Drop trailing coefficients below ``rel * max|c_k|``."""
        scale = float(np.max(np.abs(self._c)))
        return Poly(self._c, trim=rel * scale)

    def real_part(self) -> "Poly":
        return Poly(self._c.real)

    def imag_part(self) -> "Poly":
        return Poly(self._c.imag)

    def __call__(self, z):
        return evaluate(self, z)

    def __len__(self) -> int:
        return len(self._c)

    def __iter__(self):
        return iter(self._c)

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        n = max(len(self), len(o))
        c = np.zeros(n, dtype=complex)
        c[: len(self)] += self._c
        c[: len(o)] += o._c
        return Poly(c)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-self._c)

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return Poly(np.convolve(self._c, other._c))
        return Poly(self._c * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        return Poly(self._c / complex(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return len(self) == len(other) and bool(np.all(self._c == other._c))

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Poly({_fmt_coeffs(self._c)})"

    def to_json(self) -> dict:
        d = {"coeffs": [[float(c.real), float(c.imag)] for c in self._c]}
        if self.is_real:
            d["real"] = True
        return d

    @classmethod
    def from_json(cls, d) -> "Poly":
        if isinstance(d, str):
            d = json.loads(d)
        if isinstance(d, list):
            d = {"coeffs": d}
        if not isinstance(d, dict) or "coeffs" not in d:
            raise MalformedInput("polynomial JSON needs a 'coeffs' list")
        raw = d["coeffs"]
        if not isinstance(raw, list) or not raw:
            raise MalformedInput("'coeffs' must be a non-empty list")
        vals = []
        for item in raw:
            if isinstance(item, (int, float)) and not isinstance(item, bool):
                vals.append(complex(item))
            elif isinstance(item, (list, tuple)) and len(item) == 2:
                vals.append(complex(float(item[0]), float(item[1])))
            else:
                raise MalformedInput(f"bad coefficient entry {item!r}")
        p = cls(vals)
        if d.get("real") and not p.is_real:
            raise MalformedInput("polynomial flagged real has non-zero imaginary parts")
        return p


def _fmt_coeffs(c: np.ndarray) -> str:
    parts = []
    for v in c:
        if v.imag == 0:
            parts.append(f"{v.real:.6g}")
        else:
            parts.append(f"{v.real:.6g}{v.imag:+.6g}j")
    return "[" + ", ".join(parts) + "]"


def evaluate(p: Poly, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coeffs
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for ck in c[-2::-1]:
        acc = acc * z + ck
    if acc.ndim == 0:
        return complex(acc)
    return acc


def derivative(p: Poly, k: int = 1) -> Poly:
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    c = p.coeffs
    n = len(c)
    if k >= n:
        return Poly([0])
    # falling factorial j (j-1) ... (j-k+1) for j = k..n-1
    j = np.arange(k, n, dtype=float)
    ff = np.ones_like(j)
    for i in range(k):
        ff *= j - i
    return Poly(c[k:] * ff)


def conj_flip(p: Poly) -> Poly:
    """Return f* with f*(z) = conj(f(conj z)), i.e. conjugated coefficients."""
    return Poly(np.conj(p.coeffs))


def taylor_shift(c: np.ndarray, b: complex) -> np.ndarray:
    """Coefficients of p(z + b) by repeated synthetic division."""
    c = np.array(c, dtype=complex)
    n = len(c) - 1
    if b == 0:
        return c
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            c[j] += b * c[j + 1]
    return c


def affine_compose(p: Poly, a: complex, b: complex) -> Poly:
    """Return p(a z + b)."""
    c = taylor_shift(p.coeffs, b)
    return Poly(c * np.power(complex(a), np.arange(len(c))))


@dataclass(frozen=True)
class MobiusMap:
    """z -> (a z + b) / (c z + d) with ad - bc != 0."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if abs(self.a * self.d - self.b * self.c) == 0:
            raise InvalidMobius("Mobius map needs ad - bc != 0")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.d, -self.b, -self.c, self.a)


def mobius_push(p: Poly, M: MobiusMap, n: int) -> Poly:
    """Return (c z + d)^n p(M(z)) expanded as a polynomial of degree <= n."""
    deg = p.degree
    if deg is not None and n < deg:
        raise DegreeTooSmall(f"n={n} is below deg(p)={deg}")
    num = np.array([M.b, M.a], dtype=complex)
    den = np.array([M.d, M.c], dtype=complex)
    num_pows = [np.ones(1, dtype=complex)]
    den_pows = [np.ones(1, dtype=complex)]
    for _ in range(n):
        num_pows.append(np.convolve(num_pows[-1], num))
        den_pows.append(np.convolve(den_pows[-1], den))
    out = np.zeros(n + 1, dtype=complex)
    for k, ck in enumerate(p.coeffs):
        if ck == 0:
            continue
        term = ck * np.convolve(num_pows[k], den_pows[n - k])
        out[: len(term)] += term
    return Poly(out)
