"""Polynomial roots, strip widths, region membership and zero counting.

Roots come from the Aberth-Ehrlich simultaneous iteration. Each returned
residual is the backward error ``|p(x)| / sum_k |c_k| |x|^k`` at the computed
root, which is what the convergence test compares against ``tol``.

Zero counting inside a rectangle uses the argument principle: the phase of
``f`` is tracked along the boundary and the total change divided by 2*pi.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import (
    BoundaryZero,
    DegreeZero,
    MalformedInput,
    PhaseJump,
    Unconverged,
    ZeroPolynomial,
)
from .polycore import Poly

MAX_ITER = 200
GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))


@dataclass
class RootSet:
    roots: np.ndarray
    residuals: np.ndarray
    converged: bool
    iterations: int = 0

    def __len__(self):
        return len(self.roots)

    def to_json(self) -> dict:
        return {
            "roots": [[float(r.real), float(r.imag)] for r in self.roots],
            "residuals": [float(x) for x in self.residuals],
            "converged": bool(self.converged),
        }

    @classmethod
    def from_json(cls, d: dict) -> "RootSet":
        try:
            roots = np.array([complex(a, b) for a, b in d["roots"]], dtype=complex)
            res = np.array(d["residuals"], dtype=float)
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad RootSet JSON: {exc}") from exc
        if len(res) != len(roots):
            raise MalformedInput("roots and residuals differ in length")
        return cls(roots, res, bool(d.get("converged", True)))


def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
    acc = np.zeros(np.shape(z), dtype=np.result_type(c, z)) + c[-1]
    for ck in c[-2::-1]:
        acc = acc * z + ck
    return acc


def _backward_error(c: np.ndarray, abs_c: np.ndarray, z: np.ndarray) -> np.ndarray:
    num = np.abs(_horner(c, z))
    den = _horner(abs_c, np.abs(z))
    with np.errstate(invalid="ignore", divide="ignore"):
        be = np.where(den > 0, num / den, num)
    return np.nan_to_num(be, nan=np.inf)


def cauchy_radius(c: np.ndarray) -> float:
    """Unique positive root of |c_n| x^n - sum_{k<n} |c_k| x^k.

    Every root of the polynomial lies in the disk of this radius. Newton's
    method started from the upper bound 1 + max|c_k / c_n| decreases
    monotonically to it; a few digits suffice for seeding.
    """
    a = np.abs(c)
    ratios = [float(v) for v in a[:-1] / a[-1]]
    if not any(ratios):
        return 0.0
    q = [-v for v in ratios] + [1.0]
    x = 1.0 + max(ratios)
    for _ in range(100):
        f = 0.0
        df = 0.0
        for ck in reversed(q):
            df = df * x + f
            f = f * x + ck
        if df <= 0:
            break
        step = f / df
        x -= step
        if step <= 1e-6 * x:
            break
    return x


def _eval_all(c: np.ndarray, dc: np.ndarray, abs_c: np.ndarray, z: np.ndarray):
    """p(z), p'(z) and the backward error at every z from one power table."""
    V = np.vander(z, len(c), increasing=True)
    pz = V @ c
    dpz = V[:, :-1] @ dc
    den = np.abs(V) @ abs_c
    with np.errstate(invalid="ignore", divide="ignore"):
        be = np.where(den > 0, np.abs(pz) / den, np.abs(pz))
    return pz, dpz, np.nan_to_num(be, nan=np.inf)


def _aberth(c: np.ndarray, tol: float):
    n = len(c) - 1
    abs_c = np.abs(c)
    dc = c[1:] * np.arange(1, n + 1)
    r = cauchy_radius(c)
    center = -c[-2] / (n * c[-1])
    phase = GOLDEN_ANGLE / n + 2 * np.pi * np.arange(n) / n
    z = center + max(r, 1e-300) * np.exp(1j * phase)
    pz, dpz, be = _eval_all(c, dc, abs_c, z)
    it = 0
    for it in range(1, MAX_ITER + 1):
        active = be > tol
        if not active.any():
            break
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            step = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(step)
        if bad.any():
            # derivative vanished or roots coincided: nudge off the critical point
            step[bad] = 1e-8 * (1.0 + np.abs(z[bad])) * np.exp(1j * (it + np.arange(bad.sum())))
        z = np.where(active, z - step, z)
        with np.errstate(over="ignore", invalid="ignore"):
            pz, dpz, be = _eval_all(c, dc, abs_c, z)
    # one Newton polish, kept only where it does not increase the backward error
    with np.errstate(divide="ignore", invalid="ignore"):
        zn = z - pz / dpz
    zn = np.where(np.isfinite(zn), zn, z)
    with np.errstate(over="ignore", invalid="ignore"):
        _, _, be_n = _eval_all(c, dc, abs_c, zn)
    better = be_n <= be
    z = np.where(better, zn, z)
    be = np.where(better, be_n, be)
    return z, be, it


def find_roots(p: Poly, tol: float = 1e-12) -> RootSet:
    """All roots of ``p`` with multiplicity."""
    deg = p.degree
    if deg is None:
        raise ZeroPolynomial("the zero polynomial has no finite root set")
    if deg == 0:
        raise DegreeZero("a nonzero constant has no roots")
    c = np.array(p.coeffs, dtype=complex)
    nz = int(np.argmax(c != 0))
    zero_roots = np.zeros(nz, dtype=complex)
    c = c[nz:]
    m = len(c) - 1
    if m == 0:
        return RootSet(zero_roots, np.zeros(nz), True, 0)
    if m == 1:
        root = np.array([-c[0] / c[1]])
        be = _backward_error(c, np.abs(c), root)
        return RootSet(np.concatenate([zero_roots, root]), np.concatenate([np.zeros(nz), be]), True, 0)
    z, be, it = _aberth(c, tol)
    roots = np.concatenate([zero_roots, z])
    res = np.concatenate([np.zeros(nz), be])
    return RootSet(roots, res, bool(np.all(res <= tol)), it)


def strip_width(rs: RootSet) -> float:
    """Largest |Im| over the roots; 0 for an empty root set."""
    if not rs.converged:
        raise Unconverged("root finder did not converge")
    if len(rs.roots) == 0:
        return 0.0
    return float(np.max(np.abs(rs.roots.imag)))


def width_of(p: Poly, tol: float = 1e-12) -> float:
    """Strip width of a polynomial; constants (including 0) have width 0."""
    if p.degree is None or p.degree == 0:
        return 0.0
    return strip_width(find_roots(p, tol))


# --- regions ---------------------------------------------------------------


@dataclass(frozen=True)
class Strip:
    mu: float

    def contains(self, z, slack: float = 0.0):
        return np.abs(np.imag(z)) <= self.mu + slack


@dataclass(frozen=True)
class UpperHalfPlane:
    """Closed region Im z >= c."""

    c: float = 0.0

    def contains(self, z, slack: float = 0.0):
        return np.imag(z) >= self.c - slack


@dataclass(frozen=True)
class LowerHalfPlane:
    """Closed region Im z <= c."""

    c: float = 0.0

    def contains(self, z, slack: float = 0.0):
        return np.imag(z) <= self.c + slack


@dataclass(frozen=True)
class Disk:
    center: complex = 0.0
    r: float = 1.0

    def contains(self, z, slack: float = 0.0):
        return np.abs(np.asarray(z) - self.center) <= self.r + slack


@dataclass(frozen=True)
class DiskExterior:
    center: complex = 0.0
    r: float = 1.0

    def contains(self, z, slack: float = 0.0):
        return np.abs(np.asarray(z) - self.center) >= self.r - slack


Region = Union[Strip, UpperHalfPlane, LowerHalfPlane, Disk, DiskExterior]


def in_region(rs: RootSet, region: Region, slack: float = 0.0) -> bool:
    if not rs.converged:
        raise Unconverged("root finder did not converge")
    return bool(np.all(region.contains(rs.roots, slack)))


# --- argument principle ----------------------------------------------------


@dataclass(frozen=True)
class Rect:
    x_lo: float
    x_hi: float
    y_lo: float
    y_hi: float

    def __post_init__(self):
        if not (self.x_lo < self.x_hi and self.y_lo < self.y_hi):
            raise MalformedInput(f"degenerate rectangle {self}")

    def corners(self) -> np.ndarray:
        return np.array(
            [
                complex(self.x_lo, self.y_lo),
                complex(self.x_hi, self.y_lo),
                complex(self.x_hi, self.y_hi),
                complex(self.x_lo, self.y_hi),
            ]
        )

    def boundary(self, s: np.ndarray) -> np.ndarray:
        """Counter-clockwise boundary point for parameter s in [0, 4]."""
        c = self.corners()
        s = np.asarray(s, dtype=float)
        side = np.minimum(np.floor(s).astype(int), 3)
        frac = s - side
        start = c[side]
        end = c[(side + 1) % 4]
        return start + frac * (end - start)

    def contains(self, z, margin: float = 0.0):
        z = np.asarray(z)
        return (
            (z.real > self.x_lo + margin)
            & (z.real < self.x_hi - margin)
            & (z.imag > self.y_lo + margin)
            & (z.imag < self.y_hi - margin)
        )


def as_vectorized(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    """Wrap ``f`` so it accepts and returns complex arrays."""

    def g(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        try:
            out = np.asarray(f(z), dtype=complex)
            if out.shape == z.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([complex(f(complex(v))) for v in z.ravel()]).reshape(z.shape)

    return g


def winding_value(f: Callable, rect: Rect, n_per_side: int = 64, guard: float = 1e-12,
                  max_samples: int = 200_000) -> float:
    """Total phase change of f around the rectangle divided by 2*pi (unrounded)."""
    fv = as_vectorized(f)
    s = np.linspace(0.0, 4.0, 4 * n_per_side + 1)
    vals = fv(rect.boundary(s))
    scale = 0.0
    while True:
        if not np.all(np.isfinite(vals)):
            raise BoundaryZero("non-finite function value on the contour")
        mod = np.abs(vals)
        scale = max(scale, float(np.max(mod)))
        if scale == 0.0 or float(np.min(mod)) <= guard * scale:
            k = int(np.argmin(mod))
            raise BoundaryZero(f"|f| too small on the contour near {rect.boundary(s[k])}")
        d = np.angle(vals[1:] / vals[:-1])
        bad = np.nonzero(np.abs(d) > np.pi / 2)[0]
        if bad.size == 0:
            return float(np.sum(d) / (2 * np.pi))
        if len(s) + bad.size > max_samples:
            raise PhaseJump("phase refinement exceeded the sample cap")
        mids = 0.5 * (s[bad] + s[bad + 1])
        new_vals = fv(rect.boundary(mids))
        s = np.insert(s, bad + 1, mids)
        vals = np.insert(vals, bad + 1, new_vals)


def count_zeros_rect(f: Callable, rect: Rect, n_per_side: int = 64, guard: float = 1e-12,
                     max_samples: int = 200_000) -> int:
    """Number of zeros of the analytic function f inside rect, with multiplicity.

    ``f`` should accept a complex numpy array; scalar-only callables are
    wrapped element by element.
    """
    w = winding_value(f, rect, n_per_side, guard, max_samples)
    k = round(w)
    if abs(w - k) > 0.25:
        raise PhaseJump(f"winding value {w:.4f} is not close to an integer")
    return int(k)
