"""Fourier transforms F(z) = int exp(H(it)) exp(itz) dt for real polynomial kernels H.

Integrals are computed by adaptive 16-point Gauss-Legendre panels, vectorized
over arrays of z. The truncation radius comes from an explicit bound on the
decaying real part of H(it), so no tail heuristics are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import (
    BoundaryZero,
    NoDecay,
    NoQualifyingRoot,
    NotRealOnAxis,
    PrefixTooShort,
    TolNotMet,
)
from .polycore import Poly, derivative
from .roots import Rect, count_zeros_rect, find_roots, strip_width
from .stripcls import SampleGrid, Status, Verdict

GL_NODES, GL_WEIGHTS = np.polynomial.legendre.leggauss(16)
MAX_PANELS = 20_000


# --- kernels ---------------------------------------------------------------


@dataclass(frozen=True)
class KernelPoly:
    H: Poly

    def __post_init__(self):
        if not self.H.is_real:
            raise ValueError("kernel polynomial must have real coefficients")

    @cached_property
    def on_axis(self) -> Poly:
        """K(t) = H(it) as a polynomial in t."""
        k = np.arange(len(self.H.coeffs))
        return Poly(self.H.coeffs * (1j) ** k)

    @cached_property
    def real_part(self) -> Poly:
        """Re H(it): only even powers survive."""
        return self.on_axis.real_part()

    @property
    def leading_ok(self) -> bool:
        """Re H(it) -> -infinity as t -> +-infinity."""
        r = self.real_part
        return r.degree is not None and r.degree >= 2 and r.lead.real < 0

    @property
    def even_branch(self) -> bool:
        """H(it) = -c t^{2d} + lower order with c > 0."""
        deg = self.H.degree
        return deg is not None and deg >= 2 and deg % 2 == 0 and self.on_axis.lead.real < 0

    @property
    def d(self) -> Optional[int]:
        return self.H.degree // 2 if self.even_branch else None

    @property
    def c(self) -> Optional[float]:
        return -self.on_axis.lead.real if self.even_branch else None

    @cached_property
    def h_prime_lp(self) -> bool:
        """H' has only real roots (constant H' counts as true)."""
        dp = derivative(self.H)
        if dp.degree is None or dp.degree == 0:
            return True
        return strip_width(find_roots(dp)) <= 1e-8

    def integrand(self, t: np.ndarray, z: np.ndarray) -> np.ndarray:
        """exp(H(it) + itz) on the outer product of t and z."""
        kt = self.on_axis(t)
        return np.exp(kt[:, None] + 1j * np.outer(t, z))


def kernel_on_axis(H: Poly, t):
    """H(it)."""
    return H(1j * np.asarray(t, dtype=float))


def _as_kernel(H) -> KernelPoly:
    return H if isinstance(H, KernelPoly) else KernelPoly(H)


# --- quadrature -------------------------------------------------------------


def _gl_panel(f, a: float, b: float):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    vals = f(mid + half * GL_NODES)
    return half * np.tensordot(GL_WEIGHTS, vals, axes=(0, 0))


def adaptive_gl(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, tol: float,
                initial_panels: int = 8, max_panels: int = MAX_PANELS) -> np.ndarray:
    """Integrate f over [a, b] to absolute error ``tol``.

    ``f`` maps an array of nodes to values with the node axis first; any
    trailing axes (for instance several z values) are integrated together and
    the worst component drives refinement. Each panel compares one 16-point
    rule against the sum over its two halves.
    """
    total_len = b - a
    edges = np.linspace(a, b, initial_panels + 1)
    stack = list(zip(edges[:-1], edges[1:]))
    whole = {iv: _gl_panel(f, *iv) for iv in stack}
    acc = 0.0
    panels = len(stack)
    while stack:
        lo, hi = stack.pop()
        q = whole.pop((lo, hi))
        mid = 0.5 * (lo + hi)
        q1 = _gl_panel(f, lo, mid)
        q2 = _gl_panel(f, mid, hi)
        err = np.max(np.abs(q - (q1 + q2)))
        local = tol * (hi - lo) / total_len
        if err <= local or hi - lo <= 1e-13 * max(1.0, abs(total_len)):
            acc = acc + (q1 + q2)
            continue
        panels += 2
        if panels > max_panels:
            raise TolNotMet(f"adaptive quadrature exceeded {max_panels} panels")
        whole[(lo, mid)] = q1
        whole[(mid, hi)] = q2
        stack.append((lo, mid))
        stack.append((mid, hi))
    return acc


def segment_integral(f: Callable[[np.ndarray], np.ndarray], p0: complex, p1: complex,
                     tol: float) -> np.ndarray:
    """Integrate an entire function f along the straight segment p0 -> p1."""
    d = complex(p1) - complex(p0)
    if d == 0:
        return 0.0
    return d * adaptive_gl(lambda s: f(p0 + s * d), 0.0, 1.0, tol / abs(d))


def truncation_radius(kp: KernelPoly, y_abs: float, tol: float) -> float:
    """T with |exp(H(it) + itz)| < tol * 1e-3 and decreasing for |t| >= T.

    With Re H(it) = -a t^{2e} + sum_{k<2e} r_k t^k and |t| >= 1, the exponent
    is at most |t|^{2e-1} (-a|t| + S + |Im z|) where S = sum |r_k|. Past
    T >= 2 (S + |Im z|) / a this is <= -(a/2) |t|^{2e}.
    """
    r = kp.real_part
    a = -r.lead.real
    two_e = r.degree
    S = float(np.sum(np.abs(r.coeffs[:-1])))
    target = -math.log(tol * 1e-3)
    T = max(1.0, 2.0 * (S + y_abs) / a)
    while -(a / 2.0) * T**two_e > -target:
        T *= 2.0
    return T


def fourier_eval(H, z, tol: float = 1e-11):
    """F(z) = int_{-inf}^{inf} exp(H(it)) exp(itz) dt; z may be an array."""
    kp = _as_kernel(H)
    if not kp.leading_ok:
        raise NoDecay("Re H(it) does not tend to -infinity")
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    T = truncation_radius(kp, float(np.max(np.abs(zz.imag))), tol)
    out = adaptive_gl(lambda t: kp.integrand(t, zz), -T, T, tol, initial_panels=16)
    out = np.asarray(out)
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def gaussian_closed_form(z):
    """sqrt(pi) exp(-z^2 / 4), the transform of the kernel H(it) = -t^2."""
    z = np.asarray(z, dtype=complex)
    return np.sqrt(np.pi) * np.exp(-(z**2) / 4)


# --- approximants ---------------------------------------------------------------


def corner_point(H, m: float) -> complex:
    """Root a_m of H(it) + m = 0 with positive real part closest in argument to the real axis."""
    kp = _as_kernel(H)
    if not kp.even_branch:
        raise NoDecay("corner point needs an even-degree kernel with negative leading term")
    if m <= 0:
        raise ValueError("m must be positive")
    q = kp.on_axis + m
    roots = find_roots(q).roots
    cand = roots[roots.real > 0]
    if cand.size == 0:
        raise NoQualifyingRoot("no root of H(it) + m has positive real part")
    args = np.abs(np.angle(cand))
    best = np.min(args)
    tied = cand[args <= best + 1e-12]
    return complex(tied[np.argmax(tied.real)])


def approximant_eval(H, n: int, m: float, z, tol: float = 1e-10):
    """F_{n,m}(z) = int (1 + H(it)/m)^n exp(itz) dt along -conj(a) -> -x -> x -> a."""
    kp = _as_kernel(H)
    a = corner_point(kp, m)
    x = a.real
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    K = kp.on_axis

    def f(t):
        t = np.asarray(t, dtype=complex)
        base = (1.0 + K(t) / m) ** n
        return base[:, None] * np.exp(1j * np.outer(t, zz))

    pts = [-np.conj(a), complex(-x), complex(x), a]
    total = 0.0
    for p0, p1 in zip(pts[:-1], pts[1:]):
        total = total + segment_integral(f, p0, p1, tol / 3)
    total = np.asarray(total)
    return complex(total[0]) if np.ndim(z) == 0 else total.reshape(np.shape(z))


def approximant_straight(H, n: int, m: float, z, tol: float = 1e-10):
    """Same integral along the straight segment -conj(a) -> a."""
    kp = _as_kernel(H)
    a = corner_point(kp, m)
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    K = kp.on_axis

    def f(t):
        base = (1.0 + K(t) / m) ** n
        return base[:, None] * np.exp(1j * np.outer(t, zz))

    out = np.asarray(segment_integral(f, -np.conj(a), a, tol))
    return complex(out[0]) if np.ndim(z) == 0 else out.reshape(np.shape(z))


def f0_closed_form(a: complex, z):
    """2 exp(-a_y z) sin(a_x z) / z, with the value 2 a_x at z = 0."""
    z = np.asarray(z, dtype=complex)
    ax, ay = a.real, a.imag
    with np.errstate(invalid="ignore", divide="ignore"):
        v = 2.0 * np.exp(-ay * z) * np.sin(ax * z) / z
    v = np.where(z == 0, 2.0 * ax, v)
    return complex(v) if v.ndim == 0 else v


# --- real zeros ---------------------------------------------------------------------


@dataclass
class ZeroReport:
    count: int
    sign_changes: int
    passed: bool
    rect: Tuple[float, float, float, float]
    axis_samples: int
    nudges: int = 0
    note: str = ""

    def to_json(self) -> dict:
        return {
            "count": self.count,
            "sign_changes": self.sign_changes,
            "pass": self.passed,
            "rect": list(self.rect),
            "axis_samples": self.axis_samples,
            "nudges": self.nudges,
            "note": self.note,
        }


def real_zero_verdict(F: Callable, x_range: Tuple[float, float] = (-8.0, 8.0),
                      y_band: Tuple[float, float] = (0.05, 2.0), axis_samples: int = 401,
                      n_per_side: int = 64, max_nudges: int = 5) -> ZeroReport:
    """Count zeros of F in the band above the real axis and sign changes on the axis.

    PASS when no zero lies in the band. F must be real on the real axis; the
    lower band follows by conjugate symmetry.
    """
    xs = np.linspace(x_range[0], x_range[1], axis_samples)
    vals = np.asarray(F(xs.astype(complex)), dtype=complex)
    scale = float(np.max(np.abs(vals)))
    if scale > 0 and np.max(np.abs(vals.imag)) > 1e-9 * scale:
        raise NotRealOnAxis("F is not real on the real axis")
    re = vals.real
    nzv = re[np.abs(re) > 1e-14 * scale]
    sign_changes = int(np.sum(np.sign(nzv[1:]) != np.sign(nzv[:-1])))
    y_lo, y_hi = y_band
    nudges = 0
    while True:
        rect = Rect(x_range[0], x_range[1], y_lo, y_hi)
        try:
            count = count_zeros_rect(F, rect, n_per_side)
            break
        except BoundaryZero:
            if nudges >= max_nudges:
                raise
            nudges += 1
            y_lo *= 1.1
    return ZeroReport(count, sign_changes, count == 0, (rect.x_lo, rect.x_hi, rect.y_lo, rect.y_hi),
                      axis_samples, nudges)


# --- sign conditions and the Jensen-type estimate -----------------------------------


def gamma_from_poly(H: Poly) -> np.ndarray:
    """gamma_k = k! * h_k, so that H(t) = sum gamma_k t^k / k!."""
    c = H.coeffs.real
    return np.array([math.factorial(k) * c[k] for k in range(len(c))], dtype=float)


def fourier_cor_check(gamma: Sequence[float], K: int, h_prime_lp: bool = True) -> Verdict:
    """Sign test (-1)^K gamma_{2K} < 0 and (-1)^k gamma_{2k} <= 0 for k > K on the prefix."""
    g = np.asarray(gamma, dtype=float)
    if len(g) <= 2 * K:
        raise PrefixTooShort(f"need gamma up to index {2 * K}, have {len(g)} entries")
    if not h_prime_lp:
        return Verdict(Status.INCONCLUSIVE, note="H' was not verified to be real-rooted")
    lead = (-1) ** K * g[2 * K]
    if not lead < 0:
        return Verdict(Status.COUNTEREXAMPLE, witness=2 * K, samples_used=1,
                       note=f"(-1)^K gamma_2K = {lead:g} is not negative")
    used = 1
    for k in range(K + 1, (len(g) - 1) // 2 + 1):
        used += 1
        v = (-1) ** k * g[2 * k]
        if v > 0:
            return Verdict(Status.COUNTEREXAMPLE, witness=2 * k, samples_used=used,
                           note=f"(-1)^k gamma_2k = {v:g} is positive at k = {k}")
    return Verdict(Status.PASS, samples_used=used, note=f"checked stored prefix of length {len(g)}")


def jensen_samples(grid: Optional[SampleGrid] = None, A: float = 1.0) -> Tuple[np.ndarray, np.ndarray]:
    """(X, r) pairs with X = Re z / n in [-A, 0] and r = Im z / Re z in (-1/2, 1/2)."""
    if grid is None:
        grid = SampleGrid(x_range=(-A, 0.0), y_range=(-0.5, 0.5), nx=50, ny=50, extra_random=7500)
    X = np.linspace(grid.x_range[0], grid.x_range[1], grid.nx)
    # open interval for the ratio
    r = grid.y_range[0] + (grid.y_range[1] - grid.y_range[0]) * (np.arange(grid.ny) + 0.5) / grid.ny
    XX, RR = np.meshgrid(X, r)
    rng = np.random.default_rng(grid.seed)
    rx = rng.uniform(grid.x_range[0], grid.x_range[1], grid.extra_random)
    rr = rng.uniform(grid.y_range[0], grid.y_range[1], grid.extra_random)
    return np.concatenate([XX.ravel(), rx]), np.concatenate([RR.ravel(), rr])


def jensen_bound_check(n_list: Sequence[int], grid: Optional[SampleGrid] = None, A: float = 1.0,
                       slack: float = 1e-12) -> Verdict:
    """Check |1 + z/n|^n <= exp(Re z / 2) on wedge samples, in logarithmic form."""
    X, r = jensen_samples(grid, A)
    used = 0
    for n in n_list:
        # n log|1 + X(1 + ir)| versus n X / 2
        with np.errstate(divide="ignore"):
            # X = -1, r = 0 gives z = -n, where the left side is log 0 = -inf
            lhs = 0.5 * n * np.log1p(2 * X + X * X * (1 + r * r))
        rhs = 0.5 * n * X
        used += len(X)
        viol = np.nonzero(lhs - rhs > slack * max(1.0, n))[0]
        if viol.size:
            k = int(viol[0])
            z = n * X[k] * (1 + 1j * r[k])
            return Verdict(Status.COUNTEREXAMPLE, witness=(int(n), complex(z)), samples_used=used,
                           note="|1 + z/n|^n exceeds exp(Re z / 2)")
    return Verdict(Status.PASS, samples_used=used, note=f"A = {A}; no sample violated the estimate")
