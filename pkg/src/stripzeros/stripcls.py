"""Sampled membership tests for strip classes of polynomials.

Every test quantified over a region is run on a deterministic grid plus
seeded random points. PASS therefore means "no violation found on the
samples", never a proof.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DegeneratePencil, NonReal, PreconditionFailed
from .polycore import Poly, conj_flip, derivative
from .roots import find_roots, strip_width

FP_GUARD = 1e-12
SAMPLED_NOTE = "sampled test: PASS means no violation on the samples"


class Status(str, enum.Enum):
    PASS = "PASS"
    COUNTEREXAMPLE = "COUNTEREXAMPLE"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Verdict:
    status: Status
    witness: Optional[object] = None
    samples_used: int = 0
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "witness": _witness_json(self.witness),
            "samples_used": int(self.samples_used),
            "note": self.note,
        }


def _witness_json(w):
    if w is None:
        return None
    if isinstance(w, (complex, np.complexfloating)):
        return [float(w.real), float(w.imag)]
    if isinstance(w, (float, int, np.floating, np.integer)):
        return float(w)
    if isinstance(w, Poly):
        return w.to_json()
    if isinstance(w, dict):
        return {k: _witness_json(v) for k, v in w.items()}
    if isinstance(w, (tuple, list)):
        return [_witness_json(v) for v in w]
    return str(w)


@dataclass(frozen=True)
class SampleGrid:
    x_range: Tuple[float, float] = (-10.0, 10.0)
    y_range: Tuple[float, float] = (0.0, 5.0)
    nx: int = 60
    ny: int = 40
    extra_random: int = 500
    seed: int = 0

    @classmethod
    def above(cls, mu: float, height: float = 5.0, **kw) -> "SampleGrid":
        """Default grid over x in [-10, 10], Im z in (mu, mu + height]."""
        return cls(y_range=(mu, mu + height), **kw)

    def points(self, open_below: bool = True) -> np.ndarray:
        """Grid points followed by the random points, in a fixed order.

        With ``open_below`` the lower y edge is excluded (the region is
        Im z > y_lo).
        """
        x0, x1 = self.x_range
        y0, y1 = self.y_range
        xs = np.linspace(x0, x1, self.nx)
        if open_below:
            ys = y0 + (y1 - y0) * np.arange(1, self.ny + 1) / self.ny
        else:
            ys = np.linspace(y0, y1, self.ny)
        X, Y = np.meshgrid(xs, ys)
        grid = (X + 1j * Y).ravel()
        rng = np.random.default_rng(self.seed)
        rx = rng.uniform(x0, x1, self.extra_random)
        ry = y1 - rng.uniform(0, 1, self.extra_random) * (y1 - y0)  # in (y0, y1]
        return np.concatenate([grid, rx + 1j * ry])


# --- Wronskians -------------------------------------------------------------


def _require_real(*ps: Poly):
    for p in ps:
        if not p.is_real:
            raise NonReal("expected polynomials with real coefficients")


def _cmul(u, v):
    # written out so that swapping the factors gives bit-identical results,
    # which keeps mu_wronskian exactly antisymmetric
    re = u.real * v.real - u.imag * v.imag
    im = u.real * v.imag + u.imag * v.real
    return re + 1j * im


def mu_wronskian(f: Poly, g: Poly, mu: float, x):
    """(f(x+i mu) g(x-i mu) - f(x-i mu) g(x+i mu)) / (2 mu i), real for real f, g."""
    if mu <= 0:
        raise ValueError("mu must be positive")
    _require_real(f, g)
    x = np.asarray(x, dtype=float)
    zp = x + 1j * mu
    zm = x - 1j * mu
    a = _cmul(f(zp), g(zm))
    b = _cmul(f(zm), g(zp))
    val = (a - b) / (2j * mu)
    scale = (np.abs(a) + np.abs(b)) / (2 * mu) + 1e-300
    if np.any(np.abs(np.imag(val)) > 1e-9 * scale):
        raise NonReal("mu-Wronskian has a non-negligible imaginary part")
    out = np.asarray(np.real(val))
    return float(out) if out.ndim == 0 else out


def classical_wronskian(f: Poly, g: Poly, x):
    """f'(x) g(x) - f(x) g'(x)."""
    x = np.asarray(x, dtype=float)
    val = derivative(f)(x) * g(x) - f(x) * derivative(g)(x)
    out = np.asarray(np.real(val))
    return float(out) if out.ndim == 0 else out


# --- D_mu membership ----------------------------------------------------------


def split_real_imag(f: Poly) -> Tuple[Poly, Poly]:
    """f = g + i h with g, h real."""
    return f.real_part(), f.imag_part()


def is_multiple_of_real(f: Poly, rel: float = 1e-12) -> bool:
    """True when f = c * q with c complex and q real, i.e. rank [g; h] <= 1."""
    g, h = split_real_imag(f)
    n = len(f.coeffs)
    M = np.zeros((2, n))
    M[0, : len(g.coeffs)] = g.coeffs.real
    M[1, : len(h.coeffs)] = h.coeffs.real
    sv = np.linalg.svd(M, compute_uv=False)
    return sv[0] == 0 or sv[1] <= rel * sv[0]


def in_Dmu_sampled(f: Poly, mu: float, grid: Optional[SampleGrid] = None,
                   n_lambda: int = 11) -> Verdict:
    """Sampled test of |f(z)| > |f*(z)| for Im z > mu plus the Wronskian criterion.

    With f = g + i h the second check is W_lam[h, g](x) < 0 for sampled
    lam > mu and real x.
    """
    if grid is None:
        grid = SampleGrid.above(mu)
    if is_multiple_of_real(f):
        return Verdict(Status.COUNTEREXAMPLE, witness=None, samples_used=0,
                       note="complex multiple of a real polynomial: |f| = |f*| everywhere")
    fs = conj_flip(f)
    pts = grid.points()
    pts = pts[pts.imag > mu]
    a = np.abs(f(pts))
    b = np.abs(fs(pts))
    margin = (a - b) / np.maximum(np.maximum(a, b), 1e-300)
    used = len(pts)
    inconclusive = False
    bad = np.nonzero(margin < -FP_GUARD)[0]
    if bad.size:
        k = int(bad[0])
        return Verdict(Status.COUNTEREXAMPLE, witness=complex(pts[k]), samples_used=used,
                       note=f"|f| <= |f*| at the witness (relative margin {margin[k]:.3e})")
    if np.any(margin <= 0):
        inconclusive = True

    g, h = split_real_imag(f)
    base = mu if mu > 0 else 1.0
    y0, y1 = grid.y_range
    levels = y0 + (y1 - y0) * np.arange(1, grid.ny + 1) / grid.ny
    lams = [mu + base * 2.0 ** (-j) for j in range(n_lambda)]
    lams = np.unique(np.concatenate([lams, levels[levels > mu]]))
    xs = np.linspace(grid.x_range[0], grid.x_range[1], grid.nx)
    for lam in lams:
        w = mu_wronskian(h, g, float(lam), xs)
        sc = (np.abs(h(xs + 1j * lam)) * np.abs(g(xs - 1j * lam))) / lam + 1e-300
        rel = w / sc
        used += len(xs)
        viol = np.nonzero(rel > FP_GUARD)[0]
        if viol.size:
            k = int(viol[0])
            return Verdict(Status.COUNTEREXAMPLE, witness=(float(lam), float(xs[k])),
                           samples_used=used,
                           note=f"W_lam[h,g](x) = {w[k]:.3e} >= 0 at (lam, x)")
        if np.any(rel >= -FP_GUARD):
            inconclusive = True
    if inconclusive:
        return Verdict(Status.INCONCLUSIVE, samples_used=used,
                       note="a sampled value fell within the floating-point guard of zero")
    return Verdict(Status.PASS, samples_used=used, note=SAMPLED_NOTE)


# --- Hermite-Biehler pencil -----------------------------------------------------


def hb_pencil_test(g: Poly, h: Poly, mu: float, n_angles: int = 64, tol: float = 1e-8,
                   n_x: int = 41, x_range: Tuple[float, float] = (-10.0, 10.0)) -> Verdict:
    """Check that every member cos(t) g + sin(t) h has its roots in |Im z| <= mu + tol.

    The note reports the sign of W_mu[h, g] on sampled real x (the classical
    Wronskian when mu = 0), which tells g + i h apart from its conjugate.
    """
    _require_real(g, h)
    if g.is_zero and h.is_zero:
        raise DegeneratePencil("g and h are both zero")

    gmax = float(np.max(np.abs(g.coeffs)))
    hmax = float(np.max(np.abs(h.coeffs)))
    gscale = gmax + hmax

    if is_multiple_of_real(g + 1j * h):
        # every nonzero member is a scalar multiple of one polynomial
        base = g if np.max(np.abs(g.coeffs)) >= np.max(np.abs(h.coeffs)) else h
        w = 0.0 if base.degree == 0 else strip_width(find_roots(base))
        if w > mu + tol:
            return Verdict(Status.COUNTEREXAMPLE, witness=0.0, samples_used=1,
                           note=f"collinear pencil with width {w:.6g} > {mu}")
        return Verdict(Status.PASS, samples_used=1, note=f"collinear pencil; width {w:.6g}")

    def run(angles):
        worst = -np.inf
        for used, t in enumerate(angles, start=1):
            ct, st = math.cos(t), math.sin(t)
            # trailing coefficients at rounding level (e.g. cos(pi/2) ~ 6e-17) are dropped
            noise = 8 * np.finfo(float).eps * (abs(ct) * gmax + abs(st) * hmax)
            m = Poly((ct * g + st * h).real_part().coeffs, trim=noise)
            if m.is_zero or np.max(np.abs(m.coeffs)) <= 1e-14 * gscale:
                raise DegeneratePencil(f"pencil member vanishes at angle {t:.6f}")
            if m.degree == 0:
                continue
            w = strip_width(find_roots(m))
            worst = max(worst, w)
            if w > mu + tol:
                return Verdict(Status.COUNTEREXAMPLE, witness=t, samples_used=used,
                               note=f"member at angle {t:.6f} has width {w:.6g} > {mu}"), worst
        return None, worst

    n = n_angles
    v, worst = run(math.pi * np.arange(n) / n)
    if v is None and mu + tol - worst < 1e-6:
        # refine once: the doubled grid adds only the odd angles
        v, worst2 = run(math.pi * (2 * np.arange(n) + 1) / (2 * n))
        worst = max(worst, worst2)
        n *= 2
    if v is not None:
        return v
    xs = np.linspace(x_range[0], x_range[1], n_x)
    if mu > 0:
        w = mu_wronskian(h, g, mu, xs)
    else:
        w = classical_wronskian(h, g, xs)
    if np.all(w < 0):
        sign = "negative"
    elif np.all(w > 0):
        sign = "positive"
    elif np.all(np.abs(w) < 1e-10):
        sign = "identically zero (inconclusive)"
    else:
        sign = "mixed"
    return Verdict(Status.PASS, samples_used=n,
                   note=f"W[h,g] sign on samples: {sign}; max member width {max(worst, 0.0):.6g}")


# --- Enestrom-Kakeya ----------------------------------------------------------


def enestrom_kakeya_check(p: Poly, slack: float = 1e-8) -> Verdict:
    """Roots of a polynomial with non-negative non-decreasing coefficients lie in |z| <= 1."""
    c = p.coeffs
    if not p.is_real:
        raise PreconditionFailed("coefficients must be real")
    r = c.real
    if np.any(r < 0) or np.any(np.diff(r) < 0):
        raise PreconditionFailed("coefficients must be non-negative and non-decreasing")
    if p.degree is None or p.degree == 0:
        return Verdict(Status.PASS, samples_used=0, note="constant polynomial has no roots")
    rs = find_roots(p)
    mods = np.abs(rs.roots)
    k = int(np.argmax(mods))
    if mods[k] > 1 + slack:
        return Verdict(Status.COUNTEREXAMPLE, witness=complex(rs.roots[k]), samples_used=len(mods),
                       note=f"root modulus {mods[k]:.12g}")
    return Verdict(Status.PASS, samples_used=len(mods), note=f"max root modulus {mods[k]:.12g}")


# --- Im{-f' conj f} > 0 ---------------------------------------------------------


def impart_value(f: Poly, z):
    return np.imag(-derivative(f)(z) * np.conj(f(z)))


def impart_test(f: Poly, mu: float, grid: Optional[SampleGrid] = None, tol: float = 1e-8) -> Verdict:
    """Biconditional: roots in |Im z| <= mu  iff  Im{-f'(z) conj f(z)} > 0 for Im z > mu.

    PASS means both sides agree. The witness of a failed inequality is
    reported in the note so both directions are visible.
    """
    _require_real(f)
    if f.degree is None or f.degree == 0:
        return Verdict(Status.INCONCLUSIVE, note="constant polynomial")
    if grid is None:
        grid = SampleGrid.above(mu)
    rs = find_roots(f)
    in_strip = strip_width(rs) <= mu + tol
    pts = grid.points()
    # probe straight below each root that escapes the strip, where -f'/f is
    # dominated by the pole at the root and its imaginary part is negative
    out = rs.roots[np.abs(rs.roots.imag) > mu + tol]
    probes = [complex(r.real, abs(r.imag) - t * (abs(r.imag) - mu))
              for r in out for t in (1e-2, 1e-1, 0.5)]
    probes += [complex(r.real, abs(r.imag) + d) for r in out for d in (1e-3, 1e-2, 1e-1)]
    if probes:
        pts = np.concatenate([np.array(probes), pts])
    pts = pts[pts.imag > mu]
    val = impart_value(f, pts)
    scale = np.abs(derivative(f)(pts)) * np.abs(f(pts)) + 1e-300
    rel = val / scale
    viol = np.nonzero(rel <= 0)[0]
    hard = np.nonzero(rel < -FP_GUARD)[0]
    ineq_holds = viol.size == 0
    if in_strip == ineq_holds:
        if ineq_holds:
            return Verdict(Status.PASS, samples_used=len(pts),
                           note=f"roots in strip and inequality holds on samples; {SAMPLED_NOTE}")
        k = int(viol[0])
        return Verdict(Status.PASS, witness=complex(pts[k]), samples_used=len(pts),
                       note="roots leave the strip and the inequality fails at the witness")
    if in_strip and hard.size == 0:
        return Verdict(Status.INCONCLUSIVE, witness=complex(pts[int(viol[0])]), samples_used=len(pts),
                       note="inequality value within the floating-point guard of zero")
    if in_strip:
        k = int(hard[0])
        return Verdict(Status.COUNTEREXAMPLE, witness=complex(pts[k]), samples_used=len(pts),
                       note="roots in strip but inequality fails at the witness")
    return Verdict(Status.INCONCLUSIVE, samples_used=len(pts),
                   note="roots leave the strip but no sample violated the inequality")
