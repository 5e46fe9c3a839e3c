"""Rotationally symmetric bodies built from unit balls along an axis:
equidistant ball strings, square/triangular ball layers, and custom concave
solids of revolution.

The touching function g maps an axial offset to half the minimal horizontal
separation of two disjoint translates.  For ball profiles it has the closed
form sqrt(4 - delta^2)/2 with delta the distance to the nearest axial lattice
point; the definitional search (minimize the separation subject to all
inter-ball distances >= 2) is kept alongside as an independent oracle.

V0 is the least area of the axis-intersection triangle of three mutually
touching translates; it feeds the density machinery: a profile with
sup g = 1 and inf g = m >= 1/sqrt(2) packs with density at least
pi * fill / (2 * sqrt(4 m^2 - 1)).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .geom import area_from_sides

SQRT2 = math.sqrt(2.0)


class ProfileError(ValueError):
    pass


class CoveringViolated(ProfileError):
    pass


class HypothesisViolated(ProfileError):
    pass


@dataclass(frozen=True)
class DensityExpr:
    """A density value plus the exact expression it was derived from."""

    value: float
    expr: str


@dataclass
class StringProfile:
    """A string or layer of unit balls (or a custom concave revolution body).

    kind: "string" (spacing 2d along one axis), "square_layer" /
    "tri_layer" (edge-2 lattices spanning a two-dimensional axis), or
    "custom" (1D axis of period `period` with sampled radius profile
    f: fundamental cell -> [1/sqrt(2), 1], concave, max 1).
    """

    kind: str
    d: Optional[float] = None
    period: Optional[float] = None
    f_samples: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.kind == "string":
            if self.d is None or self.d < 1.0:
                raise ProfileError("string profile needs spacing parameter d >= 1")
        elif self.kind in ("square_layer", "tri_layer"):
            pass
        elif self.kind == "custom":
            if self.period is None or self.f_samples is None:
                raise ProfileError("custom profile needs period and f_samples")
            fs = np.asarray(self.f_samples, dtype=float)
            if fs.min() < 1.0 / SQRT2 - 1e-9 or fs.max() > 1.0 + 1e-9:
                raise HypothesisViolated(
                    "custom profile radius must stay within [1/sqrt(2), 1]"
                )
            self.f_samples = fs
        else:
            raise ProfileError(f"unknown profile kind {self.kind!r}")

    # ----- axial lattice helpers -------------------------------------------------

    @property
    def axis_dim(self) -> int:
        return 2 if self.kind in ("square_layer", "tri_layer") else 1

    @property
    def axial_basis(self) -> np.ndarray:
        if self.kind == "string":
            return np.array([[2.0 * self.d]])
        if self.kind == "square_layer":
            return np.array([[2.0, 0.0], [0.0, 2.0]])
        if self.kind == "tri_layer":
            return np.array([[2.0, 0.0], [1.0, math.sqrt(3.0)]])
        return np.array([[self.period]])

    @property
    def covering_radius(self) -> float:
        """Largest distance from a point of the axis to the lattice."""
        if self.kind == "string":
            return self.d
        if self.kind == "square_layer":
            return SQRT2
        if self.kind == "tri_layer":
            return 2.0 / math.sqrt(3.0)
        raise ProfileError("covering radius is lattice-specific")

    def axial_distance(self, offset) -> float:
        """Distance from `offset` to the nearest axial lattice point."""
        w = np.atleast_1d(np.asarray(offset, dtype=float))
        return float(self.axial_distance_many(w[None, :])[0])

    def axial_distance_many(self, W: np.ndarray) -> np.ndarray:
        """Vectorized nearest-lattice-point distance for an (N, dim) array."""
        W = np.asarray(W, dtype=float)
        basis = self.axial_basis
        frac = np.linalg.solve(basis.T, W.T).T
        base = np.floor(frac)
        best = np.full(len(W), np.inf)
        dim = W.shape[1]
        for corner in np.ndindex(*(3,) * dim):
            k = base + (np.asarray(corner) - 1)
            diff = W - k @ basis
            best = np.minimum(best, np.linalg.norm(diff, axis=1))
        return best

    def g_many(self, W: np.ndarray) -> np.ndarray:
        """Vectorized touching function for ball profiles (no covering check)."""
        delta = self.axial_distance_many(W)
        return np.sqrt(np.maximum(4.0 - np.minimum(delta, 2.0) ** 2, 0.0)) / 2.0

    # ----- the touching function -------------------------------------------------

    def _radius_profile(self, t: np.ndarray) -> np.ndarray:
        """Cross-section radius of the custom body at axial coordinates t."""
        fs = self.f_samples
        period = self.period
        grid = np.linspace(0.0, period, len(fs), endpoint=False)
        tt = np.mod(t, period)
        return np.interp(tt, grid, fs, period=period)

    def g_value(self, offset) -> float:
        """Half the minimal horizontal separation of two disjoint translates
        whose axes differ by `offset`."""
        if self.kind == "custom":
            z = float(np.atleast_1d(offset)[0])
            t = np.linspace(0.0, self.period, 4096, endpoint=False)
            return float(np.max(self._radius_profile(t) + self._radius_profile(t - z))) / 2.0
        delta = self.axial_distance(offset)
        if delta > 2.0:
            raise CoveringViolated(
                f"axial gap {delta:.6g} > 2: concentric balls do not cover the axis"
            )
        return math.sqrt(4.0 - delta * delta) / 2.0

    def g_value_search(self, offset, neighbors: int = 4) -> float:
        """Definitional search for ball profiles: the minimal |x1| keeping all
        inter-ball center distances >= 2, by enumerating nearby lattice pairs."""
        if self.kind == "custom":
            return self.g_value(offset)
        w = np.atleast_1d(np.asarray(offset, dtype=float))
        basis = self.axial_basis
        best = 0.0
        found = False
        for corner in np.ndindex(*(2 * neighbors + 1,) * len(w)):
            k = np.asarray(corner) - neighbors
            diff = w - basis.T @ k
            dist2 = float(diff @ diff)
            if dist2 < 4.0:
                found = True
                best = max(best, math.sqrt(4.0 - dist2))
        if not found and self.axial_distance(offset) > 2.0:
            raise CoveringViolated("no ball pair constrains the separation")
        return best / 2.0

    # ----- m, M -------------------------------------------------------------------

    def m_M(self, resolution: int = 512, tol: float = 1e-10):
        """(inf g, sup g) over one axial fundamental domain, by grid plus
        local refinement.  sup g is attained at offset zero and equals 1."""
        big_m = self.g_value(np.zeros(self.axis_dim))
        lo, argmin = self._min_g_grid(resolution)
        lo, _ = _pattern_refine(
            lambda z: self.g_value(z), argmin, self._fundamental_extent() / resolution, tol
        )
        if lo < 1.0 / SQRT2 - 1e-9:
            raise HypothesisViolated(
                f"inf g = {lo:.9g} < 1/sqrt(2): profile outside the admissible family"
            )
        return lo, big_m

    def _fundamental_extent(self) -> float:
        basis = self.axial_basis
        return float(np.max(np.linalg.norm(basis, axis=1)))

    def _min_g_grid(self, resolution: int):
        if self.axis_dim == 1:
            period = float(self.axial_basis[0, 0])
            zs = np.linspace(0.0, period, resolution, endpoint=False)
            if self.kind == "custom":
                vals = np.array([self.g_value([z]) for z in zs])
            else:
                vals = self.g_many(zs[:, None])
            i = int(np.argmin(vals))
            return float(vals[i]), np.array([zs[i]])
        basis = self.axial_basis
        us = np.linspace(0.0, 1.0, resolution, endpoint=False)
        a, b = np.meshgrid(us, us)
        pts = a.ravel()[:, None] * basis[0] + b.ravel()[:, None] * basis[1]
        vals = self.g_many(pts)
        j = int(np.argmin(vals))
        return float(vals[j]), pts[j]

    # ----- fill density ------------------------------------------------------------

    def fill_density(self) -> DensityExpr:
        """Fraction of the radius-1 cylinder around the axis occupied by the body."""
        if self.kind == "string":
            # ball volume per period / (pi * period)
            return DensityExpr(value=2.0 / (3.0 * self.d), expr=f"2/(3*{self.d!r})")
        if self.kind == "square_layer":
            # 4-ball volume pi^2/2 per cell of area 4, cylinder section pi
            return DensityExpr(value=math.pi / 8.0, expr="pi/8")
        if self.kind == "tri_layer":
            return DensityExpr(value=math.pi / (4.0 * math.sqrt(3.0)), expr="pi/(4*sqrt(3))")
        t = np.linspace(0.0, self.period, 8192, endpoint=False)
        vol = float(np.mean(self._radius_profile(t) ** 2))  # * pi * period
        return DensityExpr(value=vol, expr="numeric")


def _pattern_refine(fn: Callable, x0: np.ndarray, step: float, tol: float):
    """Local pattern search over the full +-step neighborhood (diagonals
    included, so kinks of min-of-cones landscapes do not stall it); the step
    halves whenever no neighbor improves, down to `tol`."""
    x = np.array(x0, dtype=float)
    best = fn(x)
    dim = len(x)
    moves = [np.asarray(mv) for mv in np.ndindex(*(3,) * dim)]
    moves = [mv - 1 for mv in moves if (mv != 1).any()]
    while step > tol:
        improved = False
        for mv in moves:
            cand = x + mv * step
            v = fn(cand)
            if v < best:
                best, x = v, cand
                improved = True
        if not improved:
            step *= 0.5
    return float(best), x


@dataclass(frozen=True)
class TouchingTriple:
    offsets: tuple  # the two independent axial offsets (third is forced)
    sides: tuple  # (2 g(u), 2 g(v), 2 g(u+v))
    area: float

    @property
    def side_ratio(self) -> float:
        return max(self.sides) / min(self.sides)


@dataclass(frozen=True)
class V0Result:
    value: float
    bracket: tuple  # (lower_estimate, upper=value)
    triple: TouchingTriple


def _triangle_area_from_g(p: StringProfile, u, v):
    su = 2.0 * p.g_value(u)
    sv = 2.0 * p.g_value(v)
    sw = 2.0 * p.g_value(np.asarray(u) + np.asarray(v))
    return area_from_sides(su, sv, sw), (su, sv, sw)


def v0_of(p: StringProfile, resolution: int = 256, tol: float = 1e-10) -> V0Result:
    """Least axis-triangle area over all pairs of touching offsets.

    Grid over the squared fundamental domain followed by coordinate-descent
    refinement to box size `tol`.  The returned triple always satisfies the
    non-obtuseness invariant max side / min side <= sqrt(2).
    """
    dim = p.axis_dim

    if dim == 1:
        period = float(p.axial_basis[0, 0])
        zs = np.linspace(0.0, period, resolution, endpoint=False)
        if p.kind == "custom":
            gz = np.array([p.g_value([z]) for z in zs])
            # g(u+v) on the same grid (indices add modulo the resolution)
            idx = (np.arange(resolution)[:, None] + np.arange(resolution)[None, :]) % resolution
            gw = gz[idx]
            area = _heron_grid(2 * gz[:, None], 2 * gz[None, :], 2 * gw)
        else:
            g1 = p.g_many(zs[:, None])
            w = zs[:, None] + zs[None, :]
            gw = p.g_many(w.ravel()[:, None]).reshape(w.shape)
            area = _heron_grid(2 * g1[:, None], 2 * g1[None, :], 2 * gw)
        i = np.unravel_index(np.argmin(area), area.shape)
        x0 = np.array([zs[i[0]], zs[i[1]]])
        fn = lambda x: _triangle_area_from_g(p, [x[0]], [x[1]])[0]
        step0 = period / resolution
    else:
        basis = p.axial_basis
        k = max(16, resolution // 8)
        us = np.linspace(0.0, 1.0, k, endpoint=False)
        a, b = np.meshgrid(us, us)
        cell = a.ravel()[:, None] * basis[0] + b.ravel()[:, None] * basis[1]  # (k^2, 2)
        g1 = p.g_many(cell)
        w = cell[:, None, :] + cell[None, :, :]
        gw = p.g_many(w.reshape(-1, 2)).reshape(len(cell), len(cell))
        area = _heron_grid(2 * g1[:, None], 2 * g1[None, :], 2 * gw)
        i = np.unravel_index(np.argmin(area), area.shape)
        x0 = np.concatenate([cell[i[0]], cell[i[1]]])
        fn = lambda x: _triangle_area_from_g(p, x[:2], x[2:])[0]
        step0 = p._fundamental_extent() / k

    best_val, x = _pattern_refine(fn, x0, step0, tol)

    if dim == 1:
        area, sides = _triangle_area_from_g(p, [x[0]], [x[1]])
        offs = (float(x[0]), float(x[1]))
    else:
        area, sides = _triangle_area_from_g(p, x[:2], x[2:])
        offs = (tuple(x[:2]), tuple(x[2:]))
    triple = TouchingTriple(offsets=offs, sides=sides, area=area)
    if triple.side_ratio > SQRT2 + 1e-9:
        raise ProfileError(
            f"minimizing triple has side ratio {triple.side_ratio:.9g} > sqrt(2)"
        )
    # lower estimate: the refinement has converged to box `tol`; the landscape
    # is piecewise smooth, so the residual is bounded by the last step's scan
    lower = best_val - max(4.0 * tol, 1e-12)
    return V0Result(value=float(best_val), bracket=(float(lower), float(best_val)), triple=triple)


def _heron_grid(a, b, c):
    s1 = a + b + c
    s2 = -a + b + c
    s3 = a - b + c
    s4 = a + b - c
    return 0.25 * np.sqrt(np.maximum(s1 * s2 * s3 * s4, 0.0))


def m_M_of(p: StringProfile, resolution: int = 512):
    return p.m_M(resolution=resolution)


def g_value(p: StringProfile, offset) -> float:
    return p.g_value(offset)


def density_lower_bound(p: StringProfile) -> float:
    """Guaranteed-achievable lattice packing density of translates of the
    profile: pi * fill / (2 * sqrt(4 m^2 - 1))."""
    m, big_m = p.m_M()
    if not (1.0 / SQRT2 - 1e-9 <= m <= big_m <= 1.0 + 1e-9):
        raise HypothesisViolated(f"(m, M) = ({m}, {big_m}) outside the admissible range")
    fill = p.fill_density().value
    return math.pi * fill / (2.0 * math.sqrt(4.0 * m * m - 1.0))


def profile_from_spec(spec) -> StringProfile:
    """Build a profile from a JSON-style dict {kind, d?, period?, f_samples?}."""
    if isinstance(spec, str):
        with open(spec) as fh:
            spec = json.load(fh)
    kind = spec["kind"]
    return StringProfile(
        kind=kind,
        d=spec.get("d"),
        period=spec.get("period"),
        f_samples=np.asarray(spec["f_samples"], dtype=float) if "f_samples" in spec else None,
    )
