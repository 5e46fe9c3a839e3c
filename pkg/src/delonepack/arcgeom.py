"""Arc-bounded region arithmetic for the planar two-string-row extremal
problem.

K(d) is the "concave arc triangle" of admissible inter-row translations:
points of the strip 0 <= x <= 2d below the line y = (sqrt(4-d^2)+sqrt(3) d)/2
and outside the radius-2 circles centered at A0 = (0,0) and A1 = (2d,0).  Its
vertices are B0 (bottom), C0 (top left) and C1 (top right).

Membership in K evaluates the defining inequalities exactly; the slack
minimum is a 1-Lipschitz signed margin, so |margin| is a certified clearance
radius on either side.  Sumset membership w in K+K is decided through the
margin functional

    mu(w) = max_u min(margin_K(u), margin_K(w - u)),

again 1-Lipschitz in w, with adaptively refined grid brackets.  The
certificate scans K (and its 2d-translate) and certifies mu < 0 everywhere
except within an isolation radius of the single touching point C1 (resp. its
mirror image), which is the computational content of the sharpness statement
for the two-row packing density.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

SQRT3 = math.sqrt(3.0)


class ArcGeomError(ValueError):
    pass


class OutOfRange(ArcGeomError):
    pass


class Inconclusive(ArcGeomError):
    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class CertificationFailed(ArcGeomError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


# ----- boundary pieces -------------------------------------------------------------


@dataclass(frozen=True)
class Segment:
    p0: tuple
    p1: tuple


@dataclass(frozen=True)
class Arc:
    center: tuple
    radius: float
    theta0: float  # radians, counterclockwise from theta0 to theta1
    theta1: float

    def point(self, t: float):
        th = self.theta0 + t * (self.theta1 - self.theta0)
        return (
            self.center[0] + self.radius * math.cos(th),
            self.center[1] + self.radius * math.sin(th),
        )


@dataclass
class ArcRegion:
    """Closed region bounded by a cyclic sequence of segments and arcs."""

    pieces: list
    margin_fn: Optional[object] = None  # exact signed margin when available

    def contains(self, p, tol: float = 0.0) -> bool:
        if self.margin_fn is not None:
            return self.margin_fn(p) >= -tol
        return _crossing_contains(self.pieces, p)

    def sample_boundary(self, per_piece: int = 64):
        pts = []
        for piece in self.pieces:
            ts = np.linspace(0.0, 1.0, per_piece, endpoint=False)
            if isinstance(piece, Segment):
                for t in ts:
                    pts.append(
                        (
                            piece.p0[0] + t * (piece.p1[0] - piece.p0[0]),
                            piece.p0[1] + t * (piece.p1[1] - piece.p0[1]),
                        )
                    )
            else:
                for t in ts:
                    pts.append(piece.point(t))
        return np.array(pts)


def _crossing_contains(pieces, p, _retry: int = 0) -> bool:
    """Crossing-number membership with a horizontal ray from p to +infinity."""
    px, py = float(p[0]), float(p[1])
    if _retry > 6:
        raise ArcGeomError(f"crossing test failed to stabilize at {p}")
    shift = py + _retry * 3.41e-9  # nudge the ray off tangencies/vertices
    crossings = 0
    for piece in pieces:
        if isinstance(piece, Segment):
            (x0, y0), (x1, y1) = piece.p0, piece.p1
            if (y0 > shift) == (y1 > shift):
                continue
            if abs(y0 - shift) < 1e-12 or abs(y1 - shift) < 1e-12:
                return _crossing_contains(pieces, p, _retry + 1)
            xcross = x0 + (shift - y0) * (x1 - x0) / (y1 - y0)
            if xcross > px:
                crossings += 1
        else:
            cx, cy = piece.center
            r = piece.radius
            dy = shift - cy
            if abs(dy) >= r:
                continue
            dx = math.sqrt(r * r - dy * dy)
            if r - abs(dy) < 1e-12:
                return _crossing_contains(pieces, p, _retry + 1)
            for xc in (cx - dx, cx + dx):
                theta = math.atan2(shift - cy, xc - cx)
                if _theta_on_arc(piece, theta) and xc > px:
                    crossings += 1
    return crossings % 2 == 1


def _theta_on_arc(arc: Arc, theta: float) -> bool:
    lo, hi = arc.theta0, arc.theta1
    if lo > hi:
        lo, hi = hi, lo
    span = hi - lo
    t = math.fmod(theta - lo, 2.0 * math.pi)
    if t < 0:
        t += 2.0 * math.pi
    return t <= span + 1e-12


# ----- the region K ----------------------------------------------------------------


@dataclass(frozen=True)
class KGeometry:
    d: float
    h: float
    ytop: float
    a0: tuple
    a1: tuple
    b0: tuple
    c0: tuple
    c1: tuple

    def margin(self, p) -> float:
        """Signed slack minimum: positive inside K, 1-Lipschitz everywhere."""
        x, y = float(p[0]), float(p[1])
        return min(
            self.ytop - y,
            y,
            x,
            2.0 * self.d - x,
            math.hypot(x, y) - 2.0,
            math.hypot(x - 2.0 * self.d, y) - 2.0,
        )

    def margin_many(self, pts: np.ndarray) -> np.ndarray:
        x = pts[..., 0]
        y = pts[..., 1]
        return np.minimum.reduce(
            [
                self.ytop - y,
                y,
                x,
                2.0 * self.d - x,
                np.hypot(x, y) - 2.0,
                np.hypot(x - 2.0 * self.d, y) - 2.0,
            ]
        )

    @property
    def bbox(self):
        return (self.c0[0], self.b0[1], self.c1[0], self.ytop)

    @property
    def vertices(self):
        return (self.b0, self.c0, self.c1)


def k_geometry(d: float) -> KGeometry:
    if not (SQRT3 < d < 2.0):
        raise OutOfRange(f"d = {d} outside (sqrt(3), 2)")
    h = math.sqrt(4.0 - d * d)
    ytop = (h + SQRT3 * d) / 2.0
    return KGeometry(
        d=d,
        h=h,
        ytop=ytop,
        a0=(0.0, 0.0),
        a1=(2.0 * d, 0.0),
        b0=(d, h),
        c0=((d - SQRT3 * h) / 2.0, ytop),
        c1=((3.0 * d + SQRT3 * h) / 2.0, ytop),
    )


def build_K(d: float) -> ArcRegion:
    """The concave arc triangle as an explicit boundary plus exact margins."""
    g = k_geometry(d)
    th_b0_from_a0 = math.atan2(g.b0[1], g.b0[0])
    th_c0_from_a0 = math.atan2(g.c0[1], g.c0[0])
    th_b0_from_a1 = math.atan2(g.b0[1], g.b0[0] - g.a1[0])
    th_c1_from_a1 = math.atan2(g.c1[1], g.c1[0] - g.a1[0])
    pieces = [
        Arc(g.a1, 2.0, th_c1_from_a1, th_b0_from_a1),
        Arc(g.a0, 2.0, th_b0_from_a0, th_c0_from_a0),
        Segment(g.c0, g.c1),
    ]
    return ArcRegion(pieces=pieces, margin_fn=g.margin)


def contains(region: ArcRegion, p, tol: float = 0.0) -> bool:
    return region.contains(p, tol=tol)


def j_curve(d: float) -> list:
    """The six-piece outer boundary of (K+K)/2: the top edge split at its
    midpoint plus four radius-1 arcs from the half-scaled copies of K."""
    g = k_geometry(d)
    mid = lambda p, q: ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)
    b0, c0, c1, a0, a1 = g.b0, g.c0, g.c1, g.a0, g.a1
    pieces = []
    # arcs of K scaled by 1/2 from each vertex, keeping only the halves on J
    def arc_between(center, p, q):
        r = math.hypot(p[0] - center[0], p[1] - center[1])
        th0 = math.atan2(p[1] - center[1], p[0] - center[0])
        th1 = math.atan2(q[1] - center[1], q[0] - center[0])
        return Arc(center, r, th0, th1)

    pieces.append(Segment(mid(c0, c1), c1))
    pieces.append(arc_between(mid(a1, c1), c1, mid(b0, c1)))
    pieces.append(arc_between(mid(a1, b0), mid(b0, c1), b0))
    pieces.append(arc_between(mid(a0, b0), b0, mid(b0, c0)))
    pieces.append(arc_between(mid(a0, c0), mid(b0, c0), c0))
    pieces.append(Segment(c0, mid(c0, c1)))
    return pieces


def l_region(d: float) -> ArcRegion:
    """The sumset outer bound 2 * ((int J) union J) as an explicit region."""
    pieces = []
    for piece in j_curve(d):
        if isinstance(piece, Segment):
            pieces.append(
                Segment(
                    (2 * piece.p0[0], 2 * piece.p0[1]),
                    (2 * piece.p1[0], 2 * piece.p1[1]),
                )
            )
        else:
            pieces.append(
                Arc(
                    (2 * piece.center[0], 2 * piece.center[1]),
                    2 * piece.radius,
                    piece.theta0,
                    piece.theta1,
                )
            )
    return ArcRegion(pieces=pieces)


# ----- sumset membership -----------------------------------------------------------


@dataclass
class _CellSet:
    centers: np.ndarray
    radius: float


class SumsetOracle:
    """Adaptive bracket evaluation of mu(w) = max_u min(m(u), m(w-u))."""

    def __init__(self, d: float, base_resolution: int = 48):
        self.geom = k_geometry(d)
        x0, y0, x1, y1 = self.geom.bbox
        pad = 1e-6
        xs = np.linspace(x0 - pad, x1 + pad, base_resolution)
        ys = np.linspace(y0 - pad, y1 + pad, base_resolution)
        gx, gy = np.meshgrid(xs, ys)
        self._u0 = np.column_stack([gx.ravel(), gy.ravel()])
        self._u0_radius = 0.5 * math.hypot(xs[1] - xs[0], ys[1] - ys[0])
        # exact boundary witnesses so closed-set touching points resolve
        self._witnesses = np.array(self.geom.vertices)

    def mu_bracket(
        self,
        w,
        tol: float = 1e-9,
        max_depth: int = 12,
        stop_below: float = -math.inf,
        stop_above: float = math.inf,
    ):
        """Branch-and-bound bracket (lower, upper) of mu(w).

        Stops early once upper < stop_below (w certainly clears that
        threshold) or lower >= stop_above (w certainly reaches it); cells that
        cannot push mu above stop_below are pruned, which keeps the live set
        concentrated around the maximizer.
        """
        w = np.asarray(w, dtype=float)
        cells = _CellSet(self._u0, self._u0_radius)
        vals = self._pair_margin(w, cells.centers)
        lower = float(np.max(self._pair_margin(w, self._witnesses), initial=-np.inf))
        lower = max(lower, float(vals.max()) if len(vals) else -math.inf)
        pruned_cap = -math.inf
        for _ in range(max_depth):
            live_upper = (float(vals.max()) + cells.radius) if len(vals) else -math.inf
            upper = max(live_upper, pruned_cap, lower)
            if upper - lower <= tol or upper < stop_below or lower >= stop_above:
                return lower, upper
            bound = vals + cells.radius
            cutoff = max(lower, stop_below)
            keep = bound > cutoff
            if (~keep).any():
                pruned_cap = max(pruned_cap, min(float(bound[~keep].max(initial=-np.inf)), cutoff))
            centers = cells.centers[keep]
            if len(centers) == 0:
                return lower, max(pruned_cap, lower)
            off = cells.radius / 2.0 / math.sqrt(2.0)
            shifts = np.array([[-off, -off], [-off, off], [off, -off], [off, off]])
            centers = (centers[:, None, :] + shifts[None, :, :]).reshape(-1, 2)
            cells = _CellSet(centers, cells.radius / 2.0)
            vals = self._pair_margin(w, cells.centers)
            lower = max(lower, float(vals.max()))
        live_upper = (float(vals.max()) + cells.radius) if len(vals) else -math.inf
        return lower, max(live_upper, pruned_cap, lower)

    def _pair_margin(self, w, us: np.ndarray) -> np.ndarray:
        if len(us) == 0:
            return np.array([-np.inf])
        return np.minimum(
            self.geom.margin_many(us), self.geom.margin_many(w[None, :] - us)
        )

    def member(self, w, tol: float = 1e-9, max_depth: int = 12) -> bool:
        lower, upper = self.mu_bracket(w, tol=tol, max_depth=max_depth)
        # the region is closed: zero-margin touching counts as membership,
        # so the decision band is one float-noise width wide
        if upper < -1e-12:
            return False
        if lower >= -1e-12:
            return True
        raise Inconclusive(
            f"membership margin for {tuple(np.asarray(w))} within ({lower:.3g}, {upper:.3g})",
            bracket=(lower, upper),
        )


def sumset_member(region_or_d, w, resolution: int = 48, tol: float = 1e-9) -> bool:
    """Is w in K + K?  Accepts the d parameter or a region built by build_K."""
    d = _as_d(region_or_d)
    return SumsetOracle(d, base_resolution=resolution).member(w, tol=tol)


def _as_d(region_or_d) -> float:
    if isinstance(region_or_d, (int, float)):
        return float(region_or_d)
    if isinstance(region_or_d, ArcRegion) and region_or_d.margin_fn is not None:
        return region_or_d.margin_fn.__self__.d
    raise ArcGeomError("expected the string parameter d or a region from build_K")


# ----- the certificate ---------------------------------------------------------------


@dataclass
class PlanarCertificate:
    d: float
    passed: bool
    isolation: float
    touch_points: list
    max_cleared_margin: float  # largest certified mu upper bound below the line
    cells_checked: int
    deepest_level: int
    failures: list = field(default_factory=list)

    def to_json_dict(self):
        return {
            "d": self.d,
            "pass": self.passed,
            "isolation": self.isolation,
            "touch_points": [list(p) for p in self.touch_points],
            "max_cleared_margin": self.max_cleared_margin,
            "cells_checked": self.cells_checked,
            "deepest_level": self.deepest_level,
            "failures": self.failures,
        }


def certify_planar_theorem(
    d: float,
    resolution: int = 40,
    depth: int = 12,
    isolation: float = 1e-3,
    inflate: float = 0.0,
) -> PlanarCertificate:
    """Certify that K / K+(2d,0) meet the sumset K+K only at C1 / its mirror.

    Every cell of the two scan regions is certified to satisfy mu < -inflate
    (refined up to `depth` levels) unless it lies within `isolation` of the
    touching vertex; any certified counterexample raises CertificationFailed.
    The inflate parameter exists for negative controls: inflating the sumset
    by 0.05 must break the certificate.
    """
    g = k_geometry(d)
    oracle = SumsetOracle(d)
    shift = np.array([2.0 * d, 0.0])
    mirror_c0 = (g.c0[0] + 2.0 * d, g.c0[1])

    scans = [
        ("K", np.zeros(2), np.array(g.c1)),
        ("K+2d", shift, np.array(mirror_c0)),
    ]

    cells_checked = 0
    deepest = 0
    max_cleared = -math.inf
    failures = []

    for name, offset, touch in scans:
        x0, y0, x1, y1 = g.bbox
        xs = np.linspace(x0, x1, resolution + 1)
        ys = np.linspace(y0, y1, resolution + 1)
        cx = 0.5 * (xs[:-1] + xs[1:])
        cy = 0.5 * (ys[:-1] + ys[1:])
        gx, gy = np.meshgrid(cx, cy)
        centers = np.column_stack([gx.ravel(), gy.ravel()]) + offset
        radius = 0.5 * math.hypot(xs[1] - xs[0], ys[1] - ys[0])
        stack = [(c, radius, 0) for c in centers]

        while stack:
            c, rad, level = stack.pop()
            cells_checked += 1
            deepest = max(deepest, level)
            # skip cells with no K-translate point
            if g.margin(c - offset) + rad < 0.0:
                continue
            target = -inflate - rad
            lo, up = oracle.mu_bracket(
                c, tol=max(rad / 2.0, 1e-12), max_depth=depth + 4, stop_below=target
            )
            if up < target:
                max_cleared = max(max_cleared, up + rad)
                continue
            if (
                lo > -inflate
                and g.margin(c - offset) >= 0.0
                and math.hypot(c[0] - touch[0], c[1] - touch[1]) > isolation
            ):
                failures.append(
                    {"scan": name, "point": [float(c[0]), float(c[1])], "mu_lower": lo}
                )
                continue
            if level >= depth:
                # unresolved cells are only tolerated inside the isolation
                # disc around the touching vertex
                if math.hypot(c[0] - touch[0], c[1] - touch[1]) - rad > isolation:
                    failures.append(
                        {
                            "scan": name,
                            "point": [float(c[0]), float(c[1])],
                            "undecided_bracket": [lo, up],
                        }
                    )
                continue
            half = rad / 2.0
            off = half / math.sqrt(2.0)
            for sx in (-off, off):
                for sy in (-off, off):
                    stack.append((c + np.array([sx, sy]), half, level + 1))

    # positive control: the touching points really are sumset members
    touch_points = []
    for name, offset, touch in scans:
        lo, up = oracle.mu_bracket(np.asarray(touch), tol=1e-12, max_depth=depth)
        if lo < -1e-9:
            failures.append({"scan": name, "point": list(map(float, touch)), "touch_mu": lo})
        else:
            touch_points.append(tuple(map(float, touch)))
    # mirror symmetry of the two touching points about x = 2d
    if len(touch_points) == 2:
        mx = 4.0 * d - touch_points[1][0]
        if not (
            math.isclose(mx, touch_points[0][0], abs_tol=1e-9)
            and math.isclose(touch_points[0][1], touch_points[1][1], abs_tol=1e-9)
        ):
            failures.append({"scan": "symmetry", "point": list(touch_points[1])})

    cert = PlanarCertificate(
        d=d,
        passed=not failures,
        isolation=isolation,
        touch_points=touch_points,
        max_cleared_margin=max_cleared,
        cells_checked=cells_checked,
        deepest_level=deepest,
        failures=failures,
    )
    if failures and inflate == 0.0:
        raise CertificationFailed(
            f"planar certificate failed for d={d}: {failures[:2]}",
            counterexample=failures[0],
        )
    return cert
