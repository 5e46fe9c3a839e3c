"""Delone (Delaunay) triangulations of finite point sets on a rectangular
torus or a bounded window.

Construction is delegated to Qhull (scipy.spatial.Delaunay); everything the
rest of the package relies on is re-checked independently: `validate_delone`
brute-forces the empty-circumcircle property with the adaptive predicates
from `geom`, and the structural invariants (adjacency symmetry, Euler count
on the torus, the opposite-angle sum on shared edges) are asserted at build
time.

The torus is realized by triangulating a 3x3 patch of ghost copies and
keeping one canonical instance per quotient triangle (the instance whose
circumcenter falls in the fundamental domain).  Groups of mutually
cocircular triangles are re-triangulated by fanning from the lexicographically
smallest vertex so that the output does not depend on Qhull's tie-breaking.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np
from scipy.spatial import Delaunay as _QhullDelaunay
from scipy.spatial import QhullError

from .geom import EPS_ANGLE, TriangleMetrics, orient2d, triangle_metrics


class DeloneError(ValueError):
    pass


class TooFewPoints(DeloneError):
    pass


class DuplicatePoints(DeloneError):
    pass


class DegenerateInput(DeloneError):
    pass


class DomainTooSmall(DeloneError):
    pass


@dataclass(frozen=True)
class Torus:
    period_x: float
    period_y: float

    def __post_init__(self):
        if not (self.period_x > 0 and self.period_y > 0):
            raise DeloneError("torus periods must be positive")

    @property
    def periods(self):
        return np.array([self.period_x, self.period_y])


@dataclass(frozen=True)
class Window:
    """Bounded approximation of the plane: points should extend `margin`
    beyond `bbox` (at least ~4 expected covering radii) so that every
    triangle whose circumcircle lies inside bbox is free of boundary
    artifacts; only those triangles enter interior statistics."""

    bbox: tuple[float, float, float, float]  # xmin, ymin, xmax, ymax
    margin: float = 0.0

    def __post_init__(self):
        xmin, ymin, xmax, ymax = self.bbox
        if not (xmax > xmin and ymax > ymin):
            raise DeloneError("window bbox must have positive extent")


Domain = Union[Torus, Window]


@dataclass
class ValidationReport:
    circumcircle_violations: list = field(default_factory=list)
    angular_violations: list = field(default_factory=list)
    structural_issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (
            self.circumcircle_violations
            or self.angular_violations
            or self.structural_issues
        )


@dataclass
class DeloneTriangulation:
    """Finished triangulation; immutable by convention after construction.

    tri_indices[t]  : original point index of each of the 3 vertices
    tri_shifts[t]   : integer period shifts per vertex (all zero on a window)
    tri_coords[t]   : the instance coordinates the metrics were computed from
    adjacency[t][e] : triangle across the edge opposite local vertex e, or -1
    adj_offsets[t][e]: translation that maps the neighbor instance into this
                       triangle's frame (torus wrap bookkeeping)
    interior[t]     : participates in statistics (window: circumcircle inside
                       the core bbox; torus: always true)
    """

    points: np.ndarray
    domain: Domain
    tri_indices: np.ndarray
    tri_shifts: np.ndarray
    tri_coords: np.ndarray
    adjacency: np.ndarray
    adj_offsets: np.ndarray
    interior: np.ndarray
    triangles: list[TriangleMetrics]

    @property
    def n_points(self) -> int:
        return len(self.points)

    @property
    def n_triangles(self) -> int:
        return len(self.tri_indices)

    def back_edge(self, t: int, e: int) -> int:
        """Local edge index of neighbor adjacency[t, e] that leads back to t.

        Resolved by matching shared-edge coordinates, so it stays correct even
        when two triangles of a small torus share two distinct edges.
        """
        u = int(self.adjacency[t, e])
        offset = self.adj_offsets[t, e]
        mine = sorted(
            map(tuple, (self.tri_coords[t, (e + 1) % 3], self.tri_coords[t, (e + 2) % 3]))
        )
        for e2 in np.nonzero(self.adjacency[u] == t)[0]:
            theirs = sorted(
                map(
                    tuple,
                    (
                        self.tri_coords[u, (e2 + 1) % 3] + offset,
                        self.tri_coords[u, (e2 + 2) % 3] + offset,
                    ),
                )
            )
            if np.allclose(mine, theirs, atol=1e-9):
                return int(e2)
        raise DeloneError(f"adjacency back-edge not found for triangle {t} edge {e}")

    def neighbor_opposite_vertex(self, t: int, local_vertex: int):
        """Neighbor across the edge opposite `local_vertex`, with the opposite
        vertex of that neighbor expressed in this triangle's frame.

        Returns (neighbor_index, opposite_point) or (None, None) at a boundary.
        """
        u = int(self.adjacency[t, local_vertex])
        if u < 0:
            return None, None
        e_back = self.back_edge(t, local_vertex)
        return u, self.tri_coords[u, e_back] + self.adj_offsets[t, local_vertex]


def load_points_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or [f.strip() for f in reader.fieldnames[:2]] != ["x", "y"]:
            raise DeloneError(f"{path}: expected CSV header 'x,y'")
        pts = [(float(row["x"]), float(row["y"])) for row in reader]
    return np.asarray(pts, dtype=float)


def load_points_json(path) -> np.ndarray:
    with open(path) as fh:
        data = json.load(fh)
    pts = np.asarray(data, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DeloneError(f"{path}: expected a JSON array of [x, y] pairs")
    return pts


def load_points(path) -> np.ndarray:
    path = str(path)
    if path.endswith(".json"):
        return load_points_json(path)
    return load_points_csv(path)


def _check_input(points: np.ndarray, domain: Domain) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or points.shape[1] != 2:
        raise DeloneError("points must be an (n, 2) array")
    if len(points) < 3:
        raise TooFewPoints(f"need >= 3 points, got {len(points)}")
    if not np.isfinite(points).all():
        raise DeloneError("points must be finite")
    if isinstance(domain, Torus):
        periods = domain.periods
        points = points - np.floor(points / periods) * periods
    # pairwise-distinct check (torus metric where applicable)
    from scipy.spatial import cKDTree

    if isinstance(domain, Torus):
        tree = cKDTree(points, boxsize=domain.periods)
    else:
        tree = cKDTree(points)
    dup = tree.query_pairs(r=1e-9, output_type="ndarray")
    if len(dup):
        i, j = dup[0]
        raise DuplicatePoints(f"points {i} and {j} coincide")
    return points


def _edge_key(i, si, j, sj):
    """Canonical unordered key for the edge (point i, shift si)-(point j, shift sj).

    Shifts are normalized so the first endpoint carries shift (0, 0); the
    direction giving the lexicographically smaller tuple is used.
    """
    a = (i, j, sj[0] - si[0], sj[1] - si[1])
    b = (j, i, si[0] - sj[0], si[1] - sj[1])
    return a if a <= b else b


def _build_adjacency(tri_indices, tri_shifts, tri_coords, periods):
    m = len(tri_indices)
    adjacency = -np.ones((m, 3), dtype=np.int64)
    adj_offsets = np.zeros((m, 3, 2), dtype=float)
    edges: dict = {}
    for t in range(m):
        idx = tri_indices[t]
        sh = tri_shifts[t]
        for e in range(3):
            a, b = (e + 1) % 3, (e + 2) % 3
            key = _edge_key(int(idx[a]), tuple(sh[a]), int(idx[b]), tuple(sh[b]))
            edges.setdefault(key, []).append((t, e))
    issues = []
    for key, users in edges.items():
        if len(users) > 2:
            issues.append(("edge shared by more than two triangles", key, users))
            continue
        if len(users) == 2:
            (t1, e1), (t2, e2) = users
            adjacency[t1, e1] = t2
            adjacency[t2, e2] = t1
            # translation carrying t2's instance into t1's frame, read off a
            # shared vertex (edge endpoints of a valid triangle have distinct ids)
            a1 = (e1 + 1) % 3
            vid = int(tri_indices[t1, a1])
            k2 = [k for k in range(3) if k != e2 and int(tri_indices[t2, k]) == vid][0]
            off = tri_coords[t1, a1] - tri_coords[t2, k2]
            adj_offsets[t1, e1] = off
            adj_offsets[t2, e2] = -off
    return adjacency, adj_offsets, edges, issues


def _canonical_torus_triangles(points, domain, ghost_simplices, ghost_orig, ghost_shift, ghost_coords):
    periods = domain.periods
    lo = -periods
    hi = 2.0 * periods
    chosen = set()
    for simplex in ghost_simplices:
        g0, g1, g2 = (int(v) for v in simplex)
        p0, p1, p2 = ghost_coords[g0], ghost_coords[g1], ghost_coords[g2]
        d = 2.0 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) - (p1[1] - p0[1]) * (p2[0] - p0[0]))
        if d == 0.0:
            continue
        b2 = (p1[0] - p0[0]) ** 2 + (p1[1] - p0[1]) ** 2
        c2 = (p2[0] - p0[0]) ** 2 + (p2[1] - p0[1]) ** 2
        ux = ((p2[1] - p0[1]) * b2 - (p1[1] - p0[1]) * c2) / d
        uy = ((p1[0] - p0[0]) * c2 - (p2[0] - p0[0]) * b2) / d
        cc = np.array([p0[0] + ux, p0[1] + uy])
        radius = math.hypot(ux, uy)
        # a quotient-valid cell must have its (empty) circumcircle contained
        # in the 3x3 ghost patch, so that emptiness against the ghosts
        # certifies emptiness against the whole lattice of copies
        if (cc - radius < lo).any() or (cc + radius > hi).any():
            continue
        pairs = [
            (int(ghost_orig[g]), (int(ghost_shift[g][0]), int(ghost_shift[g][1])))
            for g in (g0, g1, g2)
        ]
        if len({p[0] for p in pairs}) < 3:
            # two copies of one point in a single cell: torus too small;
            # caught later by the empty-circle diameter check
            continue
        # translation-invariant canonical form: shifts relative to the vertex
        # with the smallest original index
        pivot = min(pairs)[1]
        key = tuple(
            sorted((i, (s[0] - pivot[0], s[1] - pivot[1])) for i, s in pairs)
        )
        chosen.add(key)
    tri_indices = []
    tri_shifts = []
    for key in sorted(chosen):
        idx = [k[0] for k in key]
        sh = np.array([list(k[1]) for k in key], dtype=np.int64)
        # place the instance so its circumcenter lies in the fundamental domain
        coords = points[idx] + sh * periods
        met = triangle_metrics(coords[0], coords[1], coords[2])
        cshift = np.floor(np.asarray(met.circumcenter) / periods).astype(np.int64)
        tri_indices.append(idx)
        tri_shifts.append(sh - cshift)
    return np.asarray(tri_indices, dtype=np.int64), np.asarray(tri_shifts, dtype=np.int64)


def _instance_coords(points, tri_indices, tri_shifts, periods):
    coords = points[tri_indices].astype(float)
    if periods is not None:
        coords = coords + tri_shifts * periods
    return coords


def _orient_ccw(tri_indices, tri_shifts, coords):
    for t in range(len(tri_indices)):
        if orient2d(coords[t, 0], coords[t, 1], coords[t, 2]) < 0:
            tri_indices[t, [1, 2]] = tri_indices[t, [2, 1]]
            tri_shifts[t, [1, 2]] = tri_shifts[t, [2, 1]]
            coords[t, [1, 2]] = coords[t, [2, 1]]
    return tri_indices, tri_shifts, coords


def _refan_cocircular(points, tri_indices, tri_shifts, coords, periods):
    """Deterministic tie-break for cocircular polygons.

    Triangles sharing one (empty) circumcircle are collected by clustering
    circle parameters, then the inscribed polygon is re-triangulated by
    fanning from its smallest vertex (ordered by original point coordinates,
    then index).  This also collapses duplicate diagonal choices that Qhull
    may have made in different ghost copies of the same cocircular cell.
    """
    from scipy.spatial import cKDTree

    m = len(tri_indices)
    centers = np.empty((m, 2))
    radii = np.empty(m)
    for t in range(m):
        met = triangle_metrics(coords[t, 0], coords[t, 1], coords[t, 2])
        centers[t] = met.circumcenter
        radii[t] = met.circumradius

    if periods is not None:
        cmod = centers - np.floor(centers / periods) * periods
        cmod = np.where(cmod >= periods, 0.0, cmod)  # guard float fold-over
        tree = cKDTree(cmod, boxsize=periods)
    else:
        tree = cKDTree(centers)
    tol = 1e-8 * float(np.max(radii))
    pairs = tree.query_pairs(r=tol, output_type="ndarray")

    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[ry] = rx

    for i, j in pairs:
        if abs(radii[i] - radii[j]) <= tol:
            union(int(i), int(j))

    groups: dict = {}
    for t in range(m):
        groups.setdefault(find(t), []).append(t)
    groups = {k: sorted(v) for k, v in groups.items() if len(v) > 1}
    if not groups:
        return tri_indices, tri_shifts, coords

    drop = set()
    new_tris = []
    new_shifts = []
    for members in groups.values():
        ref_center = centers[members[0]]
        radius = radii[members[0]]
        verts: dict = {}
        ok = True
        for t in members:
            # align this member's instance with the reference frame
            if periods is not None:
                k = np.round((centers[t] - ref_center) / periods)
                off = -k * periods
            else:
                off = np.zeros(2)
            for kk in range(3):
                vid = int(tri_indices[t, kk])
                coord = coords[t, kk] + off
                prev = verts.get(vid)
                if prev is not None and not np.allclose(prev, coord, atol=1e-7 * radius):
                    ok = False
                verts.setdefault(vid, coord)
        if not ok or len(verts) < 4:
            # nothing to re-fan (or inconsistent overlay); keep Qhull's choice
            if len(verts) >= 4:
                continue
            # 3 vertices with >1 member means exact duplicates: keep one
            if len(verts) == 3 and len(members) > 1:
                drop.update(members[1:])
            continue
        # all polygon vertices must sit on the common circle
        if any(
            abs(math.hypot(*(v - ref_center)) - radius) > 1e-6 * radius
            for v in verts.values()
        ):
            continue
        order = sorted(
            verts,
            key=lambda vid: math.atan2(
                verts[vid][1] - ref_center[1], verts[vid][0] - ref_center[0]
            ),
        )
        anchor = min(order, key=lambda vid: (points[vid][0], points[vid][1], vid))
        a = order.index(anchor)
        ring = order[a:] + order[:a]
        drop.update(members)
        for j in range(1, len(ring) - 1):
            tri = [ring[0], ring[j], ring[j + 1]]
            cs = [verts[v] for v in tri]
            if orient2d(cs[0], cs[1], cs[2]) < 0:
                tri = [tri[0], tri[2], tri[1]]
                cs = [cs[0], cs[2], cs[1]]
            if periods is not None:
                sh = [
                    np.round((c - points[v]) / periods).astype(int)
                    for v, c in zip(tri, cs)
                ]
            else:
                sh = [np.zeros(2, dtype=int)] * 3
            new_tris.append(tri)
            new_shifts.append(sh)

    if not drop:
        return tri_indices, tri_shifts, coords
    keep = [t for t in range(m) if t not in drop]
    new_tris_arr = np.asarray(new_tris, dtype=np.int64).reshape(-1, 3)
    new_shifts_arr = np.asarray(new_shifts, dtype=np.int64).reshape(-1, 3, 2)
    tri_indices = np.concatenate([tri_indices[keep], new_tris_arr])
    tri_shifts = np.concatenate([tri_shifts[keep], new_shifts_arr])
    if periods is not None:
        # renormalize: put each triangle's circumcenter into the fundamental domain
        coords = _instance_coords(points, tri_indices, tri_shifts, periods)
        for t in range(len(tri_indices)):
            met = triangle_metrics(coords[t, 0], coords[t, 1], coords[t, 2])
            cshift = np.floor(np.asarray(met.circumcenter) / periods).astype(int)
            if cshift.any():
                tri_shifts[t] -= cshift
        # canonical order for determinism
        keymat = [
            tuple(sorted(zip(map(int, tri_indices[t]), map(tuple, tri_shifts[t]))))
            for t in range(len(tri_indices))
        ]
        order = sorted(range(len(keymat)), key=lambda t: keymat[t])
        tri_indices = tri_indices[order]
        tri_shifts = tri_shifts[order]
    coords = _instance_coords(points, tri_indices, tri_shifts, periods)
    return tri_indices, tri_shifts, coords


def build_delone(points: Sequence, domain: Domain) -> DeloneTriangulation:
    """Delaunay triangulation of `points` over `domain`.

    Raises TooFewPoints / DuplicatePoints on bad input, DegenerateInput when
    the point set has no two-dimensional triangulation, and DomainTooSmall
    when a torus is too small for its largest empty circle (the quotient
    triangulation is not well defined there).
    """
    points = _check_input(points, domain)
    periods = domain.periods if isinstance(domain, Torus) else None

    try:
        if isinstance(domain, Torus):
            offs = [(i, j) for j in (-1, 0, 1) for i in (-1, 0, 1)]
            ghost_coords = np.concatenate(
                [points + np.array(o) * periods for o in offs]
            )
            n = len(points)
            ghost_orig = np.concatenate([np.arange(n)] * 9)
            ghost_shift = np.concatenate(
                [np.tile(np.array(o, dtype=int), (n, 1)) for o in offs]
            )
            hull = _QhullDelaunay(ghost_coords)
            tri_indices, tri_shifts = _canonical_torus_triangles(
                points, domain, hull.simplices, ghost_orig, ghost_shift, ghost_coords
            )
        else:
            hull = _QhullDelaunay(points)
            tri_indices = np.sort(hull.simplices, axis=1).astype(np.int64)
            tri_indices = tri_indices[np.lexsort(tri_indices.T[::-1])]
            tri_shifts = np.zeros((len(tri_indices), 3, 2), dtype=np.int64)
    except QhullError as exc:
        raise DegenerateInput(f"no 2D triangulation: {exc}") from None

    coords = _instance_coords(points, tri_indices, tri_shifts, periods)
    tri_indices, tri_shifts, coords = _orient_ccw(tri_indices, tri_shifts, coords)
    tri_indices, tri_shifts, coords = _refan_cocircular(
        points, tri_indices, tri_shifts, coords, periods
    )
    tri_indices, tri_shifts, coords = _orient_ccw(tri_indices, tri_shifts, coords)

    metrics = [triangle_metrics(c[0], c[1], c[2]) for c in coords]

    adjacency, adj_offsets, edges, issues = _build_adjacency(
        tri_indices, tri_shifts, coords, periods
    )
    if issues:
        raise DeloneError(f"inconsistent adjacency: {issues[:3]}")

    if isinstance(domain, Torus):
        n = len(points)
        if len(tri_indices) != 2 * n or (adjacency < 0).any():
            # a large-enough torus always quotients to exactly 2n triangles
            # with no boundary; the only legitimate failure is an empty circle
            # too large for the fundamental domain
            raise DomainTooSmall(
                f"torus triangulation has {len(tri_indices)} triangles for "
                f"{n} points; the domain cannot accommodate its empty circles"
            )
        rmax = max(m.circumradius for m in metrics)
        if 2.0 * rmax >= min(domain.period_x, domain.period_y):
            raise DomainTooSmall(
                f"largest empty circle (diameter {2 * rmax:.3g}) does not embed in the torus"
            )
        interior = np.ones(len(tri_indices), dtype=bool)
    else:
        xmin, ymin, xmax, ymax = domain.bbox
        interior = np.array(
            [
                (m.circumcenter.x - m.circumradius >= xmin)
                and (m.circumcenter.x + m.circumradius <= xmax)
                and (m.circumcenter.y - m.circumradius >= ymin)
                and (m.circumcenter.y + m.circumradius <= ymax)
                for m in metrics
            ]
        )

    return DeloneTriangulation(
        points=points,
        domain=domain,
        tri_indices=tri_indices,
        tri_shifts=tri_shifts,
        tri_coords=coords,
        adjacency=adjacency,
        adj_offsets=adj_offsets,
        interior=interior,
        triangles=metrics,
    )


def bulk_min_distance_brute(points: np.ndarray, domain: Domain) -> float:
    """O(n^2) minimum pairwise distance (torus metric where applicable)."""
    pts = np.asarray(points, dtype=float)
    best = math.inf
    periods = domain.periods if isinstance(domain, Torus) else None
    for i in range(len(pts) - 1):
        d = pts[i + 1 :] - pts[i]
        if periods is not None:
            d -= np.round(d / periods) * periods
        best = min(best, float(np.min(np.hypot(d[:, 0], d[:, 1]))))
    return best


def opposite_angle_sums(t: DeloneTriangulation):
    """Per interior edge: (tri, local_edge, neighbor, angle_t + angle_nb)."""
    out = []
    for tri in range(t.n_triangles):
        for e in range(3):
            u = int(t.adjacency[tri, e])
            # visit each edge once; skips boundaries (-1) and self-gluing
            if u <= tri:
                continue
            # angle opposite the shared edge in tri is at local vertex e
            ang_t = t.triangles[tri].angles[e]
            e_back = t.back_edge(tri, e)
            ang_u = t.triangles[u].angles[e_back]
            out.append((tri, e, u, ang_t + ang_u))
    return out


def validate_delone(t: DeloneTriangulation, rel_tol: float = 1e-9) -> ValidationReport:
    """Brute-force audit: O(n_triangles * n_points) empty-circumcircle check
    plus the opposite-angle-sum condition on every shared edge."""
    report = ValidationReport()
    pts = t.points
    torus = isinstance(t.domain, Torus)
    periods = t.domain.periods if torus else None

    own = [set(map(int, t.tri_indices[i])) for i in range(t.n_triangles)]
    for tri in range(t.n_triangles):
        m = t.triangles[tri]
        cc = np.asarray(m.circumcenter)
        radius = m.circumradius
        if torus:
            delta = pts - cc
            delta -= np.round(delta / periods) * periods
            dist = np.hypot(delta[:, 0], delta[:, 1])
        else:
            dist = np.hypot(pts[:, 0] - cc[0], pts[:, 1] - cc[1])
        inside = np.nonzero(dist < radius * (1.0 - rel_tol))[0]
        for p in inside:
            if int(p) in own[tri] and not torus:
                continue
            if torus and int(p) in own[tri] and dist[p] >= radius * (1.0 - 1e-7):
                continue
            report.circumcircle_violations.append(
                (tri, int(p), float(radius - dist[p]))
            )

    for tri, e, u, s in opposite_angle_sums(t):
        if s > math.pi + EPS_ANGLE + 1e-9:
            report.angular_violations.append((tri, u, float(s)))

    # adjacency symmetry
    for tri in range(t.n_triangles):
        for e in range(3):
            u = int(t.adjacency[tri, e])
            if u >= 0 and tri not in t.adjacency[u]:
                report.structural_issues.append(("asymmetric adjacency", tri, u))
    return report
