"""Grouping of Delone triangles via the oriented obtuse-triangle digraph.

Every obtuse triangle sends one directed edge to its neighbor across its
longest side.  For point systems whose covering/packing radius ratio is at
most 2*sqrt(2) this digraph is a forest of short in-trees; grouping each
bundle of in-degree-0 obtuse triangles with their common target yields
classes whose average area is at least 2r^2, while ungrouped non-obtuse
triangles are bounded below by the minimum non-obtuse area V0.  The
certificate asserts all of this directly on a concrete triangulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .delone import DeloneTriangulation, Torus

RATIO_LIMIT = 2.0 * math.sqrt(2.0)
MAX_PATH_EDGES = 7
MAX_COMPONENT = 1 + 3 * (2**7 - 1)


class GroupingError(RuntimeError):
    pass


class RatioExceeded(GroupingError):
    pass


class CycleDetected(GroupingError):
    pass


class PathTooLong(GroupingError):
    pass


class InvariantViolation(GroupingError):
    pass


@dataclass(frozen=True)
class RRRadii:
    r: float  # packing radius: half the minimum pairwise point distance
    R: float  # covering radius: largest circumradius of an interior triangle

    @property
    def ratio(self) -> float:
        return self.R / self.r


def rr_radii(t: DeloneTriangulation) -> RRRadii:
    """Packing and covering radii read off the triangulation.

    The minimum pairwise distance is always realized by a triangulation edge,
    so r comes from the shortest edge; R is the largest interior circumradius.
    """
    min_edge = min(min(m.sides) for m in t.triangles)
    if not t.interior.any():
        raise GroupingError("no interior triangles: window core too small")
    rmax = max(
        m.circumradius for m, keep in zip(t.triangles, t.interior) if keep
    )
    return RRRadii(r=0.5 * min_edge, R=rmax)


@dataclass
class ObtuseDigraph:
    """Directed edges: obtuse triangle -> neighbor across its longest side."""

    out_edge: np.ndarray  # (m,) target triangle or -1
    in_edges: list  # per-triangle list of predecessors
    node: np.ndarray  # (m,) bool: participates (interior on a window)
    obtuse: np.ndarray  # (m,) bool
    boundary_obtuse: list  # obtuse nodes with no usable longest-side neighbor
    radii: RRRadii
    ratio_ok: bool

    @property
    def n_edges(self) -> int:
        return int((self.out_edge >= 0).sum())

    def components(self):
        """Weakly connected components restricted to participating nodes."""
        m = len(self.out_edge)
        parent = list(range(m))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for t in range(m):
            u = int(self.out_edge[t])
            if u >= 0:
                ru, rt = find(u), find(t)
                if ru != rt:
                    parent[ru] = rt
        comps: dict = {}
        for t in range(m):
            if self.node[t]:
                comps.setdefault(find(t), []).append(t)
        return list(comps.values())

    def longest_path_edges(self) -> int:
        """Length (in edges) of the longest directed path; raises on a cycle.

        With out-degree <= 1 the depth of a node is the length of its unique
        outgoing chain, so one chain walk with memoization suffices.
        """
        m = len(self.out_edge)
        depth = np.zeros(m, dtype=np.int64)
        state = np.zeros(m, dtype=np.int8)  # 0 new, 1 on stack, 2 done
        for start in range(m):
            if state[start]:
                continue
            chain = []
            tri = start
            tail_depth = -1
            while True:
                if state[tri] == 1:
                    raise CycleDetected(f"directed cycle through triangle {tri}")
                if state[tri] == 2:
                    tail_depth = depth[tri]
                    break
                state[tri] = 1
                chain.append(tri)
                nxt = int(self.out_edge[tri])
                if nxt < 0:
                    break
                tri = nxt
            d = tail_depth
            for node in reversed(chain):
                d += 1
                depth[node] = d
                state[node] = 2
        return int(depth.max(initial=0))


def build_obtuse_digraph(t: DeloneTriangulation, radii: Optional[RRRadii] = None) -> ObtuseDigraph:
    """Construct the digraph and, when ratio <= 2*sqrt(2), assert its
    structural guarantees (acyclicity, degree bounds, path length <= 7,
    squared-longest-side growth, component size)."""
    radii = radii or rr_radii(t)
    m = t.n_triangles
    node = t.interior.copy()
    obtuse = np.array([met.shape_class == "obtuse" for met in t.triangles])
    out_edge = -np.ones(m, dtype=np.int64)
    in_edges: list = [[] for _ in range(m)]
    boundary_obtuse = []

    for tri in range(m):
        if not (node[tri] and obtuse[tri]):
            continue
        e = t.triangles[tri].longest_side_index
        u = int(t.adjacency[tri, e])
        if u < 0 or not node[u]:
            boundary_obtuse.append(tri)
            continue
        out_edge[tri] = u
        in_edges[u].append(tri)

    g = ObtuseDigraph(
        out_edge=out_edge,
        in_edges=in_edges,
        node=node,
        obtuse=obtuse,
        boundary_obtuse=boundary_obtuse,
        radii=radii,
        ratio_ok=radii.ratio <= RATIO_LIMIT * (1.0 + 1e-12),
    )
    if isinstance(t.domain, Torus) and boundary_obtuse:
        raise GroupingError("torus triangulation produced an obtuse triangle without neighbor")
    if g.ratio_ok:
        assert_digraph_invariants(g, t)
    return g


def assert_digraph_invariants(g: ObtuseDigraph, t: DeloneTriangulation):
    r = g.radii.r
    eps_len = 1e-9 * (2.0 * r) ** 2
    longest_sq = np.array([max(m.sides) ** 2 for m in t.triangles])

    for tri in range(t.n_triangles):
        if len(g.in_edges[tri]) > 3:
            raise InvariantViolation(f"triangle {tri} has in-degree {len(g.in_edges[tri])}")
        u = int(g.out_edge[tri])
        if u >= 0:
            if int(g.out_edge[u]) == tri:
                raise InvariantViolation(f"mutual edge between {tri} and {u}")
            if g.obtuse[u]:
                if longest_sq[u] < longest_sq[tri] + (2 * r) ** 2 - eps_len:
                    raise InvariantViolation(
                        f"edge {tri}->{u}: longest side squared grew by "
                        f"{longest_sq[u] - longest_sq[tri]:.6g} < (2r)^2"
                    )
            elif longest_sq[u] < longest_sq[tri] - eps_len:
                raise InvariantViolation(
                    f"edge {tri}->{u} into non-obtuse head shrank the longest side"
                )
            if g.obtuse[u] and len(g.in_edges[u]) > 2:
                raise InvariantViolation(f"obtuse triangle {u} has in-degree > 2")

    edges = g.longest_path_edges()  # raises CycleDetected on a cycle
    if edges > MAX_PATH_EDGES:
        raise PathTooLong(f"directed path of {edges} edges exceeds {MAX_PATH_EDGES}")
    for comp in g.components():
        if len(comp) > MAX_COMPONENT:
            raise InvariantViolation(f"component of size {len(comp)} exceeds {MAX_COMPONENT}")


@dataclass
class TriangleClass:
    members: list
    case: int  # 1..4 as in the grouping statement
    mean_area: float
    complete: bool  # all members eligible for interior statistics


@dataclass
class GroupingForest:
    classes: list
    v0: float
    r: float
    alt_reading_divergence: bool = False

    @property
    def case_counts(self):
        counts = {1: 0, 2: 0, 3: 0, 4: 0}
        for c in self.classes:
            if c.complete:
                counts[c.case] += 1
        return counts

    def global_mean(self) -> float:
        areas = []
        weights = []
        for c in self.classes:
            if c.complete:
                areas.append(c.mean_area * len(c.members))
                weights.append(len(c.members))
        if not weights:
            return math.nan
        return float(sum(areas) / sum(weights))


def _class_bound_ok(case, mean_area, v0, r, eps):
    if case == 1:
        return mean_area >= v0 - eps
    return mean_area >= 2.0 * r * r - eps


def form_groups(
    g: ObtuseDigraph,
    t: DeloneTriangulation,
    v0: float,
    collect_violations: Optional[list] = None,
) -> GroupingForest:
    """Partition the triangles into grouping classes.

    Classes: (1) lone non-obtuse triangle; (2) lone obtuse triangle that is a
    directed-path interior node; (3) non-obtuse target plus its in-degree-0
    obtuse predecessors; (4) obtuse target plus its in-degree-0 obtuse
    predecessors.  A non-obtuse root joins a class only through in-degree-0
    predecessors (the literal reading); path-interior predecessors always
    stay singletons.

    With collect_violations=None a failed class area bound raises
    InvariantViolation; otherwise violations are appended and grouping
    continues.
    """
    r = g.radii.r
    eps_area = 1e-9 * (2.0 * r) ** 2
    areas = np.array([m.area for m in t.triangles])

    nodes = [i for i in range(t.n_triangles) if g.node[i]]
    sources = [
        i
        for i in nodes
        if g.out_edge[i] >= 0 and not g.in_edges[i]
    ]
    target_of = {}
    for s in sources:
        target_of.setdefault(int(g.out_edge[s]), []).append(s)

    classes = []
    assigned = set()
    boundary = set(g.boundary_obtuse)
    for target in sorted(target_of):
        members = sorted(target_of[target]) + [target]
        case = 4 if g.obtuse[target] else 3
        classes.append(
            TriangleClass(
                members=members,
                case=case,
                mean_area=float(areas[members].mean()),
                complete=not (set(members) & boundary),
            )
        )
        assigned.update(members)

    for tri in nodes:
        if tri in assigned:
            continue
        if g.obtuse[tri]:
            complete = tri not in boundary
            classes.append(
                TriangleClass([tri], case=2, mean_area=float(areas[tri]), complete=complete)
            )
        else:
            classes.append(
                TriangleClass([tri], case=1, mean_area=float(areas[tri]), complete=True)
            )

    forest = GroupingForest(classes=classes, v0=v0, r=r)

    for c in classes:
        if not c.complete:
            continue
        if not _class_bound_ok(c.case, c.mean_area, v0, r, eps_area):
            msg = (
                f"class case {c.case} with members {c.members} has mean area "
                f"{c.mean_area:.12g} below its bound (v0={v0:.12g}, 2r^2={2 * r * r:.12g})"
            )
            if collect_violations is None:
                raise InvariantViolation(msg)
            collect_violations.append(msg)

    # Alternative reading of the root rule: a target absorbs *all* of its
    # direct predecessors, not only the in-degree-0 ones.  Flag inputs where
    # that reading would break a class bound while the literal one holds.
    alt_ok = True
    alt_assigned = set()
    for target in sorted(k for k in nodes if g.in_edges[k]):
        if target in alt_assigned:
            continue
        members = sorted(p for p in g.in_edges[target] if p not in alt_assigned)
        members.append(target)
        if set(members) & boundary:
            continue
        alt_assigned.update(members)
        mean = float(areas[members].mean())
        case = 4 if g.obtuse[target] else 3
        if not _class_bound_ok(case, mean, v0, r, eps_area):
            alt_ok = False
    forest.alt_reading_divergence = not alt_ok
    return forest


@dataclass
class CertificateReport:
    r: float
    R: float
    ratio: float
    v0: float
    mean_area: float
    bound: float
    classes: list = field(default_factory=list)
    case_counts: dict = field(default_factory=dict)
    passed: bool = False
    violations: list = field(default_factory=list)
    n_triangles: int = 0
    n_excluded: int = 0
    alt_reading_divergence: bool = False

    def to_json_dict(self):
        return {
            "r": self.r,
            "R": self.R,
            "ratio": self.ratio,
            "v0": None if math.isinf(self.v0) else self.v0,
            "mean_area": self.mean_area,
            "bound": self.bound,
            "classes": self.classes,
            "case_counts": {str(k): v for k, v in self.case_counts.items()},
            "pass": self.passed,
            "violations": self.violations,
            "n_triangles": self.n_triangles,
            "n_excluded": self.n_excluded,
            "alt_reading_divergence": self.alt_reading_divergence,
        }


def min_nonobtuse_area(t: DeloneTriangulation) -> float:
    """Empirical V0: minimum area among eligible non-obtuse triangles
    (+inf when every triangle is obtuse)."""
    best = math.inf
    for m, keep in zip(t.triangles, t.interior):
        if keep and m.shape_class != "obtuse":
            best = min(best, m.area)
    return best


def average_area_certificate(
    t: DeloneTriangulation, allow_ratio_exceeded: bool = False
) -> CertificateReport:
    """Run the full grouping pipeline and certify the average-area bound
    mean >= min(V0, 2 r^2) together with every per-class bound."""
    radii = rr_radii(t)
    if radii.ratio > RATIO_LIMIT * (1.0 + 1e-12) and not allow_ratio_exceeded:
        raise RatioExceeded(
            f"R/r = {radii.ratio:.6g} exceeds 2*sqrt(2); "
            "pass allow_ratio_exceeded=True to inspect anyway"
        )
    g = build_obtuse_digraph(t, radii)
    v0 = min_nonobtuse_area(t)
    violations: list = []
    forest = form_groups(g, t, v0, collect_violations=violations)

    mean = forest.global_mean()
    bound = min(v0, 2.0 * radii.r**2)
    eps_area = 1e-9 * (2.0 * radii.r) ** 2
    passed = (not violations) and g.ratio_ok and mean >= bound - eps_area

    excluded = sum(len(c.members) for c in forest.classes if not c.complete)
    report = CertificateReport(
        r=radii.r,
        R=radii.R,
        ratio=radii.ratio,
        v0=v0,
        mean_area=mean,
        bound=bound,
        classes=[
            {"case": c.case, "size": len(c.members), "mean": c.mean_area}
            for c in forest.classes
            if c.complete
        ],
        case_counts=forest.case_counts,
        passed=passed,
        violations=violations,
        n_triangles=t.n_triangles,
        n_excluded=excluded,
        alt_reading_divergence=forest.alt_reading_divergence,
    )
    return report
