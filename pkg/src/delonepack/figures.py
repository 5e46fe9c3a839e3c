"""Matplotlib renderings saved as SVG: triangulations with grouping classes,
the arc-region construction, and packing scatters.  Figures are diagnostics,
not data; styling is fixed so identical runs produce identical files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.collections import LineCollection, PolyCollection

from .arcgeom import Arc, Segment, build_K, j_curve, k_geometry, l_region

CASE_COLORS = {1: "#8da0cb", 2: "#fc8d62", 3: "#66c2a5", 4: "#e78ac3"}
EXCLUDED_COLOR = "#cccccc"


def render_grouping(t, forest, path):
    """Triangulation with classes color-coded by case and digraph arrows."""
    fig, ax = plt.subplots(figsize=(8, 8))
    polys = []
    colors = []
    case_of = {}
    for cls in forest.classes:
        for member in cls.members:
            case_of[member] = cls.case if cls.complete else 0
    for tri in range(t.n_triangles):
        polys.append(t.tri_coords[tri])
        colors.append(CASE_COLORS.get(case_of.get(tri, 0), EXCLUDED_COLOR))
    ax.add_collection(
        PolyCollection(polys, facecolors=colors, edgecolors="white", linewidths=0.4)
    )

    segments = []
    centroids = t.tri_coords.mean(axis=1)
    for tri in range(t.n_triangles):
        met = t.triangles[tri]
        if met.shape_class != "obtuse":
            continue
        e = met.longest_side_index
        u = int(t.adjacency[tri, e])
        if u < 0:
            continue
        target = t.tri_coords[u].mean(axis=0) + t.adj_offsets[tri, e]
        segments.append([centroids[tri], target])
    if segments:
        ax.add_collection(LineCollection(segments, colors="black", linewidths=0.8))
        for seg in segments:
            p, q = np.asarray(seg[0]), np.asarray(seg[1])
            mid = 0.65 * q + 0.35 * p
            ax.annotate(
                "",
                xy=mid,
                xytext=p,
                arrowprops={"arrowstyle": "->", "color": "black", "lw": 0.8},
            )
    ax.autoscale()
    ax.set_aspect("equal")
    ax.set_title(
        f"grouping classes: mean={forest.global_mean():.4f}, "
        f"v0={forest.v0:.4f}, r={forest.r:.4f}"
    )
    fig.savefig(path, format="svg")
    plt.close(fig)


def _draw_pieces(ax, pieces, **kw):
    for piece in pieces:
        if isinstance(piece, Segment):
            ax.plot(
                [piece.p0[0], piece.p1[0]], [piece.p0[1], piece.p1[1]], **kw
            )
            kw.pop("label", None)
        else:
            ts = np.linspace(0, 1, 64)
            pts = np.array([piece.point(t) for t in ts])
            ax.plot(pts[:, 0], pts[:, 1], **kw)
            kw.pop("label", None)


def render_planar_proof(d, cert, path):
    """The region K, the curve J, the sumset bound 2J, and the certified
    touching points."""
    fig, ax = plt.subplots(figsize=(8, 6))
    g = k_geometry(d)
    _draw_pieces(ax, build_K(d).pieces, color="#1b6ca8", lw=1.5, label="K")
    shifted = [
        Segment((p.p0[0] + 2 * d, p.p0[1]), (p.p1[0] + 2 * d, p.p1[1]))
        if isinstance(p, Segment)
        else Arc((p.center[0] + 2 * d, p.center[1]), p.radius, p.theta0, p.theta1)
        for p in build_K(d).pieces
    ]
    _draw_pieces(ax, shifted, color="#1b6ca8", lw=1.5, ls="--", label="K+(2d,0)")
    _draw_pieces(ax, j_curve(d), color="#666666", lw=1.0, label="J")
    _draw_pieces(ax, l_region(d).pieces, color="#c0392b", lw=1.2, label="2J")
    if cert is not None and cert.touch_points:
        pts = np.array(cert.touch_points)
        ax.plot(pts[:, 0], pts[:, 1], "k*", markersize=12, label="touching points")
    for name, p in (("A0", g.a0), ("A1", g.a1), ("B0", g.b0), ("C0", g.c0), ("C1", g.c1)):
        ax.annotate(name, p, fontsize=8)
    ax.legend(loc="lower right", fontsize=8)
    ax.set_aspect("equal")
    ax.set_title(f"two-row translation regions, d={d}")
    fig.savefig(path, format="svg")
    plt.close(fig)


def render_packing_plane(placement, window_radius, path):
    """Unit circles of a planar packing inside the window."""
    from .packings import enumerate_centers

    pts = enumerate_centers(placement, window_radius)
    fig, ax = plt.subplots(figsize=(8, 8))
    for x, y in pts:
        ax.add_patch(plt.Circle((x, y), 1.0, fill=False, color="#1b6ca8", lw=0.5))
    ax.set_xlim(-window_radius, window_radius)
    ax.set_ylim(-window_radius, window_radius)
    ax.set_aspect("equal")
    ax.set_title(f"{len(pts)} unit circles in radius {window_radius}")
    fig.savefig(path, format="svg")
    plt.close(fig)
