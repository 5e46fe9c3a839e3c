"""Point-set generators: exact lattice patches, jittered lattices, and
torus Poisson-disk samples.  Every generator returns (points, domain) with a
domain ready for `build_delone`."""

from __future__ import annotations

import math

import numpy as np

from .delone import Torus, Window


def square_lattice(side: float, nx: int, ny: int):
    """nx x ny square lattice of spacing `side` on a matching torus."""
    xs, ys = np.meshgrid(np.arange(nx) * side, np.arange(ny) * side)
    pts = np.column_stack([xs.ravel(), ys.ravel()])
    return pts, Torus(nx * side, ny * side)


def rectangular_lattice(sx: float, sy: float, nx: int, ny: int):
    xs, ys = np.meshgrid(np.arange(nx) * sx, np.arange(ny) * sy)
    pts = np.column_stack([xs.ravel(), ys.ravel()])
    return pts, Torus(nx * sx, ny * sy)


def triangular_lattice(side: float, nx: int, ny: int):
    """Triangular lattice of edge `side`; ny must be even for periodicity."""
    if ny % 2:
        raise ValueError("ny must be even for a periodic triangular lattice")
    rows = []
    h = side * math.sqrt(3) / 2.0
    for j in range(ny):
        x0 = 0.5 * side if j % 2 else 0.0
        xs = x0 + np.arange(nx) * side
        rows.append(np.column_stack([xs, np.full(nx, j * h)]))
    return np.concatenate(rows), Torus(nx * side, ny * h)


def triangle_lattice_points(p, q, r, reps: int):
    """Point lattice generated by the vertices of one triangle, on a window.

    The window's core bbox covers the central part of the patch; `reps`
    controls the patch half-width in lattice steps.
    """
    p = np.asarray(p, float)
    u = np.asarray(q, float) - p
    v = np.asarray(r, float) - p
    ii, jj = np.meshgrid(np.arange(-reps, reps + 1), np.arange(-reps, reps + 1))
    pts = p + ii.ravel()[:, None] * u + jj.ravel()[:, None] * v
    span = max(np.linalg.norm(u), np.linalg.norm(v))
    core = reps * 0.45 * span
    cx, cy = pts.mean(axis=0)
    bbox = (cx - core, cy - core, cx + core, cy + core)
    return pts, Window(bbox, margin=reps * 0.55 * span)


def jitter(points: np.ndarray, amount: float, seed: int, domain=None):
    """Uniform jitter in [-amount, amount]^2, wrapped on a torus domain."""
    rng = np.random.default_rng(seed)
    pts = points + rng.uniform(-amount, amount, size=points.shape)
    if isinstance(domain, Torus):
        periods = domain.periods
        pts -= np.floor(pts / periods) * periods
    return pts


def poisson_disk_torus(min_dist: float, period_x: float, period_y: float, seed: int,
                       max_failures: int = 2000):
    """Saturated dart-throwing sample on the torus with min distance `min_dist`.

    Saturation (no room for another dart after `max_failures` consecutive
    misses) keeps the covering radius near the packing radius, so the
    resulting (r, R)-system has a small R/r ratio.
    """
    rng = np.random.default_rng(seed)
    periods = np.array([period_x, period_y])
    cell = min_dist / math.sqrt(2)
    nx = max(1, int(period_x / cell))
    ny = max(1, int(period_y / cell))
    grid = -np.ones((nx, ny), dtype=np.int64)
    pts: list[np.ndarray] = []

    def fits(p):
        gx = int(p[0] / period_x * nx)
        gy = int(p[1] / period_y * ny)
        for dx in (-2, -1, 0, 1, 2):
            for dy in (-2, -1, 0, 1, 2):
                q = grid[(gx + dx) % nx, (gy + dy) % ny]
                if q >= 0:
                    d = pts[q] - p
                    d -= np.round(d / periods) * periods
                    if d[0] * d[0] + d[1] * d[1] < min_dist * min_dist:
                        return False
        return True

    failures = 0
    while failures < max_failures:
        p = rng.uniform(0, periods)
        if fits(p):
            grid[int(p[0] / period_x * nx), int(p[1] / period_y * ny)] = len(pts)
            pts.append(p)
            failures = 0
        else:
            failures += 1
    return np.array(pts), Torus(period_x, period_y)
