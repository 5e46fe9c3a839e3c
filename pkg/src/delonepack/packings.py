"""Closed-form extremal densities and the explicit lattice constructions
achieving them, plus a windowed pairwise-distance verifier.

Families:
  * equidistant ball strings in 3-space, axis spacing 2d with d in [1, sqrt(2)]:
    density pi / (3 d sqrt(3 - d^2)), attained by the lattice of a rectangular
    right pyramid with base edges 2 and 2d and lateral edges 2;
  * parallel strings of unit circles in the plane, spacing 2d with
    d in (sqrt(3), 2): density 2 pi / (d (sqrt(4 - d^2) + d sqrt(3)));
  * square/triangular ball layers in 4-space: bound pi^2 / 16, attained by a
    scaled D4 lattice built from the square layer;
  * the rhombic-prism construction for d slightly above sqrt(2)
    (conjectured optimal; verified here only as a valid packing of the
    claimed density).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class LatticeBasis:
    vectors: np.ndarray  # (dim, dim), rows are basis vectors
    description: str

    def __post_init__(self):
        object.__setattr__(self, "vectors", np.asarray(self.vectors, dtype=float))
        if self.gram_determinant() <= 0.0:
            raise ValueError(f"degenerate lattice basis: {self.description}")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    @property
    def cell_volume(self) -> float:
        return float(abs(np.linalg.det(self.vectors)))

    def gram_determinant(self) -> float:
        g = self.vectors @ self.vectors.T
        return float(np.linalg.det(g))


@dataclass(frozen=True)
class Placement:
    """Periodic point configuration: lattice plus basis offsets."""

    lattice: LatticeBasis
    offsets: np.ndarray  # (k, dim) points per cell
    description: str

    @property
    def dim(self) -> int:
        return self.lattice.dim

    @property
    def points_per_cell(self) -> int:
        return len(self.offsets)

    @property
    def point_density(self) -> float:
        return self.points_per_cell / self.lattice.cell_volume


@dataclass(frozen=True)
class PackingCheck:
    unit_radius: float
    window_radius: float
    min_center_distance: float
    n_centers: int
    passed: bool


def _unit_ball_volume(dim: int) -> float:
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0)


# ----- closed-form densities -----------------------------------------------------


def density_string_3d(d: float) -> float:
    """Maximal packing density of translates of an axis-spacing-2d ball string."""
    if not (1.0 - 1e-12 <= d <= SQRT2 + 1e-12):
        raise OutOfRange(f"d = {d} outside [1, sqrt(2)]")
    return math.pi / (3.0 * d * math.sqrt(3.0 - d * d))


def density_planar_strings(d: float) -> float:
    """Maximal packing density of translates of a spacing-2d circle string."""
    if not (SQRT3 < d < 2.0):
        raise OutOfRange(f"d = {d} outside (sqrt(3), 2)")
    return 2.0 * math.pi / (d * (math.sqrt(4.0 - d * d) + d * SQRT3))


def density_planar_strings_limit(side: str) -> float:
    """Continuous extension of density_planar_strings at its interval ends.

    Both limits equal the hexagonal circle-packing density pi / sqrt(12);
    they are evaluated from the closed form at the endpoint (the sqrt(4 - d^2)
    term has a square-root singularity at d = 2, so numeric d -> 2 sequences
    converge only like sqrt(2 - d))."""
    if side == "lower":
        d = SQRT3
    elif side == "upper":
        d = 2.0
    else:
        raise OutOfRange(f"side must be 'lower' or 'upper', got {side!r}")
    return 2.0 * math.pi / (d * (math.sqrt(max(4.0 - d * d, 0.0)) + d * SQRT3))


def density_ball_4d() -> DensityValue:
    """Upper bound for translate packings of edge-2 square or triangular ball
    layers in 4-space; equals the best known lattice packing density there."""
    return DensityValue(value=math.pi**2 / 16.0, expr="pi^2/16")


@dataclass(frozen=True)
class DensityValue:
    value: float
    expr: str


# ----- constructions --------------------------------------------------------------


def lattice_string_3d(d: float) -> LatticeBasis:
    """Pyramid lattice achieving density_string_3d(d).

    Base rectangle 2 x 2d in the y = 0 plane (string direction z, spacing 2d),
    apex over the base center at height sqrt(3 - d^2); all nearest-neighbor
    distances equal 2.
    """
    if not (1.0 - 1e-12 <= d <= SQRT2 + 1e-12):
        raise OutOfRange(f"d = {d} outside [1, sqrt(2)]")
    h = math.sqrt(3.0 - d * d)
    return LatticeBasis(
        vectors=np.array(
            [
                [2.0, 0.0, 0.0],
                [0.0, 0.0, 2.0 * d],
                [1.0, h, d],
            ]
        ),
        description=f"string-3d pyramid lattice, d={d}",
    )


def lattice_string_3d_tetrahedral(d: float) -> LatticeBasis:
    """The same lattice presented through a tetrahedron with five edges of
    length 2 and one of length 2d (cell volumes of both presentations agree)."""
    if not (1.0 - 1e-12 <= d <= SQRT2 + 1e-12):
        raise OutOfRange(f"d = {d} outside [1, sqrt(2)]")
    # vertices: A=(−d,0,0), B=(d,0,0) (|AB| = 2d); C and E complete a rhombus
    # of unit edges over AB: |AC|=|BC|=|AE|=|BE|=|CE|=2
    a = np.array([-d, 0.0, 0.0])
    b = np.array([d, 0.0, 0.0])
    c = np.array([0.0, math.sqrt(4.0 - d * d), 0.0])
    # E: distance 2 from A, B and C
    ey = (4.0 - d * d - 4.0) / (2.0 * c[1]) + c[1] / 2.0  # solve |E-C|=2 with |E-A|=2
    ez = math.sqrt(max(4.0 - d * d - ey * ey, 0.0))
    e = np.array([0.0, ey, ez])
    return LatticeBasis(
        vectors=np.array([b - a, c - a, e - a]),
        description=f"string-3d tetrahedral lattice, d={d}",
    )


def planar_construction(d: float) -> Placement:
    """Two-string-per-period row construction achieving density_planar_strings.

    Row 0 holds circle centers at (2 d Z, 0); row 1 is shifted by
    B0 = (d, sqrt(4 - d^2)); the period-2 translation is C1, placed so that
    |A1 C1| = |B0 C1| = 2.
    """
    if not (SQRT3 < d < 2.0):
        raise OutOfRange(f"d = {d} outside (sqrt(3), 2)")
    h = math.sqrt(4.0 - d * d)
    b0 = np.array([d, h])
    c1 = np.array([(3.0 * d + SQRT3 * h) / 2.0, (SQRT3 * d + h) / 2.0])
    lattice = LatticeBasis(
        vectors=np.array([[2.0 * d, 0.0], c1]),
        description=f"planar two-string rows, d={d}",
    )
    return Placement(
        lattice=lattice,
        offsets=np.array([[0.0, 0.0], b0]),
        description=f"planar strings, d={d}; generators (2d,0), C1; odd-row offset B0",
    )


def lattice_layer_4d() -> LatticeBasis:
    """Scaled D4 lattice built from the edge-2 square layer: layer lattice in
    the x3x4-plane plus two touching translation vectors."""
    return LatticeBasis(
        vectors=np.array(
            [
                [0.0, 0.0, 2.0, 0.0],
                [0.0, 0.0, 0.0, 2.0],
                [SQRT2, 0.0, 1.0, 1.0],
                [0.0, SQRT2, 1.0, 1.0],
            ]
        ),
        description="square-layer 4d lattice (scaled D4)",
    )


def rhombic_prism_construction(d: float):
    """Rhombic-prism lattice for string spacing 2d just above 2*sqrt(2).

    The base square is sheared by delta with 2 sin(2 delta) = d^2 - 2, which
    restores touching between second-neighbor strings; density is
    (4 pi / 3) / (4 d cos(2 delta)).  The construction is CONJECTURED optimal;
    only packing validity and the density value are verified here.
    """
    if not (SQRT2 - 1e-12 <= d and d * d - 2.0 <= 2.0):
        raise OutOfRange(f"d = {d} outside [sqrt(2), 2]")
    delta = 0.5 * math.asin((d * d - 2.0) / 2.0)
    cd, sd = math.cos(delta), math.sin(delta)
    e1 = np.array([2.0 * cd, 2.0 * sd, 0.0])
    e2 = np.array([2.0 * sd, 2.0 * cd, 0.0])
    center = 0.5 * (e1 + e2) + np.array([0.0, 0.0, d])
    basis = LatticeBasis(
        vectors=np.array([e1, e2, center]),
        description=f"rhombic-prism string lattice (conjectured optimal), d={d}",
    )
    density = (4.0 * math.pi / 3.0) / (4.0 * d * math.cos(2.0 * delta))
    return delta, basis, density


# ----- verification ----------------------------------------------------------------


def enumerate_centers(config, window_radius: float) -> np.ndarray:
    """All configuration points inside the closed ball of `window_radius`."""
    if isinstance(config, LatticeBasis):
        lattice, offsets = config, np.zeros((1, config.dim))
    else:
        lattice, offsets = config.lattice, config.offsets
    binv = np.linalg.inv(lattice.vectors.T)
    pad = float(np.max(np.abs(offsets))) if len(offsets) else 0.0
    bounds = np.ceil(np.abs(binv) @ np.full(lattice.dim, window_radius + pad + 1e-9)).astype(int)
    ranges = [np.arange(-b, b + 1) for b in bounds]
    mesh = np.meshgrid(*ranges, indexing="ij")
    coeffs = np.stack([m.ravel() for m in mesh], axis=1)
    base = coeffs @ lattice.vectors
    pts = (base[:, None, :] + offsets[None, :, :]).reshape(-1, lattice.dim)
    keep = np.linalg.norm(pts, axis=1) <= window_radius
    return pts[keep]


def verify_packing(config, window_radius: float, eps_dist: float = 1e-9) -> PackingCheck:
    """Enumerate all centers in the window and check min pairwise distance >= 2."""
    pts = enumerate_centers(config, window_radius)
    if len(pts) < 2:
        return PackingCheck(1.0, window_radius, math.inf, len(pts), True)
    tree = cKDTree(pts)
    dist, _ = tree.query(pts, k=2)
    dmin = float(dist[:, 1].min())
    return PackingCheck(
        unit_radius=1.0,
        window_radius=window_radius,
        min_center_distance=dmin,
        n_centers=len(pts),
        passed=dmin >= 2.0 - eps_dist,
    )


def count_centers(config, window_radius: float) -> int:
    return len(enumerate_centers(config, window_radius))


def measured_density(config, window_radius: float) -> float:
    """Ball-volume fraction estimated by center counting in a ball window.

    The window volume is V1 * wr^dim with V1 the unit-ball volume, so the
    estimate reduces to count / wr^dim.
    """
    pts = enumerate_centers(config, window_radius)
    dim = pts.shape[1]
    return len(pts) / window_radius**dim


def cell_density(config) -> float:
    """Exact ball-volume fraction of a periodic configuration."""
    if isinstance(config, LatticeBasis):
        per_cell, vol = 1, config.cell_volume
    else:
        per_cell, vol = config.points_per_cell, config.lattice.cell_volume
    dim = config.dim
    return per_cell * _unit_ball_volume(dim) / vol
