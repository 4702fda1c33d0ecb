"""Exact geometric predicates and crossing counts for tree drawings.

Two point configurations are supported: labels placed in convex position
in label order (no coordinates needed; crossing is the cyclic interleaving
rule on labels), and explicit integer coordinates in general position
(crossing decided by exact orientation signs, never floating point).

Coordinates are bounded so every orientation determinant fits comfortably
in 64-bit intermediates, which lets the compiled kernel evaluate the same
predicates without overflow.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from math import comb
from pathlib import Path

from .errors import (
    CoordinateBoundError,
    GeneralPositionError,
    PointsFileError,
)

Point = tuple[int, int]
Edge = tuple[int, int]

# |x|, |y| <= 2^26 keeps (q-p) x (r-p) within 2^55 < 2^63.
COORD_BOUND = 1 << 26

CCW = 1
CW = -1
COLLINEAR = 0


def _check_coord(value: int, label: int | None = None) -> int:
    if not isinstance(value, int):
        raise CoordinateBoundError(f"coordinate {value!r} is not an integer")
    if abs(value) > COORD_BOUND:
        where = "" if label is None else f" (point {label})"
        raise CoordinateBoundError(
            f"|{value}| exceeds the coordinate bound 2^26{where}")
    return value


@dataclass(frozen=True)
class ConvexConfig:
    """n labels in convex position, numbered in hull order. Carries no
    coordinates: crossing is purely the label interleaving rule."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")


@dataclass(frozen=True)
class CoordinateConfig:
    """Explicit integer points; label i is points[i-1]."""

    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple((int(x), int(y)) for x, y in self.points)
        object.__setattr__(self, "points", pts)
        for i, (x, y) in enumerate(pts, start=1):
            _check_coord(x, i)
            _check_coord(y, i)
        if len(set(pts)) != len(pts):
            raise GeneralPositionError("duplicate points")

    @property
    def n(self) -> int:
        return len(self.points)


PointConfig = ConvexConfig | CoordinateConfig


def config_kind(config: PointConfig) -> str:
    return "convex" if isinstance(config, ConvexConfig) else "coordinates"


def config_content_hash(config: CoordinateConfig) -> str:
    """Content hash of the canonical point-file serialization."""
    text = "".join(f"{x} {y}\n" for x, y in config.points)
    return hashlib.sha256(text.encode("ascii")).hexdigest()[:12]


def orientation(p: Point, q: Point, r: Point) -> int:
    """Sign of the exact determinant (q-p) x (r-p): CCW, CW or COLLINEAR."""
    px, py = p
    qx, qy = q
    rx, ry = r
    for c in (px, py, qx, qy, rx, ry):
        _check_coord(c)
    det = (qx - px) * (ry - py) - (qy - py) * (rx - px)
    return CCW if det > 0 else CW if det < 0 else COLLINEAR


def validate_general_position(config: PointConfig) -> None:
    """Raise GeneralPositionError naming the first collinear label triple.

    Convex configurations are in general position by definition.
    """
    if isinstance(config, ConvexConfig):
        return
    from . import kernels

    triple = kernels.find_collinear_triple(config.points)
    if triple is not None:
        i, j, k = triple
        raise GeneralPositionError(f"points {i}, {j}, {k} are collinear")


def segments_cross_properly(p1: Point, q1: Point, p2: Point, q2: Point) -> bool:
    """Exact proper-crossing test for segments with four distinct endpoints.

    A zero orientation would mean three distinct endpoints are collinear,
    which violates general position; such input is rejected loudly rather
    than classified.
    """
    d1 = orientation(p2, q2, p1)
    d2 = orientation(p2, q2, q1)
    d3 = orientation(p1, q1, p2)
    d4 = orientation(p1, q1, q2)
    if 0 in (d1, d2, d3, d4):
        raise GeneralPositionError(
            f"collinear endpoints among {p1}, {q1}, {p2}, {q2}")
    return d1 != d2 and d3 != d4


def _check_label(v: int, n: int) -> None:
    if not 1 <= v <= n:
        raise ValueError(f"label {v} outside 1..{n}")


def edges_cross(e1: Edge, e2: Edge, config: PointConfig) -> bool:
    """Whether two edges cross in the drawing. Edges sharing an endpoint
    never cross.

    Convex: with e1 = (a, b), a < b, the edges cross iff exactly one
    endpoint of e2 lies strictly between a and b.  Coordinates: the closed
    segments share exactly one point interior to both.
    """
    n = config.n
    a, b = e1
    c, d = e2
    for v in (a, b, c, d):
        _check_label(v, n)
    if a == b or c == d:
        raise ValueError("degenerate edge")
    if len({a, b, c, d}) < 4:
        return False
    if isinstance(config, ConvexConfig):
        if a > b:
            a, b = b, a
        return (a < c < b) != (a < d < b)
    pts = config.points
    return segments_cross_properly(pts[a - 1], pts[b - 1], pts[c - 1], pts[d - 1])


def max_crossings(n: int) -> int:
    """Upper bound on crossings of a tree on n vertices: pairs of edges."""
    return comb(n - 1, 2) if n >= 3 else 0


def crossing_count(tree, config: PointConfig) -> int:
    """Number of unordered edge pairs of the tree that cross in the drawing."""
    if tree.n != config.n:
        raise ValueError(f"tree n={tree.n} does not match config n={config.n}")
    edges = tree.edges
    total = 0
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            if edges_cross(edges[i], edges[j], config):
                total += 1
    return total


def edge_index(u: int, v: int, n: int) -> int:
    """Index of edge (u, v), u < v, in lexicographic order over all pairs."""
    return (u - 1) * n - u * (u - 1) // 2 + v - u - 1


def all_edges(n: int) -> list[Edge]:
    return [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]


def pair_crossing_table(config: PointConfig):
    """Dense uint8 table T[e1 * E + e2] = 1 iff edges e1, e2 cross, for all
    pairs of the E = C(n,2) possible edges.  Feeds the enumeration kernel;
    only sensible for small n."""
    import numpy as np

    n = config.n
    edges = all_edges(n)
    E = len(edges)
    table = np.zeros(E * E, dtype=np.uint8)
    for i in range(E):
        for j in range(i + 1, E):
            if edges_cross(edges[i], edges[j], config):
                table[i * E + j] = 1
                table[j * E + i] = 1
    return table, E


def rectilinear_crossing_number(config: PointConfig) -> int:
    """Crossings of the straight-line complete-graph drawing: the number of
    4-point subsets in convex position.  Convex configurations attain the
    maximum C(n, 4)."""
    if isinstance(config, ConvexConfig):
        return comb(config.n, 4)
    from . import kernels

    return kernels.convex_quadruple_count(config.points)


def kn_crossing_pairs(config: CoordinateConfig) -> int:
    """Independent crossing-number oracle: count proper crossings among all
    vertex-disjoint segment pairs of the complete-graph drawing.

    Each convex quadrilateral contributes exactly one crossing pair (its
    diagonals), so this must equal rectilinear_crossing_number.
    """
    if not isinstance(config, CoordinateConfig):
        raise ValueError("the segment-pair oracle needs explicit coordinates")
    edges = all_edges(config.n)
    total = 0
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if a in (c, d) or b in (c, d):
                continue
            if edges_cross((a, b), (c, d), config):
                total += 1
    return total


def convex_polygon_config(n: int) -> CoordinateConfig:
    """A concrete integer realization of n points in convex position in
    label order: points on the parabola (i, i^2), whose cyclic hull order
    is the label order and which never contains three collinear points."""
    if n > 8192:
        raise ValueError("parabola coordinates would exceed the bound")
    return CoordinateConfig(tuple((i, i * i) for i in range(n)))


def random_general_position_config(n: int, seed: int, bound: int = 1 << 20) -> CoordinateConfig:
    """Deterministic random point set with no collinear triple.

    Points are drawn uniformly on [0, bound]^2 and redrawn while they
    collide or create a collinear triple with two existing points.
    """
    from .rng import SplitMix64

    if bound > COORD_BOUND:
        raise ValueError("bound exceeds the coordinate bound")
    gen = SplitMix64(seed)
    pts: list[Point] = []
    while len(pts) < n:
        p = (gen.uniform_label(bound + 1) - 1, gen.uniform_label(bound + 1) - 1)
        if p in pts:
            continue
        ok = True
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if orientation(pts[i], pts[j], p) == COLLINEAR:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            pts.append(p)
    return CoordinateConfig(tuple(pts))


def parse_points_text(text: str) -> CoordinateConfig:
    """Parse the normative point-set format: one 'x y' integer pair per
    line; blank lines and lines starting with '#' are ignored; label i is
    the i-th data line (1-based)."""
    points: list[Point] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise PointsFileError(f"expected two integers, got {raw!r}", lineno)
        try:
            x, y = int(parts[0]), int(parts[1])
        except ValueError:
            raise PointsFileError(f"non-integer coordinate in {raw!r}", lineno) from None
        if abs(x) > COORD_BOUND or abs(y) > COORD_BOUND:
            raise PointsFileError("coordinate exceeds the 2^26 bound", lineno)
        points.append((x, y))
    if not points:
        raise PointsFileError("no points in file")
    return CoordinateConfig(tuple(points))


def load_point_config(path: str | Path) -> CoordinateConfig:
    return parse_points_text(Path(path).read_text())


def write_points_file(config: CoordinateConfig, path: str | Path) -> None:
    Path(path).write_text("".join(f"{x} {y}\n" for x, y in config.points))
