"""Square lattice and the five uniform tilings, built from whole polygons."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .graph import (
    Edge,
    FermionicGraph,
    LatticeError,
    assemble,
    euler_characteristic,
    make_faces,
    order_faces,
)
from .orientation import assign_incidence

SQRT3 = math.sqrt(3.0)
NEIGHBOUR_OFFSETS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

Site = tuple[int, int]
Triangle = tuple[int, int, str]  # (a, b, "u" | "d")
Polygon = tuple[str, list[tuple[float, float]], bool]


def _graph_from_polygons(
    family: str, polygons: Iterable[Polygon], meta: dict, edge_dirs=None
) -> FermionicGraph:
    coords, undirected, raw_faces = assemble(family, polygons)
    raw_faces = order_faces(coords, raw_faces)
    edges = []
    for a, b in undirected:
        if edge_dirs is None:
            edges.append(Edge(a, b))
        else:
            edges.append(edge_dirs(coords, a, b))
    edge_idx = {e.key: k for k, e in enumerate(edges)}
    faces = make_faces(edge_idx, raw_faces)
    g = FermionicGraph(family, coords, edges, faces, [], meta)
    check_planar(g)
    return g


def check_planar(g: FermionicGraph) -> None:
    if not g.is_connected():
        raise LatticeError("lattice shape is disconnected")
    if euler_characteristic(g) != 1:
        raise LatticeError("lattice shape has holes (V - E + F != 1)")
    for k, fs in enumerate(g.edge_faces):
        if len(fs) > 2:
            raise LatticeError(f"edge {k} bounds more than two faces")
    if max((len(i) for i in g.incident), default=0) > 4:
        raise LatticeError("vertex of degree above 4")


# -- square ------------------------------------------------------------------

SQUARE_SEEDS = ("odd_origin", "even_origin")


def build_square(rows: int, cols: int, seed: str = "odd_origin") -> FermionicGraph:
    """Rectangular grid of ``rows x cols`` vertices.

    Vertical edges at even ``x`` point up and at odd ``x`` point down.
    Horizontal edges on even rows (counted from the bottom) point right and
    on odd rows left; ``even_origin`` reverses every horizontal edge, which
    swaps the odd/even checkerboard. Faces that do not circulate are odd.
    """
    if seed not in SQUARE_SEEDS:
        raise LatticeError(f"unknown square seed {seed!r}; expected one of {SQUARE_SEEDS}")
    if rows < 1 or cols < 1 or rows * cols < 2:
        raise LatticeError("square lattice needs at least two vertices")
    flip = seed == "even_origin"

    def vid(x: int, y: int) -> int:
        return (rows - 1 - y) * cols + x

    coords = [(float(v % cols), float(rows - 1 - v // cols)) for v in range(rows * cols)]
    edges: list[Edge] = []
    for y in range(rows):
        for x in range(cols - 1):
            right = (y % 2 == 0) != flip
            a, b = vid(x, y), vid(x + 1, y)
            edges.append(Edge(a, b, axis="h") if right else Edge(b, a, axis="h"))
    for x in range(cols):
        for y in range(rows - 1):
            a, b = vid(x, y), vid(x, y + 1)
            edges.append(Edge(a, b, axis="v") if x % 2 == 0 else Edge(b, a, axis="v"))
    edges.sort(key=lambda e: e.key)
    edge_idx = {e.key: k for k, e in enumerate(edges)}
    raw = []
    for r in range(rows - 1):
        for c in range(cols - 1):
            odd = ((c + r) % 2 == 0) != flip
            cyc = (vid(c, r + 1), vid(c + 1, r + 1), vid(c + 1, r), vid(c, r))
            raw.append(("square", cyc, odd))
    faces = make_faces(edge_idx, order_faces(coords, raw))
    meta = {"dims": [rows, cols], "seed": seed}
    g = FermionicGraph("square", coords, edges, faces, [], meta)
    check_planar(g)
    return g


# -- triangular-lattice helpers --------------------------------------------


def _site_xy(site: Site, spacing: float) -> tuple[float, float]:
    a, b = site
    return (spacing * (a + b / 2.0), spacing * b * SQRT3 / 2.0)


def triangle_corners(t: Triangle) -> tuple[Site, Site, Site]:
    a, b, kind = t
    if kind == "u":
        return ((a, b), (a + 1, b), (a, b + 1))
    if kind == "d":
        return ((a + 1, b), (a, b + 1), (a + 1, b + 1))
    raise LatticeError(f"bad triangle kind {kind!r}")


def site_triangles(s: Site) -> list[Triangle]:
    a, b = s
    return [
        (a, b, "u"),
        (a - 1, b, "u"),
        (a, b - 1, "u"),
        (a - 1, b, "d"),
        (a, b - 1, "d"),
        (a - 1, b - 1, "d"),
    ]


def site_neighbours(s: Site) -> list[Site]:
    return [(s[0] + da, s[1] + db) for da, db in NEIGHBOUR_OFFSETS]


def _angle(p, q) -> float:
    return math.degrees(math.atan2(q[1] - p[1], q[0] - p[0])) % 360.0


def _ring(center, radius: float, start: float, n: int) -> list[tuple[float, float]]:
    return [
        (
            center[0] + radius * math.cos(math.radians(start + 360.0 * k / n)),
            center[1] + radius * math.sin(math.radians(start + 360.0 * k / n)),
        )
        for k in range(n)
    ]


def _facing(center, radius, start, n, theta, tol):
    out = []
    for k in range(n):
        ang = (start + 360.0 * k / n) % 360.0
        d = abs((ang - theta + 180.0) % 360.0 - 180.0)
        if d <= tol + 1e-7:
            out.append(
                (
                    center[0] + radius * math.cos(math.radians(ang)),
                    center[1] + radius * math.sin(math.radians(ang)),
                )
            )
    return out


def _polygon(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    """Deduplicate points and order them counter-clockwise around their centroid."""
    uniq: dict[tuple, tuple[float, float]] = {}
    for p in points:
        uniq.setdefault((round(p[0], 6), round(p[1], 6)), p)
    pts = list(uniq.values())
    cx = sum(p[0] for p in pts) / len(pts)
    cy = sum(p[1] for p in pts) / len(pts)
    return sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


# -- family geometry ---------------------------------------------------------


class _Family:
    """Geometry of a tiling whose big polygons sit on triangular-lattice sites."""

    name: str
    big_kind: str
    small_kind: str  # face on each lattice triangle
    spacing: float
    radius: float
    start: float
    n: int
    half_step: float

    def big(self, s: Site) -> list[tuple[float, float]]:
        return _ring(_site_xy(s, self.spacing), self.radius, self.start, self.n)

    def square(self, s: Site, t: Site) -> list[tuple[float, float]]:
        ps, pt = _site_xy(s, self.spacing), _site_xy(t, self.spacing)
        pts = _facing(ps, self.radius, self.start, self.n, _angle(ps, pt), self.half_step)
        pts += _facing(pt, self.radius, self.start, self.n, _angle(pt, ps), self.half_step)
        return _polygon(pts)

    def small(self, tri: Triangle) -> list[tuple[float, float]]:
        corners = [_site_xy(s, self.spacing) for s in triangle_corners(tri)]
        cen = (sum(p[0] for p in corners) / 3, sum(p[1] for p in corners) / 3)
        pts = []
        for p in corners:
            pts += _facing(p, self.radius, self.start, self.n, _angle(p, cen), self.small_tol)
        return _polygon(pts)

    small_tol: float = 0.0


class _T6434(_Family):
    name, big_kind, small_kind = "t6434", "hexagon", "triangle"
    spacing, radius, start, n, half_step = 1.0 + SQRT3, 1.0, 30.0, 6, 30.0
    small_tol = 0.0


_R12 = 1.0 / (2.0 * math.sin(math.radians(15.0)))
_A12 = _R12 * math.cos(math.radians(15.0))


class _T4612(_Family):
    name, big_kind, small_kind = "t4612", "dodecagon", "hexagon"
    spacing, radius, start, n, half_step = 2.0 * _A12 + 1.0, _R12, 15.0, 12, 15.0
    small_tol = 15.0


class _Kagome(_Family):
    name, big_kind, small_kind = "kagome", "hexagon", "triangle"
    spacing, radius, start, n, half_step = 2.0, 1.0, 0.0, 6, 0.0

    def small(self, tri: Triangle) -> list[tuple[float, float]]:
        c = [_site_xy(s, self.spacing) for s in triangle_corners(tri)]
        mids = [((c[i][0] + c[j][0]) / 2, (c[i][1] + c[j][1]) / 2) for i, j in ((0, 1), (0, 2), (1, 2))]
        return _polygon(mids)


class _T31212(_Family):
    name, big_kind, small_kind = "t31212", "dodecagon", "triangle"
    spacing, radius, start, n, half_step = 2.0 * _A12, _R12, 15.0, 12, 15.0
    small_tol = 15.0


FAMILY_GEOMETRY = {f.name: f() for f in (_T6434, _T4612, _Kagome, _T31212)}


def parallelogram_sites(rows: int, cols: int) -> list[Site]:
    if rows < 1 or cols < 1:
        raise LatticeError("dimensions must be >= 1")
    return [(a, b) for b in range(rows) for a in range(cols)]


def _norm_sites(sites) -> list[Site]:
    out = sorted({(int(s[0]), int(s[1])) for s in sites})
    if not out:
        raise LatticeError("at least one site is required")
    return out


def _norm_triangle(t) -> Triangle:
    if len(t) != 3 or t[2] not in ("u", "d"):
        raise LatticeError(f"bad triangle {t!r}; expected [a, b, 'u'|'d']")
    return (int(t[0]), int(t[1]), t[2])


def build_surrounded(family: str, sites) -> FermionicGraph:
    """6.4.3.4 or 4.6.12 patch: hexagons/dodecagons on ``sites``, each fully
    surrounded by its squares and small faces. Squares are odd."""
    geo = FAMILY_GEOMETRY[family]
    hs = _norm_sites(sites)
    polys: list[Polygon] = [(geo.big_kind, geo.big(s), False) for s in hs]
    sq_keys = set()
    tri_keys = set()
    for s in hs:
        for t in site_neighbours(s):
            sq_keys.add(tuple(sorted((s, t))))
        tri_keys.update(site_triangles(s))
    for s, t in sorted(sq_keys):
        polys.append(("square", geo.square(s, t), True))
    for tri in sorted(tri_keys):
        polys.append((geo.small_kind, geo.small(tri), False))
    meta = {"sites": [list(s) for s in hs], "shape": "surrounded"}
    return _graph_from_polygons(family, polys, meta)


def build_fragment(family: str, faces: list) -> FermionicGraph:
    """Patch from an explicit face list.

    Entries: ``["big", [a, b]]``, ``["square", [a, b], [c, d]]`` or
    ``["small", [a, b, "u"|"d"]]``.
    """
    geo = FAMILY_GEOMETRY[family]
    if family not in ("t6434", "t4612"):
        raise LatticeError("explicit fragments are supported for 6.4.3.4 and 4.6.12 only")
    polys: list[Polygon] = []
    for item in faces:
        kind = item[0]
        if kind == "big":
            polys.append((geo.big_kind, geo.big(tuple(item[1])), False))
        elif kind == "square":
            s, t = tuple(item[1]), tuple(item[2])
            if (t[0] - s[0], t[1] - s[1]) not in NEIGHBOUR_OFFSETS:
                raise LatticeError(f"square needs adjacent sites, got {s} {t}")
            polys.append(("square", geo.square(s, t), True))
        elif kind == "small":
            polys.append((geo.small_kind, geo.small(_norm_triangle(item[1])), False))
        else:
            raise LatticeError(f"unknown fragment face {kind!r}")
    if not polys:
        raise LatticeError("empty fragment")
    meta = {"faces": faces, "shape": "fragment"}
    return _graph_from_polygons(family, polys, meta)


def corner_candidates(sites) -> list[Triangle]:
    """Lattice triangles with exactly one corner in ``sites``."""
    hset = set(_norm_sites(sites))
    cands = set()
    for s in hset:
        for tri in site_triangles(s):
            if sum(c in hset for c in triangle_corners(tri)) == 1:
                cands.add(tri)
    return sorted(cands, key=lambda t: (t[1], t[0], t[2]))


def build_triangle_tiling(family: str, sites, corners=0) -> FermionicGraph:
    """Kagome or 3.12.12 patch.

    Hexagons (dodecagons) sit on ``sites``. A lattice triangle is present when
    at least two of its corners are sites; ``corners`` adds triangles with a
    single site corner, each contributing one triangular corner vertex. It may
    be an explicit list of ``[a, b, "u"|"d"]`` or a count, in which case
    candidates are taken in row-major order, skipping any that would share
    the new corner vertex with an earlier one. Triangles are odd.
    """
    geo = FAMILY_GEOMETRY[family]
    hs = _norm_sites(sites)
    hset = set(hs)
    tris = set()
    for s in hs:
        for tri in site_triangles(s):
            if sum(c in hset for c in triangle_corners(tri)) >= 2:
                tris.add(tri)
    if isinstance(corners, int):
        chosen: list[Triangle] = []
        used_pairs: set = set()
        for tri in corner_candidates(hs):
            if len(chosen) == corners:
                break
            outside = frozenset(c for c in triangle_corners(tri) if c not in hset)
            if outside in used_pairs:
                continue
            used_pairs.add(outside)
            chosen.append(tri)
        if len(chosen) < corners:
            raise LatticeError(f"shape admits only {len(chosen)} triangular corners")
    else:
        chosen = [_norm_triangle(t) for t in corners]
        for tri in chosen:
            if sum(c in hset for c in triangle_corners(tri)) != 1:
                raise LatticeError(f"corner triangle {tri} must have exactly one site corner")
    tris.update(chosen)
    polys: list[Polygon] = [(geo.big_kind, geo.big(s), False) for s in hs]
    polys += [("triangle", geo.small(t), True) for t in sorted(tris)]
    meta = {
        "sites": [list(s) for s in hs],
        "corners": [list(t) for t in sorted(chosen)],
        "shape": "sites",
    }
    return _graph_from_polygons(family, polys, meta)


# -- 4.8.8 -------------------------------------------------------------------

T488_SEEDS = ("octagon_origin", "square_origin")
_OCT_SIDE = math.sqrt(2.0) - 1.0


def build_t488(p_cells: int, q_cells: int, seed: str = "octagon_origin") -> FermionicGraph:
    """4.8.8 patch of ``p_cells x q_cells`` cells in the diagonal cell grid.

    Cell ``(p, q)`` is centred at ``((p - q)/2, (p + q)/2)``; cells alternate
    between octagons and squares like a checkerboard. Squares are odd.
    """
    if seed not in T488_SEEDS:
        raise LatticeError(f"unknown 4.8.8 seed {seed!r}; expected one of {T488_SEEDS}")
    if p_cells < 1 or q_cells < 1:
        raise LatticeError("dimensions must be >= 1")
    shift = 0 if seed == "octagon_origin" else 1
    half = 0.5
    s2 = _OCT_SIDE / 2.0
    polys: list[Polygon] = []
    for q in range(q_cells):
        for p in range(p_cells):
            cx, cy = (p - q) / 2.0, (p + q) / 2.0
            if shift:
                cx, cy = cx + 0.5, cy + 0.5
            if (p + q + shift) % 2 == 0:
                pts = [
                    (cx + half, cy - s2), (cx + half, cy + s2),
                    (cx + s2, cy + half), (cx - s2, cy + half),
                    (cx - half, cy + s2), (cx - half, cy - s2),
                    (cx - s2, cy - half), (cx + s2, cy - half),
                ]
                polys.append(("octagon", pts, False))
            else:
                r = half - s2
                pts = [(cx + r, cy), (cx, cy + r), (cx - r, cy), (cx, cy - r)]
                polys.append(("square", pts, True))
    meta = {"dims": [p_cells, q_cells], "seed": seed}
    return _graph_from_polygons("t488", polys, meta)


def finish(g: FermionicGraph) -> FermionicGraph:
    """Solve incidence letters on a tiling graph."""
    return assign_incidence(g)
