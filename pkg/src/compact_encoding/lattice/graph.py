"""Fermionic graph container shared by every lattice family."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

FAMILIES = ("square", "t488", "t6434", "t4612", "kagome", "t31212", "cubic")
PLANAR_FAMILIES = FAMILIES[:-1]


class LatticeError(ValueError):
    """Invalid lattice dimensions, shape or family."""


@dataclass(frozen=True)
class Edge:
    """Directed edge ``tail -> head``.

    ``incidence`` holds the letter the edge operator applies on the tail and
    head vertex qubits (arrow = ``Y``, blank = ``X``). Ordinary arrows are
    ``("X", "Y")``; edges inside odd triangles may be ``XX`` or ``YY``.
    """

    tail: int
    head: int
    incidence: tuple[str, str] = ("X", "Y")
    axis: str | None = None

    @property
    def key(self) -> tuple[int, int]:
        return (min(self.tail, self.head), max(self.tail, self.head))

    def letter_at(self, v: int) -> str:
        if v == self.tail:
            return self.incidence[0]
        if v == self.head:
            return self.incidence[1]
        raise KeyError(v)

    def other(self, v: int) -> int:
        return self.head if v == self.tail else self.tail


@dataclass(frozen=True)
class Face:
    """Bounded face. ``edges[k]`` joins ``vertices[k]`` and ``vertices[k+1]``."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    odd: bool
    kind: str
    normal: str | None = None

    @property
    def sides(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class Cell:
    faces: tuple[int, ...]
    odd: bool


@dataclass
class FermionicGraph:
    """Vertices are fermionic modes; faces and cells carry odd/even labels.

    Vertex ids are dense and ordered row-major by coordinate. Graphs are
    treated as immutable once built.
    """

    family: str
    coords: list[tuple[float, ...]]
    edges: list[Edge]
    faces: list[Face]
    cells: list[Cell] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def n_vertices(self) -> int:
        return len(self.coords)

    @property
    def planar(self) -> bool:
        return self.family != "cubic"

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e.key: k for k, e in enumerate(self.edges)}

    @cached_property
    def incident(self) -> list[list[int]]:
        inc: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for k, e in enumerate(self.edges):
            inc[e.tail].append(k)
            inc[e.head].append(k)
        return inc

    @cached_property
    def neighbours(self) -> list[list[int]]:
        return [
            sorted(self.edges[k].other(v) for k in ks)
            for v, ks in enumerate(self.incident)
        ]

    @cached_property
    def edge_faces(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.edges]
        for f, face in enumerate(self.faces):
            for k in face.edges:
                out[k].append(f)
        return out

    @cached_property
    def vertex_faces(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for f, face in enumerate(self.faces):
            for v in face.vertices:
                out[v].append(f)
        return out

    @cached_property
    def face_cells(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.faces]
        for c, cell in enumerate(self.cells):
            for f in cell.faces:
                out[f].append(c)
        return out

    def edge_between(self, a: int, b: int) -> int:
        return self.edge_index[(min(a, b), max(a, b))]

    def odd_faces(self) -> list[int]:
        return [f for f, face in enumerate(self.faces) if face.odd]

    def odd_faces_of_edge(self, k: int) -> list[int]:
        return [f for f in self.edge_faces[k] if self.faces[f].odd]

    def isolated_odd_faces(self) -> list[int]:
        """Odd faces that bound no odd cell (only meaningful for cubic graphs)."""
        if not self.cells:
            return []
        return [
            f
            for f in self.odd_faces()
            if not any(self.cells[c].odd for c in self.face_cells[f])
        ]

    def is_connected(self) -> bool:
        if self.n_vertices == 0:
            return False
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbours[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def distances_from(self, src: int) -> list[int]:
        dist = [-1] * self.n_vertices
        dist[src] = 0
        frontier = [src]
        while frontier:
            nxt = []
            for v in frontier:
                for w in self.neighbours[v]:
                    if dist[w] < 0:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        return dist

    def shortest_path(self, a: int, b: int) -> list[int]:
        """Lexicographically smallest among the shortest vertex paths ``a .. b``."""
        dist = self.distances_from(b)
        if dist[a] < 0:
            raise LatticeError(f"no path from {a} to {b}")
        path = [a]
        while path[-1] != b:
            v = path[-1]
            path.append(min(w for w in self.neighbours[v] if dist[w] == dist[v] - 1))
        return path

    def vertex_classes(self, v: int) -> list[list[int]]:
        """Incident edges of ``v`` grouped by a shared odd face.

        Edges in one class must act on the vertex qubit with the same letter,
        edges in different classes with different letters.
        """
        classes: list[list[int]] = []
        seen: set[int] = set()
        for k in sorted(self.incident[v]):
            if k in seen:
                continue
            group = [k]
            seen.add(k)
            for f in self.odd_faces_of_edge(k):
                for k2 in self.faces[f].edges:
                    if k2 not in seen and v in (self.edges[k2].tail, self.edges[k2].head):
                        group.append(k2)
                        seen.add(k2)
            classes.append(sorted(group))
        return classes

    def corner_vertices(self) -> list[int]:
        """Vertices of minimal degree that sit on the geometric hull corners."""
        if self.family == "cubic":
            return [v for v in range(self.n_vertices) if len(self.incident[v]) == 3]
        return [v for v in range(self.n_vertices) if len(self.incident[v]) == 2]

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "meta": self.meta,
            "vertices": [{"id": v, "coord": list(c)} for v, c in enumerate(self.coords)],
            "edges": [
                {
                    "id": k,
                    "tail": e.tail,
                    "head": e.head,
                    "incidence": "".join(e.incidence),
                    **({"axis": e.axis} if e.axis else {}),
                }
                for k, e in enumerate(self.edges)
            ],
            "faces": [
                {
                    "id": f,
                    "vertices": list(face.vertices),
                    "edges": list(face.edges),
                    "label": "odd" if face.odd else "even",
                    "kind": face.kind,
                    **({"normal": face.normal} if face.normal else {}),
                }
                for f, face in enumerate(self.faces)
            ],
            "cells": [
                {"id": c, "faces": list(cell.faces), "label": "odd" if cell.odd else "even"}
                for c, cell in enumerate(self.cells)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> FermionicGraph:
        try:
            coords = [tuple(v["coord"]) for v in data["vertices"]]
            edges = [
                Edge(e["tail"], e["head"], tuple(e["incidence"]), e.get("axis"))
                for e in data["edges"]
            ]
            faces = [
                Face(
                    tuple(f["vertices"]),
                    tuple(f["edges"]),
                    f["label"] == "odd",
                    f["kind"],
                    f.get("normal"),
                )
                for f in data["faces"]
            ]
            cells = [Cell(tuple(c["faces"]), c["label"] == "odd") for c in data.get("cells", [])]
            family = data["family"]
        except (KeyError, TypeError) as exc:
            raise LatticeError(f"malformed graph JSON: {exc}") from exc
        if family not in FAMILIES:
            raise LatticeError(f"unknown family {family!r}")
        return cls(family, coords, edges, faces, cells, dict(data.get("meta", {})))


# -- construction helpers ---------------------------------------------------


def _row_major_key(c: Sequence[float]) -> tuple:
    if len(c) == 2:
        return (-round(c[1], 6), round(c[0], 6))
    return (round(c[2], 6), round(c[1], 6), round(c[0], 6))


def assemble(
    family: str,
    polygons: Iterable[tuple[str, Sequence[Sequence[float]], bool]],
    meta: dict | None = None,
) -> tuple[list[tuple[float, ...]], list[tuple[int, int]], list[tuple[str, tuple[int, ...], bool]]]:
    """Merge polygons into vertex/edge/face lists keyed by rounded coordinates.

    Returns coordinates (row-major ordered), undirected edges and face
    vertex cycles. Duplicate polygons are dropped.
    """
    key_to_coord: dict[tuple, tuple[float, ...]] = {}
    raw_faces = []
    seen_faces = set()
    for kind, pts, odd in polygons:
        keys = [tuple(round(x, 6) for x in p) for p in pts]
        for k, p in zip(keys, pts):
            key_to_coord.setdefault(k, tuple(float(x) for x in p))
        fkey = frozenset(keys)
        if fkey in seen_faces:
            continue
        seen_faces.add(fkey)
        raw_faces.append((kind, keys, odd))
    order = sorted(key_to_coord, key=lambda k: _row_major_key(key_to_coord[k]))
    vid = {k: i for i, k in enumerate(order)}
    coords = [key_to_coord[k] for k in order]
    edge_set: set[tuple[int, int]] = set()
    faces = []
    for kind, keys, odd in raw_faces:
        cyc = tuple(vid[k] for k in keys)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            edge_set.add((min(a, b), max(a, b)))
        faces.append((kind, cyc, odd))
    return coords, sorted(edge_set), faces


def order_faces(
    coords: list[tuple[float, ...]], faces: list[tuple[str, tuple[int, ...], bool]]
) -> list[tuple[str, tuple[int, ...], bool]]:
    """Sort faces row-major by centroid and rotate each cycle to its lowest vertex."""

    def centroid(cyc):
        n = len(cyc)
        return tuple(sum(coords[v][d] for v in cyc) / n for d in range(len(coords[0])))

    out = []
    for kind, cyc, odd in faces:
        i = cyc.index(min(cyc))
        cyc = cyc[i:] + cyc[:i]
        if len(cyc) > 2 and cyc[-1] < cyc[1]:
            cyc = (cyc[0],) + tuple(reversed(cyc[1:]))
        out.append((kind, cyc, odd))
    out.sort(key=lambda t: _row_major_key(centroid(t[1])))
    return out


def make_faces(
    edge_idx: dict[tuple[int, int], int], faces: list[tuple[str, tuple[int, ...], bool]]
) -> list[Face]:
    out = []
    for kind, cyc, odd in faces:
        eids = tuple(
            edge_idx[(min(a, b), max(a, b))] for a, b in zip(cyc, cyc[1:] + cyc[:1])
        )
        out.append(Face(cyc, eids, odd, kind))
    return out


def counts(g: FermionicGraph) -> dict[str, int]:
    """Exact face/cell/vertex counts used by the closed-form disparity rules."""
    c: dict[str, int] = {
        "V": g.n_vertices,
        "E": len(g.edges),
        "F": len(g.faces),
        "OF": sum(f.odd for f in g.faces),
    }
    c["EF"] = c["F"] - c["OF"]
    kinds = Counter(f.kind for f in g.faces)
    for name, kind in (
        ("SF", "square"),
        ("TF", "triangle"),
        ("HF", "hexagon"),
        ("OctF", "octagon"),
        ("DF", "dodecagon"),
    ):
        if kinds.get(kind):
            c[name] = kinds[kind]
    if g.family in ("kagome", "t31212"):
        c.setdefault("TF", 0)
        c["TC"] = triangular_corners(g)
        if g.family == "kagome":
            c.setdefault("HF", 0)
        else:
            c.setdefault("DF", 0)
    if g.family == "cubic":
        c["C"] = len(g.cells)
        c["OC"] = sum(cell.odd for cell in g.cells)
        c["EC"] = c["C"] - c["OC"]
        c["IOF"] = len(g.isolated_odd_faces())
        c["OCV"] = len(odd_corner_vertices(g))
    return c


def triangular_corners(g: FermionicGraph) -> int:
    """Boundary vertices that belong to exactly one face, a triangle."""
    n = 0
    for v in range(g.n_vertices):
        fs = g.vertex_faces[v]
        if len(fs) == 1 and g.faces[fs[0]].kind == "triangle":
            n += 1
    return n


def odd_corner_vertices(g: FermionicGraph) -> list[int]:
    """Cubic corner vertices (degree 3) whose unique cell is odd."""
    vertex_cells: dict[int, set[int]] = defaultdict(set)
    for c, cell in enumerate(g.cells):
        for f in cell.faces:
            for v in g.faces[f].vertices:
                vertex_cells[v].add(c)
    out = []
    for v in g.corner_vertices():
        cs = vertex_cells[v]
        if len(cs) == 1 and g.cells[next(iter(cs))].odd:
            out.append(v)
    return out


def euler_characteristic(g: FermionicGraph) -> int:
    return g.n_vertices - len(g.edges) + len(g.faces) - len(g.cells)
