"""Cubic lattice with the alternating orientation fixed by one corner."""

from __future__ import annotations

from itertools import product

from .graph import Cell, Edge, Face, FermionicGraph, LatticeError, euler_characteristic

# (s_x, s_y, s_z); flipping all three gives the same labelling, so four remain.
CUBIC_SEEDS = {
    "out": (1, 1, 1),
    "x_in": (-1, 1, 1),
    "y_in": (1, -1, 1),
    "z_in": (1, 1, -1),
}
_AXES = "xyz"


def build_cubic(lx: int, ly: int, lz: int, seed: str = "out") -> FermionicGraph:
    """``lx x ly x lz`` cells.

    An edge along axis ``a`` starting at integer point ``p`` points in the
    positive direction iff ``s_a * (-1)**(sum of the other two coordinates)``
    is positive. With ``seed="out"`` every edge at the origin points away from
    it. Faces that do not circulate are odd; a cell is odd when all six of its
    faces are.
    """
    if seed not in CUBIC_SEEDS:
        raise LatticeError(f"unknown cubic seed {seed!r}; expected one of {sorted(CUBIC_SEEDS)}")
    dims = (lx, ly, lz)
    if min(dims) < 1:
        raise LatticeError("cubic dimensions must be >= 1")
    signs = CUBIC_SEEDS[seed]
    nx, ny = lx + 1, ly + 1

    def vid(p) -> int:
        return p[0] + nx * (p[1] + ny * p[2])

    points = [(x, y, z) for z in range(lz + 1) for y in range(ly + 1) for x in range(lx + 1)]
    coords = [tuple(float(c) for c in p) for p in points]

    edges: list[Edge] = []
    for p in points:
        for axis in range(3):
            if p[axis] == dims[axis]:
                continue
            q = list(p)
            q[axis] += 1
            others = sum(p) - p[axis]
            forward = signs[axis] * (-1) ** others > 0
            a, b = vid(p), vid(q)
            edges.append(Edge(a, b, axis=_AXES[axis]) if forward else Edge(b, a, axis=_AXES[axis]))
    edges.sort(key=lambda e: e.key)
    edge_idx = {e.key: k for k, e in enumerate(edges)}

    face_of: dict[tuple, int] = {}
    face_list = []
    for normal in range(3):
        u, w = [a for a in range(3) if a != normal]
        for p in points:
            if p[u] == dims[u] or p[w] == dims[w]:
                continue
            corners = []
            for du, dw in ((0, 0), (1, 0), (1, 1), (0, 1)):
                q = list(p)
                q[u] += du
                q[w] += dw
                corners.append(vid(q))
            face_list.append((normal, tuple(p), tuple(corners)))
    centroid = {}
    for normal, p, cyc in face_list:
        c = [p[0], p[1], p[2]]
        for a in range(3):
            if a != normal:
                c[a] += 0.5
        centroid[(normal, p)] = (c[2], c[1], c[0], normal)
    face_list.sort(key=lambda t: centroid[(t[0], t[1])])
    faces: list[Face] = []
    for normal, p, cyc in face_list:
        eids = tuple(
            edge_idx[(min(a, b), max(a, b))] for a, b in zip(cyc, cyc[1:] + cyc[:1])
        )
        forward = [edges[k].tail == cyc[i] for i, k in enumerate(eids)]
        circulating = all(forward) or not any(forward)
        face_of[(normal, p)] = len(faces)
        faces.append(Face(cyc, eids, not circulating, "square", _AXES[normal]))

    cells: list[Cell] = []
    for z, y, x in product(range(lz), range(ly), range(lx)):
        p = (x, y, z)
        fids = []
        for normal in range(3):
            fids.append(face_of[(normal, p)])
            q = list(p)
            q[normal] += 1
            fids.append(face_of[(normal, tuple(q))])
        odd_pairs = [faces[fids[2 * a]].odd and faces[fids[2 * a + 1]].odd for a in range(3)]
        n_odd = sum(faces[f].odd for f in fids)
        if n_odd == 6:
            cells.append(Cell(tuple(fids), True))
        elif n_odd == 2 and sum(odd_pairs) == 1:
            cells.append(Cell(tuple(fids), False))
        else:
            raise LatticeError(f"cell {p} has an invalid odd-face pattern")
    g = FermionicGraph(
        "cubic", coords, edges, faces, cells, {"dims": [lx, ly, lz], "seed": seed}
    )
    if euler_characteristic(g) != 1:
        raise LatticeError("cubic Euler characteristic is not 1")
    return g
