"""Choose the vertex-qubit letter every edge applies at each endpoint.

At a vertex the incident edges fall into classes (edges sharing an odd face).
Edges of one class must apply the same letter there and the two classes must
apply different letters; that is the only hard requirement. On top of that we
prefer the arrow picture (``X`` on the tail, ``Y`` on the head) for every edge
and a common letter on all corners of an odd triangle. Preferences that would
contradict earlier choices are skipped and counted.
"""

from __future__ import annotations

from .graph import Edge, FermionicGraph, LatticeError


class _ParityUnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.parity = [0] * n  # parity relative to parent

    def find(self, a: int) -> tuple[int, int]:
        p = 0
        path = []
        while self.parent[a] != a:
            path.append(a)
            p ^= self.parity[a]
            a = self.parent[a]
        root = a
        # path compression
        acc = p
        for node in path:
            nxt_par = self.parity[node]
            self.parent[node] = root
            self.parity[node] = acc
            acc ^= nxt_par
        return root, p

    def union(self, a: int, b: int, differ: int) -> bool:
        """Record ``letter(a) xor letter(b) == differ``; False on contradiction."""
        ra, pa = self.find(a)
        rb, pb = self.find(b)
        if ra == rb:
            return (pa ^ pb) == differ
        if ra < rb:
            ra, rb, pa, pb = rb, ra, pb, pa
        self.parent[ra] = rb
        self.parity[ra] = pa ^ pb ^ differ
        return True


def assign_incidence(g: FermionicGraph) -> FermionicGraph:
    """Return a copy of ``g`` whose edges carry solved incidence letters.

    Edge direction is rewritten so that ``XY`` edges point from the ``X`` end
    to the ``Y`` end; ``XX`` and ``YY`` edges point from the lower vertex id.
    """
    node_of: dict[tuple[int, int], int] = {}  # (vertex, edge) -> class node
    n_nodes = 0
    class_nodes: list[list[int]] = []
    for v in range(g.n_vertices):
        classes = g.vertex_classes(v)
        if len(classes) > 2:
            raise LatticeError(
                f"vertex {v} has {len(classes)} edge classes; a weight-3 layout needs at most 2"
            )
        nodes = []
        for cls in classes:
            for k in cls:
                node_of[(v, k)] = n_nodes
            nodes.append(n_nodes)
            n_nodes += 1
        class_nodes.append(nodes)

    uf = _ParityUnionFind(n_nodes)
    for nodes in class_nodes:
        if len(nodes) == 2:
            uf.union(nodes[0], nodes[1], 1)

    skipped = 0
    for face in g.faces:
        if face.odd and face.sides == 3:
            corner = [node_of[(v, face.edges[i])] for i, v in enumerate(face.vertices)]
            for other in corner[1:]:
                if not uf.union(corner[0], other, 0):
                    skipped += 1
    in_triangle = {
        k for face in g.faces if face.odd and face.sides == 3 for k in face.edges
    }
    for k, e in enumerate(g.edges):
        if k in in_triangle:
            continue
        if not uf.union(node_of[(e.tail, k)], node_of[(e.head, k)], 1):
            skipped += 1

    def letter(node: int) -> str:
        _, p = uf.find(node)
        return "XY"[p]

    edges = []
    for k, e in enumerate(g.edges):
        a, b = e.key
        la, lb = letter(node_of[(a, k)]), letter(node_of[(b, k)])
        if la == "Y" and lb == "X":
            edges.append(Edge(b, a, ("X", "Y"), e.axis))
        else:
            edges.append(Edge(a, b, (la, lb), e.axis))
    meta = dict(g.meta)
    meta["non_arrow_preferences_skipped"] = skipped
    return FermionicGraph(g.family, g.coords, edges, g.faces, g.cells, meta)
