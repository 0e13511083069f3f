"""Qubit layout and the edge/vertex operator map for every lattice family."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .lattice.graph import FermionicGraph
from .pauli import PhasedPauli, product

SCHEMA_VERSION = 1

# Qubits-per-mode bounds approached in the bulk.
RATIO_BOUNDS = {
    "square": 1.5,
    "t488": 1.25,
    "t6434": 1.5,
    "t4612": 1.25,
    "kagome": 1.67,
    "t31212": 1.34,
    "cubic": 2.5,
}
WEIGHT_BOUNDS = {fam: (4 if fam == "cubic" else 3) for fam in RATIO_BOUNDS}


class EncodingError(ValueError):
    """The graph cannot be encoded or its operators are inconsistent."""


@dataclass
class Encoding:
    """Vertex qubits come first (qubit ``v`` for vertex ``v``), then one
    qubit per odd face in face order. ``edge_ops[k]`` is the operator of edge
    ``k`` traversed from its tail to its head."""

    graph: FermionicGraph
    n_qubits: int
    face_qubit: dict[int, int]
    edge_ops: list[PhasedPauli]
    vertex_ops: list[PhasedPauli]
    negated_edges: list[int] = field(default_factory=list)

    @property
    def n_modes(self) -> int:
        return self.graph.n_vertices

    @property
    def vertex_qubit(self) -> list[int]:
        return list(range(self.graph.n_vertices))

    def edge_op(self, i: int, j: int) -> PhasedPauli:
        """Operator of the directed edge ``i -> j`` (negated against orientation)."""
        k = self.graph.edge_between(i, j)
        op = self.edge_ops[k]
        return op if self.graph.edges[k].tail == i else -op

    def vertex_op(self, v: int) -> PhasedPauli:
        return self.vertex_ops[v]

    def loop(self, cycle: Sequence[int]) -> PhasedPauli:
        """``i**n`` times the ordered product of edge operators around a closed
        vertex walk with ``n`` edges (the first vertex is not repeated)."""
        n = len(cycle)
        ops = [self.edge_op(cycle[k], cycle[(k + 1) % n]) for k in range(n)]
        return product(ops, self.n_qubits).times_i(n)

    def face_loop(self, f: int) -> PhasedPauli:
        return self.loop(self.graph.faces[f].vertices)

    # -- serialisation ----------------------------------------------------

    def to_json(self) -> dict:
        g = self.graph
        return {
            "schema": SCHEMA_VERSION,
            "family": g.family,
            "n_qubits": self.n_qubits,
            "n_modes": self.n_modes,
            "vertex_qubits": self.vertex_qubit,
            "face_qubits": {str(f): q for f, q in sorted(self.face_qubit.items())},
            "negated_edges": list(self.negated_edges),
            "edge_ops": [
                {"edge": k, "tail": e.tail, "head": e.head, **self.edge_ops[k].to_json()}
                for k, e in enumerate(g.edges)
            ],
            "vertex_ops": [
                {"vertex": v, **op.to_json()} for v, op in enumerate(self.vertex_ops)
            ],
            "graph": g.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> Encoding:
        try:
            if data.get("schema") != SCHEMA_VERSION:
                raise EncodingError(f"unsupported encoding schema {data.get('schema')!r}")
            g = FermionicGraph.from_json(data["graph"])
            n = int(data["n_qubits"])
            edge_ops = [PhasedPauli.from_json(e, n) for e in data["edge_ops"]]
            vertex_ops = [PhasedPauli.from_json(v, n) for v in data["vertex_ops"]]
            face_qubit = {int(f): int(q) for f, q in data["face_qubits"].items()}
            negated = [int(k) for k in data.get("negated_edges", [])]
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, EncodingError):
                raise
            raise EncodingError(f"malformed encoding JSON: {exc}") from exc
        if len(edge_ops) != len(g.edges) or len(vertex_ops) != g.n_vertices:
            raise EncodingError("operator tables do not match the graph")
        return cls(g, n, face_qubit, edge_ops, vertex_ops, negated)


# -- construction -------------------------------------------------------------


def _face_letters(g: FermionicGraph, f: int) -> dict[int, str]:
    """Letter each edge of odd face ``f`` applies on the face qubit."""
    face = g.faces[f]
    if g.family == "cubic":
        return {k: g.edges[k].axis.upper() for k in face.edges}
    if g.family == "square":
        return {k: ("X" if g.edges[k].axis == "v" else "Y") for k in face.edges}
    start = face.edges.index(min(face.edges))
    order = face.edges[start:] + face.edges[:start]
    if face.sides == 4:
        return {k: "XY"[i % 2] for i, k in enumerate(order)}
    if face.sides == 3:
        return {k: "XYZ"[i] for i, k in enumerate(order)}
    raise EncodingError(f"odd face {f} has {face.sides} sides; only 3 or 4 are supported")


def encode(g: FermionicGraph) -> Encoding:
    """Build the edge and vertex operators for ``g``.

    Vertex operators are ``Z`` on the vertex qubit. An edge applies its
    incidence letters on its two vertex qubits and, for every adjacent odd
    face, the face letter on that face's qubit. Square-lattice edges pointing
    up carry a minus sign. On tilings, and on isolated odd faces of the cubic
    lattice, an odd-face loop that comes out as ``-I`` is fixed by negating
    the lowest-id edge of that face.
    """
    if g.n_vertices < 1:
        raise EncodingError("empty graph")
    odd = g.odd_faces()
    face_qubit = {f: g.n_vertices + i for i, f in enumerate(odd)}
    n = g.n_vertices + len(odd)
    letters_on_face = {f: _face_letters(g, f) for f in odd}

    edge_ops = []
    for k, e in enumerate(g.edges):
        letters = {e.tail: e.incidence[0], e.head: e.incidence[1]}
        for f in g.odd_faces_of_edge(k):
            letters[face_qubit[f]] = letters_on_face[f][k]
        sign = 0
        if g.family == "square" and e.axis == "v" and g.coords[e.head][1] > g.coords[e.tail][1]:
            sign = 2
        edge_ops.append(PhasedPauli.from_letters(n, letters, sign))
    vertex_ops = [PhasedPauli.single(n, v, "Z") for v in range(g.n_vertices)]
    enc = Encoding(g, n, face_qubit, edge_ops, vertex_ops)

    if g.family == "cubic":
        to_fix = g.isolated_odd_faces()
    elif g.family == "square":
        to_fix = []
    else:
        to_fix = odd
    for f in to_fix:
        loop = enc.face_loop(f)
        if not loop.is_identity_up_to_phase():
            raise EncodingError(f"odd face {f} loop is not proportional to identity: {loop}")
        if loop.phase_exp == 2:
            k = min(g.faces[f].edges, key=lambda k: (g.edges[k].tail, g.edges[k].head))
            enc.edge_ops[k] = -enc.edge_ops[k]
            enc.negated_edges.append(k)
        elif loop.phase_exp != 0:
            raise EncodingError(f"odd face {f} loop has non-real phase")
    enc.negated_edges.sort()
    return enc


# -- verification ---------------------------------------------------------------


@dataclass
class RelationReport:
    passed: bool
    n_checked: int
    violations: list[str]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "n_checked": self.n_checked,
            "violations": self.violations[:50],
            "n_violations": len(self.violations),
        }


def verify_relations(enc: Encoding) -> RelationReport:
    """Exhaustively check the edge/vertex algebra on all operator pairs.

    Involution (square is exactly ``+I``), antisymmetry under reversal,
    anticommutation of incident edge-vertex pairs and of edges sharing one
    vertex, commutation of everything else.
    """
    g = enc.graph
    bad: list[str] = []
    checked = 0
    ident = PhasedPauli.identity(enc.n_qubits)
    for k, op in enumerate(enc.edge_ops):
        checked += 2
        if op * op != ident:
            bad.append(f"edge {k}: square is not +I")
        e = g.edges[k]
        if enc.edge_op(e.head, e.tail) != -op:
            bad.append(f"edge {k}: reversal is not the negation")
    for v, op in enumerate(enc.vertex_ops):
        checked += 1
        if op * op != ident:
            bad.append(f"vertex {v}: square is not +I")
    verts = [1 << v for v in range(g.n_vertices)]
    ends = [verts[e.tail] | verts[e.head] for e in g.edges]
    edges = enc.edge_ops
    for a in range(len(edges)):
        for b in range(a + 1, len(edges)):
            checked += 1
            shared = (ends[a] & ends[b]).bit_count()
            want = shared != 1
            if edges[a].commutes(edges[b]) != want:
                rel = "commute" if want else "anticommute"
                bad.append(f"edges {a},{b}: expected to {rel}")
        for v in range(g.n_vertices):
            checked += 1
            want = not (ends[a] >> v) & 1
            if edges[a].commutes(enc.vertex_ops[v]) != want:
                rel = "commute" if want else "anticommute"
                bad.append(f"edge {a}, vertex {v}: expected to {rel}")
    for u in range(g.n_vertices):
        for v in range(u + 1, g.n_vertices):
            checked += 1
            if not enc.vertex_ops[u].commutes(enc.vertex_ops[v]):
                bad.append(f"vertices {u},{v}: expected to commute")
    return RelationReport(not bad, checked, bad)


def conformance_issues(enc: Encoding) -> list[str]:
    """Weight-3 planar layout rules: Z vertex operators, at most one face
    qubit per face and per edge operator, edge weight at most 3."""
    g = enc.graph
    issues = []
    for v, op in enumerate(enc.vertex_ops):
        if op != PhasedPauli.single(enc.n_qubits, v, "Z"):
            issues.append(f"vertex {v}: operator is not a single Z")
    face_qubits = set(enc.face_qubit.values())
    limit = WEIGHT_BOUNDS.get(g.family, 3)
    for k, op in enumerate(enc.edge_ops):
        nf = len(face_qubits.intersection(op.support()))
        if g.planar and nf > 1:
            issues.append(f"edge {k}: touches {nf} face qubits")
        if op.weight() > limit:
            issues.append(f"edge {k}: weight {op.weight()} exceeds {limit}")
    return issues


@dataclass
class EncodingStats:
    family: str
    n_qubits: int
    n_modes: int
    max_edge_weight: int
    qubits_per_mode: float
    modes_per_qubit: float
    weight_bound: int
    ratio_bound: float

    @property
    def within_bounds(self) -> bool:
        return self.max_edge_weight <= self.weight_bound and self.qubits_per_mode < self.ratio_bound

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n_qubits": self.n_qubits,
            "n_modes": self.n_modes,
            "max_edge_weight": self.max_edge_weight,
            "qubits_per_mode": round(self.qubits_per_mode, 12),
            "modes_per_qubit": round(self.modes_per_qubit, 12),
            "weight_bound": self.weight_bound,
            "ratio_bound": self.ratio_bound,
            "within_bounds": self.within_bounds,
        }


def stats(enc: Encoding) -> EncodingStats:
    fam = enc.graph.family
    return EncodingStats(
        family=fam,
        n_qubits=enc.n_qubits,
        n_modes=enc.n_modes,
        max_edge_weight=max((op.weight() for op in enc.edge_ops), default=0),
        qubits_per_mode=enc.n_qubits / enc.n_modes,
        modes_per_qubit=enc.n_modes / enc.n_qubits,
        weight_bound=WEIGHT_BOUNDS[fam],
        ratio_bound=RATIO_BOUNDS[fam],
    )

