"""Single-Majorana particle species, their fusion, and stabilizer augmentation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .encoding import Encoding
from .homology import HomologyReport, StabilizerGroup
from .pauli import PhasedPauli, product


class SpeciesError(ValueError):
    """Species cannot be built, fused or paired as requested."""


@dataclass(frozen=True)
class InjectionPoint:
    """Where a species is first defined.

    ``kind`` is ``"corner"`` (a vertex on which every incident edge applies
    the same letter) or ``"triangle"`` (an odd triangular face, anchored at
    ``vertex``). ``op`` is the species operator at ``vertex``.
    """

    kind: str
    vertex: int
    op: PhasedPauli
    face: int | None = None
    coord: tuple[float, ...] = ()

    def to_json(self) -> dict:
        out = {"kind": self.kind, "vertex": self.vertex, **self.op.to_json()}
        if self.face is not None:
            out["face"] = self.face
        return out


def _other_letter(letter: str) -> str:
    return "Y" if letter == "X" else "X"


def corner_injection(enc: Encoding, v: int) -> PhasedPauli | None:
    letters = {enc.edge_ops[k].letter(v) for k in enc.graph.incident[v]}
    if len(letters) != 1:
        return None
    (letter,) = letters
    return PhasedPauli.single(enc.n_qubits, v, _other_letter(letter))


def triangle_injections(enc: Encoding, f: int) -> list[tuple[int, PhasedPauli]]:
    """The three single-particle operators of one odd triangle, one per corner.

    At corner ``q`` the operator applies the triangle edges' letter on ``q``
    and, on the face qubit, the letter used there by the edge opposite ``q``.
    """
    g = enc.graph
    face = g.faces[f]
    fq = enc.face_qubit[f]
    out = []
    for i, q in enumerate(face.vertices):
        incident = [k for k in face.edges if q in g.edges[k].key]
        (opposite,) = [k for k in face.edges if k not in incident]
        letter_q = enc.edge_ops[incident[0]].letter(q)
        letter_f = enc.edge_ops[opposite].letter(fq)
        out.append((q, PhasedPauli.from_letters(enc.n_qubits, {q: letter_q, fq: letter_f})))
    return out


def find_injection_points(enc: Encoding) -> list[InjectionPoint]:
    """Corner vertices by id, then odd triangles by face id."""
    g = enc.graph
    points = []
    for v in range(g.n_vertices):
        op = corner_injection(enc, v)
        if op is not None:
            points.append(InjectionPoint("corner", v, op, None, g.coords[v]))
    for f in g.odd_faces():
        if g.faces[f].sides == 3:
            q, op = min(triangle_injections(enc, f))
            cen = tuple(
                sum(g.coords[u][d] for u in g.faces[f].vertices) / 3.0
                for d in range(len(g.coords[0]))
            )
            points.append(InjectionPoint("triangle", q, op, f, cen))
    return points


@dataclass
class Species:
    """A vertex-indexed family ``M_i`` built by moving the injection operator
    along shortest paths: ``M_j = -i E_ij M_i`` at every step. Operators are
    computed on demand and cached."""

    enc: Encoding
    index: int
    injection: InjectionPoint
    _cache: dict[int, PhasedPauli] = field(default_factory=dict, repr=False)

    def at(self, v: int) -> PhasedPauli:
        if v not in self._cache:
            path = self.enc.graph.shortest_path(self.injection.vertex, v)
            self._cache[v] = transport(self.enc, self.injection.op, path)
        return self._cache[v]

    def bar(self, v: int) -> PhasedPauli:
        """Second-kind partner ``-i V_v M_v``."""
        return (self.enc.vertex_ops[v] * self.at(v)).times_i(-1)

    def to_json(self) -> dict:
        return {"index": self.index, "injection": self.injection.to_json()}


def transport(enc: Encoding, op: PhasedPauli, path: list[int]) -> PhasedPauli:
    """Move a species operator from ``path[0]`` to ``path[-1]`` along edges."""
    g = enc.graph
    for a, b in zip(path, path[1:]):
        if b not in g.neighbours[a]:
            raise SpeciesError(f"path step {a} -> {b} is not an edge")
        op = (enc.edge_op(a, b) * op).times_i(-1)
    return op


def all_species(enc: Encoding) -> list[Species]:
    return [Species(enc, i, p) for i, p in enumerate(find_injection_points(enc))]


@dataclass
class SpeciesReport:
    passed: bool
    violations: list[str]


def verify_species(
    enc: Encoding, s: Species, group: StabilizerGroup | None = None
) -> SpeciesReport:
    """Check every single-Majorana relation against the encoding.

    (Anti)commutation relations are checked exactly. ``E_ij M_j = -i M_i``
    depends on the transport path, so with ``group`` given it is checked
    modulo that stabilizer group, otherwise exactly.
    """
    g = enc.graph
    bad = []
    ms = [s.at(v) for v in range(g.n_vertices)]
    ident = PhasedPauli.identity(enc.n_qubits)
    for i, m in enumerate(ms):
        if m * m != ident:
            bad.append(f"M_{i} does not square to +I")
        for j in range(g.n_vertices):
            vj = enc.vertex_ops[j]
            if (i == j) == m.commutes(vj):
                bad.append(f"M_{i} vs V_{j}")
            if j > i and m.commutes(ms[j]):
                bad.append(f"M_{i} and M_{j} commute")
    for k, e in enumerate(g.edges):
        op = enc.edge_ops[k]
        for v in range(g.n_vertices):
            if (v in (e.tail, e.head)) == op.commutes(ms[v]):
                bad.append(f"E_{e.tail},{e.head} vs M_{v}")
        for i, j in ((e.tail, e.head), (e.head, e.tail)):
            lhs, rhs = enc.edge_op(i, j) * ms[j], ms[i].times_i(-1)
            same = group.equivalent(lhs, rhs) if group is not None else lhs == rhs
            if not same:
                bad.append(f"E_{i},{j} M_{j} != -i M_{i}")
    return SpeciesReport(not bad, bad)


def verify_distinct(a: Species, b: Species, vertices=None) -> bool:
    """``{M_i, M'_i} = 0`` and ``[M_i, M'_j] = 0`` for ``i != j``."""
    n = a.enc.graph.n_vertices
    vs = range(n) if vertices is None else list(vertices)
    for i in vs:
        if a.at(i).commutes(b.at(i)):
            return False
        for j in range(n):
            if j != i and not a.at(i).commutes(b.at(j)):
                return False
    return True


def maximal_distinct(species: list[Species]) -> list[Species]:
    """Greedy pairwise-distinct subset in index order."""
    chosen: list[Species] = []
    for s in species:
        if all(verify_distinct(s, c) for c in chosen):
            chosen.append(s)
    return chosen


@dataclass(frozen=True)
class FusionPauli:
    op: PhasedPauli
    species: tuple[int, int]
    vertex: int

    def to_json(self) -> dict:
        return {"species": list(self.species), "vertex": self.vertex, **self.op.to_json()}


def fuse(enc: Encoding, a: Species, b: Species, vertex: int = 0) -> FusionPauli:
    """``i M^a_v M^b_v`` times the product of all vertex operators."""
    if a.index == b.index:
        raise SpeciesError("cannot fuse a species with itself")
    all_v = product(enc.vertex_ops, enc.n_qubits)
    op = (a.at(vertex) * b.at(vertex) * all_v).times_i(1)
    return FusionPauli(op, (a.index, b.index), vertex)


def fusion_is_vertex_independent(
    enc: Encoding, a: Species, b: Species, group: StabilizerGroup
) -> bool:
    """Fusing at any vertex gives the same operator modulo ``group``."""
    ref = fuse(enc, a, b, 0).op
    return all(group.equivalent(fuse(enc, a, b, v).op, ref) for v in range(enc.n_modes))


@dataclass
class BoundCheck:
    passed: bool
    n_species: int
    bound: int

    def to_json(self) -> dict:
        return {"passed": self.passed, "n_species": self.n_species, "bound": self.bound}


def species_bound_check(enc: Encoding, disparity: int, species=None) -> BoundCheck:
    if species is None:
        species = maximal_distinct(all_species(enc))
    bound = max(2 * disparity + 2, 0)
    return BoundCheck(len(species) <= bound, len(species), bound)


@dataclass
class Augmentation:
    pairs: list[tuple[int, int]]
    fusions: list[FusionPauli]
    gamma: Species
    hole: Species
    group: StabilizerGroup
    rank_s: int
    disparity: int

    def to_json(self) -> dict:
        return {
            "pairs": [list(p) for p in self.pairs],
            "fusions": [f.to_json() for f in self.fusions],
            "gamma_species": self.gamma.index,
            "hole_species": self.hole.index,
            "rank_stabilizer": self.rank_s,
            "disparity": self.disparity,
        }


def augment_stabilizers(
    enc: Encoding, report: HomologyReport, species: list[Species] | None = None
) -> Augmentation:
    """Fuse ``Δ`` nearby pairs of species into extra stabilizers.

    Pairs are chosen greedily by Euclidean distance between injection sites
    (ties by species index). The two unpaired species become the Majorana
    and hole species of the remaining fermionic space.
    """
    delta = report.disparity
    if delta < 1:
        raise SpeciesError(f"augmentation needs a positive disparity, got {delta}")
    if species is None:
        species = maximal_distinct(all_species(enc))
    if len(species) < 2 * delta + 2:
        raise SpeciesError(
            f"only {len(species)} distinct species for disparity {delta}; need {2 * delta + 2}"
        )

    def dist(a: Species, b: Species) -> float:
        return math.dist(a.injection.coord, b.injection.coord)

    ranked = sorted(combinations(species, 2), key=lambda p: (dist(*p), p[0].index, p[1].index))
    used: set[int] = set()
    pairs = []
    for a, b in ranked:
        if len(pairs) == delta:
            break
        if a.index in used or b.index in used:
            continue
        pairs.append((a, b))
        used.update((a.index, b.index))
    rest = [s for s in species if s.index not in used]
    gamma, hole = rest[0], rest[1]
    fusions = [fuse(enc, a, b, a.injection.vertex) for a, b in pairs]
    group = report.group.extended([f.op for f in fusions])
    return Augmentation(
        pairs=[(a.index, b.index) for a, b in pairs],
        fusions=fusions,
        gamma=gamma,
        hole=hole,
        group=group,
        rank_s=group.rank,
        disparity=enc.n_qubits - enc.n_modes - group.rank,
    )


def designated_gamma(enc: Encoding, report: HomologyReport) -> Species:
    """Species used for odd operators: the lowest-index one."""
    if report.disparity < 0:
        raise SpeciesError("odd operators are not representable when the disparity is -1")
    found = all_species(enc)
    if not found:
        raise SpeciesError("no injection point available")
    return found[0]
