"""Cycle space, kernel, stabilizer group and disparity of an encoding."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction

from . import gf2
from .encoding import Encoding
from .lattice.graph import FermionicGraph, counts
from .pauli import PhasedPauli, product


class HomologyError(ValueError):
    """Structural problem with the graph (disconnected, non-Eulerian input)."""


class PhaseInconsistency(HomologyError):
    """A cycle maps to an identity bit pattern with a phase other than ``+1``.

    This means ``-I`` (or ``±iI``) lies in the image of the cycle group, so the
    encoding is broken; it is reported separately from rank mismatches.
    """


@dataclass(frozen=True)
class CycleVector:
    """Element of the cycle space as a bitset over undirected edge ids."""

    bits: int

    def __xor__(self, other: CycleVector) -> CycleVector:
        return CycleVector(self.bits ^ other.bits)

    def edges(self) -> list[int]:
        b, out, k = self.bits, [], 0
        while b:
            if b & 1:
                out.append(k)
            b >>= 1
            k += 1
        return out

    def is_eulerian(self, g: FermionicGraph) -> bool:
        deg = [0] * g.n_vertices
        for k in self.edges():
            e = g.edges[k]
            deg[e.tail] += 1
            deg[e.head] += 1
        return all(d % 2 == 0 for d in deg)

    @classmethod
    def from_vertices(cls, g: FermionicGraph, cycle) -> CycleVector:
        bits = 0
        n = len(cycle)
        for i in range(n):
            bits ^= 1 << g.edge_between(cycle[i], cycle[(i + 1) % n])
        return cls(bits)

    @classmethod
    def from_face(cls, g: FermionicGraph, f: int) -> CycleVector:
        bits = 0
        for k in g.faces[f].edges:
            bits |= 1 << k
        return cls(bits)

    def simple_cycles(self, g: FermionicGraph) -> list[list[int]]:
        """Split the support into edge-disjoint simple closed vertex walks.

        Each walk starts at its lowest vertex and leaves along the lowest
        neighbour, so the decomposition is deterministic.
        """
        if not self.is_eulerian(g):
            raise HomologyError("cycle vector is not Eulerian")
        unused = set(self.edges())
        adj: dict[int, list[int]] = {}
        for k in unused:
            e = g.edges[k]
            adj.setdefault(e.tail, []).append(k)
            adj.setdefault(e.head, []).append(k)
        out = []
        while unused:
            start = min(min(g.edges[k].key) for k in unused)
            path = [start]
            pos = {start: 0}
            v = start
            while True:
                k = min(
                    (k for k in adj[v] if k in unused), key=lambda k: g.edges[k].other(v)
                )
                unused.discard(k)
                w = g.edges[k].other(v)
                if w in pos:
                    i = pos[w]
                    out.append(path[i:])
                    for u in path[i + 1 :]:
                        del pos[u]
                    path = path[: i + 1]
                    v = w
                    # an open path keeps odd degree at its end, so only a
                    # bare start vertex can run out of edges
                    if len(path) == 1 and not any(k in unused for k in adj[v]):
                        break
                    continue
                pos[w] = len(path)
                path.append(w)
                v = w
        return out


def face_cycles(g: FermionicGraph) -> list[CycleVector]:
    return [CycleVector.from_face(g, f) for f in range(len(g.faces))]


def cycle_basis(g: FermionicGraph) -> list[CycleVector]:
    """Bounded faces for planar graphs; spanning-tree fundamental cycles otherwise."""
    if not g.is_connected():
        raise HomologyError("graph is disconnected")
    if g.planar:
        basis = face_cycles(g)
    else:
        parent_edge = {0: None}
        order = deque([0])
        while order:
            v = order.popleft()
            for k in sorted(g.incident[v]):
                w = g.edges[k].other(v)
                if w not in parent_edge:
                    parent_edge[w] = k
                    order.append(w)
        tree = {k for k in parent_edge.values() if k is not None}

        def root_path(v: int) -> int:
            bits = 0
            while parent_edge[v] is not None:
                k = parent_edge[v]
                bits ^= 1 << k
                v = g.edges[k].other(v)
            return bits

        basis = []
        for k, e in enumerate(g.edges):
            if k in tree:
                continue
            basis.append(CycleVector(root_path(e.tail) ^ root_path(e.head) ^ (1 << k)))
    expected = len(g.edges) - g.n_vertices + 1
    if len(basis) != expected or gf2.rank([c.bits for c in basis]) != expected:
        raise HomologyError("cycle basis does not match the circuit rank")
    return basis


def cycle_to_pauli(enc: Encoding, c: CycleVector) -> PhasedPauli:
    """Image of a cycle-space element under the encoding, with exact phase."""
    loops = [enc.loop(cyc) for cyc in c.simple_cycles(enc.graph)]
    return product(loops, enc.n_qubits)


# -- stabilizer group ---------------------------------------------------------


@dataclass
class StabilizerGroup:
    """Abelian group generated by commuting Paulis; membership is phase exact."""

    n_qubits: int
    generators: list[PhasedPauli]
    _basis: gf2.RowBasis = field(init=False, repr=False)

    def __post_init__(self):
        self._basis = gf2.RowBasis()
        for g in self.generators:
            if not self._basis.add(g.symplectic()):
                raise ValueError("stabilizer generators are dependent")

    @property
    def rank(self) -> int:
        return len(self.generators)

    def element(self, combo: int) -> PhasedPauli:
        ops = [g for j, g in enumerate(self.generators) if (combo >> j) & 1]
        return product(ops, self.n_qubits)

    def contains(self, p: PhasedPauli) -> bool:
        combo = self._basis.express(p.symplectic())
        return combo is not None and self.element(combo) == p

    def contains_up_to_sign(self, p: PhasedPauli) -> bool:
        combo = self._basis.express(p.symplectic())
        return combo is not None and (self.element(combo) in (p, -p))

    def equivalent(self, a: PhasedPauli, b: PhasedPauli) -> bool:
        """``a == s b`` for some element ``s`` of the group."""
        return self.contains(a * b.adjoint())

    def extended(self, extra: list[PhasedPauli]) -> StabilizerGroup:
        return StabilizerGroup(self.n_qubits, self.generators + list(extra))


@dataclass
class HomologyReport:
    n_qubits: int
    n_modes: int
    rank_cg: int
    kernel_basis: list[CycleVector]
    rank_k: int
    stabilizer_gens: list[PhasedPauli]
    stabilizer_sources: list[str]
    rank_s: int
    disparity: int
    kernel_faces: list[int]

    @property
    def group(self) -> StabilizerGroup:
        return StabilizerGroup(self.n_qubits, self.stabilizer_gens)

    def to_json(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "n_modes": self.n_modes,
            "qubits_per_mode": round(self.n_qubits / self.n_modes, 12),
            "modes_per_qubit": round(self.n_modes / self.n_qubits, 12),
            "rank_cycle_group": self.rank_cg,
            "rank_kernel": self.rank_k,
            "rank_stabilizer": self.rank_s,
            "disparity": self.disparity,
            "kernel_faces": self.kernel_faces,
            "kernel_basis": [c.edges() for c in self.kernel_basis],
            "stabilizers": [
                {"source": src, **p.to_json()}
                for src, p in zip(self.stabilizer_sources, self.stabilizer_gens)
            ],
        }


def kernel_and_stabilizers(enc: Encoding) -> HomologyReport:
    g = enc.graph
    basis = cycle_basis(g)
    images = [cycle_to_pauli(enc, c) for c in basis]
    for c, p in zip(basis, images):
        if p.is_identity_up_to_phase() and p.phase_exp != 0:
            raise PhaseInconsistency(f"cycle {c.edges()} maps to {p}")
    rows = [p.symplectic() for p in images]
    kernel = []
    for combo in gf2.nullspace(rows):
        members = [j for j in range(len(basis)) if (combo >> j) & 1]
        img = product([images[j] for j in members], enc.n_qubits)
        if img.phase_exp != 0:
            raise PhaseInconsistency(f"kernel element over basis {members} maps to {img}")
        bits = 0
        for j in members:
            bits ^= basis[j].bits
        kernel.append(CycleVector(bits))
    rank_s = gf2.rank(rows)

    faces = face_cycles(g)
    face_images = images if g.planar else [cycle_to_pauli(enc, c) for c in faces]
    kernel_faces = [f for f, p in enumerate(face_images) if p.is_identity()]
    candidates = sorted(range(len(faces)), key=lambda f: (face_images[f].weight(), f))
    chosen = gf2.RowBasis()
    gens: list[PhasedPauli] = []
    sources: list[str] = []
    for f in candidates:
        if chosen.add(face_images[f].symplectic()):
            gens.append(face_images[f])
            sources.append(f"face {f}")
    for j, p in enumerate(images):
        if len(gens) == rank_s:
            break
        if chosen.add(p.symplectic()):
            gens.append(p)
            sources.append(f"cycle {j}")
    if len(gens) != rank_s:
        raise HomologyError("stabilizer generators do not reach the image rank")
    return HomologyReport(
        n_qubits=enc.n_qubits,
        n_modes=enc.n_modes,
        rank_cg=len(basis),
        kernel_basis=kernel,
        rank_k=len(kernel),
        stabilizer_gens=gens,
        stabilizer_sources=sources,
        rank_s=rank_s,
        disparity=enc.n_qubits - enc.n_modes - rank_s,
        kernel_faces=kernel_faces,
    )


# -- closed forms ---------------------------------------------------------------


@dataclass
class ClosedForm:
    delta: int | None
    formula: str
    reason: str = ""

    def to_json(self) -> dict:
        out = {"delta": self.delta, "formula": self.formula}
        if self.reason:
            out["reason"] = self.reason
        return out


def disparity_closed_form(g: FermionicGraph) -> ClosedForm:
    """Disparity predicted from face/corner counts, when a counting rule covers
    the shape; otherwise ``delta`` is ``None`` with an explanation."""
    c = counts(g)
    fam = g.family
    shape = g.meta.get("shape")
    if fam in ("square", "t488"):
        return ClosedForm(c["OF"] - c["EF"], "OF - EF")
    if fam in ("t6434", "t4612"):
        if shape == "surrounded":
            return ClosedForm(-1, "-1 (every big face surrounded)")
        return ClosedForm(None, "-1 (every big face surrounded)", "shape is not surrounded")
    if fam == "kagome":
        if shape != "sites" or c["HF"] == 0:
            return ClosedForm(None, "HF + TC - 2", "shape is not a union of hexagon sites")
        return ClosedForm(c["HF"] + c["TC"] - 2, "HF + TC - 2")
    if fam == "t31212":
        if shape != "sites" or c["DF"] == 0:
            return ClosedForm(None, "DF + TC - 2", "shape is not a union of dodecagon sites")
        return ClosedForm(c["DF"] + c["TC"] - 2, "DF + TC - 2")
    if fam == "cubic":
        val = Fraction(c["OCV"], 2) - 1
        if val.denominator != 1:
            return ClosedForm(None, "OCV/2 - 1", "odd number of odd corner vertices")
        return ClosedForm(int(val), "OCV/2 - 1")
    return ClosedForm(None, "", f"no counting rule for {fam}")


def cubic_kernel_rank_formula(g: FermionicGraph) -> int:
    c = counts(g)
    return c["IOF"] + 2 * c["OC"]


@dataclass
class Weight3Check:
    passed: bool
    kernel_faces: list[int]
    f_k: int
    ef: int
    delta_predicted: int
    delta: int
    issues: list[str]

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "kernel_faces": self.kernel_faces,
            "F_K": self.f_k,
            "EF": self.ef,
            "delta_from_faces": self.delta_predicted,
            "delta": self.delta,
            "issues": self.issues,
        }


def weight3_kernel_check(enc: Encoding, report: HomologyReport | None = None) -> Weight3Check:
    """Kernel is generated by 3- or 4-sided face cycles and Δ = F_K − EF."""
    from .encoding import conformance_issues

    g = enc.graph
    issues = [] if g.planar else ["not a planar encoding"]
    issues += conformance_issues(enc)
    if report is None:
        report = kernel_and_stabilizers(enc)
    kf = report.kernel_faces
    if len(kf) != report.rank_k:
        issues.append(f"{len(kf)} kernel faces but kernel rank {report.rank_k}")
    for f in kf:
        if g.faces[f].sides not in (3, 4):
            issues.append(f"kernel face {f} has {g.faces[f].sides} sides")
    ef = len(g.faces) - len(kf)
    pred = len(kf) - ef
    if pred != report.disparity:
        issues.append(f"F_K - EF = {pred} but disparity is {report.disparity}")
    return Weight3Check(not issues, kf, len(kf), ef, pred, report.disparity, issues)
