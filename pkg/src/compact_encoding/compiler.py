"""Compile Majorana monomials and second-quantised terms to encoded Paulis.

Majorana ``c_{2j} = γ_j = a_j + a_j†`` and ``c_{2j+1} = γ̄_j = (a_j - a_j†)/i``.
A monomial ``i**phase * prod_a c_a**b_a`` is kept in increasing index order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .encoding import Encoding
from .pauli import PhasedPauli, product


class CompileError(ValueError):
    """Operator cannot be compiled on this encoding."""


@dataclass(frozen=True)
class MajoranaMonomial:
    n_modes: int
    bits: int
    phase_exp: int = 0

    def __post_init__(self):
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)
        if self.bits >> (2 * self.n_modes):
            raise CompileError("monomial refers to a mode out of range")

    @classmethod
    def from_factors(
        cls, n_modes: int, factors: Iterable[tuple[int, bool]], phase_exp: int = 0
    ) -> MajoranaMonomial:
        """Ordered product of ``(mode, bar)`` factors; ``bar`` selects ``γ̄``."""
        acc = cls(n_modes, 0, phase_exp)
        for mode, bar in factors:
            if not 0 <= mode < n_modes:
                raise CompileError(f"mode {mode} out of range")
            acc = acc * cls(n_modes, 1 << (2 * mode + int(bar)))
        return acc

    @property
    def parity(self) -> int:
        return self.bits.bit_count() % 2

    def indices(self) -> list[int]:
        return [a for a in range(2 * self.n_modes) if (self.bits >> a) & 1]

    def __mul__(self, other: MajoranaMonomial) -> MajoranaMonomial:
        if self.n_modes != other.n_modes:
            raise CompileError("mode count mismatch")
        # move each factor of ``other`` left past the larger factors of ``self``
        swaps = 0
        for b in other.indices():
            swaps += (self.bits >> (b + 1)).bit_count()
        phase = self.phase_exp + other.phase_exp + 2 * (swaps % 2)
        return MajoranaMonomial(self.n_modes, self.bits ^ other.bits, phase)

    def __str__(self) -> str:
        names = [f"{'g' if a % 2 == 0 else 'gbar'}{a // 2}" for a in self.indices()]
        return " ".join([("+1", "+i", "-1", "-i")[self.phase_exp]] + names)


def path_edge_operator(enc: Encoding, path: list[int]) -> PhasedPauli:
    """Encoded ``E_{p0,pn} = i**(n-1) E_{p0 p1} ... E_{p(n-1) pn}``."""
    n = len(path) - 1
    if n < 1:
        raise CompileError("path needs at least one edge")
    ops = [enc.edge_op(a, b) for a, b in zip(path, path[1:])]
    return product(ops, enc.n_qubits).times_i(n - 1)


def edge_operator(enc: Encoding, i: int, k: int) -> PhasedPauli:
    """Encoded ``E_ik`` along the lexicographically first shortest path."""
    return path_edge_operator(enc, enc.graph.shortest_path(i, k))


def _pair(enc: Encoding, a: int, b: int) -> PhasedPauli:
    """Encoded ``c_a c_b`` for ``a < b``."""
    i, bar_i = divmod(a, 2)
    k, bar_k = divmod(b, 2)
    if i == k:
        # γ_i γ̄_i = i V_i
        return enc.vertex_ops[i].times_i(1)
    e = edge_operator(enc, i, k)
    vi, vk = enc.vertex_ops[i], enc.vertex_ops[k]
    if not bar_i and not bar_k:
        return e.times_i(1)
    if not bar_i and bar_k:
        return vk * e
    if bar_i and not bar_k:
        return vi * e
    return (vi * vk * e).times_i(-1)


def compile_monomial(enc: Encoding, m: MajoranaMonomial) -> PhasedPauli:
    """Encode an even monomial as a product of edge and vertex operators."""
    if m.n_modes != enc.n_modes:
        raise CompileError("monomial mode count does not match the encoding")
    if m.parity:
        raise CompileError("odd monomial; use compile_odd with a particle species")
    idx = m.indices()
    ops = [_pair(enc, idx[t], idx[t + 1]) for t in range(0, len(idx), 2)]
    return product(ops, enc.n_qubits).times_i(m.phase_exp)


def compile_odd(enc: Encoding, m: MajoranaMonomial, species) -> PhasedPauli:
    """Encode an odd monomial as (single-Majorana species op) x (even rest)."""
    if m.n_modes != enc.n_modes:
        raise CompileError("monomial mode count does not match the encoding")
    if not m.parity:
        return compile_monomial(enc, m)
    if species is None:
        raise CompileError("odd operators need a particle species (disparity must be >= 0)")
    first = m.indices()[0]
    rest = MajoranaMonomial(m.n_modes, m.bits ^ (1 << first), m.phase_exp)
    q, bar = divmod(first, 2)
    single = species.bar(q) if bar else species.at(q)
    return single * compile_monomial(enc, rest)


# -- fermionic terms ------------------------------------------------------------

TERM_KINDS = ("number", "hopping", "coulomb", "pairing")
_GaussQ = tuple[Fraction, Fraction]
_I_POWERS: tuple[_GaussQ, ...] = (
    (Fraction(1), Fraction(0)),
    (Fraction(0), Fraction(1)),
    (Fraction(-1), Fraction(0)),
    (Fraction(0), Fraction(-1)),
)


def _gmul(a: _GaussQ, b: _GaussQ) -> _GaussQ:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


@dataclass(frozen=True)
class FermionicTerm:
    kind: str
    modes: tuple[int, ...]
    coefficient: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind not in TERM_KINDS:
            raise CompileError(f"unsupported term kind {self.kind!r}")
        want = 1 if self.kind == "number" else 2
        if len(self.modes) != want:
            raise CompileError(f"{self.kind} term needs {want} mode(s)")
        if want == 2 and self.modes[0] == self.modes[1]:
            raise CompileError(f"{self.kind} term needs two distinct modes")
        object.__setattr__(self, "coefficient", Fraction(self.coefficient))

    @classmethod
    def from_json(cls, data: dict) -> FermionicTerm:
        try:
            kind = data["kind"]
            modes = tuple(int(m) for m in data["modes"])
            coeff = Fraction(str(data.get("coefficient", 1)))
        except (KeyError, TypeError, ValueError) as exc:
            raise CompileError(f"malformed term {data!r}: {exc}") from exc
        return cls(kind, modes, coeff)

    def to_json(self) -> dict:
        return {"kind": self.kind, "modes": list(self.modes), "coefficient": str(self.coefficient)}


# a ladder-operator polynomial: {monomial bits+phase: Gaussian rational}
_Poly = dict[tuple[int, int], _GaussQ]


def _ladder(n_modes: int, j: int, dagger: bool) -> _Poly:
    """``a_j = (γ_j + i γ̄_j)/2`` and ``a_j† = (γ_j - i γ̄_j)/2``."""
    half = Fraction(1, 2)
    return {
        (1 << (2 * j), 0): (half, Fraction(0)),
        (1 << (2 * j + 1), 0): (Fraction(0), -half if dagger else half),
    }


def _poly_mul(n_modes: int, p: _Poly, q: _Poly) -> _Poly:
    out: _Poly = {}
    for (b1, e1), c1 in p.items():
        for (b2, e2), c2 in q.items():
            m = MajoranaMonomial(n_modes, b1, e1) * MajoranaMonomial(n_modes, b2, e2)
            c = _gmul(_gmul(c1, c2), _I_POWERS[m.phase_exp])
            key = (m.bits, 0)
            prev = out.get(key, (Fraction(0), Fraction(0)))
            out[key] = (prev[0] + c[0], prev[1] + c[1])
    return {k: v for k, v in out.items() if v != (0, 0)}


def _poly_add(p: _Poly, q: _Poly) -> _Poly:
    out = dict(p)
    for k, v in q.items():
        prev = out.get(k, (Fraction(0), Fraction(0)))
        out[k] = (prev[0] + v[0], prev[1] + v[1])
    return {k: v for k, v in out.items() if v != (0, 0)}


def _chain(n_modes: int, ops: list[tuple[int, bool]]) -> _Poly:
    acc: _Poly = {(0, 0): (Fraction(1), Fraction(0))}
    for j, dag in ops:
        acc = _poly_mul(n_modes, acc, _ladder(n_modes, j, dag))
    return acc


def term_polynomial(n_modes: int, t: FermionicTerm) -> _Poly:
    """Majorana expansion ``{(bits, 0): coefficient}`` of a term (coefficient 1)."""
    for m in t.modes:
        if not 0 <= m < n_modes:
            raise CompileError(f"mode {m} out of range")
    if t.kind == "number":
        (j,) = t.modes
        return _chain(n_modes, [(j, True), (j, False)])
    i, j = t.modes
    if t.kind == "hopping":
        return _poly_add(
            _chain(n_modes, [(i, True), (j, False)]), _chain(n_modes, [(j, True), (i, False)])
        )
    if t.kind == "coulomb":
        return _chain(n_modes, [(i, True), (i, False), (j, True), (j, False)])
    return _poly_add(
        _chain(n_modes, [(i, True), (j, True)]), _chain(n_modes, [(j, False), (i, False)])
    )


@dataclass(frozen=True)
class PauliTerm:
    """``coefficient * pauli`` with ``pauli`` a Hermitian letter string (phase +1)."""

    coefficient: complex
    pauli: PhasedPauli
    exact: _GaussQ

    def to_json(self) -> dict:
        return {
            "re": str(self.exact[0]),
            "im": str(self.exact[1]),
            "pauli": str(self.pauli),
        }


def _collect(n_qubits: int, items: Iterable[tuple[_GaussQ, PhasedPauli]]) -> list[PauliTerm]:
    acc: dict[tuple[int, int], _GaussQ] = {}
    for c, p in items:
        # fold the operator phase into the coefficient; letters stay Hermitian
        c = _gmul(c, _I_POWERS[p.phase_exp])
        key = (p.x, p.z)
        prev = acc.get(key, (Fraction(0), Fraction(0)))
        acc[key] = (prev[0] + c[0], prev[1] + c[1])
    out = []
    for (x, z), c in sorted(acc.items()):
        if c == (0, 0):
            continue
        out.append(PauliTerm(complex(float(c[0]), float(c[1])), PhasedPauli(n_qubits, 0, x, z), c))
    return out


def compile_term(enc: Encoding, t: FermionicTerm) -> list[PauliTerm]:
    poly = term_polynomial(enc.n_modes, t)
    coeff = (t.coefficient, Fraction(0))
    items = []
    for (bits, _), c in poly.items():
        p = compile_monomial(enc, MajoranaMonomial(enc.n_modes, bits))
        items.append((_gmul(coeff, c), p))
    return _collect(enc.n_qubits, items)


def compile_terms(enc: Encoding, terms: Iterable[FermionicTerm]) -> list[PauliTerm]:
    items = []
    for t in terms:
        items += [(pt.exact, pt.pauli) for pt in compile_term(enc, t)]
    return _collect(enc.n_qubits, items)


def is_hermitian_sum(terms: list[PauliTerm]) -> bool:
    return all(t.exact[1] == 0 for t in terms)


def standard_hamiltonian(enc: Encoding, hopping=1, coulomb=Fraction(1, 2)) -> list[FermionicTerm]:
    """Hopping on every edge plus a uniform nearest-neighbour density interaction."""
    terms = []
    for e in enc.graph.edges:
        a, b = e.key
        terms.append(FermionicTerm("hopping", (a, b), Fraction(hopping)))
        if coulomb:
            terms.append(FermionicTerm("coulomb", (a, b), Fraction(coulomb)))
    return terms
