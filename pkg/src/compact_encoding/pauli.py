"""Multi-qubit Pauli operators with exact phase tracking.

An operator is stored as ``i**phase_exp`` times a tensor product of the
Hermitian single-qubit letters ``I, X, Y, Z``.  The letters are encoded in two
integer bitsets: qubit ``q`` carries ``X`` when only bit ``q`` of ``x`` is set,
``Z`` when only bit ``q`` of ``z`` is set and ``Y`` when both are set.

Internally ``Y = i X Z``, which lets products be computed on the bitsets with a
mod-4 phase accumulator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Mapping

import numpy as np

PHASE_STRINGS = ("+1", "+i", "-1", "-i")
_PHASE_FROM_STRING = {s: k for k, s in enumerate(PHASE_STRINGS)}
_TOKEN = re.compile(r"^([XYZ])(\d+)$")


class PauliError(ValueError):
    """Raised for malformed Pauli text or incompatible operands."""


def _popcount(v: int) -> int:
    return v.bit_count()


@dataclass(frozen=True)
class PhasedPauli:
    """An element of the N-qubit Pauli group ``{±1, ±i} x {I, X, Y, Z}^N``."""

    n_qubits: int
    phase_exp: int = 0
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n_qubits < 0:
            raise PauliError("n_qubits must be non-negative")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)
        limit = 1 << self.n_qubits
        if self.x >= limit or self.z >= limit or self.x < 0 or self.z < 0:
            raise PauliError("bit vector exceeds n_qubits")

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls, n_qubits: int) -> PhasedPauli:
        return cls(n_qubits)

    @classmethod
    def from_letters(
        cls, n_qubits: int, letters: Mapping[int, str], phase_exp: int = 0
    ) -> PhasedPauli:
        """Build from a ``{qubit: letter}`` mapping (letters ``I``, ``X``, ``Y``, ``Z``)."""
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n_qubits:
                raise PauliError(f"qubit {q} out of range for {n_qubits} qubits")
            if letter in ("X", "Y"):
                x |= 1 << q
            if letter in ("Z", "Y"):
                z |= 1 << q
            if letter not in ("I", "X", "Y", "Z"):
                raise PauliError(f"unknown Pauli letter {letter!r}")
        return cls(n_qubits, phase_exp, x, z)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, letter: str) -> PhasedPauli:
        return cls.from_letters(n_qubits, {qubit: letter})

    # -- algebra ----------------------------------------------------------

    def _check(self, other: PhasedPauli) -> None:
        if self.n_qubits != other.n_qubits:
            raise PauliError(
                f"size mismatch: {self.n_qubits} vs {other.n_qubits} qubits"
            )

    def __mul__(self, other: PhasedPauli) -> PhasedPauli:
        self._check(other)
        x3 = self.x ^ other.x
        z3 = self.z ^ other.z
        # i^a (XZ-form) with Y = iXZ, then reorder Z1 past X2.
        phase = (
            self.phase_exp
            + other.phase_exp
            + _popcount(self.x & self.z)
            + _popcount(other.x & other.z)
            + 2 * _popcount(self.z & other.x)
            - _popcount(x3 & z3)
        )
        return PhasedPauli(self.n_qubits, phase, x3, z3)

    def __neg__(self) -> PhasedPauli:
        return PhasedPauli(self.n_qubits, self.phase_exp + 2, self.x, self.z)

    def times_i(self, k: int = 1) -> PhasedPauli:
        """Return ``i**k`` times this operator."""
        return PhasedPauli(self.n_qubits, self.phase_exp + k, self.x, self.z)

    def adjoint(self) -> PhasedPauli:
        return PhasedPauli(self.n_qubits, -self.phase_exp, self.x, self.z)

    def commutes(self, other: PhasedPauli) -> bool:
        self._check(other)
        return (_popcount(self.x & other.z) + _popcount(self.z & other.x)) % 2 == 0

    def anticommutes(self, other: PhasedPauli) -> bool:
        return not self.commutes(other)

    def weight(self) -> int:
        return _popcount(self.x | self.z)

    def support(self) -> list[int]:
        s = self.x | self.z
        return [q for q in range(self.n_qubits) if (s >> q) & 1]

    def n_y(self) -> int:
        return _popcount(self.x & self.z)

    def is_hermitian(self) -> bool:
        # Letters are Hermitian, so only the global phase matters.
        return self.phase_exp % 2 == 0

    def is_identity_up_to_phase(self) -> bool:
        return self.x == 0 and self.z == 0

    def is_identity(self) -> bool:
        return self.is_identity_up_to_phase() and self.phase_exp == 0

    def same_up_to_phase(self, other: PhasedPauli) -> bool:
        return self.x == other.x and self.z == other.z

    def letter(self, qubit: int) -> str:
        xb = (self.x >> qubit) & 1
        zb = (self.z >> qubit) & 1
        return "IXZY"[xb | (zb << 1)]

    def letters(self) -> dict[int, str]:
        return {q: self.letter(q) for q in self.support()}

    def symplectic(self) -> int:
        """Bit-packed ``x | z << n`` row for GF(2) elimination."""
        return self.x | (self.z << self.n_qubits)

    def restricted(self, qubits: Iterable[int]) -> PhasedPauli:
        """Drop every factor outside ``qubits`` (phase is kept)."""
        mask = 0
        for q in qubits:
            mask |= 1 << q
        return PhasedPauli(self.n_qubits, self.phase_exp, self.x & mask, self.z & mask)

    def extended(self, n_qubits: int) -> PhasedPauli:
        if n_qubits < self.n_qubits:
            raise PauliError("cannot shrink an operator")
        return PhasedPauli(n_qubits, self.phase_exp, self.x, self.z)

    # -- text / JSON ------------------------------------------------------

    def __str__(self) -> str:
        return format_pauli(self)

    def to_json(self) -> dict:
        return {
            "phase": PHASE_STRINGS[self.phase_exp],
            "paulis": [{"q": q, "p": p} for q, p in self.letters().items()],
        }

    @classmethod
    def from_json(cls, data: Mapping, n_qubits: int) -> PhasedPauli:
        try:
            phase = _PHASE_FROM_STRING[data["phase"]]
        except KeyError as exc:
            raise PauliError(f"bad phase in {data!r}") from exc
        letters: dict[int, str] = {}
        for item in data.get("paulis", []):
            q = int(item["q"])
            if q in letters:
                raise PauliError(f"duplicate qubit index {q}")
            letters[q] = item["p"]
        return cls.from_letters(n_qubits, letters, phase)

    # -- dense ------------------------------------------------------------

    def to_dense(self) -> np.ndarray:
        """Dense ``2**n`` matrix; qubit ``q`` is bit ``q`` of the basis index."""
        mats = {
            "I": np.eye(2, dtype=complex),
            "X": np.array([[0, 1], [1, 0]], dtype=complex),
            "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "Z": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        # kron puts its first factor on the most significant bit.
        factors = [mats[self.letter(q)] for q in reversed(range(self.n_qubits))]
        out = reduce(np.kron, factors, np.eye(1, dtype=complex))
        return (1j**self.phase_exp) * out


def product(paulis: Iterable[PhasedPauli], n_qubits: int) -> PhasedPauli:
    """Ordered product ``p_0 p_1 ... p_k``."""
    acc = PhasedPauli.identity(n_qubits)
    for p in paulis:
        acc = acc * p
    return acc


def parse_pauli(text: str, n_qubits: int | None = None) -> PhasedPauli:
    """Parse ``"+1 X0 Y3 X10"``, ``"-i Z2"``, ``"+1"`` and similar.

    The sign is mandatory; the magnitude ``1`` or ``i`` may be omitted
    (``"-X0"`` means ``-1 X0``).
    """
    tokens = text.split()
    if not tokens:
        raise PauliError("empty Pauli string")
    head = tokens[0]
    rest = tokens[1:]
    if head[0] not in "+-":
        raise PauliError(f"missing sign in {text!r}")
    sign = 0 if head[0] == "+" else 2
    tail = head[1:]
    if tail in ("", "1"):
        mag = 0
    elif tail == "i":
        mag = 1
    elif _TOKEN.match(tail):
        mag = 0
        rest = [tail] + rest
    else:
        raise PauliError(f"malformed phase token {head!r}")
    letters: dict[int, str] = {}
    for tok in rest:
        m = _TOKEN.match(tok)
        if not m:
            raise PauliError(f"malformed token {tok!r}")
        q = int(m.group(2))
        if q in letters:
            raise PauliError(f"duplicate qubit index {q}")
        letters[q] = m.group(1)
    if n_qubits is None:
        n_qubits = max(letters, default=-1) + 1
    return PhasedPauli.from_letters(n_qubits, letters, sign + mag)


def format_pauli(p: PhasedPauli) -> str:
    parts = [PHASE_STRINGS[p.phase_exp]]
    parts += [f"{letter}{q}" for q, letter in p.letters().items()]
    return " ".join(parts)
