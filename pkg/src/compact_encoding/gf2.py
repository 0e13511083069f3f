"""GF(2) linear algebra on int bitsets.

Rows are Python ints; bit ``c`` of a row is column ``c``.
"""

from __future__ import annotations

from dataclasses import dataclass, field


def rank(rows: list[int]) -> int:
    return len(RowBasis.from_rows(rows).pivots)


def nullspace(rows: list[int]) -> list[int]:
    """Basis of ``{c : XOR_{i in c} rows[i] == 0}`` as bitsets over row indices."""
    basis = RowBasis()
    deps: list[int] = []
    for i, r in enumerate(rows):
        residue, combo = basis.reduce(r)
        if residue:
            basis.add_reduced(residue, combo | (1 << i))
        else:
            deps.append(combo | (1 << i))
    return deps


@dataclass
class RowBasis:
    """Incrementally built echelon basis that remembers how each row was formed.

    ``combos[k]`` records which inserted rows XOR to ``rows[k]`` (bit ``j`` is
    the ``j``-th call to :meth:`add`).
    """

    rows: list[int] = field(default_factory=list)
    combos: list[int] = field(default_factory=list)
    pivots: list[int] = field(default_factory=list)
    _count: int = 0

    @classmethod
    def from_rows(cls, rows: list[int]) -> RowBasis:
        b = cls()
        for r in rows:
            b.add(r)
        return b

    def reduce(self, v: int) -> tuple[int, int]:
        """Return ``(residue, combo)`` with ``v == residue ^ XOR(combo rows)``."""
        combo = 0
        for r, c, p in zip(self.rows, self.combos, self.pivots):
            if (v >> p) & 1:
                v ^= r
                combo ^= c
        return v, combo

    def add_reduced(self, residue: int, combo: int) -> None:
        p = residue.bit_length() - 1
        # keep rows reduced at the new pivot so later reductions are single pass
        for k, r in enumerate(self.rows):
            if (r >> p) & 1:
                self.rows[k] ^= residue
                self.combos[k] ^= combo
        self.rows.append(residue)
        self.combos.append(combo)
        self.pivots.append(p)

    def add(self, v: int) -> bool:
        """Insert ``v``; return ``True`` if it was independent."""
        idx = self._count
        self._count += 1
        residue, combo = self.reduce(v)
        if residue == 0:
            return False
        self.add_reduced(residue, combo ^ (1 << idx))
        return True

    def contains(self, v: int) -> bool:
        return self.reduce(v)[0] == 0

    def express(self, v: int) -> int | None:
        """Combination of inserted rows equal to ``v``, or ``None``."""
        residue, combo = self.reduce(v)
        return None if residue else combo

    def __len__(self) -> int:
        return len(self.rows)
