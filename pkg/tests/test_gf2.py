import itertools

from hypothesis import given
from hypothesis import strategies as st

from compact_encoding import gf2

rows_st = st.lists(st.integers(0, 2**6 - 1), max_size=7)


def brute_span(rows):
    span = {0}
    for r in rows:
        span |= {s ^ r for s in span}
    return span


@given(rows_st)
def test_rank_matches_span_size(rows):
    assert 2 ** gf2.rank(rows) == len(brute_span(rows))


@given(rows_st)
def test_nullspace_is_exactly_the_dependencies(rows):
    null = gf2.nullspace(rows)
    assert len(null) == len(rows) - gf2.rank(rows)
    for combo in null:
        acc = 0
        for j, r in enumerate(rows):
            if (combo >> j) & 1:
                acc ^= r
        assert combo and acc == 0
    # brute force: every dependency is in the span of the returned combos
    deps = set()
    for bits in itertools.product((0, 1), repeat=len(rows)):
        acc = 0
        for b, r in zip(bits, rows):
            if b:
                acc ^= r
        if acc == 0:
            deps.add(sum(b << j for j, b in enumerate(bits)))
    assert brute_span(null) == deps


@given(rows_st, st.integers(0, 2**6 - 1))
def test_row_basis_express(rows, target):
    basis = gf2.RowBasis.from_rows(rows)
    combo = basis.express(target)
    assert (combo is not None) == (target in brute_span(rows))
    if combo is not None:
        acc = 0
        for j, r in enumerate(rows):
            if (combo >> j) & 1:
                acc ^= r
        assert acc == target


def test_row_basis_add_reports_independence():
    b = gf2.RowBasis()
    assert b.add(0b011) and b.add(0b110)
    assert not b.add(0b101)
    assert len(b) == 2 and b.contains(0b101) and not b.contains(0b001)
