import pytest

from compact_encoding.encoding import encode
from compact_encoding.homology import kernel_and_stabilizers
from compact_encoding.lattice import LatticeSpec, build, build_cubic, build_square, counts
from compact_encoding.pauli import PhasedPauli, product
from compact_encoding.species import (
    SpeciesError,
    all_species,
    augment_stabilizers,
    designated_gamma,
    find_injection_points,
    fuse,
    fusion_is_vertex_independent,
    maximal_distinct,
    species_bound_check,
    transport,
    triangle_injections,
    verify_distinct,
    verify_species,
)
from helpers import KAGOME_SHAPES, encoded, spec_id

SPECIES_SPECS = [
    {"family": "square", "dims": [2, 3]},
    {"family": "square", "dims": [4, 5]},
    {"family": "square", "dims": [2, 2]},
    {"family": "square", "dims": [3, 4], "seed": "even_origin"},
    {"family": "kagome", "sites": KAGOME_SHAPES[1], "corners": 2},
    {"family": "kagome", "sites": KAGOME_SHAPES[3], "corners": 0},
    {"family": "kagome", "sites": KAGOME_SHAPES[3], "corners": 2},
    {"family": "kagome", "dims": [2, 2]},
    {"family": "t31212", "sites": [[0, 0], [1, 0]], "corners": 2},
    {"family": "cubic", "dims": [1, 1, 1]},
    {"family": "cubic", "dims": [1, 2, 2]},
]


def test_square_corner_counts():
    enc, rep = encoded({"family": "square", "dims": [4, 5]})
    assert rep.disparity == 0
    pts = find_injection_points(enc)
    assert [p.kind for p in pts] == ["corner", "corner"]
    enc, rep = encoded({"family": "square", "dims": [2, 2]})
    assert rep.disparity == 1 and len(find_injection_points(enc)) == 4


def test_cubic_eight_corners():
    enc, rep = encoded({"family": "cubic", "dims": [3, 3, 3]})
    assert rep.disparity == 3
    pts = find_injection_points(enc)
    assert len(pts) == 8 and {p.kind for p in pts} == {"corner"}


def test_corner_injection_is_weight_one():
    enc, _ = encoded({"family": "square", "dims": [4, 5]})
    for p in find_injection_points(enc):
        assert p.op.weight() == 1
        assert p.op.letter(p.vertex) in "XY"


@pytest.mark.parametrize("spec", SPECIES_SPECS, ids=spec_id)
def test_species_relations(spec):
    enc, rep = encoded(spec)
    group = rep.group
    for s in all_species(enc):
        chk = verify_species(enc, s, group)
        assert chk.passed, chk.violations[:5]
        for v in range(enc.n_modes):
            # second-kind partner: Hermitian involution anticommuting with M_v
            bar = s.bar(v)
            assert bar.is_hermitian() and not bar.commutes(s.at(v))


@pytest.mark.parametrize("spec", SPECIES_SPECS, ids=spec_id)
def test_species_count_and_distinctness(spec):
    enc, rep = encoded(spec)
    found = all_species(enc)
    chosen = maximal_distinct(found)
    assert len(chosen) == len(found)
    bound = species_bound_check(enc, rep.disparity, chosen)
    assert bound.passed
    if rep.disparity >= 0:
        assert len(chosen) == 2 * rep.disparity + 2
    for a in chosen:
        assert not verify_distinct(a, a)


@pytest.mark.parametrize("hf", [1, 2, 3])
@pytest.mark.parametrize("tc", [0, 1, 2])
def test_kagome_species_from_triangles_and_corners(hf, tc):
    enc, rep = encoded({"family": "kagome", "sites": KAGOME_SHAPES[hf], "corners": tc})
    c = counts(enc.graph)
    found = maximal_distinct(all_species(enc))
    assert len(found) == c["TF"] + c["TC"]
    if rep.disparity >= 0:
        assert c["TF"] + c["TC"] == 2 * rep.disparity + 2


def test_kagome_triangle_species_are_distinct():
    enc, _ = encoded({"family": "kagome", "dims": [2, 2]})
    tri = [s for s in all_species(enc) if s.injection.kind == "triangle"]
    assert len(tri) >= 2
    for i in range(len(tri)):
        for j in range(i + 1, len(tri)):
            assert verify_distinct(tri[i], tri[j])


def test_triangle_injection_variants_define_one_species():
    enc, rep = encoded({"family": "kagome", "dims": [2, 2]})
    group = rep.group
    for s in all_species(enc):
        if s.injection.kind != "triangle":
            continue
        for q, op in triangle_injections(enc, s.injection.face):
            assert op.weight() == 2
            # a species is defined up to one overall sign
            m = s.at(q)
            assert group.equivalent(op, m) or group.equivalent(op, -m)


def test_transport_string_shape():
    enc, _ = encoded({"family": "square", "dims": [4, 5]})
    s = all_species(enc)[0]
    start = s.injection.vertex
    assert transport(enc, s.injection.op, [start]) == s.injection.op
    for v in range(enc.n_modes):
        path = enc.graph.shortest_path(start, v)
        op = s.at(v)
        assert op.letter(v) in "XY"
        for u in range(enc.n_modes):
            if u not in path:
                assert op.letter(u) == "I"
            elif u != v:
                assert op.letter(u) in "ZI"


def test_transport_rejects_non_edges():
    enc, _ = encoded({"family": "square", "dims": [3, 3]})
    with pytest.raises(SpeciesError):
        transport(enc, PhasedPauli.single(enc.n_qubits, 0, "X"), [0, 4])


@pytest.mark.parametrize("spec", SPECIES_SPECS[:6], ids=spec_id)
def test_transport_path_independence(spec):
    enc, rep = encoded(spec)
    g = enc.graph
    group = rep.group
    for s in all_species(enc):
        a = s.injection.vertex
        for v in range(g.n_vertices):
            p1 = g.shortest_path(a, v)
            # detour through a neighbour of the start, then shortest from there
            for w in g.neighbours[a]:
                p2 = [a] + g.shortest_path(w, v)
                if len(set(p2)) != len(p2):
                    continue
                assert group.equivalent(
                    transport(enc, s.injection.op, p1), transport(enc, s.injection.op, p2)
                )


@pytest.mark.parametrize("spec", [s for s in SPECIES_SPECS if s != SPECIES_SPECS[3]], ids=spec_id)
def test_fusion_properties(spec):
    enc, rep = encoded(spec)
    group = rep.group
    sp = all_species(enc)
    ident = PhasedPauli.identity(enc.n_qubits)
    for i in range(len(sp)):
        for j in range(i + 1, len(sp)):
            p = fuse(enc, sp[i], sp[j], sp[i].injection.vertex).op
            assert p * p == ident
            for op in enc.edge_ops + enc.vertex_ops + group.generators:
                assert p.commutes(op)
            assert fusion_is_vertex_independent(enc, sp[i], sp[j], group)


def test_fusions_with_a_common_species_anticommute():
    enc, rep = encoded({"family": "cubic", "dims": [1, 1, 1]})
    sp = all_species(enc)
    hole = sp[1]
    others = [s for s in sp if s.index not in (0, 1)]
    ps = [fuse(enc, hole, s).op for s in others]
    for i in range(len(ps)):
        for j in range(i + 1, len(ps)):
            assert not ps[i].commutes(ps[j])


def test_fuse_rejects_same_species():
    enc, _ = encoded({"family": "square", "dims": [2, 2]})
    s = all_species(enc)[0]
    with pytest.raises(SpeciesError):
        fuse(enc, s, s)


def test_square_fusion_is_a_string():
    enc, rep = encoded({"family": "square", "dims": [3, 4], "seed": "even_origin"})
    if rep.disparity < 1:
        enc, rep = encoded({"family": "square", "dims": [2, 2]})
    aug = augment_stabilizers(enc, rep)
    (f,) = aug.fusions
    assert f.op.weight() >= 2 and f.op.is_hermitian()


@pytest.mark.parametrize("spec", [s for s in SPECIES_SPECS if s != SPECIES_SPECS[3]], ids=spec_id)
def test_augmentation_closes_disparity(spec):
    enc, rep = encoded(spec)
    if rep.disparity < 1:
        with pytest.raises(SpeciesError):
            augment_stabilizers(enc, rep)
        return
    aug = augment_stabilizers(enc, rep)
    assert len(aug.pairs) == len(aug.fusions) == rep.disparity
    assert aug.rank_s == rep.rank_s + rep.disparity
    assert aug.disparity == 0
    used = {i for p in aug.pairs for i in p}
    assert aug.gamma.index not in used and aug.hole.index not in used
    assert verify_distinct(aug.gamma, aug.hole)
    for f in aug.fusions:
        for op in enc.edge_ops + enc.vertex_ops:
            assert f.op.commutes(op)


def test_kagome_single_pair_augmentation():
    enc, rep = encoded({"family": "kagome", "sites": KAGOME_SHAPES[3], "corners": 0})
    assert rep.disparity == 1
    aug = augment_stabilizers(enc, rep)
    assert len(aug.fusions) == 1 and aug.disparity == 0


def test_cubic_augmentation_adds_three():
    enc, rep = encoded({"family": "cubic", "dims": [1, 1, 1]})
    aug = augment_stabilizers(enc, rep)
    assert len(aug.fusions) == 3 and aug.rank_s == rep.rank_s + 3


def test_no_species_when_disparity_is_negative():
    enc, rep = encoded({"family": "square", "dims": [2, 2], "seed": "even_origin"})
    assert rep.disparity == -1
    assert all_species(enc) == []
    assert species_bound_check(enc, rep.disparity).bound == 0
    with pytest.raises(SpeciesError):
        designated_gamma(enc, rep)


def test_designated_gamma_on_larger_lattice():
    enc = encode(build_square(5, 6))
    rep = kernel_and_stabilizers(enc)
    gamma = designated_gamma(enc, rep)
    assert verify_species(enc, gamma, rep.group).passed


def test_species_json():
    enc, _ = encoded({"family": "kagome", "dims": [2, 2]})
    data = all_species(enc)[-1].to_json()
    assert data["injection"]["kind"] in ("corner", "triangle")
