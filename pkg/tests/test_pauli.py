import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from compact_encoding.pauli import PauliError, PhasedPauli, format_pauli, parse_pauli, product


def paulis(n_max=3):
    return st.integers(1, n_max).flatmap(
        lambda n: st.builds(
            PhasedPauli,
            st.just(n),
            st.integers(0, 3),
            st.integers(0, 2**n - 1),
            st.integers(0, 2**n - 1),
        )
    )


def pairs(n_max=3):
    return st.integers(1, n_max).flatmap(
        lambda n: st.tuples(*[
            st.builds(PhasedPauli, st.just(n), st.integers(0, 3),
                      st.integers(0, 2**n - 1), st.integers(0, 2**n - 1))
            for _ in range(3)
        ])
    )


SINGLE = {
    "I": np.eye(2),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
}


@pytest.mark.parametrize("a", "IXYZ")
@pytest.mark.parametrize("b", "IXYZ")
def test_single_qubit_table(a, b):
    p = PhasedPauli.single(1, 0, a) * PhasedPauli.single(1, 0, b)
    assert np.allclose(p.to_dense(), SINGLE[a] @ SINGLE[b])


def test_x_times_y_is_iz():
    p = PhasedPauli.single(1, 0, "X") * PhasedPauli.single(1, 0, "Y")
    assert p == PhasedPauli.single(1, 0, "Z").times_i(1)


def test_dense_matches_kronecker_order():
    # qubit q is bit q of the basis index
    p = PhasedPauli.from_letters(2, {0: "X"})
    assert np.allclose(p.to_dense(), np.kron(SINGLE["I"], SINGLE["X"]))


@given(pairs())
def test_product_matches_dense(triple):
    a, b, c = triple
    assert np.allclose((a * b).to_dense(), a.to_dense() @ b.to_dense())
    assert (a * b) * c == a * (b * c)


@given(paulis())
def test_identity_is_neutral(p):
    ident = PhasedPauli.identity(p.n_qubits)
    assert ident * p == p and p * ident == p


@given(paulis())
def test_square_is_identity_up_to_phase(p):
    sq = p * p
    assert sq.is_identity_up_to_phase()
    if p.is_hermitian():
        assert sq.is_identity()


@given(pairs())
def test_commutation_against_reversed_product(triple):
    a, b, _ = triple
    ab, ba = a * b, b * a
    if a.commutes(b):
        assert ab == ba
    else:
        assert ab == -ba
    dense = a.to_dense() @ b.to_dense() - b.to_dense() @ a.to_dense()
    assert np.allclose(dense, 0) == a.commutes(b)


@given(paulis())
def test_hermitian_flag_matches_dense(p):
    m = p.to_dense()
    assert np.allclose(m, m.conj().T) == p.is_hermitian()
    # as i^e X^x Z^z the exponent is phase_exp + n_y; Hermitian iff e + n_y is even
    xz_exponent = p.phase_exp + p.n_y()
    assert p.is_hermitian() == ((xz_exponent + p.n_y()) % 2 == 0)


@given(paulis())
def test_adjoint_matches_dense(p):
    assert np.allclose(p.adjoint().to_dense(), p.to_dense().conj().T)


def test_commutation_examples():
    x0 = parse_pauli("+1 X0", 2)
    assert not x0.commutes(parse_pauli("+1 Z0", 2))
    assert x0.commutes(parse_pauli("+1 Z1", 2))
    assert parse_pauli("+1 X0 Y1").commutes(parse_pauli("+1 Y0 X1"))


def test_two_qubit_product_against_dense():
    a, b = parse_pauli("+1 X0 Y1"), parse_pauli("+1 Y0 X1")
    assert np.allclose((a * b).to_dense(), a.to_dense() @ b.to_dense())


def test_size_mismatch_raises():
    with pytest.raises(PauliError):
        PhasedPauli.identity(2) * PhasedPauli.identity(3)
    with pytest.raises(PauliError):
        PhasedPauli.identity(2).commutes(PhasedPauli.identity(3))


def test_weights():
    assert PhasedPauli.identity(4).weight() == 0
    assert parse_pauli("+1 X0 Y3 Y5").weight() == 3
    assert parse_pauli("+1 X0 Y3 X10").weight() == 3


def test_parse_phase_and_round_trip():
    assert parse_pauli("-1 X1 Y2 X6").phase_exp == 2
    assert format_pauli(parse_pauli("+i Z0")) == "+i Z0"
    assert format_pauli(parse_pauli("-X0 Y2")) == "-1 X0 Y2"
    assert format_pauli(parse_pauli("+1")) == "+1"
    assert parse_pauli("+i", 3) == PhasedPauli.identity(3).times_i(1)


@pytest.mark.parametrize("text", ["", "X0", "+1 Q0", "+1 X0 Y0", "+2 X0", "+1 X", "*1 X0"])
def test_parse_rejects_malformed(text):
    with pytest.raises(PauliError):
        parse_pauli(text)


def test_parse_rejects_out_of_range():
    with pytest.raises(PauliError):
        parse_pauli("+1 X4", 3)


@given(paulis(5))
def test_text_and_json_round_trip(p):
    assert parse_pauli(format_pauli(p), p.n_qubits) == p
    assert PhasedPauli.from_json(p.to_json(), p.n_qubits) == p


def test_json_form():
    p = parse_pauli("-i X0 Z2", 3)
    assert p.to_json() == {"phase": "-i", "paulis": [{"q": 0, "p": "X"}, {"q": 2, "p": "Z"}]}


def test_product_helper_is_ordered():
    x, z = PhasedPauli.single(1, 0, "X"), PhasedPauli.single(1, 0, "Z")
    assert product([x, z], 1) == x * z
    assert product([], 2) == PhasedPauli.identity(2)


def test_symplectic_row_layout():
    p = parse_pauli("+1 X0 Z1", 2)
    assert p.symplectic() == 0b1001
