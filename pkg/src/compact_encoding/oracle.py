"""Dense-matrix ground truth for small encodings.

The fermionic side uses a Jordan-Wigner chain built from Kronecker products.
The encoded side never materialises a full ``2**N`` matrix: Pauli operators
act on blocks of state vectors through bit flips and signs, and everything is
compared inside an orthonormal basis of the stabilizer codespace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .compiler import FermionicTerm, compile_terms, standard_hamiltonian, term_polynomial
from .encoding import Encoding
from .homology import HomologyReport, kernel_and_stabilizers
from .pauli import PhasedPauli

MAX_QUBITS = 14
MAX_MODES = 7
DENSE_PROJECTOR_MAX_QUBITS = 10
SPECTRUM_TOL = 1e-9


class OracleError(ValueError):
    """Input exceeds the dense caps or violates an oracle precondition."""


class CertificationFailure(AssertionError):
    """Encoded and reference operators disagree."""


# -- reference fermions -------------------------------------------------------------


def reference_majoranas(n_modes: int) -> list[np.ndarray]:
    """``[γ_0, γ̄_0, γ_1, γ̄_1, ...]`` as ``Z..Z X_j`` and ``Z..Z Y_j``."""
    if not 1 <= n_modes <= MAX_MODES:
        raise OracleError(f"reference construction supports 1..{MAX_MODES} modes")
    out = []
    for j in range(n_modes):
        string = {q: "Z" for q in range(j)}
        out.append(PhasedPauli.from_letters(n_modes, {**string, j: "X"}).to_dense())
        out.append(PhasedPauli.from_letters(n_modes, {**string, j: "Y"}).to_dense())
    return out


def reference_term_matrix(n_modes: int, terms: list[FermionicTerm]) -> np.ndarray:
    """Dense fermionic operator from the same Majorana expansion used when compiling."""
    maj = reference_majoranas(n_modes)
    dim = 2**n_modes
    h = np.zeros((dim, dim), dtype=complex)
    for t in terms:
        for (bits, _), (re, im) in term_polynomial(n_modes, t).items():
            mat = np.eye(dim, dtype=complex)
            for a in range(2 * n_modes):
                if (bits >> a) & 1:
                    mat = mat @ maj[a]
            h += float(t.coefficient) * complex(float(re), float(im)) * mat
    return h


def reference_ladder(n_modes: int) -> list[np.ndarray]:
    """Annihilation operators ``a_j = (γ_j + i γ̄_j)/2``."""
    maj = reference_majoranas(n_modes)
    return [(maj[2 * j] + 1j * maj[2 * j + 1]) / 2 for j in range(n_modes)]


# -- Pauli action on vectors ----------------------------------------------------


def apply_pauli(p: PhasedPauli, block: np.ndarray) -> np.ndarray:
    """``p @ block`` for a ``(2**n, k)`` block; qubit ``q`` is bit ``q``."""
    dim = block.shape[0]
    idx = np.arange(dim)
    # p = i^(e + n_y) X^x Z^z
    phase = 1j ** ((p.phase_exp + p.n_y()) % 4)
    z_par = np.bitwise_count(idx & p.z) & 1
    signs = np.where(z_par, -1.0, 1.0) * phase
    out = np.empty_like(block, dtype=complex)
    out[idx ^ p.x] = signs[:, None] * block
    return out


def apply_sum(terms, block: np.ndarray) -> np.ndarray:
    out = np.zeros_like(block, dtype=complex)
    for t in terms:
        out += t.coefficient * apply_pauli(t.pauli, block)
    return out


def codespace_projector(n_qubits: int, generators: list[PhasedPauli]) -> np.ndarray:
    """Dense ``prod (I + S_k)/2`` (small systems only)."""
    if n_qubits > DENSE_PROJECTOR_MAX_QUBITS:
        raise OracleError(f"dense projector limited to {DENSE_PROJECTOR_MAX_QUBITS} qubits")
    _check_generators(generators)
    dim = 2**n_qubits
    p = np.eye(dim, dtype=complex)
    for s in generators:
        p = (p + apply_pauli(s, p)) / 2
    return p


def _check_generators(generators: list[PhasedPauli]) -> None:
    for a in range(len(generators)):
        if not generators[a].is_hermitian():
            raise OracleError(f"generator {a} is not Hermitian")
        for b in range(a + 1, len(generators)):
            if not generators[a].commutes(generators[b]):
                raise OracleError(f"generators {a} and {b} anticommute")
    if gf2.rank([g.symplectic() for g in generators]) != len(generators):
        raise OracleError("generators are dependent")


def codespace_basis(n_qubits: int, generators: list[PhasedPauli]) -> np.ndarray:
    """Orthonormal columns spanning the common +1 eigenspace of ``generators``."""
    if n_qubits > MAX_QUBITS:
        raise OracleError(f"dense oracle limited to {MAX_QUBITS} qubits")
    _check_generators(generators)
    dim = 2**n_qubits
    target = 2 ** (n_qubits - len(generators))
    rng = np.random.default_rng(0)  # fixed: output must be reproducible
    block = rng.standard_normal((dim, target + 4)) + 1j * rng.standard_normal((dim, target + 4))
    for s in generators:
        block = (block + apply_pauli(s, block)) / 2
    u, sv, _ = np.linalg.svd(block, full_matrices=False)
    rank = int(np.sum(sv > sv[0] * 1e-10))
    if rank != target:
        raise CertificationFailure(f"codespace rank {rank}, expected {target}")
    return u[:, :target]


# -- certification ----------------------------------------------------------------


@dataclass
class Certificate:
    passed: bool
    n_qubits: int
    n_modes: int
    disparity: int
    codespace_dim: int
    relations_ok: bool
    spectrum_ok: bool
    sector: str
    max_spectrum_error: float
    failures: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "n_qubits": self.n_qubits,
            "n_modes": self.n_modes,
            "disparity": self.disparity,
            "codespace_dim": self.codespace_dim,
            "relations_ok": self.relations_ok,
            "spectrum_ok": self.spectrum_ok,
            "sector": self.sector,
            "max_spectrum_error": float(f"{self.max_spectrum_error:.3e}"),
            "failures": self.failures,
        }


def _restricted(basis: np.ndarray, p: PhasedPauli) -> np.ndarray:
    return basis.conj().T @ apply_pauli(p, basis)


def certify_encoding(
    enc: Encoding,
    report: HomologyReport | None = None,
    terms: list[FermionicTerm] | None = None,
) -> Certificate:
    """Compare encoded and reference operators densely.

    (a) the commute/anticommute pattern, Hermiticity and involution of every
    restricted edge and vertex operator match the reference operators;
    (b) the restricted encoded Hamiltonian has the reference spectrum: all of
    it when Δ = 0, the even-parity sector when Δ = -1, and each
    eigenvalue repeated ``2**Δ`` times when Δ > 0.
    """
    if enc.n_qubits > MAX_QUBITS or enc.n_modes > MAX_MODES:
        raise OracleError(
            f"dense certification limited to {MAX_QUBITS} qubits and {MAX_MODES} modes"
        )
    if report is None:
        report = kernel_and_stabilizers(enc)
    g = enc.graph
    m = enc.n_modes
    failures: list[str] = []
    basis = codespace_basis(enc.n_qubits, report.stabilizer_gens)
    dim = basis.shape[1]
    if dim != 2 ** (m + report.disparity):
        failures.append(f"codespace dimension {dim} != 2^(M+Δ)")

    maj = reference_majoranas(m)
    ref_ops, enc_ops, names = [], [], []
    for e in g.edges:
        ref_ops.append(-1j * maj[2 * e.tail] @ maj[2 * e.head])
        enc_ops.append(_restricted(basis, enc.edge_op(e.tail, e.head)))
        names.append(f"E{e.tail},{e.head}")
    for v in range(m):
        ref_ops.append(-1j * maj[2 * v] @ maj[2 * v + 1])
        enc_ops.append(_restricted(basis, enc.vertex_ops[v]))
        names.append(f"V{v}")
    eye = np.eye(dim)
    for a, op in enumerate(enc_ops):
        if np.abs(op @ op - eye).max() > 1e-9 or np.abs(op - op.conj().T).max() > 1e-9:
            failures.append(f"{names[a]} is not a Hermitian involution on the codespace")
    for a in range(len(ref_ops)):
        for b in range(a + 1, len(ref_ops)):
            ref_comm = np.abs(ref_ops[a] @ ref_ops[b] - ref_ops[b] @ ref_ops[a]).max() < 1e-9
            enc_comm = np.abs(enc_ops[a] @ enc_ops[b] - enc_ops[b] @ enc_ops[a]).max() < 1e-9
            enc_anti = np.abs(enc_ops[a] @ enc_ops[b] + enc_ops[b] @ enc_ops[a]).max() < 1e-9
            if ref_comm != enc_comm or (not ref_comm and not enc_anti):
                failures.append(f"{names[a]}, {names[b]}: commutation pattern differs")
    relations_ok = not failures

    if terms is None:
        terms = standard_hamiltonian(enc)
    h_ref = reference_term_matrix(m, terms)
    pauli_sum = compile_terms(enc, terms)
    h_code = basis.conj().T @ apply_sum(pauli_sum, basis)
    enc_spec = np.linalg.eigvalsh((h_code + h_code.conj().T) / 2)

    delta = report.disparity
    if delta == -1:
        all_v = PhasedPauli.identity(enc.n_qubits)
        for v in range(m):
            all_v = all_v * enc.vertex_ops[v]
        # the code must fix total parity to even: product of vertex operators = +1
        parity_val = np.real(np.trace(_restricted(basis, all_v))) / dim
        sector = "even"
        if abs(parity_val - 1) > 1e-9:
            failures.append(f"codespace is not the even sector (parity {parity_val:.6g})")
        ref_parity = np.eye(2**m, dtype=complex)
        for v in range(m):
            ref_parity = ref_parity @ (-1j * maj[2 * v] @ maj[2 * v + 1])
        proj = (np.eye(2**m) + ref_parity) / 2
        w, vecs = np.linalg.eigh(proj)
        sub = vecs[:, w > 0.5]
        ref_spec = np.linalg.eigvalsh(sub.conj().T @ h_ref @ sub)
    else:
        sector = "full" if delta == 0 else f"full x {2 ** delta}"
        ref_spec = np.repeat(np.linalg.eigvalsh(h_ref), 2 ** max(delta, 0))
    ref_spec = np.sort(ref_spec)
    if len(ref_spec) != len(enc_spec):
        failures.append(f"spectrum sizes differ: {len(enc_spec)} vs {len(ref_spec)}")
        err = float("inf")
    else:
        err = float(np.abs(np.sort(enc_spec) - ref_spec).max())
        if err > SPECTRUM_TOL:
            bad = np.nonzero(np.abs(np.sort(enc_spec) - ref_spec) > SPECTRUM_TOL)[0][:5]
            failures.append(
                "spectrum mismatch at "
                + ", ".join(f"{enc_spec[i]:.6g} vs {ref_spec[i]:.6g}" for i in bad)
            )
    spectrum_ok = err <= SPECTRUM_TOL
    return Certificate(
        passed=not failures,
        n_qubits=enc.n_qubits,
        n_modes=m,
        disparity=delta,
        codespace_dim=dim,
        relations_ok=relations_ok,
        spectrum_ok=spectrum_ok,
        sector=sector,
        max_spectrum_error=err,
        failures=failures,
    )
