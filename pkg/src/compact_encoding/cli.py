"""Command-line entry point.

Data goes to standard output (or ``--out``) as JSON; human-readable
summaries go to standard error. Exit codes: 0 success, 1 usage error,
2 invalid input, 3 a verification or certification check failed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .compiler import CompileError, FermionicTerm, compile_terms, is_hermitian_sum
from .encoding import SCHEMA_VERSION, Encoding, EncodingError, encode, stats, verify_relations
from .homology import (
    HomologyError,
    disparity_closed_form,
    kernel_and_stabilizers,
)
from .lattice import FAMILIES, LatticeError, LatticeSpec, build, counts
from .oracle import CertificationFailure, OracleError, certify_encoding
from .pauli import PauliError
from .species import (
    SpeciesError,
    all_species,
    augment_stabilizers,
    maximal_distinct,
    species_bound_check,
    verify_species,
)

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_FAILED = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvalidInput(Exception):
    pass


class CheckFailed(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _dump(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def _emit(data, out: str | None) -> None:
    text = _dump(data)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: not valid JSON ({exc})") from exc


def _load_encoding(path: str) -> Encoding:
    data = _read_json(path)
    if not isinstance(data, dict):
        raise InvalidInput(f"{path}: encoding must be a JSON object")
    return Encoding.from_json(data)


def _load_terms(path: str) -> list[FermionicTerm]:
    data = _read_json(path)
    if not isinstance(data, list):
        raise InvalidInput(f"{path}: terms file must be a JSON list of term records")
    return [FermionicTerm.from_json(t) for t in data]


# -- subcommands ----------------------------------------------------------------


def cmd_encode(args) -> int:
    data = _read_json(args.spec)
    if not isinstance(data, dict):
        raise InvalidInput(f"{args.spec}: lattice spec must be a JSON object")
    enc = encode(build(LatticeSpec.from_json(data)))
    rel = verify_relations(enc)
    _emit(enc.to_json(), args.out)
    _say(f"{enc.graph.family}: {enc.n_qubits} qubits for {enc.n_modes} modes")
    if not rel.passed:
        _say(f"relation check failed: {rel.violations[0]}")
        return EXIT_FAILED
    return EXIT_OK


def _analysis(enc: Encoding, closed_form_only: bool = False) -> dict:
    closed = disparity_closed_form(enc.graph)
    out = {"closed_form": closed.to_json(), "counts": counts(enc.graph)}
    if closed_form_only:
        return out
    report = kernel_and_stabilizers(enc)
    out.update(report.to_json())
    out["disparity_rank"] = report.disparity
    out["disparity_agrees"] = closed.delta is None or closed.delta == report.disparity
    return out


def cmd_analyze(args) -> int:
    enc = _load_encoding(args.encoding)
    out = _analysis(enc, args.closed_form_only)
    _emit(out, args.out)
    if args.closed_form_only:
        _say(f"closed-form disparity: {out['closed_form']['delta']}")
        return EXIT_OK
    _say(
        f"rank_C={out['rank_cycle_group']} rank_K={out['rank_kernel']} "
        f"rank_S={out['rank_stabilizer']} disparity={out['disparity']} "
        f"(closed form {out['closed_form']['delta']})"
    )
    return EXIT_OK if out["disparity_agrees"] else EXIT_FAILED


def cmd_species(args) -> int:
    enc = _load_encoding(args.encoding)
    report = kernel_and_stabilizers(enc)
    group = report.group
    found = all_species(enc)
    chosen = maximal_distinct(found)
    checks = {s.index: verify_species(enc, s, group) for s in chosen}
    bound = species_bound_check(enc, report.disparity, chosen)
    out = {
        "disparity": report.disparity,
        "n_found": len(found),
        "species": [
            {**s.to_json(), "verified": checks[s.index].passed} for s in chosen
        ],
        "bound": bound.to_json(),
    }
    ok = bound.passed and all(c.passed for c in checks.values())
    if args.augment:
        aug = augment_stabilizers(enc, report, chosen)
        out["augmentation"] = aug.to_json()
        ok = ok and aug.disparity == 0 and aug.rank_s == report.rank_s + report.disparity
    _emit(out, args.out)
    _say(f"{len(chosen)} distinct species (bound {bound.bound}), disparity {report.disparity}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_compile(args) -> int:
    enc = _load_encoding(args.encoding)
    terms = _load_terms(args.terms)
    paulis = compile_terms(enc, terms)
    out = {
        "n_qubits": enc.n_qubits,
        "hermitian": is_hermitian_sum(paulis),
        "terms": [p.to_json() for p in paulis],
    }
    _emit(out, args.out)
    _say(f"{len(terms)} fermionic terms -> {len(paulis)} Pauli terms")
    return EXIT_OK


def cmd_certify(args) -> int:
    enc = _load_encoding(args.encoding)
    terms = _load_terms(args.hamiltonian) if args.hamiltonian else None
    cert = certify_encoding(enc, terms=terms)
    _emit(cert.to_json(), args.out)
    _say(
        f"{'certified' if cert.passed else 'NOT certified'}: sector {cert.sector}, "
        f"max spectrum error {cert.max_spectrum_error:.2e}"
    )
    for f in cert.failures[:10]:
        _say(f"  {f}")
    return EXIT_OK if cert.passed else EXIT_FAILED


def cmd_stats(args) -> int:
    enc = _load_encoding(args.encoding)
    st = stats(enc)
    _emit(st.to_json(), args.out)
    _say(f"N/M = {st.qubits_per_mode:.4f}, max weight {st.max_edge_weight}")
    return EXIT_OK


def demo_table(family: str, dims: list[int], seed: str | None = None) -> dict:
    """N, M, max weight, both ratios and disparity (rank and closed form)."""
    spec = LatticeSpec(family, list(dims), seed)
    enc = encode(build(spec))
    st = stats(enc)
    report = kernel_and_stabilizers(enc)
    closed = disparity_closed_form(enc.graph)
    return {
        "spec": spec.to_json(),
        "n_qubits": enc.n_qubits,
        "n_modes": enc.n_modes,
        "max_edge_weight": st.max_edge_weight,
        "qubits_per_mode": round(st.qubits_per_mode, 12),
        "modes_per_qubit": round(st.modes_per_qubit, 12),
        "ratio_bound": st.ratio_bound,
        "within_bounds": st.within_bounds,
        "disparity_rank": report.disparity,
        "disparity_closed_form": closed.delta,
        "relations_ok": verify_relations(enc).passed,
    }


_DEMO_DIMS = {
    "square": [4, 5],
    "t488": [2, 2],
    "t6434": [2, 2],
    "t4612": [2, 2],
    "kagome": [2, 2],
    "t31212": [2, 2],
    "cubic": [2, 2, 2],
}


def cmd_demo(args) -> int:
    dims = args.dims or args.cells or _DEMO_DIMS[args.family]
    row = demo_table(args.family, dims, args.seed)
    _emit(row, args.out)
    _say(
        f"{args.family} {dims}: N={row['n_qubits']} M={row['n_modes']} "
        f"max weight={row['max_edge_weight']} N/M={row['qubits_per_mode']:.4f} "
        f"(bound {row['ratio_bound']}) M/N={row['modes_per_qubit']:.4f} "
        f"disparity={row['disparity_rank']} closed form={row['disparity_closed_form']}"
    )
    agrees = row["disparity_closed_form"] in (None, row["disparity_rank"])
    return EXIT_OK if row["relations_ok"] and agrees else EXIT_FAILED


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="compact-encoding", description="Compact fermion-to-qubit encodings.")
    p.add_argument("--version", action="version", version=f"schema {SCHEMA_VERSION}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    s = sub.add_parser("encode", help="build a lattice and its encoding")
    s.add_argument("--spec", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_encode)

    s = sub.add_parser("analyze", help="kernel, stabilizers and disparity")
    s.add_argument("--encoding", required=True)
    s.add_argument("--closed-form-only", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("species", help="single-Majorana species")
    s.add_argument("--encoding", required=True)
    s.add_argument("--augment", action="store_true")
    s.add_argument("--out")
    s.set_defaults(func=cmd_species)

    s = sub.add_parser("compile", help="compile fermionic terms to Paulis")
    s.add_argument("--encoding", required=True)
    s.add_argument("--terms", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("certify", help="dense check against a reference fermion system")
    s.add_argument("--encoding", required=True)
    s.add_argument("--hamiltonian")
    s.add_argument("--out")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("stats", help="qubit/mode ratio and edge weights")
    s.add_argument("--encoding", required=True)
    s.add_argument("--out")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("demo", help="summary row for one family")
    s.add_argument("family", choices=FAMILIES)
    size = s.add_mutually_exclusive_group()
    size.add_argument("--dims", type=int, nargs="+")
    size.add_argument("--cells", type=int, nargs="+")
    s.add_argument("--seed")
    s.add_argument("--out")
    s.set_defaults(func=cmd_demo)
    return p


_INVALID = (
    InvalidInput,
    LatticeError,
    EncodingError,
    CompileError,
    PauliError,
    OracleError,
    SpeciesError,
)


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        _say(str(exc))
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    if not getattr(args, "func", None):
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except _INVALID as exc:
        _say(f"error: {exc}")
        return EXIT_INVALID
    except (HomologyError, CertificationFailure) as exc:
        _say(f"verification failed: {exc}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
