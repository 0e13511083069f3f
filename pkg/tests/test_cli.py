import json
import subprocess
import sys

import pytest

from compact_encoding.cli import main
from compact_encoding.encoding import SCHEMA_VERSION


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def square_encoding(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"family": "square", "dims": [2, 2]}))
    enc = tmp_path / "enc.json"
    code, _, _ = run(capsys, "encode", "--spec", str(spec), "--out", str(enc))
    assert code == 0
    return enc


def test_version(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0 and out.strip() == f"schema {SCHEMA_VERSION}"


def test_usage_errors(capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "encode")[0] == 1
    assert run(capsys, "demo", "hexagonal")[0] == 1


def test_encode_bad_spec(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"family": "square", "dims": [2]}))
    code, out, err = run(capsys, "encode", "--spec", str(bad))
    assert code == 2 and out == "" and "dimensions" in err
    bad.write_text("{not json")
    assert run(capsys, "encode", "--spec", str(bad))[0] == 2
    assert run(capsys, "encode", "--spec", str(tmp_path / "missing.json"))[0] == 2


def test_encode_to_stdout(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"family": "kagome", "dims": [1, 1]}))
    code, out, err = run(capsys, "encode", "--spec", str(spec))
    data = json.loads(out)
    assert code == 0 and data["schema"] == SCHEMA_VERSION and data["family"] == "kagome"
    assert "qubits" in err


def test_analyze(square_encoding, tmp_path, capsys):
    report = tmp_path / "report.json"
    code, _, _ = run(capsys, "analyze", "--encoding", str(square_encoding), "--out", str(report))
    data = json.loads(report.read_text())
    assert code == 0
    assert data["disparity"] == data["disparity_rank"] == data["closed_form"]["delta"] == 1
    assert data["rank_kernel"] == 1 and data["rank_stabilizer"] == 0
    assert "qubits_per_mode" in data and "modes_per_qubit" in data
    code, out, _ = run(capsys, "analyze", "--encoding", str(square_encoding), "--closed-form-only")
    assert code == 0 and "rank_kernel" not in json.loads(out)


def test_species(square_encoding, capsys):
    code, out, _ = run(capsys, "species", "--encoding", str(square_encoding), "--augment")
    data = json.loads(out)
    assert code == 0
    assert len(data["species"]) == 4 and all(s["verified"] for s in data["species"])
    assert data["augmentation"]["disparity"] == 0


def test_species_augment_needs_positive_disparity(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"family": "square", "dims": [2, 3]}))
    enc = tmp_path / "enc.json"
    run(capsys, "encode", "--spec", str(spec), "--out", str(enc))
    assert run(capsys, "species", "--encoding", str(enc))[0] == 0
    assert run(capsys, "species", "--encoding", str(enc), "--augment")[0] == 2


def test_compile(square_encoding, tmp_path, capsys):
    terms = tmp_path / "terms.json"
    terms.write_text(json.dumps([
        {"kind": "hopping", "modes": [0, 1], "coefficient": "1"},
        {"kind": "number", "modes": [2], "coefficient": "1/2"},
    ]))
    code, out, _ = run(capsys, "compile", "--encoding", str(square_encoding), "--terms", str(terms))
    data = json.loads(out)
    assert code == 0 and data["hermitian"] is True
    assert {"re": "-1/4", "im": "0", "pauli": "+1 Z2"} in data["terms"]
    terms.write_text(json.dumps([{"kind": "spin", "modes": [0]}]))
    assert run(capsys, "compile", "--encoding", str(square_encoding), "--terms", str(terms))[0] == 2


def test_certify(square_encoding, tmp_path, capsys):
    code, out, _ = run(capsys, "certify", "--encoding", str(square_encoding))
    assert code == 0 and json.loads(out)["passed"] is True
    ham = tmp_path / "h.json"
    ham.write_text(json.dumps([{"kind": "coulomb", "modes": [0, 3], "coefficient": 2}]))
    assert run(capsys, "certify", "--encoding", str(square_encoding), "--hamiltonian", str(ham))[0] == 0


def test_certify_failure_exit_code(square_encoding, tmp_path, capsys):
    data = json.loads(square_encoding.read_text())
    # drop the tail letter of edge 0, breaking its anticommutation with that vertex
    op = data["edge_ops"][0]
    tail = op["tail"]
    op["paulis"] = [p for p in op["paulis"] if p["q"] != tail]
    broken = tmp_path / "broken.json"
    broken.write_text(json.dumps(data))
    assert run(capsys, "certify", "--encoding", str(broken))[0] == 3


def test_certify_size_cap(tmp_path, capsys):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"family": "square", "dims": [4, 5]}))
    enc = tmp_path / "enc.json"
    run(capsys, "encode", "--spec", str(spec), "--out", str(enc))
    assert run(capsys, "certify", "--encoding", str(enc))[0] == 2


def test_stats(square_encoding, capsys):
    code, out, _ = run(capsys, "stats", "--encoding", str(square_encoding))
    data = json.loads(out)
    assert code == 0 and data["n_qubits"] == 5 and data["max_edge_weight"] == 3


def test_demo_square(capsys):
    code, out, err = run(capsys, "demo", "square", "--dims", "4", "5")
    data = json.loads(out)
    assert code == 0
    assert data["disparity_rank"] == data["disparity_closed_form"] == 0
    assert data["max_edge_weight"] == 3
    assert "N=26" in err


def test_demo_t488_ratio(capsys):
    code, out, _ = run(capsys, "demo", "t488", "--cells", "2", "2")
    data = json.loads(out)
    assert code == 0 and data["qubits_per_mode"] < 1.25 and data["within_bounds"]


@pytest.mark.parametrize("family", ["t6434", "t4612", "kagome", "t31212", "cubic"])
def test_demo_defaults(family, capsys):
    code, out, _ = run(capsys, "demo", family)
    assert code == 0 and json.loads(out)["relations_ok"]


def test_demo_seed_and_errors(capsys):
    code, out, _ = run(capsys, "demo", "cubic", "--dims", "1", "1", "1", "--seed", "x_in")
    assert code == 0 and json.loads(out)["disparity_rank"] == -1
    assert run(capsys, "demo", "cubic", "--dims", "2", "2")[0] == 2
    assert run(capsys, "demo", "square", "--seed", "sideways")[0] == 2


def test_output_is_deterministic(capsys):
    first = run(capsys, "demo", "kagome", "--dims", "2", "2")[1]
    second = run(capsys, "demo", "kagome", "--dims", "2", "2")[1]
    assert first == second


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "compact_encoding", "demo", "square", "--dims", "2", "2"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["n_qubits"] == 5
