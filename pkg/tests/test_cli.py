import json

import numpy as np
import pytest

from qssrec.cli import main
from qssrec.io import data_path, load_five_qubit_codewords, write_state
from qssrec.qstate import QuditState


@pytest.fixture
def code_file():
    return str(data_path("five_qubit.stab"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_golden_passes(capsys):
    code, out, _ = run(capsys, "golden")
    assert code == 0
    assert out.count("[PASS]") == 11 and "[FAIL]" not in out


def test_golden_json(capsys):
    code, out, _ = run(capsys, "golden", "--json")
    assert code == 0 and all(r["passed"] for r in json.loads(out))


def test_golden_corrupted_codeword(capsys, tmp_path):
    psi0, psi1 = load_five_qubit_codewords()
    a = psi0.amps.copy()
    a[int("10010", 2)] *= -1
    write_state(QuditState(2, 5, a), tmp_path / "bad0.state")
    write_state(psi1, tmp_path / "psi1.state")
    code, out, _ = run(capsys, "golden", "--codewords", str(tmp_path / "bad0.state"), str(tmp_path / "psi1.state"))
    assert code == 2 and "[FAIL]" in out


def test_golden_loose_tolerance(capsys):
    assert run(capsys, "golden", "--tol", "1e-6")[0] == 0


def test_analyze_single(capsys, code_file):
    code, out, _ = run(capsys, "analyze", "--code", code_file, "--J", "3,4,5")
    assert code == 0
    assert out.startswith("J=3,4,5 qualified ell=2")
    assert "brute=Q" in out


def test_analyze_unqualified(capsys, code_file):
    code, out, _ = run(capsys, "analyze", "--code", code_file, "--J", "1,2")
    assert code == 0 and "not-qualified" in out


def test_analyze_all(capsys, code_file):
    code, out, err = run(capsys, "analyze", "--code", code_file, "--all")
    assert code == 0
    assert len(out.strip().splitlines()) == 32
    assert "qualified=16 forbidden=16 intermediate=0 consistent=True" in err


def test_analyze_all_json(capsys, code_file):
    code, out, _ = run(capsys, "analyze", "--code", code_file, "--all", "--json")
    assert code == 0 and json.loads(out)["consistent"]


def test_reconstruct_example(capsys, code_file, tmp_path):
    dest = tmp_path / "out.state"
    code, out, _ = run(capsys, "reconstruct", "--code", code_file, "--J", "3,4,5",
                       "--secret", "0.6,0.8", "--emit-state", str(dest))
    assert code == 0
    assert "secret_fidelity=1.000000000000" in out
    assert dest.exists()


def test_reconstruct_json(capsys, code_file):
    code, out, _ = run(capsys, "reconstruct", "--code", code_file, "--J", "2,3,4",
                       "--secret", "0.6,0.8j", "--json")
    payload = json.loads(out)
    assert code == 0 and payload["ell"] == 2 and abs(payload["secret_fidelity"] - 1) < 1e-9


def test_reconstruct_unqualified(capsys, code_file):
    code, _, err = run(capsys, "reconstruct", "--code", code_file, "--J", "1,2", "--secret", "1,0")
    assert code == 3 and "not qualified" in err


def test_reconstruct_unnormalised_secret(capsys, code_file):
    assert run(capsys, "reconstruct", "--code", code_file, "--J", "3,4,5", "--secret", "1,1")[0] == 3


def test_audit_all(capsys, code_file):
    code, out, _ = run(capsys, "audit", "--code", code_file, "--all")
    assert code == 0 and "FAIL" not in out


@pytest.mark.parametrize("argv", [
    ["analyze"],
    ["analyze", "--code", "/no/such/file", "--J", "1"],
    ["bogus"],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_bad_J(capsys, code_file):
    assert run(capsys, "analyze", "--code", code_file, "--J", "0,9")[0] == 1
    assert run(capsys, "analyze", "--code", code_file, "--J", "a")[0] == 1
    assert run(capsys, "analyze", "--code", code_file)[0] == 1


def test_malformed_code_file(capsys, tmp_path):
    path = tmp_path / "bad.stab"
    path.write_text("2 2 1\n0 0 3 0\n")
    code, _, err = run(capsys, "analyze", "--code", str(path), "--J", "1")
    assert code == 1 and "line 2" in err
