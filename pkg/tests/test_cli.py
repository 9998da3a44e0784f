import json
import subprocess
import sys

import pytest

from forge.cli import main
from forge.constructors import null_semigroup
from forge.tablefile import write_table


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_zoo_name(capsys):
    code, out, _ = run(capsys, "analyze", "S3")
    assert code == 0
    assert "action classes (6)" in out and "status: decided" in out


def test_table_file_inputs(tmp_path, capsys):
    path = tmp_path / "n2.txt"
    write_table(null_semigroup(2), path, "text")
    code, out, _ = run(capsys, "factor", str(path), "--null", "2")
    assert code == 0 and "Null(2)" in out
    code, out, _ = run(capsys, "factor", str(path), "--null", "1")
    assert code == 0 and "not a direct factor" in out


def test_json_report_and_recheck(tmp_path, capsys):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "--json", "prime", "Q8", "--universe", "D4", "--report", str(report))
    data = json.loads(out)
    assert code == 0 and data["status"] == "decided"
    verdicts = {r["kind"]: r["verdict"] for r in data["results"]}
    assert verdicts == {"TarskiGroup": "Prime", "RhodesDirect": "NotPrime",
                        "RhodesSemidirect": "NotPrime", "ModifiedRhodesDirect": "Prime"}
    code, out, _ = run(capsys, "--recheck", str(report))
    assert code == 0 and "FAIL" not in out


def test_recheck_detects_swapped_input(tmp_path, capsys):
    report = tmp_path / "r.json"
    run(capsys, "factor", "Z6", "--report", str(report))
    data = json.loads(report.read_text())
    data["certificates"][0]["inputs"] = ["Z2xZ4"]
    report.write_text(json.dumps(data))
    code, out, _ = run(capsys, "--recheck", str(report))
    assert code == 3 and "differs" in out


def test_unknown_exit_code(capsys):
    code, out, _ = run(capsys, "prime", "Q8", "--notion", "rhodes-direct")
    assert code == 2 and "UnknownWithinBound" in out
    code, out, _ = run(capsys, "prime", "Null1", "--max-order", "20")
    assert code == 2


def test_error_exit_code(capsys):
    code, _, err = run(capsys, "analyze", "no-such-thing")
    assert code == 1 and "error" in err
    assert run(capsys)[0] == 1


def test_subquotient_and_factor_by(capsys):
    code, out, _ = run(capsys, "subquotient", "Q8", "D4xD4")
    assert code == 0 and "|K| = 16" in out
    code, out, _ = run(capsys, "factor", "Z2xNull1", "--by", "Z2")
    assert code == 0 and "Z2 x Q" in out


def test_enumerate_writes_catalog(tmp_path, capsys):
    code, out, _ = run(capsys, "enumerate", "--max-order", "4", "--mode", "anti", "--out", str(tmp_path))
    assert code == 0 and "order 4: 126" in out
    assert (tmp_path / "manifest.json").exists()


def test_verify_examples_subset(capsys):
    code, out, _ = run(capsys, "verify-paper", "--only", "null", "--kappa", "1")
    assert code == 0 and "FAIL" not in out


def test_console_script_entry_point():
    res = subprocess.run([sys.executable, "-m", "forge.cli", "prime", "Z9", "--notion", "rhodes-direct"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and "case iii" in res.stdout


@pytest.mark.parametrize("argv", [["prime", "Z5"], ["prime", "A5", "--notion", "rhodes-semidirect"]])
def test_decided_groups_exit_zero(capsys, argv):
    assert run(capsys, *argv)[0] == 0
