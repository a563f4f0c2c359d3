import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from symdesign import DesignParams, GroupSpec, parse_design, serialize_design
from symdesign.cli import run
from symdesign.search import cyclic_shift, develop, search_difference_sets

from oracles import FANO, is_symmetric_design

GOLDEN = Path(__file__).parent / "golden"
A81 = ["--v", "81", "--k", "16", "--lambda", "3"]


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    records = [json.loads(line) for line in out.getvalue().splitlines()]
    return code, records, err.getvalue()


def stable(records):
    return [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in records]


@pytest.fixture
def fano_file(tmp_path, fano):
    path = tmp_path / "fano.design"
    path.write_text(serialize_design(fano))
    return path


def test_verify_ok(fano_file):
    code, recs, err = cli("verify", str(fano_file))
    assert code == 0
    assert recs[0]["verdict"] == "ok" and recs[-1]["record"] == "summary"
    assert recs[-1]["verdict"] == "ok" and "elapsed_ms" in recs[-1]
    assert "verify: ok" in err


def test_verify_violation(tmp_path):
    path = tmp_path / "bad.design"
    path.write_text("7 3 1\n1 2 3\n1 4 5\n1 6 7\n2 4 6\n2 5 7\n3 4 7\n3 4 7\n")
    code, recs, _ = cli("verify", str(path))
    assert code == 1
    assert recs[0]["verdict"] == "violation" and recs[0]["axiom"] == 3


def test_verify_parse_error(tmp_path):
    path = tmp_path / "bad.design"
    path.write_text("7 3 1\n1 2 9\n")
    code, recs, err = cli("verify", str(path))
    assert code == 3
    assert recs[0]["kind"] == "RangeError" and "parse error" in err


def test_usage_errors(fano_file):
    assert cli("frobnicate")[0] == 2
    assert cli("analyze", "--v", "81")[0] == 2
    assert cli("analyze", *A81, "--prime", "7", "--all")[0] == 2
    assert cli("verify", "/nonexistent/file")[0] == 2
    assert cli("burnside", "--v", "81", "--order", "0", "--fix", "1")[0] == 2


def test_aut(fano_file):
    code, recs, _ = cli("aut", str(fano_file))
    assert code == 0 and recs[0]["order"] == 168


def test_fixed(fano_file):
    code, recs, _ = cli("fixed", str(fano_file), "--perm", "(4 5)(6 7)")
    assert code == 0
    fx, lemmas = recs[0], recs[1]
    assert fx["f"] == 3 and fx["fb"] == 3 and fx["fixed_points"] == [1, 2, 3]
    assert lemmas["all_hold"] is True
    assert recs[-1]["verdict"] == "ok"


def test_fixed_not_automorphism(fano_file):
    code, recs, _ = cli("fixed", str(fano_file), "--perm", "(1 2)")
    assert code == 1 and recs[0]["verdict"] == "violation"


def test_fixed_malformed_perm(fano_file):
    assert cli("fixed", str(fano_file), "--perm", "(1 2")[0] == 3
    assert cli("fixed", str(fano_file), "--perm", "(1 1)")[0] == 3


def test_analyze_prime_7():
    code, recs, _ = cli("analyze", *A81, "--prime", "7")
    assert code == 0
    assert recs[0]["candidate_f"] == [4, 11, 18]
    assert recs[-1]["verdict"] == "contradiction"


@pytest.mark.parametrize("argv,name", [
    (["--prime", "7"], "analyze_81_16_3_p7"),
    (["--all"], "analyze_81_16_3_all"),
    (["--all", "--no-external-facts"], "analyze_81_16_3_all_nofacts"),
])
def test_analyze_golden(argv, name):
    code, recs, _ = cli("analyze", *A81, *argv)
    golden = [json.loads(line) for line in (GOLDEN / f"{name}.jsonl").read_text().splitlines()]
    assert code == 0 and stable(recs) == golden


def test_analyze_all_report():
    _, recs, _ = cli("analyze", *A81, "--all")
    theorem = [r for r in recs if r.get("record") == "theorem_report"][0]
    assert theorem["allowed_primes"] == [2, 3, 5, 13]
    assert theorem["forbidden_element_orders"] == [7, 10, 11, 26, 65]
    _, recs, _ = cli("analyze", *A81, "--all", "--no-external-facts")
    theorem = [r for r in recs if r.get("record") == "theorem_report"][0]
    assert theorem["forbidden_element_orders"] == [7, 11, 65]
    assert theorem["dependencies"] == {}


def test_byte_identical_output():
    def raw(*argv):
        out = io.StringIO()
        run(list(argv), out, io.StringIO())
        lines = out.getvalue().splitlines()
        return lines[:-1], stable([json.loads(lines[-1])])
    assert raw("analyze", *A81, "--all") == raw("analyze", *A81, "--all")


def test_burnside():
    code, recs, _ = cli("burnside", "--v", "81", "--order", "25", "--fix", "1")
    assert code == 0
    assert recs[0]["verdict"] == "contradiction" and recs[0]["orbit_count"] == "21/5"
    code, recs, _ = cli("burnside", "--v", "81", "--order", "8", "--fix", "9")
    assert recs[0]["verdict"] == "feasible" and recs[0]["orbit_count"] == "18"


def test_search_ds():
    code, recs, _ = cli("search-ds", "--v", "7", "--k", "3", "--lambda", "1")
    sets = [r["residues"] for r in recs if r["record"] == "difference_set"]
    assert code == 0 and len(sets) == 14 and sets[0] == [0, 1, 3]


def test_search_writes_designs(tmp_path):
    group = tmp_path / "c7.group"
    group.write_text("# translation\n(1 2 3 4 5 6 7)\n")
    outdir = tmp_path / "out"
    code, recs, _ = cli("search", "--v", "7", "--k", "3", "--lambda", "1", "--group", str(group),
                        "--out", str(outdir))
    assert code == 0
    summary = recs[-1]
    assert summary["verdict"] == "ok" and len(summary["artifacts"]) == 2
    run_summary = [r for r in recs if r["record"] == "run_summary"][0]
    assert {"params", "group", "nodes", "results"} <= set(run_summary)
    found = {parse_design(Path(p).read_text()) for p in summary["artifacts"]}
    assert found == {develop(s, 7) for s in search_difference_sets(7, 3, 1)}
    for d in found:
        assert is_symmetric_design(7, 3, 1, d.block_sets())


def test_search_budget(tmp_path):
    group = tmp_path / "trivial.group"
    group.write_text("")
    code, recs, _ = cli("search", "--v", "7", "--k", "3", "--lambda", "1", "--group", str(group),
                        "--max-nodes", "50")
    assert code == 0 and recs[-1]["verdict"] == "budget-exceeded"


def test_group_file_parse_error_has_line(tmp_path):
    group = tmp_path / "bad.group"
    group.write_text("(1 2 3)\n(1 2 8)\n")
    code, recs, _ = cli("search", "--v", "7", "--k", "3", "--lambda", "1", "--group", str(group))
    assert code == 3 and "line 2" in recs[0]["message"]


def test_console_entry_point(fano_file):
    proc = subprocess.run([sys.executable, "-m", "symdesign", "verify", str(fano_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[-1])["verdict"] == "ok"
