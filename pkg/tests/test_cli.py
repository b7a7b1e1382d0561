import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from nmcliques.cli import run
from nmcliques.schemas import SCHEMAS

CORPUS = Path(__file__).resolve().parent.parent / "corpus"
TRIANGLE = "nmg 1 0 3 3\n0 1 2\n1 2 2\n2 0 2\n"
PATH = "nmg 1 0 3 2\n0 1 2\n2 1 2\n"
K5 = "nmg 0 2 5 10\n" + "".join(f"{u} {v} {1 + (u + v) % 2}\n" for u in range(5) for v in range(u + 1, 5))


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, text in [("triangle", TRIANGLE), ("path", PATH), ("k5", K5), ("bad", "nmg 1 0 2 1\n0 0 2\n")]:
        out[name] = tmp_path / f"{name}.nmg"
        out[name].write_text(text)
    return out


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def call_json(capsys, tmp_path, command, *argv):
    target = tmp_path / f"{command}.json"
    code, out, _ = call(capsys, command, *argv, "--json", target)
    doc = json.loads(target.read_text())
    jsonschema.validate(doc, SCHEMAS[command])
    return code, out, doc


def test_bound(capsys, tmp_path):
    code, out, doc = call_json(capsys, tmp_path, "bound", 1, 1)
    assert (code, out) == (0, "31\n")
    assert doc == {"n": 1, "m": 1, "p": 3, "bound": 31}
    assert call(capsys, "bound", 0, 1)[0] == 2
    assert call(capsys, "bound", -1, 1)[0] == 2


def test_verify(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "verify", files["triangle"], "--class", "any")
    assert code == 0 and "complete: yes" in out and "bound: 15 (within)" in out
    assert doc["report"]["passed"]
    code, out, _ = call(capsys, "verify", files["path"])
    assert code == 1 and "complete: no (0 and 2 do not see each other)" in out
    code, out, _ = call(capsys, "verify", files["k5"], "--class", "planar")
    assert code == 1 and "class planar: no" in out
    assert call(capsys, "verify", files["bad"])[0] == 2
    assert call(capsys, "verify", tmp_path / "missing.nmg")[0] == 2
    assert call(capsys, "verify", files["triangle"], "--class", "toroidal")[0] == 2


def test_sees(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "sees", files["path"], 0, 2)
    assert (code, out) == (1, "NONE\n") and not doc["sees"]
    code, out, doc = call_json(capsys, tmp_path, "sees", files["triangle"], 0, 2)
    assert (code, out) == (0, "ADJACENT\n") and doc["kind"] == "adjacent"
    assert call(capsys, "sees", files["path"], 0, 7)[0] == 2


def test_hom(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "hom", files["triangle"], files["path"])
    assert code == 1 and out == "NONE\n" and not doc["found"]
    code, out, doc = call_json(capsys, tmp_path, "hom", files["triangle"], files["triangle"])
    assert code == 0 and sorted(doc["map"]) == [0, 1, 2]


def test_chi(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "chi", files["triangle"])
    assert (code, out, doc["chi"]) == (0, "3\n", 3)
    code, out, doc = call_json(capsys, tmp_path, "chi", files["triangle"], "--limit", 2)
    assert (code, out, doc["chi"]) == (1, "> 2\n", None)
    assert call(capsys, "chi", files["triangle"], "--limit", 0)[0] == 2


def test_clique(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "clique", files["path"])
    assert code == 0 and out.splitlines()[0] == "2"
    assert doc["size"] == 2 and len(doc["witness"]) == 2


def test_search(capsys, tmp_path):
    out_file = tmp_path / "w.nmg"
    code, out, doc = call_json(capsys, tmp_path, "search", "--n", 1, "--m", 0, "--class", "any",
                               "--max-order", 3, "--out", out_file)
    assert code == 0 and "best_order: 3" in out and "status: exhausted" in out
    assert out_file.read_text().startswith("nmg 1 0 3 3\n") and doc["best_order"] == 3
    code, out, _ = call(capsys, "search", "--n", 1, "--m", 0, "--max-order", 9, "--budget", 0.05,
                        "--out", out_file)
    assert code == 3 and "status: budget_exhausted" in out
    assert call(capsys, "search", "--n", 1, "--m", 0)[0] == 2
    assert call(capsys, "search", "--n", 1, "--m", 0, "--max-order", 5, "--threads", 0)[0] == 2


def test_audit(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "audit", files["triangle"])
    assert code == 0 and "case: dominated" in out and "verdict: consistent" in out
    assert doc["verdict"] == "consistent" and doc["quantities"]["|V|"] == 3
    code, out, doc = call_json(capsys, tmp_path, "audit", files["path"])
    assert code == 1 and doc["verdict"] == "inapplicable"


def test_audit_json_to_stdout(capsys, files):
    code, out, _ = call(capsys, "audit", files["triangle"], "--json", "-")
    doc = json.loads(out[out.index("{"):])
    jsonschema.validate(doc, SCHEMAS["audit"])


def test_verify_corpus(capsys, tmp_path, files):
    code, out, doc = call_json(capsys, tmp_path, "verify-corpus", CORPUS)
    assert code == 0 and doc["ok"] and out.endswith("rows verified\n")
    bad = tmp_path / "bad_corpus"
    bad.mkdir()
    (bad / "path.nmg").write_text(PATH)
    (bad / "manifest.tsv").write_text("file\tn\tm\tclass\tclaimed_order\npath.nmg\t1\t0\tany\t3\n")
    code, out, doc = call_json(capsys, tmp_path, "verify-corpus", bad)
    assert code == 1 and not doc["ok"] and "FAIL" in out
    assert call(capsys, "verify-corpus", tmp_path / "nowhere")[0] == 2


def test_usage_errors(capsys):
    assert call(capsys)[0] == 2
    assert call(capsys, "frobnicate")[0] == 2


def test_console_entry_point_is_byte_identical(tmp_path):
    outputs = []
    for run_id in range(2):
        witness = tmp_path / f"w{run_id}.nmg"
        proc = subprocess.run(
            [sys.executable, "-m", "nmcliques.cli", "search", "--n", "0", "--m", "2",
             "--class", "outerplanar", "--max-order", "5", "--threads", "1", "--out", "w.nmg"],
            capture_output=True, cwd=tmp_path, check=True,
        )
        witness.write_bytes((tmp_path / "w.nmg").read_bytes())
        outputs.append((proc.stdout, witness.read_bytes()))
    assert outputs[0] == outputs[1]
    assert b"best_order: 5" in outputs[0][0]
