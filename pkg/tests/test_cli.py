import io
import json
import os
import subprocess
import sys

import pytest

from monogen.cli import EXIT_IO, EXIT_MISMATCH, EXIT_OK, SCHEMA_VERSION, OutputRecord, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def records(text):
    return [OutputRecord.from_json(line) for line in text.splitlines() if line.strip()]


def test_analyze_text_and_json_agree():
    code, text = run("analyze", "--n", "5", "--a", "5")
    assert code == EXIT_OK
    assert "index:          3" in text and "monogenic:      no" in text
    code, js = run("analyze", "--n", "5", "--a", "5", "--json")
    (rec,) = records(js)
    assert rec.schema_version == SCHEMA_VERSION
    assert rec.result["index"] == {"kind": "exact", "value": "3"}
    assert rec.result["monogenic"]["status"] == "no"
    assert rec.result["discriminant"] == str(-(5**18) * 27 * 37)
    for v in rec.result["verdicts"]:
        mark = "does not divide index" if not v["divides_index"] else "divides index"
        assert any(f"p={v['prime']:>6}" in line and mark in line for line in text.splitlines())


@pytest.mark.parametrize("argv", [
    ["analyze", "--n", "2", "--a", "0"],
    ["analyze", "--n", "1", "--a", "3"],
    ["classify", "--n", "5", "--a", "5", "--p", "4"],
    ["scan", "--n-range", "4:2", "--a-range", "1:2"],
    ["analyze", "--n", "5", "--a", "5", "--effort", "lavish"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv, out=io.StringIO())
    assert exc.value.code == 2


def test_disc_verify():
    code, js = run("disc", "--n", "2", "--a", "3", "--verify", "--json")
    (rec,) = records(js)
    assert code == EXIT_OK
    assert rec.result["discriminant"] == "144" and rec.result["verified"] is True


def test_disc_zero_has_diagnostic():
    code, js = run("disc", "--n", "2", "--a", "4", "--json")
    (rec,) = records(js)
    assert code == EXIT_OK and rec.result["discriminant"] == "0"
    assert any("repeated factor" in d for d in rec.diagnostics)


def test_disc_mismatch_exits_3(monkeypatch):
    import monogen.cli as cli

    monkeypatch.setattr(cli, "discriminant_via_resultant", lambda f: 1)
    code, text = run("disc", "--n", "2", "--a", "3", "--verify")
    assert code == EXIT_MISMATCH and "MISMATCH" in text and "144" in text


def test_classify():
    code, js = run("classify", "--n", "5", "--a", "5", "--p", "3", "--cross-check", "--json")
    (rec,) = records(js)
    assert code == EXIT_OK
    assert rec.result["verdict"]["divides_index"] is True and rec.result["verdict"]["case"] == "iii"
    assert rec.result["agree"] is True
    code, text = run("classify", "--n", "5", "--a", "5", "--p", "11")
    assert code == EXIT_OK and "does not divide the discriminant" in text


def test_factor_mod():
    code, js = run("factor-mod", "--n", "5", "--a", "5", "--p", "5", "--json")
    (rec,) = records(js)
    assert rec.result["factors"] == [[["2", "1"], 5], [["3", "1"], 5]]


def test_fp_table_small():
    code, js = run("fp-table", "--max", "13", "--json")
    recs = records(js)
    rows = {r.result["p"]: r.result["index"]["value"] for r in recs if "summary" not in r.result}
    assert rows == {3: "1", 5: "3", 7: "33", 11: "1", 13: "1"}
    assert recs[-1].result["squarefree_h"] == [3, 11, 13]


def test_scan_cache_resume(tmp_path):
    cache = tmp_path / "scan.jsonl"
    argv = ["scan", "--n-range", "2:4", "--a-range", "-5:5", "--cache", str(cache), "--json"]
    code, first = run(*argv)
    assert code == EXIT_OK
    recs = records(first)
    assert len(recs) == 31
    assert recs[-1].result == {"summary": True, "computed": 30, "cache_hits": 0}
    by_key = {(r.result["n"], r.result["a"]): r for r in recs[:-1]}
    assert by_key[(2, "1")].result["irreducibility"]["status"] == "reducible"

    code, second = run(*argv)
    recs2 = records(second)
    assert recs2[-1].result == {"summary": True, "computed": 0, "cache_hits": 30}
    assert [r.to_json() for r in recs2[:-1]] == [r.to_json() for r in recs[:-1]]
    assert len(cache.read_text().splitlines()) == 30


def test_scan_cache_keyed_on_effort(tmp_path):
    cache = tmp_path / "scan.jsonl"
    base = ["scan", "--n-range", "2:2", "--a-range", "1:3", "--cache", str(cache), "--json"]
    run(*base, "--effort", "quick")
    _, out = run(*base, "--effort", "default")
    assert records(out)[-1].result["computed"] == 3


def test_cache_round_trip(tmp_path):
    cache = tmp_path / "scan.jsonl"
    run("scan", "--n-range", "3:3", "--a-range", "2:3", "--cache", str(cache))
    for line in cache.read_text().splitlines():
        rec = OutputRecord.from_json(line)
        assert rec.to_json() == json.dumps(json.loads(line), sort_keys=True)


def test_scan_unwritable_cache_exits_4(tmp_path):
    code, _ = run("scan", "--n-range", "2:2", "--a-range", "1:1", "--cache", str(tmp_path / "no" / "such" / "dir.jsonl"))
    assert code == EXIT_IO


def test_big_integers_are_strings():
    _, js = run("disc", "--n", "40", "--a", "3", "--json")
    rec = json.loads(js)
    assert isinstance(rec["result"]["discriminant"], str)
    assert int(rec["result"]["discriminant"]) != 0


def test_effort_from_environment(monkeypatch):
    monkeypatch.setenv("MONOGEN_EFFORT", "quick")
    _, js = run("analyze", "--n", "3", "--a", "3", "--json")
    assert records(js)[0].inputs["effort"] == "quick"


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "monogen", "disc", "--n", "2", "--a", "3"],
        capture_output=True, text=True, env={**os.environ, "MONOGEN_NUMBA": "0"},
    )
    assert proc.returncode == 0 and "144" in proc.stdout
