import json
from pathlib import Path

from strobj.cli import main

PROGRAMS = Path(__file__).parent / "programs"


def test_analyze_text_and_json(capsys):
    assert main(["analyze", str(PROGRAMS / "tag_char.js")]) == 0
    assert "line 6: unreachable" in capsys.readouterr().out
    assert main(["analyze", str(PROGRAMS / "nested_tags.js"), "--props", str(PROGRAMS / "tags.json"),
                 "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["verdicts"] == [{"kind": "unreachable", "line": 7}]


def test_diagnostics_exit_with_one(tmp_path, capsys):
    bad = tmp_path / "bad.js"
    bad.write_text("let x = ;")
    assert main(["analyze", str(bad)]) == 1
    assert "bad.js:1:9: expected an expression" in capsys.readouterr().err
    ok = tmp_path / "ok.js"
    ok.write_text("let x = 'c';")
    assert main(["analyze", str(ok), "--alphabet", "ab"]) == 1
    assert main(["analyze", str(tmp_path / "missing.js")]) == 1
    assert main(["nonsense"]) == 1
    assert main(["--help"]) == 0


def test_reduce_and_latop(tmp_path, capsys):
    v = tmp_path / "v.json"
    v.write_text(json.dumps({"value": {"factors": ["abbab", "abab"]}, "length": {"lo": 6, "hi": 8}}))
    assert main(["reduce", str(v), "--text"]) == 0
    assert capsys.readouterr().out.strip() == "{val 'ab'.. & ..'bab' & ..'abab'.. & ..'abbab'..; len [7,8)}"
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    a.write_text(json.dumps({"value": {"const": "ab"}, "length": {"lo": 2, "hi": 3}}))
    b.write_text(json.dumps({"value": {"const": "ba"}, "length": {"lo": 2, "hi": 3}}))
    assert main(["latop", "meet", str(a), str(b)]) == 0
    assert json.loads(capsys.readouterr().out) == {"bottom": True}
    assert main(["latop", "join", str(a), str(b), "--alphabet", "ab"]) == 0
    assert json.loads(capsys.readouterr().out)["length"] == {"hi": 3, "lo": 2}
    v.write_text("{")
    assert main(["reduce", str(v)]) == 1
    v.write_text(json.dumps({"length": {"lo": "x"}}))
    assert main(["reduce", str(v)]) == 1


def test_check_command(capsys):
    assert main(["check", "--trials", "15", "--max-len", "4"]) == 0
    out = capsys.readouterr().out
    summary = json.loads(out.splitlines()[0])
    assert summary["passed"]
    assert "PASS  self_test_broken_meet" in out
