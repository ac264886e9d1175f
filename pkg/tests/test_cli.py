from __future__ import annotations

import json

import pytest

from rigcat.acceptance import corpus_path
from rigcat.cli import main


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out = capsys.readouterr()
    return status, out.out, out.err


def records(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines()]


def test_validate_terminal(capsys):
    status, out, _ = run(capsys, "validate", corpus_path("terminal"))
    assert status == 0 and "PASS" in out


def test_vs_cob_records(capsys):
    status, out, _ = run(capsys, "vs-cob", "--maxlen", 2, "--bound", 2, "--format", "records")
    assert status == 0
    lines = records(out)
    assert lines[0] == {"command": "vs-cob", "schema": "rigcat.report", "version": 1}
    assert lines[-1] == {"ok": True, "record": "status"}


def test_hom_lists_one_morphism(capsys):
    status, out, _ = run(capsys, "hom", "--pos", "y", "--neg", "x", "--loops", 0, corpus_path("walking_arrow"),
                         "--format", "records")
    assert status == 0
    (section,) = [r for r in records(out) if r.get("record") == "section"]
    assert section["data"]["size"] == 1
    assert len(section["data"]["morphisms"]) == 1


def test_records_are_deterministic(capsys):
    argv = ["grothendieck", corpus_path("diagram_chain"), corpus_path("diagram_lax"), "--format", "records"]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0


def test_out_file(capsys, tmp_path):
    target = tmp_path / "report.txt"
    status, out, _ = run(capsys, "trace", corpus_path("walking_iso"), "--out", target)
    assert status == 0 and out == ""
    assert "classes: 1" in target.read_text()


def test_check_failure_exits_1(capsys):
    status, out, _ = run(capsys, "ff-check", corpus_path("functor_terminal_z2"))
    assert status == 1 and "FAIL" in out
    status, _, _ = run(capsys, "rigid", corpus_path("arrow_join_monoidal"))
    assert status == 1


def test_corrupted_composition_reports_witness(capsys, tmp_path):
    data = json.loads(corpus_path("walking_iso").read_text())
    data["composition"][0] = ["g", "f", "g"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    status, out, _ = run(capsys, "validate", bad, "--format", "records")
    assert status == 1
    section = records(out)[1]
    assert section["data"]["witness"] == ["g", "f", "g"]
    failure = records(out)[2]
    assert str(bad) in failure["message"]


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["end-unit", "--loops", "-1", "CORPUS:z2"],
        ["trace", "/nonexistent/file.json"],
        ["hom", "--pos", "x"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    argv = [str(corpus_path(a.split(":")[1])) if a.startswith("CORPUS:") else a for a in argv]
    status, _, err = run(capsys, *argv)
    assert status == 2 and err


def test_unknown_key_is_a_parse_error(capsys, tmp_path):
    data = json.loads(corpus_path("terminal").read_text())
    data["extra"] = True
    path = tmp_path / "t.json"
    path.write_text(json.dumps(data))
    status, _, err = run(capsys, "validate", path)
    assert status == 2 and "extra" in err and str(path) in err


def test_compose_cap_and_cup(capsys):
    status, out, _ = run(capsys, "compose", corpus_path("cob_cap"), corpus_path("cob_cup"))
    assert status == 0 and "o1" in out
    status, out, _ = run(capsys, "compose", "--category", corpus_path("walking_iso"),
                         corpus_path("brauer_cap_iso"), corpus_path("brauer_cup_iso"))
    assert status == 0 and "loops[id_x]" in out


def test_universal_and_adjoint(capsys):
    assert run(capsys, "universal", corpus_path("universal_terminal_z3"))[0] == 0
    assert run(capsys, "adjoint", corpus_path("functor_point_arrow"))[0] == 0
