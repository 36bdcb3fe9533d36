from __future__ import annotations

import csv
import io
import json

import pytest

from semicov.cli import EXIT_INPUT, EXIT_IO, EXIT_MISMATCH, EXIT_OK, run
from semicov.formats import CSV_COLUMNS
from semicov.frobenius import members
from semicov.semigroup import from_record, to_record


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def jsonl(text):
    return [json.loads(line) for line in text.splitlines()]


def test_enumerate_jsonl():
    code, out, _ = call("enumerate", "-F", "5")
    assert code == EXIT_OK
    lines = jsonl(out)
    assert lines[0] == {"F": 5} and lines[-1] == {"count": 5}
    got = {tuple(r["gaps"]) for r in lines[1:-1]}
    assert got == {(1, 2, 3, 4, 5), (1, 2, 4, 5), (1, 2, 3, 5), (1, 3, 5), (1, 2, 5)}


def test_enumerate_f1():
    code, out, _ = call("enumerate", "-F", "1")
    assert code == EXIT_OK and len(jsonl(out)) == 3


def test_records_round_trip():
    _, out, _ = call("enumerate", "-F", "11")
    for rec in jsonl(out)[1:-1]:
        assert to_record(from_record(rec)) == rec


def test_enumerate_csv_matches_verify():
    code, out, _ = call("enumerate", "-F", "10", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    code, report, _ = call("verify", "-F", "10")
    assert code == EXIT_OK and report.startswith("match")
    assert f"brute={len(rows) - 1}" in report


def test_enumerate_plain_and_json():
    _, out, _ = call("enumerate", "-F", "6", "--format", "plain")
    assert out.splitlines() == [str(s) for s in members(6)]
    _, out, _ = call("enumerate", "-F", "6", "--format", "json")
    doc = json.loads(out)
    assert doc["count"] == 4 and len(doc["members"]) == 4


def test_invalid_f_exits_2():
    for f in ("0", "-4"):
        code, _, err = call("enumerate", "-F", f)
        assert code == EXIT_INPUT and "error" in err
    code, _, _ = call("enumerate")
    assert code == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        call("enumerate", "-F", "x")
    assert exc.value.code == EXIT_INPUT


def test_bad_parallel_exits_2():
    code, _, _ = call("enumerate", "-F", "5", "--parallel", "0")
    assert code == EXIT_INPUT


def test_output_failure_exits_3(tmp_path):
    code, _, err = call("enumerate", "-F", "5", "-o", str(tmp_path / "missing" / "out.jsonl"))
    assert code == EXIT_IO and "output error" in err


def test_output_file(tmp_path):
    path = tmp_path / "out.jsonl"
    code, out, _ = call("enumerate", "-F", "7", "-o", str(path))
    assert code == EXIT_OK and out == ""
    assert jsonl(path.read_text())[-1] == {"count": 11}


def test_analyze():
    code, out, _ = call("analyze", "5", "7", "9")
    assert code == EXIT_OK
    assert "frobenius: 13" in out and "multiplicity: 5" in out and "embedding_dimension: 3" in out
    _, out, _ = call("analyze", "4", "6", "9", "--format", "json")
    rep = json.loads(out)
    assert rep["frobenius"] == 11 and rep["genus"] == len(rep["gaps"]) == 6
    code, out, _ = call("analyze", "1")
    assert code == EXIT_OK and "frobenius: -1" in out and "type: n/a" in out
    code, _, _ = call("analyze", "4", "6")
    assert code == EXIT_INPUT
    _, out, _ = call("analyze", "--gaps", "1", "2", "3", "4", "--format", "json")
    rep = json.loads(out)
    assert rep["pseudo_frobenius"] == [1, 2, 3, 4] and rep["special_gaps"] == [3, 4]


def test_closure_and_count_rank1():
    code, out, _ = call("closure", "-F", "15", "6")
    assert code == EXIT_OK and json.loads(out)["genus"] == 13
    assert call("closure", "-F", "10", "5")[0] == EXIT_INPUT
    code, out, _ = call("count-rank1", "-F", "72")
    assert code == EXIT_OK and out == "60\n"


def test_chain():
    code, out, _ = call("chain", "5", "7", "9")
    lines = jsonl(out)
    assert code == EXIT_OK and lines[-1] == {"count": 6}
    _, out, _ = call("chain", "4", "6", "9", "-F", "13")
    assert jsonl(out)[-1] == {"count": 8}
    assert call("chain", "5", "7", "9", "-F", "12")[0] == EXIT_INPUT


def test_max_rank():
    code, out, _ = call("max-rank", "-F", "15", "--format", "plain")
    assert code == EXIT_OK
    assert "{0,8,9,10,11,12,13,14,16,→}" in out.splitlines()


def test_cov_generate(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.jsonl"
    _, out, _ = call("analyze", "5", "7", "9", "--format", "json")
    a.write_text(json.dumps({"gaps": json.loads(out)["gaps"]}))
    b.write_text(json.dumps({"msg": [4, 6, 9]}) + "\n")
    code, out, _ = call("cov-generate", str(a), str(b))
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["delta"]["frobenius"] == 13 and len(doc["members"]) >= 12
    assert call("cov-generate", str(tmp_path / "nope.json"))[0] == EXIT_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert call("cov-generate", str(bad))[0] == EXIT_INPUT


def test_tree_dot_and_json():
    code, out, _ = call("tree", "-F", "5")
    assert code == EXIT_OK
    assert out.startswith("digraph") and out.count("->") == 4
    code, out, _ = call("tree", "-F", "6", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and len(doc["edges"]) == 3
    assert call("tree", "-F", "5", "--format", "csv")[0] == EXIT_INPUT


def test_verify_formats():
    code, out, _ = call("verify", "-F", "8", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["status"] == "match" and doc["brute"] == 10
    code, out, _ = call("verify", "-F", "8", "--format", "jsonl")
    lines = jsonl(out)
    assert lines[0] == {"F": 8} and lines[-1] == {"count": 10, "status": "match"}
    assert call("verify", "-F", "23")[0] == EXIT_INPUT


def test_verify_reports_mismatch(monkeypatch):
    import semicov.frobenius as af
    real = af.members
    monkeypatch.setattr(af, "members", lambda f, **kw: real(f, **kw)[1:] + real(f)[:1] * 2)
    code, out, _ = call("verify", "-F", "7")
    assert code == EXIT_MISMATCH and "duplicates 1" in out
    monkeypatch.setattr(af, "members", lambda f, **kw: real(f, **kw)[1:])
    code, out, _ = call("verify", "-F", "7")
    assert code == EXIT_MISMATCH and "missing {0,8,→}" in out


@pytest.mark.parametrize("fmt", ["jsonl", "csv", "dot"])
def test_parallel_output_identical(fmt):
    outs = {call("enumerate", "-F", "12", "--format", fmt, "--parallel", str(p))[1] for p in (1, 3)}
    outs.add(call("enumerate", "-F", "12", "--format", fmt, "--low-memory", "--parallel", "2")[1])
    assert len(outs) == 1


def test_order_insensitive_same_records():
    base = sorted(call("enumerate", "-F", "12")[1].splitlines())
    for extra in (["--order-insensitive"], ["--order-insensitive", "--parallel", "2"]):
        assert sorted(call("enumerate", "-F", "12", *extra)[1].splitlines()) == base


def test_threads_env(monkeypatch):
    monkeypatch.setenv("SEMICOV_THREADS", "2")
    from semicov.cli import build_parser, config_from_args
    assert config_from_args(build_parser().parse_args(["enumerate", "-F", "3"])).parallel == 2
    ns = build_parser().parse_args(["enumerate", "-F", "3", "--parallel", "1"])
    assert config_from_args(ns).parallel == 1
