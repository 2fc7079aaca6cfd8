import json
import os

import pytest

from cli_jobs import JOBS, argv
from wfskit.cli import main, verify_report
from wfskit.fixtures import write_corpus


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    write_corpus(str(d))
    return str(d)


def run(job, corpus, out, capsys=None):
    code = main(argv(job, corpus, out))
    if capsys:
        capsys.readouterr()
    return code


@pytest.mark.parametrize("name,job,want", JOBS, ids=[j[0] for j in JOBS])
def test_exit_code_and_verify(name, job, want, corpus, tmp_path, capsys):
    out = str(tmp_path / "r.json")
    assert run(job, corpus, out, capsys) == want
    report = json.load(open(out))
    assert report["schema"] == "wfskit/1" and report["exit"] == want
    code, msg = verify_report(report)
    assert code == (2 if want == 2 else 0), msg


def test_report_to_stdout(corpus, capsys):
    assert main(argv(["nerve", "category_z2.json"], corpus)) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["result"]["homology"]["groups"][1]["torsion"] == [2]


def test_hocolim_span_reports_circle(corpus, tmp_path, capsys):
    out = str(tmp_path / "h.json")
    assert run(["hocolim", "diagram_span.json"], corpus, out, capsys) == 0
    groups = json.load(open(out))["result"]["homology"]["groups"]
    assert [g["betti"] for g in groups[:3]] == [1, 1, 0]


def test_tampered_lift_is_rejected(corpus, tmp_path, capsys):
    out = str(tmp_path / "l.json")
    run(["lift", "square_trivial.json"], corpus, out, capsys)
    report = json.load(open(out))
    report["certificate"]["sigma"]["assign"]["0"] = [[0], "nowhere"]
    code, msg = verify_report(report)
    assert code == 1 and "certificate.sigma" in msg


def test_tampered_factorization_is_rejected(corpus, tmp_path, capsys):
    out = str(tmp_path / "f.json")
    run(["factor", "map_empty_d2.json", "--mode", "soa", "--trunc", "2", "--stages", "3"], corpus, out, capsys)
    report = json.load(open(out))
    right = report["certificate"]["right"]
    a = right["assign"]
    a["d0_0"], a["d0_1"] = a["d0_1"], a["d0_0"]
    code, msg = verify_report(report)
    assert code == 1 and "certificate.right" in msg


def test_tampered_input_hash_is_rejected(corpus, tmp_path, capsys):
    out = str(tmp_path / "c.json")
    run(["cofibrant", "sobj_cofibrant.json"], corpus, out, capsys)
    report = json.load(open(out))
    report["inputs_data"][0][1]["trunc_note"] = "edited"
    code, msg = verify_report(report)
    assert code == 1


def test_tampered_status_is_rejected(corpus, tmp_path, capsys):
    out = str(tmp_path / "c.json")
    run(["cofibrant", "sobj_noncofibrant.json"], corpus, out, capsys)
    report = json.load(open(out))
    report["status"], report["exit"] = "pass", 0
    assert verify_report(report)[0] == 1


def test_verify_cli(corpus, tmp_path, capsys):
    out = str(tmp_path / "v.json")
    run(["reedy", "sobj_map.json"], corpus, out, capsys)
    assert main(["verify", out]) == 0
    assert "certificates check" in capsys.readouterr().out


def test_input_errors(corpus, tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["nerve", str(bad)]) == 3
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"kind": "sset", "gens": {"a": 1}, "faces": {}}))
    assert main(["nerve", str(wrong)]) == 3
    assert main(["lift", os.path.join(corpus, "map_collapse.json")]) == 3
    assert main(["verify", str(tmp_path / "missing.json")]) == 3
    capsys.readouterr()


def test_validate_reports_broken_inputs(tmp_path, capsys):
    broken = tmp_path / "cat.json"
    broken.write_text(json.dumps({"kind": "category", "objects": ["a"], "morphisms": {"f": ["a", "b"]},
                                  "compose": [], "identities": {"a": "id_a"}}))
    out = str(tmp_path / "r.json")
    assert main(["validate", str(broken), "--out", out]) == 1
    capsys.readouterr()


def test_reports_are_byte_identical(corpus, tmp_path, capsys):
    for name, job, _ in JOBS:
        a, b = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        run(job, corpus, a, capsys)
        run(job, corpus, b, capsys)
        assert open(a, "rb").read() == open(b, "rb").read(), name


def test_tampered_reedy_section_is_rejected(corpus, tmp_path, capsys):
    out = str(tmp_path / "r.json")
    run(["reedy", "sobj_map.json"], corpus, out, capsys)
    report = json.load(open(out))
    sec = report["certificate"]["sections"][1]
    x = next(iter(sec["index_map"]))
    others = [y for y in sec["target"]["index"] if y != sec["index_map"][x]]
    sec["index_map"][x] = others[0]
    code, msg = verify_report(report)
    assert code == 1 and "certificate.sections[1]" in msg
