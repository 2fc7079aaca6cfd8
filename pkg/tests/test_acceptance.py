"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are repeated in the
terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""
import json
import os
import subprocess
import sys
import tempfile
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cli_jobs import JOBS, argv  # noqa: E402
from oracles import brute_lift_exists, brute_squares  # noqa: E402
from wfskit import fincat, sobj  # noqa: E402
from wfskit.cli import main, verify_report  # noqa: E402
from wfskit.coprod import FINSET, pointed_join_base, verify_extensive  # noqa: E402
from wfskit.fixtures import (diagram_fixtures, generator_maps, holim_fixtures, kg2, random_diagram,  # noqa: E402
                             seeded_cospans, seeded_maps, seeded_morphisms, seeded_objects, seeded_triples,
                             seeded_weqs, small_shapes, span_fixture)
from wfskit.holim import coend_oracle, hocolim, hokan_left, hokan_right, holim  # noqa: E402
from wfskit.schema import dump  # noqa: E402
from wfskit.sset.core import delta, terminal_map  # noqa: E402
from wfskit.sset.homology import homology, weq_oracle  # noqa: E402
from wfskit.sset.homotopy import is_kan_fibration, is_trivial_fibration  # noqa: E402
from wfskit.sset.search import is_isomorphic  # noqa: E402
from wfskit.wfs import LiftingSquare, check_adjunction_correspondence, iter_squares, solve_lifting  # noqa: E402

RESULTS = {}


def report(key, ok, detail):
    line = f"{key:>4} {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[key] = line
    print(line)
    return ok


def test_c01_lifting_oracle_soundness():
    t0 = time.time()
    squares = agree = 0
    for lam in generator_maps(2):
        for rho in seeded_maps(0, 20):
            found = brute_squares(lam, rho)
            assert len(found) == sum(1 for _ in iter_squares(lam, rho))
            for top, bottom in found:
                squares += 1
                got = solve_lifting(LiftingSquare(lam, rho, top, bottom)).found
                agree += got == brute_lift_exists(lam, rho, top, bottom)
    dt = time.time() - t0
    ok = agree == squares and dt < 60
    assert report("C1", ok, f"{agree}/{squares} squares agree with brute force in {dt:.1f}s (< 60s)")


def test_c02_adjunction_correspondence():
    fails = {}
    for bif in ("product", "tensor"):
        fails[bif] = sum(not check_adjunction_correspondence(*t, bif).agree for t in seeded_triples(0, 100, bif))
    ok = not any(fails.values())
    assert report("C2", ok, f"failures on 100 seeded triples: product {fails['product']}, tensor {fails['tensor']}")


@pytest.mark.xfail(strict=True, reason="simplex -> point is not a trivial fibration for n >= 1 (see ledger)")
def test_c03a_simplex_to_point_trivial_fibration():
    verdicts = {n: is_trivial_fibration(terminal_map(delta(n)), 3).status for n in range(4)}
    ok = all(v == "pass" for v in verdicts.values())
    report("C3a", ok, f"delta(n) -> delta(0) trivial fibration at dim <= 3: {verdicts}")
    assert ok


def test_c03b_kan_fibration_facts():
    r = is_kan_fibration(terminal_map(delta(1)), 3)
    horn_witness = r.status == "fail" and r.square is not None and r.square.lam.source.dim >= 1
    kan = is_kan_fibration(terminal_map(kg2(3)), 3).holds
    ok = horn_witness and kan
    assert report("C3b", ok, f"delta(1) -> delta(0) fails with horn witness: {horn_witness}; "
                             f"K(Z/2) Kan at dim <= 3: {kan}")


def test_c04_circle_regression():
    t0 = time.time()
    x = hocolim(span_fixture(), 3)
    h = homology(x, 2)
    iso = is_isomorphic(x, coend_oracle(span_fixture(), 3))
    dt = time.time() - t0
    groups = [h.group(n) for n in range(3)]
    ok = groups == [(1, ()), (1, ()), (0, ())] and iso and dt < 10
    assert report("C4", ok, f"span hocolim: {h}; iso to coend: {iso}; {dt:.2f}s (< 10s)")


def test_c05_diagonal_equals_coend():
    cases = [(n, d) for n, d in diagram_fixtures().items()]
    for seed in range(3):
        rng = __import__("random").Random(seed)
        cases += [(f"{n}#{seed}", random_diagram(rng, c)) for n, c in sorted(small_shapes().items())]
    bad = [n for n, d in cases if not is_isomorphic(hocolim(d, 2), coend_oracle(d, 2))]
    assert report("C5", not bad, f"{len(cases) - len(bad)}/{len(cases)} diagrams isomorphic; failures {bad}")


def test_c06_cofibrancy_cross_validation():
    objs = seeded_objects(0, 50)
    dis = [k for k, x in enumerate(objs) if sobj.is_cofibrant(x).holds != sobj.is_cofibrant_rlp(x)[0]]
    neg = sum(not sobj.is_cofibrant(x).holds for x in objs)
    assert report("C6", not dis, f"50 objects ({neg} non-cofibrant), disagreements {len(dis)}")


def test_c07_reedy_contract(tmp_path):
    bad = []
    for k, f in enumerate(seeded_morphisms(0, 20)):
        fact = sobj.reedy_factorize(f)
        ok = fact.left.then(fact.right) == f and all(sobj.is_coprod_injection(m) for m in fact.left.maps)
        for n in range(min(3, f.trunc) + 1):
            corner, _ = sobj.matching_corner(fact.right, n)
            s = fact.sections[n]
            ok = ok and s is not None and f.source.cc.compose(corner, s) == f.source.cc.identity(corner.target)
        path, out = tmp_path / f"m{k}.json", str(tmp_path / f"r{k}.json")
        path.write_text(json.dumps(dump(f)))
        code = main(["reedy", str(path), "--out", out])
        ok = ok and code == 0 and verify_report(json.load(open(out)))[0] == 0
        if not ok:
            bad.append(k)
    assert report("C7", not bad, f"20 morphisms: injective left legs, split matching corners, CLI verify; "
                                 f"failures {bad}")


def test_c08_right_properness():
    cospans = seeded_cospans(0, 20)
    bad = []
    for k, (f, g) in enumerate(cospans):
        _, p1, p2 = sobj.pullback(f, g)
        if sobj.is_weq(p1)["status"] != "pass":
            bad.append(k)
    ok = len(cospans) == 20 and not bad
    assert report("C8", ok, f"{len(cospans)} (fibration, weq) cospans, pulled-back weq failures {len(bad)}")


def test_c09_collapse_preserves_weqs():
    weqs = seeded_weqs(0, 20)
    bad = [k for k, f in enumerate(weqs) if not weq_oracle(sobj.collapse_map(f), f.trunc - 1).ok]
    ok = len(weqs) == 20 and not bad
    assert report("C9", ok, f"{len(weqs)} seeded weqs, collapse failures {len(bad)}")


def test_c10_extensivity():
    fs = verify_extensive(FINSET, FINSET.sample_objects(4))
    pj = verify_extensive(pointed_join_base())
    witness = pj.witnesses.get("disjointness")
    ok = fs.ok and pj.checks.get("disjointness") == "fail" and witness is not None
    assert report("C10", ok, f"FinSet {fs.checks}; pointed-join disjointness {pj.checks.get('disjointness')} "
                             f"with witness {witness}")


def test_c11_kan_extension_collapse():
    bad = []
    for name, d in sorted(diagram_fixtures().items()):
        k = hokan_left(fincat.to_terminal(d.shape), d, 2)
        if not is_isomorphic(k.values["*"], hocolim(d, 2)):
            bad.append(f"left:{name}")
    for name, d in sorted(holim_fixtures(2).items()):
        k = hokan_right(fincat.to_terminal(d.shape), d, 2)
        if not is_isomorphic(k.values["*"], holim(d, 2)):
            bad.append(f"right:{name}")
    n = len(diagram_fixtures()) + len(holim_fixtures(2))
    assert report("C11", not bad, f"{n - len(bad)}/{n} fixtures isomorphic; failures {bad}")


_DRIVER = """
import io, contextlib, os, sys
sys.path.insert(0, {tests!r})
from cli_jobs import JOBS, argv
from wfskit.cli import main
from wfskit.fixtures import write_corpus
out = sys.argv[1]
write_corpus(os.path.join(out, "corpus"))
for name, job, _ in JOBS:
    with contextlib.redirect_stdout(io.StringIO()):
        main(argv(job, os.path.join(out, "corpus"), os.path.join(out, name + ".json")))
"""


def test_c12_determinism():
    tests = os.path.dirname(os.path.abspath(__file__))
    runs = []
    with tempfile.TemporaryDirectory() as tmp:
        for k, hashseed in enumerate(("1", "2")):
            d = os.path.join(tmp, f"run{k}")
            os.makedirs(d)
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            subprocess.run([sys.executable, "-c", _DRIVER.format(tests=tests), d], check=True, env=env)
            files = {}
            for root, _, names in os.walk(d):
                for n in names:
                    p = os.path.join(root, n)
                    files[os.path.relpath(p, d)] = open(p, "rb").read()
            runs.append(files)
    differ = sorted(k for k in runs[0] if runs[0][k] != runs[1].get(k))
    ok = runs[0].keys() == runs[1].keys() and not differ and len(runs[0]) > len(JOBS)
    assert report("C12", ok, f"{len(runs[0])} corpus files and reports over 2 runs (different hash seeds); "
                             f"differing {differ}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
