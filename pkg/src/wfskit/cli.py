"""Command-line front end: read JSON inputs, run one computation, write a JSON report.

Exit codes: 0 positive or computed, 1 negative (with a witness), 2 budget,
truncation or partiality, 3 input error.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile

from . import coprod, fincat, holim as hl, sobj, wfs
from .errors import WfskitError
from .finset import SetMap
from .schema import SCHEMA, InputError, content_hash, dump, load
from .sset import core
from .sset.core import FinSimplicialSet, SSetMap
from .sset.homology import homology, pi0, weq_oracle
from .sset.search import DEFAULT_BUDGET, find_isomorphism, iter_maps

log = logging.getLogger("wfskit")

EXIT = {"pass": 0, "fail": 1, "budget": 2, "partial": 2, "inconclusive": 2}


class Job:
    """Parsed arguments plus decoded inputs."""

    def __init__(self, args, inputs, aux=None):
        self.args = args
        self.inputs = inputs  # list of (name, raw JSON, decoded)
        self.aux = aux or {}  # option name -> raw JSON of an option file

    def raw(self, k=0):
        return self.inputs[k][1]

    def obj(self, k=0):
        return self.inputs[k][2]


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _profile(x: FinSimplicialSet, trunc: int) -> dict:
    return homology(x, max(trunc, 0)).to_json()


def _stamp(x: FinSimplicialSet, trunc: int) -> dict:
    """Result simplicial set with counts and homology below the truncation (top level excluded)."""
    return {"sset": dump(x), "counts": x.counts(), "homology": _profile(x, max(trunc - 1, 0)),
            "pi0": len(pi0(x))}


# -- commands -------------------------------------------------------------------------------------

def cmd_validate(job):
    x = job.obj()
    if isinstance(x, InputError):
        return "fail", {"kind": job.raw().get("kind") if isinstance(job.raw(), dict) else None,
                        "violations": [str(x)]}, {}
    bad = []
    if isinstance(x, (FinSimplicialSet, SSetMap, sobj.SimpObject, sobj.SimpMorphism)):
        bad = x.violations()
    if isinstance(x, fincat.FinCategory):
        bad = [f"{p['axiom']}: {p['detail']}" for p in fincat.validate_category(x)]
    if isinstance(x, fincat.FinFunctor):
        bad = fincat.validate_functor(x)
    result = {"kind": job.raw()["kind"], "violations": [str(b) for b in bad]}
    return ("fail" if bad else "pass"), result, {}


def cmd_nerve(job):
    c = job.obj()
    finite, cert = fincat.is_homotopically_finite(c)
    x = fincat.nerve(c, job.args.trunc)
    return "pass", {"homotopically_finite": finite, "finiteness": cert, **_stamp(x, job.args.trunc)}, {}


def cmd_lift(job):
    sq = job.obj()
    res = wfs.solve_lifting(sq, job.args.budget)
    status = {"lift": "pass", "none": "fail", "budget": "budget"}[res.status]
    cert = {"square": job.raw(), "sigma": dump(res.sigma) if res.sigma is not None else None}
    return status, {"verdict": res.status, "explored": res.explored}, cert


def cmd_classify(job):
    m = job.obj()
    names = [job.args.cls] if job.args.cls else list(wfs.CLASS_NAMES)
    out = {}
    for name in names:
        try:
            c = wfs.classify(m, name)
            out[name] = {"holds": c.holds, "witness": dump(c.witness) if c.witness is not None else None,
                         "note": c.note}
        except WfskitError as exc:
            out[name] = {"holds": None, "note": str(exc)}
    status = "pass"
    if job.args.cls:
        h = out[job.args.cls]["holds"]
        status = "pass" if h else "inconclusive" if h is None else "fail"
    return status, {"classes": out}, {"map": job.raw()}


def _projectives(job):
    data = job.aux.get("projectives")
    if data is None:
        return None
    if not isinstance(data, list):
        raise InputError("projectives file must hold a JSON list")
    return [load(d, ("sset", "family")) for d in data]


def cmd_factor(job):
    m = job.obj()
    a = job.args
    if a.mode == "projective":
        projs = _projectives(job)
        if isinstance(m, SSetMap) and not projs:
            projs = [core.delta(0)]
        fact = wfs.factor_projective_type(m, projs, a.budget)
        status = "pass" if fact.verdict == "pass" else "fail"
        cert = {"map": job.raw(), "left": dump(fact.left), "right": dump(fact.right)}
        if isinstance(m, SSetMap):
            # the right leg is only P-surjective: certify one lift per map P -> Y
            cert["projectives"] = [dump(p) for p in projs]
            cert["lifts"] = [[k, dump(y), dump(lift) if lift is not None else None]
                             for k, p in enumerate(projs) for y in iter_maps(p, m.target)
                             for lift in [next(iter_maps(p, fact.middle, over=[(fact.right, y)]), None)]]
        else:
            section = next(wfs.sections(fact.right), None)
            cert["section"] = dump(section) if section is not None else None
        return status, {"mode": "projective", "log": fact.log}, cert
    if not isinstance(m, SSetMap):
        raise InputError("the small object argument runs on simplicial maps")
    gens = wfs.generator_family(a.family, a.trunc)
    fact = wfs.small_object_factorize(m, gens, a.stages, a.trunc, a.budget)
    status = "partial" if fact.partial else "pass"
    if fact.verdict == "budget":
        status = "budget"
    cert = {"map": job.raw(), "left": dump(fact.left), "right": dump(fact.right)}
    return status, {"mode": "soa", "family": a.family, "stages_used": fact.stages, "partial": fact.partial,
                    "log": fact.log, "middle_counts": fact.middle.counts()}, cert


def cmd_boxcheck(job):
    f, g, h = (job.obj(k) for k in range(3))
    bif = "tensor" if isinstance(f, SetMap) else "product"
    rep = wfs.check_adjunction_correspondence(f, g, h, bif, job.args.budget)
    status = "budget" if "budget" in rep.verdicts else "pass" if rep.agree else "fail"
    return status, rep.to_json(), {}


def _base(name):
    if name == "finset":
        return coprod.FINSET
    if name == "coprod":
        return coprod.FINSET_COPROD
    if name == "pointed-join":
        return coprod.pointed_join_base()
    raise InputError(f"unknown base {name!r}")


def cmd_extensive(job):
    rep = coprod.verify_extensive(_base(job.args.base), budget=job.args.budget)
    status = "partial" if rep.partial else "pass" if rep.ok else "fail"
    return status, rep.to_json(), {}


def cmd_cofibrant(job):
    x = job.obj()
    cert = sobj.is_cofibrant(x)
    ok_rlp, level_rlp = sobj.is_cofibrant_rlp(x)
    result = {"decomposition": cert.holds, "rlp": ok_rlp, "level": cert.level, "rlp_level": level_rlp,
              "reason": cert.reason, "truncation": x.trunc}
    status = "pass" if cert.holds and ok_rlp else "fail" if not cert.holds and not ok_rlp else "inconclusive"
    return status, result, {"object": job.raw(), "decomposition": cert.to_json()}


def cmd_reedy(job):
    f = job.obj()
    fact = sobj.reedy_factorize(f, min(job.args.trunc, f.trunc))
    ok = all(s is not None for s in fact.sections)
    cert = {"map": job.raw(), "left": dump(fact.left), "right": dump(fact.right),
            "sections": [dump(s) if s is not None else None for s in fact.sections]}
    return ("pass" if ok else "fail"), {"log": fact.log, "truncation": fact.middle.trunc}, cert


def cmd_fib(job):
    f = job.obj()
    if isinstance(f, SSetMap):
        from .sset.homotopy import is_kan_fibration
        res = is_kan_fibration(f, job.args.trunc, job.args.budget)
        wit = None
        if res.square is not None:
            wit = {"generator": res.generator, "top": dump(res.square.top), "bottom": dump(res.square.bottom)}
        return res.status, {"kan": True, "dim": job.args.trunc, "failing": wit}, {}
    res = sobj.is_fibration(f, _projectives(job), min(job.args.trunc, f.trunc), job.args.budget)
    return res["status"], res, {}


def cmd_weq(job):
    f = job.obj()
    if isinstance(f, SSetMap):
        v = weq_oracle(f, job.args.trunc)
        return v.verdict, v.to_json(), {}
    t = min(job.args.trunc, f.trunc - 1)
    res = sobj.is_weq(f, _projectives(job), t)
    return res["status"], res, {}


def cmd_hocolim(job):
    d = job.obj()
    t = job.args.trunc
    if d.kind == "sobj":
        x = hl.hocolim(d, t)
        return "pass", {"object": dump(x), "counts": x.counts(),
                        "warnings": hl.hocolim_warnings(d)}, {}
    x = hl.hocolim(d, t)
    co = hl.coend_oracle(d, t)
    iso = find_isomorphism(x, co)
    cert = {"coend": dump(co), "iso": core.map_to_json(iso) if iso is not None else None}
    return ("pass" if iso is not None else "fail"), _stamp(x, t), cert


def cmd_holim(job):
    d = job.obj()
    t = job.args.trunc
    if d.kind == "sobj":
        x = hl.holim(d, t)
        return "pass", {"object": dump(x), "counts": x.counts()}, {}
    warnings = hl.holim_warnings(d, t)
    x = hl.holim(d, t)
    return ("inconclusive" if warnings else "pass"), {**_stamp(x, t), "warnings": warnings}, {}


def cmd_kan(job):
    d = job.obj()
    a = job.args
    if "functor" not in job.aux:
        raise InputError("kan needs --functor")
    F = load(job.aux["functor"], "functor")
    if F.source != d.shape:
        raise InputError("the functor's source is not the diagram's shape")
    ext = (hl.hokan_left if a.side == "left" else hl.hokan_right)(F, d, a.trunc)
    values = {}
    for j in sorted(ext.values):
        v = ext.values[j]
        values[j] = _stamp(v, a.trunc) if isinstance(v, FinSimplicialSet) else {"object": dump(v),
                                                                                 "counts": v.counts()}
    arrows = {f: core.map_to_json(m) for f, m in sorted(ext.arrows.items())}
    return "pass", {"side": a.side, "values": values, "arrows": arrows}, {}


COMMANDS = {
    "validate": (cmd_validate, 1, None),
    "nerve": (cmd_nerve, 1, "category"),
    "lift": (cmd_lift, 1, "square"),
    "classify": (cmd_classify, 1, ("sset_map", "set_map", "family_map")),
    "factor": (cmd_factor, 1, ("sset_map", "set_map", "family_map")),
    "boxcheck": (cmd_boxcheck, 3, ("sset_map", "set_map")),
    "extensive": (cmd_extensive, 0, None),
    "cofibrant": (cmd_cofibrant, 1, "sobj"),
    "reedy": (cmd_reedy, 1, "sobj_map"),
    "fib": (cmd_fib, 1, ("sset_map", "sobj_map")),
    "weq": (cmd_weq, 1, ("sset_map", "sobj_map")),
    "hocolim": (cmd_hocolim, 1, "diagram"),
    "holim": (cmd_holim, 1, "diagram"),
    "kan": (cmd_kan, 1, "diagram"),
}


# -- verification ---------------------------------------------------------------------------------

class Tampered(Exception):
    def __init__(self, location, detail):
        super().__init__(f"{location}: {detail}")
        self.location = location


def _require(cond, location, detail):
    if not cond:
        raise Tampered(location, detail)


def _load_at(data, location, kind=None):
    try:
        return load(data, kind)
    except InputError as exc:
        raise Tampered(location, str(exc)) from None


def _injective_components(m) -> bool:
    ys = [y for _, y in m.index_map]
    return len(set(ys)) == len(ys) and all(
        len(set(c.mapping.values())) == len(c.source) == len(c.target) for _, c in m.components)


def _verify_lift(report):
    cert = report["certificate"]
    sq = _load_at(cert["square"], "certificate.square", "square")
    if report["status"] != "pass":
        _require(cert.get("sigma") is None, "certificate.sigma", "negative verdict carries a lift")
        return
    sigma = _load_at(cert["sigma"], "certificate.sigma")
    _require(wfs.same_map(sq.lam.then(sigma), sq.top), "certificate.sigma", "upper triangle fails")
    _require(wfs.same_map(sigma.then(sq.rho), sq.bottom), "certificate.sigma", "lower triangle fails")


def _verify_factor(report):
    cert = report["certificate"]
    m = _load_at(cert["map"], "certificate.map")
    left = _load_at(cert["left"], "certificate.left")
    right = _load_at(cert["right"], "certificate.right")
    _require(wfs.same_map(left.then(right), m), "certificate.left", "legs do not compose to the input")
    if report["result"]["mode"] == "projective":
        _require(wfs.classify(left, "coprod_injection").holds, "certificate.left",
                 "left leg is not a coproduct injection")
        if report["status"] == "pass" and "lifts" in cert:
            _verify_projective_lifts(cert, m, right)
        elif report["status"] == "pass":
            s = cert.get("section")
            _require(s is not None, "certificate.section", "missing section")
            s = _load_at(s, "certificate.section")
            _require(wfs.same_map(s.then(right), wfs.identity_of(m.target)), "certificate.section",
                     "section does not split the right leg")
    else:
        _require(wfs.classify(left, "mono").holds, "certificate.left", "left leg is not a monomorphism")


def _verify_projective_lifts(cert, m, right):
    projs = [_load_at(p, f"certificate.projectives[{k}]", "sset") for k, p in enumerate(cert["projectives"])]
    seen = set()
    for n, (k, y, lift) in enumerate(cert["lifts"]):
        loc = f"certificate.lifts[{n}]"
        _require(lift is not None, loc, "a map from a projective has no lift")
        y, lift = _load_at(y, loc, "sset_map"), _load_at(lift, loc, "sset_map")
        _require(y.source == projs[k] and y.target == m.target, loc, "map has the wrong type")
        _require(wfs.same_map(lift.then(right), y), loc, "lift does not cover the map")
        seen.add((k, tuple(sorted(y.assign.items()))))
    for k, p in enumerate(projs):
        for y in iter_maps(p, m.target):
            _require((k, tuple(sorted(y.assign.items()))) in seen, "certificate.lifts",
                     "a map from a projective is not covered")


def _same_family(a, b) -> bool:
    """Equal encoded families up to the order of indices and elements."""
    def norm(d):
        return {str(x): sorted(json.dumps(e) for e in d["family"][x]) for x in d["index"]}
    return isinstance(a, dict) and isinstance(b, dict) and norm(a) == norm(b)


def _verify_reedy(report):
    cert = report["certificate"]
    f = _load_at(cert["map"], "certificate.map", "sobj_map")
    left = _load_at(cert["left"], "certificate.left", "sobj_map")
    right = _load_at(cert["right"], "certificate.right", "sobj_map")
    T = left.source.trunc
    for n in range(T + 1):
        _require(left.maps[n].then(right.maps[n]) == f.maps[n], f"certificate.left.levels[{n}]",
                 "legs do not compose to the input")
        _require(_injective_components(left.maps[n]), f"certificate.left.levels[{n}]",
                 "not a coproduct injection")
    for n, s in enumerate(cert["sections"]):
        loc = f"certificate.sections[{n}]"
        _require(isinstance(s, dict), loc, "no section")
        corner = json.loads(json.dumps(dump(sobj.matching_corner(right, n)[0])))
        _require(_same_family(s.get("source"), corner["target"]) and _same_family(s.get("target"), corner["source"]),
                 loc, "section has the wrong endpoints")
        try:
            for x in s["source"]["index"]:
                y = s["index_map"][x]
                _require(corner["index_map"][y] == x, loc, f"index {x} is not fixed")
                for e in s["source"]["family"][x]:
                    e1 = s["components"][x][str(e)]
                    _require(corner["components"][y][e1] == str(e), loc, f"element {e} of {x} is not fixed")
        except KeyError as exc:
            raise Tampered(loc, f"missing entry {exc}") from None


def _verify_cofibrant(report):
    cert = report["certificate"]
    x = _load_at(cert["object"], "certificate.object", "sobj")
    dec = cert["decomposition"]
    if not dec["holds"]:
        _require(not report["result"]["rlp"] or report["status"] == "inconclusive", "result.rlp",
                 "deciders disagree without being flagged")
        return
    from .sset import ops
    for n, lv in enumerate(dec["levels"]):
        index = {str(y): y for y in x.levels[n].index}
        nd = {str(y) for y in lv["nd"]}
        deg = lv["deg"]
        _require(nd.isdisjoint(deg) and nd | set(deg) == set(index), f"certificate.decomposition.levels[{n}]",
                 "nondegenerate and degenerate parts do not split the level")
        for z, (word, k, y) in deg.items():
            th = ops.parse_word(word, k)
            m = x.op(th, k)
            yk = {str(v): v for v in x.levels[k].index}[str(y)]
            _require(str(m.phi(yk)) == z and len(set(m.comp(yk).mapping.values())) == len(x.levels[k][yk])
                     == len(x.levels[n][index[z]]), f"certificate.decomposition.levels[{n}].deg.{z}",
                     "degenerate component is not a copy")


def _verify_hocolim(report):
    cert, result = report["certificate"], report["result"]
    if "sset" not in result:
        return
    x = _load_at(result["sset"], "result.sset", "sset")
    _require(x.counts() == result["counts"], "result.counts", "counts do not match the simplicial set")
    _require(_profile(x, max(report["params"]["trunc"] - 1, 0)) == result["homology"], "result.homology",
             "homology does not match the simplicial set")
    if report["status"] == "pass":
        co = _load_at(cert["coend"], "certificate.coend", "sset")
        try:
            iso = core.map_from_json(cert["iso"], x, co)
        except (WfskitError, KeyError, TypeError, ValueError) as exc:
            raise Tampered("certificate.iso", str(exc)) from None
        images = [h for s, h in iso.assign.values()]
        _require(all(len(s) - 1 == x.gens[g] for g, (s, h) in iso.assign.items()), "certificate.iso",
                 "a generator is sent to a degenerate simplex")
        _require(len(set(images)) == len(images) == len(co.gens), "certificate.iso", "not a bijection")


def _verify_stamps(report):
    for loc, v in _stamped(report["result"]):
        x = _load_at(v["sset"], loc + ".sset", "sset")
        _require(x.counts() == v["counts"], loc + ".counts", "counts do not match")
        _require(_profile(x, max(report["params"]["trunc"] - 1, 0)) == v["homology"], loc + ".homology",
                 "homology does not match")


def _stamped(result, loc="result"):
    if isinstance(result, dict):
        if "sset" in result and "homology" in result:
            yield loc, result
            return
        for k, v in sorted(result.items()):
            yield from _stamped(v, f"{loc}.{k}")


def _rerun(report):
    """Recompute the verdict from the embedded inputs and compare."""
    ns = argparse.Namespace(**report["params"])
    ns.command = report["command"]
    inputs = []
    for name, raw in report["inputs_data"]:
        try:
            inputs.append((name, raw, load(raw, COMMANDS[ns.command][2])))
        except InputError as exc:
            _require(ns.command == "validate", f"inputs.{name}", str(exc))
            inputs.append((name, raw, exc))
    status, result, _ = COMMANDS[report["command"]][0](Job(ns, inputs, report.get("aux_data", {})))
    _require(status == report["status"], "status", f"recomputed status is {status}")


VERIFIERS = {"lift": _verify_lift, "factor": _verify_factor, "reedy": _verify_reedy,
             "cofibrant": _verify_cofibrant, "hocolim": _verify_hocolim, "holim": _verify_stamps,
             "kan": _verify_stamps, "nerve": _verify_stamps}


def verify_report(report) -> tuple:
    """``(exit code, message)``."""
    if not isinstance(report, dict) or report.get("schema") != SCHEMA:
        return 3, "not a wfskit/1 report"
    try:
        for (name, raw), (name2, digest) in zip(report["inputs_data"], report["inputs"]):
            _require(name == name2 and content_hash(raw) == digest, f"inputs.{name}", "content hash mismatch")
        for name, raw in report.get("aux_data", {}).items():
            _require(content_hash(raw) == report["aux"].get(name), f"aux.{name}", "content hash mismatch")
        cmd = report["command"]
        _require(cmd in COMMANDS, "command", "unknown command")
        _require(EXIT.get(report["status"]) == report["exit"], "exit", "exit code does not match the status")
        if cmd in VERIFIERS:
            VERIFIERS[cmd](report)
        if cmd not in ("lift", "factor", "reedy", "hocolim"):
            _rerun(report)
    except Tampered as exc:
        return 1, str(exc)
    except (KeyError, TypeError, ValueError) as exc:
        return 1, f"report structure: {exc!r}"
    if report["status"] in ("partial", "budget", "inconclusive"):
        return 2, f"certificates check; verdict is {report['status']}"
    return 0, "all certificates check"


# -- driver ---------------------------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="wfskit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--trunc", type=int, default=3)
        sp.add_argument("--stages", type=int, default=5)
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--projectives", default=None)
        sp.add_argument("--out", default=None)
        sp.add_argument("-v", "--verbose", action="store_true")

    for name, (_, arity, _) in COMMANDS.items():
        sp = sub.add_parser(name)
        common(sp)
        if arity:
            sp.add_argument("inputs", nargs=arity)
        else:
            sp.set_defaults(inputs=[])
        if name == "classify":
            sp.add_argument("--class", dest="cls", choices=wfs.CLASS_NAMES, default=None)
        if name == "factor":
            sp.add_argument("--mode", choices=["projective", "soa"], default="projective")
            sp.add_argument("--family", choices=sorted(wfs.FAMILIES), default="boundary")
        if name == "extensive":
            sp.add_argument("--base", choices=["finset", "coprod", "pointed-join"], default="finset")
        if name == "kan":
            sp.add_argument("--side", choices=["left", "right"], default="left")
            sp.add_argument("--functor", default=None)
    sp = sub.add_parser("verify")
    sp.add_argument("report")
    sp.add_argument("-v", "--verbose", action="store_true")
    return p


def run(args) -> tuple:
    """``(exit code, report)``; the report is ``None`` for input errors raised before dispatch."""
    fn, _, kind = COMMANDS[args.command]
    inputs = []
    for path in args.inputs:
        raw = read_json(path)
        try:
            obj = load(raw, kind)
        except InputError as exc:
            if args.command != "validate":
                raise
            obj = exc
        inputs.append((os.path.basename(path), raw, obj))
    aux = {}
    for opt in ("projectives", "functor"):
        if getattr(args, opt, None):
            aux[opt] = read_json(getattr(args, opt))
    status, result, cert = fn(Job(args, inputs, aux))
    params = {"trunc": args.trunc, "stages": args.stages, "budget": args.budget, "seed": args.seed}
    for extra in ("cls", "mode", "family", "base", "side"):
        if hasattr(args, extra):
            params[extra] = getattr(args, extra)
    report = {"schema": SCHEMA, "command": args.command, "status": status, "exit": EXIT[status],
              "params": params, "inputs": [[n, content_hash(r)] for n, r, _ in inputs],
              "inputs_data": [[n, r] for n, r, _ in inputs],
              "aux": {k: content_hash(v) for k, v in sorted(aux.items())}, "aux_data": aux,
              "result": result, "certificate": cert}
    return EXIT[status], report


def render(report) -> str:
    return json.dumps(report, sort_keys=True, indent=1) + "\n"


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".wfskit-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def summary(report) -> str:
    r = report["result"]
    bits = [f"{report['command']}: {report['status']} (exit {report['exit']})"]
    if isinstance(r, dict):
        if "homology" in r:
            prof = r["homology"]
            bits.append(" ".join(f"H{g['degree']}={g['betti']}" + (f"+T{g['torsion']}" if g["torsion"] else "")
                                 for g in prof["groups"]) + f" (through degree {prof['truncation']})")
        if "counts" in r:
            bits.append(f"counts {r['counts']}")
    return "; ".join(bits)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(message)s")
    if args.command == "verify":
        try:
            report = read_json(args.report)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        code, msg = verify_report(report)
        print(f"verify: {msg} (exit {code})")
        return code
    try:
        code, report = run(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 3
    except WfskitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    text = render(report)
    if args.out:
        write_atomic(args.out, text)
        print(summary(report))
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
