"""Lifting calculus: lifting problems, box products, morphism classes and factorizations.

Morphisms live in one of three finite ambients: ``FinSet`` (:class:`SetMap`),
simplicial sets (:class:`SSetMap`) and the free coproduct completion
(:class:`wfskit.coprod.CoprodMorphism`).  Functions dispatch on the type.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from . import finset
from .errors import BudgetExceeded, ShapeError, Unsupported
from .finset import SetMap
from .sset import ops
from .sset.core import (FinSimplicialSet, SSetMap, boundary_inclusion, delta, identity_map,
                        canonical, empty, horn_inclusion, inclusion, terminal_map)
from .sset.homotopy import (HomSpace, Square, boundary_family, horn_family, mapping_space_data,
                            postcompose, precompose, squares)
from .sset.limits import coproduct, product, product_map, pullback, pushout, quotient
from .sset.search import DEFAULT_BUDGET, Counter, find_isomorphism, iter_maps, is_epi, is_mono


def ambient(m) -> str:
    if isinstance(m, SSetMap):
        return "sset"
    if isinstance(m, SetMap):
        return "finset"
    from .coprod import CoprodMorphism
    if isinstance(m, CoprodMorphism):
        return "coprod"
    raise Unsupported(f"no ambient category for {type(m).__name__}")


def _table(m):
    return m.assign if isinstance(m, SSetMap) else m.mapping if isinstance(m, SetMap) else m


def same_map(a, b) -> bool:
    return _table(a) == _table(b)


def compose(g, f):
    """``g o f`` in any ambient."""
    return f.then(g)


def identity_of(obj):
    if isinstance(obj, FinSimplicialSet):
        return identity_map(obj)
    if isinstance(obj, tuple):
        return finset.identity(obj)
    from .coprod import CoprodObject, identity as cid
    if isinstance(obj, CoprodObject):
        return cid(obj)
    raise Unsupported(f"no identity for {type(obj).__name__}")


# -- lifting problems --------------------------------------------------------

@dataclass
class LiftingSquare:
    """``bottom o lam == rho o top``."""

    lam: object
    rho: object
    top: object
    bottom: object

    def commutes(self) -> bool:
        return same_map(self.lam.then(self.bottom), self.top.then(self.rho))


@dataclass
class LiftResult:
    status: str  # "lift" | "none" | "budget"
    sigma: object = None
    explored: int = 0

    @property
    def found(self):
        return self.status == "lift"


def verify_lift(sq: LiftingSquare, sigma) -> bool:
    """Re-check both triangles by composition."""
    return same_map(sq.lam.then(sigma), sq.top) and same_map(sigma.then(sq.rho), sq.bottom)


def _finset_lifts(sq: LiftingSquare, counter: Counter):
    fixed = {}
    for a in sq.lam.source:
        b, x = sq.lam(a), sq.top(a)
        if fixed.setdefault(b, x) != x:
            return
    free = [b for b in sq.lam.target if b not in fixed]
    options = [[x for x in sq.rho.source if sq.rho(x) == sq.bottom(b)] for b in free]

    def walk(k, m):
        if k == len(free):
            yield SetMap(sq.lam.target, sq.rho.source, m, check=False)
            return
        for x in options[k]:
            counter.tick()
            m[free[k]] = x
            yield from walk(k + 1, m)
        m.pop(free[k], None)

    for b, x in fixed.items():
        if sq.rho(x) != sq.bottom(b):
            return
    yield from walk(0, dict(fixed))


def iter_lifts(sq: LiftingSquare, counter: Counter | None = None):
    counter = counter or Counter()
    kind = ambient(sq.lam)
    if kind == "sset":
        from .sset.homotopy import lifts
        return lifts(Square(sq.lam, sq.rho, sq.top, sq.bottom), counter)
    if kind == "finset":
        return _finset_lifts(sq, counter)
    from .coprod import iter_lifts as clifts
    return clifts(sq, counter)


def solve_lifting(sq: LiftingSquare, budget=DEFAULT_BUDGET) -> LiftResult:
    """Find a diagonal filler or prove there is none by exhausting the search."""
    if not sq.commutes():
        raise ShapeError("lifting square does not commute")
    counter = Counter(budget)
    try:
        sigma = next(iter(iter_lifts(sq, counter)), None)
    except BudgetExceeded:
        return LiftResult("budget", None, counter.explored)
    if sigma is None:
        return LiftResult("none", None, counter.explored)
    if not verify_lift(sq, sigma):  # pragma: no cover - search invariant
        raise AssertionError("search returned an invalid lift")
    return LiftResult("lift", sigma, counter.explored)


def iter_squares(lam, rho, counter: Counter | None = None):
    kind = ambient(lam)
    if kind == "sset":
        for s in squares(lam, rho, counter):
            yield LiftingSquare(lam, rho, s.top, s.bottom)
    elif kind == "finset":
        for bottom in finset.functions(lam.target, rho.target):
            want = lam.then(bottom)
            fixed_ok = True
            opts = []
            for a in lam.source:
                opts.append([x for x in rho.source if rho(x) == want(a)])
                fixed_ok = fixed_ok and bool(opts[-1])
            if not fixed_ok:
                continue
            from itertools import product as iproduct
            for vals in iproduct(*opts):
                if counter:
                    counter.tick()
                yield LiftingSquare(lam, rho, SetMap(lam.source, rho.source, dict(zip(lam.source, vals)),
                                                     check=False), bottom)
    else:
        from .coprod import iter_squares as csq
        yield from csq(lam, rho, counter)


@dataclass
class LiftingVerdict:
    status: str  # "pass" | "fail" | "budget"
    checked: int = 0
    explored: int = 0
    failing: LiftingSquare | None = None
    witnesses: list = field(default_factory=list)

    @property
    def holds(self):
        return self.status == "pass"


def lifts_against(lam, rho, budget=DEFAULT_BUDGET, keep_witnesses=False) -> LiftingVerdict:
    """Decide ``lam □ rho`` by solving every commuting square."""
    counter = Counter(budget)
    out = LiftingVerdict("pass")
    try:
        for sq in iter_squares(lam, rho, counter):
            out.checked += 1
            sigma = next(iter(iter_lifts(sq, counter)), None)
            if sigma is None:
                out.status, out.failing = "fail", sq
                break
            if keep_witnesses:
                out.witnesses.append((sq, sigma))
    except BudgetExceeded:
        out.status = "budget"
    out.explored = counter.explored
    return out


def has_rlp(f, generators, dim=None, budget=DEFAULT_BUDGET) -> LiftingVerdict:
    out = LiftingVerdict("pass")
    for lam in generators:
        if dim is not None and isinstance(lam, SSetMap) and lam.target.dim > dim:
            continue
        v = lifts_against(lam, f, budget)
        out.checked += v.checked
        out.explored += v.explored
        if not v.holds:
            v.checked, v.explored = out.checked, out.explored
            return v
    return out


# -- box products ---------------------------------------------------------------------

@dataclass
class Corner:
    """A corner map with the pieces it was built from."""

    corner: object
    legs: tuple = ()
    note: str = ""


def discrete(points) -> FinSimplicialSet:
    """A finite set as a discrete simplicial set (generator ``repr`` of each point)."""
    return FinSimplicialSet({_pt(p): 0 for p in finset.fset(points)}, {}, check=False)


def _pt(p) -> str:
    return p if isinstance(p, str) else repr(p)


def discrete_map(f: SetMap) -> SSetMap:
    return SSetMap(discrete(f.source), discrete(f.target),
                   {_pt(a): ((0,), _pt(b)) for a, b in f.mapping.items()}, check=False)


def _ident(x):
    return identity_map(x)


def box_product(f: SSetMap, g: SSetMap) -> Corner:
    """``A x L  +_{A x K}  B x K  ->  B x L`` for ``f: A -> B``, ``g: K -> L``."""
    A, B, K, L = f.source, f.target, g.source, g.target
    AK, BK, AL, BL = product(A, K), product(B, K), product(A, L), product(B, L)
    fK = product_map(f, _ident(K), AK, BK)
    Ag = product_map(_ident(A), g, AK, AL)
    Bg = product_map(_ident(B), g, BK, BL)
    fL = product_map(f, _ident(L), AL, BL)
    cover, (j1, j2) = coproduct([BK[0], AL[0]], tags=["0", "1"])
    pairs = [(j1(fK.assign[w]), j2(Ag.assign[w])) for w in AK[0].generators()]
    q, proj = quotient(cover, pairs)
    h = {}
    for w, (s, c) in j1.assign.items():
        h[c] = Bg.assign[w]
    for w, (s, c) in j2.assign.items():
        h[c] = fL.assign[w]
    corner = SSetMap(q, BL[0], {g_: h[g_] for g_ in q.gens}, check=False)
    return Corner(corner, (j1.then(proj), j2.then(proj)))


def box_pushout(f, g, bifunctor: str = "product") -> Corner:
    """Corner map of a left adjoint of two variables.

    ``product``: both arguments are simplicial maps.  ``tensor``: ``f`` is a
    map of finite sets ``P -> Q`` and ``g`` a simplicial map, with
    ``P (x) K`` the ``P``-fold coproduct of ``K``.
    """
    if bifunctor == "product":
        if not (isinstance(f, SSetMap) and isinstance(g, SSetMap)):
            raise ShapeError("the product corner needs two simplicial maps")
        return box_product(f, g)
    if bifunctor == "tensor":
        if not (isinstance(f, SetMap) and isinstance(g, SSetMap)):
            raise ShapeError("the tensor corner needs a map of sets and a simplicial map")
        return box_product(discrete_map(f), g)
    raise ShapeError(f"unknown bifunctor {bifunctor!r}")


def power(x: FinSimplicialSet, points):
    """``x^P`` as an iterated product; returns ``(X^P, projections by point)``."""
    points = list(finset.fset(points))
    if not points:
        return delta(0), {}
    obj, projs = x, {points[0]: identity_map(x)}
    for p in points[1:]:
        prod, p1, p2 = product(obj, x)
        projs = {q: p1.then(m) for q, m in projs.items()}
        projs[p] = p2
        obj = prod
    return obj, projs


def _tuple_into(maps: dict, pw) -> SSetMap:
    """Pairing ``W -> X^P`` from maps indexed by the points of ``P``."""
    obj, projs = pw
    points = list(projs)
    src = next(iter(maps.values())).source if maps else None
    if not points:
        raise ShapeError("use a terminal map into X^0")
    acc = maps[points[0]]
    cur = acc.target
    for p in points[1:]:
        prod = product(cur, maps[p].target)[0]
        from .sset.limits import pairing
        acc = pairing(acc, maps[p], prod)
        cur = prod
    return SSetMap(src, obj, acc.assign, check=False)


def power_map(x: FinSimplicialSet, f: SetMap, pw_src=None, pw_tgt=None) -> SSetMap:
    """``x^f: x^Q -> x^P`` for ``f: P -> Q``."""
    src = pw_src or power(x, f.target)
    tgt = pw_tgt or power(x, f.source)
    if not f.source:
        return terminal_map(src[0])
    return _tuple_into({p: src[1][f(p)] for p in f.source}, tgt)


def power_of_map(h: SSetMap, points, pw_src=None, pw_tgt=None) -> SSetMap:
    """``h^P: X^P -> Y^P``."""
    src = pw_src or power(h.source, points)
    tgt = pw_tgt or power(h.target, points)
    if not src[1]:
        return identity_map(src[0])
    return _tuple_into({p: m.then(h) for p, m in src[1].items()}, tgt)


def _corner_pullback(top_left, right, bottom):
    """Corner ``W -> X x_Z Y`` from ``top_left: W -> X``, ``right: X -> Z``, ``bottom: Y -> Z`` and
    ``W -> Y`` supplied as ``top_left[1]``."""
    (w_to_x, w_to_y) = top_left
    P, p1, p2 = pullback(right, bottom)
    from .sset.limits import normalize_pair, pair_name
    assign = {}
    for w in w_to_x.source.gens:
        eps, xa, ya = normalize_pair(w_to_x.assign[w], w_to_y.assign[w])
        assign[w] = (eps, pair_name(xa, ya))
    return SSetMap(w_to_x.source, P, assign, check=False), P, p1, p2


def box_hom(f, g, hom: str = "map", dim: int = 3) -> Corner:
    """Corner map ``H(B, X) -> H(A, X) x_{H(A, Y)} H(B, Y)`` of a right adjoint.

    ``map``: the simplicial mapping space, truncated at ``dim``.
    ``left``: the set of simplicial maps (right adjoint of the tensor in its
    first variable); the result is a map of finite sets.
    ``power``: ``f`` is a map of finite sets ``P -> Q`` and the corner is
    ``X^Q -> X^P x_{Y^P} Y^Q``.
    """
    if hom == "map":
        A, B, X, Y = f.source, f.target, g.source, g.target
        BX, AX = mapping_space_data(B, X, dim), mapping_space_data(A, X, dim)
        BY, AY = mapping_space_data(B, Y, dim), mapping_space_data(A, Y, dim)
        r1 = precompose(BX, AX, f)
        r2 = postcompose(BX, BY, g)
        right = postcompose(AX, AY, g)
        bottom = precompose(BY, AY, f)
        corner, P, p1, p2 = _corner_pullback((r1, r2), right, bottom)
        return Corner(corner, (p1, p2), f"truncated at dimension {dim}")
    if hom == "left":
        A, B, X, Y = f.source, f.target, g.source, g.target
        hbx = [_key(m) for m in iter_maps(B, X)]
        pairs = []
        for u in iter_maps(A, X):
            for v in iter_maps(B, Y):
                if u.then(g).assign == f.then(v).assign:
                    pairs.append((_key(u), _key(v)))
        mapping = {}
        for t in hbx:
            m = SSetMap(B, X, dict(t), check=False)
            mapping[t] = (_key(f.then(m)), _key(m.then(g)))
        return Corner(SetMap(hbx, pairs, mapping, check=False))
    if hom == "power":
        P, Q = f.source, f.target
        X, Y = g.source, g.target
        XQ, XP, YP, YQ = power(X, Q), power(X, P), power(Y, P), power(Y, Q)
        r1 = power_map(X, f, XQ, XP)
        r2 = power_of_map(g, Q, XQ, YQ)
        right = power_of_map(g, P, XP, YP)
        bottom = power_map(Y, f, YQ, YP)
        corner, Pb, p1, p2 = _corner_pullback((r1, r2), right, bottom)
        return Corner(corner, (p1, p2))
    raise ShapeError(f"unknown hom {hom!r}")


def _key(m: SSetMap):
    return tuple(sorted(m.assign.items()))


@dataclass
class AdjunctionReport:
    verdicts: tuple
    agree: bool
    bifunctor: str

    def to_json(self):
        return {"bifunctor": self.bifunctor, "verdicts": list(self.verdicts), "agree": self.agree}


def check_adjunction_correspondence(f, g, h, bifunctor: str = "product",
                                    budget=DEFAULT_BUDGET) -> AdjunctionReport:
    """Compare ``box(f, g) □ h``, ``f □ boxhom(g, h)`` and ``g □ boxhom(f, h)``.

    ``product`` uses the cartesian product with mapping spaces on both sides;
    ``tensor`` uses the tensoring of simplicial sets over finite sets, with
    the set of maps and the power as right adjoints.
    """
    if bifunctor == "product":
        v1 = lifts_against(box_pushout(f, g, "product").corner, h, budget).status
        # squares out of f see simplices of both its source and target
        v2 = lifts_against(f, box_hom(g, h, "map", max(f.source.dim, f.target.dim, 0)).corner, budget).status
        v3 = lifts_against(g, box_hom(f, h, "map", max(g.source.dim, g.target.dim, 0)).corner, budget).status
    elif bifunctor == "tensor":
        v1 = lifts_against(box_pushout(f, g, "tensor").corner, h, budget).status
        v2 = lifts_against(f, box_hom(g, h, "left").corner, budget).status
        v3 = lifts_against(g, box_hom(f, h, "power").corner, budget).status
    else:
        raise ShapeError(f"unknown bifunctor {bifunctor!r}")
    verdicts = (v1, v2, v3)
    conclusive = "budget" not in verdicts
    return AdjunctionReport(verdicts, conclusive and len(set(verdicts)) == 1, bifunctor)


# -- morphism classes ------------------------------------------------------------------

CLASS_NAMES = ("mono", "split_mono", "eff_mono", "epi", "split_epi", "eff_epi", "coprod_injection")


@dataclass
class Classification:
    holds: bool
    witness: object = None
    note: str = ""


@dataclass
class MorphismClassSpec:
    name: str
    predicate: Callable | None = None
    generators: list | None = None

    def contains(self, m) -> bool:
        if self.predicate is not None:
            return bool(self.predicate(m))
        return classify(m, self.name).holds


@dataclass
class WfsSpec:
    left: MorphismClassSpec
    right: MorphismClassSpec
    flavor: str = "custom"  # projective_type | injective_type | generated | custom


def sections(m, counter=None):
    """Maps ``s`` with ``m o s == id``."""
    kind = ambient(m)
    if kind == "sset":
        return iter_maps(m.target, m.source, over=[(m, identity_map(m.target))], counter=counter)
    if kind == "finset":
        s = finset.section(m)
        return iter([s] if s is not None else [])
    from .coprod import sections as cs
    return cs(m, counter)


def retractions(m, counter=None):
    """Maps ``r`` with ``r o m == id``."""
    kind = ambient(m)
    if kind == "sset":
        return iter_maps(m.target, m.source, under=[(m, identity_map(m.source))], counter=counter)
    if kind == "finset":
        r = finset.retraction(m)
        return iter([r] if r is not None else [])
    from .coprod import retractions as cr
    return cr(m, counter)


def _sset_complement_closed(m: SSetMap) -> bool:
    image = {h for _, h in m.assign.values()}
    rest = [g for g in m.target.gens if g not in image]
    return all(h not in image for g in rest for _, h in m.target.faces.get(g, ()))


def classify(m, name: str) -> Classification:
    """Decide membership of ``m`` in one of the named classes."""
    if name not in CLASS_NAMES:
        raise Unsupported(f"unknown class {name!r}")
    kind = ambient(m)
    if kind == "coprod":
        from .coprod import classify as cc
        return cc(m, name)
    if kind == "finset":
        inj, sur = finset.is_injective(m), finset.is_surjective(m)
        if name in ("mono", "eff_mono", "coprod_injection"):
            return Classification(inj)
        if name in ("epi", "eff_epi"):
            return Classification(sur)
        if name == "split_epi":
            s = finset.section(m)
            return Classification(s is not None, s)
        r = finset.retraction(m)
        return Classification(r is not None, r)
    mono, epi = is_mono(m), is_epi(m)
    if name in ("mono", "eff_mono"):
        return Classification(mono, note="monomorphisms of presheaves are effective")
    if name in ("epi", "eff_epi"):
        return Classification(epi, note="effective epimorphisms of presheaves are the surjections")
    if name == "coprod_injection":
        return Classification(mono and _sset_complement_closed(m))
    if name == "split_epi":
        if not epi:
            return Classification(False)
        s = next(sections(m), None)
        return Classification(s is not None, s)
    if not mono:
        return Classification(False)
    r = next(retractions(m), None)
    return Classification(r is not None, r)


# -- retracts ---------------------------------------------------------------------------

def _homs(a, b, under=(), over=(), counter=None):
    if isinstance(a, FinSimplicialSet):
        yield from iter_maps(a, b, under=under, over=over, counter=counter)
        return
    for m in finset.functions(a, b):
        if counter:
            counter.tick()
        if all(same_map(lam.then(m), tau) for lam, tau in under) and \
                all(same_map(m.then(rho), beta) for rho, beta in over):
            yield m


@dataclass
class RetractWitness:
    i: object
    r: object
    j: object
    s: object


def verify_retract(f, g, w: RetractWitness) -> bool:
    return (same_map(w.i.then(w.r), identity_of(f.source)) and same_map(w.j.then(w.s), identity_of(f.target))
            and same_map(w.i.then(g), f.then(w.j)) and same_map(w.r.then(f), g.then(w.s)))


def is_retract(f, g, budget=DEFAULT_BUDGET) -> Classification:
    """Is ``f: A -> B`` a retract of ``g: X -> Y`` in the arrow category?"""
    if ambient(f) != ambient(g) or ambient(f) == "coprod":
        raise Unsupported("retract search needs two maps in FinSet or simplicial sets")
    counter = Counter(budget)
    A, B, X, Y = f.source, f.target, g.source, g.target
    try:
        for j in _homs(B, Y, counter=counter):
            for s in _homs(Y, B, under=[(j, identity_of(B))], counter=counter):
                for i in _homs(A, X, over=[(g, f.then(j))], counter=counter):
                    for r in _homs(X, A, under=[(i, identity_of(A))], over=[(f, g.then(s))], counter=counter):
                        return Classification(True, RetractWitness(i, r, j, s))
    except BudgetExceeded:
        return Classification(False, None, "budget")
    return Classification(False, None, f"exhausted after {counter.explored} partial assignments")


def isomorphic_arrows(f: SSetMap, g: SSetMap):
    """Isomorphisms ``(a, b)`` with ``g o a == b o f``, or ``None``."""
    if find_isomorphism(f.target, g.target) is None or find_isomorphism(f.source, g.source) is None:
        return None
    if f.target.counts() != g.target.counts():
        return None
    for b in iter_maps(f.target, g.target, injective=True):
        a = next(iter_maps(f.source, g.source, injective=True, over=[(g, f.then(b))]), None)
        if a is not None:
            return a, b
    return None


# -- factorizations --------------------------------------------------------------------------

@dataclass
class Factorization:
    left: object
    right: object
    middle: object = None
    log: list = field(default_factory=list)
    partial: bool = False
    stages: int = 0
    verdict: str = ""


def factor_projective_type(m, projectives=None, budget=DEFAULT_BUDGET) -> Factorization:
    """Factor ``m: X -> Y`` as ``X -> X + P -> Y`` with ``P`` a coproduct of projectives.

    In ``FinSet`` and in the free coproduct completion every object is a
    coproduct of projectives, so ``P = Y`` and the right leg is the fold map.
    For simplicial sets ``projectives`` lists the objects ``P`` generating the
    left class by ``0 -> P``; a copy of ``P`` is added for every map ``P -> Y``
    that does not already lift.
    """
    kind = ambient(m)
    if kind == "coprod":
        from .coprod import factor_projective as cf
        return cf(m)
    if kind == "finset":
        total, (i1, i2) = finset.coproduct([m.source, m.target])
        right = finset.copair([m, finset.identity(m.target)], total)
        fact = Factorization(i1, right, total)
        fact.verdict = "pass" if classify(right, "split_epi").holds else "fail"
        return fact
    if not projectives:
        raise Unsupported("simplicial projective-type factorization needs a list of projectives")
    counter = Counter(budget)
    pieces = [m.source]
    maps = [m]
    cur_obj, cur_map = m.source, m
    for k, P in enumerate(projectives):
        # larger images first, so that an identity covers everything it can
        ys = sorted(iter_maps(P, m.target, counter=counter),
                    key=lambda y: (-len({h for s, h in y.assign.values() if ops.is_identity(s)}), _key(y)))
        for y in ys:
            lifted = next(iter_maps(P, cur_obj, over=[(cur_map, y)], counter=counter), None)
            if lifted is not None:
                continue
            pieces.append(P)
            maps.append(y)
            cur_obj, injs = coproduct(pieces, tags=[str(i) for i in range(len(pieces))])
            cur_map = _copair(cur_obj, injs, maps, m.target)
    obj, injs = coproduct(pieces, tags=[str(i) for i in range(len(pieces))])
    right = _copair(obj, injs, maps, m.target)
    fact = Factorization(injs[0], right, obj, log=[{"added": len(pieces) - 1}])
    ok = all(next(iter_maps(P, obj, over=[(right, y)]), None) is not None
             for P in projectives for y in iter_maps(P, m.target))
    fact.verdict = "pass" if ok else "fail"
    return fact


def _copair(obj, injs, maps, target) -> SSetMap:
    assign = {}
    for inj, f in zip(injs, maps):
        for g, (_, h) in inj.assign.items():
            assign[h] = f.assign[g]
    return SSetMap(obj, target, assign, check=False)


def gz_family(dim: int) -> list:
    """Cylinder generators ``box(boundary(n) -> delta(n), {e} -> delta(1))``, ``e = 0, 1``."""
    out = []
    for n in range(dim):
        for e in (0, 1):
            end = SSetMap(delta(0), delta(1), {"0": ((0,), str(e))})
            out.append(box_product(boundary_inclusion(n), end).corner)
    return out


FAMILIES = {"boundary": boundary_family, "horn": horn_family, "gz": gz_family}


def generator_family(name: str, dim: int) -> list:
    try:
        return FAMILIES[name](dim)
    except KeyError:
        raise Unsupported(f"unknown generator family {name!r}") from None


def small_object_factorize(m: SSetMap, generators, stages: int = 5, dim: int = 3,
                           budget=DEFAULT_BUDGET) -> Factorization:
    """Stage-bounded small object argument.

    Each stage collects the lifting squares against the generators (of
    dimension ``<= dim``) that have no lift and glues in one cell per square.
    The run stops when a stage finds nothing to glue; otherwise the result
    is flagged partial once ``stages`` gluing stages have been spent.
    """
    gens = [g for g in generators if g.target.dim <= dim]
    x, right = m.source, m
    left = identity_map(m.source)
    log = []
    used = 0
    while True:
        counter = Counter(budget)
        cells = []
        try:
            for k, lam in enumerate(gens):
                for sq in squares(lam, right, counter):
                    if next(iter_maps(lam.target, right.source, under=[(lam, sq.top)],
                                      over=[(right, sq.bottom)], counter=counter), None) is None:
                        cells.append((k, sq))
        except BudgetExceeded:
            log.append({"stage": used + 1, "status": "budget", "explored": counter.explored})
            return Factorization(left, right, x, log, True, used, "budget")
        if not cells:
            break
        if used == stages:
            log.append({"stage": used + 1, "status": "not run", "pending_cells": len(cells)})
            return Factorization(left, right, x, log, True, used, "fail")
        used += 1
        x_new, attach, right = _attach_cells(x, right, gens, cells)
        left = left.then(attach)
        x = x_new
        counts: dict = {}
        for k, _ in cells:
            counts[k] = counts.get(k, 0) + 1
        log.append({"stage": used, "cells": len(cells),
                    "by_generator": {str(k): v for k, v in sorted(counts.items())},
                    "size": x.counts()})
    return Factorization(left, right, x, log, False, used, "pass")


def _attach_cells(x: SSetMap, right: SSetMap, gens, cells):
    """Pushout of ``+A_s -> +B_s`` along the tops, with the induced map to the target."""
    srcs = [gens[k].source for k, _ in cells]
    tgts = [gens[k].target for k, _ in cells]
    tags = [str(i) for i in range(len(cells))]
    sa, ia = coproduct(srcs, tags=tags)
    sb, ib = coproduct(tgts, tags=tags)
    lam_all, top_all, bottom_all = {}, {}, {}
    for (k, sq), ja, jb in zip(cells, ia, ib):
        for g, (_, h) in ja.assign.items():
            lam_all[h] = jb(sq.lam.assign[g])
            top_all[h] = sq.top.assign[g]
        for g, (_, h) in jb.assign.items():
            bottom_all[h] = sq.bottom.assign[g]
    lam = SSetMap(sa, sb, lam_all, check=False)
    top = SSetMap(sa, right.source, top_all, check=False)
    P, i_x, i_b = pushout(top, lam)
    assign = {}
    for g, (_, c) in i_x.assign.items():
        if ops.is_identity(_):
            assign[c] = right.assign[g]
    for g, (s, c) in i_b.assign.items():
        if ops.is_identity(s):
            assign.setdefault(c, bottom_all[g])
    P2, iso = canonical(P)
    new_right = SSetMap(P2, right.target, {iso.assign[g][1]: v for g, v in assign.items()}, check=False)
    return P2, i_x.then(iso), new_right
