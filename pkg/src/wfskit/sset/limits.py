"""Finite limits and colimits of finite simplicial sets.

Colimits go through :func:`quotient`, which divides a simplicial set by the
congruence generated by a list of pairs of simplices.  Products enumerate the
nondegenerate pairs directly (shuffles); pullbacks and equalizers are
subcomplexes of products.
"""
from __future__ import annotations

from ..errors import ShapeError
from . import ops
from .core import FinSimplicialSet, SSetMap, delta, from_levels, label, subcomplex


def coproduct(xs, tags=None):
    """Disjoint union; returns ``(X, injections)``.

    Generator names are kept when they are already disjoint, otherwise they
    are prefixed with ``tag:``.
    """
    xs = list(xs)
    if tags is None:
        names = [g for x in xs for g in x.gens]
        if len(names) == len(set(names)):
            tags = [None] * len(xs)
        else:
            tags = [str(k) for k in range(len(xs))]
    gens, faces, injs = {}, {}, []
    for x, t in zip(xs, tags):
        ren = (lambda g: g) if t is None else (lambda g, t=t: f"{t}:{g}")
        for g, d in x.gens.items():
            gens[ren(g)] = d
        for g, fs in x.faces.items():
            faces[ren(g)] = tuple((s, ren(h)) for s, h in fs)
        injs.append(ren)
    out = FinSimplicialSet(gens, faces, check=False)
    maps = [SSetMap(x, out, {g: out.simplex(r(g)) for g in x.gens}, check=False)
            for x, r in zip(xs, injs)]
    return out, maps


def copower(x: FinSimplicialSet, k: int):
    return coproduct([x] * k, tags=[str(i) for i in range(k)])


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, a):
        p = self.parent.setdefault(a, a)
        while p != a:
            self.parent[a] = self.parent.setdefault(p, p)
            a, p = p, self.parent[p]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _key(s):
    return (s[1], s[0])


def quotient(x: FinSimplicialSet, pairs):
    """Divide ``x`` by the congruence generated by ``pairs`` of equal-dimensional simplices.

    Returns ``(q, proj)``.  A class of the quotient is degenerate exactly
    when it contains a degenerate simplex; nondegenerate classes are named by
    the least generator they contain.
    """
    top_dim = x.dim
    ufs = [_UnionFind() for _ in range(top_dim + 1)]
    for a, b in pairs:
        n = len(a[0]) - 1
        if len(b[0]) - 1 != n:
            raise ShapeError("identified simplices have different dimensions")
        for m in range(top_dim + 1):
            for theta in ops.monotone_maps(m, n):
                ufs[m].union(_key(x.apply(theta, a)), _key(x.apply(theta, b)))
    levels, cls = [], []
    for m in range(top_dim + 1):
        uf = ufs[m]
        members: dict = {}
        for s in x.simplices(m):
            members.setdefault(uf.find(_key(s)), []).append(s)
        rep = {}
        for root, ss in members.items():
            nd = sorted(s[1] for s in ss if ops.is_identity(s[0]))
            degenerate = len(nd) < len(ss) and any(not ops.is_identity(s[0]) for s in ss)
            tag = ("d", root) if degenerate else ("n", nd[0])
            for s in ss:
                rep[s] = tag
        cls.append(rep)
        levels.append(sorted(set(rep.values())))
    first = [{t: s for s, t in sorted(c.items(), key=lambda kv: _key(kv[0]), reverse=True)}
             for c in cls]

    def face(n, i, t):
        return cls[n - 1][x.face(i, first[n][t])]

    def degen(n, j, t):
        return cls[n + 1][x.degen(j, first[n][t])]

    q, ez = from_levels(levels, face, degen, lambda t: t[1])
    proj = SSetMap(x, q, {g: ez[d][cls[d][x.simplex(g)]] for g, d in x.gens.items()}, check=False)
    return q, proj


def pushout(f: SSetMap, g: SSetMap):
    """Pushout of the span ``B <-f- A -g-> C``; returns ``(P, iB, iC)``."""
    if f.source != g.source:
        raise ShapeError("pushout needs a span with a common source")
    s, (ib, ic) = coproduct([f.target, g.target])
    q, proj = quotient(s, [(ib(f.assign[a]), ic(g.assign[a])) for a in f.source.generators()])
    return q, ib.then(proj), ic.then(proj)


def coequalizer(f: SSetMap, g: SSetMap):
    if f.source != g.source or f.target != g.target:
        raise ShapeError("coequalizer needs parallel maps")
    return quotient(f.target, [(f.assign[a], g.assign[a]) for a in f.source.generators()])


def pair_name(x, y) -> str:
    return f"({label(x)},{label(y)})"


def normalize_pair(x, y):
    """Eilenberg-Zilber form of the pair ``(x, y)`` of ``n``-simplices in a product."""
    n = len(x[0]) - 1
    common = ops.repeats(x[0]) & ops.repeats(y[0])
    eps = ops.collapse(common, n)
    xa = (ops.factor_through(x[0], eps), x[1])
    ya = (ops.factor_through(y[0], eps), y[1])
    return eps, xa, ya


def product(x: FinSimplicialSet, y: FinSimplicialSet):
    """Cartesian product; returns ``(P, p1, p2)``."""
    gens, faces, parts = {}, {}, {}
    for gx in x.generators():
        p = x.gens[gx]
        for gy in y.generators():
            q = y.gens[gy]
            for n in range(max(p, q), p + q + 1):
                for sx in ops.surjections(n, p):
                    rx = ops.repeats(sx)
                    for sy in ops.surjections(n, q):
                        if rx & ops.repeats(sy):
                            continue
                        a, b = (sx, gx), (sy, gy)
                        name = pair_name(a, b)
                        gens[name] = n
                        parts[name] = (a, b)
    for name, (a, b) in parts.items():
        n = gens[name]
        if n:
            fs = []
            for i in range(n + 1):
                eps, xa, ya = normalize_pair(x.face(i, a), y.face(i, b))
                fs.append((eps, pair_name(xa, ya)))
            faces[name] = tuple(fs)
    out = FinSimplicialSet(gens, faces, check=False)
    p1 = SSetMap(out, x, {g: ab[0] for g, ab in parts.items()}, check=False)
    p2 = SSetMap(out, y, {g: ab[1] for g, ab in parts.items()}, check=False)
    return out, p1, p2


def pairing(f: SSetMap, g: SSetMap, prod=None):
    """The map ``<f, g>: W -> X x Y``."""
    if prod is None:
        prod = product(f.target, g.target)[0]
    assign = {}
    for w in f.source.gens:
        eps, xa, ya = normalize_pair(f.assign[w], g.assign[w])
        assign[w] = (eps, pair_name(xa, ya))
    return SSetMap(f.source, prod, assign, check=False)


def product_map(f: SSetMap, g: SSetMap, src=None, tgt=None):
    """``f x g``."""
    src = src or product(f.source, g.source)
    tgt = tgt or product(f.target, g.target)
    return pairing(src[1].then(f), src[2].then(g), tgt[0])


def terminal() -> FinSimplicialSet:
    return delta(0)


def pullback(f: SSetMap, g: SSetMap):
    """Pullback of the cospan ``X -f-> Z <-g- Y``; returns ``(P, p1, p2)``."""
    if f.target != g.target:
        raise ShapeError("pullback needs a cospan with a common target")
    prod, p1, p2 = product(f.source, g.source)
    keep = [w for w in prod.gens if f(p1.assign[w]) == g(p2.assign[w])]
    sub, inc = subcomplex(prod, keep)
    return sub, inc.then(p1), inc.then(p2)


def equalizer(f: SSetMap, g: SSetMap):
    if f.source != g.source or f.target != g.target:
        raise ShapeError("equalizer needs parallel maps")
    keep = [w for w in f.source.gens if f.assign[w] == g.assign[w]]
    return subcomplex(f.source, keep)


def image(f: SSetMap):
    """Image subcomplex; returns ``(im, inclusion)``."""
    return subcomplex(f.target, {h for _, h in f.assign.values()})
