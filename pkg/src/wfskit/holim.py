"""Homotopy colimits, homotopy limits and homotopy Kan extensions of finite diagrams.

The homotopy colimit is the diagonal of the simplicial replacement: level
``n`` is the coproduct, over composable chains ``i_0 -> ... -> i_n`` of the
shape (identities allowed), of the ``n``-simplices of ``X(i_0)``.  The
homotopy limit is the end of the mapping spaces ``Map(N(I/i), X(i))``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import sobj
from .errors import CategoryError, ShapeError, Unsupported
from .fincat import (FinCategory, FinFunctor, chain_face, chain_degen, chain_name, chain_objects, chains,
                     comma_over, comma_under, is_homotopically_finite, nerve_data, nerve_map,
                     over_category, under_category)
from .sset import ops
from .sset.core import FinSimplicialSet, SSetMap, from_levels, identity_map, label, terminal_map
from .sset.homotopy import is_kan_fibration, mapping_space_data, postcompose, precompose
from .sset.limits import coproduct, pairing, product, quotient

log = logging.getLogger(__name__)


class Diagram:
    """A functor from a finite category to simplicial sets or simplicial objects."""

    def __init__(self, shape: FinCategory, values: dict, arrows: dict, *, check=True):
        self.shape = shape
        self.values = dict(values)
        self.arrows = dict(arrows)
        if check:
            bad = self.violations()
            if bad:
                raise ShapeError(bad[0])

    @property
    def kind(self) -> str:
        v = next(iter(self.values.values()), None)
        return "sobj" if isinstance(v, sobj.SimpObject) else "sset"

    def value(self, i):
        return self.values[i]

    def arrow(self, f):
        m = self.arrows.get(f)
        if m is None and self.shape.is_identity(f):
            x = self.values[self.shape.src(f)]
            return sobj.identity(x) if self.kind == "sobj" else identity_map(x)
        if m is None:
            raise ShapeError(f"no map given for {f!r}")
        return m

    def violations(self) -> list:
        c, out = self.shape, []
        for i in c.objects:
            if i not in self.values:
                out.append(f"no value at {i!r}")
        for f in c.morphisms():
            if f not in self.arrows and not c.is_identity(f):
                out.append(f"no map given for {f!r}")
        if out:
            return out
        for f in c.morphisms():
            m = self.arrow(f)
            if m.source != self.values[c.src(f)] or m.target != self.values[c.dst(f)]:
                out.append(f"map for {f!r} has the wrong endpoints")
        if out:
            return out
        for f in c.morphisms():
            if c.is_identity(f) and f in self.arrows:
                m = self.arrows[f]
                ok = m.is_identity() if isinstance(m, SSetMap) else m.maps == sobj.identity(m.source).maps
                if not ok:
                    out.append(f"identity {f!r} is not sent to an identity")
        for (g, f), h in c.comp.items():
            if self.arrow(f).then(self.arrow(g)) != self.arrow(h):
                out.append(f"composite {g!r} o {f!r} is not preserved")
        return out

    def restrict(self, F: FinFunctor) -> "Diagram":
        """``self o F``."""
        return Diagram(F.source, {k: self.values[F.obj_map[k]] for k in F.source.objects},
                       {m: self.arrow(F.mor_map[m]) for m in F.source.morphisms()
                        if not F.source.is_identity(m)}, check=False)


def constant_diagram(shape: FinCategory, x) -> Diagram:
    return Diagram(shape, {i: x for i in shape.objects},
                   {f: identity_map(x) if isinstance(x, FinSimplicialSet) else sobj.identity(x)
                    for f in shape.non_identities()}, check=False)


# -- homotopy colimits ---------------------------------------------------------------

def _chain_image(F: FinFunctor, ch, n):
    return F.obj_map[ch] if n == 0 else tuple(F.mor_map[f] for f in ch)


def hocolim_data(d: Diagram, trunc: int = 3):
    """``(X, ez)`` for a diagram of simplicial sets; ``ez[n]`` is keyed by ``(chain, simplex)``."""
    if d.kind != "sset":
        raise ShapeError("hocolim_data expects simplicial-set values")
    c = d.shape
    levels = []
    for n in range(trunc + 1):
        lv = []
        for ch in chains(c, n):
            i0 = chain_objects(c, ch, n)[0]
            lv.extend((ch, s) for s in d.value(i0).simplices(n))
        levels.append(lv)

    def face(n, i, tok):
        ch, s = tok
        x = d.value(chain_objects(c, ch, n)[0])
        if i == 0:
            return chain_face(c, n, 0, ch), d.arrow(ch[0])(x.face(0, s))
        return chain_face(c, n, i, ch), x.face(i, s)

    def degen(n, j, tok):
        ch, s = tok
        x = d.value(chain_objects(c, ch, n)[0])
        return chain_degen(c, n, j, ch), x.degen(j, s)

    def name(tok):
        ch, s = tok
        return f"{len(s[0]) - 1}:{chain_name(ch)}|{label(s)}"

    return from_levels(levels, face, degen, name)


def _hocolim_sobj(d: Diagram, trunc: int):
    c = d.shape
    cc = next(iter(d.values.values())).cc
    levels, owners = [], []
    for n in range(trunc + 1):
        fam, own = {}, {}
        for ch in chains(c, n):
            i0 = chain_objects(c, ch, n)[0]
            for x, s in d.value(i0).levels[n].items():
                key = f"{chain_name(ch)}|{x}"
                fam[key] = s
                own[key] = (ch, i0, x)
        levels.append(sobj.CoprodObject.of(fam, cc))
        owners.append(own)

    def structure(n_src, n_tgt, chain_fn, value_map):
        idx, elem = {}, {}
        for key, (ch, i0, x) in owners[n_src].items():
            ch2 = chain_fn(ch)
            m = value_map(ch, i0)
            y = m.phi(x)
            key2 = f"{chain_name(ch2)}|{y}"
            idx[key] = key2
            comp = m.comp(x)
            for e in levels[n_src][key]:
                elem[(key, e)] = (key2, comp(e))
        return sobj.make_morphism(levels[n_src], levels[n_tgt], idx, elem, cc)

    faces, degens = {}, {}
    for n in range(1, trunc + 1):
        for i in range(n + 1):
            if i == 0:
                vm = (lambda ch, i0, n=n: cc.compose(d.arrow(ch[0]).maps[n - 1], d.value(i0).faces[(n, 0)]))
            else:
                vm = (lambda ch, i0, n=n, i=i: d.value(i0).faces[(n, i)])
            faces[(n, i)] = structure(n, n - 1, lambda ch, n=n, i=i: chain_face(c, n, i, ch), vm)
    for n in range(trunc):
        for j in range(n + 1):
            degens[(n, j)] = structure(n, n + 1, lambda ch, n=n, j=j: chain_degen(c, n, j, ch),
                                       lambda ch, i0, n=n, j=j: d.value(i0).degens[(n, j)])
    return sobj.SimpObject(levels, faces, degens, cc)


def hocolim_warnings(d: Diagram) -> list:
    if d.kind != "sobj":
        return []
    out = []
    for i, x in sorted(d.values.items()):
        cert = sobj.is_cofibrant(x)
        if not cert.holds:
            out.append(f"value at {i} is not cofibrant (level {cert.level}: {cert.reason})")
    for w in out:
        log.warning(w)
    return out


def hocolim(d: Diagram, trunc: int = 3):
    """Homotopy colimit through dimension ``trunc``."""
    if d.kind == "sobj":
        hocolim_warnings(d)
        return _hocolim_sobj(d, trunc)
    return hocolim_data(d, trunc)[0]


def hocolim_induced(F: FinFunctor, d_src: Diagram, d_tgt: Diagram, trunc: int = 3, src=None, tgt=None) -> SSetMap:
    """``hocolim(d_tgt o F) -> hocolim(d_tgt)`` for ``d_src == d_tgt o F``."""
    sx, sez = src or hocolim_data(d_src, trunc)
    tx, tez = tgt or hocolim_data(d_tgt, trunc)
    assign = {}
    for n, table in enumerate(sez):
        for (ch, s), (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = tez[n][(_chain_image(F, ch, n), s)]
    return SSetMap(sx, tx, assign, check=False)


def _under_pullback(c: FinCategory, u, i, j, ui, uj) -> FinFunctor:
    """``j/I -> i/I`` precomposing with ``u: i -> j``."""
    cat_j, cat_i = uj.category, ui.category
    name_i = {v: k for k, v in ui.pieces.items()}
    obj = {k: name_i[(kk, c.comp[(v, u)])] for k, (kk, v) in uj.pieces.items()}
    mor = {}
    for m in cat_j.mor:
        a = uj.projection.mor_map[m]
        _, v1 = uj.pieces[cat_j.src(m)]
        mor[m] = f"({c.comp[(v1, u)]};{a})"
    return FinFunctor(cat_j, cat_i, obj, mor, check=False)


def coend_oracle(d: Diagram, trunc: int = 3) -> FinSimplicialSet:
    """``int^i N(i/I) x X(i)`` as an explicit quotient of a coproduct of products (``trunc``-skeleton)."""
    if d.kind != "sset":
        raise Unsupported("the coend oracle handles simplicial-set values")
    c = d.shape
    objs = list(c.objects)
    unders = {i: under_category(c, i) for i in objs}
    ndata = {i: nerve_data(unders[i].category, trunc) for i in objs}
    prods = {i: product(ndata[i][0], d.value(i)) for i in objs}
    total, injs = coproduct([prods[i][0] for i in objs], tags=[str(i) for i in objs])
    inj = dict(zip(objs, injs))
    pairs = []
    for u in c.non_identities():
        i, j = c.src(u), c.dst(u)
        F = _under_pullback(c, u, i, j, unders[i], unders[j])
        nu = nerve_map(F, trunc, ndata[j], ndata[i])
        r, r1, r2 = product(ndata[j][0], d.value(i))
        to_i = pairing(r1.then(nu), r2, prods[i][0])
        to_j = pairing(r1, r2.then(d.arrow(u)), prods[j][0])
        for g in r.generators():
            pairs.append((inj[i](to_i.assign[g]), inj[j](to_j.assign[g])))
    q, _ = quotient(total, pairs)
    return q.skeleton(trunc)


# -- homotopy limits ---------------------------------------------------------------------

def _over_push(c: FinCategory, u, oi, oj) -> FinFunctor:
    """``I/i -> I/j`` postcomposing with ``u: i -> j``."""
    cat_i, cat_j = oi.category, oj.category
    name_j = {v: k for k, v in oj.pieces.items()}
    obj = {k: name_j[(kk, c.comp[(u, v)])] for k, (kk, v) in oi.pieces.items()}
    mor = {}
    for m in cat_i.mor:
        a = oi.projection.mor_map[m]
        _, v2 = oi.pieces[cat_i.dst(m)]
        mor[m] = f"({a};{c.comp[(u, v2)]})"
    return FinFunctor(cat_i, cat_j, obj, mor, check=False)


@dataclass
class HolimData:
    sset: FinSimplicialSet
    ez: list
    objects: list
    spaces: dict  # object -> HomSpace of Map(N(I/i), X(i))
    nerves: dict = field(default_factory=dict)


def holim_warnings(d: Diagram, trunc: int = 3) -> list:
    out = []
    if d.kind == "sset":
        for i, x in sorted(d.values.items()):
            res = is_kan_fibration(terminal_map(x), max(1, min(trunc, x.dim)))
            if not res.holds:
                out.append(f"value at {i} is not Kan through dimension {min(trunc, x.dim)}")
    for w in out:
        log.warning(w)
    return out


def holim_data(d: Diagram, trunc: int = 3) -> HolimData:
    c = d.shape
    finite, cert = is_homotopically_finite(c)
    if not finite:
        raise CategoryError(f"shape is not homotopically finite: cycle {cert.get('cycle')}")
    if d.kind != "sset":
        raise ShapeError("holim_data expects simplicial-set values")
    objs = list(c.objects)
    overs = {i: over_category(c, i) for i in objs}
    ndata = {i: nerve_data(overs[i].category, trunc) for i in objs}
    spaces = {i: mapping_space_data(ndata[i][0], d.value(i), trunc) for i in objs}
    checks = []  # (i, j, post, pre): post(s_i) == pre(s_j)
    for u in c.non_identities():
        i, j = c.src(u), c.dst(u)
        mixed = mapping_space_data(ndata[i][0], d.value(j), trunc)
        post = postcompose(spaces[i], mixed, d.arrow(u))
        nu = nerve_map(_over_push(c, u, overs[i], overs[j]), trunc, ndata[i], ndata[j])
        pre = precompose(spaces[j], mixed, nu)
        checks.append((objs.index(i), objs.index(j), post, pre))
    levels = []
    for n in range(trunc + 1):
        cands = [spaces[i].sset.simplices(n) for i in objs]
        out = []

        def go(prefix):
            k = len(prefix)
            if k == len(objs):
                out.append(tuple(prefix))
                return
            for s in cands[k]:
                prefix.append(s)
                if all(post(prefix[a]) == pre(prefix[b]) for a, b, post, pre in checks
                       if max(a, b) == k):
                    go(prefix)
                prefix.pop()

        go([])
        levels.append(out)
    names = {}
    for n, lv in enumerate(levels):
        for k, t in enumerate(lv):
            names[t] = f"l{n}.{k}"
    sp = [spaces[i].sset for i in objs]
    x, ez = from_levels(levels,
                        lambda n, i, t: tuple(s.face(i, v) for s, v in zip(sp, t)),
                        lambda n, j, t: tuple(s.degen(j, v) for s, v in zip(sp, t)),
                        names.__getitem__)
    return HolimData(x, ez, objs, spaces, ndata)


def holim(d: Diagram, trunc: int = 3):
    """Homotopy limit through dimension ``trunc``; the shape must be homotopically finite."""
    if d.kind == "sobj":
        return _holim_sobj(d, trunc)
    holim_warnings(d, trunc)
    return holim_data(d, trunc).sset


def _holim_sobj(d: Diagram, trunc: int):
    """Limits of families of sets are computed on elements and on indices separately."""
    c = d.shape
    arrows = {i: sobj._arrow_data(x) for i, x in d.values.items()}
    e_diag = Diagram(c, {i: a[0] for i, a in arrows.items()},
                     {f: sobj.collapse_map(d.arrow(f)) for f in c.non_identities()}, check=False)
    k_diag = Diagram(c, {i: a[2] for i, a in arrows.items()},
                     {f: _index_map(d.arrow(f)) for f in c.non_identities()}, check=False)
    he, hk = holim_data(e_diag, trunc), holim_data(k_diag, trunc)
    posts = [postcompose(he.spaces[i], hk.spaces[i], arrows[i][4]) for i in he.objects]
    assign = {}
    for n, table in enumerate(he.ez):
        for t, (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = hk.ez[n][tuple(p(s) for p, s in zip(posts, t))]
    return sobj.from_arrow(SSetMap(he.sset, hk.sset, assign, check=False), trunc)


def _index_map(f) -> SSetMap:
    src, tgt = sobj._arrow_data(f.source), sobj._arrow_data(f.target)
    assign = {}
    maps = [dict(m.index_map) for m in f.maps]
    for n, table in enumerate(src[3]):
        for t, (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = tgt[3][n][(n, maps[n][t[1]])]
    return SSetMap(src[2], tgt[2], assign, check=False)


# -- homotopy Kan extensions ----------------------------------------------------------------

@dataclass
class KanExtension:
    side: str
    functor: FinFunctor
    values: dict
    arrows: dict = field(default_factory=dict)
    shapes: dict = field(default_factory=dict)

    def diagram(self) -> Diagram:
        return Diagram(self.functor.target, self.values, self.arrows, check=False)


def _comma_map_over(alpha: FinFunctor, v, cj, cj2) -> FinFunctor:
    """``I x_{/J} j -> I x_{/J} j'`` postcomposing with ``v: j -> j'``."""
    J = alpha.target
    name2 = {p: k for k, p in cj2.pieces.items()}
    obj = {k: name2[(i, J.comp[(v, u)])] for k, (i, u) in cj.pieces.items()}
    mor = {}
    for m in cj.category.mor:
        a = cj.projection.mor_map[m]
        _, u2 = cj.pieces[cj.category.dst(m)]
        mor[m] = f"({a};{J.comp[(v, u2)]})"
    return FinFunctor(cj.category, cj2.category, obj, mor, check=False)


def hokan_left(alpha: FinFunctor, d: Diagram, trunc: int = 3) -> KanExtension:
    """Value at ``j``: the homotopy colimit over ``I x_{/J} j`` of ``d`` restricted along the projection."""
    J = alpha.target
    commas = {j: comma_over(alpha, j) for j in J.objects}
    restricted = {j: d.restrict(commas[j].projection) for j in J.objects}
    if d.kind == "sobj":
        values = {j: hocolim(restricted[j], trunc) for j in J.objects}
        return KanExtension("left", alpha, values, {}, {j: commas[j].category for j in J.objects})
    data = {j: hocolim_data(restricted[j], trunc) for j in J.objects}
    arrows = {}
    for v in J.non_identities():
        j, j2 = J.src(v), J.dst(v)
        F = _comma_map_over(alpha, v, commas[j], commas[j2])
        arrows[v] = hocolim_induced(F, restricted[j], restricted[j2], trunc, data[j], data[j2])
    return KanExtension("left", alpha, {j: data[j][0] for j in J.objects}, arrows,
                        {j: commas[j].category for j in J.objects})


def _comma_map_under(alpha: FinFunctor, v, cj2, cj) -> FinFunctor:
    """``j' x_{/J} I -> j x_{/J} I`` precomposing with ``v: j -> j'``."""
    J = alpha.target
    name = {p: k for k, p in cj.pieces.items()}
    obj = {k: name[(i, J.comp[(u, v)])] for k, (i, u) in cj2.pieces.items()}
    mor = {}
    for m in cj2.category.mor:
        a = cj2.projection.mor_map[m]
        _, u1 = cj2.pieces[cj2.category.src(m)]
        mor[m] = f"({J.comp[(u1, v)]};{a})"
    return FinFunctor(cj2.category, cj.category, obj, mor, check=False)


def _holim_restrict(G: FinFunctor, src: HolimData, tgt: HolimData, trunc: int) -> SSetMap:
    """``holim(d) -> holim(d o G)``: restrict the end along ``G`` (``tgt`` is over ``G.source``)."""
    K, K2 = G.source, G.target
    pres = []
    for k in tgt.objects:
        gk = G.obj_map[k]
        ok, ogk = over_category(K, k), over_category(K2, gk)
        name2 = {p: q for q, p in ogk.pieces.items()}
        obj = {q: name2[(G.obj_map[l], G.mor_map[w])] for q, (l, w) in ok.pieces.items()}
        mor = {}
        for m in ok.category.mor:
            a = ok.projection.mor_map[m]
            _, w2 = ok.pieces[ok.category.dst(m)]
            mor[m] = f"({G.mor_map[a]};{G.mor_map[w2]})"
        H = FinFunctor(ok.category, ogk.category, obj, mor, check=False)
        nh = nerve_map(H, trunc, tgt.nerves[k], src.nerves[gk])
        pres.append((src.objects.index(gk), precompose(src.spaces[gk], tgt.spaces[k], nh)))
    assign = {}
    for n, table in enumerate(src.ez):
        for t, (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = tgt.ez[n][tuple(p(t[a]) for a, p in pres)]
    return SSetMap(src.sset, tgt.sset, assign, check=False)


def hokan_right(alpha: FinFunctor, d: Diagram, trunc: int = 3) -> KanExtension:
    """Value at ``j``: the homotopy limit over ``j x_{/J} I`` of ``d`` restricted along the projection."""
    J = alpha.target
    commas = {j: comma_under(alpha, j) for j in J.objects}
    for j, cm in commas.items():
        finite, cert = is_homotopically_finite(cm.category)
        if not finite:
            raise CategoryError(f"comma shape under {j!r} is not homotopically finite")
    restricted = {j: d.restrict(commas[j].projection) for j in J.objects}
    if d.kind == "sobj":
        values = {j: holim(restricted[j], trunc) for j in J.objects}
        return KanExtension("right", alpha, values, {}, {j: commas[j].category for j in J.objects})
    data = {j: holim_data(restricted[j], trunc) for j in J.objects}
    arrows = {}
    for v in J.non_identities():
        j, j2 = J.src(v), J.dst(v)
        G = _comma_map_under(alpha, v, commas[j2], commas[j])
        arrows[v] = _holim_restrict(G, data[j], data[j2], trunc)
    return KanExtension("right", alpha, {j: data[j].sset for j in J.objects}, arrows,
                        {j: commas[j].category for j in J.objects})
