"""Simplicial objects in the free coproduct completion of finite sets.

A truncated simplicial object stores its levels ``X_0..X_T`` as
:class:`CoprodObject` families together with explicit face and degeneracy
morphisms.  Over the finite-set base a family ``(S_x)`` is the same thing as a
set over its index set, so most constructions below work elementwise on pairs
``(x, e)`` with ``e`` in ``S_x``.

The weak factorization system is the split-projective one: the left class is
generated by coproduct injections and the right class is the split epis.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

from . import coprod as cp
from .coprod import FINSET_COPROD, CoprodMorphism, CoprodObject, FinSetBase
from .errors import ShapeError, SimplicialError, Unsupported
from .finset import SetMap, fset
from .sset import ops
from .sset.core import FinSimplicialSet, SSetMap, from_levels, label
from .sset.homology import weq_oracle
from .sset.homotopy import is_kan_fibration
from .sset.search import DEFAULT_BUDGET, Counter, iter_maps


# -- elementwise helpers ------------------------------------------------------------

def elements(obj: CoprodObject) -> list:
    return [(x, e) for x, s in obj.items() for e in s]


def emap(m: CoprodMorphism) -> dict:
    out = {}
    for (x, y), (_, c) in zip(m.index_map, m.components):
        for e in c.source:
            out[(x, e)] = (y, c.mapping[e])
    return out


def imap(m: CoprodMorphism) -> dict:
    return dict(m.index_map)


def make_morphism(src: CoprodObject, tgt: CoprodObject, idx: dict, elem: dict, cc=None) -> CoprodMorphism:
    """Assemble a morphism from an index map and an elementwise map."""
    comps = {}
    for x, s in src.items():
        y = idx[x]
        vals = {}
        for e in s:
            y2, e2 = elem[(x, e)]
            if y2 != y:
                raise ShapeError(f"element {e!r} of component {x!r} leaves the component {y!r}")
            vals[e] = e2
        comps[x] = SetMap(s, tgt[y], vals, check=False)
    return CoprodMorphism.of(src, tgt, idx, comps, cc or src.cc)


def _require_finset(cc):
    if not isinstance(cc.base, FinSetBase):
        raise Unsupported("simplicial objects are supported over the finite-set base only")


def is_coprod_injection(m: CoprodMorphism) -> bool:
    ys = [y for _, y in m.index_map]
    return len(set(ys)) == len(ys) and all(len(c.source) == len(c.target) and
                                           len(set(c.mapping.values())) == len(c.source)
                                           for _, c in m.components)


def is_iso(m: CoprodMorphism) -> bool:
    return is_coprod_injection(m) and len(m.index_map) == len(m.target.index)


def split_section(m: CoprodMorphism):
    """A section of ``m`` in families of finite sets, or ``None``."""
    idx, elem = {}, {}
    for y, t in m.target.items():
        found = None
        for x, c in m.components:
            if m.phi(x) == y and set(c.mapping.values()) == set(t) and (t or True):
                found = (x, c)
                break
        if found is None:
            return None
        x, c = found
        back = {}
        for e in c.source:
            back.setdefault(c.mapping[e], e)
        idx[y] = x
        for v in t:
            elem[(y, v)] = (x, back[v])
    return make_morphism(m.target, m.source, idx, elem, m.completion)


def compact(obj: CoprodObject, prefix: str):
    """Rename indices to ``prefix<k>`` and elements to ``0, 1, ...``; returns ``(new, iso, inverse)``."""
    names = {x: f"{prefix}{k}" for k, x in enumerate(obj.index)}
    fam, elem, back = {}, {}, {}
    for x, s in obj.items():
        fam[names[x]] = tuple(range(len(s)))
        for k, e in enumerate(s):
            elem[(x, e)] = (names[x], k)
            back[(names[x], k)] = (x, e)
    new = CoprodObject.of(fam, obj.cc)
    iso = make_morphism(obj, new, names, elem)
    inv = make_morphism(new, obj, {v: k for k, v in names.items()}, back)
    return new, iso, inv


# -- simplicial objects -------------------------------------------------------------------

class SimpObject:
    """A simplicial object truncated at ``T = len(levels) - 1``.

    ``faces[(n, i)]: X_n -> X_{n-1}`` for ``1 <= n <= T`` and
    ``degens[(n, j)]: X_n -> X_{n+1}`` for ``n < T``.
    """

    def __init__(self, levels, faces: dict, degens: dict, cc=None, *, check=True):
        self.levels = list(levels)
        self.faces = dict(faces)
        self.degens = dict(degens)
        self.cc = cc or (self.levels[0].completion if self.levels else FINSET_COPROD)
        self._ops: dict = {}
        if check:
            bad = self.violations()
            if bad:
                raise SimplicialError(bad[0])

    @property
    def trunc(self) -> int:
        return len(self.levels) - 1

    def face(self, n, i) -> CoprodMorphism:
        return self.faces[(n, i)]

    def degen(self, n, j) -> CoprodMorphism:
        return self.degens[(n, j)]

    def counts(self) -> list:
        return [len(lv.index) for lv in self.levels]

    def sizes(self) -> list:
        return [len(elements(lv)) for lv in self.levels]

    def op(self, theta: tuple, k: int) -> CoprodMorphism:
        """``X(theta): X_k -> X_m`` for a monotone ``theta: [m] -> [k]``."""
        key = (tuple(theta), k)
        hit = self._ops.get(key)
        if hit is not None:
            return hit
        cc = self.cc
        epi, mono = ops.epi_mono(tuple(theta))
        out = cc.identity(self.levels[k])
        lvl, mono = k, tuple(mono)
        while len(mono) - 1 < lvl:
            i = next(t for t in range(lvl + 1) if t not in mono)
            out = cc.compose(self.faces[(lvl, i)], out)
            mono = tuple(v if v < i else v - 1 for v in mono)
            lvl -= 1
        steps = []
        sigma = tuple(epi)
        while len(sigma) - 1 > sigma[-1]:
            r = next(t for t in range(len(sigma) - 1) if sigma[t] == sigma[t + 1])
            steps.append((len(sigma) - 2, r))
            sigma = sigma[:r + 1] + sigma[r + 2:]
        for n, r in reversed(steps):
            out = cc.compose(self.degens[(n, r)], out)
        self._ops[key] = out
        return out

    def violations(self) -> list:
        out = []
        cc, T = self.cc, self.trunc
        for n in range(1, T + 1):
            for i in range(n + 1):
                m = self.faces.get((n, i))
                if m is None or m.source != self.levels[n] or m.target != self.levels[n - 1]:
                    out.append(f"face d_{i} at level {n} is missing or has the wrong type")
        for n in range(T):
            for j in range(n + 1):
                m = self.degens.get((n, j))
                if m is None or m.source != self.levels[n] or m.target != self.levels[n + 1]:
                    out.append(f"degeneracy s_{j} at level {n} is missing or has the wrong type")
        if out:
            return out
        d, s, comp = self.faces, self.degens, cc.compose
        for n in range(2, T + 1):
            for j in range(n + 1):
                for i in range(j):
                    if comp(d[(n - 1, i)], d[(n, j)]) != comp(d[(n - 1, j - 1)], d[(n, i)]):
                        out.append(f"d_{i} d_{j} = d_{j - 1} d_{i} fails at level {n}")
        for n in range(T - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if comp(s[(n + 1, i)], s[(n, j)]) != comp(s[(n + 1, j + 1)], s[(n, i)]):
                        out.append(f"s_{i} s_{j} = s_{j + 1} s_{i} fails at level {n}")
        for n in range(T):
            ident = cc.identity(self.levels[n])
            for j in range(n + 1):
                for i in range(n + 2):
                    lhs = comp(d[(n + 1, i)], s[(n, j)])
                    if i in (j, j + 1):
                        rhs = ident
                    elif i < j:
                        rhs = comp(s[(n - 1, j - 1)], d[(n, i)])
                    else:
                        rhs = comp(s[(n - 1, j)], d[(n, i - 1)])
                    if lhs != rhs:
                        out.append(f"d_{i} s_{j} identity fails at level {n}")
        return out

    def truncate(self, t: int) -> "SimpObject":
        return SimpObject(self.levels[:t + 1], {k: v for k, v in self.faces.items() if k[0] <= t},
                          {k: v for k, v in self.degens.items() if k[0] < t}, self.cc, check=False)

    def __eq__(self, other):
        return isinstance(other, SimpObject) and (self.levels, self.faces, self.degens) == \
            (other.levels, other.faces, other.degens)

    __hash__ = None

    def __repr__(self):
        return f"SimpObject(trunc={self.trunc}, counts={self.counts()}, sizes={self.sizes()})"


class SimpMorphism:
    def __init__(self, source: SimpObject, target: SimpObject, maps, *, check=True):
        self.source = source
        self.target = target
        self.maps = list(maps)
        if check:
            bad = self.violations()
            if bad:
                raise SimplicialError(bad[0])

    @property
    def trunc(self):
        return self.source.trunc

    def __getitem__(self, n) -> CoprodMorphism:
        return self.maps[n]

    def violations(self) -> list:
        out = []
        x, y, cc = self.source, self.target, self.source.cc
        if x.trunc != y.trunc or len(self.maps) != x.trunc + 1:
            return ["source, target and level maps disagree on the truncation"]
        for n, m in enumerate(self.maps):
            if m.source != x.levels[n] or m.target != y.levels[n]:
                out.append(f"level {n} map has the wrong type")
        if out:
            return out
        for (n, i), d in x.faces.items():
            if cc.compose(y.faces[(n, i)], self.maps[n]) != cc.compose(self.maps[n - 1], d):
                out.append(f"map does not commute with d_{i} at level {n}")
        for (n, j), s in x.degens.items():
            if cc.compose(y.degens[(n, j)], self.maps[n]) != cc.compose(self.maps[n + 1], s):
                out.append(f"map does not commute with s_{j} at level {n}")
        return out

    def then(self, other: "SimpMorphism") -> "SimpMorphism":
        cc = self.source.cc
        return SimpMorphism(self.source, other.target,
                            [cc.compose(g, f) for f, g in zip(self.maps, other.maps)], check=False)

    def is_iso(self) -> bool:
        return all(is_iso(m) for m in self.maps)

    def __eq__(self, other):
        return isinstance(other, SimpMorphism) and self.maps == other.maps

    __hash__ = None


def identity(x: SimpObject) -> SimpMorphism:
    return SimpMorphism(x, x, [x.cc.identity(lv) for lv in x.levels], check=False)


# -- constructions ------------------------------------------------------------------------------

def constant(a: CoprodObject, trunc: int = 3, cc=None) -> SimpObject:
    cc = cc or a.completion
    ident = cc.identity(a)
    faces = {(n, i): ident for n in range(1, trunc + 1) for i in range(n + 1)}
    degens = {(n, j): ident for n in range(trunc) for j in range(n + 1)}
    return SimpObject([a] * (trunc + 1), faces, degens, cc, check=False)


def initial(trunc: int = 3, cc=None) -> SimpObject:
    cc = cc or FINSET_COPROD
    return constant(cc.initial(), trunc, cc)


def from_initial(x: SimpObject) -> SimpMorphism:
    z = initial(x.trunc, x.cc)
    return SimpMorphism(z, x, [CoprodMorphism.of(z.levels[n], lv, {}, {}, x.cc)
                               for n, lv in enumerate(x.levels)], check=False)


def to_terminal(x: SimpObject) -> SimpMorphism:
    cc = x.cc
    t = constant(cc.terminal(), x.trunc, cc)
    (star,) = t.levels[0].index
    maps = []
    for lv in x.levels:
        maps.append(make_morphism(lv, t.levels[0], {i: star for i in lv.index},
                                  {xe: (star, t.levels[0][star][0]) for xe in elements(lv)}))
    return SimpMorphism(x, t, maps, check=False)


def tensor(a: CoprodObject, k: FinSimplicialSet, trunc: int = 3, cc=None) -> SimpObject:
    """``a (x) k``: level ``n`` is a copy of ``a`` for every ``n``-simplex of ``k``."""
    cc = cc or a.completion

    def name(s, x):
        return f"{label(s)}|{x}"

    levels = [CoprodObject.of({name(s, x): v for s in k.simplices(n) for x, v in a.items()}, cc)
              for n in range(trunc + 1)]

    def induced(n_src, n_tgt, fn):
        idx, comps = {}, {}
        for s in k.simplices(n_src):
            t = fn(s)
            for x, v in a.items():
                idx[name(s, x)] = name(t, x)
                comps[name(s, x)] = cc.base.identity(v)
        return CoprodMorphism.of(levels[n_src], levels[n_tgt], idx, comps, cc)

    faces = {(n, i): induced(n, n - 1, lambda s, i=i: k.face(i, s))
             for n in range(1, trunc + 1) for i in range(n + 1)}
    degens = {(n, j): induced(n, n + 1, lambda s, j=j: k.degen(j, s))
              for n in range(trunc) for j in range(n + 1)}
    return SimpObject(levels, faces, degens, cc, check=False)


def from_arrow(p: SSetMap, trunc: int = 3) -> SimpObject:
    """The family ``n -> (fibre of p over sigma)_{sigma in K_n}`` for ``p: E -> K``."""
    e_set, k_set = p.source, p.target
    cc = FINSET_COPROD
    levels, by_label = [], []
    for n in range(trunc + 1):
        fam = {label(s): [] for s in k_set.simplices(n)}
        lab = {}
        for t in e_set.simplices(n):
            fam[label(p(t))].append(label(t))
            lab[label(t)] = t
        for s in k_set.simplices(n):
            lab[label(s)] = s
        levels.append(CoprodObject.of({x: fset(v) for x, v in fam.items()}, cc))
        by_label.append(lab)

    def induced(n_src, n_tgt, fe, fk):
        src, tgt = levels[n_src], levels[n_tgt]
        idx = {x: label(fk(by_label[n_src][x])) for x in src.index}
        elem = {(x, e): (idx[x], label(fe(by_label[n_src][e]))) for x, e in elements(src)}
        return make_morphism(src, tgt, idx, elem, cc)

    faces = {(n, i): induced(n, n - 1, lambda s, i=i: e_set.face(i, s), lambda s, i=i: k_set.face(i, s))
             for n in range(1, trunc + 1) for i in range(n + 1)}
    degens = {(n, j): induced(n, n + 1, lambda s, j=j: e_set.degen(j, s), lambda s, j=j: k_set.degen(j, s))
              for n in range(trunc) for j in range(n + 1)}
    return SimpObject(levels, faces, degens, cc, check=False)


def arrow_map(f_e: SSetMap, f_k: SSetMap, x: SimpObject, y: SimpObject) -> SimpMorphism:
    """The morphism ``from_arrow(p) -> from_arrow(q)`` given by a commuting square ``(f_e, f_k)``."""
    maps = []
    for n in range(x.trunc + 1):
        src, tgt = x.levels[n], y.levels[n]
        ks = {label(s): s for s in f_k.source.simplices(n)}
        es = {label(s): s for s in f_e.source.simplices(n)}
        idx = {i: label(f_k(ks[i])) for i in src.index}
        elem = {(i, e): (idx[i], label(f_e(es[e]))) for i, e in elements(src)}
        maps.append(make_morphism(src, tgt, idx, elem))
    return SimpMorphism(x, y, maps)


def _arrow_data(x: SimpObject):
    """``(E, ez_E, K, ez_K, p)``: elements over indices as truncated simplicial sets."""
    _require_finset(x.cc)
    e_tok = [[(n,) + xe for xe in elements(lv)] for n, lv in enumerate(x.levels)]
    k_tok = [[(n, i) for i in lv.index] for n, lv in enumerate(x.levels)]
    fm = {k: emap(m) for k, m in x.faces.items()}
    dm = {k: emap(m) for k, m in x.degens.items()}
    fi = {k: imap(m) for k, m in x.faces.items()}
    di = {k: imap(m) for k, m in x.degens.items()}
    e_names = {t: f"e{t[0]}.{k}" for lv in e_tok for k, t in enumerate(lv)}
    k_names = {t: f"k{t[0]}.{k}" for lv in k_tok for k, t in enumerate(lv)}
    e_set, e_ez = from_levels(e_tok, lambda n, i, t: (n - 1,) + fm[(n, i)][t[1:]],
                              lambda n, j, t: (n + 1,) + dm[(n, j)][t[1:]], e_names.__getitem__)
    k_set, k_ez = from_levels(k_tok, lambda n, i, t: (n - 1, fi[(n, i)][t[1]]),
                              lambda n, j, t: (n + 1, di[(n, j)][t[1]]), k_names.__getitem__)
    assign = {}
    for n, table in enumerate(e_ez):
        for t, (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = k_ez[n][(n, t[1])]
    return e_set, e_ez, k_set, k_ez, SSetMap(e_set, k_set, assign, check=False)


def to_arrow(x: SimpObject) -> SSetMap:
    """The map of (truncated) simplicial sets ``E -> K``: elements over indices."""
    return _arrow_data(x)[4]


def collapse(x: SimpObject) -> FinSimplicialSet:
    """Apply the coproduct functor levelwise."""
    return _arrow_data(x)[0]


def collapse_map(f: SimpMorphism) -> SSetMap:
    e_src, ez_src = _arrow_data(f.source)[:2]
    e_tgt, ez_tgt = _arrow_data(f.target)[:2]
    maps = [emap(m) for m in f.maps]
    assign = {}
    for n, table in enumerate(ez_src):
        for t, (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = ez_tgt[n][(n,) + maps[n][t[1:]]]
    return SSetMap(e_src, e_tgt, assign, check=False)


# -- hom functors ------------------------------------------------------------------------------------

@dataclass
class HomRight:
    sset: FinSimplicialSet
    ez: list
    levels: list

    def simplex(self, n, m):
        return self.ez[n][m]


def hom_right_data(a: CoprodObject, x: SimpObject) -> HomRight:
    """``n -> Hom(a, X_n)`` as a simplicial set (through the truncation)."""
    cc = x.cc
    levels = [list(cc.iter_hom(a, lv)) for lv in x.levels]
    names = {}
    for n, lv in enumerate(levels):
        for k, m in enumerate(lv):
            names[(n, m)] = f"h{n}.{k}"
    where = {}
    for n, lv in enumerate(levels):
        for m in lv:
            where[m] = n
    sset, ez = from_levels(levels, lambda n, i, m: cc.compose(x.faces[(n, i)], m),
                           lambda n, j, m: cc.compose(x.degens[(n, j)], m),
                           lambda m: names[(where[m], m)])
    return HomRight(sset, ez, levels)


def hom_right(a: CoprodObject, x: SimpObject) -> FinSimplicialSet:
    return hom_right_data(a, x).sset


def hom_right_map(a: CoprodObject, f: SimpMorphism, src: HomRight | None = None,
                  tgt: HomRight | None = None) -> SSetMap:
    cc = f.source.cc
    src = src or hom_right_data(a, f.source)
    tgt = tgt or hom_right_data(a, f.target)
    assign = {}
    for n, table in enumerate(src.ez):
        for m, (sigma, g) in table.items():
            if ops.is_identity(sigma):
                assign[g] = tgt.ez[n][cc.compose(f.maps[n], m)]
    return SSetMap(src.sset, tgt.sset, assign, check=False)


def hom_left(k: FinSimplicialSet, x: SimpObject):
    """The end of ``X_n^{k_n}``: an object ``H`` with ``Hom(c, H) = Hom(k, Hom(c, X))``.

    Returns ``(H, legs)`` where ``legs[g]: H -> X_n`` evaluates at the generator ``g``.
    """
    if k.dim > x.trunc:
        raise ShapeError(f"shape of dimension {k.dim} exceeds the truncation {x.trunc}")
    cc = x.cc
    gens = k.generators()
    pos = {g: p for p, g in enumerate(gens)}
    objs = [x.levels[k.gens[g]] for g in gens]
    arrows = []
    for g in gens:
        n = k.gens[g]
        for i, (rho, h) in enumerate(k.faces.get(g, ())):
            e = len(objs)
            objs.append(x.levels[n - 1])
            arrows.append((pos[g], e, x.faces[(n, i)]))
            arrows.append((pos[h], e, x.op(rho, k.gens[h])))
    apex, legs = cc.limit(objs, arrows)
    return apex, {g: legs[pos[g]] for g in gens}


# -- latching and matching ---------------------------------------------------------------------------

@dataclass
class LatchingData:
    n: int
    obj: CoprodObject
    map: CoprodMorphism


def latching(x: SimpObject, n: int) -> LatchingData:
    """Union of the degeneracy images in ``X_n``; needs coproduct-injection degeneracies."""
    cc = x.cc
    if n == 0:
        z = cc.initial()
        return LatchingData(0, z, CoprodMorphism.of(z, x.levels[0], {}, {}, cc))
    hit = set()
    for j in range(n):
        s = x.degens[(n - 1, j)]
        if not is_coprod_injection(s):
            raise Unsupported(f"degeneracy s_{j} into level {n} is not a coproduct injection")
        hit |= {y for _, y in s.index_map}
    lv = x.levels[n]
    obj = CoprodObject.of({y: lv[y] for y in hit}, cc)
    incl = CoprodMorphism.of(obj, lv, {y: y for y in hit}, {y: cc.base.identity(lv[y]) for y in hit}, cc)
    return LatchingData(n, obj, incl)


class LatchingColimit:
    """``L_n X`` computed as the colimit over proper surjections ``[n] ->> [k]``.

    Only levels below ``n`` are used, so this works while ``X`` is being built.
    """

    def __init__(self, x: SimpObject, n: int):
        self.x, self.n = x, n
        self.thetas = [t for k in range(n) for t in ops.surjections(n, k)]
        parent: dict = {}

        def find(a):
            parent.setdefault(a, a)
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                lo, hi = sorted((ra, rb), key=repr)
                parent[hi] = lo

        for th in self.thetas:
            lv = x.levels[th[-1]]
            for i in lv.index:
                find(("i", th, i))
            for i, e in elements(lv):
                find(("e", th, i, e))
        for th in self.thetas:
            k = th[-1]
            for j in range(k):
                rho = ops.codegeneracy(j, k - 1)  # [k] ->> [k-1]
                tgt = ops.compose(rho, th)
                s = x.degens[(k - 1, j)]
                si, se = imap(s), emap(s)
                for w in x.levels[k - 1].index:
                    union(("i", th, si[w]), ("i", tgt, w))
                for w in elements(x.levels[k - 1]):
                    v = se[w]
                    union(("e", th) + v, ("e", tgt) + w)
        self._find = find
        fam: dict = {}
        for key in list(parent):
            if key[0] == "i":
                fam.setdefault(self._iname(find(key)), set())
        for key in list(parent):
            if key[0] == "e":
                fam[self._iname(find(("i",) + key[1:3]))].add(self._ename(find(key)))
        cc = x.cc
        self.obj = CoprodObject.of({k: fset(v) for k, v in fam.items()}, cc)

    @staticmethod
    def _iname(r):
        return f"{ops.word(r[1])}@{r[1][-1]}|{r[2]}"

    @staticmethod
    def _ename(r):
        return f"{ops.word(r[1])}@{r[1][-1]}|{r[2]}|{r[3]}"

    def inj(self, theta) -> CoprodMorphism:
        """``X_k -> L_n X`` for the surjection ``theta: [n] ->> [k]``."""
        lv = self.x.levels[theta[-1]]
        idx = {i: self._iname(self._find(("i", theta, i))) for i in lv.index}
        elem = {(i, e): (idx[i], self._ename(self._find(("e", theta, i, e)))) for i, e in elements(lv)}
        return make_morphism(lv, self.obj, idx, elem, self.x.cc)

    def out(self, target: CoprodObject, family) -> CoprodMorphism:
        """The map ``L_n X -> target`` induced by ``family(theta): X_k -> target``."""
        idx, elem = {}, {}
        for th in self.thetas:
            f = family(th)
            fi, fe = imap(f), emap(f)
            j = self.inj(th)
            ji, je = imap(j), emap(j)
            for i, y in ji.items():
                if idx.setdefault(y, fi[i]) != fi[i]:
                    raise SimplicialError("latching family is not compatible")
            for w, v in je.items():
                if elem.setdefault(v, fe[w]) != fe[w]:
                    raise SimplicialError("latching family is not compatible")
        return make_morphism(self.obj, target, idx, elem, self.x.cc)


def latching_map(x: SimpObject, n: int) -> CoprodMorphism:
    """The canonical ``L_n X -> X_n`` via the colimit route."""
    lc = LatchingColimit(x, n)
    return lc.out(x.levels[n], lambda th: x.op(th, th[-1]))


@dataclass
class MatchingData:
    n: int
    obj: CoprodObject
    legs: list
    map: CoprodMorphism | None = None


def _compatible(cands, face, n):
    """Tuples ``(y_0..y_n)`` with ``face(i, y_j) == face(j-1, y_i)`` for ``i < j``."""
    out = []

    def go(prefix):
        j = len(prefix)
        if j == n + 1:
            out.append(tuple(prefix))
            return
        for y in cands[j]:
            if all(face(i, y) == face(j - 1, prefix[i]) for i in range(j)):
                prefix.append(y)
                go(prefix)
                prefix.pop()

    go([])
    return out


def matching_from(levels, faces, n, cc) -> MatchingData:
    """``M_n`` from levels ``n-1`` and ``n-2`` and their faces."""
    if n == 0:
        t = cc.terminal()
        return MatchingData(0, t, [])
    low = levels[n - 1]
    if n == 1:
        fi = lambda i, y: None
        fe = lambda i, w: None
    else:
        fim = {i: imap(faces[(n - 1, i)]) for i in range(n)}
        fem = {i: emap(faces[(n - 1, i)]) for i in range(n)}
        fi = lambda i, y: fim[i][y]
        fe = lambda i, w: fem[i][w]
    fam = {}
    for t in _compatible([low.index] * (n + 1), fi, n):
        cands = [[(y, e) for e in low[y]] for y in t]
        fam[t] = fset(tuple(w[1] for w in tup) for tup in _compatible(cands, fe, n))
    obj = CoprodObject.of(fam, cc)
    legs = []
    for i in range(n + 1):
        elem = {(t, es): (t[i], es[i]) for t, es in elements(obj)}
        legs.append(make_morphism(obj, low, {t: t[i] for t in obj.index}, elem, cc))
    return MatchingData(n, obj, legs)


def into_matching(md: MatchingData, src: CoprodObject, maps) -> CoprodMorphism:
    """The map ``src -> M_n`` with components ``maps[i]: src -> X_{n-1}``."""
    if md.n == 0:
        (star,) = md.obj.index
        return make_morphism(src, md.obj, {x: star for x in src.index},
                             {w: (star, md.obj[star][0]) for w in elements(src)})
    ims, ems = [imap(m) for m in maps], [emap(m) for m in maps]
    idx = {x: tuple(im[x] for im in ims) for x in src.index}
    elem = {w: (idx[w[0]], tuple(em[w][1] for em in ems)) for w in elements(src)}
    for x, t in idx.items():
        if t not in md.obj.index:
            raise SimplicialError("faces do not form a matching tuple")
    return make_morphism(src, md.obj, idx, elem, md.obj.cc)


def matching(x: SimpObject, n: int) -> MatchingData:
    md = matching_from(x.levels, x.faces, n, x.cc)
    if n <= x.trunc:
        md.map = into_matching(md, x.levels[n], [x.faces[(n, i)] for i in range(n + 1)] if n else [])
    return md


def matching_of_map(f: SimpMorphism, ms: MatchingData, mt: MatchingData) -> CoprodMorphism:
    """``M_n f: M_n X -> M_n Y``."""
    if ms.n == 0:
        return into_matching(mt, ms.obj, [])
    cc = f.source.cc
    return into_matching(mt, ms.obj, [cc.compose(f.maps[ms.n - 1], leg) for leg in ms.legs])


def matching_corner(f: SimpMorphism, n: int):
    """``X_n -> M_n X x_{M_n Y} Y_n``; returns ``(corner, pullback apex)``."""
    cc = f.source.cc
    mx, my = matching(f.source, n), matching(f.target, n)
    mf = matching_of_map(f, mx, my)
    apex, legs = cc.limit([mx.obj, f.target.levels[n], my.obj], [(0, 2, mf), (1, 2, my.map)])
    corner = cc.induced(apex, legs, f.source.levels[n], [mx.map, f.maps[n], cc.compose(my.map, f.maps[n])])
    if corner is None:  # pragma: no cover - follows from naturality
        raise SimplicialError("matching corner does not factor through the pullback")
    return corner, apex


def relative_latching(f: SimpMorphism, n: int):
    """``L_n Y +_{L_n X} X_n -> Y_n``."""
    cc = f.source.cc
    x, y = f.source, f.target
    lx, ly = LatchingColimit(x, n), LatchingColimit(y, n)
    lf = lx.out(ly.obj, lambda th: cc.compose(ly.inj(th), f.maps[th[-1]]))
    cx = lx.out(x.levels[n], lambda th: x.op(th, th[-1]))
    a, jl, jx = cp.pushout(cc, lf, cx)
    cy = ly.out(y.levels[n], lambda th: y.op(th, th[-1]))
    return _po_out(a, jl, jx, cy, f.maps[n], y.levels[n])


def _po_out(a, jl, jx, u, v, target):
    """Copair out of a pushout given its two legs."""
    idx, elem = {}, {}
    for leg, m in ((jl, u), (jx, v)):
        li, le = imap(leg), emap(leg)
        mi, me = imap(m), emap(m)
        for s, t in li.items():
            if idx.setdefault(t, mi[s]) != mi[s]:
                raise SimplicialError("maps out of the pushout disagree")
        for s, t in le.items():
            if elem.setdefault(t, me[s]) != me[s]:
                raise SimplicialError("maps out of the pushout disagree")
    return make_morphism(a, target, idx, elem)


def is_cofibration(f: SimpMorphism) -> tuple:
    """Reedy test: every relative latching map is a coproduct injection.  ``(ok, failing level)``."""
    for n in range(f.trunc + 1):
        if not is_coprod_injection(relative_latching(f, n)):
            return False, n
    return True, None


def is_trivial_fibration(f: SimpMorphism) -> tuple:
    """Every matching corner is a split epi.  ``(ok, failing level)``."""
    for n in range(f.trunc + 1):
        corner, _ = matching_corner(f, n)
        if split_section(corner) is None:
            return False, n
    return True, None


# -- cofibrancy via the nondegenerate decomposition ---------------------------------------------------

@dataclass
class CofibrancyCertificate:
    holds: bool
    truncation: int
    levels: list = field(default_factory=list)
    level: int | None = None
    reason: str = ""

    def to_json(self):
        return {"holds": self.holds, "truncation": self.truncation, "levels": self.levels,
                "level": self.level, "reason": self.reason}


def is_cofibrant(x: SimpObject) -> CofibrancyCertificate:
    """Split each level as degenerate part plus nondegenerate part.

    The degenerate part must be the disjoint union of copies of lower
    nondegenerate parts, one for each proper surjection, via the degeneracy
    operators.  The first level where this fails is reported.
    """
    _require_finset(x.cc)
    cert = CofibrancyCertificate(True, x.trunc)
    nd = []
    for n in range(x.trunc + 1):
        lv = x.levels[n]
        hit = set()
        for j in range(n):
            s = x.degens[(n - 1, j)]
            if not is_coprod_injection(s):
                return CofibrancyCertificate(False, x.trunc, cert.levels, n,
                                             f"s_{j} into level {n} is not a coproduct injection")
            hit |= {y for _, y in s.index_map}
        nd.append([y for y in lv.index if y not in hit])
        deg = {}
        for k in range(n):
            for th in ops.surjections(n, k):
                m = x.op(th, k)
                for y in nd[k]:
                    z = m.phi(y)
                    c = m.comp(y)
                    if z in deg or z not in hit:
                        return CofibrancyCertificate(False, x.trunc, cert.levels, n,
                                                     f"degenerate component {z!r} is reached twice")
                    if len(set(c.mapping.values())) != len(c.source) or len(c.source) != len(lv[z]):
                        return CofibrancyCertificate(False, x.trunc, cert.levels, n,
                                                     f"component {z!r} is not a copy of {y!r}")
                    deg[z] = [ops.word(th), k, y]
        if set(deg) != hit:
            return CofibrancyCertificate(False, x.trunc, cert.levels, n, "degenerate part is not covered")
        cert.levels.append({"nd": sorted(nd[n], key=repr),
                            "deg": {str(z): v for z, v in sorted(deg.items(), key=lambda kv: repr(kv[0]))}})
    return cert


# -- Reedy factorization ---------------------------------------------------------------------------------

@dataclass
class ReedyFactorization:
    left: SimpMorphism
    right: SimpMorphism
    middle: SimpObject
    log: list = field(default_factory=list)
    sections: list = field(default_factory=list)  # sections of the matching corners of ``right``


def _cover(c: CoprodMorphism) -> set:
    """Target indices hit by a surjective component."""
    out = set()
    for x, comp in c.components:
        y = c.phi(x)
        if set(comp.mapping.values()) == set(c.target[y]):
            out.add(y)
    return out


def reedy_factorize(f: SimpMorphism, trunc: int | None = None) -> ReedyFactorization:
    """Factor ``f`` as a Reedy cofibration followed by a trivial fibration.

    At level ``n`` the corner ``L_n Z +_{L_n X} X_n -> M_n Z x_{M_n Y} Y_n`` is
    factored as a coproduct injection followed by a split epi, adding one
    copy of every target component not already hit by a surjective component.
    """
    cc = f.source.cc
    _require_finset(cc)
    T = f.trunc if trunc is None else trunc
    x, y = f.source.truncate(T), f.target.truncate(T)
    levels, faces, degens, left, right, log = [], {}, {}, [], [], []
    for n in range(T + 1):
        z = SimpObject(levels, faces, degens, cc, check=False)
        lz, lx = LatchingColimit(z, n), LatchingColimit(x, n)
        lf = lx.out(lz.obj, lambda th: cc.compose(lz.inj(th), left[th[-1]]))
        cx = lx.out(x.levels[n], lambda th: x.op(th, th[-1]))
        a, jl, jx = cp.pushout(cc, lf, cx)
        mz = matching_from(levels, faces, n, cc)
        my = matching(y, n)
        mp = into_matching(my, mz.obj, [cc.compose(right[n - 1], leg) for leg in mz.legs] if n else [])
        b, blegs = cc.limit([mz.obj, y.levels[n], my.obj], [(0, 2, mp), (1, 2, my.map)])

        def to_b(src, to_m, to_y):
            return cc.induced(b, blegs, src, [to_m, to_y, cc.compose(my.map, to_y)])

        def lz_family(th):
            k = th[-1]
            to_m = into_matching(mz, z.levels[k], [z.op(ops.compose(th, ops.coface(i, n)), k)
                                                   for i in range(n + 1)]) if n else None
            return to_b(z.levels[k], to_m, cc.compose(y.op(th, k), right[k]))

        u = lz.out(b, lz_family)
        to_m = into_matching(mz, x.levels[n], [cc.compose(left[n - 1], x.faces[(n, i)])
                                               for i in range(n + 1)]) if n else into_matching(mz, x.levels[n], [])
        v = to_b(x.levels[n], to_m, f.maps[n])
        corner = _po_out(a, jl, jx, u, v, b)
        covered = _cover(corner)
        p_obj = CoprodObject.of({t: b[t] for t in b.index if t not in covered}, cc)
        zn, (ia, ip) = cc.coproduct([a, p_obj])
        incl_p = CoprodMorphism.of(p_obj, b, {t: t for t in p_obj.index},
                                   {t: cc.base.identity(b[t]) for t in p_obj.index}, cc)
        r = cc.copair([corner, incl_p], zn)
        new, iso, inv = compact(zn, f"z{n}.")
        r = cc.compose(r, inv)
        levels.append(new)
        for i in range(n + 1 if n else 0):
            faces[(n, i)] = cc.compose(mz.legs[i], cc.compose(blegs[0], r))
        for j in range(n):
            degens[(n - 1, j)] = cc.compose(iso, cc.compose(ia, cc.compose(jl, lz.inj(ops.codegeneracy(j, n - 1)))))
        left.append(cc.compose(iso, cc.compose(ia, jx)))
        right.append(cc.compose(blegs[1], r))
        log.append({"level": n, "added": len(p_obj.index), "components": len(new.index),
                    "elements": len(elements(new))})
    zobj = SimpObject(levels, faces, degens, cc)
    fact = ReedyFactorization(SimpMorphism(x, zobj, left), SimpMorphism(zobj, y, right), zobj, log)
    for n in range(T + 1):
        corner, _ = matching_corner(fact.right, n)
        fact.sections.append(split_section(corner))
    return fact


def is_cofibrant_rlp(x: SimpObject) -> tuple:
    """``x`` is cofibrant iff the minimal cell replacement ``Z -> x`` is an isomorphism.

    ``Z`` comes from :func:`reedy_factorize` applied to ``0 -> x``; the right
    leg is a trivial fibration, so ``x`` lifts against it exactly when it is a
    retract of ``Z``, and the minimal construction adds no superfluous cells.
    Returns ``(ok, first level where Z_n -> X_n is not an isomorphism)``.
    """
    fact = reedy_factorize(from_initial(x))
    for n, m in enumerate(fact.right.maps):
        if not is_iso(m):
            return False, n
    return True, None


# -- fibrations and weak equivalences ---------------------------------------------------------------------

def default_projectives(*objs, max_size: int = 2) -> list:
    """Connected projectives ``U s`` for the component sizes occurring, up to ``max_size``.

    ``Hom(U s, -)`` depends on ``s`` only through its cardinality, so one
    representative per size is enough; the empty set and a point are always
    included.
    """
    cc = objs[0].cc
    sizes = {0, 1}
    for x in objs:
        for lv in x.levels:
            sizes.update(len(s) for s in lv.family)
    return [cc.embed_U(tuple(range(k))) for k in sorted(sizes) if k <= max_size]


def is_fibration(f: SimpMorphism, projectives=None, dim: int | None = None, budget=DEFAULT_BUDGET) -> dict:
    """``Hom(P, f)`` is a Kan fibration (through ``dim``) for every ``P``."""
    projectives = projectives or default_projectives(f.source, f.target)
    dim = min(3, f.trunc) if dim is None else dim
    out = {"status": "pass", "dim": dim, "failing": None}
    for p in projectives:
        res = is_kan_fibration(hom_right_map(p, f), dim, budget)
        if res.status == "budget":
            out["status"] = "budget"
        elif not res.holds:
            out.update(status="fail", failing=list(p.family))
            return out
    return out


def is_weq(f: SimpMorphism, projectives=None, truncation: int | None = None, pi1_sensitive=False) -> dict:
    """``Hom(P, f)`` passes the homology oracle for every ``P``.

    The oracle needs one level above the checked degree, so the default
    truncation is one less than that of ``f``.
    """
    projectives = projectives or default_projectives(f.source, f.target)
    t = f.trunc - 1 if truncation is None else truncation
    if t >= f.trunc:
        raise ShapeError(f"weq truncation {t} needs data through level {t + 1}")
    out = {"status": "pass", "truncation": t, "failing": None, "reason": ""}
    for p in projectives:
        v = weq_oracle(hom_right_map(p, f), t, pi1_sensitive)
        if v.verdict == "fail":
            out.update(status="fail", failing=list(p.family), reason=v.reason)
            return out
        if v.verdict != "pass":
            out["status"] = v.verdict
    return out


# -- limits of simplicial objects ----------------------------------------------------------------------------

def pullback(f: SimpMorphism, g: SimpMorphism):
    """Levelwise pullback; returns ``(P, p1, p2)``."""
    cc = f.source.cc
    T = f.trunc
    apexes, legs = [], []
    for n in range(T + 1):
        a, ls = cc.limit([f.source.levels[n], g.source.levels[n], f.target.levels[n]],
                         [(0, 2, f.maps[n]), (1, 2, g.maps[n])])
        apexes.append(a)
        legs.append(ls)

    def induced(n_src, n_tgt, ms, mt, mw):
        return cc.induced(apexes[n_tgt], legs[n_tgt], apexes[n_src],
                          [cc.compose(ms, legs[n_src][0]), cc.compose(mt, legs[n_src][1]),
                           cc.compose(mw, legs[n_src][2])])

    faces = {(n, i): induced(n, n - 1, f.source.faces[(n, i)], g.source.faces[(n, i)], f.target.faces[(n, i)])
             for n in range(1, T + 1) for i in range(n + 1)}
    degens = {(n, j): induced(n, n + 1, f.source.degens[(n, j)], g.source.degens[(n, j)],
                              f.target.degens[(n, j)]) for n in range(T) for j in range(n + 1)}
    p = SimpObject(apexes, faces, degens, cc, check=False)
    p, iso = compact_object(p, "p")
    p1 = SimpMorphism(p, f.source, [cc.compose(legs[n][0], iso[n]) for n in range(T + 1)], check=False)
    p2 = SimpMorphism(p, g.source, [cc.compose(legs[n][1], iso[n]) for n in range(T + 1)], check=False)
    return p, p1, p2


def compact_object(x: SimpObject, prefix: str):
    """Rename every level compactly; returns ``(y, inverses)`` with ``inverses[n]: Y_n -> X_n``."""
    cc = x.cc
    news, isos, invs = [], [], []
    for n, lv in enumerate(x.levels):
        new, iso, inv = compact(lv, f"{prefix}{n}.")
        news.append(new)
        isos.append(iso)
        invs.append(inv)
    faces = {(n, i): cc.compose(isos[n - 1], cc.compose(m, invs[n])) for (n, i), m in x.faces.items()}
    degens = {(n, j): cc.compose(isos[n + 1], cc.compose(m, invs[n])) for (n, j), m in x.degens.items()}
    return SimpObject(news, faces, degens, cc, check=False), invs


def coproduct(xs) -> tuple:
    """Levelwise coproduct; returns ``(X, injections)``."""
    cc = xs[0].cc
    T = xs[0].trunc
    levels, injs = [], []
    for n in range(T + 1):
        total, ins = cc.coproduct([x.levels[n] for x in xs])
        levels.append(total)
        injs.append(ins)

    def induced(n_src, n_tgt, pick):
        return cc.copair([cc.compose(injs[n_tgt][k], pick(x)) for k, x in enumerate(xs)], levels[n_src])

    faces = {(n, i): induced(n, n - 1, lambda x, n=n, i=i: x.faces[(n, i)])
             for n in range(1, T + 1) for i in range(n + 1)}
    degens = {(n, j): induced(n, n + 1, lambda x, n=n, j=j: x.degens[(n, j)])
              for n in range(T) for j in range(n + 1)}
    out = SimpObject(levels, faces, degens, cc, check=False)
    return out, [SimpMorphism(x, out, [injs[n][k] for n in range(T + 1)], check=False)
                 for k, x in enumerate(xs)]


# -- the comparison with simplicial presheaves ------------------------------------------------------------------

def simplicial_homs(x: SimpObject, y: SimpObject, budget=10 ** 5) -> list:
    """All simplicial morphisms ``x -> y`` by levelwise backtracking."""
    cc = x.cc
    counter = Counter(budget)
    out = []

    def ok(maps):
        n = len(maps) - 1
        if n and any(cc.compose(y.faces[(n, i)], maps[n]) != cc.compose(maps[n - 1], x.faces[(n, i)])
                     for i in range(n + 1)):
            return False
        if n and any(cc.compose(y.degens[(n - 1, j)], maps[n - 1]) != cc.compose(maps[n], x.degens[(n - 1, j)])
                     for j in range(n)):
            return False
        return True

    def go(maps):
        if len(maps) == x.trunc + 1:
            out.append(SimpMorphism(x, y, list(maps), check=False))
            return
        n = len(maps)
        for m in cc.iter_hom(x.levels[n], y.levels[n]):
            counter.tick()
            maps.append(m)
            if ok(maps):
                go(maps)
            maps.pop()

    go([])
    return out


def check_R_fully_faithful(x: SimpObject, y: SimpObject, tests=None) -> bool:
    """``Hom(x, y) -> Hom(R x, R y)`` is bijective, ``R`` taking families to presheaves.

    A transformation ``R x -> R y`` over ``Delta x tests`` is a levelwise natural
    family commuting with the structure maps; levelwise transformations come
    from :func:`wfskit.coprod.nat_transformations`.
    """
    cc = x.cc
    tests = tests if tests is not None else cc.base.test_objects()
    per_level = [cp.nat_transformations(cc, x.levels[n], y.levels[n], tests) for n in range(x.trunc + 1)]

    def push(m, el):
        x_, h = el
        return (m.phi(x_), cc.base.compose(m.comp(x_), h))

    def commutes(nat_hi, nat_lo, d_src, d_tgt, k):
        for (kk, el), v in nat_hi.items():
            if push(d_tgt, v) != nat_lo[(kk, push(d_src, el))]:
                return False
        return True

    count = 0

    def go(chosen):
        nonlocal count
        n = len(chosen)
        if n == x.trunc + 1:
            count += 1
            return
        for nat in per_level[n]:
            good = True
            if n:
                for i in range(n + 1):
                    if not commutes(nat, chosen[n - 1], x.faces[(n, i)], y.faces[(n, i)], i):
                        good = False
                        break
                for j in range(n):
                    if good and not commutes(chosen[n - 1], nat, x.degens[(n - 1, j)], y.degens[(n - 1, j)], j):
                        good = False
                        break
            if good:
                chosen.append(nat)
                go(chosen)
                chosen.pop()

    go([])
    return count == len(simplicial_homs(x, y))


# -- JSON ---------------------------------------------------------------------------------------------------

def _ekey(e) -> str:
    return cp._enc(e)


def morphism_to_json(m: CoprodMorphism) -> dict:
    return {"index_map": {_ekey(x): _ekey(y) for x, y in m.index_map},
            "components": {_ekey(x): {_ekey(e): _ekey(v) for e, v in c.mapping.items()}
                           for x, c in m.components}}


def morphism_from_json(data, src: CoprodObject, tgt: CoprodObject) -> CoprodMorphism:
    try:
        idx_raw, comp_raw = data["index_map"], data["components"]
        by_name_t = {_ekey(y): y for y in tgt.index}
        idx, elem = {}, {}
        for x in src.index:
            y = by_name_t[idx_raw[_ekey(x)]]
            idx[x] = y
            tnames = {_ekey(v): v for v in tgt[y]}
            for e in src[x]:
                elem[(x, e)] = (y, tnames[comp_raw[_ekey(x)][_ekey(e)]])
    except (KeyError, TypeError) as exc:
        raise ShapeError(f"malformed morphism: missing {exc}") from None
    return make_morphism(src, tgt, idx, elem)


def to_json(x: SimpObject) -> dict:
    cc = x.cc
    return {"trunc": x.trunc,
            "levels": [cc.encode(lv) for lv in x.levels],
            "faces": {f"{n},{i}": morphism_to_json(m) for (n, i), m in sorted(x.faces.items())},
            "degens": {f"{n},{j}": morphism_to_json(m) for (n, j), m in sorted(x.degens.items())}}


def from_json(data) -> SimpObject:
    cc = FINSET_COPROD
    try:
        levels = [cc.decode(lv) for lv in data["levels"]]
        if int(data["trunc"]) != len(levels) - 1:
            raise ShapeError("trunc does not match the number of levels")
        faces, degens = {}, {}
        for key, m in data["faces"].items():
            n, i = (int(v) for v in key.split(","))
            faces[(n, i)] = morphism_from_json(m, levels[n], levels[n - 1])
        for key, m in data["degens"].items():
            n, j = (int(v) for v in key.split(","))
            degens[(n, j)] = morphism_from_json(m, levels[n], levels[n + 1])
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ShapeError(f"malformed simplicial object: {exc}") from None
    return SimpObject(levels, faces, degens, cc)


def map_to_json(f: SimpMorphism) -> dict:
    return {"levels": [morphism_to_json(m) for m in f.maps]}


def map_from_json(data, source: SimpObject, target: SimpObject) -> SimpMorphism:
    try:
        maps = [morphism_from_json(m, source.levels[n], target.levels[n]) for n, m in enumerate(data["levels"])]
    except (KeyError, TypeError, IndexError) as exc:
        raise ShapeError(f"malformed simplicial morphism: {exc}") from None
    return SimpMorphism(source, target, maps)
