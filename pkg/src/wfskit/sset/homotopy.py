"""Lifting problems, Kan conditions, mapping spaces and Ex."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from ..errors import BudgetExceeded, ShapeError
from . import ops
from .core import (FinSimplicialSet, SSetMap, boundary_inclusion, delta, from_levels,
                   horn_inclusion, ordered_complex_data, order_map, simplex_map, subcomplex)
from .limits import product, product_map
from .search import DEFAULT_BUDGET, Counter, iter_maps


# -- lifting -------------------------------------------------------------------

@dataclass
class Square:
    """A commuting square ``bottom o lam == rho o top``."""

    lam: SSetMap
    rho: SSetMap
    top: SSetMap
    bottom: SSetMap

    def commutes(self) -> bool:
        return self.lam.then(self.bottom).assign == self.top.then(self.rho).assign


def lifts(sq: Square, counter: Counter | None = None):
    """Iterate diagonal fillers ``sigma`` with ``sigma o lam == top`` and ``rho o sigma == bottom``."""
    return iter_maps(sq.lam.target, sq.rho.source, under=[(sq.lam, sq.top)],
                     over=[(sq.rho, sq.bottom)], counter=counter)


def find_lift(sq: Square, budget=DEFAULT_BUDGET):
    """Return ``(status, sigma, explored)`` with status ``lift``, ``none`` or ``budget``."""
    if not sq.commutes():
        raise ShapeError("lifting square does not commute")
    counter = Counter(budget)
    try:
        sigma = next(lifts(sq, counter), None)
    except BudgetExceeded:
        return "budget", None, counter.explored
    return ("lift" if sigma is not None else "none"), sigma, counter.explored


def squares(lam: SSetMap, rho: SSetMap, counter: Counter | None = None):
    """All commuting squares from ``lam`` to ``rho``, bottom map first in search order."""
    for bottom in iter_maps(lam.target, rho.target, counter=counter):
        for top in iter_maps(lam.source, rho.source, over=[(rho, lam.then(bottom))], counter=counter):
            yield Square(lam, rho, top, bottom)


@dataclass
class RLPResult:
    status: str  # "pass" | "fail" | "budget"
    checked: int = 0
    explored: int = 0
    generator: int | None = None
    square: Square | None = None
    witnesses: list = field(default_factory=list)

    @property
    def holds(self):
        return self.status == "pass"

    def __bool__(self):
        return self.holds


def has_rlp(f: SSetMap, generators, dim: int | None = None, budget=DEFAULT_BUDGET,
            keep_witnesses: bool = False) -> RLPResult:
    """Does ``f`` have the right lifting property against every generator of dimension ``<= dim``?

    Generators are tried in order and squares in search order, so the first
    failing square is deterministic.
    """
    counter = Counter(budget)
    out = RLPResult("pass")
    try:
        for k, lam in enumerate(generators):
            if dim is not None and lam.target.dim > dim:
                continue
            for sq in squares(lam, f, counter):
                out.checked += 1
                sigma = next(lifts(sq, counter), None)
                if sigma is None:
                    out.status, out.generator, out.square = "fail", k, sq
                    out.explored = counter.explored
                    return out
                if keep_witnesses:
                    out.witnesses.append((k, sq, sigma))
    except BudgetExceeded:
        out.status = "budget"
    out.explored = counter.explored
    return out


def boundary_family(dim: int) -> list:
    return [boundary_inclusion(n) for n in range(dim + 1)]


def horn_family(dim: int) -> list:
    return [horn_inclusion(n, k) for n in range(1, dim + 1) for k in range(n + 1)]


def is_kan_fibration(f: SSetMap, dim: int = 3, budget=DEFAULT_BUDGET) -> RLPResult:
    return has_rlp(f, horn_family(dim), dim, budget)


def is_trivial_fibration(f: SSetMap, dim: int = 3, budget=DEFAULT_BUDGET) -> RLPResult:
    return has_rlp(f, boundary_family(dim), dim, budget)


def yoneda(x: FinSimplicialSet, s) -> SSetMap:
    """The map ``Delta[n] -> x`` classifying the ``n``-simplex ``s``."""
    n = len(s[0]) - 1
    d = delta(n)
    return SSetMap(d, x, {g: x.apply(_verts(g), s) for g in d.gens}, check=False)


def _verts(g: str) -> tuple:
    return tuple(int(v) for v in (g.split(",") if "," in g else g))


# -- mapping spaces ------------------------------------------------------------------

def _token(f: SSetMap):
    return tuple(sorted(f.assign.items()))


def _precompose(phi: SSetMap, token, target):
    table = dict(token)
    return tuple(sorted((g, target.apply(s, table[h])) for g, (s, h) in phi.assign.items()))


class HomSpace:
    """A simplicial set of maps ``shapes[n] -> target`` with access to the maps themselves."""

    def __init__(self, sset, ez, levels, shapes, target):
        self.sset = sset
        self.ez = ez
        self.levels = levels
        self.shapes = shapes
        self.target = target
        self.token = {}
        for n, table in enumerate(ez):
            for t, (sigma, g) in table.items():
                if ops.is_identity(sigma):
                    self.token[g] = t

    def as_map(self, g) -> SSetMap:
        """The map ``shapes[n] -> target`` represented by generator ``g``."""
        n = self.sset.gens[g]
        return SSetMap(self.shapes[n], self.target, dict(self.token[g]), check=False)

    def simplex_of(self, f: SSetMap):
        return self.ez[self._level_of(f)][_token(f)]

    def _level_of(self, f):
        for n, shape in enumerate(self.shapes):
            if shape == f.source:
                return n
        raise ShapeError("map does not come from a level of this hom space")


def induced(src: HomSpace, tgt: HomSpace, fn) -> SSetMap:
    """Map of hom spaces sending the level-``n`` map ``t`` to ``fn(n, t)`` (both as tokens)."""
    assign = {g: tgt.ez[src.sset.gens[g]][fn(src.sset.gens[g], t)] for g, t in src.token.items()}
    return SSetMap(src.sset, tgt.sset, assign, check=False)


def levelwise_hom(shapes, faces, degens, target, dim, name_prefix="m", counter=None) -> HomSpace:
    """Simplicial set ``n -> Hom(shapes[n], target)`` for a cosimplicial object ``shapes``.

    ``faces[n][i]: shapes[n-1] -> shapes[n]`` and ``degens[n][j]: shapes[n+1] -> shapes[n]``.
    """
    levels = [[_token(f) for f in iter_maps(shapes[n], target, counter=counter)]
              for n in range(dim + 1)]
    names = {}
    for n, lv in enumerate(levels):
        for k, t in enumerate(lv):
            names[t] = f"{name_prefix}{n}.{k}"

    def face(n, i, t):
        return _precompose(faces[n][i], t, target)

    def degen(n, j, t):
        return _precompose(degens[n][j], t, target)

    x, ez = from_levels(levels, face, degen, names.__getitem__)
    return HomSpace(x, ez, levels, shapes, target)


@lru_cache(maxsize=None)
def _simplex_maps(n: int):
    return ([simplex_map(ops.coface(i, n), n) for i in range(n + 1)] if n else [],
            [simplex_map(ops.codegeneracy(j, n), n + 1) for j in range(n + 1)])


def _product_tower(x: FinSimplicialSet, dim: int):
    prods = [product(x, delta(n)) for n in range(dim + 1)]
    idx = SSetMap(x, x, {g: x.simplex(g) for g in x.gens}, check=False)
    faces, degens = {}, {}
    for n in range(dim + 1):
        df, dg = _simplex_maps(n)
        faces[n] = [product_map(idx, d, prods[n - 1], prods[n]) for d in df]
        if n < dim:
            degens[n] = [product_map(idx, s, prods[n + 1], prods[n]) for s in dg]
    return prods, faces, degens


def mapping_space_data(x: FinSimplicialSet, y: FinSimplicialSet, dim: int = 3, counter=None) -> HomSpace:
    prods, faces, degens = _product_tower(x, dim)
    return levelwise_hom([p[0] for p in prods], faces, degens, y, dim, counter=counter)


def mapping_space(x: FinSimplicialSet, y: FinSimplicialSet, dim: int = 3, counter=None):
    """``Map(x, y)`` through dimension ``dim``: ``n``-simplices are maps ``x * Delta[n] -> y``."""
    return mapping_space_data(x, y, dim, counter).sset


def postcompose(src: HomSpace, tgt: HomSpace, h: SSetMap) -> SSetMap:
    """``Map(x, h): Map(x, y) -> Map(x, z)``."""
    return induced(src, tgt, lambda n, t: tuple((g, h(s)) for g, s in t))


def precompose(src: HomSpace, tgt: HomSpace, f: SSetMap) -> SSetMap:
    """``Map(f, y): Map(b, y) -> Map(a, y)`` for ``f: a -> b``; ``src`` is over ``b``."""
    cache = {}

    def fn(n, t):
        if n not in cache:
            d = delta(n)
            idd = SSetMap(d, d, {g: d.simplex(g) for g in d.gens}, check=False)
            cache[n] = product_map(f, idd, product(f.source, d), product(f.target, d))
        return _precompose(cache[n], t, src.target)

    return induced(src, tgt, fn)


# -- subdivision and Ex -----------------------------------------------------------------

@lru_cache(maxsize=None)
def sd_simplex(n: int):
    """Barycentric subdivision of ``Delta[n]``: the nerve of its poset of faces.

    Returns ``(X, verts)``; vertices are ``(len(S), S)`` for nonempty ``S``.
    """
    faces = [(len(c), c) for k in range(1, n + 2) for c in combinations(range(n + 1), k)]
    chains = []

    def grow(chain):
        last = chain[-1][1]
        extended = False
        for v in faces:
            if v[0] > len(last) and set(last) <= set(v[1]):
                grow(chain + [v])
                extended = True
        if not extended:
            chains.append(tuple(chain))

    for v in faces:
        if v[0] == 1:
            grow([v])
    return ordered_complex_data(chains, lambda v: "".join(map(str, v[1])))


def sd_map(theta: tuple, n: int) -> SSetMap:
    """``sd(theta): sd Delta[m] -> sd Delta[n]``."""
    m = len(theta) - 1
    (src, sv), (tgt, tv) = sd_simplex(m), sd_simplex(n)

    def fn(v):
        image = tuple(sorted({theta[i] for i in v[1]}))
        return (len(image), image)

    return order_map(src, sv, tgt, tv, fn)


def last_vertex(n: int) -> SSetMap:
    src, sv = sd_simplex(n)
    d, dv = ordered_complex_data([tuple(range(n + 1))])
    return order_map(src, sv, d, dv, lambda v: v[1][-1])


def ex(x: FinSimplicialSet, dim: int = 3, counter=None):
    """``Ex(x)`` through dimension ``dim`` and the last-vertex map ``e: sk_dim x -> Ex(x)``."""
    shapes = [sd_simplex(n)[0] for n in range(dim + 1)]
    faces = {n: [sd_map(ops.coface(i, n), n) for i in range(n + 1)] if n else []
             for n in range(dim + 1)}
    degens = {n: [sd_map(ops.codegeneracy(j, n), n) for j in range(n + 1)] for n in range(dim)}
    hs = levelwise_hom(shapes, faces, degens, x, dim, name_prefix="x", counter=counter)
    e_x, ez = hs.sset, hs.ez
    sk, _ = subcomplex(x, [g for g in x.gens if x.gens[g] <= dim])
    assign = {}
    for g in sk.gens:
        k = x.gens[g]
        lv = last_vertex(k)
        token = tuple(sorted((c, x.apply(s, x.apply(_verts(h), x.simplex(g))))
                             for c, (s, h) in lv.assign.items()))
        assign[g] = ez[k][token]
    return e_x, SSetMap(sk, e_x, assign, check=False)
