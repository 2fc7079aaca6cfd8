"""Backtracking search for simplicial maps.

Every exhaustive question in the package (lifts, right lifting properties,
mapping spaces, Ex, isomorphisms, retracts) reduces to enumerating maps
``f: X -> Y`` subject to constraints

* ``under``: ``f o lam == tau`` for given ``lam: A -> X``, ``tau: A -> Y``;
* ``over``: ``rho o f == beta`` for given ``rho: Y -> B``, ``beta: X -> B``;
* optional injectivity.

Generators of ``X`` are visited from the top dimension down.  Choosing the
image of a generator forces the images of all its faces, so most of the
search is propagation rather than branching.
"""
from __future__ import annotations

import sys

from ..errors import BudgetExceeded
from . import ops
from .core import FinSimplicialSet, SSetMap

DEFAULT_BUDGET = 10 ** 6


class Counter:
    """Partial-assignment counter shared by a search and its caller."""

    def __init__(self, budget=DEFAULT_BUDGET):
        self.budget = budget
        self.explored = 0

    def tick(self):
        self.explored += 1
        if self.budget is not None and self.explored > self.budget:
            raise BudgetExceeded(self.budget, self.explored)


def iter_maps(source: FinSimplicialSet, target: FinSimplicialSet, *, under=(), over=(),
              injective: bool = False, allowed=None, counter: Counter | None = None):
    """Yield every ``SSetMap`` ``source -> target`` meeting the constraints.

    ``allowed(g)``, when given, returns the candidate images of generator
    ``g``; it only prunes, the constraints are still enforced.
    """
    counter = counter or Counter()
    assign: dict = {}
    used: set = set()
    trail: list = []

    def undo(mark):
        while len(trail) > mark:
            g = trail.pop()
            t = assign.pop(g)
            if injective:
                used.discard(t[1])

    def put(g, t) -> bool:
        old = assign.get(g)
        if old is not None:
            return old == t
        if injective:
            if not ops.is_identity(t[0]) or t[1] in used:
                return False
            used.add(t[1])
        assign[g] = t
        trail.append(g)
        for rho, beta in over:
            if rho(t) != beta.assign[g]:
                return False
        if source.gens[g]:
            for i, (mu, h) in enumerate(source.faces[g]):
                r = ops.factor_through(target.face(i, t)[0], mu)
                if r is None:
                    return False
                if not put(h, (r, target.face(i, t)[1])):
                    return False
        return True

    for lam, tau in under:
        for a, (mu, b) in lam.assign.items():
            want = tau.assign[a]
            r = ops.factor_through(want[0], mu)
            if r is None or not put(b, (r, want[1])):
                return

    order = sorted(source.gens, key=lambda g: (-source.gens[g], g))

    def candidates(g):
        if allowed is not None:
            return allowed(g)
        k = source.gens[g]
        if injective:
            return [(ops.identity(k), h) for h in target.nd(k)]
        return target.simplices(k)

    def walk(pos):
        while pos < len(order) and order[pos] in assign:
            pos += 1
        if pos == len(order):
            yield SSetMap(source, target, assign, check=False)
            return
        g = order[pos]
        for t in candidates(g):
            counter.tick()
            mark = len(trail)
            if put(g, t):
                yield from walk(pos + 1)
            undo(mark)

    limit = sys.getrecursionlimit()
    if limit < 4 * len(order) + 200:
        sys.setrecursionlimit(4 * len(order) + 200)
    yield from walk(0)


def first_map(source, target, **kw):
    return next(iter_maps(source, target, **kw), None)


def hom_set(source, target, **kw) -> list:
    return list(iter_maps(source, target, **kw))


def _colours(xs) -> list:
    """Joint colour refinement of the generators of several simplicial sets."""
    table: dict = {}

    def intern(sig):
        return table.setdefault(sig, len(table))

    cols = [{g: intern((x.gens[g], tuple(ops.word(s) for s, _ in x.faces.get(g, ()))))
             for g in x.gens} for x in xs]
    cofaces = []
    for x in xs:
        co = {g: [] for g in x.gens}
        for g, fs in x.faces.items():
            for i, (_, h) in enumerate(fs):
                co[h].append((i, g))
        cofaces.append(co)
    while True:
        before = [len(set(c.values())) for c in cols]
        table = {}
        new = []
        for x, c, co in zip(xs, cols, cofaces):
            new.append({g: intern((c[g], tuple(c[h] for _, h in x.faces.get(g, ())),
                                   tuple(sorted((i, c[u]) for i, u in co[g]))))
                        for g in x.gens})
        cols = new
        if [len(set(c.values())) for c in cols] == before:
            return cols


def find_isomorphism(x: FinSimplicialSet, y: FinSimplicialSet, counter: Counter | None = None):
    """An isomorphism ``x -> y`` or ``None``."""
    if x.counts() != y.counts():
        return None
    cx, cy = _colours([x, y])
    if sorted(cx.values()) != sorted(cy.values()):
        return None
    by_colour: dict = {}
    for h in y.generators():
        by_colour.setdefault(cy[h], []).append((ops.identity(y.gens[h]), h))
    return first_map(x, y, injective=True, allowed=lambda g: by_colour.get(cx[g], []),
                     counter=counter)


def is_isomorphic(x, y) -> bool:
    return find_isomorphism(x, y) is not None


def is_mono(f: SSetMap) -> bool:
    seen = set()
    for g, (s, h) in f.assign.items():
        if not ops.is_identity(s) or h in seen:
            return False
        seen.add(h)
    return True


def is_epi(f: SSetMap) -> bool:
    """Surjective on simplices; equivalently every target generator is hit by a generator."""
    hit = {h for s, h in f.assign.values() if ops.is_identity(s)}
    return hit == set(f.target.gens)


def is_iso(f: SSetMap) -> bool:
    return is_mono(f) and is_epi(f)


def inverse(f: SSetMap) -> SSetMap:
    inv = {h: (ops.identity(len(s) - 1), g) for g, (s, h) in f.assign.items()}
    return SSetMap(f.target, f.source, inv, check=False)
