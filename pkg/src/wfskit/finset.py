"""Finite sets and functions, the simplest ambient for lifting problems."""
from __future__ import annotations

from itertools import product as iproduct

from .errors import ShapeError


def fset(elements) -> tuple:
    """Canonical form of a finite set: a sorted tuple without repeats."""
    return tuple(sorted(set(elements), key=repr))


class SetMap:
    """A function between finite sets given as sorted tuples."""

    __slots__ = ("source", "target", "mapping")

    def __init__(self, source, target, mapping: dict, *, check=True):
        self.source = fset(source)
        self.target = fset(target)
        self.mapping = dict(mapping)
        if check:
            if set(self.mapping) != set(self.source):
                raise ShapeError("function is not defined on exactly its source")
            tgt = set(self.target)
            if any(v not in tgt for v in self.mapping.values()):
                raise ShapeError("function takes a value outside its target")

    def __call__(self, a):
        return self.mapping[a]

    def then(self, other: "SetMap") -> "SetMap":
        return SetMap(self.source, other.target, {a: other.mapping[b] for a, b in self.mapping.items()},
                      check=False)

    def __eq__(self, other):
        return isinstance(other, SetMap) and (self.source, self.target, self.mapping) == \
            (other.source, other.target, other.mapping)

    def __hash__(self):
        return hash((self.source, self.target, tuple(sorted(self.mapping.items(), key=repr))))

    def __repr__(self):
        return f"SetMap({dict(sorted(self.mapping.items(), key=repr))!r})"


def identity(a) -> SetMap:
    a = fset(a)
    return SetMap(a, a, {x: x for x in a}, check=False)


def functions(a, b, fixed=None):
    """All functions ``a -> b`` extending the partial assignment ``fixed``."""
    a, b = fset(a), fset(b)
    fixed = fixed or {}
    free = [x for x in a if x not in fixed]
    for values in iproduct(b, repeat=len(free)):
        m = dict(fixed)
        m.update(zip(free, values))
        yield SetMap(a, b, m, check=False)


def is_injective(f: SetMap) -> bool:
    return len(set(f.mapping.values())) == len(f.source)


def is_surjective(f: SetMap) -> bool:
    return set(f.mapping.values()) == set(f.target)


def section(f: SetMap):
    """A right inverse of ``f`` or ``None``."""
    if not is_surjective(f):
        return None
    inv = {}
    for a in f.source:
        inv.setdefault(f.mapping[a], a)
    return SetMap(f.target, f.source, inv, check=False)


def retraction(f: SetMap):
    """A left inverse of ``f`` or ``None``."""
    if not is_injective(f) or (not f.source and f.target):
        return None
    back = {b: a for a, b in f.mapping.items()}
    base = f.source[0] if f.source else None
    return SetMap(f.target, f.source, {y: back.get(y, base) for y in f.target}, check=False)


def coproduct(sets, tags=None):
    """Tagged disjoint union; returns ``(S, injections)``."""
    sets = [fset(s) for s in sets]
    tags = tags or list(range(len(sets)))
    total = fset((t, x) for t, s in zip(tags, sets) for x in s)
    injs = [SetMap(s, total, {x: (t, x) for x in s}, check=False) for t, s in zip(tags, sets)]
    return total, injs


def copair(maps, total):
    """``[f_0, f_1, ...]`` out of a tagged coproduct built with default tags."""
    target = maps[0].target
    m = {}
    for (t, x) in total:
        m[(t, x)] = maps[t].mapping[x]
    return SetMap(total, target, m, check=False)


def product(a, b):
    a, b = fset(a), fset(b)
    p = fset(iproduct(a, b))
    return p, SetMap(p, a, {x: x[0] for x in p}, check=False), SetMap(p, b, {x: x[1] for x in p}, check=False)


def pullback(f: SetMap, g: SetMap):
    if f.target != g.target:
        raise ShapeError("pullback needs a cospan")
    p = fset((x, y) for x in f.source for y in g.source if f(x) == g(y))
    return (p, SetMap(p, f.source, {x: x[0] for x in p}, check=False),
            SetMap(p, g.source, {x: x[1] for x in p}, check=False))


def pushout(f: SetMap, g: SetMap):
    """Pushout of ``B <-f- A -g-> C``; elements are equivalence classes (sorted tuples)."""
    if f.source != g.source:
        raise ShapeError("pushout needs a span")
    total, (ib, ic) = coproduct([f.target, g.target])
    parent = {x: x for x in total}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for a in f.source:
        r1, r2 = find(ib(f(a))), find(ic(g(a)))
        if r1 != r2:
            parent[max(r1, r2, key=repr)] = min(r1, r2, key=repr)
    classes: dict = {}
    for x in total:
        classes.setdefault(find(x), []).append(x)
    name = {x: fset(v) for v in classes.values() for x in v}
    p = fset(name.values())
    q = SetMap(total, p, name, check=False)
    return p, ib.then(q), ic.then(q)
