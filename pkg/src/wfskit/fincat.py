"""Finite categories, functors, comma categories and nerves."""
from __future__ import annotations

from itertools import product as iproduct

from .errors import CategoryError
from .sset.core import from_levels


class FinCategory:
    """A finite category with an explicit composition table.

    ``morphisms`` maps id -> (src, dst) and must contain the identities;
    ``compose`` maps ``(g, f)`` -> ``g o f`` for composable pairs.  Entries
    involving an identity may be omitted; they are filled in.
    """

    def __init__(self, objects, morphisms: dict, compose: dict, identities: dict, *, check=True):
        self.objects = sorted(objects)
        self.mor = dict(morphisms)
        self.ident = dict(identities)
        self.comp = dict(compose)
        for x, i in self.ident.items():
            self.mor.setdefault(i, (x, x))
        for f, (a, b) in self.mor.items():
            if a in self.ident and b in self.ident:
                self.comp.setdefault((f, self.ident[a]), f)
                self.comp.setdefault((self.ident[b], f), f)
        self.homs: dict = {}
        for f in sorted(self.mor):
            self.homs.setdefault(self.mor[f], []).append(f)
        if check:
            problems = validate_category(self)
            if problems:
                p = problems[0]
                raise CategoryError(f"{p['axiom']}: {p['detail']}")

    def hom(self, a, b) -> list:
        return self.homs.get((a, b), [])

    def src(self, f):
        return self.mor[f][0]

    def dst(self, f):
        return self.mor[f][1]

    def then(self, f, g):
        """``g o f``."""
        return self.comp[(g, f)]

    def is_identity(self, f) -> bool:
        return self.ident.get(self.src(f)) == f

    def morphisms(self) -> list:
        return sorted(self.mor)

    def non_identities(self) -> list:
        return [f for f in self.morphisms() if not self.is_identity(f)]

    def out_of(self, a) -> list:
        return [f for f in self.morphisms() if self.src(f) == a]

    def into(self, b) -> list:
        return [f for f in self.morphisms() if self.dst(f) == b]

    def __eq__(self, other):
        return isinstance(other, FinCategory) and (self.objects, self.mor, self.comp, self.ident) == \
            (other.objects, other.mor, other.comp, other.ident)

    def __hash__(self):
        return hash((tuple(self.objects), tuple(sorted(self.mor.items()))))

    def __repr__(self):
        return f"FinCategory({len(self.objects)} objects, {len(self.mor)} morphisms)"


def validate_category(c: FinCategory) -> list:
    """List of violated axioms; empty means ``c`` is a category."""
    out = []
    objs = set(c.objects)
    for x in c.objects:
        if x not in c.ident:
            out.append({"axiom": "identity", "detail": f"object {x!r} has no identity", "morphisms": []})
    for x, i in c.ident.items():
        if x not in objs:
            out.append({"axiom": "identity", "detail": f"identity for unknown object {x!r}", "morphisms": [i]})
        elif c.mor.get(i) != (x, x):
            out.append({"axiom": "identity", "detail": f"{i!r} is not an endomorphism of {x!r}",
                        "morphisms": [i]})
    for f, (a, b) in c.mor.items():
        if a not in objs or b not in objs:
            out.append({"axiom": "typing", "detail": f"morphism {f!r} has unknown endpoints",
                        "morphisms": [f]})
    if out:
        return out
    for (g, f), h in c.comp.items():
        if f not in c.mor or g not in c.mor or h not in c.mor:
            out.append({"axiom": "compose", "detail": f"unknown morphism in {g!r} o {f!r} = {h!r}",
                        "morphisms": [g, f, h]})
        elif c.dst(f) != c.src(g):
            out.append({"axiom": "compose", "detail": f"{g!r} o {f!r} given for a non-composable pair",
                        "morphisms": [g, f]})
        elif c.mor[h] != (c.src(f), c.dst(g)):
            out.append({"axiom": "compose", "detail": f"{g!r} o {f!r} = {h!r} has the wrong type",
                        "morphisms": [g, f, h]})
    for f in c.morphisms():
        for g in c.out_of(c.dst(f)):
            if (g, f) not in c.comp:
                out.append({"axiom": "compose", "detail": f"{g!r} o {f!r} is missing",
                            "morphisms": [g, f]})
        i = c.ident[c.src(f)]
        j = c.ident[c.dst(f)]
        if c.comp.get((f, i)) != f or c.comp.get((j, f)) != f:
            out.append({"axiom": "unit", "detail": f"identities are not units for {f!r}", "morphisms": [f]})
    if out:
        return out
    for f in c.morphisms():
        for g in c.out_of(c.dst(f)):
            gf = c.comp[(g, f)]
            for h in c.out_of(c.dst(g)):
                if c.comp[(h, gf)] != c.comp[(c.comp[(h, g)], f)]:
                    out.append({"axiom": "associativity",
                                "detail": f"({h!r} o {g!r}) o {f!r} != {h!r} o ({g!r} o {f!r})",
                                "morphisms": [h, g, f]})
    return out


# -- constructors ----------------------------------------------------------------

def identity_id(x) -> str:
    return f"id_{x}"


def discrete(objects) -> FinCategory:
    objects = list(objects)
    return FinCategory(objects, {}, {}, {x: identity_id(x) for x in objects})


def terminal() -> FinCategory:
    return discrete(["*"])


def poset(elements, leq) -> FinCategory:
    """Poset category from a generating relation ``leq`` (pairs ``(a, b)`` with ``a <= b``)."""
    elements = list(elements)
    rel = {(a, a) for a in elements} | set(map(tuple, leq))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in list(iproduct(rel, rel)):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    for a, b in rel:
        if a != b and (b, a) in rel:
            raise CategoryError(f"relation is not antisymmetric on {a!r}, {b!r}")

    def name(a, b):
        return identity_id(a) if a == b else f"{a}<{b}"

    mor = {name(a, b): (a, b) for a, b in rel}
    comp = {(name(b, c), name(a, b)): name(a, c) for a, b in rel for b2, c in rel if b == b2}
    return FinCategory(elements, mor, comp, {a: identity_id(a) for a in elements})


def linear(n: int) -> FinCategory:
    """The ordinal ``0 < 1 < ... < n`` as a category."""
    return poset([str(k) for k in range(n + 1)], [(str(k), str(k + 1)) for k in range(n)])


def arrow() -> FinCategory:
    """The free arrow ``a -> b``."""
    return FinCategory(["a", "b"], {"f": ("a", "b")}, {}, {"a": "id_a", "b": "id_b"})


def span() -> FinCategory:
    """``a <- c -> b``."""
    return FinCategory(["a", "b", "c"], {"l": ("c", "a"), "r": ("c", "b")}, {},
                       {x: identity_id(x) for x in "abc"})


def cospan() -> FinCategory:
    """``a -> c <- b``."""
    return FinCategory(["a", "b", "c"], {"l": ("a", "c"), "r": ("b", "c")}, {},
                       {x: identity_id(x) for x in "abc"})


def monoid(elements, mult, unit, obj="*") -> FinCategory:
    """One-object category of a finite monoid; ``mult(g, f)`` is ``g o f``."""
    mor = {e: (obj, obj) for e in elements}
    comp = {(g, f): mult(g, f) for g in elements for f in elements}
    return FinCategory([obj], mor, comp, {obj: unit})


def cyclic_group(n: int) -> FinCategory:
    els = [f"g{k}" for k in range(n)]
    return monoid(els, lambda a, b: f"g{(int(a[1:]) + int(b[1:])) % n}", "g0")


def idempotent() -> FinCategory:
    """One object with a nonidentity idempotent ``e``."""
    return monoid(["1", "e"], lambda a, b: "1" if a == b == "1" else "e", "1")


def opposite(c: FinCategory) -> FinCategory:
    return FinCategory(c.objects, {f: (b, a) for f, (a, b) in c.mor.items()},
                       {(f, g): h for (g, f), h in c.comp.items()}, c.ident, check=False)


# -- functors --------------------------------------------------------------------

class FinFunctor:
    def __init__(self, source: FinCategory, target: FinCategory, obj_map: dict, mor_map: dict,
                 *, check=True):
        self.source, self.target = source, target
        self.obj_map, self.mor_map = dict(obj_map), dict(mor_map)
        for x in source.objects:
            self.mor_map.setdefault(source.ident[x], target.ident.get(self.obj_map.get(x)))
        if check:
            problems = validate_functor(self)
            if problems:
                raise CategoryError(problems[0])

    def __call__(self, f):
        return self.mor_map[f]

    def then(self, other: "FinFunctor") -> "FinFunctor":
        return FinFunctor(self.source, other.target,
                          {x: other.obj_map[y] for x, y in self.obj_map.items()},
                          {f: other.mor_map[g] for f, g in self.mor_map.items()}, check=False)


def validate_functor(F: FinFunctor) -> list:
    out = []
    s, t = F.source, F.target
    for x in s.objects:
        if F.obj_map.get(x) not in t.ident:
            out.append(f"object {x!r} is not sent to an object")
    for f in s.morphisms():
        g = F.mor_map.get(f)
        if g not in t.mor:
            out.append(f"morphism {f!r} is not sent to a morphism")
        elif out:
            continue
        elif t.mor[g] != (F.obj_map[s.src(f)], F.obj_map[s.dst(f)]):
            out.append(f"morphism {f!r} is sent to {g!r} with the wrong endpoints")
    if out:
        return out
    for x in s.objects:
        if F.mor_map[s.ident[x]] != t.ident[F.obj_map[x]]:
            out.append(f"identity of {x!r} is not preserved")
    for (g, f), h in s.comp.items():
        if t.comp[(F.mor_map[g], F.mor_map[f])] != F.mor_map[h]:
            out.append(f"composite {g!r} o {f!r} is not preserved")
    return out


def identity_functor(c: FinCategory) -> FinFunctor:
    return FinFunctor(c, c, {x: x for x in c.objects}, {f: f for f in c.mor}, check=False)


def to_terminal(c: FinCategory) -> FinFunctor:
    t = terminal()
    return FinFunctor(c, t, {x: "*" for x in c.objects}, {f: "id_*" for f in c.mor}, check=False)


def inclusion(sub: FinCategory, c: FinCategory) -> FinFunctor:
    """Inclusion of a subcategory sharing ids."""
    return FinFunctor(sub, c, {x: x for x in sub.objects}, {f: f for f in sub.mor})


def full_subcategory(c: FinCategory, objects) -> FinCategory:
    keep = set(objects)
    mor = {f: ab for f, ab in c.mor.items() if ab[0] in keep and ab[1] in keep}
    comp = {gf: h for gf, h in c.comp.items() if gf[0] in mor and gf[1] in mor}
    return FinCategory(sorted(keep), mor, comp, {x: c.ident[x] for x in keep}, check=False)


# -- comma categories ---------------------------------------------------------------

class CommaCategory:
    """A comma category together with its projection to the indexing category."""

    def __init__(self, category: FinCategory, projection: FinFunctor, pieces: dict):
        self.category = category
        self.projection = projection
        self.pieces = pieces  # object id -> (i, u)

    def __repr__(self):
        return f"CommaCategory({self.category!r})"


def comma_over(alpha: FinFunctor, j) -> CommaCategory:
    """``I x_{/J} j``: objects ``(i, u: alpha(i) -> j)``, morphisms ``a`` with ``u' o alpha(a) = u``."""
    I, J = alpha.source, alpha.target
    if j not in J.ident:
        raise CategoryError(f"unknown object {j!r}")
    pieces = {f"({i},{u})": (i, u) for i in I.objects for u in J.hom(alpha.obj_map[i], j)}
    name = {v: k for k, v in pieces.items()}
    mor, proj = {}, {}
    for k2, (i2, u2) in pieces.items():
        for i1 in I.objects:
            for a in I.hom(i1, i2):
                u1 = J.comp[(u2, alpha.mor_map[a])]
                m = f"({a};{u2})"
                mor[m] = (name[(i1, u1)], k2)
                proj[m] = a
    comp = {}
    for m2, (x, y) in mor.items():
        for m1, (w, x2) in mor.items():
            if x2 == x:
                a = I.comp[(proj[m2], proj[m1])]
                comp[(m2, m1)] = f"({a};{pieces[y][1]})"
    ident = {k: f"({I.ident[i]};{u})" for k, (i, u) in pieces.items()}
    cat = FinCategory(list(pieces), mor, comp, ident, check=False)
    P = FinFunctor(cat, I, {k: v[0] for k, v in pieces.items()}, proj, check=False)
    return CommaCategory(cat, P, pieces)


def comma_under(alpha: FinFunctor, j) -> CommaCategory:
    """``j x_{/J} I``: objects ``(i, u: j -> alpha(i))``, morphisms ``a`` with ``alpha(a) o u = u'``."""
    I, J = alpha.source, alpha.target
    if j not in J.ident:
        raise CategoryError(f"unknown object {j!r}")
    pieces = {f"({u},{i})": (i, u) for i in I.objects for u in J.hom(j, alpha.obj_map[i])}
    name = {v: k for k, v in pieces.items()}
    mor, proj = {}, {}
    for k1, (i1, u1) in pieces.items():
        for i2 in I.objects:
            for a in I.hom(i1, i2):
                u2 = J.comp[(alpha.mor_map[a], u1)]
                m = f"({u1};{a})"
                mor[m] = (k1, name[(i2, u2)])
                proj[m] = a
    comp = {}
    for m2, (x, y) in mor.items():
        for m1, (w, x2) in mor.items():
            if x2 == x:
                a = I.comp[(proj[m2], proj[m1])]
                comp[(m2, m1)] = f"({pieces[w][1]};{a})"
    ident = {k: f"({u};{I.ident[i]})" for k, (i, u) in pieces.items()}
    cat = FinCategory(list(pieces), mor, comp, ident, check=False)
    P = FinFunctor(cat, I, {k: v[0] for k, v in pieces.items()}, proj, check=False)
    return CommaCategory(cat, P, pieces)


def under_category(c: FinCategory, i) -> CommaCategory:
    """``i / c``: objects are morphisms out of ``i``."""
    return comma_under(identity_functor(c), i)


def over_category(c: FinCategory, i) -> CommaCategory:
    """``c / i``: objects are morphisms into ``i``."""
    return comma_over(identity_functor(c), i)


# -- nerves -------------------------------------------------------------------------

def chains(c: FinCategory, n: int) -> list:
    """Composable chains ``(f_1, ..., f_n)`` with ``dst(f_k) == src(f_{k+1})``; objects for ``n == 0``."""
    if n == 0:
        return list(c.objects)
    out = [(f,) for f in c.morphisms()]
    for _ in range(n - 1):
        out = [ch + (g,) for ch in out for g in c.out_of(c.dst(ch[-1]))]
    return out


def chain_objects(c: FinCategory, ch: tuple, n: int) -> tuple:
    if n == 0:
        return (ch,)
    return (c.src(ch[0]),) + tuple(c.dst(f) for f in ch)


def chain_face(c: FinCategory, n: int, i: int, ch: tuple) -> tuple:
    if n == 1:
        return c.dst(ch[0]) if i == 0 else c.src(ch[0])
    if i == 0:
        return ch[1:]
    if i == n:
        return ch[:-1]
    return ch[:i - 1] + (c.comp[(ch[i], ch[i - 1])],) + ch[i + 1:]


def chain_degen(c: FinCategory, n: int, j: int, ch: tuple) -> tuple:
    if n == 0:
        return (c.ident[ch],)
    objs = chain_objects(c, ch, n)
    return ch[:j] + (c.ident[objs[j]],) + ch[j:]


def chain_name(ch) -> str:
    return ch if isinstance(ch, str) else ";".join(ch)


def nerve_data(c: FinCategory, dim: int):
    levels = [chains(c, n) for n in range(dim + 1)]
    return from_levels(levels, lambda n, i, ch: chain_face(c, n, i, ch),
                       lambda n, j, ch: chain_degen(c, n, j, ch),
                       chain_name)


def nerve(c: FinCategory, dim: int = 3):
    """Nerve through dimension ``dim`` in Eilenberg-Zilber form.

    Nondegenerate simplices are the chains without identities, named
    ``"f1;f2;..."``; vertices keep the object ids.
    """
    if dim < 0:
        raise CategoryError("nerve dimension must be >= 0")
    return nerve_data(c, dim)[0]


def nerve_map(F: FinFunctor, dim: int = 3, src=None, tgt=None):
    """``N(F)`` through dimension ``dim``; ``src``/``tgt`` are ``nerve_data`` results to reuse."""
    from .sset.core import SSetMap
    sx, sez = src or nerve_data(F.source, dim)
    tx, tez = tgt or nerve_data(F.target, dim)
    assign = {}
    for n, table in enumerate(sez):
        for ch, (sigma, g) in table.items():
            if all(v == k for k, v in enumerate(sigma)):
                image = F.obj_map[ch] if n == 0 else tuple(F.mor_map[f] for f in ch)
                assign[g] = tez[n][image]
    return SSetMap(sx, tx, assign, check=False)


def is_homotopically_finite(c: FinCategory) -> tuple:
    """``(finite, certificate)``.

    The nerve has finitely many nondegenerate simplices exactly when the
    graph of nonidentity morphisms has no directed cycle.  The certificate
    is the maximal length of a nonidentity chain, or a cycle of morphisms.
    """
    edges: dict = {x: [] for x in c.objects}
    for f in c.non_identities():
        edges[c.src(f)].append(f)
    state, longest, stack = {}, {}, []

    def visit(x):
        state[x] = "active"
        best = 0
        for f in edges[x]:
            y = c.dst(f)
            stack.append(f)
            if state.get(y) == "active":
                k = next(k for k, g in enumerate(stack) if c.src(g) == y)
                raise _Cycle(list(stack[k:]))
            if y not in state:
                visit(y)
            stack.pop()
            best = max(best, 1 + longest[y])
        state[x] = "done"
        longest[x] = best

    try:
        for x in c.objects:
            if x not in state:
                visit(x)
    except _Cycle as cyc:
        return False, {"cycle": cyc.morphisms}
    return True, {"max_chain_length": max(longest.values(), default=0)}


class _Cycle(Exception):
    def __init__(self, morphisms):
        self.morphisms = morphisms


# -- JSON ---------------------------------------------------------------------------

def to_json(c: FinCategory) -> dict:
    return {
        "objects": list(c.objects),
        "morphisms": [{"id": f, "src": c.src(f), "dst": c.dst(f)} for f in c.morphisms()],
        "compose": sorted([g, f, h] for (g, f), h in c.comp.items()
                          if not c.is_identity(f) and not c.is_identity(g)),
        "identities": dict(sorted(c.ident.items())),
    }


def from_json(data: dict) -> FinCategory:
    try:
        mor = {}
        for m in data.get("morphisms", []):
            if m["id"] in mor:
                raise CategoryError(f"duplicate morphism id {m['id']!r}")
            mor[m["id"]] = (m["src"], m["dst"])
        comp = {}
        for g, f, h in data.get("compose", []):
            if (g, f) in comp:
                raise CategoryError(f"composite {g!r} o {f!r} given twice")
            comp[(g, f)] = h
        objects = list(data["objects"])
        if len(set(objects)) != len(objects):
            raise CategoryError("duplicate object id")
        ident = data.get("identities") or {x: identity_id(x) for x in objects}
    except (KeyError, TypeError, ValueError) as exc:
        raise CategoryError(f"malformed category: {exc}") from None
    return FinCategory(objects, mor, comp, ident)


def functor_to_json(F: FinFunctor) -> dict:
    return {"objects": dict(sorted(F.obj_map.items())), "morphisms": dict(sorted(F.mor_map.items()))}


def functor_from_json(data: dict, source: FinCategory, target: FinCategory) -> FinFunctor:
    try:
        return FinFunctor(source, target, data["objects"], data.get("morphisms", {}))
    except (KeyError, TypeError) as exc:
        raise CategoryError(f"malformed functor: {exc}") from None
