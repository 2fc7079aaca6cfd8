"""Finite simplicial sets in Eilenberg-Zilber form.

A simplex is a pair ``(surj, gen)``: the degeneracy ``surj`` (a surjection
``[n] ->> [k]``) applied to the nondegenerate generator ``gen`` of dimension
``k``.  By the Eilenberg-Zilber lemma this presentation is unique, so
simplices compare with ``==``.
"""
from __future__ import annotations

from itertools import combinations

from ..errors import SimplicialError
from . import ops

Simplex = tuple  # (surj: tuple[int, ...], gen: str)


def sdim(s: Simplex) -> int:
    return len(s[0]) - 1


def is_nondegenerate(s: Simplex) -> bool:
    return ops.is_identity(s[0])


def label(s: Simplex) -> str:
    """Readable, injective name for a simplex, e.g. ``"s1s0(e)"``."""
    w = ops.word(s[0])
    return f"{w}({s[1]})" if w else s[1]


class FinSimplicialSet:
    """A finite simplicial set given by nondegenerate generators and their faces.

    ``gens`` maps generator id to dimension; ``faces`` maps every generator of
    positive dimension to the tuple ``(d_0 g, ..., d_n g)`` of simplices.
    Instances are treated as immutable.
    """

    def __init__(self, gens: dict, faces: dict, *, check: bool = True):
        self.gens = dict(gens)
        self.faces = {g: tuple(fs) for g, fs in faces.items()}
        by_dim: dict[int, list] = {}
        for g, d in self.gens.items():
            by_dim.setdefault(d, []).append(g)
        self._nd = {d: tuple(sorted(v)) for d, v in by_dim.items()}
        self.dim = max(self._nd, default=-1)
        self._face_cache: dict = {}
        self._simplex_cache: dict = {}
        self._hash = None
        if check:
            problems = self.violations()
            if problems:
                raise SimplicialError(problems[0])

    # -- basic accessors -------------------------------------------------
    def nd(self, n: int) -> tuple:
        return self._nd.get(n, ())

    def generators(self) -> list:
        """Generator ids ordered by (dimension, id)."""
        return [g for d in sorted(self._nd) for g in self._nd[d]]

    def size(self) -> int:
        return len(self.gens)

    def counts(self) -> list:
        return [len(self.nd(n)) for n in range(self.dim + 1)]

    def simplex(self, g: str) -> Simplex:
        return (ops.identity(self.gens[g]), g)

    def is_empty(self) -> bool:
        return not self.gens

    def __eq__(self, other):
        if not isinstance(other, FinSimplicialSet):
            return NotImplemented
        return self.gens == other.gens and self.faces == other.faces

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.gens.items())), tuple(sorted(self.faces.items()))))
        return self._hash

    def __repr__(self):
        return f"FinSimplicialSet(counts={self.counts()})"

    # -- simplicial operators ----------------------------------------------
    def _inj_face(self, g: str, delta: tuple) -> Simplex:
        """``delta^* g`` for an injection ``delta`` into ``[dim g]``."""
        key = (g, delta)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        k = self.gens[g]
        if len(delta) == k + 1:
            out = (ops.identity(k), g)
        else:
            image = set(delta)
            i = next(t for t in range(k + 1) if t not in image)
            rest = tuple(v if v < i else v - 1 for v in delta)
            out = self.apply(rest, self.faces[g][i])
        self._face_cache[key] = out
        return out

    def apply(self, theta: tuple, s: Simplex) -> Simplex:
        """The simplicial operator ``X(theta)`` applied to ``s``."""
        sigma, g = s
        epi, mono = ops.epi_mono(ops.compose(sigma, theta))
        rho, h = self._inj_face(g, mono)
        return (ops.compose(rho, epi), h)

    def face(self, i: int, s: Simplex) -> Simplex:
        n = sdim(s)
        if n < 1 or not 0 <= i <= n:
            raise SimplicialError(f"face d_{i} undefined in dimension {n}")
        return self.apply(ops.coface(i, n), s)

    def degen(self, j: int, s: Simplex) -> Simplex:
        n = sdim(s)
        if not 0 <= j <= n:
            raise SimplicialError(f"degeneracy s_{j} undefined in dimension {n}")
        return (ops.compose(s[0], ops.codegeneracy(j, n)), s[1])

    def vertices(self, s: Simplex) -> tuple:
        n = sdim(s)
        return tuple(self.apply((v,), s)[1] for v in range(n + 1))

    def simplices(self, n: int) -> tuple:
        """Every ``n``-simplex, degenerate ones included, in a fixed order."""
        hit = self._simplex_cache.get(n)
        if hit is None:
            hit = tuple((sigma, g) for g in self.generators() if self.gens[g] <= n
                        for sigma in ops.surjections(n, self.gens[g]))
            self._simplex_cache[n] = hit
        return hit

    def lift_degenerate(self, s: Simplex, mu: tuple):
        """The simplex ``t`` with ``X(mu) t == s`` (``mu`` a surjection), or ``None``."""
        r = ops.factor_through(s[0], mu)
        if r is None:
            return None
        return (r, s[1])

    # -- validation ----------------------------------------------------------
    def violations(self) -> list:
        out = []
        for g, d in self.gens.items():
            if not isinstance(d, int) or d < 0:
                out.append(f"generator {g!r} has invalid dimension {d!r}")
                continue
            fs = self.faces.get(g, ())
            if d == 0:
                if fs:
                    out.append(f"vertex {g!r} has faces")
                continue
            if len(fs) != d + 1:
                out.append(f"generator {g!r} of dimension {d} has {len(fs)} faces")
                continue
            for i, (sigma, h) in enumerate(fs):
                if h not in self.gens:
                    out.append(f"face d_{i} of {g!r} references unknown generator {h!r}")
                elif len(sigma) != d or not ops.is_surjection(sigma) or sigma[-1] != self.gens[h]:
                    out.append(f"face d_{i} of {g!r} is not in Eilenberg-Zilber form")
        for g in self.faces:
            if g not in self.gens:
                out.append(f"faces given for unknown generator {g!r}")
        if out:
            return out
        for g in self.generators():
            d = self.gens[g]
            if d < 2:
                continue
            fs = self.faces[g]
            for j in range(d + 1):
                for i in range(j):
                    if self.face(i, fs[j]) != self.face(j - 1, fs[i]):
                        out.append(f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails on {g!r}")
        return out

    # -- derived objects -----------------------------------------------------
    def opposite(self) -> "FinSimplicialSet":
        """Reverse the vertex order of every simplex."""
        def rev(s):
            sigma, g = s
            n, k = len(sigma) - 1, sigma[-1]
            return (tuple(k - sigma[n - i] for i in range(n + 1)), g)
        faces = {g: tuple(rev(fs[d - i]) for i in range(d + 1))
                 for g, fs in self.faces.items() for d in [self.gens[g]]}
        return FinSimplicialSet(self.gens, faces, check=False)

    def skeleton(self, n: int) -> "FinSimplicialSet":
        gens = {g: d for g, d in self.gens.items() if d <= n}
        return FinSimplicialSet(gens, {g: f for g, f in self.faces.items() if g in gens}, check=False)


class SSetMap:
    """A simplicial map, given by the images of the source generators."""

    def __init__(self, source: FinSimplicialSet, target: FinSimplicialSet, assign: dict,
                 *, check: bool = True):
        self.source = source
        self.target = target
        self.assign = dict(assign)
        if check:
            problems = self.violations()
            if problems:
                raise SimplicialError(problems[0])

    def __call__(self, s: Simplex) -> Simplex:
        return self.target.apply(s[0], self.assign[s[1]])

    def violations(self) -> list:
        out = []
        if set(self.assign) != set(self.source.gens):
            out.append("assignment does not cover exactly the source generators")
            return out
        for g in self.source.generators():
            img = self.assign[g]
            sigma, h = img
            if h not in self.target.gens or len(sigma) != self.source.gens[g] + 1 \
                    or not ops.is_surjection(sigma) or sigma[-1] != self.target.gens[h]:
                out.append(f"image of {g!r} is not a simplex of the right dimension")
                continue
        if out:
            return out
        for g in self.source.generators():
            d = self.source.gens[g]
            for i in range(d + 1) if d else ():
                if self.target.face(i, self.assign[g]) != self(self.source.faces[g][i]):
                    out.append(f"map does not commute with d_{i} on {g!r}")
        return out

    def then(self, other: "SSetMap") -> "SSetMap":
        """``other o self``."""
        return SSetMap(self.source, other.target,
                       {g: other(s) for g, s in self.assign.items()}, check=False)

    def is_identity(self) -> bool:
        return self.source == self.target and all(
            s == self.source.simplex(g) for g, s in self.assign.items())

    def __eq__(self, other):
        if not isinstance(other, SSetMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.assign == other.assign)

    def __hash__(self):
        return hash(tuple(sorted(self.assign.items())))

    def __repr__(self):
        return f"SSetMap({self.source!r} -> {self.target!r})"


def identity_map(x: FinSimplicialSet) -> SSetMap:
    return SSetMap(x, x, {g: x.simplex(g) for g in x.gens}, check=False)


def compose(g: SSetMap, f: SSetMap) -> SSetMap:
    """``g o f``."""
    return f.then(g)


# -- standard objects ----------------------------------------------------------

def _vertex_name(vs, names) -> str:
    parts = [names(v) for v in vs]
    if all(len(p) == 1 for p in parts):
        return "".join(parts)
    return ",".join(parts)


def ordered_complex_data(simplices, name=str) -> tuple:
    """Simplicial set of an ordered simplicial complex, with vertex lists.

    ``simplices`` are increasing tuples of comparable vertices; all faces are
    added.  Every simplex is nondegenerate and faces drop one vertex.  Returns
    ``(X, verts)`` where ``verts[g]`` is the vertex tuple of generator ``g``.
    """
    closed = set()
    for s in simplices:
        s = tuple(s)
        for k in range(1, len(s) + 1):
            closed.update(combinations(s, k))
    ids = {s: _vertex_name(s, name) for s in closed}
    if len(set(ids.values())) != len(ids):
        ids = {s: "(" + ",".join(name(v) for v in s) + ")" for s in closed}
    gens = {ids[s]: len(s) - 1 for s in closed}
    faces = {}
    for s in closed:
        if len(s) > 1:
            faces[ids[s]] = tuple((ops.identity(len(s) - 2), ids[s[:i] + s[i + 1:]])
                                  for i in range(len(s)))
    return FinSimplicialSet(gens, faces, check=False), {ids[s]: s for s in closed}


def ordered_complex(simplices, name=str) -> FinSimplicialSet:
    return ordered_complex_data(simplices, name)[0]


def order_map(source, source_verts, target, target_verts, fn) -> SSetMap:
    """Map of ordered complexes induced by an order-preserving vertex function."""
    lookup = {vs: g for g, vs in target_verts.items()}
    assign = {}
    for g, vs in source_verts.items():
        epi, mono = _rank(tuple(fn(v) for v in vs))
        assign[g] = (epi, lookup[mono])
    return SSetMap(source, target, assign, check=False)


def _rank(image):
    distinct = tuple(sorted(set(image)))
    pos = {v: k for k, v in enumerate(distinct)}
    return tuple(pos[v] for v in image), distinct


def empty() -> FinSimplicialSet:
    return FinSimplicialSet({}, {}, check=False)


def delta(n: int) -> FinSimplicialSet:
    """The standard simplex; generators are named by their vertex lists, e.g. ``"012"``."""
    if n < 0:
        raise SimplicialError("delta(n) needs n >= 0")
    return ordered_complex([tuple(range(n + 1))])


def top(n: int) -> str:
    return _vertex_name(range(n + 1), str)


def boundary(n: int) -> FinSimplicialSet:
    if n < 0:
        raise SimplicialError("boundary(n) needs n >= 0")
    return subcomplex(delta(n), [g for g in delta(n).gens if delta(n).gens[g] < n])[0]


def horn(n: int, k: int) -> FinSimplicialSet:
    if not 0 <= k <= n or n < 1:
        raise SimplicialError(f"horn({n}, {k}) is undefined")
    d = delta(n)
    missing = d.faces[top(n)][k][1]
    keep = [g for g in d.gens if d.gens[g] < n and g != missing]
    return subcomplex(d, keep)[0]


def inclusion(sub: FinSimplicialSet, ambient: FinSimplicialSet) -> SSetMap:
    """The inclusion of a subcomplex sharing generator names."""
    return SSetMap(sub, ambient, {g: ambient.simplex(g) for g in sub.gens})


def boundary_inclusion(n: int) -> SSetMap:
    return inclusion(boundary(n), delta(n))


def horn_inclusion(n: int, k: int) -> SSetMap:
    return inclusion(horn(n, k), delta(n))


def simplex_map(theta: tuple, n: int) -> SSetMap:
    """``Delta[m] -> Delta[n]`` induced by the monotone map ``theta``."""
    m = len(theta) - 1
    src, tgt = delta(m), delta(n)
    assign = {}
    for g in src.gens:
        verts = [int(v) for v in (g.split(",") if "," in g else g)]
        image = tuple(theta[v] for v in verts)
        epi, mono = ops.epi_mono(image)
        assign[g] = (epi, _vertex_name(mono, str))
    return SSetMap(src, tgt, assign, check=False)


def terminal_map(x: FinSimplicialSet) -> SSetMap:
    pt = delta(0)
    return SSetMap(x, pt, {g: (tuple([0] * (d + 1)), "0") for g, d in x.gens.items()}, check=False)


def subcomplex(x: FinSimplicialSet, gens) -> tuple:
    """Smallest subcomplex containing ``gens``; returns ``(sub, inclusion)``."""
    keep, stack = set(), list(gens)
    while stack:
        g = stack.pop()
        if g in keep:
            continue
        keep.add(g)
        stack.extend(h for _, h in x.faces.get(g, ()))
    sub = FinSimplicialSet({g: x.gens[g] for g in keep},
                           {g: x.faces[g] for g in keep if g in x.faces}, check=False)
    return sub, SSetMap(sub, x, {g: x.simplex(g) for g in keep}, check=False)


def from_levels(levels, face, degen, name):
    """Build a simplicial set from explicitly enumerated levels ``0..T``.

    ``levels[n]`` lists the ``n``-simplices (hashable tokens), ``face(n, i, e)``
    and ``degen(n, j, e)`` implement the structure maps and ``name(e)`` gives
    generator ids.  Returns ``(X, ez)`` with ``ez[n][e]`` the Eilenberg-Zilber
    form of ``e``; the result is the ``T``-skeleton.
    """
    gens, faces, ez = {}, {}, []
    for n, level in enumerate(levels):
        table = {}
        if n:
            for e_low, (sigma, g) in ez[n - 1].items():
                for j in range(n):
                    e = degen(n - 1, j, e_low)
                    s = (ops.compose(sigma, ops.codegeneracy(j, n - 1)), g)
                    prev = table.setdefault(e, s)
                    if prev != s:
                        raise SimplicialError(f"inconsistent degeneracies at level {n}")
        for e in level:
            if e in table:
                continue
            g = name(e)
            if g in gens:
                raise SimplicialError(f"duplicate generator name {g!r}")
            gens[g] = n
            table[e] = (ops.identity(n), g)
            if n:
                faces[g] = tuple(ez[n - 1][face(n, i, e)] for i in range(n + 1))
        if len(table) != len(set(level)):
            raise SimplicialError(f"level {n} is not closed under degeneracies")
        ez.append(table)
    return FinSimplicialSet(gens, faces, check=False), ez


def relabel(x: FinSimplicialSet, rename) -> tuple:
    """Rename generators with an injective function; returns ``(y, iso)``."""
    new = {g: rename(g) for g in x.gens}
    if len(set(new.values())) != len(new):
        raise SimplicialError("relabelling is not injective")
    y = FinSimplicialSet({new[g]: d for g, d in x.gens.items()},
                         {new[g]: tuple((s, new[h]) for s, h in fs) for g, fs in x.faces.items()},
                         check=False)
    return y, SSetMap(x, y, {g: y.simplex(new[g]) for g in x.gens}, check=False)


def canonical(x: FinSimplicialSet) -> tuple:
    """Rename generators to ``d<dim>_<k>`` in (dim, id) order; returns ``(y, iso)``."""
    order = {}
    for n in range(x.dim + 1):
        for k, g in enumerate(x.nd(n)):
            order[g] = f"d{n}_{k}"
    return relabel(x, order.__getitem__)


# -- JSON --------------------------------------------------------------------

def to_json(x: FinSimplicialSet) -> dict:
    return {
        "dims": x.dim,
        "nd": {str(n): list(x.nd(n)) for n in range(x.dim + 1)},
        "faces": {g: [[ops.word(s), h] for s, h in x.faces[g]] for g in x.generators() if x.gens[g]},
    }


def from_json(data: dict) -> FinSimplicialSet:
    gens = {}
    for n, ids in data.get("nd", {}).items():
        for g in ids:
            if g in gens:
                raise SimplicialError(f"duplicate generator {g!r}")
            gens[g] = int(n)
    faces = {}
    for g, fs in data.get("faces", {}).items():
        if g not in gens:
            raise SimplicialError(f"faces given for unknown generator {g!r}")
        out = []
        for w, h in fs:
            if h not in gens:
                raise SimplicialError(f"face of {g!r} references unknown generator {h!r}")
            try:
                out.append((ops.parse_word(w, gens[h]), h))
            except ValueError as exc:
                raise SimplicialError(str(exc)) from None
        faces[g] = tuple(out)
    return FinSimplicialSet(gens, faces)


def map_to_json(f: SSetMap) -> dict:
    return {"assign": {g: [ops.word(s), h] for g, (s, h) in sorted(f.assign.items())}}


def map_from_json(data: dict, source: FinSimplicialSet, target: FinSimplicialSet) -> SSetMap:
    assign = {}
    for g, (w, h) in data["assign"].items():
        if h not in target.gens:
            raise SimplicialError(f"image of {g!r} references unknown generator {h!r}")
        try:
            assign[g] = (ops.parse_word(w, target.gens[h]), h)
        except ValueError as exc:
            raise SimplicialError(str(exc)) from None
    return SSetMap(source, target, assign)
