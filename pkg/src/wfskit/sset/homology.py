"""pi_0, integral homology and a homology-based weak-equivalence oracle.

Homology is computed from the normalized chain complex (nondegenerate
simplices only).  Ranks and torsion come from a sparse integer Smith normal
form reduction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from . import ops
from .core import FinSimplicialSet, SSetMap


# -- Smith normal form ---------------------------------------------------------

def elementary_divisors(rows) -> list:
    """Invariant factors of an integer matrix given as a list of ``{col: value}`` rows.

    The result is sorted with each entry dividing the next; its length is
    the rank.
    """
    rows = {r: {c: v for c, v in row.items() if v} for r, row in enumerate(rows)}
    rows = {r: row for r, row in rows.items() if row}
    cols: dict = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)
    diag = []

    def add_row(dst, src, q):
        # rows[dst] -= q * rows[src]
        rd = rows[dst]
        for c, v in rows[src].items():
            nv = rd.get(c, 0) - q * v
            if nv:
                if c not in rd:
                    cols[c].add(dst)
                rd[c] = nv
            elif c in rd:
                del rd[c]
                cols[c].discard(dst)

    while rows:
        # pivot: a unit if there is one, else the smallest entry
        best = None
        for r, row in rows.items():
            for c, v in row.items():
                if best is None or abs(v) < abs(best[2]):
                    best = (r, c, v)
                    if abs(v) == 1:
                        break
            if best is not None and abs(best[2]) == 1:
                break
        r, c, v = best
        clean = True
        for r2 in sorted(cols[c] - {r}):
            q = rows[r2][c] // v
            add_row(r2, r, q)
            if c in rows[r2]:
                clean = False
            if not rows[r2]:
                del rows[r2]
        if not clean:
            continue
        row = rows[r]
        if any(w % v for cc, w in row.items() if cc != c):
            # column operations reduce the pivot row to remainders
            for cc in [cc for cc in row if cc != c]:
                w = row[cc] - (row[cc] // v) * v
                if w:
                    row[cc] = w
                else:
                    del row[cc]
                    cols[cc].discard(r)
            continue
        for cc in list(row):
            cols[cc].discard(r)
        del rows[r]
        diag.append(abs(v))
    diag.sort()
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                if b % a:
                    g = gcd(a, b)
                    diag[i], diag[j] = g, a * b // g
                    changed = True
        diag.sort()
    return diag


# -- chain complexes ---------------------------------------------------------

def boundary_rows(x: FinSimplicialSet, n: int) -> list:
    """Matrix of the normalized boundary C_n -> C_{n-1}, as rows indexed by ``nd(n-1)``."""
    low = {g: k for k, g in enumerate(x.nd(n - 1))}
    rows = [dict() for _ in low]
    if n <= 0:
        return rows
    for col, g in enumerate(x.nd(n)):
        for i, (s, h) in enumerate(x.faces[g]):
            if ops.is_identity(s):
                r = low[h]
                rows[r][col] = rows[r].get(col, 0) + (-1) ** i
    return rows


@dataclass
class HomologyProfile:
    """Betti numbers and torsion coefficients in degrees ``0..truncation``."""

    truncation: int
    betti: list = field(default_factory=list)
    torsion: list = field(default_factory=list)

    def to_json(self):
        return {"truncation": self.truncation,
                "groups": [{"degree": n, "betti": b, "torsion": list(t)}
                           for n, (b, t) in enumerate(zip(self.betti, self.torsion))]}

    def group(self, n):
        return self.betti[n], tuple(self.torsion[n])

    def __str__(self):
        parts = []
        for n, (b, t) in enumerate(zip(self.betti, self.torsion)):
            terms = (["Z" if b == 1 else f"Z^{b}"] if b else []) + [f"Z/{d}" for d in t]
            parts.append(f"H_{n} = {' + '.join(terms) or '0'}")
        return ", ".join(parts)


def _profile_from_complex(sizes: list, mats: dict, truncation: int) -> HomologyProfile:
    """``sizes[n]`` = rank of C_n, ``mats[n]`` = rows of d_n: C_n -> C_{n-1}."""
    divs = {}

    def divisors(n):
        if n not in divs:
            divs[n] = elementary_divisors(mats[n]) if n in mats and n < len(sizes) else []
        return divs[n]

    prof = HomologyProfile(truncation)
    for n in range(truncation + 1):
        c = sizes[n] if n < len(sizes) else 0
        out_rank = len(divisors(n)) if n > 0 else 0
        in_div = divisors(n + 1)
        prof.betti.append(c - out_rank - len(in_div))
        prof.torsion.append([d for d in in_div if d > 1])
    return prof


def homology(x: FinSimplicialSet, truncation: int = 3) -> HomologyProfile:
    sizes = [len(x.nd(n)) for n in range(truncation + 2)]
    mats = {n: boundary_rows(x, n) for n in range(1, truncation + 2)}
    return _profile_from_complex(sizes, mats, truncation)


def cone_homology(f: SSetMap, truncation: int = 3) -> HomologyProfile:
    """Homology of the mapping cone of the induced chain map.

    ``Cone_n = C_{n-1}(X) + C_n(Y)`` with ``d(x, y) = (-dx, f(x) + dy)``.
    """
    x, y = f.source, f.target
    sizes, mats = [], {}
    for n in range(truncation + 2):
        sizes.append(len(x.nd(n - 1)) + len(y.nd(n)) if n else len(y.nd(0)))
    for n in range(1, truncation + 2):
        nx_low = len(x.nd(n - 2)) if n >= 2 else 0
        rows = [dict() for _ in range(nx_low + len(y.nd(n - 1)))]
        xcols = len(x.nd(n - 1))
        if n >= 2:
            for r, row in enumerate(boundary_rows(x, n - 1)):
                for c, v in row.items():
                    rows[r][c] = -v
        ylow = {g: k for k, g in enumerate(y.nd(n - 1))}
        for c, g in enumerate(x.nd(n - 1)):
            s, h = f.assign[g]
            if ops.is_identity(s):
                r = nx_low + ylow[h]
                rows[r][c] = rows[r].get(c, 0) + 1
        for r, row in enumerate(boundary_rows(y, n)):
            for c, v in row.items():
                rows[nx_low + r][xcols + c] = v
        mats[n] = rows
    return _profile_from_complex(sizes, mats, truncation)


# -- pi_0 ------------------------------------------------------------------------

def components(x: FinSimplicialSet) -> dict:
    """Map each vertex to the least vertex of its path component."""
    parent = {v: v for v in x.nd(0)}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for e in x.nd(1):
        a, b = find(x.faces[e][0][1]), find(x.faces[e][1][1])
        if a != b:
            a, b = min(a, b), max(a, b)
            parent[b] = a
    return {v: find(v) for v in x.nd(0)}


def pi0(x: FinSimplicialSet) -> list:
    """Path components as sorted tuples of vertices."""
    groups: dict = {}
    for v, r in components(x).items():
        groups.setdefault(r, []).append(v)
    return sorted(tuple(sorted(vs)) for vs in groups.values())


def pi0_map(f: SSetMap) -> dict:
    cx, cy = components(f.source), components(f.target)
    return {cx[v]: cy[f.assign[v][1]] for v in f.source.nd(0)}


# -- weak-equivalence oracle -------------------------------------------------------

@dataclass
class WeqVerdict:
    verdict: str  # "pass" | "fail" | "inconclusive"
    truncation: int
    reason: str = ""
    source: HomologyProfile | None = None
    target: HomologyProfile | None = None

    @property
    def ok(self):
        return self.verdict == "pass"

    def to_json(self):
        out = {"verdict": self.verdict, "truncation": self.truncation, "reason": self.reason}
        if self.source is not None:
            out["source"] = self.source.to_json()
            out["target"] = self.target.to_json()
        return out


def weq_oracle(f: SSetMap, truncation: int = 3, pi1_sensitive: bool = False) -> WeqVerdict:
    """Decide whether ``f`` induces a bijection on pi_0 and isomorphisms on ``H_n``, ``n <= truncation``.

    The cone must be acyclic below the truncation; in the top degree the map
    is then onto, and it is an isomorphism exactly when both groups agree
    (finitely generated abelian groups are Hopfian).  A positive answer says
    nothing about fundamental groups, so callers that may hit such cases
    set ``pi1_sensitive`` and receive ``inconclusive`` instead of ``pass``.
    """
    hx, hy = homology(f.source, truncation), homology(f.target, truncation)
    m = pi0_map(f)
    if len(set(m.values())) != len(m) or len(set(m.values())) != len(pi0(f.target)):
        return WeqVerdict("fail", truncation, "pi_0 is not a bijection", hx, hy)
    hc = cone_homology(f, truncation)
    for n in range(truncation + 1):
        bad = hc.group(n) != (0, ())
        if n == truncation:
            bad = bad or hx.group(n) != hy.group(n)
        if bad:
            return WeqVerdict("fail", truncation, f"H_{n} is not mapped isomorphically", hx, hy)
    if pi1_sensitive:
        return WeqVerdict("inconclusive", truncation, "homology agrees but pi_1 is not checked", hx, hy)
    return WeqVerdict("pass", truncation, "", hx, hy)
