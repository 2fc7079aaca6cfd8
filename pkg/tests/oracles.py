"""Independent reference computations used to cross-check the library.

Everything here is written directly from definitions and deliberately avoids
the search and homology code under test.
"""
from __future__ import annotations

from itertools import product as iproduct

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from wfskit.sset.core import SSetMap


def brute_maps(x, y):
    """Every simplicial map ``x -> y``: choose an image for each generator, dimension by dimension."""
    gens = x.generators()
    out = []

    def walk(k, assign):
        if k == len(gens):
            out.append(SSetMap(x, y, dict(assign), check=False))
            return
        g = gens[k]
        d = x.gens[g]
        for s in y.simplices(d):
            ok = True
            if d:
                for i, fc in enumerate(x.faces[g]):
                    want = y.apply(fc[0], assign[fc[1]])
                    if y.face(i, s) != want:
                        ok = False
                        break
            if ok:
                assign[g] = s
                walk(k + 1, assign)
                del assign[g]

    walk(0, {})
    return out


def _compose(f, g):
    """``g o f`` computed by hand."""
    return {h: g.target.apply(s[0], g.assign[s[1]]) for h, s in f.assign.items()}


def brute_squares(lam, rho):
    """All commuting squares ``(top, bottom)`` from ``lam`` to ``rho``."""
    tops = brute_maps(lam.source, rho.source)
    bottoms = brute_maps(lam.target, rho.target)
    out = []
    for b in bottoms:
        lb = _compose(lam, b)
        for t in tops:
            if _compose(t, rho) == lb:
                out.append((t, b))
    return out


def brute_lift_exists(lam, rho, top, bottom) -> bool:
    for s in brute_maps(lam.target, rho.source):
        if _compose(lam, s) == top.assign and _compose(s, rho) == bottom.assign:
            return True
    return False


def brute_lifting_property(lam, rho) -> bool:
    return all(brute_lift_exists(lam, rho, t, b) for t, b in brute_squares(lam, rho))


def _boundary_matrix(x, n):
    rows, cols = x.nd(n - 1), x.nd(n)
    ridx = {g: i for i, g in enumerate(rows)}
    m = [[0] * len(cols) for _ in rows]
    for j, g in enumerate(cols):
        for i, (sigma, h) in enumerate(x.faces[g]):
            if len(set(sigma)) == len(sigma):  # nondegenerate face
                m[ridx[h]][j] += (-1) ** i
    return m


def _invariants(m):
    if not m or not m[0]:
        return []
    snf = smith_normal_form(Matrix(m), domain=ZZ)
    return [abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0]


def homology_oracle(x, top: int):
    """``[(betti, torsion), ...]`` for degrees ``0..top`` via sympy's Smith form."""
    inv = {n: _invariants(_boundary_matrix(x, n)) for n in range(1, top + 2)}
    out = []
    for n in range(top + 1):
        c = len(x.nd(n))
        r_out = len(inv[n]) if n else 0
        r_in = inv[n + 1]
        out.append((c - r_out - len(r_in), tuple(sorted(d for d in r_in if d > 1))))
    return out


def count_chains(c, n) -> int:
    """Number of composable strings of ``n`` morphisms (identities allowed)."""
    mors = list(c.mor)
    if n == 0:
        return len(c.objects)
    total = 0
    for seq in iproduct(mors, repeat=n):
        if all(c.dst(seq[k]) == c.src(seq[k + 1]) for k in range(n - 1)):
            total += 1
    return total
