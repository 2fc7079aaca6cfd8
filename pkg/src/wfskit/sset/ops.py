"""Monotone maps between ordinals [m] -> [n].

A monotone map is a tuple ``t`` of length ``m + 1`` with non-decreasing
entries in ``0..n``.  Surjections double as degeneracy operators and
injections as face operators.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, combinations_with_replacement

Mono = tuple  # alias used in signatures only


def identity(n: int) -> tuple:
    return tuple(range(n + 1))


def compose(a: tuple, b: tuple) -> tuple:
    """``a o b``: first ``b``, then ``a``."""
    return tuple(a[i] for i in b)


def coface(i: int, n: int) -> tuple:
    """The injection ``[n-1] -> [n]`` skipping ``i``."""
    return tuple(k if k < i else k + 1 for k in range(n))


def codegeneracy(j: int, n: int) -> tuple:
    """The surjection ``[n+1] -> [n]`` hitting ``j`` twice."""
    return tuple(k if k <= j else k - 1 for k in range(n + 2))


def is_surjection(t: tuple) -> bool:
    return t[0] == 0 and all(b - a in (0, 1) for a, b in zip(t, t[1:]))


def is_identity(t: tuple) -> bool:
    return all(v == k for k, v in enumerate(t))


def repeats(t: tuple) -> frozenset:
    """Positions ``j`` with ``t[j] == t[j+1]``."""
    return frozenset(j for j in range(len(t) - 1) if t[j] == t[j + 1])


@lru_cache(maxsize=None)
def epi_mono(t: tuple) -> tuple:
    """Factor ``t = mono o epi``; returns ``(epi, mono)``."""
    mono = tuple(sorted(set(t)))
    rank = {v: k for k, v in enumerate(mono)}
    return tuple(rank[v] for v in t), mono


def collapse(positions, m: int) -> tuple:
    """The surjection out of ``[m]`` identifying ``j`` with ``j+1`` for ``j`` in ``positions``."""
    out, k = [0], 0
    for j in range(m):
        if j not in positions:
            k += 1
        out.append(k)
    return tuple(out)


def factor_through(rho: tuple, mu: tuple):
    """Return ``r`` with ``r o mu == rho`` or ``None`` (``mu`` surjective)."""
    r = [None] * (mu[-1] + 1)
    for i, t in enumerate(mu):
        if r[t] is None:
            r[t] = rho[i]
        elif r[t] != rho[i]:
            return None
    return tuple(r)


@lru_cache(maxsize=None)
def monotone_maps(m: int, n: int) -> tuple:
    """All monotone maps ``[m] -> [n]`` in lexicographic order."""
    if m < 0:
        return ((),)
    return tuple(combinations_with_replacement(range(n + 1), m + 1))


@lru_cache(maxsize=None)
def surjections(n: int, k: int) -> tuple:
    """All surjections ``[n] ->> [k]``, lexicographic."""
    if k > n:
        return ()
    return tuple(sorted(collapse(frozenset(js), n) for js in combinations(range(n), n - k)))


@lru_cache(maxsize=None)
def injections(m: int, n: int) -> tuple:
    return tuple(combinations(range(n + 1), m + 1))


def word(t: tuple) -> str:
    """Eilenberg-Zilber word of a surjection, e.g. ``"s2s0"`` (decreasing indices)."""
    return "".join(f"s{j}" for j in sorted(repeats(t), reverse=True))


def parse_word(w: str, k: int) -> tuple:
    """Inverse of :func:`word` for a word applied to a ``k``-simplex."""
    if not w:
        return identity(k)
    parts = [p for p in w.split("s") if p]
    try:
        idx = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"bad degeneracy word {w!r}") from None
    if "".join(f"s{j}" for j in idx) != w or any(a <= b for a, b in zip(idx, idx[1:])):
        raise ValueError(f"degeneracy word {w!r} is not strictly decreasing")
    n = k + len(idx)
    if idx and idx[0] >= n:
        raise ValueError(f"degeneracy word {w!r} too large for dimension {k}")
    return collapse(frozenset(idx), n)
