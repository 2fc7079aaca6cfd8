import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_maps, homology_oracle
from wfskit import fincat
from wfskit.errors import SimplicialError
from wfskit.fixtures import kg2, sset_pool
from wfskit.sset import ops
from wfskit.sset.core import (FinSimplicialSet, SSetMap, boundary, boundary_inclusion, compose, delta, empty,
                              from_json, horn, identity_map, inclusion, map_from_json, map_to_json,
                              terminal_map, to_json)
from wfskit.sset.homology import homology, pi0, weq_oracle
from wfskit.sset.homotopy import ex, is_kan_fibration, is_trivial_fibration, mapping_space, sd_simplex
from wfskit.sset.limits import coproduct, product, pullback, pushout
from wfskit.sset.search import find_isomorphism, hom_set, is_isomorphic, is_mono


def circle():
    return pushout(boundary_inclusion(1), terminal_map(boundary(1)))[0]


def codiscrete(n):
    """Nerve of the groupoid with one arrow between any two of ``n + 1`` objects."""
    objs = [str(k) for k in range(n + 1)]
    name = {(a, b): f"id_{a}" if a == b else f"{a}>{b}" for a in objs for b in objs}
    mor = {m: ab for ab, m in name.items()}
    comp = {(name[b, c], name[a, b]): name[a, c] for a in objs for b in objs for c in objs}
    return fincat.FinCategory(objs, mor, comp, {a: name[a, a] for a in objs})


# -- constructors ------------------------------------------------------------------

@pytest.mark.parametrize("n", range(4))
def test_delta_counts(n):
    from math import comb
    assert delta(n).counts() == [comb(n + 1, k + 1) for k in range(n + 1)]


def test_boundary_and_horn_counts():
    assert delta(2).counts() == [3, 3, 1]
    assert boundary(2).counts() == [3, 3]
    assert horn(2, 1).counts() == [3, 2]
    assert horn(3, 0).counts() == [4, 6, 3]


def test_bad_faces_are_rejected():
    with pytest.raises(SimplicialError):
        FinSimplicialSet({"a": 0, "e": 1}, {"e": (((0,), "a"),)})
    with pytest.raises(SimplicialError):
        SSetMap(delta(1), delta(1), {g: ((0,), "0") for g in delta(1).nd(0)} | {"01": ((0, 1), "01")})


def test_square_has_two_triangles():
    p, _, _ = product(delta(1), delta(1))
    assert p.counts() == [4, 5, 2]


def test_pushout_circle():
    s = circle()
    assert s.counts() == [1, 1]
    assert homology(s, 1).group(1) == (1, ())


def test_mapping_space_vertices():
    assert len(mapping_space(delta(1), delta(1), 1).nd(0)) == 3


def test_coproduct_and_pullback():
    x, injs = coproduct([delta(1), delta(0)])
    assert x.counts() == [3, 1] and all(is_mono(i) for i in injs)
    pb, _, _ = pullback(terminal_map(delta(1)), terminal_map(delta(2)))
    assert is_isomorphic(pb, product(delta(1), delta(2))[0])


def test_json_roundtrip():
    for x in sset_pool(2).values():
        assert from_json(to_json(x)) == x
    f = boundary_inclusion(2)
    assert map_from_json(map_to_json(f), f.source, f.target) == f


# -- maps and search ------------------------------------------------------------------

@pytest.mark.parametrize("a", sorted(sset_pool(2)))
@pytest.mark.parametrize("b", sorted(sset_pool(2)))
def test_hom_set_matches_brute_force(a, b):
    pool = sset_pool(2)
    got = {tuple(sorted(m.assign.items())) for m in hom_set(pool[a], pool[b])}
    want = {tuple(sorted(m.assign.items())) for m in brute_maps(pool[a], pool[b])}
    assert got == want


@pytest.mark.parametrize("m,n", [(0, 2), (1, 2), (2, 2), (1, 3)])
def test_maps_between_simplices_are_monotone(m, n):
    assert len(hom_set(delta(m), delta(n))) == len(ops.monotone_maps(m, n))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=25)
def test_composition_is_associative(seed):
    rng = random.Random(seed)
    pool = list(sset_pool(2).values())
    a, b, c, d = (rng.choice(pool) for _ in range(4))
    fs = [hom_set(a, b), hom_set(b, c), hom_set(c, d)]
    if not all(fs):
        return
    f, g, h = (rng.choice(x) for x in fs)
    assert compose(h, compose(g, f)) == compose(compose(h, g), f)
    assert not compose(h, compose(g, f)).violations()
    assert compose(identity_map(b), f) == f


def test_isomorphism_search():
    a = fincat.nerve(fincat.arrow(), 2)
    assert find_isomorphism(a, delta(1)) is not None
    assert find_isomorphism(delta(1), boundary(1)) is None


# -- fibrations -----------------------------------------------------------------------

def test_horn_witness_for_interval():
    r = is_kan_fibration(terminal_map(delta(1)), 2)
    assert r.status == "fail" and r.square is not None


def test_simplex_to_point_is_not_a_trivial_fibration():
    r = is_trivial_fibration(terminal_map(delta(1)), 1)
    assert r.status == "fail"


def test_group_nerve_is_kan():
    assert is_kan_fibration(terminal_map(kg2(3)), 3).holds


@pytest.mark.parametrize("n", [1, 2])
def test_codiscrete_simplex_is_a_trivial_fibration(n):
    x = fincat.nerve(codiscrete(n), 3)
    assert is_trivial_fibration(terminal_map(x), 3).holds


def test_two_points_to_point_is_not_a_trivial_fibration():
    assert is_trivial_fibration(terminal_map(boundary(1)), 2).status == "fail"


# -- subdivision and Ex --------------------------------------------------------------

def test_subdivided_interval():
    assert sd_simplex(1)[0].counts() == [3, 2]
    assert sd_simplex(2)[0].counts() == [7, 12, 6]


def test_ex_of_circle_low_degrees():
    e, emap = ex(circle(), 1)
    assert e.counts()[:2] == [1, 3]
    assert not emap.violations()


def test_ex_unit_is_a_weak_equivalence_on_the_circle():
    e, emap = ex(circle(), 2)
    assert weq_oracle(emap, 1).ok


# -- homology ---------------------------------------------------------------------------

def test_circle_homology():
    h = homology(circle(), 2)
    assert h.group(0) == (1, ()) and h.group(1) == (1, ()) and h.group(2) == (0, ())


@pytest.mark.parametrize("x", [delta(2), boundary(2), boundary(3), horn(3, 1), circle(), kg2(4),
                               product(boundary(1), delta(1))[0], empty()], ids=str)
def test_homology_matches_sympy(x):
    h = homology(x, 2)
    assert [h.group(n) for n in range(3)] == homology_oracle(x, 2)


def test_z2_torsion():
    h = homology(kg2(4), 3)
    assert h.group(1) == (0, (2,)) and h.group(2) == (0, ()) and h.group(3) == (0, (2,))


def test_pi0():
    assert len(pi0(boundary(1))) == 2
    assert len(pi0(delta(2))) == 1
    assert pi0(empty()) == []


def test_weq_examples():
    assert weq_oracle(identity_map(circle()), 1).ok
    assert weq_oracle(SSetMap(delta(0), delta(2), {"0": ((0,), "0")}), 2).ok
    assert weq_oracle(terminal_map(circle()), 1).verdict == "fail"
    assert weq_oracle(inclusion(boundary(1), delta(1)), 1).verdict == "fail"
