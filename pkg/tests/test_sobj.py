import random

import pytest
from hypothesis import given, settings, strategies as st

from wfskit import sobj as S
from wfskit.coprod import FINSET_COPROD as cc, CoprodObject
from wfskit.fixtures import random_simp_object, seeded_morphisms
from wfskit.sset.core import boundary, delta, terminal_map
from wfskit.sset.homology import homology

A = CoprodObject.of({"p": (0, 1), "q": (0,)}, cc)


def constant_map(m, trunc=3):
    return S.SimpMorphism(S.constant(m.source, trunc), S.constant(m.target, trunc), [m] * (trunc + 1))


def fold(a):
    total, _ = cc.coproduct([a, a])
    return cc.copair([cc.identity(a), cc.identity(a)], total)


def objects():
    return st.integers(0, 10 ** 6).map(lambda s: random_simp_object(random.Random(s), 3))


# -- constructions ----------------------------------------------------------------------

def test_tensor_with_interval_has_n_plus_two_copies():
    t = S.tensor(A, delta(1), 3)
    assert t.counts() == [2 * (n + 2) for n in range(4)]
    assert not t.violations()


def test_from_arrow_roundtrip():
    p = terminal_map(delta(1))
    x = S.from_arrow(p, 3)
    q = S.to_arrow(x)
    assert q.source.counts() == [2, 1] and q.target.counts() == [1]


def test_hom_left_of_simplex_into_constant():
    h, _ = S.hom_left(delta(1), S.constant(A))
    assert sorted(len(s) for s in h.family) == sorted(len(s) for s in A.family)


def test_hom_left_of_two_points_is_square_of_level_zero():
    t = S.tensor(A, delta(1), 3)
    h, _ = S.hom_left(boundary(1), t)
    assert len(h.index) == len(t.levels[0].index) ** 2


def test_hom_right_of_constant_is_discrete():
    x = S.hom_right(A, S.constant(A))
    assert x.counts() == [len(cc.hom(A, A))]
    assert S.hom_right(cc.initial(), S.constant(A)).counts() == [1]


def test_hom_right_of_connected_projective_into_tensor():
    # Hom(U s, a (x) k) = Hom(U s, a) (x) k for connected U s
    u = cc.embed_U((0, 1))
    k = boundary(2)
    x = S.hom_right(u, S.tensor(A, k, 2))
    n = len(cc.hom(u, A))
    assert x.counts() == [n * c for c in k.counts()]
    assert homology(x, 1).group(1) == (n, ())


# -- latching and matching ----------------------------------------------------------------

def test_latching_of_constant():
    c = S.constant(A)
    assert len(S.latching(c, 0).obj) == 0
    for n in (1, 2, 3):
        assert S.latching(c, n).obj == A


def test_matching_of_constant():
    c = S.constant(A)
    assert len(S.matching(c, 0).obj) == 1
    assert len(S.matching(c, 1).obj.index) == 4


# -- cofibrancy -----------------------------------------------------------------------------

def test_constant_is_cofibrant_with_no_higher_nondegenerates():
    cert = S.is_cofibrant(S.constant(A))
    assert cert.holds
    assert all(lv["nd"] == [] for lv in cert.levels[1:])


@pytest.mark.parametrize("k", [delta(1), delta(2), boundary(2)], ids=str)
def test_tensor_is_cofibrant(k):
    assert S.is_cofibrant(S.tensor(A, k, 3)).holds


def test_non_cofibrant_object_is_refuted_at_level_one():
    x = S.from_arrow(terminal_map(delta(1)), 3)
    cert = S.is_cofibrant(x)
    assert not cert.holds and cert.level == 1
    assert S.is_cofibrant_rlp(x) == (False, 1)


@given(objects())
@settings(max_examples=15)
def test_cofibrancy_deciders_agree(x):
    assert S.is_cofibrant(x).holds == S.is_cofibrant_rlp(x)[0]


# -- Reedy factorization -----------------------------------------------------------------------

def test_cofibrant_replacement_of_constant():
    c = S.constant(A)
    f = S.reedy_factorize(S.from_initial(c))
    assert f.right.is_iso()
    assert S.is_cofibrant(f.middle).holds
    assert S.is_weq(f.right)["status"] == "pass"


def test_reedy_of_fold_has_split_epi_right_leg():
    f = S.reedy_factorize(constant_map(fold(A)))
    for m in f.right.maps:
        assert S.split_section(m) is not None
    assert f.left.then(f.right) == constant_map(fold(A))
    assert S.is_cofibration(f.left)[0]
    assert S.is_trivial_fibration(f.right)[0]


@pytest.mark.parametrize("i", range(4))
def test_reedy_contract_on_seeded_morphisms(i):
    f = seeded_morphisms(3, 4)[i]
    fact = S.reedy_factorize(f)
    assert fact.left.then(fact.right) == f
    assert all(S.is_coprod_injection(m) for m in fact.left.maps)
    for n in range(f.trunc + 1):
        corner, _ = S.matching_corner(fact.right, n)
        sec = fact.sections[n]
        assert sec is not None and cc.compose(corner, sec) == cc.identity(corner.target)


# -- fibrations and weak equivalences ---------------------------------------------------------

def test_constant_fold_is_a_fibration():
    assert S.is_fibration(constant_map(fold(A)))["status"] == "pass"


def test_replacement_map_is_weq_but_initial_map_is_not():
    f = S.reedy_factorize(S.from_initial(S.constant(A)))
    assert S.is_weq(f.right)["status"] == "pass"
    assert S.is_weq(f.left)["status"] == "fail"
    assert S.is_weq(S.identity(S.constant(A)))["status"] == "pass"


def test_fold_is_not_a_weq():
    assert S.is_weq(constant_map(fold(A)))["status"] == "fail"


def test_weq_truncation_is_bounded():
    with pytest.raises(Exception):
        S.is_weq(S.identity(S.constant(A)), truncation=3)


# -- serialization --------------------------------------------------------------------------------

@given(objects())
@settings(max_examples=15)
def test_json_roundtrip(x):
    y = S.from_json(S.to_json(x))
    assert y.counts() == x.counts() and y.sizes() == x.sizes()
    assert not y.violations()


def test_morphism_json_roundtrip():
    f = seeded_morphisms(0, 1)[0]
    g = S.map_from_json(S.map_to_json(f), f.source, f.target)
    assert not g.violations()
