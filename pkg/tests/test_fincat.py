import pytest
from hypothesis import given, strategies as st

from oracles import count_chains
from wfskit import fincat
from wfskit.errors import CategoryError
from wfskit.fixtures import small_shapes
from wfskit.sset.homology import homology


def test_under_category_counts():
    a = fincat.under_category(fincat.arrow(), "a").category
    assert len(a.objects) == 2
    assert len(a.non_identities()) == 1
    assert len(fincat.under_category(fincat.span(), "c").category.objects) == 3


def test_over_category_counts():
    assert len(fincat.over_category(fincat.arrow(), "b").category.objects) == 2
    assert len(fincat.over_category(fincat.arrow(), "a").category.objects) == 1


def test_nerve_of_three_element_chain():
    x = fincat.nerve(fincat.linear(2), 2)
    assert x.counts() == [3, 3, 1]


def test_idempotent_is_not_homotopically_finite():
    ok, cert = fincat.is_homotopically_finite(fincat.idempotent())
    assert not ok and cert["cycle"] == ["e"]
    ok, cert = fincat.is_homotopically_finite(fincat.linear(3))
    assert ok and cert["max_chain_length"] == 3


def test_broken_associativity_is_reported():
    c = fincat.monoid(["1", "a", "b"], lambda g, f: {("1", "1"): "1"}.get((g, f), g if f == "1" else f if g == "1" else "a"), "1")
    assert not fincat.validate_category(c)
    comp = dict(c.comp)
    comp[("a", "b")] = "b"
    bad = fincat.validate_category(fincat.FinCategory(c.objects, c.mor, comp, c.ident, check=False))
    assert any(v["axiom"] == "associativity" for v in bad)
    with pytest.raises(CategoryError):
        fincat.FinCategory(c.objects, c.mor, comp, c.ident)


def test_missing_identity_is_reported():
    c = fincat.FinCategory(["a", "b"], {"f": ("a", "b")}, {}, {"a": "id_a"}, check=False)
    assert fincat.validate_category(c)[0]["axiom"] == "identity"


@pytest.mark.parametrize("name", sorted(small_shapes()))
def test_nerve_level_sizes_match_chain_count(name):
    c = small_shapes()[name]
    x = fincat.nerve(c, 3)
    for n in range(4):
        assert len(x.simplices(n)) == count_chains(c, n)


@pytest.mark.parametrize("name", ["arrow", "span", "cospan", "linear2"])
def test_nerve_of_opposite_is_opposite_nerve(name):
    c = small_shapes()[name]
    a = fincat.nerve(fincat.opposite(c), 3)
    b = fincat.nerve(c, 3).opposite()
    from wfskit.sset.search import is_isomorphic
    assert is_isomorphic(a, b)


def test_nerve_of_z2_has_z2_homology():
    h = homology(fincat.nerve(fincat.cyclic_group(2), 3), 2)
    assert h.group(1) == (0, (2,))


def test_functor_validation_and_json():
    F = fincat.to_terminal(fincat.span())
    assert not fincat.validate_functor(F)
    c = fincat.from_json(fincat.to_json(fincat.span()))
    assert c == fincat.span()
    G = fincat.functor_from_json(fincat.functor_to_json(F), c, fincat.terminal())
    assert G.obj_map == F.obj_map


def test_comma_over_identity_is_over_category():
    c = fincat.span()
    a = fincat.comma_over(fincat.identity_functor(c), "a").category
    b = fincat.over_category(c, "a").category
    assert len(a.objects) == len(b.objects) and len(a.mor) == len(b.mor)


@given(st.integers(0, 4))
def test_linear_nerve_is_a_simplex(n):
    x = fincat.nerve(fincat.linear(n), n)
    from math import comb
    assert x.counts() == [comb(n + 1, k + 1) for k in range(n + 1)]
