import random

import pytest

from wfskit import fincat
from wfskit.errors import CategoryError
from wfskit.fixtures import (diagram_fixtures, holim_fixtures, kg2, point, random_diagram, small_shapes,
                             span_fixture, two_points)
from wfskit.holim import Diagram, coend_oracle, constant_diagram, hocolim, hocolim_induced, hokan_left, \
    hokan_right, holim
from wfskit.sset.core import boundary_inclusion, delta, identity_map, terminal_map
from wfskit.sset.homology import homology, pi0
from wfskit.sset.search import is_isomorphic


def profile(x, t=2):
    h = homology(x, t)
    return [h.group(n) for n in range(t + 1)]


def test_span_gives_circle():
    x = hocolim(span_fixture(), 3)
    assert profile(x) == [(1, ()), (1, ()), (0, ())]
    assert is_isomorphic(x, coend_oracle(span_fixture(), 3))


@pytest.mark.parametrize("shape", ["arrow", "linear2", "cospan"])
def test_constant_diagram_over_shape_with_terminal_object(shape):
    c = small_shapes()[shape]
    x = hocolim(constant_diagram(c, delta(1)), 3)
    assert profile(x) == profile(delta(1))
    y = hocolim(constant_diagram(c, two_points()), 3)
    assert profile(y) == profile(two_points())


def test_discrete_hocolim_is_coproduct():
    x = hocolim(diagram_fixtures()["discrete"], 2)
    assert x.counts()[:2] == [4, 1]


def test_bad_diagram_is_rejected():
    two = two_points()
    with pytest.raises(Exception):
        Diagram(fincat.arrow(), {"a": two, "b": point()}, {"f": identity_map(two)})


@pytest.mark.parametrize("name", sorted(diagram_fixtures()))
def test_diagonal_formula_matches_coend(name):
    d = diagram_fixtures()[name]
    assert is_isomorphic(hocolim(d, 2), coend_oracle(d, 2))


def test_homotopy_invariance_smoke():
    # replace a point by an interval objectwise: the homotopy type of the colimit is unchanged
    d1 = delta(1)
    two = two_points()
    d = Diagram(fincat.span(), {"a": d1, "b": point(), "c": two},
                {"l": boundary_inclusion(1), "r": terminal_map(two)})
    assert profile(hocolim(d, 3)) == profile(hocolim(span_fixture(), 3))


def test_induced_map_of_restriction():
    d = span_fixture()
    sub = fincat.full_subcategory(fincat.span(), ["a"])
    F = fincat.inclusion(sub, fincat.span())
    f = hocolim_induced(F, d.restrict(F), d, 3)
    assert not f.violations()


def test_loop_space_has_two_components():
    x = holim(holim_fixtures()["loop"], 2)
    assert len(pi0(x)) == 2


def test_discrete_holim_is_product():
    x = holim(holim_fixtures()["discrete"], 2)
    assert x.counts()[0] == 4


def test_holim_over_a_group_is_refused():
    d = Diagram(fincat.cyclic_group(2), {"*": point()}, {"g1": identity_map(point())})
    with pytest.raises(CategoryError):
        holim(d, 2)


def test_left_kan_extension_along_inclusion():
    arrow = fincat.arrow()
    sub = fincat.full_subcategory(arrow, ["a"])
    alpha = fincat.inclusion(sub, arrow)
    d = Diagram(sub, {"a": two_points()}, {})
    k = hokan_left(alpha, d, 3)
    assert profile(k.values["b"]) == profile(two_points())
    assert not k.diagram().violations()


def test_right_kan_extension_along_inclusion():
    arrow = fincat.arrow()
    sub = fincat.full_subcategory(arrow, ["b"])
    alpha = fincat.inclusion(sub, arrow)
    d = Diagram(sub, {"b": kg2(2)}, {})
    k = hokan_right(alpha, d, 2)
    assert profile(k.values["a"], 1) == profile(kg2(2), 1)
    assert not k.diagram().violations()


def test_kan_extension_along_terminal_functor():
    d = span_fixture()
    k = hokan_left(fincat.to_terminal(d.shape), d, 3)
    assert is_isomorphic(k.values["*"], hocolim(d, 3))


@pytest.mark.parametrize("seed", range(3))
def test_random_diagrams_match_coend(seed):
    rng = random.Random(seed)
    for name, shape in sorted(small_shapes().items()):
        d = random_diagram(rng, shape)
        assert is_isomorphic(hocolim(d, 2), coend_oracle(d, 2)), name
