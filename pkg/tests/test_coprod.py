import random

from hypothesis import given, settings, strategies as st

from wfskit import coprod as C
from wfskit.coprod import FINSET, FINSET_COPROD as cc, CoprodObject
from wfskit.fixtures import random_family
from wfskit.wfs import solve_lifting

A = CoprodObject.of({"x1": (1, 2), "x2": ("a",)}, cc)
B = CoprodObject.of({"y1": (0,), "y2": (0, 1), "y3": ()}, cc)


def families():
    return st.integers(0, 10 ** 6).map(lambda s: random_family(random.Random(s)))


def test_product_has_six_components():
    p, p1, p2 = cc.product(A, B)
    assert len(p.index) == 6
    assert sorted(len(s) for s in p.family) == [0, 0, 1, 2, 2, 4]


def test_product_universal_property():
    p, p1, p2 = cc.product(A, B)
    for f in cc.hom(A, A)[:3]:
        for g in cc.hom(A, B)[:3]:
            pairs = [h for h in cc.hom(A, p) if h.then(p1) == f and h.then(p2) == g]
            assert len(pairs) == 1


def test_terminal_object():
    t = cc.terminal()
    q, _, _ = cc.product(A, t)
    assert C.isomorphism(cc, q, A) is not None
    for x in (A, B, cc.initial()):
        assert len(cc.hom(x, t)) == 1
    assert C.isomorphism(cc, cc.embed_U((0,)), t) is not None


def test_U_is_fully_faithful():
    assert C.check_U_fully_faithful(cc) == []


def test_collapse_adjunction():
    assert C.check_collapse_adjunction(cc, A, (0, 1))
    assert C.check_collapse_adjunction(cc, B, (0,))


def test_pullback_of_injections_is_intersection():
    total, (i1, i2) = cc.coproduct([A, B])
    pb, _, _ = cc.pullback(i1, i2)
    assert len(pb) == 0
    pb, _, _ = cc.pullback(i1, i1)
    assert C.isomorphism(cc, pb, A) is not None


def test_connectedness():
    assert C.is_connected(cc, cc.embed_U((0, 1)))
    assert not C.is_connected(cc, A)
    assert not C.is_connected(cc, cc.initial())


def test_extensive_finset():
    r = C.verify_extensive(FINSET, FINSET.sample_objects(2))
    assert r.ok, r.to_json()


def test_extensive_completion():
    r = C.verify_extensive(cc, cc.sample_objects(2, 1))
    assert r.ok, r.to_json()


def test_pointed_join_counterexample():
    r = C.verify_extensive(C.pointed_join_base())
    assert r.checks["disjointness"] == "fail"
    w = r.witnesses["disjointness"]
    assert w["pullback"] == "*" and w["summands"] == ["*", "*x"]


def test_R_fully_faithful():
    assert C.check_R_fully_faithful(cc, A, CoprodObject.of({"z": (0, 1)}, cc))
    assert C.check_R_fully_faithful(cc, B, A)


def test_pushout_hom():
    total, (i1, _) = cc.coproduct([A, B])
    p = cc.embed_U((0,))
    assert C.check_pushout_hom(cc, p, i1, cc.hom(A, p)[0])


def test_split_projective_lifting():
    # coproduct injections lift against split epis
    a = CoprodObject.of({"p": (0,)}, cc)
    b = CoprodObject.of({"q": (0, 1)}, cc)
    total, (i1, _) = cc.coproduct([a, b])
    fold = C.factor_projective(cc.hom(b, a)[0]).right
    assert C.classify(fold, "split_epi").holds
    n = 0
    for sq in C.iter_squares(i1, fold):
        n += 1
        assert solve_lifting(sq).found
    assert n > 0


@given(families(), families())
@settings(max_examples=20)
def test_coproduct_injections_are_monic_and_disjoint(a, b):
    total, (i1, i2) = cc.coproduct([a, b])
    assert C.is_mono(cc, i1) and C.is_mono(cc, i2)
    pb, _, _ = cc.pullback(i1, i2)
    assert len(pb) == 0


@given(families())
@settings(max_examples=20)
def test_json_roundtrip(a):
    assert C.object_from_json(cc, C.object_to_json(cc, a)) == a


@given(families(), families())
@settings(max_examples=15)
def test_projective_factorization_composes(a, b):
    homs = cc.hom(a, b)
    if not homs:
        return
    m = homs[0]
    f = C.factor_projective(m)
    assert f.left.then(f.right) == m
    assert C.classify(f.left, "coprod_injection").holds
    assert C.classify(f.right, "split_epi").holds
