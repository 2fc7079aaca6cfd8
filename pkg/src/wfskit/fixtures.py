"""Named fixtures and seeded generators shared by the tests and the CLI."""
from __future__ import annotations

import random

from . import sobj
from .coprod import FINSET_COPROD, CoprodObject
from .fincat import arrow, cospan, cyclic_group, discrete, linear, nerve, span, terminal as terminal_cat
from .holim import Diagram
from .sset.core import (SSetMap, boundary, boundary_inclusion, delta, empty, horn_inclusion, identity_map, terminal_map)
from .sset.search import hom_set, iter_maps


def point():
    return delta(0)


def two_points():
    """Two vertices ``0`` and ``1``."""
    return boundary(1)


def kg2(trunc: int = 3):
    """Nerve of the group with two elements."""
    return nerve(cyclic_group(2), trunc)


def vertex(x, g=None) -> SSetMap:
    """``delta(0) -> x`` picking the vertex ``g`` (the first one by default)."""
    g = g or x.nd(0)[0]
    return SSetMap(delta(0), x, {"0": ((0,), g)})


def sset_pool(trunc: int = 3) -> dict:
    return {"pt": delta(0), "d1": delta(1), "two": two_points(), "kg2": kg2(trunc),
            "d2": delta(2)}


def generator_maps(max_dim: int = 2) -> list:
    """Boundary and horn inclusions up to ``max_dim``."""
    out = [boundary_inclusion(n) for n in range(max_dim + 1)]
    out += [horn_inclusion(n, k) for n in range(1, max_dim + 1) for k in range(n + 1)]
    return out


def random_map(rng: random.Random, source, target, **kw):
    maps = hom_set(source, target, **kw)
    return rng.choice(maps) if maps else None


def seeded_maps(seed: int = 0, count: int = 20, trunc: int = 2) -> list:
    """Random maps between small pool objects (codomains kept at dimension <= 2)."""
    rng = random.Random(seed)
    pool = sset_pool(trunc)
    names = sorted(pool)
    out = []
    while len(out) < count:
        a, b = pool[rng.choice(names)], pool[rng.choice(names)]
        f = random_map(rng, a, b)
        if f is not None:
            out.append(f)
    return out


def small_left_maps() -> list:
    """Maps with sources and targets of dimension <= 1, used as the left factors of box products."""
    d1, two, e = delta(1), two_points(), empty()
    return [SSetMap(e, delta(0), {}), SSetMap(e, d1, {}), boundary_inclusion(1), horn_inclusion(1, 0),
            vertex(d1, "1"), terminal_map(two), terminal_map(d1), identity_map(point())]


def small_right_maps(trunc: int = 2) -> list:
    d1 = delta(1)
    return [terminal_map(d1), terminal_map(two_points()), terminal_map(delta(2)), terminal_map(kg2(trunc)),
            boundary_inclusion(1), vertex(d1), identity_map(d1), terminal_map(point())]


def seeded_triples(seed: int = 0, count: int = 100, bifunctor: str = "product") -> list:
    """Triples ``(f, g, h)`` for the adjunction correspondence; ``f`` is a map of finite sets for ``tensor``."""
    from .finset import SetMap
    rng = random.Random(seed)
    left, right = small_left_maps(), small_right_maps()
    out = []
    for _ in range(count):
        if bifunctor == "tensor":
            a, b = list(range(rng.randint(0, 2))), list(range(rng.randint(1, 2)))
            f = SetMap(a, b, {x: rng.choice(b) for x in a})
        else:
            f = rng.choice(left)
        out.append((f, rng.choice(left), rng.choice(right)))
    return out


# -- diagrams ------------------------------------------------------------------------------

def span_fixture() -> Diagram:
    """``pt <- two points -> pt``: a model of the circle."""
    two, pt = two_points(), point()
    return Diagram(span(), {"a": pt, "b": pt, "c": two}, {"l": terminal_map(two), "r": terminal_map(two)})


def loop_fixture(trunc: int = 2) -> Diagram:
    """``pt -> K(Z/2) <- pt``: its homotopy limit is the loop space, with two components."""
    k = kg2(trunc)
    v = vertex(k)
    return Diagram(cospan(), {"a": point(), "b": point(), "c": k}, {"l": v, "r": v})


def diagram_fixtures() -> dict:
    """Small diagrams on every shape used by the tests; values are finite simplicial sets."""
    pt, two, d1 = point(), two_points(), delta(1)
    out = {"span": span_fixture()}
    out["discrete"] = Diagram(discrete(["x", "y"]), {"x": d1, "y": two}, {})
    out["arrow"] = Diagram(arrow(), {"a": two, "b": d1}, {"f": random_map(random.Random(1), two, d1)})
    out["point"] = Diagram(terminal_cat(), {"*": d1}, {})
    lin = linear(2)
    end0, end1 = vertex(d1, "0"), vertex(d1, "1")
    out["linear"] = Diagram(lin, {"0": pt, "1": d1, "2": pt},
                            {"0<1": end0, "1<2": terminal_map(d1), "0<2": identity_map(pt)})
    out["span_mixed"] = Diagram(span(), {"a": d1, "b": pt, "c": two},
                                {"l": boundary_inclusion(1),
                                 "r": terminal_map(two)})
    out["cospan"] = Diagram(cospan(), {"a": pt, "b": pt, "c": d1}, {"l": end0, "r": end1})
    return out


def holim_fixtures(trunc: int = 2) -> dict:
    """Fixtures whose homotopy limit is computed (values are Kan)."""
    pt, two = point(), two_points()
    return {"loop": loop_fixture(trunc),
            "discrete": Diagram(discrete(["x", "y"]), {"x": two, "y": two}, {}),
            "arrow": Diagram(arrow(), {"a": two, "b": pt}, {"f": terminal_map(two)}),
            "point": Diagram(terminal_cat(), {"*": kg2(trunc)}, {})}


def small_shapes() -> dict:
    """Every shape with at most three objects used in the coend comparison."""
    return {"point": terminal_cat(), "discrete2": discrete(["x", "y"]), "discrete3": discrete(["x", "y", "z"]),
            "arrow": arrow(), "linear2": linear(2), "span": span(), "cospan": cospan(),
            "z2": cyclic_group(2)}


def random_diagram(rng: random.Random, shape, pool=None) -> Diagram:
    """Random functor ``shape -> sSet`` with values from ``pool``.

    Free shapes (no nontrivial composites) get arbitrary maps; for a
    composite the generating maps are chosen first and the rest follow.
    """
    pool = pool or {"pt": point(), "two": two_points(), "d1": delta(1)}
    names = sorted(pool)
    if shape.non_identities() and len(shape.objects) == 1:
        # a group acting on one value: use the trivial action
        x = pool[rng.choice(names)]
        return Diagram(shape, {shape.objects[0]: x}, {f: identity_map(x) for f in shape.non_identities()})
    while True:
        values = {i: pool[rng.choice(names)] for i in shape.objects}
        arrows = {}
        composite = {h for (g, f), h in shape.comp.items()
                     if not shape.is_identity(g) and not shape.is_identity(f)}
        ok = True
        for f in shape.non_identities():
            if f in composite:
                continue
            m = random_map(rng, values[shape.src(f)], values[shape.dst(f)])
            if m is None:
                ok = False
                break
            arrows[f] = m
        if not ok:
            continue
        for (g, f), h in sorted(shape.comp.items()):
            if h in composite and f in arrows and g in arrows:
                arrows[h] = arrows[f].then(arrows[g])
        try:
            return Diagram(shape, values, arrows)
        except Exception:
            continue


# -- simplicial objects over the coproduct completion of FinSet -------------------------------

def arrow_pool(trunc: int = 3) -> list:
    """Simplicial maps ``E -> K`` turned into simplicial objects by :func:`sobj.from_arrow`."""
    pt, two, d1, k = point(), two_points(), delta(1), kg2(trunc)
    return [terminal_map(pt), terminal_map(two), terminal_map(d1), identity_map(d1), terminal_map(k),
            identity_map(k), identity_map(two), vertex(d1), boundary_inclusion(1),
            vertex(k)]


def random_family(rng: random.Random, max_components: int = 3, max_size: int = 2) -> CoprodObject:
    n = rng.randint(1, max_components)
    return CoprodObject.of({f"x{k}": tuple(f"e{j}" for j in range(rng.randint(0, max_size))) for k in range(n)},
                           FINSET_COPROD)


def random_simp_object(rng: random.Random, trunc: int = 3):
    kind = rng.choice(["constant", "tensor", "arrow", "map", "map", "sum"])
    if kind == "constant":
        return sobj.constant(random_family(rng), trunc)
    if kind == "tensor":
        k = rng.choice([delta(0), delta(1), two_points()])
        return sobj.tensor(random_family(rng, 2, 2), k, trunc)
    if kind == "arrow":
        return sobj.from_arrow(rng.choice(arrow_pool(trunc)), trunc)
    if kind == "sum":
        return sobj.coproduct([random_simp_object(rng, trunc), random_simp_object(rng, trunc)])[0]
    pool = sset_pool(trunc)
    names = sorted(pool)
    while True:
        f = random_map(rng, pool[rng.choice(names)], pool[rng.choice(names)])
        if f is not None:
            return sobj.from_arrow(f, trunc)


def random_arrow_morphism(rng: random.Random, p: SSetMap, q: SSetMap, trunc: int = 3, x=None, y=None):
    """A random square ``(f_e, f_k)`` from ``p`` to ``q`` as a morphism of simplicial objects, or ``None``."""
    bottoms = hom_set(p.target, q.target)
    rng.shuffle(bottoms)
    for b in bottoms:
        tops = list(iter_maps(p.source, q.source, over=[(q, p.then(b))]))
        if tops:
            x = x or sobj.from_arrow(p, trunc)
            y = y or sobj.from_arrow(q, trunc)
            return sobj.arrow_map(rng.choice(tops), b, x, y)
    return None


def seeded_morphisms(seed: int = 0, count: int = 20, trunc: int = 3) -> list:
    rng = random.Random(seed)
    pool = arrow_pool(trunc)
    out = []
    while len(out) < count:
        f = random_arrow_morphism(rng, rng.choice(pool), rng.choice(pool), trunc)
        if f is not None:
            out.append(f)
    return out


def seeded_objects(seed: int = 0, count: int = 50, trunc: int = 3) -> list:
    rng = random.Random(seed)
    return [random_simp_object(rng, trunc) for _ in range(count)]


def seeded_cospans(seed: int = 0, count: int = 20, trunc: int = 3, attempts: int = 1000) -> list:
    """Cospans ``X -f-> Z <-g- Y`` with ``f`` a fibration and ``g`` a weak equivalence.

    Candidates are random squares between pool arrows; only those whose
    premises pass :func:`sobj.is_fibration` and :func:`sobj.is_weq` are kept.
    """
    rng = random.Random(seed)
    pool = arrow_pool(trunc)
    objs = [sobj.from_arrow(p, trunc) for p in pool]
    out = []
    for _ in range(attempts):
        if len(out) == count:
            break
        kz, kx, ky = rng.randrange(len(pool)), rng.randrange(len(pool)), rng.randrange(len(pool))
        f = random_arrow_morphism(rng, pool[kx], pool[kz], trunc, objs[kx], objs[kz])
        g = random_arrow_morphism(rng, pool[ky], pool[kz], trunc, objs[ky], objs[kz])
        if f is None or g is None:
            continue
        if sobj.is_fibration(f)["status"] != "pass" or sobj.is_weq(g)["status"] != "pass":
            continue
        out.append((f, g))
    return out


def seeded_weqs(seed: int = 0, count: int = 20, trunc: int = 3, attempts: int = 400) -> list:
    rng = random.Random(seed)
    pool = arrow_pool(trunc)
    objs = [sobj.from_arrow(p, trunc) for p in pool]
    out = []
    for _ in range(attempts):
        if len(out) == count:
            break
        kx, ky = rng.randrange(len(pool)), rng.randrange(len(pool))
        f = random_arrow_morphism(rng, pool[kx], pool[ky], trunc, objs[kx], objs[ky])
        if f is not None and sobj.is_weq(f)["status"] == "pass":
            out.append(f)
    return out


# -- JSON corpus for the command line ------------------------------------------------------------

def corpus(trunc: int = 3) -> dict:
    """File name -> JSON document covering every CLI command."""
    from .fincat import to_terminal
    from .schema import dump
    from .wfs import LiftingSquare
    d1, pt, two = delta(1), point(), two_points()
    b1 = boundary_inclusion(1)
    trivial = LiftingSquare(identity_map(pt), terminal_map(pt), identity_map(pt), identity_map(pt))
    endpoint_square = LiftingSquare(b1, terminal_map(two), identity_map(two), terminal_map(d1))
    collapse = terminal_map(d1)
    rng = random.Random(0)
    arrow_obj = sobj.from_arrow(terminal_map(d1), trunc)
    x = sobj.from_arrow(vertex(d1), trunc)
    morph = random_arrow_morphism(rng, vertex(d1), identity_map(d1), trunc)
    docs = {
        "square_trivial.json": dump(trivial),
        "square_endpoints.json": dump(endpoint_square),
        "map_collapse.json": dump(collapse),
        "map_boundary.json": dump(b1),
        "map_vertex.json": dump(vertex(d1)),
        "map_empty_d2.json": dump(SSetMap(empty(), delta(2), {})),
        "category_span.json": dump(span()),
        "category_z2.json": dump(cyclic_group(2)),
        "sobj_cofibrant.json": dump(x),
        "sobj_noncofibrant.json": dump(arrow_obj),
        "sobj_map.json": dump(morph),
        "sobj_identity.json": dump(sobj.identity(x)),
        "diagram_span.json": dump(span_fixture()),
        "diagram_loop.json": dump(loop_fixture(2)),
        "functor_span_terminal.json": dump(to_terminal(span())),
        "functor_cospan_terminal.json": dump(to_terminal(cospan())),
        "projectives.json": [dump(CoprodObject.of({"x": ("*",)}, FINSET_COPROD))],
    }
    return docs


def write_corpus(directory, trunc: int = 3) -> list:
    import json
    import os
    os.makedirs(directory, exist_ok=True)
    out = []
    for name, doc in sorted(corpus(trunc).items()):
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
            fh.write("\n")
        out.append(path)
    return out


if __name__ == "__main__":  # pragma: no cover
    import sys
    for p in write_corpus(sys.argv[1] if len(sys.argv) > 1 else "corpus"):
        print(p)
