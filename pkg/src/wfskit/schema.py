"""JSON encodings of every input kind, tagged with ``"kind"``."""
from __future__ import annotations

import hashlib
import json

from . import fincat, sobj
from .coprod import FINSET_COPROD, CoprodMorphism, CoprodObject
from .errors import WfskitError
from .finset import SetMap
from .sset import core
from .sset.core import FinSimplicialSet, SSetMap

SCHEMA = "wfskit/1"


class InputError(WfskitError):
    """Malformed or inconsistent input."""


def canonical_bytes(data) -> bytes:
    return json.dumps(data, sort_keys=True, separators=(",", ":")).encode()


def content_hash(data) -> str:
    return hashlib.sha256(canonical_bytes(data)).hexdigest()


def _need(data, *keys):
    if not isinstance(data, dict):
        raise InputError(f"expected a JSON object, got {type(data).__name__}")
    missing = [k for k in keys if k not in data]
    if missing:
        raise InputError(f"missing field(s) {missing} in {data.get('kind', 'object')!r}")


# -- encoders --------------------------------------------------------------------------------

def dump(obj) -> dict:
    if isinstance(obj, FinSimplicialSet):
        return {"kind": "sset", **core.to_json(obj)}
    if isinstance(obj, SSetMap):
        return {"kind": "sset_map", "source": dump(obj.source), "target": dump(obj.target),
                **core.map_to_json(obj)}
    if isinstance(obj, SetMap):
        return {"kind": "set_map", "source": list(obj.source), "target": list(obj.target),
                "mapping": {str(a): b for a, b in sorted(obj.mapping.items(), key=repr)}}
    if isinstance(obj, CoprodObject):
        return {"kind": "family", **FINSET_COPROD.encode(obj)}
    if isinstance(obj, CoprodMorphism):
        return {"kind": "family_map", "source": dump(obj.source), "target": dump(obj.target),
                **sobj.morphism_to_json(obj)}
    if isinstance(obj, sobj.SimpObject):
        return {"kind": "sobj", **sobj.to_json(obj)}
    if isinstance(obj, sobj.SimpMorphism):
        return {"kind": "sobj_map", "source": dump(obj.source), "target": dump(obj.target),
                **sobj.map_to_json(obj)}
    if isinstance(obj, fincat.FinCategory):
        return {"kind": "category", **fincat.to_json(obj)}
    if isinstance(obj, fincat.FinFunctor):
        return {"kind": "functor", "source": dump(obj.source), "target": dump(obj.target),
                **fincat.functor_to_json(obj)}
    from .holim import Diagram
    if isinstance(obj, Diagram):
        arrows = {}
        for f in obj.shape.non_identities():
            m = obj.arrow(f)
            arrows[f] = core.map_to_json(m) if isinstance(m, SSetMap) else sobj.map_to_json(m)
        return {"kind": "diagram", "shape": dump(obj.shape),
                "values": {str(i): dump(v) for i, v in sorted(obj.values.items())}, "arrows": arrows}
    from .wfs import LiftingSquare
    if isinstance(obj, LiftingSquare):
        return {"kind": "square", "lam": dump(obj.lam), "rho": dump(obj.rho),
                "top": dump(obj.top), "bottom": dump(obj.bottom)}
    raise InputError(f"cannot encode {type(obj).__name__}")


# -- decoders ---------------------------------------------------------------------------------

def load(data, kind=None):
    """Decode a tagged JSON value; ``kind`` (a name or tuple of names) restricts what is accepted."""
    _need(data, "kind")
    k = data["kind"]
    if kind is not None and k not in ((kind,) if isinstance(kind, str) else kind):
        raise InputError(f"expected {kind}, got {k!r}")
    try:
        return _LOADERS[k](data)
    except KeyError as exc:
        if k not in _LOADERS:
            raise InputError(f"unknown kind {k!r}") from None
        raise InputError(f"malformed {k}: missing {exc}") from None
    except InputError:
        raise
    except WfskitError as exc:
        raise InputError(f"invalid {k}: {exc}") from None
    except (TypeError, ValueError, AttributeError, IndexError) as exc:
        raise InputError(f"malformed {k}: {exc}") from None


def _sset(data):
    return core.from_json(data)


def _sset_map(data):
    _need(data, "source", "target", "assign")
    return core.map_from_json(data, load(data["source"], "sset"), load(data["target"], "sset"))


def _set_map(data):
    _need(data, "source", "target", "mapping")
    src, tgt = list(data["source"]), list(data["target"])
    by_name = {str(a): a for a in src}
    return SetMap(src, tgt, {by_name[a]: b for a, b in data["mapping"].items()})


def _family(data):
    return FINSET_COPROD.decode(data)


def _family_map(data):
    _need(data, "source", "target")
    return sobj.morphism_from_json(data, load(data["source"], "family"), load(data["target"], "family"))


def _sobj(data):
    x = sobj.from_json(data)
    bad = x.violations()
    if bad:
        raise InputError(f"simplicial identities fail: {bad[0]}")
    return x


def _sobj_map(data):
    _need(data, "source", "target")
    return sobj.map_from_json(data, load(data["source"], "sobj"), load(data["target"], "sobj"))


def _category(data):
    return fincat.from_json(data)


def _functor(data):
    _need(data, "source", "target")
    return fincat.functor_from_json(data, load(data["source"], "category"), load(data["target"], "category"))


def _diagram(data):
    from .holim import Diagram
    _need(data, "shape", "values")
    shape = load(data["shape"], "category")
    values = {}
    for i in shape.objects:
        if i not in data["values"]:
            raise InputError(f"diagram has no value at {i!r}")
        values[i] = load(data["values"][i], ("sset", "sobj"))
    arrows = {}
    for f, m in data.get("arrows", {}).items():
        if f not in shape.mor:
            raise InputError(f"arrow given for unknown morphism {f!r}")
        src, tgt = values[shape.src(f)], values[shape.dst(f)]
        if isinstance(src, FinSimplicialSet):
            arrows[f] = core.map_from_json(m, src, tgt)
        else:
            arrows[f] = sobj.map_from_json(m, src, tgt)
    return Diagram(shape, values, arrows)


def _square(data):
    from .wfs import LiftingSquare
    _need(data, "lam", "rho", "top", "bottom")
    maps = ("sset_map", "set_map", "family_map")
    sq = LiftingSquare(*(load(data[k], maps) for k in ("lam", "rho", "top", "bottom")))
    if not sq.commutes():
        raise InputError("square does not commute")
    return sq


_LOADERS = {"sset": _sset, "sset_map": _sset_map, "set_map": _set_map, "family": _family,
            "family_map": _family_map, "sobj": _sobj, "sobj_map": _sobj_map, "category": _category,
            "functor": _functor, "diagram": _diagram, "square": _square}

KINDS = tuple(sorted(_LOADERS))
