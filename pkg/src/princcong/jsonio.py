"""JSON reading/writing for posets, lattices, functors and reports; DOT output."""

from __future__ import annotations

import json
from pathlib import Path

from .errors import InputError
from .functor import ColimitData, EmbeddingFunctor, NaturalIso, PosetFunctor
from .lattice import Congruence, FiniteLattice, PrincPoset, lattice_from_covers
from .poset import MonotoneMap, Poset, QuasiOrder, poset_from_pairs


def load(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("%s is not valid JSON: %s" % (path, exc)) from None


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _labels(seq, what: str) -> list[str]:
    if not isinstance(seq, list):
        raise InputError("%s must be a list" % what)
    return [str(x) for x in seq]


def _pairs(seq, what: str) -> list[tuple[str, str]]:
    if not isinstance(seq, list):
        raise InputError("%s must be a list of pairs" % what)
    out = []
    for p in seq:
        if not isinstance(p, (list, tuple)) or len(p) != 2:
            raise InputError("%s entry %r is not a pair" % (what, p))
        out.append((str(p[0]), str(p[1])))
    return out


def _require(d, key, what):
    if not isinstance(d, dict) or key not in d:
        raise InputError("%s is missing %r" % (what, key))
    return d[key]


def poset_to_json(P: QuasiOrder) -> dict:
    return {"elements": list(P.elements), "le": [list(c) for c in P.covers()]}


def poset_from_json(d) -> Poset:
    elements = _labels(_require(d, "elements", "poset"), "poset elements")
    le = _pairs(d.get("le", []), "poset le")
    return poset_from_pairs(elements, le)


def lattice_to_json(L: FiniteLattice) -> dict:
    return {"elements": list(L.elements), "covers": [list(c) for c in L.poset.covers()]}


def lattice_from_json(d) -> FiniteLattice:
    elements = _labels(_require(d, "elements", "lattice"), "lattice elements")
    covers = _pairs(d.get("covers", []), "lattice covers")
    return lattice_from_covers(elements, covers)


def congruence_to_json(c: Congruence) -> list[list[str]]:
    return c.labelled_classes()


def princ_to_json(P: PrincPoset) -> dict:
    return {
        "lattice": lattice_to_json(P.lattice),
        "elements": [
            {
                "label": P.label(k),
                "partition": congruence_to_json(c),
                "witness": list(P.witness_labels(k)),
            }
            for k, c in enumerate(P.congruences)
        ],
        "bottom": P.poset.bottom_label,
        "top": P.poset.top_label,
        "hasse": [list(e) for e in P.poset.covers()],
    }


def map_to_json(f: MonotoneMap) -> dict[str, str]:
    return f.as_dict()


def functor_to_json(F: PosetFunctor) -> dict:
    return {
        "base": poset_to_json(F.base),
        "objects": {i: poset_to_json(F.objects[i]) for i in F.base.elements},
        "morphisms": {
            "%s<=%s" % (i, j): map_to_json(F.psi(i, j))
            for i, j in F.arrows() if i != j
        },
    }


def functor_from_json(d) -> PosetFunctor:
    base = poset_from_json(_require(d, "base", "functor"))
    raw_objects = _require(d, "objects", "functor")
    if not isinstance(raw_objects, dict):
        raise InputError("functor objects must be a mapping")
    objects = {str(i): poset_from_json(p) for i, p in raw_objects.items()}
    for i in objects:
        if i not in base.index:
            raise InputError("object given for unknown index %r" % i)
    morphisms = {}
    raw = d.get("morphisms", {})
    if not isinstance(raw, dict):
        raise InputError("functor morphisms must be a mapping")
    for key, table in raw.items():
        if "<=" not in key:
            raise InputError("morphism key %r is not of the form 'i<=j'" % key)
        i, j = (s.strip() for s in key.split("<=", 1))
        if i not in objects or j not in objects:
            raise InputError("morphism %r refers to a missing object" % key)
        if not isinstance(table, dict):
            raise InputError("morphism %r must map elements to elements" % key)
        assignment = {str(x): str(y) for x, y in table.items()}
        morphisms[(i, j)] = MonotoneMap.from_dict(objects[i], objects[j], assignment)
    return PosetFunctor(base, objects, morphisms)


def embedding_to_json(E: EmbeddingFunctor) -> dict:
    return {
        "lattice": lattice_to_json(E.lattice),
        "assignment": {i: E[i].labels() for i in E.base.elements},
    }


def embedding_from_json(d, base: Poset) -> EmbeddingFunctor:
    L = lattice_from_json(_require(d, "lattice", "embedding functor"))
    raw = _require(d, "assignment", "embedding functor")
    if not isinstance(raw, dict):
        raise InputError("assignment must be a mapping")
    subsets = {str(i): _labels(s, "assignment of %r" % i) for i, s in raw.items()}
    return EmbeddingFunctor.from_subsets(base, L, subsets)


def natural_iso_to_json(xi: NaturalIso) -> dict:
    return {j: map_to_json(f) for j, f in xi.components.items()}


def colimit_to_json(data: ColimitData) -> dict:
    return {
        "index": data.index,
        "carrier": list(data.carrier),
        "origins": {x: list(v) for x, v in data.origins.items()},
        "quasiorder": [list(p) for p in data.quasiorder.pairs()],
        "blocks": [list(b) for b in data.blocks],
        "quotient": poset_to_json(data.quotient),
    }


def _dot_id(label: str) -> str:
    return '"%s"' % label.replace("\\", "\\\\").replace('"', '\\"')


def poset_to_dot(P: QuasiOrder, name: str = "P", labels: dict | None = None) -> str:
    """Hasse diagram, drawn bottom-up."""
    lines = ["digraph %s {" % _dot_id(name), "  rankdir=BT;", "  node [shape=plaintext];"]
    for x in P.elements:
        if labels and x in labels:
            lines.append("  %s [label=%s];" % (_dot_id(x), _dot_id(labels[x])))
        else:
            lines.append("  %s;" % _dot_id(x))
    for a, b in P.covers():
        lines.append("  %s -> %s [arrowhead=none];" % (_dot_id(a), _dot_id(b)))
    lines.append("}")
    return "\n".join(lines) + "\n"
