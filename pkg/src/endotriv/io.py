"""JSON documents for groups, complexes and class functions.

Complex document::

    {"group": "C4" | {"name": ..., "table": [[...]]},
     "p": 2,
     "modules": {"1": [[0], ...], "0": [[0, 1, 2, 3]]},
     "differentials": {"1": [[1, 1, 1, 1]]}}

Each module is the disjoint union of the coset sets G/L over its listed
subgroups L (given by their elements), so the matrix columns follow
``gset_from_spec``.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .classfun import ClassFunction
from .complexes import Complex, ComplexError
from .groups import FiniteGroup, GroupError, Subgroup, build_group, catalog_group, conjugacy_classes_of_subgroups, make_subgroup
from .gsets import gset_from_spec, transitive_decomposition
from .permmod import PermModule


class FormatError(ValueError):
    pass


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def write_json(path, doc: dict) -> None:
    Path(path).write_text(dumps(doc) + "\n", encoding="utf-8")


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=False)


def group_doc(G: FiniteGroup) -> str | dict:
    """The catalog name when it rebuilds the same table, otherwise the table itself."""
    try:
        if np.array_equal(catalog_group(G.name).table, G.table):
            return G.name
    except (GroupError, ValueError):
        pass
    return G.to_json()


def complex_to_doc(X: Complex) -> dict:
    X = X.trimmed() if X.hi >= X.lo else X
    mods, perms = {}, {}
    for n in X.degrees:
        subs, new = transitive_decomposition(X.modules[n].basis)
        mods[str(n)] = [list(L.elements) for L in subs]
        perms[n] = new
    diffs = {}
    for n in range(X.lo + 1, X.hi + 1):
        src, tgt = perms[n], perms[n - 1]
        m = np.zeros((len(tgt), len(src)), dtype=np.int64)
        m[np.ix_(tgt, src)] = X.d(n)
        diffs[str(n)] = m.tolist()
    return {"group": group_doc(X.group), "p": X.p, "modules": mods, "differentials": diffs}


def _matrix(rows) -> np.ndarray | None:
    if not rows:
        return None
    m = np.asarray(rows, dtype=np.int64)
    if m.ndim != 2:
        raise ValueError("differential is not a rectangular integer matrix")
    return m


def complex_from_doc(doc: dict, group: FiniteGroup | None = None) -> Complex:
    try:
        G = group or build_group(doc["group"])
        p = int(doc["p"])
        mods = {}
        for n, subs in doc.get("modules", {}).items():
            Ls = [make_subgroup(G, els) for els in subs]
            mods[int(n)] = PermModule(gset_from_spec(G, Ls), p)
        diffs = {int(n): _matrix(m) for n, m in doc.get("differentials", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed complex document: {exc}") from exc
    for n in diffs:
        if n not in mods or n - 1 not in mods:
            raise FormatError(f"differential in degree {n} has no source or target module")
    for n, m in diffs.items():
        if m is None:
            diffs[n] = np.zeros((mods[n - 1].dim, mods[n].dim), dtype=np.int64)
    return Complex(G, p, mods, diffs, check=True)


def load_complex(path) -> Complex:
    return complex_from_doc(read_json(path))


def save_complex(path, X: Complex) -> None:
    write_json(path, complex_to_doc(X))


def classfun_to_doc(h: ClassFunction) -> dict:
    labels = [c.representative.label for c in conjugacy_classes_of_subgroups(h.group, h.p)]
    return {"group": group_doc(h.group), "p": h.p, "classes": labels, "values": list(h.values)}


def classfun_from_doc(doc: dict, group: FiniteGroup | None = None) -> ClassFunction:
    try:
        G = group or build_group(doc["group"])
        return ClassFunction(G, int(doc["p"]), tuple(int(v) for v in doc["values"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed class-function document: {exc}") from exc


def parse_subgroup(G: FiniteGroup, text: str, p: int | None = None) -> Subgroup:
    """A subgroup given by its label ``{0,1}`` or by a class index in the canonical order."""
    text = text.strip()
    if text.startswith("{"):
        els = [int(t) for t in text.strip("{}").split(",") if t.strip()]
        return make_subgroup(G, els)
    classes = conjugacy_classes_of_subgroups(G, p)
    try:
        return classes[int(text)].representative
    except (IndexError, ValueError) as exc:
        raise GroupError(f"no subgroup {text!r}") from exc


__all__ = [
    "ComplexError",
    "FormatError",
    "classfun_from_doc",
    "classfun_to_doc",
    "complex_from_doc",
    "complex_to_doc",
    "load_complex",
    "parse_subgroup",
    "save_complex",
]
