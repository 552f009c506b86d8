"""JSON encodings for categories, bimodules, Λ, modules and triples.

Scalars are strings in the field's canonical format.  Matrices are sparse:
a stack of shape (n, r, c) is ``{"shape": [n, r, c], "entries": [[k, i, j, "v"], ...]}``.
"""
from __future__ import annotations

import json

import numpy as np

from .bimodule import Bimodule
from .exact_linalg import VectorSpace, field_from_spec
from .functor_modules import FiniteModule, ModuleTriple
from .klinear_core import TableCategory
from .trimat import LambdaCategory

SCHEMA_VERSION = 1


class FormatError(ValueError):
    pass


def dumps(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _key(*names):
    return "->".join(names)


def _unkey(s, n):
    parts = s.split("->")
    if len(parts) != n:
        raise FormatError(f"bad key {s!r}")
    return tuple(parts)


def encode_stack(fld, a):
    a = np.asarray(a, dtype=object)
    entries = [[*map(int, idx), fld.format(a[idx])] for idx in zip(*np.nonzero(a != 0))]
    return {"shape": list(a.shape), "entries": entries}


def decode_stack(fld, d):
    try:
        shape = tuple(int(n) for n in d["shape"])
        a = np.empty(shape, dtype=object)
        a.fill(fld.zero)
        for *idx, v in d["entries"]:
            a[tuple(int(i) for i in idx)] = fld.parse(str(v))
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise FormatError(f"bad matrix: {exc}") from None
    return a


def encode_matrix(fld, m):
    return [[fld.format(v) for v in row] for row in np.asarray(m, dtype=object).tolist()]


def _vec(fld, v):
    return [fld.format(x) for x in v]


def _need(d, *keys):
    for k in keys:
        if k not in d:
            raise FormatError(f"missing field {k!r}")


# categories ---------------------------------------------------------------


def category_to_dict(cat):
    fld = cat.field
    objs = list(cat.objects)
    homs, comp = [], []
    for x in objs:
        for y in objs:
            homs.append({"source": x, "target": y, "labels": list(cat.hom(x, y).labels)})
    for x in objs:
        for y in objs:
            for z in objs:
                if cat.dim(x, y) and cat.dim(y, z) and cat.dim(x, z):
                    t = cat.table(x, y, z)
                    if np.any(t != 0):
                        comp.append({"objects": [x, y, z], "table": encode_stack(fld, t)})
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "category",
        "field": str(fld),
        "objects": objs,
        "zero_objects": list(cat.zero_objects),
        "homs": homs,
        "composition": comp,
        "identities": {x: _vec(fld, cat.identity(x)) for x in objs},
    }


def category_from_dict(d):
    _need(d, "field", "objects", "homs", "identities")
    fld = field_from_spec(d["field"])
    objs = list(d["objects"])
    homs = {(h["source"], h["target"]): VectorSpace(tuple(h["labels"])) for h in d["homs"]}
    tables = {}
    for c in d.get("composition", []):
        x, y, z = c["objects"]
        tables[(x, y, z)] = decode_stack(fld, c["table"])
    for x in objs:
        for y in objs:
            for z in objs:
                shape = tuple(homs.get(k, VectorSpace(())).dim for k in ((y, z), (x, y), (x, z)))
                t = tables.get((x, y, z))
                if t is not None and t.shape != shape:
                    raise FormatError(f"table {x},{y},{z} has shape {t.shape}, expected {shape}")
    ids = {x: np.array([fld.parse(v) for v in d["identities"][x]], dtype=object) for x in objs}
    return TableCategory(objs, homs, tables, ids, fld, d.get("zero_objects", ()))


# bimodules ----------------------------------------------------------------


def bimodule_to_dict(M):
    fld = M.field
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "bimodule",
        "spaces": [{"U": u, "T": t, "labels": list(sp.labels)} for (u, t), sp in M.space.items()],
        "left": {_key(*k): encode_stack(fld, a) for k, a in M.left.items() if a.size},
        "right": {_key(*k): encode_stack(fld, a) for k, a in M.right.items() if a.size},
    }


def bimodule_from_dict(d, tcat, ucat):
    _need(d, "spaces")
    fld = tcat.field
    space = {(s["U"], s["T"]): VectorSpace(tuple(s["labels"])) for s in d["spaces"]}
    left = {_unkey(k, 3): decode_stack(fld, v) for k, v in d.get("left", {}).items()}
    right = {_unkey(k, 3): decode_stack(fld, v) for k, v in d.get("right", {}).items()}
    return Bimodule(tcat, ucat, space, left, right)


# Λ ---------------------------------------------------------------------------


def lambda_to_dict(L):
    d = category_to_dict(L)
    d["kind"] = "lambda"
    d["blocks"] = [{"source": x, "target": y,
                    **{k: list(v) for k, v in L.blocks(x, y).items()}}
                   for x in L.objects for y in L.objects]
    d["tcat"] = category_to_dict(L.tcat)
    d["ucat"] = category_to_dict(L.ucat)
    d["bimodule"] = bimodule_to_dict(L.bimod)
    return d


def lambda_from_dict(d):
    """Rebuild Λ from its 𝒯, 𝒰 and M parts (no validity check)."""
    _need(d, "tcat", "ucat", "bimodule")
    tc = category_from_dict(d["tcat"])
    uc = category_from_dict(d["ucat"])
    return LambdaCategory(tc, uc, bimodule_from_dict(d["bimodule"], tc, uc))


# modules and triples --------------------------------------------------------


def module_to_dict(C):
    fld = C.field
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "module",
        "dims": dict(C.dims),
        "action": {_key(*k): encode_stack(fld, a) for k, a in C.action.items() if np.any(a != 0)},
    }


def module_from_dict(d, cat):
    _need(d, "dims")
    fld = cat.field
    action = {_unkey(k, 2): decode_stack(fld, v) for k, v in d.get("action", {}).items()}
    return FiniteModule(cat, d["dims"], action)


def triple_to_dict(tr):
    fld = tr.field
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "triple",
        "A": module_to_dict(tr.A),
        "B": module_to_dict(tr.B),
        "act": {_key(*k): encode_stack(fld, a) for k, a in tr.act.items() if np.any(a != 0)},
    }


def triple_from_dict(d, M):
    _need(d, "A", "B")
    A = module_from_dict(d["A"], M.tcat)
    B = module_from_dict(d["B"], M.ucat)
    act = {_unkey(k, 2): decode_stack(M.field, v) for k, v in d.get("act", {}).items()}
    return ModuleTriple(M, A, B, act)


def load(path):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
