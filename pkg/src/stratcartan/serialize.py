"""JSON documents for modules and matrices."""
from __future__ import annotations

import hashlib
import json
import re
from typing import Dict, Optional

from .linalg import Matrix, format_scalar
from .modules import Representation
from .quiver import injective, projective, simple

_NAMED = re.compile(r"^\s*([PIS])\(\s*([^)]+?)\s*\)\s*$")


class InputError(ValueError):
    """Malformed input document or module specification."""


def matrix_to_json(m: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in m.data]


def int_matrix_to_json(m: Matrix) -> list:
    return [[int(x) for x in row] for row in m.data]


def module_to_json(X: Representation) -> dict:
    A = X.algebra
    return {
        "dims": {v: X.dims[k] for k, v in enumerate(A.vertices)},
        "maps": {a.name: matrix_to_json(X.maps[a.name]) for a in A.quiver.arrows
                 if X.maps[a.name].rows and X.maps[a.name].cols},
    }


def module_from_json(A, doc: dict, label: str = "") -> Representation:
    try:
        dims_doc = doc["dims"]
        if isinstance(dims_doc, dict):
            unknown = set(dims_doc) - set(A.vertices)
            if unknown:
                raise InputError(f"unknown vertices {sorted(unknown)}")
            dims = [int(dims_doc.get(v, 0)) for v in A.vertices]
        else:
            dims = [int(x) for x in dims_doc]
        maps = {}
        for name, rows in doc.get("maps", {}).items():
            if name not in A.quiver.arrow:
                raise InputError(f"unknown arrow {name!r}")
            a = A.quiver.arrow[name]
            r, c = dims[A.quiver.index[a.tgt]], dims[A.quiver.index[a.src]]
            maps[name] = Matrix(A.ring, r, c, rows)
        return Representation(A, dims, maps, label)
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise InputError(f"malformed module document: {e}") from None


def resolve_module(A, spec, fixtures: Optional[Dict[str, Representation]] = None) -> Representation:
    """A module from a named constructor, a fixture name, or an inline document."""
    if isinstance(spec, dict):
        return module_from_json(A, spec)
    if not isinstance(spec, str):
        raise InputError(f"cannot interpret module spec {spec!r}")
    m = _NAMED.match(spec)
    if m:
        kind, v = m.groups()
        try:
            vert = A.vertex(v)
        except KeyError:
            raise InputError(f"unknown vertex in {spec!r}") from None
        return {"P": projective, "I": injective, "S": simple}[kind](A, vert)
    if fixtures and spec in fixtures:
        return fixtures[spec]
    raise InputError(f"unknown module name {spec!r}")


def canonical_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(doc) -> str:
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()[:16]
