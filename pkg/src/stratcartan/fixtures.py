"""Bundled algebras, module zoos and golden values for the two worked examples."""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Tuple

from .modules import Representation
from .quiver import BoundQuiverAlgebra, algebra_from_json
from .serialize import module_from_json

ALGEBRAS = ("ex1", "ex2")


def _load(name: str):
    return json.loads(resources.files("stratcartan").joinpath("data", name).read_text())


def algebra_doc(name: str) -> dict:
    return _load(f"{name}_algebra.json")


@lru_cache(maxsize=None)
def algebra(name: str) -> BoundQuiverAlgebra:
    return algebra_from_json(algebra_doc(name))


@lru_cache(maxsize=None)
def _zoo(name: str) -> Tuple[Dict[str, Representation], Dict[str, str], Dict[str, str]]:
    A = algebra(name)
    doc = _load(f"{name}_modules.json")
    mods, loewy = {}, {}
    for key in sorted(doc["modules"]):
        entry = doc["modules"][key]
        mods[key] = module_from_json(A, entry, label=key)
        loewy[key] = entry.get("loewy", "")
    return mods, loewy, dict(doc.get("aliases", {}))


def zoo(name: str) -> Dict[str, Representation]:
    """Fixture modules keyed by name (aliases excluded)."""
    return dict(_zoo(name)[0])


def loewy_labels(name: str) -> Dict[str, str]:
    return dict(_zoo(name)[1])


def named_modules(name: str) -> Dict[str, Representation]:
    """Fixture modules including aliases such as EX1.M2."""
    mods, _, aliases = _zoo(name)
    out = dict(mods)
    for alias, target in aliases.items():
        out[alias] = mods[target].relabel(alias)
    return out


def fixtures_for(A: BoundQuiverAlgebra) -> Dict[str, Representation]:
    """Named fixtures whose algebra presentation equals that of A (rebuilt over A)."""
    out = {}
    for name in ALGEBRAS:
        if algebra(name).describe() == A.describe():
            for key, X in named_modules(name).items():
                out[key] = X if A is algebra(name) else Representation(A, X.dims, X.maps, key)
    return out


def golden() -> dict:
    return _load("golden.json")


def system_summands(case: str) -> List[Representation]:
    g = golden()[case]
    mods = named_modules(g["algebra"])
    return [mods[s] for s in g["summands"]]


def ar_pairing_zoo() -> List[Tuple[str, List[Representation]]]:
    return [(name, list(zoo(name).values())) for name in ALGEBRAS]
