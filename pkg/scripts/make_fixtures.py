"""Regenerate the bundled fixture documents in src/stratcartan/data.

The Example 1 zoo is every indecomposable of the cube-zero cyclic algebra,
read off its AR quiver: each is P(i)/rad^k P(i).  The Example 2 zoo holds the
projectives, simples, radicals and socle quotients of the projectives.
"""
from __future__ import annotations

import pathlib

from stratcartan.fixtures import algebra
from stratcartan.modules import is_indecomposable, quotient, radical_power_spaces, submodule
from stratcartan.quiver import projective, simple
from stratcartan.serialize import canonical_json, module_to_json

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "stratcartan" / "data"


def ex1_zoo(A):
    zoo = {}
    loewy = {"1": ("1/2/3", "1/2"), "2": ("2/3/1", "2/3"), "3": ("3/1/2", "3/1")}
    for v in A.vertices:
        P = projective(A, v)
        zoo[f"EX1.P{v}"] = (P, loewy[v][0])
        zoo[f"EX1.P{v}/soc"] = (quotient(P, radical_power_spaces(P, 2))[0], loewy[v][1])
    for v in A.vertices:
        zoo[f"EX1.S{v}"] = (simple(A, v), v)
    return zoo


def ex2_zoo(A):
    zoo = {}
    loewy = {
        "1": ("1/32/1", "32/1", "1/32"),
        "2": ("2/1/2", "1/2", "2/1"),
        "3": ("3/1/3", "1/3", "3/1"),
    }
    for v in A.vertices:
        P = projective(A, v)
        rad = radical_power_spaces(P, 1)
        soc = radical_power_spaces(P, 2)
        zoo[f"EX2.P{v}"] = (P, loewy[v][0])
        zoo[f"EX2.radP{v}"] = (submodule(P, rad)[0], loewy[v][1])
        zoo[f"EX2.P{v}/soc"] = (quotient(P, soc)[0], loewy[v][2])
    for v in A.vertices:
        zoo[f"EX2.S{v}"] = (simple(A, v), v)
    return zoo


def dump(name, A, zoo, aliases):
    doc = {"modules": {}, "aliases": aliases}
    for key, (X, lw) in zoo.items():
        assert is_indecomposable(X), key
        doc["modules"][key] = {"loewy": lw, **module_to_json(X)}
    (DATA / name).write_text(canonical_json(doc))


def main():
    DATA.mkdir(parents=True, exist_ok=True)
    A1 = algebra("ex1")
    A2 = algebra("ex2")
    dump("ex1_modules.json", A1, ex1_zoo(A1),
         {"EX1.M1": "EX1.P1", "EX1.M2": "EX1.P1/soc", "EX1.M3": "EX1.S2"})
    dump("ex2_modules.json", A2, ex2_zoo(A2), {})
    print("wrote", sorted(p.name for p in DATA.iterdir()))


if __name__ == "__main__":
    main()
