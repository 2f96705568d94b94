"""Acceptance criteria 1-7, one PASS/FAIL line each.

Expected matrices are written out literally here (not read from the bundled
golden file) so the fixtures cannot vouch for themselves.  Run directly with
``python3 tests/test_acceptance.py`` or through pytest.
"""
import sys
import time

import pytest

from stratcartan import fixtures as fx
from stratcartan import pipeline as pl
from stratcartan.serialize import canonical_json

RESULTS = {}


def _job(alg, mods):
    return pl.run_job(pl.JobSpec(alg, tuple(mods))).report


def _dims(rep, key):
    return [e["dims"] for e in rep["system"][key]]


def _labels(rep, key):
    return [e["iso_label"] for e in rep["system"][key]]


def _mat(rep, key):
    return rep["matrices"][key]["entries"]


def criterion_1():
    rep = _job("ex1", ["P(1)", "P(2)", "P(3)"])
    ok = (
        _mat(rep, "C") == [[1, 0, 1], [0, 1, 1], [0, 0, 1]]
        and _mat(rep, "S") == [[1, 0, 1], [0, 1, 1], [0, 0, 1]]
        and _mat(rep, "G") == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        and _mat(rep, "R") == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        and _dims(rep, "delta") == [[1, 0, 0], [0, 1, 0], [1, 1, 1]]
        and _dims(rep, "K") == [[0, 1, 1], [1, 0, 1], [0, 0, 0]]
        and _dims(rep, "Q") == [[1, 1, 0], [0, 1, 0], [1, 1, 1]]
        and _dims(rep, "U") == [[0, 1, 0], [0, 0, 0], [0, 0, 0]]
        and rep["cartan_group"]["order"] == 1
        and rep["cartan_group"]["structure"] == "0"
        and rep["ok"]
    )
    return ok, f"C={_mat(rep, 'C')} |G|={rep['cartan_group']['order']}"


def criterion_2():
    rep = _job("ex1", ["P(1)", "EX1.P1/soc", "S(2)"])
    C, G, S, R = (_mat(rep, k) for k in "CGSR")
    cols = [[G[v][i] for v in range(3)] for i in range(3)]
    identity = all(
        C[i][j] == sum(G[v][i] * S[v][j] for v in range(3)) + R[i][j] for i in range(3) for j in range(3)
    )
    g_printed = [[1, 0, 0], [0, 1, -1], [0, 1, -1]]
    printed_breaks = any(
        C[i][j] != sum(g_printed[v][i] * S[v][j] for v in range(3)) + R[i][j] for i in range(3) for j in range(3)
    )
    flagged = any("printed G^M is inconsistent" in w for w in _job_golden("ex1-M")["warnings"])
    minfd = all(r["a"] == "YES" and r["b"] and r["c"] and r["d"] and r["e"] for r in rep["minfd"])
    ok = (
        C == [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
        and S == [[1, 1, 0], [1, 0, 1], [1, 0, 0]]
        and R == [[0, 0, 0], [0, 0, 0], [0, 0, 0]]
        and cols == [[1, 0, 0], [1, 0, -1], [0, 1, -1]]
        and identity and printed_breaks and flagged and minfd
        and _labels(rep, "U")[1] == "EX1.S2" and _labels(rep, "K")[1] == "EX1.S2"
        and rep["ok"]
    )
    return ok, f"G columns={cols} MinFD all true={minfd} misprint flagged={flagged}"


def _job_golden(case):
    g = fx.golden()[case]
    return pl.run_job(pl.JobSpec(g["algebra"], tuple(g["summands"]), golden=case)).report


def criterion_3():
    rep = _job("ex2", ["P(1)", "P(2)", "P(3)"])
    cg = rep["cartan_group"]
    prod = 1
    for i in range(3):
        prod *= _mat(rep, "C")[i][i]
    ok = (
        _mat(rep, "C") == [[1, 0, 0], [0, 2, 0], [0, 0, 2]]
        and _mat(rep, "G") == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        and _mat(rep, "S") == [[1, 1, 1], [0, 2, 0], [0, 0, 2]]
        and _mat(rep, "R") == [[0, -1, -1], [0, 0, 0], [0, 0, 0]]
        and cg["torsion"] == [2, 2] and cg["order"] == 4 and prod == 4
        and _labels(rep, "Q")[0] == "EX2.S1" and _labels(rep, "delta")[0] == "EX2.S1"
        and _dims(rep, "U") == [[0, 0, 0]] * 3
        and _dims(rep, "K")[0] == [1, 1, 1]
        and rep["ok"]
    )
    return ok, f"C={_mat(rep, 'C')} group={cg['structure']} order={cg['order']}"


def criterion_4():
    summary, failures = pl.pairing_suite()
    n = summary["total_pairs"]
    return n >= 150 and not failures, f"{n} pairs, {len(failures)} failures"


_SWEEP = {}


def _sweep():
    if "s" not in _SWEEP:
        _SWEEP["s"] = pl.sweep("ex1")[0]
    return _SWEEP["s"]


def criterion_5():
    s = _sweep()
    fails = [f for f in s["failures"] if "minfd" not in f and "equivalence" not in f]
    return s["instances"] > 0 and not s["failures"], (
        f"{s['instances']} instances over {s['tau_rigid_sums']} τ-rigid sums "
        f"({s['candidates']} candidates), {len(fails)} invariant failures")


def criterion_6():
    s = _sweep()
    sweep_bad = [f for f in s["failures"] if "minfd" in f or "equivalence" in f]
    fixture_bad = []
    for case in fx.golden():
        rep = _job_golden(case)
        fixture_bad += [r for r in rep["minfd"] if not r["consistent"]]
        fixture_bad += [g for g in rep["diagonal"] if not g["consistent"]]
    return not sweep_bad and not fixture_bad, (
        f"{len(fixture_bad)} fixture and {len(sweep_bad)} sweep inconsistencies")


def criterion_7():
    t0 = time.time()
    a = canonical_json(pl.selftest(seed=0, workers=1).report)
    b = canonical_json(pl.selftest(seed=0, workers=1).report)
    c = canonical_json(pl.selftest(seed=0, workers=4).report)
    ok = a == b == c and pl.selftest(seed=0).ok
    return ok, f"{len(a)} bytes, identical={a == b == c}, {time.time() - t0:.1f}s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7]


def _run(k):
    ok, detail = CRITERIA[k - 1]()
    line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[k] = line
    print(line)
    return ok


@pytest.mark.parametrize("k", range(1, 8))
def test_criterion(k):
    assert _run(k)


if __name__ == "__main__":
    results = [_run(k) for k in range(1, 8)]
    sys.exit(0 if all(results) else 1)
