#!/usr/bin/env python3
"""Smoke test for the grident Python extension.

Builds nothing itself: it locates the compiled cdylib under target/,
exposes it as an importable module, and exercises the main entry points,
cross-checking the k=2 codimension against an independent computation
with math.comb.

Run after `cargo build -p grident-py --release`:

    python3 python/smoke_test.py
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def import_grident():
    candidates = [
        ROOT / "target" / "release" / "libgrident.so",
        ROOT / "target" / "debug" / "libgrident.so",
        ROOT / "target" / "release" / "libgrident.dylib",
        ROOT / "target" / "debug" / "libgrident.dylib",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("no compiled module found; run `cargo build -p grident-py --release` first")
    newest = max(built, key=lambda p: p.stat().st_mtime)
    stage = Path(tempfile.mkdtemp(prefix="grident-smoke-"))
    shutil.copy2(newest, stage / "grident.so")
    sys.path.insert(0, str(stage))
    import grident

    return grident


def main():
    grident = import_grident()
    checks = 0

    def check(cond, what):
        nonlocal checks
        assert cond, what
        checks += 1

    # groups
    c3 = grident.Group.from_spec("C3")
    check(c3.order() == 3, "C3 order")
    check(c3.element_names() == ["e", "s", "s2"], "C3 names")
    check(c3.mul("s", "s2") == "e", "C3 product")
    check(c3.inv("s") == "s2", "C3 inverse")
    rep = c3.regular_representation()
    check(rep[0] == [1, 2, 3] and rep[1] == [2, 3, 1], "regular representation")

    klein = grident.Group.from_table([[1, 2, 3, 4], [2, 1, 4, 3], [3, 4, 1, 2], [4, 3, 2, 1]])
    check(klein.order() == 4, "table group order")

    # the monomial graph from the worked example
    edges = grident.graph_edges(c3, "x[3,s] x[2,s2] x[5,s2] x[4,e] x[1,s]")
    check((3, "e", "s", "s") in edges and (4, "s2", "s2", "e") in edges, "graph edges")
    dot = grident.graph_dot(c3, "x[3,s] x[2,s2] x[5,s2] x[4,e] x[1,s]")
    check('"e" -> "s" [label="3 (s)"];' in dot, "dot rendering")

    # equivalence and the permutation census
    check(
        grident.equivalent(c3, "x[1,s]x[2,s]x[3,s]x[4,s2]", "x[4,s2]x[3,s]x[1,s]x[2,s]"),
        "equivalent reorderings",
    )
    c2 = grident.Group.from_spec("C2")
    check(not grident.equivalent(c2, "x[1,e]x[2,s]", "x[2,s]x[1,e]"), "loop swap differs")
    census = grident.ipp_census(c2, "x[1,s]x[2,e]x[3,s]x[4,s]")
    check(
        census["total"] == 4 and census["even"] == 2 and census["odd"] == 2,
        "census of the four-path monomial",
    )

    # parity sweep
    sw = grident.swan(c2, 4)
    check(sw["asserted"] and sw["balanced_everywhere"], "parity balance at n=4")

    # identity decisions, both routes
    check(grident.is_identity(c2, "x[1,e]x[2,e] - x[2,e]x[1,e]", "both"), "commutator identity")
    check(not grident.is_identity(c2, "x[1,e]x[2,s] - x[2,s]x[1,e]", "both"), "non-identity")
    classes = grident.identity_classes(c2, "x[1,e]x[2,s] - x[2,s]x[1,e]")
    check(len(classes) == 2 and {c[2] for c in classes} == {"1", "-1"}, "class sums")
    gens = grident.bd_generators(c3)
    check(len(gens) == 4, "generator count")
    check(all(grident.is_identity(c3, g, "both") for g in gens), "generators vanish")

    # standard polynomial
    al = grident.al_verify(c2, 4)
    check(al["asserted"] and al["all_identities"], "degree-4 standard identity")
    al3 = grident.al_verify(c2, 3)
    check(not al3["all_identities"], "degree-3 fails somewhere")
    check(grident.oracle_nonzero_entries(c2, "x[1,e]") == [(1, 1), (2, 2)], "oracle diagonal")

    # elementary gradings
    c4 = grident.Group.from_spec("C4")
    elem = grident.elementary_identity(c4, ["e", "s"], ["s", "s"])
    check(elem["identity"] and elem["witness"] == [1, 2], "elementary witness")
    check(elem["units_cross_check"], "matrix-unit cross-check")

    # exact codimensions against an independent computation
    for n in (1, 2, 3, 4, 10, 50):
        expect = math.comb(2 * n + 1, n) - 2**n + 1
        check(grident.codim(2, n) == expect, f"codim(2,{n})")
        check(grident.codim(2, n, "closed") == expect, f"closed codim(2,{n})")
    check(grident.codim(2, 4, "enum") == 111, "enumerated codim")
    check(grident.codim_table(2, 4) == [1, 2, 7, 28, 111], "codim table")
    check(
        grident.p_balanced(2, 20) == math.comb(40, 20),
        "balanced count equals the central binomial",
    )
    for method in ("nested", "multinomial", "split:2"):
        check(
            grident.p_balanced(5, 12, method) == grident.p_balanced(5, 12),
            f"balanced route {method}",
        )

    # asymptotics
    rows = grident.asym_report(2, [100, 1000])
    dev100 = abs(rows[0]["deviation"])
    dev1000 = abs(rows[1]["deviation"])
    check(dev1000 < dev100 < 0.01, "asymptotic deviations shrink")
    check(rows[1]["exact"] == math.comb(2001, 1000) - 2**1000 + 1, "big integer round-trip")

    print(f"smoke test passed ({checks} checks)")


if __name__ == "__main__":
    main()
