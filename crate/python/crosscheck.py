#!/usr/bin/env python3
"""Independent cross-check of the exact counting stack.

Reimplements the whole formula lattice (balanced counts, pseudo-path
lift, disconnected split, connected peel) in a few lines of exact Python
arithmetic and compares it against the grident CLI: every tabulated
codimension for k <= 5, n <= 40, spot values far beyond the enumeration
range, and the reported asymptotic deviations.

Run after `cargo build --workspace --release`:

    python3 python/crosscheck.py
"""

import json
import math
import subprocess
import sys
from functools import lru_cache
from pathlib import Path

BIN = Path(__file__).resolve().parent.parent / "target" / "release" / "grident"


@lru_cache(maxsize=None)
def p(k, n):
    if k == 1:
        return 1
    return sum(math.comb(n, i) ** 2 * p(k - 1, i) for i in range(n + 1))


@lru_cache(maxsize=None)
def gamma(k, n):
    v = p(k, n + 1)
    assert v % k == 0, (k, n)
    return v // k


@lru_cache(maxsize=None)
def sd(k, n):
    total = 0
    for j in range(1, k):
        for i in range(j - 1, n):
            total += math.comb(k - 1, j - 1) * math.comb(n, i) * sc(j, i) * p(k - j, n - i)
    return total


@lru_cache(maxsize=None)
def sc(j, n):
    if j == 1:
        return 1
    return m(j, n) - sum(math.comb(j - 1, l - 1) * sc(l, n) for l in range(1, j))


@lru_cache(maxsize=None)
def m(k, n):
    return gamma(k, n) - sd(k, n)


def ln_big(x):
    bits = x.bit_length()
    if bits <= 900:
        return math.log(x)
    shift = bits - 64
    return math.log(x >> shift) + shift * math.log(2)


def run(*args):
    out = subprocess.run([str(BIN), *args], capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


def main():
    if not BIN.exists():
        sys.exit("release binary missing; run `cargo build --workspace --release` first")
    sys.setrecursionlimit(100000)

    for k in range(1, 6):
        rows = run("codim", "table", "--k", str(k), "--n-max", "40")["values"]
        for row in rows:
            assert int(row["value"]) == m(k, row["n"]), (k, row["n"])
    print("codim tables k<=5, n<=40: all 205 values match")

    for k, n in [(2, 1000), (3, 100), (3, 400), (4, 120), (5, 80)]:
        got = int(run("codim", "--k", str(k), "--n", str(n))["value"])
        assert got == m(k, n), (k, n)
        print(f"m_{k}({n}) matches ({got.bit_length()} bits)")

    for k, n, bound in [(2, 100, 0.01), (2, 1000, 0.001), (3, 400, 0.05)]:
        row = run("asym", "--k", str(k), "--n", str(n))["rows"][0]
        ln_exact = ln_big(m(k, n))
        lead = (k / 2 + 1) * math.log(k) - (k - 1) / 2 * math.log(4 * math.pi)
        ln_asym = lead + 2 * n * math.log(k) - (k - 1) / 2 * math.log(n)
        dev = math.exp(ln_exact - ln_asym) - 1
        assert abs(dev - row["deviation"]) < 1e-9, (k, n, dev, row["deviation"])
        assert abs(dev) <= bound, (k, n, dev)
        print(f"deviation k={k} n={n}: {dev:+.6e} (cli {row['deviation']:+.6e})")

    print("crosscheck passed")


if __name__ == "__main__":
    main()
