#!/usr/bin/env python3
"""Regenerate the scenario files in fixtures/.

Usage: python3 scripts/make_fixtures.py [output-dir]
"""

import json
import random
import re
import sys
from pathlib import Path


def compact(text):
    return re.sub(r"\[([-\d,\s]+)\]",
                  lambda m: "[" + ", ".join(t.strip() for t in m.group(1).split(",")) + "]",
                  text)


def scenario(name, group, points, generators, sets, params):
    return {
        "name": name,
        "group": group,
        "action": {
            "points": points,
            "metric": "discrete",
            "generators": [{"element": e, "map": m} for e, m in generators],
        },
        "sets": sets,
        "params": params,
    }


def torus_maps(p, q):
    e1 = [((i + 1) % p) * q + j for i in range(p) for j in range(q)]
    e2 = [i * q + (j + 1) % q for i in range(p) for j in range(q)]
    return e1, e2


def heis_index(a, b, c, k):
    return a % k + k * (b % k) + k * k * (c % k)


def heis_left(s, k):
    """Left translation by s = (sa, sb, sc) on H(Z/k)."""
    sa, sb, sc = s
    out = [0] * k ** 3
    for c in range(k):
        for b in range(k):
            for a in range(k):
                out[heis_index(a, b, c, k)] = heis_index(sa + a, sb + b, sc + c + sa * b, k)
    return out


def dominating_set(neighbours, size, rng):
    """Random-restart search for a dominating set of the given size."""
    n = len(neighbours)
    for _ in range(10000):
        chosen = set()
        uncovered = set(range(n))
        while uncovered:
            x = rng.choice(sorted(uncovered))
            y = rng.choice(neighbours[x])
            chosen.add(y)
            uncovered -= set(neighbours[y]) | {y}
        if len(chosen) <= size:
            rest = [x for x in range(n) if x not in chosen]
            rng.shuffle(rest)
            chosen |= set(rest[: size - len(chosen)])
            return sorted(chosen)
    raise RuntimeError("no dominating set found")


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures"
    out.mkdir(parents=True, exist_ok=True)
    docs = {}

    rot8 = [(i + 1) % 8 for i in range(8)]
    docs["z8_rotation"] = scenario(
        "z8_rotation", "z1", 8, [([1], rot8)],
        {"A": [0], "B": [2, 3, 4]},
        {"mode": "exact", "d_radius": 3, "m": 2, "epsilon": "0", "word_radius": 4, "max_sets": 3})

    e1, e2 = torus_maps(6, 6)
    block = [i * 6 + j for i in range(3) for j in range(3)]
    docs["z2_torus_6"] = scenario(
        "z2_torus_6", "z2", 36, [([1, 0], e1), ([0, 1], e2)],
        {"A": [0], "B": block},
        {"mode": "exact", "d_radius": 4, "m": 5, "epsilon": "0", "ord": 2})

    rng = random.Random(20240612)
    e1, e2 = torus_maps(12, 12)
    cells = list(range(144))
    rng.shuffle(cells)
    a12 = sorted(cells[:7])
    b12 = sorted(cells[7:7 + 58])
    docs["z2_torus_12"] = scenario(
        "z2_torus_12", "z2", 144, [([1, 0], e1), ([0, 1], e2)],
        {"A": a12, "B": b12},
        {"mode": "exact", "ord": 2, "nmax": 8})

    k = 4
    ga = heis_left((1, 0, 0), k)
    gb = heis_left((0, 1, 0), k)
    ga_inv = heis_left((-1, 0, 0), k)
    gb_inv = heis_left((0, -1, 0), k)
    # B_1 x = {x, a x, a^-1 x, b x, b^-1 x}
    windows = [[x, ga[x], ga_inv[x], gb[x], gb_inv[x]] for x in range(k ** 3)]
    # y lies in the window of x iff x lies in the window of y (symmetric generators)
    b_heis = dominating_set(windows, 20, random.Random(7))
    a_heis = [x for x in range(k ** 3) if x not in b_heis][:1]
    docs["heisenberg_mod4"] = scenario(
        "heisenberg_mod4", "heisenberg", 64,
        [([1, 0, 0], ga), ([0, 1, 0], gb)],
        {"A": a_heis, "B": b_heis},
        {"mode": "exact", "nmax": 4})

    two = [(i + 1) % 4 for i in range(4)] + [4 + (i + 1) % 8 for i in range(8)]
    docs["two_orbit_counterexample"] = scenario(
        "two_orbit_counterexample", "z1", 12, [([1], two)],
        {"A": [0, 1], "B": [2] + list(range(4, 12)), "C": [0]},
        {"mode": "exact", "word_radius": 4, "max_sets": 3})

    for name, doc in docs.items():
        (out / f"{name}.json").write_text(compact(json.dumps(doc, indent=2)) + "\n")
        print(f"wrote {out / (name + '.json')}")


if __name__ == "__main__":
    main()
