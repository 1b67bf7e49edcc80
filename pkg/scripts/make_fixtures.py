"""Regenerate the bundled JSON fixtures under src/actionuncertainty/data/.

Run from the repository root:  python scripts/make_fixtures.py
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from actionuncertainty.groups import cyclic_group, direct_product, group_from_permutations

DATA = Path(__file__).resolve().parents[1] / "src" / "actionuncertainty" / "data"

S3_GENERATORS = [[1, 0, 2], [1, 2, 0]]
D4_GENERATORS = [[1, 2, 3, 0], [2, 1, 0, 3]]


def dump(rel: str, obj) -> None:
    path = DATA / rel
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=1, sort_keys=True) + "\n", encoding="utf-8")


def group_json(g, perms=None) -> dict:
    out = {"name": g.name, "cayley": [list(r) for r in g.cayley]}
    if perms is not None:
        out["perms"] = [list(p) for p in perms]
    return out


def quaternion_table() -> list[list[int]]:
    # index 2u + s: unit u in (1, i, j, k), sign s (0 = +, 1 = -)
    unit = {(0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
            (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
            (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
            (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1)}
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            u, s = unit[(a // 2, b // 2)]
            row.append(2 * u + ((s + a % 2 + b % 2) % 2))
        table.append(row)
    return table


def s3_bundle(g) -> dict:
    """Trivial, sign and the standard 2-dim irrep on the basis e1-e2, e2-e3."""
    def sign(p):
        inv = sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j])
        return -1 if inv % 2 else 1

    def standard(p):
        cols = []
        for v in ([1, -1, 0], [0, 1, -1]):
            u = [0, 0, 0]
            for y in range(3):
                u[p[y]] += v[y]
            cols.append((u[0], -u[2]))  # u = a(e1-e2) + b(e2-e3) => a = u1, b = -u3
        return [[cols[j][i] for j in range(2)] for i in range(2)]

    def cyc(x):
        return [str(Fraction(x)), "0"]

    irreps = [
        {"degree": 1, "matrices": {str(a): [[cyc(1)]] for a in g.elements}},
        {"degree": 1, "matrices": {str(a): [[cyc(sign(g.perms[a]))]] for a in g.elements}},
        {"degree": 2, "matrices": {str(a): [[cyc(x) for x in row] for row in standard(g.perms[a])]
                                   for a in g.elements}},
    ]
    return {"group": "../groups/S3.json", "field": "Q(zeta_3)", "irreps": irreps}


def main() -> None:
    for n in range(1, 9):
        dump(f"groups/Z{n}.json", group_json(cyclic_group(n)))
    z2, z4 = cyclic_group(2), cyclic_group(4)
    dump("groups/Z2xZ2.json", group_json(direct_product(z2, z2, "Z2xZ2")))
    dump("groups/Z2xZ4.json", group_json(direct_product(z2, z4, "Z2xZ4")))
    dump("groups/Z2^3.json", group_json(direct_product(direct_product(z2, z2), z2, "Z2^3")))
    s3 = group_from_permutations(S3_GENERATORS, 3, "S3")
    dump("groups/S3.json", group_json(s3, s3.perms))
    dump("groups/S3_natural.json", {"name": "S3", "degree": 3, "permutation_generators": S3_GENERATORS})
    d4 = group_from_permutations(D4_GENERATORS, 4, "D4")
    dump("groups/D4.json", group_json(d4, d4.perms))
    dump("groups/Q8.json", {"name": "Q8", "cayley": quaternion_table()})

    dump("bundles/S3_Qzeta3.json", s3_bundle(s3))
    dump("actions/S3_natural.json", {"group": "../groups/S3.json", "kind": "natural"})
    dump("actions/S3_regular.json", {"group": "../groups/S3.json", "kind": "regular"})
    dump("functions/worked_s3.json",
         {"action": "../actions/S3_natural.json", "field": "Q", "values": ["1", "-1", "0"]})
    dump("functions/zero.json",
         {"action": "../actions/S3_natural.json", "field": "Q", "values": ["0", "0", "0"]})

    order8 = ["Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8",
              "Z2xZ2", "Z2xZ4", "Z2^3", "S3", "D4", "Q8"]
    dump("configs/sweep_order8.json", {
        "groups": [f"../groups/{name}.json" for name in order8],
        "fields": ["GF(2)", "GF(3)"],
        "actions": "all-transitive",
        "max_order": 8,
        "normalize": "leading-one",
        "jobs": 1,
        "seed": 0,
    })
    dump("configs/worked_s3.json", {
        "groups": ["../groups/S3.json"],
        "fields": ["Q"],
        "functions": ["../functions/worked_s3.json"],
        "max_order": 8,
        "normalize": "leading-one",
        "jobs": 1,
        "seed": 0,
    })


if __name__ == "__main__":
    main()
