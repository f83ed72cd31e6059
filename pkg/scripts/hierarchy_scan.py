"""Tabulate hierarchy parameters: closed form, its validation, and the scan fallback.

    python scripts/hierarchy_scan.py --r-max 8 --graph-order 20000
"""

import argparse
import json
import time

from glocal.families import FamilySpec, formula_params, hierarchy_params, verify_family_pair


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--r-max", type=int, default=7)
    ap.add_argument("--graph-order", type=int, default=20_000, help="largest family built for the graph-level check")
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    rows = []
    for r in range(2, args.r_max + 1):
        p = hierarchy_params(r)
        chosen = (p.t, p.k) if p.valid else p.fallback
        row = {"r": r, "formula": formula_params(r), "formula_valid": p.valid, "chosen": chosen}
        if chosen and FamilySpec(*chosen).order <= args.graph_order:
            t0 = time.perf_counter()
            out = verify_family_pair(*chosen, r)
            row["graph_check"] = out["r_incident"] and out["maps_to_prime"]
            row["order"] = out["order"]
            row["seconds"] = round(time.perf_counter() - t0, 3)
        rows.append(row)
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    print(f"{'r':>2}  {'formula':>12}  {'valid':>5}  {'chosen':>12}  {'order':>7}  graph")
    for row in rows:
        print(f"{row['r']:>2}  {str(row['formula']):>12}  {str(row['formula_valid']):>5}  "
              f"{str(row['chosen']):>12}  {row.get('order', '-'):>7}  {row.get('graph_check', '-')}")


if __name__ == "__main__":
    main()
