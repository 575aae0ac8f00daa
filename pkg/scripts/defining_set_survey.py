"""Which half-coset choices reach a row's published minimum distance?

For each requested table row this enumerates every way of taking the
required number of cosets from each size class (not only the first ones by
leader), builds the resulting code and computes its exact minimum distance.
It prints the distance of the prescribed choice next to the choices that
attain the published value.  Run:

    python3 scripts/defining_set_survey.py 3.15 3.19 4.5
"""

from __future__ import annotations

import argparse
from itertools import combinations, product

import numpy as np

from constakit.codes import DefiningSet, _half, build_defining_set, generator_polynomial, splitting
from constakit.cosets import cached_table
from constakit.distance import exact_min_distance
from constakit.tables import all_rows


def choice_distance(params, chosen, budget):
    table = cached_table(params)
    z = params.residues()
    picked = np.array(sorted(x for lst in chosen.values() for x in lst), dtype=np.int64)
    ds = DefiningSet(params, z[np.isin(table.owner[z], picked)], chosen)
    sp = splitting(params)
    g = generator_polynomial(ds, sp.embed, sp.beta)
    return exact_min_distance(g, params.n, budget=budget)


def survey(row, budget):
    params = row.params()
    table = cached_table(params)
    per_class = {l: list(combinations(lst, _half(len(lst), row.variant))) for l, lst in table.by_size.items()}
    prescribed = build_defining_set(table, row.variant).leader_list
    want = row.published["d"]
    print(f"row {row.key}: q={params.q} n={params.n} r={params.r} {row.variant}, classes {table.counts}, published d={want}")
    hits, total = [], 0
    for combo in product(*per_class.values()):
        chosen = {l: list(c) for l, c in zip(per_class, combo)}
        d = choice_distance(params, chosen, budget)
        total += 1
        tag = "prescribed" if chosen == prescribed else ""
        if tag:
            print(f"  prescribed leaders {chosen}: d = {d}")
        if d == want:
            hits.append(chosen)
    print(f"  {len(hits)} of {total} choices reach d = {want}")
    for h in hits[:10]:
        print(f"    {h}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("rows", nargs="*", default=["3.15", "3.19", "4.5"])
    ap.add_argument("--budget", type=int, default=2**26)
    args = ap.parse_args(argv)
    by_key = {r.key: r for r in all_rows()}
    for key in args.rows:
        survey(by_key[key], args.budget)


if __name__ == "__main__":
    main()
