"""Regenerate src/constakit/data/expected_tables.csv from an independent oracle.

The oracle shares only the finite-field element arithmetic (constakit.gf)
with the library.  Everything else is written out naively here:

* cosets by plain set orbits,
* defining sets by sorting orbits,
* the generator as a product of linear factors in GF(q^M), with GF(q)
  recovered as the fixed points of Frobenius (own tables, own indexing),
* the minimum distance by split enumeration of *all* q^k messages of the
  non-systematic shift matrix (numpy broadcasting, no Gray walk, no
  projective normalisation, no early exit),
* Lambda by scanning every (i, j, t) triple without the library's pruning.

A published cell is tagged `paper` when the oracle agrees with it; otherwise
the oracle value is stored as `derived` and the published value is kept in
the note.  Run:  python3 scripts/generate_expected.py [--budget N] [--out PATH]
"""

from __future__ import annotations

import argparse
import csv
import sys
import time
from math import gcd
from pathlib import Path

import numpy as np

from constakit.gf import element_of_order, make_field
from constakit.numtheory import prime_power
from constakit.tables import FIXTURE_COLUMNS, all_rows

# ---------------------------------------------------------------- cosets


def naive_order(q, m):
    k, x = 1, q % m
    while x != 1 % m:
        x = x * q % m
        k += 1
    return k


def naive_cosets(q, n, r):
    nr = n * r
    seen, out = set(), []
    for i in range(1, nr + 1, r):
        if i in seen:
            continue
        orbit, x = [], i
        while True:
            orbit.append(x)
            seen.add(x)
            x = x * q % nr or nr
            if x == i:
                break
        out.append(sorted(orbit))
    return out


def naive_defining_set(q, n, r, variant):
    cos = naive_cosets(q, n, r)
    sizes = sorted({len(c) for c in cos})
    T = []
    for l in sizes:
        cl = sorted((c for c in cos if len(c) == l), key=lambda c: c[0])
        take = (len(cl) + 1) // 2 if variant == "ceiling" else len(cl) // 2
        for c in cl[:take]:
            T.extend(c)
    return sorted(T), cos


def naive_bose(T, n, r):
    nr = n * r
    Ts = set(T)
    c = 0
    while 1 + c * r <= nr and 1 + c * r in Ts:
        c += 1
    start = c + 1
    seq = [1 + i * r for i in range(n)]
    best = 0
    if all(x in Ts for x in seq):
        best = n
    else:
        run = 0
        for x in seq + seq:
            run = run + 1 if x in Ts else 0
            best = max(best, min(run, n))
    return start, best + 1


# ---------------------------------------------------------------- bounds


def naive_lambda(q, n, r, half):
    nr = n * r
    m = naive_order(q, nr)
    s = (q**m - 1) // nr
    threshold = 1 + (-(-q * half // (q - 1)) - 2) * r
    S = set()
    for i in range(1, m + 1):
        if 2 * i < m + 1 or q**i * (s + 1) > q**m:
            continue
        for j in range(1, q):
            t = 0
            while True:
                if not (q ** (m - i + 1) - q) * t < q**i - j * (q ** (m - i) - 1) - 1:
                    break
                v = q**i + q * t + j
                if v <= threshold and v % r == 1 % r:
                    S.add(v)
                t += 1
    return max(0, -(-q * len(S) // (q - 1)) - 1)


def naive_bounds(q, n, r, variant, cos, nonunit_improved=False):
    counts = {}
    for c in cos:
        counts[len(c)] = counts.get(len(c), 0) + 1
    if len(counts) != 2:
        return None
    l, m = sorted(counts)
    Nm = counts[m]
    half = (Nm + 1) // 2 if variant == "ceiling" else Nm // 2
    basic = q * Nm // (2 * (q - 1))
    improved = None
    if (l == 1 and (variant == "ceiling" or r <= 2)) or (nonunit_improved and variant == "ceiling"):
        improved = -(-q * half // (q - 1)) + naive_lambda(q, n, r, half)
    if variant == "ceiling":
        guaranteed = True
    else:
        Nl = counts[l]
        guaranteed = Nl > 1 or (Nl == 1 and 2 * m * (q - 1) >= q * l * r) or r <= 3
    return basic, guaranteed, improved, (l, m)


# ---------------------------------------------------------------- generator and GF(q)


class Subfield:
    """GF(q) as the Frobenius-fixed elements of GF(q^M), with its own tables."""

    def __init__(self, big, q):
        gamma = big.gamma
        step = big.order // (q - 1)
        g = big.pow(gamma, step)
        elems = [big.zero]
        x = big.one
        for _ in range(q - 1):
            elems.append(x)
            x = big.mul(x, g)
        self.elems = elems
        self.index = {e: k for k, e in enumerate(elems)}
        self.add = np.array([[self.index[big.add(a, b)] for b in elems] for a in elems], dtype=np.int64)
        self.mul = np.array([[self.index[big.mul(a, b)] for b in elems] for a in elems], dtype=np.int64)


def naive_generator(q, n, r, T):
    p, e = prime_power(q)
    nr = n * r
    M = naive_order(q, nr)
    big = make_field(p, e * M)
    beta = element_of_order(big, nr).coeffs
    coeffs = [big.one]  # low-first
    for i in T:
        root = big.pow(beta, i)
        new = [big.zero] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            new[k + 1] = big.add(new[k + 1], c)
            new[k] = big.sub(new[k], big.mul(c, root))
        coeffs = new
    sub = Subfield(big, q)
    return [sub.index[c] for c in coeffs], sub


def enumerate_min_weight(g, n, sub):
    """Minimum weight over all q^k messages of the shift matrix."""
    q = len(sub.elems)
    k = n - (len(g) - 1)
    if k == 0:
        return None
    G = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        G[i, i : i + len(g)] = g

    def span(rows):
        words = np.zeros((1, n), dtype=np.int64)
        for row in rows:
            scaled = sub.mul[:, row]  # (q, n): c * row
            words = sub.add[words[:, None, :], scaled[None, :, :]].reshape(-1, n)
        return words

    k1 = k // 2
    A = span(G[:k1])
    B = span(G[k1:])
    best = n + 1
    chunk = max(1, (1 << 22) // max(1, A.shape[0]))
    for s in range(0, B.shape[0], chunk):
        words = sub.add[A[None, :, :], B[s : s + chunk, None, :]]
        w = np.count_nonzero(words, axis=2)
        if s == 0:
            w[0, 0] = n + 1  # the zero message
        best = min(best, int(w.min()))
    return best


# ---------------------------------------------------------------- rows


def row_n(row):
    return row.params().n  # the length formulas themselves are covered by the family tests


def oracle_row(row, budget):
    q, _, _, r = row.inputs
    n = row_n(row)
    T, cos = naive_defining_set(q, n, r, row.variant)
    start, cyc = naive_bose(T, n, r)
    out = {"n": n, "k": n - len(T), "bose_start_at_one": start, "bose_cyclic_run": cyc}
    nonunit = row.table == 4 and _ppower_case3(q, r, row.inputs[1])
    b = naive_bounds(q, n, r, row.variant, cos, nonunit_improved=nonunit)
    basic, guaranteed, improved, _ = b
    out["bound_basic"] = basic
    out["bound_improved"] = improved
    cands = [x for x in (basic if guaranteed else None, improved) if x is not None]
    out["lower_bound"] = max(cands) if cands else 1
    if row.table == 1:
        return out
    k = out["k"]
    if q**k > budget:
        out["d"] = "exceeds budget"
    else:
        g, sub = naive_generator(q, n, r, T)
        out["d"] = enumerate_min_weight(g, n, sub)
    return out


def _ppower_case3(q, r, p):
    return (q - 1) % p == 0 and ((q - 1) // r) % p != 0


def bose_cell(pub, got):
    a, c = got["bose_start_at_one"], got["bose_cyclic_run"]
    if pub == a and pub == c:
        return str(pub), "paper", "both", ""
    if pub == a:
        return str(pub), "paper", "start_at_one", ""
    if pub == c:
        return str(pub), "paper", "cyclic_run", ""
    return str(a), "derived", "start_at_one", f"published {pub} matches neither convention (cyclic_run gives {c})"


def cells_for(row, got):
    out = []

    def add(col, value, prov, conv="", note=""):
        out.append(dict(table=row.table, row=row.row, column=col, value=value, provenance=prov, convention=conv, note=note))

    pub = row.published
    q, a, b, r = row.inputs
    add("inputs", f"q={q};{a};{b};r={r};{row.variant}", "paper", note="family-specific inputs as published")
    if row.table == 1:
        for col in ("bound_basic", "bound_improved"):
            same = got[col] == pub[col]
            add(col, str(got[col]), "paper" if same else "derived", note="" if same else f"published {pub[col]}")
        add("bose", *bose_cell(pub["bose"], got))
        return out
    for col in ("n", "k"):
        same = got[col] == pub[col]
        add(col, str(got[col]), "paper" if same else "derived", note="" if same else f"published {pub[col]}")
    d = got["d"]
    if d == "exceeds budget":
        add("d", d, "derived", note=f"published {pub['d']}; not desk-reproducible at this budget")
    else:
        same = d == pub["d"] and got["n"] == pub["n"]
        add("d", str(d), "paper" if same else "derived", note="" if same else f"published {pub['d']}")
    same = got["lower_bound"] == pub["lower_bound"]
    add("lower_bound", str(got["lower_bound"]), "paper" if same else "derived", note="" if same else f"published {pub['lower_bound']}")
    add("bound_basic", str(got["bound_basic"]), "derived")
    add("bound_improved", str(got["bound_improved"]), "derived")
    add("bose", *bose_cell(pub["bose"], got))
    add("optimality", pub["optimality"], "paper", note="metadata only")
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--budget", type=int, default=2**26)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[1] / "src/constakit/data/expected_tables.csv"))
    ap.add_argument("--tables", default="1,2,3,4,5")
    args = ap.parse_args(argv)
    wanted = {int(t) for t in args.tables.split(",")}
    rows = [r for r in all_rows() if r.table in wanted]
    cells = []
    for row in rows:
        t0 = time.time()
        got = oracle_row(row, args.budget)
        cells.extend(cells_for(row, got))
        print(f"{row.key:6s} {row.inputs} {row.variant:7s} {got}  ({time.time() - t0:.1f}s)", file=sys.stderr, flush=True)
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    with open(args.out, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=FIXTURE_COLUMNS, lineterminator="\n")
        w.writeheader()
        w.writerows(cells)
    print(f"wrote {len(cells)} cells to {args.out}", file=sys.stderr)


if __name__ == "__main__":
    main()
