"""Exact minimum distance by exhaustive enumeration of a linear code over GF(q).

Only projectively normalised messages are visited: for each leading
position i the message coefficient there is 1 and everything above it is 0,
which covers every nonzero codeword up to a scalar.  The free coefficients
below i are expanded over GF(p) and walked in modular p-ary Gray order, so
consecutive codewords differ by exactly one added row.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import BudgetExceeded

try:
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def _gray_min_py(base, rows, add, p, stop_at, best):
    n = base.shape[0]
    R = rows.shape[0]
    cw = base.copy()
    w = int(np.count_nonzero(cw))
    if w < best:
        best = w
    if best <= stop_at:
        return best
    digits = [0] * R
    while True:
        t = 0
        while t < R and digits[t] == p - 1:
            digits[t] = 0
            t += 1
        if t == R:
            return best
        digits[t] += 1
        row = rows[t]
        for k in range(n):
            cw[k] = add[cw[k], row[k]]
        w = int(np.count_nonzero(cw))
        if w < best:
            best = w
            if best <= stop_at:
                return best


if njit is not None:

    @njit(cache=True, nogil=True)
    def _gray_min(base, rows, add, p, stop_at, best):
        n = base.shape[0]
        R = rows.shape[0]
        cw = base.copy()
        w = 0
        for k in range(n):
            if cw[k] != 0:
                w += 1
        if w < best:
            best = w
        if best <= stop_at:
            return best
        digits = np.zeros(R, np.int64)
        while True:
            t = 0
            while t < R and digits[t] == p - 1:
                digits[t] = 0
                t += 1
            if t == R:
                return best
            digits[t] += 1
            w = 0
            for k in range(n):
                v = add[cw[k], rows[t, k]]
                cw[k] = v
                if v != 0:
                    w += 1
            if w < best:
                best = w
                if best <= stop_at:
                    return best

else:  # pragma: no cover
    _gray_min = _gray_min_py


@dataclass(frozen=True)
class _Unit:
    base: np.ndarray
    rows: np.ndarray


def _gfp_basis(small) -> list[int]:
    """Codes of 1, g, ..., g^{e-1}: a GF(p)-basis of GF(q)."""
    e = 0
    x = small.q
    while x > 1:
        x //= small.p
        e += 1
    if small.is_prime:
        return [1]
    return [1 + t for t in range(e)]  # code k+1 is g^k


def _scaled(small, row: np.ndarray, c: int) -> np.ndarray:
    return small.mul_table[c][row]


def _add_rows(small, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return small.add_table[a, b]


def work_units(G: np.ndarray, small, split_digits: int = 0) -> list[_Unit]:
    """Independent enumeration pieces covering all normalised messages of G."""
    k = G.shape[0]
    basis = _gfp_basis(small)
    units = []
    for i in range(k):
        free = np.array([_scaled(small, G[j], c) for j in range(i) for c in basis], dtype=np.int64).reshape(-1, G.shape[1])
        base = G[i].astype(np.int64)
        # peel the top `split_digits` free GF(p)-digits into separate units
        s = min(split_digits, free.shape[0])
        lo, hi = free[: free.shape[0] - s], free[free.shape[0] - s :]
        for combo in np.ndindex(*([small.p] * s)) if s else [()]:
            b = base
            for d, row in zip(combo, hi):
                for _ in range(d):
                    b = _add_rows(small, b, row)
            units.append(_Unit(np.ascontiguousarray(b), np.ascontiguousarray(lo)))
    return units


def min_weight(G: np.ndarray, small, *, lower_bound: int = 1, workers: int = 1) -> int | None:
    """Minimum nonzero weight of the row space of G (None for the zero code)."""
    G = np.asarray(G, dtype=np.int64)
    if G.shape[0] == 0:
        return None
    add = np.ascontiguousarray(small.add_table.astype(np.int64))
    n = G.shape[1]
    units = work_units(G, small, split_digits=4 if workers > 1 else 0)

    def run(unit: _Unit, best: int) -> int:
        return int(_gray_min(unit.base, unit.rows, add, small.p, lower_bound, best))

    best = n + 1
    if workers <= 1:
        for u in units:
            best = run(u, best)
            if best <= lower_bound:
                break
        return best
    # Each unit starts from the same cap, so the reduction does not depend on scheduling.
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(lambda u: run(u, n + 1), units))
    return min(results)


def codeword_count(q: int, k: int) -> int:
    return q**k


def exact_min_distance(g, n: int, *, budget: int, workers: int = 1, lower_bound: int = 1) -> int | None:
    """Exhaustive minimum distance of the code generated by g(x) in GF(q)[x]/(x^n - lambda).

    Refuses (BudgetExceeded) when q^k exceeds the budget; `lower_bound` must be a
    proven bound, it only allows stopping early once it is attained.
    """
    from .codes import systematic_matrix

    small = g.field
    k = n - g.degree
    needed = codeword_count(small.q, k)
    if needed > budget:
        raise BudgetExceeded(needed, budget)
    if k == 0:
        return None
    G = systematic_matrix(g, n)
    return min_weight(G, small, lower_bound=lower_bound, workers=workers)


def brute_min_weight(G: np.ndarray, small) -> int | None:
    """Reference: every message vector, plain matrix product (tiny codes only)."""
    from itertools import product

    G = np.asarray(G, dtype=np.int64)
    k, n = G.shape
    best = None
    for msg in product(range(small.q), repeat=k):
        if not any(msg):
            continue
        cw = np.zeros(n, dtype=np.int64)
        for c, row in zip(msg, G):
            if c:
                cw = small.add_table[cw, small.mul_table[c][row]]
        w = int(np.count_nonzero(cw))
        best = w if best is None else min(best, w)
    return best
