"""Half-and-half defining sets, generator polynomials, Bose distances and bounds."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np

from .cosets import CodeParams, CosetTable, _table, lambda_term
from .errors import BudgetExceeded, ParameterError
from .gf import FieldCtx, SubfieldEmbed, element_of_order, embed_subfield, make_field
from .numtheory import ceil_div, prime_power
from .poly import Poly, poly_product, product_over_coset, x_pow_minus

VARIANTS = ("ceiling", "floor")
CONVENTIONS = ("start_at_one", "cyclic_run")
DEFAULT_BUDGET = 2**26


def default_budget() -> int:
    env = os.environ.get("CONSTAKIT_DISTANCE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _half(N: int, variant: str) -> int:
    if variant == "ceiling":
        return ceil_div(N, 2)
    if variant == "floor":
        return N // 2
    raise ParameterError("variant in {ceiling, floor}", f"got {variant!r}")


@dataclass(frozen=True, eq=False)
class DefiningSet:
    params: CodeParams
    members: np.ndarray  # sorted residues
    leader_list: dict  # size -> included leaders (ascending)

    @property
    def size(self) -> int:
        return int(self.members.size)

    @property
    def leaders(self) -> list[int]:
        return sorted(x for lst in self.leader_list.values() for x in lst)

    def mask(self) -> np.ndarray:
        """Boolean membership indexed by residue 0..nr."""
        out = np.zeros(self.params.nr + 1, dtype=bool)
        out[self.members] = True
        return out

    def __contains__(self, x: int) -> bool:
        k = np.searchsorted(self.members, x)
        return bool(k < self.members.size and self.members[k] == x)

    def is_q_closed(self) -> bool:
        nr, q = self.params.nr, self.params.q
        img = self.members * q % nr
        img[img == 0] = nr
        return bool(np.array_equal(np.sort(img), self.members))


def build_defining_set(table: CosetTable, variant: str) -> DefiningSet:
    """Union of the first half (ceil or floor) of the cosets in every size class.

    Works for any number of classes; only two-class structures carry the
    theoretical distance bounds.
    """
    chosen = {l: lst[: _half(len(lst), variant)] for l, lst in table.by_size.items()}
    picked = np.array(sorted(x for lst in chosen.values() for x in lst), dtype=np.int64)
    z = table.params.residues()
    members = z[np.isin(table.owner[z], picked)]
    return DefiningSet(table.params, members, chosen)


# ---------------------------------------------------------------- Bose distance


def bose_distance(ds: DefiningSet, convention: str = "start_at_one") -> int:
    """Designed distance read off a run of consecutive exponents in T.

    start_at_one: 1, 1+r, ..., 1+(c-1)r all in T gives c+1 (1 if 1 is not in T).
    cyclic_run:   longest run along Z_{n,r} taken cyclically (1+(n-1)r is followed by 1), plus one.
    """
    params = ds.params
    inT = ds.mask()[params.residues()]
    if convention == "start_at_one":
        if not inT[0]:
            return 1
        off = np.flatnonzero(~inT)
        c = int(off[0]) if off.size else params.n
        return c + 1
    if convention == "cyclic_run":
        if inT.all():
            return params.n + 1
        if not inT.any():
            return 1
        k = int(np.flatnonzero(~inT)[0])
        rolled = np.roll(inT, -k)  # starts on a gap, so cyclic runs don't wrap
        padded = np.concatenate(([0], rolled.astype(np.int8), [0]))
        edges = np.flatnonzero(np.diff(padded))
        runs = edges[1::2] - edges[::2]
        return int(runs.max()) + 1
    raise ParameterError("convention in {start_at_one, cyclic_run}", f"got {convention!r}")


def bch_check(ds: DefiningSet) -> int:
    """The BCH-type guarantee from the run 1, 1+r, ... inside T."""
    return bose_distance(ds, "start_at_one")


# ---------------------------------------------------------------- bounds


@dataclass(frozen=True)
class Bounds:
    structure: tuple | None  # (l, m) when two-class
    counts: tuple | None  # (N_l, N_m)
    basic: int | None
    basic_guaranteed: bool
    basic_reason: str
    improved: int | None
    lam: int | None
    improved_reason: str

    @property
    def best(self) -> int:
        vals = [1]
        if self.basic is not None and self.basic_guaranteed:
            vals.append(self.basic)
        if self.improved is not None:
            vals.append(self.improved)
        return max(vals)


def theoretical_bounds(table: CosetTable, variant: str, *, nonunit_improved: bool = False) -> Bounds:
    """Basic and improved distance bounds for a two-class structure {l, m}.

    The improved bound needs l = 1 (and r <= 2 for the floor variant);
    `nonunit_improved` extends the ceiling improvement to l > 1, which the
    prime-power family with l = p relies on.
    """
    _half(0, variant)
    sizes = table.size_classes
    if len(sizes) != 2:
        return Bounds(None, None, None, False, "not a two-class structure", None, None, "not a two-class structure")
    params = table.params
    q, r = params.q, params.r
    l, m = sizes
    Nl, Nm = table.counts[l], table.counts[m]
    basic = q * Nm // (2 * (q - 1))
    if variant == "ceiling":
        ok, why = True, "ceiling variant"
    elif Nl > 1:
        ok, why = True, "N_l > 1"
    elif Nl == 1 and 2 * m * (q - 1) >= q * l * r:
        ok, why = True, "N_l = 1 and 2m(q-1) >= qlr"
    elif r <= 3:
        ok, why = True, "r <= 3"
    else:
        ok, why = False, "floor variant: no side condition holds"

    improved = lam = None
    if l == 1 and (variant == "ceiling" or r <= 2):
        ireason = "unit class, " + ("ceiling" if variant == "ceiling" else "floor with r <= 2")
    elif l > 1 and variant == "ceiling" and nonunit_improved:
        ireason = "ceiling, extended to l > 1"
    else:
        ireason = "not applicable"
    if ireason != "not applicable":
        half = _half(Nm, variant)
        lam = lambda_term(table, half)
        improved = ceil_div(q * half, q - 1) + lam
    return Bounds((l, m), (Nl, Nm), basic, ok, why, improved, lam, ireason)


# ---------------------------------------------------------------- algebra


@dataclass(frozen=True, eq=False)
class Splitting:
    """GF(q^M) with beta of order nr, and lambda = beta^n projected into GF(q)."""

    params: CodeParams
    big: FieldCtx
    embed: SubfieldEmbed
    beta: tuple
    lam: int  # code of lambda in embed.field

    @property
    def small(self):
        return self.embed.field


@lru_cache(maxsize=64)
def splitting(params: CodeParams) -> Splitting:
    p, e = prime_power(params.q)
    big = make_field(p, e * params.M)
    embed = embed_subfield(big, params.q)
    beta = element_of_order(big, params.nr).coeffs
    lam = embed.project(big.pow(beta, params.n))
    return Splitting(params, big, embed, beta, lam)


def generator_polynomial(ds: DefiningSet, embed: SubfieldEmbed, beta) -> Poly:
    polys = []
    for lst in ds.leader_list.values():
        for ld in lst:
            polys.append(product_over_coset(embed, beta, ds.params.orbit(ld)))
    return poly_product(embed.field, polys)


def lambda_repr(params: CodeParams) -> tuple[str, str | None]:
    """lambda as a power of the GF(q) generator, plus a literal for r <= 2."""
    k = (params.q - 1) // params.r % (params.q - 1)
    literal = {1: "1", 2: "-1"}.get(params.r)
    return ("1" if k == 0 else f"g^{k}"), literal


def generator_matrix(g: Poly, n: int) -> np.ndarray:
    """Rows x^i g(x), i < k, as element codes (no wraparound since deg g = n - k)."""
    k = n - g.degree
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + g.degree + 1] = g.coeffs
    return rows


def systematic_matrix(g: Poly, n: int) -> np.ndarray:
    """Rows x^{n-k+i} - (x^{n-k+i} mod g): identity on the last k positions."""
    F = g.field
    k = n - g.degree
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        mono = Poly.monomial(F, n - k + i)
        rem = mono % g
        cw = mono - rem
        rows[i, : len(cw.coeffs)] = cw.coeffs
    return rows


def constacyclic_shift(word, F, lam: int) -> list[int]:
    """(lam c_{n-1}, c_0, ..., c_{n-2})."""
    word = list(word)
    return [F.mul(lam, word[-1])] + word[:-1]


# ---------------------------------------------------------------- code spec


@dataclass(frozen=True, eq=False)
class CodeSpec:
    params: CodeParams
    variant: str
    defining_set: DefiningSet
    generator: Poly | None
    dimension: int
    bose_start_at_one: int
    bose_cyclic_run: int
    bounds: Bounds
    exact_distance: int | None
    distance_status: str
    lambda_power: str
    lambda_literal: str | None
    family: dict | None = None
    extras: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def lower_bound(self) -> int:
        return max(self.bounds.best, self.bose_start_at_one)

    def to_dict(self) -> dict[str, Any]:
        small = splitting(self.params).small if self.generator is not None else None
        b = self.bounds
        return {
            "q": self.params.q,
            "n": self.params.n,
            "r": self.params.r,
            "m": self.params.M,
            "s": self.params.s,
            "variant": self.variant,
            "lambda": self.lambda_power,
            "lambda_literal": self.lambda_literal,
            "defining_set_leaders": self.defining_set.leaders,
            "defining_set_size": self.defining_set.size,
            "generator": None if self.generator is None else [_coeff_json(small, c) for c in self.generator.coeffs],
            "dimension": self.dimension,
            "bose_start_at_one": self.bose_start_at_one,
            "bose_cyclic_run": self.bose_cyclic_run,
            "class_sizes": None if b.structure is None else list(b.structure),
            "class_counts": None if b.counts is None else list(b.counts),
            "bound_basic": b.basic,
            "bound_basic_guaranteed": b.basic_guaranteed,
            "bound_basic_reason": b.basic_reason,
            "bound_improved": b.improved,
            "lambda_term": b.lam,
            "bound_improved_reason": b.improved_reason,
            "exact_distance": self.exact_distance,
            "distance_status": self.distance_status,
            "family": self.family,
        }


def _coeff_json(small, c: int):
    c = int(c)
    return c if small.is_prime or c in (0, 1) else small.render(c)


def build_code(
    params: CodeParams,
    variant: str = "ceiling",
    *,
    distance_budget: int | None = None,
    compute_distance: bool = True,
    with_generator: bool = True,
    workers: int = 1,
    family: dict | None = None,
    nonunit_improved: bool = False,
    require_distance: bool = False,
) -> CodeSpec:
    """Construct the half-and-half code of the given variant and evaluate it."""
    table = _table(params)
    ds = build_defining_set(table, variant)
    bounds = theoretical_bounds(table, variant, nonunit_improved=nonunit_improved)
    dim = params.n - ds.size
    gen = None
    if with_generator:
        sp = splitting(params)
        gen = generator_polynomial(ds, sp.embed, sp.beta)
        assert gen.degree == ds.size and gen.is_monic()
        assert divmod(x_pow_minus(sp.small, params.n, sp.lam), gen)[1].is_zero()
    sao = bose_distance(ds, "start_at_one")
    cyc = bose_distance(ds, "cyclic_run")
    exact, status = None, "not requested"
    if compute_distance:
        if gen is None:
            raise ParameterError("generator needed for distance", "with_generator=False")
        budget = default_budget() if distance_budget is None else distance_budget
        from .distance import exact_min_distance

        try:
            exact = exact_min_distance(gen, params.n, budget=budget, workers=workers, lower_bound=sao)
            status = "exact" if exact is not None else "no nonzero codewords"
        except BudgetExceeded:
            if require_distance:
                raise
            status = "exceeds budget"
    lp, ll = lambda_repr(params)
    return CodeSpec(params, variant, ds, gen, dim, sao, cyc, bounds, exact, status, lp, ll, family)
