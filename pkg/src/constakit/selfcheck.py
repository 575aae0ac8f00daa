"""Run the module invariants over a parameter grid and report pass/fail.

The small grid is meant to finish well inside a minute; the full grid adds
larger lengths and recomputes every published table row against the fixture.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import gcd

from .codes import build_code, constacyclic_shift, splitting
from .cosets import (
    CodeParams,
    all_counts_by_formula,
    cached_table,
    leader_lower_bound,
    non_leader_certs,
    period_divisibility_failures,
    sum_identity,
    two_class_bound_verdicts,
)
from .numtheory import divisors
from .poly import Poly, eval_lifted, x_pow_minus

GRID_Q = (2, 3, 4, 5, 7, 8, 9)
MAX_SPLITTING_FIELD = 2**48  # grid codes only; keeps GF(q^M) arithmetic cheap


@dataclass(frozen=True)
class GridConfig:
    name: str
    max_nr: int  # coset-level checks
    code_max_nr: int  # full code construction
    code_max_k_budget: int  # exhaustive distance budget for grid codes
    tables: bool  # recompute the published rows


GRIDS = {
    "small": GridConfig("small", max_nr=600, code_max_nr=40, code_max_k_budget=2**12, tables=False),
    "full": GridConfig("full", max_nr=20000, code_max_nr=120, code_max_k_budget=2**16, tables=True),
}


def grid_params(max_nr: int, qs=GRID_Q):
    """Every valid (q, n, r) with nr <= max_nr."""
    for q in qs:
        for r in divisors(q - 1):
            for n in range(1, max_nr // r + 1):
                if gcd(n, q) == 1:
                    yield CodeParams(q, n, r)


@dataclass
class Report:
    checks: dict = field(default_factory=dict)  # name -> [passed, failed]
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        slot = self.checks.setdefault(name, [0, 0])
        slot[0 if ok else 1] += 1
        if not ok and len(self.failures) < 50:
            self.failures.append(f"{name}: {detail}")

    @property
    def ok(self) -> bool:
        return all(bad == 0 for _, bad in self.checks.values())

    def lines(self) -> list[str]:
        out = []
        for name, (good, bad) in sorted(self.checks.items()):
            out.append(f"{'PASS' if bad == 0 else 'FAIL'}  {name}: {good} passed, {bad} failed")
        out.extend(f"  ! {f}" for f in self.failures)
        out.append(f"{'OK' if self.ok else 'FAILED'} in {self.seconds:.1f}s")
        return out


def check_counts(params: CodeParams, report: Report, inject_fault: bool = False) -> None:
    table = cached_table(params)
    formula = {l: v for l, v in all_counts_by_formula(params).items() if v}
    enumerated = dict(table.counts)
    if inject_fault:
        first = next(iter(enumerated))
        enumerated[first] += 1
    report.record("count formula = enumeration", formula == enumerated, f"{params}: {formula} vs {enumerated}")
    ls = divisors(params.M)
    for l in ls:
        lhs = sum(j * enumerated.get(j, 0) for j in divisors(l))
        report.record("sum identity", lhs == sum_identity(params, l), f"{params} l={l}")
    bad = period_divisibility_failures(table, ls)
    report.record("size divides l <=> period divides i", not bad, f"{params} l={bad}")
    report.record("sizes divide ord", all(params.M % l == 0 for l in enumerated), str(params))


def check_two_class(params: CodeParams, report: Report) -> None:
    table = cached_table(params)
    if len(table.size_classes) != 2:
        return
    for l, leaders in table.by_size.items():
        ok = all(leader_lower_bound(params, l, i + 1) <= d for i, d in enumerate(leaders))
        report.record("leader lower bound", ok, f"{params} l={l}")
    certs = non_leader_certs(params)
    values = [c.value for c in certs]
    report.record("certificates distinct", len(values) == len(set(values)), str(params))
    report.record("certificates are non-leaders", not any(table.is_leader(v) for v in values), str(params))
    for v in two_class_bound_verdicts(table):
        report.record(f"verdict {v.name}", v.consistent, f"{params}: {v}")


def check_code(params: CodeParams, variant: str, budget: int, report: Report, rng: random.Random) -> None:
    spec = build_code(params, variant, distance_budget=budget)
    sp = splitting(params)
    F, g, n = sp.small, spec.generator, params.n
    T = set(spec.defining_set.members.tolist())
    _, rem = divmod(x_pow_minus(F, n, sp.lam), g)
    report.record("g | x^n - lambda", rem.is_zero(), str(params))
    report.record("dim = n - deg g", spec.dimension == n - g.degree, str(params))
    zeros = {i for i in params.residues().tolist() if eval_lifted(g, sp.embed, sp.big.pow(sp.beta, i)).is_zero()}
    report.record("g(beta^i) = 0 exactly on T", zeros == T, f"{params} {variant}")
    # constacyclic closure on a random codeword
    k = spec.dimension
    if k:
        msg = Poly(F, [rng.randrange(F.q) for _ in range(k)])
        word = list((msg * g).coeffs) + [0] * (n - len((msg * g).coeffs))
        shifted = Poly(F, constacyclic_shift(word, F, sp.lam))
        report.record("shift closure", (shifted % g).is_zero(), f"{params} {variant}")
    if spec.distance_status == "exact":
        d = spec.exact_distance
        ok = d >= spec.bose_start_at_one and (not spec.bounds.basic_guaranteed or spec.bounds.basic is None or d >= spec.bounds.basic)
        if spec.bounds.improved is not None:
            ok = ok and d >= spec.bounds.improved
        report.record("distance >= proven bounds", ok, f"{params} {variant} d={d}")


def check_tables(report: Report, budget: int) -> None:
    from .tables import TABLE_IDS, load_fixture, recompute_table, verify_rows

    cells = load_fixture()
    for t in TABLE_IDS:
        computed = recompute_table(t, budget=budget)
        bad = verify_rows(t, computed, cells)
        report.record(f"table {t} matches fixture", not bad, "; ".join(map(str, bad)))


def run_selfcheck(grid: str = "small", *, inject_fault: bool = False, seed: int = 0) -> Report:
    cfg = GRIDS[grid]
    report = Report()
    rng = random.Random(seed)
    t0 = time.perf_counter()
    first = True
    for params in grid_params(cfg.max_nr):
        check_counts(params, report, inject_fault=inject_fault and first)
        first = False
        check_two_class(params, report)
    for params in grid_params(cfg.code_max_nr):
        if len(cached_table(params).size_classes) > 2 or params.q**params.M > MAX_SPLITTING_FIELD:
            continue
        for variant in ("ceiling", "floor"):
            check_code(params, variant, cfg.code_max_k_budget, report, rng)
    if cfg.tables:
        check_tables(report, budget=2**26)
    report.seconds = time.perf_counter() - t0
    return report

