"""The four parametrised length families, with their hypotheses machine-checked.

Each builder validates the family hypotheses (raising ParameterError that
names the failing one), predicts the two coset classes and their counts,
builds the code and cross-checks prediction and dimension formula against
what was actually enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from math import gcd

from .codes import CodeSpec, build_code
from .cosets import NR_LIMIT, CodeParams, cached_table
from .errors import ParameterError
from .numtheory import ceil_div, cyclotomic_value, is_prime, mult_order, prime_power


class Family(str, Enum):
    PRIME = "prime"  # n prime, n does not divide q-1
    QPOWER = "qpower"  # nr = (q^p - 1)/s
    PPOWER = "ppower"  # n = Phi_{p^b}(q)
    TWOPRIME = "twoprime"  # n = Phi_{p1 p2}(q)


@dataclass(frozen=True)
class FamilyRequest:
    family: Family
    q: int
    r: int
    variant: str = "ceiling"
    n: int | None = None
    p: int | None = None
    s: int | None = None
    b: int | None = None
    p1: int | None = None
    p2: int | None = None
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))


@dataclass(frozen=True)
class FamilyPlan:
    """What the family theorem predicts before anything is enumerated."""

    params: CodeParams
    case: str
    predicted: dict  # {l: N_l, m: N_m}
    dimension: int  # theorem-statement dimension for the requested variant
    floor_condition: bool  # the family's own floor side condition
    nonunit_improved: bool = False


def _need(req: FamilyRequest, *names: str) -> None:
    missing = [x for x in names if getattr(req, x) is None]
    if missing:
        raise ParameterError(f"{req.family.value} family needs {', '.join(missing)}")


def _base_checks(q: int, r: int) -> None:
    if prime_power(q) is None:
        raise ParameterError("q prime power", f"q={q}")
    if r < 1 or (q - 1) % r:
        raise ParameterError("r | q-1", f"r={r}, q-1={q - 1}")


def _params(q: int, n: int, r: int) -> CodeParams:
    if n * r >= NR_LIMIT:
        raise ParameterError("nr < 2^31", f"n={n}, r={r}")
    return CodeParams(q, n, r)


def _two_halves(n: int, Nl: int, l: int, Nm: int, m: int, variant: str) -> int:
    if variant == "ceiling":
        return n - l * ceil_div(Nl, 2) - m * ceil_div(Nm, 2)
    return n - l * (Nl // 2) - m * (Nm // 2)


def plan_prime(req: FamilyRequest) -> FamilyPlan:
    _need(req, "n")
    q, r, n = req.q, req.r, req.n
    _base_checks(q, r)
    if not is_prime(n):
        raise ParameterError("n prime", f"n={n}")
    if (q - 1) % n == 0:
        raise ParameterError("n does not divide q-1", f"n={n}, q-1={q - 1}")
    if gcd(n, q) != 1:
        raise ParameterError("gcd(n, q) = 1", f"n={n}, q={q}")
    m = mult_order(q, n)
    params = _params(q, n, r)
    assert params.M == m
    Nm = (n - 1) // m
    if req.variant == "ceiling":
        dim = n - 1 - m * ceil_div(n - 1, 2 * m)
    else:
        dim = n - m * ((n - 1) // (2 * m))
    return FamilyPlan(params, "prime", {1: 1, m: Nm}, dim, 2 * m * (q - 1) >= q * r)


def plan_qpower(req: FamilyRequest) -> FamilyPlan:
    _need(req, "p", "s")
    q, r, p, s = req.q, req.r, req.p, req.s
    _base_checks(q, r)
    if not is_prime(p):
        raise ParameterError("p prime", f"p={p}")
    if s < 1 or (q**p - 1) % s:
        raise ParameterError("s | q^p - 1", f"s={s}")
    nr = (q**p - 1) // s
    if nr % r:
        raise ParameterError("r | (q^p - 1)/s", f"r={r}, (q^p-1)/s={nr}")
    n = nr // r
    if gcd(r, nr // gcd(nr, q - 1)) != 1:
        raise ParameterError("gcd(r, nr/gcd(nr, q-1)) = 1", f"r={r}, nr={nr}")
    N1 = gcd(n, (q - 1) // r)
    Np, rem = divmod(n - N1, p)
    assert rem == 0
    if Np == 0:
        raise ParameterError("N_p > 0", f"n={n} leaves no cosets of size {p}")
    params = _params(q, n, r)
    dim = _two_halves(n, N1, 1, Np, p, req.variant)
    floor_ok = N1 > 1 or (N1 == 1 and 2 * p * (q - 1) >= q * r) or r <= 3
    return FamilyPlan(params, "qpower", {1: N1, p: Np}, dim, floor_ok)


def ppower_case(q: int, r: int, p: int, b: int) -> int:
    """Which of the three divisibility cases (p, q, r, b) falls into."""
    c1 = (q - 1) % p != 0
    c2 = ((q - 1) // r) % p == 0
    c3 = (q - 1) % p == 0 and ((q - 1) // r) % p != 0
    assert c1 + c2 + c3 == 1, "the three divisibility cases must partition"
    if c3 and b < 2:
        raise ParameterError("b >= 2 when p | q-1 and p does not divide (q-1)/r", f"p={p}, b={b}, r={r}")
    return 1 if c1 else 2 if c2 else 3


def plan_ppower(req: FamilyRequest) -> FamilyPlan:
    _need(req, "p", "b")
    q, r, p, b = req.q, req.r, req.p, req.b
    _base_checks(q, r)
    if not is_prime(p):
        raise ParameterError("p prime", f"p={p}")
    if b < 1:
        raise ParameterError("b >= 1", f"b={b}")
    case = ppower_case(q, r, p, b)
    pb = p**b
    n = cyclotomic_value(pb, q)
    params = _params(q, n, r)
    side = lambda mm: r <= 3 or 2 * mm * (q - 1) >= q * r  # noqa: E731
    v = req.variant
    if case == 1:
        pred = {1: 1, pb: (n - 1) // pb}
        dim = n - 1 - pb * ceil_div(n - 1, 2 * pb) if v == "ceiling" else n - pb * ((n - 1) // (2 * pb))
        floor_ok = side(pb)
    elif case == 2:
        pred = {1: p, pb: (n - p) // pb}
        if v == "ceiling":
            dim = n - ceil_div(p, 2) - pb * ceil_div(n - p, 2 * pb)
        else:
            dim = n - p // 2 - pb * ((n - p) // (2 * pb))
        floor_ok = side(pb)
    else:
        pred = {p: 1, pb: (n - p) // pb}
        dim = n - p - pb * ceil_div(n - p, 2 * pb) if v == "ceiling" else n - pb * ((n - p) // (2 * pb))
        floor_ok = side(p ** (b - 1))
    return FamilyPlan(params, f"ppower-{case}", pred, dim, floor_ok, nonunit_improved=case == 3)


def plan_twoprime(req: FamilyRequest) -> FamilyPlan:
    _need(req, "p1", "p2")
    q, r, p1, p2 = req.q, req.r, req.p1, req.p2
    _base_checks(q, r)
    if not (is_prime(p1) and is_prime(p2)):
        raise ParameterError("p1, p2 prime", f"p1={p1}, p2={p2}")
    if not p1 < p2:
        raise ParameterError("p1 < p2", f"p1={p1}, p2={p2}")
    m = p1 * p2
    case = "twoprime"
    if ((q**p1 - 1) // r) % p2 == 0:
        _negative_direction_check(q, r, p1, p2)
        if req.strict or (q - 1) % p2 or not _has_predicted_structure(q, r, p1, p2):
            raise ParameterError("p2 does not divide (q^p1 - 1)/r", f"q={q}, p1={p1}, p2={p2}, r={r}")
        # the hypothesis is only sufficient: for p2 | q-1 the classes can still be {1, p1 p2}
        case = "twoprime (hypothesis fails, structure verified by enumeration)"
    n = cyclotomic_value(m, q)
    params = _params(q, n, r)
    Nm = (n - 1) // m
    dim = n - 1 - m * ceil_div(n - 1, 2 * m) if req.variant == "ceiling" else n - m * ((n - 1) // (2 * m))
    floor_ok = r <= 3 or 2 * m * (q - 1) >= q * r
    return FamilyPlan(params, case, {1: 1, m: Nm}, dim, floor_ok)


def _has_predicted_structure(q: int, r: int, p1: int, p2: int) -> bool:
    m = p1 * p2
    n = cyclotomic_value(m, q)
    if n * r > ENUMERATION_CAP:
        return False
    return cached_table(CodeParams(q, n, r)).counts == {1: 1, m: (n - 1) // m}


ENUMERATION_CAP = 2**24


def _negative_direction_check(q: int, r: int, p1: int, p2: int) -> None:
    """On a rejected two-prime request the structure must not be {1, p1 p2}.

    This only holds when p2 does not divide q-1 (for p2 | q-1 the class
    structure can still be {1, p1 p2}); it is checked when n is small
    enough to enumerate.
    """
    if (q - 1) % p2 == 0:
        return
    n = cyclotomic_value(p1 * p2, q)
    if n * r > ENUMERATION_CAP:
        return
    sizes = cached_table(CodeParams(q, n, r)).size_classes
    assert sizes != [1, p1 * p2], f"rejected request still has classes {{1, {p1 * p2}}}"


PLANNERS = {
    Family.PRIME: plan_prime,
    Family.QPOWER: plan_qpower,
    Family.PPOWER: plan_ppower,
    Family.TWOPRIME: plan_twoprime,
}


def plan_family(req: FamilyRequest) -> FamilyPlan:
    if req.variant not in ("ceiling", "floor"):
        raise ParameterError("variant in {ceiling, floor}", f"got {req.variant!r}")
    return PLANNERS[req.family](req)


def build_family(req: FamilyRequest, **code_kwargs) -> CodeSpec:
    """Validate, predict, construct, and cross-check a family member."""
    plan = plan_family(req)
    table = cached_table(plan.params)
    if table.counts != plan.predicted:
        raise AssertionError(f"predicted classes {plan.predicted}, enumerated {table.counts}")
    info = {
        "family": req.family.value,
        "case": plan.case,
        "predicted_counts": {str(k): v for k, v in plan.predicted.items()},
        "dimension_formula": plan.dimension,
        "floor_condition": plan.floor_condition,
    }
    spec = build_code(plan.params, req.variant, family=info, nonunit_improved=plan.nonunit_improved, **code_kwargs)
    if spec.dimension != plan.dimension:
        raise AssertionError(f"dimension {spec.dimension} differs from the family formula {plan.dimension}")
    if req.variant == "floor":
        # either the family side condition or the general two-class conditions suffice
        guaranteed = plan.floor_condition or spec.bounds.basic_guaranteed
        if not guaranteed and req.strict:
            raise ParameterError("floor side condition of the family", "strict mode refuses an unguaranteed bound")
        if guaranteed != spec.bounds.basic_guaranteed:
            why = "family floor side condition" if guaranteed else "floor side conditions fail"
            spec = replace(spec, bounds=replace(spec.bounds, basic_guaranteed=guaranteed, basic_reason=why))
    return spec
