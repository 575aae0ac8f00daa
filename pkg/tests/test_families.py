from math import gcd

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from constakit.cosets import CodeParams, cached_table
from constakit.errors import ParameterError
from constakit.families import Family, FamilyRequest, build_family, plan_family, ppower_case
from constakit.numtheory import cyclotomic_value, divisors, is_prime, mult_order

QS = [2, 3, 4, 5, 7, 8, 9]
SMALL_PRIMES = [2, 3, 5, 7, 11, 13]


def fam(kind, q, r, variant="ceiling", **kw):
    return FamilyRequest(kind, q, r, variant, **kw)


@pytest.mark.parametrize(
    "req,n,k,d",
    [
        (fam("prime", 3, 2, n=13), 13, 6, 6),
        (fam("prime", 2, 1, "floor", n=47), 47, 24, 11),
        (fam("prime", 5, 4, "floor", n=31), 31, 16, None),
        (fam("qpower", 2, 1, p=11, s=89), 23, 11, 8),
        (fam("qpower", 3, 2, p=5, s=11), 11, 5, 6),
        (fam("qpower", 3, 1, p=3, s=1), 26, 13, 8),
        (fam("ppower", 3, 2, p=2, b=2), 10, 4, 6),
        (fam("ppower", 2, 1, "floor", p=2, b=3), 17, 9, 5),
        (fam("ppower", 4, 3, p=2, b=2), 17, 8, 8),
        (fam("twoprime", 2, 1, p1=2, p2=7), 43, 14, 14),
        (fam("twoprime", 4, 3, p1=2, p2=3), 13, 6, 6),
        (fam("twoprime", 7, 2, "floor", p1=2, p2=3), 43, 25, None),
        (fam("twoprime", 2, 1, "floor", p1=2, p2=7), 43, 29, None),
    ],
)
def test_family_examples(req, n, k, d):
    spec = build_family(req, distance_budget=2**24)
    assert (spec.n, spec.dimension) == (n, k)
    if d is not None:
        assert spec.exact_distance == d
    assert spec.family["dimension_formula"] == k


def test_prime_family_bose():
    spec = build_family(fam("prime", 3, 2, n=13), compute_distance=False)
    assert spec.bose_start_at_one == 4


@pytest.mark.parametrize(
    "req,constraint",
    [
        (fam("prime", 3, 1, n=15), "n prime"),
        (fam("prime", 7, 1, n=3), "n does not divide q-1"),
        (fam("prime", 9, 1, n=2), "n does not divide q-1"),
        (fam("prime", 5, 1, n=5), "gcd(n, q) = 1"),
        (fam("prime", 6, 1, n=5), "q prime power"),
        (fam("prime", 5, 3, n=7), "r | q-1"),
        (fam("qpower", 3, 1, p=4, s=1), "p prime"),
        (fam("qpower", 3, 1, p=5, s=7), "s | q^p - 1"),
        (fam("qpower", 3, 2, p=5, s=22), "r | (q^p - 1)/s"),
        (fam("qpower", 5, 2, p=2, s=1), "gcd(r, nr/gcd(nr, q-1)) = 1"),
        (fam("qpower", 3, 2, p=5, s=121), "N_p > 0"),
        (fam("ppower", 5, 4, p=2, b=1), "b >= 2 when p | q-1"),
        (fam("ppower", 3, 1, p=4, b=2), "p prime"),
        (fam("twoprime", 3, 1, p1=3, p2=2), "p1 < p2"),
        (fam("twoprime", 3, 1, p1=2, p2=9), "p1, p2 prime"),
        (fam("twoprime", 4, 1, p1=2, p2=5), "p2 does not divide (q^p1 - 1)/r"),
        (fam("twoprime", 7, 1, "ceiling", p1=2, p2=3, strict=True), "p2 does not divide (q^p1 - 1)/r"),
        (fam("prime", 3, 1, "middle", n=13), "variant"),
        (fam("prime", 3, 1), "needs n"),
    ],
)
def test_rejections_name_the_hypothesis(req, constraint):
    with pytest.raises(ParameterError) as exc:
        build_family(req, compute_distance=False)
    assert constraint in str(exc.value)


def test_strict_floor_refuses_unguaranteed_bound():
    req = fam("ppower", 5, 4, "floor", p=2, b=2)
    spec = build_family(req, compute_distance=False)
    assert not spec.bounds.basic_guaranteed
    with pytest.raises(ParameterError, match="floor side condition"):
        build_family(FamilyRequest("ppower", 5, 4, "floor", p=2, b=2, strict=True), compute_distance=False)


def test_ppower_cases_partition():
    for q in QS:
        for r in divisors(q - 1):
            for p in SMALL_PRIMES:
                flags = [(q - 1) % p != 0, ((q - 1) // r) % p == 0, (q - 1) % p == 0 and ((q - 1) // r) % p != 0]
                assert sum(flags) == 1
                case = ppower_case(q, r, p, 2)
                assert flags[case - 1]


# ---------------------------------------------------------------- rejection completeness


def first_failing_prime(q, r, n):
    if not is_prime(n):
        return "n prime"
    if (q - 1) % n == 0:
        return "n does not divide q-1"
    if gcd(n, q) != 1:
        return "gcd(n, q) = 1"
    return None


def first_failing_qpower(q, r, p, s):
    if not is_prime(p):
        return "p prime"
    if (q**p - 1) % s:
        return "s | q^p - 1"
    nr = (q**p - 1) // s
    if nr % r:
        return "r | (q^p - 1)/s"
    if gcd(r, nr // gcd(nr, q - 1)) != 1:
        return "gcd(r, nr/gcd(nr, q-1)) = 1"
    n = nr // r
    if n - gcd(n, (q - 1) // r) == 0:
        return "N_p > 0"
    return None


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(QS), st.data())
def test_prime_family_rejection_completeness(q, data):
    r = data.draw(st.sampled_from(divisors(q - 1)))
    n = data.draw(st.integers(2, 400))
    assume(n * r < 5000)
    want = first_failing_prime(q, r, n)
    req = fam("prime", q, r, data.draw(st.sampled_from(["ceiling", "floor"])), n=n)
    if want:
        with pytest.raises(ParameterError) as exc:
            plan_family(req)
        assert want in str(exc.value)
    else:
        plan = plan_family(req)
        t = cached_table(plan.params)
        assert t.counts == plan.predicted
        assert t.size_classes == [1, mult_order(q, n)]


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(QS), st.data())
def test_qpower_family_rejection_completeness(q, data):
    r = data.draw(st.sampled_from(divisors(q - 1)))
    p = data.draw(st.sampled_from([2, 3, 4, 5, 7]))
    assume(q**p < 10**6)
    s = data.draw(st.one_of(st.sampled_from(divisors(q**p - 1)), st.integers(1, 200)))
    want = first_failing_qpower(q, r, p, s)
    req = fam("qpower", q, r, s=s, p=p)
    if want:
        with pytest.raises(ParameterError) as exc:
            plan_family(req)
        assert want in str(exc.value)
    else:
        plan = plan_family(req)
        assert cached_table(plan.params).counts == plan.predicted


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(QS), st.data())
def test_ppower_family_predictions(q, data):
    r = data.draw(st.sampled_from(divisors(q - 1)))
    p = data.draw(st.sampled_from([2, 3, 5, 7]))
    b = data.draw(st.integers(1, 3))
    assume(gcd(p, q) == 1 and p**b <= 27 and cyclotomic_value(p**b, q) * r < 3000)
    req = fam("ppower", q, r, data.draw(st.sampled_from(["ceiling", "floor"])), p=p, b=b)
    needs_b2 = (q - 1) % p == 0 and ((q - 1) // r) % p != 0 and b < 2
    if needs_b2:
        with pytest.raises(ParameterError, match="b >= 2"):
            plan_family(req)
        return
    spec = build_family(req, compute_distance=False)
    assert spec.dimension == spec.family["dimension_formula"]


# ---------------------------------------------------------------- two-prime divisibility implication


def twoprime_hypothesis(q, r, p1, p2):
    return ((q**p1 - 1) // r) % p2 != 0


def test_two_prime_implication_holds_when_p2_does_not_divide_q_minus_1():
    for q in QS:
        for r in divisors(q - 1):
            for p1 in SMALL_PRIMES:
                for p2 in SMALL_PRIMES + [17, 19, 23, 29, 31, 37, 41, 43]:
                    if p1 < p2 and (p2 - 1) % p1 and (q - 1) % p2:
                        assert twoprime_hypothesis(q, r, p1, p2)


def test_two_prime_implication_needs_extra_condition():
    # p1 = 5 does not divide p2 - 1 = 6, yet 7 | (8^5 - 1): the implication needs p2 not dividing q - 1
    assert (7 - 1) % 5 and not twoprime_hypothesis(8, 1, 5, 7)


def test_two_prime_structure_characterisation():
    """With p2 not dividing q-1, classes {1, p1 p2} occur exactly when the hypothesis holds."""
    checked = 0
    for q in QS:
        for r in divisors(q - 1):
            for p1, p2 in [(2, 3), (2, 5), (2, 7), (3, 5), (3, 7), (2, 11), (2, 13)]:
                if gcd(p1 * p2, q) != 1 or (q - 1) % p2 == 0:
                    continue
                n = cyclotomic_value(p1 * p2, q)
                if n * r > 2_000_000:
                    continue
                t = cached_table(CodeParams(q, n, r))
                predicted = {1: 1, p1 * p2: (n - 1) // (p1 * p2)}
                assert (t.counts == predicted) == twoprime_hypothesis(q, r, p1, p2), (q, r, p1, p2)
                checked += 1
    assert checked >= 20


def test_two_prime_fallback_when_p2_divides_q_minus_1():
    plan = plan_family(fam("twoprime", 7, 2, "floor", p1=2, p2=3))
    assert "verified by enumeration" in plan.case
    assert cached_table(plan.params).counts == plan.predicted
    assert Family("twoprime") is Family.TWOPRIME
