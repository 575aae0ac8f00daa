"""Integer helpers: factorization, multiplicative order, Moebius, cyclotomic values."""

from __future__ import annotations

from functools import lru_cache, reduce
from math import gcd, lcm

from .errors import ParameterError

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (covers every 64-bit input)."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Prime factorization by trial division, as sorted (prime, exponent) pairs.

    The loop stops early once the cofactor is prime, so p^e - 1 style inputs
    with one large prime factor stay cheap.
    """
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    out = []
    for p in (2, 3):
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            out.append((p, k))
    f = 5
    step = 2
    while f * f <= n:
        if n % f == 0:
            k = 0
            while n % f == 0:
                n //= f
                k += 1
            out.append((f, k))
            if is_prime(n):
                break
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return tuple(sorted(out))


def prime_factors(n: int) -> list[int]:
    return [p for p, _ in factorize(n)]


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, k in factorize(n):
        divs = [d * p**i for d in divs for i in range(k + 1)]
    return sorted(divs)


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, e) with q = p^e, or None if q is not a prime power."""
    if q < 2:
        return None
    f = factorize(q)
    if len(f) != 1:
        return None
    return f[0]


def carmichael(m: int) -> int:
    if m == 1:
        return 1
    parts = []
    for p, k in factorize(m):
        if p == 2 and k >= 3:
            parts.append(2 ** (k - 2))
        else:
            parts.append((p - 1) * p ** (k - 1))
    return reduce(lcm, parts, 1)


def mult_order(q: int, m: int) -> int:
    """Least t >= 1 with q^t = 1 (mod m)."""
    if m < 1:
        raise ParameterError("m >= 1", f"modulus must be positive, got {m}")
    if m == 1:
        return 1
    if gcd(q, m) != 1:
        raise ParameterError("gcd(q, m) = 1", f"gcd({q}, {m}) = {gcd(q, m)}")
    t = carmichael(m)
    for p, _ in factorize(t):
        while t % p == 0 and pow(q, t // p, m) == 1:
            t //= p
    return t


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius needs n >= 1, got {n}")
    mu = 1
    for _, k in factorize(n):
        if k > 1:
            return 0
        mu = -mu
    return mu


@lru_cache(maxsize=None)
def _phi_at(m: int, x: int) -> int:
    # x^m - 1 = prod_{d | m} Phi_d(x); peel off the proper divisors.
    value = x**m - 1
    for d in divisors(m)[:-1]:
        value //= _phi_at(d, x)
    return value


def cyclotomic_value(m: int, q: int) -> int:
    """Phi_m(q) as an exact integer.

    Computed by dividing q^m - 1 by Phi_d(q) for the proper divisors d of m,
    so no negative Moebius exponents are ever materialised.
    """
    if m < 1:
        raise ParameterError("m >= 1", f"got m={m}")
    if q < 2:
        raise ParameterError("q >= 2", f"cyclotomic_value needs q >= 2, got {q}")
    return _phi_at(m, q)


def cyclotomic_value_mobius(m: int, q: int) -> int:
    """Phi_m(q) from the Moebius divisor product, numerator and denominator kept apart."""
    if q < 2:
        raise ParameterError("q >= 2", f"got q={q}")
    num, den = 1, 1
    for d in divisors(m):
        mu = moebius(m // d)
        if mu == 1:
            num *= q**d - 1
        elif mu == -1:
            den *= q**d - 1
    value, rem = divmod(num, den)
    assert rem == 0
    return value


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m(x), low degree first (by exact division)."""
    num = [-1] + [0] * (m - 1) + [1]
    for d in divisors(m)[:-1]:
        num = _int_poly_div(num, cyclotomic_poly(d))
    return tuple(num)


def _int_poly_div(a: list[int], b: tuple[int, ...]) -> list[int]:
    # b monic; exact division asserted
    a = list(a)
    db = len(b) - 1
    quot = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            quot[i - db] = c
            for j, bj in enumerate(b):
                a[i - db + j] -= c * bj
    assert not any(a[:db]), "inexact integer polynomial division"
    return quot


def gcd_cyclotomic_qminus1(m: int, q: int) -> int:
    """gcd(Phi_m(q), q - 1) in closed form: 1 unless m is a prime power p^k, then gcd(q-1, p)."""
    if m < 2:
        raise ParameterError("m >= 2", f"got m={m}")
    primes = prime_factors(m)
    if len(primes) >= 2:
        return 1
    return gcd(q - 1, primes[0])


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def int_floor_log(base: int, x: int) -> int:
    """Largest i with base^i <= x (x >= 1)."""
    i, v = 0, base
    while v <= x:
        v *= base
        i += 1
    return i
