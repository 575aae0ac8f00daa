"""Arithmetic in GF(p^e) over a polynomial basis, plus the GF(q) subfield of GF(q^M).

Raw field elements are tuples of e integers in [0, p), low degree first.
`FieldElem` wraps a raw tuple together with its field for operator use.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .errors import ParameterError, SubfieldError
from .numtheory import is_prime, prime_factors, prime_power

Raw = tuple[int, ...]

FIELD_LIMIT = 2**63


def _reduce(prod: list[int], p: int, e: int, tail: list[tuple[int, int]]) -> Raw:
    # x^e = -sum(tail) modulo the monic modulus
    for k in range(len(prod) - 1, e - 1, -1):
        c = prod[k] % p
        if c:
            base = k - e
            for j, mj in tail:
                prod[base + j] -= c * mj
    return tuple(c % p for c in prod[:e])


def _mulmod(a: Raw, b: Raw, p: int, e: int, tail: list[tuple[int, int]]) -> Raw:
    if e == 1:
        return ((a[0] * b[0]) % p,)
    prod = [0] * (2 * e - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    return _reduce(prod, p, e, tail)


def _powmod(a: Raw, k: int, p: int, e: int, tail: list[tuple[int, int]]) -> Raw:
    result = (1,) + (0,) * (e - 1)
    base = a
    while k:
        if k & 1:
            result = _mulmod(result, base, p, e, tail)
        k >>= 1
        if k:
            base = _mulmod(base, base, p, e, tail)
    return result


def _tail(modulus: Raw) -> list[tuple[int, int]]:
    return [(j, c) for j, c in enumerate(modulus[:-1]) if c]


def _x_has_full_order(modulus: Raw, p: int, e: int, order: int, primes: list[int]) -> bool:
    """True iff x has multiplicative order exactly p^e - 1 modulo `modulus`.

    If so the quotient ring has p^e - 1 units, hence is a field, so the
    modulus is irreducible as well as primitive.
    """
    tail = _tail(modulus)
    one = (1,) + (0,) * (e - 1)
    x = (0, 1) + (0,) * (e - 2) if e > 1 else ((-modulus[0]) % p,)
    if _powmod(x, order, p, e, tail) != one:
        return False
    return all(_powmod(x, order // ell, p, e, tail) != one for ell in primes)


def _poly_gcd_gfp(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(v):
        while v and v[-1] % p == 0:
            v.pop()
        return [c % p for c in v]

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j, bj in enumerate(b):
                a[shift + j] -= c * bj
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_irreducible(modulus: Raw, p: int) -> bool:
    """Rabin's test for a monic polynomial over GF(p) (coefficients low first)."""
    e = len(modulus) - 1
    if e == 1:
        return True
    tail = _tail(modulus)
    x = (0, 1) + (0,) * (e - 2)

    def frob(v: Raw, times: int) -> Raw:
        for _ in range(times):
            v = _powmod(v, p, p, e, tail)
        return v

    if frob(x, e) != x:
        return False
    for ell in prime_factors(e):
        h = list(frob(x, e // ell))
        h[1] -= 1
        g = _poly_gcd_gfp(h, list(modulus), p)
        if len(g) > 1:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    """GF(p^e) with a primitive modulus; `gamma` is the class of x."""

    p: int
    e: int
    modulus: Raw
    gamma: Raw = field(compare=False)

    @property
    def order(self) -> int:
        return self.p**self.e - 1

    @property
    def size(self) -> int:
        return self.p**self.e

    @cached_property
    def _tail(self) -> list[tuple[int, int]]:
        return _tail(self.modulus)

    @property
    def zero(self) -> Raw:
        return (0,) * self.e

    @property
    def one(self) -> Raw:
        return (1,) + (0,) * (self.e - 1)

    def add(self, a: Raw, b: Raw) -> Raw:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Raw, b: Raw) -> Raw:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a: Raw) -> Raw:
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a: Raw, b: Raw) -> Raw:
        return _mulmod(a, b, self.p, self.e, self._tail)

    def pow(self, a: Raw, k: int) -> Raw:
        if not any(a):
            if k == 0:
                return self.one
            if k < 0:
                raise ZeroDivisionError("zero has no inverse")
            return self.zero
        return _powmod(a, k % self.order, self.p, self.e, self._tail)

    def inv(self, a: Raw) -> Raw:
        if not any(a):
            raise ZeroDivisionError("zero has no inverse in GF(%d^%d)" % (self.p, self.e))
        return self.pow(a, self.order - 1)

    def scalar(self, c: int) -> Raw:
        return (c % self.p,) + (0,) * (self.e - 1)

    def elem(self, coeffs) -> FieldElem:
        coeffs = tuple(coeffs)
        if len(coeffs) != self.e or any(not 0 <= c < self.p for c in coeffs):
            raise ValueError(f"bad coefficient vector {coeffs} for GF({self.p}^{self.e})")
        return FieldElem(self, coeffs)

    def wrap(self, raw: Raw) -> FieldElem:
        return FieldElem(self, raw)

    def elements(self):
        """Every raw element (only sensible for small fields)."""
        for c in product(range(self.p), repeat=self.e):
            yield tuple(reversed(c))

    def render(self, a: Raw) -> str:
        return "[" + ",".join(map(str, a)) + "]"

    def frobenius(self, a: Raw) -> Raw:
        return self.pow(a, self.p)

    def __repr__(self) -> str:
        return f"FieldCtx(GF({self.p}^{self.e}), modulus={list(self.modulus)})"


@dataclass(frozen=True)
class FieldElem:
    ctx: FieldCtx
    coeffs: Raw

    def _check(self, other: FieldElem) -> None:
        if not isinstance(other, FieldElem) or other.ctx != self.ctx:
            raise TypeError("operands live in different fields")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.ctx, self.ctx.add(self.coeffs, other.coeffs))

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.ctx, self.ctx.sub(self.coeffs, other.coeffs))

    def __neg__(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.neg(self.coeffs))

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.coeffs, other.coeffs))

    def __truediv__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        return FieldElem(self.ctx, self.ctx.mul(self.coeffs, self.ctx.inv(other.coeffs)))

    def __pow__(self, k: int) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.pow(self.coeffs, k))

    def inverse(self) -> FieldElem:
        return FieldElem(self.ctx, self.ctx.inv(self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def order(self) -> int:
        """Multiplicative order (nonzero elements only)."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no multiplicative order")
        t = self.ctx.order
        for ell in prime_factors(t) if t > 1 else []:
            while t % ell == 0 and self.ctx.pow(self.coeffs, t // ell) == self.ctx.one:
                t //= ell
        return t

    def __repr__(self) -> str:
        return f"GF({self.ctx.p}^{self.ctx.e}){list(self.coeffs)}"


@lru_cache(maxsize=64)
def make_field(p: int, e: int) -> FieldCtx:
    """GF(p^e) over the lexicographically smallest primitive monic modulus.

    Candidates are ordered by their coefficient vectors (c_0, ..., c_{e-1}),
    compared low degree first.
    """
    if not is_prime(p):
        raise ParameterError("p prime", f"characteristic {p} is not prime")
    if e < 1:
        raise ParameterError("e >= 1", f"got e={e}")
    order = p**e - 1
    if order >= FIELD_LIMIT:
        raise ParameterError("p^e - 1 < 2^63", f"GF({p}^{e}) is too large")
    primes = prime_factors(order) if order > 1 else []
    # the norm of a primitive element, (-1)^e c_0, must generate GF(p)^*
    p_primes = prime_factors(p - 1) if p > 2 else []
    good_c0 = [
        c for c in range(1, p)
        if all(pow((-1) ** e * c % p, (p - 1) // ell, p) != 1 for ell in p_primes)
    ]
    if order == 1:
        good_c0 = [1]
    candidates = ((c0,) + rest for c0 in good_c0 for rest in product(range(p), repeat=e - 1))
    for coeffs in candidates:
        modulus = coeffs + (1,)
        if e > 1 and p <= 64 and any(_eval_gfp(modulus, a, p) == 0 for a in range(p)):
            continue
        if _x_has_full_order(modulus, p, e, order, primes):
            gamma = (0, 1) + (0,) * (e - 2) if e > 1 else ((-modulus[0]) % p,)
            return FieldCtx(p, e, modulus, gamma)
    raise AssertionError(f"no primitive polynomial found for GF({p}^{e})")


def _eval_gfp(poly: Raw, a: int, p: int) -> int:
    acc = 0
    for c in reversed(poly):
        acc = (acc * a + c) % p
    return acc


def element_of_order(ctx: FieldCtx, d: int) -> FieldElem:
    """gamma^((p^e - 1)/d), an element of multiplicative order exactly d."""
    if d < 1 or ctx.order % d:
        raise ParameterError("d | p^e - 1", f"{d} does not divide {ctx.order}")
    return FieldElem(ctx, ctx.pow(ctx.gamma, ctx.order // d))


class SmallField:
    """GF(q) with integer element codes and lookup tables.

    Codes: for prime q the residue itself; otherwise 0 is zero and k + 1
    stands for g^k, g being the distinguished subfield generator.
    """

    def __init__(self, q: int, p: int, add_table: np.ndarray, mul_table: np.ndarray):
        self.q = q
        self.p = p
        self.is_prime = q == p
        self.add_table = add_table
        self.mul_table = mul_table
        self.neg_table = np.array([int(np.nonzero(add_table[a] == 0)[0][0]) for a in range(q)], dtype=np.int64)
        inv = [0] * q
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul_table[a] == 1)[0][0])
        self.inv_table = np.array(inv, dtype=np.int64)
        self._add = add_table.tolist()
        self._mul = mul_table.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = inv

    zero = 0
    one = 1

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._inv[a]

    def pow(self, a: int, k: int) -> int:
        out = 1
        for _ in range(k):
            out = self._mul[out][a]
        return out

    def render(self, a: int) -> str:
        if self.is_prime or a in (0, 1):
            return str(a)
        return f"g^{a - 1}"

    def __repr__(self) -> str:
        return f"SmallField(GF({self.q}))"


@dataclass(frozen=True)
class SubfieldEmbed:
    """GF(q) sitting inside `big` = GF(q^M)."""

    big: FieldCtx
    q: int
    generator: Raw
    log_table: dict = field(repr=False, compare=False)
    _powers: tuple = field(repr=False, compare=False)

    @cached_property
    def field(self) -> SmallField:
        q = self.q
        add = np.zeros((q, q), dtype=np.int64)
        mul = np.zeros((q, q), dtype=np.int64)
        lifted = [self.lift(a) for a in range(q)]
        for a in range(q):
            for b in range(q):
                add[a, b] = self.project(self.big.add(lifted[a], lifted[b]))
                mul[a, b] = self.project(self.big.mul(lifted[a], lifted[b]))
        p = self.big.p
        return SmallField(q, p, add, mul)

    def project(self, x) -> int:
        """Code of a subfield element of `big`; SubfieldError otherwise."""
        raw = x.coeffs if isinstance(x, FieldElem) else x
        if not any(raw):
            return 0
        if self.q == self.big.p:
            if any(raw[1:]):
                raise SubfieldError(f"{raw} is not in the prime field")
            return raw[0]
        k = self.log_table.get(raw)
        if k is None:
            raise SubfieldError(f"{raw} is not fixed by x -> x^{self.q}")
        return k + 1

    def lift(self, code: int) -> Raw:
        if code == 0:
            return self.big.zero
        if self.q == self.big.p:
            return self.big.scalar(code)
        return self._powers[code - 1]

    def log(self, x) -> int:
        """Exponent k with x = generator^k (x nonzero, in the subfield)."""
        raw = x.coeffs if isinstance(x, FieldElem) else x
        k = self.log_table.get(raw)
        if k is None:
            raise SubfieldError(f"{raw} is not a nonzero subfield element")
        return k


def embed_subfield(big: FieldCtx, q: int) -> SubfieldEmbed:
    pe = prime_power(q)
    if pe is None or pe[0] != big.p or big.e % pe[1]:
        raise ParameterError("q = p^e' with e' | e", f"GF({q}) is not a subfield of GF({big.p}^{big.e})")
    gen = big.pow(big.gamma, big.order // (q - 1))
    powers = []
    x = big.one
    for _ in range(q - 1):
        powers.append(x)
        x = big.mul(x, gen)
    log_table = {v: k for k, v in enumerate(powers)}
    return SubfieldEmbed(big, q, gen, log_table, tuple(powers))
