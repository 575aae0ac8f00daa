"""Dense univariate polynomials over a field object (FieldCtx or SmallField).

Any object exposing zero/one/add/sub/neg/mul/inv/render works as the
coefficient field; coefficients are stored low degree first with no
trailing zeros, so the zero polynomial has an empty coefficient tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .gf import FieldElem, SubfieldEmbed


@dataclass(frozen=True)
class Poly:
    field: Any
    coeffs: tuple

    def __post_init__(self):
        c = list(self.coeffs)
        zero = self.field.zero
        while c and c[-1] == zero:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def monomial(cls, field, k: int, c=None) -> Poly:
        c = field.one if c is None else c
        return cls(field, (field.zero,) * k + (c,))

    @classmethod
    def constant(cls, field, c) -> Poly:
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def _same(self, other: Poly) -> None:
        if not isinstance(other, Poly) or other.field is not self.field and other.field != self.field:
            raise TypeError("polynomials over different fields")

    def __add__(self, other: Poly) -> Poly:
        self._same(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, tuple(out))

    def __neg__(self) -> Poly:
        return Poly(self.field, tuple(self.field.neg(c) for c in self.coeffs))

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __mul__(self, other: Poly) -> Poly:
        self._same(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(F, ())
        zero = F.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai == zero:
                continue
            for j, bj in enumerate(b):
                if bj != zero:
                    out[i + j] = F.add(out[i + j], F.mul(ai, bj))
        return Poly(F, tuple(out))

    def scale(self, c) -> Poly:
        return Poly(self.field, tuple(self.field.mul(c, x) for x in self.coeffs))

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        self._same(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        rem = list(self.coeffs)
        db = other.degree
        lead_inv = F.inv(other.coeffs[-1])
        if len(rem) <= db:
            return Poly(F, ()), self
        quot = [F.zero] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c == F.zero:
                continue
            c = F.mul(c, lead_inv)
            quot[k - db] = c
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] = F.sub(rem[k - db + j], F.mul(c, bj))
        return Poly(F, tuple(quot)), Poly(F, tuple(rem[:db]))

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return divmod(self, other)[1]

    def eval(self, x):
        """Horner evaluation at a point of the coefficient field."""
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, x), c)
        return acc

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == self.field.zero:
                continue
            cs = self.field.render(c)
            terms.append(cs if k == 0 else f"{cs}*x" if k == 1 else f"{cs}*x^{k}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"Poly({self.render()})"


def x_pow_minus(field, n: int, lam) -> Poly:
    """x^n - lam."""
    return Poly(field, (field.neg(lam),) + (field.zero,) * (n - 1) + (field.one,))


def eval_lifted(poly: Poly, embed: SubfieldEmbed, x) -> FieldElem:
    """Evaluate a GF(q)-polynomial at a point of the big field via the embedding."""
    if poly.field is not embed.field:
        raise TypeError("polynomial is not over the embedded subfield")
    big = embed.big
    raw = x.coeffs if isinstance(x, FieldElem) else x
    acc = big.zero
    for c in reversed(poly.coeffs):
        acc = big.add(big.mul(acc, raw), embed.lift(c))
    return FieldElem(big, acc)


def product_over_coset(embed: SubfieldEmbed, beta, coset: Iterable[int]) -> Poly:
    """prod_{j in coset} (x - beta^j), projected to GF(q).

    Raises SubfieldError if some coefficient leaves the subfield, which
    happens exactly when the exponent set is not closed under j -> qj.
    """
    big = embed.big
    b = beta.coeffs if isinstance(beta, FieldElem) else beta
    acc = [big.one]
    for j in coset:
        root = big.neg(big.pow(b, j))
        # multiply acc by (x + root)
        nxt = [big.zero] * (len(acc) + 1)
        for k, c in enumerate(acc):
            nxt[k + 1] = big.add(nxt[k + 1], c)
            nxt[k] = big.add(nxt[k], big.mul(c, root))
        acc = nxt
    small = embed.field
    return Poly(small, tuple(embed.project(c) for c in acc))


def poly_product(field, polys: Iterable[Poly]) -> Poly:
    out = Poly.constant(field, field.one)
    for f in polys:
        out = out * f
    return out
