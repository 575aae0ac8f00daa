"""q-cyclotomic cosets of Z_{n,r} = {1, 1+r, ..., 1+(n-1)r} modulo nr.

Residues live in [1, nr]; nr itself stands for 0. Besides enumeration this
module evaluates the closed-form class counts, the coset-leader lower
bounds for two-class structures, and certificates of non-leadership.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import gcd

import numpy as np

from .errors import ParameterError
from .numtheory import ceil_div, divisors, moebius, mult_order, prime_power

NR_LIMIT = 2**31

try:  # numba is a declared dependency, but keep a slow path for odd platforms
    from numba import njit
except ImportError:  # pragma: no cover
    njit = None


def _walk_py(q: int, n: int, r: int, nr: int):
    owner = np.zeros(nr + 1, dtype=np.int64)
    leaders, sizes = [], []
    for k in range(n):
        i = 1 + k * r
        if owner[i]:
            continue
        x, size = i, 0
        while True:
            owner[x] = i
            size += 1
            x = x * q % nr or nr
            if x == i:
                break
        leaders.append(i)
        sizes.append(size)
    return np.array(leaders, dtype=np.int64), np.array(sizes, dtype=np.int64), owner


if njit is not None:

    @njit(cache=True)
    def _walk_jit(q, n, r, nr):
        owner = np.zeros(nr + 1, np.int64)
        leaders = np.empty(n, np.int64)
        sizes = np.empty(n, np.int64)
        qm = q % nr
        cnt = 0
        for k in range(n):
            i = 1 + k * r
            if owner[i] != 0:
                continue
            # scanning upward, the first unvisited residue is its orbit's minimum
            x = i
            size = 0
            while True:
                owner[x] = i
                size += 1
                x = (x * qm) % nr
                if x == 0:
                    x = nr
                if x == i:
                    break
            leaders[cnt] = i
            sizes[cnt] = size
            cnt += 1
        return leaders[:cnt].copy(), sizes[:cnt].copy(), owner

    _walk = _walk_jit
else:  # pragma: no cover
    _walk = _walk_py


@dataclass(frozen=True)
class CodeParams:
    """(q, n, r) with the derived nr, M = ord_{nr}(q) and s = (q^M - 1)/nr."""

    q: int
    n: int
    r: int
    nr: int = field(init=False)
    M: int = field(init=False)
    s: int = field(init=False, repr=False)  # can have thousands of digits

    def __post_init__(self):
        q, n, r = self.q, self.n, self.r
        if prime_power(q) is None:
            raise ParameterError("q prime power", f"q={q}")
        if n < 1:
            raise ParameterError("n >= 1", f"n={n}")
        if r < 1 or (q - 1) % r:
            raise ParameterError("r | q-1", f"r={r}, q-1={q - 1}")
        if gcd(n, q) != 1:
            raise ParameterError("gcd(n, q) = 1", f"gcd({n}, {q}) = {gcd(n, q)}")
        nr = n * r
        if nr >= NR_LIMIT:
            raise ParameterError("nr < 2^31", f"nr={nr}")
        M = mult_order(q, nr)
        s, rem = divmod(q**M - 1, nr)
        assert rem == 0
        object.__setattr__(self, "nr", nr)
        object.__setattr__(self, "M", M)
        object.__setattr__(self, "s", s)

    @property
    def p(self) -> int:
        return prime_power(self.q)[0]

    def residues(self) -> np.ndarray:
        return np.arange(1, self.nr + 1, self.r, dtype=np.int64)

    def orbit(self, i: int) -> list[int]:
        """The coset of residue i, in generation order i, qi, q^2 i, ..."""
        nr, q = self.nr, self.q
        out = [i]
        x = i * q % nr or nr
        while x != i:
            out.append(x)
            x = x * q % nr or nr
        return out


@dataclass(frozen=True, eq=False)
class CosetTable:
    params: CodeParams
    leaders: np.ndarray  # ascending
    sizes: np.ndarray  # sizes[k] = |C_{leaders[k]}|
    owner: np.ndarray = field(repr=False)  # owner[x] = leader of x's coset (0 outside Z_{n,r})

    @cached_property
    def by_size(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for ld, sz in zip(self.leaders.tolist(), self.sizes.tolist()):
            out.setdefault(sz, []).append(ld)
        return dict(sorted(out.items()))

    @cached_property
    def counts(self) -> dict[int, int]:
        return {l: len(v) for l, v in self.by_size.items()}

    @property
    def size_classes(self) -> list[int]:
        return list(self.by_size)

    @cached_property
    def residue_sizes(self) -> np.ndarray:
        """|C_i| for i = 1, 1+r, ..., in residue order."""
        size_of = np.zeros(self.params.nr + 1, dtype=np.int64)
        size_of[self.leaders] = self.sizes
        return size_of[self.owner[self.params.residues()]]

    @cached_property
    def _size_of(self) -> dict[int, int]:
        return dict(zip(self.leaders.tolist(), self.sizes.tolist()))

    def size_of_leader(self, leader: int) -> int:
        return self._size_of[leader]

    def coset(self, leader: int) -> list[int]:
        return sorted(self.params.orbit(leader))

    @property
    def cosets(self) -> list[tuple[int, list[int]]]:
        return [(ld, self.coset(ld)) for ld in self.leaders.tolist()]

    def is_leader(self, x: int) -> bool:
        return 1 <= x <= self.params.nr and int(self.owner[x]) == x

    def leader_of(self, x: int) -> int:
        ld = int(self.owner[x])
        if ld == 0:
            raise ValueError(f"{x} is not in Z_(n,r)")
        return ld

    def two_classes(self) -> tuple[int, int]:
        """(l, m) for a two-class structure, else ParameterError."""
        sizes = self.size_classes
        if len(sizes) != 2:
            raise ParameterError("exactly two coset size classes", f"sizes present: {sizes}")
        return sizes[0], sizes[1]


def enumerate_cosets(params: CodeParams) -> CosetTable:
    leaders, sizes, owner = _walk(params.q, params.n, params.r, params.nr)
    return CosetTable(params, leaders, sizes, owner)


@lru_cache(maxsize=32)
def cached_table(params: CodeParams) -> CosetTable:
    return enumerate_cosets(params)


def _table(x) -> CosetTable:
    return x if isinstance(x, CosetTable) else cached_table(x)


# ---------------------------------------------------------------- counts


def _sigma_and_gcd(params: CodeParams, j: int) -> tuple[int, int]:
    """(sigma(j), gcd(n, (q^j - 1)/r)) without forming q^j."""
    nr, r = params.nr, params.r
    y = (pow(params.q, j, nr) - 1) % nr  # q^j - 1 reduced mod nr
    g = gcd(nr, y)
    sigma = 1 if gcd(r, nr // g) == 1 else 0
    return sigma, gcd(params.n, y // r)


def count_by_formula(params: CodeParams, l: int) -> int:
    """N_l from the Moebius sum over divisors of l."""
    if l < 1 or params.M % l:
        raise ParameterError("l | ord_nr(q)", f"l={l}, ord={params.M}")
    total = 0
    for j in divisors(l):
        mu = moebius(l // j)
        if mu:
            sigma, g = _sigma_and_gcd(params, j)
            total += mu * sigma * g
    value, rem = divmod(total, l)
    assert rem == 0, "Moebius sum not divisible by l"
    return value


def all_counts_by_formula(params: CodeParams) -> dict[int, int]:
    """N_l for every l | M (zeros included), sharing the per-divisor gcds."""
    divs = divisors(params.M)
    term = {}
    for j in divs:
        sigma, g = _sigma_and_gcd(params, j)
        term[j] = sigma * g
    out = {}
    for l in divs:
        total = sum(moebius(l // j) * term[j] for j in divs if l % j == 0)
        out[l] = total // l
    return out


def sum_identity(params: CodeParams, l: int) -> int:
    """The closed form of sum_{j | l} j N_j: sigma(l) * gcd(n, (q^l - 1)/r)."""
    sigma, g = _sigma_and_gcd(params, l)
    return sigma * g


def period_divisibility_holds(table: CosetTable, l: int) -> bool:
    """For all i in Z_{n,r}: |C_i| divides l  <=>  nr/gcd(nr, q^l - 1) divides i."""
    params = table.params
    z = params.residues()
    lhs = (l % table.residue_sizes) == 0
    t = params.nr // gcd(params.nr, pow(params.q, l, params.nr) - 1)
    rhs = (z % t) == 0
    return bool((lhs == rhs).all())


def period_divisibility_failures(table: CosetTable, ls) -> list[int]:
    """The l in ls for which period_divisibility_holds fails, checked in one pass."""
    params = table.params
    ls = np.asarray(list(ls), dtype=np.int64)
    if ls.size == 0:
        return []
    t = np.array([params.nr // gcd(params.nr, pow(params.q, int(l), params.nr) - 1) for l in ls], dtype=np.int64)
    return ls[_period_mismatch(ls, t, table.residue_sizes, params.r)].tolist()


def _period_mismatch_py(ls, t, sizes, r):
    z = 1 + r * np.arange(sizes.size, dtype=np.int64)
    lhs = (ls[:, None] % sizes[None, :]) == 0
    rhs = (z[None, :] % t[:, None]) == 0
    return (lhs != rhs).any(axis=1)


if njit is not None:

    @njit(cache=True)
    def _period_mismatch(ls, t, sizes, r):
        bad = np.zeros(ls.size, np.bool_)
        for a in range(ls.size):
            l, ta = ls[a], t[a]
            for k in range(sizes.size):
                if (l % sizes[k] == 0) != ((1 + k * r) % ta == 0):
                    bad[a] = True
                    break
        return bad

else:  # pragma: no cover
    _period_mismatch = _period_mismatch_py


# ---------------------------------------------------------------- leaders


def coset_leader(source, l: int, i: int) -> int:
    """delta_i^{(l)}: the i-th smallest leader among size-l cosets."""
    table = _table(source)
    lst = table.by_size.get(l, [])
    if not lst:
        raise ParameterError("N_l > 0", f"no cosets of size {l}")
    if not 1 <= i <= len(lst):
        raise ParameterError("1 <= i <= N_l", f"i={i}, N_{l}={len(lst)}")
    return lst[i - 1]


def leader_lower_bound(params: CodeParams, l: int, i: int) -> int:
    """nr (1 + (ceil(qi/(q-1)) - 2) r) / gcd(nr, q^l - 1)."""
    if i < 1:
        raise ParameterError("i >= 1", f"i={i}")
    q, nr, r = params.q, params.nr, params.r
    g = gcd(nr, pow(q, l, nr) - 1)
    return nr // g * (1 + (ceil_div(q * i, q - 1) - 2) * r)


# ---------------------------------------------------------------- non-leaders


@dataclass(frozen=True)
class NonLeaderCert:
    i: int
    j: int
    t: int
    value: int  # q^i + qt + j
    witness: int  # value * q^(m-i) mod nr, strictly smaller


def cert_exponent_range(params: CodeParams) -> range:
    """i from ceil((m+1)/2) up to max{i : q^i (s+1) <= q^m}."""
    q, m, s = params.q, params.M, params.s
    lo = (m + 2) // 2
    top = 0  # exact integer form of floor(m - log_q(s+1))
    while q ** (top + 1) * (s + 1) <= q**m:
        top += 1
    return range(lo, top + 1)


def non_leader_certs(params: CodeParams, limit: int | None = None) -> list[NonLeaderCert]:
    """Values q^i + qt + j (<= limit) that provably are not coset leaders mod nr."""
    q, m, nr = params.q, params.M, params.nr
    limit = nr if limit is None else min(limit, nr)
    out = []
    for i in cert_exponent_range(params):
        qi = q**i
        if qi + 1 > limit:
            break
        shift = q ** (m - i)
        den = q ** (m - i + 1) - q
        for j in range(1, q):
            num = qi - j * (shift - 1) - 1
            if num <= 0:
                continue
            t_count = ceil_div(num, den)  # t < num/den
            for t in range(t_count):
                value = qi + q * t + j
                if value > limit:
                    break
                witness = value * shift % nr or nr
                if witness >= value:
                    raise AssertionError(f"certificate failed for i={i}, j={j}, t={t}")
                out.append(NonLeaderCert(i, j, t, value, witness))
    return out


def certified_set(params: CodeParams, half: int) -> list[NonLeaderCert]:
    """Certificates with value = 1 (mod r) below 1 + (ceil(q*half/(q-1)) - 2) r."""
    q, r = params.q, params.r
    threshold = 1 + (ceil_div(q * half, q - 1) - 2) * r
    if threshold < 1:
        return []
    return [c for c in non_leader_certs(params, threshold) if c.value % r == 1 % r]


def lambda_term(source, half: int) -> int:
    """max(0, ceil(q |S| / (q-1)) - 1) for the certified set S at the given half-count."""
    table = _table(source)
    table.two_classes()
    params = table.params
    size = len(certified_set(params, half))
    return max(0, ceil_div(params.q * size, params.q - 1) - 1)


# ---------------------------------------------------------------- two-class lemmas


@dataclass(frozen=True)
class Verdict:
    name: str
    hypothesis: bool
    conclusion: bool | None  # None when the compared index falls outside the class
    lhs: object = None
    rhs: object = None

    @property
    def consistent(self) -> bool:
        """False only if the hypothesis holds and the conclusion visibly fails."""
        return not (self.hypothesis and self.conclusion is False)


def two_class_bound_verdicts(source) -> list[Verdict]:
    """Evaluate hypotheses and conclusions of the two-class leader estimates.

    Strict inequalities against rationals are compared after clearing
    denominators.  Names:
      upper_half_gt_threshold   delta^(m)_{floor/ceil(N_m/2)+1} > 1 + (qN_m/(2(q-1)) - 2) r
      small_class_half_gt       N_l > 1  =>  delta^(l)_{floor/ceil(N_l/2)+1} > qN_m r / (2(q-1))
      single_small_leader       N_l = 1, 2m(q-1) >= qlr  =>  delta^(l)_1 > qN_m r / (2(q-1))
      single_small_leader_r3    N_l = 1, r <= 3  =>  same conclusion
      unit_class_ceil           {1,m}, N_1 >= 2  =>  delta^(1)_{ceil(N_1/2)+1} > delta^(m)_{ceil(N_m/2)}
      unit_class_floor          {1,m}, N_1 even or r <= 2  =>  delta^(1)_{floor(N_1/2)+1} > delta^(m)_{floor(N_m/2)}
    """
    table = _table(source)
    params = table.params
    l, m = table.two_classes()
    q, r = params.q, params.r
    Nl, Nm = table.counts[l], table.counts[m]
    dl, dm = table.by_size[l], table.by_size[m]

    def at(lst, k):
        return lst[k - 1] if 1 <= k <= len(lst) else None

    out = []
    # 2(q-1)(delta - 1) > (q N_m - 4(q-1)) r
    for tag, k in (("floor", Nm // 2 + 1), ("ceil", ceil_div(Nm, 2) + 1)):
        d = at(dm, k)
        concl = None if d is None else 2 * (q - 1) * (d - 1) > (q * Nm - 4 * (q - 1)) * r
        out.append(Verdict(f"upper_half_gt_threshold[{tag}]", Nm >= 1, concl, d, f"1+({q}*{Nm}/(2*{q - 1})-2)*{r}"))

    rhs = f"{q}*{Nm}*{r}/(2*{q - 1})"

    def beats(d):
        return None if d is None else 2 * (q - 1) * d > q * Nm * r

    for tag, k in (("floor", Nl // 2 + 1), ("ceil", ceil_div(Nl, 2) + 1)):
        d = at(dl, k)
        out.append(Verdict(f"small_class_half_gt[{tag}]", Nl > 1, beats(d), d, rhs))
    d1 = at(dl, 1)
    out.append(Verdict("single_small_leader", Nl == 1 and 2 * m * (q - 1) >= q * l * r, beats(d1), d1, rhs))
    out.append(Verdict("single_small_leader_r3", Nl == 1 and r <= 3, beats(d1), d1, rhs))

    if l == 1:
        a = at(dl, ceil_div(Nl, 2) + 1)
        b = at(dm, ceil_div(Nm, 2))
        concl = None if a is None or b is None else a > b
        out.append(Verdict("unit_class_ceil", Nl >= 2, concl, a, b))
        a = at(dl, Nl // 2 + 1)
        k = Nm // 2
        b = 0 if k == 0 else at(dm, k)  # an empty half is vacuously below anything
        concl = None if a is None or b is None else a > b
        out.append(Verdict("unit_class_floor", Nl % 2 == 0 or r <= 2, concl, a, b))
    return out
