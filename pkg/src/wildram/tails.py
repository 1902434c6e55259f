"""Tail configurations and brute generation checks in small groups.

The contraction constraint for a three-point cover of the line with bad
reduction says the tail invariants satisfy

    1 = sum over new tails (sigma - 1) + sum over primitive tails (sigma),

with every sigma in the grid (1/m_G) Z, new tails at least 1 + 1/m_G and
primitive tails at least 1/m_G.  Each summand is at least 1/m_G, so a
configuration has at most m_G tails; the solver enumerates the whole
finite grid and is therefore complete.

The lower bound sigma >= p^(r-1) / m_G used by infer_inertia is stated in
the literature for m_G = 2; for any other m_G it is an extrapolation and
the result says so.

Small groups Z/p^r x| Z/m are realized on residue pairs, the tame factor
acting through the smallest unit of the requested order mod p^r (reported
for reproducibility), and generation questions are settled by exhaustive
closure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

from .exactmath import format_rational, is_prime, vp

GROUP_SIZE_LIMIT = 10_000
SEARCH_LIMIT = 2_000_000


@dataclass(frozen=True)
class TailDatum:
    kind: str  # "new" | "primitive"
    sigma: Fraction

    def __post_init__(self):
        if self.kind not in ("new", "primitive"):
            raise ValueError(f"unknown tail kind {self.kind!r}")
        object.__setattr__(self, "sigma", Fraction(self.sigma))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "sigma": format_rational(self.sigma)}


@dataclass(frozen=True)
class TailConfig:
    """Multiset of tails satisfying the constraint sum exactly."""

    m_G: int
    tails: tuple[TailDatum, ...]

    def __post_init__(self):
        if self.m_G < 1:
            raise ValueError("m_G must be positive")
        tails = tuple(sorted(self.tails, key=lambda t: (t.kind, t.sigma)))
        object.__setattr__(self, "tails", tails)
        step = Fraction(1, self.m_G)
        total = Fraction(0)
        for t in tails:
            if (t.sigma / step).denominator != 1:
                raise ValueError(f"sigma {t.sigma} is not a multiple of 1/{self.m_G}")
            floor = 1 + step if t.kind == "new" else step
            if t.sigma < floor:
                raise ValueError(f"{t.kind} tail sigma {t.sigma} is below {floor}")
            total += t.sigma - 1 if t.kind == "new" else t.sigma
        if total != 1:
            raise ValueError(f"tail invariants sum to {total}, not 1")

    def to_dict(self) -> list[dict]:
        return [t.to_dict() for t in self.tails]


def solve_tail_configs(
    m_G: int,
    n_prim: int,
    n_new_min: int = 0,
    n_new_max: int | None = None,
    sigma_bound=None,
) -> list[TailConfig]:
    """All configurations with exactly n_prim primitive tails and a number
    of new tails in [n_new_min, n_new_max].  sigma_bound, when given, caps
    individual invariants (the equation already caps them at 2)."""
    if m_G < 1 or n_prim < 0 or n_new_min < 0:
        raise ValueError("counts must be nonnegative and m_G positive")
    step = Fraction(1, m_G)
    cap = Fraction(sigma_bound) if sigma_bound is not None else Fraction(2)
    new_hi = m_G if n_new_max is None else min(n_new_max, m_G)
    out = []
    for n_new in range(n_new_min, new_hi + 1):
        if n_prim + n_new > m_G:
            continue  # each term >= 1/m_G, so more tails cannot sum to 1
        # nondecreasing choices per kind avoid duplicate multisets
        new_vals = []
        v = 1 + step
        while v <= cap and v - 1 <= 1:
            new_vals.append(v)
            v += step
        prim_vals = []
        v = step
        while v <= cap and v <= 1:
            prim_vals.append(v)
            v += step
        for news in _nondecreasing(new_vals, n_new):
            partial = sum((s - 1 for s in news), Fraction(0))
            if partial > 1:
                continue
            for prims in _nondecreasing(prim_vals, n_prim):
                if partial + sum(prims, Fraction(0)) == 1:
                    tails = tuple(TailDatum("new", s) for s in news) + tuple(
                        TailDatum("primitive", s) for s in prims
                    )
                    out.append(TailConfig(m_G=m_G, tails=tails))
    return sorted(out, key=lambda c: [(t.kind, t.sigma) for t in c.tails])


def _nondecreasing(values, count):
    if count == 0:
        yield ()
        return
    for i, v in enumerate(values):
        for rest in _nondecreasing(values[i:], count - 1):
            yield (v,) + rest


@dataclass(frozen=True)
class InertiaInference:
    allowed_r: tuple[int, ...]
    abelian_possible: bool
    bound_extrapolated: bool  # True when m_G != 2

    def to_dict(self) -> dict:
        return {
            "allowed_r": list(self.allowed_r),
            "abelian_possible": self.abelian_possible,
            "bound_extrapolated": self.bound_extrapolated,
        }


def infer_inertia(sigma, p: int, m_G: int) -> InertiaInference:
    """Wild exponents r compatible with a tail invariant sigma.

    r is allowed when p^(r-1)/m_G <= sigma.  A non-integral sigma rules
    out abelian inertia (an abelian filtration has integer jumps)."""
    sigma = Fraction(sigma)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if m_G < 1:
        raise ValueError("m_G must be positive")
    allowed = []
    r = 1
    while Fraction(p ** (r - 1), m_G) <= sigma:
        allowed.append(r)
        r += 1
    return InertiaInference(
        allowed_r=tuple(allowed),
        abelian_possible=sigma.denominator == 1,
        bound_extrapolated=m_G != 2,
    )


# ---------------------------------------------------------------------------
# Small concrete groups


class SmallGroup:
    """Finite group on hashable labels with explicit multiplication."""

    def __init__(self, name: str, elements, mul, identity):
        self.name = name
        self.elements = tuple(elements)
        self._mul = mul
        self.identity = identity
        self._orders: dict = {}
        if identity not in set(self.elements):
            raise ValueError("identity is not an element")

    @property
    def order(self) -> int:
        return len(self.elements)

    def multiply(self, a, b):
        return self._mul(a, b)

    def inverse(self, a):
        acc = a
        prev = a
        while acc != self.identity:
            prev = acc
            acc = self._mul(acc, a)
        return prev if a != self.identity else self.identity

    def order_of(self, a) -> int:
        if a not in self._orders:
            k = 1
            acc = a
            while acc != self.identity:
                acc = self._mul(acc, a)
                k += 1
            self._orders[a] = k
        return self._orders[a]

    def closure(self, gens) -> frozenset:
        members = {self.identity}
        frontier = [self.identity]
        gens = list(dict.fromkeys(gens))
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self._mul(x, g)
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def generates(self, gens) -> bool:
        return len(self.closure(gens)) == self.order

    def __repr__(self):
        return f"{self.name} (order {self.order})"

    @classmethod
    def cyclic(cls, n: int) -> "SmallGroup":
        if n < 1:
            raise ValueError("cyclic group order must be positive")
        return cls(f"Z/{n}", range(n), lambda a, b: (a + b) % n, 0)

    @classmethod
    def semidirect(cls, p: int, r: int, m: int, m_I: int | None = None) -> "SmallGroup":
        """Z/p^r x| Z/m, the factor Z/m acting by the smallest unit of
        order m_I mod p^r.  m_I defaults to gcd(m, p - 1), the most
        faithful action available."""
        if not is_prime(p) or p == 2:
            raise ValueError(f"p = {p} must be an odd prime")
        if r < 1 or m < 1 or gcd(m, p) != 1:
            raise ValueError("need r >= 1 and m >= 1 prime to p")
        if m_I is None:
            m_I = gcd(m, p - 1)
        if m % m_I != 0 or (p - 1) % m_I != 0:
            raise ValueError(f"m_I = {m_I} must divide gcd(m, p - 1)")
        q = p**r
        if q * m > GROUP_SIZE_LIMIT:
            raise ValueError(f"group order {q * m} exceeds the limit {GROUP_SIZE_LIMIT}")
        unit = _smallest_unit_of_order(q, p, m_I)
        powers = [1] * m
        for b in range(1, m):
            powers[b] = powers[b - 1] * unit % q

        def mul(x, y):
            return ((x[0] + powers[x[1]] * y[0]) % q, (x[1] + y[1]) % m)

        if m == 1:
            name = f"Z/{q}"
        elif m == 2 and m_I == 2:
            name = f"D_{q}"
        else:
            name = f"Z/{q} x| Z/{m} (unit {unit})"
        group = cls(name, product(range(q), range(m)), mul, (0, 0))
        group.action_unit = unit
        return group


def _smallest_unit_of_order(q: int, p: int, m_I: int) -> int:
    if m_I == 1:
        return 1
    euler = q // p * (p - 1)
    for u in range(2, q):
        if u % p == 0:
            continue
        order = euler
        for f in set(_factorize(euler)):
            while order % f == 0 and pow(u, order // f, q) == 1:
                order //= f
        if order == m_I:
            return u
    raise ValueError(f"no unit of order {m_I} mod {q}")


def _factorize(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        while n % f == 0:
            out.append(f)
            n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _cyclic_representatives(group: SmallGroup, candidates) -> list:
    """One generator per distinct cyclic subgroup among the candidates."""
    seen = set()
    reps = []
    for x in candidates:
        sub = group.closure([x])
        if sub not in seen:
            seen.add(sub)
            reps.append(x)
    return reps


def generation_obstruction(
    r: int, m: int, vp_gen: int, p: int, m_I: int | None = None
) -> bool:
    """True when Z/p^r x| Z/m cannot be generated by one wild element (order
    divisible by p, with p-valuation at most vp_gen) together with one
    prime-to-p element.  Decided by exhaustive search over the concrete
    group.

    The wild generator must have order divisible by p: it stands for the
    image of an inertia generator whose index has positive p-valuation,
    and that p-part survives any prime-to-p quotient.  Dropping the
    divisibility requirement would let two order-2 elements slip in, and
    two reflections already generate every dihedral group.
    """
    if vp_gen < 0:
        raise ValueError("vp_gen must be nonnegative")
    group = SmallGroup.semidirect(p, r, m, m_I)
    wild = [
        x
        for x in group.elements
        if group.order_of(x) % p == 0 and vp(group.order_of(x), p) <= vp_gen
    ]
    tame = [y for y in group.elements if group.order_of(y) % p != 0]
    for x in _cyclic_representatives(group, wild):
        for y in _cyclic_representatives(group, tame):
            if group.generates([x, y]):
                return False
    return True


def branch_cycle_feasible(group: SmallGroup, branch_orders) -> bool:
    """Whether elements of exactly the given orders with product one can
    generate the group.  With two branch orders this forces a cyclic group
    and both orders equal to the group order."""
    if group.order > GROUP_SIZE_LIMIT:
        raise ValueError(f"group order {group.order} exceeds the limit {GROUP_SIZE_LIMIT}")
    orders = list(branch_orders)
    if not orders:
        raise ValueError("need at least one branch order")
    buckets = []
    for o in orders:
        bucket = [x for x in group.elements if group.order_of(x) == o]
        if not bucket:
            return False
        buckets.append(bucket)
    work = 1
    for b in buckets[:-1]:
        work *= len(b)
    if work > SEARCH_LIMIT:
        raise ValueError(f"search space {work} exceeds the limit {SEARCH_LIMIT}")
    last_order = orders[-1]
    for head in product(*buckets[:-1]):
        acc = group.identity
        for g in head:
            acc = group.multiply(acc, g)
        tail = group.inverse(acc)
        if group.order_of(tail) != last_order:
            continue
        if group.generates(list(head) + [tail]):
            return True
    return False


@dataclass(frozen=True)
class BranchData:
    """Branching indices (e_1, e_2, e_3) with p-valuations (0, v_2, v_3),
    v_2 < v_3; the shape produced by the class-triple recipe."""

    p: int
    indices: tuple[int, int, int]

    def __post_init__(self):
        v = self.valuations
        if not (v[0] == 0 < v[1] < v[2]):
            raise ValueError(f"valuations {v} are not of the shape 0 < v_2 < v_3")

    @property
    def valuations(self) -> tuple[int, int, int]:
        return tuple(vp(e, self.p) for e in self.indices)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "indices": list(self.indices),
            "valuations": list(self.valuations),
        }
