"""Exact arithmetic substrate shared by every other module.

Rationals are handled by ``fractions.Fraction`` from the standard library,
which already guarantees lowest-terms normal form, exact value equality and
unbounded integer parts.  This module adds the pieces the rest of the
package needs on top of that:

* p-adic valuation of nonzero integers,
* prime fields F_p and their quadratic extensions F_{p^2},
* univariate polynomials over F_p as exact coefficient tuples,
* Artin-Schreier reduction of such polynomials, i.e. rewriting modulo the
  image of w -> w^p - w until every positive term degree is prime to p.

The quadratic extension is realized as F_p[s]/(s^2 - n) where n is the
least quadratic nonresidue mod p; n is exposed so that derived data is
reproducible.  All values are immutable and all functions are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

NEG_INFINITY = float("-inf")


def is_prime(n: int) -> bool:
    """Trial-division primality test, adequate at desk scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> tuple[int, ...]:
    """Distinct prime divisors of n >= 1, ascending, by trial division."""
    if n < 1:
        raise ValueError(f"prime_factors expects a positive integer, got {n}")
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def vp(n: int, p: int) -> int:
    """Exact exponent of the prime p in the nonzero integer n."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if n == 0:
        raise ValueError("the p-adic valuation of 0 is undefined")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def parse_rational(text: str) -> Fraction:
    """Parse an exact rational written as 'n/d' or 'n'."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational value {text!r}") from exc


def format_rational(q: Fraction | int) -> str:
    """Serialize an exact rational as 'n/d', or 'n' when the value is integral."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=None)
def least_nonresidue(p: int) -> int:
    """Smallest quadratic nonresidue modulo an odd prime p."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"least_nonresidue needs an odd prime, got {p}")
    for n in range(2, p):
        if pow(n, (p - 1) // 2, p) == p - 1:
            return n
    raise RuntimeError(f"no nonresidue found mod {p}")  # unreachable for odd p


class FiniteField:
    """F_p (degree 1) or F_{p^2} = F_p(s) with s^2 = n (degree 2).

    Degree-2 elements are coordinate pairs a + b*s.  Two field objects
    compare equal when they have the same characteristic and degree, so the
    quadratic model is canonical.
    """

    __slots__ = ("p", "degree", "nonresidue", "order")

    def __init__(self, p: int, degree: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if degree not in (1, 2):
            raise ValueError(f"only degree 1 or 2 supported, got {degree}")
        if degree == 2 and p == 2:
            raise ValueError("the quadratic model s^2 = n needs odd p")
        self.p = p
        self.degree = degree
        self.nonresidue = least_nonresidue(p) if degree == 2 else None
        self.order = p**degree

    def element(self, a: int, b: int = 0) -> "FieldElement":
        if self.degree == 1 and b % self.p != 0:
            raise ValueError("degree-1 field has no s coordinate")
        return FieldElement(self, a % self.p, b % self.p)

    __call__ = element

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def elements(self):
        """All field elements, (a, b) lexicographic with a as the major key."""
        bs = range(self.p) if self.degree == 2 else (0,)
        for a in range(self.p):
            for b in bs:
                yield FieldElement(self, a, b)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.degree == other.degree
        )

    def __hash__(self):
        return hash((self.p, self.degree))

    def __repr__(self):
        if self.degree == 1:
            return f"F_{self.p}"
        return f"F_{self.p}^2 (s^2 = {self.nonresidue})"


class FieldElement:
    """Immutable element a + b*s of a FiniteField."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: FiniteField, a: int, b: int):
        self.field = field
        self.a = a
        self.b = b

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        return (
            isinstance(other, FieldElement)
            and self.field == other.field
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.field, self.a, self.b))

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(
            self.field, (self.a + other.a) % self.field.p, (self.b + other.b) % self.field.p
        )

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a % self.field.p, -self.b % self.field.p)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, self.a * other.a % p, 0)
        n = self.field.nonresidue
        a = (self.a * other.a + n * self.b * other.b) % p
        b = (self.a * other.b + self.b * other.a) % p
        return FieldElement(self.field, a, b)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        p = self.field.p
        if self.field.degree == 1:
            return FieldElement(self.field, pow(self.a, p - 2, p), 0)
        # (a + bs)^-1 = (a - bs) / (a^2 - n b^2); the norm is nonzero.
        n = self.field.nonresidue
        norm = (self.a * self.a - n * self.b * self.b) % p
        inv = pow(norm, p - 2, p)
        return FieldElement(self.field, self.a * inv % p, -self.b * inv % p)

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def frobenius(self) -> "FieldElement":
        """x -> x^p.  On the quadratic model this is a + bs -> a - bs."""
        if self.field.degree == 1:
            return self
        return FieldElement(self.field, self.a, -self.b % self.field.p)

    def pth_root(self) -> "FieldElement":
        """Inverse of Frobenius; over F_p and F_{p^2} this is Frobenius itself."""
        return self.frobenius()

    def multiplicative_order(self) -> int:
        if self.is_zero:
            raise ValueError("zero has no multiplicative order")
        n = self.field.order - 1
        order = n
        for q in prime_factors(n):
            while order % q == 0 and (self ** (order // q)) == self.field.one():
                order //= q
        return order

    def __repr__(self):
        if self.field.degree == 1 or self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*s"
        return f"{self.a} + {self.b}*s"


@dataclass(frozen=True)
class FpPolynomial:
    """Univariate polynomial over F_p.

    Coefficients are stored low degree first with a nonzero leading entry;
    the zero polynomial is the empty tuple and its degree is the marker
    NEG_INFINITY.
    """

    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"characteristic {self.p} is not prime")
        c = [x % self.p for x in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def zero(cls, p: int) -> "FpPolynomial":
        return cls(p, ())

    @classmethod
    def monomial(cls, p: int, coeff: int, degree: int) -> "FpPolynomial":
        if degree < 0:
            raise ValueError("monomial degree must be nonnegative")
        return cls(p, (0,) * degree + (coeff,))

    @classmethod
    def from_terms(cls, p: int, terms) -> "FpPolynomial":
        """Build from a {degree: coefficient} mapping."""
        if not terms:
            return cls.zero(p)
        top = max(terms)
        coeffs = [0] * (top + 1)
        for d, c in terms.items():
            if d < 0:
                raise ValueError("negative degree in term mapping")
            coeffs[d] = c
        return cls(p, tuple(coeffs))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INFINITY

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        if self.is_zero:
            raise ValueError("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def terms(self):
        """Yield (degree, coefficient) pairs, ascending, nonzero only."""
        for d, c in enumerate(self.coeffs):
            if c:
                yield d, c

    def _check_same(self, other: "FpPolynomial"):
        if not isinstance(other, FpPolynomial) or other.p != self.p:
            raise ValueError("polynomials over different prime fields")

    def __add__(self, other: "FpPolynomial") -> "FpPolynomial":
        self._check_same(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return FpPolynomial(self.p, tuple((x + y) % self.p for x, y in zip(a, b)))

    def __neg__(self) -> "FpPolynomial":
        return FpPolynomial(self.p, tuple(-x % self.p for x in self.coeffs))

    def __sub__(self, other: "FpPolynomial") -> "FpPolynomial":
        return self + (-other)

    def __mul__(self, other: "FpPolynomial") -> "FpPolynomial":
        self._check_same(other)
        if self.is_zero or other.is_zero:
            return FpPolynomial.zero(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] = (out[i + j] + a * b) % self.p
        return FpPolynomial(self.p, tuple(out))

    def __pow__(self, k: int) -> "FpPolynomial":
        if k < 0:
            raise ValueError("negative polynomial power")
        result = FpPolynomial.monomial(self.p, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: int) -> "FpPolynomial":
        return FpPolynomial(self.p, tuple(x * c % self.p for x in self.coeffs))

    def pth_power(self) -> "FpPolynomial":
        """Frobenius image g(x)^p = g(x^p); coefficients are fixed over F_p."""
        if self.is_zero:
            return self
        out = [0] * ((len(self.coeffs) - 1) * self.p + 1)
        for d, c in self.terms():
            out[d * self.p] = c
        return FpPolynomial(self.p, tuple(out))

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for d, c in sorted(self.terms(), reverse=True):
            if d == 0:
                parts.append(str(c))
            elif d == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{d}" if c == 1 else f"{c}*x^{d}")
        return " + ".join(parts)


def as_reduce_with_witness(g: FpPolynomial) -> tuple[FpPolynomial, FpPolynomial]:
    """Canonical representative of g modulo the image of w -> w^p - w.

    Repeatedly rewrites a term c*x^(kp) with k >= 1 as c*x^k; over F_p the
    p-th root of a coefficient is the coefficient itself.  Returns
    (reduced, w) with g - (w^p - w) = reduced.  Every positive term degree
    of the reduced polynomial is prime to p, so its degree is prime to p or
    it is constant.
    """
    p = g.p
    if p == 2:
        raise ValueError("reduction is defined for odd characteristic")
    work = {d: c for d, c in g.terms()}
    shift: dict[int, int] = {}
    while True:
        reducible = [d for d in work if d >= p and d % p == 0]
        if not reducible:
            break
        d = max(reducible)
        c = work.pop(d)
        k = d // p
        shift[k] = (shift.get(k, 0) + c) % p
        nc = (work.get(k, 0) + c) % p
        if nc:
            work[k] = nc
        else:
            work.pop(k, None)
    reduced = FpPolynomial.from_terms(p, work)
    witness = FpPolynomial.from_terms(p, shift)
    return reduced, witness


def as_reduce(g: FpPolynomial) -> FpPolynomial:
    """Artin-Schreier reduction; see as_reduce_with_witness."""
    return as_reduce_with_witness(g)[0]
