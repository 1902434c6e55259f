"""Upper-numbering ramification data for inertia groups Z/p^r x| Z/m.

A totally ramified extension of a local field with such a Galois group and
cyclic wild part is determined by its r positive upper jumps
u_1 < ... < u_r.  This module decides which jump sequences can occur
(conditions (a)-(d) below), converts between upper and lower numbering
with the two piecewise-linear Herbrand maps, evaluates the ramification
divisor degree and the genus of a cover with those local invariants, and
enumerates admissible sequences exactly.

A sequence is admissible for I = (p, r, m, m_I) when

  (a) every u_i lies in (1/m) N;
  (b) gcd(m, m u_1) = m / m_I;
  (c) p does not divide m u_1 and, for i > 1, either u_i = p u_{i-1} or
      both u_i > p u_{i-1} and p does not divide m u_i;
  (d) m u_i = m u_1 (mod m) for every i.

For lower jumps (h_1, ..., h_r) the group order along the filtration is
m p^r at 0 and p^(r-i+1) on (h_{i-1}, h_i], which forces the slopes of the
Herbrand map: u_1 = h_1 / m and u_i = u_{i-1} + (h_i - h_{i-1}) / (m p^(i-1)).

With deg(R) = m p^r - 1 + (p-1) m (u_1 + p u_2 + ... + p^(r-1) u_r), a
cover with group order N and these local invariants at one branch point
has genus 1 - N + N deg(R) / (2 m p^r).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactmath import format_rational, parse_rational, vp
from .psl2 import InertiaType, group_params, inertia_candidates


@dataclass(frozen=True)
class JumpSequence:
    """Strictly increasing positive exact rationals (u_1, ..., u_r)."""

    jumps: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.jumps:
            raise ValueError("a jump sequence has at least one jump")
        values = tuple(Fraction(u) for u in self.jumps)
        if any(u <= 0 for u in values):
            raise ValueError(f"jumps must be positive: {values}")
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValueError(f"jumps must be strictly increasing: {values}")
        object.__setattr__(self, "jumps", values)

    @classmethod
    def of(cls, *values) -> "JumpSequence":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def from_strings(cls, texts) -> "JumpSequence":
        return cls(tuple(parse_rational(t) for t in texts))

    def __len__(self):
        return len(self.jumps)

    def __getitem__(self, i):
        return self.jumps[i]

    def __iter__(self):
        return iter(self.jumps)

    def to_strings(self) -> list[str]:
        return [format_rational(u) for u in self.jumps]

    def __str__(self):
        return "(" + ", ".join(self.to_strings()) + ")"


@dataclass(frozen=True)
class RamificationFiltration:
    """A jump sequence tagged with its numbering convention.

    Upper jumps live on the grid (1/m) N; lower jumps are positive
    integers.  Conversion methods delegate to the Herbrand maps below.
    """

    numbering: str  # "lower" | "upper"
    jumps: "JumpSequence"
    inertia: InertiaType

    def __post_init__(self):
        if self.numbering not in ("lower", "upper"):
            raise ValueError(f"unknown numbering {self.numbering!r}")
        if len(self.jumps) != self.inertia.r:
            raise ValueError("jump count does not match the wild exponent r")
        if self.numbering == "upper":
            bad = [u for u in self.jumps if (self.inertia.m * u).denominator != 1]
            if bad:
                raise ValueError(f"upper jumps must lie in (1/m) N; offending {bad[0]}")
        else:
            bad = [h for h in self.jumps if h.denominator != 1]
            if bad:
                raise ValueError(f"lower jumps must be integers; offending {bad[0]}")

    def to_upper(self) -> "RamificationFiltration":
        if self.numbering == "upper":
            return self
        return RamificationFiltration(
            "upper", upper_from_lower(self.inertia, list(self.jumps)), self.inertia
        )

    def to_lower(self) -> "RamificationFiltration":
        if self.numbering == "lower":
            return self
        return RamificationFiltration(
            "lower", lower_from_upper(self.inertia, self.jumps), self.inertia
        )


@dataclass(frozen=True)
class ConditionResult:
    name: str
    ok: bool | None  # None: not evaluated because (a) failed
    witness: str | None = None

    def to_dict(self) -> dict:
        status = "skipped" if self.ok is None else ("ok" if self.ok else "fail")
        out = {"condition": self.name, "status": status}
        if self.witness:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    conditions: tuple[ConditionResult, ...]

    @property
    def failed(self) -> str | None:
        for c in self.conditions:
            if c.ok is False:
                return c.name
        return None

    def to_dict(self) -> dict:
        return {
            "admissible": self.admissible,
            "failed": self.failed,
            "conditions": [c.to_dict() for c in self.conditions],
        }


def is_admissible(inertia: InertiaType, seq: JumpSequence) -> AdmissibilityVerdict:
    """Evaluate conditions (a)-(d) exactly; see the module docstring."""
    if len(seq) != inertia.r:
        raise ValueError(f"sequence length {len(seq)} does not match r = {inertia.r}")
    p, m, m_I = inertia.p, inertia.m, inertia.m_I
    scaled = [m * u for u in seq]

    bad_a = next((u for u in scaled if u.denominator != 1), None)
    cond_a = ConditionResult(
        "a", bad_a is None, None if bad_a is None else f"m*u = {format_rational(bad_a)}"
    )
    if bad_a is not None:
        conds = (cond_a,) + tuple(ConditionResult(x, None) for x in "bcd")
        return AdmissibilityVerdict(False, conds)

    n = [int(u) for u in scaled]
    g = gcd(m, n[0])
    cond_b = ConditionResult(
        "b", g == m // m_I, None if g == m // m_I else f"gcd({m}, {n[0]}) = {g} != {m // m_I}"
    )

    ok_c, wit_c = True, None
    if n[0] % p == 0:
        ok_c, wit_c = False, f"p | m*u_1 = {n[0]}"
    else:
        for i in range(1, len(seq)):
            if seq[i] == p * seq[i - 1]:
                continue
            if seq[i] > p * seq[i - 1] and n[i] % p != 0:
                continue
            ok_c = False
            if seq[i] < p * seq[i - 1]:
                wit_c = f"u_{i + 1} = {format_rational(seq[i])} < p*u_{i} = {format_rational(p * seq[i - 1])}"
            else:
                wit_c = f"p | m*u_{i + 1} = {n[i]} while u_{i + 1} > p*u_{i}"
            break
    cond_c = ConditionResult("c", ok_c, wit_c)

    bad_d = next((i for i in range(len(n)) if n[i] % m != n[0] % m), None)
    cond_d = ConditionResult(
        "d",
        bad_d is None,
        None if bad_d is None else f"m*u_{bad_d + 1} = {n[bad_d]} != {n[0]} (mod {m})",
    )

    conds = (cond_a, cond_b, cond_c, cond_d)
    return AdmissibilityVerdict(all(c.ok for c in conds), conds)


def _require_admissible(inertia: InertiaType, seq: JumpSequence, what: str):
    verdict = is_admissible(inertia, seq)
    if not verdict.admissible:
        raise ValueError(
            f"{what} needs an admissible sequence; {seq} fails condition ({verdict.failed})"
        )


def leq(seq: JumpSequence, other: JumpSequence) -> bool:
    """Componentwise partial order on sequences of equal length."""
    if len(seq) != len(other):
        raise ValueError("sequences of different lengths are not comparable")
    return all(a <= b for a, b in zip(seq, other))


def deformation_compatible(
    inertia: InertiaType, seq: JumpSequence, target: JumpSequence
) -> bool:
    """Whether target can replace seq: admissible, componentwise >= and
    m u_1 = m u_1' (mod m)."""
    _require_admissible(inertia, seq, "deformation_compatible")
    if len(target) != len(seq):
        raise ValueError("target sequence has the wrong length")
    if not is_admissible(inertia, target).admissible:
        return False
    if not leq(seq, target):
        return False
    m = inertia.m
    return (m * seq[0] - m * target[0]) % m == 0


def divisor_degree(inertia: InertiaType, seq: JumpSequence) -> int:
    """deg(R) = m p^r - 1 + (p-1) m sum(p^(i-1) u_i), an exact integer."""
    _require_admissible(inertia, seq, "divisor_degree")
    p, m, r = inertia.p, inertia.m, inertia.r
    total = Fraction(m * p**r - 1)
    acc = Fraction(0)
    for i, u in enumerate(seq):
        acc += p**i * u
    total += (p - 1) * m * acc
    if total.denominator != 1:
        raise RuntimeError(
            f"ramification divisor degree {total} is not integral; "
            "an inadmissible sequence slipped through"
        )
    return int(total)


@dataclass(frozen=True)
class GenusResult:
    genus: int
    divisor_degree: int
    realizable: bool  # negative genus cannot come from a curve

    def to_dict(self) -> dict:
        return {
            "genus": self.genus,
            "divisor_degree": self.divisor_degree,
            "realizable": self.realizable,
        }


def genus(group_order: int, inertia: InertiaType, seq: JumpSequence) -> GenusResult:
    """Genus 1 - N + N deg(R) / (2 m p^r) of a one-branch-point cover.

    Negative output is data, not an error: it flags (I, jumps, N)
    combinations that no curve realizes.  A non-integral value is an
    incompatibility between the inertia shape and the group order and
    raises.
    """
    if group_order < 1:
        raise ValueError("group order must be positive")
    p, m, r = inertia.p, inertia.m, inertia.r
    if group_order % p**r != 0:
        raise ValueError(
            f"incompatible: p^r = {p**r} does not divide the group order {group_order}"
        )
    deg = divisor_degree(inertia, seq)
    value = 1 - group_order + Fraction(group_order * deg, 2 * m * p**r)
    if value.denominator != 1:
        raise ValueError(
            f"non-integral genus {value}: inertia {inertia.label()} is incompatible "
            f"with group order {group_order}"
        )
    g = int(value)
    return GenusResult(genus=g, divisor_degree=deg, realizable=g >= 0)


def upper_from_lower(inertia: InertiaType, lower) -> JumpSequence:
    """Apply the Herbrand map to lower jumps (positive integers).

    Slope is 1/m up to h_1 and 1/(m p^(i-1)) on (h_{i-1}, h_i].
    """
    values = [Fraction(h) for h in lower]
    if len(values) != inertia.r:
        raise ValueError(f"expected {inertia.r} lower jumps, got {len(values)}")
    if any(h.denominator != 1 or h <= 0 for h in values):
        raise ValueError(f"lower jumps must be positive integers: {values}")
    if any(a >= b for a, b in zip(values, values[1:])):
        raise ValueError(f"lower jumps must be strictly increasing: {values}")
    if int(values[0]) % inertia.p == 0:
        raise ValueError(f"first lower jump {values[0]} must be prime to p")
    p, m = inertia.p, inertia.m
    out = [values[0] / m]
    for i in range(1, len(values)):
        out.append(out[-1] + (values[i] - values[i - 1]) / (m * p**i))
    return JumpSequence(tuple(out))


def lower_from_upper(inertia: InertiaType, seq: JumpSequence) -> JumpSequence:
    """Exact inverse of upper_from_lower; input must be admissible."""
    _require_admissible(inertia, seq, "lower_from_upper")
    p, m = inertia.p, inertia.m
    out = [m * seq[0]]
    for i in range(1, len(seq)):
        out.append(out[-1] + m * p**i * (seq[i] - seq[i - 1]))
    if any(h.denominator != 1 for h in out):
        raise RuntimeError(f"non-integral lower jumps {out} from an admissible sequence")
    return JumpSequence(tuple(out))


def tame_base_change(
    inertia: InertiaType, seq: JumpSequence, new_m: int
) -> tuple[InertiaType, JumpSequence]:
    """Pull back along a tame cover of degree m/new_m totally ramified at
    the branch point: the tame part drops to new_m, the action order to its
    image, and every upper jump scales by m/new_m."""
    if new_m < 1 or inertia.m % new_m != 0:
        raise ValueError(f"new tame part {new_m} does not divide m = {inertia.m}")
    _require_admissible(inertia, seq, "tame_base_change")
    d = inertia.m // new_m
    new_m_I = inertia.m_I // gcd(inertia.m_I, d)
    new_inertia = InertiaType(p=inertia.p, r=inertia.r, m=new_m, m_I=new_m_I)
    new_seq = JumpSequence(tuple(u * d for u in seq))
    verdict = is_admissible(new_inertia, new_seq)
    if not verdict.admissible:
        raise RuntimeError(
            f"tame base change produced an inadmissible sequence (condition {verdict.failed})"
        )
    return new_inertia, new_seq


def enumerate_admissible(inertia: InertiaType, bound) -> list[JumpSequence]:
    """All admissible sequences with u_r <= bound, lexicographic in
    (m u_1, ..., m u_r).  Complete by construction; testable against a
    naive filter over the grid (1/m) Z."""
    bound = Fraction(bound)
    p, m, r, m_I = inertia.p, inertia.m, inertia.r, inertia.m_I
    top = int(m * bound)  # n_r <= top
    out: list[JumpSequence] = []

    def extend(prefix: list[int]):
        i = len(prefix)  # choosing n_{i+1}
        cap = top // p ** (r - i - 1)
        if i == 0:
            for n1 in range(1, cap + 1):
                if n1 % p != 0 and gcd(m, n1) == m // m_I:
                    extend([n1])
            return
        if i == r:
            out.append(JumpSequence(tuple(Fraction(n, m) for n in prefix)))
            return
        base = prefix[0] % m
        lo = p * prefix[-1]
        if lo <= cap:
            if lo % m != base:
                raise RuntimeError("p-multiple branch broke the residue condition")
            extend(prefix + [lo])
        for n in range(lo + 1, cap + 1):
            if n % p != 0 and n % m == base:
                extend(prefix + [n])

    if top >= 1:
        extend([])
    return out


def base_sigma(inertia: InertiaType, ell: int) -> JumpSequence | None:
    """Smallest known realizable jump sequence for a candidate inertia shape.

    D_p gives (3/2); Z/p gives (2) when ell = +-1 (mod 8) and (3)
    otherwise.  For every other candidate the minimal sequence is not
    constructively known and None is returned, never a guess.
    """
    gp = group_params(inertia.p, ell)
    if inertia not in inertia_candidates(gp):
        raise ValueError(
            f"{inertia.label()} is not an inertia candidate for (p, ell) = ({inertia.p}, {ell})"
        )
    if inertia.r == 1 and inertia.m == 2:
        return JumpSequence.of(Fraction(3, 2))
    if inertia.r == 1 and inertia.m == 1:
        return JumpSequence.of(2 if ell % 8 in (1, 7) else 3)
    return None
