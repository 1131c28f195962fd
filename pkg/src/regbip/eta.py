"""Eta-quotient modularity data: level conditions, weight, character, cusp orders.

All arithmetic is exact (integers and Fractions).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import gmpy2

from .ntheory import divisors, factorize, is_prime


class LevelVerdict(enum.Enum):
    OK = "ok"
    FAILS_DELTA_SUM = "fails_delta_sum"
    FAILS_CODELTA_SUM = "fails_codelta_sum"


@dataclass(frozen=True)
class EtaQuotient:
    """``prod eta(delta z)^r`` on Gamma_0(level)."""

    level: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        acc: dict[int, int] = {}
        for d, r in self.factors:
            d, r = int(d), int(r)
            if d < 1:
                raise ValueError(f"delta must be positive, got {d}")
            if self.level % d:
                raise ValueError(f"delta {d} does not divide level {self.level}")
            if d in acc:
                raise ValueError(f"repeated delta {d}")
            acc[d] = r
        object.__setattr__(self, "factors", tuple(sorted((d, r) for d, r in acc.items() if r)))

    @classmethod
    def from_mapping(cls, level: int, factors: Mapping[int, int] | Iterable[tuple[int, int]]):
        """Like the constructor, but adds exponents of repeated deltas."""
        if isinstance(factors, Mapping):
            factors = factors.items()
        acc: dict[int, int] = {}
        for d, r in factors:
            acc[int(d)] = acc.get(int(d), 0) + int(r)
        return cls(level, tuple(acc.items()))

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)


def weight(eq: EtaQuotient) -> Fraction:
    return Fraction(sum(r for _, r in eq.factors), 2)


def check_level_conditions(eq: EtaQuotient) -> LevelVerdict:
    if sum(d * r for d, r in eq.factors) % 24:
        return LevelVerdict.FAILS_DELTA_SUM
    if sum((eq.level // d) * r for d, r in eq.factors) % 24:
        return LevelVerdict.FAILS_CODELTA_SUM
    return LevelVerdict.OK


@dataclass(frozen=True)
class CharacterDescriptor:
    """chi(d) = ((-1)^k s / d) with s = prod delta^r kept factored."""

    sign_exponent: int
    s_factors: tuple[tuple[int, int], ...]  # (prime, exponent), exponent may be negative

    def s_value(self) -> Fraction:
        out = Fraction(1)
        for p, e in self.s_factors:
            out *= Fraction(p) ** e
        return out

    def squarefree_discriminant(self) -> int:
        """(-1)^k times the primes of s with odd exponent; agrees with chi at coprime d."""
        D = -1 if self.sign_exponent % 2 else 1
        for p, e in self.s_factors:
            if e % 2:
                D *= p
        return D

    def __call__(self, d: int) -> int:
        if d < 1:
            raise ValueError("character is evaluated at positive integers")
        if any(d % p == 0 for p, _ in self.s_factors):
            raise ValueError(f"character is only evaluated at arguments coprime to s, got {d}")
        # squares and inverse squares of primes coprime to d contribute 1
        return int(gmpy2.kronecker(self.squarefree_discriminant(), d))

    def to_json(self):
        return {"sign_exponent": self.sign_exponent,
                "s_factors": [[p, e] for p, e in self.s_factors]}


def character_descriptor(eq: EtaQuotient) -> CharacterDescriptor:
    k = weight(eq)
    if k.denominator != 1:
        raise ValueError(f"weight {k} is not integral")
    acc: dict[int, int] = {}
    for d, r in eq.factors:
        for p, e in factorize(d):
            acc[p] = acc.get(p, 0) + e * r
    return CharacterDescriptor(int(k), tuple(sorted((p, e) for p, e in acc.items() if e)))


@dataclass(frozen=True)
class CuspOrderReport:
    c: int
    d: int
    order: Fraction

    def to_json(self):
        return {"c": self.c, "d": self.d, "order": str(self.order)}


def cusp_order(eq: EtaQuotient, c: int, d: int) -> Fraction:
    N = eq.level
    if d < 1 or N % d:
        raise ValueError(f"d = {d} does not divide N = {N}")
    if math.gcd(c, d) != 1:
        raise ValueError(f"gcd({c}, {d}) != 1")
    total = Fraction(0)
    for delta, r in eq.factors:
        total += Fraction(math.gcd(d, delta) ** 2 * r, math.gcd(d, N // d) * d * delta)
    return Fraction(N, 24) * total


@dataclass(frozen=True)
class HolomorphyVerdict:
    holomorphic: bool
    reports: tuple[CuspOrderReport, ...]

    @property
    def minimum(self) -> Fraction:
        return min(r.order for r in self.reports)

    @property
    def negative(self) -> tuple[CuspOrderReport, ...]:
        return tuple(r for r in self.reports if r.order < 0)

    @property
    def label(self) -> str:
        return "holomorphic_all_cusps" if self.holomorphic else "negative_at"


def holomorphy_verdict(eq: EtaQuotient) -> HolomorphyVerdict:
    reports = tuple(CuspOrderReport(1, d, cusp_order(eq, 1, d)) for d in divisors(eq.level))
    return HolomorphyVerdict(all(r.order >= 0 for r in reports), reports)


def analyze(eq: EtaQuotient) -> dict:
    """Everything the CLI reports about an eta-quotient, as JSON-ready data."""
    k = weight(eq)
    cond = check_level_conditions(eq)
    out = {
        "level": eq.level,
        "factors": [[d, r] for d, r in eq.factors],
        "weight": str(k),
        "conditions": cond.value,
        "character": None,
        "cusps": [],
        "verdict": None,
    }
    if k.denominator == 1:
        out["character"] = character_descriptor(eq).to_json()
    hv = holomorphy_verdict(eq)
    out["cusps"] = [{"d": r.d, "order": str(r.order)} for r in hv.reports]
    if cond is not LevelVerdict.OK:
        out["verdict"] = cond.value
    elif k.denominator != 1:
        out["verdict"] = "non_integral_weight"
    else:
        out["verdict"] = hv.label
    return out


@dataclass(frozen=True)
class FpmjSpec:
    p: int
    m: int
    j: int

    def __post_init__(self):
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if self.m < 1:
            raise ValueError("m must be positive")
        if math.gcd(self.p, self.m) != 1:
            raise ValueError(f"gcd(p, m) != 1 for p={self.p}, m={self.m}")
        if self.m > 1 and any(q < 5 for q, _ in factorize(self.m)):
            raise ValueError(f"prime factors of m must be >= 5, got m={self.m}")
        if self.j < 1:
            raise ValueError("j must be >= 1")

    @property
    def level(self) -> int:
        return 2**5 * 3**2 * self.p * self.m


def build_fpmj(spec: FpmjSpec) -> EtaQuotient:
    p, m, j = spec.p, spec.m, spec.j
    return EtaQuotient.from_mapping(spec.level, [(24, p ** (j + 1) + p - 2), (24 * m, 1), (24 * p, -p ** j)])


def lemma31_inequality(spec: FpmjSpec, d: int) -> tuple[Fraction, bool]:
    """The rescaled cusp order at d: positive multiple of the order, so signs agree."""
    N = spec.level
    if d < 1 or N % d:
        raise ValueError(f"d = {d} does not divide N = {N}")
    p, m, j = spec.p, spec.m, spec.j
    den = math.gcd(d, 24 * p) ** 2
    G1 = Fraction(math.gcd(d, 24) ** 2, den)
    G2 = Fraction(math.gcd(d, 24 * m) ** 2, den)
    L = (p ** (j + 1) + p - 2) * p * G1 + Fraction(p, m) * G2 - p ** j
    return L, L >= 0
