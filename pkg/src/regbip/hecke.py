"""Hecke operators T_p on q-expansions and eigenform checks for three weight-1 eta-quotients."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import eta
from .ntheory import is_prime, legendre
from .series import EtaProductSpec, QSeries, Ring, TruncationError, ZZ, eta_product


@dataclass(frozen=True)
class EtaForm:
    name: str
    deltas: tuple[int, int]
    level: int
    collapsed_disc: int  # (-N/p) agrees with (D/p) at odd p coprime to N
    support_modulus: int  # a(n) = 0 unless n = 1 mod this

    def quotient(self) -> eta.EtaQuotient:
        return eta.EtaQuotient(self.level, tuple((d, 1) for d in self.deltas))

    def spec(self) -> EtaProductSpec:
        # eta(a z) eta(b z) with a + b = 24 carries exactly one power of q
        return EtaProductSpec(tuple((d, 1) for d in self.deltas), sum(self.deltas) // 24)

    def series(self, trunc: int, ring: Ring = ZZ) -> QSeries:
        return eta_product(self.spec(), ring, trunc)


FORMS = {
    "eta3_21": EtaForm("eta3_21", (3, 21), 63, -7, 3),
    "eta4_20": EtaForm("eta4_20", (4, 20), 80, -5, 4),
    "eta8_16": EtaForm("eta8_16", (8, 16), 128, -2, 8),
}


@dataclass(frozen=True)
class HeckeContext:
    weight: int
    character: Callable[[int], int]
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.weight < 1:
            raise ValueError("weight must be positive")

    @property
    def chi_p(self) -> int:
        return self.character(self.p)


def form_character(form: EtaForm) -> Callable[[int], int]:
    """chi of the form: the collapsed Legendre symbol at odd primes, Kronecker otherwise.

    chi(d) = 0 when d shares a factor with the level.
    """
    full = eta.character_descriptor(form.quotient())

    def chi(d: int) -> int:
        if math.gcd(d, form.level) != 1:
            return 0
        if d > 2 and is_prime(d):
            return legendre(form.collapsed_disc, d)
        return full(d)

    return chi


def context_for(form: EtaForm, p: int) -> HeckeContext:
    return HeckeContext(int(eta.weight(form.quotient())), form_character(form), p)


def apply_tp(a: QSeries, ctx: HeckeContext, trunc: int | None = None) -> QSeries:
    """b(n) = a(pn) + chi(p) p^(k-1) a(n/p) for n <= trunc."""
    p = ctx.p
    if trunc is None:
        trunc = a.trunc // p
    if p * trunc > a.trunc:
        raise TruncationError(f"T_{p} to {trunc} needs a to {p * trunc}, have {a.trunc}")
    c = a.coeffs
    factor = ctx.chi_p * p ** (ctx.weight - 1)
    head = c[: p * trunc + 1 : p].copy()
    if c.dtype == object:
        back = np.empty(trunc + 1, dtype=object)
        back[:] = 0
    else:
        back = np.zeros(trunc + 1, dtype=c.dtype)
    back[::p] = c[: trunc // p + 1]
    if a.ring.modulus is not None:
        m = a.ring.modulus
        return QSeries((head + (factor % m) * back) % m, a.ring)
    return QSeries(head + factor * back, a.ring)


@dataclass(frozen=True)
class EigenResult:
    is_eigen: bool
    lam: int
    witness: int | None = None

    def to_json(self):
        out = {"verdict": "eigen" if self.is_eigen else "not_eigen", "lambda": self.lam}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def eigen_check(a: QSeries, ctx: HeckeContext, bound: int, level: int | None = None) -> EigenResult:
    """Test T_p a = a(p) a on coefficients 0..bound."""
    if a[1] != 1 or a[0] != 0:
        raise ValueError("eigen_check needs a normalized q-expansion (a(0)=0, a(1)=1)")
    if level is not None and math.gcd(ctx.p, level) != 1:
        raise ValueError(f"p={ctx.p} divides the level {level}")
    if a.trunc < ctx.p * bound:
        raise TruncationError(f"bound {bound} with p={ctx.p} needs trunc {ctx.p * bound}")
    lam = a[ctx.p]
    image = apply_tp(a, ctx, bound)
    target = a.truncate(bound) * lam
    if image == target:
        return EigenResult(True, lam)
    diff = np.flatnonzero(image.coeffs != target.coeffs)
    return EigenResult(False, lam, int(diff[0]))
