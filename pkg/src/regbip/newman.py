"""Newman's coefficient recurrences, checked exactly over the integers.

Identity I, for c(n) the coefficients of an eta-product with sigma = sum of delta * r:

    c(pn + S) = c(S) c(n) - mult(p) * c((n - S)/p),     S = sigma (p - 1)/24

Identity II, for a(n) the coefficients of (q;q)^r (q^Q;q^Q)^s:

    a(n p^2 + D) = g(n) a(n) - p^(2e-2) a((n - D)/p^2)
    g(n) = w - (theta/p) p^(e-3/2) ((n - D)/p)

with e = (r+s)/2, D = (r + sQ)(p^2 - 1)/24 and w calibrated at n = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .ntheory import is_prime, legendre
from .report import Collector, VerificationReport, hypothesis, stopwatch
from .series import EtaProductSpec, QSeries, TruncationError, ZZ, eta_product


def _mult_f1f7(p):
    return (-1) ** ((p - 1) // 2) * legendre(7, p)


# series id -> (eta factors, class modulus for p = 1 mod ..., multiplier, human form)
NEWMAN_I_SERIES = {
    "f1f7": (((1, 1), (7, 1)), 6, _mult_f1f7, "(-1)^((p-1)/2) (7/p)"),
    "f1f5": (((1, 1), (5, 1)), 4, lambda p: legendre(5, p), "(5/p)"),
    "f1f2": (((1, 1), (2, 1)), 8, lambda p: legendre(2, p), "(2/p)"),
    "f1^5f2": (((1, 5), (2, 1)), 24, lambda p: p ** 2, "p^2"),
    "f1^9f2": (((1, 9), (2, 1)), 24, lambda p: p ** 4, "p^4"),
    "f1^11f2": (((1, 11), (2, 1)), 24, lambda p: p ** 5, "p^5"),
}

NEWMAN_I_GRID = {
    "f1f7": (7, 13, 19),
    "f1f5": (5, 13, 17),
    "f1f2": (17, 41),
    "f1^5f2": (73, 97),
    "f1^9f2": (73, 97),
    "f1^11f2": (73, 97),
}


@dataclass(frozen=True)
class NewmanIParams:
    series_id: str
    p: int

    def __post_init__(self):
        if self.series_id not in NEWMAN_I_SERIES:
            raise ValueError(f"unknown series {self.series_id!r}; choose from {sorted(NEWMAN_I_SERIES)}")
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"p must be an odd prime, got {self.p}")
        mod = self.class_modulus
        if self.p % mod != 1:
            raise ValueError(f"{self.series_id} needs p = 1 (mod {mod}), got p = {self.p}")

    @property
    def factors(self):
        return NEWMAN_I_SERIES[self.series_id][0]

    @property
    def class_modulus(self) -> int:
        return NEWMAN_I_SERIES[self.series_id][1]

    @property
    def sigma(self) -> int:
        return sum(d * r for d, r in self.factors)

    @property
    def shift(self) -> int:
        return self.sigma * (self.p - 1) // 24

    @property
    def multiplier(self) -> int:
        return NEWMAN_I_SERIES[self.series_id][2](self.p)

    def hypothesis_form(self) -> tuple[int, int]:
        """(A, B) such that the back term vanishes exactly when p does not divide A n + B."""
        g = math.gcd(24, self.sigma)
        return 24 // g, self.sigma // g

    def series(self, trunc: int) -> QSeries:
        return eta_product(EtaProductSpec(self.factors), ZZ, trunc)

    def to_json(self):
        return {"series": self.series_id, "p": self.p}


def newman1_verify(params: NewmanIParams, trunc: int, reduced: bool = False,
                   series: QSeries | None = None) -> VerificationReport:
    """Check identity I for every n with p n + S <= trunc.

    With ``reduced`` the back term is dropped and n with p | (A n + B) are
    skipped, which checks the consequence c(pn + S) = c(S) c(n).
    """
    p, S = params.p, params.shift
    if trunc < p + S:
        raise TruncationError(f"trunc {trunc} too small for p={p}")
    with stopwatch() as t:
        c = series if series is not None else params.series(trunc)
        if c.trunc < trunc:
            raise TruncationError(f"series known to {c.trunc}, need {trunc}")
        cS, mult = c[S], params.multiplier
        A, B = params.hypothesis_form()
        n_max = (trunc - S) // p
        col = Collector()
        for n in range(n_max + 1):
            lhs = c[p * n + S]
            if reduced:
                if (A * n + B) % p == 0:
                    col.skipped += 1
                    continue
                rhs = cS * c[n]
            else:
                rhs = cS * c[n] - mult * c[Fraction(n - S, p)]
            col.check(n, p * n + S, lhs, rhs, lhs == rhs)
    family = "newman1" + ("_reduced" if reduced else "")
    hyps = [hypothesis(f"p = 1 (mod {params.class_modulus})", True)]
    if reduced:
        hyps.append(hypothesis(f"per n: p does not divide {A}n+{B}", True,
                               f"{col.skipped} values of n excluded"))
    notes = [f"shift S = {S}, c(S) = {cS}, multiplier = {mult}"]
    return col.report(family, params.to_json(), (0, n_max), hyps, notes, t[0])


# -- identity II ----------------------------------------------------------------

@dataclass(frozen=True)
class NewmanIIParams:
    q: int
    r: int
    s: int
    p: int

    def __post_init__(self):
        if self.r == 0 or self.s == 0:
            raise ValueError("r and s must be nonzero")
        if (self.r - self.s) % 2 == 0:
            raise ValueError("need r and s of different parity")
        if self.p < 5 or not is_prime(self.p):
            raise ValueError(f"p must be a prime >= 5, got {self.p}")
        if self.q < 2 or not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")
        if self.Delta.denominator != 1:
            raise ValueError(f"Delta = {self.Delta} is not integral")
        if (self.epsilon - Fraction(3, 2)).denominator != 1 or self.epsilon < Fraction(3, 2):
            raise ValueError(f"p^(epsilon - 3/2) is not an integer for epsilon = {self.epsilon}")

    @property
    def epsilon(self) -> Fraction:
        return Fraction(self.r + self.s, 2)

    @property
    def t(self) -> Fraction:
        return Fraction(self.r + self.s * self.q, 24)

    @property
    def Delta(self) -> Fraction:
        return self.t * (self.p ** 2 - 1)

    @property
    def delta_int(self) -> int:
        return int(self.Delta)

    @property
    def half_power(self) -> int:
        """p^(epsilon - 3/2)."""
        return self.p ** int(self.epsilon - Fraction(3, 2))

    @property
    def back_power(self) -> int:
        """p^(2 epsilon - 2)."""
        return self.p ** int(2 * self.epsilon - 2)

    @property
    def theta_symbol(self) -> int:
        """(theta/p) = (sign/p) (2/p) (q/p)^s with sign = (-1)^(1/2 - epsilon)."""
        sign = -1 if int(Fraction(1, 2) - self.epsilon) % 2 else 1
        p = self.p
        return legendre(sign, p) * legendre(2, p) * legendre(self.q, p) ** abs(self.s)

    def series(self, trunc: int) -> QSeries:
        return eta_product(EtaProductSpec.merged([(1, self.r), (self.q, self.s)]), ZZ, trunc)

    def to_json(self):
        return {"q": self.q, "r": self.r, "s": self.s, "p": self.p}


def _legendre_term(params: NewmanIIParams, x: int) -> int:
    return params.theta_symbol * params.half_power * legendre(x, params.p)


def newman2_gamma0_constant(params: NewmanIIParams, trunc: int | None = None,
                            series: QSeries | None = None) -> int:
    """w = p^(2e-2) c = a(D) + (theta/p) p^(e-3/2) (-D/p), from the n = 0 instance."""
    D = params.delta_int
    if series is None:
        if trunc is None:
            trunc = D
        if trunc < D:
            raise TruncationError(f"need trunc >= Delta = {D}")
        series = params.series(D)
    return series[D] + _legendre_term(params, -D)


def gamma0(params: NewmanIIParams, w: int, n: int) -> int:
    return w - _legendre_term(params, n - params.delta_int)


def newman2_verify(params: NewmanIIParams, trunc: int, series: QSeries | None = None) -> VerificationReport:
    D, p2 = params.delta_int, params.p ** 2
    if trunc < p2 + D:
        raise TruncationError(f"trunc {trunc} too small: need at least p^2 + Delta = {p2 + D}")
    with stopwatch() as t:
        a = series if series is not None else params.series(trunc)
        w = newman2_gamma0_constant(params, series=a)
        back = params.back_power
        n_max = (trunc - D) // p2
        col = Collector()
        for n in range(n_max + 1):
            lhs = a[n * p2 + D]
            rhs = gamma0(params, w, n) * a[n] - back * a[Fraction(n - D, p2)]
            col.check(n, n * p2 + D, lhs, rhs, lhs == rhs)
        notes = [f"w = {w}, Delta = {D}, epsilon = {params.epsilon}, (theta/p) = {params.theta_symbol}"]
        # recalibrate at n = 1: solve a(p^2 + D) = g(1) a(1) - back * a((1 - D)/p^2) for w
        a1 = a[1]
        if a1 != 0:
            num = a[p2 + D] + back * a[Fraction(1 - D, p2)]
            w1 = Fraction(num, a1) + _legendre_term(params, 1 - D)
            agree = w1 == w
            notes.append(f"recalibration at n=1 gives {w1}: {'agrees' if agree else 'DISAGREES'}")
    hyps = [hypothesis("r and s of different parity", True),
            hypothesis("gamma_0(n) integral", True)]
    if params.p == params.q:
        notes.append("p equals q")
    return col.report("newman2", params.to_json(), (0, n_max), hyps, notes, t[0])


NEWMAN_II_INSTANCES = {"w1": (3, 2, 1), "w2": (3, 6, 1), "w3": (5, 2, 1)}
NEWMAN_II_PRIMES = (5, 7, 11, 13)


def w_value(which: str, p: int) -> int:
    q, r, s = NEWMAN_II_INSTANCES[which]
    return newman2_gamma0_constant(NewmanIIParams(q, r, s, p))


def w1(p: int) -> int:
    return w_value("w1", p)


def w2(p: int) -> int:
    return w_value("w2", p)


def w3(p: int) -> int:
    return w_value("w3", p)
