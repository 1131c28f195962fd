"""Congruence families for B_{u,v}(n), a sweep engine, and the density experiment.

A family is a declarative record.  Its generator yields instances, each a
concrete progression ``M n + R`` with a relation to check modulo m:

* vanishing:     B(M n + R) = 0
* proportional:  B(M n + R) = mult * B(M2 n + R2)

plus hypotheses evaluated before the relation (unmet means SKIP) and an
optional per-n predicate selecting which n the statement covers.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import newman
from .bipartitions import BipartitionParams, bipartition_series
from .hecke import FORMS, form_character
from .ntheory import factorize, is_prime, legendre, primes_up_to
from .report import Collector, Status, VerificationReport, hypothesis, stopwatch
from .series import EtaProductSpec, ModM, QSeries, TruncationError, eta_product

Lookup = Callable[[int], int]


@dataclass(frozen=True)
class Hypothesis:
    name: str
    evaluate: Callable[[Lookup], tuple[bool, str]]

    @classmethod
    def static(cls, name: str, holds: bool, detail: str = ""):
        return cls(name, lambda _lookup: (holds, detail))


@dataclass(frozen=True)
class NFilter:
    name: str
    include: Callable[[int], bool]


@dataclass(frozen=True)
class FamilyInstance:
    family_id: str
    params: dict
    M: int
    R: int
    modulus: int
    multiplier: int = 0
    target: tuple[int, int] | None = None  # (M2, R2) for proportional relations
    hypotheses: tuple[Hypothesis, ...] = ()
    n_filter: NFilter | None = None
    n_max: int = 20000

    def __post_init__(self):
        if self.M < 1 or self.R < 0:
            raise ValueError(f"bad progression M={self.M}, R={self.R}")

    @property
    def vanishing(self) -> bool:
        return self.target is None

    def index_bound(self, n_max: int) -> int:
        top = self.M * n_max + self.R
        if self.target is not None:
            top = max(top, self.target[0] * n_max + self.target[1])
        return top

    def supported_n_max(self, trunc: int) -> int:
        """Largest n_max whose indices all lie within ``trunc``."""
        best = (trunc - self.R) // self.M
        if self.target is not None:
            best = min(best, (trunc - self.target[1]) // self.target[0])
        return best

    def describe(self) -> str:
        lhs = f"B({self.M}n+{self.R})"
        if self.vanishing:
            return f"{lhs} = 0 mod {self.modulus}"
        M2, R2 = self.target
        return f"{lhs} = {self.multiplier} B({M2}n+{R2}) mod {self.modulus}"


@dataclass(frozen=True)
class CongruenceFamily:
    id: str
    series: BipartitionParams
    modulus: int
    title: str
    generate: Callable[[], list[FamilyInstance]]
    notes: tuple[str, ...] = ()

    def instances(self) -> list[FamilyInstance]:
        return self.generate()


# -- sweep engine -----------------------------------------------------------------

def sweep(inst: FamilyInstance, table: QSeries, n_max: int) -> VerificationReport:
    """Check one instance for 0 <= n <= n_max against a coefficient table mod m."""
    if table.ring != ModM(inst.modulus):
        raise ValueError(f"table ring {table.ring} does not match modulus {inst.modulus}")
    need = inst.index_bound(n_max)
    if need > table.trunc:
        raise TruncationError(f"{inst.family_id} to n={n_max} needs index {need}, table has {table.trunc}")
    m = inst.modulus

    def lookup(i: int) -> int:
        return table[i]

    with stopwatch() as t:
        hyps = []
        for h in inst.hypotheses:
            holds, detail = h.evaluate(lookup)
            hyps.append(hypothesis(h.name, holds, detail))
        if not all(h["holds"] for h in hyps):
            rep = VerificationReport(inst.family_id, inst.params, (0, n_max), Status.SKIP,
                                     hypotheses=hyps, notes=[inst.describe()])
            rep.elapsed = t[0]
            return rep
        c = table.coeffs
        ns = np.arange(n_max + 1)
        if inst.n_filter is not None:
            keep = np.array([bool(inst.n_filter.include(int(n))) for n in ns], dtype=bool)
        else:
            keep = np.ones(n_max + 1, dtype=bool)
        lhs = c[inst.R: inst.R + inst.M * n_max + 1: inst.M].astype(np.int64)
        if inst.vanishing:
            rhs = np.zeros_like(lhs)
        else:
            M2, R2 = inst.target
            rhs = (c[R2: R2 + M2 * n_max + 1: M2].astype(np.int64) * (inst.multiplier % m)) % m
        bad = np.flatnonzero(keep & (lhs != rhs))
        col = Collector()
        col.checked = int(keep.sum()) - len(bad)
        col.skipped = int((~keep).sum())
        for n in bad:
            col.check(int(n), inst.M * int(n) + inst.R, int(lhs[n]), int(rhs[n]), False)
    if inst.n_filter is not None:
        hyps.append(hypothesis(f"per n: {inst.n_filter.name}", True, f"{col.skipped} values of n excluded"))
    return col.report(inst.family_id, inst.params, (0, n_max), hyps, [inst.describe()], t[0])


class TableStore:
    """Caches B_{u,v} mod m tables, computing each at most once per size."""

    def __init__(self, limit: int = 2_000_000):
        self.limit = limit
        self._tables: dict[tuple[int, int, int], QSeries] = {}

    def get(self, params: BipartitionParams, m: int, trunc: int) -> QSeries:
        key = (params.u, params.v, m)
        have = self._tables.get(key)
        if have is None or have.trunc < trunc:
            have = bipartition_series(params, ModM(m), trunc)
            self._tables[key] = have
        return have


def run_family(family: CongruenceFamily, store: TableStore, n_max: int | None = None,
               select: Callable[[FamilyInstance], bool] | None = None,
               scale: int = 1) -> list[VerificationReport]:
    """Sweep every instance, each to min(n_max, what the table limit supports).

    Without ``n_max`` each instance uses its own default bound times ``scale``.
    """
    insts = [i for i in family.instances() if select is None or select(i)]
    if not insts:
        return []
    wanted = {id(i): (n_max if n_max is not None else i.n_max * scale) for i in insts}
    need = max(i.index_bound(wanted[id(i)]) for i in insts)
    table = store.get(family.series, family.modulus, min(need, store.limit))
    reports = []
    for inst in insts:
        n_eff = min(wanted[id(inst)], inst.supported_n_max(table.trunc))
        if n_eff < 0:
            raise TruncationError(f"{inst.family_id} {inst.params}: first index beyond table limit {table.trunc}")
        rep = sweep(inst, table, n_eff)
        if n_eff < wanted[id(inst)]:
            rep.notes.append(f"n_max capped at {n_eff} (requested {wanted[id(inst)]}) by table size {table.trunc}")
        reports.append(rep)
    return reports


# -- family catalogue ---------------------------------------------------------------

B37 = BipartitionParams(3, 7)
B35 = BipartitionParams(3, 5)
B32 = BipartitionParams(3, 2)


def _chi(form_name: str) -> Callable[[int], int]:
    # the weight-1 Hecke characters, which also cover p = 2
    return form_character(FORMS[form_name])


def _seed(series_name: str, index: int, m: int) -> Hypothesis:
    def ev(lookup):
        v = lookup(index)
        return v % m == 0, f"{series_name}({index}) = {v} mod {m}"
    return Hypothesis(f"{series_name}({index}) = 0 mod {m}", ev)


def _coprime_to(p: int, A: int, B: int) -> NFilter:
    return NFilter(f"{p} does not divide {A}n+{B}", lambda n: (A * n + B) % p != 0)


def _not_multiple(p: int) -> NFilter:
    return NFilter(f"{p} does not divide n", lambda n: n % p != 0)


def _b37_zero():
    return [FamilyInstance("eq006a", {}, 4, 3, 3)]


def _b37_sign():
    return [FamilyInstance("eq006", {}, 4, 1, 3, multiplier=-1, target=(1, 0))]


def _b37_tower():
    return [FamilyInstance("eq005", {"alpha": a}, 4 ** a, (5 * 2 ** (2 * a - 1) - 1) // 3, 3)
            for a in (1, 2, 3)]


def _b311_tower():
    return [FamilyInstance("eq007", {"alpha": a}, 3 ** a, (5 * 3 ** (a - 1) - 1) // 2, 11)
            for a in (2, 3)]


B3S_VALUES = (2, 5, 7)
B3S_PRIMES = (5, 7, 11, 13)


def _b3s_for(s: int):
    def gen():
        out = []
        for p, a in itertools.product(B3S_PRIMES, (0, 1)):
            M = p ** (2 * a + 1)
            R = (1 + s) * (p ** (2 * a + 2) - 1) // 24
            sym = legendre(-s, p)
            hyp = Hypothesis.static(f"(-{s}/{p}) = -1", sym == -1, f"value {sym}")
            out.append(FamilyInstance(f"eq001_s{s}", {"s": s, "p": p, "alpha": a}, M, R, 3,
                                      hypotheses=(hyp,), n_filter=_not_multiple(p)))
        return out
    return gen


# families thm1.2* and cor1.3*: (denominator, class test, class text, grid)
THM12 = {
    "i": (B37, 3, lambda p: p % 3 != 1, "p != 1 mod 3", (2, 5, 11)),
    "ii": (B35, 4, lambda p: p % 4 == 3, "p = 3 mod 4", (3, 7, 11)),
    "iii": (B32, 8, lambda p: p % 8 != 1 and p != 2, "p odd, p != 1 mod 8", (3, 5, 7, 11)),
}


def _thm12(part: str):
    series, den, ok, text, grid = THM12[part]

    def gen():
        out = []
        for k in (0, 1):
            for primes in itertools.product(grid, repeat=k + 1):
                P2 = math.prod(q * q for q in primes[:-1])
                last = primes[-1]
                M = P2 * last * last
                hyps = tuple(Hypothesis.static(f"p_{i + 1} = {q}: {text}", ok(q))
                             for i, q in enumerate(primes))
                for j in range(1, last):
                    R = (P2 * last * (den * j + last) - 1) // den % M
                    out.append(FamilyInstance(f"thm1.2{part}", {"primes": list(primes), "k": k, "j": j},
                                              M, R, 3, hypotheses=hyps))
        return out
    return gen


def _cor13(part: str):
    series, den, ok, text, grid = THM12[part]
    grid = tuple(sorted(set(grid) | ({2} if part == "i" else set())))

    def gen():
        out = []
        for p in grid:
            if not ok(p):
                continue
            for k in (0, 1):
                M = p ** (2 * k + 2)
                for j in range(1, p):
                    R = (p ** (2 * k + 1) * j + (M - 1) // den) % M
                    out.append(FamilyInstance(f"cor1.3{part}", {"p": p, "k": k, "j": j}, M, R, 3,
                                              hypotheses=(Hypothesis.static(text, True),)))
        return out
    return gen


# families thm1.4*: (series, name, denominator of seed/shift, class modulus, primes)
THM14 = {
    "i": (B37, "B_{3,7}", 3, 6, (7, 13, 19)),
    "ii": (B35, "B_{3,5}", 4, 4, (5, 13, 17)),
    "iii": (B32, "B_{3,2}", 8, 8, (17, 41, 73, 89, 97)),
}


def _thm14(part: str):
    series, name, den, cls, primes = THM14[part]

    def gen():
        out = []
        for p, a in itertools.product(primes, (0, 1)):
            M = p ** (2 * a + 1)
            R = (M - 1) // den
            hyps = (Hypothesis.static(f"p = 1 mod {cls}", p % cls == 1),
                    _seed(name, (p - 1) // den, 3))
            out.append(FamilyInstance(f"thm1.4{part}", {"p": p, "alpha": a}, M, R, 3,
                                      hypotheses=hyps, n_filter=_coprime_to(p, den, 1)))
        return out
    return gen


# families thm1.5* and cor1.6*: (series, form for chi, class test, grid, shift numerator)
THM15 = {
    "i": (B37, "eta3_21", lambda p: p % 3 == 2, "p = 2 mod 3", (2, 5, 11)),
    "ii": (B35, "eta4_20", lambda p: p % 4 == 3, "p = 3 mod 4", (3, 7, 11)),
    "iii": (B32, "eta8_16", lambda p: p % 8 in (3, 5, 7), "p = 3, 5, 7 mod 8", (3, 5, 11, 13)),
}
THM15_DEN = {"i": 3, "ii": 4, "iii": 8}


def _thm15_t(part: str, p: int) -> int:
    # the residue "t" in (t p - 1)/den: 2 for (i), 3 for (ii), p mod 8 for (iii)
    return {"i": 2, "ii": 3}.get(part, p % 8)


def _thm15(part: str):
    series, form, ok, text, grid = THM15[part]
    den = THM15_DEN[part]
    chi = _chi(form)

    def gen():
        out = []
        for p in grid:
            t = _thm15_t(part, p)
            for k in (1, 2):
                for r in range(p ** k):
                    if (den * r + t) % p:
                        continue
                    M = p ** (k + 1)
                    R = p * r + (t * p - 1) // den
                    target = (p ** (k - 1), (den * r + t - p) // (den * p))
                    out.append(FamilyInstance(
                        f"thm1.5{part}", {"p": p, "k": k, "r": r}, M, R, 3,
                        multiplier=-chi(p), target=target,
                        hypotheses=(Hypothesis.static(text, ok(p)),
                                    Hypothesis.static(f"p divides {den}r+{t}", True))))
        return out
    return gen


def _cor16(part: str, den_override: int | None = None, suffix: str = ""):
    series, form, ok, text, grid = THM15[part]
    den = den_override or THM15_DEN[part]
    chi = _chi(form)

    def gen():
        out = []
        for p in grid:
            for k in (1, 2):
                M = p ** (2 * k)
                if (M - 1) % den:
                    continue
                out.append(FamilyInstance(
                    f"cor1.6{part}{suffix}", {"p": p, "k": k}, M, (M - 1) // den, 3,
                    multiplier=(-chi(p)) ** k, target=(1, 0),
                    hypotheses=(Hypothesis.static(text, ok(p)),)))
        return out
    return gen


# families thm1.7*: (u, per-n hypothesis offset B in p does not divide 24n+B)
THM17 = {"i": (7, 7), "ii": (11, 11), "iii": (13, 13)}
THM17_PRIMES = {"i": (73, 97), "ii": (73, 97, 1153), "iii": (73, 97, 2113)}
THM17_NMAX = 200


def _thm17(part: str, hyp_offset: int | None = None, suffix: str = ""):
    u, B = THM17[part]
    B = hyp_offset if hyp_offset is not None else B

    def gen():
        out = []
        for p in THM17_PRIMES[part]:
            M, R = p, u * (p - 1) // 24
            hyps = (Hypothesis.static("p = 1 mod 24", p % 24 == 1),
                    _seed(f"B_{{{u},2}}", u * (p - 1) // 24, u))
            out.append(FamilyInstance(f"thm1.7{part}{suffix}", {"p": p, "alpha": 0}, M, R, u,
                                      hypotheses=hyps, n_filter=_coprime_to(p, 24, B),
                                      n_max=THM17_NMAX))
        return out
    return gen


# families thm1.8* to thm1.10*: (Newman II instance, series, c, d, per-n argument, per-n factor)
MOD2 = {
    "1.8": ("w1", BipartitionParams(4, 3), 5, 24, lambda n, p: -6 * n - 1 + (p * p - 1) // 4, lambda p: 1),
    "1.9": ("w2", BipartitionParams(8, 3), 3, 8, lambda n, p: -6 * n - 2 + (p * p - 1) // 4, lambda p: p * p),
    "1.10": ("w3", BipartitionParams(4, 5), 7, 24, lambda n, p: -10 * n - 2 + 11 * (p * p - 1) // 12, lambda p: 1),
}
MOD2_PRIMES = (5, 7, 11)
MOD2_NMAX = 500


def _mod2(thm: str, part: str):
    which, series, c, d, arg, factor = MOD2[thm]

    def gen():
        out = []
        for p in MOD2_PRIMES:
            w = newman.w_value(which, p)
            k = 0
            if part == "i":
                M, R, want_odd = p ** (4 * k + 3), c * (p ** (4 * k + 4) - 1) // d, False
                nf = _not_multiple(p)
            elif part == "ii":
                M, R, want_odd = p ** (6 * k + 5), c * (p ** (6 * k + 6) - 1) // d, True
                nf = _not_multiple(p)
            else:
                M, R, want_odd = p ** (6 * k + 2), c * (p ** (6 * k + 2) - 1) // d, True
                nf = NFilter(f"{which}({p}) = symbol mod 2",
                             lambda n, p=p, w=w: (w - factor(p) * legendre(arg(n, p), p)) % 2 == 0)
            parity = "odd" if want_odd else "even"
            hyp = Hypothesis.static(f"{which}({p}) {parity}", (w % 2 == 1) == want_odd, f"{which}({p}) = {w}")
            out.append(FamilyInstance(f"thm{thm}{part}", {"p": p, "k": k}, M, R, 2,
                                      hypotheses=(hyp,), n_filter=nf, n_max=MOD2_NMAX))
        return out
    return gen


def _remark_b43():
    w = newman.w_value("w1", 7)
    hyp = Hypothesis.static("w1(7) odd", w % 2 == 1, f"w1(7) = {w}")
    return [FamilyInstance("rem_b43", {"r": r}, 343, 49 * r + 10, 2, hypotheses=(hyp,), n_max=200)
            for r in (0, 1, 2, 4, 5, 6)]


def builtin_families() -> list[CongruenceFamily]:
    fams = [
        CongruenceFamily("eq006a", B37, 3, "B_{3,7}(4n+3) = 0 mod 3", _b37_zero),
        CongruenceFamily("eq006", B37, 3, "B_{3,7}(4n+1) = -B_{3,7}(n) mod 3", _b37_sign),
        CongruenceFamily("eq005", B37, 3, "B_{3,7}(4^a n + (5*2^(2a-1)-1)/3) = 0 mod 3", _b37_tower),
        CongruenceFamily("eq007", BipartitionParams(3, 11), 11,
                         "B_{3,11}(3^a n + (5*3^(a-1)-1)/2) = 0 mod 11", _b311_tower),
    ]
    for s in B3S_VALUES:
        fams.append(CongruenceFamily(
            f"eq001_s{s}", BipartitionParams(3, s), 3,
            f"B_{{3,{s}}}(p^(2a+1) n + {1 + s}(p^(2a+2)-1)/24) = 0 mod 3 when (-{s}/p) = -1, p not dividing n",
            _b3s_for(s), ("(-s/p) read as the Legendre symbol",)))
    for part, (series, den, _, text, _) in THM12.items():
        fams.append(CongruenceFamily(f"thm1.2{part}", series, 3,
                                     f"{series} vanishing on the p_i^2 progressions, {text}", _thm12(part)))
        fams.append(CongruenceFamily(f"cor1.3{part}", series, 3,
                                     f"{series}(p^(2k+2)n + p^(2k+1)j + (p^(2k+2)-1)/{den}) = 0 mod 3",
                                     _cor13(part)))
    for part, (series, name, den, cls, _) in THM14.items():
        fams.append(CongruenceFamily(f"thm1.4{part}", series, 3,
                                     f"{name}(p^(2a+1)n + (p^(2a+1)-1)/{den}) = 0 mod 3 given the seed",
                                     _thm14(part)))
    for part, (series, *_rest) in THM15.items():
        fams.append(CongruenceFamily(f"thm1.5{part}", series, 3, f"{series} multiplicative formula",
                                     _thm15(part)))
        fams.append(CongruenceFamily(f"cor1.6{part}", series, 3, f"{series}(p^(2k)n + (p^(2k)-1)/{THM15_DEN[part]})"
                                     " = (-chi(p))^k B(n) mod 3", _cor16(part)))
    for part, (u, B) in THM17.items():
        fams.append(CongruenceFamily(f"thm1.7{part}", BipartitionParams(u, 2), u,
                                     f"B_{{{u},2}}(pn + {u}(p-1)/24) = 0 mod {u} given the seed, p not dividing 24n+{B}",
                                     _thm17(part)))
    fams.append(CongruenceFamily("thm1.7ii_stmt", BipartitionParams(11, 2), 11,
                                 "thm1.7ii with the per-n condition p not dividing 24n+1",
                                 _thm17("ii", 1, "_stmt")))
    for thm, (which, series, c, d, *_rest) in MOD2.items():
        for part in ("i", "ii", "iii"):
            fams.append(CongruenceFamily(f"thm{thm}{part}", series, 2,
                                         f"{series} mod 2, gated on the parity of {which}(p)", _mod2(thm, part)))
    fams.append(CongruenceFamily("rem_b43", BipartitionParams(4, 3), 2,
                                 "B_{4,3}(343n + 49r + 10) = 0 mod 2, r != 3", _remark_b43))
    return fams


def family_by_id(family_id: str) -> CongruenceFamily:
    for fam in builtin_families():
        if fam.id == family_id:
            return fam
    raise KeyError(family_id)


def seed_scan(part: str, limit: int = 500) -> list[int]:
    """Primes up to ``limit`` in the thm1.4 class whose seed coefficient vanishes mod 3."""
    series, _, den, cls, _ = THM14[part]
    table = bipartition_series(series, ModM(3), limit // den + 1)
    return [p for p in primes_up_to(limit) if p % cls == 1 and table[(p - 1) // den] == 0]


# -- density ------------------------------------------------------------------

@dataclass
class DensityCurve:
    p: int
    m: int
    checkpoints: list[tuple[int, int, float]] = field(default_factory=list)

    def ratios(self) -> list[float]:
        return [r for _, _, r in self.checkpoints]

    def to_csv(self) -> str:
        lines = ["X,nonzero_count,ratio"]
        lines += [f"{X},{c},{r:.6f}" for X, c, r in self.checkpoints]
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {"p": self.p, "m": self.m,
                "checkpoints": [{"X": X, "count": c, "ratio": r} for X, c, r in self.checkpoints]}


def density_experiment(p: int, m: int, checkpoints: Iterable[int]) -> DensityCurve:
    """Fraction of 1 <= n <= X with B_{p,m}(n) nonzero mod p."""
    if p < 5 or not is_prime(p):
        raise ValueError(f"p must be a prime >= 5, got {p}")
    if m < 1 or math.gcd(p, m) != 1:
        raise ValueError(f"need m >= 1 coprime to p, got m={m}")
    if m > 1 and any(q < 5 for q, _ in factorize(m)):
        raise ValueError(f"prime factors of m must be >= 5, got m={m}")
    xs = sorted(set(int(x) for x in checkpoints))
    if not xs or xs[0] < 1:
        raise ValueError("checkpoints must be positive")
    # m = 1 is allowed here, so build f_p f_m / f_1^2 without BipartitionParams
    table = eta_product(EtaProductSpec.merged([(p, 1), (m, 1), (1, -2)]), ModM(p), xs[-1])
    nz = np.cumsum(table.coeffs[1:] != 0)
    curve = DensityCurve(p, m)
    for X in xs:
        count = int(nz[X - 1])
        curve.checkpoints.append((X, count, count / X))
    return curve
