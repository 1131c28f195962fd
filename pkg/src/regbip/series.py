"""Truncated formal power series with exact coefficients over ZZ or ZZ/m.

A :class:`QSeries` knows the coefficients ``a(0), ..., a(trunc)`` and nothing
beyond them: reading past ``trunc`` raises :class:`TruncationError` instead of
returning zero.  Reading at a negative or non-integral index returns 0, which
is how q-series identities treat ``a(n/p)`` when ``p`` does not divide ``n``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral
from typing import Iterable, Mapping

import numpy as np

from . import _kernels


class TruncationError(IndexError):
    """A coefficient beyond the known truncation was requested."""


class RingMismatchError(ValueError):
    pass


class NotInvertibleError(ZeroDivisionError):
    pass


@dataclass(frozen=True)
class Ring:
    """``Ring()`` is ZZ; ``Ring(m)`` is ZZ/m with m >= 2."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None:
            if isinstance(self.modulus, bool) or not isinstance(self.modulus, Integral):
                raise TypeError("modulus must be an integer")
            if self.modulus < 2:
                raise ValueError(f"modulus must be >= 2, got {self.modulus}")
            object.__setattr__(self, "modulus", int(self.modulus))

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def is_unit(self, x: int) -> bool:
        if self.modulus is None:
            return x in (1, -1)
        return math.gcd(x, self.modulus) == 1

    def inverse(self, x: int) -> int:
        if not self.is_unit(x):
            raise NotInvertibleError(f"{x} is not a unit in {self}")
        if self.modulus is None:
            return x
        return pow(x, -1, self.modulus)

    def __str__(self):
        return "ZZ" if self.modulus is None else f"ZZ/{self.modulus}"

    def to_json(self):
        return "ZZ" if self.modulus is None else {"mod": self.modulus}

    @classmethod
    def from_json(cls, obj) -> "Ring":
        if obj == "ZZ":
            return cls()
        return cls(int(obj["mod"]))


ZZ = Ring()


def ModM(m: int) -> Ring:
    return Ring(m)


def _as_coeff_array(values, ring: Ring) -> np.ndarray:
    if ring.modulus is None:
        out = np.empty(len(values), dtype=object)
        out[:] = [int(v) for v in values]
        return out
    if isinstance(values, np.ndarray) and values.dtype != object:
        return np.mod(values.astype(np.int64, copy=False), ring.modulus)
    m = ring.modulus
    return np.array([int(v) % m for v in values], dtype=np.int64)


class QSeries:
    """Immutable truncated power series ``a(0) + a(1) q + ... + a(trunc) q^trunc``."""

    __slots__ = ("ring", "_c")

    def __init__(self, coeffs: Iterable[int], ring: Ring = ZZ, trunc: int | None = None):
        values = list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs
        if trunc is not None:
            if trunc < 0:
                raise ValueError("trunc must be non-negative")
            if len(values) > trunc + 1:
                values = values[: trunc + 1]
        arr = _as_coeff_array(values, ring)
        if trunc is not None and len(arr) < trunc + 1:
            arr = _kernels._pad(arr, trunc)
        if len(arr) == 0:
            raise ValueError("a series needs at least the constant coefficient")
        self._init(arr, ring)

    def _init(self, arr: np.ndarray, ring: Ring):
        arr.flags.writeable = False
        self._c = arr
        self.ring = ring

    @classmethod
    def _wrap(cls, arr: np.ndarray, ring: Ring) -> "QSeries":
        """Adopt an already-normalized array without copying."""
        obj = cls.__new__(cls)
        obj._init(arr, ring)
        return obj

    @property
    def trunc(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only view of the coefficient array."""
        return self._c

    def tolist(self) -> list[int]:
        return [int(x) for x in self._c]

    def __getitem__(self, n) -> int:
        if isinstance(n, slice):
            raise TypeError("use extract_progression or coeffs for slicing")
        if isinstance(n, Fraction):
            if n.denominator != 1:
                return 0
            n = n.numerator
        elif isinstance(n, float):
            raise TypeError("float indices are not accepted; use Fraction")
        n = int(n)
        if n < 0:
            return 0
        if n > self.trunc:
            raise TruncationError(f"coefficient {n} requested, series known to {self.trunc}")
        return int(self._c[n])

    def __repr__(self):
        head = ", ".join(str(int(x)) for x in self._c[:8])
        more = ", ..." if self.trunc >= 8 else ""
        return f"QSeries([{head}{more}], ring={self.ring}, trunc={self.trunc})"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.ring == other.ring and self.trunc == other.trunc
                and bool(np.array_equal(self._c, other._c)))

    __hash__ = None

    def _check_ring(self, other: "QSeries"):
        if self.ring != other.ring:
            raise RingMismatchError(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, QSeries):
            self._check_ring(other)
            n = min(self.trunc, other.trunc)
            arr = self._c[: n + 1] + other._c[: n + 1]
        elif isinstance(other, Integral):
            arr = self._c.copy()
            arr[0] = arr[0] + _scalar(int(other), self.ring)
        else:
            return NotImplemented
        return QSeries._wrap(_normalize(arr, self.ring), self.ring)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._wrap(_normalize(-self._c, self.ring), self.ring)

    def __sub__(self, other):
        if isinstance(other, (QSeries, Integral)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        if isinstance(other, Integral):
            k = _scalar(int(other), self.ring)
            return QSeries._wrap(_normalize(self._c * k, self.ring), self.ring)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e):
        return power(self, e)

    def is_zero(self) -> bool:
        return not np.any(self._c)

    def truncate(self, trunc: int) -> "QSeries":
        if trunc > self.trunc:
            raise TruncationError(f"cannot extend a series known to {self.trunc} up to {trunc}")
        return QSeries._wrap(self._c[: trunc + 1].copy(), self.ring)

    # serialization

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1,
            "ring": self.ring.to_json(),
            "trunc": self.trunc,
            "coeffs": [str(int(x)) for x in self._c],
        })

    @classmethod
    def from_json(cls, text: str) -> "QSeries":
        obj = json.loads(text)
        ring = Ring.from_json(obj["ring"])
        coeffs = [int(x) for x in obj["coeffs"]]
        if len(coeffs) != obj["trunc"] + 1:
            raise ValueError("coefficient count does not match trunc")
        return cls(coeffs, ring)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "a(n)"])
        for n, x in enumerate(self._c):
            writer.writerow([n, int(x)])
        return buf.getvalue()


def _scalar(k: int, ring: Ring) -> int:
    return k if ring.modulus is None else k % ring.modulus


def _normalize(arr: np.ndarray, ring: Ring) -> np.ndarray:
    if ring.modulus is not None:
        return np.mod(arr, ring.modulus)
    return arr


def _zeros(n: int, ring: Ring) -> np.ndarray:
    if ring.modulus is not None:
        return np.zeros(n + 1, dtype=np.int64)
    out = np.empty(n + 1, dtype=object)
    out[:] = 0
    return out


def series_one(ring: Ring, trunc: int) -> QSeries:
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    arr = _zeros(trunc, ring)
    arr[0] = 1
    return QSeries._wrap(arr, ring)


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product, truncated at ``min(a.trunc, b.trunc)``."""
    a._check_ring(b)
    n = min(a.trunc, b.trunc)
    if a is b:
        arr = _kernels.convolve(a._c, a._c, n, a.ring.modulus)
    else:
        arr = _kernels.convolve(a._c, b._c, n, a.ring.modulus)
    return QSeries._wrap(arr, a.ring)


def invert(a: QSeries) -> QSeries:
    """Multiplicative inverse; the constant term must be a unit."""
    ring = a.ring
    a0 = int(a._c[0])
    inv0 = ring.inverse(a0)
    n = a.trunc
    m = ring.modulus
    b = _zeros(0, ring)
    b[0] = inv0
    k = 1
    # Newton: if a*b = 1 + q^k h then b - q^k (b h) is correct to q^(2k)
    while k < n + 1:
        k2 = min(2 * k, n + 1)
        e = _kernels.convolve(a._c[:k2], b, k2 - 1, m)
        h = e[k:k2]
        corr = _kernels.convolve(b[: k2 - k], h, k2 - k - 1, m)
        nb = _zeros(k2 - 1, ring)
        nb[:k] = b
        nb[k:k2] = -corr[: k2 - k]
        b = _normalize(nb, ring)
        k = k2
    return QSeries._wrap(b, ring)


def power(a: QSeries, e: int) -> QSeries:
    """``a ** e`` for any integer ``e``; negative ``e`` needs a unit constant term."""
    if isinstance(e, bool) or not isinstance(e, Integral):
        raise TypeError("exponent must be an integer")
    e = int(e)
    if e < 0:
        return power(invert(a), -e)
    if e == 0:
        return series_one(a.ring, a.trunc)
    if _kernels.nonzero_count(a._c) <= _kernels.SPARSE_MAX_TERMS and e <= 16:
        # sparse base: repeated shift-and-add beats squaring dense intermediates
        acc = a
        for _ in range(e - 1):
            acc = mul(acc, a)
        return acc
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def pentagonal_terms(delta: int, trunc: int) -> list[tuple[int, int]]:
    """(index, sign) of the nonzero terms of (q^delta; q^delta)_oo up to trunc."""
    terms = [(0, 1)]
    k = 1
    while delta * k * (3 * k - 1) // 2 <= trunc:
        sign = -1 if k % 2 else 1
        terms.append((delta * k * (3 * k - 1) // 2, sign))
        hi = delta * k * (3 * k + 1) // 2
        if hi <= trunc:
            terms.append((hi, sign))
        k += 1
    return terms


def euler_product(delta: int, ring: Ring, trunc: int) -> QSeries:
    """(q^delta; q^delta)_oo via Euler's pentagonal number theorem."""
    if delta < 1:
        raise ValueError("delta must be a positive integer")
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    arr = _zeros(trunc, ring)
    for idx, sign in pentagonal_terms(delta, trunc):
        arr[idx] = sign
    return QSeries._wrap(_normalize(arr, ring), ring)


@dataclass(frozen=True)
class EtaProductSpec:
    """``q^prefactor_exponent * prod (q^delta; q^delta)_oo^r`` over ``factors``."""

    factors: tuple[tuple[int, int], ...]
    prefactor_exponent: int = 0

    def __post_init__(self):
        factors = tuple((int(d), int(r)) for d, r in self.factors)
        deltas = [d for d, _ in factors]
        if len(set(deltas)) != len(deltas):
            raise ValueError(f"deltas must be distinct: {deltas}")
        for d, r in factors:
            if d < 1:
                raise ValueError(f"delta must be positive, got {d}")
            if r == 0:
                raise ValueError(f"exponent for delta={d} must be nonzero")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def merged(cls, pairs: Iterable[tuple[int, int]] | Mapping[int, int],
               prefactor_exponent: int = 0) -> "EtaProductSpec":
        """Build a spec, adding exponents of repeated deltas and dropping zeros."""
        if isinstance(pairs, Mapping):
            pairs = pairs.items()
        acc: dict[int, int] = {}
        for d, r in pairs:
            acc[int(d)] = acc.get(int(d), 0) + int(r)
        return cls(tuple(sorted((d, r) for d, r in acc.items() if r)), prefactor_exponent)


def eta_product(spec: EtaProductSpec, ring: Ring, trunc: int) -> QSeries:
    if spec.prefactor_exponent < 0:
        raise ValueError("prefactor_exponent must be non-negative")
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    shift = spec.prefactor_exponent
    if shift > trunc:
        return QSeries._wrap(_zeros(trunc, ring), ring)
    inner = trunc - shift
    num = series_one(ring, inner)
    den = series_one(ring, inner)
    for delta, r in spec.factors:
        f = euler_product(delta, ring, inner)
        if r > 0:
            num = mul(num, power(f, r))
        else:
            den = mul(den, power(f, -r))
    if any(r < 0 for _, r in spec.factors):
        if not ring.is_unit(den[0]):
            raise NotInvertibleError("denominator has a non-unit constant term")
        num = mul(num, invert(den))
    arr = _zeros(trunc, ring)
    arr[shift:] = num._c
    return QSeries._wrap(arr, ring)


def extract_progression(a: QSeries, M: int, R: int) -> QSeries:
    """The series ``b(n) = a(M n + R)``."""
    if M < 1:
        raise ValueError("M must be positive")
    if not 0 <= R < M:
        raise ValueError(f"need 0 <= R < M, got R={R}, M={M}")
    if R > a.trunc:
        raise TruncationError(f"offset {R} beyond truncation {a.trunc}")
    return QSeries._wrap(a._c[R::M].copy(), a.ring)


def reduce_mod(a: QSeries, m: int) -> QSeries:
    """Image of ``a`` in ZZ/m.  ``a`` may also live in ZZ/m' with m | m'."""
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if a.ring.modulus is not None and a.ring.modulus % m:
        raise RingMismatchError(f"cannot reduce {a.ring} modulo {m}")
    ring = ModM(m)
    return QSeries._wrap(_as_coeff_array(a._c, ring), ring)
