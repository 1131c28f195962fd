"""Exact truncated convolution kernels.

Two strategies, selected per call:

* sparse shift-and-add, when one operand has few nonzero terms (Euler
  products have O(sqrt N) of them);
* Kronecker substitution: pack each operand into one big integer, multiply
  with GMP, unpack the digits.  Exact for any coefficient size.

Inputs over ZZ/m are int64 arrays with entries in [0, m).  Inputs over ZZ
are object arrays of Python ints; they are moved to int64 internally only
when a magnitude bound proves the result cannot overflow.
"""

from __future__ import annotations

import numpy as np
import gmpy2

SPARSE_MAX_TERMS = 256
INT64_SAFE = 1 << 62

_UINT = {1: np.uint8, 2: np.uint16, 4: np.uint32, 8: np.uint64}


def nonzero_count(a: np.ndarray) -> int:
    return int(np.count_nonzero(a))


def max_abs(a: np.ndarray) -> int:
    if len(a) == 0:
        return 0
    if a.dtype == object:
        return max(abs(int(x)) for x in a)
    return int(np.abs(a).max())


def to_object(a: np.ndarray) -> np.ndarray:
    out = np.empty(len(a), dtype=object)
    out[:] = [int(x) for x in a]
    return out


def convolve(a: np.ndarray, b: np.ndarray, n: int, modulus: int | None = None) -> np.ndarray:
    """First ``n + 1`` coefficients of the product of ``a`` and ``b``."""
    a = a[: n + 1]
    b = b[: n + 1]
    if modulus is not None:
        return _convolve_mod(a, b, n, modulus)
    return _convolve_int(a, b, n)


def _pad(c: np.ndarray, n: int) -> np.ndarray:
    if len(c) >= n + 1:
        return c[: n + 1]
    out = np.zeros(n + 1, dtype=c.dtype)
    if c.dtype == object:
        out[:] = 0
    out[: len(c)] = c
    return out


# -- ZZ/m ---------------------------------------------------------------------

def _convolve_mod(a, b, n, m):
    if nonzero_count(a) > nonzero_count(b):
        a, b = b, a
    nnz = nonzero_count(a)
    if nnz == 0 or len(b) == 0:
        return np.zeros(n + 1, dtype=np.int64)
    if nnz <= SPARSE_MAX_TERMS:
        return _sparse_int64(a, b, n, m)
    bound = (m - 1) ** 2 * min(len(a), len(b))
    digits = _kronecker_unsigned(a, b, n, bound)
    return digits % m


def _sparse_int64(a, b, n, m=None):
    """Shift-and-add with int64 accumulation; ``a`` is the sparse operand."""
    out = np.zeros(n + 1, dtype=np.int64)
    idx = np.flatnonzero(a)
    if m is not None:
        # every term added is < m^2; flush before the accumulator can overflow
        flush_every = max(1, (INT64_SAFE // max(1, (m - 1) ** 2)) - 1)
    else:
        flush_every = None
    lb = len(b)
    for count, i in enumerate(idx, 1):
        i = int(i)
        if i > n:
            break
        stop = min(n + 1, i + lb)
        out[i:stop] += int(a[i]) * b[: stop - i]
        if flush_every is not None and count % flush_every == 0:
            out %= m
    if m is not None:
        out %= m
    return out


def _digit_width(bits: int) -> int:
    """Bytes per packed digit; powers of two up to 8, else a multiple of 8."""
    w = 1
    while w * 8 < bits:
        w *= 2
        if w > 8:
            return -(-bits // 64) * 8
    return w


def _pack(values: np.ndarray, w: int) -> int:
    if w in _UINT and values.dtype != object:
        return int.from_bytes(values.astype(_UINT[w]).tobytes(), "little")
    return int.from_bytes(b"".join(int(v).to_bytes(w, "little") for v in values), "little")


def _mpz_low_bytes(x, nbytes: int) -> bytes:
    """Low ``nbytes`` bytes of a non-negative mpz, little-endian."""
    if x == 0:
        return bytes(nbytes)
    raw = int(x).to_bytes((x.bit_length() + 7) // 8, "little")[:nbytes]
    return raw + bytes(nbytes - len(raw))


def _kronecker_unsigned(a, b, n, bound):
    w = _digit_width(int(bound).bit_length() + 1)
    A = gmpy2.mpz(_pack(a, w))
    if b is a:
        C = A * A
    else:
        C = A * gmpy2.mpz(_pack(b, w))
    raw = _mpz_low_bytes(C, (n + 1) * w)
    if w in _UINT:
        return np.frombuffer(raw, dtype=_UINT[w]).astype(np.int64)
    return np.array([int.from_bytes(raw[i * w:(i + 1) * w], "little") for i in range(n + 1)],
                    dtype=object)


# -- ZZ -------------------------------------------------------------------------

def _convolve_int(a, b, n):
    if len(a) == 0 or len(b) == 0:
        return _pad(to_object(np.zeros(0, dtype=np.int64)), n)
    amax, bmax = max_abs(a), max_abs(b)
    bound = amax * bmax * min(len(a), len(b))
    if bound < INT64_SAFE and amax < INT64_SAFE and bmax < INT64_SAFE:
        a64 = np.asarray(a, dtype=np.int64) if a.dtype == object else a
        b64 = np.asarray(b, dtype=np.int64) if b.dtype == object else b
        if nonzero_count(a64) > nonzero_count(b64):
            a64, b64 = b64, a64
        if nonzero_count(a64) <= SPARSE_MAX_TERMS:
            return to_object(_sparse_int64(a64, b64, n))
        return _pad(_kronecker_signed(a64, b64, n, bound), n)
    if nonzero_count(a) > nonzero_count(b):
        a, b = b, a
    if nonzero_count(a) <= SPARSE_MAX_TERMS // 4:
        return _sparse_object(a, b, n)
    return _pad(_kronecker_signed(a, b, n, bound), n)


def _sparse_object(a, b, n):
    out = np.empty(n + 1, dtype=object)
    out[:] = 0
    lb = len(b)
    for i in np.flatnonzero(a):
        i = int(i)
        if i > n:
            break
        stop = min(n + 1, i + lb)
        out[i:stop] += int(a[i]) * b[: stop - i]
    return out


def _split_signs(a):
    if a.dtype == object:
        pos = np.array([x if x > 0 else 0 for x in a], dtype=object)
        neg = np.array([-x if x < 0 else 0 for x in a], dtype=object)
        return pos, neg
    return np.where(a > 0, a, 0), np.where(a < 0, -a, 0)


def _kronecker_signed(a, b, n, bound):
    # one spare bit so that digit + 2^(8w-1) never reaches 2^(8w)
    w = _digit_width(int(bound).bit_length() + 2)
    ap, an = _split_signs(a)
    A = gmpy2.mpz(_pack(ap, w)) - gmpy2.mpz(_pack(an, w))
    if b is a:
        C = A * A
    else:
        bp, bn = _split_signs(b)
        C = A * (gmpy2.mpz(_pack(bp, w)) - gmpy2.mpz(_pack(bn, w)))
    # Add 2^(8w-1) to each of the low n+1 digits so every digit is
    # non-negative; the high part is a multiple of 2^(8w(n+1)) and drops out.
    m = min(n + 1, len(a) + len(b) - 1)
    half = 1 << (8 * w - 1)
    offset = int.from_bytes((bytes(w - 1) + b"\x80") * m, "little")
    X = gmpy2.f_mod_2exp(C + offset, 8 * w * m)
    raw = _mpz_low_bytes(X, m * w)
    if w in _UINT:
        digits = np.frombuffer(raw, dtype=_UINT[w])
        if w == 8:
            signed = (digits ^ np.uint64(half)).view(np.int64)
        else:
            signed = digits.astype(np.int64) - half
        return to_object(signed)
    out = np.empty(m, dtype=object)
    out[:] = [int.from_bytes(raw[i * w:(i + 1) * w], "little") - half for i in range(m)]
    return out
