"""Slow, obviously-correct reference computations used only by the tests."""

from functools import lru_cache


def naive_mul(a, b, n, m=None):
    out = [0] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    if m is not None:
        out = [v % m for v in out]
    return out


def product_expansion(delta, trunc):
    """prod_{k>=1} (1 - q^(delta k)) by multiplying out binomials one at a time."""
    poly = [1] + [0] * trunc
    k = 1
    while delta * k <= trunc:
        step = delta * k
        poly = [poly[i] - (poly[i - step] if i >= step else 0) for i in range(trunc + 1)]
        k += 1
    return poly


@lru_cache(maxsize=None)
def partitions_with_parts(n, largest, allowed):
    """Number of partitions of n into parts <= largest satisfying allowed(part)."""
    if n == 0:
        return 1
    total = 0
    for part in range(min(n, largest), 0, -1):
        if allowed(part):
            total += partitions_with_parts(n - part, part, allowed)
    return total


def count_partitions(n):
    return partitions_with_parts(n, n, _any_part)


def _any_part(_):
    return True


def sieve(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def legendre_by_squares(a, p):
    a %= p
    if a == 0:
        return 0
    return 1 if a in {x * x % p for x in range(1, p)} else -1
