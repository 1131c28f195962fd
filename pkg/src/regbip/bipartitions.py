"""Regular partitions and (u,v)-regular bipartitions."""

from __future__ import annotations

from dataclasses import dataclass

from .series import EtaProductSpec, QSeries, Ring, eta_product

ORACLE_MAX_N = 40


@dataclass(frozen=True)
class BipartitionParams:
    u: int
    v: int

    def __post_init__(self):
        if self.u < 2 or self.v < 2:
            raise ValueError(f"u and v must be >= 2, got ({self.u}, {self.v})")

    def eta_spec(self) -> EtaProductSpec:
        return EtaProductSpec.merged([(self.u, 1), (self.v, 1), (1, -2)])

    def __str__(self):
        return f"B_{{{self.u},{self.v}}}"


def regular_partition_series(t: int, ring: Ring, trunc: int) -> QSeries:
    """Generating function f_t / f_1 of t-regular partitions."""
    if t < 2:
        raise ValueError(f"t must be >= 2, got {t}")
    return eta_product(EtaProductSpec.merged([(t, 1), (1, -1)]), ring, trunc)


def bipartition_series(params: BipartitionParams, ring: Ring, trunc: int) -> QSeries:
    """Generating function f_u f_v / f_1^2 of (u,v)-regular bipartitions."""
    return eta_product(params.eta_spec(), ring, trunc)


def _regular_counts(t: int, n: int) -> list[int]:
    # classic coin-change DP over the parts not divisible by t
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        if part % t == 0:
            continue
        for total in range(part, n + 1):
            counts[total] += counts[total - part]
    return counts


def bipartition_oracle(params: BipartitionParams, n: int) -> int:
    """B_{u,v}(n) by direct counting, without the series engine."""
    if not 0 <= n <= ORACLE_MAX_N:
        raise ValueError(f"oracle supports 0 <= n <= {ORACLE_MAX_N}, got {n}")
    bu = _regular_counts(params.u, n)
    bv = _regular_counts(params.v, n)
    return sum(bu[j] * bv[n - j] for j in range(n + 1))
