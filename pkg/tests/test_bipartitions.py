import itertools

import pytest
from hypothesis import given, strategies as st

from regbip.bipartitions import (
    BipartitionParams, bipartition_oracle, bipartition_series, regular_partition_series,
)
from regbip.series import ModM, ZZ, euler_product, invert

from oracles import partitions_with_parts

PAIRS = [(3, 7), (3, 5), (3, 2), (7, 2), (4, 3), (4, 5), (8, 3), (11, 2), (13, 2)]


def _enumerated_regular(t, n):
    return partitions_with_parts(n, n, lambda part, t=t: part % t != 0)


def _enumerated_bipartitions(u, v, n):
    # pairs of partitions, each enumerated on its own
    return sum(_enumerated_regular(u, j) * _enumerated_regular(v, n - j) for j in range(n + 1))


def test_regular_partition_examples():
    assert regular_partition_series(2, ZZ, 5).tolist() == [1, 1, 1, 2, 2, 3]
    assert regular_partition_series(3, ZZ, 4).tolist() == [1, 1, 2, 2, 4]
    for t in range(2, 9):
        assert regular_partition_series(t, ZZ, 0)[0] == 1
    with pytest.raises(ValueError):
        regular_partition_series(1, ZZ, 4)


@pytest.mark.parametrize("t", [2, 3, 5, 7])
def test_regular_partitions_match_enumeration(t):
    s = regular_partition_series(t, ZZ, 35)
    assert s.tolist() == [_enumerated_regular(t, n) for n in range(36)]


def test_regular_bounded_by_partition_numbers():
    p = invert(euler_product(1, ZZ, 200))
    for t in (2, 3, 11):
        b = regular_partition_series(t, ZZ, 200)
        assert all(x <= y for x, y in zip(b.tolist(), p.tolist()))


def test_bipartition_examples():
    s = bipartition_series(BipartitionParams(3, 7), ZZ, 10)
    assert s[0] == 1 and s[1] == 2 and s[2] == 5
    assert bipartition_oracle(BipartitionParams(3, 7), 0) == 1
    assert bipartition_oracle(BipartitionParams(3, 7), 2) == 5
    assert bipartition_oracle(BipartitionParams(2, 2), 3) == 6


def test_two_two_regular_by_hand():
    # 2-regular partitions of 0..3: 1, 1, 1, 2 ({3}, {1,1,1})
    b2 = [1, 1, 1, 2]
    assert bipartition_oracle(BipartitionParams(2, 2), 3) == sum(b2[j] * b2[3 - j] for j in range(4))


def test_params_validation():
    with pytest.raises(ValueError):
        BipartitionParams(1, 3)
    with pytest.raises(ValueError):
        bipartition_oracle(BipartitionParams(3, 7), 41)
    with pytest.raises(ValueError):
        bipartition_oracle(BipartitionParams(3, 7), -1)


@pytest.mark.parametrize("u,v", PAIRS)
def test_series_equals_oracle(u, v):
    params = BipartitionParams(u, v)
    s = bipartition_series(params, ZZ, 30)
    assert s.tolist() == [bipartition_oracle(params, n) for n in range(31)]


@pytest.mark.parametrize("u,v", [(3, 7), (4, 5)])
def test_oracle_matches_recursive_enumeration(u, v):
    params = BipartitionParams(u, v)
    assert [bipartition_oracle(params, n) for n in range(25)] == \
        [_enumerated_bipartitions(u, v, n) for n in range(25)]


def test_symmetry():
    for u, v in itertools.combinations([2, 3, 5, 7], 2):
        a = bipartition_series(BipartitionParams(u, v), ZZ, 300)
        b = bipartition_series(BipartitionParams(v, u), ZZ, 300)
        assert a == b


def test_mod_table_agrees_with_exact():
    params = BipartitionParams(3, 7)
    exact = bipartition_series(params, ZZ, 3000)
    mod3 = bipartition_series(params, ModM(3), 3000)
    assert [x % 3 for x in exact.tolist()] == mod3.tolist()


@given(st.integers(2, 12), st.integers(2, 12), st.integers(0, 40))
def test_oracle_property(u, v, n):
    params = BipartitionParams(u, v)
    assert bipartition_series(params, ZZ, n)[n] == bipartition_oracle(params, n)
