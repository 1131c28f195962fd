import numpy as np
import pytest
from hypothesis import example, given, strategies as st

from regbip import _kernels
from regbip._kernels import convolve, to_object

from oracles import naive_mul


def _obj(values):
    return to_object(np.array(values, dtype=object))


@pytest.mark.parametrize("n", [0, 1, 5, 300, 700])
def test_dense_int_matches_naive(n):
    rng = np.random.default_rng(n)
    a = [int(x) for x in rng.integers(-10**6, 10**6, n + 1)]
    b = [int(x) for x in rng.integers(-10**6, 10**6, n + 1)]
    assert convolve(_obj(a), _obj(b), n).tolist() == naive_mul(a, b, n)


def test_big_integers_use_exact_path():
    rng = np.random.default_rng(1)
    a = [int(x) * 10**30 + 7 for x in rng.integers(-1000, 1000, 400)]
    b = [int(x) * 10**25 - 3 for x in rng.integers(-1000, 1000, 400)]
    assert convolve(_obj(a), _obj(b), 399).tolist() == naive_mul(a, b, 399)


def test_sparse_big_integers():
    a = [0] * 300
    a[0], a[17], a[250] = 10**40, -(10**39), 3
    b = [(-1) ** i * (10**35 + i) for i in range(300)]
    assert convolve(_obj(a), _obj(b), 299).tolist() == naive_mul(a, b, 299)


@pytest.mark.parametrize("m", [2, 3, 97, 2**31 - 1])
def test_mod_paths_match_naive(m):
    rng = np.random.default_rng(m)
    a = rng.integers(0, m, 600).astype(np.int64)
    b = rng.integers(0, m, 600).astype(np.int64)
    expect = naive_mul(a.tolist(), b.tolist(), 599, m)
    assert convolve(a, b, 599, m).tolist() == expect
    sparse = np.zeros(600, dtype=np.int64)
    sparse[::37] = a[::37]
    assert convolve(sparse, b, 599, m).tolist() == naive_mul(sparse.tolist(), b.tolist(), 599, m)


def test_digit_width():
    assert _kernels._digit_width(7) == 1
    assert _kernels._digit_width(9) == 2
    assert _kernels._digit_width(64) == 8
    assert _kernels._digit_width(65) == 16


@given(st.lists(st.integers(-2**70, 2**70), min_size=1, max_size=60),
       st.lists(st.integers(-2**70, 2**70), min_size=1, max_size=60))
@example(a=[2**63], b=[0])
def test_random_signed_big(a, b):
    n = min(len(a), len(b)) - 1
    assert convolve(_obj(a), _obj(b), n).tolist() == naive_mul(a, b, n)
