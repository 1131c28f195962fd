from fractions import Fraction

import pytest

from regbip.newman import (
    NEWMAN_I_GRID, NEWMAN_II_INSTANCES, NEWMAN_II_PRIMES, NewmanIIParams, NewmanIParams,
    gamma0, newman1_verify, newman2_gamma0_constant, newman2_verify, w1, w2, w3,
)
from regbip.ntheory import legendre
from regbip.report import Status
from regbip.series import TruncationError


def test_newman1_class_validation():
    with pytest.raises(ValueError):
        NewmanIParams("f1f7", 5)
    with pytest.raises(ValueError):
        NewmanIParams("f1f2", 41 + 2)
    with pytest.raises(ValueError):
        NewmanIParams("f1^5f2", 97 - 24 * 3 + 2)
    with pytest.raises(ValueError):
        NewmanIParams("f1f3", 7)


def test_newman1_shifts_and_multipliers():
    assert NewmanIParams("f1f7", 7).shift == 2
    assert NewmanIParams("f1f5", 13).shift == 3
    assert NewmanIParams("f1f2", 17).shift == 2
    assert NewmanIParams("f1^5f2", 73).shift == 21
    assert NewmanIParams("f1^9f2", 73).shift == 33
    assert NewmanIParams("f1^11f2", 73).shift == 39
    assert NewmanIParams("f1^9f2", 97).multiplier == 97 ** 4
    assert NewmanIParams("f1f7", 7).multiplier == 0
    assert NewmanIParams("f1f7", 13).multiplier == 1 * (-1)  # (7/13) = -1
    assert NewmanIParams("f1f7", 7).hypothesis_form() == (3, 1)
    assert NewmanIParams("f1^9f2", 73).hypothesis_form() == (24, 11)


@pytest.mark.parametrize("sid,p,trunc", [("f1f7", 7, 1500), ("f1f5", 5, 1200), ("f1^5f2", 73, 20000)])
def test_newman1_examples(sid, p, trunc):
    rep = newman1_verify(NewmanIParams(sid, p), trunc)
    assert rep.status is Status.PASS
    assert rep.n_range[1] >= 200


@pytest.mark.parametrize("sid,p", [(s, p) for s, ps in NEWMAN_I_GRID.items() for p in ps])
def test_newman1_reduced_relation_skips_excluded_n(sid, p):
    params = NewmanIParams(sid, p)
    rep = newman1_verify(params, p * 300 + params.shift, reduced=True)
    assert rep.status is Status.PASS
    assert rep.skipped_n > 0
    assert rep.checked + rep.skipped_n == rep.n_range[1] + 1


def test_newman1_detects_wrong_series():
    params = NewmanIParams("f1f5", 13)
    wrong = NewmanIParams("f1f7", 13).series(2000)
    rep = newman1_verify(params, 2000, series=wrong)
    assert rep.status is Status.FAIL
    w = rep.witnesses[0]
    assert w.lhs != w.rhs


def test_newman1_truncation_guard():
    with pytest.raises(TruncationError):
        newman1_verify(NewmanIParams("f1f7", 7), 5)


def test_newman2_derived_quantities():
    p = NewmanIIParams(3, 2, 1, 7)
    assert p.epsilon == Fraction(3, 2) and p.t == Fraction(5, 24) and p.Delta == 10
    p = NewmanIIParams(3, 6, 1, 5)
    assert p.epsilon == Fraction(7, 2) and p.t == Fraction(3, 8) and p.Delta == 9
    assert p.half_power == 25 and p.back_power == 5 ** 5
    p = NewmanIIParams(5, 2, 1, 7)
    assert p.t == Fraction(7, 24) and p.Delta == 14


def test_newman2_theta_symbol_is_legendre_of_minus_6_or_minus_10():
    for p in (5, 7, 11, 13, 17, 19, 23):
        assert NewmanIIParams(3, 2, 1, p).theta_symbol == legendre(-6, p)
        assert NewmanIIParams(3, 6, 1, p).theta_symbol == legendre(-6, p)
        assert NewmanIIParams(5, 2, 1, p).theta_symbol == legendre(-10, p)


def test_newman2_validation():
    with pytest.raises(ValueError):
        NewmanIIParams(3, 2, 2, 5)
    with pytest.raises(ValueError):
        NewmanIIParams(3, 0, 1, 5)
    with pytest.raises(ValueError):
        NewmanIIParams(3, 2, -1, 5)  # epsilon = 1/2
    with pytest.raises(ValueError):
        NewmanIIParams(3, 2, 1, 3)
    with pytest.raises(ValueError):
        NewmanIIParams(4, 2, 1, 5)


def test_w1_at_7_and_a1_at_10():
    params = NewmanIIParams(3, 2, 1, 7)
    assert params.series(10)[10] == 0
    assert w1(7) == 1


def test_w_constants_calibrated_at_zero():
    a1 = NewmanIIParams(3, 2, 1, 5).series(20)
    assert w1(5) == a1[5]  # the Legendre term vanishes since 5 | Delta
    a3 = NewmanIIParams(5, 2, 1, 7).series(20)
    assert w3(7) == a3[14]
    assert [w1(p) for p in (5, 7, 11, 13)] == [3, 1, 3, -4]
    assert [w2(p) for p in (5, 7, 11, 13)] == [-66, -176, 60, -658]
    assert [w3(p) for p in (5, 7, 11, 13)] == [1, 4, 0, 2]


def test_newman2_truncation_guard():
    with pytest.raises(TruncationError):
        newman2_gamma0_constant(NewmanIIParams(3, 2, 1, 7), 5)
    with pytest.raises(TruncationError):
        newman2_verify(NewmanIIParams(3, 2, 1, 7), 40)


@pytest.mark.parametrize("which", sorted(NEWMAN_II_INSTANCES))
@pytest.mark.parametrize("p", NEWMAN_II_PRIMES)
def test_newman2_identity(which, p):
    q, r, s = NEWMAN_II_INSTANCES[which]
    params = NewmanIIParams(q, r, s, p)
    rep = newman2_verify(params, p * p * 50 + params.delta_int)
    if p == q:
        # the identity as stated breaks down when p equals q; see the next test
        assert rep.status is Status.FAIL
    else:
        assert rep.status is Status.PASS
    assert any("agrees" in note for note in rep.notes)


def test_p_equal_q_holds_without_back_term():
    params = NewmanIIParams(5, 2, 1, 5)
    a = params.series(25 * 200 + params.delta_int)
    w = newman2_gamma0_constant(params, series=a)
    bad_full, bad_dropped = [], []
    for n in range(201):
        lhs = a[25 * n + params.delta_int]
        g = gamma0(params, w, n)
        if lhs != g * a[n] - params.back_power * a[Fraction(n - params.delta_int, 25)]:
            bad_full.append(n)
        if lhs != g * a[n]:
            bad_dropped.append(n)
    assert bad_dropped == []
    assert bad_full and all(n % 25 == params.delta_int for n in bad_full)


def test_alternative_reading_of_w_breaks_the_identity():
    # reading the second symbol's argument as -Delta/p (a rational) instead of -Delta mod p
    params = NewmanIIParams(3, 2, 1, 5)
    a = params.series(25 * 40 + 5)
    alt = a[5] + params.theta_symbol * params.half_power * legendre(-1, 5)
    assert alt != newman2_gamma0_constant(params, series=a)
    mismatches = [n for n in range(40)
                  if a[25 * n + 5] != gamma0(params, alt, n) * a[n] - a[Fraction(n - 5, 25)]]
    assert mismatches
