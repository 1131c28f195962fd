import numpy as np
import pytest

from regbip.hecke import FORMS, EigenResult, HeckeContext, apply_tp, context_for, eigen_check, form_character
from regbip.ntheory import legendre, primes_up_to
from regbip.series import QSeries, TruncationError, ZZ, reduce_mod


@pytest.fixture(scope="module")
def expansions():
    return {name: f.series(10**4) for name, f in FORMS.items()}


def test_leading_terms(expansions):
    a = expansions["eta3_21"]
    assert [a[n] for n in (1, 4, 7)] == [1, -1, -1]
    b = expansions["eta4_20"]
    assert [b[n] for n in (1, 5, 9)] == [1, -1, -1]
    d = expansions["eta8_16"]
    assert [d[n] for n in (1, 9, 17)] == [1, -1, -2]


@pytest.mark.parametrize("name", sorted(FORMS))
def test_support_condition(expansions, name):
    a = expansions[name]
    mod = FORMS[name].support_modulus
    nz = np.flatnonzero(a.coeffs)
    assert len(nz) > 10 and all(int(n) % mod == 1 for n in nz)


@pytest.mark.parametrize("name", sorted(FORMS))
def test_character_collapse(name):
    form = FORMS[name]
    for p in primes_up_to(500):
        if p > 2 and form.level % p:
            assert legendre(-form.level, p) == legendre(form.collapsed_disc, p)


def test_character_at_two_for_level_63():
    chi = form_character(FORMS["eta3_21"])
    assert chi(2) == 1  # -63 = 1 mod 8
    assert chi(3) == 0 and chi(7) == 0


def test_apply_tp_zero_and_truncation(expansions):
    ctx = context_for(FORMS["eta3_21"], 5)
    zero = QSeries([0] * 50, ZZ)
    assert apply_tp(zero, ctx).is_zero()
    assert apply_tp(zero, ctx).trunc == 9
    with pytest.raises(TruncationError):
        apply_tp(zero, ctx, 11)


def test_apply_tp_kills_form_at_inert_primes(expansions):
    a = expansions["eta3_21"]
    assert apply_tp(a, context_for(FORMS["eta3_21"], 2), 2000).is_zero()
    d = expansions["eta8_16"]
    assert apply_tp(d, context_for(FORMS["eta8_16"], 3), 2000).is_zero()


def test_apply_tp_by_definition(expansions):
    a = expansions["eta4_20"]
    ctx = context_for(FORMS["eta4_20"], 29)
    b = apply_tp(a, ctx, 300)
    chi = ctx.chi_p
    for n in range(301):
        back = a[n // 29] if n % 29 == 0 else 0
        assert b[n] == a[29 * n] + chi * back


def test_apply_tp_mod_m_commutes_with_reduction(expansions):
    a = expansions["eta3_21"]
    ctx = context_for(FORMS["eta3_21"], 13)
    assert apply_tp(reduce_mod(a, 7), ctx) == reduce_mod(apply_tp(a, ctx), 7)


def test_eigen_examples(expansions):
    a = expansions["eta3_21"]
    assert eigen_check(a, context_for(FORMS["eta3_21"], 5), 2000) == EigenResult(True, 0)
    assert eigen_check(a, context_for(FORMS["eta3_21"], 7), 1000) == EigenResult(True, -1)
    b = expansions["eta4_20"]
    assert eigen_check(b, context_for(FORMS["eta4_20"], 3), 2000) == EigenResult(True, 0)


def test_eigen_check_detects_non_eigen(expansions):
    coeffs = expansions["eta3_21"].tolist()[:2001]
    coeffs[20] = 1  # a(20) = 0 in the true expansion
    res = eigen_check(QSeries(coeffs, ZZ), context_for(FORMS["eta3_21"], 2), 1000)
    assert not res.is_eigen and res.witness == 10


def test_eigen_check_preconditions(expansions):
    with pytest.raises(ValueError):
        eigen_check(QSeries([0, 2, 0, 0], ZZ), context_for(FORMS["eta3_21"], 2), 1)
    with pytest.raises(ValueError):
        eigen_check(expansions["eta3_21"], context_for(FORMS["eta3_21"], 3), 10, level=63)
    with pytest.raises(TruncationError):
        eigen_check(expansions["eta3_21"], context_for(FORMS["eta3_21"], 5), 3000)
    with pytest.raises(ValueError):
        HeckeContext(1, lambda d: 1, 4)
