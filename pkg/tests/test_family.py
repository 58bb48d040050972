import pytest

from etaq.analytics import is_holomorphic, order_map
from etaq.core import EtaQuotient, parse_eta_quotient, true_level, weight_numerator
from etaq.family import (
    build_F,
    build_f,
    closed_form_F_even,
    closed_form_F_over_f,
    quotient_F_over_f,
    verify_family,
    zn_criterion,
    zn_membership,
)
from etaq.matrices import build_B

from fractions import Fraction


def test_f_2_4():
    f = build_f(2, 4)
    assert f.parity == "even" and f.level == 16
    assert f.exponents.as_dict() == {1: -1, 2: 1, 4: 2, 8: 1, 16: -1}
    assert order_map(f.exponents).values == (1, 13, 10, 13, 1)


def test_f_3_4_orders():
    X = build_f(3, 4).exponents
    assert order_map(X).values == (1, 145, 65, 145, 1)
    assert weight_numerator(X) == 9


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_verify_family(p, n):
    if p == 2 and n % 2:
        with pytest.raises(ValueError):
            build_f(p, n)
        return
    r = verify_family(p, n)
    assert r.ok, r.failures
    assert r.holomorphic and r.palindromic and r.level == p**n
    if n % 2 == 0:
        assert r.ord_inf_24 == r.ord0_24 == 1


def test_odd_example():
    r = verify_family(3, 5)
    assert r.ord_inf_24 == 4 and r.weight_numerator == 10


@pytest.mark.parametrize("p, n", [(4, 4), (3, 3), (3, 1)])
def test_build_f_errors(p, n):
    with pytest.raises(ValueError):
        build_f(p, n)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_F_closed_forms(p, m):
    N = p ** (2 * m)
    assert build_F(N).as_dict() == closed_form_F_even(p, m).as_dict()
    if m >= 2:
        Q = quotient_F_over_f(p, m)
        assert Q.as_dict() == closed_form_F_over_f(p, m).as_dict()
        assert is_holomorphic(Q)


def test_F_quotient_orders():
    assert order_map(quotient_F_over_f(2, 2)).values == (23, 11, 2, 11, 23)


@pytest.mark.parametrize("N", [1, 6, 12, 16, 30, 81])
def test_F_is_column_sum_and_member(N):
    F = build_F(N)
    z = zn_membership(F)
    assert z.coefficients == (Fraction(1),) * len(build_B(N))
    assert z.member and zn_criterion(F)


def test_zn_membership():
    z = zn_membership(build_f(3, 4).exponents)
    assert z.coefficients == tuple(map(Fraction, ("1/216", "145/216", "65/72", "145/216", "1/216")))
    assert z.member
    # C lies in [0,1]^n exactly when X and F/X are holomorphic
    for text in ["1^-1 2^1 4^2 8^1 16^-1", "1^1 @16", "1^-4 2^10 4^-4 @16", "1^48 @16"]:
        X = parse_eta_quotient(text)
        assert zn_membership(X).member == zn_criterion(X)
    assert not zn_membership(parse_eta_quotient("1^48 @16")).member


def test_closed_form_errors():
    with pytest.raises(ValueError):
        closed_form_F_even(4, 1)
    with pytest.raises(ValueError):
        quotient_F_over_f(2, 1)


from hypothesis import given, strategies as st


@given(st.sampled_from([4, 9, 16, 12]), st.randoms(use_true_random=False))
def test_zn_membership_equals_criterion(N, rnd):
    from etaq.core import divisors
    X = EtaQuotient.from_dict({d: rnd.randint(-3, 4) for d in divisors(N)}, N)
    assert zn_membership(X).member == zn_criterion(X)
