"""Exact-arithmetic core: Coefficient, Polynomial, SparsePoly, checkers, Sturm."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from logconcave import (
    Coefficient,
    DegreeTooSmall,
    ExponentOverflow,
    FormatError,
    Polynomial,
    ResourceLimit,
    SparsePoly,
    ZeroPolynomial,
    check_kurtz,
    check_newton,
    check_strong,
    check_tau_logconcave,
    format_coefficient,
    format_polynomial,
    format_sparse,
    parse_coefficient,
    parse_polynomial,
    parse_signed_coeffs,
    parse_sparse,
    set_limits,
    sturm_distinct_real_roots,
)

# -- strategies -------------------------------------------------------------

small_fractions = st.builds(
    Fraction, st.integers(0, 1000), st.integers(1, 1000)
)
dyadics = st.builds(
    lambda m, p: Coefficient(m, p),
    st.fractions(min_value=0, max_value=10**6),
    st.integers(-60, 60),
)
positive_dyadics = st.builds(
    lambda m, p: Coefficient(m, p),
    st.fractions(min_value=Fraction(1, 10**4), max_value=10**6),
    st.integers(-60, 60),
)


def poly(coeffs):
    return Polynomial([Coefficient(c) if not isinstance(c, Coefficient) else c for c in coeffs])


# -- Coefficient canonical form ---------------------------------------------


def test_canonical_splits_out_powers_of_two():
    c = Coefficient(12)
    assert (c.mantissa, c.pow2) == (Fraction(3), 2)
    c = Coefficient(Fraction(5, 8))
    assert (c.mantissa, c.pow2) == (Fraction(5), -3)
    c = Coefficient(Fraction(6, 10))
    assert (c.mantissa, c.pow2) == (Fraction(3, 5), 0)
    c = Coefficient(0, 17)
    assert (c.mantissa, c.pow2) == (Fraction(0), 0)
    c = Coefficient(Coefficient(3, 4), 2)
    assert (c.mantissa, c.pow2) == (Fraction(3), 6)


def test_equal_values_are_structurally_equal():
    assert Coefficient(Fraction(1, 2)) == Coefficient(1, -1)
    assert hash(Coefficient(6)) == hash(Coefficient(3, 1))


def test_negative_rejected_and_immutable():
    with pytest.raises(ValueError):
        Coefficient(-1)
    with pytest.raises(AttributeError):
        Coefficient(1).pow2 = 3  # type: ignore[misc]


@given(dyadics)
def test_canonical_mantissa_is_odd_over_odd(c):
    if not c.is_zero:
        assert c.mantissa.numerator % 2 == 1
        assert c.mantissa.denominator % 2 == 1


# -- Coefficient arithmetic and comparison ----------------------------------


def test_arithmetic_basics():
    assert Coefficient(3, 2) * Coefficient(5, -3) == Coefficient(15, -1)
    assert Coefficient(2) + Coefficient(2) == Coefficient(1, 2)
    assert Coefficient(3, 1) ** 3 == Coefficient(27, 3)
    assert Coefficient(0) + Coefficient(7) == Coefficient(7)
    assert (Coefficient(0) * Coefficient(7)).is_zero
    assert Coefficient(5) ** 0 == Coefficient(1)
    assert (Coefficient(0) ** 3).is_zero
    with pytest.raises(ZeroDivisionError):
        Coefficient(0) ** 0


def test_compare_screens_huge_exponent_gaps():
    # 2^(10^6) vs 10^9: decided from bit lengths, no million-bit integers
    assert Coefficient(1, 10**6) > Coefficient(10**9)
    assert Coefficient(10**9) < Coefficient(1, 10**6)
    assert Coefficient(1, 10**6).compare(Coefficient(1, 10**6)) == 0


def test_compare_tight_cases():
    assert Coefficient(Fraction(3, 5)) < Coefficient(Fraction(5, 8))
    assert Coefficient(7, -3) > Coefficient(13, -4)  # 7/8 vs 13/16
    assert Coefficient(0) < Coefficient(Fraction(1, 10**9))


def test_resource_caps():
    with pytest.raises(ResourceLimit):
        Coefficient(1, 10**8) + Coefficient(1)
    with pytest.raises(ResourceLimit):
        Coefficient(1, 10**7).as_fraction()
    with pytest.raises(ExponentOverflow):
        Coefficient(3) ** (10**9)


@given(dyadics, dyadics)
def test_mul_matches_fractions(a, b):
    assert (a * b).as_fraction() == a.as_fraction() * b.as_fraction()


@given(dyadics, dyadics)
def test_add_matches_fractions(a, b):
    assert (a + b).as_fraction() == a.as_fraction() + b.as_fraction()


@given(dyadics, dyadics)
def test_compare_matches_fractions(a, b):
    fa, fb = a.as_fraction(), b.as_fraction()
    assert a.compare(b) == (fa > fb) - (fa < fb)


@given(dyadics, st.integers(0, 12))
def test_pow_matches_fractions(a, e):
    if a.is_zero and e == 0:
        return
    assert (a**e).as_fraction() == a.as_fraction() ** e


# -- coefficient text grammar ------------------------------------------------


def test_format_examples():
    assert format_coefficient(Coefficient(0)) == "0"
    assert format_coefficient(Coefficient(1)) == "1"
    assert format_coefficient(Coefficient(7)) == "7"
    assert format_coefficient(Coefficient(Fraction(3, 5))) == "3/5"
    assert format_coefficient(Coefficient(1, 32)) == "2^32"
    assert format_coefficient(Coefficient(1, -4)) == "2^-4"
    assert format_coefficient(Coefficient(3, 2)) == "3/1*2^2"
    assert format_coefficient(Coefficient(Fraction(3, 4))) == "3/1*2^-2"


def test_parse_examples():
    assert parse_coefficient("12") == Coefficient(12)
    assert parse_coefficient("3/5") == Coefficient(Fraction(3, 5))
    assert parse_coefficient("2^32") == Coefficient(1, 32)
    assert parse_coefficient("2^-7") == Coefficient(1, -7)
    assert parse_coefficient("3/1*2^2") == Coefficient(12)
    assert parse_coefficient(" 5/7*2^-3 ") == Coefficient(Fraction(5, 7), -3)
    assert parse_coefficient("0") == Coefficient(0)


@pytest.mark.parametrize("bad", ["", "abc", "1/0", "2^^3", "-3", "1/2/3", "2^", "^3"])
def test_parse_rejects_garbage(bad):
    with pytest.raises(FormatError):
        parse_coefficient(bad)


@given(dyadics)
def test_coefficient_round_trip(c):
    assert parse_coefficient(format_coefficient(c)) == c


# -- Polynomial --------------------------------------------------------------


def test_polynomial_trims_and_reports_degree():
    p = poly([1, 2, 0, 0])
    assert p.degree == 1
    z = poly([0])
    assert z.is_zero and z.degree == 0
    assert poly([0, 0, 0]).is_zero


def test_polynomial_mul_add():
    p = poly([1, 1])
    q = poly([1, 2])
    assert p * q == poly([1, 3, 2])
    assert p + q == poly([2, 3])
    assert (p * poly([0])).is_zero


def test_polynomial_eval():
    p = poly([1, 3, 2])
    assert p.eval(Fraction(2)) == 15
    assert p.eval(Fraction(-1, 2)) == Fraction(0)


def test_degree_cap():
    set_limits(max_dense_degree=10)
    try:
        with pytest.raises(ResourceLimit):
            poly([1] * 12)
    finally:
        set_limits(max_dense_degree=10**6)


@given(st.lists(small_fractions, min_size=1, max_size=6),
       st.lists(small_fractions, min_size=1, max_size=6),
       st.fractions(min_value=-10, max_value=10))
def test_mul_evaluates_pointwise(a, b, x):
    p, q = poly(a), poly(b)
    assert (p * q).eval(x) == p.eval(x) * q.eval(x)
    assert (p + q).eval(x) == p.eval(x) + q.eval(x)


@given(st.lists(positive_dyadics, min_size=1, max_size=6),
       st.lists(positive_dyadics, min_size=1, max_size=6))
def test_mul_degree_additivity(a, b):
    p, q = Polynomial(a), Polynomial(b)
    assert (p * q).degree == p.degree + q.degree


# -- SparsePoly ---------------------------------------------------------------


def test_sparse_basics():
    s = SparsePoly([(5, 1), (0, 2), (5, 3)])
    assert s.terms == ((0, Coefficient(2)), (5, Coefficient(4)))
    assert s.degree == 5 and s.term_count() == 2
    with pytest.raises(ZeroPolynomial):
        SparsePoly([]).degree
    with pytest.raises(ValueError):
        SparsePoly([(-1, 1)])


def test_sparse_mul_and_dense_agree():
    s = SparsePoly([(0, 1), (5, 1)])
    t = SparsePoly([(0, 1), (7, 1)])
    u = s * t
    assert u.terms == tuple(
        (e, Coefficient(1)) for e in (0, 5, 7, 12)
    )
    assert u.to_polynomial() == s.to_polynomial() * t.to_polynomial()


def test_sparse_dense_cap():
    with pytest.raises(ResourceLimit):
        SparsePoly([(10**6, 1)]).to_polynomial()


def test_sparse_huge_exponents_stay_symbolic():
    s = SparsePoly([(10**30, Coefficient(1, 10**20))])
    assert (s * s).terms == ((2 * 10**30, Coefficient(1, 2 * 10**20)),)


# -- Newton / log-concavity checkers ------------------------------------------


def test_newton_strict_on_distinct_root_product():
    # (X+1)(X+2)(X+3): 121 >= 108 and 36 >= 33, both strict
    p = poly([6, 11, 6, 1])
    rep = check_newton(p)
    assert rep.holds_weak and rep.holds_strict and rep.failures == ()


def test_newton_equality_on_repeated_root():
    rep = check_newton(poly([1, 3, 3, 1]))
    assert rep.holds_weak and not rep.holds_strict and rep.failures == ()


def test_newton_failure_indices():
    rep = check_newton(poly([1, 1, 1]))
    assert not rep.holds_weak and rep.failures == (1,)


def test_newton_needs_degree_two():
    with pytest.raises(DegreeTooSmall):
        check_newton(poly([1, 1]))


def test_kurtz_examples():
    assert check_kurtz(poly([1, 3, 2])).holds  # 9 > 8
    rep = check_kurtz(poly([1, 2, 2]))  # 4 > 8 fails
    assert not rep.holds and rep.failures == (1,)
    # zero constant term allowed
    rep = check_kurtz(poly([0, 1, 1, 1]))
    assert not rep.holds and rep.failures == (2,)
    assert check_kurtz(poly([0, 1, 3])).holds


def test_zero_interior_coefficient_reported():
    rep = check_kurtz(poly([1, 0, 1]))
    assert not rep.holds and rep.failures == (1,)


def test_tau_parameter():
    p = poly([1, 4, 4, 1])
    assert check_tau_logconcave(p, 2).holds
    rep = check_tau_logconcave(p, 16)
    assert not rep.holds and rep.failures == (1, 2)
    assert not check_tau_logconcave(p, 4).holds  # 16 > 16 fails strictly
    assert check_tau_logconcave(p, Fraction(3, 2)).holds
    assert check_tau_logconcave(poly([5, 3]), 100).holds  # d=1: positivity only
    with pytest.raises(DegreeTooSmall):
        check_tau_logconcave(poly([3]), 4)
    with pytest.raises(ValueError):
        check_tau_logconcave(p, 0)


def test_tau_accepts_coefficient():
    assert check_tau_logconcave(poly([1, 4, 4, 1]), Coefficient(1, 1)).holds


def test_strong_check_power_of_two_family_member():
    # degree 3, condition constant 3^6 = 729: 2^64 > 729 * 2^32
    p = Polynomial([Coefficient(1), Coefficient(1, 32), Coefficient(1, 32), Coefficient(1)])
    assert check_strong(p).holds
    q = Polynomial([Coefficient(1), Coefficient(1, 4), Coefficient(1, 4), Coefficient(1)])
    assert not check_strong(q).holds  # 2^8 > 729 * 2^4 is false


def test_strong_degree_cap():
    set_limits(max_strong_degree=3)
    try:
        with pytest.raises(ResourceLimit):
            check_strong(poly([1] * 5))
    finally:
        set_limits(max_strong_degree=5000)


@given(st.lists(positive_dyadics, min_size=3, max_size=7),
       st.fractions(min_value=Fraction(1, 4), max_value=100))
def test_tau_condition_is_monotone_in_tau(coeffs, tau):
    p = Polynomial(coeffs)
    if check_tau_logconcave(p, tau).holds:
        assert check_tau_logconcave(p, tau / 2).holds


@given(st.lists(positive_dyadics, min_size=3, max_size=7))
def test_kurtz_implies_strict_newton(coeffs):
    p = Polynomial(coeffs)
    if check_kurtz(p).holds:
        assert check_newton(p).holds_strict


# -- Sturm --------------------------------------------------------------------


@pytest.mark.parametrize(
    "coeffs,count",
    [
        ([1, 0, 1], 0),  # X^2 + 1
        ([1, 3, 2], 2),
        ([1, 2, 1], 1),  # (X+1)^2, distinct roots only
        ([0, -1, 0, 1], 3),  # X^3 - X
        ([0, 0, 0, 0, 0, 1], 1),  # X^5
        ([5], 0),
        ([3, 2], 1),
        ([-6, 11, -6, 1], 3),  # (X-1)(X-2)(X-3)
        ([2, -3, 0, 1], 2),  # (X-1)^2 (X+2)
        ([Fraction(1, 2), Fraction(3, 2), 1], 2),
    ],
)
def test_sturm_frozen_counts(coeffs, count):
    assert sturm_distinct_real_roots(coeffs) == count


def test_sturm_accepts_polynomial_objects():
    assert sturm_distinct_real_roots(poly([6, 11, 6, 1])) == 3


def test_sturm_zero_polynomial_rejected():
    with pytest.raises(ZeroPolynomial):
        sturm_distinct_real_roots([0, 0])
    with pytest.raises(ZeroPolynomial):
        sturm_distinct_real_roots([])


def test_sturm_wilkinson_ten():
    coeffs = [1]
    for r in range(1, 11):
        coeffs = [0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= r * coeffs[i + 1]
    assert sturm_distinct_real_roots(coeffs) == 10


@settings(deadline=None)
@given(st.lists(st.integers(-8, 8), min_size=1, max_size=6))
def test_sturm_counts_distinct_roots_of_split_products(roots):
    coeffs = [1]
    for r in roots:
        coeffs = [0] + coeffs
        for i in range(len(coeffs) - 1):
            coeffs[i] -= r * coeffs[i + 1]
    assert sturm_distinct_real_roots(coeffs) == len(set(roots))


# -- polynomial text format ----------------------------------------------------


def test_parse_polynomial_text():
    p = parse_polynomial("# comment\n0 1\n\n1 3\n2 2  # trailing\n")
    assert p == poly([1, 3, 2])
    assert parse_polynomial("3 2^5\n3 2^5\n") == Polynomial(
        [Coefficient(0)] * 3 + [Coefficient(1, 6)]
    )
    assert parse_polynomial("").is_zero


@pytest.mark.parametrize("bad", ["x 1", "1", "1 2 3", "-1 2", "1 -2", "2 1/0"])
def test_parse_polynomial_rejects(bad):
    with pytest.raises(FormatError):
        parse_polynomial(bad)


def test_signed_parse_for_root_counting():
    assert parse_signed_coeffs("0 -6\n1 11\n2 -6\n3 1\n") == [-6, 11, -6, 1]
    assert parse_signed_coeffs("0 +1/2\n2 -2^3\n") == [Fraction(1, 2), 0, -8]


def test_sparse_round_trip():
    s = SparsePoly([(0, 1), (10**9, Coefficient(3, -1))])
    assert parse_sparse(format_sparse(s)) == s


@given(st.lists(dyadics, min_size=1, max_size=8))
def test_dense_round_trip(coeffs):
    p = Polynomial(coeffs)
    assert parse_polynomial(format_polynomial(p)) == p
