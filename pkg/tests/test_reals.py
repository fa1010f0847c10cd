from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from intuitionistic.reals import (RATIONALS, InvalidInputError, RealNumber, Side, B_map,
                                  abs_diff_lt, cantor_intersection, converge_force, cotrans,
                                  cw_at, cw_index, dyadic, eq_check, forced_indices,
                                  from_rational, le_check, lt_with_fuel, phi_bin, trisect,
                                  validate_real)
from intuitionistic.seqcode import encode

fractions = st.fractions(max_denominator=1000).filter(lambda q: abs(q) < 1000)


def test_calkin_wilf_start():
    assert [str(cw_at(k)) for k in range(7)] == ["1", "1/2", "2", "1/3", "3/2", "2/3", "3"]


def test_rational_enum_start():
    assert [str(RATIONALS.at(n)) for n in range(7)] == ["0", "1", "-1", "1/2", "-1/2", "2", "-2"]


@given(fractions)
def test_rational_enum_inverse(q):
    assert RATIONALS.at(RATIONALS.index_of(q)) == q


def test_rational_enum_injective_prefix():
    vals = [RATIONALS.at(n) for n in range(5000)]
    assert len(set(vals)) == len(vals)
    assert all(RATIONALS.index_of(q) == n for n, q in enumerate(vals))


# index size follows the continued-fraction terms, so 1/b costs about b bits
@settings(deadline=None)
@given(st.integers(min_value=1, max_value=10 ** 7), st.integers(min_value=1, max_value=10 ** 7))
def test_cw_index_large(a, b):
    q = Fraction(a, b)
    assert cw_at(cw_index(q)) == q


def test_from_rational():
    z = from_rational(0)
    assert z(17) == (0, 0)
    assert eq_check(from_rational(Fraction(1, 2)), from_rational(Fraction(1, 2)), 10)
    assert lt_with_fuel(from_rational(0), from_rational(1), 1) == 0


def test_lt_and_le():
    q = from_rational(Fraction(1, 3))
    assert lt_with_fuel(q, q, 50) is None
    assert le_check(from_rational(0), from_rational(1), 10)
    r = le_check(from_rational(1), from_rational(0), 0)
    assert not r and r.counterexample == 0


@given(fractions, fractions)
def test_le_agrees_with_rationals(a, b):
    assert bool(le_check(from_rational(a), from_rational(b), 5)) == (a <= b)
    assert (lt_with_fuel(from_rational(a), from_rational(b), 3) is not None) == (a < b)


def test_cotrans_examples():
    x, y = from_rational(0), from_rational(1)
    side, w = cotrans(x, y, 0, from_rational(Fraction(1, 2)))
    if side is Side.X_BELOW_Z:
        assert x.upper(w) < Fraction(1, 2)
    else:
        assert Fraction(1, 2) < y.lower(w)
    assert cotrans(x, y, 0, x)[0] is Side.Z_BELOW_Y
    assert cotrans(x, y, 0, y)[0] is Side.X_BELOW_Z
    with pytest.raises(ValueError):
        cotrans(y, x, 0, x)


@given(fractions, fractions, fractions)
def test_cotrans_on_rationals(a, b, c):
    if not a < b:
        return
    x, y, z = map(from_rational, (a, b, c))
    side, w = cotrans(x, y, 0, z)
    if side is Side.X_BELOW_Z:
        assert lt_with_fuel(x, z, w + 1) is not None and a < c
    else:
        assert lt_with_fuel(z, y, w + 1) is not None and c < b


def test_cantor_intersection_constant():
    z = cantor_intersection(lambda n: (from_rational(0), from_rational(0)), lambda m: 0)
    assert eq_check(z, from_rational(0), 20)


def test_cantor_intersection_half():
    half = Fraction(1, 2)
    z = cantor_intersection(lambda n: (from_rational(half - dyadic(n)), from_rational(half + dyadic(n))),
                            lambda m: m + 2)
    assert validate_real(z, 40) == []
    assert eq_check(z, from_rational(half), 40)
    for n in range(30):
        lo, hi = z(n)
        assert lo <= half <= hi


def test_cantor_intersection_apart_witness():
    # two intersection reals 1/3 apart: found once widths drop below 1/6
    def around(c):
        return cantor_intersection(lambda n: (from_rational(c - dyadic(n)), from_rational(c + dyadic(n))),
                                   lambda m: m + 2)
    x, y = around(Fraction(1, 3)), around(Fraction(2, 3))
    w = lt_with_fuel(x, y, 10)
    assert w is not None and w <= x.modulus(3)


def test_cantor_intersection_rejects_bad_nesting():
    z = cantor_intersection(lambda n: (from_rational(n % 2), from_rational(n % 2)), lambda m: m)
    with pytest.raises(InvalidInputError):
        z(3)


def test_converge_force_examples():
    idx = RATIONALS.index_of
    x = converge_force(lambda n: idx(0))
    assert eq_check(x, from_rational(0), 30)
    two = converge_force(lambda n: idx(2) if n == 1 else idx(0))
    assert forced_indices(lambda n: idx(2) if n == 1 else idx(0), 3) == [0, 0, 0, 0]
    assert eq_check(two, from_rational(0), 30)
    # the index of 1 - 2^-n has about 2^n bits, so this one stays shallow
    geo = converge_force(lambda n: idx(1 - dyadic(n)))
    assert forced_indices(lambda n: idx(1 - dyadic(n)), 5) == [idx(1 - dyadic(n)) for n in range(6)]
    assert eq_check(geo, from_rational(1), 12)
    assert abs_diff_lt(geo, 1, dyadic(8), 12) is not None


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(0, 10 ** 6), min_size=1, max_size=40))
def test_converge_force_steps(values):
    alpha = lambda n: values[n % len(values)]
    f = forced_indices(alpha, 30)
    for i in range(30):
        assert abs(RATIONALS.at(f[i + 1]) - RATIONALS.at(f[i])) <= dyadic(i)
    assert validate_real(converge_force(alpha), 30) == []


def test_phi_bin_and_B():
    assert eq_check(phi_bin(lambda n: 0), from_rational(0), 30)
    x = phi_bin(lambda n: 1 if n == 0 else 0)
    assert x(1) == (Fraction(1, 2), 1) and x(2) == (Fraction(1, 2), Fraction(3, 4))
    assert eq_check(x, from_rational(Fraction(1, 2)), 30)
    assert B_map(encode([0, 1])) == (Fraction(1, 4), Fraction(1, 2))
    assert B_map(0) == (0, 1)
    with pytest.raises(ValueError):
        B_map(encode([2]))
    with pytest.raises(ValueError):
        phi_bin(lambda n: 3)(1)


def test_phi_bin_double_expansion_is_not_apart():
    # 0111... and 1000... are two expansions of 1/2: no apartness witness
    x = phi_bin(lambda n: 0 if n == 0 else 1)
    y = phi_bin(lambda n: 1 if n == 0 else 0)
    assert lt_with_fuel(x, y, 60) is None and lt_with_fuel(y, x, 60) is None
    assert eq_check(x, y, 60)


def test_trisect():
    assert trisect(0) == (0, 1)
    assert trisect(encode([0])) == (0, Fraction(2, 3))
    assert trisect(encode([1, 1])) == (Fraction(5, 9), 1)
    with pytest.raises(ValueError):
        trisect(encode([0, 2]))


@given(st.lists(st.integers(0, 1), max_size=12))
def test_trisect_widths_and_overlap(bits):
    lo, hi = trisect(encode(bits))
    assert hi - lo == Fraction(2, 3) ** len(bits)
    assert trisect(encode(bits + [0]))[1] > trisect(encode(bits + [1]))[0]


def test_validate_real_catches_bad_modulus():
    bad = RealNumber(lambda n: (0, 1), lambda m: 0)
    assert validate_real(bad, 2)
