from hypothesis import given, strategies as st

from arthurcalc.halfint import HalfInt, bracket_sign, hrange, sign_pow


def test_str():
    assert str(HalfInt(4)) == "2"
    assert str(HalfInt(3)) == "3/2"
    assert str(HalfInt(-1)) == "-1/2"


def test_floor_toward_minus_infinity():
    assert HalfInt(1).floor() == 0    # [1/2] = 0
    assert HalfInt(-1).floor() == -1  # [-1/2] = -1
    assert HalfInt(3).floor() == 1
    assert HalfInt(-3).floor() == -2
    assert HalfInt(4).floor() == 2


def test_bracket_sign():
    assert bracket_sign(HalfInt(2)) == -1   # [1] = 1
    assert bracket_sign(HalfInt(4)) == 1    # [2] = 2
    assert bracket_sign(HalfInt(1)) == 1    # [1/2] = 0
    assert bracket_sign(HalfInt(3)) == -1   # [3/2] = 1


def test_hrange():
    assert [x.twice for x in hrange(HalfInt(1), HalfInt(5))] == [1, 3, 5]
    assert list(hrange(HalfInt(4), HalfInt(2))) == []
    assert [x.twice for x in hrange(HalfInt(0), HalfInt(0))] == [0]


@given(st.integers(-50, 50), st.integers(-50, 50))
def test_arithmetic_exact(a, b):
    x, y = HalfInt(a), HalfInt(b)
    assert (x + y).twice == a + b
    assert (x - y).twice == a - b
    assert (-x).twice == -a
    assert (x + 1).twice == a + 2


@given(st.integers(-30, 30))
def test_sign_pow_period(k):
    assert sign_pow(k) == sign_pow(k + 2)
    assert sign_pow(k) * sign_pow(k) == 1
