import pytest
from hypothesis import given, strategies as st

from ratlattice.laurent import A, LOOP, ONE, LaurentPoly

polys = st.dictionaries(st.integers(-12, 12), st.integers(-5, 5), max_size=5).map(LaurentPoly)


def test_no_zero_coefficients():
    assert LaurentPoly({1: 0, 2: 3}).terms == {2: 3}
    assert (A - A).terms == {}


def test_loop_value():
    assert LOOP == -(A**2) - A ** -2
    assert str(LOOP) == "-A^2 - A^-2"


def test_negative_power_of_monomial():
    assert (-A**3) ** -2 == A ** -6
    assert (-A**3) ** -1 == -(A ** -3)
    with pytest.raises(ValueError):
        (A + ONE) ** -1


def test_exact_division():
    p = (A + 2) * LOOP
    assert p.exact_div(LOOP) == A + 2
    with pytest.raises(ArithmeticError):
        (A + 2).exact_div(LOOP)


@given(polys, polys, polys)
def test_ring_axioms(x, y, z):
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * ONE == x


@given(polys, polys)
def test_mirror_is_ring_map(x, y):
    assert (x * y).mirror() == x.mirror() * y.mirror()
    assert x.mirror().mirror() == x


@given(polys)
def test_evaluate_at_one(x):
    assert x.evaluate(1) == sum(x.terms.values())
