from fractions import Fraction

import pytest

from shearlab.rational import GaussianRational as G


def test_arithmetic():
    a, b = G(1, 2), G(Fraction(1, 2), -1)
    assert a + b == G(Fraction(3, 2), 1)
    assert a * b == G(Fraction(5, 2), 0)
    assert (a / b) * b == a
    assert G(0, 1) ** 4 == G(1)


def test_coerce():
    assert G.coerce("1/2") == G(Fraction(1, 2))
    assert G.coerce(3) == G(3)
    assert G.coerce(2.0) == G(2)
    assert G.coerce(1j) == G(0, 1)
    with pytest.raises((TypeError, ValueError)):
        G.coerce(0.1)


def test_str_and_pair():
    assert str(G(Fraction(5, 16))) == "5/16"
    assert str(G(1, -2)) == "1-2i"
    assert G(1, Fraction(1, 3)).to_pair() == ["1", "1/3"]


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        G(1) / G(0)
