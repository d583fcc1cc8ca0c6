from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from sumprod import (
    DegenerateInputError, Line, ParseError, PlanarPointSet, Point2, Scalar, ZeroDivisorError,
    canonical_line, line_through_points,
)
from sumprod.exact import point_on_line, unify

fracs = st.fractions(max_denominator=12).filter(lambda q: abs(q) < 50)
gauss = st.builds(lambda a, b: Scalar(a, b, True), fracs, fracs)
reals = st.builds(lambda a: Scalar(a, 0, False), fracs)
scalars = st.one_of(reals, gauss)


@pytest.mark.parametrize("text, re, im, cplx", [
    ("3", 3, 0, False),
    ("-1/2", Fraction(-1, 2), 0, False),
    ("4/6", Fraction(2, 3), 0, False),
    ("2/3i", 0, Fraction(2, 3), True),
    ("-i", 0, -1, True),
    ("3+2/5i", 3, Fraction(2, 5), True),
    ("1-i", 1, -1, True),
    (" 7 ", 7, 0, False),
])
def test_parse(text, re, im, cplx):
    s = Scalar.parse(text)
    assert (s.re, s.im, s.is_complex) == (re, im, cplx)


@pytest.mark.parametrize("text", ["", "1.5", "1/0", "i3", "1+", "2//3", "3+2/5j", "abc"])
def test_parse_rejects(text):
    with pytest.raises(ParseError):
        Scalar.parse(text)


def test_render_forms():
    assert Scalar(Fraction(-3, 4)).render() == "-3/4"
    assert Scalar(3, Fraction(-2, 5), True).render() == "3-2/5i"
    assert Scalar(0, 1, True).render() == "0+1i"
    assert Scalar(5, 0, True).render() == "5+0i"


@given(scalars)
def test_render_parse_roundtrip(s):
    back = Scalar.parse(s.render())
    assert back == s and back.is_complex == s.is_complex


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not b.is_zero():
        assert (a / b) * b == a


def test_gaussian_division():
    q = Scalar(1, 2, True) / Scalar(3, -1, True)
    assert q == Scalar(Fraction(1, 10), Fraction(7, 10), True)


def test_division_by_zero():
    with pytest.raises(ZeroDivisorError):
        Scalar(1) / Scalar(0)
    with pytest.raises(ZeroDivisionError):
        Scalar(1) / 0


def test_floats_rejected():
    with pytest.raises(TypeError):
        Scalar.coerce(0.5)


def test_equality_ignores_tag_and_promotion():
    assert Scalar(2) == Scalar(2, 0, True)
    assert hash(Scalar(2)) == hash(Scalar(2, 0, True))
    assert all(v.is_complex for v in unify([1, Scalar(0, 1, True)]))


def test_immutable():
    with pytest.raises(AttributeError):
        Scalar(1).re = 2


def test_line_canonical_form():
    l1 = canonical_line(2, 4, 6)
    l2 = canonical_line(-1, -2, -3)
    assert l1 == l2 and l1.triple() == (1, 2, 3)
    assert canonical_line(0, 3, 6).triple() == (0, 1, 2)
    with pytest.raises(DegenerateInputError):
        canonical_line(0, 0, 1)


@given(gauss, gauss, gauss, gauss)
def test_line_through_points_contains_both(a, b, c, d):
    p, q = Point2(a, b), Point2(c, d)
    if p == q:
        with pytest.raises(DegenerateInputError):
            line_through_points(p, q)
        return
    l = line_through_points(p, q)
    assert point_on_line(p, l) and point_on_line(q, l)


def test_translate():
    l = Line(1, -1, 0)
    assert l.translate(Point2(1, 0)).c == 1
    assert l.translate(Point2(0, 1)).c == -1


def test_point_and_line_text():
    p = Point2.parse("1/2;3-i")
    assert p.field == "complex" and p.render() == "1/2+0i;3-1i"
    assert Line.parse("2;2;4") == Line(1, 1, 2)
    with pytest.raises(ParseError):
        Point2.parse("1;2;3")


def test_point_set_dedup_and_order():
    s = PlanarPointSet([Point2(1, 0), Point2(0, 1), Point2(1, 0)])
    assert len(s) == 2 and list(s)[0] == Point2(0, 1)
