"""Exact scalars over Q and Q(i), plane points, and canonical lines.

Every set element and coordinate in the package is a :class:`Scalar`, a
Gaussian rational ``re + im*i`` with both parts held as reduced
:class:`fractions.Fraction`.  A scalar carries a field tag (``"real"`` or
``"complex"``); real-tagged scalars always have a zero imaginary part.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import lcm
from typing import Iterable

from .errors import DegenerateInputError, ParseError, ZeroDivisorError

REAL = "real"
COMPLEX = "complex"

_RAT = r"\d+(?:/\d+)?"
_REAL_RE = re.compile(rf"^([+-]?{_RAT})$")
_IMAG_RE = re.compile(rf"^([+-]?)({_RAT})?i$")
_FULL_RE = re.compile(rf"^([+-]?{_RAT})([+-])({_RAT})?i$")


def _frac(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def _render_frac(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Scalar:
    """An immutable Gaussian rational with a field tag.

    Arithmetic with ints and Fractions is supported; the result is complex
    tagged as soon as either operand is.
    """

    __slots__ = ("re", "im", "is_complex")

    def __init__(self, re=0, im=0, is_complex: bool | None = None):
        re = re if type(re) is Fraction else Fraction(re)
        im = im if type(im) is Fraction else Fraction(im)
        if is_complex is None:
            is_complex = im != 0
        elif not is_complex and im != 0:
            raise ValueError("real-tagged scalar with nonzero imaginary part")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)
        object.__setattr__(self, "is_complex", bool(is_complex))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def __reduce__(self):
        return (Scalar, (self.re, self.im, self.is_complex))

    @property
    def field(self) -> str:
        return COMPLEX if self.is_complex else REAL

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, complex):
            raise TypeError("floating complex values are not exact; use Scalar(re, im)")
        if isinstance(value, float):
            raise TypeError("floats are not exact; pass a Fraction or string")
        return cls(Fraction(value), 0, False)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse ``p``, ``p/q``, ``r/si``, ``p/q+r/si`` or ``p/q-r/si``."""
        s = text.strip()
        m = _REAL_RE.match(s)
        if m:
            return cls(_frac(m.group(1)), 0, False)
        m = _IMAG_RE.match(s)
        if m:
            mag = _frac(m.group(2)) if m.group(2) else Fraction(1)
            return cls(0, -mag if m.group(1) == "-" else mag, True)
        m = _FULL_RE.match(s)
        if m:
            mag = _frac(m.group(3)) if m.group(3) else Fraction(1)
            return cls(_frac(m.group(1)), -mag if m.group(2) == "-" else mag, True)
        raise ParseError(f"malformed scalar {text!r}")

    def render(self) -> str:
        if not self.is_complex:
            return _render_frac(self.re)
        sign = "-" if self.im < 0 else "+"
        return f"{_render_frac(self.re)}{sign}{_render_frac(abs(self.im))}i"

    __str__ = render

    def __repr__(self):
        return f"Scalar({self.render()!r})"

    def sort_key(self):
        return (self.re, self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def promote(self) -> "Scalar":
        return self if self.is_complex else Scalar(self.re, self.im, True)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im, self.is_complex)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def components(self) -> tuple[Fraction, Fraction]:
        return (self.re, self.im)

    # arithmetic ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        # agree with int/Fraction hashing, since real scalars compare equal to them
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __neg__(self):
        return Scalar(-self.re, -self.im, self.is_complex)

    def __add__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re + other.re, self.im + other.im,
                      self.is_complex or other.is_complex)

    __radd__ = __add__

    def __sub__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return Scalar(self.re - other.re, self.im - other.im,
                      self.is_complex or other.is_complex)

    def __rsub__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        if not (self.is_complex or other.is_complex):
            return Scalar(self.re * other.re, 0, False)
        return Scalar(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re, True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisorError(f"division of {self} by zero")
        if not (self.is_complex or other.is_complex):
            return Scalar(self.re / other.re, 0, False)
        n = other.norm()
        return Scalar((self.re * other.re + self.im * other.im) / n,
                      (self.im * other.re - self.re * other.im) / n, True)

    def __rtruediv__(self, other):
        other = _operand(other)
        if other is None:
            return NotImplemented
        return other / self


def _operand(value) -> Scalar | None:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value, 0, False)
    return None


ZERO = Scalar(0)
ONE = Scalar(1)


def unify(values: Iterable[Scalar]) -> list[Scalar]:
    """Coerce values to Scalars and promote all to complex if any is."""
    out = [Scalar.coerce(v) for v in values]
    if any(v.is_complex for v in out):
        out = [v.promote() for v in out]
    return out


def common_denominator(fracs: Iterable[Fraction]) -> int:
    d = 1
    for q in fracs:
        if q.denominator != 1:
            d = lcm(d, q.denominator)
    return d


class Point2:
    """A point of the plane over Q or Q(i)."""

    __slots__ = ("x", "y")

    def __init__(self, x, y):
        x, y = Scalar.coerce(x), Scalar.coerce(y)
        if x.is_complex != y.is_complex:
            x, y = x.promote(), y.promote()
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("Point2 is immutable")

    def __reduce__(self):
        return (Point2, (self.x, self.y))

    @property
    def field(self) -> str:
        return self.x.field

    def promote(self) -> "Point2":
        return self if self.x.is_complex else Point2(self.x.promote(), self.y.promote())

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.x.re, self.x.im, self.y.re, self.y.im)

    def sort_key(self):
        return (self.x.re, self.x.im, self.y.re, self.y.im)

    def __eq__(self, other):
        if not isinstance(other, Point2):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __add__(self, other: "Point2") -> "Point2":
        return Point2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Point2") -> "Point2":
        return Point2(self.x - other.x, self.y - other.y)

    def __neg__(self):
        return Point2(-self.x, -self.y)

    def render(self) -> str:
        return f"{self.x.render()};{self.y.render()}"

    def __repr__(self):
        return f"Point2({self.x.render()}, {self.y.render()})"

    @classmethod
    def parse(cls, text: str) -> "Point2":
        parts = text.split(";")
        if len(parts) != 2:
            raise ParseError(f"expected 'x;y', got {text!r}")
        return cls(Scalar.parse(parts[0]), Scalar.parse(parts[1]))


class Line:
    """The locus ``a*x + b*y = c`` stored in canonical form.

    The first nonzero coefficient among ``(a, b)`` is scaled to 1, so two
    lines are equal exactly when their coefficient triples are equal.
    Build instances with :func:`canonical_line`.
    """

    __slots__ = ("a", "b", "c")

    def __init__(self, a, b, c):
        a, b, c = unify((a, b, c))
        if a.is_zero() and b.is_zero():
            raise DegenerateInputError("line with a = b = 0")
        pivot = a if not a.is_zero() else b
        if pivot != ONE:
            a, b, c = a / pivot, b / pivot, c / pivot
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def __setattr__(self, name, value):
        raise AttributeError("Line is immutable")

    def __reduce__(self):
        return (Line, (self.a, self.b, self.c))

    @property
    def field(self) -> str:
        return self.a.field

    @property
    def direction(self) -> tuple[Scalar, Scalar]:
        """The normal pair ``(a, b)``, shared by all parallel lines."""
        return (self.a, self.b)

    def triple(self):
        return (self.a, self.b, self.c)

    def sort_key(self):
        return (self.a.sort_key(), self.b.sort_key(), self.c.sort_key())

    def through_origin(self) -> bool:
        return self.c.is_zero()

    def translate(self, p: Point2) -> "Line":
        """Shift the line by the vector ``p``."""
        return Line(self.a, self.b, self.c + self.a * p.x + self.b * p.y)

    def __eq__(self, other):
        if not isinstance(other, Line):
            return NotImplemented
        return self.a == other.a and self.b == other.b and self.c == other.c

    def __hash__(self):
        return hash((self.a, self.b, self.c))

    def render(self) -> str:
        return f"{self.a.render()};{self.b.render()};{self.c.render()}"

    def __repr__(self):
        return f"Line({self.a.render()}*x + {self.b.render()}*y = {self.c.render()})"

    @classmethod
    def parse(cls, text: str) -> "Line":
        parts = text.split(";")
        if len(parts) != 3:
            raise ParseError(f"expected 'a;b;c', got {text!r}")
        return canonical_line(*(Scalar.parse(p) for p in parts))


def canonical_line(a, b, c) -> Line:
    return Line(a, b, c)


def point_on_line(p: Point2, line: Line) -> bool:
    return line.a * p.x + line.b * p.y == line.c


def line_through_points(p: Point2, q: Point2) -> Line:
    if p == q:
        raise DegenerateInputError(f"coincident points {p!r}")
    dx, dy = q.x - p.x, q.y - p.y
    return Line(dy, -dx, dy * p.x - dx * p.y)


class PlanarPointSet:
    """A deduplicated, canonically ordered set of :class:`Point2`."""

    def __init__(self, points: Iterable[Point2] = ()):
        pts = [p if isinstance(p, Point2) else Point2(*p) for p in points]
        if any(p.x.is_complex for p in pts):
            pts = [p.promote() for p in pts]
        self.points: tuple[Point2, ...] = tuple(sorted(set(pts), key=Point2.sort_key))
        self._members = frozenset(self.points)

    @property
    def field(self) -> str:
        if self.points and self.points[0].x.is_complex:
            return COMPLEX
        return REAL

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p):
        return p in self._members

    def __eq__(self, other):
        if not isinstance(other, PlanarPointSet):
            return NotImplemented
        return self._members == other._members

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        inner = ", ".join(f"({p.x}, {p.y})" for p in self.points[:6])
        more = ", ..." if len(self.points) > 6 else ""
        return f"PlanarPointSet([{inner}{more}])"
