"""Finite sets of scalars, arithmetic set operations and representation counts."""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from typing import Iterable

from . import _codec
from .errors import ZeroDivisorError
from .exact import COMPLEX, REAL, PlanarPointSet, Point2, Scalar, unify

OPS = ("sum", "diff", "prod", "ratio")


class ElementSet:
    """A finite set of :class:`Scalar`, stored strictly sorted without duplicates.

    Accepts Scalars, ints, Fractions or scalar strings.  If any element is
    complex-tagged the whole set is promoted to the complex field.
    """

    def __init__(self, elements: Iterable = ()):
        vals = unify(elements)
        self.elements: tuple[Scalar, ...] = tuple(sorted(set(vals), key=Scalar.sort_key))
        self.field = COMPLEX if self.elements and self.elements[0].is_complex else REAL
        self._members = frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        try:
            return Scalar.coerce(x) in self._members
        except TypeError:
            return False

    def __eq__(self, other):
        if isinstance(other, ElementSet):
            return self._members == other._members
        return NotImplemented

    def __hash__(self):
        return hash(self._members)

    def __repr__(self):
        body = ", ".join(e.render() for e in self.elements[:8])
        if len(self.elements) > 8:
            body += f", ... ({len(self.elements)} elements)"
        return f"ElementSet({{{body}}})"

    def __getstate__(self):
        return {"elements": self.elements}

    def __setstate__(self, state):
        self.__init__(state["elements"])

    def has_zero(self) -> bool:
        return any(e.is_zero() for e in self.elements)

    def serialize(self) -> str:
        """Canonical text form, one element per line; the input to digests."""
        return "".join(e.render() + "\n" for e in self.elements)

    @cached_property
    def _additive(self) -> _codec.AdditiveCodec:
        return _codec.AdditiveCodec([[e.components() for e in self.elements]], terms=6)

    @cached_property
    def packed(self) -> list[int]:
        """Elements as packed integers (see :class:`sumprod._codec.AdditiveCodec`)."""
        return self._additive.packed[0]


class RepFunction:
    """Representation counts ``n(x)`` of an arithmetic set operation.

    Behaves like a read-only mapping from :class:`Scalar` to count; missing
    keys count zero.
    """

    def __init__(self, entries: dict, op: str):
        if op not in OPS:
            raise ValueError(f"unknown op {op!r}")
        self.entries: dict[Scalar, int] = dict(
            sorted(entries.items(), key=lambda kv: kv[0].sort_key()))
        self.op = op

    def __getitem__(self, key) -> int:
        return self.entries.get(Scalar.coerce(key), 0)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def items(self):
        return self.entries.items()

    def keys(self):
        return self.entries.keys()

    def values(self):
        return self.entries.values()

    def total(self) -> int:
        return sum(self.entries.values())

    def support(self) -> ElementSet:
        return ElementSet(self.entries)

    def power_sum(self, k: int) -> int:
        return sum(c ** k for c in self.entries.values())

    def __repr__(self):
        return f"RepFunction(op={self.op!r}, {len(self.entries)} keys, total={self.total()})"


def _check_op(op: str):
    if op not in OPS:
        raise ValueError(f"op must be one of {OPS}, got {op!r}")


def _additive_counts(A: ElementSet, B: ElementSet, sign: int):
    codec = _codec.AdditiveCodec([[e.components() for e in A], [e.components() for e in B]],
                                 terms=2)
    keys, counts = _codec.pair_counts(codec.packed[0], codec.packed[1], sign)
    return codec, keys, counts


def _to_scalar(comps, is_complex: bool) -> Scalar:
    return Scalar(comps[0], comps[1], is_complex)


def _multiplicative_counter(A: ElementSet, B: ElementSet, op: str) -> Counter:
    if op == "ratio" and B.has_zero():
        raise ZeroDivisorError("ratio set with 0 in the denominator set")
    if A.field == REAL and B.field == REAL:
        xs = [e.re for e in A]
        ys = [e.re for e in B]
        if op == "prod":
            c = Counter(x * y for x in xs for y in ys)
        else:
            c = Counter(x / y for x in xs for y in ys)
        return Counter({Scalar(k, 0, False): v for k, v in c.items()})
    if op == "prod":
        return Counter(a * b for a in A for b in B)
    return Counter(a / b for a in A for b in B)


def rep_function(A: ElementSet, B: ElementSet, op: str) -> RepFunction:
    """Count the ordered pairs ``(a, b)`` realising each value of ``a op b``."""
    _check_op(op)
    if op in ("prod", "ratio"):
        return RepFunction(dict(_multiplicative_counter(A, B, op)), op)
    is_complex = A.field == COMPLEX or B.field == COMPLEX
    codec, keys, counts = _additive_counts(A, B, 1 if op == "sum" else -1)
    entries = {_to_scalar(codec.decode(int(k)), is_complex): int(c)
               for k, c in zip(keys.tolist(), counts.tolist())}
    return RepFunction(entries, op)


def arithmetic_set(A: ElementSet, B: ElementSet, op: str) -> ElementSet:
    return rep_function(A, B, op).support()


def set_size(A: ElementSet, B: ElementSet, op: str) -> int:
    """``|A op B|`` without materialising the result as Scalars."""
    _check_op(op)
    if op in ("prod", "ratio"):
        return len(_multiplicative_counter(A, B, op))
    _, keys, _ = _additive_counts(A, B, 1 if op == "sum" else -1)
    return len(keys)


def slice_set(A: ElementSet, d) -> ElementSet:
    """``{a in A : a + d in A}``."""
    d = Scalar.coerce(d)
    return ElementSet(a for a in A if (a + d) in A._members)


def cartesian_grid(A: ElementSet) -> PlanarPointSet:
    return PlanarPointSet(Point2(x, y) for x in A for y in A)


def difference_profile(A: ElementSet):
    """Packed keys and counts of ``A - A``; ``counts[i] == |A_d|`` for key ``d``."""
    return _codec.pair_counts(A.packed, A.packed, -1)


def sizes(A: ElementSet) -> dict[str, int | None]:
    """|A+A|, |A-A|, |A*A| and |A:A| (the last is None when 0 is in A)."""
    out = {
        "sum": set_size(A, A, "sum"),
        "diff": set_size(A, A, "diff"),
        "prod": set_size(A, A, "prod"),
        "ratio": None,
    }
    if not A.has_zero():
        out["ratio"] = set_size(A, A, "ratio")
    return out


__all__ = [
    "ElementSet", "RepFunction", "OPS", "rep_function", "arithmetic_set",
    "set_size", "slice_set", "cartesian_grid", "sizes", "difference_profile",
]
