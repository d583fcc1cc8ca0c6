"""Deterministic set generators and set-file parsing.

A family is named by a one-line spec string:

=============================================  ===============================
``ap:START:STEP:LEN``                          arithmetic progression
``gp:START:RATIO:LEN``                         geometric progression
``convex:squares:N``, ``convex:cubes:N``,      ``{f(1), ..., f(N)}``
``convex:powers-K:N``
``randint:LO:HI:LEN:seed=S``                   LEN distinct integers in [LO, HI]
``randgauss:LO:HI:LEN:seed=S``                 LEN distinct ``x + y*i``, x, y in [LO, HI]
=============================================  ===============================

START, STEP and RATIO accept any scalar literal (``3``, ``-1/2``, ``1+2i``).
Random kinds draw from numpy's PCG64 bit generator seeded with ``S``;
bounded integers come from rejection sampling on its raw 64-bit output, so
a given spec yields the same set on every platform and numpy version that
ships PCG64.  Values already drawn are discarded and redrawn.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import _textio
from .errors import ParseError, ValidationError
from .exact import Scalar
from .sets import ElementSet

KINDS = ("ap", "gp", "convex", "randint", "randgauss")
CONVEX_FUNCTIONS = ("squares", "cubes", "powers-K")
MAX_LENGTH = 1 << 20


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple

    def render(self) -> str:
        p = self.params
        if self.kind in ("ap", "gp"):
            return f"{self.kind}:{p[0].render()}:{p[1].render()}:{p[2]}"
        if self.kind == "convex":
            return f"convex:{p[0]}:{p[1]}"
        return f"{self.kind}:{p[0]}:{p[1]}:{p[2]}:seed={p[3]}"

    __str__ = render


def _int(text: str, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", text.strip()):
        raise ValidationError(f"{what} must be an integer, got {text!r}")
    return int(text)


def _length(text: str) -> int:
    n = _int(text, "length")
    if not 1 <= n <= MAX_LENGTH:
        raise ValidationError(f"length must be between 1 and {MAX_LENGTH}, got {n}")
    return n


def _scalar(text: str, what: str) -> Scalar:
    try:
        return Scalar.parse(text)
    except ParseError as exc:
        raise ValidationError(f"{what}: {exc}") from None


def parse_family_spec(text: str) -> FamilySpec:
    """Parse and validate a family spec string."""
    parts = text.strip().split(":")
    kind = parts[0]
    if kind in ("ap", "gp"):
        if len(parts) != 4:
            raise ValidationError(f"{kind} spec is {kind}:START:STEP:LEN, got {text!r}")
        start = _scalar(parts[1], "start")
        step = _scalar(parts[2], "step" if kind == "ap" else "ratio")
        n = _length(parts[3])
        if kind == "ap" and step.is_zero() and n > 1:
            raise ValidationError("ap step must be nonzero")
        if kind == "gp" and (step.is_zero() or start.is_zero()):
            raise ValidationError("gp start and ratio must be nonzero")
        if kind == "gp" and n > 1 and _root_of_unity(step):
            raise ValidationError("gp ratio must not be a root of unity")
        return FamilySpec(kind, (start, step, n))
    if kind == "convex":
        if len(parts) != 3:
            raise ValidationError(f"convex spec is convex:FUNCTION:N, got {text!r}")
        fn = parts[1]
        m = re.fullmatch(r"powers-(\d+)", fn)
        if fn not in ("squares", "cubes") and not (m and int(m.group(1)) >= 2):
            raise ValidationError(
                f"convex function must be squares, cubes or powers-K with K >= 2, got {fn!r}")
        return FamilySpec(kind, (fn, _length(parts[2])))
    if kind in ("randint", "randgauss"):
        if len(parts) != 5 or not parts[4].startswith("seed="):
            raise ValidationError(f"{kind} spec is {kind}:LO:HI:LEN:seed=S, got {text!r}")
        lo, hi = _int(parts[1], "lo"), _int(parts[2], "hi")
        n = _length(parts[3])
        seed = _int(parts[4][5:], "seed")
        if not 0 <= seed < 2**64:
            raise ValidationError("seed must be a 64-bit unsigned integer")
        if hi < lo:
            raise ValidationError("hi must be at least lo")
        space = (hi - lo + 1) ** (2 if kind == "randgauss" else 1)
        if n > space:
            raise ValidationError(f"cannot draw {n} distinct values from {space}")
        return FamilySpec(kind, (lo, hi, n, seed))
    raise ValidationError(f"unknown family kind {kind!r}; expected one of {KINDS}")


def _root_of_unity(r: Scalar) -> bool:
    # the only roots of unity in Q(i) are 1, -1, i, -i
    return r.norm() == 1 and (r.re == 0 or r.im == 0)


class _BoundedStream:
    """Uniform integers in ``[0, span)`` by rejection on 64-bit PCG64 output."""

    def __init__(self, seed: int):
        self._gen = np.random.PCG64(seed)
        self._buf: list[int] = []

    def _raw(self) -> int:
        if not self._buf:
            self._buf = self._gen.random_raw(256).tolist()[::-1]
        return self._buf.pop()

    def below(self, span: int) -> int:
        limit = (1 << 64) - (1 << 64) % span
        while True:
            v = self._raw()
            if v < limit:
                return v % span


def generate(spec: FamilySpec | str) -> ElementSet:
    """The set named by ``spec``; a pure function of the spec."""
    if isinstance(spec, str):
        spec = parse_family_spec(spec)
    kind, p = spec.kind, spec.params
    if kind == "ap":
        start, step, n = p
        return ElementSet(start + step * i for i in range(n))
    if kind == "gp":
        start, ratio, n = p
        out, x = [], start
        for _ in range(n):
            out.append(x)
            x = x * ratio
        return ElementSet(out)
    if kind == "convex":
        fn, n = p
        k = {"squares": 2, "cubes": 3}.get(fn) or int(fn.split("-")[1])
        return ElementSet(i ** k for i in range(1, n + 1))
    lo, hi, n, seed = p
    stream = _BoundedStream(seed)
    span = hi - lo + 1
    seen: dict = {}
    while len(seen) < n:
        if kind == "randint":
            v = Scalar(lo + stream.below(span))
        else:
            re_, im = lo + stream.below(span), lo + stream.below(span)
            v = Scalar(re_, im, True)
        seen.setdefault(v, None)
    return ElementSet(seen)


def parse_set_file(data: bytes | str) -> tuple[ElementSet, list[int]]:
    """Parse a set file: one scalar per line, ``#`` comments and blank lines ignored.

    Returns the set and the line numbers of duplicate entries.  A malformed
    scalar raises :class:`~sumprod.errors.ParseError` carrying its line number.
    """
    values, dups = _textio.parse_records(data, Scalar.parse)
    return ElementSet(values), dups
