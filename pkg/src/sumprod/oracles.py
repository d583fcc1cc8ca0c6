"""Brute-force reference counts, kept independent of the fast kernels.

Nothing here touches the integer packing or the pair-count kernels: values
are computed with :class:`Scalar` arithmetic, interned to small integer ids,
and tuples are enumerated directly (with numpy broadcasting over the ids).
Intended for sets of at most a few dozen elements.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .errors import ZeroDivisorError
from .exact import Line, Point2, point_on_line


def _interned_table(xs, ys, op) -> np.ndarray:
    """Matrix of ids with ``ids[i, j] == ids[k, l]`` iff ``op(x_i, y_j) == op(x_k, y_l)``."""
    ids: dict = {}
    table = np.empty((len(xs), len(ys)), dtype=np.int64)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            table[i, j] = ids.setdefault(op(x, y), len(ids))
    return table


def quadruple_energy(A, B) -> int:
    """``#{(a1, a2, b1, b2) : a1 - a2 = b1 - b2}`` by enumerating all quadruples."""
    xs, ys = list(A), list(B)
    if not xs or not ys:
        return 0
    ids: dict = {}
    da = np.array([ids.setdefault(x - y, len(ids)) for x, y in product(xs, xs)])
    db = np.array([ids.get(x - y, -1) for x, y in product(ys, ys)])
    return int((da[:, None] == db[None, :]).sum())


def quadruple_multiplicative_energy(A) -> int:
    """``#{a1/a2 = a3/a4}`` by enumeration."""
    xs = list(A)
    if any(x.is_zero() for x in xs):
        raise ZeroDivisorError("multiplicative energy of a set containing 0")
    r = _interned_table(xs, xs, lambda x, y: x / y).ravel()
    return int((r[:, None] == r[None, :]).sum())


def product_form_energy(A) -> int:
    """``#{a1*a2 = a3*a4}``, equal to the ratio form when 0 is not in A."""
    xs = list(A)
    p = _interned_table(xs, xs, lambda x, y: x * y).ravel()
    return int((p[:, None] == p[None, :]).sum())


def sextuple_cubic_energy(A) -> int:
    """``#{a1 - a2 = a3 - a4 = a5 - a6}`` by enumerating all 6-tuples."""
    xs = list(A)
    d = _interned_table(xs, xs, lambda x, y: x - y).ravel()
    eq = d[:, None] == d[None, :]
    # a1-a2 = a3-a4 and a3-a4 = a5-a6, over every choice of the three pairs
    return int((eq[:, :, None] & eq[None, :, :]).sum())


def incidence_count(points, lines) -> int:
    return sum(1 for p in points for l in lines if point_on_line(p, l))


def incidence_table(points, lines) -> dict[Point2, list[Line]]:
    table: dict[Point2, list[Line]] = {}
    for p in points:
        table[p] = [l for l in lines if point_on_line(p, l)]
    return table
