"""Integer encodings and exact counting kernels.

Additive questions about finite subsets of Q(i)^k are answered on integers:
components are scaled by a common denominator and the resulting integer
vectors are packed into single Python ints with a balanced Kronecker
substitution.  Packing is additive as long as the number of summands stays
within the codec's ``terms`` headroom, so sums and differences of packed
values are packed sums and differences.

The counting kernels pick a route by size: a plain ``Counter`` for small
inputs and arbitrary-size ints, a sort-based numpy route for moderate pair
counts, and an FFT convolution when the packed values are dense enough.
Every route returns exact integer counts.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np
import scipy.fft

from .errors import ComputationTooLarge

INT64_LIMIT = 2**62
SMALL_PAIRS = 4096
SPARSE_PAIRS = 20_000_000
DENSE_CELLS = 1 << 25
BIGINT_PAIRS = 6_000_000


class AdditiveCodec:
    """Common scaling and packing for a family of component vectors.

    ``families`` is a sequence of lists of equal-length tuples of Fractions.
    All families share one scale and one packing base so that packed values
    from different families can be added and subtracted.
    """

    def __init__(self, families: Sequence[Sequence[tuple]], terms: int = 2,
                 center: bool = False):
        dims = None
        den = 1
        for fam in families:
            for vec in fam:
                if dims is None:
                    dims = len(vec)
                for q in vec:
                    if q.denominator != 1:
                        den = den * q.denominator // gcd(den, q.denominator)
        self.dims = dims or 1
        self.scale = den
        scaled = [[tuple(int(q * den) for q in vec) for vec in fam] for fam in families]
        offsets = [0] * self.dims
        if center:
            for j in range(self.dims):
                vals = [v[j] for fam in scaled for v in fam]
                if vals:
                    offsets[j] = (min(vals) + max(vals)) // 2
            scaled = [[tuple(c - o for c, o in zip(v, offsets)) for v in fam] for fam in scaled]
        self.offsets = tuple(offsets)
        bound = 1
        active = [False] * self.dims
        for fam in scaled:
            for v in fam:
                for j, c in enumerate(v):
                    if c:
                        active[j] = True
                        if abs(c) > bound:
                            bound = abs(c)
        self.active = tuple(j for j in range(self.dims) if active[j])
        self.terms = terms
        self.base = 2 * terms * bound + 1
        self.scaled = scaled
        self.packed = [[self.pack(v) for v in fam] for fam in scaled]

    def pack(self, vec: Sequence[int]) -> int:
        out = 0
        for j in self.active:
            out = out * self.base + vec[j]
        return out

    def unpack(self, value: int) -> tuple[int, ...]:
        vec = [0] * self.dims
        half = self.base // 2
        for j in reversed(self.active):
            digit = (value + half) % self.base - half
            vec[j] = digit
            value = (value - digit) // self.base
        return tuple(vec)

    def decode(self, value: int, multiplicity: int = 0) -> tuple[Fraction, ...]:
        """Components of a packed combination, undoing scale and centering.

        ``multiplicity`` is the signed count of summands, needed only to add
        back the centering offset.
        """
        vec = self.unpack(value)
        return tuple(Fraction(c + multiplicity * o, self.scale)
                     for c, o in zip(vec, self.offsets))

    def unpack_array(self, values: np.ndarray) -> list[np.ndarray]:
        """Vectorised :meth:`unpack`; returns one array per component."""
        out = [np.zeros(len(values), dtype=values.dtype) for _ in range(self.dims)]
        half = self.base // 2
        v = values.copy()
        for j in reversed(self.active):
            digit = (v + half) % self.base - half
            out[j] = digit
            v = (v - digit) // self.base
        return out


def fits_int64(values: Sequence[int], factor: int = 1) -> bool:
    if not values:
        return True
    return max(abs(min(values)), abs(max(values))) * factor < INT64_LIMIT


def int_array(values: Sequence[int]) -> np.ndarray:
    if fits_int64(values):
        return np.asarray(values, dtype=np.int64)
    arr = np.empty(len(values), dtype=object)
    arr[:] = list(values)
    return arr


def pair_counts(xs: Sequence[int], ys: Sequence[int], sign: int = 1,
                budget: int = SPARSE_PAIRS) -> tuple[np.ndarray, np.ndarray]:
    """Keys and representation counts of ``x + sign*y`` over all pairs.

    Keys are returned sorted.  Raises :class:`ComputationTooLarge` when no
    route can produce the answer within budget.
    """
    nx, ny = len(xs), len(ys)
    if nx == 0 or ny == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    npairs = nx * ny
    if npairs <= SMALL_PAIRS:
        return _counter_route(xs, ys, sign)
    if fits_int64(xs, 2) and fits_int64(ys, 2):
        x = np.asarray(xs, dtype=np.int64)
        y = np.asarray(ys, dtype=np.int64)
        if sign < 0:
            y = -y
        cells = int(x.max() - x.min()) + int(y.max() - y.min()) + 1
        if cells <= DENSE_CELLS and cells <= 8 * npairs:
            res = _dense_route(x, y)
            if res is not None:
                return res
        if npairs <= budget:
            return _sparse_route(x, y)
        if cells <= DENSE_CELLS:
            res = _dense_route(x, y)
            if res is not None:
                return res
    elif npairs <= BIGINT_PAIRS:
        return _counter_route(xs, ys, sign)
    raise ComputationTooLarge(
        f"exact pair count over {nx} x {ny} elements exceeds the work budget")


def _counter_route(xs, ys, sign):
    if sign < 0:
        c = Counter(x - y for x in xs for y in ys)
    else:
        c = Counter(x + y for x in xs for y in ys)
    keys = sorted(c)
    return int_array(keys), np.fromiter((c[k] for k in keys), dtype=np.int64, count=len(keys))


def _sparse_route(x: np.ndarray, y: np.ndarray):
    sums = np.add.outer(x, y).ravel()
    keys, counts = np.unique(sums, return_counts=True)
    return keys, counts.astype(np.int64)


def _dense_route(x: np.ndarray, y: np.ndarray):
    x0, y0 = int(x.min()), int(y.min())
    nx, ny = int(x.max()) - x0 + 1, int(y.max()) - y0 + 1
    n = nx + ny - 1
    size = scipy.fft.next_fast_len(n, real=True)
    fx = np.zeros(size)
    fy = np.zeros(size)
    np.add.at(fx, x - x0, 1.0)
    np.add.at(fy, y - y0, 1.0)
    spec = scipy.fft.rfft(fx)
    del fx
    spec *= scipy.fft.rfft(fy)
    del fy
    conv = scipy.fft.irfft(spec, size)[:n]
    del spec
    rounded = np.rint(conv)
    if np.abs(conv - rounded).max(initial=0.0) > 0.25:
        return None
    counts = rounded.astype(np.int64)
    if int(counts.sum()) != len(x) * len(y) or counts.min(initial=0) < 0:
        return None
    idx = np.nonzero(counts)[0]
    return idx.astype(np.int64) + (x0 + y0), counts[idx]


def power_sum(counts: np.ndarray, k: int) -> int:
    """Exact ``sum(c**k)`` for a nonnegative count array."""
    if len(counts) == 0:
        return 0
    cmax = int(counts.max())
    if cmax ** k * len(counts) < INT64_LIMIT:
        return int((counts.astype(np.int64) ** k).sum())
    return sum(int(c) ** k for c in counts.tolist())


def lookup(keys: np.ndarray, counts: np.ndarray, query) -> int:
    """Count stored for ``query`` in a sorted key array (0 when absent)."""
    i = int(np.searchsorted(keys, query))
    if i < len(keys) and keys[i] == query:
        return int(counts[i])
    return 0


def energy(xs: Sequence[int], ys: Sequence[int], budget: int = SPARSE_PAIRS) -> int:
    """``#{x1 - x2 = y1 - y2}`` for packed sets, as the sum of squared sum counts."""
    _, counts = pair_counts(xs, ys, 1, budget)
    return power_sum(counts, 2)
