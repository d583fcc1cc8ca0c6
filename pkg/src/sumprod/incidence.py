"""Exact point-line incidences and the origin-line constructions built on them.

Lines are handled in parallel classes.  Every line ``a*x + b*y = c`` is
canonical, so its normal ``(a, b)`` names its direction and a point lies on
the line iff ``a*x + b*y`` equals ``c``.  After scaling the points to
Gaussian-integer coordinates, that test becomes an integer key lookup, one
vectorised pass per direction.  A point meets at most one line of each
direction, which is what makes per-direction lookups exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _codec, _textio
from .errors import DegenerateInputError, ZeroDivisorError
from .exact import Line, PlanarPointSet, Point2, Scalar, common_denominator
from .sets import ElementSet, set_size

# ---------------------------------------------------------------------------
# integer views of points and directions


class _Grid:
    """Points scaled by a common denominator to Gaussian-integer coordinates.

    ``cols`` holds ``x.re, x.im, y.re, y.im`` as integer arrays.
    """

    def __init__(self, cols: Sequence[np.ndarray], scale: int):
        self.cols = list(cols)
        self.scale = scale
        self.n = len(cols[0]) if cols else 0
        self.real = all(not np.any(c) for c in (self.cols[1], self.cols[3]))
        self.maxabs = max((_maxabs(c) for c in self.cols), default=0)

    @classmethod
    def from_points(cls, points: Iterable[Point2]) -> "_Grid":
        comps = [p.components() for p in points]
        scale = common_denominator(q for vec in comps for q in vec)
        cols = [_codec.int_array([int(vec[j] * scale) for vec in comps]) for j in range(4)]
        return cls(cols, scale)

    def point(self, i: int) -> Point2:
        xr, xi, yr, yi = (Fraction(int(c[i]), self.scale) for c in self.cols)
        return Point2(Scalar(xr, xi, not self.real), Scalar(yr, yi, not self.real))

    def as_object(self) -> list[np.ndarray]:
        return [c.astype(object) for c in self.cols]


def _maxabs(arr: np.ndarray) -> int:
    if len(arr) == 0:
        return 0
    return max(abs(int(arr.min())), abs(int(arr.max())))


def _coeffs(a: Scalar, b: Scalar) -> tuple[int, int, int, int, int]:
    lam = common_denominator((a.re, a.im, b.re, b.im))
    return lam, int(a.re * lam), int(a.im * lam), int(b.re * lam), int(b.im * lam)


def _point_keys(grid: _Grid, co) -> tuple[np.ndarray, np.ndarray | None]:
    """``lam * scale * (a*x + b*y)`` for every grid point, as Gaussian integers."""
    _, ar, ai, br, bi = co
    weight = abs(ar) + abs(ai) + abs(br) + abs(bi)
    cols = grid.cols
    if weight * grid.maxabs * 2 >= _codec.INT64_LIMIT:
        cols = grid.as_object()
    xr, xi, yr, yi = cols
    kr = ar * xr + br * yr
    if grid.real and ai == 0 and bi == 0:
        return kr, None
    kr = kr - ai * xi - bi * yi
    ki = ar * xi + ai * xr + br * yi + bi * yr
    return kr, ki


def _pack_pair(kr, ki, base: int):
    if ki is None:
        return kr
    if (_maxabs(kr) + 1) * base >= _codec.INT64_LIMIT:
        kr, ki = kr.astype(object), ki.astype(object)
    return kr * base + ki


# ---------------------------------------------------------------------------
# weighted line sets


class _Bucket:
    """All lines of one direction: offsets ``c = (kr + ki*i) / den`` and weights."""

    __slots__ = ("a", "b", "co", "kr", "ki", "den", "weights")

    def __init__(self, a, b, kr, ki, den, weights):
        self.a, self.b = a, b
        self.co = _coeffs(a, b)
        self.kr, self.ki, self.den, self.weights = kr, ki, den, weights

    def __len__(self):
        return len(self.kr)

    def line(self, i: int) -> Line:
        im = Fraction(int(self.ki[i]), self.den) if self.ki is not None else 0
        c = Scalar(Fraction(int(self.kr[i]), self.den), im, self.a.is_complex)
        return Line(self.a, self.b, c)

    def match(self, grid: _Grid):
        """Index into this bucket of the line through each grid point, or -1."""
        pkr, pki = _point_keys(grid, self.co)
        lam = self.co[0]
        unit = lam * grid.scale
        g = gcd(unit, self.den)
        mult, div = unit // g, self.den // g
        lkr, lki = self.kr, self.ki
        if (max(_maxabs(lkr), _maxabs(lki) if lki is not None else 0) * mult * 2
                >= _codec.INT64_LIMIT):
            lkr = lkr.astype(object)
            lki = lki.astype(object) if lki is not None else None
        ok = lkr % div == 0
        if lki is not None:
            ok &= lki % div == 0
        ok = np.asarray(ok, dtype=bool)
        ids = np.nonzero(ok)[0]
        tkr = (lkr[ids] // div) * mult
        tki = (lki[ids] // div) * mult if lki is not None else None
        if pki is None and tki is not None:
            pki = np.zeros(len(pkr), dtype=np.int64)
        if tki is None and pki is not None:
            tki = np.zeros(len(tkr), dtype=np.int64)
        base = 1
        if pki is not None:
            base = 2 * max(_maxabs(pki), _maxabs(tki)) + 1
        pk = _pack_pair(pkr, pki, base)
        lk = _pack_pair(tkr, tki, base)
        if pk.dtype == object or lk.dtype == object:
            pk, lk = pk.astype(object), lk.astype(object)
        out = np.full(grid.n, -1, dtype=np.int64)
        if len(lk) == 0 or grid.n == 0:
            return out
        order = np.argsort(lk, kind="stable")
        lk_sorted = lk[order]
        pos = np.searchsorted(lk_sorted, pk)
        pos_c = np.minimum(pos, len(lk_sorted) - 1)
        hit = np.asarray(lk_sorted[pos_c] == pk, dtype=bool)
        out[hit] = ids[order[pos_c[hit]]]
        return out


class WeightedLineSet:
    """Lines with positive integer weights, a weight cap ``N``, total and mean.

    Construct from a mapping ``Line -> weight`` or an iterable of lines (unit
    weights).  Storage is grouped by direction, so very large translate
    families stay compact; :meth:`items` materialises lines lazily.
    """

    def __init__(self, lines: Mapping[Line, int] | Iterable[Line] = (), cap: int | None = None):
        if not isinstance(lines, Mapping):
            lines = {l: 1 for l in lines}
        groups: dict[tuple, list] = {}
        for line, w in lines.items():
            if int(w) < 1:
                raise ValueError(f"weight of {line!r} must be a positive integer")
            groups.setdefault((line.a, line.b), []).append((line.c, int(w)))
        buckets = []
        for (a, b), entries in sorted(groups.items(),
                                      key=lambda kv: (kv[0][0].sort_key(), kv[0][1].sort_key())):
            entries.sort(key=lambda e: e[0].sort_key())
            den = common_denominator(q for c, _ in entries for q in c.components())
            kr = _codec.int_array([int(c.re * den) for c, _ in entries])
            ki = None
            if any(c.im for c, _ in entries):
                ki = _codec.int_array([int(c.im * den) for c, _ in entries])
            weights = np.array([w for _, w in entries], dtype=np.int64)
            buckets.append(_Bucket(a, b, kr, ki, den, weights))
        self._init(buckets, cap)

    def _init(self, buckets: list[_Bucket], cap, raw_total=None):
        self._buckets = buckets
        self.max_weight = max((int(b.weights.max()) for b in buckets if len(b)), default=0)
        if cap is None:
            cap = max(self.max_weight, 1)
        if cap < 1:
            raise ValueError("cap must be a positive integer")
        if self.max_weight > cap:
            raise ValueError(f"weight {self.max_weight} exceeds cap {cap}")
        self.cap = int(cap)
        self.total_weight = sum(int(b.weights.sum()) for b in buckets)
        self._size = sum(len(b) for b in buckets)
        self.raw_total = self.total_weight if raw_total is None else raw_total

    @classmethod
    def _from_buckets(cls, buckets, cap, raw_total=None) -> "WeightedLineSet":
        obj = cls.__new__(cls)
        obj._init(buckets, cap, raw_total)
        return obj

    @property
    def mean_weight(self) -> Fraction:
        if not self._size:
            return Fraction(0)
        return Fraction(self.total_weight, self._size)

    @property
    def direction_count(self) -> int:
        return sum(1 for b in self._buckets if len(b))

    def __len__(self):
        return self._size

    def items(self):
        for b in self._buckets:
            for i in range(len(b)):
                yield b.line(i), int(b.weights[i])

    def __iter__(self):
        for line, _ in self.items():
            yield line

    @property
    def lines(self) -> dict[Line, int]:
        return dict(self.items())

    def weight_array(self) -> np.ndarray:
        if not self._buckets:
            return np.zeros(0, dtype=np.int64)
        return np.concatenate([b.weights for b in self._buckets])

    def select(self, keep) -> "WeightedLineSet":
        """Sub-family of lines whose weight satisfies ``keep(weights) -> mask``."""
        out = []
        for b in self._buckets:
            mask = np.asarray(keep(b.weights), dtype=bool)
            if mask.any():
                ki = b.ki[mask] if b.ki is not None else None
                out.append(_Bucket(b.a, b.b, b.kr[mask], ki, b.den, b.weights[mask]))
        return WeightedLineSet._from_buckets(out, self.cap)

    def __repr__(self):
        return (f"WeightedLineSet({self._size} lines, W={self.total_weight}, "
                f"cap={self.cap}, mean={self.mean_weight})")


def _as_lineset(L) -> WeightedLineSet:
    return L if isinstance(L, WeightedLineSet) else WeightedLineSet(L)


def _as_grid(P) -> _Grid:
    return P if isinstance(P, _Grid) else _Grid.from_points(P)


def _line_hits(grid: _Grid, WL: WeightedLineSet):
    """Yield ``(bucket, index_per_point)`` for every direction."""
    for b in WL._buckets:
        yield b, b.match(grid)


# ---------------------------------------------------------------------------
# counting


def point_degrees(P, L, weighted: bool = False) -> np.ndarray:
    """Number (or total weight) of lines of ``L`` through each point of ``P``."""
    grid, WL = _as_grid(P), _as_lineset(L)
    deg = np.zeros(grid.n, dtype=np.int64)
    for b, idx in _line_hits(grid, WL):
        hit = idx >= 0
        deg[hit] += b.weights[idx[hit]] if weighted else 1
    return deg


def count_incidences(P, L) -> int:
    """``|{(p, l) : p on l}|``."""
    return int(point_degrees(P, L).sum())


def weighted_incidences(P, WL: WeightedLineSet) -> int:
    """Incidences with each pair ``(p, l)`` counted ``m(l)`` times."""
    return int(point_degrees(P, WL, weighted=True).sum())


def rich_points(P: PlanarPointSet, L, t: int) -> PlanarPointSet:
    """Points of ``P`` on at least ``t`` lines of ``L``."""
    pts = list(P)
    deg = point_degrees(pts, L)
    return PlanarPointSet(p for p, d in zip(pts, deg) if d >= t)


def line_degrees(P, L) -> list[tuple[Line, int]]:
    grid, WL = _as_grid(P), _as_lineset(L)
    out = []
    for b, idx in _line_hits(grid, WL):
        counts = np.bincount(idx[idx >= 0], minlength=len(b))
        out.extend((b.line(i), int(counts[i])) for i in range(len(b)))
    return out


def rich_lines(P, L, t: int) -> list[Line]:
    """Lines of ``L`` through at least ``t`` points of ``P``, in canonical order."""
    return sorted((l for l, d in line_degrees(P, L) if d >= t), key=Line.sort_key)


# ---------------------------------------------------------------------------
# origin-line constructions


def origin_line(slope: Scalar) -> Line:
    """The line ``y = slope * x``."""
    if slope.is_zero():
        raise DegenerateInputError("slope 0 does not arise from a set without 0")
    return Line(1, -(1 / slope), 0)


@dataclass(frozen=True)
class OriginDecomposition:
    """Popular lines through the origin and the grid points they carry.

    ``line_counts[i]`` is the number of points of ``A x A`` on ``lines[i]``.
    In the product case ``class_index`` is ``k`` for the selected dyadic
    class ``2**k <= n(l) < 2**(k+1)`` and ``N = 2**(k+1)``.
    """

    lines: tuple[Line, ...]
    points: PlanarPointSet
    N: int
    case: str
    line_counts: tuple[int, ...]
    slopes: tuple[Scalar, ...]
    threshold: Fraction
    class_index: int | None = None
    candidates: tuple = field(default=(), compare=False)

    @property
    def line_energy(self) -> int:
        return sum(n * n for n in self.line_counts)


def _slope_classes(A: ElementSet) -> dict[Scalar, list[tuple[Scalar, Scalar]]]:
    groups: dict[Scalar, list] = {}
    elems = list(A)
    for x in elems:
        for y in elems:
            groups.setdefault(y / x, []).append((x, y))
    return groups


def origin_line_decomposition(A: ElementSet, case: str) -> OriginDecomposition:
    """Select popular lines through the origin for the ratio or product case.

    ratio: lines carrying at least ``|A|^2 / (2|A:A|)`` points of ``A x A``;
    ``N`` is the largest number of points on a selected line.

    product: lines are grouped into dyadic classes ``2**k <= n < 2**(k+1)``
    with ``N = 2**(k+1)``; among classes with ``N >= |A|^2 / (2|A*A|)`` the one
    maximising ``|L| N^2`` is kept (ties go to the smaller ``N``).
    """
    if case not in ("ratio", "product"):
        raise ValueError("case must be 'ratio' or 'product'")
    if A.has_zero():
        raise ZeroDivisorError("origin-line decomposition needs 0 not in A")
    if not len(A):
        raise DegenerateInputError("empty set")
    groups = _slope_classes(A)
    n = len(A)
    if case == "ratio":
        thr = Fraction(n * n, 2 * len(groups))
        chosen = sorted((r for r, pts in groups.items() if len(pts) >= thr),
                        key=Scalar.sort_key)
        N = max(len(groups[r]) for r in chosen)
        k = None
        candidates = ()
    else:
        prod = set_size(A, A, "prod")
        thr = Fraction(n * n, 2 * prod)
        classes: dict[int, list] = {}
        for r, pts in groups.items():
            classes.setdefault(len(pts).bit_length() - 1, []).append(r)
        scored = []
        for k_, rs in classes.items():
            N_ = 2 ** (k_ + 1)
            if N_ >= thr:
                scored.append((len(rs) * N_ * N_, -N_, k_))
        candidates = tuple(sorted(((k_, -negN, s) for s, negN, k_ in scored)))
        _, negN, k = max(scored)
        N = -negN
        chosen = sorted(classes[k], key=Scalar.sort_key)
    lines = tuple(origin_line(r) for r in chosen)
    pts = PlanarPointSet(Point2(x, y) for r in chosen for x, y in groups[r])
    return OriginDecomposition(
        lines=lines, points=pts, N=N, case=case,
        line_counts=tuple(len(groups[r]) for r in chosen),
        slopes=tuple(chosen), threshold=thr, class_index=k, candidates=candidates)


def translate_and_weight(L: Iterable[Line], Q, cap: int) -> WeightedLineSet:
    """Translate every origin line of ``L`` to every point of ``Q``.

    Coincident translates merge; the weight of a translate is the number of
    points of ``Q`` on it, capped at ``cap``.  ``raw_total`` on the result
    keeps the uncapped total, which always equals ``|L| |Q|``.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    grid = _as_grid(Q)
    buckets = []
    raw_total = 0
    for line in L:
        if not line.through_origin():
            raise DegenerateInputError(f"{line!r} does not pass through the origin")
        co = _coeffs(line.a, line.b)
        kr, ki = _point_keys(grid, co)
        den = co[0] * grid.scale
        if ki is None:
            keys, counts = np.unique(kr, return_counts=True)
            ukr, uki = keys, None
        else:
            base = 2 * _maxabs(ki) + 1
            keys, counts = np.unique(_pack_pair(kr, ki, base), return_counts=True)
            uki = (keys + base // 2) % base - base // 2
            ukr = (keys - uki) // base
        raw_total += int(counts.sum())
        weights = np.minimum(counts.astype(np.int64), cap)
        buckets.append(_Bucket(line.a, line.b, ukr, uki, den, weights))
    return WeightedLineSet._from_buckets(buckets, cap, raw_total)


def point_codec(*point_sets, terms: int = 2) -> _codec.AdditiveCodec:
    return _codec.AdditiveCodec([[p.components() for p in ps] for ps in point_sets], terms=terms)


def sum_counts(P, Q, sign: int = 1, codec=None):
    """Packed keys and counts of ``p + sign*q``; returns ``(codec, keys, counts)``."""
    codec = codec or point_codec(P, Q)
    keys, counts = _codec.pair_counts(codec.packed[0], codec.packed[1], sign)
    return codec, keys, counts


def rich_sums(P: PlanarPointSet, Q: PlanarPointSet, t: int) -> PlanarPointSet:
    """Vector sums ``p + q`` with at least ``t`` representations."""
    codec, keys, counts = sum_counts(list(P), list(Q))
    out = []
    for k in keys[counts >= t].tolist():
        xr, xi, yr, yi = codec.decode(int(k))
        is_c = P.field == "complex" or Q.field == "complex"
        out.append(Point2(Scalar(xr, xi, is_c), Scalar(yr, yi, is_c)))
    return PlanarPointSet(out)


def grid_from_packed(codec: _codec.AdditiveCodec, keys: np.ndarray,
                     multiplicity: int = 0) -> _Grid:
    """Coordinates of packed point combinations as a :class:`_Grid`.

    ``multiplicity`` is the signed number of summands, used to undo the
    codec's centering offsets.
    """
    if keys.dtype != object and _maxabs(keys) * 2 >= _codec.INT64_LIMIT:
        keys = keys.astype(object)
    cols = codec.unpack_array(keys)
    cols = [c + multiplicity * o if o else c for c, o in zip(cols, codec.offsets)]
    if any(c.dtype == object for c in cols):
        cols = [_codec.int_array(c.tolist()) for c in cols]
    return _Grid(cols, codec.scale)


def dyadic_weight_groups(WL: WeightedLineSet) -> list[tuple[int, WeightedLineSet]]:
    """Split by weight relative to the mean ``m``: group 0 holds ``w <= m``,
    group ``j >= 1`` holds ``2**(j-1) m < w <= 2**j m``.  Empty groups are
    omitted; the groups partition ``WL``."""
    if not len(WL):
        return []
    m = WL.mean_weight
    idx = weight_group_index(WL.weight_array(), m)
    groups = []
    for j in sorted(set(idx.tolist())):
        groups.append((j, _select_group(WL, m, j)))
    return groups


def weight_group_index(weights: np.ndarray, mean: Fraction) -> np.ndarray:
    """Dyadic group of each weight, computed exactly on integers."""
    p, q = mean.numerator, mean.denominator
    out = np.zeros(len(weights), dtype=np.int64)
    w = weights.astype(object) * q
    j = 0
    bound = p
    remaining = np.asarray(w > bound, dtype=bool)
    while remaining.any():
        j += 1
        bound *= 2
        out[remaining] = j
        remaining &= np.asarray(w > bound, dtype=bool)
    return out


def _select_group(WL: WeightedLineSet, mean: Fraction, j: int) -> WeightedLineSet:
    return WL.select(lambda w: weight_group_index(w, mean) == j)


# ---------------------------------------------------------------------------
# file formats


def parse_point_file(data) -> tuple[PlanarPointSet, list[int]]:
    """Points from ``x;y`` records; returns the set and duplicate line numbers."""
    pts, dups = _textio.parse_records(data, Point2.parse)
    return PlanarPointSet(pts), dups


def parse_line_file(data) -> tuple[list[Line], list[int]]:
    """Lines from ``a;b;c`` records meaning ``a*x + b*y = c``."""
    lines, dups = _textio.parse_records(data, Line.parse)
    return sorted(lines, key=Line.sort_key), dups
