"""Additive, multiplicative and cubic energies and popular difference sets."""

from __future__ import annotations

from . import _codec
from .errors import ZeroDivisorError
from .sets import ElementSet, rep_function, set_size

KINDS = ("additive", "multiplicative", "cubic")


class EnergyValue(int):
    """A nonnegative integer energy tagged with its kind."""

    def __new__(cls, value: int, kind: str):
        if kind not in KINDS:
            raise ValueError(f"unknown energy kind {kind!r}")
        obj = super().__new__(cls, value)
        obj.kind = kind
        return obj

    def __repr__(self):
        return f"EnergyValue({int(self)}, {self.kind!r})"

    def __reduce__(self):
        return (EnergyValue, (int(self), self.kind))


def additive_energy(A: ElementSet, B: ElementSet) -> EnergyValue:
    """``#{(a1, a2, b1, b2) : a1 - a2 = b1 - b2}``, summed as squares of ``A - B`` counts."""
    if not len(A) or not len(B):
        return EnergyValue(0, "additive")
    codec = _codec.AdditiveCodec([[e.components() for e in A], [e.components() for e in B]])
    _, counts = _codec.pair_counts(codec.packed[0], codec.packed[1], -1)
    return EnergyValue(_codec.power_sum(counts, 2), "additive")


def multiplicative_energy(A: ElementSet) -> EnergyValue:
    """``#{a1/a2 = a3/a4}``; requires ``0 not in A``."""
    if A.has_zero():
        raise ZeroDivisorError("multiplicative energy of a set containing 0")
    return EnergyValue(rep_function(A, A, "ratio").power_sum(2), "multiplicative")


def cubic_energy(A: ElementSet) -> EnergyValue:
    _, counts = _codec.pair_counts(A.packed, A.packed, -1)
    return EnergyValue(_codec.power_sum(counts, 3), "cubic")


def slices_packed(xs: list[int], diffs) -> list[list[int]]:
    """``[x for x in xs if x + d in xs]`` for every packed difference ``d``."""
    members = set(xs)
    return [[x for x in xs if x + d in members] for d in diffs]


def cubic_energy_via_slices(A: ElementSet) -> EnergyValue:
    """Cubic energy as the sum over ``d`` in ``A - A`` of ``E(A, A_d)``.

    Walks the slices directly instead of cubing representation counts, so it
    is an independent route to :func:`cubic_energy`.
    """
    xs = A.packed
    diffs = sorted({x - y for x in xs for y in xs})
    total = 0
    for sl in slices_packed(xs, diffs):
        _, counts = _codec.pair_counts(xs, sl, -1)
        total += _codec.power_sum(counts, 2)
    return EnergyValue(total, "cubic")


def popular_set(A: ElementSet, mode: str) -> ElementSet:
    """Differences ``d`` with ``n(d) >= |A|^2 / (2|A +- A|)``.

    ``mode="dplus"`` divides by ``|A+A|``, ``mode="dprime"`` by ``|A-A|``.
    The comparison is exact: ``2 n(d) |A +- A| >= |A|^2``.
    """
    if mode not in ("dplus", "dprime"):
        raise ValueError("mode must be 'dplus' or 'dprime'")
    if not len(A):
        return ElementSet()
    size = set_size(A, A, "sum" if mode == "dplus" else "diff")
    reps = rep_function(A, A, "diff")
    need = len(A) ** 2
    return ElementSet(d for d, n in reps.items() if 2 * n * size >= need)


def energy_on_subset(A: ElementSet, D) -> EnergyValue:
    """``sum over d in D of n_{A-A}(d)^2``."""
    reps = rep_function(A, A, "diff")
    return EnergyValue(sum(reps[d] ** 2 for d in ElementSet(D)), "additive")
