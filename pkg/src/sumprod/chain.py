"""The origin-line argument run end to end on a concrete set.

:func:`proof_chain` builds the popular origin lines of ``A x A``, translates
them to ``Q = -P`` and ``Q = +-P``, measures every quantity the argument
uses (cubic energy of ``P``, energies with ``P +- P``, weight
distributions, rich sums) and evaluates each inequality of the argument in
order.  Steps whose constants are explicit are exact checks; the rest are
reported with the implied constant set to 1 and logarithms base 2.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _codec
from .errors import UndersizedInputError, ZeroDivisorError
from .incidence import (
    OriginDecomposition, grid_from_packed, origin_line_decomposition, point_degrees,
    translate_and_weight,
)
from .sets import ElementSet, sizes
from .verify import (
    DEFAULT_PRECISION, TARGETS, Evaluator, InequalityReport, observed_exponent,
)

STAGES = (
    "decomposition",
    "class-bounds",
    "cubic-energy",
    "energy-lower",
    "energy-upper",
    "combined",
    "exponent",
)

# beyond this many (point, direction) pairs, n(x) <= m(x) is checked on rich sums only
DEGREE_BUDGET = 60_000_000


@dataclass
class ChainReport:
    """Ordered results of one run of the argument.

    ``steps`` pairs each report with its stage; stages follow
    :data:`STAGES` order.
    """

    case: str
    sign: str
    inputs: dict
    decomposition: dict
    steps: list[tuple[str, InequalityReport]] = field(default_factory=list)
    theorem_exponent: object = None
    escaped: bool = False
    stats: dict = field(default_factory=dict)

    @property
    def reports(self) -> list[InequalityReport]:
        return [r for _, r in self.steps]

    def stage_sequence(self) -> list[str]:
        out: list[str] = []
        for stage, _ in self.steps:
            if not out or out[-1] != stage:
                out.append(stage)
        return out

    def meta(self) -> dict:
        from .verify import render_number
        return {
            "case": self.case,
            "sign": self.sign,
            "inputs": self.inputs,
            "decomposition": self.decomposition,
            "stages": [s for s, _ in self.steps],
            "theoremExponent": render_number(self.theorem_exponent),
            "escaped": self.escaped,
        }


class _Stage:
    def __init__(self, ev: Evaluator, report: ChainReport):
        self.ev, self.out, self.name = ev, report, STAGES[0]

    def __call__(self, name: str):
        self.name = name
        return self

    def _push(self, rep):
        self.out.steps.append((self.name, rep))
        return rep

    def bound(self, *a, **k):
        return self._push(self.ev.bound(*a, **k))

    def equality(self, *a, **k):
        return self._push(self.ev.equality(*a, **k))

    def report(self, *a, **k):
        return self._push(self.ev.report(*a, **k))


class _PointArith:
    """Packed integer views of ``P`` shared by every energy in the chain."""

    def __init__(self, P):
        pts = list(P)
        comps = [p.components() for p in pts]
        neg = [tuple(-q for q in c) for c in comps]
        self.codec = _codec.AdditiveCodec([comps, neg], terms=6, center=True)
        self.pos = self.codec.packed[0]
        self.neg = self.codec.packed[1]
        self._cache: dict = {}

    def counts(self, sign: int):
        """Sorted keys and counts of ``P + sign*P``."""
        if sign not in self._cache:
            self._cache[sign] = _codec.pair_counts(self.pos, self.pos, sign)
        return self._cache[sign]

    def energy_with(self, sign: int) -> int:
        """``E(P, P + sign*P)``."""
        keys, _ = self.counts(sign)
        return _codec.energy(self.pos, keys.tolist())


def _dyadic_between(lo, hi) -> list[int]:
    """Powers of two ``t`` with ``lo < t <= hi``."""
    out, t = [], 1
    while t <= hi:
        if t > lo:
            out.append(t)
        t *= 2
    return out


def _translate_checks(st: _Stage, ev: Evaluator, dec: OriginDecomposition,
                      arith: _PointArith, qsign: int, label: str):
    """Construction invariants and weight statistics for ``Q = qsign * P``."""
    P = dec.points
    Q = P if qsign > 0 else [-p for p in P]
    nL, nP, nQ, N = len(dec.lines), len(P), len(P), dec.N
    WL = translate_and_weight(dec.lines, Q, N)
    st.bound(f"translates-{label}-size-precondition", "|Q| >= |P|", nQ, nP)
    st.equality(f"translates-{label}-raw-weight", "uncapped total weight = |L||Q|",
                WL.raw_total, nL * nQ)
    st.bound(f"translates-{label}-capped-weight", "W <= |L||Q|", nL * nQ, WL.total_weight,
             notes=f"W = {WL.total_weight} after capping at N = {N}")
    st.bound(f"translates-{label}-directions", "directions of translates <= |L|",
             nL, WL.direction_count,
             notes="parallel lines are disjoint, so no point meets more than |L| translates")

    keys, counts = arith.counts(1 if qsign > 0 else -1)
    mult = 2 if qsign > 0 else 0
    budget_t = 1
    while int((counts >= budget_t).sum()) * WL.direction_count > DEGREE_BUDGET:
        budget_t *= 2
    sel = counts >= budget_t
    grid = grid_from_packed(arith.codec, keys[sel], mult)
    deg = point_degrees(grid, WL)
    mx = point_degrees(grid, WL, weighted=True)
    note = "all x in P+Q" if budget_t == 1 else f"x with n(x) >= {budget_t} (work budget)"
    st.bound(f"translates-{label}-max-lines-per-point",
             "lines of the translate family through x <= |L|", nL,
             int(deg.max(initial=0)), notes=note)
    slack = mx - counts[sel]
    worst = int(np.argmin(slack)) if len(slack) else None
    st.bound(f"translates-{label}-sum-count-vs-weight", "n(x) <= m(x) on P+Q",
             int(mx[worst]) if worst is not None else 0,
             int(counts[sel][worst]) if worst is not None else 0,
             notes=f"tightest point shown; {note}")

    nLL = len(WL)
    st.report(f"translates-{label}-count-lower", "|translates| >= |L|^(3/2)|Q|^(1/2)",
              nLL, ev.mul(ev.pow(nL, Fraction(3, 2)), ev.sqrt(nQ)))
    st.report(f"translates-{label}-mean-weight", "mean weight <= (|Q|/|L|)^(1/2)",
              ev.sqrt(Fraction(nQ, nL)), WL.mean_weight,
              notes="lhs is the bound, so the ratio is 1/constant")
    w = WL.weight_array()
    # levels above the observed maximum are empty and carry no information
    for t in _dyadic_between(0, min(N, int(w.max(initial=0)))):
        heavy = int((w >= t).sum())
        st.report(f"translates-{label}-heavy-lines-t{t:05d}",
                  "|{l : m(l) >= t}| vs |Q|^2/t^3 + |Q|/t", heavy,
                  Fraction(nQ * nQ, t ** 3) + Fraction(nQ, t))
    bound_use = ev.mul(ev.pow(nL, Fraction(3, 2)), ev.pow(nQ, Fraction(5, 2)))
    for t in _dyadic_between(N, min(nP, int(counts.max(initial=0)))):
        rich = int((counts >= t).sum())
        st.report(f"translates-{label}-rich-sums-t{t:05d}",
                  "|{x in P+Q : n(x) >= t}| vs |L|^(3/2)|Q|^(5/2)/t^3",
                  rich, ev.div(bound_use, t ** 3))
    return WL


def proof_chain(A: ElementSet, case: str, sign: str,
                precision: int = DEFAULT_PRECISION) -> ChainReport:
    """Evaluate the full argument for ``case`` in {ratio, product} and ``sign`` in {sum, diff}."""
    if case not in ("ratio", "product"):
        raise ValueError("case must be 'ratio' or 'product'")
    if sign not in ("sum", "diff"):
        raise ValueError("sign must be 'sum' or 'diff'")
    if A.has_zero():
        raise ZeroDivisorError("the argument needs 0 not in A")
    if len(A) < 2:
        raise UndersizedInputError("the argument needs |A| >= 2")

    ev = Evaluator(precision)
    n = len(A)
    stats = sizes(A)
    mop = "ratio" if case == "ratio" else "prod"
    dec = origin_line_decomposition(A, case)
    P, nL, N = dec.points, len(dec.lines), dec.N
    nP = len(P)
    log = ev.log2(n)
    out = ChainReport(
        case=case, sign=sign,
        inputs={"n": n, "sum": stats["sum"], "diff": stats["diff"], mop: stats[mop]},
        decomposition={"lines": nL, "points": nP, "N": N},
    )
    st = _Stage(ev, out)
    n4 = n ** 4

    st("decomposition")
    energy_L = dec.line_energy
    if case == "ratio":
        R = stats["ratio"]
        st.bound("decomposition-line-energy", "sum over L of n(l)^2 >= |A|^4/(2|A:A|)",
                 energy_L, Fraction(n4, 2 * R),
                 notes="popularity threshold |A|^2/(2|A:A|)")
        st.report("decomposition-line-energy-unit", "sum over L of n(l)^2 >= |A|^4/|A:A|",
                  energy_L, Fraction(n4, R), notes="implied constant 1")
        st.bound("decomposition-points", "|P| >= |A|^2/2", nP, Fraction(n * n, 2))
        st.bound("decomposition-lines-vs-N", "2|L| >= N", 2 * nL, N)
        st.bound("decomposition-lines-range", "|L| <= |A:A|", R, nL)
    else:
        Pm = stats["prod"]
        lo = min(dec.line_counts)
        hi = max(dec.line_counts)
        st.bound("decomposition-class-occupancy-low", "points per line >= N/2",
                 lo, Fraction(N, 2))
        st.bound("decomposition-class-occupancy-high", "points per line <= N", N, hi)
        st.bound("decomposition-class-energy", "|L|N^2 >= |A|^4/(|A.A| log|A|)",
                 nL * N * N, ev.div(Fraction(n4, Pm), log),
                 notes=f"dyadic class k = {dec.class_index}, N = 2^(k+1); log base 2")
        st.report("decomposition-lines-vs-N", "|L| >= N", nL, N, notes="implied constant 1")

    st("class-bounds")
    if case == "product":
        st.bound("class-size-lower", "N >= |A|^2/(2|A.A|)", N, Fraction(n * n, 2 * stats["prod"]))
        add = stats["diff" if sign == "diff" else "sum"]
        op = "-" if sign == "diff" else "+"
        st.report("class-size-upper", f"N <= |A{op}A|^2|A.A|/|A|^3",
                  Fraction(add * add * stats["prod"], n ** 3), N,
                  notes="lhs is the bound, so the ratio is 1/constant")
    st.report("class-size-vs-points", "N^2 <= (|P||L|^3)^(1/2)",
              ev.sqrt(nP * nL ** 3), N * N, notes="lhs is the bound")

    arith = _PointArith(P)
    st("cubic-energy")
    _translate_checks(st, ev, dec, arith, -1, "neg")
    if sign == "sum":
        _translate_checks(st, ev, dec, arith, 1, "pos")
    _, dcounts = arith.counts(-1)
    E3 = _codec.power_sum(dcounts, 3)
    bound_e3 = ev.mul(ev.pow(nL, Fraction(3, 2)), ev.pow(nP, Fraction(5, 2)), log)
    st.report("cubic-energy-upper", "E3(P) <= |L|^(3/2)|P|^(5/2) log|A|", bound_e3, E3,
              notes="lhs is the bound, so the ratio is 1/constant")

    st("energy-lower")
    size_diff = len(dcounts)
    size_sum = len(arith.counts(1)[1])
    out.stats.update({"E3(P)": E3, "|P-P|": size_diff, "|P+P|": size_sum})
    E_diff = E_sum = None
    if sign == "diff":
        E_diff = arith.energy_with(-1)
        out.stats["E(P,P-P)"] = E_diff
        st.bound("energy-lower-diff-exact", "E(P,P-P) >= |P|^8/(8|P-P| E3(P))",
                 E_diff, Fraction(nP ** 8, 8 * size_diff * E3))
        st.report("energy-lower-diff", "E(P,P-P) >= |P|^(11/2)/(|L|^(3/2)|P-P| log|A|)",
                  E_diff, ev.div(ev.pow(nP, Fraction(11, 2)),
                                 ev.mul(ev.pow(nL, Fraction(3, 2)), size_diff, log)))
    else:
        E_sum = arith.energy_with(1)
        out.stats["E(P,P+P)"] = E_sum
        st.report("energy-lower-sum-escape", "|P+P| >= |P|^2/N", size_sum,
                  Fraction(nP * nP, N), notes="the escape holds when the ratio is >= 1")
        out.escaped = size_sum * N >= nP * nP
        thr = Fraction(nP * nP, 2 * size_sum)
        popular = dcounts[np.asarray(dcounts.astype(object) >= thr, dtype=bool)]
        M = int(popular.max())
        out.stats["max slice"] = M
        st.bound("energy-lower-sum-exact",
                 "E(P,P+P) >= |P|^10/(4|P+P|^2 E3(P) max over D+ of |P_d|)",
                 E_sum, Fraction(nP ** 10, 4 * size_sum ** 2 * E3 * M),
                 notes=f"max over D+ includes d = 0, value {M}")
        if not out.escaped:
            nonzero = sorted(popular.tolist())[-2] if len(popular) > 1 else 0
            st.report("energy-lower-sum-max-slice",
                      "max over D+ of |P_d| <= |L|^(3/2)|P+P|/|P|^(3/2)",
                      ev.div(ev.mul(ev.pow(nL, Fraction(3, 2)), size_sum),
                             ev.pow(nP, Fraction(3, 2))), M,
                      notes=f"lhs is the bound; max includes d = 0, next largest {nonzero}")
            st.report("energy-lower-sum", "E(P,P+P) >= |P|^9/(|L|^3|P+P|^3 log|A|)",
                      E_sum, ev.div(nP ** 9, ev.mul(nL ** 3, size_sum ** 3, log)))

    st("energy-upper")
    size = size_diff if sign == "diff" else size_sum
    E = E_diff if sign == "diff" else E_sum
    op = "-" if sign == "diff" else "+"
    t_bal = ev.div(ev.mul(ev.pow(size, Fraction(3, 4)), ev.pow(nL, Fraction(3, 4))),
                   ev.sqrt(nP))
    st.report(f"energy-upper-{sign}-threshold", "balancing t vs N", t_bal, N,
              notes="the argument needs t >= N up to a constant")
    two_term = ev.add(ev.mul(nP, size, t_bal),
                      ev.div(ev.mul(ev.pow(nL, Fraction(3, 2)), ev.pow(size, Fraction(5, 2))),
                             t_bal))
    st.report(f"energy-upper-{sign}-balanced",
              f"E(P,P{op}P) <= |P||P{op}P|t + |L|^(3/2)|P{op}P|^(5/2)/t", two_term, E,
              notes="lhs is the bound, so the ratio is 1/constant")
    st.report(f"energy-upper-{sign}", f"E(P,P{op}P) <= |P|^(1/2)|P{op}P|^(7/4)|L|^(3/4)",
              ev.mul(ev.sqrt(nP), ev.pow(size, Fraction(7, 4)), ev.pow(nL, Fraction(3, 4))), E,
              notes="lhs is the bound, so the ratio is 1/constant")

    st("combined")
    if sign == "diff":
        st.report("combined-diff", "|P-P|^(11/4)|L|^(9/4) >= |P|^5/log|A|",
                  ev.mul(ev.pow(size, Fraction(11, 4)), ev.pow(nL, Fraction(9, 4))),
                  ev.div(nP ** 5, log))
    else:
        st.report("combined-sum", "|P+P|^(19/4)|L|^(15/4) >= |P|^(34/4)/log|A|",
                  ev.mul(ev.pow(size, Fraction(19, 4)), ev.pow(nL, Fraction(15, 4))),
                  ev.div(ev.pow(nP, Fraction(34, 4)), log))
    if case == "product":
        LN2 = nL * N * N
        if sign == "diff":
            st.report("combined-product-diff",
                      "|A-A|^(11/2) >= (|L|N^2)^(11/4)/(N^(1/2) log|A|)",
                      ev.pow(stats["diff"], Fraction(11, 2)),
                      ev.div(ev.pow(LN2, Fraction(11, 4)), ev.mul(ev.sqrt(N), log)))
        else:
            st.report("combined-product-sum",
                      "|A+A|^(19/2) >= (|L|N^2)^(19/4)/(N log|A|)",
                      ev.pow(stats["sum"], Fraction(19, 2)),
                      ev.div(ev.pow(LN2, Fraction(19, 4)), ev.mul(N, log)))

    st("exponent")
    expo = observed_exponent(A, case, sign, ev, stats)
    out.theorem_exponent = expo
    mop_s = ":" if case == "ratio" else "."
    st.report(f"exponent-{case}-{sign}",
              f"log(|A{op}A| + |A{mop_s}A|)/log|A| vs 1 + {TARGETS[(case, sign)]}",
              expo, 1 + TARGETS[(case, sign)])
    return out
