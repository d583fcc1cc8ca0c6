"""Acceptance criteria.  Each test carries a ``criterion`` mark; the summary
hook in conftest prints one PASS/FAIL line per criterion after the run."""

import csv
import io
import random
import time
from decimal import Decimal
from fractions import Fraction

import pytest

from corpus import corpus, structured
from sumprod import (
    ElementSet, Line, PlanarPointSet, Point2, Scalar, WeightedLineSet, additive_energy,
    check_exact_inequalities, count_incidences, cubic_energy, cubic_energy_via_slices,
    elekes_check, generate, multiplicative_energy, origin_line_decomposition, proof_chain,
    rich_points, theorem_report, weighted_incidences,
)
from sumprod import oracles
from sumprod.cli import main
from sumprod.verify import REPORT

CORPUS = corpus(200, 64)


def _random_set(rng, gaussian):
    n = rng.randint(1, 12)
    vals = set()
    while len(vals) < n:
        re = Fraction(rng.randint(-9, 9), rng.randint(1, 3))
        im = Fraction(rng.randint(-9, 9), rng.randint(1, 3)) if gaussian else 0
        v = Scalar(re, im, True)
        if not v.is_zero():
            vals.add(v)
    return ElementSet(vals)


@pytest.mark.criterion(1, "energies equal brute-force enumeration on 100 random sets in < 10 s")
def test_energy_oracles():
    rng = random.Random(2024)
    sets = [_random_set(rng, i % 2 == 1) for i in range(100)]
    start = time.perf_counter()
    for A in sets:
        assert additive_energy(A, A) == oracles.quadruple_energy(A, A)
        assert multiplicative_energy(A) == oracles.quadruple_multiplicative_energy(A)
        assert cubic_energy(A) == oracles.sextuple_cubic_energy(A)
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(2, "cubic energy equals the slice form on the corpus in < 30 s")
def test_slice_identity():
    start = time.perf_counter()
    for spec, A in CORPUS:
        assert cubic_energy(A) == cubic_energy_via_slices(A), spec
    assert time.perf_counter() - start < 30


@pytest.mark.criterion(3, "exact inequality suite passes on 200 corpus sets, 2 <= |A| <= 64")
def test_exact_suite():
    assert len(CORPUS) == 200
    failures = []
    for spec, A in CORPUS:
        assert 2 <= len(A) <= 64
        for r in check_exact_inequalities(A):
            if r.verdict == "fail":
                failures.append((spec, r.check_id, r.ratio))
    assert not failures


@pytest.mark.criterion(4, "popular ratios lie among ordinates of rich points, |A| <= 32")
@pytest.mark.parametrize("sign", ["diff", "sum"])
def test_elekes_inclusion(sign):
    failures = []
    for spec, A in CORPUS:
        if len(A) > 32:
            continue
        for r in elekes_check(A, sign):
            if r.check_id.startswith("elekes-inclusion") and r.verdict != "pass":
                failures.append((spec, r.check_id))
    assert not failures


def _configuration(rng):
    coords = [Fraction(rng.randint(-6, 6), rng.randint(1, 2)) for _ in range(25)]
    pts = PlanarPointSet(Point2(rng.choice(coords), rng.choice(coords))
                         for _ in range(rng.randint(1, 500)))
    plist = list(pts)
    nlines = rng.randint(1, 200)
    lines = set()
    while len(lines) < nlines:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        if a == b == 0:
            continue
        p = rng.choice(plist)
        lines.add(Line(a, b, a * p.x + b * p.y))
    return pts, list(lines)


@pytest.mark.criterion(5, "unit weights reproduce counts and rich-point layers sum to the total")
def test_incidence_consistency():
    rng = random.Random(5)
    for k in range(50):
        pts, lines = _configuration(rng)
        total = count_incidences(pts, lines)
        assert weighted_incidences(pts, WeightedLineSet(lines)) == total
        layered, t = 0, 1
        above = len(rich_points(pts, lines, 1))
        while above:
            nxt = len(rich_points(pts, lines, t + 1))
            layered += (above - nxt) * t
            above, t = nxt, t + 1
        assert layered == total
        if k < 10:
            assert total == oracles.incidence_count(pts, lines)


def _chain_invariants(A, case, sign):
    ch = proof_chain(A, case, sign)
    ids = {r.check_id: r for r in ch.reports}
    for label in ("neg", "pos"):
        for check in ("max-lines-per-point", "capped-weight"):
            r = ids.get(f"translates-{label}-{check}")
            if r is not None:
                assert r.verdict == "pass", r
    assert "translates-neg-capped-weight" in ids or "translates-pos-capped-weight" in ids
    if case == "product":
        d = origin_line_decomposition(A, "product")
        assert all(2 * c >= d.N for c in d.line_counts)
        assert ids["decomposition-class-occupancy-low"].verdict == "pass"
        assert ids["decomposition-class-energy"].verdict == "pass"
    assert all(r.verdict != "fail" for r in ch.reports)
    return ch


@pytest.mark.criterion(6, "chain invariants hold for |A| <= 64; a full |A| = 64 chain runs in < 60 s")
@pytest.mark.parametrize("case", ["ratio", "product"])
@pytest.mark.parametrize("sign", ["diff", "sum"])
def test_chain_invariants(case, sign):
    for spec, A in CORPUS:
        if len(A) <= 12:
            _chain_invariants(A, case, sign)
    for spec in ("ap:1:1:64", "randint:1:200:64:seed=1"):
        start = time.perf_counter()
        _chain_invariants(generate(spec), case, sign)
        assert time.perf_counter() - start < 60, spec


def _report_values(reports):
    out = []
    for r in reports:
        if r.verdict == REPORT:
            out.append(r.to_dict(50))
    return out


@pytest.mark.criterion(7, "report-only values are finite, positive and repeatable; AP/GP scan is monotone")
def test_report_only_substitute(tmp_path):
    for spec in ("ap:1:1:16", "gp:1:2:12", "convex:squares:20", "randint:1:500:24:seed=8",
                 "randgauss:1:6:16:seed=2"):
        A = generate(spec)
        first = _report_values(theorem_report(A))
        assert first == _report_values(theorem_report(generate(spec)))
        for d in first:
            v = Decimal(d["ratio"])
            assert v.is_finite() and v > 0, (spec, d)
        for case in ("ratio", "product"):
            for sign in ("diff", "sum"):
                a = _report_values(proof_chain(A, case, sign).reports)
                assert a == _report_values(proof_chain(generate(spec), case, sign).reports)
                for d in a:
                    v = Decimal(d["ratio"])
                    assert v.is_finite() and v > 0, (spec, case, sign, d)
    for family, column in (("ap:1:1:{n}", "sumset"), ("gp:1:2:{n}", "prodset")):
        out = tmp_path / "scan.csv"
        assert main(["scan", "--set", family, "--values", "4..64", "-o", str(out)]) == 0
        rows = list(csv.DictReader(out.open()))
        assert [int(r["n"]) for r in rows] == list(range(4, 65))
        for col in ("sumset", "diffset", "prodset", "ratioset"):
            vals = [int(r[col]) for r in rows]
            assert vals == sorted(vals) and len(set(vals)) == len(vals)
        assert [int(r[column]) for r in rows] == [2 * n - 1 for n in range(4, 65)]


@pytest.mark.criterion(8, "two scan runs produce byte-identical CSV")
def test_scan_determinism(tmp_path):
    outs = []
    for i, jobs in enumerate(("1", "2")):
        path = tmp_path / f"run{i}.csv"
        code = main(["scan", "--set", "randint:1:1000:{n}:seed=7", "--values", "4..40..x2",
                     "--jobs", jobs, "-o", str(path)])
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1] and outs[0].count(b"\n") == 5
