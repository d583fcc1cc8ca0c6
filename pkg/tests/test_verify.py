import json
from decimal import Decimal
from fractions import Fraction

import pytest

from sumprod import (
    ElementSet, Line, PlanarPointSet, Point2, UndersizedInputError, ZeroDivisorError,
    check_exact_inequalities, check_st_reports, elekes_check, generate, report_document,
    theorem_report,
)
from sumprod.sets import set_size
from sumprod.verify import Evaluator, all_exact_pass, render_number


def by_id(reports):
    return {r.check_id: r for r in reports}


def test_exact_suite_small_example():
    r = by_id(check_exact_inequalities(ElementSet([1, 2, 3])))
    cs = r["energy-cauchy-schwarz-diff"]
    assert (cs.lhs, cs.rhs, cs.verdict) == (95, 81, "pass")
    first = r["slice-cauchy-schwarz-first-diff-full"]
    assert first.lhs == 37
    assert abs(Decimal(first.rhs) - Decimal("33.0399561")) < Decimal("1e-6")
    assert all(x.verdict == "pass" for x in r.values() if x.exact)


def test_exact_suite_singleton_is_tight():
    r = check_exact_inequalities(ElementSet([5]))
    assert all_exact_pass(r)
    assert by_id(r)["energy-cauchy-schwarz-diff"].ratio == 1


def test_exact_suite_sorted_and_verdicts():
    reps = check_exact_inequalities(generate("randint:1:300:20:seed=3"))
    exact = [r for r in reps if r.exact]
    assert [r.check_id for r in exact] == sorted(r.check_id for r in exact)
    assert all(r.verdict in ("pass", "report-only") for r in reps)
    assert {r.verdict for r in reps if not r.exact} == {"report-only"}


def test_zero_needs_opt_out():
    A = ElementSet([0, 1, 3])
    with pytest.raises(ZeroDivisorError):
        check_exact_inequalities(A)
    reps = check_exact_inequalities(A, multiplicative=False)
    assert all_exact_pass(reps) and not any("mult" in r.check_id for r in reps)


def test_gaussian_suite():
    assert all_exact_pass(check_exact_inequalities(generate("randgauss:1:4:10:seed=9")))


def test_st_examples():
    P = PlanarPointSet(Point2(x, y) for x in range(2) for y in range(2))
    L = [Line(0, 1, 0), Line(0, 1, 1), Line(1, 0, 0), Line(1, 0, 1)]
    r = by_id(check_st_reports(P, L))
    st = r["incidence-bound"]
    assert st.lhs == 8 and abs(Decimal(st.ratio) - Decimal("0.5575")) < Decimal("1e-4")
    assert r["weighted-incidence-bound"].ratio == st.ratio
    assert all(x.verdict == "report-only" for x in r.values())
    single = by_id(check_st_reports(PlanarPointSet([Point2(0, 0)]), [Line(1, 1, 0)]))
    assert abs(Decimal(single["incidence-bound"].ratio) - Decimal(1) / Decimal(3)) < Decimal("1e-25")


def test_elekes_examples():
    reps = elekes_check(ElementSet([1, 2]), "diff")
    incl = [r for r in reps if r.check_id.startswith("elekes-inclusion")]
    assert incl and all(r.verdict == "pass" for r in incl)
    for sign in ("diff", "sum"):
        assert all_exact_pass(elekes_check(ElementSet([1, 2, 4, 8]), sign))
    with pytest.raises(ZeroDivisorError):
        elekes_check(ElementSet([0, 2]), "diff")


def test_theorem_report():
    r = by_id(theorem_report(ElementSet([1, 2, 3])))
    assert abs(Decimal(r["exponent-ratio-diff"].lhs) - Decimal("2.2618595071")) < Decimal("1e-9")
    two = by_id(theorem_report(ElementSet([1, 2])))
    assert abs(Decimal(two["exponent-ratio-diff"].lhs) - Decimal("2.5849625007")) < Decimal("1e-9")
    assert all(x.verdict == "report-only" for x in two.values())
    with pytest.raises(UndersizedInputError):
        theorem_report(ElementSet([3]))


def test_gp_vs_ap():
    ap, gp = generate("ap:1:1:8"), generate("gp:1:2:8")
    assert set_size(gp, gp, "diff") > set_size(ap, ap, "diff")
    assert set_size(ap, ap, "ratio") > set_size(gp, gp, "ratio")


def test_evaluator_arithmetic():
    ev = Evaluator(40)
    assert ev.pow(4, Fraction(3, 2)) == 8
    assert ev.log2(8) == 3
    assert abs(ev.pow(2, Fraction(1, 2)) ** 2 - 2) < Decimal("1e-38")
    assert ev.ratio(0, 0) == 1
    assert Decimal(ev.ratio(1, 0)).is_infinite()


def test_render_number():
    assert render_number(12) == "12"
    assert render_number(Decimal("Infinity")) == "Infinity"


def test_report_document_is_stable():
    A = ElementSet([1, 2, 3])
    doc1 = report_document(check_exact_inequalities(A), A, {"cmd": "verify"})
    doc2 = report_document(check_exact_inequalities(A), A, {"cmd": "verify"})
    assert json.dumps(doc1) == json.dumps(doc2)
    assert {"runId", "inputDigest", "checks"} <= set(doc1)
    assert set(doc1["checks"][0]) == {"checkId", "paperAnchor", "lhs", "rhs", "ratio",
                                      "verdict", "notes"}
