import csv
import io

from ixlocal.experiments import (
    CSV_COLUMNS,
    SubproblemReport,
    emit_report,
    enumerate_all_subproblems,
    parse_report_json,
    report_violations,
    run_converse_demos,
    subproblem_report,
)
from ixlocal.invariants import MaisClass


def test_full_enumeration_has_no_violations(all_reports):
    assert len(all_reports) == 4096
    assert report_violations(all_reports) == []
    assert [r.S for r in all_reports[:3]] == [(), (1,), (2,)]
    assert all(r.converse in ("theorem", "trivial") for r in all_reports)
    assert sum(r.converse == "trivial" for r in all_reports) == 1


def test_reports_are_deterministic(all_reports):
    again = enumerate_all_subproblems()
    assert emit_report(again, "csv") == emit_report(all_reports, "csv")
    assert emit_report(again, "json") == emit_report(all_reports, "json")


def test_csv_and_json_outputs(all_reports):
    rows = list(csv.reader(io.StringIO(emit_report(all_reports, "csv"))))
    assert rows[0] == CSV_COLUMNS and len(rows) == 4097
    full = rows[-1]
    assert full[:7] == ["1,2,3,4,5,6,7,8,9,10,11,12", "7", "7", "7", "7", "MAIS_equals_alpha", "7"]
    assert parse_report_json(emit_report(all_reports[:50], "json")) == all_reports[:50]
    table = emit_report(all_reports[-1:], "table")
    assert table.splitlines()[1].startswith("{1,2,3")


def test_gap_rows():
    r = subproblem_report([2, 7, 10], verify_at=(2, 1), certify_budget=2**20)
    assert (r.alpha, r.mais, r.chi_bar, r.beta_locality1) == (3, 2, 3, 3)
    assert r.mais_class is MaisClass.MAIS_LESS_THAN_ALPHA
    assert r.achievability_verified is True and r.converse == "certificate"


def test_violations_are_detected():
    good = subproblem_report([1, 5])
    bad = SubproblemReport(good.S, good.alpha, good.chi_bar + 1, good.chi_f, good.mais,
                           good.mais_class, good.beta_locality1, False, "refuted")
    msgs = report_violations([bad])
    assert any("alpha" in m for m in msgs)
    assert any("failed verification" in m for m in msgs)
    assert any("shorter" in m for m in msgs)
    wrong_class = SubproblemReport((2, 7, 10), 3, 3, good.chi_f.__class__(3), 2,
                                   MaisClass.MAIS_EQUALS_ALPHA, 3)
    assert any("closed form" in m for m in report_violations([wrong_class]))


def test_certification_where_it_fits():
    r = subproblem_report(range(1, 13), certify_budget=2**20)
    assert r.converse == "theorem"  # far too large to search
    assert subproblem_report([], certify_budget=2**20).converse == "trivial"


def test_converse_demo_flags_shared_symbols_on_a_clique():
    # {1,5} is a clique: one XOR symbol serves both receivers, so access sets overlap
    bundle = run_converse_demos(subsets=[(1, 5)])
    (entry,) = bundle["subsets"]
    assert not entry["below"]["feasible"] and entry["at"]["feasible"]
    assert entry["disjointness"]["all_disjoint"] is False
    assert entry["disjointness"]["counterexample_access_sets"] == [[0], [0], []]
    assert not bundle["passed"]


def test_empty_outputs_and_empty_subset(all_reports):
    assert emit_report([], "csv") == ",".join(CSV_COLUMNS) + "\n"
    r = all_reports[0]
    assert r.S == () and (r.alpha, r.chi_bar, r.chi_f, r.mais, r.beta_locality1) == (0, 0, 0, 0, 0)
