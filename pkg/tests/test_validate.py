import random

import pytest
from hypothesis import given, settings, strategies as st

from modelcat import derive_relation, fixture_text, merge_catalogs, parse_catalog
from modelcat.catalog import Severity
from modelcat.order import make_poset
from modelcat.validate import (
    AXIOM_CHECKS,
    CONVERTIBILITY_CHECKS,
    DIMENSION_CHECKS,
    Status,
    check_category_axioms,
    check_convertibility,
    check_dimension,
)

from helpers import declared_catalog, random_full_catalog, sets_catalog


def statuses(report):
    return {c.check_id: c.status for c in report.checks}


def test_beam_axioms_all_pass(beam, beam_poset):
    report = check_category_axioms(beam, beam_poset)
    assert [c.check_id for c in report.checks] == list(AXIOM_CHECKS)
    assert report.passed
    assert all(s in (Status.PASS, Status.NOT_APPLICABLE) for s in statuses(report).values())
    assert ("BE", "T") in beam_poset.lt
    assert "1 composite" in report["composition"].details


def test_declared_transitivity_by_construction():
    cat = declared_catalog(
        ["a", "b", "c"],
        [("f", "a", "b"), ("g", "b", "c")],
        sets={"a": {"x", "y", "z"}, "b": {"x", "y"}, "c": {"x"}},
    )
    poset = derive_relation(cat)
    assert ("a", "c") in poset.lt
    report = check_category_axioms(cat, poset)
    assert report.passed
    assert report["arrow-set-consistency"].status is Status.PASS


def test_declared_arrow_wrong_direction():
    cat = declared_catalog(["X", "Y"], [("f", "X", "Y")], sets={"X": {"p"}, "Y": {"p", "q"}})
    report = check_category_axioms(cat, derive_relation(cat))
    check = report["arrow-set-consistency"]
    assert check.status is Status.FAIL
    assert check.witnesses == (("X", "Y"),)
    assert not report.passed


def test_axioms_on_broken_relation():
    # bypass derive_relation to feed a relation that is not a strict order
    poset = make_poset(["a", "b", "c"], {("a", "b"), ("b", "c"), ("b", "a"), ("c", "c")})
    cat = sets_catalog({"a": {"1"}, "b": {"2"}, "c": {"3"}})
    report = check_category_axioms(cat, poset)
    assert report["irreflexivity"].witnesses == (("c", "c"),)
    assert report["acyclicity"].witnesses == (("a", "b"),)
    assert ("a", "c") in report["composition"].witnesses


@settings(max_examples=200, deadline=None)
@given(
    st.dictionaries(
        st.sampled_from([f"M{i}" for i in range(8)]),
        st.frozensets(st.sampled_from([f"a{i}" for i in range(8)]), min_size=1),
        min_size=1,
    )
)
def test_sets_mode_axioms_always_pass(sets):
    cat = sets_catalog(sets)
    assert check_category_axioms(cat, derive_relation(cat)).passed


def test_beam_convertibility(beam):
    report = check_convertibility(beam)
    assert [c.check_id for c in report.checks] == list(CONVERTIBILITY_CHECKS)
    assert all(c.status is Status.PASS for c in report.checks)
    assert report.findings() == []


def test_elasticity_convertibility(elasticity):
    report = check_convertibility(elasticity)
    assert all(c.status is Status.PASS for c in report.checks)
    assert elasticity.convertibility_classes[0].members == {"B1", "B2", "B3"}


def test_unlinked_co_formulations():
    text = fixture_text("beam").replace("  convertible C1 C2\n", "")
    cat = parse_catalog(text)
    report = check_convertibility(cat)
    check = report["unlinked-co-formulations"]
    assert check.status is Status.FAIL and check.severity is Severity.WARNING
    assert report.findings() == [("unlinked-co-formulations", ("T", ("C1", "C2")))]
    assert "unlinked co-formulations" in check.details
    # a warning does not fail the report
    assert report.passed


def test_partial_linking_is_unlinked():
    text = fixture_text("elasticity").replace("convertible B1 B2 B3", "convertible B1 B2")
    report = check_convertibility(parse_catalog(text))
    assert report["unlinked-co-formulations"].witnesses == (("LinElast", ("B1", "B2", "B3")),)


def test_overlapping_classes_link_transitively():
    text = fixture_text("elasticity").replace("convertible B1 B2 B3", "convertible B1 B2\n  convertible B2 B3")
    report = check_convertibility(parse_catalog(text))
    assert report["unlinked-co-formulations"].status is Status.PASS


@pytest.mark.parametrize("seed", range(200))
def test_equal_complexity_never_fails_when_single_model_passes(seed):
    cat = random_full_catalog(random.Random(seed))
    report = check_convertibility(cat)
    if report["single-model-classes"].status is Status.PASS:
        assert report["equal-complexity"].status is Status.PASS


def test_dimension_pass(beam):
    report = check_dimension(beam)
    assert [c.check_id for c in report.checks] == list(DIMENSION_CHECKS)
    assert report["single-dimension"].status is Status.PASS


def test_dimension_merge_fails(beam, elasticity):
    report = check_dimension(merge_catalogs(beam, elasticity))
    assert report["single-dimension"].status is Status.FAIL
    assert set(report["single-dimension"].witnesses) == {"1D transverse vibration", "3D static elasticity"}


def test_dimension_merge_same_tag_passes(beam):
    other = sets_catalog({"X": {"z1"}}, dimension="1D transverse vibration")
    assert check_dimension(merge_catalogs(beam, other)).passed


def test_dimension_empty_fails():
    cat = sets_catalog({"X": {"a"}}, dimension="")
    assert check_dimension(cat)["single-dimension"].status is Status.FAIL


def test_reports_deterministic(beam, beam_poset):
    assert check_category_axioms(beam, beam_poset) == check_category_axioms(beam, derive_relation(beam))
    assert check_convertibility(beam) == check_convertibility(beam)
