import json

import jsonschema
import pydot
import pytest

from modelcat import FIXTURES, load_fixture
from modelcat.report import AnalysisBundle, analyze, emit_chains_text, emit_dot, emit_report, report_schema

from helpers import sets_catalog


def dot_counts(text):
    (graph,) = pydot.graph_from_dot_data(text)
    nodes = [n for n in graph.get_nodes() if n.get_name() not in ("node", "edge", "graph")]
    edges = graph.get_edges()
    solid = [e for e in edges if e.get("style") != "dashed"]
    dashed = [e for e in edges if e.get("style") == "dashed"]
    return len(nodes), len(solid), len(dashed), graph


def test_beam_dot(beam, beam_poset):
    assert dot_counts(emit_dot(beam, beam_poset))[:3] == (3, 2, 0)
    n, solid, dashed, graph = dot_counts(emit_dot(beam, beam_poset, show_composites=True))
    assert (n, solid, dashed) == (3, 2, 1)
    (comp,) = [e for e in graph.get_edges() if e.get("style") == "dashed"]
    assert (comp.get_source().strip('"'), comp.get_destination().strip('"')) == ("BE", "T")


def test_beam_dot_tooltips(beam, beam_poset):
    text = emit_dot(beam, beam_poset)
    assert '"T" [label="T", tooltip="A1 A2 A3 A4"];' in text


def test_aero_dot(aero, aero_poset):
    text = emit_dot(aero, aero_poset)
    assert dot_counts(text)[:3] == (11, 14, 0)
    assert '"LST" -> "MBM" [label="f1"];' in text
    assert "tooltip" not in text


def test_single_object_dot():
    cat = sets_catalog({"only": {"a"}})
    analysis = analyze(cat)
    assert dot_counts(emit_dot(cat, analysis.poset, show_composites=True))[:3] == (1, 0, 0)


def test_dot_quotes_names():
    cat = sets_catalog({"M": {"a"}}, name='has "quotes"')
    text = emit_dot(cat, analyze(cat).poset)
    assert text.startswith('digraph "has \\"quotes\\"" {')
    dot_counts(text)


def test_dot_deterministic(aero, aero_poset):
    assert emit_dot(aero, aero_poset, True) == emit_dot(load_fixture("aero"), aero_poset, True)


def test_chains_text():
    assert emit_chains_text([["BE", "R", "T"]]) == "1. BE -> R -> T\n"
    assert emit_chains_text([]) == ""


def test_chains_text_aero(aero_poset):
    from modelcat import maximal_chains

    lines = emit_chains_text(maximal_chains(aero_poset)).splitlines()
    assert len(lines) == 5
    assert "4. LST -> MBM -> LU -> NLU" in lines
    assert [ln.split(".")[0] for ln in lines] == ["1", "2", "3", "4", "5"]


def test_report_beam(beam):
    doc = json.loads(emit_report(analyze(beam)))
    a = doc["analyses"]
    assert a["ordering"] == "total"
    assert a["prop1_case"] == "IV"
    assert a["chains"] == [["BE", "R", "T"]]
    assert (a["most_complex"], a["simplest"]) == ("T", "BE")
    assert a["union_set"] == ["A1", "A2", "A3", "A4", "A5", "A6"]
    assert doc["catalog"] == {
        "name": "Beam",
        "dimension": "1D transverse vibration",
        "mode": "sets",
        "counts": {"assumptions": 6, "models": 3, "formulations": 4, "convertible_classes": 1, "arrows": 0},
    }
    assert list(doc) == ["catalog", "analyses", "validation", "tool_version"]


def test_report_text_fragments(beam):
    text = emit_report(analyze(beam))
    assert '"ordering": "total"' in text and '"prop1_case": "IV"' in text


def test_report_aero(aero):
    doc = json.loads(emit_report(analyze(aero)))
    a = doc["analyses"]
    assert a["ordering"] == "partial"
    assert len(a["chains"]) == 5
    assert (a["simplest"], a["most_complex"]) == ("LST", "NLU")
    assert a["union_set"] is None


def test_report_catalog_only(beam):
    doc = json.loads(emit_report(AnalysisBundle(beam)))
    assert doc["analyses"] == {}
    assert doc["validation"] == []
    jsonschema.validate(doc, report_schema())


@pytest.mark.parametrize("name", FIXTURES)
def test_report_matches_schema(name):
    doc = json.loads(emit_report(analyze(load_fixture(name))))
    jsonschema.validate(doc, report_schema())


def test_report_bytes_stable(aero):
    first = emit_report(analyze(aero))
    second = emit_report(analyze(load_fixture("aero")))
    assert first == second
    assert first.endswith("}\n") and "\r" not in first
    assert first.splitlines()[1].startswith('  "catalog"')


def test_report_consistent_with_bundle(beam):
    bundle = analyze(beam)
    doc = json.loads(emit_report(bundle))
    assert doc["analyses"]["hasse_edges"] == [list(e) for e in bundle.poset.hasse_edges]
    assert len(doc["validation"]) == sum(len(r.checks) for r in bundle.validation)
