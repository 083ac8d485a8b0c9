"""DOT diagrams, chain listings and the JSON analysis report."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .catalog import Catalog, Mode, natural_key
from .order import (
    DEFAULT_CHAIN_CAP,
    Classification,
    ComplexityPoset,
    classify,
    derive_relation,
    maximal_chains,
)
from .validate import ValidationReport, validate_all

__all__ = ["AnalysisBundle", "analyze", "emit_dot", "emit_report", "emit_chains_text", "report_schema"]


@dataclass(frozen=True)
class AnalysisBundle:
    catalog: Catalog
    poset: Optional[ComplexityPoset] = None
    classification: Optional[Classification] = None
    chains: Optional[list] = None
    validation: Sequence[ValidationReport] = field(default=())


def analyze(catalog: Catalog, max_chains: int = DEFAULT_CHAIN_CAP) -> AnalysisBundle:
    """Run the whole pipeline once; reporters only read the result."""
    poset = derive_relation(catalog)
    return AnalysisBundle(
        catalog=catalog,
        poset=poset,
        classification=classify(poset, catalog),
        chains=maximal_chains(poset, max_chains),
        validation=tuple(validate_all(catalog, poset)),
    )


def _dot_id(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(catalog: Catalog, poset: ComplexityPoset, show_composites: bool = False) -> str:
    """Render the Hasse diagram; composite arrows are added dashed on request."""
    labels = {}
    for arrow in catalog.arrows:
        labels.setdefault((arrow.source, arrow.target), arrow.id)

    out = [f"digraph {_dot_id(catalog.name or 'catalog')} {{", "  rankdir=LR;", "  node [shape=box];"]
    for obj in poset.objects:
        attrs = [f"label={_dot_id(obj)}"]
        record = catalog.model(obj)
        if record.assumption_set is not None:
            attrs.append(f"tooltip={_dot_id(' '.join(record.assumption_set))}")
        out.append(f"  {_dot_id(obj)} [{', '.join(attrs)}];")
    for a, b in poset.hasse_edges:
        attr = f" [label={_dot_id(labels[(a, b)])}]" if (a, b) in labels else ""
        out.append(f"  {_dot_id(a)} -> {_dot_id(b)}{attr};")
    if show_composites:
        for a, b in poset.composites:
            attrs = ["style=dashed"]
            if (a, b) in labels:
                attrs.append(f"label={_dot_id(labels[(a, b)])}")
            out.append(f"  {_dot_id(a)} -> {_dot_id(b)} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"


def emit_chains_text(chains: Sequence[Sequence[str]]) -> str:
    return "".join(f"{i}. {' -> '.join(chain)}\n" for i, chain in enumerate(chains, 1))


def _sorted(ids) -> list:
    return sorted(ids, key=natural_key)


def _jsonable(value):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return _sorted(value)
    return value


def _report_dict(bundle: AnalysisBundle) -> dict:
    catalog = bundle.catalog
    doc = {
        "catalog": {
            "name": catalog.name,
            "dimension": catalog.dimension,
            "mode": catalog.mode.value,
            "counts": catalog.counts(),
        },
        "analyses": {},
    }
    if bundle.poset is not None and bundle.classification is not None:
        cls = bundle.classification
        doc["analyses"] = {
            "ordering": cls.ordering.value,
            "prop1_case": cls.prop1_case.value,
            "most_complex": cls.most_complex,
            "simplest": cls.simplest,
            "union_set": _sorted(cls.union_set) if catalog.mode is Mode.SETS else None,
            "objects": list(bundle.poset.objects),
            "hasse_edges": [list(e) for e in bundle.poset.hasse_edges],
            "chains": [list(c) for c in (bundle.chains or [])],
            "warnings": [w.message for w in bundle.poset.warnings],
        }
    doc["validation"] = [
        {
            "report": report.name,
            "check": check.check_id,
            "status": check.status.value,
            "severity": check.severity.value,
            "details": check.details,
            "witnesses": _jsonable(check.witnesses),
        }
        for report in bundle.validation
        for check in report.checks
    ]
    doc["tool_version"] = __version__
    return doc


def emit_report(bundle: AnalysisBundle) -> str:
    """Serialize a bundle as JSON with a fixed key order, 2-space indent, LF."""
    return json.dumps(_report_dict(bundle), indent=2, ensure_ascii=False) + "\n"


def report_schema() -> dict:
    return json.loads(resources.files("modelcat").joinpath("report_schema.json").read_text(encoding="utf-8"))
