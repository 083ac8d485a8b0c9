"""Catalogs of mathematical models ordered by their modelling assumptions.

Models are compared through their assumption sets: fewer assumptions means
a more complex (more general) model. The package parses ``.mcat`` catalogs,
derives the resulting partial order, finds its extremal objects and maximal
chains, checks the category structure, and renders diagrams and reports.
"""
from importlib import resources

__version__ = "0.1.0"

from .catalog import (  # noqa: E402
    Catalog,
    CatalogError,
    Mode,
    assumption_set_of,
    build_catalog,
    diff_models,
    merge_catalogs,
    model_triple,
)
from .order import (  # noqa: E402
    ChainExplosion,
    Comparison,
    CycleDetected,
    classify,
    compare,
    derive_relation,
    hasse,
    is_totally_ordered,
    maximal_chains,
    most_complex,
    simplest,
)
from .parser import parse, parse_catalog, serialize  # noqa: E402
from .report import analyze, emit_chains_text, emit_dot, emit_report  # noqa: E402
from .validate import check_category_axioms, check_convertibility, check_dimension  # noqa: E402

FIXTURES = ("beam", "aero", "elasticity")


def fixture_text(name: str) -> str:
    """Source text of a bundled example catalog (``beam``, ``aero``, ``elasticity``)."""
    return resources.files("modelcat").joinpath("fixtures", f"{name}.mcat").read_text(encoding="utf-8")


def load_fixture(name: str) -> Catalog:
    return parse_catalog(fixture_text(name))


__all__ = [
    "Catalog",
    "CatalogError",
    "ChainExplosion",
    "Comparison",
    "CycleDetected",
    "FIXTURES",
    "Mode",
    "analyze",
    "assumption_set_of",
    "build_catalog",
    "check_category_axioms",
    "check_convertibility",
    "check_dimension",
    "classify",
    "compare",
    "derive_relation",
    "diff_models",
    "emit_chains_text",
    "emit_dot",
    "emit_report",
    "fixture_text",
    "hasse",
    "is_totally_ordered",
    "load_fixture",
    "maximal_chains",
    "merge_catalogs",
    "model_triple",
    "most_complex",
    "parse",
    "parse_catalog",
    "serialize",
    "simplest",
]
