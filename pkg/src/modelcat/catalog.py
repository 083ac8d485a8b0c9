"""In-memory model catalogs: assumptions, models, formulations, arrows.

A catalog is immutable once built. :func:`build_catalog` is the only
supported constructor; it either returns a fully valid :class:`Catalog`
or raises :class:`CatalogError` carrying every violation it found.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

__all__ = [
    "Mode",
    "SourceSpan",
    "Diagnostic",
    "Severity",
    "Assumption",
    "AssumptionSet",
    "Formulation",
    "ConvertibilityClass",
    "DeclaredArrow",
    "ModelRecord",
    "Catalog",
    "CatalogError",
    "UnknownModelError",
    "MissingAssumptionSetError",
    "CatalogHeader",
    "AssumptionDecl",
    "ModelDecl",
    "ObjectDecl",
    "ArrowDecl",
    "FormulationDecl",
    "ConvertibleDecl",
    "build_catalog",
    "assumption_set_of",
    "diff_models",
    "model_triple",
    "ModelTripleView",
    "merge_catalogs",
    "natural_key",
]


_DIGITS = re.compile(r"(\d+)")


def natural_key(ident: str) -> tuple:
    """Sort key that orders ``f2`` before ``f10``."""
    parts = _DIGITS.split(ident)
    return tuple((0, int(p), p) if p.isdigit() else (1, 0, p) for p in parts)


def _sorted_ids(ids: Iterable[str]) -> tuple[str, ...]:
    return tuple(sorted(ids, key=natural_key))


class Mode(str, enum.Enum):
    SETS = "sets"
    DECLARED = "declared"


class Severity(str, enum.Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __post_init__(self):
        if self.line < 1 or self.column < 1 or self.length < 1:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    """A parser or catalog-building finding.

    ``span`` is ``None`` only for declarations built programmatically.
    """

    severity: Severity
    code: str
    message: str
    span: Optional[SourceSpan] = None

    def __post_init__(self):
        if not self.message:
            raise ValueError("diagnostic message must be non-empty")

    def format(self, filename: str = "<input>") -> str:
        where = f"{filename}:{self.span}" if self.span else filename
        return f"{where}: {self.severity.value} {self.code}: {self.message}"


class CatalogError(Exception):
    """Raised by :func:`build_catalog` with the complete list of violations."""

    def __init__(self, errors: Sequence[Diagnostic]):
        self.errors = list(errors)
        super().__init__("; ".join(e.message for e in self.errors))


class UnknownModelError(KeyError):
    pass


class MissingAssumptionSetError(LookupError):
    pass


# --- declarations (parser output / programmatic input) ----------------------


@dataclass(frozen=True)
class CatalogHeader:
    name: str
    dimension: str
    mode: Mode = Mode.SETS
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class AssumptionDecl:
    id: str
    text: str
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class ModelDecl:
    id: str
    assumes: tuple[str, ...]
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class ObjectDecl:
    ids: tuple[str, ...]
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class ArrowDecl:
    id: str
    source: str
    target: str
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class FormulationDecl:
    id: str
    of_model: str
    expr: str
    via: Optional[str] = None
    span: Optional[SourceSpan] = field(default=None, compare=False)


@dataclass(frozen=True)
class ConvertibleDecl:
    members: tuple[str, ...]
    span: Optional[SourceSpan] = field(default=None, compare=False)


Declaration = Union[
    CatalogHeader, AssumptionDecl, ModelDecl, ObjectDecl, ArrowDecl, FormulationDecl, ConvertibleDecl
]


# --- catalog types ------------------------------------------------------------


@dataclass(frozen=True)
class Assumption:
    id: str
    text: str


@dataclass(frozen=True)
class AssumptionSet:
    owner: str
    members: frozenset[str]

    def __post_init__(self):
        if not self.members:
            raise ValueError(f"assumption set of {self.owner!r} is empty")

    def __iter__(self):
        return iter(_sorted_ids(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in self.members


@dataclass(frozen=True)
class Formulation:
    id: str
    of_model: str
    expr: str
    mapping_label: Optional[str] = None


@dataclass(frozen=True)
class ConvertibilityClass:
    members: frozenset[str]

    def sorted_members(self) -> tuple[str, ...]:
        return _sorted_ids(self.members)


@dataclass(frozen=True)
class DeclaredArrow:
    id: str
    source: str
    target: str


@dataclass(frozen=True)
class ModelRecord:
    model_id: str
    assumption_set: Optional[AssumptionSet]
    formulations: tuple[Formulation, ...] = ()


@dataclass(frozen=True)
class Catalog:
    """A validated, immutable model catalog.

    Collections are stored as tuples in natural id order, so two catalogs
    built from the same declarations in any order compare equal.
    ``dimensions`` holds a single tag unless catalogs were merged.
    """

    name: str
    dimensions: tuple[str, ...]
    mode: Mode
    assumptions: tuple[Assumption, ...]
    models: tuple[ModelRecord, ...]
    convertibility_classes: tuple[ConvertibilityClass, ...]
    arrows: tuple[DeclaredArrow, ...]

    @property
    def dimension(self) -> str:
        return self.dimensions[0] if len(self.dimensions) == 1 else " | ".join(self.dimensions)

    @property
    def model_ids(self) -> tuple[str, ...]:
        return tuple(m.model_id for m in self.models)

    @property
    def formulations(self) -> tuple[Formulation, ...]:
        found = [f for m in self.models for f in m.formulations]
        return tuple(sorted(found, key=lambda f: natural_key(f.id)))

    def model(self, model_id: str) -> ModelRecord:
        for m in self.models:
            if m.model_id == model_id:
                return m
        raise UnknownModelError(model_id)

    def formulation(self, formulation_id: str) -> Formulation:
        for f in self.formulations:
            if f.id == formulation_id:
                return f
        raise KeyError(formulation_id)

    def assumption(self, assumption_id: str) -> Assumption:
        for a in self.assumptions:
            if a.id == assumption_id:
                return a
        raise KeyError(assumption_id)

    def counts(self) -> dict[str, int]:
        return {
            "assumptions": len(self.assumptions),
            "models": len(self.models),
            "formulations": len(self.formulations),
            "convertible_classes": len(self.convertibility_classes),
            "arrows": len(self.arrows),
        }


# --- construction -------------------------------------------------------------


def _err(code: str, message: str, span=None) -> Diagnostic:
    return Diagnostic(Severity.ERROR, code, message, span)


def build_catalog(declarations: Iterable[Declaration]) -> Catalog:
    """Assemble and validate a catalog from parsed or hand-built declarations.

    Raises :class:`CatalogError` listing every violation; a partially
    valid catalog is never returned.
    """
    decls = list(declarations)
    errors: list[Diagnostic] = []

    headers = [d for d in decls if isinstance(d, CatalogHeader)]
    if not headers:
        errors.append(_err("C001", "missing catalog header"))
        header = CatalogHeader("", "", Mode.SETS)
    else:
        header = headers[0]
        for extra in headers[1:]:
            errors.append(_err("C002", "more than one catalog header", extra.span))
    mode = Mode(header.mode)

    assumptions: dict[str, Assumption] = {}
    for d in decls:
        if not isinstance(d, AssumptionDecl):
            continue
        if d.id in assumptions:
            errors.append(_err("C010", f"duplicate assumption id {d.id!r}", d.span))
            continue
        if not d.text:
            errors.append(_err("C011", f"assumption {d.id!r} has empty text", d.span))
        assumptions[d.id] = Assumption(d.id, d.text)

    # model id -> member set (None for abstract declared objects)
    model_sets: dict[str, Optional[frozenset[str]]] = {}
    for d in decls:
        if isinstance(d, ModelDecl):
            if d.id in model_sets:
                errors.append(_err("C020", f"duplicate model id {d.id!r}", d.span))
                continue
            members = frozenset(d.assumes)
            if not members:
                errors.append(_err("C021", f"empty assumption set for model {d.id!r}", d.span))
            for a in _sorted_ids(members):
                if a not in assumptions:
                    errors.append(
                        _err("C022", f"model {d.id!r} references unknown assumption {a!r}", d.span)
                    )
            model_sets[d.id] = members
        elif isinstance(d, ObjectDecl):
            if mode is Mode.SETS:
                errors.append(
                    _err("C030", "mixed-mode declarations: 'object' requires mode declared", d.span)
                )
                continue
            for oid in d.ids:
                if oid in model_sets:
                    errors.append(_err("C020", f"duplicate model id {oid!r}", d.span))
                    continue
                model_sets[oid] = None

    arrows: dict[str, DeclaredArrow] = {}
    for d in decls:
        if not isinstance(d, ArrowDecl):
            continue
        if mode is Mode.SETS:
            errors.append(
                _err("C030", "mixed-mode declarations: 'arrow' requires mode declared", d.span)
            )
            continue
        if d.id in arrows:
            errors.append(_err("C040", f"duplicate arrow id {d.id!r}", d.span))
            continue
        for end in (d.source, d.target):
            if end not in model_sets:
                errors.append(_err("C041", f"arrow {d.id!r} references unknown object {end!r}", d.span))
        if d.source == d.target:
            errors.append(_err("C042", f"arrow {d.id!r} has identical source and target", d.span))
        arrows[d.id] = DeclaredArrow(d.id, d.source, d.target)

    formulations: dict[str, Formulation] = {}
    for d in decls:
        if not isinstance(d, FormulationDecl):
            continue
        if d.id in formulations:
            errors.append(_err("C050", f"duplicate formulation id {d.id!r}", d.span))
            continue
        if d.of_model not in model_sets:
            errors.append(
                _err("C051", f"formulation {d.id!r} references unknown model {d.of_model!r}", d.span)
            )
        formulations[d.id] = Formulation(d.id, d.of_model, d.expr, d.via)

    classes: set[ConvertibilityClass] = set()
    for d in decls:
        if not isinstance(d, ConvertibleDecl):
            continue
        members = frozenset(d.members)
        if len(members) < 2:
            errors.append(_err("C060", "convertible class needs at least two distinct formulations", d.span))
            continue
        unknown = [m for m in _sorted_ids(members) if m not in formulations]
        for m in unknown:
            errors.append(_err("C061", f"convertible references unknown formulation {m!r}", d.span))
        owners = {formulations[m].of_model for m in members if m in formulations}
        if len(owners) > 1:
            errors.append(
                _err(
                    "C062",
                    "convertible class spans models " + ", ".join(_sorted_ids(owners)),
                    d.span,
                )
            )
        if members in {c.members for c in classes}:
            errors.append(_err("C063", "duplicate convertible class", d.span))
        classes.add(ConvertibilityClass(members))

    if errors:
        raise CatalogError(errors)

    models = []
    for mid in _sorted_ids(model_sets):
        members = model_sets[mid]
        aset = AssumptionSet(mid, members) if members is not None else None
        forms = tuple(sorted((f for f in formulations.values() if f.of_model == mid), key=lambda f: natural_key(f.id)))
        models.append(ModelRecord(mid, aset, forms))

    return Catalog(
        name=header.name,
        dimensions=(header.dimension,),
        mode=mode,
        assumptions=tuple(assumptions[k] for k in _sorted_ids(assumptions)),
        models=tuple(models),
        convertibility_classes=tuple(sorted(classes, key=lambda c: [natural_key(m) for m in c.sorted_members()])),
        arrows=tuple(arrows[k] for k in _sorted_ids(arrows)),
    )


def merge_catalogs(first: Catalog, second: Catalog, name: Optional[str] = None) -> Catalog:
    """Combine two catalogs of the same mode into one.

    Dimension tags are concatenated rather than reconciled so a merge across
    physical dimensions stays visible to :func:`modelcat.validate.check_dimension`.
    Colliding ids raise :class:`CatalogError`.
    """
    if first.mode is not second.mode:
        raise CatalogError([_err("C030", "cannot merge catalogs of different modes")])
    errors = []
    for label, a, b in (
        ("assumption", [x.id for x in first.assumptions], [x.id for x in second.assumptions]),
        ("model", first.model_ids, second.model_ids),
        ("formulation", [f.id for f in first.formulations], [f.id for f in second.formulations]),
        ("arrow", [x.id for x in first.arrows], [x.id for x in second.arrows]),
    ):
        for dup in _sorted_ids(set(a) & set(b)):
            errors.append(_err("C070", f"merge collision on {label} id {dup!r}"))
    if errors:
        raise CatalogError(errors)
    dims = tuple(dict.fromkeys(first.dimensions + second.dimensions))
    return Catalog(
        name=name or f"{first.name}+{second.name}",
        dimensions=dims,
        mode=first.mode,
        assumptions=tuple(sorted(first.assumptions + second.assumptions, key=lambda a: natural_key(a.id))),
        models=tuple(sorted(first.models + second.models, key=lambda m: natural_key(m.model_id))),
        convertibility_classes=tuple(
            sorted(
                first.convertibility_classes + second.convertibility_classes,
                key=lambda c: [natural_key(m) for m in c.sorted_members()],
            )
        ),
        arrows=tuple(sorted(first.arrows + second.arrows, key=lambda a: natural_key(a.id))),
    )


# --- queries ------------------------------------------------------------------


def assumption_set_of(catalog: Catalog, model_id: str) -> AssumptionSet:
    record = catalog.model(model_id)
    if record.assumption_set is None:
        raise MissingAssumptionSetError(f"model {model_id!r} is an abstract object without an assumption set")
    return record.assumption_set


def diff_models(catalog: Catalog, a: str, b: str) -> tuple[frozenset, frozenset, frozenset]:
    """Split the assumptions of two models into ``(only_in_a, only_in_b, shared)``."""
    sa = assumption_set_of(catalog, a).members
    sb = assumption_set_of(catalog, b).members
    return sa - sb, sb - sa, sa & sb


ABSTRACT_OBJECT = "<abstract object>"


@dataclass(frozen=True)
class ModelTripleView:
    """Read-only ``(assumption set, instantiation, formalisation mapping)`` view."""

    formulation_id: str
    model_id: str
    assumption_set: Union[frozenset, str]
    expr: str
    mapping_label: Optional[str]

    @property
    def is_abstract(self) -> bool:
        return self.assumption_set == ABSTRACT_OBJECT

    def as_tuple(self) -> tuple:
        return (self.assumption_set, self.expr, self.mapping_label)


def model_triple(catalog: Catalog, formulation_id: str) -> ModelTripleView:
    form = catalog.formulation(formulation_id)
    record = catalog.model(form.of_model)
    aset = record.assumption_set.members if record.assumption_set is not None else ABSTRACT_OBJECT
    return ModelTripleView(form.id, record.model_id, aset, form.expr, form.mapping_label)
