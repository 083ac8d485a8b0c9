"""Category-axiom, convertibility and dimension checks.

Every check returns a :class:`ValidationReport` instead of raising, and each
registered check id appears in its report exactly once.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .catalog import Catalog, Mode, Severity, natural_key
from .order import Comparison, ComplexityPoset, compare

__all__ = [
    "Status",
    "CheckResult",
    "ValidationReport",
    "AXIOM_CHECKS",
    "CONVERTIBILITY_CHECKS",
    "DIMENSION_CHECKS",
    "check_category_axioms",
    "check_convertibility",
    "check_dimension",
    "validate_all",
]


class Status(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    status: Status
    details: str
    witnesses: tuple = ()
    severity: Severity = Severity.ERROR

    @property
    def failed(self) -> bool:
        return self.status is Status.FAIL


@dataclass(frozen=True)
class ValidationReport:
    name: str
    checks: tuple[CheckResult, ...] = field(default=())

    def __getitem__(self, check_id: str) -> CheckResult:
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    @property
    def passed(self) -> bool:
        """True unless an error-severity check failed; warnings do not count."""
        return not any(c.failed and c.severity is Severity.ERROR for c in self.checks)

    def findings(self) -> list[tuple[str, object]]:
        """One ``(check_id, witness)`` entry per witness of every failed check."""
        return [(c.check_id, w) for c in self.checks if c.failed for w in (c.witnesses or (None,))]


AXIOM_CHECKS = ("identity", "irreflexivity", "acyclicity", "composition", "associativity", "arrow-set-consistency")
CONVERTIBILITY_CHECKS = ("single-model-classes", "unlinked-co-formulations", "equal-complexity")
DIMENSION_CHECKS = ("single-dimension",)


def _pass(check_id, details, severity=Severity.ERROR):
    return CheckResult(check_id, Status.PASS, details, (), severity)


def _fail(check_id, details, witnesses, severity=Severity.ERROR):
    return CheckResult(check_id, Status.FAIL, details, tuple(witnesses), severity)


def _na(check_id, details):
    return CheckResult(check_id, Status.NOT_APPLICABLE, details)


def _key(pair):
    return tuple(natural_key(x) for x in pair)


def check_category_axioms(catalog: Catalog, poset: ComplexityPoset) -> ValidationReport:
    lt = poset.lt
    results = [
        _pass("identity", "identity arrows are implicit for every object; guaranteed by construction"),
    ]

    loops = sorted(((a, b) for a, b in lt if a == b), key=_key)
    results.append(
        _fail("irreflexivity", "relation relates an object to itself", loops)
        if loops
        else _pass("irreflexivity", "no object is strictly related to itself")
    )

    two_cycles = sorted({tuple(sorted(p, key=natural_key)) for p in lt if (p[1], p[0]) in lt and p[0] != p[1]}, key=_key)
    results.append(
        _fail("acyclicity", "pairs related in both directions", two_cycles)
        if two_cycles
        else _pass("acyclicity", "relation is antisymmetric; no cycles")
    )

    succ: dict[str, list[str]] = {}
    for a, b in lt:
        succ.setdefault(a, []).append(b)
    missing = sorted({(a, c) for a, b in lt for c in succ.get(b, ()) if (a, c) not in lt}, key=_key)
    composites = len(lt) - len(poset.hasse_edges)
    results.append(
        _fail("composition", "composable pairs whose composite is missing from the relation", missing)
        if missing
        else _pass("composition", f"every composable pair has its composite in the relation ({composites} composite arrows)")
    )

    results.append(
        _pass("associativity", "arrows are relation pairs, so composition is unique and associative by construction")
    )

    if catalog.mode is Mode.SETS:
        results.append(_na("arrow-set-consistency", "sets mode has no declared arrows"))
    else:
        checked, bad = 0, []
        for arrow in catalog.arrows:
            src = catalog.model(arrow.source).assumption_set
            tgt = catalog.model(arrow.target).assumption_set
            if src is None or tgt is None:
                continue
            checked += 1
            if not tgt.members < src.members:
                bad.append((arrow.source, arrow.target))
        if bad:
            results.append(
                _fail("arrow-set-consistency", "declared arrows whose target set is not a strict subset of the source set", bad)
            )
        elif checked:
            results.append(_pass("arrow-set-consistency", f"{checked} declared arrows agree with their assumption sets"))
        else:
            results.append(_na("arrow-set-consistency", "no declared arrow joins two objects with assumption sets"))

    return ValidationReport("category-axioms", tuple(results))


def check_convertibility(catalog: Catalog) -> ValidationReport:
    forms = {f.id: f for f in catalog.formulations}
    results = []

    spanning = []
    for cls in catalog.convertibility_classes:
        owners = {forms[m].of_model for m in cls.members}
        if len(owners) != 1:
            spanning.append(cls.sorted_members())
    results.append(
        _fail("single-model-classes", "convertible classes spanning several models", spanning)
        if spanning
        else _pass("single-model-classes", "every convertible class belongs to one model")
    )

    # components of the "declared convertible" relation, per formulation
    parent = {f: f for f in forms}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for cls in catalog.convertibility_classes:
        first, *rest = cls.sorted_members()
        for m in rest:
            parent[find(m)] = find(first)
    unlinked = []
    for record in catalog.models:
        ids = [f.id for f in record.formulations]
        if len(ids) > 1 and len({find(i) for i in ids}) > 1:
            unlinked.append((record.model_id, tuple(ids)))
    results.append(
        _fail(
            "unlinked-co-formulations",
            "unlinked co-formulations: formulations of one model not declared convertible",
            unlinked,
            Severity.WARNING,
        )
        if unlinked
        else _pass("unlinked-co-formulations", "all formulations sharing a model are linked as convertible", Severity.WARNING)
    )

    unequal = []
    for cls in catalog.convertibility_classes:
        members = cls.sorted_members()
        for i, a in enumerate(members):
            for b in members[i + 1:]:
                ra, rb = catalog.model(forms[a].of_model), catalog.model(forms[b].of_model)
                if ra.assumption_set is not None and rb.assumption_set is not None:
                    same = compare(ra.assumption_set, rb.assumption_set) is Comparison.EQUAL
                else:
                    same = ra.model_id == rb.model_id
                if not same:
                    unequal.append((a, b))
    results.append(
        _fail("equal-complexity", "convertible formulations of unequal complexity", unequal)
        if unequal
        else _pass("equal-complexity", "convertible formulations compare Equal; mapping labels are not considered")
    )
    return ValidationReport("convertibility", tuple(results))


def check_dimension(catalog: Catalog) -> ValidationReport:
    tags = catalog.dimensions
    if len(tags) != 1:
        result = _fail("single-dimension", "catalog mixes physical dimensions", tags)
    elif not tags[0].strip():
        result = _fail("single-dimension", "catalog has an empty dimension tag", ("",))
    else:
        result = _pass("single-dimension", f"all models act in dimension {tags[0]!r}")
    return ValidationReport("dimension", (result,))


def validate_all(catalog: Catalog, poset: Optional[ComplexityPoset]) -> list[ValidationReport]:
    reports = []
    if poset is not None:
        reports.append(check_category_axioms(catalog, poset))
    reports.append(check_convertibility(catalog))
    reports.append(check_dimension(catalog))
    return reports
