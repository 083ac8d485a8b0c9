"""Complexity order over a catalog: relation, Hasse reduction, extremes, chains.

Orientation: a pair ``(a, b)`` in ``lt`` (and an edge ``a -> b``) means model
``b`` is strictly more complex than ``a``, i.e. ``b`` rests on a strict
subset of ``a``'s assumptions. Edges therefore run from the simplest model
(initial object) toward the most complex one (terminal object).

Equal assumption sets are kept as distinct objects; they are unrelated in
``lt`` and reported through ``ComplexityPoset.warnings``.
"""
from __future__ import annotations

import enum
import graphlib
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .catalog import AssumptionSet, Catalog, Diagnostic, Mode, Severity, natural_key

__all__ = [
    "Comparison",
    "Provenance",
    "Ordering",
    "Prop1Case",
    "ComplexityPoset",
    "Classification",
    "TotalOrderEvidence",
    "CycleDetected",
    "ChainExplosion",
    "DEFAULT_CHAIN_CAP",
    "compare",
    "derive_relation",
    "make_poset",
    "hasse",
    "transitive_closure",
    "is_totally_ordered",
    "most_complex",
    "simplest",
    "classify",
    "prop1_case",
    "maximal_chains",
    "count_maximal_chains",
]

DEFAULT_CHAIN_CAP = 10_000


class Comparison(enum.Enum):
    HIGHER = "HigherComplexity"
    LOWER = "LowerComplexity"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"

    def flipped(self) -> "Comparison":
        return {Comparison.HIGHER: Comparison.LOWER, Comparison.LOWER: Comparison.HIGHER}.get(self, self)


class Provenance(enum.Enum):
    DERIVED_FROM_SETS = "derived_from_sets"
    DECLARED = "declared"


class Ordering(enum.Enum):
    TOTAL = "total"
    PARTIAL = "partial"


class Prop1Case(enum.Enum):
    """Which extremal objects exist: neither, most complex only, simplest only, both."""

    I = "I"  # noqa: E741
    II = "II"
    III = "III"
    IV = "IV"


class CycleDetected(ValueError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("declared arrows form a cycle: " + " -> ".join(cycle))


class ChainExplosion(RuntimeError):
    def __init__(self, count: int, cap: int):
        self.count = count
        self.cap = cap
        super().__init__(f"{count} maximal chains exceed the cap of {cap}")


def _members(x: Union[AssumptionSet, Iterable[str]]) -> frozenset:
    return x.members if isinstance(x, AssumptionSet) else frozenset(x)


def compare(a, b) -> Comparison:
    """Compare the complexity of model ``a`` against model ``b``.

    ``HIGHER`` means ``a`` is more complex: its assumptions are a strict
    subset of ``b``'s.
    """
    sa, sb = _members(a), _members(b)
    if sa == sb:
        return Comparison.EQUAL
    if sa < sb:
        return Comparison.HIGHER
    if sb < sa:
        return Comparison.LOWER
    return Comparison.INCOMPARABLE


@dataclass(frozen=True)
class ComplexityPoset:
    objects: tuple[str, ...]
    lt: frozenset[tuple[str, str]]
    hasse_edges: tuple[tuple[str, str], ...]
    provenance: Provenance
    warnings: tuple[Diagnostic, ...] = field(default=(), compare=False)

    def successors(self, node: str) -> list[str]:
        return [b for a, b in self.hasse_edges if a == node]

    def predecessors(self, node: str) -> list[str]:
        return [a for a, b in self.hasse_edges if b == node]

    def comparable(self, a: str, b: str) -> bool:
        return (a, b) in self.lt or (b, a) in self.lt

    @property
    def composites(self) -> tuple[tuple[str, str], ...]:
        """Pairs of ``lt`` implied by composition rather than covering."""
        return _sort_pairs(self.lt - set(self.hasse_edges))


def _sort_pairs(pairs) -> tuple[tuple[str, str], ...]:
    return tuple(sorted(pairs, key=lambda p: (natural_key(p[0]), natural_key(p[1]))))


def transitive_closure(objects: Iterable[str], edges: Iterable[tuple[str, str]]) -> frozenset:
    succ: dict[str, set[str]] = {o: set() for o in objects}
    for a, b in edges:
        succ.setdefault(a, set()).add(b)
        succ.setdefault(b, set())
    closure = set()
    for start in succ:
        stack = list(succ[start])
        seen = set()
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(succ[node])
        closure.update((start, n) for n in seen)
    return frozenset(closure)


def _reduce(objects: Iterable[str], lt: frozenset) -> tuple[tuple[str, str], ...]:
    """Covering pairs of a strict order: keep (a, b) unless some c sits between."""
    objs = list(objects)
    above = {o: {b for a, b in lt if a == o} for o in objs}
    edges = [(a, b) for a, b in lt if not any(b in above[c] for c in above[a])]
    return _sort_pairs(edges)


def make_poset(objects: Iterable[str], lt: Iterable[tuple[str, str]], provenance=Provenance.DECLARED, warnings=()) -> ComplexityPoset:
    """Build a poset from an already transitive, irreflexive relation."""
    objs = tuple(sorted(set(objects), key=natural_key))
    rel = frozenset(lt)
    return ComplexityPoset(objs, rel, _reduce(objs, rel), provenance, tuple(warnings))


def hasse(poset: ComplexityPoset) -> list[tuple[str, str]]:
    """Transitive reduction of ``poset.lt``."""
    return list(_reduce(poset.objects, poset.lt))


def derive_relation(catalog: Catalog) -> ComplexityPoset:
    """Derive the strict complexity order of a catalog.

    Sets mode compares every pair of assumption sets. Declared mode takes
    the transitive closure of the declared arrows and raises
    :class:`CycleDetected` if that closure is not antisymmetric.
    """
    objects = catalog.model_ids
    if catalog.mode is Mode.SETS:
        sets = {m.model_id: m.assumption_set.members for m in catalog.models}
        lt = set()
        warnings = []
        for i, a in enumerate(objects):
            for b in objects[i + 1:]:
                c = compare(sets[a], sets[b])
                if c is Comparison.HIGHER:
                    lt.add((b, a))
                elif c is Comparison.LOWER:
                    lt.add((a, b))
                elif c is Comparison.EQUAL:
                    warnings.append(
                        Diagnostic(
                            Severity.WARNING,
                            "DuplicateEqualSets",
                            f"models {a!r} and {b!r} have equal assumption sets (equal complexity); kept as distinct objects",
                        )
                    )
        return make_poset(objects, lt, Provenance.DERIVED_FROM_SETS, warnings)

    graph = {o: set() for o in objects}
    for arrow in catalog.arrows:
        # TopologicalSorter takes predecessors; target depends on source
        graph[arrow.target].add(arrow.source)
    try:
        tuple(graphlib.TopologicalSorter(graph).static_order())
    except graphlib.CycleError as exc:
        cycle = list(reversed(exc.args[1]))
        raise CycleDetected(cycle) from None
    lt = transitive_closure(objects, ((a.source, a.target) for a in catalog.arrows))
    return make_poset(objects, lt, Provenance.DECLARED)


@dataclass(frozen=True)
class TotalOrderEvidence:
    """Outcome of :func:`is_totally_ordered`; truthy when the order is total.

    ``incomparable`` names a witness pair when it is not. In sets mode a
    total order also reports whether the largest set equals the union of all
    sets (it always must).
    """

    total: bool
    incomparable: Optional[tuple[str, str]] = None
    union_set: Optional[frozenset] = None
    largest: Optional[str] = None
    largest_is_union: Optional[bool] = None

    def __bool__(self) -> bool:
        return self.total


def _union(catalog: Catalog) -> Optional[frozenset]:
    if catalog.mode is not Mode.SETS:
        return None
    return frozenset().union(*(m.assumption_set.members for m in catalog.models))


def is_totally_ordered(poset: ComplexityPoset, catalog: Catalog) -> TotalOrderEvidence:
    objs = poset.objects
    for i, a in enumerate(objs):
        for b in objs[i + 1:]:
            if not poset.comparable(a, b):
                return TotalOrderEvidence(False, (a, b), _union(catalog))
    if catalog.mode is not Mode.SETS or not objs:
        return TotalOrderEvidence(True)
    union = _union(catalog)
    # the simplest model sits below everything in lt
    largest = next(o for o in objs if all((o, b) in poset.lt for b in objs if b != o))
    holds = catalog.model(largest).assumption_set.members == union
    if not holds:
        raise AssertionError(f"total order whose largest set {largest!r} is not the union of all sets")
    return TotalOrderEvidence(True, None, union, largest, holds)


def _unique(candidates: list[str]) -> Optional[str]:
    return candidates[0] if len(candidates) == 1 else None


def most_complex(poset: ComplexityPoset, catalog: Catalog) -> Optional[str]:
    """The object strictly more complex than every other one, if any."""
    if catalog.mode is Mode.SETS:
        sets = {m.model_id: m.assumption_set.members for m in catalog.models}
        return _unique([a for a in poset.objects if all(sets[a] < sets[b] for b in poset.objects if b != a)])
    return _unique([a for a in poset.objects if all((b, a) in poset.lt for b in poset.objects if b != a)])


def simplest(poset: ComplexityPoset, catalog: Catalog) -> Optional[str]:
    """The object whose assumption set is the union of all sets, if any."""
    if catalog.mode is Mode.SETS:
        union = _union(catalog)
        sets = {m.model_id: m.assumption_set.members for m in catalog.models}
        return _unique([a for a in poset.objects if sets[a] == union])
    return _unique([a for a in poset.objects if all((a, b) in poset.lt for b in poset.objects if b != a)])


def prop1_case(most: Optional[str], least: Optional[str]) -> Prop1Case:
    if most is None and least is None:
        return Prop1Case.I
    if least is None:
        return Prop1Case.II
    if most is None:
        return Prop1Case.III
    return Prop1Case.IV


@dataclass(frozen=True)
class Classification:
    ordering: Ordering
    prop1_case: Prop1Case
    most_complex: Optional[str]
    simplest: Optional[str]
    union_set: Optional[frozenset] = None


def classify(poset: ComplexityPoset, catalog: Catalog) -> Classification:
    most = most_complex(poset, catalog)
    least = simplest(poset, catalog)
    total = is_totally_ordered(poset, catalog)
    return Classification(
        ordering=Ordering.TOTAL if total else Ordering.PARTIAL,
        prop1_case=prop1_case(most, least),
        most_complex=most,
        simplest=least,
        union_set=_union(catalog),
    )


def count_maximal_chains(poset: ComplexityPoset) -> int:
    """Number of source-to-sink paths in the Hasse diagram, without enumerating them."""
    succ = {o: poset.successors(o) for o in poset.objects}
    paths: dict[str, int] = {}

    def count(node: str) -> int:
        if node not in paths:
            paths[node] = sum(count(s) for s in succ[node]) if succ[node] else 1
        return paths[node]

    order = graphlib.TopologicalSorter({o: set(succ[o]) for o in poset.objects}).static_order()
    for node in order:
        count(node)
    return sum(paths[o] for o in poset.objects if not poset.predecessors(o))


def maximal_chains(poset: ComplexityPoset, max_chains: int = DEFAULT_CHAIN_CAP) -> list[list[str]]:
    """All maximal chains, simplest object first, sorted by their id sequences.

    Each chain is a path in the Hasse diagram from a minimal to a maximal
    element. Raises :class:`ChainExplosion` before enumerating if the chain
    count exceeds ``max_chains``.
    """
    total = count_maximal_chains(poset)
    if total > max_chains:
        raise ChainExplosion(total, max_chains)
    succ = {o: sorted(poset.successors(o), key=natural_key) for o in poset.objects}
    chains: list[list[str]] = []

    def walk(path: list[str]):
        nxt = succ[path[-1]]
        if not nxt:
            chains.append(list(path))
            return
        for n in nxt:
            path.append(n)
            walk(path)
            path.pop()

    for source in poset.objects:
        if not poset.predecessors(source):
            walk([source])
    chains.sort(key=lambda c: [natural_key(x) for x in c])
    return chains
