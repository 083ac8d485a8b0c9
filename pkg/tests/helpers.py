"""Catalog builders and brute-force oracles shared by the test modules.

The oracles deliberately avoid the package's own order code: subset tests
are done element by element, closures with Warshall on a boolean matrix,
and chains by enumerating every subset of objects.
"""
import itertools
import random

from modelcat.catalog import (
    ArrowDecl,
    AssumptionDecl,
    CatalogHeader,
    FormulationDecl,
    ConvertibleDecl,
    Mode,
    ModelDecl,
    ObjectDecl,
    build_catalog,
)


def sets_catalog(sets, name="fixture", dimension="test"):
    """Sets-mode catalog from ``{model_id: iterable of assumption ids}``."""
    atoms = sorted({a for members in sets.values() for a in members})
    decls = [CatalogHeader(name, dimension, Mode.SETS)]
    decls += [AssumptionDecl(a, f"assumption {a}") for a in atoms]
    decls += [ModelDecl(m, tuple(sorted(members))) for m, members in sets.items()]
    return build_catalog(decls)


def declared_catalog(objects, arrows, sets=None, name="fixture"):
    """Declared-mode catalog; ``arrows`` is a list of ``(id, source, target)``."""
    sets = sets or {}
    atoms = sorted({a for members in sets.values() for a in members})
    decls = [CatalogHeader(name, "test", Mode.DECLARED)]
    decls += [AssumptionDecl(a, f"assumption {a}") for a in atoms]
    abstract = [o for o in objects if o not in sets]
    if abstract:
        decls.append(ObjectDecl(tuple(abstract)))
    decls += [ModelDecl(m, tuple(sorted(s))) for m, s in sets.items()]
    decls += [ArrowDecl(i, s, t) for i, s, t in arrows]
    return build_catalog(decls)


def random_sets(rng, max_models=8, max_atoms=8):
    n_atoms = rng.randint(1, max_atoms)
    atoms = [f"a{i}" for i in range(n_atoms)]
    n_models = rng.randint(1, max_models)
    out = {}
    for i in range(n_models):
        k = rng.randint(1, n_atoms)
        out[f"M{i}"] = set(rng.sample(atoms, k))
    return out


def random_catalogs(count, seed):
    rng = random.Random(seed)
    return [sets_catalog(random_sets(rng), name=f"random-{seed}-{i}") for i in range(count)]


def random_full_catalog(rng):
    """Sets-mode catalog that also carries formulations and convertible classes."""
    sets = random_sets(rng)
    atoms = sorted({a for s in sets.values() for a in s})
    decls = [CatalogHeader(f"rnd \"q\" \\ {rng.randint(0, 99)}", "dim\nline", Mode.SETS)]
    decls += [AssumptionDecl(a, f"text for {a} with \"quotes\" and \\ backslash") for a in atoms]
    decls += [ModelDecl(m, tuple(sorted(s))) for m, s in sets.items()]
    n = 0
    for m in sets:
        forms = []
        for _ in range(rng.randint(0, 3)):
            fid = f"F{n}"
            n += 1
            via = rng.choice([None, "Hamilton principle", ""])
            decls.append(FormulationDecl(fid, m, f"expr of {fid}", via))
            forms.append(fid)
        if len(forms) >= 2 and rng.random() < 0.7:
            decls.append(ConvertibleDecl(tuple(forms)))
    return build_catalog(decls)


# --- oracles --------------------------------------------------------------------


def brute_subset(a, b):
    return all(x in b for x in a)


def brute_strict_subset(a, b):
    return brute_subset(a, b) and any(x not in a for x in b)


def brute_lt(catalog):
    """(x, y) means y is strictly more complex: set(y) strictly inside set(x)."""
    sets = {m.model_id: set(m.assumption_set.members) for m in catalog.models}
    return {(x, y) for x in sets for y in sets if x != y and brute_strict_subset(sets[y], sets[x])}


def warshall(objects, edges):
    idx = {o: i for i, o in enumerate(objects)}
    n = len(objects)
    reach = [[False] * n for _ in range(n)]
    for a, b in edges:
        reach[idx[a]][idx[b]] = True
    for k in range(n):
        for i in range(n):
            if reach[i][k]:
                for j in range(n):
                    if reach[k][j]:
                        reach[i][j] = True
    return {(objects[i], objects[j]) for i in range(n) for j in range(n) if reach[i][j]}


def brute_hasse(objects, lt, subset_limit=12):
    """Smallest edge set whose closure is ``lt``.

    Up to ``subset_limit`` pairs every subset is tried in order of size, and
    the minimum is checked to be unique. Larger relations fall back to the
    deletion test: an edge is kept iff dropping it from ``lt`` changes the
    closure, and the kept set is then confirmed to generate ``lt``.
    """
    objects = list(objects)
    lt = set(lt)
    pairs = sorted(lt)
    if len(pairs) <= subset_limit:
        for size in range(len(pairs) + 1):
            hits = [set(c) for c in itertools.combinations(pairs, size) if warshall(objects, c) == lt]
            if hits:
                assert len(hits) == 1, "minimal generating set is not unique"
                return hits[0]
        raise AssertionError("relation is not transitive")
    kept = {e for e in pairs if warshall(objects, lt - {e}) != lt}
    assert warshall(objects, kept) == lt
    for e in kept:
        assert warshall(objects, kept - {e}) != lt
    return kept


def brute_chains(objects, lt):
    """Every maximal totally ordered subset, listed simplest first."""
    objects = list(objects)
    lt = set(lt)

    def is_chain(sub):
        return all((a, b) in lt or (b, a) in lt for a, b in itertools.combinations(sub, 2))

    chains = [set(s) for r in range(1, len(objects) + 1) for s in itertools.combinations(objects, r) if is_chain(s)]
    maximal = [c for c in chains if not any(c < d for d in chains)]
    ordered = []
    for c in maximal:
        # rank = how many members sit below in the order
        ordered.append(sorted(c, key=lambda x: sum((y, x) in lt for y in c)))
    return sorted(map(tuple, ordered))
