"""Instance supply: exhaustive small monoids, attached actions, named families.

``enumerate_monoids(n)`` lists every commutative monoid of order ``n`` up
to isomorphism.  Actions are attached afterwards from subgroups of the
automorphism group, so the Γ-variants of one monoid are enumerated
systematically.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional

from .action import (
    GammaStructure,
    all_subgroups,
    automorphism_group,
    cyclic_action,
    is_abelian_perm_group,
    permutation_group_action,
    subgroup_closure,
    trivial_action,
    validate_action,
    cyclic_group,
)
from .errors import BadParams, SizeLimit
from .iso import canonical_form, canonical_table
from .monoid import Monoid, is_cancellative, is_conical, is_refinement, validate_monoid

ENUMERATION_CAP = 6

PAPER_T7_NAMES = ("0", "1", "x", "y", "z", "s", "b")
PAPER_T7_ROWS = (
    "0 1 x y z s b",
    "1 1 1 s s s b",
    "x 1 1 s s s b",
    "y s s y y s b",
    "z s s y y s b",
    "s s s s s s b",
    "b b b b b b s",
)


@dataclass(frozen=True)
class CorpusSpec:
    max_size: int = 5
    filters: frozenset = frozenset()
    action_source: str = "all-cyclic-subgroups"
    families: tuple = ()
    cap: int = ENUMERATION_CAP

    def __post_init__(self):
        if self.max_size > self.cap:
            raise SizeLimit(f"exhaustive enumeration is capped at n={self.cap}")
        unknown = set(self.filters) - {"refinement", "conical", "cancellative"}
        if unknown:
            raise BadParams(f"unknown filters {sorted(unknown)}")
        if self.action_source not in ACTION_SOURCES:
            raise BadParams(f"unknown action source {self.action_source!r}")


@dataclass(frozen=True)
class CorpusInstance:
    label: str
    gs: GammaStructure
    flags: dict = field(default_factory=dict, compare=False, hash=False)


def enumerate_monoids(n: int, cap: int = ENUMERATION_CAP) -> list:
    """All commutative monoids of order ``n`` up to isomorphism.

    Backtracks over the upper triangle of the Cayley table (row and
    column 0 are the identity), pruning on every associativity triple whose
    entries are already known.  Results are relabelled to their canonical
    tables and sorted, so the output is stable across runs.
    """
    if n < 1:
        raise BadParams("monoid order must be positive")
    if n > cap:
        raise SizeLimit(f"enumeration refused for n={n} > {cap}")
    keys = {canonical_form(trivial_action(validate_monoid(None, t))) for t in _commutative_tables(n)}
    return [Monoid(tuple(str(i) for i in range(n)), tuple(tuple(r) for r in canonical_table(k))) for k in sorted(keys)]


def _commutative_tables(n: int):
    t = [[-1] * n for _ in range(n)]
    for a in range(n):
        t[0][a] = t[a][0] = a
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    rng = range(1, n)

    def ok(i, j):
        # triples that use the entry (i, j) somewhere
        for a in rng:
            for b in rng:
                for c in rng:
                    ab = t[a][b]
                    bc = t[b][c]
                    if ab < 0 or bc < 0:
                        continue
                    l = t[ab][c]
                    r = t[a][bc]
                    if l >= 0 and r >= 0 and l != r:
                        return False
        return True

    def fill(k):
        if k == len(cells):
            yield [row[:] for row in t]
            return
        i, j = cells[k]
        for v in range(n):
            t[i][j] = t[j][i] = v
            if ok(i, j):
                yield from fill(k + 1)
        t[i][j] = t[j][i] = -1

    yield from fill(0)


def attach_actions(M: Monoid, source: str = "all-cyclic-subgroups", allow_nonabelian: bool = False) -> list:
    """Γ-structures on ``M`` from subgroups of its automorphism group.

    ``trivial`` gives only the trivial action; ``all-cyclic-subgroups``
    gives one cyclic group per cyclic subgroup (generated by its least
    generator); ``full-automorphism-subgroups`` gives every abelian
    subgroup as a permutation group.  The trivial action always comes first.
    """
    if source not in ACTION_SOURCES:
        raise BadParams(f"unknown action source {source!r}")
    out = [trivial_action(M)]
    if source == "trivial" or M.size == 1:
        return out
    auts = automorphism_group(M)
    n = M.size
    if source == "all-cyclic-subgroups":
        seen = {}
        for g in auts:
            h = subgroup_closure([g], n)
            if len(h) > 1 and (h not in seen or g < seen[h]):
                seen[h] = g
        for h in sorted(seen, key=lambda h: (len(h), sorted(h))):
            out.append(cyclic_action(M, seen[h]))
        return out
    for h in all_subgroups(auts, n):
        if len(h) == 1:
            continue
        if not allow_nonabelian and not is_abelian_perm_group(h):
            continue
        out.append(permutation_group_action(M, h, allow_nonabelian=allow_nonabelian))
    return out


ACTION_SOURCES = ("trivial", "all-cyclic-subgroups", "full-automorphism-subgroups")


def monoid_flags(M: Monoid) -> dict:
    return {
        "refinement": bool(is_refinement(M)),
        "conical": bool(is_conical(M)),
        "cancellative": bool(is_cancellative(M)),
    }


def build_corpus(spec: CorpusSpec = CorpusSpec()) -> list:
    """Every monoid up to ``spec.max_size`` with its actions, then the families."""
    out = []
    for n in range(1, spec.max_size + 1):
        for k, M in enumerate(enumerate_monoids(n, cap=spec.cap)):
            flags = monoid_flags(M)
            if any(not flags[f] for f in spec.filters):
                continue
            for a, gs in enumerate(attach_actions(M, spec.action_source)):
                out.append(CorpusInstance(f"n{n}-m{k:03d}-a{a}", gs, flags))
    for fam in spec.families:
        name, params = (fam, ()) if isinstance(fam, str) else (fam[0], tuple(fam[1:]))
        gs = builtin(name, *params)
        flags = monoid_flags(gs.monoid)
        if any(not flags[f] for f in spec.filters):
            continue
        label = name if not params else name + "(" + ",".join(str(p) for p in params) + ")"
        out.append(CorpusInstance(label, gs, flags))
    return out


def corpus_instances(max_size: int = 5, refinement_only: bool = False, source: str = "all-cyclic-subgroups") -> list:
    filters = frozenset({"refinement"}) if refinement_only else frozenset()
    return build_corpus(CorpusSpec(max_size=max_size, filters=filters, action_source=source))


# -- named families --------------------------------------------------------

def paper_t7() -> GammaStructure:
    names = PAPER_T7_NAMES
    table = [[names.index(tok) for tok in row.split()] for row in PAPER_T7_ROWS]
    return trivial_action(validate_monoid(names, table))


def truncated_naturals(k: int) -> GammaStructure:
    """``{0, ..., k}`` with ``a + b = min(a + b, k)``."""
    if k < 0:
        raise BadParams("truncation point must be non-negative")
    table = [[min(a + b, k) for b in range(k + 1)] for a in range(k + 1)]
    return trivial_action(validate_monoid([str(a) for a in range(k + 1)], table))


def semilattice_from_poset(points: int, relations: Iterable = ()) -> GammaStructure:
    """Down-sets of a finite poset under union.

    ``relations`` are pairs ``(a, b)`` meaning ``a < b``; the order is their
    reflexive-transitive closure.  Down-sets are listed by size, then
    lexicographically; the empty one is the identity.
    """
    if points < 0:
        raise BadParams("poset size must be non-negative")
    below = {b: {b} for b in range(points)}
    for a, b in relations:
        if not (0 <= a < points and 0 <= b < points):
            raise BadParams(f"relation {(a, b)} out of range")
        below[b].add(a)
    changed = True
    while changed:
        changed = False
        for b in range(points):
            new = set().union(*(below[a] for a in below[b]))
            if new != below[b]:
                below[b] = new
                changed = True
    if any(a in below[b] and b in below[a] for a in range(points) for b in range(points) if a != b):
        raise BadParams("relations contain a cycle")
    downsets = set()
    for mask in range(1 << points):
        s = frozenset(p for p in range(points) if mask >> p & 1)
        if all(below[b] <= s for b in s):
            downsets.add(s)
    order = sorted(downsets, key=lambda s: (len(s), sorted(s)))
    index = {s: i for i, s in enumerate(order)}
    table = [[index[a | b] for b in order] for a in order]
    names = ["0" if not s else "{" + ",".join(str(p) for p in sorted(s)) + "}" for s in order]
    return trivial_action(validate_monoid(names, table))


def direct_sum(parts: list) -> GammaStructure:
    """Componentwise sum; components share one group and act diagonally."""
    if not parts:
        raise BadParams("direct sum of nothing")
    group = parts[0].group
    if any(p.group.table != group.table for p in parts):
        raise BadParams("direct-sum components must be acted on by the same group")
    tuples = list(product(*(range(p.size) for p in parts)))
    index = {tpl: i for i, tpl in enumerate(tuples)}
    table = [
        [index[tuple(p.table[x][y] for p, x, y in zip(parts, u, v))] for v in tuples]
        for u in tuples
    ]
    short = all(len(nm) == 1 for p in parts for nm in p.names)
    sep = "" if short else ","
    names = [sep.join(p.names[x] for p, x in zip(parts, u)) for u in tuples]
    if not short:
        names = ["(" + nm + ")" for nm in names]
    mon = validate_monoid(names, table)
    action = [[index[tuple(p.action[alpha][x] for p, x in zip(parts, u))] for u in tuples] for alpha in range(group.size)]
    return validate_action(group, mon, action)


def shifted_power(k: int, d: int) -> GammaStructure:
    """``truncated_naturals(k)`` to the power ``d`` with the cyclic coordinate shift.

    The generator sends ``(a_0, ..., a_{d-1})`` to ``(a_{d-1}, a_0, ..., a_{d-2})``.
    """
    if d < 1:
        raise BadParams("power must be positive")
    base = direct_sum([truncated_naturals(k)] * d)
    tuples = list(product(range(k + 1), repeat=d))
    index = {tpl: i for i, tpl in enumerate(tuples)}
    gen = [index[(u[-1],) + u[:-1]] for u in tuples]
    rows = []
    cur = list(range(len(tuples)))
    for _ in range(d):
        rows.append(cur)
        cur = [gen[x] for x in cur]
    return validate_action(cyclic_group(d), base.monoid, rows)


def b2() -> GammaStructure:
    """The four-element monoid ``{00, 01, 10, 11}`` of two switches."""
    return direct_sum([truncated_naturals(1), truncated_naturals(1)])


def b2_swap() -> GammaStructure:
    return shifted_power(1, 2)


def _resolve(part):
    if isinstance(part, GammaStructure):
        return part
    if isinstance(part, str):
        return builtin(part)
    return builtin(part[0], *part[1:])


def builtin(name: str, *params) -> GammaStructure:
    """Named instance.

    ``paper-T7``; ``truncated-naturals`` (k); ``semilattice-from-poset``
    (points, relations); ``direct-sum`` (list of structures or
    ``(name, *params)`` tuples); ``shifted-power`` (k, d); plus ``B2`` and
    ``B2-swap``.
    """
    try:
        if name == "paper-T7" and not params:
            return paper_t7()
        if name == "truncated-naturals":
            (k,) = params
            return truncated_naturals(int(k))
        if name == "semilattice-from-poset":
            return semilattice_from_poset(int(params[0]), params[1] if len(params) > 1 else ())
        if name == "direct-sum":
            parts = params[0] if len(params) == 1 and isinstance(params[0], (list, tuple)) else params
            return direct_sum([_resolve(p) for p in parts])
        if name == "shifted-power":
            k, d = params
            return shifted_power(int(k), int(d))
        if name == "B2" and not params:
            return b2()
        if name == "B2-swap" and not params:
            return b2_swap()
    except (TypeError, ValueError) as exc:
        if isinstance(exc, BadParams):
            raise
        raise BadParams(f"bad parameters for {name}: {params!r}") from None
    raise BadParams(f"unknown builtin {name!r} with parameters {params!r}")


BUILTIN_NAMES = ("paper-T7", "truncated-naturals", "semilattice-from-poset", "direct-sum", "shifted-power", "B2", "B2-swap")


# -- manifest ----------------------------------------------------------------

def key_digest(key) -> str:
    return hashlib.sha256(repr(key).encode()).hexdigest()[:16]


def manifest_line(inst: CorpusInstance) -> str:
    """``label  n  m  key  refinement conical cancellative`` (tab separated)."""
    from .iso import CANONICAL_LIMIT

    gs = inst.gs
    flags = inst.flags or monoid_flags(gs.monoid)
    try:
        digest = key_digest(canonical_form(gs)) if gs.size <= CANONICAL_LIMIT else "-"
    except SizeLimit:
        digest = "-"
    bits = "".join("1" if flags[f] else "0" for f in ("refinement", "conical", "cancellative"))
    return "\t".join([inst.label, str(gs.size), str(gs.group.size), digest, bits])


def write_manifest(instances, path) -> None:
    with open(path, "w") as fh:
        fh.write("# label\tn\tm\tkey\trefinement,conical,cancellative\n")
        for inst in instances:
            fh.write(manifest_line(inst) + "\n")
