"""Finite groups acting on finite commutative monoids.

A group is an ``m x m`` Cayley table with identity at index 0.  An action
is an ``m x n`` table ``action[alpha][a]`` giving the image of ``a`` under
``alpha``; a validated (monoid, group, action) triple is a
:class:`GammaStructure`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from .errors import (
    AdditivityLaw,
    BadShape,
    CompositionLaw,
    GroupMismatch,
    IdentityLaw,
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotAssociative,
    NotPermutation,
)
from .monoid import Monoid


@dataclass(frozen=True)
class Group:
    table: tuple
    inverse: tuple

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    @property
    def is_trivial(self) -> bool:
        return len(self.table) == 1

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]


@dataclass(frozen=True)
class GammaStructure:
    monoid: Monoid
    group: Group
    action: tuple

    @property
    def size(self) -> int:
        return self.monoid.size

    def __len__(self):
        return self.monoid.size

    @property
    def names(self):
        return self.monoid.names

    @property
    def table(self):
        return self.monoid.table

    def act(self, alpha: int, a: int) -> int:
        return self.action[alpha][a]

    @cached_property
    def orbit_masks(self) -> tuple:
        masks = [0] * self.size
        for row in self.action:
            for a, b in enumerate(row):
                masks[a] |= 1 << b
        return tuple(masks)

    def with_monoid_names(self, names) -> "GammaStructure":
        return GammaStructure(Monoid(tuple(names), self.monoid.table), self.group, self.action)


@dataclass(frozen=True)
class Orbit:
    base: int
    elements: frozenset

    def __contains__(self, a):
        return a in self.elements

    def __len__(self):
        return len(self.elements)


def validate_group(table, allow_nonabelian: bool = False) -> Group:
    """Validate a finite group table with identity at index 0.

    Commutativity is required unless ``allow_nonabelian`` is set, in which
    case a non-commuting pair only triggers a warning.
    """
    arr = np.asarray(table, dtype=np.intp)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise BadShape(f"group table must be a non-empty square array, got shape {arr.shape}")
    m = arr.shape[0]
    if arr.min() < 0 or arr.max() >= m:
        raise BadShape("group table entry out of range")
    idx = np.arange(m)
    bad = np.flatnonzero((arr[0] != idx) | (arr[:, 0] != idx))
    if bad.size:
        raise NoIdentity(f"index 0 is not a two-sided identity (fails at {int(bad[0])})", witness=(int(bad[0]),))
    left = arr[arr[:, :, None], idx[None, None, :]]
    right = arr[idx[:, None, None], arr[None, :, :]]
    bad = np.argwhere(left != right)
    if bad.size:
        w = tuple(int(v) for v in bad[0])
        raise NotAssociative(f"group table not associative at {w}", witness=w)
    inverse = []
    for a in range(m):
        hits = np.flatnonzero((arr[a] == 0) & (arr[:, a] == 0))
        if not hits.size:
            raise NoInverse(f"group element {a} has no inverse", witness=(a,))
        inverse.append(int(hits[0]))
    bad = np.argwhere(arr != arr.T)
    if bad.size:
        w = tuple(int(v) for v in bad[0])
        if not allow_nonabelian:
            raise NotAbelian(f"group elements {w[0]} and {w[1]} do not commute", witness=w)
        warnings.warn(f"non-abelian acting group: {w[0]}*{w[1]} != {w[1]}*{w[0]}", stacklevel=2)
    return Group(tuple(tuple(int(v) for v in row) for row in arr), tuple(inverse))


def validate_action(group: Group, monoid: Monoid, action_table) -> GammaStructure:
    arr = np.asarray(action_table, dtype=np.intp)
    m, n = group.size, monoid.size
    if arr.shape != (m, n):
        raise BadShape(f"action table must have shape ({m}, {n}), got {arr.shape}")
    if arr.min() < 0 or arr.max() >= n:
        raise BadShape("action table entry out of range")
    bad = np.flatnonzero(arr[0] != np.arange(n))
    if bad.size:
        a = int(bad[0])
        raise IdentityLaw(f"identity of the group moves {monoid.names[a]}", witness=(a,))
    for alpha in range(m):
        if len(set(arr[alpha].tolist())) != n:
            raise NotPermutation(f"group element {alpha} does not act bijectively", witness=(alpha,))
    g = np.array(group.table, dtype=np.intp)
    # composed[alpha, beta, a] = action[alpha][action[beta][a]]
    composed = arr[np.arange(m)[:, None, None], arr[None, :, :]]
    bad = np.argwhere(arr[g] != composed)
    if bad.size:
        w = tuple(int(v) for v in bad[0])
        raise CompositionLaw(f"action of {w[0]}*{w[1]} on {monoid.names[w[2]]} differs from composition", witness=w)
    t = monoid.array()
    # image of a sum vs. sum of images
    lhs = arr[:, t]
    rhs = t[arr[:, :, None], arr[:, None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        w = tuple(int(v) for v in bad[0])
        raise AdditivityLaw(
            f"element {w[0]} is not additive on ({monoid.names[w[1]]}, {monoid.names[w[2]]})", witness=w
        )
    return GammaStructure(monoid, group, tuple(tuple(int(v) for v in row) for row in arr))


def trivial_group() -> Group:
    return Group(((0,),), (0,))


def cyclic_group(k: int) -> Group:
    return Group(tuple(tuple((i + j) % k for j in range(k)) for i in range(k)), tuple((-i) % k for i in range(k)))


def trivial_action(monoid: Monoid) -> GammaStructure:
    return GammaStructure(monoid, trivial_group(), (tuple(monoid.elements),))


def orbit(gs: GammaStructure, a: int) -> Orbit:
    return Orbit(a, frozenset(row[a] for row in gs.action))


def orbits(gs: GammaStructure) -> list:
    seen = set()
    out = []
    for a in range(gs.size):
        if a not in seen:
            o = orbit(gs, a)
            seen |= o.elements
            out.append(o)
    return out


def automorphism_group(M: Monoid) -> list:
    """All additive permutations fixing 0, by backtracking.

    A partial map is extended element by element; every sum of two
    already-mapped elements whose result is also mapped is checked as soon
    as it becomes checkable.  Images are restricted to elements with the
    same cheap invariants.
    """
    n = M.size
    t = M.table
    sig = [_element_signature(M, a) for a in range(n)]
    perm = [-1] * n
    used = [False] * n
    perm[0] = 0
    used[0] = True
    found = []
    summands = [[] for _ in range(n)]
    for b in range(n):
        for c in range(b, n):
            summands[t[b][c]].append((b, c))

    def consistent(a):
        pa = perm[a]
        for b in range(n):
            pb = perm[b]
            if pb < 0:
                continue
            s = t[a][b]
            ps = perm[s]
            if ps >= 0 and t[pa][pb] != ps:
                return False
            # the image of a+b is forced; it must not clash with another preimage
            if ps < 0 and used[t[pa][pb]]:
                return False
        for b, c in summands[a]:
            pb, pc = perm[b], perm[c]
            if pb >= 0 and pc >= 0 and t[pb][pc] != pa:
                return False
        return True

    def extend(a):
        if a == n:
            found.append(tuple(perm))
            return
        for target in range(1, n):
            if used[target] or sig[target] != sig[a]:
                continue
            perm[a] = target
            used[target] = True
            if consistent(a):
                extend(a + 1)
            perm[a] = -1
            used[target] = False

    if n == 1:
        return [(0,)]
    extend(1)
    return sorted(found)


def _element_signature(M: Monoid, a: int) -> tuple:
    t = M.table
    mult = [a]
    x = a
    while True:
        x = t[x][a]
        if x in mult:
            mult_len = len(mult)
            back = mult_len - mult.index(x)
            break
        mult.append(x)
    return (
        t[a][a] == a,
        sum(1 for b in M.elements if t[a][b] == a),
        bin(M.down_masks[a]).count("1"),
        sum(1 for b in M.elements if M.down_masks[b] >> a & 1),
        mult_len,
        back,
    )


def compose(p, q) -> tuple:
    """``(p * q)(a) = p(q(a))``."""
    return tuple(p[q[a]] for a in range(len(q)))


def permutation_power(p, k: int) -> tuple:
    out = tuple(range(len(p)))
    for _ in range(k):
        out = compose(p, out)
    return out


def permutation_order(p) -> int:
    ident = tuple(range(len(p)))
    q = tuple(p)
    k = 1
    while q != ident:
        q = compose(p, q)
        k += 1
    return k


def cyclic_action(monoid: Monoid, generator: Sequence[int]) -> GammaStructure:
    """The cyclic group generated by one permutation, acting through its powers.

    This is how an action of the integers on a finite monoid is represented:
    it factors through the cyclic group of the generator's order.
    """
    gen = tuple(int(v) for v in generator)
    if sorted(gen) != list(range(monoid.size)):
        raise NotPermutation("generator is not a permutation of the elements", witness=gen)
    k = permutation_order(gen)
    rows = [permutation_power(gen, i) for i in range(k)]
    return validate_action(cyclic_group(k), monoid, rows)


def permutation_group_action(monoid: Monoid, perms, allow_nonabelian: bool = False) -> GammaStructure:
    """Action of a set of permutations closed under composition.

    The identity permutation becomes group element 0; the remaining
    elements keep their sorted order.
    """
    ident = tuple(range(monoid.size))
    elems = sorted(set(tuple(p) for p in perms) - {ident})
    elems = [ident] + elems
    index = {p: i for i, p in enumerate(elems)}
    try:
        table = [[index[compose(p, q)] for q in elems] for p in elems]
    except KeyError:
        raise BadShape("permutations are not closed under composition") from None
    group = validate_group(table, allow_nonabelian=allow_nonabelian)
    return validate_action(group, monoid, elems)


def subgroup_closure(generators, degree: int) -> frozenset:
    ident = tuple(range(degree))
    group = {ident}
    frontier = [ident]
    gens = [tuple(g) for g in generators]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in group:
                    group.add(q)
                    nxt.append(q)
        frontier = nxt
    return frozenset(group)


def all_subgroups(perms, degree: int) -> list:
    """Every subgroup of the finite permutation group ``perms``."""
    perms = [tuple(p) for p in perms]
    ident = tuple(range(degree))
    subgroups = {frozenset([ident])}
    frontier = list(subgroups)
    while frontier:
        nxt = []
        for h in frontier:
            for p in perms:
                if p in h:
                    continue
                k = subgroup_closure(list(h) + [p], degree)
                if k not in subgroups:
                    subgroups.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(subgroups, key=lambda h: (len(h), sorted(h)))


def is_abelian_perm_group(perms) -> bool:
    perms = list(perms)
    return all(compose(p, q) == compose(q, p) for p, q in product(perms, repeat=2))


def same_group(g1: Group, g2: Group) -> bool:
    return g1.table == g2.table


def require_same_group(gs1: GammaStructure, gs2: GammaStructure):
    if not same_group(gs1.group, gs2.group):
        raise GroupMismatch("the two structures are acted on by different group tables")


def restrict_action(gs: GammaStructure, elements: Sequence[int]) -> tuple:
    """Action rows for an action-closed subset relabelled to ``0..len-1``."""
    pos = {a: i for i, a in enumerate(elements)}
    return tuple(tuple(pos[row[a]] for a in elements) for row in gs.action)
