"""Order-ideals of a monoid with group action, and their lattice.

A subset ``I`` is an order-ideal when ``^alpha a + ^beta b`` lies in ``I``
exactly when both ``a`` and ``b`` do.  Equivalently ``I`` is a submonoid
that is closed under the action and downward closed for the algebraic
pre-order (``a <= b`` iff ``b = a + c`` for some ``c``).  Both forms are
implemented and cross-checked by :func:`is_order_ideal`.

Subsets are handled internally as integer bitmasks.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional

from .action import GammaStructure, restrict_action
from .errors import NotAnIdeal, SizeLimit
from .monoid import Monoid, Verdict, is_refinement

EXHAUSTIVE_LIMIT = 20
AUTO_CROSS_CHECK = 12


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for a in elements:
        m |= 1 << a
    return m


def from_mask(mask: int) -> tuple:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class IdealSet:
    """A verified order-ideal, stored as a sorted tuple of element indices."""

    elements: tuple
    submonoid: bool = field(default=True, compare=False)
    hereditary: bool = field(default=True, compare=False)
    action_closed: bool = field(default=True, compare=False)

    @classmethod
    def of(cls, elements) -> "IdealSet":
        return cls(tuple(sorted(set(elements))))

    @cached_property
    def mask(self) -> int:
        return to_mask(self.elements)

    @cached_property
    def members(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __le__(self, other):
        return self.mask & ~other.mask == 0

    def __lt__(self, other):
        return self.mask != other.mask and self <= other

    def sort_key(self):
        return (len(self.elements), self.elements)

    def names(self, gs) -> list:
        return [gs.names[a] for a in self.elements]


def _sum_closed(gs: GammaStructure, mask: int) -> bool:
    t = gs.table
    elems = from_mask(mask)
    for i, a in enumerate(elems):
        row = t[a]
        for b in elems[i:]:
            if not mask >> row[b] & 1:
                return False
    return True


def is_ideal_mask(gs: GammaStructure, mask: int) -> bool:
    """Fast membership test for the submonoid/closed/hereditary form."""
    if not mask & 1:
        return False
    down = gs.monoid.down_masks
    orb = gs.orbit_masks
    m = mask
    i = 0
    while m:
        if m & 1:
            if (down[i] | orb[i]) & ~mask:
                return False
        m >>= 1
        i += 1
    return _sum_closed(gs, mask)


def _biconditional_violation(gs: GammaStructure, S: frozenset) -> Optional[tuple]:
    t = gs.table
    act = gs.action
    n = gs.size
    m = gs.group.size
    for alpha in range(m):
        ra = act[alpha]
        for beta in range(m):
            rb = act[beta]
            for a in range(n):
                row = t[ra[a]]
                a_in = a in S
                for b in range(n):
                    lhs = row[rb[b]] in S
                    if lhs != (a_in and b in S):
                        return ("forward" if not lhs else "backward", alpha, beta, a, b)
    return None


def _submonoid_violation(gs: GammaStructure, S: frozenset) -> Optional[tuple]:
    if 0 not in S:
        return ("missing-zero",)
    t = gs.table
    for a in sorted(S):
        for b in sorted(S):
            if t[a][b] not in S:
                return ("not-closed", a, b)
    for alpha, row in enumerate(gs.action):
        for a in sorted(S):
            if row[a] not in S:
                return ("not-action-closed", alpha, a)
    down = gs.monoid.down_masks
    for b in sorted(S):
        for a in from_mask(down[b]):
            if a not in S:
                return ("not-hereditary", a, b)
    return None


def is_order_ideal(gs: GammaStructure, S) -> Verdict:
    """Decide whether ``S`` is an order-ideal; witness names the failure.

    The biconditional definition is evaluated together with the
    submonoid/action-closed/hereditary form and the two verdicts must
    agree.  Both require ``0 in S``, which excludes the empty set.
    """
    S = frozenset(S)
    bi = _biconditional_violation(gs, S) if 0 in S else ("missing-zero",)
    sub = _submonoid_violation(gs, S)
    if (bi is None) != (sub is None):
        raise AssertionError(f"ideal characterisations disagree on {sorted(S)}: {bi} vs {sub}")
    if bi is None:
        return Verdict(True)
    return Verdict(False, bi)


def describe_violation(gs: GammaStructure, witness) -> str:
    names = gs.names
    kind = witness[0]
    if kind == "missing-zero":
        return "0 is not in the set"
    if kind in ("forward", "backward"):
        _, alpha, beta, a, b = witness
        x = gs.action[alpha][a]
        y = gs.action[beta][b]
        s = gs.table[x][y]
        pre = "" if gs.group.is_trivial else f"(alpha={alpha}, beta={beta}) "
        if kind == "backward":
            return f"{pre}{names[x]} + {names[y]} = {names[s]} is in the set but {names[a]} or {names[b]} is not"
        return f"{pre}{names[a]}, {names[b]} are in the set but {names[x]} + {names[y]} = {names[s]} is not"
    if kind == "not-closed":
        return f"{names[witness[1]]} + {names[witness[2]]} is not in the set"
    if kind == "not-action-closed":
        return f"group element {witness[1]} moves {names[witness[2]]} out of the set"
    if kind == "not-hereditary":
        return f"{names[witness[1]]} <= {names[witness[2]]} but only the latter is in the set"
    return repr(witness)


def is_normal(M: Monoid, S) -> Verdict:
    """``x, x + y in S`` must force ``y in S``."""
    S = frozenset(S)
    t = M.table
    for x in sorted(S):
        for y in M.elements:
            if t[x][y] in S and y not in S:
                return Verdict(False, (x, y))
    return Verdict(True)


def generated_ideal(gs: GammaStructure, seed: Iterable[int]) -> IdealSet:
    """Smallest order-ideal containing ``seed`` (least fixed point)."""
    t = gs.table
    down = gs.monoid.down_masks
    orb = gs.orbit_masks
    mask = 1 | to_mask(seed)
    while True:
        new = mask
        for a in from_mask(mask):
            new |= down[a] | orb[a]
        elems = from_mask(new)
        for i, a in enumerate(elems):
            row = t[a]
            for b in elems[i:]:
                new |= 1 << row[b]
        if new == mask:
            return IdealSet(from_mask(mask))
        mask = new


def orbit_sum(gs: GammaStructure, a: int) -> int:
    """Sum of ``^alpha a`` over every group element."""
    return gs.monoid.sum(row[a] for row in gs.action)


def principal_ideal_formula(gs: GammaStructure, a: int, multiple: bool = True) -> frozenset:
    """Elements below the orbit sum of ``a``.

    With ``multiple=False`` this is ``{x : x <= s}`` for ``s`` the orbit
    sum, which is only closed under addition when ``s + s <= s``.  The
    default compares against ``n * s`` instead; every multiple ``k * s``
    with ``k <= n`` lies below it, so the set is the generated ideal.
    """
    M = gs.monoid
    s = orbit_sum(gs, a)
    if multiple:
        s = M.sum([s] * M.size)
    return frozenset(from_mask(M.down_masks[s]))


def bottom_ideal(gs: GammaStructure) -> IdealSet:
    """The least order-ideal: ``{0}`` when the monoid is conical, else the units."""
    return generated_ideal(gs, ())


def full_ideal(gs: GammaStructure) -> IdealSet:
    return IdealSet(tuple(range(gs.size)))


@dataclass
class IdealLattice:
    ideals: list
    covers: list

    @cached_property
    def index(self) -> dict:
        return {I: i for i, I in enumerate(self.ideals)}

    @property
    def bottom(self) -> IdealSet:
        return self.ideals[0]

    @property
    def top(self) -> IdealSet:
        return self.ideals[-1]

    def __len__(self):
        return len(self.ideals)

    def __iter__(self):
        return iter(self.ideals)

    def __contains__(self, ideal):
        return ideal in self.index

    def upper_covers(self, ideal) -> list:
        i = self.index[ideal]
        return [self.ideals[j] for a, j in self.covers if a == i]

    def lower_covers(self, ideal) -> list:
        j = self.index[ideal]
        return [self.ideals[i] for i, b in self.covers if b == j]

    def is_cover(self, lower, upper) -> bool:
        return (self.index[lower], self.index[upper]) in self._cover_set

    @cached_property
    def _cover_set(self) -> frozenset:
        return frozenset(self.covers)

    def between(self, lower, upper) -> list:
        return [I for I in self.ideals if lower <= I <= upper]

    def height(self) -> int:
        """Number of steps in a longest strict chain from bottom to top."""
        best = {0: 0}
        for j in range(1, len(self.ideals)):
            best[j] = max((best[i] + 1 for i, b in self.covers if b == j), default=0)
        return best[len(self.ideals) - 1]


def _closure_ideals(gs: GammaStructure) -> set:
    principal = {generated_ideal(gs, [a]).mask for a in range(gs.size)}
    found = set(principal)
    frontier = set(principal)
    while frontier:
        nxt = set()
        for x in frontier:
            for y in list(found):
                for z in (x & y, generated_ideal(gs, from_mask(x | y)).mask):
                    if z not in found and is_ideal_mask(gs, z):
                        nxt.add(z)
        found |= nxt
        frontier = nxt
    return found


def subset_filter_ideals(gs: GammaStructure, limit: int = EXHAUSTIVE_LIMIT) -> set:
    """All order-ideals by testing every subset that contains 0."""
    n = gs.size
    if n > limit:
        raise SizeLimit(f"exhaustive subset filter refused for n={n} > {limit}")
    return {mask for mask in range(1, 1 << n, 2) if is_ideal_mask(gs, mask)}


def all_order_ideals(gs: GammaStructure, cross_check: Optional[bool] = None) -> IdealLattice:
    """The complete lattice of order-ideals with its cover relation.

    Ideals are obtained by closing the principal ideals under meet and
    join.  ``cross_check`` (default: on for ``n <= 12``) compares the result
    with the exhaustive subset filter, which refuses ``n > 20``.
    """
    masks = _closure_ideals(gs)
    if cross_check is None:
        cross_check = gs.size <= AUTO_CROSS_CHECK
    if cross_check:
        brute = subset_filter_ideals(gs)
        if brute != masks:
            raise AssertionError("principal-closure lattice differs from subset filter")
    ideals = sorted((IdealSet(from_mask(m)) for m in masks), key=IdealSet.sort_key)
    covers = []
    for j, upper in enumerate(ideals):
        below = [i for i in range(j) if ideals[i] < upper]
        for i in below:
            if not any(ideals[i] < ideals[k] for k in below if k != i):
                covers.append((i, j))
    covers.sort()
    return IdealLattice(ideals, covers)


def elementwise_sum(M: Monoid, A, B) -> frozenset:
    t = M.table
    return frozenset(t[a][b] for a in A for b in B)


def ideal_sum(gs: GammaStructure, A, B, refinement: Optional[bool] = None):
    """``A + B`` as a set, with the order-ideal verdict.

    In a refinement monoid the sum of two ideals is always an ideal; that
    is asserted when ``refinement`` is true (computed if not given).
    """
    s = elementwise_sum(gs.monoid, A, B)
    verdict = is_order_ideal(gs, s)
    if refinement is None:
        refinement = bool(is_refinement(gs.monoid))
    if refinement and not verdict:
        raise AssertionError(f"sum of ideals in a refinement monoid is not an ideal: {verdict.witness}")
    return s, verdict


def sum_ideal(gs: GammaStructure, A, B) -> IdealSet:
    """``A + B`` as an :class:`IdealSet`; raises :class:`NotAnIdeal` otherwise."""
    s = elementwise_sum(gs.monoid, A, B)
    if not is_ideal_mask(gs, to_mask(s)):
        raise NotAnIdeal(f"A + B = {sorted(s)} is not an order-ideal", witness=tuple(sorted(s)))
    return IdealSet.of(s)


def ideal_intersect(gs: GammaStructure, A, B) -> IdealSet:
    s = frozenset(A) & frozenset(B)
    if not is_ideal_mask(gs, to_mask(s)):
        raise AssertionError(f"intersection of ideals is not an ideal: {sorted(s)}")
    return IdealSet.of(s)


def ideal_join(gs: GammaStructure, A, B) -> IdealSet:
    return generated_ideal(gs, set(A) | set(B))


def atoms(lattice: IdealLattice) -> list:
    """Ideals covering the least ideal."""
    if len(lattice) == 1:
        return []
    return lattice.upper_covers(lattice.bottom)


def is_simple(gs: GammaStructure, lattice: Optional[IdealLattice] = None) -> bool:
    """Only the least ideal and the whole monoid are ideals.

    A one-element monoid counts as simple.
    """
    if lattice is None:
        lattice = all_order_ideals(gs)
    return len(lattice) <= 2


def as_ideal(gs: GammaStructure, S) -> IdealSet:
    """Verify ``S`` and wrap it; raises :class:`NotAnIdeal` with the witness."""
    v = is_order_ideal(gs, S)
    if not v:
        raise NotAnIdeal(f"{sorted(S)} is not an order-ideal: {describe_violation(gs, v.witness)}", witness=v.witness)
    return IdealSet.of(S)


def substructure(gs: GammaStructure, S) -> tuple:
    """Restrict to an action-closed submonoid, relabelling its elements.

    Returns ``(sub, embedding)`` where ``embedding[i]`` is the original index
    of the ``i``-th element of ``sub``; element order is preserved, so 0
    stays first.
    """
    elems = tuple(sorted(set(S)))
    if not elems or elems[0] != 0:
        raise NotAnIdeal("substructure must contain 0")
    pos = {a: i for i, a in enumerate(elems)}
    t = gs.table
    try:
        table = tuple(tuple(pos[t[a][b]] for b in elems) for a in elems)
        action = restrict_action(gs, elems)
    except KeyError:
        raise NotAnIdeal(f"{list(elems)} is not closed under addition and the action") from None
    names = tuple(gs.names[a] for a in elems)
    return GammaStructure(Monoid(names, table), gs.group, action), elems


def is_ideal_relative(gs: GammaStructure, J, K) -> bool:
    """Is ``K`` an order-ideal of the structure ``J`` (itself an ideal)?"""
    sub, emb = substructure(gs, J)
    pos = {a: i for i, a in enumerate(emb)}
    if not set(K) <= set(emb):
        return False
    return bool(is_order_ideal(sub, [pos[a] for a in K]))
