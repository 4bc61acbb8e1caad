"""Quotients by order-ideals, homomorphisms and the isomorphism theorems.

For a submonoid ``H`` two elements are related when their cosets
``x + H`` and ``y + H`` meet.  Quotienting by an order-ideal ``I`` gives a
monoid on the classes with an induced action, whose zero class is ``I``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .action import GammaStructure, Group, validate_action
from .errors import (
    HypothesisViolated,
    NotHomomorphism,
    NotRefinementMonoid,
    NotSubmonoid,
    NotSurjective,
    WellDefinednessFailure,
)
from .ideals import (
    IdealSet,
    all_order_ideals,
    as_ideal,
    bottom_ideal,
    ideal_intersect,
    is_ideal_mask,
    substructure,
    sum_ideal,
    to_mask,
)
from .iso import find_gamma_isomorphism
from .monoid import Monoid, is_refinement


@dataclass(frozen=True)
class Partition:
    blocks: tuple
    class_of: tuple
    raw_transitive: bool = True

    def __len__(self):
        return len(self.blocks)

    def same(self, other: "Partition") -> bool:
        return self.blocks == other.blocks


@dataclass(frozen=True)
class QuotientPresentation:
    base: GammaStructure
    ideal: IdealSet
    classes: Partition
    quotient: GammaStructure

    @property
    def projection(self) -> tuple:
        return self.classes.class_of

    def image(self, S) -> frozenset:
        """Classes met by the elements of ``S``."""
        return frozenset(self.classes.class_of[a] for a in S)

    def preimage(self, blocks) -> frozenset:
        return frozenset(a for b in blocks for a in self.classes.blocks[b])


@dataclass(frozen=True)
class HomMap:
    source: GammaStructure
    target: GammaStructure
    map: tuple

    def __call__(self, a):
        return self.map[a]


@lru_cache(maxsize=None)
def refinement_verdict(M: Monoid):
    return is_refinement(M)


def require_refinement(gs: GammaStructure):
    v = refinement_verdict(gs.monoid)
    if not v:
        names = gs.names
        a, b, c, d = v.witness
        raise NotRefinementMonoid(
            f"not a refinement monoid: {names[a]} + {names[b]} = {names[c]} + {names[d]} cannot be refined",
            witness=v.witness,
        )


def partition_from_labels(labels) -> Partition:
    """Blocks of equal labels, ordered by least member."""
    blocks = {}
    for a, lab in enumerate(labels):
        blocks.setdefault(lab, []).append(a)
    ordered = sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])
    class_of = [0] * len(labels)
    for i, blk in enumerate(ordered):
        for a in blk:
            class_of[a] = i
    return Partition(tuple(ordered), tuple(class_of))


def rho_partition(M: Monoid, H) -> Partition:
    """Classes of the coset-overlap relation ``(x + H) & (y + H) != {}``.

    The transitive closure is taken; ``raw_transitive`` records whether it
    was already transitive.
    """
    H = frozenset(H)
    t = M.table
    if 0 not in H or any(t[a][b] not in H for a in H for b in H):
        raise NotSubmonoid(f"{sorted(H)} is not a submonoid")
    n = M.size
    cosets = [to_mask(t[x][h] for h in H) for x in range(n)]
    related = [[bool(cosets[x] & cosets[y]) for y in range(n)] for x in range(n)]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(n):
        for y in range(x + 1, n):
            if related[x][y]:
                parent[find(y)] = find(x)
    labels = [find(x) for x in range(n)]
    raw_transitive = all(related[x][y] == (labels[x] == labels[y]) for x in range(n) for y in range(n))
    p = partition_from_labels(labels)
    return Partition(p.blocks, p.class_of, raw_transitive)


def quotient(gs: GammaStructure, ideal) -> QuotientPresentation:
    """Quotient structure ``gs / ideal`` with the induced action.

    Every sum and every group image is checked for independence of the
    chosen representatives; any dependence raises
    :class:`WellDefinednessFailure`.
    """
    if not isinstance(ideal, IdealSet):
        ideal = as_ideal(gs, ideal)
    elif not is_ideal_mask(gs, ideal.mask):
        ideal = as_ideal(gs, ideal.elements)
    part = rho_partition(gs.monoid, ideal.elements)
    if not part.raw_transitive:
        raise WellDefinednessFailure("coset-overlap relation of an order-ideal is not transitive")
    if set(part.blocks[0]) != set(ideal.elements):
        raise WellDefinednessFailure("the class of 0 differs from the ideal", witness=part.blocks[0])
    t = gs.table
    cls = part.class_of
    k = len(part.blocks)
    table = [[-1] * k for _ in range(k)]
    for x in range(gs.size):
        for y in range(gs.size):
            c = cls[t[x][y]]
            cur = table[cls[x]][cls[y]]
            if cur < 0:
                table[cls[x]][cls[y]] = c
            elif cur != c:
                raise WellDefinednessFailure("class sum depends on representatives", witness=(x, y))
    action = [[-1] * k for _ in gs.action]
    for alpha, row in enumerate(gs.action):
        for x in range(gs.size):
            c = cls[row[x]]
            cur = action[alpha][cls[x]]
            if cur < 0:
                action[alpha][cls[x]] = c
            elif cur != c:
                raise WellDefinednessFailure("induced action depends on representatives", witness=(alpha, x))
    if (k == 1) != (len(ideal) == gs.size):
        raise WellDefinednessFailure("quotient is trivial exactly when the ideal is everything")
    names = tuple(f"[{gs.names[b[0]]}]" for b in part.blocks)
    mon = Monoid(names, tuple(tuple(r) for r in table))
    qgs = validate_action(gs.group, mon, action)
    return QuotientPresentation(gs, ideal, part, qgs)


@lru_cache(maxsize=4096)
def factor(gs: GammaStructure, upper: IdealSet, lower: IdealSet) -> QuotientPresentation:
    """``upper / lower`` for ideals ``lower <= upper`` of ``gs``.

    ``upper`` is first turned into a structure of its own; the result's
    ``base`` is that substructure.
    """
    if not lower <= upper:
        raise HypothesisViolated("factor needs lower <= upper")
    sub, emb = substructure(gs, upper.elements)
    pos = {a: i for i, a in enumerate(emb)}
    return quotient(sub, IdealSet(tuple(pos[a] for a in lower.elements)))


def validate_hom(source: GammaStructure, target: GammaStructure, mapping) -> HomMap:
    f = tuple(int(v) for v in mapping)
    if len(f) != source.size:
        raise NotHomomorphism("map has the wrong length")
    if f[0] != 0:
        raise NotHomomorphism("0 is not sent to 0", witness=(0,))
    ts, tt = source.table, target.table
    for a in range(source.size):
        for b in range(source.size):
            if f[ts[a][b]] != tt[f[a]][f[b]]:
                raise NotHomomorphism("map is not additive", witness=(a, b))
    if source.group.table != target.group.table:
        raise NotHomomorphism("source and target are acted on by different groups")
    for alpha, (rs, rt) in enumerate(zip(source.action, target.action)):
        for a in range(source.size):
            if f[rs[a]] != rt[f[a]]:
                raise NotHomomorphism("map does not commute with the action", witness=(alpha, a))
    return HomMap(source, target, f)


def projection_hom(qp: QuotientPresentation) -> HomMap:
    return HomMap(qp.base, qp.quotient, qp.projection)


def identity_hom(gs: GammaStructure) -> HomMap:
    return HomMap(gs, gs, tuple(range(gs.size)))


def kernel(f: HomMap) -> frozenset:
    """Elements sent to the identity of the target."""
    return frozenset(a for a, fa in enumerate(f.map) if fa == 0)


@dataclass(frozen=True)
class FirstIsoReport:
    rho_f: Partition
    rho_kernel: Partition
    partitions_equal: bool
    phi: Optional[tuple]
    phi_is_isomorphism: bool

    @property
    def consistent(self) -> bool:
        return self.partitions_equal == self.phi_is_isomorphism


def first_iso_check(f: HomMap) -> FirstIsoReport:
    """Factor ``f`` through ``source / Ker f`` and test the induced map.

    The induced map ``phi([x]) = f(x)`` is an isomorphism exactly when the
    kernel classes coincide with the fibres of ``f``; both verdicts are
    computed independently and reported.
    """
    if set(f.map) != set(range(f.target.size)):
        raise NotSurjective("map is not onto its target")
    ker = kernel(f)
    rho_k = rho_partition(f.source.monoid, ker)
    rho_f = partition_from_labels(f.map)
    phi = [-1] * len(rho_k.blocks)
    well_defined = True
    for x, c in enumerate(rho_k.class_of):
        if phi[c] < 0:
            phi[c] = f.map[x]
        elif phi[c] != f.map[x]:
            well_defined = False
    phi_iso = False
    if well_defined:
        phi_iso = len(set(phi)) == len(phi) == f.target.size
    return FirstIsoReport(rho_f, rho_k, rho_f.same(rho_k), tuple(phi) if well_defined else None, phi_iso)


def third_iso_check(gs: GammaStructure, I: IdealSet, J: IdealSet) -> Optional[tuple]:
    """Isomorphism ``(T/I) / (J/I) -> T/J`` for ideals ``I <= J``, or ``None``."""
    q_i = quotient(gs, I)
    j_over_i = as_ideal(q_i.quotient, q_i.image(J))
    double = quotient(q_i.quotient, j_over_i)
    direct = quotient(gs, J)
    return find_gamma_isomorphism(double.quotient, direct.quotient)


def ideal_correspondence(gs: GammaStructure, I: IdealSet) -> bool:
    """Ideals of ``T/I`` are exactly the images of ideals containing ``I``."""
    qp = quotient(gs, I)
    upstairs = {qp.image(J) for J in all_order_ideals(gs) if I <= J}
    downstairs = {frozenset(K.elements) for K in all_order_ideals(qp.quotient)}
    if upstairs != downstairs:
        return False
    # the preimage of an image gives back the ideal
    return all(IdealSet.of(qp.preimage(qp.image(J))) == J for J in all_order_ideals(gs) if I <= J)


def lift_action(qp: QuotientPresentation, group: Group, quotient_action) -> Optional[GammaStructure]:
    """Pull an action on ``T/I`` back to ``T`` when the cosets are disjoint.

    Disjointness of ``x + I`` across distinct ``x`` makes the projection a
    bijection, which is the only case handled; otherwise ``None``.
    """
    T = qp.base
    t = T.table
    cosets = [frozenset(t[x][h] for h in qp.ideal) for x in range(T.size)]
    for x in range(T.size):
        for y in range(x + 1, T.size):
            if cosets[x] & cosets[y]:
                return None
    cls = qp.projection
    back = {c: x for x, c in enumerate(cls)}
    rows = [[back[quotient_action[alpha][cls[x]]] for x in range(T.size)] for alpha in range(group.size)]
    return validate_action(group, T.monoid, rows)


@dataclass(frozen=True)
class IsoCheck:
    left: QuotientPresentation
    right: QuotientPresentation
    bijection: Optional[tuple]

    @property
    def holds(self) -> bool:
        return self.bijection is not None

    def __bool__(self):
        return self.holds


def _check_ideals(gs, *ideals) -> list:
    return [I if isinstance(I, IdealSet) else as_ideal(gs, I) for I in ideals]


def check_lemma_sum_quotient(gs: GammaStructure, A, B) -> IsoCheck:
    """``(A + B) / A`` against ``B`` for ideals meeting only in the least ideal.

    ``B`` is taken modulo the least ideal, which is ``B`` itself when the
    monoid is conical.
    """
    require_refinement(gs)
    A, B = _check_ideals(gs, A, B)
    bottom = bottom_ideal(gs)
    if ideal_intersect(gs, A, B) != bottom:
        raise HypothesisViolated("A and B must intersect in the least ideal")
    S = sum_ideal(gs, A, B)
    left = factor(gs, S, A)
    right = factor(gs, B, bottom)
    return IsoCheck(left, right, find_gamma_isomorphism(left.quotient, right.quotient))


def check_zassenhaus(gs: GammaStructure, Q, L, N) -> IsoCheck:
    """``Q / (L + (Q & N))`` against ``(Q + N) / (L + N)`` for ``L <= Q``."""
    require_refinement(gs)
    Q, L, N = _check_ideals(gs, Q, L, N)
    if not L <= Q:
        raise HypothesisViolated("L must be contained in Q")
    left = factor(gs, Q, sum_ideal(gs, L, ideal_intersect(gs, Q, N)))
    right = factor(gs, sum_ideal(gs, Q, N), sum_ideal(gs, L, N))
    return IsoCheck(left, right, find_gamma_isomorphism(left.quotient, right.quotient))


def butterfly_sides(gs: GammaStructure, A, A2, B, B2):
    """The four ideals of the butterfly, for ``A2 <= A`` and ``B2 <= B``.

    Returns ``(upper_b, lower_b, upper_a, lower_a)`` with
    ``upper_b = (A & B) + B2``, ``lower_b = (A2 & B) + B2``,
    ``upper_a = (A & B) + A2``, ``lower_a = (A & B2) + A2``.
    """
    AB = ideal_intersect(gs, A, B)
    return (
        sum_ideal(gs, AB, B2),
        sum_ideal(gs, ideal_intersect(gs, A2, B), B2),
        sum_ideal(gs, AB, A2),
        sum_ideal(gs, ideal_intersect(gs, A, B2), A2),
    )


def check_butterfly(gs: GammaStructure, A, A2, B, B2) -> IsoCheck:
    """``((A&B)+B2) / ((A2&B)+B2)`` against ``((A&B)+A2) / ((A&B2)+A2)``."""
    require_refinement(gs)
    A, A2, B, B2 = _check_ideals(gs, A, A2, B, B2)
    if not (A2 <= A and B2 <= B):
        raise HypothesisViolated("need A2 <= A and B2 <= B")
    ub, lb, ua, la = butterfly_sides(gs, A, A2, B, B2)
    left = factor(gs, ub, lb)
    right = factor(gs, ua, la)
    return IsoCheck(left, right, find_gamma_isomorphism(left.quotient, right.quotient))


def block_names(qp: QuotientPresentation) -> list:
    return [[qp.base.names[a] for a in blk] for blk in qp.classes.blocks]

