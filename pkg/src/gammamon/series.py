"""Series of order-ideals, composition series and their factors.

Series are stored ascending, from the least ideal (``{0}`` for a conical
monoid) up to the whole monoid.  Factors ``I_{k+1} / I_k`` are built with
:func:`gammamon.quotients.factor` and compared by canonical form, falling
back to explicit isomorphism search above the canonical-form size cap.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .action import GammaStructure
from .errors import NotAtom, NotCompositionSeries, SizeLimit
from .ideals import (
    IdealLattice,
    IdealSet,
    all_order_ideals,
    bottom_ideal,
    full_ideal,
    ideal_intersect,
    is_order_ideal,
    substructure,
    sum_ideal,
)
from .iso import canonical_form, find_gamma_isomorphism
from .monoid import Verdict, incomparable, is_leq
from .quotients import factor, quotient, require_refinement

CYCLIC = "cyclic"
COMPARABLE = "comparable"
NONCOMPARABLE = "noncomparable"
UNCLASSIFIED = "unclassified"
MIXED = "mixed"


@dataclass(frozen=True)
class Series:
    chain: tuple

    @classmethod
    def of(cls, ideals) -> "Series":
        return cls(tuple(I if isinstance(I, IdealSet) else IdealSet.of(I) for I in ideals))

    @property
    def length(self) -> int:
        """Number of proper inclusions."""
        return sum(1 for a, b in zip(self.chain, self.chain[1:]) if a != b)

    def collapsed(self) -> "Series":
        out = [self.chain[0]]
        for I in self.chain[1:]:
            if I != out[-1]:
                out.append(I)
        return Series(tuple(out))

    def steps(self) -> list:
        return list(zip(self.chain, self.chain[1:]))

    def __len__(self):
        return len(self.chain)

    def __iter__(self):
        return iter(self.chain)


@dataclass(frozen=True)
class FactorDescriptor:
    lower: IdealSet
    upper: IdealSet
    size: int
    key: Optional[tuple]
    tag: str


@lru_cache(maxsize=None)
def lattice_of(gs: GammaStructure) -> IdealLattice:
    return all_order_ideals(gs)


@lru_cache(maxsize=None)
def simple_cached(gs: GammaStructure) -> bool:
    return len(lattice_of(gs)) <= 2


def is_gamma_series(gs: GammaStructure, chain) -> Verdict:
    chain = [frozenset(I) for I in chain]
    if not chain:
        return Verdict(False, ("empty",))
    if chain[0] != frozenset(bottom_ideal(gs).elements):
        return Verdict(False, ("bad-bottom",))
    if chain[-1] != frozenset(range(gs.size)):
        return Verdict(False, ("bad-top",))
    for i, I in enumerate(chain):
        v = is_order_ideal(gs, I)
        if not v:
            return Verdict(False, ("not-ideal", i, v.witness))
    for i in range(len(chain) - 1):
        if not chain[i] <= chain[i + 1]:
            return Verdict(False, ("not-included", i))
    return Verdict(True)


def _as_series(gs, s) -> Series:
    return s if isinstance(s, Series) else Series.of(s)


def is_composition_series(gs: GammaStructure, series) -> bool:
    series = _as_series(gs, series)
    if not is_gamma_series(gs, series.chain):
        return False
    for lo, hi in series.steps():
        if lo == hi or not simple_cached(factor(gs, hi, lo).quotient):
            return False
    return True


def _maximal_chains(lattice: IdealLattice) -> list:
    up = {}
    for i, j in lattice.covers:
        up.setdefault(i, []).append(j)
    top = len(lattice) - 1
    out = []

    def walk(path):
        last = path[-1]
        if last == top:
            out.append(Series(tuple(lattice.ideals[k] for k in path)))
            return
        for j in up.get(last, []):
            walk(path + [j])

    walk([0])
    return out


def check_cover_simple(gs: GammaStructure, lattice: Optional[IdealLattice] = None) -> list:
    """Pairs ``I < J`` where "``J/I`` simple" and "``J`` covers ``I``" disagree."""
    lattice = lattice or lattice_of(gs)
    bad = []
    for j, J in enumerate(lattice.ideals):
        for i in range(j):
            I = lattice.ideals[i]
            if I < J:
                simple = simple_cached(factor(gs, J, I).quotient)
                if simple != lattice.is_cover(I, J):
                    bad.append((I, J))
    return bad


def all_composition_series(gs: GammaStructure) -> list:
    """Every composition series: the maximal chains of the ideal lattice.

    Raises ``AssertionError`` if a cover of the lattice has a non-simple
    quotient or a non-cover inclusion has a simple one.
    """
    lattice = lattice_of(gs)
    bad = check_cover_simple(gs, lattice)
    if bad:
        raise AssertionError(f"covers and simple quotients disagree on {bad[0]}")
    if len(lattice) == 1:
        return [Series((lattice.bottom,))]
    return _maximal_chains(lattice)


def one_composition_series(gs: GammaStructure) -> Series:
    """Built top-down by repeatedly taking a maximal proper ideal.

    Ties are broken by the lexicographically smallest element tuple.
    """
    lattice = lattice_of(gs)
    current = lattice.top
    chain = [current]
    while current != lattice.bottom:
        proper = [I for I in lattice.ideals if I < current]
        maximal = [I for I in proper if not any(I < K for K in proper)]
        current = min(maximal, key=lambda I: I.elements)
        chain.append(current)
    return Series(tuple(reversed(chain)))


def classify_simple(gs: GammaStructure) -> str:
    """Type tag of a simple structure.

    Quantifiers over the group range over non-identity elements only, and
    elements equivalent to 0 (the units) are skipped.  Cyclic is reported
    before comparable when both hold.
    """
    M = gs.monoid
    xs = [x for x in M.elements if x not in M.units]
    rows = gs.action[1:]
    if all(any(r[x] == x for r in rows) for x in xs):
        return CYCLIC
    if all(any(is_leq(M, x, r[x]) and not is_leq(M, r[x], x) for r in rows) for x in xs):
        return COMPARABLE
    if all(incomparable(M, r[x], x) for r in rows for x in xs):
        return NONCOMPARABLE
    return UNCLASSIFIED


def _key_or_none(q: GammaStructure):
    try:
        return canonical_form(q)
    except SizeLimit:
        return None


def factor_descriptors(gs: GammaStructure, series) -> list:
    series = _as_series(gs, series).collapsed()
    out = []
    for lo, hi in series.steps():
        q = factor(gs, hi, lo).quotient
        out.append(FactorDescriptor(lo, hi, q.size, _key_or_none(q), classify_simple(q)))
    return out


def _pair_factors(gs, f1: list, f2: list) -> Optional[list]:
    """Pair equal factors; canonical keys when present, else explicit search."""
    remaining = list(range(len(f2)))
    pairing = []
    for i, d in enumerate(f1):
        match = None
        for j in remaining:
            e = f2[j]
            if d.size != e.size:
                continue
            if d.key is not None and e.key is not None:
                if d.key == e.key:
                    match = j
                    break
                continue
            q1 = factor(gs, d.upper, d.lower).quotient
            q2 = factor(gs, e.upper, e.lower).quotient
            if find_gamma_isomorphism(q1, q2, limit=max(q1.size, 10)) is not None:
                match = j
                break
        if match is None:
            return None
        remaining.remove(match)
        pairing.append((i, match))
    return pairing


def series_equivalent(gs: GammaStructure, s1, s2):
    """``(equivalent, pairing)`` for two composition series.

    ``pairing`` lists ``(i, j)`` with the ``i``-th factor of ``s1``
    isomorphic to the ``j``-th factor of ``s2``.
    """
    s1, s2 = _as_series(gs, s1), _as_series(gs, s2)
    for s in (s1, s2):
        if not is_composition_series(gs, s):
            raise NotCompositionSeries("both arguments must be composition series")
    if s1.length != s2.length:
        return False, None
    pairing = _pair_factors(gs, factor_descriptors(gs, s1), factor_descriptors(gs, s2))
    return pairing is not None, pairing


def jordan_holder_factors(gs: GammaStructure, check_all: Optional[bool] = None) -> list:
    """Factor descriptors of :func:`one_composition_series`.

    For refinement monoids (or when ``check_all``) the factor multiset is
    asserted to be the same for every composition series.
    """
    from .quotients import refinement_verdict

    factors = factor_descriptors(gs, one_composition_series(gs))
    if check_all is None:
        check_all = bool(refinement_verdict(gs.monoid))
    if check_all:
        base = one_composition_series(gs)
        for s in all_composition_series(gs):
            ok, _ = series_equivalent(gs, base, s)
            if not ok:
                raise AssertionError("composition series with different factors")
    return factors


def factor_multiset(factors) -> Counter:
    return Counter((d.size, d.key, d.tag) for d in factors)


def classify_series(gs: GammaStructure, series):
    """Common tag of all factors, or ``("mixed", {tag: count})``."""
    tags = [d.tag for d in factor_descriptors(gs, series)]
    if not tags:
        return UNCLASSIFIED
    if len(set(tags)) == 1:
        return tags[0]
    return (MIXED, dict(Counter(tags)))


@dataclass(frozen=True)
class SchreierResult:
    grid_g: tuple
    grid_h: tuple
    refined1: Series
    refined2: Series
    pairing: tuple
    collapsed: tuple = field(default=(0, 0))


def schreier_refinement(gs: GammaStructure, s1, s2) -> SchreierResult:
    """Refine two series so that their factors pair up isomorphically.

    With the first series read downward as ``G_0 = T >= ... >= G_n`` and the
    second as ``H_0 >= ... >= H_m``, the terms are
    ``G(i, j) = G_{i+1} + (G_i & H_j)`` and ``H(i, j) = H_{j+1} + (G_i & H_j)``
    (``G_{n+1} = H_{m+1}`` = least ideal).  Factor ``G(i,j)/G(i,j+1)`` is
    paired with ``H(i,j)/H(i+1,j)`` and each pair is checked by an explicit
    isomorphism.  Requires a refinement monoid.
    """
    require_refinement(gs)
    s1, s2 = _as_series(gs, s1), _as_series(gs, s2)
    for s in (s1, s2):
        v = is_gamma_series(gs, s.chain)
        if not v:
            raise NotCompositionSeries(f"not a series: {v.witness}")
    bottom = bottom_ideal(gs)
    G = list(reversed(s1.chain)) + [bottom]
    H = list(reversed(s2.chain)) + [bottom]
    n, m = len(G) - 2, len(H) - 2
    meet = [[ideal_intersect(gs, G[i], H[j]) for j in range(m + 2)] for i in range(n + 2)]
    grid_g = tuple(tuple(sum_ideal(gs, G[i + 1], meet[i][j]) for j in range(m + 1)) for i in range(n + 1))
    grid_h = tuple(tuple(sum_ideal(gs, H[j + 1], meet[i][j]) for j in range(m + 1)) for i in range(n + 1))

    g_steps = [(i, j) for i in range(n) for j in range(m)]
    h_steps = [(i, j) for j in range(m) for i in range(n)]
    g_pairs = {(i, j): (grid_g[i][j + 1], grid_g[i][j]) for i, j in g_steps}
    h_pairs = {(i, j): (grid_h[i + 1][j], grid_h[i][j]) for i, j in h_steps}

    g_nontrivial = [s for s in g_steps if g_pairs[s][0] != g_pairs[s][1]]
    h_nontrivial = [s for s in h_steps if h_pairs[s][0] != h_pairs[s][1]]
    # ascending factor positions
    g_pos = {s: len(g_nontrivial) - 1 - k for k, s in enumerate(g_nontrivial)}
    h_pos = {s: len(h_nontrivial) - 1 - k for k, s in enumerate(h_nontrivial)}

    pairing = []
    for s in g_steps:
        lo1, hi1 = g_pairs[s]
        lo2, hi2 = h_pairs[s]
        q1 = factor(gs, hi1, lo1).quotient
        q2 = factor(gs, hi2, lo2).quotient
        iso = find_gamma_isomorphism(q1, q2, limit=max(q1.size, 10))
        if iso is None:
            raise AssertionError(f"paired Schreier factors at {s} are not isomorphic")
        if lo1 != hi1:
            pairing.append((g_pos[s], h_pos[s], iso))

    def refined(steps, pairs):
        chain = [bottom]
        for s in reversed(steps):
            lo, hi = pairs[s]
            if chain[-1] != hi:
                chain.append(hi)
        if chain[-1] != full_ideal(gs):
            chain.append(full_ideal(gs))
        return Series(tuple(chain))

    r1 = refined(g_nontrivial, g_pairs)
    r2 = refined(h_nontrivial, h_pairs)
    for orig, ref in ((s1, r1), (s2, r2)):
        if not set(orig.chain) <= set(ref.chain):
            raise AssertionError("refinement lost a term of the original series")
    pairing.sort()
    return SchreierResult(
        grid_g, grid_h, r1, r2, tuple(pairing),
        (len(g_steps) - len(g_nontrivial), len(h_steps) - len(h_nontrivial)),
    )


@dataclass(frozen=True)
class ChainReport:
    height: int
    noetherian: bool
    artinian: bool
    composition_length: int
    composition_lengths: tuple
    longest_series: int

    @property
    def bound_holds(self) -> bool:
        return self.longest_series <= min(self.composition_lengths)

    @property
    def length_matches_height(self) -> bool:
        return self.composition_length == self.height


def chain_condition_report(gs: GammaStructure) -> ChainReport:
    """Chain conditions measured on the finite ideal lattice.

    Every finite structure satisfies both chain conditions; the report
    records the lattice height (longest strict chain, hence longest
    series), the length of the greedy composition series and of every
    composition series.
    """
    lattice = lattice_of(gs)
    height = lattice.height()
    lengths = tuple(sorted({s.length for s in all_composition_series(gs)}))
    return ChainReport(
        height=height,
        noetherian=True,
        artinian=True,
        composition_length=one_composition_series(gs).length,
        composition_lengths=lengths,
        longest_series=height,
    )


@dataclass(frozen=True)
class SplitReport:
    ideal: IdealSet
    spliced: Series
    spliced_ok: bool
    restrictions: tuple
    restrictions_ok: bool

    @property
    def ok(self) -> bool:
        return self.spliced_ok and self.restrictions_ok


def split_and_reassemble(gs: GammaStructure, I) -> SplitReport:
    """Series of ``I`` and of ``T/I`` spliced into one of ``T``, and back.

    The series of ``T/I`` is pulled back along the projection.  Conversely
    every composition series of ``T`` is intersected with ``I`` (repeated
    terms dropped) and checked to be a composition series of ``I``.
    """
    I = I if isinstance(I, IdealSet) else IdealSet.of(I)
    sub, emb = substructure(gs, I.elements)
    lower = [IdealSet(tuple(emb[a] for a in K.elements)) for K in one_composition_series(sub).chain]
    qp = quotient(gs, I)
    upper = [IdealSet.of(qp.preimage(K.elements)) for K in one_composition_series(qp.quotient).chain]
    spliced = Series(tuple(lower) + tuple(upper[1:]))
    spliced_ok = is_composition_series(gs, spliced)

    pos = {a: i for i, a in enumerate(emb)}
    restrictions = []
    ok = True
    for s in all_composition_series(gs):
        r = Series(tuple(ideal_intersect(gs, I, J) for J in s.chain)).collapsed()
        local = Series(tuple(IdealSet(tuple(pos[a] for a in K.elements)) for K in r.chain))
        restrictions.append(r)
        ok = ok and is_composition_series(sub, local)
    return SplitReport(I, spliced, spliced_ok, tuple(restrictions), ok)


@dataclass(frozen=True)
class MinimalIdealSeries:
    series: Series
    isomorphisms: tuple
    tags: tuple

    @property
    def tag(self):
        if len(set(self.tags)) == 1:
            return self.tags[0]
        return (MIXED, dict(Counter(self.tags)))


def minimal_ideal_series(gs: GammaStructure, atom_list) -> MinimalIdealSeries:
    """Partial sums of distinct atoms as a composition series of their sum.

    Each factor is matched by an explicit isomorphism with the
    corresponding atom taken modulo the least ideal (the atom itself when
    the monoid is conical).
    """
    require_refinement(gs)
    lattice = lattice_of(gs)
    atom_set = set(lattice.upper_covers(lattice.bottom))
    atom_list = [A if isinstance(A, IdealSet) else IdealSet.of(A) for A in atom_list]
    for i, A in enumerate(atom_list):
        if A not in atom_set:
            raise NotAtom(f"ideal #{i} is not a minimal nonzero ideal", witness=(i,))
    if len(set(atom_list)) != len(atom_list):
        raise NotAtom("atoms must be distinct")
    bottom = lattice.bottom
    chain = [bottom]
    for A in atom_list:
        chain.append(sum_ideal(gs, chain[-1], A))
    series = Series(tuple(chain))
    top = chain[-1]
    sub, emb = substructure(gs, top.elements)
    pos = {a: i for i, a in enumerate(emb)}
    local = Series(tuple(IdealSet(tuple(pos[a] for a in K.elements)) for K in chain))
    if series.length != len(atom_list) or not is_composition_series(sub, local):
        raise AssertionError("partial sums of atoms do not form a composition series")
    isos = []
    tags = []
    for k, A in enumerate(atom_list):
        q = factor(gs, chain[k + 1], chain[k]).quotient
        atom_q = factor(gs, A, bottom).quotient
        iso = find_gamma_isomorphism(q, atom_q, limit=max(q.size, 10))
        if iso is None:
            raise AssertionError(f"factor {k} is not isomorphic to its atom")
        isos.append(iso)
        tags.append(classify_simple(atom_q))
    return MinimalIdealSeries(series, tuple(isos), tuple(tags))


def atoms_of(gs: GammaStructure) -> list:
    lattice = lattice_of(gs)
    if len(lattice) == 1:
        return []
    return lattice.upper_covers(lattice.bottom)
