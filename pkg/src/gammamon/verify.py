"""Exhaustive property sweeps over a list of corpus instances.

Each sweep returns a :class:`SuiteResult` listing every failing case with
enough context to reproduce it.  Nothing here decides pass or fail on its
own; callers compare ``failures`` against an empty list.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .errors import GammaMonoidError, WellDefinednessFailure
from .ideals import (
    _biconditional_violation,
    _submonoid_violation,
    ideal_intersect,
    ideal_sum,
    is_normal,
)
from .iso import canonical_form, find_gamma_isomorphism
from .quotients import (
    check_butterfly,
    check_lemma_sum_quotient,
    check_zassenhaus,
    factor,
    first_iso_check,
    ideal_correspondence,
    projection_hom,
    quotient,
    third_iso_check,
)
from .series import (
    all_composition_series,
    atoms_of,
    is_composition_series,
    lattice_of,
    minimal_ideal_series,
    one_composition_series,
    schreier_refinement,
    series_equivalent,
    simple_cached,
    split_and_reassemble,
)


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, *info):
        self.failures.append(info)

    def summary(self) -> str:
        state = "PASS" if self.ok else "FAIL"
        return f"{state} {self.name}: {self.checked} checks, {len(self.failures)} failures, {self.seconds:.2f}s"


def _timed(fn):
    def run(*args, **kwargs):
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _refining(instances):
    return [inst for inst in instances if inst.flags["refinement"]]


@_timed
def jordan_holder_suite(instances) -> SuiteResult:
    """All composition series pairwise equivalent; Schreier pairings verified."""
    res = SuiteResult("jordan-holder")
    for inst in _refining(instances):
        gs = inst.gs
        series = all_composition_series(gs)
        for s1, s2 in product(series, repeat=2):
            res.checked += 1
            ok, _ = series_equivalent(gs, s1, s2)
            if not ok:
                res.fail(inst.label, "not-equivalent", s1, s2)
            try:
                sr = schreier_refinement(gs, s1, s2)
            except AssertionError as e:
                res.fail(inst.label, "schreier", s1, s2, str(e))
                continue
            for i, j, iso in sr.pairing:
                g = factor(gs, sr.refined1.chain[i + 1], sr.refined1.chain[i]).quotient
                h = factor(gs, sr.refined2.chain[j + 1], sr.refined2.chain[j]).quotient
                if iso is None or find_gamma_isomorphism(g, h) is None:
                    res.fail(inst.label, "schreier-pair", s1, s2, (i, j))
    return res


@_timed
def isomorphism_suite(instances) -> SuiteResult:
    """Sum-quotient, third isomorphism, Zassenhaus and butterfly checks."""
    res = SuiteResult("isomorphism-theorems")
    for inst in _refining(instances):
        gs = inst.gs
        ideals = lattice_of(gs).ideals
        bottom = ideals[0]
        for A, B in product(ideals, repeat=2):
            if ideal_intersect(gs, A, B) == bottom:
                res.checked += 1
                if not check_lemma_sum_quotient(gs, A, B):
                    res.fail(inst.label, "sum-quotient", A, B)
            if A <= B:
                res.checked += 1
                if third_iso_check(gs, A, B) is None:
                    res.fail(inst.label, "third", A, B)
        for Q, L, N in product(ideals, repeat=3):
            if L <= Q:
                res.checked += 1
                if not check_zassenhaus(gs, Q, L, N):
                    res.fail(inst.label, "zassenhaus", Q, L, N)
        for A, A2, B, B2 in product(ideals, repeat=4):
            if A2 <= A and B2 <= B:
                res.checked += 1
                if not check_butterfly(gs, A, A2, B, B2):
                    res.fail(inst.label, "butterfly", A, A2, B, B2)
    return res


@_timed
def closure_suite(instances, subset_limit: int = 5) -> SuiteResult:
    """Intersections, sums (refinement only), normality and the two ideal tests."""
    res = SuiteResult("closure")
    for inst in instances:
        gs = inst.gs
        ideals = lattice_of(gs).ideals
        for A, B in product(ideals, repeat=2):
            res.checked += 1
            try:
                ideal_intersect(gs, A, B)
            except AssertionError:
                res.fail(inst.label, "intersection", A, B)
            if inst.flags["refinement"]:
                res.checked += 1
                try:
                    ideal_sum(gs, A, B, refinement=True)
                except AssertionError:
                    res.fail(inst.label, "sum", A, B)
        for I in ideals:
            res.checked += 1
            if not is_normal(gs.monoid, I.members):
                res.fail(inst.label, "not-normal", I)
        if gs.size <= subset_limit:
            # both forms require 0; the empty set is excluded by that convention
            for mask in range(1, 1 << gs.size, 2):
                S = frozenset(a for a in range(gs.size) if mask >> a & 1)
                res.checked += 1
                bi = _biconditional_violation(gs, S) is None
                sub = _submonoid_violation(gs, S) is None
                if bi != sub:
                    res.fail(inst.label, "characterisations", tuple(sorted(S)), bi, sub)
    return res


@_timed
def quotient_suite(instances) -> SuiteResult:
    """Well-defined quotients, block of 0, correspondence and first isomorphism."""
    res = SuiteResult("quotients")
    for inst in instances:
        gs = inst.gs
        for I in lattice_of(gs).ideals:
            res.checked += 1
            try:
                qp = quotient(gs, I)
            except WellDefinednessFailure as e:
                res.fail(inst.label, "well-defined", I, str(e))
                continue
            if qp.classes.blocks[0] != I.elements:
                res.fail(inst.label, "block-zero", I)
            if not ideal_correspondence(gs, I):
                res.fail(inst.label, "correspondence", I)
            report = first_iso_check(projection_hom(qp))
            if not report.consistent:
                res.fail(inst.label, "first-iso", I)
    return res


@_timed
def chain_suite(instances) -> SuiteResult:
    """A composition series exists, has the lattice height, and bounds every series.

    The bound is checked against every composition series: no series may
    be longer than any composition series.
    """
    res = SuiteResult("chain-conditions")
    for inst in instances:
        gs = inst.gs
        res.checked += 1
        height = lattice_of(gs).height()
        s = one_composition_series(gs)
        if not is_composition_series(gs, s):
            res.fail(inst.label, "not-composition", s)
        if s.length != height:
            res.fail(inst.label, "length-vs-height", s.length, height)
        for c in all_composition_series(gs):
            if c.length < height:
                res.fail(inst.label, "bound", c, c.length, height)
    return res


@_timed
def split_suite(instances) -> SuiteResult:
    """Split/reassemble along every ideal and atom series for every atom choice."""
    res = SuiteResult("split-and-atoms")
    for inst in instances:
        gs = inst.gs
        for I in lattice_of(gs).ideals:
            res.checked += 1
            rep = split_and_reassemble(gs, I)
            if not rep.spliced_ok:
                res.fail(inst.label, "splice", I)
            if not rep.restrictions_ok:
                res.fail(inst.label, "restriction", I)
        if not inst.flags["refinement"]:
            continue
        atom_list = atoms_of(gs)
        for k in range(1, len(atom_list) + 1):
            for chosen in combinations(atom_list, k):
                for order in permutations(chosen):
                    res.checked += 1
                    try:
                        mis = minimal_ideal_series(gs, order)
                    except (AssertionError, GammaMonoidError) as e:
                        res.fail(inst.label, "atoms", order, repr(e))
                        continue
                    for step, iso in zip(mis.series.steps(), mis.isomorphisms):
                        if iso is None:
                            res.fail(inst.label, "atom-iso", step)
    return res


def simple_factors(instances) -> list:
    """Every simple factor met along the composition series of the instances."""
    seen = {}
    for inst in instances:
        gs = inst.gs
        for s in all_composition_series(gs):
            for lo, hi in s.steps():
                q = factor(gs, hi, lo).quotient
                if simple_cached(q):
                    seen.setdefault((q.table, q.action), q)
    return list(seen.values())


@_timed
def canonical_vs_search_suite(instances) -> SuiteResult:
    """Canonical-form equality agrees with isomorphism search on simple factors."""
    res = SuiteResult("canonical-vs-search")
    factors = simple_factors(instances)
    keys = [canonical_form(q) for q in factors]
    for i, j in combinations(range(len(factors)), 2):
        a, b = factors[i], factors[j]
        if a.group.table != b.group.table:
            continue
        res.checked += 1
        same_key = keys[i] == keys[j]
        found = find_gamma_isomorphism(a, b) is not None
        if same_key != found:
            res.fail("factor-pair", i, j, same_key, found)
    return res

