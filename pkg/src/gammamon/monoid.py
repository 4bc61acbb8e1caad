"""Finite commutative monoids given by Cayley tables.

Elements are the indices ``0..n-1`` and index 0 is always the identity.
The table is stored as a tuple of tuples so that a :class:`Monoid` is
hashable and cheap to index from pure Python; :meth:`Monoid.array` gives a
numpy view for vectorised scans.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import BadShape, NotAssociative, NotCommutative, NotIdentity, PreconditionViolated, SizeLimit

MAX_MONOID_SIZE = 64


class Verdict(NamedTuple):
    """A yes/no answer together with the elements that justify a *no*."""

    holds: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.holds


class OrderWitness(NamedTuple):
    kind: str  # 'leq-witness' | 'refinement-witness' | 'property-counterexample'
    elements: tuple


@dataclass(frozen=True, eq=True)
class Monoid:
    names: tuple
    table: tuple

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def add(self, a: int, b: int) -> int:
        return self.table[a][b]

    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.intp)
        arr.setflags(write=False)
        return arr

    def name(self, a: int) -> str:
        return self.names[a]

    def index(self, token) -> int:
        """Resolve an element name (or a decimal index) to its index."""
        if isinstance(token, (int, np.integer)):
            return int(token)
        try:
            return self.names.index(token)
        except ValueError:
            return int(token)

    def sum(self, elements) -> int:
        total = 0
        for x in elements:
            total = self.table[total][x]
        return total

    @cached_property
    def _solutions(self) -> tuple:
        # _solutions[a][b] = bitmask of c with a + c = b
        n = self.size
        sol = [[0] * n for _ in range(n)]
        for a in range(n):
            row = self.table[a]
            for c in range(n):
                sol[a][row[c]] |= 1 << c
        return tuple(tuple(r) for r in sol)

    @cached_property
    def down_masks(self) -> tuple:
        """``down_masks[b]`` is the bitmask of all ``a`` with ``a <= b``."""
        n = self.size
        sol = self._solutions
        return tuple(sum(1 << a for a in range(n) if sol[a][b]) for b in range(n))

    @cached_property
    def units(self) -> frozenset:
        """Elements equivalent to 0 under the pre-order, i.e. invertible ones."""
        return frozenset(a for a in self.elements if self._solutions[a][0])

    def leq_matrix(self) -> np.ndarray:
        n = self.size
        down = self.down_masks
        return np.array([[bool(down[b] >> a & 1) for b in range(n)] for a in range(n)])


def validate_monoid(names: Optional[Sequence[str]], table, max_size: int = MAX_MONOID_SIZE) -> Monoid:
    """Check the monoid axioms and return an immutable :class:`Monoid`.

    The identity must already sit at index 0 (the file parser reorders
    input to guarantee this).  Raises the first violated axiom with a
    witness tuple.
    """
    try:
        arr = np.asarray(table, dtype=np.intp)
    except (TypeError, ValueError) as exc:
        raise BadShape(f"table is not a square integer array: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise BadShape(f"table must be a non-empty square array, got shape {arr.shape}")
    n = arr.shape[0]
    if n > max_size:
        raise SizeLimit(f"monoid size {n} exceeds limit {max_size}")
    if arr.min() < 0 or arr.max() >= n:
        bad = tuple(int(i) for i in np.argwhere((arr < 0) | (arr >= n))[0])
        raise BadShape(f"entry at {bad} is not an element index", witness=bad)
    if names is None:
        names = [str(i) for i in range(n)]
    names = tuple(str(x) for x in names)
    if len(names) != n:
        raise BadShape(f"expected {n} names, got {len(names)}")
    if len(set(names)) != n:
        raise BadShape("element names must be distinct")

    idx = np.arange(n)
    bad = np.flatnonzero((arr[0] != idx) | (arr[:, 0] != idx))
    if bad.size:
        a = int(bad[0])
        raise NotIdentity(f"0 + {names[a]} != {names[a]}", witness=(a,))
    bad = np.argwhere(arr != arr.T)
    if bad.size:
        a, b = (int(v) for v in bad[0])
        raise NotCommutative(f"{names[a]} + {names[b]} != {names[b]} + {names[a]}", witness=(a, b))
    left = arr[arr[:, :, None], idx[None, None, :]]  # (a+b)+c
    right = arr[idx[:, None, None], arr[None, :, :]]  # a+(b+c)
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = (int(v) for v in bad[0])
        raise NotAssociative(
            f"({names[a]} + {names[b]}) + {names[c]} != {names[a]} + ({names[b]} + {names[c]})",
            witness=(a, b, c),
        )
    return Monoid(names, tuple(tuple(int(v) for v in row) for row in arr))


def leq(M: Monoid, a: int, b: int) -> Optional[OrderWitness]:
    """Return the least ``c`` with ``a + c = b`` or ``None`` if ``a`` is not below ``b``."""
    mask = M._solutions[a][b]
    if not mask:
        return None
    c = (mask & -mask).bit_length() - 1
    return OrderWitness("leq-witness", (c,))


def is_leq(M: Monoid, a: int, b: int) -> bool:
    return bool(M._solutions[a][b])


def incomparable(M: Monoid, a: int, b: int) -> bool:
    return not M._solutions[a][b] and not M._solutions[b][a]


def is_conical(M: Monoid) -> Verdict:
    t = M.table
    for a in M.elements:
        for b in range(a, M.size):
            if t[a][b] == 0 and (a or b):
                return Verdict(False, (a, b))
    return Verdict(True)


def is_cancellative(M: Monoid) -> Verdict:
    t = M.table
    for a in M.elements:
        seen = {}
        for b in M.elements:
            s = t[a][b]
            if s in seen:
                return Verdict(False, (a, seen[s], b))
            seen[s] = b
    return Verdict(True)


def refinement_witness(M: Monoid, a: int, b: int, c: int, d: int) -> Optional[tuple]:
    """A refinement ``(e1, e2, e3, e4)`` of ``a + b = c + d``, or ``None``.

    The equation ``a + b = a + b`` gets ``(a, 0, 0, b)``; otherwise the
    lexicographically least refinement is returned.
    Requires ``a = e1+e2``, ``b = e3+e4``, ``c = e1+e3``, ``d = e2+e4``.
    Fixing ``e1, e2`` and ``e3`` leaves ``e4`` in a precomputed solution mask.
    """
    t = M.table
    if t[a][b] != t[c][d]:
        raise PreconditionViolated(
            f"{M.names[a]} + {M.names[b]} != {M.names[c]} + {M.names[d]}", witness=(a, b, c, d)
        )
    if (a, b) == (c, d):
        return (a, 0, 0, b)
    sol = M._solutions
    n = M.size
    for e1 in range(n):
        e2_mask = sol[e1][a]
        e3_mask = sol[e1][c]
        if not e2_mask or not e3_mask:
            continue
        for e2 in _bits(e2_mask):
            for e3 in _bits(e3_mask):
                e4_mask = sol[e3][b] & sol[e2][d]
                if e4_mask:
                    return (e1, e2, e3, (e4_mask & -e4_mask).bit_length() - 1)
    return None


def is_refinement(M: Monoid) -> Verdict:
    """True iff every equal-sum quadruple can be refined; else the first failure."""
    t = M.table
    n = M.size
    by_sum = {}
    for a in range(n):
        for b in range(n):
            by_sum.setdefault(t[a][b], []).append((a, b))
    failures = []
    for pairs in by_sum.values():
        for a, b in pairs:
            for c, d in pairs:
                if refinement_witness(M, a, b, c, d) is None:
                    failures.append((a, b, c, d))
                    break
    if failures:
        return Verdict(False, min(failures))
    return Verdict(True)


def minimal_elements(M: Monoid, mode: str = "literal") -> frozenset:
    """Minimal elements of the algebraic pre-order.

    ``literal``: ``a`` is minimal when every ``b <= a`` also has ``a <= b``;
    since ``0 <= a`` always, these are exactly the units.

    ``nonzero``: minimal among the non-units, comparing only to non-units.
    When every element is a unit the units themselves are returned.
    """
    down = M.down_masks
    if mode == "literal":
        return frozenset(a for a in M.elements if all(down[a] >> b & 1 == 0 or down[b] >> a & 1 for b in M.elements))
    if mode != "nonzero":
        raise ValueError(f"unknown minimality mode {mode!r}")
    units = M.units
    rest = [a for a in M.elements if a not in units]
    if not rest:
        return frozenset(units)
    return frozenset(
        a for a in rest
        if all(not (down[a] >> b & 1) or down[b] >> a & 1 for b in rest)
    )


def trivial_monoid() -> Monoid:
    return Monoid(("0",), ((0,),))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low
