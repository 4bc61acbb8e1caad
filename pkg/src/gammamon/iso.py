"""Isomorphism search and canonical forms for monoids with group action.

Two structures acted on by the same group table are isomorphic when a
bijection fixes 0, preserves sums and commutes with every group element.
Both the search and the canonical form restrict candidate images to
elements with equal structural signatures.
"""
from __future__ import annotations

from itertools import permutations, product
from math import factorial
from typing import Optional

from .action import GammaStructure, require_same_group
from .errors import SizeLimit

ISO_LIMIT = 10
CANONICAL_LIMIT = 8


def element_signatures(gs: GammaStructure, rounds: int = 2) -> list:
    """Isomorphism-invariant label per element, refined a few rounds.

    The base label collects idempotency, stabiliser size, pre-order
    up/down counts, the shape of the cycle of multiples and the fixing
    pattern of the group.  Each round appends the multiset of
    ``(label(b), label(a + b))`` and the labels of the images of ``a``.
    """
    M = gs.monoid
    t = M.table
    n = M.size
    down = M.down_masks
    up_count = [0] * n
    for b in range(n):
        d = down[b]
        for a in range(n):
            if d >> a & 1:
                up_count[a] += 1
    base = []
    for a in range(n):
        mult = [a]
        x = a
        while True:
            x = t[x][a]
            if x in mult:
                cycle = (len(mult), len(mult) - mult.index(x))
                break
            mult.append(x)
        base.append((
            a == 0,
            t[a][a] == a,
            sum(1 for b in range(n) if t[a][b] == a),
            bin(down[a]).count("1"),
            up_count[a],
            cycle,
            tuple(row[a] == a for row in gs.action),
        ))
    sig = base
    for _ in range(rounds):
        sig = [
            (
                sig[a],
                tuple(sorted((sig[b], sig[t[a][b]]) for b in range(n))),
                tuple(sig[row[a]] for row in gs.action),
            )
            for a in range(n)
        ]
    return sig


def is_gamma_hom(source: GammaStructure, target: GammaStructure, f) -> bool:
    ts, tt = source.table, target.table
    if f[0] != 0:
        return False
    n = source.size
    for a in range(n):
        fa = f[a]
        for b in range(a, n):
            if f[ts[a][b]] != tt[fa][f[b]]:
                return False
    for ra, rb in zip(source.action, target.action):
        for a in range(n):
            if f[ra[a]] != rb[f[a]]:
                return False
    return True


def find_gamma_isomorphism(gs1: GammaStructure, gs2: GammaStructure, limit: int = ISO_LIMIT) -> Optional[tuple]:
    """A sum-, 0- and action-preserving bijection ``gs1 -> gs2``, or ``None``.

    Raises :class:`GroupMismatch` when the acting group tables differ and
    :class:`SizeLimit` above ``limit`` elements.
    """
    require_same_group(gs1, gs2)
    n = gs1.size
    if n != gs2.size:
        return None
    if n > limit:
        raise SizeLimit(f"isomorphism search refused for n={n} > {limit}")
    s1 = element_signatures(gs1)
    s2 = element_signatures(gs2)
    if sorted(s1) != sorted(s2):
        return None
    t1, t2 = gs1.table, gs2.table
    act1, act2 = gs1.action, gs2.action
    f = [-1] * n
    used = [False] * n
    f[0] = 0
    used[0] = True
    summands = [[] for _ in range(n)]
    for b in range(n):
        for c in range(b, n):
            summands[t1[b][c]].append((b, c))
    preimages = [[(alpha, b) for alpha, row in enumerate(act1) for b in range(n) if row[b] == a] for a in range(n)]

    def consistent(a):
        fa = f[a]
        for b in range(n):
            fb = f[b]
            if fb < 0:
                continue
            s = t1[a][b]
            img = t2[fa][fb]
            if f[s] >= 0:
                if f[s] != img:
                    return False
            elif used[img] or s2[img] != s1[s]:
                return False
        for b, c in summands[a]:
            if f[b] >= 0 and f[c] >= 0 and t2[f[b]][f[c]] != fa:
                return False
        for alpha in range(len(act1)):
            x = act1[alpha][a]
            if f[x] >= 0 and f[x] != act2[alpha][fa]:
                return False
        for alpha, b in preimages[a]:
            if f[b] >= 0 and act2[alpha][f[b]] != fa:
                return False
        return True

    def extend(a):
        if a == n:
            return is_gamma_hom(gs1, gs2, f)
        for x in range(1, n):
            if used[x] or s2[x] != s1[a]:
                continue
            f[a] = x
            used[x] = True
            if consistent(a) and extend(a + 1):
                return True
            f[a] = -1
            used[x] = False
        return False

    if n == 1 or extend(1):
        return tuple(f)
    return None


def canonical_form(gs: GammaStructure, limit: int = CANONICAL_LIMIT) -> tuple:
    """Key that is equal for two structures exactly when they are isomorphic.

    Elements are grouped by signature (classes ordered by signature), and
    the key is the lexicographically least relabelled table plus action
    over all orderings that permute elements only inside their class.
    The acting group table is part of the key.
    """
    n = gs.size
    if n > limit:
        raise SizeLimit(f"canonical form refused for n={n} > {limit}")
    sig = element_signatures(gs)
    classes = {}
    for a in range(1, n):
        classes.setdefault(sig[a], []).append(a)
    ordered = [classes[k] for k in sorted(classes)]
    count = 1
    for c in ordered:
        count *= factorial(len(c))
    if count > 400_000:
        raise SizeLimit(f"canonical form needs {count} relabellings")
    t = gs.table
    best = None
    for choice in product(*(permutations(c) for c in ordered)):
        inv = [0]
        for block in choice:
            inv.extend(block)
        pi = [0] * n
        for new, old in enumerate(inv):
            pi[old] = new
        enc = tuple(pi[t[inv[i]][inv[j]]] for i in range(n) for j in range(n))
        enc += tuple(pi[row[inv[i]]] for row in gs.action for i in range(n))
        if best is None or enc < best:
            best = enc
    return (n, gs.group.table, best)


def canonical_table(key) -> list:
    """Cayley table encoded in a canonical key."""
    n, _, enc = key
    return [list(enc[i * n:(i + 1) * n]) for i in range(n)]


def monoid_key(gs: GammaStructure, limit: int = CANONICAL_LIMIT) -> tuple:
    """Canonical form of the underlying monoid with the action forgotten."""
    from .action import trivial_action

    return canonical_form(trivial_action(gs.monoid), limit=limit)
