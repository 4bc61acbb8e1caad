import warnings
from functools import lru_cache
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gammamon.action import (
    all_subgroups,
    automorphism_group,
    compose,
    cyclic_action,
    cyclic_group,
    orbit,
    orbits,
    permutation_group_action,
    permutation_order,
    restrict_action,
    subgroup_closure,
    trivial_action,
    validate_action,
    validate_group,
)
from gammamon.corpus import b2, b2_swap, corpus_instances, paper_t7, shifted_power
from gammamon.errors import (
    AdditivityLaw,
    BadShape,
    CompositionLaw,
    IdentityLaw,
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotPermutation,
)
from gammamon.monoid import trivial_monoid


def s3_table():
    perms = list(permutations(range(3)))
    index = {p: i for i, p in enumerate(perms)}
    return [[index[compose(p, q)] for q in perms] for p in perms]


def test_trivial_group():
    g = validate_group([[0]])
    assert g.is_trivial and g.inverse == (0,)


def test_z4_inverse():
    z4 = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    assert validate_group(z4).inverse == (0, 3, 2, 1)


def test_s3_is_not_abelian():
    with pytest.raises(NotAbelian) as e:
        validate_group(s3_table())
    a, b = e.value.witness
    t = s3_table()
    assert t[a][b] != t[b][a]


def test_s3_allowed_with_warning():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        g = validate_group(s3_table(), allow_nonabelian=True)
    assert g.size == 6
    assert any("non-abelian" in str(w.message) for w in caught)


def test_group_failures():
    with pytest.raises(NoIdentity):
        validate_group([[1, 0], [0, 1]])
    with pytest.raises(NoInverse):
        validate_group([[0, 1], [1, 1]])
    with pytest.raises(BadShape):
        validate_group([[0, 1]])


def test_trivial_action_on_t7():
    gs = paper_t7()
    assert gs.group.is_trivial
    assert validate_action(gs.group, gs.monoid, [list(range(7))]) == gs


def test_b2_swap_is_valid():
    gs = b2_swap()
    names = gs.names
    swap = gs.action[1]
    assert names[swap[names.index("01")]] == "10"
    assert swap[names.index("11")] == names.index("11")


def test_non_additive_action():
    M = b2().monoid
    n = M.names
    # swap 01 and 11: an involution that is not additive
    perm = list(range(4))
    perm[n.index("01")], perm[n.index("11")] = n.index("11"), n.index("01")
    with pytest.raises(AdditivityLaw) as e:
        validate_action(cyclic_group(2), M, [list(range(4)), perm])
    alpha, a, b = e.value.witness
    assert perm[M.add(a, b)] != M.add(perm[a], perm[b])


def test_action_law_failures():
    M = b2().monoid
    ident = list(range(4))
    swap = [0, 2, 1, 3]
    with pytest.raises(IdentityLaw):
        validate_action(cyclic_group(2), M, [swap, ident])
    with pytest.raises(NotPermutation):
        validate_action(cyclic_group(2), M, [ident, [0, 1, 1, 3]])
    # swap twice is not the identity under Z/3
    with pytest.raises(CompositionLaw):
        validate_action(cyclic_group(3), M, [ident, swap, swap])
    with pytest.raises(BadShape):
        validate_action(cyclic_group(2), M, [ident])


def test_orbits():
    gs = paper_t7()
    assert all(orbit(gs, a).elements == {a} for a in range(7))
    sw = b2_swap()
    n = sw.names
    assert {n[a] for a in orbit(sw, n.index("01")).elements} == {"01", "10"}


def test_orbit_of_zero_is_zero(corpus):
    for inst in corpus:
        assert orbit(inst.gs, 0).elements == {0}


def test_orbits_partition(corpus):
    for inst in corpus:
        parts = orbits(inst.gs)
        seen = [a for o in parts for a in o.elements]
        assert sorted(seen) == list(range(inst.gs.size))


def test_automorphism_examples():
    assert automorphism_group(trivial_monoid()) == [(0,)]
    b = b2().monoid
    assert automorphism_group(b) == [(0, 1, 2, 3), (0, 2, 1, 3)]
    t7 = paper_t7().monoid
    # recorded: the only non-identity automorphism swaps 1 with y and x with z
    assert automorphism_group(t7) == [(0, 1, 2, 3, 4, 5, 6), (0, 3, 4, 1, 2, 5, 6)]


def test_automorphisms_match_brute_force(corpus):
    seen = set()
    for inst in corpus:
        M = inst.gs.monoid
        if M.table in seen:
            continue
        seen.add(M.table)
        assert automorphism_group(M) == oracles.automorphisms(M.table)


def test_cyclic_action_from_generator():
    M = b2().monoid
    gs = cyclic_action(M, (0, 2, 1, 3))
    assert gs.group.size == 2
    assert gs.action == ((0, 1, 2, 3), (0, 2, 1, 3))
    with pytest.raises(NotPermutation):
        cyclic_action(M, (0, 1, 1, 3))


def test_shift_action_has_order_four():
    gs = shifted_power(1, 4)
    assert gs.size == 16 and gs.group.size == 4
    assert permutation_order(gs.action[1]) == 4


def test_permutation_group_action_and_subgroups():
    M = b2().monoid
    auts = automorphism_group(M)
    subs = all_subgroups(auts, 4)
    assert sorted(len(h) for h in subs) == [1, 2]
    gs = permutation_group_action(M, subgroup_closure([auts[1]], 4))
    assert gs.group.size == 2


def test_restrict_action_to_ideal():
    gs = b2_swap()
    n = gs.names
    keep = [n.index("00"), n.index("11")]
    rows = restrict_action(gs, keep)
    assert rows == ((0, 1), (0, 1))


@lru_cache(maxsize=None)
def _corpus():
    return tuple(corpus_instances(5))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 156), st.data())
def test_action_laws_hold(idx, data):
    inst = _corpus()[idx]
    gs = inst.gs
    g = gs.group
    a = data.draw(st.integers(0, gs.size - 1))
    b = data.draw(st.integers(0, gs.size - 1))
    al = data.draw(st.integers(0, g.size - 1))
    be = data.draw(st.integers(0, g.size - 1))
    act = gs.action
    assert act[g.mul(al, be)][a] == act[al][act[be][a]]
    assert act[al][gs.monoid.add(a, b)] == gs.monoid.add(act[al][a], act[al][b])
