import pytest

import oracles
from gammamon.action import compose
from gammamon.corpus import (
    CorpusSpec,
    attach_actions,
    b2,
    build_corpus,
    builtin,
    corpus_instances,
    direct_sum,
    enumerate_monoids,
    manifest_line,
    semilattice_from_poset,
    shifted_power,
    truncated_naturals,
    write_manifest,
)
from gammamon.errors import BadParams, SizeLimit
from gammamon.monoid import trivial_monoid

# commutative monoids of order 1..5 up to isomorphism (OEIS A058131)
KNOWN_COUNTS = [1, 2, 5, 19, 78]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_enumeration_counts(n):
    assert len(enumerate_monoids(n)) == KNOWN_COUNTS[n - 1]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_enumeration_matches_brute_force(n):
    got = sorted(oracles.iso_class_key(M.table) for M in enumerate_monoids(n))
    assert got == oracles.symmetric_commutative_monoids(n)


def test_symmetric_oracle_agrees_with_full_search():
    assert oracles.symmetric_commutative_monoids(3) == oracles.naive_commutative_monoids(3)


def test_enumeration_is_deterministic():
    assert enumerate_monoids(4) == enumerate_monoids(4)
    a = [manifest_line(i) for i in corpus_instances(4)]
    b = [manifest_line(i) for i in corpus_instances(4)]
    assert a == b


def test_enumerated_tables_are_monoids():
    for n in range(1, 6):
        for M in enumerate_monoids(n):
            assert oracles.is_monoid(M.table)


def _cyclic_subgroups(auts):
    subs = set()
    for g in auts:
        h, cur = {tuple(range(len(g)))}, g
        while cur not in h:
            h.add(cur)
            cur = compose(cur, g)
        if len(h) > 1:
            subs.add(frozenset(h))
    return subs


def test_action_counts_match_automorphism_oracle():
    total = 0
    for n in range(1, 6):
        for M in enumerate_monoids(n):
            expect = 1 + len(_cyclic_subgroups(oracles.automorphisms(M.table)))
            got = attach_actions(M)
            assert len(got) == expect
            total += expect
    assert total == len(corpus_instances(5)) == 157


def test_refinement_flags_match_oracle(corpus):
    for inst in corpus:
        assert inst.flags["refinement"] == oracles.is_refinement(inst.gs.table)
        assert inst.flags["conical"] == oracles.is_conical(inst.gs.table)
        assert inst.flags["cancellative"] == oracles.is_cancellative(inst.gs.table)
    assert sum(i.flags["refinement"] for i in corpus) == 70
    assert len(corpus_instances(5, refinement_only=True)) == 70


def test_labels_are_unique(corpus):
    labels = [i.label for i in corpus]
    assert len(set(labels)) == len(labels)
    assert labels[:3] == ["n1-m000-a0", "n2-m000-a0", "n2-m001-a0"]


def test_attach_actions_sources():
    assert len(attach_actions(trivial_monoid())) == 1
    M = b2().monoid
    acts = attach_actions(M)
    assert [a.group.size for a in acts] == [1, 2]
    assert acts[1].action[1] == (0, 2, 1, 3)
    assert len(attach_actions(M, "trivial")) == 1
    assert len(attach_actions(M, "full-automorphism-subgroups")) == 2
    with pytest.raises(BadParams):
        attach_actions(M, "everything")


def test_trivial_source_gives_one_action_per_monoid():
    assert len(corpus_instances(4, source="trivial")) == sum(KNOWN_COUNTS[:4])


def test_builtins():
    t7 = builtin("paper-T7")
    assert t7.names == ("0", "1", "x", "y", "z", "s", "b")
    assert t7.table[6][6] == 5 and t7.table[1][3] == 5
    assert builtin("truncated-naturals", 1).table == ((0, 1), (1, 1))
    assert truncated_naturals(3).table[2][3] == 3
    sp = builtin("shifted-power", 1, 4)
    assert sp.size == 16 and sp.group.size == 4
    assert builtin("B2-swap").action[1] == (0, 2, 1, 3)
    ds = builtin("direct-sum", [("truncated-naturals", 1), ("truncated-naturals", 2)])
    assert ds.size == 6
    assert builtin("semilattice-from-poset", 2).names == ("0", "{0}", "{1}", "{0,1}")
    assert semilattice_from_poset(2, [(0, 1)]).names == ("0", "{0}", "{0,1}")


def test_builtin_errors():
    with pytest.raises(BadParams):
        builtin("nonsense")
    with pytest.raises(BadParams):
        builtin("truncated-naturals")
    with pytest.raises(BadParams):
        builtin("truncated-naturals", "many")
    with pytest.raises(BadParams):
        truncated_naturals(-1)
    with pytest.raises(BadParams):
        semilattice_from_poset(2, [(0, 1), (1, 0)])
    with pytest.raises(BadParams):
        shifted_power(1, 0)
    with pytest.raises(BadParams):
        direct_sum([])


def test_builtin_families_are_valid():
    for gs in [builtin("B2"), shifted_power(1, 3), semilattice_from_poset(3, [(0, 2)]), truncated_naturals(4)]:
        assert oracles.is_monoid(gs.table)


def test_spec_errors():
    with pytest.raises(SizeLimit):
        CorpusSpec(max_size=7)
    with pytest.raises(SizeLimit):
        enumerate_monoids(7)
    with pytest.raises(BadParams):
        CorpusSpec(filters=frozenset({"finite"}))
    with pytest.raises(BadParams):
        CorpusSpec(action_source="random")
    with pytest.raises(BadParams):
        enumerate_monoids(0)


def test_families_in_spec():
    out = build_corpus(CorpusSpec(max_size=2, families=("B2", ("truncated-naturals", 3))))
    assert [i.label for i in out[-2:]] == ["B2", "truncated-naturals(3)"]
    refine = build_corpus(CorpusSpec(max_size=1, filters=frozenset({"cancellative"}), families=("paper-T7",)))
    assert [i.label for i in refine] == ["n1-m000-a0"]


def test_manifest(tmp_path, small_corpus):
    path = tmp_path / "manifest.tsv"
    write_manifest(small_corpus, path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# label")
    assert len(lines) == len(small_corpus) + 1
    fields = lines[1].split("\t")
    assert fields[:3] == ["n1-m000-a0", "1", "1"]
    assert len(fields[3]) == 16 and fields[4] == "111"
    # conjugate subgroups of a non-abelian automorphism group give the same
    # structure twice; a shared digest must mean an actual isomorphism
    by_key = {}
    for inst, line in zip(small_corpus, lines[1:]):
        by_key.setdefault(line.split("\t")[3], []).append(inst.gs)
    for group in by_key.values():
        a = group[0]
        for b in group[1:]:
            assert oracles.gamma_isomorphic(a.table, a.action, b.table, b.action)
    assert len(by_key) == len(small_corpus) - 2
