from functools import lru_cache

import pytest
from hypothesis import given, settings, strategies as st

from gammamon.corpus import b2_swap, corpus_instances, paper_t7, semilattice_from_poset, shifted_power, truncated_naturals
from gammamon.errors import NotAbelian, NotAssociative, ParseError
from gammamon.fileformat import format_instance, load_instance, parse_instance, read_instance, write_instance

T7_TEXT = """\
# the seven-element example
monoid 7
names 0 1 x y z s b
0 1 x y z s b
1 1 1 s s s b
x 1 1 s s s b

y s s y y s b
z s s y y s b   # trailing comment
s s s s s s b
b b b b b b s
"""


def test_t7_file_loads():
    gs = load_instance(T7_TEXT)
    assert gs == paper_t7()
    assert format_instance(gs).splitlines()[1] == "names 0 1 x y z s b"


def test_indices_are_accepted():
    gs = load_instance("monoid 2\n0 1\n1 1\n")
    assert gs.table == ((0, 1), (1, 1))
    assert gs.names == ("0", "1")
    assert format_instance(gs) == "monoid 2\n0 1\n1 1\n"


def test_group_and_action_sections():
    gs = b2_swap()
    text = format_instance(gs)
    assert "group 2\n0 1\n1 0\naction\n" in text
    assert load_instance(text) == gs


def test_group_without_action_is_trivial_action():
    gs = load_instance("monoid 2\n0 1\n1 1\ngroup 2\n0 1\n1 0\n")
    assert gs.group.size == 2
    assert gs.action == ((0, 1), (0, 1))


@pytest.mark.parametrize(
    "gs",
    [paper_t7(), b2_swap(), shifted_power(1, 3), truncated_naturals(3), semilattice_from_poset(2)],
    ids=["t7", "b2-swap", "shift3", "trunc3", "poset2"],
)
def test_round_trip(gs, tmp_path):
    text = format_instance(gs)
    assert load_instance(text) == gs
    assert format_instance(load_instance(text)) == text
    path = tmp_path / "x.gm"
    write_instance(gs, path)
    assert read_instance(path) == gs


def test_round_trip_on_corpus(small_corpus):
    for inst in small_corpus:
        text = format_instance(inst.gs)
        assert load_instance(text) == inst.gs


def test_identity_moved_to_front():
    # identity listed second: elements become (e, a)
    f = parse_instance("monoid 2\nnames a e\na a\na e\n")
    assert f.reordered and f.names == ("e", "a")
    assert f.table == ((0, 1), (1, 1))
    g = parse_instance("monoid 2\n0 0\n0 1\n")
    assert g.names == ("1", "0") and g.table == ((0, 1), (1, 1))


def test_identity_reorder_carries_action():
    f = parse_instance("monoid 3\nnames a b e\na a a\na b b\na b e\ngroup 1\n0\naction\na b e\n")
    assert f.names == ("e", "a", "b")
    assert f.action == ((0, 1, 2),)


@pytest.mark.parametrize(
    "text,line,column",
    [
        ("", 1, 1),
        ("# only a comment\n\n", 1, 1),
        ("monoid two\n", 1, 8),
        ("monoid 2 3\n", 1, 10),
        ("monoid 0\n", 1, 8),
        ("table 2\n", 1, 1),
        ("monoid 2\n0 1\n1\n", 3, 2),
        ("monoid 2\n0 1\n1 1 1\n", 3, 5),
        ("monoid 2\n0 1\n1 q\n", 3, 3),
        ("monoid 2\n0 1\n1 5\n", 3, 3),
        ("monoid 2\n0 1\n", 3, 1),
        ("monoid 2\nnames a a\na a\na a\n", 2, 9),
        ("monoid 2\nnames a\n", 2, 7),
        ("monoid 2\n0 1\n1 1\ngroup 2\n0 1\n1 2\n", 6, 3),
        ("monoid 2\n0 1\n1 1\ngroup 1\n0\naction 3\n0 1\n", 6, 8),
        ("monoid 2\n0 1\n1 1\nextra\n", 4, 1),
    ],
)
def test_parse_errors_have_positions(text, line, column):
    with pytest.raises(ParseError) as e:
        parse_instance(text)
    assert (e.value.line, e.value.column) == (line, column)


def test_validation_errors_pass_through():
    # 1 + y = y breaks associativity in the seven-element table
    bad = T7_TEXT.replace("1 1 1 s s s b", "1 1 1 y s s b").replace("y s s y y s b", "y y s y y s b")
    with pytest.raises(NotAssociative):
        load_instance(bad)
    s3 = "monoid 1\n0\ngroup 6\n" + "\n".join(
        " ".join(str(x) for x in row)
        for row in [
            [0, 1, 2, 3, 4, 5],
            [1, 0, 3, 2, 5, 4],
            [2, 4, 0, 5, 1, 3],
            [3, 5, 1, 4, 0, 2],
            [4, 2, 5, 0, 3, 1],
            [5, 3, 4, 1, 2, 0],
        ]
    ) + "\n"
    with pytest.raises(NotAbelian):
        load_instance(s3)
    with pytest.warns(UserWarning, match="non-abelian"):
        assert load_instance(s3, allow_nonabelian=True).group.size == 6


@lru_cache(maxsize=None)
def _small():
    return tuple(corpus_instances(4))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 36), st.lists(st.sampled_from(["", "   ", "# note"]), min_size=1, max_size=4))
def test_comments_and_blank_lines_are_ignored(idx, noise):
    gs = _small()[idx].gs
    lines = format_instance(gs).splitlines()
    padded = []
    for i, line in enumerate(lines):
        padded.append(noise[i % len(noise)])
        padded.append(line + "   # c" if i % 2 else line)
    assert load_instance("\n".join(padded) + "\n") == gs
