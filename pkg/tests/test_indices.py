import pytest

from eulersums import (
    MultiIndex,
    admissible_by_weight_height,
    compositions,
    format_index,
    parse_index,
    weight_depth_height,
)
from eulersums.indices import composition_count


@pytest.mark.parametrize("parts,want", [
    ((1, 3), (4, 2, 1)),
    ((), (0, 0, 0)),
    ((2, 2, 2), (6, 3, 3)),
    ((1, 1, 5), (7, 3, 1)),
])
def test_weight_depth_height(parts, want):
    assert weight_depth_height(MultiIndex(parts)) == want


def test_multiindex_rejects_nonpositive():
    with pytest.raises(ValueError):
        MultiIndex((1, 0, 2))


def test_admissibility_predicate():
    assert MultiIndex(()).is_admissible
    assert MultiIndex((1, 2)).is_admissible
    assert not MultiIndex((2, 1)).is_admissible


@pytest.mark.parametrize("total,parts,min_part,want", [
    (3, 2, 1, [(1, 2), (2, 1)]),
    (1, 2, 0, [(0, 1), (1, 0)]),
    (4, 1, 1, [(4,)]),
    (2, 3, 1, []),
])
def test_composition_examples(total, parts, min_part, want):
    got = [c.parts for c in compositions(total, parts, min_part)]
    assert got == want


def test_composition_counts_match_binomials():
    for t in range(0, 13):
        for p in range(1, t + 2):
            got = compositions(t, p, 1)
            assert len(got) == composition_count(t, p, 1)
            assert len({c.parts for c in got}) == len(got)
    for t in range(0, 9):
        for p in range(1, 6):
            got = compositions(t, p, 0)
            assert len(got) == composition_count(t, p, 0)
            assert len({c.parts for c in got}) == len(got)


def test_composition_order_lexicographic():
    got = [c.parts for c in compositions(5, 3, 1)]
    assert got == sorted(got)


@pytest.mark.parametrize("weight,height,want", [
    (4, 1, [(1, 1, 2), (1, 3), (4,)]),
    (2, 1, [(2,)]),
    (5, 2, [(1, 2, 2), (2, 1, 2), (2, 3), (3, 2)]),
    (3, 2, []),
])
def test_admissible_by_weight_height_examples(weight, height, want):
    got = [m.parts for m in admissible_by_weight_height(weight, height)]
    assert got == want


def test_admissible_height_one_count():
    # exactly the indices ({1}^a, b) with b = 2..k
    for k in range(2, 10):
        assert len(admissible_by_weight_height(k, 1)) == k - 1


def test_admissible_union_is_all_admissible():
    for k in range(2, 9):
        union = set()
        for s in range(1, k // 2 + 1):
            layer = admissible_by_weight_height(k, s)
            assert len(set(layer)) == len(layer)
            union |= set(layer)
        brute = {
            MultiIndex(c.parts)
            for d in range(1, k + 1)
            for c in compositions(k, d, 1)
            if c.parts[-1] >= 2
        }
        assert union == brute


def test_enumeration_deterministic():
    a = admissible_by_weight_height(7, 2)
    b = admissible_by_weight_height(7, 2)
    assert a == b


@pytest.mark.parametrize("text,parts", [
    ("(1,2)", (1, 2)),
    ("(3,{2}^2)", (3, 2, 2)),
    ("()", ()),
    ("(4)", (4,)),
    ("{1}^3,2", (1, 1, 1, 2)),
    ("( 2 , {3}^1 )", (2, 3)),
])
def test_parse_index(text, parts):
    assert parse_index(text).parts == parts


def test_format_round_trip():
    for parts in [(), (2,), (1, 2), (3, 2, 2), (1, 1, 1, 1, 2)]:
        idx = MultiIndex(parts)
        assert parse_index(format_index(idx)) == idx


@pytest.mark.parametrize("bad", ["(1,,2)", "(a)", "(1,2", "(1,)", "({2}^)"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_index(bad)
