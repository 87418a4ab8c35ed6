import itertools

import pytest

from gbem.bipartition import Bipartition, count_bipartitions, enumerate_bipartitions


def test_enumerate_examples():
    assert [g.members for g in enumerate_bipartitions(2)] == [(0,)]
    assert [g.members for g in enumerate_bipartitions(3)] == [(0,), (0, 1), (0, 2)]
    assert len(enumerate_bipartitions(4)) == 7


def test_count_examples():
    assert count_bipartitions(3) == 3
    assert count_bipartitions(5) == 15
    assert count_bipartitions(6) == 31


@pytest.mark.parametrize("n", range(2, 11))
def test_count_matches_enumeration(n):
    items = enumerate_bipartitions(n)
    assert count_bipartitions(n) == len(items) == 2 ** (n - 1) - 1
    masks = [g.mask for g in items]
    assert masks == sorted(masks)
    for g in items:
        assert 0 in g.members
    # 任意两项互不为补集
    seen = {frozenset(g.members) for g in items}
    for g in items:
        assert frozenset(g.complement) not in seen


def test_every_subset_containing_zero_appears_once():
    n = 5
    listed = [frozenset(g.members) for g in enumerate_bipartitions(n)]
    expected = [
        frozenset((0,) + rest)
        for size in range(0, n - 1)
        for rest in itertools.combinations(range(1, n), size)
    ]
    assert sorted(map(sorted, listed)) == sorted(map(sorted, expected))


def test_invalid_party_counts():
    with pytest.raises(ValueError):
        enumerate_bipartitions(1)
    with pytest.raises(ValueError):
        count_bipartitions(0)
    with pytest.raises(ValueError):
        enumerate_bipartitions(17)


def test_bipartition_canonical_form():
    assert Bipartition.of(3, (2,)).members == (0, 1)
    assert Bipartition.of(3, (2,)).label == "AB|C"
    assert Bipartition.from_mask(4, 0b0110).members == (0, 3)
    with pytest.raises(ValueError, match="invalid bipartition"):
        Bipartition(3, (1,))
    with pytest.raises(ValueError, match="invalid bipartition"):
        Bipartition(3, (0, 1, 2))
    with pytest.raises(ValueError, match="invalid bipartition"):
        Bipartition(3, ())


def test_side_dims():
    gamma = Bipartition(3, (0, 2))
    assert gamma.side_dims((2, 3, 4)) == (8, 3)
    assert gamma.d_min((2, 3, 4)) == 3
