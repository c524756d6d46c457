import itertools

import pytest

from diagmod.compositions import (
    comp_n,
    descent_set,
    enumerate_compositions,
    enumerate_peak_compositions,
    enumerate_strict_partitions,
    format_composition,
    format_subset,
    is_peak_composition,
    parse_composition,
    peak_set,
)
from diagmod.errors import DomainError


def all_subsets(n):
    universe = range(1, n)
    for r in range(n):
        yield from itertools.combinations(universe, r)


def test_descent_set_examples():
    assert descent_set((2, 3, 1, 1)) == {2, 5, 6}
    assert descent_set((7,)) == frozenset()
    assert descent_set((1, 1, 3, 3)) == {1, 2, 5}


def test_descent_set_rejects_empty():
    with pytest.raises(DomainError):
        descent_set(())


def test_comp_n_examples():
    assert comp_n({1, 2, 5}, 8) == (1, 1, 3, 3)
    assert comp_n(set(), 5) == (5,)
    # round-trip through descent_set fixes the value
    assert descent_set((2, 3, 2)) == {2, 5}
    assert comp_n({2, 5}, 7) == (2, 3, 2)


def test_comp_n_rejects_out_of_range():
    with pytest.raises(DomainError):
        comp_n({7}, 7)
    with pytest.raises(DomainError):
        comp_n(set(), 0)


@pytest.mark.parametrize("n", range(1, 13))
def test_descent_comp_round_trip(n):
    for xs in all_subsets(n):
        assert descent_set(comp_n(xs, n)) == frozenset(xs)


def test_peak_set_examples():
    assert peak_set({1, 3, 5, 6}) == {3, 5}
    assert peak_set(set()) == frozenset()
    assert peak_set({2, 4, 6}) == {2, 4, 6}


def test_peak_set_idempotent_on_sparse_sets():
    for n in range(9):
        for xs in all_subsets(n):
            s = set(xs)
            if 1 not in s and all(x + 1 not in s for x in s):
                assert peak_set(s) == s


def test_peak_of_descents_is_sparse():
    for n in range(1, 9):
        for alpha in enumerate_compositions(n):
            pk = peak_set(descent_set(alpha))
            assert 1 not in pk
            assert all(x + 1 not in pk for x in pk)
            assert is_peak_composition(comp_n(pk, n))


def test_is_peak_composition():
    assert is_peak_composition((3, 3, 1))
    assert not is_peak_composition((1, 2, 2, 1, 3))
    assert is_peak_composition((6,))


def test_enumerate_compositions_order_and_count():
    assert list(enumerate_compositions(3)) == [(3,), (2, 1), (1, 2), (1, 1, 1)]
    for n in range(9):
        comps = list(enumerate_compositions(n))
        assert len(comps) == (2 ** (n - 1) if n else 1)
        assert len(set(comps)) == len(comps)
        # descending lexicographic order on parts
        assert comps == sorted(comps, reverse=True)


def test_enumerate_peak_compositions_matches_subset_filter():
    for n in range(1, 9):
        expect = sorted(
            (comp_n(xs, n) for xs in all_subsets(n)
             if 1 not in xs and all(x + 1 not in xs for x in xs)),
            reverse=True,
        )
        assert list(enumerate_peak_compositions(n)) == expect


def test_enumerate_strict_partitions():
    got = list(enumerate_strict_partitions(8))
    assert len(got) == 6
    assert set(got) == {(8,), (7, 1), (6, 2), (5, 3), (5, 2, 1), (4, 3, 1)}
    assert got == sorted(got, reverse=True)


def test_text_helpers():
    assert parse_composition("3,3,1") == (3, 3, 1)
    assert format_composition((3, 3, 1)) == "3,3,1"
    assert format_subset({5, 2, 6}) == "{2,5,6}"
    with pytest.raises(DomainError):
        parse_composition("3,x")
    with pytest.raises(DomainError):
        parse_composition("")
    with pytest.raises(DomainError):
        parse_composition("3,0,1")
