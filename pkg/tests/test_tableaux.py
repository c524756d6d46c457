import itertools

import pytest

from conftest import member_by_word
from diagmod.errors import DomainError
from diagmod.tableaux import (
    AscentClass,
    Diagram,
    StandardTableau,
    TableauFamily,
    ascent_positions,
    classify_ascent,
    descent_set_tab,
    inversions,
    is_ascent_compatible,
    is_descent_compatible,
    render_tableau,
    swap_entries,
    tableau_from_record,
    tableau_to_record,
)


def test_reading_words(incompatible_family, compatible_family):
    assert sorted(t.reading_word for t in incompatible_family) == [
        (1, 2, 3), (1, 3, 2), (3, 1, 2)]
    assert sorted(t.reading_word for t in compatible_family) == [
        (1, 2, 3), (1, 3, 2), (2, 1, 3)]


def test_single_box_reading_word():
    d = Diagram(((1, 1),), ((1, 1),))
    t = StandardTableau(d, (1,))
    assert t.reading_word == (1,)
    assert descent_set_tab(t) == frozenset()


def test_descent_sets(incompatible_family):
    R = member_by_word(incompatible_family, (3, 1, 2))
    S = member_by_word(incompatible_family, (1, 2, 3))
    T = member_by_word(incompatible_family, (1, 3, 2))
    assert descent_set_tab(R) == {2}
    assert descent_set_tab(S) == frozenset()
    assert descent_set_tab(T) == {2}


def test_classify_ascent(incompatible_family):
    S = member_by_word(incompatible_family, (1, 2, 3))
    assert classify_ascent(S, 1, incompatible_family) is AscentClass.ATTACKING
    assert classify_ascent(S, 2, incompatible_family) is AscentClass.NONATTACKING
    R = member_by_word(incompatible_family, (3, 1, 2))
    assert classify_ascent(R, 2, incompatible_family) is AscentClass.DESCENT


def test_classify_ascent_rejects_outsiders(incompatible_family, compatible_family):
    S = member_by_word(compatible_family, (1, 2, 3))
    with pytest.raises(DomainError):
        classify_ascent(S, 1, incompatible_family)


def test_every_ascent_nonattacking_in_full_filling_family():
    d = Diagram(((1, 1), (2, 1), (3, 1)), ((1, 1), (2, 1), (3, 1)))
    members = [StandardTableau(d, p) for p in itertools.permutations((1, 2, 3))]
    family = TableauFamily(d, tuple(members), "full")
    for tab in family:
        des = descent_set_tab(tab)
        for i in (1, 2):
            if i not in des:
                assert classify_ascent(tab, i, family) is AscentClass.NONATTACKING


def test_ascent_positions(incompatible_family):
    R = member_by_word(incompatible_family, (3, 1, 2))
    assert ascent_positions(R, 1) == (2, 3)
    with pytest.raises(DomainError):
        ascent_positions(R, 2)


def test_ascent_positions_identity_reading():
    d = Diagram(((1, 1), (2, 1), (3, 1)), ((1, 1), (2, 1), (3, 1)))
    t = StandardTableau(d, (1, 2, 3))
    for i in (1, 2):
        assert ascent_positions(t, i) == (i, i + 1)


def test_compatibility_witness(incompatible_family):
    result = is_ascent_compatible(incompatible_family)
    assert not result.ok
    first, second, r, s = result.witness
    assert first.reading_word == (3, 1, 2)
    assert second.reading_word == (1, 2, 3)
    assert (r, s) == (2, 3)


def test_compatibility_positive(compatible_family):
    assert is_ascent_compatible(compatible_family).ok


def test_singleton_family_compatible(compatible_family):
    tab = compatible_family.members[0]
    single = TableauFamily(compatible_family.diagram, (tab,), "single")
    assert is_ascent_compatible(single).ok
    assert is_descent_compatible(single).ok


def test_descent_compatibility_independent_of_ascent(compatible_family):
    # the bent family is also descent-compatible
    assert is_descent_compatible(compatible_family).ok


def test_swap_changes_inversions_by_one():
    d = Diagram(((1, 1), (2, 1), (3, 1), (4, 1)), ((1, 1), (2, 1), (3, 1), (4, 1)))
    for word in itertools.permutations((1, 2, 3, 4)):
        t = StandardTableau(d, word)
        for i in (1, 2, 3):
            s = swap_entries(t, i)
            assert abs(inversions(s.reading_word) - inversions(t.reading_word)) == 1
            # i is a descent of exactly one of the pair
            assert (i in descent_set_tab(t)) != (i in descent_set_tab(s))


def test_compatibility_invariant_under_translation(incompatible_family):
    # shifting all boxes preserves the reading sequence, so the verdict and
    # witness positions are unchanged
    shift = lambda b: (b[0] + 3, b[1] + 2)
    d = incompatible_family.diagram
    d2 = Diagram(
        tuple(shift(b) for b in d.boxes),
        tuple(shift(b) for b in d.reading_order),
    )
    members = tuple(
        StandardTableau.from_box_map(d2, {shift(b): e for b, e in t.box_map().items()})
        for t in incompatible_family
    )
    moved = TableauFamily(d2, members, "moved")
    res_a, res_b = is_ascent_compatible(incompatible_family), is_ascent_compatible(moved)
    assert res_a.ok == res_b.ok
    assert res_a.witness[2:] == res_b.witness[2:]


def test_render_tableau(compatible_family):
    R = member_by_word(compatible_family, (2, 1, 3))
    assert render_tableau(R) == "1 3\n  2"
    assert render_tableau(R, frozenset({1})) == "1'  3\n    2"


def test_tableau_record_round_trip(compatible_family):
    for tab in compatible_family:
        rec = tableau_to_record(tab)
        back = tableau_from_record(rec)
        assert back == tab
