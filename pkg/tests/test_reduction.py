from random import Random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lowchurn.core import Assignment, TaskMultiset, adjacent_step, is_adjacent, random_multiset, switching_cost
from lowchurn.reduction import LiftedTaskId, decode, encode, lift, lift_ids, project


def ms(*elements, t=8):
    return TaskMultiset.from_elements(elements, t)


def test_lift_construction_by_hand():
    # Copies (i,1)..(i,m_T(i)) per task, applied to T={2,2,5} with w=3.
    ids = lift_ids(ms(2, 2, 5), w=3)
    assert [(x.base, x.copy) for x in ids] == [(2, 1), (2, 2), (5, 1)]


def test_lift_empty():
    assert lift(ms(), w=3) == frozenset()


def test_encode_formula():
    # (base-1)*w + copy for T={1,1,1}, w=3 gives encoded {1,2,3}.
    assert lift(TaskMultiset.from_elements([1, 1, 1], 4), w=3) == frozenset({1, 2, 3})


def test_lift_size_matches():
    T = ms(1, 2, 2, 5, 5, 5)
    assert len(lift(T, w=6)) == len(T)


def test_multiplicity_above_w_rejected():
    with pytest.raises(ValueError):
        lift(ms(2, 2, 2), w=2)


@given(st.integers(1, 9), st.integers(1, 7), st.integers(1, 7))
def test_encode_decode_roundtrip(base, copy, w):
    if copy > w:
        copy = w
    assert decode(encode(base, copy, w), w) == (base, copy)


@given(st.lists(st.tuples(st.integers(1, 9), st.integers(1, 6)), min_size=2, max_size=2))
def test_encoding_preserves_lex_order(pairs):
    w = 6
    (b1, c1), (b2, c2) = pairs
    assert (encode(b1, c1, w) < encode(b2, c2, w)) == ((b1, c1) < (b2, c2))


def test_lifted_task_id_from_encoded():
    x = LiftedTaskId.from_encoded(encode(5, 2, 3), 3)
    assert (x.base, x.copy) == (5, 2)


def test_adjacent_multisets_lift_to_adjacent_sets():
    rng = Random(11)
    w, t = 5, 6
    for _ in range(200):
        T1 = random_multiset(w, t, rng)
        T2 = adjacent_step(T1, rng, w=w)
        assert is_adjacent(T1, T2)
        s1, s2 = lift(T1, w), lift(T2, w)
        assert len(s1 - s2) == 1 and len(s2 - s1) == 1


def test_project_drops_copy_index():
    T = TaskMultiset.from_elements([2, 2, 5], 8)
    w = 3
    a = Assignment.from_mapping(
        {1: encode(2, 2, w), 2: encode(5, 1, w), 3: encode(2, 1, w)}, w
    )
    assert project(a, T, w).mapping == {1: 2, 2: 5, 3: 2}


def test_project_single_worker():
    T = TaskMultiset.from_elements([7], 8)
    a = Assignment.from_mapping({1: encode(7, 1, 1)}, 1)
    assert project(a, T, 1).mapping == {1: 7}


def test_project_rejects_non_bijection():
    T = TaskMultiset.from_elements([2, 5], 8)
    w = 2
    bad = Assignment.from_mapping({1: encode(2, 1, w), 2: encode(2, 1, w)}, w)
    with pytest.raises(ValueError):
        project(bad, T, w)
    short = Assignment.from_mapping({1: encode(2, 1, w)}, w)
    with pytest.raises(ValueError):
        project(short, T, w)


def test_project_roundtrip_realizes_multiset():
    rng = Random(23)
    w, t = 5, 6
    for _ in range(100):
        T = random_multiset(rng.randint(0, w), t, rng)
        lifted = sorted(lift(T, w))
        rng.shuffle(lifted)
        a = Assignment.from_mapping({i + 1: e for i, e in enumerate(lifted)}, w)
        projected = project(a, T, w)
        assert projected.realizes(T)


def test_projection_never_increases_switching_cost():
    rng = Random(29)
    w, t = 4, 5
    for _ in range(200):
        T1 = random_multiset(w, t, rng)
        T2 = adjacent_step(T1, rng, w=w)
        l1, l2 = sorted(lift(T1, w)), sorted(lift(T2, w))
        rng.shuffle(l1)
        rng.shuffle(l2)
        a1 = Assignment.from_mapping({i + 1: e for i, e in enumerate(l1)}, w)
        a2 = Assignment.from_mapping({i + 1: e for i, e in enumerate(l2)}, w)
        p1, p2 = project(a1, T1, w), project(a2, T2, w)
        assert switching_cost(p1, p2) <= switching_cost(a1, a2)
