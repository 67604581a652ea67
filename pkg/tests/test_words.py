import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from arrtop.words import (
    NotConjugateToGenerator,
    RangeError,
    RankMismatch,
    braid_act,
    braid_permutation,
    compose,
    conjugate,
    conjugate_normal_form,
    half_twist,
    inverse,
    multiply,
    perm_inverse,
    permute_order,
    reduce_word,
)

N = 6
letters = st.integers(1, N).flatmap(lambda k: st.sampled_from([k, -k]))
free_words = st.lists(letters, max_size=12).map(tuple)
braid_letters = st.integers(1, N - 1).flatmap(lambda k: st.sampled_from([k, -k]))
braids = st.lists(braid_letters, max_size=8).map(tuple)


def naive_reduce(w):
    """Repeatedly delete the first adjacent inverse pair."""
    w = list(w)
    changed = True
    while changed:
        changed = False
        for k in range(len(w) - 1):
            if w[k] == -w[k + 1]:
                del w[k : k + 2]
                changed = True
                break
    return tuple(w)


@settings(max_examples=300)
@given(free_words)
def test_reduction_matches_naive_oracle(w):
    r = reduce_word(w)
    assert r == naive_reduce(w)
    assert all(r[k] != -r[k + 1] for k in range(len(r) - 1))
    assert reduce_word(r) == r


@settings(max_examples=200)
@given(free_words, free_words)
def test_inverse_and_multiply(u, v):
    assert multiply(u, inverse(u)) == ()
    assert inverse(multiply(u, v)) == multiply(inverse(v), inverse(u))


def test_reduce_rejects_zero():
    with pytest.raises(ValueError):
        reduce_word((1, 0))


def test_conjugate_convention():
    assert conjugate((1,), (2,)) == (-2, 1, 2)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, N - 2), free_words)
def test_braid_relation_adjacent(i, w):
    assert braid_act((i, i + 1, i), w) == braid_act((i + 1, i, i + 1), w)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, N - 1), st.integers(1, N - 1), free_words)
def test_braid_relation_far(i, j, w):
    assume(abs(i - j) >= 2)
    assert braid_act((i, j), w) == braid_act((j, i), w)


@settings(max_examples=300, deadline=None)
@given(braids, free_words)
def test_braid_inverse_cancels(b, w):
    assert braid_act(b + inverse(b), w) == reduce_word(w)
    assert braid_act(inverse(b) + b, w) == reduce_word(w)


@settings(max_examples=200, deadline=None)
@given(braids, free_words, free_words)
def test_action_is_homomorphism(b, u, v):
    assert braid_act(b, multiply(u, v)) == multiply(braid_act(b, u), braid_act(b, v))


@settings(max_examples=200, deadline=None)
@given(braids)
def test_action_fixes_full_product(b):
    total = tuple(range(1, N + 1))
    assert braid_act(b, total) == total


@settings(max_examples=200, deadline=None)
@given(braids, st.integers(1, N))
def test_generators_go_to_conjugates(b, k):
    gen, c = conjugate_normal_form(braid_act(b, (k,)))
    assert gen > 0
    # x_k lands on the generator at the final position of strand k
    assert gen == braid_permutation(b, N)[k - 1]
    assert conjugate((gen,), c) == braid_act(b, (k,))


def test_sigma_action_explicit():
    assert braid_act((1,), (1,)) == (1, 2, -1)
    assert braid_act((1,), (2,)) == (1,)
    assert braid_act((-1,), (1,)) == (2,)
    assert braid_act((-1,), (2,)) == (-2, 1, 2)
    assert braid_act((1,), (3,)) == (3,)


def test_act_checks_ranges():
    with pytest.raises(RankMismatch):
        braid_act((3,), (1,), n=3)
    with pytest.raises(RankMismatch):
        braid_act((1,), (4,), n=3)


def test_half_twist_words_and_permutation():
    assert half_twist(1, 3, 4) == (1, 2, 1)
    assert half_twist(2, 2, 4) == ()
    assert braid_permutation(half_twist(2, 5, 6), 6) == (1, 5, 4, 3, 2, 6)
    with pytest.raises(RangeError):
        half_twist(3, 2, 4)


@settings(max_examples=200)
@given(braids, braids)
def test_permutation_composes_left_to_right(a, b):
    assert braid_permutation(a + b, N) == compose(braid_permutation(a, N), braid_permutation(b, N))


@settings(max_examples=200)
@given(braids)
def test_permute_order_tracks_labels(b):
    order = tuple(range(10, 10 + N))
    out = permute_order(order, b)
    p = braid_permutation(b, N)
    for start, label in enumerate(order, start=1):
        assert out[p[start - 1] - 1] == label


@settings(max_examples=200)
@given(st.integers(1, N).flatmap(lambda k: st.sampled_from([k, -k])), free_words)
def test_conjugate_normal_form_roundtrip(g, c):
    w = conjugate((g,), c)
    gen, tail = conjugate_normal_form(w)
    assert conjugate((gen,), tail) == w
    assert abs(gen) == abs(g) and (gen > 0) == (g > 0)


def test_conjugate_normal_form_rejects():
    with pytest.raises(NotConjugateToGenerator):
        conjugate_normal_form((1, 2))
    with pytest.raises(NotConjugateToGenerator):
        conjugate_normal_form((1, 2, 3))


def test_perm_inverse():
    p = (3, 1, 2)
    assert compose(p, perm_inverse(p)) == (1, 2, 3)
