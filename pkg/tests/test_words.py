import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import naive_product, words
from radialfree.errors import DomainError, ResourceError
from radialfree.words import (
    Rank,
    ball,
    ball_size,
    format_word,
    inverse,
    is_reduced,
    multiply,
    parse_word,
    reduce,
    sphere,
    sphere_size,
)


def test_reduce_cancels_nested_pairs():
    assert reduce([1, 2, -2, -1, 1]) == (1,)
    assert reduce([1, -1]) == ()
    assert reduce([2, 1, -1, -2, 2, 2]) == (2, 2)


def test_multiply_examples():
    assert multiply((1, 2), (-2, 1)) == (1, 1)
    assert multiply((1, 2), (-2, -1)) == ()
    assert multiply((), (1,)) == (1,)


def test_rank_and_letters():
    assert Rank(2).r == pytest.approx(0.25)
    assert Rank(2).letters == (-2, -1, 1, 2)
    for bad in (0, -1, True, 1.5):
        with pytest.raises(DomainError):
            Rank(bad)


def test_letter_outside_rank_rejected():
    with pytest.raises(DomainError):
        reduce([3], rank=2)
    with pytest.raises(DomainError):
        parse_word("1,0")


@pytest.mark.parametrize("l", [1, 2, 3])
def test_sphere_sizes_match_formula(l):
    for n in range(7):
        got = sphere(l, n)
        assert len(got) == sphere_size(l, n)
        assert len(set(got)) == len(got)
        assert all(is_reduced(w) and len(w) == n for w in got)
        assert got == sorted(got)


def test_sphere_small_cases():
    assert sphere(1, 2) == [(-1, -1), (1, 1)]
    assert sphere(2, 1) == [(-2,), (-1,), (1,), (2,)]
    assert len(ball(2, 2)) == ball_size(2, 2) == 1 + 4 + 12


def test_cap_raises_resource_error():
    with pytest.raises(ResourceError) as info:
        sphere(3, 9, cap=1000)
    assert info.value.size == sphere_size(3, 9)


@given(words(3), words(3))
def test_multiply_agrees_with_naive_cancellation(u, v):
    assert multiply(u, v) == naive_product(u, v)


@given(words(2), words(2), words(2))
def test_associativity(u, v, w):
    assert multiply(multiply(u, v), w) == multiply(u, multiply(v, w))


@given(words(3))
def test_inverse_cancels(w):
    assert multiply(w, inverse(w)) == ()
    assert multiply(inverse(w), w) == ()
    assert inverse(inverse(w)) == w


@given(words(3))
def test_text_round_trip(w):
    assert parse_word(format_word(w), 3) == w


def test_parse_reduces_and_accepts_identity():
    assert parse_word("") == ()
    assert parse_word(" 1, -1, 2 ") == (2,)
