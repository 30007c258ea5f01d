from itertools import combinations

import pytest
from hypothesis import given

from covol.perm import (
    BoundExceeded,
    Permutation,
    all_permutations,
    bruhat_leq,
    compose,
    enumerate_bruhat_pairs,
    length,
    w0,
)
from tests.strategies import permutations_of


def test_parse_forms():
    assert Permutation.parse("3412") == Permutation.parse("3,4,1,2") == Permutation.parse([3, 4, 1, 2])
    with pytest.raises(ValueError):
        Permutation.parse("1223")


def test_length_and_longest():
    assert length(Permutation.parse("3412")) == 4
    assert length(w0(4)) == 6
    assert length(Permutation.identity(5)) == 0


def test_str_switches_to_commas_past_nine():
    assert str(Permutation.parse("2143")) == "2143"
    assert "," in str(w0(10))


def _bruhat_closure(p):
    """u <= w via chains of transpositions raising length (independent oracle)."""
    perms = all_permutations(p)
    above = {u: {u} for u in perms}
    for u in sorted(perms, key=length, reverse=True):
        for i, j in combinations(range(p), 2):
            word = list(u.word)
            if word[i] < word[j]:
                word[i], word[j] = word[j], word[i]
                v = Permutation(tuple(word))
                above[u] |= above[v]
    return above


@pytest.mark.parametrize("p", [2, 3, 4])
def test_bruhat_matches_transposition_closure(p):
    above = _bruhat_closure(p)
    for u in all_permutations(p):
        for w in all_permutations(p):
            assert bruhat_leq(u, w) == (w in above[u])


def test_pair_counts():
    assert len(list(enumerate_bruhat_pairs(2))) == 3
    assert len(list(enumerate_bruhat_pairs(3))) == 19
    assert len(list(enumerate_bruhat_pairs(4))) == 213


def test_bound(monkeypatch):
    monkeypatch.setenv("COVOL_MAX_N", "3")
    with pytest.raises(BoundExceeded):
        list(enumerate_bruhat_pairs(4))


def test_size_mismatch():
    with pytest.raises(ValueError):
        bruhat_leq(Permutation.identity(2), Permutation.identity(3))


@given(permutations_of(5), permutations_of(5))
def test_group_laws(a, b):
    assert compose(a, a.inverse()) == Permutation.identity(5)
    assert compose(a, b).inverse() == compose(b.inverse(), a.inverse())


@given(permutations_of(5))
def test_bruhat_extremes_and_length(w):
    assert bruhat_leq(Permutation.identity(5), w)
    assert bruhat_leq(w, w0(5))
    assert length(w) == length(w.inverse())
    assert length(compose(w0(5), w)) == length(w0(5)) - length(w)
