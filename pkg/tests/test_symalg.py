"""Graded words, Koszul signs, basis enumeration, and the co-morphism /
co-derivation extension formulas."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oidforge.polyring import Ring
from oidforge.symalg import (GradedWord, TaylorMap, canonicalize, coproduct,
                             enumerate_words, extend_coderivation, extend_comorphism,
                             identity_taylor, koszul_sign, letter_degree, letter_is_odd,
                             word_degree, word_to_string, wordsum_add)

R = Ring(("x",))
ONE = R.one()

letters_strategy = st.lists(st.tuples(st.integers(1, 3), st.integers(0, 2)),
                            min_size=1, max_size=5)


# --- signs and canonical form ----------------------------------------------

def test_koszul_sign_basics():
    assert koszul_sign([0, 1], [-1, -1]) == 1
    assert koszul_sign([1, 0], [-1, -1]) == -1
    assert koszul_sign([1, 0], [-1, -2]) == 1
    assert koszul_sign([1, 0], [-2, -2]) == 1


def test_letter_grading():
    assert letter_degree((2, 5)) == -2
    assert letter_is_odd((1, 0)) and not letter_is_odd((2, 0))
    assert word_degree(((1, 0), (2, 1))) == -3


def test_canonicalize_examples():
    assert canonicalize([(2, 0), (1, 0)]) == (((1, 0), (2, 0)), 1)
    assert canonicalize([(1, 1), (1, 0)]) == (((1, 0), (1, 1)), -1)
    assert canonicalize([(1, 0), (1, 0)])[1] == 0
    assert canonicalize([(2, 0), (2, 0)]) == (((2, 0), (2, 0)), 1)


@given(letters=letters_strategy)
def test_canonicalize_idempotent(letters):
    word, sign = canonicalize(letters)
    if sign == 0:
        assert sum(1 for l in letters if letter_is_odd(l)) > len(
            set(l for l in letters if letter_is_odd(l)))
        return
    again, s2 = canonicalize(list(word))
    assert again == word and s2 == 1


@given(letters=letters_strategy, data=st.data())
def test_canonicalize_permutation_consistent(letters, data):
    base_word, base_sign = canonicalize(letters)
    perm = data.draw(st.permutations(range(len(letters))))
    shuffled = [letters[p] for p in perm]
    word, sign = canonicalize(shuffled)
    assert word == base_word
    if base_sign == 0:
        assert sign == 0
    else:
        expected = koszul_sign(list(perm), [letter_degree(l) for l in letters])
        assert sign == expected * base_sign


def test_word_printing():
    assert word_to_string(((1, 1), (2, 0))) == "e[1,2]⊙f[2,1]"
    assert repr(GradedWord.from_letters([(2, 0), (1, 1)])) == "e[1,2]⊙f[2,1]"


# --- enumeration ------------------------------------------------------------

def test_enumerate_words_examples():
    assert enumerate_words([2], 2, -2) == [((1, 0), (1, 1))]
    assert enumerate_words([0, 1], 2, -4) == [((2, 0), (2, 0))]
    assert enumerate_words([3, 1], 3, -3) == [((1, 0), (1, 1), (1, 2))]
    assert enumerate_words([2, 1], 2, -3) == [((1, 0), (2, 0)), ((1, 1), (2, 0))]
    assert enumerate_words([2, 1], 2, -7) == []


def _series_counts(ranks, depth):
    """Coefficients of prod over odd letters (1 + u t^i), even letters
    1/(1 - u t^i), truncated at t-degree depth; keys (word length, |degree|)."""
    series = {(0, 0): 1}
    for lv, rank in enumerate(ranks, start=1):
        if lv % 2 == 1:
            factor = {(0, 0): 1, (1, lv): 1}
        else:
            factor = {(j, j * lv): 1 for j in range(depth // lv + 1)}
        for _ in range(rank):
            nxt = {}
            for (k1, d1), c1 in series.items():
                for (k2, d2), c2 in factor.items():
                    if d1 + d2 <= depth:
                        key = (k1 + k2, d1 + d2)
                        nxt[key] = nxt.get(key, 0) + c1 * c2
            series = nxt
    return series


@pytest.mark.parametrize("ranks", [(2,), (0, 1), (2, 1), (3, 1), (2, 2, 1), (1, 1, 1, 1)])
def test_enumeration_matches_generating_function(ranks):
    depth = 9
    series = _series_counts(ranks, depth)
    for k in range(1, 5):
        for m in range(-depth, 0):
            words = enumerate_words(ranks, k, m)
            assert len(set(words)) == len(words)
            for w in words:
                assert len(w) == k and word_degree(w) == m and w == tuple(sorted(w))
            assert len(words) == series.get((k, -m), 0), (ranks, k, m)


# --- co-morphism extension --------------------------------------------------

RANKS = [2, 2, 1]


def test_identity_comorphism_is_identity():
    idt = identity_taylor(RANKS, R)
    for k in (1, 2, 3):
        for m in range(-6, 0):
            for w in enumerate_words(RANKS, k, m):
                assert extend_comorphism(idt, w, k, R) == {w: ONE}
                if k > 1:
                    assert extend_comorphism(idt, w, k - 1, R) == {}


def test_comorphism_split_components():
    # a single arity-2 coefficient: the length-1 component on a pair word is
    # the coefficient itself, the length-2 component is the identity part
    fam = [TaylorMap(1, {}, 0), TaylorMap(2, {}, 0)]
    for idx in range(RANKS[0]):
        fam[0].entries[((1, idx),)] = {(1, idx): ONE}
    fam[1].entries[((1, 0), (1, 1))] = {(2, 0): ONE}
    w = ((1, 0), (1, 1))
    assert extend_comorphism(fam, w, 1, R) == {((2, 0),): ONE}
    assert extend_comorphism(fam, w, 2, R) == {w: ONE}


# --- co-derivation extension ------------------------------------------------

def test_coderivation_arity_one():
    H = TaylorMap(1, {}, 1)
    H.entries[((2, 0),)] = {(1, 0): ONE}
    out = extend_coderivation([H], None, ((1, 1), (2, 0)), 2, R)
    assert out == {((1, 0), (1, 1)): ONE}
    out2 = extend_coderivation([H], None, ((2, 0), (2, 0)), 2, R)
    assert out2 == {((1, 0), (2, 0)): 2 * ONE}


def test_coderivation_zero_data():
    H = TaylorMap(1, {}, 1)
    assert extend_coderivation([H], None, ((1, 0), (2, 0)), 2, R) == {}


def test_coderivation_arity_two_shuffles():
    # arity-2 coefficient on a three-letter word: sum over the three pair picks
    H = TaylorMap(2, {}, 1)
    H.entries[((1, 0), (1, 1))] = {(1, 0): ONE}
    w = ((1, 0), (1, 1), (2, 0))
    out = extend_coderivation([H], None, w, 2, R)
    # only the pick {e1, e2} matches the stored pair, in original order: no signs
    assert out == {((1, 0), (2, 0)): ONE}


# --- brute-force identities -------------------------------------------------

rng = random.Random(7)


def _random_combo(target_degree, ranks):
    combo = {}
    level = -target_degree
    if 1 <= level <= len(ranks):
        for idx in range(ranks[level - 1]):
            c = rng.choice([-2, -1, 0, 1, 2])
            if c:
                combo[(level, idx)] = R.constant(c)
    return combo


def _random_family(ranks, shift, max_arity=3):
    fam = []
    for ar in range(1, max_arity + 1):
        tm = TaylorMap(ar, {}, shift)
        for m in range(-9, 0):
            for w in enumerate_words(ranks, ar, m):
                combo = _random_combo(m + shift, ranks)
                if combo:
                    tm.entries[w] = combo
        fam.append(tm)
    return fam


def _full_comorphism(fam, word):
    out = {}
    for t in range(1, len(word) + 1):
        wordsum_add(out, extend_comorphism(fam, word, t, R))
    return out


def _full_coderivation(der, base, word):
    out = {}
    for t in range(1, len(word) + 1):
        wordsum_add(out, extend_coderivation(der, base, word, t, R))
    return out


def _tensor_delta(ws):
    acc = {}
    for w, c in ws.items():
        for sign, left, right in coproduct(w):
            lw, ls = canonicalize(left)
            rw, rs = canonicalize(right)
            if ls == 0 or rs == 0:
                continue
            key = (lw, rw)
            cur = acc.get(key, R.zero())
            acc[key] = cur + c * (sign * ls * rs)
            if acc[key].is_zero():
                del acc[key]
    return acc


def test_comorphism_deconcatenation_compatibility():
    fam = _random_family(RANKS, 0)
    for k in (2, 3):
        for m in range(-6, -k + 1):
            for w in enumerate_words(RANKS, k, m):
                lhs = _tensor_delta(_full_comorphism(fam, w))
                rhs = {}
                for sign, left, right in coproduct(w):
                    for lw, lc in _full_comorphism(fam, left).items():
                        for rw, rc in _full_comorphism(fam, right).items():
                            key = (lw, rw)
                            cur = rhs.get(key, R.zero())
                            rhs[key] = cur + lc * rc * sign
                            if rhs[key].is_zero():
                                del rhs[key]
                assert lhs == rhs, (w, lhs, rhs)


@pytest.mark.parametrize("shift", [1, -1])
def test_co_leibniz_along_identity(shift):
    der = _random_family(RANKS, shift)
    for k in (2, 3):
        for m in range(-6, -k + 1):
            for w in enumerate_words(RANKS, k, m):
                lhs = _tensor_delta(_full_coderivation(der, None, w))
                rhs = {}
                for sign, left, right in coproduct(w):
                    lw, ls = canonicalize(left)
                    rw, rs = canonicalize(right)
                    if ls == 0 or rs == 0:
                        continue
                    for hw, hc in _full_coderivation(der, None, lw).items():
                        key = (hw, rw)
                        cur = rhs.get(key, R.zero())
                        rhs[key] = cur + hc * (sign * ls * rs)
                        if rhs[key].is_zero():
                            del rhs[key]
                    cross = -1 if (shift % 2) and (word_degree(left) % 2) else 1
                    for hw, hc in _full_coderivation(der, None, rw).items():
                        key = (lw, hw)
                        cur = rhs.get(key, R.zero())
                        rhs[key] = cur + hc * (sign * ls * rs * cross)
                        if rhs[key].is_zero():
                            del rhs[key]
                assert lhs == rhs, (shift, w)


def test_co_leibniz_along_comorphism():
    base = _random_family(RANKS, 0)
    der = _random_family(RANKS, 1)
    for k in (2, 3):
        for m in range(-6, -k + 1):
            for w in enumerate_words(RANKS, k, m):
                lhs = _tensor_delta(_full_coderivation(der, base, w))
                rhs = {}
                for sign, left, right in coproduct(w):
                    lw, ls = canonicalize(left)
                    rw, rs = canonicalize(right)
                    if ls == 0 or rs == 0:
                        continue
                    for hw, hc in _full_coderivation(der, base, lw).items():
                        for pw, pc in _full_comorphism(base, rw).items():
                            key = (hw, pw)
                            cur = rhs.get(key, R.zero())
                            rhs[key] = cur + hc * pc * (sign * ls * rs)
                            if rhs[key].is_zero():
                                del rhs[key]
                    cross = -1 if word_degree(left) % 2 else 1
                    for pw, pc in _full_comorphism(base, lw).items():
                        for hw, hc in _full_coderivation(der, base, rw).items():
                            key = (pw, hw)
                            cur = rhs.get(key, R.zero())
                            rhs[key] = cur + pc * hc * (sign * ls * rs * cross)
                            if rhs[key].is_zero():
                                del rhs[key]
                assert lhs == rhs, (w,)
