import itertools
import random
from fractions import Fraction

from oidforge.polyring import Ring
from oidforge.symalg import (GradedWord, TaylorMap, canonicalize, coproduct,
                             enumerate_words, extend_comorphism, extend_coderivation,
                             identity_taylor, koszul_sign, set_partitions,
                             unshuffle_sign, word_to_string, wordsum_add,
                             wordsum_is_zero)

R = Ring(["x"])
one = R.one()

# koszul_sign basics
assert koszul_sign([0, 1], [-1, -1]) == 1
assert koszul_sign([1, 0], [-1, -1]) == -1
assert koszul_sign([1, 0], [-1, -2]) == 1
assert koszul_sign([1, 0], [-2, -2]) == 1

# canonicalize
w, s = canonicalize([(2, 0), (1, 0)])
assert w == ((1, 0), (2, 0)) and s == 1
w, s = canonicalize([(1, 1), (1, 0)])
assert w == ((1, 0), (1, 1)) and s == -1
w, s = canonicalize([(1, 0), (1, 0)])
assert s == 0
w, s = canonicalize([(2, 0), (2, 0)])
assert s == 1 and w == ((2, 0), (2, 0))

# canonicalization is permutation-independent
letters = [(1, 0), (2, 1), (1, 2), (2, 1)]
base = canonicalize(letters)
for perm in itertools.permutations(range(4)):
    shuffled = [letters[p] for p in perm]
    w2, s2 = canonicalize(shuffled)
    sp = koszul_sign(list(perm), [-(l[0]) for l in letters])
    assert w2 == base[0] and s2 == sp * base[1]

# enumeration
assert enumerate_words([2], 2, -2) == [((1, 0), (1, 1))]
assert enumerate_words([0, 1], 2, -4) == [((2, 0), (2, 0))]
assert enumerate_words([3, 1], 3, -3) == [((1, 0), (1, 1), (1, 2))]
assert enumerate_words([2, 1], 2, -3) == [((1, 0), (2, 0)), ((1, 1), (2, 0))]
assert enumerate_words([2, 1], 1, -2) == [((2, 0),)]
assert enumerate_words([2, 1], 2, -7) == []

# counting invariant vs brute force for a mixed-rank ladder
ranks = [2, 2, 1]
for k in range(1, 4):
    for m in range(-12, 0):
        words = enumerate_words(ranks, k, m)
        assert len(set(words)) == len(words)
        for w in words:
            assert len(w) == k and sum(l[0] for l in w) == -m
            assert w == tuple(sorted(w))

# word printing
assert word_to_string(((1, 1), (2, 0))) == "e[1,2]⊙f[2,1]"
gw = GradedWord.from_letters([(2, 0), (1, 1)])
assert repr(gw) == "e[1,2]⊙f[2,1]"

# identity co-morphism acts as identity
idt = identity_taylor(ranks, R)
for w in enumerate_words(ranks, 2, -3):
    outc = extend_comorphism(idt, w, 2, R)
    assert outc == {w: one}, (w, outc)
    assert extend_comorphism(idt, w, 1, R) == {}

# simple coderivation: arity-1 H on x ⊙ y
H = TaylorMap(1, {}, 1)
# H maps each level-2 letter to the level-1 letter with the same index
H.entries[((2, 0),)] = {(1, 0): one}
word = ((1, 1), (2, 0))
out = extend_coderivation([H], None, word, 2, R)
# crossing sign over the odd e cancels the odd-odd sort sign: -e[1,2]⊙e[1,1] = +e[1,1]⊙e[1,2]
assert out == {((1, 0), (1, 1)): one}, out

# coderivation on an even pair: H(f)⊙f twice, no signs
word2 = ((2, 0), (2, 0))
out2 = extend_coderivation([H], None, word2, 2, R)
assert out2 == {((1, 0), (2, 0)): 2 * one}, out2

# random Taylor data: co-morphism compatibility with deconcatenation on words <= 3
rng = random.Random(7)


def random_combo(target_degree, ranks):
    combo = {}
    level = -target_degree
    if 1 <= level <= len(ranks):
        for idx in range(ranks[level - 1]):
            c = rng.choice([-2, -1, 0, 1, 2])
            if c:
                combo[(level, idx)] = R.constant(c)
    return combo


def random_morphism_family(ranks, max_arity=3):
    fam = []
    for ar in range(1, max_arity + 1):
        tm = TaylorMap(ar, {}, 0)
        for m in range(-9, 0):
            for w in enumerate_words(ranks, ar, m):
                combo = random_combo(m, ranks)
                if combo:
                    tm.entries[w] = combo
        fam.append(tm)
    return fam


def comorphism_full(fam, word):
    out = {}
    for t in range(1, len(word) + 1):
        wordsum_add(out, extend_comorphism(fam, word, t, R))
    return out


def tensor_delta(ws):
    """Apply coproduct to a word sum: dict (left, right) -> coefficient."""
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


fam = random_morphism_family(ranks)
for k in (2, 3):
    for m in range(-6, -k + 1):
        for w in enumerate_words(ranks, k, m):
            lhs = tensor_delta(comorphism_full(fam, w))
            rhs = {}
            for sign, left, right in coproduct(w):
                lsum = comorphism_full(fam, left)
                rsum = comorphism_full(fam, right)
                for lw, lc in lsum.items():
                    for rw, rc in rsum.items():
                        key = (lw, rw)
                        cur = rhs.get(key, R.zero())
                        rhs[key] = cur + lc * rc * sign
                        if rhs[key].is_zero():
                            del rhs[key]
            assert lhs == rhs, (w, lhs, rhs)
print("co-morphism deconcatenation compatibility ok")


def random_derivation_family(ranks, shift, max_arity=3):
    fam = []
    for ar in range(1, max_arity + 1):
        tm = TaylorMap(ar, {}, shift)
        for m in range(-9, 0):
            for w in enumerate_words(ranks, ar, m):
                combo = random_combo(m + shift, ranks)
                if combo:
                    tm.entries[w] = combo
        fam.append(tm)
    return fam


def coderivation_full(der, base, word):
    out = {}
    for t in range(1, len(word) + 1):
        wordsum_add(out, extend_coderivation(der, base, word, t, R))
    return out


# co-Leibniz along identity: Delta H = (H x id + id x H) Delta, with Koszul crossing signs
for shift in (1, -1):
    der = random_derivation_family(ranks, shift)
    for k in (2, 3):
        for m in range(-6, -k + 1):
            for w in enumerate_words(ranks, k, m):
                lhs = tensor_delta(coderivation_full(der, None, w))
                rhs = {}
                for sign, left, right in coproduct(w):
                    lw, ls = canonicalize(left)
                    rw, rs = canonicalize(right)
                    if ls == 0 or rs == 0:
                        continue
                    # H on the left factor
                    for hw, hc in coderivation_full(der, None, lw).items():
                        key = (hw, rw)
                        cur = rhs.get(key, R.zero())
                        rhs[key] = cur + hc * (sign * ls * rs)
                        if rhs[key].is_zero():
                            del rhs[key]
                    # H on the right factor: shift crosses the left factor's degree
                    cross = -1 if (shift % 2) and (sum(l[0] for l in left) % 2) else 1
                    for hw, hc in coderivation_full(der, None, rw).items():
                        key = (lw, hw)
                        cur = rhs.get(key, R.zero())
                        rhs[key] = cur + hc * (sign * ls * rs * cross)
                        if rhs[key].is_zero():
                            del rhs[key]
                assert lhs == rhs, (shift, w, lhs, rhs)
print("co-Leibniz along identity ok")

# co-Leibniz along a random co-morphism
fam0 = random_morphism_family(ranks)
for shift in (1,):
    der = random_derivation_family(ranks, shift)
    for k in (2, 3):
        for m in range(-6, -k + 1):
            for w in enumerate_words(ranks, k, m):
                lhs = tensor_delta(coderivation_full(der, fam0, w))
                rhs = {}
                for sign, left, right in coproduct(w):
                    lw, ls = canonicalize(left)
                    rw, rs = canonicalize(right)
                    if ls == 0 or rs == 0:
                        continue
                    for hw, hc in coderivation_full(der, fam0, lw).items():
                        for pw, pc in comorphism_full(fam0, rw).items():
                            key = (hw, pw)
                            cur = rhs.get(key, R.zero())
                            rhs[key] = cur + hc * pc * (sign * ls * rs)
                            if rhs[key].is_zero():
                                del rhs[key]
                    cross = -1 if (shift % 2) and (sum(l[0] for l in left) % 2) else 1
                    for pw, pc in comorphism_full(fam0, lw).items():
                        for hw, hc in coderivation_full(der, fam0, rw).items():
                            key = (pw, hw)
                            cur = rhs.get(key, R.zero())
                            rhs[key] = cur + pc * hc * (sign * ls * rs * cross)
                            if rhs[key].is_zero():
                                del rhs[key]
                assert lhs == rhs, (shift, w, lhs, rhs)
print("co-Leibniz along a random co-morphism ok")

print("ALL SYMALG SMOKE OK")
