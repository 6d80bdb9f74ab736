"""Graded symmetric words over a resolution's generators: Koszul signs, canonical
ordering, degree-filtered enumeration, deconcatenation, and the extension of
arity-indexed coefficient families to co-algebra morphisms and co-derivations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

# A letter is (level, index): a degree -level generator of the level-indexed free module.
# A word is a tuple of letters; canonical words are sorted ascending by (level, index).


def letter_degree(letter) -> int:
    return -letter[0]


def letter_is_odd(letter) -> bool:
    return letter[0] % 2 == 1


def word_degree(letters) -> int:
    return -sum(l[0] for l in letters)


def koszul_sign(perm, degrees) -> int:
    """Sign with x_{perm[0]} ⊙ ... ⊙ x_{perm[k-1]} = sign * (x_0 ⊙ ... ⊙ x_{k-1})."""
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b] and degrees[perm[a]] % 2 and degrees[perm[b]] % 2:
                sign = -sign
    return sign


def canonicalize(letters):
    """(sorted word, sign) with sign 0 when an odd letter repeats (the word is zero)."""
    letters = tuple(letters)
    order = sorted(range(len(letters)), key=lambda i: (letters[i], i))
    sorted_letters = tuple(letters[i] for i in order)
    for a in range(len(sorted_letters) - 1):
        if sorted_letters[a] == sorted_letters[a + 1] and letter_is_odd(sorted_letters[a]):
            return sorted_letters, 0
    degrees = [letter_degree(l) for l in letters]
    return sorted_letters, koszul_sign(order, degrees)


@dataclass(frozen=True)
class GradedWord:
    """Canonical graded symmetric word with its accumulated sign."""

    letters: tuple
    sign: int = 1

    @classmethod
    def from_letters(cls, letters) -> "GradedWord":
        w, s = canonicalize(letters)
        if s == 0:
            raise ValueError("zero word: repeated odd generator")
        return cls(w, s)

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def degree(self) -> int:
        return word_degree(self.letters)

    def __repr__(self):
        body = word_to_string(self.letters)
        return body if self.sign == 1 else f"-{body}"


def word_to_string(letters, names=None) -> str:
    """Render e.g. e[1,2]⊙f[2,1]: letter char encodes the level, index shown 1-based."""
    if not letters:
        return "1"
    parts = []
    for level, index in letters:
        if names and (level, index) in names:
            parts.append(names[(level, index)])
        else:
            char = chr(ord("e") + min(level - 1, 20))
            parts.append(f"{char}[{level},{index + 1}]")
    return "⊙".join(parts)


def enumerate_words(res, word_length: int, internal_degree: int):
    """All canonical words with the given letter count and total degree, lexicographic.

    `res` is a resolution (uses .ranks) or a plain sequence of ranks, ranks[i-1] at level i.
    """
    ranks = list(res.ranks) if hasattr(res, "ranks") else list(res)
    letters = [(level, idx) for level in range(1, len(ranks) + 1)
               for idx in range(ranks[level - 1])]
    out = []

    def rec(start: int, remaining: int, budget: int, acc):
        if remaining == 0:
            if budget == 0:
                out.append(tuple(acc))
            return
        for pos in range(start, len(letters)):
            l = letters[pos]
            if l[0] > budget - (remaining - 1):  # each further letter costs at least 1
                continue
            acc.append(l)
            # even letters may repeat: allow the same position again
            rec(pos if not letter_is_odd(l) else pos + 1, remaining - 1, budget - l[0], acc)
            acc.pop()

    rec(0, word_length, -internal_degree, [])
    return out


def position_subsets(n: int, k: int):
    """All ascending k-subsets of range(n), lexicographic."""
    out = []

    def rec(start, acc):
        if len(acc) == k:
            out.append(tuple(acc))
            return
        for p in range(start, n):
            acc.append(p)
            rec(p + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def unshuffle_sign(letters, subset) -> int:
    """Koszul sign for moving the letters at `subset` positions to the front, order kept."""
    rest = [p for p in range(len(letters)) if p not in set(subset)]
    perm = list(subset) + rest
    degrees = [letter_degree(l) for l in letters]
    return koszul_sign(perm, degrees)


def set_partitions(n: int, blocks: int):
    """Partitions of range(n) into the given number of nonempty blocks.

    Blocks are ascending position tuples, listed in order of their minimal element.
    """
    out = []

    def rec(pos, acc):
        if pos == n:
            if len(acc) == blocks:
                out.append([tuple(b) for b in acc])
            return
        if len(acc) + (n - pos) < blocks:
            return
        for b in acc:
            b.append(pos)
            rec(pos + 1, acc)
            b.pop()
        if len(acc) < blocks:
            acc.append([pos])
            rec(pos + 1, acc)
            acc.pop()

    rec(0, [])
    return out


def coproduct(letters):
    """Deconcatenation into ordered pairs of nonempty complementary sub-words.

    Returns (sign, left letters, right letters) triples over all proper position subsets.
    """
    n = len(letters)
    out = []
    for k in range(1, n):
        for S in position_subsets(n, k):
            sign = unshuffle_sign(letters, S)
            inS = set(S)
            left = tuple(letters[p] for p in S)
            right = tuple(letters[p] for p in range(n) if p not in inS)
            out.append((sign, left, right))
    return out


# --- arity-indexed coefficient families -------------------------------------


@dataclass
class TaylorMap:
    """Symmetric multilinear coefficient of fixed arity: canonical word -> letter combination.

    Values are dicts letter -> polynomial coefficient; missing words evaluate to zero.
    shift is the internal-degree change from input word to output letters.
    """

    arity: int
    entries: dict = field(default_factory=dict)
    shift: int = 0

    def value(self, letters):
        """Evaluate on possibly unordered letters, folding in the canonicalization sign."""
        word, sign = canonicalize(letters)
        if sign == 0:
            return {}
        val = self.entries.get(word)
        if not val:
            return {}
        if sign == 1:
            return dict(val)
        return {l: -c for l, c in val.items()}

    def set_value(self, letters, combo):
        word, sign = canonicalize(letters)
        if sign == 0:
            raise ValueError("cannot assign on a zero word")
        combo = {l: (c if sign == 1 else -c) for l, c in combo.items() if not c.is_zero()}
        if combo:
            self.entries[word] = combo
        else:
            self.entries.pop(word, None)

    def check_shapes(self):
        for word, combo in self.entries.items():
            if len(word) != self.arity:
                raise ValueError("entry word length differs from declared arity")
            for l, _ in combo.items():
                if letter_degree(l) != word_degree(word) + self.shift:
                    raise ValueError("entry value degree violates the declared shift")


def _by_arity(taylor):
    table = {}
    for tm in taylor:
        if tm.arity in table:
            raise ValueError("duplicate arity in coefficient family")
        table[tm.arity] = tm
    return table


def _accumulate(acc: dict, letters, poly):
    word, sign = canonicalize(letters)
    if sign == 0 or poly.is_zero():
        return
    cur = acc.get(word)
    contrib = poly if sign == 1 else -poly
    acc[word] = contrib if cur is None else cur + contrib
    if acc[word].is_zero():
        del acc[word]


def _expand_blocks(acc: dict, outputs, sign: int, ring):
    """Multiply letter combinations for each block into canonical words."""
    def rec(idx, chosen, coeff):
        if coeff.is_zero():
            return
        if idx == len(outputs):
            _accumulate(acc, chosen, coeff if sign == 1 else -coeff)
            return
        for letter, c in outputs[idx].items():
            rec(idx + 1, chosen + [letter], coeff * c)

    rec(0, [], ring.one())


def extend_comorphism(taylor, word, target_length: int, ring):
    """Component of the induced co-algebra morphism on the given target word length.

    Sums over partitions of the letter positions into target_length unordered blocks;
    a block of size s is consumed by the family member of arity s.
    """
    table = _by_arity(taylor)
    letters = tuple(word.letters if isinstance(word, GradedWord) else word)
    base_sign = word.sign if isinstance(word, GradedWord) else 1
    acc: dict = {}
    degrees = [letter_degree(l) for l in letters]
    for blocks in set_partitions(len(letters), target_length):
        tms = [table.get(len(b)) for b in blocks]
        if any(t is None for t in tms):
            continue
        perm = [p for b in blocks for p in b]
        sign = base_sign * koszul_sign(perm, degrees)
        outputs = []
        for b, tm in zip(blocks, tms):
            v = tm.value(tuple(letters[p] for p in b))
            if not v:
                outputs = None
                break
            outputs.append(v)
        if outputs is None:
            continue
        _expand_blocks(acc, outputs, sign, ring)
    return acc


def extend_coderivation(taylor, base, word, target_length: int, ring):
    """Component of the co-derivation induced by `taylor` along the co-morphism `base`.

    base None means the identity morphism (non-marked blocks must then be singletons).
    Exactly one block is consumed by `taylor`; the operator's degree shift crosses the
    arguments of earlier blocks with the usual sign.
    """
    der_table = _by_arity(taylor)
    base_table = None if base is None else _by_arity(base)
    letters = tuple(word.letters if isinstance(word, GradedWord) else word)
    base_sign = word.sign if isinstance(word, GradedWord) else 1
    shift = taylor[0].shift if taylor else 0
    acc: dict = {}
    degrees = [letter_degree(l) for l in letters]
    for blocks in set_partitions(len(letters), target_length):
        for j, marked in enumerate(blocks):
            tm = der_table.get(len(marked))
            if tm is None:
                continue
            outputs = []
            ok = True
            for s, b in enumerate(blocks):
                if s == j:
                    v = tm.value(tuple(letters[p] for p in b))
                else:
                    if base_table is None:
                        if len(b) != 1:
                            ok = False
                            break
                        v = {letters[b[0]]: ring.one()}
                    else:
                        btm = base_table.get(len(b))
                        v = btm.value(tuple(letters[p] for p in b)) if btm else {}
                if not v:
                    ok = False
                    break
                outputs.append(v)
            if not ok:
                continue
            perm = [p for b in blocks for p in b]
            sign = base_sign * koszul_sign(perm, degrees)
            if shift % 2:
                crossed = sum(degrees[p] for b in blocks[:j] for p in b)
                if crossed % 2:
                    sign = -sign
            _expand_blocks(acc, outputs, sign, ring)
    return acc


def identity_taylor(res, ring):
    """The arity-1 family whose extension is the identity co-morphism."""
    ranks = list(res.ranks) if hasattr(res, "ranks") else list(res)
    tm = TaylorMap(1, {}, 0)
    for level in range(1, len(ranks) + 1):
        for idx in range(ranks[level - 1]):
            tm.entries[((level, idx),)] = {(level, idx): ring.one()}
    return [tm]


def wordsum_add(acc: dict, other: dict, scale=1):
    """In-place acc += scale * other for word -> polynomial maps."""
    for word, poly in other.items():
        contrib = poly if scale == 1 else poly * scale
        cur = acc.get(word)
        acc[word] = contrib if cur is None else cur + contrib
        if acc[word].is_zero():
            del acc[word]
    return acc


def wordsum_is_zero(ws: dict) -> bool:
    return all(p.is_zero() for p in ws.values())
