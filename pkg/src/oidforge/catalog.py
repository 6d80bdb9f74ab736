"""Closed-form algebroid constructions used as features and as oracles: the
multivector complex of a polynomial's symmetry foliation, vanishing-ideal
foliations on an odd-generator complex, and derivations of a plane curve ring."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import comb

from .brackets import LieInftyAlgebroid
from .modres import FreeModuleMap, FreeResolution, NotExact, certify_exactness
from .polyring import MonomialOrder, Poly, Ring, VectorField
from .symalg import TaylorMap


def _parity(perm) -> int:
    """Signature of a permutation given as a list of distinct sortable items."""
    inv = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                inv += 1
    return -1 if inv % 2 else 1


def _sort_sign(seq):
    """(sign, sorted tuple) for ordering an index list of odd symbols; sign 0 on repeats."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inv = 0
    for a in range(len(seq)):
        for b in range(a + 1, len(seq)):
            if seq[a] > seq[b]:
                inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(seq))


def _iterated_partial(p: Poly, var_indices) -> Poly:
    for v in var_indices:
        if p.is_zero():
            break
        p = p.derivative(v)
    return p


# --- symmetry foliation of a polynomial on the multivector complex -----------


def koszul_foliation(phi: Poly, check: bool = True) -> LieInftyAlgebroid:
    """Algebroid of vector fields annihilating `phi`, on the contraction complex
    of multivectors; n-ary tables read off the iterated partials of `phi`."""
    ring = phi.ring
    if ring.quotient is not None:
        raise ValueError("expected a free polynomial ring")
    d = ring.nvars
    if d < 2:
        raise ValueError("need at least 2 variables")
    L = d - 1
    partials = [phi.derivative(i) for i in range(d)]
    subsets = {i: list(combinations(range(d), i + 1)) for i in range(1, L + 1)}
    index = {i: {J: c for c, J in enumerate(subsets[i])} for i in subsets}
    ranks = tuple(comb(d, i + 1) for i in range(1, L + 1))
    names = {}
    for i in subsets:
        for c, J in enumerate(subsets[i]):
            names[(i, c)] = "∂[" + ",".join(ring.variables[v] for v in J) + "]"

    def contraction_column(J):
        """Insertion of the partials into one slot of a basis multivector."""
        col = {}
        for s, v in enumerate(J):
            sub = tuple(x for x in J if x != v)
            sgn = -1 if s % 2 else 1
            col[sub] = col.get(sub, ring.zero()) + ring.constant(sgn) * partials[v]
        return col

    diffs = {}
    for i in range(2, L + 1):
        rows = [[ring.zero() for _ in subsets[i]] for _ in subsets[i - 1]]
        for c, J in enumerate(subsets[i]):
            for sub, val in contraction_column(J).items():
                rows[index[i - 1][sub]][c] = val
        diffs[i] = FreeModuleMap(ring, tuple(tuple(r) for r in rows), -i, -i + 1)

    anchor_rows = [[ring.zero() for _ in subsets[1]] for _ in range(d)]
    for c, (i, j) in enumerate(subsets[1]):
        anchor_rows[i][c] = partials[j]
        anchor_rows[j][c] = -partials[i]
    anchor = FreeModuleMap(ring, tuple(tuple(r) for r in anchor_rows), -1, 0)
    res = FreeResolution(ring, ranks, diffs, anchor, names)

    def words(arity):
        def rec(start, acc):
            if len(acc) == arity:
                yield tuple(acc)
                return
            for pos in range(start, len(all_letters)):
                l = all_letters[pos]
                acc.append(l)
                yield from rec(pos if l[0] % 2 == 0 else pos + 1, acc)
                acc.pop()
        all_letters = [(lv, c) for lv in range(1, L + 1) for c in range(ranks[lv - 1])]
        yield from rec(0, [])

    tables = {}
    for n in range(2, min(d, L + 1) + 1):
        tm = TaylorMap(n, {}, 1)
        for w in words(n):
            blocks = [subsets[lv][c] for lv, c in w]
            sizes = [len(J) for J in blocks]
            # one sign per unordered slot pair, odd iff the product of the two
            # multivector sizes is even
            exp = sum(sizes[s] * sizes[t] + 1
                      for s in range(n) for t in range(s + 1, n))
            word_sign = -1 if exp % 2 else 1
            concat = [v for J in blocks for v in J]
            offsets = []
            off = 0
            for J in blocks:
                offsets.append(off)
                off += len(J)
            combo = {}
            def add_term(picks):
                coeff_vars = [blocks[t][picks[t]] for t in range(n)]
                base = _iterated_partial(phi, coeff_vars)
                if base.is_zero():
                    return
                slots = [offsets[t] + picks[t] for t in range(n)]
                rest = [p for p in range(len(concat)) if p not in set(slots)]
                front = _parity(slots + rest)
                ssign, sorted_rem = _sort_sign([concat[p] for p in rest])
                if ssign == 0:
                    return
                lvl = len(sorted_rem) - 1
                if lvl < 1 or lvl > L:
                    return
                letter = (lvl, index[lvl][sorted_rem])
                coeff = ring.constant(word_sign * front * ssign) * base
                acc = combo.get(letter, ring.zero()) + coeff
                if acc.is_zero():
                    combo.pop(letter, None)
                else:
                    combo[letter] = acc

            def rec(t, picks):
                if t == n:
                    add_term(picks)
                    return
                for s in range(len(blocks[t])):
                    picks.append(s)
                    rec(t + 1, picks)
                    picks.pop()

            rec(0, [])
            if combo:
                tm.entries[w] = combo
        if tm.entries:
            tables[n] = tm

    if check:
        certify_exactness(res)
    return LieInftyAlgebroid(res, tables)


# --- vanishing-ideal foliation on the odd-generator complex ------------------


def vanishing_ideal(phis, ring: Ring | None = None) -> LieInftyAlgebroid:
    """Algebroid of vector fields with coefficients in the ideal of the given
    generators, on the odd-symbol complex; exactness is reported, not required."""
    phis = list(phis)
    if not phis:
        raise ValueError("need at least one ideal generator")
    ring = ring or phis[0].ring
    if ring.quotient is not None:
        raise ValueError("expected a free polynomial ring")
    r = len(phis)
    d = ring.nvars
    subsets = {j: list(combinations(range(r), j)) for j in range(1, r + 1)}
    index = {j: {J: c for c, J in enumerate(subsets[j])} for j in subsets}
    ranks = tuple(comb(r, j) * d for j in range(1, r + 1))

    def letter_of(J, a):
        return (len(J), index[len(J)][J] * d + a)

    def decode(letter):
        lv, idx = letter
        return subsets[lv][idx // d], idx % d

    names = {}
    for j in subsets:
        for J in subsets[j]:
            for a in range(d):
                mu = "".join(f"μ{i + 1}" for i in J)
                names[letter_of(J, a)] = f"{mu}·∂{ring.variables[a]}"

    diffs = {}
    for j in range(2, r + 1):
        rows = [[ring.zero() for _ in range(ranks[j - 1])] for _ in range(ranks[j - 2])]
        for c in range(ranks[j - 1]):
            J, a = decode((j, c))
            for s, i in enumerate(J):
                sub = tuple(x for x in J if x != i)
                sgn = -1 if s % 2 else 1
                row = letter_of(sub, a)[1]
                rows[row][c] = rows[row][c] + ring.constant(sgn) * phis[i]
        diffs[j] = FreeModuleMap(ring, tuple(tuple(rw) for rw in rows), -j, -j + 1)

    anchor_rows = [[ring.zero() for _ in range(ranks[0])] for _ in range(d)]
    for c in range(ranks[0]):
        (i,), a = decode((1, c))
        anchor_rows[a][c] = phis[i]
    anchor = FreeModuleMap(ring, tuple(tuple(rw) for rw in anchor_rows), -1, 0)
    res = FreeResolution(ring, ranks, diffs, anchor, names)

    def words(arity):
        all_letters = [(lv, c) for lv in range(1, r + 1) for c in range(ranks[lv - 1])]

        def rec(start, acc):
            if len(acc) == arity:
                yield tuple(acc)
                return
            for pos in range(start, len(all_letters)):
                l = all_letters[pos]
                acc.append(l)
                yield from rec(pos if l[0] % 2 == 0 else pos + 1, acc)
                acc.pop()

        yield from rec(0, [])

    tables = {}
    for n in range(2, r + 2):
        tm = TaylorMap(n, {}, 1)
        for w in words(n):
            blocks = [decode(l)[0] for l in w]
            vars_ = [decode(l)[1] for l in w]
            combo = {}
            for jpos in range(n):
                others = [vars_[t] for t in range(n) if t != jpos]
                # carry the surviving slot to the front across the earlier
                # blocks (one flip per block symbol plus one per block), then
                # one flip for each later slot
                cross = sum(len(blocks[t]) + 1 for t in range(jpos)) + (n - 1 - jpos)
                tail_sign = -1 if cross % 2 else 1
                for pos, i in enumerate(blocks[jpos]):
                    base = _iterated_partial(phis[i], others)
                    if base.is_zero():
                        continue
                    mu_concat = []
                    for t in range(n):
                        if t == jpos:
                            mu_concat.extend(x for x in blocks[t] if x != i)
                        else:
                            mu_concat.extend(blocks[t])
                    ssign, sorted_mu = _sort_sign(mu_concat)
                    if ssign == 0:
                        continue
                    if not 1 <= len(sorted_mu) <= r:
                        continue
                    pos_sign = -1 if pos % 2 else 1
                    letter = letter_of(sorted_mu, vars_[jpos])
                    coeff = ring.constant(tail_sign * pos_sign * ssign) * base
                    acc = combo.get(letter, ring.zero()) + coeff
                    if acc.is_zero():
                        combo.pop(letter, None)
                    else:
                        combo[letter] = acc
            if combo:
                tm.entries[w] = combo
        if tm.entries:
            tables[n] = tm

    alg = LieInftyAlgebroid(res, tables)
    alg.exact = True
    alg.exactness_error = None
    try:
        certify_exactness(res)
    except NotExact as err:
        alg.exact = False
        alg.exactness_error = err
    return alg


# --- derivations of a plane curve ring ---------------------------------------


def _x_coeffs(p: Poly, xi: int):
    """Dense coefficient list of a polynomial that uses only variable xi."""
    out = {}
    for e, c in p.terms.items():
        if any(e[k] for k in range(len(e)) if k != xi):
            raise ValueError("polynomial must involve only the curve variable")
        out[e[xi]] = c
    deg = max(out) if out else -1
    return [out.get(k, Fraction(0)) for k in range(deg + 1)]


def _poly_from_coeffs(coeffs, ring: Ring, xi: int) -> Poly:
    terms = {}
    for k, c in enumerate(coeffs):
        if c:
            e = [0] * ring.nvars
            e[xi] = k
            terms[tuple(e)] = Fraction(c)
    return Poly(ring, terms)


def _uni_divmod(num, den):
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den) and any(num):
        while num and not num[-1]:
            num.pop()
        if len(num) < len(den):
            break
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        q[shift] = factor
        for k, c in enumerate(den):
            num[shift + k] -= factor * c
        while num and not num[-1]:
            num.pop()
    return q, num


def _uni_gcd(a, b):
    a, b = list(a), list(b)
    while any(b):
        _, rem = _uni_divmod(a, b)
        a, b = b, rem
    while a and not a[-1]:
        a.pop()
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def hyperelliptic(h: Poly) -> LieInftyAlgebroid:
    """Derivations of the coordinate ring of y^2 = 2h(x): free of rank one when
    the curve is smooth; otherwise two generators with the relation column
    (y, -g) for g = gcd(h, h') and the closed-form binary value
    ℓ2(τ,μ) = (u' - u·g'/g)·τ with u = h/g — the polynomial form of the
    classical rational expression (h'/g)τ - y(g'/g)μ, obtained by rewriting
    y·μ through the second derivation relation y·ρ(μ) = 2u·ρ(τ).  The relation
    module of a singular curve is not free (its resolution continues with
    period two), so this two-level complex is not exact and no polynomial
    table closes the higher identities over the coordinate ring —
    check_algebroid reports the obstruction witness, which maps to zero
    under the anchor."""
    src = h.ring
    try:
        xi_src = src.variables.index("x")
    except ValueError:
        raise ValueError("the curve polynomial must use a variable named x")
    coeffs = _x_coeffs(h, xi_src)
    deg = len(coeffs) - 1
    if deg < 1 or deg % 2 == 0:
        raise ValueError("need odd degree at least 1")
    if coeffs[-1] != 1:
        raise ValueError("need a monic polynomial")

    base = Ring(("y", "x"), MonomialOrder("lex"))
    yv, xv = base.gens()
    hx = _poly_from_coeffs(coeffs, base, 1)
    ring = base.quotient_ring([yv * yv - base.constant(2) * hx])
    y, x = ring.gens()
    h_q = Poly(ring, dict(hx.terms))
    hp = h_q.derivative(1)

    dcoeffs = _uni_gcd(coeffs, _x_coeffs(hx.derivative(1), 1))
    d_poly = _poly_from_coeffs(dcoeffs, ring, 1)
    smooth = len(dcoeffs) == 1

    def field(cy, cx):
        return VectorField(ring, (cy, cx))

    X = field(hp, y)  # y d/dx + h' d/dy, components ordered (d/dy, d/dx)
    if smooth:
        anchor = FreeModuleMap(ring, ((X.coeffs[0],), (X.coeffs[1],)), -1, 0)
        res = FreeResolution(ring, (1,), {}, anchor, {(1, 0): "X"})
        return LieInftyAlgebroid(res, {})

    ucoeffs, urem = _uni_divmod(coeffs, dcoeffs)
    wcoeffs, wrem = _uni_divmod(_x_coeffs(hx.derivative(1), 1), dcoeffs)
    assert not any(urem) and not any(wrem)
    u = _poly_from_coeffs(ucoeffs, ring, 1)
    w = _poly_from_coeffs(wcoeffs, ring, 1)
    Y = field(y * w, ring.constant(2) * u)
    anchor = FreeModuleMap(ring, ((X.coeffs[0], Y.coeffs[0]),
                                  (X.coeffs[1], Y.coeffs[1])), -1, 0)
    d2 = FreeModuleMap(ring, ((y,), (-d_poly,)), -2, -1)
    names = {(1, 0): "τ", (1, 1): "μ", (2, 0): "η"}
    res = FreeResolution(ring, (2, 1), {2: d2}, anchor, names)
    uprime = [k * c for k, c in enumerate(ucoeffs)][1:]
    gprime = [k * c for k, c in enumerate(dcoeffs)][1:]
    prod = [Fraction(0)] * (len(ucoeffs) + len(gprime) - 1)
    for i, a in enumerate(ucoeffs):
        for j, b in enumerate(gprime):
            prod[i + j] += a * b
    quot, rem = _uni_divmod(prod, dcoeffs)
    assert not any(rem)  # g always divides u*g'
    coeff = [Fraction(0)] * max(len(uprime), len(quot))
    for k, c in enumerate(uprime):
        coeff[k] += c
    for k, c in enumerate(quot):
        coeff[k] -= c
    val = _poly_from_coeffs(coeff, ring, 1)
    t2 = TaylorMap(2, {}, 1)
    if not val.is_zero():
        t2.entries[((1, 0), (1, 1))] = {(1, 0): val}
    return LieInftyAlgebroid(res, {2: t2} if t2.entries else {})
