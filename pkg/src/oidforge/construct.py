"""Construction of the full bracket hierarchy on an exact resolution: binary
bracket with corrector, higher brackets by obstruction lifting, the length-2
special case, rescaling by a function, and restriction to an invariant ideal."""

from __future__ import annotations

from fractions import Fraction

from .brackets import (AnchorNotMorphism, LieInftyAlgebroid, PageElement,
                       compose_arity, elem_add, elem_is_zero, elem_neg, elem_scale,
                       eval_bracket, jacobi_defect, page_D, page_from_defect,
                       page_solve)
from .modres import FreeModuleMap, FreeResolution
from .polyring import Poly, groebner, normal_form
from .symalg import TaylorMap, enumerate_words


class ClosednessViolated(Exception):
    """An obstruction page failed to be closed under the total differential."""

    def __init__(self, arity_step: int, message: str | None = None):
        self.arity_step = arity_step
        super().__init__(message or f"obstruction at step {arity_step} is not closed")


class NotLieRinehartIdeal(Exception):
    """The ideal is not preserved by the anchor image; carries a witness."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"ideal not preserved: {witness}")


def build_binary(res: FreeResolution) -> TaylorMap:
    """Binary bracket: anchor-commutator lifts on top generators, zero on deeper
    generators, then a corrector supported on lower columns so that the unary
    differential is a derivation of the result."""
    ring = res.ring
    r1 = res.rank(1)
    table = TaylorMap(2, {}, 1)
    if r1:
        basis = res.level_basis(1)
        lifts = {}
        for i in range(r1):
            for j in range(r1):
                if i == j:
                    continue
                comm = res.anchor_field(i).commutator(res.anchor_field(j))
                cof = basis.lift(tuple(comm.coeffs))
                if cof is None:
                    raise AnchorNotMorphism(((1, i), (1, j)))
                lifts[(i, j)] = cof
        half = ring.constant(Fraction(1, 2))
        for i in range(r1):
            for j in range(i + 1, r1):
                combo = {}
                for k in range(r1):
                    u = half * (lifts[(i, j)][k] - lifts[(j, i)][k])
                    if not u.is_zero():
                        combo[(1, k)] = u
                if combo:
                    table.entries[((1, i), (1, j))] = combo
    naive = LieInftyAlgebroid(res, {2: table})
    entries = {}
    for m in range(-2, -res.L - 3, -1):
        for w in enumerate_words(res.ranks, 2, m):
            val = jacobi_defect(naive, 2, w)
            if val and not elem_is_zero(val):
                entries[w] = elem_neg(val)
    P = page_from_defect(res, 2, 2, entries)
    if not page_D(P).is_zero():
        raise ClosednessViolated(2)
    tau = page_solve(P)
    out = TaylorMap(2, {}, 1)
    for w, v in table.entries.items():
        out.entries[w] = dict(v)
    for w, v in tau.entries.items():
        merged = elem_add(out.entries.get(w, {}), v)
        if merged:
            out.entries[w] = merged
        else:
            out.entries.pop(w, None)
    return out


def maurer_obstruction(alg: LieInftyAlgebroid, n: int) -> PageElement:
    """Minus the sum of l_i ∘ l_j over ordered pairs with i + j = n + 2 and both
    at least binary: the defect the (n+1)-ary bracket must bound."""
    res = alg.res
    entries = {}
    arity = n + 1
    for m in range(-arity, -res.L - 3, -1):
        for w in enumerate_words(res.ranks, arity, m):
            acc: dict = {}
            for i in range(2, n + 1):
                j = n + 2 - i
                if j < 2:
                    continue
                acc = elem_add(acc, compose_arity(alg, i, j, w))
            if acc and not elem_is_zero(acc):
                entries[w] = elem_neg(acc)
    return page_from_defect(res, arity, 2, entries)


def build_all(res: FreeResolution, max_arity: int | None = None,
              seed=None, top_lie: bool = False) -> LieInftyAlgebroid:
    """Full hierarchy: unary = resolution differential, binary from build_binary,
    then one obstruction lift per arity up to the depth bound L + 1.

    top_lie: the caller asserts the binary bracket already satisfies Jacobi on
    the outermost level; every higher bracket is then required to vanish on
    words made solely of outermost letters, and a violation raises.
    """
    K = res.L + 1
    cap = K if max_arity is None else min(max_arity, K)
    tables = {}
    if cap >= 2:
        tables[2] = build_binary(res)
    alg = LieInftyAlgebroid(res, tables)
    for n in range(2, cap):
        P = maurer_obstruction(alg, n)
        if not page_D(P).is_zero():
            raise ClosednessViolated(n)
        nxt = page_solve(P, seed=seed)
        tm = TaylorMap(n + 1, {}, 1)
        for w, v in nxt.entries.items():
            tm.entries[w] = v
        if tm.entries:
            tables[n + 1] = tm
        alg = LieInftyAlgebroid(res, tables)
    if top_lie:
        for k, tm in tables.items():
            if k >= 3 and any(all(l[0] == 1 for l in w) for w in tm.entries):
                raise ClosednessViolated(
                    k, f"arity-{k} bracket does not vanish on outer-level words")
    alg.partial = cap < K
    return alg


def nabla_component(t2: TaylorMap, r1: int, r2: int):
    """The connection-like piece of the binary table pairing top and level-2 slots."""
    out = {}
    for i in range(r1):
        for m in range(r2):
            val = t2.value(((1, i), (2, m)))
            if val:
                out[(i, m)] = val
    return out


def build_lie2(res: FreeResolution, seed=None):
    """Length-2 case: returns (binary table including its connection part, ternary
    table) with the three closing identities verified exactly."""
    if res.L != 2:
        raise ValueError("length-2 construction needs a depth-2 resolution")
    alg = build_all(res, seed=seed)
    t2 = alg.tables[2]
    t3 = alg.tables.get(3, TaylorMap(3, {}, 1))
    # (a) the unary map is a derivation of the binary bracket
    for m in range(-2, -res.L - 3, -1):
        for w in enumerate_words(res.ranks, 2, m):
            if not elem_is_zero(jacobi_defect(alg, 2, w)):
                raise ClosednessViolated(2)
    # (b) ternary identity on three top slots, (c) on two top slots and a deep slot
    for m in (-3, -4):
        for w in enumerate_words(res.ranks, 3, m):
            if not elem_is_zero(jacobi_defect(alg, 3, w)):
                raise ClosednessViolated(3)
    return t2, t3


def rescale(alg: LieInftyAlgebroid, chi: Poly) -> LieInftyAlgebroid:
    """Twist by a function: anchor gets chi * rho; the binary bracket gains the
    derivative terms of chi; arity k >= 3 scales by chi^(k-1)."""
    res = alg.res
    ring = res.ring
    new_anchor_rows = tuple(tuple(chi * p for p in row) for row in res.anchor.matrix)
    new_anchor = FreeModuleMap(ring, new_anchor_rows, -1, 0)
    new_res = FreeResolution(ring, res.ranks, res.diffs, new_anchor,
                             res.generator_names)
    tables = {}
    t2 = TaylorMap(2, {}, 1)
    letters = [(level, idx) for level in range(1, res.L + 1)
               for idx in range(res.rank(level))]
    for a_pos, la in enumerate(letters):
        for lb in letters[a_pos:]:
            if la == lb and la[0] % 2 == 1:
                continue
            base = eval_bracket(alg, 2, [la, lb])
            combo = elem_scale(base, chi)
            if la[0] == 1:
                dchi = res.anchor_field(la[1]).apply(chi)
                if not dchi.is_zero():
                    combo = elem_add(combo, {lb: dchi})
            if lb[0] == 1:
                dchi = res.anchor_field(lb[1]).apply(chi)
                if not dchi.is_zero():
                    sign = -1 if (la[0] % 2) and (lb[0] % 2) else 1
                    combo = elem_add(combo, {la: sign * dchi})
            combo = {l: c for l, c in combo.items() if not c.is_zero()}
            if combo:
                t2.set_value((la, lb), combo)
    if t2.entries:
        tables[2] = t2
    for k, tm in alg.tables.items():
        if k < 3:
            continue
        power = chi ** (k - 1)
        out = TaylorMap(k, {}, 1)
        for w, v in tm.entries.items():
            nv = elem_scale(v, power)
            if nv:
                out.entries[w] = nv
        if out.entries:
            tables[k] = out
    return LieInftyAlgebroid(new_res, tables)


def restrict(alg: LieInftyAlgebroid, ideal_gens) -> LieInftyAlgebroid:
    """Quotient the coefficients by an anchor-invariant ideal; verifies invariance
    by normal-form membership and reduces every table into the quotient ring."""
    res = alg.res
    ring = res.ring
    if ring.quotient is not None:
        raise ValueError("restriction starts from a free coefficient ring")
    if not ideal_gens:
        raise ValueError("need at least one ideal generator")
    basis = groebner(list(ideal_gens), ring.order)
    for j in range(res.rank(1)):
        for g in ideal_gens:
            val = res.anchor_field(j).apply(g)
            nf = normal_form(val, basis, ring.order)
            if not nf.is_zero():
                raise NotLieRinehartIdeal(((1, j), g, nf))
    qring = ring.quotient_ring(ideal_gens)

    def reduce_poly(p: Poly) -> Poly:
        return Poly(qring, dict(p.terms))

    def reduce_map(m: FreeModuleMap) -> FreeModuleMap:
        rows = tuple(tuple(reduce_poly(p) for p in row) for row in m.matrix)
        return FreeModuleMap(qring, rows, m.source_deg, m.target_deg)

    new_anchor = reduce_map(res.anchor)
    new_diffs = {i: reduce_map(m) for i, m in res.diffs.items()}
    new_res = FreeResolution(qring, res.ranks, new_diffs, new_anchor,
                             res.generator_names)
    tables = {}
    for k, tm in alg.tables.items():
        out = TaylorMap(k, {}, 1)
        for w, v in tm.entries.items():
            nv = {l: reduce_poly(c) for l, c in v.items()}
            nv = {l: c for l, c in nv.items() if not c.is_zero()}
            if nv:
                out.entries[w] = nv
        if out.entries:
            tables[k] = out
    return LieInftyAlgebroid(new_res, tables)
