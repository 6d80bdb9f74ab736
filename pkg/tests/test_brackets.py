"""Multilinear bracket tables: evaluation, verification reports, the bigraded
page calculus with its solver, and morphism checking."""

import json
import random

import pytest

from oidforge.polyring import Ring, VectorField
from oidforge.modres import (FreeModuleMap, FreeResolution, free_resolution,
                             vanishing_generators)
from oidforge.symalg import TaylorMap, enumerate_words, identity_taylor
from oidforge.brackets import (AnchorNotMorphism, LieInftyAlgebroid, LiftFailed,
                               MorphismTaylor, PageElement, algebroid_from_json,
                               algebroid_to_json, check_algebroid, check_morphism,
                               elem_add, elem_neg, elem_scale, eval_bracket,
                               eval_multilinear, jacobiator, page_D, page_solve,
                               rn_bracket)
from oidforge.construct import build_all, rescale

from helpers import random_page, tm_add, tm_eq, tm_scale

R0 = Ring(())


def _const_rank3():
    """Constant-coefficient rank-3 table over the variable-free ring."""
    anchor0 = FreeModuleMap(R0, tuple(), -1, 0)
    res3 = FreeResolution(R0, [3], {}, anchor0)
    t2 = TaylorMap(2, {}, 1)
    two = R0.constant(2)
    t2.entries[((1, 0), (1, 1))] = {(1, 2): two}
    t2.entries[((1, 0), (1, 2))] = {(1, 1): -two}
    t2.entries[((1, 1), (1, 2))] = {(1, 0): two}
    return res3, t2


def _gl2_table(ring):
    """Structure constants of the commutators of x_i d_j over two variables,
    generator order x dx, x dy, y dx, y dy."""
    t2 = TaylorMap(2, {}, 1)
    for g1 in range(4):
        for g2 in range(g1 + 1, 4):
            i, a = divmod(g1, 2)
            k, b = divmod(g2, 2)
            out = {}
            if a == k:
                key = (1, 2 * i + b)
                out[key] = out.get(key, ring.zero()) + ring.one()
            if b == i:
                key = (1, 2 * k + a)
                out[key] = out.get(key, ring.zero()) - ring.one()
            out = {l: c for l, c in out.items() if not c.is_zero()}
            if out:
                t2.entries[((1, g1), (1, g2))] = out
    return t2


# --- constant-coefficient verification --------------------------------------

def test_constant_rank3_table_passes():
    res3, t2 = _const_rank3()
    rep = check_algebroid(LieInftyAlgebroid(res3, {2: t2}))
    assert rep.ok
    assert "all checks passed" in rep.to_text()
    assert jacobiator(LieInftyAlgebroid(res3, {2: t2})).is_zero()


def test_corrupted_table_fails_jacobi_with_witness():
    res3, t2 = _const_rank3()
    bad = TaylorMap(2, {}, 1)
    bad.entries = dict(t2.entries)
    bad.entries[((1, 1), (1, 2))] = {(1, 1): R0.constant(2)}
    rep = check_algebroid(LieInftyAlgebroid(res3, {2: bad}))
    assert not rep.ok
    name, passed, witness = rep.checks[-1]
    assert "Jacobi" in name and not passed and witness is not None


def test_squared_binary_equals_twice_jacobiator():
    res3, t2 = _const_rank3()
    bad = TaylorMap(2, {}, 1)
    bad.entries = dict(t2.entries)
    bad.entries[((1, 1), (1, 2))] = {(1, 1): R0.constant(2)}
    jac = jacobiator(LieInftyAlgebroid(res3, {2: bad}))
    assert not jac.is_zero()
    rn = rn_bracket(bad, bad, [3], R0)
    doubled = {w: elem_scale(v, R0.constant(2)) for w, v in jac.entries.items()}
    assert {w: v for w, v in rn.entries.items()} == doubled


def test_report_json_round_trip():
    res3, t2 = _const_rank3()
    rep = check_algebroid(LieInftyAlgebroid(res3, {2: t2}))
    blob = json.loads(rep.to_json())
    assert blob["ok"] is True
    assert all(c["passed"] for c in blob["checks"])


# --- polynomial level-one tables --------------------------------------------

def test_gl2_table_matches_anchor_commutators(planar_res):
    ring = planar_res.ring
    t2 = _gl2_table(ring)
    alg = LieInftyAlgebroid(planar_res, {2: t2})
    fields = [planar_res.anchor_field(i) for i in range(4)]
    for g1 in range(4):
        for g2 in range(4):
            want = fields[g1].commutator(fields[g2])
            got = VectorField(ring, [ring.zero(), ring.zero()])
            for (lv, idx), c in eval_bracket(alg, 2, [(1, g1), (1, g2)]).items():
                if lv == 1:
                    got = got + fields[idx].scale(c)
            assert (want - got).is_zero(), (g1, g2)


def test_leibniz_rule_on_random_data(planar_alg):
    ring = planar_alg.res.ring
    x, y = ring.gens()
    fields = [planar_alg.res.anchor_field(i) for i in range(4)]
    rng = random.Random(3)
    for _ in range(25):
        g1, g2 = rng.randrange(4), rng.randrange(4)
        f = (ring.constant(rng.randint(-3, 3)) + rng.randint(-2, 2) * x
             + rng.randint(-2, 2) * y * y)
        lhs = eval_bracket(planar_alg, 2, [(1, g1), {(1, g2): f}])
        base = eval_bracket(planar_alg, 2, [(1, g1), (1, g2)])
        rhs = elem_add(elem_scale(base, f), {(1, g2): fields[g1].apply(f)})
        rhs = {l: c for l, c in rhs.items() if not c.is_zero()}
        assert lhs == rhs, (g1, g2, f)


def test_bracket_with_function_multiple_of_same_argument(planar_alg):
    # the bilinear part dies on a repeated generator; only the derivative
    # of the coefficient along the anchor survives
    ring = planar_alg.res.ring
    x, _ = ring.gens()
    out = eval_bracket(planar_alg, 2, [(1, 0), {(1, 0): x}])
    rho = planar_alg.res.anchor_field(0)
    assert out == {(1, 0): rho.apply(x)}


def test_graded_symmetry_on_random_data(planar_alg):
    ring = planar_alg.res.ring
    x, y = ring.gens()
    res = planar_alg.res
    rng = random.Random(5)
    for _ in range(25):
        lv1 = rng.choice([1, 1, 2])
        lv2 = rng.choice([1, 2])
        a1 = {(lv1, rng.randrange(res.rank(lv1))):
              ring.constant(rng.randint(1, 3)) + rng.randint(0, 2) * x}
        a2 = {(lv2, rng.randrange(res.rank(lv2))):
              ring.constant(rng.randint(1, 3)) + rng.randint(0, 2) * y}
        lhs = eval_bracket(planar_alg, 2, [a1, a2])
        rhs = eval_bracket(planar_alg, 2, [a2, a1])
        sign = -1 if (lv1 % 2) and (lv2 % 2) else 1
        assert lhs == (rhs if sign == 1 else elem_neg(rhs))


def test_jacobiator_vanishes_on_checked_algebroid(planar_alg):
    assert jacobiator(planar_alg).is_zero()


def test_jacobiator_rejects_anchor_violation(planar_res):
    ring = planar_res.ring
    t2 = _gl2_table(ring)
    t2.entries[((1, 0), (1, 1))] = {(1, 0): ring.one()}  # should be x dy, not x dx
    with pytest.raises(AnchorNotMorphism):
        jacobiator(LieInftyAlgebroid(planar_res, {2: t2}))


# --- page calculus -----------------------------------------------------------

def test_page_differential_squares_to_zero(planar_res):
    rng = random.Random(11)
    for trial in range(12):
        arity = rng.choice([1, 2, 3])
        shift = rng.choice([0, 1, 2])
        P = random_page(rng, planar_res, arity, shift)
        assert page_D(page_D(P)).is_zero(), (trial, arity, shift)


def test_page_solver_round_trips(planar_res):
    rng = random.Random(13)
    for trial in range(12):
        arity = rng.choice([1, 2])
        shift = rng.choice([1, 2])
        P = page_D(random_page(rng, planar_res, arity, shift))
        for seed in (None, 1):
            sol = page_solve(P, seed=seed)
            assert page_D(sol).add(P.neg()).is_zero(), (trial, seed)


def test_page_solver_zero_input(planar_res):
    Z = PageElement(planar_res, planar_res, 2, 2)
    assert page_solve(Z).is_zero()


def test_page_solver_reports_unliftable_level(planar_res):
    ring = planar_res.ring
    first_col = planar_res.d(2).column(0)
    d2_bad = FreeModuleMap(ring, tuple((row,) for row in first_col), -2, -1)
    res_bad = FreeResolution(ring, [4, 1], {2: d2_bad}, planar_res.anchor)
    missing = planar_res.d(2).column(1)
    P_bad = PageElement(res_bad, res_bad, 1, 1)
    P_bad.entries[((2, 0),)] = {(1, i): c for i, c in enumerate(missing)
                                if not c.is_zero()}
    assert page_D(P_bad).is_zero()
    with pytest.raises(LiftFailed) as exc:
        page_solve(P_bad)
    assert exc.value.level == 2


def test_differential_self_bracket_vanishes(deep_res):
    ring = deep_res.ring
    D1 = TaylorMap(1, {}, 1)
    for lv in range(2, deep_res.L + 1):
        for idx in range(deep_res.rank(lv)):
            col = deep_res.d(lv).column(idx)
            combo = {(lv - 1, j): c for j, c in enumerate(col) if not c.is_zero()}
            if combo:
                D1.entries[((lv, idx),)] = combo
    sq = rn_bracket(D1, D1, deep_res.ranks, ring)
    assert tm_eq(sq, TaylorMap(sq.arity, {}, sq.shift))


# --- graded-commutator laws for multilinear tables ---------------------------

RANKS_SMALL = [1, 1]
RSM = Ring(("x", "y"))


def _random_taylor(rng, arity, shift):
    tm = TaylorMap(arity, {}, shift)
    for m in range(-arity * 2, -arity + 1):
        for w in enumerate_words(RANKS_SMALL, arity, m):
            target = -(m + shift)
            if 1 <= target <= 2:
                c = rng.randint(-2, 2)
                if c:
                    tm.entries[w] = {(target, 0): RSM.constant(c)}
    return tm


def test_rn_bracket_graded_antisymmetry():
    rng = random.Random(17)
    for trial in range(8):
        pa, ra = rng.choice([1, 2]), rng.choice([1, 2])
        ps, rs = rng.choice([0, 1]), rng.choice([0, 1])
        P = _random_taylor(rng, pa, ps)
        Q = _random_taylor(rng, ra, rs)
        PQ = rn_bracket(P, Q, RANKS_SMALL, RSM)
        QP = rn_bracket(Q, P, RANKS_SMALL, RSM)
        sign = -1 if (ps % 2) and (rs % 2) else 1
        assert tm_eq(PQ, tm_scale(QP, RSM, -sign)), (trial, pa, ra, ps, rs)


def test_rn_bracket_graded_jacobi():
    rng = random.Random(19)
    for trial in range(6):
        degs = [rng.choice([0, 1]) for _ in range(3)]
        A = _random_taylor(rng, rng.choice([1, 2]), degs[0])
        B = _random_taylor(rng, rng.choice([1, 2]), degs[1])
        C = _random_taylor(rng, rng.choice([1, 2]), degs[2])
        lhs = rn_bracket(A, rn_bracket(B, C, RANKS_SMALL, RSM), RANKS_SMALL, RSM)
        rhs1 = rn_bracket(rn_bracket(A, B, RANKS_SMALL, RSM), C, RANKS_SMALL, RSM)
        rhs2 = rn_bracket(B, rn_bracket(A, C, RANKS_SMALL, RSM), RANKS_SMALL, RSM)
        s = -1 if (degs[0] % 2) and (degs[1] % 2) else 1
        assert tm_eq(lhs, tm_add(rhs1, tm_scale(rhs2, RSM, s))), trial


# --- morphisms ---------------------------------------------------------------

def test_identity_morphism_passes(planar_alg):
    ring = planar_alg.res.ring
    idt = identity_taylor(planar_alg.res.ranks, ring)[0]
    phi = MorphismTaylor(planar_alg, planar_alg, {0: idt})
    for cap in (0, 1, 2):
        assert check_morphism(phi, cap=cap).ok, cap


def test_rescaled_inclusion_fails_anchor_compatibility(planar_alg):
    ring = planar_alg.res.ring
    x, _ = ring.gens()
    scaled = rescale(planar_alg, x)
    idt = identity_taylor(planar_alg.res.ranks, ring)[0]
    rep = check_morphism(MorphismTaylor(scaled, planar_alg, {0: idt}), cap=0)
    assert not rep.ok
    assert [n for n, p, _ in rep.checks if not p] == ["anchor compatibility"]


def _twisted_generator_matching(src, tgt):
    """Level-wise map matching generators by their anchor image, then twisted
    by a homotopy so the bilinear compatibility needs a genuine correction."""
    ring = src.ring
    perm = {}
    for i in range(4):
        fi = src.anchor_field(i)
        for j in range(4):
            if (fi - tgt.anchor_field(j)).is_zero():
                perm[i] = j
    assert len(perm) == 4
    x, _ = ring.gens()
    homotopy = {0: {0: ring.one()}, 1: {1: x}}
    phi0 = TaylorMap(1, {}, 0)
    for i in range(4):
        val = {(1, perm[i]): ring.one()}
        for m2, c in homotopy.get(i, {}).items():
            col = tgt.d(2).column(m2)
            for j in range(4):
                if not col[j].is_zero():
                    val = elem_add(val, {(1, j): col[j] * c})
        phi0.entries[((1, i),)] = val
    for jdx in range(src.rank(2)):
        col = src.d(2).column(jdx)
        vec = [ring.zero()] * 4
        for i in range(4):
            vec[perm[i]] = vec[perm[i]] + col[i]
        cof = tgt.level_basis(2).lift(tuple(vec))
        val = {(2, k): c for k, c in enumerate(cof) if not c.is_zero()}
        for i in range(4):
            if not col[i].is_zero():
                for m2, c in homotopy.get(i, {}).items():
                    val = elem_add(val, {(2, m2): col[i] * c})
        phi0.entries[((2, jdx),)] = val
    return phi0


def test_cross_resolution_morphism_needs_page_correction(planar_alg, named_planar_alg):
    src_alg, tgt_alg = planar_alg, named_planar_alg
    src, tgt = src_alg.res, tgt_alg.res
    ring = src.ring
    phi0 = _twisted_generator_matching(src, tgt)
    assert check_morphism(MorphismTaylor(src_alg, tgt_alg, {0: phi0}), cap=0).ok

    defect = {}
    for m in range(-2, -7, -1):
        for w in enumerate_words(src.ranks, 2, m):
            a = eval_multilinear(phi0, [eval_bracket(src_alg, 2, list(w))], ring)
            b = eval_bracket(tgt_alg, 2, [phi0.value((l,)) for l in w])
            d = elem_add(a, elem_neg(b))
            if d:
                defect[w] = d
    assert defect, "the homotopy twist should leave a bilinear discrepancy"

    P = PageElement(src, tgt, 2, 1)
    P.entries.update(defect)
    assert page_D(P).is_zero()
    sol = page_solve(P)
    assert page_D(sol).add(P.neg()).is_zero()

    phi1 = TaylorMap(2, {}, 0)
    phi1.entries.update(sol.entries)
    good = MorphismTaylor(src_alg, tgt_alg, {0: phi0, 1: phi1})
    assert check_morphism(good, cap=1).ok

    phi1_flipped = TaylorMap(2, {}, 0)
    for w, v in sol.entries.items():
        phi1_flipped.entries[w] = elem_neg(v)
    wrong = MorphismTaylor(src_alg, tgt_alg, {0: phi0, 1: phi1_flipped})
    assert not check_morphism(wrong, cap=1).ok


# --- serialization -----------------------------------------------------------

def test_algebroid_json_round_trip(planar_alg):
    back = algebroid_from_json(algebroid_to_json(planar_alg))
    assert back.res.ranks == planar_alg.res.ranks
    for k, tm in planar_alg.tables.items():
        assert back.tables[k].entries == tm.entries
    assert check_algebroid(back).ok
