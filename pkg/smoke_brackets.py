import random
from fractions import Fraction

from oidforge.polyring import Ring, VectorField
from oidforge.modres import free_resolution, vanishing_generators, certify_exactness
from oidforge.symalg import TaylorMap, enumerate_words
from oidforge.brackets import (AnchorNotMorphism, LieInftyAlgebroid, LiftFailed,
                               PageElement, Report, algebroid_from_json,
                               algebroid_to_json, check_algebroid, elem_add,
                               elem_is_zero, elem_neg, elem_scale, eval_bracket,
                               jacobi_defect, jacobiator, page_D, page_from_defect,
                               page_solve, rn_bracket)

# --- constant-coefficient Lie algebra (rank 3, one level) -------------------
R0 = Ring([])  # no variables: purely algebraic test bed
from oidforge.modres import FreeModuleMap, FreeResolution
anchor0 = FreeModuleMap(R0, tuple(), -1, 0)  # zero rows: anchor lands in Der(QQ) = 0
res3 = FreeResolution(R0, [3], {}, anchor0)

t2 = TaylorMap(2, {}, 1)
two = R0.constant(2)
t2.entries[((1, 0), (1, 1))] = {(1, 2): two}
t2.entries[((1, 0), (1, 2))] = {(1, 1): -two}
t2.entries[((1, 1), (1, 2))] = {(1, 0): two}
alg3 = LieInftyAlgebroid(res3, {2: t2})
rep = check_algebroid(alg3)
print(rep.to_text())
assert rep.ok
jac = jacobiator(alg3)
assert jac.is_zero()

# corrupt the structure constants -> Jacobi failure with witness
# (send [e2,e3] to e2 so a double bracket no longer repeats a letter)
t2bad = TaylorMap(2, {}, 1)
t2bad.entries = dict(t2.entries)
t2bad.entries[((1, 1), (1, 2))] = {(1, 1): two}
repbad = check_algebroid(LieInftyAlgebroid(res3, {2: t2bad}))
assert not repbad.ok
assert "Jacobi" in repbad.checks[-1][0]
print("negative control:", repbad.checks[-1][0], "failed as expected")

# --- polynomial fixture: vanishing ideal of origin in QQ^2 ------------------
R = Ring(["x", "y"])
x, y = R.gens()
res = free_resolution(vanishing_generators([x, y]))
assert res.ranks == (4, 2)
ring = R

# level-1 commutator table: generators x dx, x dy, y dx, y dy
field = {i: res.anchor_field(i) for i in range(4)}
lt2 = TaylorMap(2, {}, 1)


# known gl2 structure: [E_ia, E_kb] = delta_ak E_ib - delta_bi E_ka with E_ia = x_i d_a
# generator order: 0=(i=0,a=0) 1=(0,1) 2=(1,0) 3=(1,1)
def gl_bracket(g1, g2):
    i, a = divmod(g1, 2)
    k, b = divmod(g2, 2)
    out = {}
    if a == k:
        key = (1, 2 * i + b)
        out[key] = out.get(key, R.zero()) + R.one()
    if b == i:
        key = (1, 2 * k + a)
        out[key] = out.get(key, R.zero()) - R.one()
    return {l: c for l, c in out.items() if not c.is_zero()}


for g1 in range(4):
    for g2 in range(g1 + 1, 4):
        combo = gl_bracket(g1, g2)
        if combo:
            lt2.entries[((1, g1), (1, g2))] = combo

# oracle: the table matches commutators of the anchor fields
for g1 in range(4):
    for g2 in range(4):
        want = field[g1].commutator(field[g2])
        got = VectorField(R, [R.zero(), R.zero()])
        for (lv, idx), c in eval_bracket(LieInftyAlgebroid(res, {2: lt2}), 2,
                                         [(1, g1), (1, g2)]).items():
            if lv == 1:
                got = got + field[idx].scale(c)
        assert (want - got).is_zero(), (g1, g2)
print("gl2 commutator table matches anchor commutators")

alg_partial = LieInftyAlgebroid(res, {2: lt2})

# Leibniz identity: l2(x, f*y) = f*l2(x,y) + rho(x)[f]*y for level-1 x
rng = random.Random(3)
for _ in range(25):
    g1, g2 = rng.randrange(4), rng.randrange(4)
    f = R.constant(rng.randint(-3, 3)) + rng.randint(-2, 2) * x + rng.randint(-2, 2) * y * y
    lhs = eval_bracket(alg_partial, 2, [(1, g1), {(1, g2): f}])
    base = eval_bracket(alg_partial, 2, [(1, g1), (1, g2)])
    rhs = elem_add(elem_scale(base, f), {(1, g2): field[g1].apply(f)})
    rhs = {l: c for l, c in rhs.items() if not c.is_zero()}
    assert lhs == rhs, (g1, g2, f)
print("Leibniz identity holds on random data")

# graded symmetry including anchor terms and a level-2 slot
for _ in range(25):
    lv1 = rng.choice([1, 1, 2])
    lv2 = rng.choice([1, 2])
    a1 = {(lv1, rng.randrange(res.rank(lv1))): R.constant(rng.randint(1, 3)) + rng.randint(0, 2) * x}
    a2 = {(lv2, rng.randrange(res.rank(lv2))): R.constant(rng.randint(1, 3)) + rng.randint(0, 2) * y}
    lhs = eval_bracket(alg_partial, 2, [a1, a2])
    rhs = eval_bracket(alg_partial, 2, [a2, a1])
    sign = -1 if (lv1 % 2) and (lv2 % 2) else 1
    assert lhs == (rhs if sign == 1 else elem_neg(rhs)), (a1, a2, lhs, rhs)
print("graded symmetry holds")

# --- page machinery ---------------------------------------------------------


def random_elem(level, rnk, depth=1):
    out = {}
    for idx in range(rnk):
        c = rng.randint(-2, 2)
        d1 = rng.randint(-1, 1)
        if c or d1:
            out[(level, idx)] = R.constant(c) + d1 * x
    return out


def random_page(arity, shift, with_colzero):
    P = PageElement(res, res, arity, shift)
    for m in range(-arity, -arity * 2 - 1, -1):
        level = -m - shift
        for w in enumerate_words(res.ranks, arity, m):
            if 1 <= level <= res.L:
                e = random_elem(level, res.rank(level))
                if e:
                    P.entries[w] = e
            elif level == 0 and with_colzero:
                combo = random_elem(1, res.rank(1))
                vf = VectorField(R, [R.zero(), R.zero()])
                for (lv, idx), c in combo.items():
                    vf = vf + field[idx].scale(c)
                if not vf.is_zero():
                    P.colzero[w] = vf
    return P.prune()


for trial in range(12):
    arity = rng.choice([1, 2, 3])
    shift = rng.choice([0, 1, 2])
    P = random_page(arity, shift, with_colzero=True)
    DD = page_D(page_D(P))
    assert DD.is_zero(), (trial, arity, shift)
print("page_D squares to zero on random pages")

cert = certify_exactness(res)
for trial in range(12):
    arity = rng.choice([1, 2])
    shift = rng.choice([1, 2])
    R0p = random_page(arity, shift, with_colzero=True)
    P = page_D(R0p)
    sol = page_solve(P, seed=None)
    assert page_D(sol).add(P.neg()).is_zero(), trial
    sol1 = page_solve(P, seed=1)
    assert page_D(sol1).add(P.neg()).is_zero(), trial
print("page_solve round-trips (default and seeded)")

# solve with zero input gives zero
Z = PageElement(res, res, 2, 2)
assert page_solve(Z).is_zero()

# LiftFailed: corrupt the resolution by dropping one syzygy column, then ask the
# solver to absorb the missing syzygy
first_col = res.d(2).column(0)
d2_bad = FreeModuleMap(R, tuple((row,) for row in first_col), -2, -1)
res_bad = FreeResolution(R, [4, 1], {2: d2_bad}, res.anchor)
missing = res.d(2).column(1)  # (0, y, 0, -x): a syzygy the corrupt level cannot reach
P_bad = PageElement(res_bad, res_bad, 1, 1)
P_bad.entries[((2, 0),)] = {(1, i): c for i, c in enumerate(missing) if not c.is_zero()}
assert page_D(P_bad).is_zero()  # still closed: anchor kills it and no vertical room
try:
    page_solve(P_bad)
    raise SystemExit("expected LiftFailed")
except LiftFailed as e:
    assert e.level == 2
    print("LiftFailed raised at level", e.level)

# --- RN bracket laws on random multilinear tables ---------------------------
ranks_small = [1, 1]


def random_taylor(arity, shift):
    tm = TaylorMap(arity, {}, shift)
    for m in range(-arity * 2, -arity + 1):
        for w in enumerate_words(ranks_small, arity, m):
            target = -(m + shift)
            if 1 <= target <= 2:
                c = rng.randint(-2, 2)
                if c:
                    tm.entries[w] = {(target, 0): R.constant(c)}
    return tm


def tm_eq(A, B):
    keys = set(A.entries) | set(B.entries)
    for w in keys:
        va = A.entries.get(w, {})
        vb = B.entries.get(w, {})
        if elem_add(va, elem_neg(vb)):
            return False
    return True


def tm_scale(A, s):
    out = TaylorMap(A.arity, {}, A.shift)
    for w, v in A.entries.items():
        out.entries[w] = elem_scale(v, R.constant(s))
    return out


def tm_add(A, B):
    out = TaylorMap(A.arity, {}, A.shift)
    for w in set(A.entries) | set(B.entries):
        v = elem_add(A.entries.get(w, {}), B.entries.get(w, {}))
        if v:
            out.entries[w] = v
    return out


for trial in range(8):
    pa, ra = rng.choice([1, 2]), rng.choice([1, 2])
    ps, rs = rng.choice([0, 1]), rng.choice([0, 1])
    P = random_taylor(pa, ps)
    Q = random_taylor(ra, rs)
    PQ = rn_bracket(P, Q, ranks_small, R)
    QP = rn_bracket(Q, P, ranks_small, R)
    # graded antisymmetry: [P,Q] = -(-1)^{|P||Q|}[Q,P]
    sign = -1 if (ps % 2) and (rs % 2) else 1
    assert tm_eq(PQ, tm_scale(QP, -sign)), (trial, pa, ra, ps, rs)
print("RN graded antisymmetry holds")

for trial in range(6):
    degs = [rng.choice([0, 1]) for _ in range(3)]
    A = random_taylor(rng.choice([1, 2]), degs[0])
    B = random_taylor(rng.choice([1, 2]), degs[1])
    C = random_taylor(rng.choice([1, 2]), degs[2])
    lhs = rn_bracket(A, rn_bracket(B, C, ranks_small, R), ranks_small, R)
    rhs1 = rn_bracket(rn_bracket(A, B, ranks_small, R), C, ranks_small, R)
    rhs2 = rn_bracket(B, rn_bracket(A, C, ranks_small, R), ranks_small, R)
    s = -1 if (degs[0] % 2) and (degs[1] % 2) else 1
    rhs = tm_add(rhs1, tm_scale(rhs2, s))
    assert tm_eq(lhs, rhs), trial
print("RN graded Jacobi holds")

# --- serialization round trip ----------------------------------------------
blob = algebroid_to_json(alg_partial)
back = algebroid_from_json(blob)
assert back.res.ranks == res.ranks
assert back.tables[2].entries == lt2.entries
print("algebroid json round-trip ok")

print("ALL BRACKETS SMOKE OK")
