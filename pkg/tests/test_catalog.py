"""Ready-made families: exterior-power complexes of a single function,
vanishing ideals, and plane curves y^2 = 2 h(x)."""

import math

import pytest

from oidforge.polyring import Ring, parse_poly, poly_to_string
from oidforge.modres import NotExact, certify_exactness
from oidforge.brackets import check_algebroid, eval_bracket, jacobi_defect
from oidforge.catalog import hyperelliptic, koszul_foliation, vanishing_ideal
from oidforge.construct import restrict


# --- exterior-power families -------------------------------------------------

def test_koszul_cubic_frozen_table(koszul_cubic, ring_xyz):
    alg, R = koszul_cubic, ring_xyz
    assert alg.res.ranks == (3, 1)
    assert eval_bracket(alg, 2, [(1, 0), (1, 1)]) == {(1, 2): parse_poly("6*x", R)}
    assert eval_bracket(alg, 2, [(1, 0), (1, 2)]) == {(1, 1): parse_poly("-6*y", R)}
    assert eval_bracket(alg, 2, [(1, 1), (1, 2)]) == {(1, 0): parse_poly("6*z", R)}
    for c in range(3):
        assert eval_bracket(alg, 2, [(1, c), (2, 0)]) == {}
    assert 3 not in alg.tables
    col = alg.res.d(2).column(0)
    assert [poly_to_string(p) for p in col] == ["3*z^2", "-3*y^2", "3*x^2"]
    assert check_algebroid(alg).ok


def test_koszul_quadric_passes(koszul_quadric):
    assert check_algebroid(koszul_quadric).ok


def test_koszul_two_vars_is_abelian():
    R = Ring(("x", "y"))
    alg = koszul_foliation(parse_poly("x^3 + y^3", R))
    assert alg.res.ranks == (1,)
    assert not alg.tables.get(2, None) or not alg.tables[2].entries
    assert check_algebroid(alg).ok


@pytest.mark.parametrize("names,phi", [
    (("x", "y"), "x^3 + y^3"),
    (("x", "y", "z"), "x^3 + y^3 + z^3"),
    (("x", "y", "z", "w"), "x*y*z*w"),
])
def test_koszul_rank_ladder_is_binomial(names, phi):
    R = Ring(names)
    alg = koszul_foliation(parse_poly(phi, R), check=False)
    d = len(names)
    assert alg.res.ranks == tuple(math.comb(d, i + 1) for i in range(1, d))


def test_koszul_nonregular_function_raises():
    R = Ring(("x", "y", "z"))
    phi = parse_poly("x^2*y", R)
    with pytest.raises(NotExact):
        koszul_foliation(phi)
    # with the exactness gate off, the tables still close formally
    alg = koszul_foliation(phi, check=False)
    assert check_algebroid(alg).ok


def test_koszul_ternary_cancellation():
    # in three variables the two admissible picks cancel for any function
    R = Ring(("x", "y", "z"))
    alg = koszul_foliation(parse_poly("x^2*y^2*z^2", R), check=False)
    assert 3 not in alg.tables
    assert check_algebroid(alg).ok


def test_koszul_four_vars_has_ternary_table():
    R = Ring(("x", "y", "z", "w"))
    alg = koszul_foliation(parse_poly("x*y*z*w", R), check=False)
    assert alg.res.ranks == (6, 4, 1)
    assert 3 in alg.tables and alg.tables[3].entries
    assert check_algebroid(alg).ok


def test_restrict_koszul_to_its_level_set(koszul_cubic, ring_xyz):
    phi = parse_poly("x^3 + y^3 + z^3", ring_xyz)
    sub = restrict(koszul_cubic, [phi])
    assert sub.ring.quotient is not None
    assert check_algebroid(sub).ok
    certify_exactness(sub.res)


# --- vanishing ideals --------------------------------------------------------

def test_vanishing_pair_frozen_table():
    R = Ring(("x", "y"))
    x, y = R.gens()
    alg = vanishing_ideal([x, y])
    assert alg.res.ranks == (4, 2)
    assert alg.exact
    assert check_algebroid(alg).ok
    # letters in generator-slot order: ({0},x) ({0},y) ({1},x) ({1},y)
    assert eval_bracket(alg, 2, [(1, 0), (1, 3)]) == {}
    assert eval_bracket(alg, 2, [(1, 0), (1, 2)]) == {(1, 2): -R.one()}


def test_vanishing_mixed_degrees_frozen_table():
    R = Ring(("x", "y"))
    x, y = R.gens()
    alg = vanishing_ideal([x * x, y])
    assert alg.exact
    assert check_algebroid(alg).ok
    assert eval_bracket(alg, 2, [(1, 0), (1, 3)]) == {}
    assert eval_bracket(alg, 2, [(1, 1), (1, 2)]) == {
        (1, 0): R.one(), (1, 3): parse_poly("-2*x", R)}


def test_vanishing_single_generator_has_no_higher_tables():
    R = Ring(("x", "y"))
    x, _ = R.gens()
    alg = vanishing_ideal([x * x])
    assert alg.res.ranks == (2,)
    assert alg.exact
    assert set(alg.tables) <= {2}
    assert check_algebroid(alg).ok
    assert eval_bracket(alg, 2, [(1, 0), (1, 1)]) == {(1, 1): parse_poly("2*x", R)}


def test_vanishing_unit_ideal():
    R = Ring(("x", "y"))
    alg = vanishing_ideal([R.one()], ring=R)
    assert alg.exact
    assert check_algebroid(alg).ok


def test_vanishing_repeated_generator_flagged_inexact():
    R = Ring(("x", "y"))
    x, _ = R.gens()
    alg = vanishing_ideal([x, x])
    assert not alg.exact
    assert isinstance(alg.exactness_error, NotExact)
    assert check_algebroid(alg).ok


# --- plane curves y^2 = 2 h(x) ----------------------------------------------

def test_hyperelliptic_smooth_point():
    R = Ring(("x",))
    alg = hyperelliptic(R.var(0))
    assert alg.res.ranks == (1,)
    assert alg.ring.quotient is not None
    assert check_algebroid(alg).ok
    y, x = alg.ring.gens()
    assert y * y == alg.ring.constant(2) * x


def test_hyperelliptic_cusp_obstruction_anatomy():
    R = Ring(("x",))
    x0 = R.var(0)
    alg = hyperelliptic(x0 * x0 * x0)
    res, ring = alg.res, alg.ring
    y, x = ring.gens()
    assert res.ranks == (2, 1)
    col = res.d(2).column(0)
    assert col[0] == y and col[1] == -x * x
    assert eval_bracket(alg, 2, [(1, 0), (1, 1)]) == {(1, 0): ring.constant(-1)}
    # the defining relation holds among the anchor images
    rel = res.anchor_field(0).scale(y) + res.anchor_field(1).scale(-x * x)
    assert rel.is_zero()
    # complex + anchor clauses hold; the two-argument higher identity fails
    rep = check_algebroid(alg)
    assert not rep.ok
    names = {n: (p, w) for n, p, w in rep.checks}
    assert names["complex d.d = 0 and anchor.d = 0"][0]
    assert names["anchor is a bracket morphism"][0]
    passed, witness = names["higher Jacobi, 2 argument(s)"]
    assert not passed
    _, wval = witness
    assert wval == {(1, 0): parse_poly("-4*x^2", ring),
                    (1, 1): parse_poly("2*x*y", ring)}
    assert jacobi_defect(alg, 2, ((1, 0), (2, 0))) == wval
    assert jacobi_defect(alg, 2, ((1, 1), (2, 0))) == {
        (1, 0): parse_poly("-4*y", ring), (1, 1): parse_poly("4*x^2", ring)}
    assert jacobi_defect(alg, 2, ((2, 0), (2, 0))) == {}
    # the defect is anchored to zero: it lives in the non-resolved directions
    fld = (res.anchor_field(0).scale(wval[(1, 0)])
           + res.anchor_field(1).scale(wval[(1, 1)]))
    assert fld.is_zero()


def test_hyperelliptic_general_singular_closed_form():
    # h = x^3 (x-1)^2: the canonical binary value is (1 - x) tau
    R = Ring(("x",))
    x0 = R.var(0)
    alg = hyperelliptic(x0 ** 5 - 2 * x0 ** 4 + x0 ** 3)
    ring = alg.ring
    y, x = ring.gens()
    assert alg.res.ranks == (2, 1)
    col = alg.res.d(2).column(0)
    assert col[0] == y and col[1] == -(x ** 3 - x ** 2)
    assert eval_bracket(alg, 2, [(1, 0), (1, 1)]) == {(1, 0): ring.one() - x}
    names = {n: p for n, p, _ in check_algebroid(alg).checks}
    assert names["complex d.d = 0 and anchor.d = 0"]
    assert names["anchor is a bracket morphism"]
