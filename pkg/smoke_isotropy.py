"""Smoke checks for pointwise evaluation, isotropy Lie algebras, and the
regularity/minimality predicates, against hand-computed commutator oracles."""

from fractions import Fraction

from oidforge.polyring import Ring, parse_poly
from oidforge.modres import FreeModuleMap, FreeResolution, certify_exactness, free_resolution
from oidforge.brackets import check_algebroid, eval_bracket
from oidforge.construct import build_all, restrict
from oidforge.catalog import koszul_foliation, vanishing_ideal
from oidforge.isotropy import (
    IsotropyAlgebra, is_regular, isotropy_lie_algebra, kernel_basis,
    matrix_rank, minimality_at, point_data, rref, solve_in_span, specialize,
)

F = Fraction


def planar_vanishing_fields():
    """Vector fields on the plane vanishing at the origin: generators
    y d/dy, x d/dy, y d/dx, x d/dx with the two evident relations."""
    R = Ring(("x", "y"))
    x, y = R.var(0), R.var(1)
    z = R.zero()
    anchor = FreeModuleMap(R, ((z, z, y, x), (y, x, z, z)), -1, 0)
    d2 = FreeModuleMap(R, ((x, z), (-y, z), (z, x), (z, -y)), -2, -1)
    names = {(1, 0): "y∂y", (1, 1): "x∂y", (1, 2): "y∂x", (1, 3): "x∂x"}
    res = FreeResolution(R, (4, 2), {2: d2}, anchor, names)
    certify_exactness(res)
    return build_all(res)


def test_linear_algebra_helpers():
    red, piv = rref([(0, 2, 4), (1, 1, 1), (2, 2, 2)])
    assert red == ((F(1), F(0), F(-1)), (F(0), F(1), F(2))), red
    assert piv == (0, 1)
    ker = kernel_basis([(0, 2, 4), (1, 1, 1)], 3)
    assert ker == [(F(1), F(-2), F(1))], ker
    assert matrix_rank([(1, 2), (2, 4)]) == 1
    assert solve_in_span([(1, 0, 1), (0, 1, 1)], (2, 3, 5)) == (F(2), F(3))
    assert solve_in_span([(1, 0, 1)], (0, 1, 0)) is None
    assert solve_in_span([], (0, 0)) == ()
    assert solve_in_span([], (1, 0)) is None
    print("linear algebra helpers ok")


def test_point_validation():
    alg = planar_vanishing_fields()
    try:
        point_data(alg.res, (1,))
    except ValueError:
        pass
    else:
        raise AssertionError("short point accepted")
    pd = point_data(alg.res, ("1/2", 3))
    assert pd.point == (F(1, 2), F(3))
    assert pd.anchor == ((F(0), F(0), F(3), F(1, 2)),
                         (F(3), F(1, 2), F(0), F(0)))
    print("point validation ok")


def test_planar_origin_gl2():
    alg = planar_vanishing_fields()
    assert not is_regular(alg, (0, 0))
    iso = isotropy_lie_algebra(alg, (0, 0))
    assert iso.dim == 4
    assert iso.image == ()
    assert iso.reps == (
        (F(1), F(0), F(0), F(0)), (F(0), F(1), F(0), F(0)),
        (F(0), F(0), F(1), F(0)), (F(0), F(0), F(0), F(1)))
    # direct commutators of the named fields:
    #   [y∂y, x∂y] = -x∂y     [y∂y, y∂x] = y∂x      [y∂y, x∂x] = 0
    #   [x∂y, y∂x] = x∂x - y∂y
    #   [x∂y, x∂x] = -x∂y     [y∂x, x∂x] = y∂x
    assert iso.bracket(0, 1) == (F(0), F(-1), F(0), F(0))
    assert iso.bracket(0, 2) == (F(0), F(0), F(1), F(0))
    assert iso.bracket(0, 3) == (F(0),) * 4
    assert iso.bracket(1, 2) == (F(-1), F(0), F(0), F(1))
    assert iso.bracket(1, 3) == (F(0), F(-1), F(0), F(0))
    assert iso.bracket(2, 3) == (F(0), F(0), F(1), F(0))
    assert iso.bracket(1, 0) == (F(0), F(1), F(0), F(0))
    assert iso.bracket(2, 2) == (F(0),) * 4

    minimal, spec = minimality_at(alg, (0, 0))
    assert minimal
    assert spec.res.ranks == (4, 2)
    assert spec.res.ring.nvars == 0
    assert spec.res.d(2).is_zero()
    report = check_algebroid(spec)
    assert report.ok, report.to_text()
    # the specialized binary table reproduces the structure constants
    v = eval_bracket(spec, 2, [(1, 1), (1, 2)])
    assert v == {(1, 0): spec.res.ring.constant(-1),
                 (1, 3): spec.res.ring.constant(1)}, v
    print("planar fields at origin: gl(2) structure ok")


def test_planar_regular_point():
    alg = planar_vanishing_fields()
    assert is_regular(alg, (1, 0))
    assert is_regular(alg, (1, 1))
    iso = isotropy_lie_algebra(alg, (1, 0))
    assert iso.dim == 0 and iso.structure == {}
    minimal, spec = minimality_at(alg, (1, 0))
    assert not minimal and spec is None
    spec = specialize(alg, (1, 0))
    assert spec.res.ranks == (2, 2)
    report = check_algebroid(spec)
    assert report.ok, report.to_text()
    print("planar fields at a regular point ok")


def test_koszul_quadric_points():
    R = Ring(("x", "y", "z"))
    alg = koszul_foliation(parse_poly("x^2 + y^2 + z^2", R))
    assert not is_regular(alg, (0, 0, 0))
    iso = isotropy_lie_algebra(alg, (0, 0, 0))
    assert iso.dim == 3
    # rotation algebra on the pair fields e1 = ∂(xy), e2 = ∂(xz), e3 = ∂(yz)
    assert iso.bracket(0, 1) == (F(0), F(0), F(2))
    assert iso.bracket(0, 2) == (F(0), F(-2), F(0))
    assert iso.bracket(1, 2) == (F(2), F(0), F(0))
    minimal, spec = minimality_at(alg, (0, 0, 0))
    assert minimal and spec.res.ranks == (3, 1)
    report = check_algebroid(spec)
    assert report.ok, report.to_text()

    assert is_regular(alg, (1, 0, 0))
    minimal, spec = minimality_at(alg, (1, 0, 0))
    assert not minimal and spec is None
    spec = specialize(alg, (1, 0, 0))
    assert spec.res.ranks == (1, 1)
    assert check_algebroid(spec).ok
    assert isotropy_lie_algebra(alg, (1, 0, 0)).dim == 0
    print("koszul quadric isotropy ok")


def test_restricted_quadric_origin():
    R = Ring(("x", "y", "z"))
    phi = parse_poly("x^2 + y^2 + z^2", R)
    alg = restrict(koszul_foliation(phi), [phi])
    # points must satisfy the quotient relation
    try:
        specialize(alg, (1, 0, 0))
    except ValueError:
        pass
    else:
        raise AssertionError("off-surface point accepted")
    iso = isotropy_lie_algebra(alg, (0, 0, 0))
    assert iso.dim == 3
    assert iso.bracket(0, 1) == (F(0), F(0), F(2))
    assert iso.bracket(0, 2) == (F(0), F(-2), F(0))
    assert iso.bracket(1, 2) == (F(2), F(0), F(0))
    print("restricted quadric isotropy ok")


def test_single_generator_line():
    R = Ring(("x",))
    alg = vanishing_ideal([R.var(0)])
    assert alg.res.L == 1
    assert is_regular(alg, (1,))
    spec = specialize(alg, (1,))
    assert spec.res.ranks == (0,)
    assert check_algebroid(spec).ok
    assert not is_regular(alg, (0,))
    iso = isotropy_lie_algebra(alg, (0,))
    assert iso.dim == 1 and iso.structure == {}
    minimal, spec = minimality_at(alg, (0,))
    assert minimal and spec.res.ranks == (1,)
    print("single generator on the line ok")


def test_mixed_kernel_image():
    # y∂y, x∂y, z^2 ∂z on 3-space: at (1,0,0) the kernel is 2-dimensional
    # but the differential only fills one direction
    R = Ring(("x", "y", "z"))
    x, y, zz = R.var(0), R.var(1), R.var(2)
    z = R.zero()
    anchor = FreeModuleMap(R, ((z, z, z), (y, x, z), (z, z, zz * zz)), -1, 0)
    d2 = FreeModuleMap(R, ((x,), (-y,), (z,)), -2, -1)
    res = FreeResolution(R, (3, 1), {2: d2}, anchor, None)
    certify_exactness(res)
    alg = build_all(res)
    assert check_algebroid(alg).ok

    assert not is_regular(alg, (1, 0, 0))
    iso = isotropy_lie_algebra(alg, (1, 0, 0))
    assert iso.dim == 1 and iso.structure == {}
    assert iso.image == ((F(1), F(0), F(0)),)
    assert iso.reps == ((F(0), F(0), F(1)),)
    # class coordinates ignore changes of representative by image vectors
    assert iso.class_coords((0, 0, 1)) == (F(1),)
    assert iso.class_coords((5, 0, 1)) == (F(1),)
    assert iso.class_coords((1, 0, 0)) == (F(0),)
    assert iso.class_coords((0, 1, 0)) is None

    spec = specialize(alg, (1, 0, 0))
    assert spec.res.ranks == (2, 1)
    assert check_algebroid(spec).ok
    # the bracket descends: values on kernel classes stay inside the image span
    v = eval_bracket(spec, 2, [(1, 0), (1, 1)])
    vec = [v.get((1, j), spec.res.ring.zero()).constant_value() for j in range(2)]
    im_col = [spec.res.d(2).matrix[j][0].constant_value() for j in range(2)]
    assert solve_in_span([tuple(im_col)], tuple(vec)) is not None
    print("mixed kernel/image point ok")


def test_presentation_invariance():
    R = Ring(("x", "y", "z"))
    phi = parse_poly("x^2 + y^2 + z^2", R)
    alg1 = koszul_foliation(phi)
    gens = [alg1.res.anchor_field(j) for j in range(alg1.res.rank(1))]
    res2 = free_resolution(gens, ring=R)
    certify_exactness(res2)
    alg2 = build_all(res2)
    for pt in ((0, 0, 0), (1, 0, 0), (1, 2, 2)):
        assert is_regular(alg1, pt) == is_regular(alg2, pt), pt
        i1 = isotropy_lie_algebra(alg1, pt)
        i2 = isotropy_lie_algebra(alg2, pt)
        assert i1.dim == i2.dim, (pt, i1.dim, i2.dim)
    assert isotropy_lie_algebra(alg2, (0, 0, 0)).dim == 3
    print("presentation invariance ok")


if __name__ == "__main__":
    test_linear_algebra_helpers()
    test_point_validation()
    test_planar_origin_gl2()
    test_planar_regular_point()
    test_koszul_quadric_points()
    test_restricted_quadric_origin()
    test_single_generator_line()
    test_mixed_kernel_image()
    test_presentation_invariance()
    print("isotropy smoke all green")
