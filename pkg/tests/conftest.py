"""Shared fixtures: small rings, the expensive algebroids built once per session,
and a terminal-summary section collecting the acceptance-criterion result lines."""

import pytest
from hypothesis import HealthCheck, settings

from oidforge.polyring import MonomialOrder, Ring, parse_poly
from oidforge.modres import (FreeModuleMap, FreeResolution, certify_exactness,
                             free_resolution, tangent_generators, vanishing_generators)
from oidforge.catalog import koszul_foliation
from oidforge.construct import build_all

settings.register_profile("suite", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")

_criterion_lines = []


def record_criterion(line):
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _criterion_lines:
        terminalreporter.section("acceptance criteria")
        for line in _criterion_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ring_xy():
    return Ring(("x", "y"))


@pytest.fixture(scope="session")
def ring_xyz():
    return Ring(("x", "y", "z"))


@pytest.fixture(scope="session")
def planar_res(ring_xy):
    """Resolution of the plane fields vanishing at the origin, ranks (4, 2),
    generated in the order x d/dx, x d/dy, y d/dx, y d/dy."""
    x, y = ring_xy.gens()
    res = free_resolution(vanishing_generators([x, y]))
    certify_exactness(res)
    return res


@pytest.fixture(scope="session")
def planar_alg(planar_res):
    return build_all(planar_res)


@pytest.fixture(scope="session")
def named_planar_res(ring_xy):
    """The same module presented by hand with named generators in the order
    y d/dy, x d/dy, y d/dx, x d/dx."""
    x, y = ring_xy.gens()
    z = ring_xy.zero()
    anchor = FreeModuleMap(ring_xy, ((z, z, y, x), (y, x, z, z)), -1, 0)
    d2 = FreeModuleMap(ring_xy, ((x, z), (-y, z), (z, x), (z, -y)), -2, -1)
    names = {(1, 0): "y∂y", (1, 1): "x∂y", (1, 2): "y∂x", (1, 3): "x∂x"}
    res = FreeResolution(ring_xy, (4, 2), {2: d2}, anchor, names)
    certify_exactness(res)
    return res


@pytest.fixture(scope="session")
def named_planar_alg(named_planar_res):
    return build_all(named_planar_res)


@pytest.fixture(scope="session")
def koszul_cubic(ring_xyz):
    return koszul_foliation(parse_poly("x^3 + y^3 + z^3", ring_xyz))


@pytest.fixture(scope="session")
def koszul_quadric(ring_xyz):
    return koszul_foliation(parse_poly("x^2 + y^2 + z^2", ring_xyz))


@pytest.fixture(scope="session")
def deep_res(ring_xyz):
    """Quadratic fields along the x-axis direction: ranks (6, 8, 3), the main
    seed-comparison fixture."""
    x, y, z = ring_xyz.gens()
    zero = ring_xyz.zero()
    from oidforge.polyring import VectorField
    gens = [VectorField(ring_xyz, (p, zero, zero))
            for p in (x * x, x * y, x * z, y * y, y * z, z * z)]
    res = free_resolution(gens, ring=ring_xyz)
    certify_exactness(res)
    return res
