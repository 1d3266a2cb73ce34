import json

import pytest

from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.grass.grass import (
    DISJOINT,
    EQUAL,
    IntersectionTable,
    ProjLine,
    ReducibleSurface,
    RuledSurface,
    all_lines,
    ambient_line_count,
    contains_line,
    enumerate_lines,
    galois_orbits,
    intersection,
    plane_of,
)
from com.mhire.qlines.services.quartic.quartic import SweepTooLarge, parse_surface

F5 = get_field(5)
FERMAT = {"4 0 0 0": 1, "0 4 0 0": 1, "0 0 4 0": 1, "0 0 0 4": 1}


def surface(p, coeffs):
    return parse_surface(json.dumps({"p": p, "coeffs": coeffs}))


def line(field, p, q):
    return ProjLine([[field(c) for c in p], [field(c) for c in q]])


@pytest.mark.parametrize("q", [2, 3])
def test_all_lines_of_small_spaces(q):
    lines = all_lines(get_field(q))
    assert len(lines) == ambient_line_count(q)
    assert len(set(lines)) == len(lines)


def test_line_is_independent_of_spanning_points():
    a = line(F5, [1, 0, 2, 0], [0, 1, 0, 3])
    b = line(F5, [1, 1, 2, 3], [2, 3, 4, 4])
    assert a == b
    assert a.contains_point([F5(1), F5(1), F5(2), F5(3)])
    assert not a.contains_point([F5(0), F5(0), F5(1), F5(0)])
    with pytest.raises(ValueError):
        line(F5, [1, 2, 3, 4], [2, 4, 1, 3])


def test_line_from_equations():
    # x0 = x1 = 0
    l = ProjLine.from_equations([F5(1), F5(0), F5(0), F5(0)], [F5(0), F5(1), F5(0), F5(0)])
    assert l == line(F5, [0, 0, 1, 0], [0, 0, 0, 1])
    assert l.degree == 1
    assert l.cell == (2, 3)


def test_line_descends_to_field_of_definition():
    f25 = get_field(5, 2)
    l = ProjLine([[f25.one, f25.zero, f25.zero, f25.zero], [f25.zero, f25.one, f25.zero, f25.zero]])
    assert l.field is F5
    m = ProjLine([[f25.one, f25.gen, f25.zero, f25.zero], [f25.zero, f25.zero, f25.one, f25.zero]])
    assert m.degree == 2
    assert m.frobenius() != m
    assert m.frobenius().frobenius() == m


def test_intersections():
    l = line(F5, [0, 0, 1, 0], [0, 0, 0, 1])
    m = line(F5, [1, 0, 0, 0], [0, 1, 0, 0])
    n = line(F5, [0, 1, 0, 0], [0, 0, 0, 1])
    assert intersection(l, m) == DISJOINT
    assert intersection(l, l) == EQUAL
    assert intersection(l, n) == (F5(0), F5(0), F5(0), F5(1))
    assert intersection(m, n) == (F5(0), F5(1), F5(0), F5(0))
    # both lie in x0 = 0
    assert plane_of(l, n) == (F5(1), F5(0), F5(0), F5(0))

    table = IntersectionTable([l, m, n])
    assert table.meet(0, 1) == DISJOINT
    assert table.meeting(2) == [0, 1]
    assert table.common_neighbours(0, 1) == [2]


def test_contains_line():
    # x0 x1^3 + x1 x2^3 + x2 x3^3 contains x1 = x2 = 0
    s = surface(5, {"1 3 0 0": 1, "0 1 3 0": 1, "0 0 1 3": 1})
    assert contains_line(s, line(F5, [1, 0, 0, 0], [0, 0, 0, 1]))
    assert not contains_line(s, line(F5, [1, 0, 0, 0], [0, 1, 0, 0]))


@pytest.mark.slow
def test_fermat_quartic_has_48_lines():
    lines = enumerate_lines(surface(5, FERMAT))
    assert lines.complete
    assert len(lines) == 48
    assert lines.max_degree == 2
    s = surface(5, FERMAT)
    assert all(contains_line(s, l) for l in lines)
    orbits = galois_orbits(lines.lines)
    assert sum(len(o) for o in orbits) == 48
    assert all(len(o) in (1, 2) for o in orbits)


@pytest.mark.slow
def test_sweep_agrees_with_solver():
    s = surface(5, FERMAT)
    solver = enumerate_lines(s, "solver")
    sweep = enumerate_lines(s, "sweep", max_degree=2)
    assert not sweep.complete
    assert sweep.lines == solver.lines


def test_sweep_work_limit():
    with pytest.raises(SweepTooLarge):
        enumerate_lines(surface(9973, FERMAT), "sweep", max_degree=2)


def test_unknown_method():
    with pytest.raises(ValueError):
        enumerate_lines(surface(5, FERMAT), "guess")


def test_surface_containing_a_plane():
    # x0 (x1^3 + x2^3 + x3^3)
    s = surface(7, {"1 3 0 0": 1, "1 0 3 0": 1, "1 0 0 3": 1})
    with pytest.raises((ReducibleSurface, RuledSurface)):
        enumerate_lines(s)
