import json

import pytest

from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.grass.grass import LineSet, ProjLine
from com.mhire.qlines.services.pencil.pencil import (
    FIRST,
    SECOND,
    InseparableMap,
    LineDossier,
    NotOnSurface,
    alpha_beta,
    build_dossier,
    dossier_checks,
    line_degree,
    normalized_equation,
    ramification,
    valency_bound,
)
from com.mhire.qlines.services.poly.poly import MultiPoly
from com.mhire.qlines.services.quartic.quartic import parse_surface, singular_points

F7 = get_field(7)


def surface(p, coeffs):
    return parse_surface(json.dumps({"p": p, "coeffs": coeffs}))


def axis_line(field):
    # x0 = x1 = 0
    one, zero = field.one, field.zero
    return ProjLine([[zero, zero, one, zero], [zero, zero, zero, one]])


@pytest.mark.parametrize("kind,d,s,bound", [
    (FIRST, 3, 0, 18),
    (FIRST, 2, 1, 13),
    (FIRST, 1, 2, 8),
    (SECOND, 3, 0, 20),
    (SECOND, 2, 1, 10),
    (SECOND, 1, 2, 9),
    (SECOND, 1, 1, 11),
    (FIRST, 0, 3, 2),
])
def test_valency_bounds(kind, d, s, bound):
    assert valency_bound(kind, d, s) == bound


def test_alpha_beta_of_a_normalized_equation():
    u, v = MultiPoly.variables(F7, 2)
    s = surface(7, {"1 0 3 0": 1, "0 1 0 3": 1, "2 0 1 1": 3, "4 0 0 0": 1})
    g, _ = normalized_equation(s, axis_line(F7))
    alpha, beta = alpha_beta(g)
    assert alpha == u ** 3
    assert beta == v ** 3
    assert line_degree(alpha, beta)[0] == 3


def test_line_degree_drops_with_common_roots():
    u, v = MultiPoly.variables(F7, 2)
    d, common = line_degree(u ** 2 * v, u * v ** 2)
    assert d == 1
    assert common.degree == 2


def test_line_not_on_surface():
    s = surface(7, {"4 0 0 0": 1, "0 0 4 0": 1, "0 0 0 4": 1})
    with pytest.raises(NotOnSurface):
        normalized_equation(s, axis_line(F7))


def test_ramification_cases():
    u, v = MultiPoly.variables(F7, 2)
    points, case = ramification(u ** 3, v ** 3)
    assert case == "C"
    assert sorted(rp.index for rp in points) == [3, 3]

    points, case = ramification(u ** 3, u * v ** 2 + v ** 3)
    assert case == "B"
    assert sorted(rp.index for rp in points) == [2, 2, 3]


def test_low_degree_pencils_do_not_ramify():
    u, v = MultiPoly.variables(F7, 2)
    assert ramification(u, v) == ([], None)


def test_inseparable_pencil():
    f3 = get_field(3)
    u, v = MultiPoly.variables(f3, 2)
    with pytest.raises(InseparableMap):
        ramification(u ** 3, v ** 3)


def test_dossier_of_a_family_z_line():
    # x0 x2^3 + x1 x3^3 + x0^4 + x1^4: second kind, two triple ramification points
    s = surface(7, {"1 0 3 0": 1, "0 1 0 3": 1, "4 0 0 0": 1, "0 4 0 0": 1})
    dossier = build_dossier(s, 0, LineSet([axis_line(F7)], complete=False), [])
    assert dossier.degree == 3
    assert dossier.singularity == 0
    assert dossier.kind == SECOND
    assert dossier.ramification_case == "C"
    assert (dossier.valency, dossier.extended_valency) == (0, 0)
    assert dossier.family_z is not None
    assert dossier.family_z.q2.is_zero
    assert dossier.family_z.sigma_preserves
    assert dossier.twin is None
    assert dossier.violations == []


def test_dossier_checks_report_inconsistent_invariants():
    dossier = LineDossier(index=0, line=None, normalizer=None, alpha=None, beta=None, degree=3,
                          singularity=1, singular_points=[], kind=FIRST, valency=20, extended_valency=19)
    bad, _ = dossier_checks(dossier)
    assert "degree 3 exceeds 3 - s = 2" in bad
    assert "degree 3 with singularity 1" in bad
    assert "valency 20 exceeds extended valency 19" in bad
    assert "valency 20 exceeds 18 for a First line with d=3, s=1" in bad
    assert "valency 20 but no family Z normal form" in bad


def test_dossier_checks_pass_for_consistent_invariants():
    dossier = LineDossier(index=0, line=None, normalizer=None, alpha=None, beta=None, degree=1,
                          singularity=2, singular_points=[], kind=FIRST, type_p=2, type_q=1,
                          valency=5, extended_valency=7)
    bad, notes = dossier_checks(dossier)
    assert bad == []
    assert notes == []


def test_degree_zero_line_reports_its_tangent_plane():
    # x0^4 + x0 x2^3 + x1^2 x2 x3 + x0 x3^3: the plane x0 = 0 is tangent along x0 = x1 = 0
    s = surface(101, {"4 0 0 0": 1, "1 0 3 0": 1, "0 2 1 1": 1, "1 0 0 3": 1})
    F = get_field(101)
    one, zero = F.one, F.zero
    lines = LineSet([
        axis_line(F),
        ProjLine([[zero, one, zero, zero], [zero, zero, zero, one]]),
        ProjLine([[zero, one, zero, zero], [zero, zero, one, zero]]),
    ], False)
    dossier = build_dossier(s, 0, lines, singular_points(s).points)
    assert dossier.degree == 0
    assert dossier.singularity == 3
    assert dossier.valency == 2

    tangent = dossier.tangent_plane
    assert tangent is not None
    assert list(tangent.plane) == [1, 0, 0, 0]
    assert tangent.conic_rank == 2
    assert len(tangent.components) == 2
    assert tangent.lines_in_plane == [1, 2]


def test_tangent_plane_only_for_degree_zero():
    s = surface(7, {"1 0 3 0": 1, "0 1 0 3": 1, "4 0 0 0": 1, "0 4 0 0": 1})
    dossier = build_dossier(s, 0, LineSet([axis_line(F7)], False), [])
    assert dossier.degree == 3
    assert dossier.tangent_plane is None
