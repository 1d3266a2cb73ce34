import json

import pytest

from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.quartic.quartic import (
    NonIsolatedSingularLocus,
    NotSingular,
    ParseError,
    WorseThanDouble,
    ZeroVector,
    analyze_point,
    canonical_point,
    frobenius_orbit,
    format_point,
    parse_surface,
    singular_points,
)

F7 = get_field(7)
ORIGIN = (F7(0), F7(0), F7(0), F7(1))


def surface(p, coeffs, name=None):
    return parse_surface(json.dumps({"p": p, "coeffs": coeffs}), name)


def a1_surface():
    # x3^2 (x0^2 + x1^2 + x2^2) + x0^4 + x1^4 + x2^4
    return surface(7, {"2 0 0 2": 1, "0 2 0 2": 1, "0 0 2 2": 1, "4 0 0 0": 1, "0 4 0 0": 1, "0 0 4 0": 1})


def test_parse_surface():
    s = surface(11, {"4 0 0 0": 1, "0 0 0 4": -1}, "test")
    assert s.p == 11
    assert s.name == "test"
    assert s.coefficient((0, 0, 0, 4)) == 10
    assert s.to_coefficients() == {"4 0 0 0": 1, "0 0 0 4": 10}


@pytest.mark.parametrize("text", [
    "not json",
    json.dumps({"coeffs": {"4 0 0 0": 1}}),
    json.dumps({"p": 7, "coeffs": {"4 0 0": 1}}),
    json.dumps({"p": 7, "coeffs": {"1 1 1 0": 1}}),
    json.dumps({"p": 7, "coeffs": {"a b c d": 1}}),
    json.dumps({"p": 7, "coeffs": {"4 0 0 0": 7}}),
    json.dumps({"p": 9, "coeffs": {"4 0 0 0": 1}}),
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_surface(text)


def test_fingerprint_identifies_the_equation():
    a = surface(7, {"4 0 0 0": 1, "0 4 0 0": 1})
    b = surface(7, {"0 4 0 0": 8, "4 0 0 0": 1}, "renamed")
    c = surface(11, {"4 0 0 0": 1, "0 4 0 0": 1})
    assert a.fingerprint == b.fingerprint
    assert a.fingerprint != c.fingerprint
    assert len(a.fingerprint) == 64


def test_canonical_point():
    assert canonical_point([F7(2), F7(4), F7(0), F7(2)]) == (F7(1), F7(2), F7(0), F7(1))
    assert format_point(canonical_point([F7(3), F7(0), F7(0), F7(0)])) == "[1:0:0:0]"
    with pytest.raises(ZeroVector):
        canonical_point([F7(0)] * 4)


def test_canonical_point_descends_to_minimal_field():
    f49 = get_field(7, 2)
    g = f49.gen
    point = canonical_point([g * 2, g * 3, f49.zero, g])
    assert point[0].field is F7
    assert point == (F7(2), F7(3), F7(0), F7(1))


def test_frobenius_orbit_of_conjugate_points():
    f49 = get_field(7, 2)
    point = canonical_point([f49.gen, f49.one, f49.zero, f49.one])
    orbit = frobenius_orbit(point)
    assert len(orbit) == 2
    assert point in orbit
    assert frobenius_orbit(ORIGIN) == [ORIGIN]


@pytest.mark.parametrize("coeffs,ade,mu", [
    ({"2 0 0 2": 1, "0 2 0 2": 1, "0 0 2 2": 1, "0 0 4 0": 1}, "A1", 1),
    ({"1 1 0 2": 1, "0 0 3 1": 1, "4 0 0 0": 1}, "A2", 2),
    ({"1 1 0 2": 1, "0 0 4 0": 1}, "A3", 3),
    ({"2 0 0 2": 1, "0 3 0 1": 1, "0 0 3 1": 1}, "D4", 4),
    ({"2 0 0 2": 1, "0 3 0 1": 1, "0 0 4 0": 1}, "E6", 6),
])
def test_double_point_types(coeffs, ade, mu):
    sp = analyze_point(surface(7, coeffs), ORIGIN)
    assert sp.ade_type == ade
    assert sp.milnor == mu
    assert sp.is_rdp


def test_non_simple_double_point():
    sp = analyze_point(surface(7, {"2 0 0 2": 1, "0 4 0 0": 1, "0 0 4 0": 1}), ORIGIN)
    assert sp.ade_type == "NotRDP"
    assert not sp.is_rdp
    assert sp.tangent_cone_rank == 1


def test_points_that_are_not_double_points():
    with pytest.raises(WorseThanDouble):
        analyze_point(surface(7, {"3 0 0 1": 1, "0 4 0 0": 1, "0 0 4 0": 1}), ORIGIN)
    with pytest.raises(NotSingular):
        analyze_point(a1_surface(), (F7(1), F7(0), F7(0), F7(0)))


def test_singular_locus_of_a_nodal_quartic():
    locus = singular_points(a1_surface())
    assert locus.complete
    assert locus.census() == {"A1": 1}
    assert locus.milnor_total == 1
    assert locus.points[0].point == ORIGIN


def test_smooth_fermat_quartic():
    fermat = surface(5, {"4 0 0 0": 1, "0 4 0 0": 1, "0 0 4 0": 1, "0 0 0 4": 1})
    assert len(singular_points(fermat)) == 0


def test_singular_sweep_agrees_with_solver():
    locus = singular_points(a1_surface(), method="sweep", max_degree=1)
    assert not locus.complete
    assert [sp.point for sp in locus] == [ORIGIN]


def test_double_quadric_is_singular_everywhere():
    # (x0^2 + x1^2 + x2^2 + x3^2)^2
    coeffs = {"4 0 0 0": 1, "0 4 0 0": 1, "0 0 4 0": 1, "0 0 0 4": 1}
    for i in range(4):
        for j in range(i + 1, 4):
            mono = [0] * 4
            mono[i] = mono[j] = 2
            coeffs[" ".join(map(str, mono))] = 2
    with pytest.raises(NonIsolatedSingularLocus):
        singular_points(surface(7, coeffs))


def test_characteristic_two_rejected():
    with pytest.raises(ValueError):
        singular_points(surface(2, {"4 0 0 0": 1, "0 4 0 0": 1, "0 0 4 0": 1, "0 0 0 4": 1}))
