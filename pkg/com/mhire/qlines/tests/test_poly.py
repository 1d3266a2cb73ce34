import pytest
from hypothesis import given, settings, strategies as st

from com.mhire.qlines.services.gf.gf import get_field
from com.mhire.qlines.services.poly.cubic import factor_ternary_cubic
from com.mhire.qlines.services.poly.factor import (
    binary_gcd,
    distinct_root_count,
    factor_binary_form,
    factor_univariate,
    is_irreducible,
    root_multiplicities,
    roots,
)
from com.mhire.qlines.services.poly.linalg import det, identity, inverse, matmul, nullspace, rank, solve
from com.mhire.qlines.services.poly.poly import MultiPoly, NotDivisible, UniPoly, gcd
from com.mhire.qlines.services.poly.resultant import resultant
from com.mhire.qlines.services.poly.solve import NotZeroDimensional, solve_zero_dimensional

F5 = get_field(5)
F7 = get_field(7)


def uni(field, *coeffs):
    return UniPoly(field, list(coeffs))


def test_gcd_of_polynomials_with_common_root():
    x = UniPoly.x(F7)
    f = (x - 1) * (x - 2)
    g = (x - 1) * (x - 3)
    assert gcd(f, g) == x - 1


def test_exact_division():
    x = UniPoly.x(F7)
    assert ((x + 1) ** 3).exact_div(x + 1) == (x + 1) ** 2
    with pytest.raises(NotDivisible):
        (x ** 2 + 1).exact_div(x - 1)


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=2, max_size=8))
def test_factorization_multiplies_back(coeffs):
    f = UniPoly(F5, coeffs)
    if f.degree < 1:
        return
    ff = factor_univariate(f, seed=1)
    assert ff.expand() == f
    assert ff.degree == f.degree
    for g, _ in ff.factors:
        assert g.lc == F5.one
        assert is_irreducible(g)


def test_roots_depend_on_the_field():
    assert roots(uni(F5, 1, 0, 1)) == [F5(2), F5(3)]
    assert roots(uni(F7, 1, 0, 1)) == []
    f49 = get_field(7, 2)
    found = roots(uni(F7, 1, 0, 1).over(f49))
    assert len(found) == 2
    assert all(r * r == f49(-1) for r in found)


def test_binary_form_roots_at_infinity():
    u, v = MultiPoly.variables(F7, 2)
    f = u * v ** 2 * (u + v)
    assert distinct_root_count(f) == 3
    assert root_multiplicities(f) == [2, 1, 1]
    assert factor_binary_form(f).expand() == f


def test_binary_gcd():
    u, v = MultiPoly.variables(F7, 2)
    f = u * (u - v) * (u + 2 * v)
    g = u * (u - v) ** 2
    h = binary_gcd(f, g)
    assert h.degree == 2
    assert h.divides(f) and h.divides(g)
    assert (u * (u - v)).divides(h)
    assert binary_gcd(u ** 2 + v ** 2, u - 3 * v).degree == 0


def test_multivariate_division():
    x, y, z = MultiPoly.variables(F7, 3)
    f = (x + y) * (x - z) * (y + 2 * z)
    assert (x + y).divides(f)
    assert f.exact_div(x - z) == (x + y) * (y + 2 * z)
    assert not (x + y + z).divides(f)


def test_substitute_and_compose():
    x, y = MultiPoly.variables(F7, 2)
    f = x ** 2 + 3 * x * y
    assert f.substitute(1, 2) == x ** 2 + 6 * x
    assert f.compose([y, x]) == y ** 2 + 3 * x * y
    assert f.evaluate([F7(1), F7(2)]) == F7(0)


def test_linear_algebra():
    rows = [[F7(c) for c in r] for r in ([1, 2, 3], [2, 4, 6], [0, 1, 1])]
    assert rank(rows) == 2
    kernel = nullspace(rows)
    assert len(kernel) == 1
    for row in rows:
        assert sum((a * b for a, b in zip(row, kernel[0])), F7.zero) == 0
    assert det(rows) == 0
    assert solve(rows, [F7(1), F7(0), F7(0)]) is None
    assert solve(rows, [F7(1), F7(2), F7(0)]) is not None


def test_inverse_of_invertible_matrix():
    a = [[F7(c) for c in r] for r in ([2, 1, 0], [0, 1, 3], [1, 0, 1])]
    assert det(a) != 0
    assert matmul(a, inverse(a)) == identity(F7, 3)


def test_univariate_resultant_detects_common_roots():
    x = UniPoly.x(F7)
    assert resultant(x - 2, x - 5) == F7(2 - 5)
    assert resultant(x ** 2 - 1, x - 1) == 0
    assert resultant(x ** 2 + 1, x - 1) != 0


def test_multivariate_resultant_eliminates_a_variable():
    x, y = MultiPoly.variables(F7, 2)
    r = resultant(x - y, y ** 2 - 2, var=1)
    assert r.degree_in(1) <= 0
    # 3^2 = 2 in GF(7)
    assert r.evaluate([F7(3), F7(0)]) == 0
    assert r.evaluate([F7(1), F7(0)]) != 0


def test_zero_dimensional_solutions_over_the_closure():
    x, y = MultiPoly.variables(F5, 2)
    equations = [x ** 2 - 2, y - x]
    solutions = solve_zero_dimensional(equations)
    assert len(solutions) == 2
    for sol in solutions:
        assert sol[0].field is get_field(5, 2)
        assert all(e.evaluate(list(sol)) == 0 for e in equations)


def test_inconsistent_system_has_no_solutions():
    x, y = MultiPoly.variables(F7, 2)
    assert solve_zero_dimensional([x - 1, x - 2, y]) == []


def test_positive_dimensional_system_rejected():
    x, y = MultiPoly.variables(F7, 2)
    with pytest.raises(NotZeroDimensional):
        solve_zero_dimensional([x * y])


def test_cubic_splitting_shapes():
    x, y, z = MultiPoly.variables(F7, 3)
    three = factor_ternary_cubic(x * y * z, known_lines=[x, y])
    assert three.shape == "three-lines"
    assert three.line_count == 3

    with_conic = factor_ternary_cubic(x * (x ** 2 + y ** 2 + z ** 2), known_lines=[x])
    assert with_conic.shape == "line+conic"
    assert with_conic.conic_rank == 3
    assert with_conic.degree_sum == 3

    double = factor_ternary_cubic(x ** 2 * y, known_lines=[x, y])
    assert double.line_count == 3
    assert not double.is_reduced
