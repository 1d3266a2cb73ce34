"""
Sylvester resultants, evaluated by fraction-free (Bareiss) elimination so
the same code serves field entries and polynomial entries.
"""

from typing import Callable, List, Sequence, TypeVar, Union

from com.mhire.qlines.services.poly.poly import MultiPoly, UniPoly

R = TypeVar("R")


def sylvester_matrix(f: Sequence[R], g: Sequence[R], zero: R) -> List[List[R]]:
    """Sylvester matrix of two coefficient lists given low degree first."""
    m = len(f) - 1
    n = len(g) - 1
    size = m + n
    rows = []
    fh = list(reversed(f))
    gh = list(reversed(g))
    for i in range(n):
        rows.append([zero] * i + fh + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gh + [zero] * (size - n - 1 - i))
    return rows


def bareiss_det(matrix: List[List[R]], zero: R, one: R, exact_div: Callable[[R, R], R],
                is_zero: Callable[[R], bool]) -> R:
    n = len(matrix)
    if n == 0:
        return one
    m = [list(r) for r in matrix]
    sign = 1
    prev = one
    for k in range(n - 1):
        if is_zero(m[k][k]):
            swap = next((i for i in range(k + 1, n) if not is_zero(m[i][k])), None)
            if swap is None:
                return zero
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return m[n - 1][n - 1] if sign > 0 else -m[n - 1][n - 1]


def resultant(f: Union[UniPoly, MultiPoly], g: Union[UniPoly, MultiPoly], var: int = 0):
    """Res_var(f, g).

    For UniPoly arguments the result is a field element; for MultiPoly
    arguments it is a MultiPoly in the same ring without var.
    """
    if isinstance(f, UniPoly):
        field = f.field
        if f.is_zero or g.is_zero:
            return field.zero
        if f.degree == 0 and g.degree == 0:
            return field.one
        mat = sylvester_matrix(f.coeffs, g.coeffs, field.zero)
        return bareiss_det(mat, field.zero, field.one, lambda a, b: a / b, lambda a: a.is_zero)

    fc = f.coefficients_in(var)
    gc = g.coefficients_in(var)
    zero = MultiPoly(f.field, f.nvars)
    one = MultiPoly.constant(f.field, f.nvars, 1)
    if f.is_zero or g.is_zero:
        return zero
    if len(fc) == 1 and len(gc) == 1:
        return one
    mat = sylvester_matrix(fc, gc, zero)
    return bareiss_det(mat, zero, one, lambda a, b: a.exact_div(b), lambda a: a.is_zero)
