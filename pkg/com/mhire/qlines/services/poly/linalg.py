"""
Exact linear algebra over a GaloisField (lists of FieldElement rows).
"""

from typing import List, Optional, Sequence, Tuple

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField

Matrix = List[List[FieldElement]]


class SingularMatrix(QlinesError, ValueError):
    pass


def rref(rows: Sequence[Sequence[FieldElement]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns; zero rows dropped."""
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if not m[i][c].is_zero), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][c].inverse()
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and not m[i][c].is_zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence[FieldElement]]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence[FieldElement]], ncols: Optional[int] = None,
              field: Optional[GaloisField] = None) -> Matrix:
    """Basis of {x : rows x = 0}."""
    reduced, pivots = rref(rows)
    if ncols is None:
        ncols = len(rows[0])
    if field is None:
        field = rows[0][0].field
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * ncols
        v[f] = field.one
        for row, pc in zip(reduced, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence[FieldElement]], b: Sequence[FieldElement]) -> Optional[List[FieldElement]]:
    """One solution of a x = b, or None."""
    n = len(a[0])
    field = b[0].field
    reduced, pivots = rref([list(row) + [rhs] for row, rhs in zip(a, b)])
    if n in pivots:
        return None
    x = [field.zero] * n
    for row, pc in zip(reduced, pivots):
        x[pc] = row[n]
    return x


def det(a: Sequence[Sequence[FieldElement]]) -> FieldElement:
    m = [list(r) for r in a]
    n = len(m)
    field = m[0][0].field
    result = field.one
    for c in range(n):
        pivot = next((i for i in range(c, n) if not m[i][c].is_zero), None)
        if pivot is None:
            return field.zero
        if pivot != c:
            m[c], m[pivot] = m[pivot], m[c]
            result = -result
        result = result * m[c][c]
        inv = m[c][c].inverse()
        for i in range(c + 1, n):
            if not m[i][c].is_zero:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Sequence[Sequence[FieldElement]]) -> Matrix:
    n = len(a)
    field = a[0][0].field
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(a)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrix("matrix is not invertible")
    return [row[n:] for row in reduced]


def matmul(a: Sequence[Sequence[FieldElement]], b: Sequence[Sequence[FieldElement]]) -> Matrix:
    field = a[0][0].field
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = field.zero
            for x, y in zip(row, col):
                if not x.is_zero and not y.is_zero:
                    acc = acc + x * y
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(a: Sequence[Sequence[FieldElement]], v: Sequence[FieldElement]) -> List[FieldElement]:
    field = v[0].field
    out = []
    for row in a:
        acc = field.zero
        for x, y in zip(row, v):
            acc = acc + x * y
        out.append(acc)
    return out


def identity(field: GaloisField, n: int) -> Matrix:
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def cross(u: Sequence[FieldElement], v: Sequence[FieldElement]) -> List[FieldElement]:
    """Coefficients of the line through two points of P^2 (or the meet of two lines)."""
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
