"""
Plane conics and cubics: Gram-rank classification of conics and the
splitting of a ternary cubic into lines and a residual conic.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement
from com.mhire.qlines.services.poly.factor import factor_binary_form, linear_root, roots
from com.mhire.qlines.services.poly.linalg import cross, nullspace, rank
from com.mhire.qlines.services.poly.poly import MultiPoly, NotHomogeneous, gcd
from com.mhire.qlines.services.poly.resultant import resultant

logger = logging.getLogger(__name__)


class CharTwoConic(QlinesError):
    pass


def normalize_linear(form: MultiPoly) -> MultiPoly:
    """Scale a linear form so its first nonzero coefficient is 1."""
    n = form.nvars
    coeffs = [form.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]
    lead = next(c for c in coeffs if not c.is_zero)
    return form * lead.inverse()


def linear_coefficients(form: MultiPoly) -> List[FieldElement]:
    n = form.nvars
    return [form.coefficient(tuple(1 if j == i else 0 for j in range(n))) for i in range(n)]


def conic_gram(conic: MultiPoly) -> List[List[FieldElement]]:
    field = conic.field
    if field.p == 2:
        raise CharTwoConic("conic classification needs odd characteristic")
    half = field(2).inverse()
    gram = [[field.zero] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            mono = [0, 0, 0]
            mono[i] += 1
            mono[j] += 1
            c = conic.coefficient(tuple(mono))
            gram[i][j] = c if i == j else c * half
    return gram


def conic_rank(conic: MultiPoly) -> int:
    """3 = smooth conic, 2 = two distinct lines, 1 = double line."""
    return rank(conic_gram(conic))


def split_conic(conic: MultiPoly) -> Optional[List[MultiPoly]]:
    """The two linear factors of a degenerate conic when they are defined over its field."""
    gram = conic_gram(conic)
    r = rank(gram)
    if r == 3:
        return None
    if r == 1:
        row = next(row for row in gram if any(not c.is_zero for c in row))
        line = normalize_linear(MultiPoly.linear_form(row))
        return [line, line]
    vertex = nullspace(gram)[0]
    i = next(i for i, c in enumerate(vertex) if not c.is_zero)
    others = [j for j in range(3) if j != i]
    binary = MultiPoly(conic.field, 2, {
        (m[others[0]], m[others[1]]): c for m, c in conic.terms.items() if m[i] == 0})
    if binary.is_zero:
        return None
    found = []
    for factor, mult in factor_binary_form(binary).factors:
        if factor.degree != 1:
            return None
        u, v = linear_root(factor)
        point = [conic.field.zero] * 3
        point[others[0]], point[others[1]] = u, v
        found.extend([normalize_linear(MultiPoly.linear_form(cross(vertex, point)))] * mult)
    return found if len(found) == 2 else None


@dataclass
class CubicSplitting:
    """Components of a plane cubic: linear factors with multiplicity plus an optional conic."""

    lines: List[Tuple[MultiPoly, int]] = dataclass_field(default_factory=list)
    conic: Optional[MultiPoly] = None
    conic_rank: Optional[int] = None
    remainder: Optional[MultiPoly] = None

    @property
    def line_count(self) -> int:
        return sum(m for _, m in self.lines)

    @property
    def degree_sum(self) -> int:
        total = self.line_count
        if self.conic is not None:
            total += 2
        if self.remainder is not None:
            total += self.remainder.degree
        return total

    @property
    def is_reduced(self) -> bool:
        return all(m == 1 for _, m in self.lines)

    @property
    def shape(self) -> str:
        if self.remainder is not None:
            return "irreducible"
        if self.conic is not None:
            return "line+conic" if self.conic_rank == 3 else "line+degenerate-conic"
        return "three-lines"


def _take(rem: MultiPoly, line: MultiPoly, found: dict) -> MultiPoly:
    line = normalize_linear(line)
    key = line.sort_key()
    while rem.degree >= 1:
        q, r = rem.divmod(line)
        if not r.is_zero:
            break
        rem = q
        entry = found.setdefault(key, [line, 0])
        entry[1] += 1
    return rem


def factor_ternary_cubic(cubic: MultiPoly, known_lines: Sequence[MultiPoly] = ()) -> CubicSplitting:
    if cubic.nvars != 3 or not cubic.is_homogeneous(3) or cubic.is_zero:
        raise NotHomogeneous("nonzero ternary cubic expected")
    found: dict = {}
    rem = cubic
    for line in known_lines:
        rem = _take(rem, line, found)
    if rem.degree == 3:
        for line in _candidate_lines(rem):
            rem = _take(rem, line, found)
            if rem.degree < 3:
                break
    splitting = CubicSplitting()
    if rem.degree == 2:
        parts = split_conic(rem)
        if parts:
            for line in parts:
                rem = _take(rem, line, found)
        else:
            splitting.conic = rem
            splitting.conic_rank = conic_rank(rem)
    if rem.degree == 1:
        rem = _take(rem, rem, found)
    if rem.degree == 3:
        splitting.remainder = rem
    splitting.lines = sorted(((line, m) for line, m in found.values()), key=lambda lm: lm[0].sort_key())
    return splitting


def _plane_point_key(point: Sequence[FieldElement]):
    last = next(c for c in reversed(point) if not c.is_zero)
    inv = last.inverse()
    return tuple((c * inv).coeffs for c in point)


def plane_singular_points(curve: MultiPoly) -> Tuple[List[List[FieldElement]], bool]:
    """Singular points of a plane curve defined over its field; flag set when the locus is not finite."""
    field = curve.field
    eqs = [d for d in curve.gradient() if not d.is_zero]
    if field.p == 3 or not eqs:
        eqs.append(curve)
    eqs = [e for e in eqs if not e.is_zero]
    if not eqs:
        return [], True
    points = {}

    # chart x2 = 1
    chart = [e.substitute(2, field.one) for e in eqs]
    eliminant = None
    for f, g in combinations(chart, 2):
        r = resultant(f, g, 1)
        if not r.is_zero:
            u = r.to_univariate(0)
            eliminant = u if eliminant is None else gcd(eliminant, u)
    if eliminant is None and len(chart) > 1:
        return [], True
    if eliminant is None:
        eliminant = chart[0].coefficients_in(1)[0].to_univariate(0) if chart[0].degree_in(1) <= 0 else None
        if eliminant is None:
            return [], True
    if eliminant.degree >= 1:
        for x0 in roots(eliminant):
            h = None
            for e in chart:
                u = e.substitute(0, x0).to_univariate(1)
                if u.is_zero:
                    continue
                h = u if h is None else gcd(h, u)
            if h is None:
                return [], True
            for x1 in roots(h):
                point = [x0, x1, field.one]
                points[_plane_point_key(point)] = point

    # line x2 = 0: points [x0 : 1 : 0] and [1 : 0 : 0]
    h = None
    for e in eqs:
        u = e.substitute(1, field.one).substitute(2, field.zero).to_univariate(0)
        if not u.is_zero:
            h = u if h is None else gcd(h, u)
    if h is None:
        return [], True
    for x0 in roots(h):
        point = [x0, field.one, field.zero]
        points[_plane_point_key(point)] = point
    corner = [field.one, field.zero, field.zero]
    if all(e.evaluate(corner).is_zero for e in eqs):
        points[_plane_point_key(corner)] = corner
    return [points[k] for k in sorted(points)], False


def _candidate_lines(cubic: MultiPoly) -> List[MultiPoly]:
    """Lines that may divide a cubic: joins of its singular points and tangent-cone lines."""
    field = cubic.field
    points, infinite = plane_singular_points(cubic)
    candidates: List[MultiPoly] = []
    if infinite:
        # a multiple component divides every partial derivative
        for d in cubic.gradient():
            if d.degree == 2:
                parts = split_conic(d) if field.p != 2 else None
                candidates.extend(parts or [])
            elif d.degree == 1:
                candidates.append(d)
        return candidates
    for a, b in combinations(points, 2):
        candidates.append(MultiPoly.linear_form(cross(a, b)))
    for point in points:
        candidates.extend(_tangent_cone_lines(cubic, point))
    return candidates


def _tangent_cone_lines(cubic: MultiPoly, point: List[FieldElement]) -> List[MultiPoly]:
    field = cubic.field
    i = next(i for i, c in enumerate(point) if not c.is_zero)
    others = [j for j in range(3) if j != i]
    hessian = [[cubic.diff(a).diff(b).evaluate(point) for b in range(3)] for a in range(3)]
    terms = {}
    for a in range(2):
        for b in range(2):
            mono = [0, 0]
            mono[a] += 1
            mono[b] += 1
            key = tuple(mono)
            terms[key] = terms.get(key, field.zero) + hessian[others[a]][others[b]]
    cone = MultiPoly(field, 2, terms)
    if cone.is_zero:
        # triple point: the cubic is a cone over its restriction to x_i = 0
        cone = MultiPoly(field, 2, {(m[others[0]], m[others[1]]): c for m, c in cubic.terms.items() if m[i] == 0})
    if cone.is_zero:
        return []
    out = []
    for factor, _ in factor_binary_form(cone).factors:
        if factor.degree == 1:
            u, v = linear_root(factor)
            direction = [field.zero] * 3
            direction[others[0]], direction[others[1]] = u, v
            out.append(MultiPoly.linear_form(cross(point, direction)))
    return out
