"""
Quartic Surface Service - the surface model

Evaluation, projective transforms, the singular locus (elimination and
sweep), Taylor coefficients at a double point and ADE classification.
"""

import hashlib
import json
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from pydantic import ValidationError

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField, common_field, get_field, minimal_field
from com.mhire.qlines.services.poly.cubic import conic_gram, conic_rank, split_conic
from com.mhire.qlines.services.poly.factor import distinct_root_count, roots
from com.mhire.qlines.services.poly.linalg import Matrix, SingularMatrix, det, inverse, matmul, matvec, nullspace
from com.mhire.qlines.services.poly.poly import MultiPoly, gcd
from com.mhire.qlines.services.poly.solve import NotZeroDimensional, solve_zero_dimensional
from com.mhire.qlines.services.quartic.quartic_schema import SurfaceInput

logger = logging.getLogger(__name__)

Point = Tuple[FieldElement, ...]

MAX_RDP_MILNOR = 19


class ZeroVector(QlinesError, ValueError):
    pass


class NotSingular(QlinesError, ValueError):
    pass


class WorseThanDouble(QlinesError):
    pass


class NonIsolatedSingularLocus(QlinesError):
    pass


class ParseError(QlinesError, ValueError):
    pass


class SweepTooLarge(QlinesError):
    pass


# projective points

def canonical_point(point: Sequence[FieldElement]) -> Point:
    """Rightmost nonzero coordinate scaled to 1, coordinates in their minimal field."""
    if all(c.is_zero for c in point):
        raise ZeroVector("the zero vector is not a projective point")
    last = next(c for c in reversed(point) if not c.is_zero)
    inv = last.inverse()
    scaled = [c * inv for c in point]
    field = scaled[0].field
    small = minimal_field(scaled)
    if small is not field:
        scaled = [field.restrict(c, small) for c in scaled]
    return tuple(scaled)


def point_key(point: Point) -> Tuple:
    return (point[0].field.k, tuple(c.coeffs for c in point))


def point_over(point: Sequence[FieldElement], field: GaloisField) -> Point:
    return tuple(field.embed(c) for c in point)


def frobenius_orbit(point: Point) -> List[Point]:
    """Conjugates of a canonical point, sorted by key."""
    field = point[0].field
    seen = {}
    current = point
    for _ in range(field.k):
        key = point_key(current)
        if key in seen:
            break
        seen[key] = current
        current = canonical_point([c.frobenius() for c in current])
    return [seen[k] for k in sorted(seen)]


def format_point(point: Sequence[FieldElement]) -> str:
    return "[" + ":".join(repr(c) for c in point) + "]"


# transforms

@dataclass(frozen=True)
class ProjectiveTransform:
    """x' = matrix x; a surface F is carried to F o inverse."""

    matrix: Matrix
    inverse: Matrix
    seed: Optional[int] = None

    @classmethod
    def from_matrix(cls, matrix: Matrix, seed: Optional[int] = None) -> "ProjectiveTransform":
        if det(matrix).is_zero:
            raise SingularMatrix("projective transform with zero determinant")
        return cls([list(r) for r in matrix], inverse(matrix), seed)

    @classmethod
    def from_inverse(cls, inv: Matrix, seed: Optional[int] = None) -> "ProjectiveTransform":
        if det(inv).is_zero:
            raise SingularMatrix("projective transform with zero determinant")
        return cls(inverse(inv), [list(r) for r in inv], seed)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[FieldElement]]) -> "ProjectiveTransform":
        """Transform whose inverse sends e_i to columns[i]."""
        n = len(columns)
        return cls.from_inverse([[columns[j][i] for j in range(n)] for i in range(n)])

    @classmethod
    def identity(cls, field: GaloisField) -> "ProjectiveTransform":
        eye = [[field.one if i == j else field.zero for j in range(4)] for i in range(4)]
        return cls(eye, [list(r) for r in eye])

    @property
    def field(self) -> GaloisField:
        return self.matrix[0][0].field

    def apply_point(self, point: Sequence[FieldElement]) -> Point:
        field = common_field(self.field, point[0].field)
        m = [[field.embed(c) for c in row] for row in self.matrix]
        return canonical_point(matvec(m, point_over(point, field)))

    def pull_point(self, point: Sequence[FieldElement]) -> Point:
        """Preimage of a point in transformed coordinates."""
        field = common_field(self.field, point[0].field)
        m = [[field.embed(c) for c in row] for row in self.inverse]
        return canonical_point(matvec(m, point_over(point, field)))

    def then(self, other: "ProjectiveTransform") -> "ProjectiveTransform":
        """Apply self first, then other."""
        field = common_field(self.field, other.field)
        a = [[field.embed(c) for c in row] for row in other.matrix]
        b = [[field.embed(c) for c in row] for row in self.matrix]
        ai = [[field.embed(c) for c in row] for row in other.inverse]
        bi = [[field.embed(c) for c in row] for row in self.inverse]
        return ProjectiveTransform(matmul(a, b), matmul(bi, ai), self.seed)


def random_transform(field: GaloisField, rng: random.Random) -> ProjectiveTransform:
    while True:
        m = [[field.random_element(rng) for _ in range(4)] for _ in range(4)]
        if not det(m).is_zero:
            return ProjectiveTransform.from_matrix(m)


# the surface

class QuarticSurface:
    """A quartic form in x0..x3 with coefficients a_{i0 i1 i2 i3}."""

    def __init__(self, poly: MultiPoly, name: Optional[str] = None):
        if poly.nvars != 4:
            raise ValueError("a quartic surface lives in four variables")
        if poly.is_zero:
            raise ValueError("the zero form defines no surface")
        if not poly.is_homogeneous(4):
            raise ValueError("surface equation must be homogeneous of degree 4")
        self.poly = poly
        self.name = name
        self._over: Dict[int, MultiPoly] = {}

    @classmethod
    def from_coefficients(cls, p: int, coeffs: Dict[Tuple[int, int, int, int], int],
                          name: Optional[str] = None) -> "QuarticSurface":
        return cls(MultiPoly(get_field(p), 4, {tuple(m): c % p for m, c in coeffs.items()}), name)

    @property
    def field(self) -> GaloisField:
        return self.poly.field

    @property
    def p(self) -> int:
        return self.poly.field.p

    def coefficient(self, mono: Tuple[int, int, int, int]) -> FieldElement:
        return self.poly.coefficient(mono)

    def over(self, field: GaloisField) -> MultiPoly:
        if field is self.field:
            return self.poly
        cached = self._over.get(field.k)
        if cached is None:
            cached = self.poly.over(field)
            self._over[field.k] = cached
        return cached

    def to_coefficients(self) -> Dict[str, int]:
        out = {}
        for mono in sorted(self.poly.terms, reverse=True):
            out[" ".join(str(e) for e in mono)] = int(self.poly.terms[mono])
        return out

    @property
    def fingerprint(self) -> str:
        terms = ";".join(f"{' '.join(map(str, m))}={c.coeffs}" for m, c in sorted(self.poly.terms.items()))
        text = f"{self.p}^{self.field.k};{terms}"
        return hashlib.sha256(text.encode()).hexdigest()

    def evaluate(self, point: Sequence[FieldElement]) -> FieldElement:
        if all(c.is_zero for c in point):
            raise ZeroVector("cannot evaluate at the zero vector")
        field = common_field(self.field, point[0].field)
        return self.over(field).evaluate(point_over(point, field))

    __call__ = evaluate

    def gradient_at(self, point: Sequence[FieldElement]) -> List[FieldElement]:
        field = common_field(self.field, point[0].field)
        pt = point_over(point, field)
        return [d.evaluate(pt) for d in self.over(field).gradient()]

    def is_singular_at(self, point: Sequence[FieldElement]) -> bool:
        return self.evaluate(point).is_zero and all(c.is_zero for c in self.gradient_at(point))

    def __repr__(self):
        return f"QuarticSurface({self.name or self.fingerprint[:12]} over {self.field})"


def parse_surface(text: str, name: Optional[str] = None) -> QuarticSurface:
    """Read the JSON input format {"p": int, "coeffs": {"i0 i1 i2 i3": int}}."""
    try:
        data = SurfaceInput.model_validate(json.loads(text))
    except (json.JSONDecodeError, ValidationError) as e:
        raise ParseError(f"invalid surface input: {e}") from e
    coeffs = {}
    for key, value in data.coeffs.items():
        try:
            mono = tuple(int(v) for v in key.split())
        except ValueError as e:
            raise ParseError(f"bad monomial key {key!r}") from e
        if len(mono) != 4 or sum(mono) != 4 or min(mono) < 0:
            raise ParseError(f"monomial {key!r} is not a quartic monomial in four variables")
        coeffs[mono] = value
    try:
        return QuarticSurface.from_coefficients(data.p, coeffs, name or data.name)
    except ValueError as e:
        raise ParseError(str(e)) from e


def apply_transform(surface: QuarticSurface, transform: ProjectiveTransform) -> QuarticSurface:
    """The surface F o T^-1, so that T carries points of X to points of the result."""
    field = common_field(surface.field, transform.field)
    inv = [[field.embed(c) for c in row] for row in transform.inverse]
    images = [MultiPoly.linear_form(row) for row in inv]
    return QuarticSurface(surface.over(field).compose(images), surface.name)


# singular points

@dataclass
class SingularPoint:
    point: Point
    f2: MultiPoly
    f3: MultiPoly
    f4: MultiPoly
    transform: ProjectiveTransform
    tangent_cone_rank: int
    milnor: Optional[int]
    ade_type: str
    orbit: int = 0

    @property
    def is_rdp(self) -> bool:
        return self.ade_type != "NotRDP"


@dataclass
class SingularLocus:
    points: List[SingularPoint] = dataclass_field(default_factory=list)
    complete: bool = False

    @property
    def milnor_total(self) -> int:
        return sum(sp.milnor or 0 for sp in self.points)

    def census(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for sp in self.points:
            out[sp.ade_type] = out.get(sp.ade_type, 0) + 1
        return dict(sorted(out.items()))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def singular_points(surface: QuarticSurface, method: str = "solver",
                    max_degree: Optional[int] = None, force: bool = False) -> SingularLocus:
    """All singular points, canonical and grouped into Frobenius orbits.

    method "solver" eliminates chart by chart and is complete over the
    closure; "sweep" visits the points of P^3(GF(p^k)) for k <= max_degree.
    """
    if surface.p == 2:
        raise ValueError("singular locus computation needs p != 2")
    if method == "solver":
        raw = _eliminate_singular(surface)
        complete = True
    elif method == "sweep":
        raw = _sweep_singular(surface, max_degree or Config().max_degree, force)
        complete = False
    else:
        raise ValueError(f"unknown method {method!r}")

    unique: Dict[Tuple, Point] = {}
    for pt in raw:
        cp = canonical_point(pt)
        unique.setdefault(point_key(cp), cp)
    points = []
    seen = set()
    orbit_id = 0
    for key in sorted(unique):
        if key in seen:
            continue
        orbit = frobenius_orbit(unique[key])
        for member in orbit:
            seen.add(point_key(member))
            points.append(analyze_point(surface, member, orbit_id))
        orbit_id += 1
    logger.info("%s: %d singular points (%s)", surface, len(points), method)
    return SingularLocus(points, complete)


def _stratum_images(field: GaloisField, j: int) -> List[MultiPoly]:
    """x_i = u_i for i < j, x_j = 1, x_i = 0 after j, in a ring with j variables."""
    images = []
    for i in range(4):
        if i < j:
            images.append(MultiPoly.variable(field, j, i))
        else:
            images.append(MultiPoly.constant(field, j, 1 if i == j else 0))
    return images


def _eliminate_singular(surface: QuarticSurface) -> List[Point]:
    field = surface.field
    equations = surface.poly.gradient()

    def stratum(j: int) -> List[Point]:
        if j == 0:
            corner = (field.one, field.zero, field.zero, field.zero)
            return [corner] if surface.is_singular_at(corner) else []
        images = _stratum_images(field, j)
        system = [e.compose(images) for e in equations + [surface.poly]]
        if all(e.is_zero for e in system):
            raise NonIsolatedSingularLocus(f"stratum {j} lies in the singular locus")
        try:
            solutions = solve_zero_dimensional(system)
        except NotZeroDimensional as e:
            raise NonIsolatedSingularLocus(f"positive-dimensional singular locus in stratum {j}") from e
        out = []
        for values in solutions:
            w = values[0].field if values else field
            out.append(tuple(values) + (w.one,) + (w.zero,) * (3 - j))
        return out

    with ThreadPoolExecutor(max_workers=Config().threads) as pool:
        strata = list(pool.map(stratum, range(4)))
    return [pt for s in strata for pt in s]


def _sweep_singular(surface: QuarticSurface, max_degree: int, force: bool) -> List[Point]:
    limit = Config().sweep_limit
    found: List[Point] = []
    for k in range(1, max_degree + 1):
        w = get_field(surface.p, k)
        if w.order ** 2 > limit and not force:
            raise SweepTooLarge(f"singular-point sweep over {w} exceeds the work limit")
        eqs = [d for d in surface.over(w).gradient()]
        corner = (w.one, w.zero, w.zero, w.zero)
        if all(e.evaluate(corner).is_zero for e in eqs):
            found.append(corner)
        for j in range(1, 4):
            images = _stratum_images(w, j)
            local = [e.compose(images) for e in eqs]
            for prefix in product(list(w.elements()), repeat=j - 1):
                h = None
                for e in local:
                    for i, v in enumerate(prefix):
                        e = e.substitute(i, v)
                    u = e.to_univariate(j - 1)
                    if u.is_zero:
                        continue
                    h = u if h is None else gcd(h, u)
                if h is None:
                    raise NonIsolatedSingularLocus(f"singular line through stratum {j} over {w}")
                for r in roots(h):
                    found.append(tuple(prefix) + (r, w.one) + (w.zero,) * (3 - j))
        logger.debug("sweep over %s: %d singular candidates", w, len(found))
    return found


def normalizing_transform(point: Point) -> ProjectiveTransform:
    """Transform sending point to [0:0:0:1] with the other coordinate axes kept."""
    field = point[0].field
    j = max(i for i, c in enumerate(point) if not c.is_zero)
    columns = []
    for i in range(4):
        if i != j:
            columns.append([field.one if r == i else field.zero for r in range(4)])
    columns.append(list(point))
    return ProjectiveTransform.from_columns(columns)


def taylor_at(surface: QuarticSurface, point: Sequence[FieldElement]
              ) -> Tuple[MultiPoly, MultiPoly, MultiPoly, ProjectiveTransform]:
    """(f2, f3, f4, T) with (F o T^-1) = y3^2 f2 + y3 f3 + f4 and T(point) = [0:0:0:1]."""
    point = canonical_point(point)
    transform = normalizing_transform(point)
    moved = apply_transform(surface, transform).poly
    parts = moved.coefficients_in(3) + [MultiPoly(moved.field, 4)] * 5
    f4, f3, f2, f1, f0 = parts[:5]
    if not f0.is_zero or not f1.is_zero:
        raise NotSingular(f"{format_point(point)} is not a singular point")
    if f2.is_zero:
        raise WorseThanDouble(f"{format_point(point)} has multiplicity at least 3")
    keep = [0, 1, 2]
    return f2.drop_variables(keep), f3.drop_variables(keep), f4.drop_variables(keep), transform


def _sparse_rank(rows: Iterable[Dict[Tuple[int, ...], FieldElement]]) -> int:
    pivots: Dict[Tuple[int, ...], Dict[Tuple[int, ...], FieldElement]] = {}
    order = lambda m: (sum(m), m)
    for row in rows:
        row = dict(row)
        while row:
            lead = min(row, key=order)
            prow = pivots.get(lead)
            if prow is None:
                inv = row[lead].inverse()
                pivots[lead] = {m: v * inv for m, v in row.items()}
                break
            c = row[lead]
            for m, v in prow.items():
                nv = row.get(m)
                nv = -(c * v) if nv is None else nv - c * v
                if nv.is_zero:
                    row.pop(m, None)
                else:
                    row[m] = nv
    return len(pivots)


def _colength(partials: List[MultiPoly], order: int) -> int:
    """dim k[y]/(J + m^order) for the local algebra at the origin."""
    nvars = partials[0].nvars
    monos = [m for m in product(range(order), repeat=nvars) if sum(m) < order]
    rows = []
    for m in monos:
        if sum(m) > order - 2:
            continue
        for d in partials:
            row = {}
            for mono, c in d.terms.items():
                shifted = tuple(a + b for a, b in zip(mono, m))
                if sum(shifted) < order:
                    row[shifted] = c
            if row:
                rows.append(row)
    return len(monos) - _sparse_rank(rows)


def milnor_number(f2: MultiPoly, f3: MultiPoly, f4: MultiPoly, jet: Optional[int] = None) -> Optional[int]:
    """Milnor number of f2 + f3 + f4 at the origin; None when it exceeds 19 or fails to stabilize."""
    cap = jet or Config().milnor_jet
    g = f2 + f3 + f4
    partials = g.gradient()
    previous = 1
    for order in range(2, cap + 1):
        current = _colength(partials, order)
        if current > MAX_RDP_MILNOR:
            return None
        if current == previous:
            return current
        previous = current
    return None


def classify_ade(f2: MultiPoly, f3: MultiPoly, f4: MultiPoly) -> Tuple[str, Optional[int]]:
    """ADE type and Milnor number of the double point y3^2 f2 + y3 f3 + f4."""
    if f2.is_zero:
        raise WorseThanDouble("the quadratic part vanishes")
    rank = conic_rank(f2)
    if rank == 3:
        return "A1", 1
    mu = milnor_number(f2, f3, f4)
    if mu is None:
        return "NotRDP", None
    if rank == 2:
        return f"A{mu}", mu
    kernel = nullspace(conic_gram(f2))
    field = f2.field
    s, t = MultiPoly.variables(field, 2)
    restricted = f3.compose([s * kernel[0][i] + t * kernel[1][i] for i in range(3)])
    if restricted.is_zero:
        return "NotRDP", mu
    distinct = distinct_root_count(restricted)
    if distinct == 3:
        return ("D4", mu) if mu == 4 else ("NotRDP", mu)
    if distinct == 2:
        return (f"D{mu}", mu) if mu >= 5 else ("NotRDP", mu)
    if mu in (6, 7, 8):
        return f"E{mu}", mu
    return "NotRDP", mu


def analyze_point(surface: QuarticSurface, point: Point, orbit: int = 0) -> SingularPoint:
    f2, f3, f4, transform = taylor_at(surface, point)
    ade, mu = classify_ade(f2, f3, f4)
    return SingularPoint(point=canonical_point(point), f2=f2, f3=f3, f4=f4, transform=transform,
                         tangent_cone_rank=conic_rank(f2), milnor=mu, ade_type=ade, orbit=orbit)


def lines_through_point(point: Point, lines: Sequence) -> List:
    """Lines (anything with a contains_point method) passing through point."""
    return [line for line in lines if line.contains_point(point)]


def point_line_violations(sp: SingularPoint, through: int) -> List[str]:
    """Checks on the number of lines through a double point."""
    out = []
    if through > 8:
        out.append(f"{through} lines through {format_point(sp.point)} (at most 8)")
    if through > 6:
        common = _ternary_common_factor(sp.f2, sp.f3)
        if not common:
            out.append(f"{through} lines through {format_point(sp.point)} but gcd(f2, f3) = 1")
    if through == 8 and not sp.f2.divides(sp.f3):
        out.append(f"8 lines through {format_point(sp.point)} but f2 does not divide f3")
    return out


def _ternary_common_factor(f2: MultiPoly, f3: MultiPoly) -> bool:
    """True when the ternary forms f2 and f3 share a nonconstant factor."""
    if f2.divides(f3):
        return True
    field = f2.field
    big = get_field(field.p, field.k * 2)
    for w in (field, big):
        parts = split_conic(f2.over(w)) if conic_rank(f2) < 3 else None
        if parts and any(part.divides(f3.over(w)) for part in parts):
            return True
    return False
