"""
Pencil Service - Per-Line Analysis

Studies the pencil of planes through one line of a quartic surface: the
pair of binary cubics (alpha, beta) cut on the line, the degree and
singularity of the line, the splitting of every residual cubic that carries
another line, the inflection eliminant deciding first or second kind,
ramification of the induced map, and the normal forms of lines of high
valency and of twin lines.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, Optional, Sequence, Tuple

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField, common_field, get_field
from com.mhire.qlines.services.grass.grass import (
    DISJOINT,
    IntersectionTable,
    LineSet,
    ProjLine,
    contains_line,
    intersection,
    plane_of,
    transversal_lines,
)
from com.mhire.qlines.services.poly.cubic import (
    CharTwoConic,
    CubicSplitting,
    conic_rank,
    factor_ternary_cubic,
    split_conic,
)
from com.mhire.qlines.services.poly.factor import (
    binary_gcd,
    binary_points,
    distinct_root_count,
    factor_binary_form,
    root_multiplicities,
    roots,
)
from com.mhire.qlines.services.poly.linalg import cross, nullspace, rank, solve
from com.mhire.qlines.services.poly.poly import MultiPoly, UniPoly
from com.mhire.qlines.services.poly.resultant import resultant
from com.mhire.qlines.services.quartic.quartic import (
    Point,
    ProjectiveTransform,
    QuarticSurface,
    SingularPoint,
    apply_transform,
    canonical_point,
    point_key,
    point_over,
)

logger = logging.getLogger(__name__)

FIRST = "First"
SECOND = "Second"
DEGREE_ZERO = "DegreeZero"

PFIBER = "PFiber"
QFIBER = "QFiber"
IRREDUCIBLE = "Irreducible"
NONREDUCED = "NonReduced"

TWIN_COEFFICIENTS = [
    (2, 0, 2, 0), (2, 0, 1, 1), (2, 0, 0, 2),
    (1, 1, 2, 0), (1, 1, 1, 1), (1, 1, 0, 2),
    (0, 2, 2, 0), (0, 2, 1, 1), (0, 2, 0, 2),
]


class NotOnSurface(QlinesError, ValueError):
    pass


class InseparableMap(QlinesError):
    pass


class NormalizationFailed(QlinesError):
    pass


class PreconditionViolated(QlinesError, ValueError):
    pass


@dataclass
class FiberReport:
    """One plane of the pencil that contains a second line."""

    t: Point
    plane: Point
    splitting: CubicSplitting
    classification: str
    lines_in_plane: List[int]
    ramified: Optional[int] = None
    tangent: bool = False


@dataclass
class TangentPlane:
    t: Point
    plane: Point
    conic: MultiPoly
    conic_rank: Optional[int]
    components: Optional[List[MultiPoly]]
    lines_in_plane: List[int] = dataclass_field(default_factory=list)


@dataclass
class RamificationPoint:
    factor: MultiPoly
    multiplicity: int
    index: int
    points: List[Point]


@dataclass
class FamilyZForm:
    """x0 x3^3 + x1 x2^3 + x2 x3 q2(x0, x1) + q4(x0, x1) and the transform reaching it."""

    q2: MultiPoly
    q4: MultiPoly
    transform: ProjectiveTransform
    sigma_field: GaloisField
    sigma_preserves: bool


@dataclass
class TwinReport:
    common: List[int]
    coefficients_vanish: bool
    twins: bool
    agree: bool
    pairwise_disjoint: bool
    tau_preserves: bool
    transversal_count: Optional[int] = None


@dataclass
class LineDossier:
    index: int
    line: ProjLine
    normalizer: ProjectiveTransform
    alpha: MultiPoly
    beta: MultiPoly
    degree: int
    singularity: int
    singular_points: List[Point]
    kind: str
    eliminant: Optional[MultiPoly] = None
    inflection_multiplicities: List[int] = dataclass_field(default_factory=list)
    fibers: List[FiberReport] = dataclass_field(default_factory=list)
    type_p: int = 0
    type_q: int = 0
    valency: int = 0
    extended_valency: int = 0
    ramification: List[RamificationPoint] = dataclass_field(default_factory=list)
    ramification_case: Optional[str] = None
    twin: Optional[int] = None
    family_z: Optional[FamilyZForm] = None
    tangent_plane: Optional[TangentPlane] = None
    violations: List[str] = dataclass_field(default_factory=list)
    findings: List[str] = dataclass_field(default_factory=list)

    @property
    def nonreduced_fibers(self) -> int:
        return sum(1 for f in self.fibers if f.classification == NONREDUCED)


# normalization

def _basis(field: GaloisField) -> List[List[FieldElement]]:
    return [[field.one if i == j else field.zero for i in range(4)] for j in range(4)]


def line_normalizer(line: ProjLine) -> ProjectiveTransform:
    """Transform carrying the line to x0 = x1 = 0."""
    p, q = line.over(line.field)
    extra: List[List[FieldElement]] = []
    for e in _basis(line.field):
        if rank([p, q] + extra + [e]) == len(extra) + 3:
            extra.append(e)
        if len(extra) == 2:
            break
    return ProjectiveTransform.from_columns(extra + [p, q])


def normalized_equation(surface: QuarticSurface, line: ProjLine) -> Tuple[MultiPoly, ProjectiveTransform]:
    if not contains_line(surface, line):
        raise NotOnSurface(f"{line} does not lie on {surface}")
    transform = line_normalizer(line)
    return apply_transform(surface, transform).poly, transform


def alpha_beta(g: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    """Coefficients of x0 and x1 in an equation vanishing on x0 = x1 = 0, as binary cubics."""
    field = g.field
    alpha = {}
    beta = {}
    for (a, b, c, d), coeff in g.terms.items():
        if (a, b) == (1, 0):
            alpha[(c, d)] = coeff
        elif (a, b) == (0, 1):
            beta[(c, d)] = coeff
    return MultiPoly(field, 2, alpha), MultiPoly(field, 2, beta)


def line_degree(alpha: MultiPoly, beta: MultiPoly) -> Tuple[int, MultiPoly]:
    """(d, gcd(alpha, beta)); roots of the gcd are the singular points on the line."""
    g = binary_gcd(alpha, beta)
    return 3 - g.degree, g


def reduced_pair(alpha: MultiPoly, beta: MultiPoly, g: MultiPoly) -> Tuple[MultiPoly, MultiPoly]:
    if g.degree == 0:
        return alpha, beta
    alpha_r = alpha.exact_div(g) if not alpha.is_zero else alpha
    beta_r = beta.exact_div(g) if not beta.is_zero else beta
    return alpha_r, beta_r


# kind

def hessian_condition(g: MultiPoly) -> MultiPoly:
    """det Hess(E_t) on the line, in the ring (x2, x3, t); E_t is the residual cubic in x0 = t x1."""
    field = g.field
    x1, x2, x3, t = MultiPoly.variables(field, 4)
    residual = g.compose([t * x1, x1, x2, x3]).exact_div(x1)
    h = [[residual.diff(i).diff(j) for j in range(3)] for i in range(3)]
    det = (h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
           - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
           + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]))
    return det.substitute(0, 0).drop_variables([1, 2, 3])


def kind_test(g: MultiPoly, alpha_r: MultiPoly, beta_r: MultiPoly) -> Tuple[str, MultiPoly]:
    """First or Second kind, with the eliminant of t between the hessian condition and the pencil."""
    h = hessian_condition(g)
    ring_alpha = alpha_r.embed_variables(3, [0, 1])
    ring_beta = beta_r.embed_variables(3, [0, 1])
    t = MultiPoly.variable(g.field, 3, 2)
    eliminant = resultant(h, t * ring_alpha + ring_beta, 2).drop_variables([0, 1])
    return (SECOND if eliminant.is_zero else FIRST), eliminant


# ramification

def wronskian(alpha_r: MultiPoly, beta_r: MultiPoly) -> MultiPoly:
    return alpha_r.diff(0) * beta_r.diff(1) - alpha_r.diff(1) * beta_r.diff(0)


def _closure_points(form: MultiPoly) -> List[Tuple[FieldElement, FieldElement]]:
    field = form.field
    w = get_field(field.p, field.k * form.degree) if form.degree > 1 else field
    return binary_points(form.over(w))


def ramification(alpha_r: MultiPoly, beta_r: MultiPoly, transform: Optional[ProjectiveTransform] = None
                 ) -> Tuple[List[RamificationPoint], Optional[str]]:
    """Irreducible factors of the Wronskian with ramification index, and the case A/B/C for degree 3."""
    d = max(alpha_r.degree, beta_r.degree)
    if d < 2:
        return [], None
    w = wronskian(alpha_r, beta_r)
    if w.is_zero:
        raise InseparableMap("the Wronskian of the pencil vanishes identically")
    out = []
    indices = []
    for factor, mult in factor_binary_form(w).factors:
        points = []
        for u in _closure_points(factor):
            field = u[0].field
            on_line = [field.zero, field.zero, u[0], u[1]]
            points.append(transform.pull_point(on_line) if transform else canonical_point(on_line))
        out.append(RamificationPoint(factor, mult, mult + 1, points))
        indices.extend([mult + 1] * factor.degree)
    case = None
    if d == 3:
        case = {(2, 2, 2, 2): "A", (3, 2, 2): "B", (3, 3): "C"}.get(tuple(sorted(indices, reverse=True)))
    return out, case


def pencil_parameter(alpha_r: MultiPoly, beta_r: MultiPoly, u: Sequence[FieldElement]) -> Point:
    """The plane t whose residual cubic passes through [0:0:u0:u1]."""
    field = u[0].field
    a = alpha_r.over(field).evaluate(list(u))
    b = beta_r.over(field).evaluate(list(u))
    return canonical_point([-b, a])


# fibers

def _plane_images(field: GaloisField, t: Point) -> List[MultiPoly]:
    u, x2, x3 = MultiPoly.variables(field, 3)
    t0, t1 = point_over(t, field)
    return [u * t0, u * t1, x2, x3]


def _plane_coordinates(y: Sequence[FieldElement], t: Sequence[FieldElement]) -> List[FieldElement]:
    u = y[0] / t[0] if not t[0].is_zero else y[1] / t[1]
    return [u, y[2], y[3]]


def _plane_form(transform: ProjectiveTransform, t: Point, field: GaloisField) -> Point:
    """Plane t1 y0 = t0 y1 in original coordinates."""
    t0, t1 = point_over(t, field)
    m = [[field.embed(c) for c in row] for row in transform.matrix]
    return canonical_point([t1 * a - t0 * b for a, b in zip(m[0], m[1])])


def classify_fiber(g: MultiPoly, transform: ProjectiveTransform, t: Point,
                   members: List[Tuple[int, ProjLine]]) -> FiberReport:
    field = common_field(g.field, t[0].field, *[m.field for _, m in members])
    for attempt in range(2):
        gw = g.over(field)
        section = gw.compose(_plane_images(field, t))
        residual = section.exact_div(MultiPoly.variable(field, 3, 0))
        known = [MultiPoly.variable(field, 3, 0)]
        tw = point_over(t, field)
        for _, m in members:
            ys = [point_over(transform.apply_point(row), field) for row in m.rows]
            a, b = (_plane_coordinates(y, tw) for y in ys)
            known.append(MultiPoly.linear_form(cross(a, b)))
        splitting = factor_ternary_cubic(residual, known)
        if splitting.shape != "line+degenerate-conic" or attempt == 1:
            break
        field = get_field(field.p, field.k * 2)
    shape = splitting.shape
    if shape == "three-lines":
        classification = PFIBER if splitting.is_reduced else NONREDUCED
    elif shape == "line+conic":
        classification = QFIBER
    elif shape == "line+degenerate-conic":
        classification = PFIBER
    else:
        classification = IRREDUCIBLE
    tangent = any(form == MultiPoly.variable(form.field, 3, 0) for form, _ in splitting.lines)
    return FiberReport(t=t, plane=_plane_form(transform, t, field), splitting=splitting,
                       classification=classification, lines_in_plane=sorted(i for i, _ in members),
                       tangent=tangent)


def _parameter_of(transform: ProjectiveTransform, m: ProjLine) -> Point:
    for row in m.rows:
        y = transform.apply_point(row)
        if not (y[0].is_zero and y[1].is_zero):
            return canonical_point([y[0], y[1]])
    raise ValueError(f"{m} lies on the normalized line")


def classify_fibers(g: MultiPoly, transform: ProjectiveTransform, lines: Sequence[ProjLine],
                    neighbours: Sequence[int]) -> Tuple[List[FiberReport], int, int]:
    """Fibers through the other lines meeting the line, and the type (p, q)."""
    groups: Dict[Tuple, Tuple[Point, List[Tuple[int, ProjLine]]]] = {}
    for i in neighbours:
        t = _parameter_of(transform, lines[i])
        groups.setdefault(point_key(t), (t, []))[1].append((i, lines[i]))
    fibers = [classify_fiber(g, transform, t, members) for _, (t, members) in sorted(groups.items())]
    p = sum(1 for f in fibers if f.classification in (PFIBER, NONREDUCED))
    q = sum(1 for f in fibers if f.classification == QFIBER)
    return fibers, p, q


# degree zero

def tangent_plane(g: MultiPoly, transform: ProjectiveTransform, alpha: MultiPoly,
                  beta: MultiPoly) -> Optional[TangentPlane]:
    """The one plane through a degree 0 line tangent along it, and the conic left in its section."""
    monos = sorted(set(alpha.terms) | set(beta.terms))
    if not monos:
        return None
    field = g.field
    t = canonical_point([-beta.coefficient(monos[0]), alpha.coefficient(monos[0])])
    u = MultiPoly.variable(field, 3, 0)
    conic = g.compose(_plane_images(field, t)).exact_div(u * u)
    try:
        conic_r = conic_rank(conic)
    except CharTwoConic:
        return TangentPlane(t, _plane_form(transform, t, field), conic, None, None)
    components = split_conic(conic) if conic_r < 3 else None
    if components is None and conic_r == 2:
        components = split_conic(conic.over(get_field(field.p, field.k * 2)))
    return TangentPlane(t, _plane_form(transform, t, field), conic, conic_r, components)


# bounds

def valency_bound(kind: str, d: int, s: int) -> Optional[int]:
    """Known upper bound for the valency of a line of the given kind, degree and singularity."""
    if d == 0:
        return 2
    if kind == FIRST:
        return {3: 18, 2: 13}.get(d, 3 + 5 * d)
    if kind == SECOND:
        if d == 3:
            return 20
        if d == 2:
            return 10
        return {2: 9, 1: 11}.get(s)
    return None


def dossier_checks(dossier: LineDossier) -> Tuple[List[str], List[str]]:
    """Property violations (bugs) and findings of one dossier."""
    bad: List[str] = []
    notes: List[str] = []
    d, s = dossier.degree, dossier.singularity
    v, vt = dossier.valency, dossier.extended_valency
    p, q = dossier.type_p, dossier.type_q
    if d > 3 - s:
        bad.append(f"degree {d} exceeds 3 - s = {3 - s}")
    if (d == 3) != (s == 0):
        bad.append(f"degree {d} with singularity {s}")
    if v > vt:
        bad.append(f"valency {v} exceeds extended valency {vt}")
    if d >= 1:
        if 3 * p + 2 * q > 24:
            bad.append(f"3p + 2q = {3 * p + 2 * q} exceeds 24")
        if vt > 3 * p + q:
            bad.append(f"extended valency {vt} exceeds 3p + q = {3 * p + q}")
        if d == 3 and not dossier.nonreduced_fibers and v != 3 * p + q:
            bad.append(f"degree 3 line with valency {v} != 3p + q = {3 * p + q}")
    if p == 0 and vt > 12:
        bad.append(f"no p-fibers but extended valency {vt}")
    bound = valency_bound(dossier.kind, d, s)
    if bound is not None and v > bound:
        bad.append(f"valency {v} exceeds {bound} for a {dossier.kind} line with d={d}, s={s}")
    if dossier.kind == FIRST and v > 3 + 5 * d:
        bad.append(f"first kind valency {v} exceeds 3 + 5d = {3 + 5 * d}")
    if dossier.eliminant is not None and not dossier.eliminant.is_zero and dossier.eliminant.degree > 5 * d + 3:
        bad.append(f"eliminant degree {dossier.eliminant.degree} exceeds 5d + 3")
    if vt > v + 7 * s:
        bad.append(f"extended valency {vt} exceeds v + 7s = {v + 7 * s}")
    if v > 18 and dossier.family_z is None:
        bad.append(f"valency {v} but no family Z normal form")
    if vt > 20:
        notes.append(f"extended valency {vt} exceeds 20")
    if dossier.nonreduced_fibers:
        notes.append(f"{dossier.nonreduced_fibers} non-reduced p-fiber(s)")
    return bad, notes


# family Z

def _cube_root_of_unity(field: GaloisField) -> Tuple[GaloisField, FieldElement]:
    w = field if (field.order - 1) % 3 == 0 else get_field(field.p, field.k * 2)
    z = roots(UniPoly(w, [1, 1, 1]))
    if not z:
        raise NormalizationFailed(f"no primitive cube root of unity over {w}")
    return w, z[0]


def _allowed_in_z(mono: Tuple[int, int, int, int]) -> bool:
    a, b, c, d = mono
    return mono in ((1, 0, 0, 3), (0, 1, 3, 0)) or (c, d) == (1, 1) or (c, d) == (0, 0)


def family_z_membership(g: MultiPoly, transform: ProjectiveTransform,
                        alpha: MultiPoly, beta: MultiPoly) -> FamilyZForm:
    """Normal form of a degree-3 second-kind line with two triple ramification points.

    g is the equation in coordinates where the line is x0 = x1 = 0.
    """
    if g.field.p == 3:
        raise NormalizationFailed("the normal form needs characteristic other than 3")
    w_form = wronskian(alpha, beta)
    doubles = [f for f, m in factor_binary_form(w_form).factors if m == 2]
    if sum(f.degree for f in doubles) != 2:
        raise NormalizationFailed("the line does not ramify with index 3 over two points")
    points = [u for f in doubles for u in _closure_points(f)]
    field = common_field(g.field, *[u[0].field for u in points])
    (ra, rb) = [point_over(u, field) for u in points]
    ta = point_over(pencil_parameter(alpha, beta, ra), field)
    tb = point_over(pencil_parameter(alpha, beta, rb), field)
    zero = field.zero
    matrix = [
        [ta[1], -ta[0], zero, zero],
        [tb[1], -tb[0], zero, zero],
        [zero, zero, ra[1], -ra[0]],
        [zero, zero, rb[1], -rb[0]],
    ]
    step = ProjectiveTransform.from_matrix(matrix)
    moved = apply_transform(QuarticSurface(g.over(field)), step).poly
    a3 = moved.coefficient((1, 0, 0, 3))
    b3 = moved.coefficient((0, 1, 3, 0))
    for mono in ((1, 0, 3, 0), (1, 0, 2, 1), (1, 0, 1, 2), (0, 1, 2, 1), (0, 1, 1, 2), (0, 1, 0, 3)):
        if not moved.coefficient(mono).is_zero:
            raise NormalizationFailed("the pencil members at the ramification points are not cubes")
    if a3.is_zero or b3.is_zero:
        raise NormalizationFailed("degenerate ramification planes")
    scale = ProjectiveTransform.from_inverse([
        [a3.inverse(), zero, zero, zero],
        [zero, b3.inverse(), zero, zero],
        [zero, zero, field.one, zero],
        [zero, zero, zero, field.one],
    ])
    moved = apply_transform(QuarticSurface(moved), scale).poly

    x0, x1, x2, x3 = MultiPoly.variables(field, 4)
    three = field(3).inverse()
    d22 = {(a, b): c for (a, b, e, f), c in moved.terms.items() if (e, f) == (2, 0)}
    d33 = {(a, b): c for (a, b, e, f), c in moved.terms.items() if (e, f) == (0, 2)}
    if (2, 0) in d22 or (0, 2) in d33:
        raise NormalizationFailed("quadratic terms cannot be absorbed by a shift along the line")
    shift2 = -(x0 * d22.get((1, 1), zero) + x1 * d22.get((0, 2), zero)) * three
    shift3 = -(x0 * d33.get((2, 0), zero) + x1 * d33.get((1, 1), zero)) * three
    shift_rows = [
        [field.one, zero, zero, zero],
        [zero, field.one, zero, zero],
        [shift2.coefficient((1, 0, 0, 0)), shift2.coefficient((0, 1, 0, 0)), field.one, zero],
        [shift3.coefficient((1, 0, 0, 0)), shift3.coefficient((0, 1, 0, 0)), zero, field.one],
    ]
    shift = ProjectiveTransform.from_inverse(shift_rows)
    normal = apply_transform(QuarticSurface(moved), shift).poly
    stray = [m for m in normal.terms if not _allowed_in_z(m)]
    if stray or not normal.coefficient((1, 0, 0, 3)).is_one or not normal.coefficient((0, 1, 3, 0)).is_one:
        raise NormalizationFailed(f"terms outside the normal form: {stray}")

    q2 = MultiPoly(field, 2, {(a, b): c for (a, b, e, f), c in normal.terms.items() if (e, f) == (1, 1)})
    q4 = MultiPoly(field, 2, {(a, b): c for (a, b, e, f), c in normal.terms.items() if (e, f) == (0, 0)})
    total = transform.then(step).then(scale).then(shift)

    sigma_field, zeta = _cube_root_of_unity(field)
    nz = normal.over(sigma_field)
    y0, y1, y2, y3 = MultiPoly.variables(sigma_field, 4)
    preserved = nz.compose([y0, y1, y2 * zeta, y3 * zeta * zeta]) == nz
    return FamilyZForm(q2, q4, total, sigma_field, preserved)


# twins

def twin_coefficients(surface: QuarticSurface, l: ProjLine, m: ProjLine) -> Tuple[List[FieldElement], MultiPoly]:
    """The bidegree (2, 2) coefficients with l at x0 = x1 = 0 and m at x2 = x3 = 0."""
    field = common_field(surface.field, l.field, m.field)
    lp, lq = l.over(field)
    mp, mq = m.over(field)
    transform = ProjectiveTransform.from_columns([mp, mq, lp, lq])
    g = apply_transform(surface, transform).poly
    return [g.coefficient(c) for c in TWIN_COEFFICIENTS], g


def _singularity(line: ProjLine, sing: Sequence[SingularPoint]) -> int:
    return sum(1 for sp in sing if line.contains_point(sp.point))


def twin_test(surface: QuarticSurface, l: int, m: int, lines: LineSet,
              sing: Sequence[SingularPoint] = (), table: Optional[IntersectionTable] = None,
              cross_check: bool = False) -> TwinReport:
    a, b = lines[l], lines[m]
    if intersection(a, b) != DISJOINT:
        raise PreconditionViolated("twin lines must be disjoint")
    if _singularity(a, sing) or _singularity(b, sing):
        raise PreconditionViolated("twin lines must not pass through singular points")
    if table is not None:
        common = table.common_neighbours(l, m)
    else:
        common = [i for i, c in enumerate(lines)
                  if i not in (l, m) and isinstance(intersection(a, c), tuple)
                  and isinstance(intersection(b, c), tuple)]
    coeffs, g = twin_coefficients(surface, a, b)
    vanish = all(c.is_zero for c in coeffs)
    twins = len(common) >= 9
    disjoint = all(intersection(lines[i], lines[j]) == DISJOINT
                   for k, i in enumerate(common) for j in common[k + 1:])
    field = g.field
    x0, x1, x2, x3 = MultiPoly.variables(field, 4)
    flipped = g.compose([-x0, -x1, x2, x3])
    tau = flipped == g or flipped == -g
    transversals = len(transversal_lines(surface, a, b)) if cross_check else None
    report = TwinReport(sorted(common), vanish, twins, vanish == twins, disjoint, tau, transversals)
    if twins and len(common) != 10:
        logger.warning("%d common lines for a twin pair", len(common))
    return report


def find_twin(index: int, lines: LineSet, sing: Sequence[SingularPoint], table: IntersectionTable) -> Optional[int]:
    if _singularity(lines[index], sing):
        return None
    for j in range(len(lines)):
        if j == index or table.meet(index, j) != DISJOINT or _singularity(lines[j], sing):
            continue
        if len(table.common_neighbours(index, j)) >= 9:
            return j
    return None


# dossier

def build_dossier(surface: QuarticSurface, index: int, lines: LineSet, sing: Sequence[SingularPoint],
                  table: Optional[IntersectionTable] = None) -> LineDossier:
    """Full analysis of lines[index] against the complete line set and singular locus."""
    line = lines[index]
    g, transform = normalized_equation(surface, line)
    alpha, beta = alpha_beta(g)
    d, common = line_degree(alpha, beta)
    on_line = [sp.point for sp in sing if line.contains_point(sp.point)]
    s = len(on_line)
    alpha_r, beta_r = reduced_pair(alpha, beta, common)

    table = table or IntersectionTable(lines)
    neighbours = table.meeting(index)
    singular_keys = {point_key(p) for p in on_line}
    smooth = [i for i in neighbours if point_key(table.meet(index, i)) not in singular_keys]

    dossier = LineDossier(index=index, line=line, normalizer=transform, alpha=alpha, beta=beta,
                          degree=d, singularity=s, singular_points=on_line, kind=DEGREE_ZERO,
                          valency=len(smooth), extended_valency=len(neighbours))
    if common.degree >= 1 and distinct_root_count(common) != s:
        dossier.violations.append(f"{distinct_root_count(common)} common roots of alpha, beta but {s} singular points")

    dossier.fibers, dossier.type_p, dossier.type_q = classify_fibers(g, transform, lines, neighbours)
    if d == 0:
        dossier.tangent_plane = tangent_plane(g, transform, alpha, beta)
        if dossier.tangent_plane is not None:
            key = point_key(dossier.tangent_plane.t)
            dossier.tangent_plane.lines_in_plane = sorted(
                i for i in neighbours if point_key(_parameter_of(transform, lines[i])) == key)
    if d >= 1:
        dossier.kind, dossier.eliminant = kind_test(g, alpha_r, beta_r)
        if dossier.kind == FIRST:
            dossier.inflection_multiplicities = root_multiplicities(dossier.eliminant)
    if d >= 2:
        dossier.ramification, dossier.ramification_case = ramification(alpha_r, beta_r, transform)
        ramified = {}
        for rp in dossier.ramification:
            for u in _closure_points(rp.factor):
                ramified[point_key(pencil_parameter(alpha_r, beta_r, u))] = rp.index
        for fiber in dossier.fibers:
            fiber.ramified = ramified.get(point_key(fiber.t))
    if dossier.kind == SECOND and d == 3 and dossier.ramification_case == "C":
        try:
            dossier.family_z = family_z_membership(g, transform, alpha_r, beta_r)
        except NormalizationFailed as e:
            dossier.findings.append(f"family Z normalization failed: {e}")
            logger.warning("line %d: family Z normalization failed: %s", index, e)
    dossier.twin = find_twin(index, lines, sing, table)

    bad, notes = dossier_checks(dossier)
    dossier.violations.extend(bad)
    dossier.findings.extend(notes)
    for note in notes:
        logger.warning("line %d: %s", index, note)
    logger.debug("line %d: d=%d s=%d %s (p,q)=(%d,%d) v=%d vt=%d", index, d, s, dossier.kind,
                 dossier.type_p, dossier.type_q, dossier.valency, dossier.extended_valency)
    return dossier


# planes through singular points

@dataclass
class PlaneSplitting:
    point: Point
    plane: Point
    lines: List[Tuple[int, int]]


def _on_plane(form: Sequence[FieldElement], row: Sequence[FieldElement]) -> bool:
    field = row[0].field
    return sum((a * b for a, b in zip(form, row)), field.zero).is_zero


def plane_section_lines(surface: QuarticSurface, plane: Sequence[FieldElement],
                        lines: LineSet) -> Tuple[List[Tuple[int, int]], int]:
    """Lines of the set in the plane with their multiplicity in the plane section, and the leftover degree."""
    contained = []
    for idx, line in enumerate(lines):
        w = common_field(plane[0].field, line.field)
        form = point_over(plane, w)
        if all(_on_plane(form, row) for row in line.over(w)):
            contained.append(idx)
    field = common_field(surface.field, plane[0].field, *[lines[i].field for i in contained])
    form = point_over(plane, field)
    basis = nullspace([list(form)])
    columns = [[basis[k][i] for k in range(3)] for i in range(4)]
    y = MultiPoly.variables(field, 3)
    images = [sum((y[k] * basis[k][i] for k in range(3)), MultiPoly(field, 3)) for i in range(4)]
    section = surface.over(field).compose(images)
    found = []
    for idx in contained:
        coords = [solve(columns, row) for row in lines[idx].over(field)]
        linear = MultiPoly.linear_form(cross(*coords))
        mult = 0
        while section.degree >= 1:
            quotient, remainder = section.divmod(linear)
            if not remainder.is_zero:
                break
            section = quotient
            mult += 1
        found.append((idx, mult))
    return found, 4 - sum(m for _, m in found)


def plane_census(surface: QuarticSurface, lines: LineSet, sing: Sequence[SingularPoint],
                 table: Optional[IntersectionTable] = None) -> List[PlaneSplitting]:
    """Planes through singular points that split the surface into four lines."""
    table = table or IntersectionTable(lines)
    out = []
    for sp in sing:
        through = [i for i, line in enumerate(lines) if line.contains_point(sp.point)]
        planes: Dict[Tuple, Point] = {}
        for i in through:
            for j in table.meeting(i):
                plane = plane_of(lines[i], lines[j])
                planes.setdefault(point_key(plane), plane)
        for key in sorted(planes):
            found, left = plane_section_lines(surface, planes[key], lines)
            if left == 0:
                out.append(PlaneSplitting(sp.point, planes[key], found))
    logger.debug("plane census: %d split planes through singular points", len(out))
    return out
