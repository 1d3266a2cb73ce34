"""
Line enumeration on a quartic surface.

Lines are stored in canonical reduced row-echelon form, one of six
Schubert cells of the Grassmannian of lines in P^3. Two enumeration paths
share the cell parametrization: an elimination solver that is complete over
the algebraic closure, and a sweep over GF(p^k) for k up to a tower depth.
"""

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations, product
from typing import Dict, List, NoReturn, Optional, Sequence, Tuple, Union

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.gf.gf import FieldElement, GaloisField, common_field, get_field, minimal_field
from com.mhire.qlines.services.poly.factor import binary_gcd, binary_points, factor_binary_form, factor_univariate, roots
from com.mhire.qlines.services.poly.linalg import nullspace, rank, rref
from com.mhire.qlines.services.poly.poly import MultiPoly, UniPoly, gcd
from com.mhire.qlines.services.poly.solve import NotZeroDimensional, SolverDegeneration, solve_zero_dimensional
from com.mhire.qlines.services.quartic.quartic import (
    Point,
    ProjectiveTransform,
    QuarticSurface,
    SweepTooLarge,
    apply_transform,
    canonical_point,
    format_point,
    point_key,
    point_over,
    random_transform,
)

logger = logging.getLogger(__name__)

CELLS: List[Tuple[int, int]] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


class ReducibleSurface(QlinesError):
    pass


class RuledSurface(QlinesError):
    pass


def cell_free_columns(cell: Tuple[int, int]) -> Tuple[List[int], List[int]]:
    """Free columns of the two RREF rows of a cell."""
    i, j = cell
    return [c for c in range(4) if c > i and c != j], [c for c in range(4) if c > j]


def ambient_line_count(q: int) -> int:
    """Number of lines in P^3 over GF(q)."""
    return (q * q + 1) * (q * q + q + 1)


class ProjLine:
    """A line of P^3 as the row space of a 2x4 matrix in reduced row-echelon form."""

    __slots__ = ("rows", "pivots")

    def __init__(self, rows: Sequence[Sequence[FieldElement]]):
        reduced, pivots = rref(rows)
        if len(pivots) != 2:
            raise ValueError("two independent points are needed to span a line")
        entries = [c for row in reduced for c in row]
        big = entries[0].field
        small = minimal_field(entries)
        if small is not big:
            reduced = [[big.restrict(c, small) for c in row] for row in reduced]
        self.rows = tuple(tuple(row) for row in reduced)
        self.pivots = tuple(pivots)

    @classmethod
    def from_points(cls, p: Sequence[FieldElement], q: Sequence[FieldElement]) -> "ProjLine":
        field = common_field(p[0].field, q[0].field)
        return cls([point_over(p, field), point_over(q, field)])

    @classmethod
    def from_equations(cls, a: Sequence[FieldElement], b: Sequence[FieldElement]) -> "ProjLine":
        """The line where two independent linear forms vanish."""
        field = common_field(a[0].field, b[0].field)
        basis = nullspace([point_over(a, field), point_over(b, field)])
        return cls(basis)

    @property
    def field(self) -> GaloisField:
        return self.rows[0][0].field

    @property
    def degree(self) -> int:
        """Degree over GF(p) of the field of definition."""
        return self.field.k

    @property
    def cell(self) -> Tuple[int, int]:
        return self.pivots

    def key(self) -> Tuple:
        return (self.pivots, self.field.k, tuple(c.coeffs for row in self.rows for c in row))

    def __eq__(self, other):
        return isinstance(other, ProjLine) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __lt__(self, other: "ProjLine"):
        return self.key() < other.key()

    def __repr__(self):
        return f"ProjLine({format_point(self.rows[0])}, {format_point(self.rows[1])})"

    def over(self, field: GaloisField) -> List[List[FieldElement]]:
        return [list(point_over(row, field)) for row in self.rows]

    def frobenius(self) -> "ProjLine":
        return ProjLine([[c.frobenius() for c in row] for row in self.rows])

    def equations(self) -> List[List[FieldElement]]:
        """Two linear forms cutting out the line."""
        return nullspace([list(r) for r in self.rows])

    def contains_point(self, point: Sequence[FieldElement]) -> bool:
        field = common_field(self.field, point[0].field)
        return rank(self.over(field) + [list(point_over(point, field))]) == 2

    def point_at(self, s: FieldElement, t: FieldElement) -> Point:
        field = common_field(self.field, s.field, t.field)
        p, q = self.over(field)
        s, t = field.embed(s), field.embed(t)
        return canonical_point([s * a + t * b for a, b in zip(p, q)])


def contains_line(surface: QuarticSurface, line: ProjLine) -> bool:
    """True iff F(s P + t Q) vanishes identically."""
    return _restrict_to_line(surface, line).is_zero


def _restrict_to_line(surface: QuarticSurface, line: ProjLine) -> MultiPoly:
    field = common_field(surface.field, line.field)
    p, q = line.over(field)
    s, t = MultiPoly.variables(field, 2)
    return surface.over(field).compose([s * a + t * b for a, b in zip(p, q)])


@dataclass
class LineSet:
    lines: List[ProjLine] = dataclass_field(default_factory=list)
    complete: bool = False
    fingerprint: str = ""
    method: str = "solver"
    transform_seed: Optional[int] = None

    @property
    def max_degree(self) -> int:
        return max((line.degree for line in self.lines), default=1)

    def index(self, line: ProjLine) -> int:
        return self.lines.index(line)

    def __len__(self):
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i):
        return self.lines[i]


def _finalize(lines, surface: QuarticSurface, method: str, complete: bool,
              seed: Optional[int] = None) -> LineSet:
    unique = {}
    for line in lines:
        unique.setdefault(line.key(), line)
    ordered = [unique[k] for k in sorted(unique)]
    return LineSet(ordered, complete, surface.fingerprint, method, seed)


# solver

def _cell_rows(field: GaloisField, cell: Tuple[int, int], nvars: int, offset: int = 0):
    """Symbolic rows of a cell; unknowns are ring variables offset, offset+1, ..."""
    i, j = cell
    free_p, free_q = cell_free_columns(cell)
    one = MultiPoly.constant(field, nvars, 1)
    zero = MultiPoly(field, nvars)
    p_row = [zero] * 4
    q_row = [zero] * 4
    p_row[i] = one
    q_row[j] = one
    k = offset
    for c in free_p:
        p_row[c] = MultiPoly.variable(field, nvars, k)
        k += 1
    for c in free_q:
        q_row[c] = MultiPoly.variable(field, nvars, k)
        k += 1
    return p_row, q_row


def cell_equations(surface: QuarticSurface, cell: Tuple[int, int]) -> List[MultiPoly]:
    """The five coefficient conditions of F(s P + t Q) in the cell unknowns."""
    free_p, free_q = cell_free_columns(cell)
    n = len(free_p) + len(free_q)
    field = surface.field
    p_row, q_row = _cell_rows(field, cell, n + 2)
    s = MultiPoly.variable(field, n + 2, n)
    t = MultiPoly.variable(field, n + 2, n + 1)
    restricted = surface.poly.compose([s * a + t * b for a, b in zip(p_row, q_row)])
    groups: Dict[Tuple[int, int], Dict] = {}
    for mono, c in restricted.terms.items():
        groups.setdefault(mono[n:], {})[mono[:n]] = c
    return [MultiPoly(field, n, groups[k]) for k in sorted(groups)]


def _line_from_cell(cell: Tuple[int, int], values: Sequence[FieldElement], field: GaloisField) -> ProjLine:
    i, j = cell
    free_p, free_q = cell_free_columns(cell)
    p_row = [field.zero] * 4
    q_row = [field.zero] * 4
    p_row[i] = field.one
    q_row[j] = field.one
    k = 0
    for c in free_p:
        p_row[c] = values[k]
        k += 1
    for c in free_q:
        q_row[c] = values[k]
        k += 1
    return ProjLine([p_row, q_row])


def _solve_cell(surface: QuarticSurface, cell: Tuple[int, int]) -> List[ProjLine]:
    free_p, free_q = cell_free_columns(cell)
    if not free_p and not free_q:
        line = _line_from_cell(cell, [], surface.field)
        return [line] if contains_line(surface, line) else []
    equations = cell_equations(surface, cell)
    if all(e.is_zero for e in equations):
        raise RuledSurface(f"every line of cell {cell} lies on the surface")
    try:
        solutions = solve_zero_dimensional(equations)
    except NotZeroDimensional:
        _raise_infinite(surface, cell, equations)
    lines = []
    for values in solutions:
        field = values[0].field
        lines.append(_line_from_cell(cell, values, field))
    logger.debug("cell %s: %d lines", cell, len(lines))
    return lines


def _raise_infinite(surface: QuarticSurface, cell, equations: List[MultiPoly]) -> NoReturn:
    """Tell a plane component from other infinite families of lines, then raise."""
    rng = random.Random(Config().seed)
    n = equations[0].nvars
    field = surface.field
    for _ in range(4):
        fixed = list(equations)
        for k in range(n):
            value = field.random_element(rng)
            x = MultiPoly.variable(field, n, k)
            fixed.append(x - value)
            try:
                samples = solve_zero_dimensional(fixed)
            except NotZeroDimensional:
                continue
            for values in samples:
                line = _line_from_cell(cell, values, values[0].field)
                if planes_in_surface(surface, line):
                    raise ReducibleSurface(f"the surface contains a plane through {line}")
            break
    raise RuledSurface(f"infinitely many lines in cell {cell}")


def planes_in_surface(surface: QuarticSurface, line: ProjLine) -> List[List[FieldElement]]:
    """Planes through a line that are components of the surface, as points spanning them with the line."""
    field = common_field(surface.field, line.field)
    p, q = line.over(field)
    extra = [e for e in _standard_basis(field) if rank([p, q, e]) == 3]
    r = extra[0]
    s_vec = next(e for e in extra[1:] if rank([p, q, r, e]) == 4)
    a, b, c, t = MultiPoly.variables(field, 4)
    images = [a * p[i] + b * q[i] + c * r[i] + c * t * s_vec[i] for i in range(4)]
    composed = surface.over(field).compose(images)
    groups: Dict[Tuple[int, int, int], Dict[Tuple[int, ...], FieldElement]] = {}
    for mono, coeff in composed.terms.items():
        groups.setdefault(mono[:3], {})[(mono[3],)] = coeff
    h = None
    for terms in groups.values():
        u = UniPoly(field, [terms.get((e,), field.zero) for e in range(max(m[0] for m in terms) + 1)])
        h = u if h is None else gcd(h, u)
    out = []
    if h is not None and h.degree >= 1:
        for factor, _ in factor_univariate(h).factors:
            w = field if factor.degree == 1 else get_field(field.p, field.k * factor.degree)
            root = roots(factor.over(w))[0]
            out.append([w.embed(x) + root * w.embed(y) for x, y in zip(r, s_vec)])
    at_infinity = surface.over(field).compose([a * p[i] + b * q[i] + c * s_vec[i] for i in range(4)])
    if at_infinity.is_zero:
        out.append(list(s_vec))
    return out


def _standard_basis(field: GaloisField) -> List[List[FieldElement]]:
    return [[field.one if i == j else field.zero for i in range(4)] for j in range(4)]


def enumerate_lines_solver(surface: QuarticSurface) -> LineSet:
    """Every line over the algebraic closure, certified complete."""
    if surface.field.k != 1:
        raise ValueError("the solver needs a surface over a prime field")
    retries = Config().solver_retries
    rng = random.Random(Config().seed)
    attempt_surface = surface
    transform: Optional[ProjectiveTransform] = None
    seed = None
    for attempt in range(retries + 1):
        try:
            with ThreadPoolExecutor(max_workers=Config().threads) as pool:
                per_cell = list(pool.map(lambda c: _solve_cell(attempt_surface, c), CELLS))
            lines = [line for cell_lines in per_cell for line in cell_lines]
            if transform is not None:
                lines = [ProjLine([transform.pull_point(r) for r in line.rows]) for line in lines]
            result = _finalize(lines, surface, "solver", True, seed)
            logger.info("%s: %d lines (solver, max degree %d)", surface, len(result), result.max_degree)
            return result
        except SolverDegeneration as e:
            seed = rng.randrange(2 ** 31)
            logger.warning("solver degenerated (%s); retrying with transform seed %d", e, seed)
            transform = random_transform(surface.field, random.Random(seed))
            attempt_surface = apply_transform(surface, transform)
    raise SolverDegeneration(f"no usable coordinates after {retries} retries")


# sweep

def _univariate_roots_or_all(u: UniPoly, field: GaloisField) -> List[FieldElement]:
    if u.is_zero:
        return list(field.elements())
    return roots(u)


def _sweep_cell(poly: MultiPoly, cell: Tuple[int, int], field: GaloisField) -> List[ProjLine]:
    i, j = cell
    free_p, free_q = cell_free_columns(cell)
    # points Q = e_j + sum b_c e_c on the surface
    q_points: List[List[FieldElement]] = []
    base = [field.zero] * 4
    base[j] = field.one
    if not free_q:
        if poly.evaluate(base).is_zero:
            q_points.append(base)
    else:
        sweep_cols, last = free_q[:-1], free_q[-1]
        x = MultiPoly.variable(field, 1, 0)
        for prefix in product(list(field.elements()), repeat=len(sweep_cols)):
            images = [MultiPoly.constant(field, 1, c) for c in base]
            for col, v in zip(sweep_cols, prefix):
                images[col] = MultiPoly.constant(field, 1, v)
            images[last] = x
            u = poly.compose(images).to_univariate(0)
            for b in _univariate_roots_or_all(u, field):
                pt = list(base)
                for col, v in zip(sweep_cols, prefix):
                    pt[col] = v
                pt[last] = b
                q_points.append(pt)

    lines = []
    m = len(free_p)
    for q_pt in q_points:
        conditions = _direction_conditions(poly, q_pt, i, free_p, field)
        for values in _solve_small(conditions, m, field):
            p_row = [field.zero] * 4
            p_row[i] = field.one
            for col, v in zip(free_p, values):
                p_row[col] = v
            lines.append(ProjLine([p_row, q_pt]))
    return lines


def _direction_conditions(poly: MultiPoly, q_pt, i: int, free_p: List[int],
                          field: GaloisField) -> List[MultiPoly]:
    m = len(free_p)
    n = m + 2
    s = MultiPoly.variable(field, n, m)
    t = MultiPoly.variable(field, n, m + 1)
    p_row = [MultiPoly(field, n)] * 4
    p_row[i] = MultiPoly.constant(field, n, 1)
    for k, col in enumerate(free_p):
        p_row[col] = MultiPoly.variable(field, n, k)
    restricted = poly.compose([s * c + t * a for a, c in zip(p_row, q_pt)])
    groups: Dict[Tuple[int, int], Dict] = {}
    for mono, c in restricted.terms.items():
        groups.setdefault(mono[m:], {})[mono[:m]] = c
    return [MultiPoly(field, m, groups[k]) for k in sorted(groups)]


def _solve_small(conditions: List[MultiPoly], m: int, field: GaloisField) -> List[Tuple[FieldElement, ...]]:
    """GF(q)-rational common zeros of polynomials in at most two unknowns."""
    conditions = [c for c in conditions if not c.is_zero]
    if m == 0:
        return [] if conditions else [()]
    if any(c.degree == 0 for c in conditions):
        return []
    if m == 1:
        h = None
        for c in conditions:
            u = c.to_univariate(0)
            h = u if h is None else gcd(h, u)
        if h is None:
            raise RuledSurface("a pencil of lines through one point lies on the surface")
        return [(r,) for r in roots(h)]
    for c in conditions:
        if c.degree == 1:
            a0 = c.coefficient((1, 0))
            a1 = c.coefficient((0, 1))
            c0 = c.coefficient((0, 0))
            solve_for, other = (1, 0) if not a1.is_zero else (0, 1)
            coef = a1 if solve_for == 1 else a0
            rest = a0 if solve_for == 1 else a1
            y = MultiPoly.variable(field, 1, 0)
            images = [None, None]
            images[other] = y
            images[solve_for] = (y * rest + c0) * (-coef.inverse())
            reduced = [d.compose(images) for d in conditions]
            out = []
            for (v,) in _solve_small(reduced, 1, field):
                w = (-(rest * v + c0)) / coef
                pair = [None, None]
                pair[other] = v
                pair[solve_for] = w
                out.append(tuple(pair))
            return out
    out = []
    for v in field.elements():
        reduced = [d.substitute(0, v).drop_variables([1]) for d in conditions]
        for (w,) in _solve_small(reduced, 1, field):
            out.append((v, w))
    return out


def enumerate_lines_sweep(surface: QuarticSurface, max_degree: Optional[int] = None,
                          force: bool = False) -> LineSet:
    """Lines defined over GF(p^k), k <= max_degree, found cell by cell."""
    max_degree = max_degree or Config().max_degree
    limit = Config().sweep_limit
    lines: List[ProjLine] = []
    for k in range(1, max_degree + 1):
        field = get_field(surface.p, k)
        if field.order ** 4 > limit and not force:
            raise SweepTooLarge(f"sweep over {field} exceeds the work limit; use force")
        poly = surface.over(field)
        with ThreadPoolExecutor(max_workers=Config().threads) as pool:
            per_cell = list(pool.map(lambda c: _sweep_cell(poly, c, field), CELLS))
        found = [line for cell_lines in per_cell for line in cell_lines]
        logger.debug("sweep over %s: %d lines", field, len(found))
        lines.extend(found)
    result = _finalize(lines, surface, "sweep", False)
    certify_line_set(result)
    logger.info("%s: %d lines (sweep, K=%d)", surface, len(result), max_degree)
    return result


def enumerate_lines(surface: QuarticSurface, method: str = "solver",
                    max_degree: Optional[int] = None, force: bool = False) -> LineSet:
    if method == "solver":
        return enumerate_lines_solver(surface)
    if method == "sweep":
        return enumerate_lines_sweep(surface, max_degree, force)
    raise ValueError(f"unknown enumeration method {method!r}")


def certify_line_set(lines: LineSet) -> None:
    """Raise when the configuration can only occur on a reducible or ruled surface."""
    per_plane: Dict[Tuple, set] = {}
    per_point: Dict[Tuple, set] = {}
    for a, b in combinations(range(len(lines)), 2):
        meet = intersection(lines[a], lines[b])
        if not isinstance(meet, tuple):
            continue
        per_point.setdefault(point_key(meet), set()).update((a, b))
        plane = plane_of(lines[a], lines[b])
        per_plane.setdefault(point_key(plane), set()).update((a, b))
    for members in per_plane.values():
        if len(members) > 4:
            raise ReducibleSurface(f"{len(members)} lines in one plane")
    for members in per_point.values():
        if len(members) > 12:
            raise RuledSurface(f"{len(members)} lines through one point")


# orbits and intersections

def galois_orbits(lines: Sequence[ProjLine]) -> List[List[int]]:
    """Partition of line indices into Frobenius orbits."""
    index = {line.key(): n for n, line in enumerate(lines)}
    seen = set()
    orbits = []
    for n, line in enumerate(lines):
        if n in seen:
            continue
        orbit = []
        current = line
        while True:
            k = index.get(current.key())
            if k is None or k in orbit:
                break
            orbit.append(k)
            current = current.frobenius()
        seen.update(orbit)
        orbits.append(sorted(orbit))
    return orbits


DISJOINT = "disjoint"
EQUAL = "equal"


def intersection(a: ProjLine, b: ProjLine) -> Union[Point, str]:
    """The meeting point of two lines, or DISJOINT, or EQUAL."""
    field = common_field(a.field, b.field)
    pa, qa = a.over(field)
    pb, qb = b.over(field)
    r = rank([pa, qa, pb, qb])
    if r == 4:
        return DISJOINT
    if r == 2:
        return EQUAL
    columns = [[pa[i], qa[i], pb[i], qb[i]] for i in range(4)]
    coeffs = nullspace(columns)[0]
    return canonical_point([coeffs[0] * x + coeffs[1] * y for x, y in zip(pa, qa)])


def plane_of(a: ProjLine, b: ProjLine) -> Point:
    """Linear form (as a canonical point of the dual space) of the plane spanned by two meeting lines."""
    field = common_field(a.field, b.field)
    rows = a.over(field) + b.over(field)
    return canonical_point(nullspace(rows)[0])


# transversals

def _binary_roots_closure(form: MultiPoly) -> List[Tuple[FieldElement, FieldElement]]:
    """Roots [u0:u1] of a nonzero binary form over the closure."""
    field = form.field
    out = []
    for factor, _ in factor_binary_form(form).factors:
        w = field if factor.degree == 1 else get_field(field.p, field.k * factor.degree)
        out.extend(binary_points(factor.over(w)))
    return out


def _binary_gcd_all(forms: List[MultiPoly]) -> Optional[MultiPoly]:
    g = None
    for f in forms:
        if f.is_zero:
            continue
        g = f if g is None else binary_gcd(g, f)
    return g


def transversal_lines(surface: QuarticSurface, l: ProjLine, m: ProjLine) -> List[ProjLine]:
    """All lines on the surface meeting two disjoint lines of it."""
    if intersection(l, m) != DISJOINT:
        raise ValueError("transversals are defined for disjoint lines")
    field = common_field(surface.field, l.field, m.field)
    lp, lq = l.over(field)
    mp, mq = m.over(field)
    transform = ProjectiveTransform.from_columns([mp, mq, lp, lq])
    g = apply_transform(surface, transform).over(field)

    u0, u1, s, t = MultiPoly.variables(field, 4)
    on_l = [MultiPoly(field, 4), MultiPoly(field, 4), u0, u1]
    grad = [d.compose(on_l) for d in g.gradient()[:2]]
    p0, p1 = grad
    found: List[ProjLine] = []

    def conditions(images) -> List[MultiPoly]:
        composed = g.compose(images)
        groups: Dict[Tuple[int, int], Dict] = {}
        for mono, c in composed.terms.items():
            groups.setdefault(mono[2:], {})[mono[:2] + (0, 0)] = c
        return [MultiPoly(field, 4, groups[k]).drop_variables([0, 1]) for k in sorted(groups)]

    def add(u: Tuple[FieldElement, FieldElement], v: Tuple[FieldElement, FieldElement]):
        w = common_field(u[0].field, v[0].field)
        a = [w.zero, w.zero, w.embed(u[0]), w.embed(u[1])]
        b = [w.embed(v[0]), w.embed(v[1]), w.zero, w.zero]
        found.append(ProjLine([transform.pull_point(a), transform.pull_point(b)]))

    if p0.is_zero and p1.is_zero:
        raise RuledSurface(f"{l} is a line of singular points")
    images = [-(t * p1), t * p0, s * u0, s * u1]
    conds = [c for c in conditions(images) if not c.is_zero]
    common = _binary_gcd_all(conds)
    if common is None:
        raise RuledSurface(f"every point of {l} lies on a transversal to {m}")
    p0b = p0.drop_variables([0, 1])
    p1b = p1.drop_variables([0, 1])
    for u in _binary_roots_closure(common) if common.degree >= 1 else []:
        w = u[0].field
        v0 = -p1b.over(w).evaluate(list(u))
        v1 = p0b.over(w).evaluate(list(u))
        if v0.is_zero and v1.is_zero:
            continue
        add(u, (v0, v1))

    # points of l where the transversal direction is not fixed by the gradient
    special = _binary_gcd_all([p0b, p1b])
    if special is not None and special.degree >= 1:
        for u in _binary_roots_closure(special):
            w = u[0].field
            gw = g.over(w)
            # F(s u + t v) for fixed u: every s^i t^j coefficient is a binary form in v
            vs, vt = s.over(w), t.over(w)
            full = gw.compose([vt * MultiPoly.variable(w, 4, 0), vt * MultiPoly.variable(w, 4, 1),
                               vs * u[0], vs * u[1]])
            groups: Dict[Tuple[int, int], Dict] = {}
            for mono, c in full.terms.items():
                groups.setdefault(mono[2:], {})[mono[:2] + (0, 0)] = c
            vconds = [MultiPoly(w, 4, groups[k]).drop_variables([0, 1]) for k in sorted(groups)]
            vcommon = _binary_gcd_all(vconds)
            if vcommon is None:
                raise RuledSurface(f"a cone of lines through {format_point(u)} on {l}")
            for v in _binary_roots_closure(vcommon) if vcommon.degree >= 1 else []:
                add(u, v)
    unique = {line.key(): line for line in found}
    return [unique[k] for k in sorted(unique)]


def all_lines(field: GaloisField) -> List[ProjLine]:
    """Every line of P^3 over a finite field, one per canonical form."""
    elements = list(field.elements())
    out = []
    for cell in CELLS:
        free_p, free_q = cell_free_columns(cell)
        for values in product(elements, repeat=len(free_p) + len(free_q)):
            out.append(_line_from_cell(cell, values, field))
    return out


class IntersectionTable:
    """Pairwise meetings of a line set, computed once and shared by dossiers and the graph."""

    def __init__(self, lines: Sequence[ProjLine]):
        self.lines = list(lines)
        n = len(self.lines)
        pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
        with ThreadPoolExecutor(max_workers=Config().threads) as pool:
            results = list(pool.map(lambda ab: intersection(self.lines[ab[0]], self.lines[ab[1]]), pairs))
        self._meet: Dict[Tuple[int, int], Union[Point, str]] = dict(zip(pairs, results))

    def meet(self, a: int, b: int) -> Union[Point, str]:
        if a == b:
            return EQUAL
        return self._meet[(a, b) if a < b else (b, a)]

    def meeting(self, a: int) -> List[int]:
        """Indices of the lines meeting line a in a point."""
        return [b for b in range(len(self.lines)) if b != a and isinstance(self.meet(a, b), tuple)]

    def common_neighbours(self, a: int, b: int) -> List[int]:
        left = set(self.meeting(a))
        return [c for c in self.meeting(b) if c in left]
