"""
Analysis Service - Whole-Surface Reports

Runs every stage on one surface (lines, singular locus, dossiers, line
graph, lattice) and checks the known inequalities on the result. Line sets
and singular points are cached on disk by surface fingerprint; a cache
entry is spot-checked against the surface before it is trusted.
"""

import json
import logging
import random
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.analysis.analysis_schema import (
    AnalysisReport,
    EnumerationReport,
    EnumerationRow,
    GraphSummary,
    LatticeSummary,
)
from com.mhire.qlines.services.gf.gf import FieldElement, get_field
from com.mhire.qlines.services.grass.grass import (
    IntersectionTable,
    LineSet,
    ProjLine,
    contains_line,
    enumerate_lines,
    galois_orbits,
)
from com.mhire.qlines.services.lattice.lattice import (
    EnumerationResult,
    SignatureReport,
    gram_from_graph,
    signature,
)
from com.mhire.qlines.services.linegraph.linegraph import (
    LineGraph,
    SubgraphClass,
    build_graph,
    find_parabolic,
    graph_checks,
    is_quadrangle_free,
    is_triangle_free,
    span_and_valency,
    valencies,
)
from com.mhire.qlines.services.pencil.pencil import (
    LineDossier,
    PlaneSplitting,
    build_dossier,
    plane_census,
    twin_test,
)
from com.mhire.qlines.services.pencil.pencil_schema import (
    DossierReport,
    FiberReportModel,
    LineReport,
    TangentPlaneModel,
)
from com.mhire.qlines.services.quartic.quartic import (
    MAX_RDP_MILNOR,
    ParseError,
    QuarticSurface,
    SingularLocus,
    analyze_point,
    canonical_point,
    point_line_violations,
    lines_through_point,
    parse_surface,
    singular_points,
)
from com.mhire.qlines.services.quartic.quartic_schema import SingularPointReport
from com.mhire.qlines.services.zoo.zoo import UnknownEntry, get_entry

logger = logging.getLogger(__name__)

DELTA = 22
MAX_LINES_WITH_SPLIT_PLANE = 62
HIGH_VALENCY = 18
SPOT_CHECKS = 5


class CacheCorrupt(QlinesError):
    pass


def load_surface(source: str, p: Optional[int] = None) -> QuarticSurface:
    """A surface from 'zoo:<name>' or from a JSON input file."""
    if source.startswith("zoo:"):
        try:
            return get_entry(source[4:]).surface(p)
        except UnknownEntry as e:
            raise ParseError(str(e)) from e
    try:
        text = Path(source).read_text()
    except OSError as e:
        raise ParseError(f"cannot read {source}: {e}") from e
    return parse_surface(text, Path(source).stem)


# cache

def _element(value: FieldElement) -> List[int]:
    return list(value.coeffs)


class AnalysisCache:
    """Line sets and singular points on disk, one JSON file per (fingerprint, method)."""

    _locks: Dict[str, threading.Lock] = {}
    _guard = threading.Lock()

    def __init__(self, directory: Optional[str] = None):
        self.directory = Path(directory or Config().cache_dir)

    @staticmethod
    def key(surface: QuarticSurface, method: str, max_degree: Optional[int]) -> str:
        suffix = f"-k{max_degree or Config().max_degree}" if method == "sweep" else ""
        return f"{surface.fingerprint}-{method}{suffix}"

    @contextmanager
    def lock(self, key: str) -> Iterator[None]:
        with self._guard:
            lock = self._locks.setdefault(key, threading.Lock())
        with lock:
            yield

    def path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def load(self, surface: QuarticSurface, key: str) -> Optional[Tuple[LineSet, SingularLocus]]:
        path = self.path(key)
        if not path.exists():
            return None
        try:
            data = json.loads(path.read_text())
            if data["fingerprint"] != surface.fingerprint:
                raise CacheCorrupt(f"{path.name} belongs to another surface")
            lines = []
            for k, rows in data["lines"]:
                field = get_field(surface.p, k)
                lines.append(ProjLine([[field(c) for c in row] for row in rows]))
            line_set = LineSet(lines, data["complete"], surface.fingerprint, data["method"])
            sing_complete = data["sing_complete"]
            points = []
            for orbit, k, coords in data["singular"]:
                field = get_field(surface.p, k)
                points.append((orbit, canonical_point([field(c) for c in coords])))
        except CacheCorrupt:
            raise
        except (ValueError, KeyError, TypeError) as e:
            raise CacheCorrupt(f"{path.name} is unreadable: {e}") from e

        rng = random.Random(Config().seed)
        for i in rng.sample(range(len(lines)), min(SPOT_CHECKS, len(lines))):
            if not contains_line(surface, lines[i]):
                raise CacheCorrupt(f"{path.name}: line {i} is not on the surface")
        for _, point in points:
            if not surface.is_singular_at(point):
                raise CacheCorrupt(f"{path.name}: {point} is not a singular point")
        locus = SingularLocus([analyze_point(surface, pt, orbit) for orbit, pt in points], sing_complete)
        return line_set, locus

    def store(self, key: str, surface: QuarticSurface, lines: LineSet, locus: SingularLocus) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        data = {
            "fingerprint": surface.fingerprint,
            "method": lines.method,
            "complete": lines.complete,
            "lines": [[line.degree, [[_element(c) for c in row] for row in line.rows]] for line in lines],
            "sing_complete": locus.complete,
            "singular": [[sp.orbit, sp.point[0].field.k, [_element(c) for c in sp.point]] for sp in locus],
        }
        self.path(key).write_text(json.dumps(data))

    def entries(self) -> List[Path]:
        if not self.directory.exists():
            return []
        return sorted(self.directory.glob("*.json"))

    def clear(self) -> int:
        removed = 0
        for path in self.entries():
            path.unlink()
            removed += 1
        return removed


def lines_and_locus(surface: QuarticSurface, method: str = "solver", max_degree: Optional[int] = None,
                    force: bool = False, cache: Optional[AnalysisCache] = None) -> Tuple[LineSet, SingularLocus]:
    """Enumeration and singular locus, through the cache when one is given."""
    if cache is None:
        return (enumerate_lines(surface, method, max_degree, force),
                singular_points(surface, method, max_degree, force))
    key = AnalysisCache.key(surface, method, max_degree)
    with cache.lock(key):
        try:
            hit = cache.load(surface, key)
        except CacheCorrupt as e:
            logger.warning("cache entry corrupt, recomputing: %s", e)
            hit = None
        if hit is not None:
            logger.info("cache hit for %s", surface)
            return hit
        logger.info("cache miss for %s", surface)
        lines = enumerate_lines(surface, method, max_degree, force)
        locus = singular_points(surface, method, max_degree, force)
        cache.store(key, surface, lines, locus)
        return lines, locus


# analysis

@dataclass
class SurfaceAnalysis:
    surface: QuarticSurface
    lines: LineSet
    locus: SingularLocus
    orbits: List[List[int]]
    table: IntersectionTable
    dossiers: Dict[int, LineDossier]
    graph: LineGraph
    parabolic: Optional[SubgraphClass]
    lattice: SignatureReport
    lattice_size: int
    planes: List[PlaneSplitting]
    through: Dict[int, int] = dataclass_field(default_factory=dict)
    violations: List[str] = dataclass_field(default_factory=list)
    findings: List[str] = dataclass_field(default_factory=list)
    timing: Dict[str, float] = dataclass_field(default_factory=dict)

    @property
    def is_rdp(self) -> bool:
        return all(sp.is_rdp for sp in self.locus)


@contextmanager
def _phase(timing: Dict[str, float], name: str) -> Iterator[None]:
    logger.info("%s: start", name)
    started = time.perf_counter()
    yield
    timing[name] = round(time.perf_counter() - started, 3)
    logger.info("%s: done in %.3fs", name, timing[name])


def _dossier_or_none(surface: QuarticSurface, index: int, lines: LineSet, locus: SingularLocus,
                     table: IntersectionTable) -> Tuple[int, Optional[LineDossier], Optional[str]]:
    try:
        return index, build_dossier(surface, index, lines, locus.points, table), None
    except QlinesError as e:
        return index, None, f"line {index}: no dossier ({type(e).__name__}: {e})"


def analyze_surface(surface: QuarticSurface, method: str = "solver", max_degree: Optional[int] = None,
                    force: bool = False, cache: Optional[AnalysisCache] = None) -> SurfaceAnalysis:
    """Every stage on one surface, followed by the property checks."""
    timing: Dict[str, float] = {}
    with _phase(timing, "lines"):
        lines, locus = lines_and_locus(surface, method, max_degree, force, cache)
        orbits = galois_orbits(lines.lines)
    with _phase(timing, "intersections"):
        table = IntersectionTable(lines)
    with _phase(timing, "dossiers"):
        with ThreadPoolExecutor(max_workers=Config().threads) as pool:
            results = list(pool.map(lambda i: _dossier_or_none(surface, i, lines, locus, table), range(len(lines))))
    with _phase(timing, "graph"):
        graph = build_graph(lines, locus.points, table)
        parabolic = find_parabolic(graph, DELTA)
        gram = gram_from_graph(graph.graph, with_h=True)
        lattice = signature(gram)
    with _phase(timing, "planes"):
        planes = plane_census(surface, lines, locus.points, table) if len(locus) else []

    analysis = SurfaceAnalysis(surface, lines, locus, orbits, table, {}, graph, parabolic, lattice,
                               gram.size, planes, timing=timing)
    for index, dossier, failure in results:
        if dossier is not None:
            analysis.dossiers[index] = dossier
        else:
            analysis.findings.append(failure)
            logger.warning(failure)
    with _phase(timing, "checks"):
        surface_checks(analysis)
    return analysis


def surface_checks(analysis: SurfaceAnalysis) -> None:
    """Fill in violations (inequalities that must hold) and findings (noteworthy but legal)."""
    bad, notes = analysis.violations, analysis.findings
    lines, graph = analysis.lines, analysis.graph

    for index, dossier in sorted(analysis.dossiers.items()):
        bad.extend(f"line {index}: {v}" for v in dossier.violations)
        notes.extend(f"line {index}: {f}" for f in dossier.findings)

    for n, sp in enumerate(analysis.locus):
        through = len(lines_through_point(sp.point, lines.lines))
        analysis.through[n] = through
        bad.extend(point_line_violations(sp, through))
    if analysis.locus.milnor_total > MAX_RDP_MILNOR:
        bad.append(f"total Milnor number {analysis.locus.milnor_total} exceeds {MAX_RDP_MILNOR}")

    if not analysis.is_rdp:
        notes.append("singular points worse than rational double points; graph bounds not applied")
    elif analysis.surface.p in (2, 3):
        notes.append(f"characteristic {analysis.surface.p}: graph bounds not applied")
    else:
        bad.extend(graph_checks(graph, DELTA))
        if analysis.planes and len(lines) > MAX_LINES_WITH_SPLIT_PLANE:
            bad.append(f"{len(lines)} lines with a split plane through a singular point "
                       f"(at most {MAX_LINES_WITH_SPLIT_PLANE})")
        sig = analysis.lattice
        if sig.n_plus > 1 or sig.rank > DELTA:
            bad.append(f"lines and h span rank {sig.rank} with {sig.n_plus} positive squares")

    degree = dict(graph.graph.degree)
    for a, b in sorted(graph.graph.edges):
        if degree[a] > HIGH_VALENCY and degree[b] > HIGH_VALENCY:
            bad.append(f"meeting lines {a} and {b} both have valency above {HIGH_VALENCY}")

    for index, dossier in sorted(analysis.dossiers.items()):
        if dossier.twin is None or dossier.twin < index:
            continue
        report = twin_test(analysis.surface, index, dossier.twin, lines, analysis.locus.points, analysis.table)
        if not report.agree:
            bad.append(f"twin lines {index}, {dossier.twin}: coefficient test disagrees with {len(report.common)} "
                       "common lines")
        if report.twins and not report.pairwise_disjoint:
            bad.append(f"twin lines {index}, {dossier.twin}: common lines are not pairwise disjoint")
    for v in bad:
        logger.debug("violation: %s", v)


# reports

def _strings(values) -> List[str]:
    return [repr(c) for c in values]


def _orbit_of(orbits: List[List[int]], index: int) -> int:
    return next(n for n, members in enumerate(orbits) if index in members)


def _line_report(line: ProjLine, index: int, orbit: int, valency: int, extended: int,
                 dossier: Optional[LineDossier]) -> LineReport:
    report = LineReport(index=index, rows=[_strings(row) for row in line.rows], field_degree=line.degree,
                        orbit=orbit, valency=valency, extended_valency=extended)
    if dossier is not None:
        report.degree = dossier.degree
        report.singularity = dossier.singularity
        report.kind = dossier.kind
        report.type_p = dossier.type_p
        report.type_q = dossier.type_q
    return report


def line_reports(analysis: SurfaceAnalysis) -> List[LineReport]:
    pairs = valencies(analysis.graph)
    return [_line_report(line, i, _orbit_of(analysis.orbits, i), *pairs[i], analysis.dossiers.get(i))
            for i, line in enumerate(analysis.lines)]


def graph_summary(g: LineGraph, parabolic: Optional[SubgraphClass]) -> GraphSummary:
    summary = GraphSummary(vertices=len(g), edges=g.graph.number_of_edges(), meetings=g.meetings.number_of_edges(),
                           triangle_free=is_triangle_free(g), quadrangle_free=is_quadrangle_free(g))
    if parabolic is not None:
        summary.parabolic = parabolic.name
        summary.parabolic_vertices = parabolic.vertices
        summary.parabolic_valency = span_and_valency(g, parabolic.vertices)[1]
    return summary


def lattice_summary(sig: SignatureReport, size: int, delta: int = DELTA) -> LatticeSummary:
    return LatticeSummary(size=size, rank=sig.rank, n_plus=sig.n_plus, n_minus=sig.n_minus, n_zero=sig.n_zero,
                          delta=delta, consistent=sig.n_plus <= 1 and sig.rank <= delta)


def to_report(analysis: SurfaceAnalysis, timing: bool = False) -> AnalysisReport:
    surface, lines = analysis.surface, analysis.lines
    sizes: Dict[str, int] = {}
    for orbit in analysis.orbits:
        sizes[str(len(orbit))] = sizes.get(str(len(orbit)), 0) + 1
    points = [SingularPointReport(point=_strings(sp.point), field_degree=sp.point[0].field.k, orbit=sp.orbit,
                                  ade_type=sp.ade_type, milnor=sp.milnor, tangent_cone_rank=sp.tangent_cone_rank,
                                  lines_through=analysis.through.get(n, 0))
              for n, sp in enumerate(analysis.locus)]
    return AnalysisReport(
        name=surface.name, p=surface.p, fingerprint=surface.fingerprint, method=lines.method,
        complete=lines.complete, line_count=len(lines),
        orbit_sizes=dict(sorted(sizes.items(), key=lambda kv: int(kv[0]))),
        lines=line_reports(analysis), singular_points=points, census=analysis.locus.census(),
        milnor_total=analysis.locus.milnor_total, split_planes=len(analysis.planes),
        graph=graph_summary(analysis.graph, analysis.parabolic),
        lattice=lattice_summary(analysis.lattice, analysis.lattice_size),
        violations=analysis.violations, findings=analysis.findings,
        timing=dict(analysis.timing) if timing else None,
    )


def line_dossier(surface: QuarticSurface, index: int, method: str = "solver", max_degree: Optional[int] = None,
                 force: bool = False, cache: Optional[AnalysisCache] = None) -> DossierReport:
    """The dossier of one line, without analysing the others."""
    lines, locus = lines_and_locus(surface, method, max_degree, force, cache)
    if not 0 <= index < len(lines):
        raise IndexError(f"line index {index} out of range for {len(lines)} lines")
    table = IntersectionTable(lines)
    dossier = build_dossier(surface, index, lines, locus.points, table)
    return dossier_report(dossier, _orbit_of(galois_orbits(lines.lines), index))


def dossier_report(dossier: LineDossier, orbit: int = 0) -> DossierReport:
    fibers = []
    for fiber in dossier.fibers:
        components = [repr(f) if m == 1 else f"({f!r})^{m}" for f, m in fiber.splitting.lines]
        if fiber.splitting.conic is not None:
            components.append(repr(fiber.splitting.conic))
        fibers.append(FiberReportModel(t=_strings(fiber.t), plane=_strings(fiber.plane),
                                       classification=fiber.classification, components=components,
                                       lines_in_plane=fiber.lines_in_plane, ramified=fiber.ramified,
                                       tangent=fiber.tangent))
    family_z = None
    if dossier.family_z is not None:
        family_z = {"q2": repr(dossier.family_z.q2), "q4": repr(dossier.family_z.q4),
                    "sigma_preserves": dossier.family_z.sigma_preserves}
    tangent = None
    if dossier.tangent_plane is not None:
        tp = dossier.tangent_plane
        tangent = TangentPlaneModel(t=_strings(tp.t), plane=_strings(tp.plane), conic=repr(tp.conic),
                                    conic_rank=tp.conic_rank, components=[repr(c) for c in tp.components or []],
                                    lines_in_plane=tp.lines_in_plane)
    line = _line_report(dossier.line, dossier.index, orbit, dossier.valency, dossier.extended_valency, dossier)
    return DossierReport(
        line=line, alpha=repr(dossier.alpha), beta=repr(dossier.beta),
        singular_points=[_strings(pt) for pt in dossier.singular_points],
        eliminant_degree=dossier.eliminant.degree if dossier.eliminant is not None else None,
        inflection_multiplicities=dossier.inflection_multiplicities,
        ramification=[f"{rp.factor!r}^{rp.multiplicity} (index {rp.index})" for rp in dossier.ramification],
        ramification_case=dossier.ramification_case, fibers=fibers, twin=dossier.twin, family_z=family_z,
        tangent_plane=tangent,
        violations=dossier.violations, findings=dossier.findings,
    )


def surface_graph(surface: QuarticSurface, method: str = "solver", max_degree: Optional[int] = None,
                  force: bool = False, cache: Optional[AnalysisCache] = None) -> Tuple[LineGraph, LineSet]:
    lines, locus = lines_and_locus(surface, method, max_degree, force, cache)
    return build_graph(lines, locus.points), lines


def enumeration_report(result: EnumerationResult) -> EnumerationReport:
    def row(r) -> EnumerationRow:
        return EnumerationRow(a=r.a, b=r.b, c=r.c, d=r.d, rank=r.rank, lines_rank=r.lines_rank)

    return EnumerationReport(delta=result.delta, configurations=len(result.rows), min_rank=result.min_rank,
                             margin=result.min_rank - result.delta,
                             counterexamples=[row(r) for r in result.counterexamples],
                             flagged=[row(r) for r in result.flagged], passed=not result.counterexamples)
