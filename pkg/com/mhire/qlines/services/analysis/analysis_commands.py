import argparse
import logging
from typing import Optional

from com.mhire.qlines.config.errors import QlinesError
from com.mhire.qlines.services.analysis.analysis import (
    AnalysisCache,
    analyze_surface,
    graph_summary,
    line_dossier,
    load_surface,
    surface_graph,
    to_report,
)
from com.mhire.qlines.services.analysis.analysis_schema import AnalysisReport
from com.mhire.qlines.services.grass.grass import ReducibleSurface, RuledSurface
from com.mhire.qlines.services.linegraph.linegraph import find_parabolic, to_edge_list, to_json
from com.mhire.qlines.services.quartic.quartic import NonIsolatedSingularLocus, ParseError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_PARSE = 2
EXIT_DEGENERATE = 3
EXIT_NON_ISOLATED = 4
EXIT_ERROR = 5


def exit_code_for(error: Exception) -> int:
    """Process exit code of an error raised by a service; unexpected errors propagate."""
    if isinstance(error, ParseError):
        return EXIT_PARSE
    if isinstance(error, (RuledSurface, ReducibleSurface)):
        return EXIT_DEGENERATE
    if isinstance(error, NonIsolatedSingularLocus):
        return EXIT_NON_ISOLATED
    if isinstance(error, QlinesError):
        return EXIT_ERROR
    if isinstance(error, (ValueError, IndexError)):
        return EXIT_PARSE
    raise error


def cache_for(args: argparse.Namespace) -> Optional[AnalysisCache]:
    if getattr(args, "no_cache", False):
        return None
    return AnalysisCache(getattr(args, "cache_dir", None))


def _method(args: argparse.Namespace) -> str:
    return "sweep" if args.sweep else "solver"


def render_lines(report: AnalysisReport) -> str:
    out = [f"{report.name or report.fingerprint[:12]} over GF({report.p}): {report.line_count} lines "
           f"({report.method}, {'complete' if report.complete else 'partial'})"]
    orbits = ", ".join(f"{count} of size {size}" for size, count in report.orbit_sizes.items())
    out.append(f"orbits: {orbits or 'none'}")
    census = ", ".join(f"{count}x{ade}" for ade, count in report.census.items())
    out.append(f"singular points: {census or 'none'} (total Milnor number {report.milnor_total})")
    out.append(f"{'#':>4} {'k':>2} {'d':>2} {'s':>2} {'kind':<11} {'(p,q)':>7} {'v':>3} {'vt':>3}")
    for line in report.lines:
        pq = f"({line.type_p},{line.type_q})" if line.type_p is not None else "-"
        out.append(f"{line.index:>4} {line.field_degree:>2} {dash(line.degree):>2} {dash(line.singularity):>2} "
                   f"{line.kind or '-':<11} {pq:>7} {line.valency:>3} {line.extended_valency:>3}")
    if report.graph is not None:
        g = report.graph
        out.append(f"graph: {g.edges} edges, {g.meetings} meetings, parabolic {g.parabolic or 'none'}")
    if report.lattice is not None:
        lat = report.lattice
        out.append(f"lattice: rank {lat.rank}, signature ({lat.n_plus},{lat.n_minus}), kernel {lat.n_zero}")
    out.extend(f"violation: {v}" for v in report.violations)
    out.extend(f"finding: {f}" for f in report.findings)
    if report.timing:
        out.append("timing: " + ", ".join(f"{k} {v:.3f}s" for k, v in report.timing.items()))
    return "\n".join(out)


def dash(value) -> str:
    return "-" if value is None else str(value)


def lines_command(args: argparse.Namespace) -> int:
    """
    Analyse a surface and list its lines with their invariants.
    """
    try:
        surface = load_surface(args.surface, args.p)
        analysis = analyze_surface(surface, _method(args), args.max_degree, args.force, cache_for(args))
        report = to_report(analysis, timing=args.timing)
    except Exception as e:
        logger.error("%s", e)
        return exit_code_for(e)
    print(report.model_dump_json(indent=2) if args.json else render_lines(report))
    if args.strict and report.violations:
        return EXIT_FAILED_CHECK
    return EXIT_OK


def dossier_command(args: argparse.Namespace) -> int:
    """
    Full pencil analysis of one line.
    """
    try:
        surface = load_surface(args.surface, args.p)
        report = line_dossier(surface, args.index, _method(args), args.max_degree, args.force, cache_for(args))
    except Exception as e:
        logger.error("%s", e)
        return exit_code_for(e)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        line = report.line
        print(f"line {line.index}: d={line.degree} s={line.singularity} {line.kind} "
              f"(p,q)=({line.type_p},{line.type_q}) v={line.valency} vt={line.extended_valency}")
        print(f"alpha = {report.alpha}")
        print(f"beta = {report.beta}")
        for fiber in report.fibers:
            print(f"  t=[{':'.join(fiber.t)}] {fiber.classification} lines {fiber.lines_in_plane}"
                  + (f" ramified (index {fiber.ramified})" if fiber.ramified else ""))
        if report.ramification:
            print(f"ramification ({report.ramification_case}): {', '.join(report.ramification)}")
        if report.twin is not None:
            print(f"twin: line {report.twin}")
        if report.family_z is not None:
            print(f"family Z: q2 = {report.family_z['q2']}, q4 = {report.family_z['q4']}")
        if report.tangent_plane is not None:
            tp = report.tangent_plane
            split = " * ".join(tp.components) if tp.components else "does not split"
            print(f"tangent plane [{':'.join(tp.plane)}]: residual conic {tp.conic} (rank {dash(tp.conic_rank)}), "
                  f"{split}; lines {tp.lines_in_plane}")
        for v in report.violations:
            print(f"violation: {v}")
        for f in report.findings:
            print(f"finding: {f}")
    if args.strict and report.violations:
        return EXIT_FAILED_CHECK
    return EXIT_OK


def graph_command(args: argparse.Namespace) -> int:
    """
    Export the line graph as an edge list or JSON adjacency, or summarise it.
    """
    try:
        surface = load_surface(args.surface, args.p)
        graph, _ = surface_graph(surface, _method(args), args.max_degree, args.force, cache_for(args))
    except Exception as e:
        logger.error("%s", e)
        return exit_code_for(e)
    if args.format == "edges":
        print(to_edge_list(graph), end="")
    elif args.format == "adjacency":
        print(to_json(graph))
    else:
        summary = graph_summary(graph, find_parabolic(graph))
        if args.json:
            print(summary.model_dump_json(indent=2))
        else:
            print(f"{summary.vertices} vertices, {summary.edges} edges, {summary.meetings} meetings")
            print(f"triangle-free: {summary.triangle_free}, quadrangle-free: {summary.quadrangle_free}")
            print(f"parabolic: {summary.parabolic or 'none'} {summary.parabolic_vertices} "
                  f"v(D)={dash(summary.parabolic_valency)}")
    return EXIT_OK


def cache_command(args: argparse.Namespace) -> int:
    """
    List or clear the analysis cache.
    """
    cache = AnalysisCache(args.cache_dir)
    if args.action == "clear":
        removed = cache.clear()
        logger.info("removed %d cache entries from %s", removed, cache.directory)
        print(f"removed {removed} entries")
        return EXIT_OK
    for path in cache.entries():
        print(path.name)
    return EXIT_OK
