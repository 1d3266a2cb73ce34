import argparse
import logging
from pathlib import Path

from com.mhire.qlines.services.analysis.analysis import enumeration_report, lattice_summary, load_surface, surface_graph
from com.mhire.qlines.services.analysis.analysis_commands import (
    EXIT_FAILED_CHECK,
    EXIT_OK,
    EXIT_PARSE,
    cache_for,
    exit_code_for,
)
from com.mhire.qlines.services.lattice.lattice import (
    GramForm,
    gram_from_graph,
    picard_rank_bound_check,
    quadrangle_free_enumeration,
    signature,
)

logger = logging.getLogger(__name__)


def lemma69_command(args: argparse.Namespace) -> int:
    """
    Rank of every quadrangle-free configuration around a pentagon.
    """
    try:
        result = quadrangle_free_enumeration(args.delta)
    except ValueError as e:
        logger.error("%s", e)
        return EXIT_PARSE
    if args.csv:
        Path(args.csv).write_text(result.to_csv())
        logger.info("wrote %d rows to %s", len(result.rows), args.csv)
    report = enumeration_report(result)
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(f"delta={report.delta}: {report.configurations} configurations")
        if report.passed:
            print(f"all configurations rank >= {report.min_rank} (margin {report.margin})")
        for row in report.counterexamples:
            print(f"counterexample: (a,b,c,d)=({row.a},{row.b},{row.c},{row.d}) rank {row.rank}")
        for row in report.flagged:
            print(f"review: (a,b,c,d)=({row.a},{row.b},{row.c},{row.d}) lines alone span rank {row.lines_rank}, "
                  f"with h {row.rank}")
    return EXIT_OK if report.passed else EXIT_FAILED_CHECK


def lattice_command(args: argparse.Namespace) -> int:
    """
    Signature of a Gram matrix from a JSON file, or of the lines of a surface with h.
    """
    try:
        if args.matrix:
            form = GramForm.from_json(Path(args.matrix).read_text())
            if not form.is_symmetric():
                raise ValueError("Gram matrix is not symmetric")
        else:
            surface = load_surface(args.surface, args.p)
            graph, _ = surface_graph(surface, "sweep" if args.sweep else "solver", args.max_degree, args.force,
                                     cache_for(args))
            form = gram_from_graph(graph.graph, with_h=True)
    except OSError as e:
        logger.error("%s", e)
        return EXIT_PARSE
    except Exception as e:
        logger.error("%s", e)
        return exit_code_for(e)
    if args.export:
        Path(args.export).write_text(form.to_json())
    sig = signature(form, verify=args.verify)
    summary = lattice_summary(sig, form.size, args.delta)
    if args.json:
        print(summary.model_dump_json(indent=2))
    else:
        print(f"{summary.size}x{summary.size}: rank {summary.rank}, "
              f"signature ({summary.n_plus},{summary.n_minus}), kernel {summary.n_zero}")
        print(f"fits signature (1,{args.delta - 1}): {summary.consistent}")
    if args.strict and not picard_rank_bound_check(form, args.delta):
        return EXIT_FAILED_CHECK
    return EXIT_OK
