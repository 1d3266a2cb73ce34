import argparse
import logging
import sys
from typing import List, Optional

from com.mhire.qlines.config.config import Config
from com.mhire.qlines.services.analysis.analysis_commands import (
    cache_command,
    dossier_command,
    graph_command,
    lines_command,
)
from com.mhire.qlines.services.lattice.lattice_commands import lattice_command, lemma69_command
from com.mhire.qlines.services.zoo.zoo_commands import verify_zoo_command

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _surface_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("surface", help="JSON input file or zoo:<name>")
    parser.add_argument("--p", type=int, default=None, help="Characteristic for zoo surfaces")
    parser.add_argument("--sweep", action="store_true",
                        help="Find lines and singular points by sweep instead of elimination")
    parser.add_argument("--max-degree", type=int, default=None, help="Tower depth of the sweep")
    parser.add_argument("--force", action="store_true", help="Sweep even above the work limit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qlines", description="Lines on quartic surfaces over finite fields")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="Warnings and errors only")
    parser.add_argument("--json", action="store_true", help="JSON reports on stdout")
    parser.add_argument("--timing", action="store_true", help="Include phase timings in reports")
    parser.add_argument("--strict", action="store_true", help="Exit 1 when a property check fails")
    parser.add_argument("--threads", type=int, default=None, help="Worker threads (QLINES_THREADS)")
    parser.add_argument("--seed", type=int, default=None, help="Random seed (QLINES_SEED)")
    parser.add_argument("--cache-dir", default=None, help="Analysis cache directory (QLINES_CACHE_DIR)")
    parser.add_argument("--no-cache", action="store_true", help="Bypass the analysis cache")
    sub = parser.add_subparsers(dest="command", required=True)

    lines = sub.add_parser("lines", help="Enumerate and classify the lines of a surface")
    _surface_arguments(lines)
    lines.set_defaults(handler=lines_command)

    dossier = sub.add_parser("dossier", help="Pencil analysis of one line")
    _surface_arguments(dossier)
    dossier.add_argument("index", type=int, help="Index of the line in the sorted line set")
    dossier.set_defaults(handler=dossier_command)

    graph = sub.add_parser("graph", help="Line graph summary or export")
    _surface_arguments(graph)
    graph.add_argument("--format", choices=["summary", "edges", "adjacency"], default="summary")
    graph.set_defaults(handler=graph_command)

    lattice = sub.add_parser("lattice", help="Signature of the lines and h, or of a Gram matrix file")
    lattice.add_argument("surface", nargs="?", default=None, help="JSON input file or zoo:<name>")
    lattice.add_argument("--matrix", default=None, help="Gram matrix as a JSON array of arrays")
    lattice.add_argument("--p", type=int, default=None)
    lattice.add_argument("--sweep", action="store_true")
    lattice.add_argument("--max-degree", type=int, default=None)
    lattice.add_argument("--force", action="store_true")
    lattice.add_argument("--delta", type=int, choices=[20, 22], default=22)
    lattice.add_argument("--export", default=None, help="Write the Gram matrix as JSON")
    lattice.add_argument("--verify", action="store_true", help="Cross-check the rank with sympy")
    lattice.set_defaults(handler=lattice_command)

    lemma = sub.add_parser("lemma69", help="Rank check of quadrangle-free configurations")
    lemma.add_argument("--delta", type=int, choices=[20, 22], default=22)
    lemma.add_argument("--csv", default=None, help="Write one row per configuration")
    lemma.set_defaults(handler=lemma69_command)

    zoo = sub.add_parser("verify-zoo", help="Check catalogued surfaces")
    zoo.add_argument("--entry", action="append", default=None, help="Entry name (repeatable)")
    zoo.add_argument("--all", action="store_true")
    zoo.add_argument("--list", action="store_true", help="List the catalogue")
    zoo.add_argument("--p", type=int, default=None, help="Check at this characteristic only")
    zoo.set_defaults(handler=verify_zoo_command)

    cache = sub.add_parser("cache", help="Inspect or clear the analysis cache")
    cache.add_argument("action", choices=["list", "clear"], nargs="?", default="list")
    cache.add_argument("--dir", dest="cache_dir_override", default=None)
    cache.set_defaults(handler=cache_command)
    return parser


def configure(args: argparse.Namespace) -> None:
    config = Config()
    if args.threads is not None:
        config.threads = max(1, args.threads)
    if args.seed is not None:
        config.seed = args.seed
    if getattr(args, "cache_dir_override", None):
        args.cache_dir = args.cache_dir_override
    if args.cache_dir is None:
        args.cache_dir = config.cache_dir
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else config.log_level
    logging.basicConfig(stream=sys.stderr, level=level, format=LOG_FORMAT, force=True)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "lattice" and not args.matrix and not args.surface:
        parser.error("lattice needs a surface or --matrix")
    configure(args)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
