import argparse
import json
import logging

from com.mhire.qlines.services.analysis.analysis_commands import EXIT_FAILED_CHECK, EXIT_OK, dash, exit_code_for
from com.mhire.qlines.services.zoo.zoo import ZOO, verify_zoo

logger = logging.getLogger(__name__)


def verify_zoo_command(args: argparse.Namespace) -> int:
    """
    Recompute catalogued surfaces and compare with their expected invariants.
    """
    if args.list:
        if args.json:
            print(json.dumps([ZOO[name].to_model().model_dump() for name in sorted(ZOO)], indent=2))
        else:
            for name in sorted(ZOO):
                entry = ZOO[name]
                primes = ",".join(str(p) for p in entry.check_primes())
                print(f"{name:<14} p={primes:<10} {entry.expected.lines:>4} lines  {entry.note}")
        return EXIT_OK
    names = None if args.all or not args.entry else args.entry
    try:
        rows = verify_zoo(names, args.p)
    except Exception as e:
        logger.error("%s", e)
        return exit_code_for(e)
    if not args.timing:
        for row in rows:
            row.seconds = None
    if args.json:
        print(json.dumps([row.model_dump() for row in rows], indent=2))
    else:
        print(f"{'entry':<14} {'p':>6} {'expected':>8} {'found':>6}  result")
        for row in rows:
            timing = f" ({row.seconds:.1f}s)" if row.seconds is not None else ""
            print(f"{row.entry:<14} {row.p:>6} {dash(row.expected_lines):>8} {dash(row.found_lines):>6}  "
                  f"{'pass' if row.passed else 'FAIL'}{timing}")
            for mismatch in row.mismatches:
                print(f"    {mismatch}")
            for note in row.notes:
                print(f"    note: {note}")
    return EXIT_OK if all(row.passed for row in rows) else EXIT_FAILED_CHECK
