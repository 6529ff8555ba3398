"""
Command-line frontend.

Exit codes: 0 when every requested verdict is positive, 2 when a hypothesis
or verdict fails, 1 on any other error.
"""

import argparse
import sys
from pathlib import Path
from typing import List, NoReturn, Optional

from pydantic import BaseModel

from chaoskit import __version__
from chaoskit.errors import ChaosKitError, HypothesisFailed
from chaoskit.models.base import EvidenceKind
from chaoskit.models.reports import ReportOptions
from chaoskit.services.chaos_metrics import classify_tuple
from chaoskit.services.constructions import (
    build_asymptotic_tuple,
    build_distal_tuple,
    build_dist_scrambled_tuple,
    build_scrambled_family,
    starting_points,
)
from chaoskit.services.report_service import (
    density_csv,
    format_certificate,
    format_construction,
    format_family,
    format_report,
    format_trace,
    replay_densities,
    run_report,
)
from chaoskit.services.shadowing import trace
from chaoskit.services.sft import Sft
from chaoskit.services.symbolic import Point
from chaoskit.utils.config import get_settings
from chaoskit.utils.literals import load_pseudo_orbit, load_system, parse_points, parse_threshold
from chaoskit.utils.logging import get_logger, setup_logging

# Initialize logger
logger = get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_HYPOTHESIS = 2


class ChaosKitParser(argparse.ArgumentParser):
    """Usage errors exit with EXIT_ERROR; 2 is reserved for failed hypotheses."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(args: argparse.Namespace, model: BaseModel, text: str) -> None:
    if args.json:
        print(model.model_dump_json(indent=2))
    else:
        print(text)


def _status(holds: bool) -> int:
    return EXIT_OK if holds else EXIT_HYPOTHESIS


def cmd_check(args: argparse.Namespace) -> int:
    name, spec, s = load_system(args.system)
    selected = args.entropy or args.devaney or args.dichotomy
    options = ReportOptions(
        entropy=args.entropy or not selected,
        devaney=args.devaney or not selected,
        dichotomy=args.dichotomy or not selected,
        periodic_counts=args.periodic_counts,
    )
    report = run_report(name, s, options, spec)
    _emit(args, report, format_report(report))
    return _status(report.all_positive)


def cmd_trace(args: argparse.Namespace) -> int:
    _, _, s = load_system(args.system)
    po = load_pseudo_orbit(args.pseudo_orbit, s)
    certificate = trace(po, parse_threshold(args.eps) if args.eps else None)
    _emit(args, certificate, format_trace(certificate))
    return _status(certificate.verified)


def cmd_classify_tuple(args: argparse.Namespace) -> int:
    _, _, s = load_system(args.system)
    points = parse_points(args.points, s.alphabet_size)
    checkpoints = [args.horizon] if args.horizon else None
    evidence = EvidenceKind.HORIZON if args.horizon else None
    certificate = classify_tuple(
        s,
        points,
        parse_threshold(args.eps),
        parse_threshold(args.delta) if args.delta else None,
        checkpoints=checkpoints,
        evidence=evidence,
    )
    _emit(args, certificate, format_certificate(certificate))
    return _status(certificate.holds)


def _tuple(args: argparse.Namespace, s: Sft) -> List[Point]:
    """Points from --points, else n distinct periodic points of the system."""
    if args.points:
        return parse_points(args.points, s.alphabet_size)
    return starting_points(s, args.n)


def cmd_build_asymptotic(args: argparse.Namespace) -> int:
    _, _, s = load_system(args.system)
    points = _tuple(args, s)
    result = build_asymptotic_tuple(s, points, parse_threshold(args.eps), parse_threshold(args.eta))
    _emit(args, result, format_construction(result))
    return _status(result.certificate.holds and result.approximates)


def cmd_build_distal(args: argparse.Namespace) -> int:
    _, _, s = load_system(args.system)
    points = _tuple(args, s)
    result = build_distal_tuple(s, points, parse_threshold(args.eta))
    _emit(args, result, format_construction(result))
    return _status(result.certificate.holds and result.approximates)


def cmd_build_scrambled(args: argparse.Namespace) -> int:
    _, _, s = load_system(args.system)
    eta = parse_threshold(args.eta)
    if args.points:
        points = parse_points(args.points, s.alphabet_size)
        family = build_dist_scrambled_tuple(s, points, args.n, eta)
    else:
        family = build_scrambled_family(s, args.family or args.n, args.n, eta)

    text = format_family(family)
    holds = family.holds
    if args.horizon:
        horizon = min(args.horizon, get_settings().max_horizon)
        checked, mismatched = replay_densities(family, horizon)
        text += f"\nreplayed {checked} density rows up to {horizon}: {mismatched} mismatches"
        holds = holds and mismatched == 0
    if args.csv:
        Path(args.csv).write_text(density_csv([family]), encoding="utf-8")
        logger.info(f"Density rows written to {args.csv}")
    _emit(args, family, text)
    return _status(holds)


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("chaoskit.main:app", host=args.host, port=args.port, log_level="info")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = ChaosKitParser(prog="chaoskit", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--version", action="version", version=f"chaoskit {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    common.add_argument("--json", action="store_true", help="structured output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="system properties")
    p.add_argument("system", help="system JSON file or zoo name")
    p.add_argument("--entropy", action="store_true")
    p.add_argument("--devaney", action="store_true")
    p.add_argument("--dichotomy", action="store_true")
    p.add_argument("--periodic-counts", type=int, default=0, metavar="P", help="report trace(A^p) for p <= P")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("trace", parents=[common], help="trace a pseudo-orbit file")
    p.add_argument("system")
    p.add_argument("pseudo_orbit", help="file with a delta=... header and one point per line")
    p.add_argument("--eps", help="accuracy to certify, e.g. 2^-3")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("classify-tuple", parents=[common], help="certify tuple relations")
    p.add_argument("system")
    p.add_argument("--points", nargs="+", required=True)
    p.add_argument("--eps", required=True)
    p.add_argument("--delta")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact evidence only (default)")
    mode.add_argument("--horizon", type=int, help="HORIZON evidence up to this checkpoint")
    p.set_defaults(func=cmd_classify_tuple)

    p = sub.add_parser("build-asymptotic", parents=[common], help="eps-asymptotic tuple near a tuple")
    p.add_argument("system")
    p.add_argument("--n", type=int, default=2, help="tuple size when --points is omitted")
    p.add_argument("--points", nargs="+", help="start near these points (default: n periodic points)")
    p.add_argument("--eps", default="1/2")
    p.add_argument("--eta", default="2^-3")
    p.set_defaults(func=cmd_build_asymptotic)

    p = sub.add_parser("build-distal", parents=[common], help="distal tuple near a tuple")
    p.add_argument("system")
    p.add_argument("--n", type=int, default=2, help="tuple size when --points is omitted")
    p.add_argument("--points", nargs="+", help="start near these points (default: n periodic points)")
    p.add_argument("--eta", default="2^-4")
    p.set_defaults(func=cmd_build_distal)

    p = sub.add_parser("build-scrambled", parents=[common], help="distributionally scrambled family")
    p.add_argument("system")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--family", type=int, help="family size m (defaults to n)")
    p.add_argument("--eta", default="2^-3")
    p.add_argument("--points", nargs="+", help="start the tuple near these points")
    p.add_argument("--horizon", type=int, help="replay density rows by brute force up to this horizon")
    p.add_argument("--csv", help="write density rows to this file")
    p.set_defaults(func=cmd_build_scrambled)

    p = sub.add_parser("serve", parents=[common], help="run the HTTP API")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging("DEBUG" if args.verbose else get_settings().log_level, get_settings().log_file)
    try:
        return args.func(args)
    except HypothesisFailed as e:
        print(f"hypothesis failed: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ChaosKitError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
