"""
Report orchestration for the `check` and `build-*` commands.
"""

import csv
import io
from typing import List, Optional, Tuple

from chaoskit.errors import NotIrreducible
from chaoskit.models.base import Dichotomy
from chaoskit.models.certificates import ConstructionResult, TraceCertificate, TupleCertificate
from chaoskit.models.reports import (
    PropertyVerdict,
    Report,
    ReportOptions,
    ScrambledFamilyReport,
    SystemSummary,
)
from chaoskit.models.systems import SystemSpec
from chaoskit.services.chaos_metrics import classify_sensitive_or_equicontinuous
from chaoskit.services.constructions import build_scrambled_family, theorem_route
from chaoskit.services.densities import close_rule, horizon_counts, separated_rule
from chaoskit.services.sft import (
    Sft,
    analyze,
    devaney_package,
    entropy,
    has_dense_periodic_points,
    is_mixing,
    is_single_cycle,
    matrix_power_trace,
)
from chaoskit.services.zoo import caveat, reference_entropy
from chaoskit.utils.logging import get_logger, log_execution_time

# Initialize logger
logger = get_logger(__name__)


def summarize(name: str, s: Sft, spec: Optional[SystemSpec] = None) -> SystemSummary:
    return SystemSummary(
        name=name,
        alphabet_size=s.alphabet_size,
        provenance=s.provenance,
        labels=list(s.labels),
        matrix=[list(row) for row in s.matrix],
        caveat=caveat(spec) if spec is not None else None,
    )


@log_execution_time
def run_report(
    name: str,
    s: Sft,
    options: Optional[ReportOptions] = None,
    spec: Optional[SystemSpec] = None,
) -> Report:
    """
    Run the requested analyses in a fixed order.

    Args:
        name: Display name of the system
        s: Compiled system
        options: Analyses to run (all property checks by default)
        spec: Definition the system was compiled from, for caveats

    Returns:
        Report with one PropertyVerdict per decided property
    """
    options = options or ReportOptions()
    analysis = analyze(s)
    report = Report(system=summarize(name, s, spec), period=analysis.period)

    report.properties.append(PropertyVerdict(
        name="transitive", holds=analysis.irreducible, operation="is_transitive",
        note=f"{len(analysis.sccs)} strongly connected component(s)",
    ))
    report.properties.append(PropertyVerdict(
        name="mixing", holds=is_mixing(s), operation="is_mixing", informational=True,
        value=str(analysis.period) if analysis.period is not None else None,
        note="value is the graph period",
    ))
    report.properties.append(PropertyVerdict(
        name="dense_periodic_points", holds=has_dense_periodic_points(s), operation="has_dense_periodic_points",
    ))

    if options.entropy:
        h = entropy(s)
        report.entropy = h
        report.reference_entropy = reference_entropy(spec) if spec is not None else None
        report.properties.append(PropertyVerdict(
            name="positive_entropy", holds=h > 0, value=f"{h:.7f}", operation="entropy", informational=True,
        ))
    if options.devaney:
        package = devaney_package(s)
        report.properties.append(PropertyVerdict(
            name="devaney", holds=package.holds, operation="devaney_package",
            note="transitivity and dense periodic points on an infinite system; sensitivity follows",
        ))
    for p in range(1, options.periodic_counts + 1):
        report.periodic_counts[p] = matrix_power_trace(s, p)

    if not analysis.irreducible:
        report.notes.append("not transitive: constructions refused")
        if options.scramble is not None:
            raise NotIrreducible("scrambled families need a transitive system")
        return report

    if options.dichotomy:
        dichotomy = classify_sensitive_or_equicontinuous(s)
        report.dichotomy = dichotomy
        report.properties.append(PropertyVerdict(
            name="sensitive", holds=dichotomy.dichotomy == Dichotomy.SENSITIVE,
            value=str(dichotomy.constant) if dichotomy.constant is not None else None,
            operation="classify_sensitive_or_equicontinuous", note=dichotomy.note,
        ))
    if not is_single_cycle(s):
        route = theorem_route(s)
        report.properties.append(PropertyVerdict(
            name="route", holds=True, value=route.route, operation="theorem_route",
            informational=True, note=route.note,
        ))
    if options.scramble is not None:
        opts = options.scramble
        report.families.append(build_scrambled_family(s, opts.family or opts.n, opts.n, opts.eta))

    logger.info(f"Report for {name}: all positive = {report.all_positive}")
    return report


def density_csv(families: List[ScrambledFamilyReport]) -> str:
    """Density rows of every certificate, one CSV line per row."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([
        "family", "coordinates", "block", "kind", "threshold",
        "checkpoint", "count", "density", "lower_bound",
    ])
    for index, family in enumerate(families):
        for certificate in family.certificates:
            coords = " ".join(str(c) for c in certificate.details.get("coordinates", []))
            for row in certificate.densities:
                writer.writerow([
                    index, coords, row.block if row.block is not None else "", row.kind,
                    str(row.threshold), row.checkpoint, row.count, str(row.density),
                    str(row.lower_bound) if row.lower_bound is not None else "",
                ])
    return out.getvalue()


def _mark(holds: Optional[bool]) -> str:
    return {True: "yes", False: "no", None: "-"}[holds]


def format_report(report: Report) -> str:
    """Human-readable rendering of a report."""
    system = report.system
    lines = [f"system: {system.name} ({system.alphabet_size} symbols, {system.provenance})"]
    if system.caveat:
        lines.append(f"  caveat: {system.caveat}")
    for p in report.properties:
        value = f" = {p.value}" if p.value is not None else ""
        lines.append(f"  {p.name}: {_mark(p.holds)}{value}  [{p.operation}, {p.evidence.value}]")
    if report.reference_entropy is not None:
        lines.append(f"  reference entropy of the interval map: {report.reference_entropy:.7f}")
    for p, count in report.periodic_counts.items():
        lines.append(f"  trace(A^{p}) = {count}")
    for family in report.families:
        lines.append(format_family(family))
    lines.extend(f"  note: {note}" for note in report.notes)
    return "\n".join(lines)


def format_family(family: ScrambledFamilyReport) -> str:
    lines = [
        f"family: {family.size} points, every {family.n} distributionally {family.n}-{family.delta}-scrambled "
        f"[{family.route}]: {_mark(family.holds)}",
        f"  targets: {' '.join(family.targets.targets)} (separation {family.targets.separation})",
        f"  common source: {family.common_source}, bridge length {family.bridge_length}",
        f"  certified {len(family.certificates)} of {family.subtuples} sub-tuples"
        + (" (sampled)" if family.sampled else ""),
    ]
    if family.power > 1:
        lines.append(f"  built for sigma^{family.power}: power delta {family.power_delta}, ratio {family.distortion}")
    lines.extend(f"  point {i}: {p}" for i, p in enumerate(family.points))
    return "\n".join(lines)


def replay_densities(family: ScrambledFamilyReport, horizon: int) -> Tuple[int, int]:
    """
    Recount every certificate row with checkpoint <= horizon on realized prefixes.

    Returns:
        (rows replayed, rows whose brute-force count differs from the certificate)
    """
    members = family.objects
    checked = mismatched = 0
    for certificate in family.certificates:
        coords = certificate.details.get("coordinates", [])
        points = [members[i] for i in coords]
        for row in certificate.densities:
            if row.checkpoint > horizon:
                continue
            rule = close_rule(row.threshold) if row.kind == "close" else separated_rule(row.threshold)
            count = horizon_counts(points, rule, [row.checkpoint])[0]
            checked += 1
            if count != row.count:
                mismatched += 1
                logger.error(f"Replay mismatch at {row.checkpoint} ({row.kind} {row.threshold}): {count} != {row.count}")
    logger.info(f"Replayed {checked} density rows up to {horizon}: {mismatched} mismatches")
    return checked, mismatched


def format_certificate(certificate: TupleCertificate) -> str:
    lines = [f"tuple: {' '.join(certificate.points)}"]
    for v in certificate.verdicts:
        parameter = f"({v.parameter})" if v.parameter is not None else ""
        horizon = f" up to {v.horizon}" if v.horizon is not None else ""
        value = f" value {v.value}" if v.value is not None else ""
        lines.append(f"  {v.name.value}{parameter}: {_mark(v.holds)}  [{v.evidence.value}{horizon}]{value}")
        if v.note:
            lines.append(f"    {v.note}")
    if certificate.witness is not None:
        w = certificate.witness
        lines.append(f"  witness at k={w.k}: {' '.join(w.points)}")
    for row in certificate.densities:
        bound = f" >= {row.lower_bound}" if row.lower_bound is not None else ""
        lines.append(f"  {row.kind}({row.threshold}) at {row.checkpoint}: {row.count} ({float(row.density):.6f}{bound})")
    return "\n".join(lines)


def format_trace(certificate: TraceCertificate) -> str:
    return "\n".join([
        f"traced: {certificate.traced}",
        f"  delta {certificate.delta}, eps {certificate.epsilon}, {certificate.entries} entries",
        f"  max distance {certificate.max_distance} (bound {certificate.bound}) [{certificate.evidence.value}]",
        f"  verified: {_mark(certificate.verified)}",
    ])


def format_construction(result: ConstructionResult) -> str:
    lines = [f"{result.kind} tuple near {' '.join(result.inputs)}:"]
    lines.extend(f"  {p}  (distance {d})" for p, d in zip(result.points, result.approximation))
    if result.power > 1:
        lines.append(f"  built for sigma^{result.power}: power eps {result.power_delta}, ratio {result.distortion}")
    lines.append(format_certificate(result.certificate))
    return "\n".join(lines)
