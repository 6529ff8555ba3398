"""
Services package.
"""

from chaoskit.services.symbolic import (
    EpPoint,
    ScheduledPoint,
    parse_point,
    format_point,
    dist,
    joint_tail_stats,
)

from chaoskit.services.sft import (
    Sft,
    full_shift,
    essentialize,
    higher_block_recode,
    analyze,
    entropy,
    power_system,
)

from chaoskit.services.shadowing import (
    PseudoOrbit,
    validate,
    trace,
    shadowing_modulus,
    concat_pseudo_orbit,
)

from chaoskit.services.chaos_metrics import (
    phi,
    upper_density,
    is_eps_asymptotic,
    is_eps_distal,
    is_li_yorke_pair,
    is_dist_scrambled,
    is_dc1_pair,
    rp_witness_search,
    classify_sensitive_or_equicontinuous,
    classify_tuple,
)

from chaoskit.services.constructions import (
    build_asymptotic_tuple,
    build_distal_tuple,
    build_dist_scrambled_tuple,
    build_scrambled_family,
    periodic_case,
    rp_via_fixed_point,
    starting_points,
)

from chaoskit.services.zoo import (
    catalog,
    compile_system,
    ingest_markov_map,
)

from chaoskit.services.report_service import run_report

__all__ = [
    # Symbolic core
    'EpPoint',
    'ScheduledPoint',
    'parse_point',
    'format_point',
    'dist',
    'joint_tail_stats',

    # SFT model
    'Sft',
    'full_shift',
    'essentialize',
    'higher_block_recode',
    'analyze',
    'entropy',
    'power_system',

    # Shadowing
    'PseudoOrbit',
    'validate',
    'trace',
    'shadowing_modulus',
    'concat_pseudo_orbit',

    # Chaos metrics
    'phi',
    'upper_density',
    'is_eps_asymptotic',
    'is_eps_distal',
    'is_li_yorke_pair',
    'is_dist_scrambled',
    'is_dc1_pair',
    'rp_witness_search',
    'classify_sensitive_or_equicontinuous',
    'classify_tuple',

    # Constructions
    'build_asymptotic_tuple',
    'build_distal_tuple',
    'build_dist_scrambled_tuple',
    'build_scrambled_family',
    'periodic_case',
    'starting_points',
    'rp_via_fixed_point',

    # Zoo and reports
    'catalog',
    'compile_system',
    'ingest_markov_map',
    'run_report',
]
