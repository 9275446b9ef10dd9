"""Toolkit for rainbow arithmetic progressions under colorings of [n] and Z_n.

Three layers: ``core`` holds colorings, AP enumeration, rainbow detection
and the symmetry machinery; ``constructions`` generates the known
rainbow-free colorings; ``search`` runs pruned exhaustive searches over
equinumerous colorings of Z_n; ``harness`` packages claim-by-claim
verification suites; ``cli`` exposes everything on the command line.
"""

from .core import (
    APSpec,
    APWitness,
    BalanceClass,
    Coloring,
    Topology,
    apply_affine,
    canonical_form,
    classify_balance,
    color_counts,
    enumerate_rainbow_aps,
    find_rainbow_ap,
    is_recessive,
    make_coloring,
    to_cyclic,
)
from .constructions import (
    Variant,
    construct_interval4,
    construct_k,
    construct_pow3,
    construct_z24,
    tile,
)
from .search import (
    SearchConfig,
    SearchOutcome,
    SearchStatus,
    SymmetryLevel,
    all_contain_rainbow,
    enumerate_equinumerous,
    equinumerous_count,
    search_rainbow_free,
    verify_certificate,
)
from .harness import Report, run_suite

__all__ = [
    "APSpec",
    "APWitness",
    "BalanceClass",
    "Coloring",
    "Report",
    "SearchConfig",
    "SearchOutcome",
    "SearchStatus",
    "SymmetryLevel",
    "Topology",
    "Variant",
    "all_contain_rainbow",
    "apply_affine",
    "canonical_form",
    "classify_balance",
    "color_counts",
    "construct_interval4",
    "construct_k",
    "construct_pow3",
    "construct_z24",
    "enumerate_equinumerous",
    "enumerate_rainbow_aps",
    "equinumerous_count",
    "find_rainbow_ap",
    "is_recessive",
    "make_coloring",
    "run_suite",
    "search_rainbow_free",
    "tile",
    "to_cyclic",
    "verify_certificate",
]
