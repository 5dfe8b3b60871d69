"""Self-dual additive GF(4) codes from bordered metacirculant graphs."""

import warnings

# Stale-TBB notice from numba's threading-layer probe; the workqueue
# fallback it picks is fine for these kernels.
warnings.filterwarnings("ignore", message="The TBB threading layer requires TBB version")

from .codes import (
    AdditiveCode,
    BudgetExceededError,
    ExhaustiveLimitError,
    InequivalenceWitness,
    SelfDualityCertificate,
    TypeClass,
    WeightProfile,
    exact_weight_profile,
    exhaustive_limit,
    graph_code,
    inequivalence_witness,
    profile_with_floor,
    sampled_weight_bound,
    type_class_from_degrees,
    type_class_from_spec,
    verify_self_dual,
    weight_count_at,
)
from .gf4 import GF4Vector
from .graphs import (
    GraphMetrics,
    InvalidSpecError,
    MetacirculantSpec,
    SimpleGraph,
    border,
    build_metacirculant,
    expected_valency,
    max_clique,
    metrics,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveCode",
    "BudgetExceededError",
    "ExhaustiveLimitError",
    "GF4Vector",
    "GraphMetrics",
    "InequivalenceWitness",
    "InvalidSpecError",
    "MetacirculantSpec",
    "SelfDualityCertificate",
    "SimpleGraph",
    "TypeClass",
    "WeightProfile",
    "border",
    "build_metacirculant",
    "exact_weight_profile",
    "exhaustive_limit",
    "expected_valency",
    "graph_code",
    "inequivalence_witness",
    "max_clique",
    "metrics",
    "profile_with_floor",
    "sampled_weight_bound",
    "type_class_from_degrees",
    "type_class_from_spec",
    "verify_self_dual",
    "weight_count_at",
]
