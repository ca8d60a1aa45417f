"""Exact combinatorics for cross t-intersecting families of set partitions."""

__version__ = "0.1.0"

from .stirling import stirling, stirling_closed_form
from .partitions import (
    BudgetExceeded,
    Family,
    GroundSet,
    Partition,
    common_blocks,
    enumerate_partitions,
    shared_blocks,
    singletons_of,
)

__all__ = [
    "__version__",
    "stirling",
    "stirling_closed_form",
    "BudgetExceeded",
    "Family",
    "GroundSet",
    "Partition",
    "common_blocks",
    "enumerate_partitions",
    "shared_blocks",
    "singletons_of",
]
