"""Service layer for the decision pipelines."""

from virtual_links.services.decider_service import (
    DeciderConfig,
    DeciderService,
    decider_config,
    get_decider_service,
    resolve_budget,
)
from virtual_links.services.decompose_service import (
    Classification,
    ClassicalResult,
    DecomposeConfig,
    DecomposeService,
    Part,
    SplitDecomposition,
    get_decompose_service,
    split_components,
)
from virtual_links.services.verdict import Verdict, VerdictKind

__all__ = [
    "ClassicalResult",
    "Classification",
    "DeciderConfig",
    "DeciderService",
    "DecomposeConfig",
    "DecomposeService",
    "Part",
    "SplitDecomposition",
    "Verdict",
    "VerdictKind",
    "decider_config",
    "get_decider_service",
    "get_decompose_service",
    "resolve_budget",
    "split_components",
]
