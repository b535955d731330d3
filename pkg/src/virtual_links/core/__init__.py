"""Core module for cross-cutting concerns."""

from virtual_links.core.logging import configure_logging
from virtual_links.core.metrics import (
    DECIDE_DURATION_SECONDS,
    HTTP_REQUEST_DURATION_SECONDS,
    HTTP_REQUESTS_TOTAL,
    SEARCH_EXPANSIONS_TOTAL,
    VERDICTS_TOTAL,
    MetricsMiddleware,
    get_metric_value,
    get_metrics,
    track_decide_duration,
    track_expansions,
    track_verdict,
)

__all__ = [
    "DECIDE_DURATION_SECONDS",
    "HTTP_REQUESTS_TOTAL",
    "HTTP_REQUEST_DURATION_SECONDS",
    "MetricsMiddleware",
    "SEARCH_EXPANSIONS_TOTAL",
    "VERDICTS_TOTAL",
    "configure_logging",
    "get_metric_value",
    "get_metrics",
    "track_decide_duration",
    "track_expansions",
    "track_verdict",
]
