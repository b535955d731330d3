"""Structured logging setup."""

import logging
import sys

import structlog

from virtual_links.config import Settings


def configure_logging(settings: Settings) -> None:
    """Configure structlog to write filtered key/value events to stderr.

    Stdout stays reserved for command output, so JSON results remain parseable.
    """
    level = logging.getLevelName(settings.log_level)
    renderer: structlog.types.Processor = (
        structlog.processors.JSONRenderer()
        if settings.log_json
        else structlog.dev.ConsoleRenderer(colors=False)
    )
    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(level),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
