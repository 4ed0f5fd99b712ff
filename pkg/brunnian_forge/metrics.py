"""
Prometheus metrics exporter for brunnian_forge CLI

Exposes run, move and verdict counters for monitoring batch certification jobs.
"""

import logging
import os
from collections.abc import Iterable

from prometheus_client import Counter, Histogram, start_http_server

logger = logging.getLogger(__name__)

# Metrics definitions
RUNS = Counter("brunnian_forge_runs_total", "Total CLI runs")
FAILURES = Counter("brunnian_forge_failures_total", "Runs that ended on an input error")
DURATION = Histogram("brunnian_forge_run_duration_seconds", "Execution time")
MOVES = Counter(
    "brunnian_forge_moves_total", "Reidemeister moves applied", labelnames=["kind"]
)
VERDICTS = Counter(
    "brunnian_forge_verdicts_total",
    "Verdicts reported by analysis commands",
    labelnames=["command", "verdict"],
)

_exporter_port: int | None = None


def init_metrics(port: int = 9100) -> bool:
    """
    Start the Prometheus HTTP exporter once per process

    Args:
        port: Port to serve metrics on (default: 9100)

    Returns:
        True when an exporter is serving after the call
    """
    global _exporter_port

    if os.getenv("PYTEST_CURRENT_TEST"):
        return False
    if _exporter_port is not None:
        return True

    try:
        start_http_server(port)  # non-blocking
    except OSError as e:
        # busy port, e.g. the other end of a pipe
        logger.debug("metrics exporter not started on %d: %s", port, e)
        return False
    _exporter_port = port
    return True


def record_moves(trace: Iterable) -> None:
    """Count applied moves by kind"""
    for move in trace:
        MOVES.labels(kind=move.kind.value).inc()
