"""Exact toolkit for graph products of finite groups and their right-angled buildings."""

from .errors import DomainError, InputError, InternalError, RabkitError, ValidationError
from .graph_product import (
    DefiningGraph,
    Element,
    FiniteGroup,
    claw_graph,
    complete_bipartite,
    cycle_graph,
    heawood_graph,
    load_graph,
    make_graph,
    running_example,
)
from .building import Building, Chamber
from .report import Report
from .verify import SUITES, run_suite

__version__ = "0.1.0"

__all__ = [
    "Building", "Chamber", "Report", "SUITES", "run_suite",
    "DefiningGraph", "DomainError", "Element", "FiniteGroup", "InputError",
    "InternalError", "RabkitError", "ValidationError", "claw_graph",
    "complete_bipartite", "cycle_graph", "heawood_graph", "load_graph",
    "make_graph", "running_example",
]
