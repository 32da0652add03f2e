"""Proper edge coloring of loopless multigraphs with max(Δ+1, Γ) colors."""

from .augmenter import Certificate, Colored, certificate_count_check, path_number, resolve
from .coloring import PartialColoring, parse_coloring, serialize_coloring
from .driver import RunConfig, RunResult, color_graph, verify
from .errors import EdgeColorError, EngineInvariantViolation, Infeasible, InvalidCertificate, ParseError, TooLarge
from .graph import Multigraph, max_degree, parse_graph, serialize_graph
from .oracle import DensityReport, chromatic_index_oracle, gamma_bruteforce

__all__ = [
    "Certificate",
    "Colored",
    "DensityReport",
    "EdgeColorError",
    "EngineInvariantViolation",
    "Infeasible",
    "InvalidCertificate",
    "Multigraph",
    "ParseError",
    "PartialColoring",
    "RunConfig",
    "RunResult",
    "TooLarge",
    "certificate_count_check",
    "chromatic_index_oracle",
    "color_graph",
    "gamma_bruteforce",
    "max_degree",
    "parse_coloring",
    "parse_graph",
    "path_number",
    "resolve",
    "serialize_coloring",
    "serialize_graph",
    "verify",
]
