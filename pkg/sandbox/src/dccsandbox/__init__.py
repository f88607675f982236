"""Isolated subprocess runner for untrusted candidate priority functions."""

from .graphio import GraphFileError, GraphView, load_graph
from .runner import (
    EXIT_OK,
    EXIT_RESOURCE,
    EXIT_RUNTIME,
    EXIT_SYNTAX,
    CandidateError,
    compile_candidate,
    serve,
)

__version__ = "0.1.0"

__all__ = [
    "EXIT_OK",
    "EXIT_RESOURCE",
    "EXIT_RUNTIME",
    "EXIT_SYNTAX",
    "CandidateError",
    "GraphFileError",
    "GraphView",
    "compile_candidate",
    "load_graph",
    "serve",
]
