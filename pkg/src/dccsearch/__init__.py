"""Greedy deletion-correcting code construction and priority-function search."""

from .bitseq import deletion_ball, enumerate_strings, shares_subsequence, vt_residual
from .confgraph import (
    ConfusabilityGraph,
    build_graph,
    get_graph,
    load_graph,
    save_graph,
)
from .errors import CapacityError, EvaluationError, SnapshotError, StateError
from .evaluator import EvalInput, EvalResult, ScoreSpec, evaluate
from .greedy import Code, greedy_construct, is_deletion_correcting, load_code, save_code
from .priolib import BUILTINS, PriorityFunction
from .progdb import ProgramDatabase, SearchConfig
from .sandboxing import SubprocessExecutor
from .vtcodes import VTParams, vt_code

__version__ = "0.1.0"

__all__ = [
    "BUILTINS",
    "CapacityError",
    "Code",
    "ConfusabilityGraph",
    "EvalInput",
    "EvalResult",
    "EvaluationError",
    "PriorityFunction",
    "ProgramDatabase",
    "ScoreSpec",
    "SearchConfig",
    "SnapshotError",
    "StateError",
    "SubprocessExecutor",
    "VTParams",
    "build_graph",
    "deletion_ball",
    "enumerate_strings",
    "evaluate",
    "get_graph",
    "greedy_construct",
    "is_deletion_correcting",
    "load_code",
    "load_graph",
    "save_code",
    "save_graph",
    "shares_subsequence",
    "vt_code",
    "vt_residual",
]
