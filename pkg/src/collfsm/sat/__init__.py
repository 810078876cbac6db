"""CNF conversion, an embedded CDCL solver and projected AllSAT."""

from .cdcl import Solver
from .cnf import CnfInstance, to_cnf
from .enumerate import (BLOCKING_MODES, FULL_TRACE, PROJECTION, Enumeration, Model, embedded,
                        enumerate_models, solve)
from .external import ExternalSolver

__all__ = [
    "BLOCKING_MODES", "CnfInstance", "Enumeration", "ExternalSolver", "Model", "FULL_TRACE", "PROJECTION",
    "Solver", "embedded", "enumerate_models", "solve", "to_cnf",
]
