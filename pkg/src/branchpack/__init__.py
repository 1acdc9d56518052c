"""Packing edge-disjoint spanning branchings with prescribed root sets."""
from .branching import Branching, KBranching, Path, Violation, residual
from .cardinal import ALEPH0, Card, card_min_with, card_sub
from .cuts import (CutCertificate, Deficit, SetStatus, build_auxiliary, check_condition,
                   check_condition_bruteforce, check_condition_flow, minimal_dangerous_for_edge,
                   p_value, s_value, status)
from .digraph import Bundle, Digraph, Edge
from .errors import (BranchpackError, InputError, LogicError, StructuralError, UnderflowError,
                     UnreachableError)
from .maxflow import Arc, FlowNetwork, FlowResult, max_flow
from .packer import (Extension, PackReport, PathSystem, TraceStep, extend_toward, pack,
                     path_system_nested, path_system_to, reach_in_set, safe_edges)

__version__ = "0.1.0"

__all__ = [
    "ALEPH0", "Arc", "Branching", "BranchpackError", "Bundle", "Card", "CutCertificate", "Deficit",
    "Digraph", "Edge", "Extension", "FlowNetwork", "FlowResult", "InputError", "KBranching",
    "LogicError", "PackReport", "Path", "PathSystem", "SetStatus", "StructuralError", "TraceStep",
    "UnderflowError", "UnreachableError", "Violation", "build_auxiliary", "card_min_with", "card_sub",
    "check_condition", "check_condition_bruteforce", "check_condition_flow", "extend_toward",
    "max_flow", "minimal_dangerous_for_edge", "p_value", "pack", "path_system_nested",
    "path_system_to", "reach_in_set", "residual", "s_value", "safe_edges", "status",
]
