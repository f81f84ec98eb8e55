"""Slice-aware radio-resource calendaring toolkit: exact optimizer,
greedy heuristics, workload generator, and experiment harness."""

from .exact import ExactResult, SolveMode, enumerate_all, solve_exact
from .heuristics import dra, priority_list, sra
from .model import (
    Instance,
    Request,
    Schedule,
    SliceType,
    Tenant,
    ValidationReport,
    latest_start,
    utility,
    validate,
    welfare,
)
from .workload import GenConfig, generate

__all__ = [
    "ExactResult",
    "GenConfig",
    "Instance",
    "Request",
    "Schedule",
    "SliceType",
    "SolveMode",
    "Tenant",
    "ValidationReport",
    "dra",
    "enumerate_all",
    "generate",
    "latest_start",
    "priority_list",
    "solve_exact",
    "sra",
    "utility",
    "validate",
    "welfare",
]
