"""Deterministic cloudlet-to-VM provisioning: FCFS, Min-Min, Max-Min and Selective
allocation, space-/time-shared execution, and an exhaustive optimality oracle."""

from .executor import run, run_space_shared, run_time_shared
from .metrics import completion_row, execution_matrix, gap_analysis, makespan
from .model import (
    AssignmentPlan,
    Case,
    Cloudlet,
    DecidedBy,
    ExecutionMode,
    GapAnalysis,
    Hosts,
    PlanError,
    Schedule,
    ScheduleEntry,
    Scenario,
    ScenarioError,
    Step,
    StepDecision,
    VirtualMachine,
)
from .oracle import OracleBudgetExceeded, optimal_assignment
from .policies import (
    TieBreakMode,
    allocate,
    classify_step,
    fcfs_allocate,
    max_min_allocate,
    min_min_allocate,
    replay_allocate,
    selective_allocate,
)

__all__ = [
    "AssignmentPlan", "Case", "Cloudlet", "DecidedBy", "ExecutionMode", "GapAnalysis",
    "Hosts", "OracleBudgetExceeded", "PlanError", "Schedule", "ScheduleEntry", "Scenario",
    "ScenarioError", "Step", "StepDecision", "TieBreakMode", "VirtualMachine", "allocate",
    "classify_step", "completion_row", "execution_matrix", "fcfs_allocate", "gap_analysis",
    "makespan", "max_min_allocate", "min_min_allocate", "optimal_assignment",
    "replay_allocate", "run", "run_space_shared", "run_time_shared", "selective_allocate",
]
