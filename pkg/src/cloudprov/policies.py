"""Allocation policies: FCFS (round-robin), Min-Min, Max-Min and the Selective chooser.

Every policy is a deterministic function ``Scenario -> AssignmentPlan``.
Min-Min, Max-Min and Selective share one greedy step (``_greedy_step``); they
differ only in whether the smallest or largest best completion time is taken.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .metrics import ExecutionMatrix, completion_row, execution_matrix, gap_analysis
from .model import (
    AssignmentPlan,
    Case,
    DecidedBy,
    GapAnalysis,
    Scenario,
    Step,
    StepDecision,
)


class TieBreakMode(str, enum.Enum):
    """How to choose among VMs reaching the same minimum completion time."""

    FIRST_INSTANTIATED = "first"
    MIN_EXECUTION = "min-exec"


def fcfs_allocate(scenario: Scenario) -> AssignmentPlan:
    """Cloudlet ``i`` goes to VM ``i mod v`` in arrival order."""
    exe = execution_matrix(scenario)
    v = scenario.num_vms
    ready = [Fraction(0)] * v
    steps = []
    for cl in scenario.cloudlets:
        j = cl.id % v
        ready[j] += exe[cl.id][j]
        steps.append(Step(cl.id, j, DecidedBy.FCFS, ready[j]))
    return AssignmentPlan(tuple(steps), "fcfs", evaluations=len(steps))


def _best_vm(row: Sequence[Fraction], exe_row: Sequence[Fraction], tie_break: TieBreakMode) -> int:
    best = min(row)
    tied = [j for j, x in enumerate(row) if x == best]
    if tie_break is TieBreakMode.MIN_EXECUTION:
        # equal execution time falls back to the earlier VM
        return min(tied, key=lambda j: (exe_row[j], j))
    return tied[0]


class _Allocator:
    """Mutable state of one greedy run: ready times and the unallocated set."""

    def __init__(self, scenario: Scenario, tie_break: TieBreakMode):
        self.exe: ExecutionMatrix = execution_matrix(scenario)
        self.tie_break = TieBreakMode(tie_break)
        self.ready = [Fraction(0)] * scenario.num_vms
        # pre-sort by minimum execution time; cloudlet-level ties go to the lower id anyway
        self.pending = sorted(
            (c.id for c in scenario.cloudlets), key=lambda i: (min(self.exe[i]), i)
        )
        self.evaluations = 0

    def candidates(self) -> list[tuple[int, int, Fraction]]:
        """(cloudlet, best vm, best completion) for every unallocated cloudlet."""
        out = []
        for i in self.pending:
            row = completion_row(self.exe, self.ready, i)
            self.evaluations += len(row)
            j = _best_vm(row, self.exe[i], self.tie_break)
            out.append((i, j, row[j]))
        return out

    def commit(self, cands, policy: DecidedBy, decision: Optional[StepDecision] = None) -> Step:
        if policy is DecidedBy.MIN_MIN:
            i, j, comp = min(cands, key=lambda t: (t[2], t[0]))
        elif policy is DecidedBy.MAX_MIN:
            i, j, comp = min(cands, key=lambda t: (-t[2], t[0]))
        else:
            raise ValueError(f"not a greedy policy: {policy}")
        self.ready[j] += self.exe[i][j]
        self.pending.remove(i)
        return Step(i, j, policy, comp, decision)


def _greedy(scenario: Scenario, tie_break: TieBreakMode, choose: Callable, name: str) -> AssignmentPlan:
    alloc = _Allocator(scenario, tie_break)
    steps = []
    while alloc.pending:
        cands = alloc.candidates()
        policy, decision = choose(cands, len(steps))
        steps.append(alloc.commit(cands, policy, decision))
    return AssignmentPlan(tuple(steps), name, alloc.evaluations)


def min_min_allocate(scenario: Scenario, tie_break: TieBreakMode = TieBreakMode.FIRST_INSTANTIATED) -> AssignmentPlan:
    return _greedy(scenario, tie_break, lambda cands, k: (DecidedBy.MIN_MIN, None), "minmin")


def max_min_allocate(scenario: Scenario, tie_break: TieBreakMode = TieBreakMode.FIRST_INSTANTIATED) -> AssignmentPlan:
    return _greedy(scenario, tie_break, lambda cands, k: (DecidedBy.MAX_MIN, None), "maxmin")


def classify_step(gap: GapAnalysis, c_remaining: int) -> StepDecision:
    """Pick Min-Min or Max-Min for one step.

    With a gap at ``l``: Min-Min if ``l < c/2`` (gap in the upper half), else Max-Min.
    Without a gap: Min-Min if SD < mean, else Max-Min.
    """
    if gap.gap_location is not None:
        case = Case.CASE1_MIN_MIN if 2 * gap.gap_location < c_remaining else Case.CASE2_MAX_MIN
    else:
        case = Case.CASE3_MIN_MIN if gap.sd_below_mean() else Case.CASE3_MAX_MIN
    return StepDecision(case, gap, c_remaining)


def _selective_choice(cands, k):
    gap = gap_analysis([comp for _, _, comp in cands])
    decision = classify_step(gap, len(cands))
    return decision.case_taken.policy, decision


def selective_allocate(scenario: Scenario, tie_break: TieBreakMode = TieBreakMode.FIRST_INSTANTIATED) -> AssignmentPlan:
    """One Min-Min or Max-Min step per iteration, chosen from fresh gap statistics."""
    return _greedy(scenario, tie_break, _selective_choice, "selective")


def replay_allocate(
    scenario: Scenario,
    choices: Sequence[DecidedBy],
    tie_break: TieBreakMode = TieBreakMode.FIRST_INSTANTIATED,
) -> AssignmentPlan:
    """Run the greedy loop with a fixed script of per-step Min-Min/Max-Min choices."""
    if len(choices) != scenario.num_cloudlets:
        raise ValueError(f"need {scenario.num_cloudlets} choices, got {len(choices)}")
    return _greedy(scenario, tie_break, lambda cands, k: (DecidedBy(choices[k]), None), "replay")


POLICIES: dict[str, Callable[..., AssignmentPlan]] = {
    "fcfs": lambda scenario, tie_break=TieBreakMode.FIRST_INSTANTIATED: fcfs_allocate(scenario),
    "minmin": min_min_allocate,
    "maxmin": max_min_allocate,
    "selective": selective_allocate,
}


def allocate(policy: str, scenario: Scenario, tie_break: TieBreakMode = TieBreakMode.FIRST_INSTANTIATED) -> AssignmentPlan:
    try:
        fn = POLICIES[policy]
    except KeyError:
        raise ValueError(f"unknown policy {policy!r}; expected one of {', '.join(POLICIES)}") from None
    return fn(scenario, TieBreakMode(tie_break))
