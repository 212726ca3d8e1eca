"""Realize an AssignmentPlan as a Schedule.

Space-shared: each VM runs its cloudlets back to back in plan order.
Time-shared: ideal processor sharing, every cloudlet on a VM starts at 0 and
each of the ``n`` unfinished ones progresses at ``mips / n``.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction

from .model import (
    AssignmentPlan,
    ExecutionMode,
    PlanError,
    Schedule,
    ScheduleEntry,
    Scenario,
)


def _per_vm(scenario: Scenario, plan: AssignmentPlan) -> dict[int, list[int]]:
    queues: dict[int, list[int]] = defaultdict(list)
    seen: set[int] = set()
    for step in plan.steps:
        if not 0 <= step.cloudlet_id < scenario.num_cloudlets:
            raise PlanError(f"plan references unknown cloudlet {step.cloudlet_id}")
        if not 0 <= step.vm_id < scenario.num_vms:
            raise PlanError(f"plan references unknown VM {step.vm_id}")
        if step.cloudlet_id in seen:
            raise PlanError(f"cloudlet {step.cloudlet_id} is bound twice")
        seen.add(step.cloudlet_id)
        queues[step.vm_id].append(step.cloudlet_id)
    return queues


def _finish(entries: list[ScheduleEntry], order: list[int], mode: ExecutionMode) -> Schedule:
    pos = {c: k for k, c in enumerate(order)}
    entries.sort(key=lambda e: pos[e.cloudlet_id])
    return Schedule(tuple(entries), mode, max((e.finish for e in entries), default=Fraction(0)))


def run_space_shared(scenario: Scenario, plan: AssignmentPlan) -> Schedule:
    entries = []
    for j, queue in _per_vm(scenario, plan).items():
        mips = scenario.vms[j].mips
        t = Fraction(0)
        for i in queue:
            end = t + scenario.cloudlets[i].file_size / mips
            entries.append(ScheduleEntry(i, j, t, end))
            t = end
    return _finish(entries, [s.cloudlet_id for s in plan.steps], ExecutionMode.SPACE_SHARED)


def run_time_shared(scenario: Scenario, plan: AssignmentPlan) -> Schedule:
    entries = []
    for j, queue in _per_vm(scenario, plan).items():
        mips = scenario.vms[j].mips
        remaining = {i: scenario.cloudlets[i].file_size for i in queue}
        t = Fraction(0)
        while remaining:
            n = len(remaining)
            step = min(remaining.values())
            t += step * n / mips
            for i in list(remaining):
                remaining[i] -= step
                if remaining[i] == 0:
                    entries.append(ScheduleEntry(i, j, Fraction(0), t))
                    del remaining[i]
    return _finish(entries, [s.cloudlet_id for s in plan.steps], ExecutionMode.TIME_SHARED)


def run(scenario: Scenario, plan: AssignmentPlan, mode: ExecutionMode | str) -> Schedule:
    mode = ExecutionMode(mode)
    if mode is ExecutionMode.SPACE_SHARED:
        return run_space_shared(scenario, plan)
    return run_time_shared(scenario, plan)
