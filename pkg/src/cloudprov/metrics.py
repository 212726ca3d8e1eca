"""Execution/completion times, dispersion statistics, and makespan."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .model import GapAnalysis, Schedule, Scenario, ScenarioError

ExecutionMatrix = tuple[tuple[Fraction, ...], ...]


def execution_matrix(scenario: Scenario) -> ExecutionMatrix:
    """``values[i][j] = file_size[i] / mips[j]``, exact."""
    if not scenario.vms:
        raise ScenarioError("vms: at least one VM is required")
    for vm in scenario.vms:
        if vm.mips <= 0:
            raise ScenarioError(f"vms[{vm.id}].mips must be positive, got {vm.mips}")
    return tuple(
        tuple(c.file_size / vm.mips for vm in scenario.vms) for c in scenario.cloudlets
    )


def completion_row(exe: ExecutionMatrix, ready: Sequence[Fraction], cloudlet_id: int) -> list[Fraction]:
    row = exe[cloudlet_id]
    if len(row) != len(ready):
        raise ValueError(f"ready has {len(ready)} entries, expected {len(row)}")
    return [e + w for e, w in zip(row, ready)]


def gap_analysis(best_comps: Sequence[Fraction]) -> GapAnalysis:
    """Sort, take mean and population variance, and locate the first gap wider than the SD.

    ``gap_location`` is 1-based: ``l`` means the gap between the l-th and
    (l+1)-th smallest values.
    """
    if not best_comps:
        raise ValueError("gap_analysis needs at least one value")
    values = tuple(sorted(Fraction(x) for x in best_comps))
    n = len(values)
    mean = sum(values, Fraction(0)) / n
    variance = sum(((x - mean) ** 2 for x in values), Fraction(0)) / n
    gap = GapAnalysis(values, mean, variance, None)
    for l in range(1, n):
        if gap.gap_exceeds_sd(values[l] - values[l - 1]):
            return GapAnalysis(values, mean, variance, l)
    return gap


def makespan(schedule: Schedule) -> Fraction:
    return max((e.finish for e in schedule.entries), default=Fraction(0))
