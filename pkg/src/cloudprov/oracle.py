"""Exhaustive optimal assignment for small instances (space-shared makespan)."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .metrics import execution_matrix
from .model import AssignmentPlan, DecidedBy, Scenario, Step

DEFAULT_BUDGET = 10**7


class OracleBudgetExceeded(RuntimeError):
    pass


def optimal_assignment(scenario: Scenario, budget: int = DEFAULT_BUDGET) -> tuple[AssignmentPlan, Fraction]:
    """Enumerate all ``v**c`` cloudlet->VM maps and return a minimum-makespan one.

    Ties go to the lexicographically smallest assignment vector, which is the
    first one met since ``itertools.product`` enumerates in that order.
    """
    c, v = scenario.num_cloudlets, scenario.num_vms
    if v**c > budget:
        raise OracleBudgetExceeded(f"{v}^{c} = {v**c} assignments exceeds budget {budget}")
    exe = execution_matrix(scenario)
    # scale to a common denominator so the inner loop runs on ints
    scale = math.lcm(1, *(x.denominator for row in exe for x in row))
    work = [[int(x * scale) for x in row] for row in exe]

    best_vec: tuple[int, ...] = ()
    best = None
    for vec in itertools.product(range(v), repeat=c):
        loads = [0] * v
        for i, j in enumerate(vec):
            loads[j] += work[i][j]
        span = max(loads)
        if best is None or span < best:
            best, best_vec = span, vec
    if best is None:
        best = 0

    # fixed plans carry no heuristic choice; tagged like the arrival-order baseline
    ready = [Fraction(0)] * v
    steps = []
    for i, j in enumerate(best_vec):
        ready[j] += exe[i][j]
        steps.append(Step(i, j, DecidedBy.FCFS, ready[j]))
    return AssignmentPlan(tuple(steps), "oracle", v**c), Fraction(best, scale)
