from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from cloudprov import Scenario

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"

# per-criterion verdicts filled by test_acceptance.py, printed at session end
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def four_tasks() -> Scenario:
    # execution times (1, .5), (2, 1), (3, 1.5), (9, 4.5) on mips (10, 20)
    return Scenario.build([10, 20], [10, 20, 30, 90])


def six_tasks() -> Scenario:
    return Scenario.build([10, 20], [12, 16, 50, 30, 20, 40])


@pytest.fixture
def t1() -> Scenario:
    return four_tasks()


@pytest.fixture
def t2() -> Scenario:
    return six_tasks()


def random_scenario(rng: random.Random, max_c: int = 6, max_v: int = 3, hi: int = 100) -> Scenario:
    v = rng.randint(1, max_v)
    c = rng.randint(0, max_c)
    return Scenario.build([rng.randint(1, hi) for _ in range(v)], [rng.randint(1, hi) for _ in range(c)])


@st.composite
def scenarios(draw, max_c: int = 6, max_v: int = 3, hi: int = 100):
    mips = draw(st.lists(st.integers(1, hi), min_size=1, max_size=max_v))
    sizes = draw(st.lists(st.integers(1, hi), min_size=0, max_size=max_c))
    return Scenario.build(mips, sizes)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}: {detail}")
