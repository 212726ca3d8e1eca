"""Domain types: cloudlets, VMs, scenarios, and the outputs of policies and executors.

All sizes and times are :class:`fractions.Fraction` so that tie detection and
threshold comparisons are exact. Floats only appear when rendering reports.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Any, Optional, Sequence


class ScenarioError(ValueError):
    """Raised for an invalid scenario description. The message names the field."""


class PlanError(ValueError):
    """Raised when a plan references cloudlets or VMs the scenario does not have."""


def to_fraction(value: Any, where: str) -> Fraction:
    """Coerce ints, decimal strings, ``"p/q"`` strings and Fractions exactly.

    Floats go through their shortest repr so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ScenarioError(f"{where}: expected a finite number, got {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ScenarioError(f"{where}: cannot parse {value!r} as a number") from None
    raise ScenarioError(f"{where}: expected a number, got {type(value).__name__}")


def is_finite_decimal(x: Fraction) -> bool:
    d = x.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    return d == 1


def fraction_to_json(x: Fraction) -> int | float | str:
    """Lossless JSON value: int, exact decimal, or a ``"p/q"`` string."""
    if x.denominator == 1:
        return x.numerator
    if is_finite_decimal(x) and Fraction(repr(float(x))) == x:
        return float(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Cloudlet:
    id: int
    file_size: Fraction

    def __post_init__(self) -> None:
        if self.file_size <= 0:
            raise ScenarioError(f"cloudlets[{self.id}].file_size must be positive, got {self.file_size}")


@dataclass(frozen=True)
class VirtualMachine:
    id: int
    mips: Fraction

    def __post_init__(self) -> None:
        if self.mips <= 0:
            raise ScenarioError(f"vms[{self.id}].mips must be positive, got {self.mips}")


@dataclass(frozen=True)
class Hosts:
    """Inert host metadata (count, per-VM RAM). Only positivity is checked."""

    count: Optional[int] = None
    ram_mb: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.count is not None and self.count <= 0:
            raise ScenarioError(f"hosts.count must be positive, got {self.count}")
        if self.ram_mb is not None and self.ram_mb <= 0:
            raise ScenarioError(f"hosts.ram_mb must be positive, got {self.ram_mb}")


@dataclass(frozen=True)
class Scenario:
    vms: tuple[VirtualMachine, ...]
    cloudlets: tuple[Cloudlet, ...] = ()
    hosts: Optional[Hosts] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "vms", tuple(self.vms))
        object.__setattr__(self, "cloudlets", tuple(self.cloudlets))
        if not self.vms:
            raise ScenarioError("vms: at least one VM is required")
        for pos, vm in enumerate(self.vms):
            if vm.id != pos:
                raise ScenarioError(f"vms[{pos}].id must equal its position, got {vm.id}")
        for pos, cl in enumerate(self.cloudlets):
            if cl.id != pos:
                raise ScenarioError(f"cloudlets[{pos}].id must equal its position, got {cl.id}")

    @classmethod
    def build(cls, mips: Sequence[Any], sizes: Sequence[Any] = (), hosts: Optional[Hosts] = None) -> "Scenario":
        """Shorthand: ``Scenario.build([10, 20], [12, 16, 50])``."""
        vms = [VirtualMachine(j, to_fraction(m, f"vms[{j}].mips")) for j, m in enumerate(mips)]
        cls_ = [Cloudlet(i, to_fraction(s, f"cloudlets[{i}].file_size")) for i, s in enumerate(sizes)]
        return cls(tuple(vms), tuple(cls_), hosts)

    @property
    def num_vms(self) -> int:
        return len(self.vms)

    @property
    def num_cloudlets(self) -> int:
        return len(self.cloudlets)

    def scaled(self, size_factor: Any = 1, mips_factor: Any = 1) -> "Scenario":
        k = Fraction(size_factor)
        m = Fraction(mips_factor)
        return Scenario(
            tuple(VirtualMachine(vm.id, vm.mips * m) for vm in self.vms),
            tuple(Cloudlet(c.id, c.file_size * k) for c in self.cloudlets),
            self.hosts,
        )

    def to_dict(self) -> dict:
        doc: dict[str, Any] = {
            "vms": [{"mips": fraction_to_json(vm.mips)} for vm in self.vms],
            "cloudlets": [{"file_size": fraction_to_json(c.file_size)} for c in self.cloudlets],
        }
        if self.hosts is not None:
            hosts: dict[str, Any] = {}
            if self.hosts.count is not None:
                hosts["count"] = self.hosts.count
            if self.hosts.ram_mb is not None:
                hosts["ram_mb"] = fraction_to_json(self.hosts.ram_mb)
            doc["hosts"] = hosts
        return doc

    @classmethod
    def from_dict(cls, doc: Any) -> "Scenario":
        if not isinstance(doc, dict):
            raise ScenarioError("scenario: expected a JSON object")
        if "vms" not in doc:
            raise ScenarioError("vms: missing field")
        vms = _parse_items(doc["vms"], "vms", "mips", VirtualMachine)
        cloudlets = _parse_items(doc.get("cloudlets", []), "cloudlets", "file_size", Cloudlet)
        hosts = None
        if doc.get("hosts") is not None:
            raw = doc["hosts"]
            if not isinstance(raw, dict):
                raise ScenarioError("hosts: expected an object")
            count = raw.get("count")
            if count is not None and (isinstance(count, bool) or not isinstance(count, int)):
                raise ScenarioError(f"hosts.count: expected an integer, got {count!r}")
            ram = raw.get("ram_mb")
            hosts = Hosts(count, None if ram is None else to_fraction(ram, "hosts.ram_mb"))
        return cls(tuple(vms), tuple(cloudlets), hosts)


def _parse_items(raw: Any, name: str, key: str, kind: type) -> list:
    if not isinstance(raw, list):
        raise ScenarioError(f"{name}: expected a list")
    seen: set[int] = set()
    out = []
    for pos, item in enumerate(raw):
        where = f"{name}[{pos}]"
        if not isinstance(item, dict):
            raise ScenarioError(f"{where}: expected an object")
        if key not in item:
            raise ScenarioError(f"{where}.{key}: missing field")
        ident = item.get("id", pos)
        if isinstance(ident, bool) or not isinstance(ident, int):
            raise ScenarioError(f"{where}.id: expected an integer, got {ident!r}")
        if ident in seen:
            raise ScenarioError(f"{where}.id: duplicate id {ident}")
        seen.add(ident)
        if ident != pos:
            raise ScenarioError(f"{where}.id: must equal declaration position {pos}, got {ident}")
        value = to_fraction(item[key], f"{where}.{key}")
        if value <= 0:
            raise ScenarioError(f"{where}.{key} must be positive, got {value}")
        out.append(kind(pos, value))
    return out


class DecidedBy(str, enum.Enum):
    FCFS = "FCFS"
    MIN_MIN = "MinMin"
    MAX_MIN = "MaxMin"


class Case(str, enum.Enum):
    CASE1_MIN_MIN = "Case1MinMin"
    CASE2_MAX_MIN = "Case2MaxMin"
    CASE3_MIN_MIN = "Case3MinMin"
    CASE3_MAX_MIN = "Case3MaxMin"

    @property
    def policy(self) -> DecidedBy:
        return DecidedBy.MIN_MIN if self.value.endswith("MinMin") else DecidedBy.MAX_MIN


@dataclass(frozen=True)
class GapAnalysis:
    """Statistics over the sorted best completion times of the unallocated cloudlets.

    ``variance`` is kept exact; ``sd`` is its float square root for display.
    Comparisons against the SD are done on squares, see ``gap_exceeds_sd``.
    """

    sorted_best_comps: tuple[Fraction, ...]
    mean: Fraction
    variance: Fraction
    gap_location: Optional[int]

    @property
    def sd(self) -> float:
        return math.sqrt(self.variance)

    def gap_exceeds_sd(self, gap: Fraction) -> bool:
        return gap > 0 and gap * gap > self.variance

    def sd_below_mean(self) -> bool:
        return self.mean > 0 and self.variance < self.mean * self.mean


@dataclass(frozen=True)
class StepDecision:
    case_taken: Case
    gap: GapAnalysis
    c_remaining: int


@dataclass(frozen=True)
class Step:
    cloudlet_id: int
    vm_id: int
    decided_by: DecidedBy
    predicted_completion: Fraction
    decision: Optional[StepDecision] = None


@dataclass(frozen=True)
class AssignmentPlan:
    steps: tuple[Step, ...]
    policy: str = ""
    # completion-time entries evaluated while building the plan
    evaluations: int = 0

    def bindings(self) -> tuple[tuple[int, int], ...]:
        return tuple((s.cloudlet_id, s.vm_id) for s in self.steps)

    def choices(self) -> tuple[DecidedBy, ...]:
        return tuple(s.decided_by for s in self.steps)

    def vm_of(self) -> dict[int, int]:
        return {s.cloudlet_id: s.vm_id for s in self.steps}

    @classmethod
    def from_bindings(cls, bindings: Sequence[tuple[int, int]], policy: str = "fixed") -> "AssignmentPlan":
        """Plan with unknown predictions; useful for feeding executors directly."""
        return cls(tuple(Step(c, v, DecidedBy.FCFS, Fraction(0)) for c, v in bindings), policy)


class ExecutionMode(str, enum.Enum):
    SPACE_SHARED = "space"
    TIME_SHARED = "time"


@dataclass(frozen=True)
class ScheduleEntry:
    cloudlet_id: int
    vm_id: int
    start: Fraction
    finish: Fraction


@dataclass(frozen=True)
class Schedule:
    entries: tuple[ScheduleEntry, ...]
    mode: ExecutionMode
    makespan: Fraction = field(default=Fraction(0))

    def on_vm(self, vm_id: int) -> list[ScheduleEntry]:
        return [e for e in self.entries if e.vm_id == vm_id]

    def finish_of(self, cloudlet_id: int) -> Fraction:
        for e in self.entries:
            if e.cloudlet_id == cloudlet_id:
                return e.finish
        raise KeyError(cloudlet_id)
