"""Run reports and their renderings: text table, CSV, JSON, ASCII Gantt.

Numbers are rendered as decimals with at most 6 fractional digits. Exact
values with a short decimal expansion print exactly (``8.2``, ``5.6``).
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal
from fractions import Fraction
from typing import Any, Optional, Sequence

from .model import AssignmentPlan, ExecutionMode, Schedule, Scenario

DIGITS = 6
_QUANTUM = Decimal(1).scaleb(-DIGITS)

CSV_HEADER = ["policy", "mode", "makespan", "vm_id", "busy_time", "utilization"]


def fmt(x: Fraction | float | int) -> str:
    if isinstance(x, float):
        d = Decimal(repr(x))
    else:
        x = Fraction(x)
        d = Decimal(x.numerator) / Decimal(x.denominator) if x.denominator != 1 else Decimal(x.numerator)
    d = d.quantize(_QUANTUM, rounding=ROUND_HALF_EVEN)
    s = format(d, "f")
    if "." in s:
        s = s.rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def quantize(x: Fraction | float | int) -> Fraction:
    return Fraction(fmt(x))


def _json_number(x) -> int | float:
    s = fmt(x)
    return int(s) if "." not in s else float(s)


@dataclass(frozen=True)
class VmUsage:
    vm_id: int
    busy_time: Fraction
    utilization: Fraction


@dataclass(frozen=True)
class CloudletRow:
    cloudlet_id: int
    vm_id: int
    start: Fraction
    finish: Fraction


@dataclass(frozen=True)
class TraceRow:
    step: int
    cloudlet_id: int
    vm_id: int
    case: str
    gap_location: Optional[int]
    mean: Fraction
    sd: Fraction


@dataclass(frozen=True)
class RunReport:
    policy: str
    mode: ExecutionMode
    makespan: Fraction
    vms: tuple[VmUsage, ...]
    cloudlets: tuple[CloudletRow, ...]
    trace: tuple[TraceRow, ...] = field(default=())

    @classmethod
    def build(cls, scenario: Scenario, plan: AssignmentPlan, schedule: Schedule, policy: str) -> "RunReport":
        """Summarize a run. Values are quantized to the rendered precision here,
        so a report survives a JSON round trip unchanged."""
        busy = [Fraction(0)] * scenario.num_vms
        for e in schedule.entries:
            busy[e.vm_id] += scenario.cloudlets[e.cloudlet_id].file_size / scenario.vms[e.vm_id].mips
        span = schedule.makespan
        vms = tuple(
            VmUsage(j, quantize(b), quantize(b / span if span else 0)) for j, b in enumerate(busy)
        )
        rows = tuple(
            CloudletRow(e.cloudlet_id, e.vm_id, quantize(e.start), quantize(e.finish)) for e in schedule.entries
        )
        trace = tuple(
            TraceRow(
                k,
                s.cloudlet_id,
                s.vm_id,
                s.decision.case_taken.value,
                s.decision.gap.gap_location,
                quantize(s.decision.gap.mean),
                quantize(s.decision.gap.sd),
            )
            for k, s in enumerate(plan.steps)
            if s.decision is not None
        )
        return cls(policy, ExecutionMode(schedule.mode), quantize(span), vms, rows, trace)

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "mode": self.mode.value,
            "makespan": _json_number(self.makespan),
            "vms": [
                {"vm_id": u.vm_id, "busy_time": _json_number(u.busy_time), "utilization": _json_number(u.utilization)}
                for u in self.vms
            ],
            "cloudlets": [
                {"cloudlet_id": r.cloudlet_id, "vm_id": r.vm_id, "start": _json_number(r.start), "finish": _json_number(r.finish)}
                for r in self.cloudlets
            ],
            "trace": [
                {
                    "step": t.step,
                    "cloudlet_id": t.cloudlet_id,
                    "vm_id": t.vm_id,
                    "case": t.case,
                    "gap_location": t.gap_location,
                    "mean": _json_number(t.mean),
                    "sd": _json_number(t.sd),
                }
                for t in self.trace
            ],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "RunReport":
        num = lambda v: Fraction(str(v))  # noqa: E731
        return cls(
            doc["policy"],
            ExecutionMode(doc["mode"]),
            num(doc["makespan"]),
            tuple(VmUsage(u["vm_id"], num(u["busy_time"]), num(u["utilization"])) for u in doc["vms"]),
            tuple(CloudletRow(r["cloudlet_id"], r["vm_id"], num(r["start"]), num(r["finish"])) for r in doc["cloudlets"]),
            tuple(
                TraceRow(t["step"], t["cloudlet_id"], t["vm_id"], t["case"], t["gap_location"], num(t["mean"]), num(t["sd"]))
                for t in doc.get("trace", [])
            ),
        )


def reports_to_json(reports: Sequence[RunReport], as_list: bool = False) -> str:
    payload: Any = [r.to_dict() for r in reports] if as_list or len(reports) != 1 else reports[0].to_dict()
    return json.dumps(payload, indent=2) + "\n"


def reports_from_json(text: str) -> list[RunReport]:
    doc = json.loads(text, parse_float=Fraction, parse_int=Fraction)
    docs = doc if isinstance(doc, list) else [doc]
    return [RunReport.from_dict(_ints(d)) for d in docs]


def _ints(obj):
    # parse_int turned ids into Fractions; restore plain ints for integral values
    if isinstance(obj, dict):
        return {k: _ints(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_ints(v) for v in obj]
    if isinstance(obj, Fraction) and obj.denominator == 1:
        return int(obj)
    return obj


def reports_to_csv(reports: Sequence[RunReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        for u in r.vms:
            writer.writerow([r.policy, r.mode.value, fmt(r.makespan), u.vm_id, fmt(u.busy_time), fmt(u.utilization)])
    return buf.getvalue()


def _table(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(map(str, header))] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_run_table(report: RunReport) -> str:
    out = [f"policy: {report.policy}  mode: {report.mode.value}  makespan: {fmt(report.makespan)}", ""]
    out.append(_table(["vm", "busy", "utilization"], [(u.vm_id, fmt(u.busy_time), fmt(u.utilization)) for u in report.vms]))
    out.append("")
    out.append(_table(["cloudlet", "vm", "start", "finish"], [(r.cloudlet_id, r.vm_id, fmt(r.start), fmt(r.finish)) for r in report.cloudlets]))
    if report.trace:
        out.append("")
        out.append(_table(
            ["step", "cloudlet", "vm", "case", "gap_at", "mean", "sd"],
            [(t.step, t.cloudlet_id, t.vm_id, t.case, "-" if t.gap_location is None else t.gap_location, fmt(t.mean), fmt(t.sd)) for t in report.trace],
        ))
    return "\n".join(out) + "\n"


def render_compare_table(reports: Sequence[RunReport]) -> str:
    if not reports:
        return ""
    nvm = len(reports[0].vms)
    header = ["policy", "mode", "makespan"] + [f"util_vm{j}" for j in range(nvm)]
    rows = [[r.policy, r.mode.value, fmt(r.makespan)] + [fmt(u.utilization) for u in r.vms] for r in reports]
    return _table(header, rows) + "\n"


def _label(cloudlet_id: int) -> str:
    return "0123456789abcdefghijklmnopqrstuvwxyz"[cloudlet_id % 36]


def render_gantt(report: RunReport, width: int = 60) -> str:
    """One bar per VM (space-shared) or per cloudlet (time-shared).

    Column ``k`` covers ``[k, k+1) * makespan / width``; a bar fills the
    columns from ``round(start)`` to ``round(finish)`` after scaling.
    """
    span = report.makespan
    lines = [f"{report.policy} / {report.mode.value}  makespan {fmt(span)}"]
    if span == 0:
        return "\n".join(lines + ["(no work)"]) + "\n"
    scale = Fraction(width) / span

    def col(t: Fraction) -> int:
        return round(t * scale)

    vm_ids = [u.vm_id for u in report.vms]
    if report.mode is ExecutionMode.SPACE_SHARED:
        for j in vm_ids:
            bar = [" "] * width
            for r in report.cloudlets:
                if r.vm_id == j:
                    for k in range(col(r.start), col(r.finish)):
                        bar[k] = _label(r.cloudlet_id)
            lines.append(f"VM{j:<3}|{''.join(bar)}|")
    else:
        for j in vm_ids:
            for r in report.cloudlets:
                if r.vm_id == j:
                    bar = [" "] * width
                    for k in range(col(r.start), col(r.finish)):
                        bar[k] = _label(r.cloudlet_id)
                    lines.append(f"VM{j:<3}|{''.join(bar)}| c{r.cloudlet_id}")
    lines.append(f"{'':5}0{fmt(span).rjust(width + 1)}")
    return "\n".join(lines) + "\n"
