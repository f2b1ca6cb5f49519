"""Run reports with canonical, diffable serialization.

Structured reports are canonical JSON (sorted keys, fixed separators) so that
identical invocations produce byte-identical files.  Wall-clock timings are
deliberately kept out of the structured payload for the same reason; they are
printed on the text channel instead.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .conditions import ConditionReport
from .regular import TGroupReport
from .screen import ScreenReport


@dataclass
class RunReport:
    command: str
    group_name: str
    group_order: int
    payload: dict[str, Any]
    counters: dict[str, int] = field(default_factory=dict)
    tool_version: str = __version__

    def to_obj(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "counters": dict(sorted(self.counters.items())),
            "group": {"name": self.group_name, "order": self.group_order},
            "payload": self.payload,
            "tool_version": self.tool_version,
        }

    def to_text(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, indent=1) + "\n"

    @classmethod
    def from_obj(cls, obj: dict[str, Any]) -> "RunReport":
        return cls(
            command=obj["command"],
            group_name=obj["group"]["name"],
            group_order=obj["group"]["order"],
            payload=obj["payload"],
            counters=dict(obj.get("counters", {})),
            tool_version=obj.get("tool_version", ""),
        )


def write_report(report: RunReport, path) -> None:
    Path(path).write_text(report.to_text(), encoding="utf-8")


def read_report(path) -> RunReport:
    return RunReport.from_obj(json.loads(Path(path).read_text(encoding="utf-8")))


def tgroup_payload(result: TGroupReport) -> dict[str, Any]:
    return {
        "order": result.order,
        "is_abelian": result.is_abelian,
        "exponent": result.exponent,
        "is_elementary_2_abelian": result.is_elementary_2_abelian,
        "identity_id": result.identity_id,
        "iota_id": result.iota_id,
        "table": result.table,
        "entries": [
            {
                "id": e.entry_id,
                "g": list(e.g_array),
                "f": list(e.triplet.f.images),
                "h": list(e.triplet.h.images),
                "subgroup": list(e.subgroup),
            }
            for e in result.entries
        ],
    }


def screen_payload(result: ScreenReport) -> dict[str, Any]:
    return {
        "centerless": result.centerless,
        "passed": result.passed,
        "witnesses": [
            {
                "k1": list(w.k1),
                "k2": list(w.k2),
                "q1": list(w.q1),
                "q2": list(w.q2),
            }
            for w in result.witnesses
        ],
        "char_test_disagreements": [
            list(t) for t in result.char_test_disagreements
        ],
        "counters": dict(sorted(result.counters.items())),
    }


def conditions_payload(
    reports: list[ConditionReport], violations: Optional[dict[int, list[str]]] = None
) -> dict[str, Any]:
    return {
        "entries": [
            {
                "entry_id": r.entry_id,
                "hypothesis_met": r.hypothesis_met,
                "structure": list(r.structure),
                "square_in_hol": r.square_in_hol,
                "square_anti": r.square_anti,
                "square_hom": r.square_hom,
                "kernels_stable": r.kernels_stable,
                "inner_coincide": r.inner_coincide,
                "quotient_two_torsion": r.quotient_two_torsion,
                "transport_ok": r.transport_ok,
                "witnesses": {k: list(v) for k, v in sorted(r.witnesses.items())},
            }
            for r in reports
        ],
        "violations": {str(k): v for k, v in (violations or {}).items()},
    }
