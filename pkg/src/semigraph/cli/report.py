"""Line-delimited JSON trial records with a stable result digest."""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional

import numpy as np

from ..errors import IoFailure

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
MASK64 = (1 << 64) - 1


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * FNV_PRIME) & MASK64
    return h


def _atom(x) -> str:
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if x == 0.0:
            x = 0.0  # fold -0.0
        return format(x, ".12g")
    return str(int(x))


def canonical(records: Iterable[tuple]) -> str:
    """Sorted tuples, comma-separated fields, one tuple per line."""
    return "\n".join(",".join(_atom(v) for v in t) for t in sorted(records))


def result_digest(records: Iterable[tuple]) -> str:
    return format(fnv1a64(canonical(records).encode("utf-8")), "016x")


@dataclass
class TrialRecord:
    algorithm: str
    graph: str
    n: int
    nvals: int
    trial: int
    seconds: float
    result_digest: str


@dataclass
class Report:
    algorithm: str
    graph: str
    n: int
    nvals: int
    setup_seconds: float = 0.0
    trials: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    verify: Optional[str] = None
    warnings: list = field(default_factory=list)

    @property
    def seconds(self) -> list:
        return [t.seconds for t in self.trials]


def emit_report(report: Report, output_path) -> None:
    """Write one JSON object per trial."""
    try:
        with open(output_path, "w", encoding="utf-8") as fh:
            for rec in report.trials:
                fh.write(json.dumps(asdict(rec), sort_keys=True) + "\n")
    except OSError as exc:
        raise IoFailure(f"cannot write report {os.fspath(output_path)}: {exc.strerror}") from exc
