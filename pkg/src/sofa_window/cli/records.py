"""Machine-readable command results."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

import numpy as np

SIG_DIGITS = 9


def tidy(value):
    """JSON-ready copy with every float cut to nine significant digits.

    Non-finite floats become None: JSON has no spelling for them.
    """
    if isinstance(value, dict):
        return {str(k): tidy(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [tidy(v) for v in value]
    if isinstance(value, np.ndarray):
        return tidy(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (float, np.floating)):
        v = float(value)
        return float(f"{v:.{SIG_DIGITS}g}") if math.isfinite(v) else None
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f"cannot serialise {type(value).__name__}")


@dataclass
class ResultRecord:
    command: str
    verdict: str
    witness: dict | None = None
    metrics: dict = field(default_factory=dict)
    timing: dict = field(default_factory=dict)
    error: dict | None = None

    def __post_init__(self) -> None:
        if self.verdict not in ("feasible", "infeasible", "success", "error"):
            raise ValueError(f"unknown verdict {self.verdict!r}")
        self.witness = tidy(self.witness)
        self.metrics = tidy(self.metrics)
        self.timing = tidy(self.timing)
        self.error = tidy(self.error)

    @property
    def exit_code(self) -> int:
        return {"feasible": 0, "success": 0, "infeasible": 2}.get(self.verdict, 1)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> ResultRecord:
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> ResultRecord:
        return cls.from_dict(json.loads(text))
