"""The result record returned by every counting entry point."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional, Tuple

METHODS = ("plain", "partite", "matching", "dp", "brute")

# fields that legitimately differ between otherwise identical runs
TIMING_FIELDS = ("elapsed",)


@dataclass
class CountReport:
    """Exact count plus diagnostics; ``stable_set`` holds 1-based row labels."""

    count: int
    method: str
    N: Optional[int] = None
    d: Optional[int] = None
    scale: Optional[int] = None
    coefficients: Optional[List[int]] = None
    trace: List[Tuple[int, int]] = field(default_factory=list)
    elapsed: float = 0.0
    sweep_terms: Optional[int] = None
    peak_cells: Optional[int] = None
    table_cells: Optional[int] = None
    stable_set: Optional[List[int]] = None
    checks: Optional[Dict[str, int]] = None

    def __post_init__(self):
        if self.count < 0:
            raise ValueError(f"count must be nonnegative, got {self.count}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")

    def to_dict(self) -> dict:
        out = asdict(self)
        out["trace"] = [list(step) for step in self.trace]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "CountReport":
        data = dict(data)
        data["trace"] = [tuple(step) for step in data.get("trace", [])]
        return cls(**data)

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "CountReport":
        return cls.from_dict(json.loads(text))
