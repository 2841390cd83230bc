"""Grid specification and the report records emitted by the inequality lab,
with their JSON and CSV encodings."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Optional

import numpy as np

CSV_COLUMNS = ("x", "lower", "mid", "upper", "lower_margin", "upper_margin")


@dataclass(frozen=True)
class GridSpec:
    start: float
    stop: float
    count: int
    scale: str = "linear"

    def __post_init__(self):
        if self.scale not in ("linear", "log"):
            raise ValueError(f"grid scale must be 'linear' or 'log', got {self.scale!r}")
        if int(self.count) != self.count or self.count < 1:
            raise ValueError(f"grid count must be a positive integer, got {self.count!r}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValueError("grid bounds must be finite")
        if not self.start < self.stop:
            raise ValueError(f"grid needs start < stop, got {self.start} >= {self.stop}")
        if self.scale == "log" and self.start <= 0:
            raise ValueError("log grid needs start > 0")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``scale:start:stop:count``, e.g. ``log:0.01:100:400``."""
        parts = text.split(":")
        if len(parts) != 4:
            raise ValueError(f"grid must look like scale:start:stop:count, got {text!r}")
        scale, start, stop, count = parts
        scale = {"lin": "linear"}.get(scale, scale)
        return cls(float(start), float(stop), int(count), scale)

    def __str__(self):
        return f"{self.scale}:{self.start:g}:{self.stop:g}:{self.count}"

    def points(self) -> list[float]:
        if self.count == 1:
            return [float(self.start)]
        if self.scale == "log":
            pts = np.geomspace(self.start, self.stop, self.count)
        else:
            pts = np.linspace(self.start, self.stop, self.count)
        pts = [float(p) for p in pts]
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise ValueError(f"grid {self} does not produce strictly increasing points")
        return pts


@dataclass(frozen=True)
class PointRecord:
    x: float
    lower: float
    mid: float
    upper: float
    lower_margin: float
    upper_margin: float


@dataclass(frozen=True)
class Violation:
    x: float
    lower: float
    mid: float
    upper: float
    margin: float
    side: str


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _jsonable(w) for k, w in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(w) for w in v]
    return v


def _float(v, missing=math.nan):
    return missing if v is None else float(v)


@dataclass
class BoundReport:
    """Outcome of checking lower <= mid <= upper over a grid.

    Margins are mid - lower and upper - mid. ``domain`` says whether the three
    expressions are stored as logs ("log") or as-is ("linear").
    """

    name: str
    grid: GridSpec
    q: Optional[float]
    points: list[PointRecord]
    violations: list[Violation]
    min_lower_margin: float
    min_upper_margin: float
    max_sharpness_gap: float
    passed: bool
    domain: str = "log"
    params: dict[str, Any] = field(default_factory=dict)

    def summary(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "q": self.q,
            "points": len(self.points),
            "violations": len(self.violations),
            "min_lower_margin": self.min_lower_margin,
            "min_upper_margin": self.min_upper_margin,
            "pass": self.passed,
        }

    def to_dict(self) -> dict[str, Any]:
        return _jsonable({
            "name": self.name,
            "grid": asdict(self.grid),
            "q": self.q,
            "domain": self.domain,
            "params": self.params,
            "violations": [asdict(v) for v in self.violations],
            "min_lower_margin": self.min_lower_margin,
            "min_upper_margin": self.min_upper_margin,
            "max_sharpness_gap": self.max_sharpness_gap,
            "pass": self.passed,
            "points": [asdict(p) for p in self.points],
        })

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BoundReport":
        def point(p):
            return PointRecord(p["x"], _float(p["lower"], -math.inf), _float(p["mid"]),
                               _float(p["upper"], math.inf),
                               _float(p["lower_margin"], math.inf),
                               _float(p["upper_margin"], math.inf))

        return cls(
            name=d["name"],
            grid=GridSpec(**d["grid"]),
            q=d["q"],
            points=[point(p) for p in d["points"]],
            violations=[Violation(v["x"], _float(v["lower"], -math.inf), _float(v["mid"]),
                                  _float(v["upper"], math.inf), _float(v["margin"]), v["side"])
                        for v in d["violations"]],
            min_lower_margin=_float(d["min_lower_margin"], math.inf),
            min_upper_margin=_float(d["min_upper_margin"], math.inf),
            max_sharpness_gap=_float(d["max_sharpness_gap"], math.inf),
            passed=d["pass"],
            domain=d.get("domain", "log"),
            params=d.get("params", {}),
        )

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def rows(self) -> list[dict[str, float]]:
        return [asdict(p) for p in self.points]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for p in self.points:
            writer.writerow([repr(getattr(p, c)) for c in CSV_COLUMNS])
        return buf.getvalue()


def build_report(name: str, grid: GridSpec, q: Optional[float], xs, lower, mid, upper,
                 lower_margin, upper_margin, lower_req, upper_req, *, domain: str = "log",
                 params: Optional[dict] = None) -> BoundReport:
    """Assemble a report; a point violates a side when its margin is below the
    per-point requirement (``-slack`` for weak bounds, a positive floor for
    strict ones)."""
    points, violations = [], []
    for i, x in enumerate(xs):
        p = PointRecord(float(x), float(lower[i]), float(mid[i]), float(upper[i]),
                        float(lower_margin[i]), float(upper_margin[i]))
        points.append(p)
        if not p.lower_margin >= lower_req[i]:
            violations.append(Violation(p.x, p.lower, p.mid, p.upper, p.lower_margin, "lower"))
        if not p.upper_margin >= upper_req[i]:
            violations.append(Violation(p.x, p.lower, p.mid, p.upper, p.upper_margin, "upper"))
    min_lo = min((p.lower_margin for p in points), default=math.inf)
    min_up = min((p.upper_margin for p in points), default=math.inf)
    finite = [m for m in (min_lo, min_up) if math.isfinite(m)]
    return BoundReport(
        name=name, grid=grid, q=q, points=points, violations=violations,
        min_lower_margin=min_lo, min_upper_margin=min_up,
        max_sharpness_gap=max(finite) if finite else math.inf,
        passed=not violations, domain=domain, params=dict(params or {}),
    )
