"""Parameter sweeps over the dilaton parameter, threshold search and CSV output."""
from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import dilaton, measures, pipeline
from .measures import OptimizerConfig
from .subsystems import canonical, is_tripartite

MEASURES = ("gtn", "gte", "chsh", "concurrence")
TRIPARTITE_MEASURES = ("gtn", "gte")
CSV_HEADER = "alpha,value,converged"


@dataclass(frozen=True)
class AlphaGrid:
    start: float = 0.0
    stop: float = 1.0
    step: float = 0.01

    @classmethod
    def parse(cls, text: str) -> "AlphaGrid":
        """Parse ``from:to:step``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"alpha grid must look like from:to:step, got {text!r}")
        return cls(*(float(x) for x in parts))

    def points(self) -> np.ndarray:
        if not self.step > 0:
            raise ValueError("alpha step must be positive")
        if self.stop < self.start:
            raise ValueError("alpha grid stop is below start")
        n = int(math.floor((self.stop - self.start) / self.step + 1e-9))
        pts = self.start + self.step * np.arange(n + 1)
        return np.minimum(pts, self.stop)


@dataclass(frozen=True)
class SweepSpec:
    measure: str = "gtn"
    subsystem: str = "AB_IC_I"
    alpha_grid: AlphaGrid = AlphaGrid()
    omega: float = 1.0
    mass: float = 1.0
    p: float = 0.5
    r: float = 0.5
    optimizer: OptimizerConfig = OptimizerConfig()
    output_path: str | None = None

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise ValueError(f"unknown measure {self.measure!r}; expected one of {MEASURES}")
        tag = canonical(self.subsystem)
        object.__setattr__(self, "subsystem", tag)
        if (self.measure in TRIPARTITE_MEASURES) != is_tripartite(tag):
            kind = "tripartite" if self.measure in TRIPARTITE_MEASURES else "bipartite"
            raise ValueError(f"measure {self.measure} needs a {kind} subsystem, got {tag}")
        if not (self.omega > 0 and self.mass > 0):
            raise ValueError("omega and mass must be positive")
        for name in ("p", "r"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        g = self.alpha_grid
        if not g.step > 0:
            raise ValueError("alpha step must be positive")
        if g.start < 0 or g.stop > self.mass or g.stop < g.start:
            raise ValueError(f"alpha grid {g.start}:{g.stop} must lie within [0, mass={self.mass}]")


@dataclass(frozen=True)
class SweepRow:
    alpha: float
    value: float
    converged: bool = True


@dataclass(frozen=True)
class ThresholdResult:
    found: bool
    alpha_critical: float | None
    bracket_width: float
    scan: list = field(default_factory=list, repr=False)


def evaluate(spec: SweepSpec, alpha: float) -> SweepRow:
    """One grid point: beta(alpha) -> state -> channel -> reduction -> measure."""
    b = dilaton.beta(dilaton.DilatonParams(omega=spec.omega, mass=spec.mass, alpha=float(alpha)))
    rho = pipeline.reduced_state(spec.subsystem, b, spec.p, spec.r)
    if spec.measure == "gtn":
        res = measures.svetlichny_search(rho, spec.optimizer)
        return SweepRow(float(alpha), res.value, res.converged)
    if spec.measure == "gte":
        return SweepRow(float(alpha), measures.pi_tangle(rho))
    if spec.measure == "chsh":
        return SweepRow(float(alpha), measures.chsh_max(rho))
    return SweepRow(float(alpha), measures.concurrence(rho))


def _evaluate_args(args):
    return evaluate(*args)


def worker_count(default: int = 1) -> int:
    """Worker cap from ``HC_THREADS``; serial when unset."""
    raw = os.environ.get("HC_THREADS")
    if raw is None or raw.strip() == "":
        return default
    n = int(raw)
    if n < 1:
        raise ValueError(f"HC_THREADS must be a positive integer, got {raw!r}")
    return n


def run_sweep(spec: SweepSpec, workers: int | None = None) -> list[SweepRow]:
    alphas = spec.alpha_grid.points()
    workers = worker_count() if workers is None else workers
    jobs = [(spec, a) for a in alphas]
    if workers <= 1 or len(jobs) <= 1:
        return [evaluate(spec, a) for a in alphas]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so rows come back in grid order
        return list(pool.map(_evaluate_args, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def find_threshold(spec: SweepSpec, target: float = 4.0, scan_points: int = 32,
                   width: float = 1e-4) -> ThresholdResult:
    """Locate the first alpha where the Svetlichny maximum crosses ``target``."""
    if spec.measure != "gtn":
        raise ValueError("threshold search needs measure 'gtn'")
    f = lambda a: evaluate(spec, a).value - target
    grid = np.linspace(0.0, spec.mass, scan_points)
    vals = [f(a) for a in grid]
    scan = list(zip(grid.tolist(), vals))
    for i in range(len(grid) - 1):
        if np.sign(vals[i]) != np.sign(vals[i + 1]) and vals[i] != 0:
            lo, hi, flo = grid[i], grid[i + 1], vals[i]
            while hi - lo > width:
                mid = 0.5 * (lo + hi)
                fm = f(mid)
                if np.sign(fm) == np.sign(flo):
                    lo, flo = mid, fm
                else:
                    hi = mid
            return ThresholdResult(True, 0.5 * (lo + hi), hi - lo, scan)
        if vals[i] == 0:
            return ThresholdResult(True, float(grid[i]), 0.0, scan)
    return ThresholdResult(False, None, float(grid[1] - grid[0]), scan)


def format_number(x: float) -> str:
    """Decimal notation with 12 significant digits."""
    return np.format_float_positional(float(x), precision=12, unique=False,
                                      fractional=False, trim="-")


def csv_text(rows) -> str:
    lines = [CSV_HEADER] + [
        f"{format_number(row.alpha)},{format_number(row.value)},{'true' if row.converged else 'false'}"
        for row in rows
    ]
    return "\n".join(lines)


def emit_csv(rows, path) -> None:
    text = csv_text(rows)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {path}: {exc.strerror or exc}") from exc


def parse_csv(path) -> list[SweepRow]:
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if ",".join(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header}")
        return [SweepRow(float(a), float(v), c == "true") for a, v, c in reader]


def with_params(spec: SweepSpec, **changes) -> SweepSpec:
    return replace(spec, **changes)
