"""Seeded Monte-Carlo sweeps that machine-check the bound theorems.

Each sample gets its own random substream derived from (seed, m, index), so
records are reproducible bit-for-bit regardless of execution order, and a
sweep parallelized across workers writes exactly the bytes a serial sweep
writes.  A theorem violation in an even-m sweep is a build-failing event; it
is collected into the summary and surfaced, never averaged away.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import bounds
from .bell_operators import max_expectation_grid
from .errors import (
    BellboundError,
    InvalidDimensionError,
    IoFailureError,
    TooLargeError,
)
from .schmidt_state import (
    SchmidtVector,
    concurrence,
    effective_rank,
    sample_haar,
    sample_simplex,
)
from .tolerances import MAX_ORACLE_DIM, THEOREM_TOL

__all__ = [
    "MEASURES",
    "ExperimentConfig",
    "SampleRecord",
    "DimensionSummary",
    "Violation",
    "SweepSummary",
    "OracleDimension",
    "OracleSummary",
    "substream",
    "resolve_workers",
    "run_sweep",
    "verify_oracle",
    "scatter_cb",
]

MEASURES = ("haar", "simplex")

_dumps = json.JSONEncoder(separators=(",", ":")).encode


@dataclass(frozen=True)
class ExperimentConfig:
    """Sweep parameters; identical configs give byte-identical outputs."""

    dims: tuple[int, ...]
    samples: int
    seed: int
    measure: str = "haar"
    second_dim_offset: int = 0
    tolerance: float = THEOREM_TOL
    output_path: str | None = None

    def __post_init__(self) -> None:
        dims = tuple(int(m) for m in self.dims)
        if not dims:
            raise InvalidDimensionError("dims must be nonempty")
        if any(m < 1 for m in dims):
            raise InvalidDimensionError(f"dims must be positive, got {dims}")
        object.__setattr__(self, "dims", dims)
        if int(self.samples) < 1:
            raise InvalidDimensionError(f"samples must be >= 1, got {self.samples}")
        object.__setattr__(self, "samples", int(self.samples))
        if not 0 <= int(self.seed) < 2**64:
            raise InvalidDimensionError("seed must fit an unsigned 64-bit integer")
        object.__setattr__(self, "seed", int(self.seed))
        if self.measure not in MEASURES:
            raise InvalidDimensionError(
                f"measure must be one of {MEASURES}, got {self.measure!r}"
            )
        if int(self.second_dim_offset) < 0:
            raise InvalidDimensionError("second_dim_offset must be nonnegative")
        object.__setattr__(self, "second_dim_offset", int(self.second_dim_offset))
        if not self.tolerance > 0.0:
            raise InvalidDimensionError(f"tolerance must be positive, got {self.tolerance}")
        if self.output_path is not None:
            object.__setattr__(self, "output_path", str(self.output_path))


@dataclass(frozen=True)
class SampleRecord:
    """One sweep datum; serialized as a single JSON line.

    ``theorem1_ok`` / ``theorem2_ok`` are None (JSON null) for odd m, where
    the bounds make no claim.  ``oracle_value`` / ``oracle_gap`` are filled
    only by oracle verification runs.
    """

    m: int
    n: int
    index: int
    coeffs: list[float]
    effective_rank: int
    concurrence: float
    k: float
    gamma: float
    bell_value: float
    upper: float
    lower: float
    theorem1_ok: bool | None
    theorem2_ok: bool | None
    certified_nonlocal: bool
    oracle_value: float | None = None
    oracle_gap: float | None = None

    def as_dict(self) -> dict:
        return dict(vars(self))

    def to_json(self) -> str:
        return _dumps(self.as_dict())


@dataclass(frozen=True)
class DimensionSummary:
    """Reduction of one m block of a sweep; margin minima are None for odd m."""

    m: int
    n: int
    samples: int
    min_theorem1_margin: float | None
    min_theorem2_margin: float | None
    max_concurrence: float
    violations: int


@dataclass(frozen=True)
class Violation:
    """One failed theorem check: which bound, where, by how much."""

    m: int
    index: int
    check: str  # "theorem1" or "theorem2"
    margin: float


@dataclass(frozen=True)
class SweepSummary:
    measure: str
    seed: int
    samples_per_dim: int
    records_written: int
    per_dim: tuple[DimensionSummary, ...]
    violations: tuple[Violation, ...]


@dataclass(frozen=True)
class OracleDimension:
    m: int
    n: int
    samples: int
    max_gap: float


@dataclass(frozen=True)
class OracleSummary:
    measure: str
    seed: int
    samples_per_dim: int
    grid_points: int
    per_dim: tuple[OracleDimension, ...]
    max_gap: float


def substream(seed: int, m: int, index: int) -> np.random.Generator:
    """Per-sample generator seeded by the (seed, m, index) triple.

    SeedSequence hashes the triple into independent stream state, so draws
    never depend on scheduling or on how samples are chunked across workers.
    """
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence((seed, m, index))))


def _draw(seed: int, measure: str, offset: int, m: int, index: int) -> SchmidtVector:
    rng = substream(seed, m, index)
    if measure == "haar":
        return sample_haar(m, m + offset, rng)
    return sample_simplex(m, rng)


def _record_for(
    s: SchmidtVector,
    m: int,
    n: int,
    index: int,
    tolerance: float,
    oracle_value: float | None = None,
) -> SampleRecord:
    c = concurrence(s)
    b = bounds.bell_value_formula(s)
    up = bounds.upper_bound(c)
    lo = bounds.lower_bound(c)
    even = m % 2 == 0
    return SampleRecord(
        m=m,
        n=n,
        index=index,
        coeffs=s.coeffs.tolist(),
        effective_rank=effective_rank(s),
        concurrence=c,
        k=bounds.k_value(s),
        gamma=bounds.gamma_value(s),
        bell_value=b,
        upper=up,
        lower=lo,
        theorem1_ok=(up - b >= -tolerance) if even else None,
        theorem2_ok=(b - lo >= -tolerance) if even else None,
        certified_nonlocal=bounds.is_nonlocal_certified(s),
        oracle_value=oracle_value,
        oracle_gap=None if oracle_value is None else abs(b - oracle_value),
    )


def _sweep_chunk(task: tuple) -> list[dict]:
    """Worker body: records for sample indices [start, stop) at one m."""
    seed, measure, offset, tolerance, m, start, stop = task
    out = []
    for index in range(start, stop):
        try:
            s = _draw(seed, measure, offset, m, index)
            out.append(_record_for(s, m, m + offset, index, tolerance).as_dict())
        except BellboundError as exc:
            exc.args = (f"sample m={m} index={index}: {exc}",)
            raise
    return out


def resolve_workers(explicit: int | None = None) -> int:
    """Worker count: explicit argument, else BELLBOUND_THREADS (0/unset = auto)."""
    if explicit is not None:
        requested = int(explicit)
    else:
        raw = os.environ.get("BELLBOUND_THREADS", "0").strip() or "0"
        try:
            requested = int(raw)
        except ValueError:
            raise InvalidDimensionError(
                f"BELLBOUND_THREADS must be an integer, got {raw!r}"
            ) from None
        if requested < 0:
            raise InvalidDimensionError("BELLBOUND_THREADS must be nonnegative")
    if requested == 0:
        requested = os.cpu_count() or 1
    return max(1, requested)


def _chunk_ranges(samples: int, workers: int) -> list[tuple[int, int]]:
    size = max(64, -(-samples // (4 * workers)))  # ceil, ~4 chunks per worker
    return [(lo, min(lo + size, samples)) for lo in range(0, samples, size)]


def _iter_chunks(config: ExperimentConfig, workers: int):
    """Yield (m, record-dict list) blocks in deterministic (m, index) order."""
    tasks = [
        (m, (config.seed, config.measure, config.second_dim_offset,
             config.tolerance, m, lo, hi))
        for m in config.dims
        for (lo, hi) in _chunk_ranges(config.samples, workers)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map() preserves submission order, so parallel output bytes
            # match the serial ones exactly
            for (m, _), records in zip(tasks, pool.map(_sweep_chunk, (t for _, t in tasks))):
                yield m, records
    else:
        for m, task in tasks:
            yield m, _sweep_chunk(task)


class _DimReducer:
    """Streaming min/max/violations for one m block."""

    def __init__(self, m: int, n: int):
        self.m = m
        self.n = n
        self.count = 0
        self.min_t1: float | None = None
        self.min_t2: float | None = None
        self.max_c = 0.0
        self.violations: list[Violation] = []

    def add(self, rec: dict) -> None:
        self.count += 1
        self.max_c = max(self.max_c, rec["concurrence"])
        if rec["theorem1_ok"] is None:
            return
        t1 = rec["upper"] - rec["bell_value"]
        t2 = rec["bell_value"] - rec["lower"]
        self.min_t1 = t1 if self.min_t1 is None else min(self.min_t1, t1)
        self.min_t2 = t2 if self.min_t2 is None else min(self.min_t2, t2)
        if not rec["theorem1_ok"]:
            self.violations.append(Violation(self.m, rec["index"], "theorem1", t1))
        if not rec["theorem2_ok"]:
            self.violations.append(Violation(self.m, rec["index"], "theorem2", t2))

    def summary(self) -> DimensionSummary:
        return DimensionSummary(
            m=self.m,
            n=self.n,
            samples=self.count,
            min_theorem1_margin=self.min_t1,
            min_theorem2_margin=self.min_t2,
            max_concurrence=self.max_c,
            violations=len(self.violations),
        )


def run_sweep(config: ExperimentConfig, workers: int | None = None) -> SweepSummary:
    """Draw, check and record `config.samples` states per dimension.

    Writes one JSON line per sample to ``config.output_path`` in (m, index)
    order and returns the reduction.  ``workers`` overrides the
    BELLBOUND_THREADS / auto worker count; output bytes do not depend on it.
    """
    if config.output_path is None:
        raise IoFailureError("run_sweep needs config.output_path")
    workers = resolve_workers(workers)
    reducers = {m: _DimReducer(m, m + config.second_dim_offset) for m in config.dims}
    written = 0
    try:
        with open(config.output_path, "w", encoding="utf-8", newline="\n") as fh:
            for m, records in _iter_chunks(config, workers):
                reducer = reducers[m]
                for rec in records:
                    reducer.add(rec)
                    fh.write(_dumps(rec))
                    fh.write("\n")
                    written += 1
    except OSError as exc:
        raise IoFailureError(f"cannot write {config.output_path}: {exc}") from exc
    violations = tuple(v for m in config.dims for v in reducers[m].violations)
    return SweepSummary(
        measure=config.measure,
        seed=config.seed,
        samples_per_dim=config.samples,
        records_written=written,
        per_dim=tuple(reducers[m].summary() for m in config.dims),
        violations=violations,
    )


def verify_oracle(config: ExperimentConfig, grid_points: int = 360) -> OracleSummary:
    """Cross-check the closed-form Bell value against the dense grid maximum.

    For every sampled state computes |bell_value_formula - grid maximum| and
    reduces to the largest gap per dimension.  No file output; the summary
    is the result.  Dimensions must respect the dense-oracle guard.
    """
    for m in config.dims:
        n = m + config.second_dim_offset
        if m * n > MAX_ORACLE_DIM:
            raise TooLargeError(f"dense oracle guard: m*n = {m * n} exceeds {MAX_ORACLE_DIM}")
    per_dim = []
    for m in config.dims:
        n = m + config.second_dim_offset
        worst = 0.0
        for index in range(config.samples):
            s = _draw(config.seed, config.measure, config.second_dim_offset, m, index)
            formula = bounds.bell_value_formula(s)
            _, grid_value = max_expectation_grid(s, n, grid_points)
            worst = max(worst, abs(formula - grid_value))
        per_dim.append(OracleDimension(m=m, n=n, samples=config.samples, max_gap=worst))
    return OracleSummary(
        measure=config.measure,
        seed=config.seed,
        samples_per_dim=config.samples,
        grid_points=int(grid_points),
        per_dim=tuple(per_dim),
        max_gap=max(d.max_gap for d in per_dim),
    )


def scatter_cb(config: ExperimentConfig) -> Path:
    """Write the (concurrence, Bell value, envelope) cloud as CSV.

    Columns ``m,concurrence,bell_value,upper,lower``; rows sorted by
    concurrence within each m block; floats printed with shortest
    round-trip decimals.  Returns the output path.
    """
    if config.output_path is None:
        raise IoFailureError("scatter_cb needs config.output_path")
    path = Path(config.output_path)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("m,concurrence,bell_value,upper,lower\n")
            for m in config.dims:
                rows = []
                for index in range(config.samples):
                    s = _draw(config.seed, config.measure, config.second_dim_offset, m, index)
                    c = concurrence(s)
                    rows.append((c, bounds.bell_value_formula(s),
                                 bounds.upper_bound(c), bounds.lower_bound(c)))
                rows.sort(key=lambda r: r[0])
                for c, b, up, lo in rows:
                    fh.write(f"{m},{c!r},{b!r},{up!r},{lo!r}\n")
    except OSError as exc:
        raise IoFailureError(f"cannot write {path}: {exc}") from exc
    return path
