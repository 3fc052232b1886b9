"""Benchmark harness: seeded instance families, metrics, and CSV reports.

Instances are drawn from a counter-based Philox stream keyed by
(seed, index), so any single instance reproduces in isolation and whole
suites are byte-deterministic in every non-timing column.  The suite
times the exact solver and the trimming solver per epsilon (median wall
clock over a configurable number of repeats) and reports per-objective
quality ratios as exact rationals.

Report layout: one records CSV with a row per (instance, epsilon), plus
aggregate tables keyed by job-count family, by processing-time range,
and by delivery-time range.  Rationals are rendered as 6-digit decimals
next to exact num/den columns.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from statistics import median
from typing import Callable, Optional, Sequence, Union

import numpy as np
from numpy.random import Philox

from .exact import DEFAULT_STATE_BUDGET, solve_exact
from .fptas import Epsilon, solve_fptas
from .model import Front, Instance, normalize

PathLike = Union[str, Path]

RECORDS_HEADER = (
    "family,seed,index,n,p_lo,p_hi,q_lo,q_hi,dp_front,dp_ms,"
    "eps,fptas_front,fptas_ms,ratio_c,ratio_l,ratio_c_exact,ratio_l_exact"
)

# Range steps used by both presets: the published protocol crosses
# processing-time and delivery-time ranges over these three intervals.
RANGE_STEPS: tuple[tuple[int, int], ...] = ((1, 20), (1, 100), (1, 1000))

PAPER_N_RANGES: tuple[tuple[int, int], ...] = (
    (5, 25),
    (26, 50),
    (51, 75),
    (76, 100),
    (100, 200),
)

DESK_N_RANGE: tuple[int, int] = (5, 25)
DESK_COUNT_PER_CELL = 12
PAPER_COUNT_PER_CELL = 15


@dataclass(frozen=True)
class GenSpec:
    """One instance family: ranges, seed, and how many to draw."""

    n_range: tuple[int, int]
    p_range: tuple[int, int]
    q_range: tuple[int, int]
    seed: int
    count: int

    def __post_init__(self) -> None:
        for name, (lo, hi) in (
            ("n", self.n_range),
            ("p", self.p_range),
            ("q", self.q_range),
        ):
            if lo < 1 or hi < lo:
                raise ValueError(f"invalid {name} range [{lo}, {hi}]")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must fit in 64 bits, got {self.seed}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")

    @property
    def family(self) -> str:
        return f"n{self.n_range[0]}-{self.n_range[1]}"


def generate_instance(spec: GenSpec, index: int) -> Instance:
    """Draw instance ``index`` of the family, reproducibly in isolation.

    The stream is Philox keyed by (seed, index): one word for n, then
    2n words consumed as interleaved (p, q) pairs, each value mapped
    into its range by modular reduction.
    """
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    stream = Philox(key=np.array([spec.seed, index], dtype=np.uint64))
    n_lo, n_hi = spec.n_range
    n = n_lo + int(stream.random_raw(1)[0]) % (n_hi - n_lo + 1)
    words = stream.random_raw(2 * n)
    p_lo, p_hi = spec.p_range
    q_lo, q_hi = spec.q_range
    p_span = p_hi - p_lo + 1
    q_span = q_hi - q_lo + 1
    raw = [
        (p_lo + int(words[2 * j]) % p_span, q_lo + int(words[2 * j + 1]) % q_span)
        for j in range(n)
    ]
    return normalize(raw)


def quality_metrics(exact: Front, approx: Front) -> tuple[Fraction, Fraction]:
    """Per-objective quality: best approximate over best exact, exactly.

    Returns (ratio_c, ratio_l) where ratio_c = min makespan of the
    approximate front / min makespan of the exact front, and ratio_l the
    same for maximum lateness.  Coverage makes both <= 1 + eps.
    """
    if len(exact) == 0 or len(approx) == 0:
        raise ValueError("quality_metrics requires nonempty fronts")
    return (
        Fraction(approx.min_cmax, exact.min_cmax),
        Fraction(approx.min_lmax, exact.min_lmax),
    )


@dataclass(frozen=True)
class EpsResult:
    """Trimming-solver outcome for one (instance, epsilon) pair."""

    eps: Fraction
    front_size: int
    ms: float
    ratio_c: Fraction
    ratio_l: Fraction


@dataclass(frozen=True)
class RunRecord:
    """Everything measured on one instance."""

    family: str
    seed: int
    index: int
    n: int
    p_range: tuple[int, int]
    q_range: tuple[int, int]
    dp_front_size: Optional[int] = None
    dp_ms: Optional[float] = None
    eps_results: tuple[EpsResult, ...] = field(default_factory=tuple)
    error: Optional[str] = None


def _timed(run: Callable[[], object], repeats: int) -> tuple[object, float]:
    times = []
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = run()
        times.append((time.perf_counter() - start) * 1000.0)
    return result, float(median(times))


def run_suite(
    families: Sequence[GenSpec],
    eps_list: Sequence[Epsilon],
    repeats: int = 3,
    *,
    budget: int = DEFAULT_STATE_BUDGET,
    progress: Optional[Callable[[int, int, RunRecord], None]] = None,
) -> list[RunRecord]:
    """Solve every family instance exactly and per epsilon, with timings.

    Instance indices run globally across the suite so no two instances
    share a Philox key.  A solver failure marks that instance's record
    with the error and the suite continues.
    """
    if repeats < 1:
        raise ValueError(f"repeats must be >= 1, got {repeats}")
    eps_list = [Fraction(e) for e in eps_list]
    total = sum(spec.count for spec in families)
    records: list[RunRecord] = []
    index = 0
    for spec in families:
        for _ in range(spec.count):
            inst = generate_instance(spec, index)
            base = dict(
                family=spec.family,
                seed=spec.seed,
                index=index,
                n=inst.n,
                p_range=spec.p_range,
                q_range=spec.q_range,
            )
            try:
                exact_result, dp_ms = _timed(
                    lambda: solve_exact(inst, budget=budget), repeats
                )
                eps_results = []
                for eps in eps_list:
                    approx_result, fptas_ms = _timed(
                        lambda: solve_fptas(inst, eps, budget=budget), repeats
                    )
                    ratio_c, ratio_l = quality_metrics(
                        exact_result.front, approx_result.front
                    )
                    eps_results.append(
                        EpsResult(
                            eps=eps,
                            front_size=len(approx_result.front),
                            ms=fptas_ms,
                            ratio_c=ratio_c,
                            ratio_l=ratio_l,
                        )
                    )
                record = RunRecord(
                    **base,
                    dp_front_size=len(exact_result.front),
                    dp_ms=dp_ms,
                    eps_results=tuple(eps_results),
                )
            except Exception as exc:
                record = RunRecord(**base, error=f"{type(exc).__name__}: {exc}")
            records.append(record)
            index += 1
            if progress is not None:
                progress(index, total, record)
    return records


def desk_families(seed: int) -> list[GenSpec]:
    """Seconds-scale preset: small job counts, full range cross."""
    return [
        GenSpec(DESK_N_RANGE, p, q, seed, DESK_COUNT_PER_CELL)
        for p in RANGE_STEPS
        for q in RANGE_STEPS
    ]


def paper_families(seed: int) -> list[GenSpec]:
    """Full protocol: five job-count sets, 3x3 range cross, 15 per cell."""
    return [
        GenSpec(n, p, q, seed, PAPER_COUNT_PER_CELL)
        for n in PAPER_N_RANGES
        for p in RANGE_STEPS
        for q in RANGE_STEPS
    ]


def format_fraction_decimal(value: Fraction, digits: int = 6) -> str:
    """Fixed-point decimal of a nonnegative rational, round half up."""
    if value < 0:
        raise ValueError("negative values not supported")
    scaled = value * 10**digits
    whole = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    text = str(whole).rjust(digits + 1, "0")
    return f"{text[:-digits]}.{text[-digits:]}"


def _record_rows(record: RunRecord) -> list[str]:
    prefix = (
        f"{record.family},{record.seed},{record.index},{record.n},"
        f"{record.p_range[0]},{record.p_range[1]},"
        f"{record.q_range[0]},{record.q_range[1]}"
    )
    if record.error is not None or record.dp_front_size is None:
        return [f"{prefix},,,,,,,,,"]
    dp = f"{record.dp_front_size},{record.dp_ms:.3f}"
    rows = []
    for res in record.eps_results:
        rows.append(
            f"{prefix},{dp},{res.eps},{res.front_size},{res.ms:.3f},"
            f"{format_fraction_decimal(res.ratio_c)},"
            f"{format_fraction_decimal(res.ratio_l)},"
            f"{res.ratio_c.numerator}/{res.ratio_c.denominator},"
            f"{res.ratio_l.numerator}/{res.ratio_l.denominator}"
        )
    return rows


def format_records_csv(records: Sequence[RunRecord]) -> str:
    rows = [RECORDS_HEADER]
    for record in records:
        rows.extend(_record_rows(record))
    return "\n".join(rows) + "\n"


@dataclass
class _Cell:
    instances: int = 0
    dp_front: int = 0
    dp_ms: float = 0.0
    fptas_front: int = 0
    fptas_ms: float = 0.0
    ratio_c: Fraction = Fraction(0)
    ratio_l: Fraction = Fraction(0)


_AGG_COLUMNS = (
    "eps,instances,dp_front_mean,dp_ms_mean,fptas_front_mean,fptas_ms_mean,"
    "ratio_c_mean,ratio_l_mean,ratio_c_mean_exact,ratio_l_mean_exact"
)


def _aggregate_csv(records: Sequence[RunRecord], key_name: str, key_of) -> str:
    cells: dict[tuple[str, Fraction], _Cell] = {}
    order: list[tuple[str, Fraction]] = []
    for record in records:
        if record.error is not None or record.dp_front_size is None:
            continue
        for res in record.eps_results:
            key = (key_of(record), res.eps)
            cell = cells.get(key)
            if cell is None:
                cell = cells[key] = _Cell()
                order.append(key)
            cell.instances += 1
            cell.dp_front += record.dp_front_size
            cell.dp_ms += record.dp_ms
            cell.fptas_front += res.front_size
            cell.fptas_ms += res.ms
            cell.ratio_c += res.ratio_c
            cell.ratio_l += res.ratio_l
    rows = [f"{key_name},{_AGG_COLUMNS}"]
    for key in order:
        label, eps = key
        cell = cells[key]
        k = cell.instances
        mean_c = cell.ratio_c / k
        mean_l = cell.ratio_l / k
        rows.append(
            f"{label},{eps},{k},"
            f"{format_fraction_decimal(Fraction(cell.dp_front, k))},"
            f"{cell.dp_ms / k:.3f},"
            f"{format_fraction_decimal(Fraction(cell.fptas_front, k))},"
            f"{cell.fptas_ms / k:.3f},"
            f"{format_fraction_decimal(mean_c)},{format_fraction_decimal(mean_l)},"
            f"{mean_c.numerator}/{mean_c.denominator},"
            f"{mean_l.numerator}/{mean_l.denominator}"
        )
    return "\n".join(rows) + "\n"


def format_family_table(records: Sequence[RunRecord]) -> str:
    """Aggregate by job-count family: the computing-time table shape."""
    return _aggregate_csv(records, "family", lambda r: r.family)


def format_p_range_table(records: Sequence[RunRecord]) -> str:
    """Aggregate by processing-time range: the p-range quality table."""
    return _aggregate_csv(records, "p_range", lambda r: f"{r.p_range[0]}-{r.p_range[1]}")


def format_q_range_table(records: Sequence[RunRecord]) -> str:
    """Aggregate by delivery-time range: the q-range quality table."""
    return _aggregate_csv(records, "q_range", lambda r: f"{r.q_range[0]}-{r.q_range[1]}")


def write_report(records: Sequence[RunRecord], out_dir: PathLike) -> list[Path]:
    """Write records.csv and the three aggregate tables; returns paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = {
        "records.csv": format_records_csv(records),
        "by_family.csv": format_family_table(records),
        "by_p_range.csv": format_p_range_table(records),
        "by_q_range.csv": format_q_range_table(records),
    }
    paths = []
    for name, text in files.items():
        path = out / name
        path.write_text(text)
        paths.append(path)
    return paths
