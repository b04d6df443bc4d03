"""Lattice sweeps over (q, gamma) with CSV output."""

import csv
import logging
import sys
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import astuple, dataclass, fields
from typing import TextIO

import numpy as np
from tqdm import tqdm

from .classifier import Outcome, ProblemInstance, classify
from .config import DEFAULT_CONFIG, ToolkitConfig
from .errors import InvalidInputError
from .profiles import residual_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SweepRow:
    """One lattice point of a sweep.

    Attributes:
        q: Zero-order exponent
        gamma: Gradient exponent
        beta: Effective dimension of M+
        verdict: holds, fails, conjectured or open
        theorem_ref: Key of the deciding result
        witness_delta: Decay rate of the witness (fails only)
        witness_amplitude: Amplitude of the witness (fails only)
        residual_min: Re-verified residual minimum (fails rows with verification)
    """

    q: float
    gamma: float
    beta: float
    verdict: str
    theorem_ref: str
    witness_delta: float | None = None
    witness_amplitude: float | None = None
    residual_min: float | None = None

    @classmethod
    def header(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_csv_row(self) -> list[str]:
        return [_format_cell(value) for value in astuple(self)]


def _format_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def parse_range(text: str) -> np.ndarray:
    """Parse "a:b:n" into n equally spaced values from a to b inclusive.

    Raises:
        InvalidInputError: On malformed text, n < 1 or non-finite bounds
    """
    parts = text.split(":")
    if len(parts) != 3:
        raise InvalidInputError(f"range must look like a:b:n, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as e:
        raise InvalidInputError(f"range must look like a:b:n, got {text!r}") from e
    if count < 1:
        raise InvalidInputError(f"range {text!r} is empty")
    if not (np.isfinite(start) and np.isfinite(stop)):
        raise InvalidInputError(f"range bounds must be finite, got {text!r}")
    return np.linspace(start, stop, count)


def _classify_point(instance: ProblemInstance, q: float, gamma: float, verify_witnesses: bool) -> SweepRow:
    verdict = classify(instance)
    row = SweepRow(q, gamma, instance.beta, verdict.outcome.value, verdict.theorem_ref.value)
    witness = verdict.witness
    if verdict.outcome is not Outcome.FAILS or witness is None:
        return row
    residual_min = None
    if verify_witnesses:
        # against the instance's own right-hand side, on the witness grid
        report = residual_grid(
            witness.profile, instance.ham, instance.ellipticity, instance.N, "plus", witness.residual.radii
        )
        residual_min = report.min
    return SweepRow(
        q,
        gamma,
        instance.beta,
        verdict.outcome.value,
        verdict.theorem_ref.value,
        witness.chosen_delta,
        witness.chosen_amplitude,
        residual_min,
    )


def run_sweep(
    make_instance: Callable[[float, float], ProblemInstance],
    q_values: Iterable[float],
    gamma_values: Iterable[float],
    *,
    verify_witnesses: bool = False,
    config: ToolkitConfig | None = None,
) -> list[SweepRow]:
    """Classify every (q, gamma) pair, q-major.

    Points are classified on config.sweep_workers threads; the returned rows
    are always in lattice order.

    Args:
        make_instance: Builds the problem for one lattice point
        q_values: q axis
        gamma_values: gamma axis
        verify_witnesses: Re-evaluate each fails witness against its instance
        config: Worker count and progress display
    """
    config = config or DEFAULT_CONFIG
    gammas = [float(g) for g in gamma_values]
    points = [(float(q), g) for q in q_values for g in gammas]
    if not points:
        raise InvalidInputError("sweep lattice is empty")
    instances = [make_instance(q, g) for q, g in points]
    logger.info(f"[Sweep] {len(points)} points on {config.sweep_workers} worker(s)")

    rows: list[SweepRow | None] = [None] * len(points)
    with (
        ThreadPoolExecutor(max_workers=config.sweep_workers) as executor,
        tqdm(total=len(points), desc="Sweep", unit="points", file=sys.stderr, disable=not config.show_progress) as pbar,
    ):
        future_to_index = {
            executor.submit(_classify_point, inst, q, g, verify_witnesses): i
            for i, (inst, (q, g)) in enumerate(zip(instances, points, strict=True))
        }
        for future in as_completed(future_to_index):
            rows[future_to_index[future]] = future.result()
            pbar.update(1)

    fails = sum(1 for row in rows if row is not None and row.verdict == Outcome.FAILS.value)
    logger.info(f"[Sweep] done: {fails} fails rows")
    return [row for row in rows if row is not None]


def write_csv(rows: Iterable[SweepRow], stream: TextIO) -> None:
    """Header plus one line per row; '.' decimals, ',' separators, '\\n' line endings."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(SweepRow.header())
    for row in rows:
        writer.writerow(row.as_csv_row())
