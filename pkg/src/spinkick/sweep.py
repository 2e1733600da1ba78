"""Exhaustive grids over the times of two kicks."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .ising import ChainConfig
from .protocol import DEFAULT_KICK_ANGLE, PulseEvent, PulseSchedule, run_schedule


@dataclass(frozen=True)
class SweepGrid:
    """Uniform ``(t1, t2)`` grid; ranges are ``(min, max, count)``, both ends included."""

    t1_range: tuple[float, float, int] = (0.1, 5.0, 50)
    t2_range: tuple[float, float, int] = (5.1, 9.0, 40)
    eval_time: float = 3 * np.pi
    n_spins: int = 4
    angle_magnitude: float = DEFAULT_KICK_ANGLE
    signs: tuple[int, int] = (1, -1)

    def __post_init__(self):
        for name in ("t1_range", "t2_range"):
            lo, hi, n = getattr(self, name)
            if not (np.isfinite(lo) and np.isfinite(hi)) or hi < lo:
                raise ValueError(f"{name} must be a finite range with min <= max, got {(lo, hi)}")
            if int(n) != n or n < 1:
                raise ValueError(f"{name} count must be a positive integer, got {n!r}")
            object.__setattr__(self, name, (float(lo), float(hi), int(n)))
        if self.n_spins < 2:
            raise ValueError("sweep needs at least two spins")
        if self.eval_time < self.t2_range[1]:
            raise ValueError(
                f"eval_time {self.eval_time} is earlier than the largest t2 {self.t2_range[1]}"
            )

    @property
    def t1_values(self) -> np.ndarray:
        return np.linspace(*self.t1_range)

    @property
    def t2_values(self) -> np.ndarray:
        return np.linspace(*self.t2_range)


@dataclass(frozen=True, eq=False)
class SweepResult:
    """``values[i, k]`` is ``C_1N(eval_time)`` for kicks at ``t1[i]``, ``t2[k]``.

    Cells with ``t2 <= t1`` hold NaN.
    """

    grid: SweepGrid
    values: np.ndarray = field(repr=False)
    argmax: tuple[float, float, float] | None = None


def cell_value(grid: SweepGrid, t1: float, t2: float) -> float:
    """End-pair concurrence for a single ``(t1, t2)`` cell; NaN if ``t2 <= t1``."""
    if not t2 > t1:
        return float("nan")
    n = grid.n_spins
    targets = tuple(range(1, n))
    schedule = PulseSchedule((
        PulseEvent(t1, targets, grid.signs[0], grid.angle_magnitude),
        PulseEvent(t2, targets, grid.signs[1], grid.angle_magnitude),
    ))
    (rec,) = run_schedule(ChainConfig(n), schedule, [grid.eval_time], observables={"concurrence"})
    return rec.pair_concurrences[(1, n)]


def sweep_two_kicks(grid: SweepGrid, max_workers: int | None = None) -> SweepResult:
    """Evaluate every cell of ``grid``.

    Cells are independent; with ``max_workers > 1`` they run on a thread pool
    and are assembled by index, so the result does not depend on scheduling.
    """
    t1s, t2s = grid.t1_values, grid.t2_values
    cells = [(i, k) for i in range(len(t1s)) for k in range(len(t2s))]

    def work(ik):
        i, k = ik
        return cell_value(grid, t1s[i], t2s[k])

    if max_workers is None or max_workers <= 1:
        flat = [work(ik) for ik in cells]
    else:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            flat = list(pool.map(work, cells))
    values = np.array(flat, dtype=float).reshape(len(t1s), len(t2s))
    values.flags.writeable = False
    result = SweepResult(grid, values)
    if np.any(~np.isnan(values)):
        result = SweepResult(grid, values, find_argmax(result))
    return result


def find_argmax(result: SweepResult) -> tuple[float, float, float]:
    """``(t1, t2, C)`` of the maximum; ties go to the first cell in row-major order."""
    values = result.values
    if values.size == 0 or np.all(np.isnan(values)):
        raise ValueError("sweep has no evaluated cells")
    flat = np.where(np.isnan(values), -np.inf, values).reshape(-1)
    i, k = np.unravel_index(int(np.argmax(flat)), values.shape)
    return float(result.grid.t1_values[i]), float(result.grid.t2_values[k]), float(values[i, k])
