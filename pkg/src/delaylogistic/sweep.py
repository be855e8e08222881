"""Deterministic parameter-plane sweeps.

A GridSpec partitions a rectangle of the complex plane for either alpha or
beta into re_steps x im_steps cells; classify_parameter_point runs at every
cell center.  Each cell's random seeds derive from (rng_seed, cell_index,
seed_index), so the result is byte-identical regardless of worker count or
scheduling; cells are reduced in row-major order (re index outer, im index
inner).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .cycles import (
    ClassifyBudgets,
    V_INCONCLUSIVE,
    classify_parameter_point,
)
from .mapcore import MapParameters

MAX_CELLS = 100_000

TARGET_ALPHA = "alpha"
TARGET_BETA = "beta"


@dataclass(frozen=True)
class GridSpec:
    re_min: float
    re_max: float
    re_steps: int
    im_min: float
    im_max: float
    im_steps: int
    fixed_other: complex
    target: str = TARGET_ALPHA
    max_cells: int = MAX_CELLS

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValueError("grid bounds must satisfy re_min < re_max, im_min < im_max")
        if self.re_steps < 1 or self.im_steps < 1:
            raise ValueError("grid steps must be positive")
        if self.re_steps * self.im_steps > self.max_cells:
            raise ValueError(f"grid has {self.re_steps * self.im_steps} cells, budget is {self.max_cells}")
        if self.target not in (TARGET_ALPHA, TARGET_BETA):
            raise ValueError(f"target must be '{TARGET_ALPHA}' or '{TARGET_BETA}'")

    def cell_center(self, index: int) -> complex:
        i, j = divmod(index, self.im_steps)
        re = self.re_min + (i + 0.5) * (self.re_max - self.re_min) / self.re_steps
        im = self.im_min + (j + 0.5) * (self.im_max - self.im_min) / self.im_steps
        return complex(re, im)

    @property
    def n_cells(self) -> int:
        return self.re_steps * self.im_steps

    def params_at(self, index: int) -> MapParameters:
        center = self.cell_center(index)
        if self.target == TARGET_ALPHA:
            return MapParameters(center, self.fixed_other)
        return MapParameters(self.fixed_other, center)


@dataclass
class CellResult:
    center: complex
    verdict: str
    period: int | None
    lambda_max: float | None
    agree_fraction: float


@dataclass
class SweepResult:
    grid: GridSpec
    n_seeds: int
    rng_seed: int
    cells: list[CellResult] = field(default_factory=list)


def _run_cell(args) -> CellResult:
    grid, index, n_seeds, rng_seed, budgets = args
    center = grid.cell_center(index)
    try:
        res = classify_parameter_point(
            grid.params_at(index),
            n_seeds=n_seeds,
            rng_seed=rng_seed,
            budgets=budgets,
            stream=(index,),
        )
        return CellResult(center, res.verdict, res.period, res.lambda_max, res.agree_fraction)
    except Exception:
        # a cell never aborts the sweep
        return CellResult(center, V_INCONCLUSIVE, None, None, 0.0)


def run_sweep(
    grid: GridSpec,
    n_seeds: int,
    budgets: ClassifyBudgets,
    rng_seed: int,
    worker_count: int = 1,
) -> SweepResult:
    """Classify every cell of the grid; deterministic in worker_count."""
    jobs = [(grid, index, n_seeds, rng_seed, budgets) for index in range(grid.n_cells)]
    if worker_count <= 1:
        cells = [_run_cell(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=worker_count) as pool:
            cells = list(pool.map(_run_cell, jobs, chunksize=max(1, len(jobs) // (4 * worker_count))))
    return SweepResult(grid=grid, n_seeds=n_seeds, rng_seed=rng_seed, cells=cells)
