# -*- coding: utf-8 -*-
"""Randomized quasi-Monte Carlo integration over RegionSpec domains.

Estimates carry an empirical standard error from independent scrambles: the
budget is split into replicates, each replicate draws its own randomized
Sobol stream, and the spread of the replicate means gives the error bar.
Identical (seed, budget, mode) reproduce results bit for bit; replicates are
accumulated in index order no matter how they are scheduled.

Two sampling routes share the estimator:

* box sampling -- uniform over the RegionSpec's bounding box with the
  membership mask as indicator: value = box_volume * mean(f * indicator).
* chart sampling -- when the spec carries a sampling chart, each unit-cube
  point is pushed through the chain of bracket intervals, coordinate i being
  distributed with density proportional to t^-w_i on its conditional
  interval.  The estimator multiplies f by the inverse sampling density, so
  the value is the same integral; the 1/t^w factors of the loss integrands
  cancel pointwise and the bracket chain is sampled with no rejection.  The
  deep 5-8 dimensional chains are invisible to plain box sampling at any
  affordable budget, which is why the charts exist.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from scipy.stats import qmc

from .params import SieveParams
from .regions import DOMAIN_NAMES, RegionSpec, domain

MIN_BUDGET = 10_000
MIN_REPLICATES = 16
STRATA_PER_AXIS = 16
_CHUNK = 1 << 18

# Per-domain defaults, sized so the default `verify` run meets the documented
# error targets (combined std_err <= 1e-4 on the A family, <= 2e-4 on B,
# <= 5e-4 on C) in a few minutes of CPU time.
DEFAULT_BUDGETS: dict[str, int] = {
    "SA51": 32_000_000,
    "SA52": 32_000_000,
    "SA53": 2_000_000,
    "SA54": 2_000_000,
    "SB51": 32_000_000,
    "SB52": 16_000_000,
    "SB53": 2_000_000,
    "SC": 8_000_000,
    "SC2": 4_000_000,
    "SC4": 1_000_000,
}


class BudgetTooSmall(ValueError):
    pass


class NonFiniteSample(ArithmeticError):
    """The integrand returned a non-finite value inside the domain; carries
    the offending point (this signals a domain-transcription bug)."""

    def __init__(self, name: str, point: tuple[float, ...], value: float):
        self.point = point
        super().__init__(f"non-finite integrand value {value!r} in {name} at {point}")


@dataclass(frozen=True)
class IntegralEstimate:
    value: float
    std_err: float
    samples: int
    mode: str
    seed: int


def worker_count(requested: int | None = None) -> int:
    """Effective worker count: explicit argument, else SIEVEBOUND_THREADS, else cpu count."""
    if requested is not None:
        return max(1, requested)
    env = os.getenv("SIEVEBOUND_THREADS")
    if env:
        return max(1, int(env))
    return max(1, os.cpu_count() or 1)


def _sobol(dim: int, seed: int, key: tuple[int, ...]) -> qmc.Sobol:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=key)
    return qmc.Sobol(d=dim, scramble=True, seed=np.random.default_rng(ss))


def _draw(engine: qmc.Sobol, n: int) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")  # n is rarely a power of two
        return engine.random(n)


def _strata_cells(dim: int):
    k = STRATA_PER_AXIS
    if dim == 1:
        return [(i, 0) for i in range(k)]
    return [(i, j) for i in range(k) for j in range(k)]


def _apply_chart(spec: RegionSpec, u: np.ndarray):
    """Map unit-cube points through the chart; returns (columns, weight)."""
    n = u.shape[0]
    cols: list[np.ndarray] = []
    weight = np.ones(n)
    for i, coord in enumerate(spec.chart):
        a = np.broadcast_to(np.asarray(coord.lower(cols), dtype=float), (n,))
        b = np.broadcast_to(np.asarray(coord.upper(cols), dtype=float), (n,))
        empty = b <= a
        b_eff = np.where(empty, a * (1.0 + 1e-9), b)
        ui = u[:, i]
        if coord.weight == 0:
            z = b_eff - a
            t = a + ui * z
        elif coord.weight == 1:
            z = np.log(b_eff / a)
            t = a * np.exp(ui * z)
        elif coord.weight == 2:
            z = 1.0 / a - 1.0 / b_eff
            t = 1.0 / (1.0 / a - ui * z)
        else:  # pragma: no cover - charts only use weights 0..2
            raise ValueError(f"unsupported chart weight {coord.weight}")
        # inverse density: z * t^w per coordinate; zero on empty intervals
        factor = np.where(empty, 0.0, z * t ** coord.weight)
        weight = weight * factor
        cols.append(np.where(empty, a, t))
    return cols, weight


def _replicate_mean(
    spec: RegionSpec,
    f: Callable[[np.ndarray], np.ndarray],
    m: int,
    seed: int,
    key: tuple[int, ...],
    mode: str,
    use_chart: bool,
) -> float:
    """Mean estimate of the integral from one randomized stream of m points."""
    engine = _sobol(spec.dim, seed, key)
    box_lo = np.array([b[0] for b in spec.bounds])
    box_hi = np.array([b[1] for b in spec.bounds])
    volume = float(np.prod(box_hi - box_lo))

    if mode == "stratified":
        cells = _strata_cells(spec.dim)
        per = m // len(cells)
        total = 0.0
        used = 0
        for cell in cells:
            u = _draw(engine, per)
            u = u.copy()
            u[:, 0] = (cell[0] + u[:, 0]) / STRATA_PER_AXIS
            if spec.dim > 1:
                u[:, 1] = (cell[1] + u[:, 1]) / STRATA_PER_AXIS
            total += _block_sum(spec, f, u, box_lo, box_hi, volume, use_chart)
            used += per
        return total / used if used else 0.0

    total = 0.0
    left = m
    while left > 0:
        n = min(_CHUNK, left)
        left -= n
        u = _draw(engine, n)
        total += _block_sum(spec, f, u, box_lo, box_hi, volume, use_chart)
    return total / m


def _block_sum(spec, f, u, box_lo, box_hi, volume, use_chart) -> float:
    if use_chart:
        cols, weight = _apply_chart(spec, u)
        alive = weight > 0.0
        pts = np.column_stack(cols)
    else:
        pts = box_lo + u * (box_hi - box_lo)
        weight = np.full(u.shape[0], volume)
        alive = np.ones(u.shape[0], dtype=bool)
    alive &= spec.mask(pts)
    if not alive.any():
        return 0.0
    vals = f(pts[alive])
    if not np.all(np.isfinite(vals)):
        bad = int(np.flatnonzero(~np.isfinite(vals))[0])
        point = tuple(float(x) for x in pts[alive][bad])
        raise NonFiniteSample(spec.name, point, float(vals[bad]))
    return float(np.sum(weight[alive] * vals))


def integrate(
    spec: RegionSpec,
    f: Callable[[np.ndarray], np.ndarray],
    budget: int,
    seed: int = 0,
    mode: str = "plain_qmc",
    replicates: int = MIN_REPLICATES,
    workers: int | None = None,
    domain_index: int = 0,
    use_chart: bool | None = None,
) -> IntegralEstimate:
    """Integrate f over the domain with an empirical error bar.

    f maps an (N, dim) array of accepted points to N values.  budget is the
    total evaluation count, split across `replicates` independently
    randomized streams; std_err is the standard error of the replicate
    means.  Charts are used when the spec provides one unless overridden.
    """
    if budget < MIN_BUDGET:
        raise BudgetTooSmall(f"budget {budget} < {MIN_BUDGET}")
    if mode not in ("plain_qmc", "stratified"):
        raise ValueError(f"unknown mode {mode!r}")
    if replicates < 2:
        raise ValueError("need at least 2 replicates for an error bar")
    chart = bool(spec.chart) if use_chart is None else (use_chart and bool(spec.chart))
    m = budget // replicates
    if mode == "stratified":
        m = max(m, len(_strata_cells(spec.dim)))

    def job(r: int) -> float:
        return _replicate_mean(spec, f, m, seed, (domain_index, r), mode, chart)

    n_workers = min(worker_count(workers), replicates)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            means = list(pool.map(job, range(replicates)))
    else:
        means = [job(r) for r in range(replicates)]
    arr = np.asarray(means)
    value = float(arr.mean())
    std_err = float(arr.std(ddof=1) / np.sqrt(replicates))
    if mode == "stratified":
        per = m // len(_strata_cells(spec.dim))
        m = per * len(_strata_cells(spec.dim))
    return IntegralEstimate(
        value=value, std_err=std_err, samples=m * replicates, mode=mode, seed=seed
    )


def integrate_all(
    p: SieveParams,
    budgets: Mapping[str, int] | None = None,
    seed: int = 0,
    mode: str = "plain_qmc",
    workers: int | None = None,
    sa54_strict_descent: bool = False,
    table=None,
) -> dict[str, IntegralEstimate]:
    """Evaluate all ten loss integrands over their domains.

    Per-domain seeds are derived from (seed, domain index), so the map is a
    pure function of (params, budgets, seed, mode).
    """
    from . import losses  # deferred: losses imports this module

    budget_map = dict(DEFAULT_BUDGETS)
    if budgets:
        unknown = set(budgets) - set(DOMAIN_NAMES)
        if unknown:
            raise UnknownBudgetName(sorted(unknown))
        budget_map.update({k: int(v) for k, v in budgets.items()})
    if table is None:
        table = losses.table_for(p)
    out: dict[str, IntegralEstimate] = {}
    for idx, name in enumerate(DOMAIN_NAMES):
        spec = domain(p, name, sa54_strict_descent=sa54_strict_descent)
        f = losses.integrand(name, p, table)
        out[name] = integrate(
            spec,
            f,
            budget=budget_map[name],
            seed=seed,
            mode=mode,
            workers=workers,
            domain_index=idx,
        )
    return out


class UnknownBudgetName(ValueError):
    def __init__(self, names):
        super().__init__(f"unknown domain names in budget map: {names}")
