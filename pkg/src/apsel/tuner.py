"""Derivative-free tuning of the selection parameters (d, k).

A plain Nelder-Mead simplex runs in continuous 2-space; every candidate
point is clamped to the configured box and rounded to the nearest
integers before the objective (mean aggregation rate of the centrality
selector over sampled snapshots) is evaluated. Evaluations are memoized
per integer pair, and the reported optimum is the best pair the search
ever touched, so the integer grid, not the simplex geometry, has the
last word.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace

import numpy as np

from .metrics import aggregation_rate
from .mobility import RadioParams, Trace, build_udg, snapshot_at
from .selection import centrality_select

__all__ = [
    "NelderMeadResult",
    "TuneResult",
    "TunerConfig",
    "nelder_mead",
    "tune_integer_objective",
    "tune_parameters",
    "write_tuning_trajectory_csv",
]

TRAJECTORY_HEADER = ["iteration", "d", "k", "objective"]


@dataclass(frozen=True)
class TunerConfig:
    """Simplex coefficients and the integer search box.

    Defaults follow the usual Nelder-Mead choices: reflection 1,
    expansion 2, contraction 0.5, shrink 0.5, at most 500 iterations.
    d is capped at 10 hops; k's ceiling is in principle the network
    diameter, 10 covers every trace this package generates.
    """

    max_iterations: int = 500
    d_bounds: tuple[int, int] = (1, 10)
    k_bounds: tuple[int, int] = (1, 10)
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    tolerance: float = 1e-10

    def __post_init__(self):
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
        for name, (lo, hi) in (("d_bounds", self.d_bounds), ("k_bounds", self.k_bounds)):
            if lo < 1 or hi < lo:
                raise ValueError(f"{name} must satisfy 1 <= lo <= hi, got ({lo}, {hi})")
        if self.reflection <= 0 or self.expansion <= 1 or not 0 < self.contraction < 1:
            raise ValueError("coefficients must satisfy reflection>0, expansion>1, 0<contraction<1")
        if not 0 < self.shrink < 1:
            raise ValueError(f"shrink must be in (0, 1), got {self.shrink}")
        if self.tolerance < 0:
            raise ValueError(f"tolerance must be >= 0, got {self.tolerance}")


@dataclass(frozen=True)
class NelderMeadResult:
    point: tuple[float, ...]
    value: float
    iterations: int
    evaluations: int
    converged: bool
    trajectory: tuple[tuple[int, tuple[float, ...], float], ...] = field(repr=False)


def _clamp(x, bounds):
    if bounds is None:
        return tuple(float(v) for v in x)
    return tuple(float(min(max(v, lo), hi)) for v, (lo, hi) in zip(x, bounds))


def nelder_mead(objective, initial_simplex, config: TunerConfig = TunerConfig(), bounds=None) -> NelderMeadResult:
    """Minimize `objective` from the given (p+1)-point simplex.

    Candidate points (including the initial vertices) are clamped into
    `bounds` before evaluation, so the objective is never probed
    outside the box. Stops when the objective spread across the simplex
    stays below config.tolerance for two consecutive simplex states (a
    flat initial simplex stops at once) or max_iterations is reached.
    The persistence requirement matters: a large simplex can land all
    its vertices on one contour of the objective for a single step, and
    stopping there would freeze the search far from any optimum. The
    trajectory records the incumbent best after every iteration, row 0
    being the initial best.
    """
    simplex = [_clamp(tuple(float(v) for v in x), bounds) for x in initial_simplex]
    p = len(simplex[0])
    if len(simplex) != p + 1 or any(len(x) != p for x in simplex):
        raise ValueError(f"need {p + 1} points of dimension {p}")
    base = np.array(simplex[0])
    spread_matrix = np.array([np.array(x) - base for x in simplex[1:]])
    if np.linalg.matrix_rank(spread_matrix) < p:
        raise ValueError("degenerate initial simplex")

    evaluations = 0

    def f(x):
        nonlocal evaluations
        evaluations += 1
        return objective(x)

    pts = [(f(x), x) for x in simplex]
    pts.sort()
    trajectory = [(0, pts[0][1], pts[0][0])]

    iteration = 0
    prev_below = pts[-1][0] - pts[0][0] < config.tolerance
    converged = prev_below
    while not converged and iteration < config.max_iterations:
        iteration += 1
        best_v, _ = pts[0]
        worst_v, worst_x = pts[-1]
        second_worst_v = pts[-2][0]
        centroid = np.mean([np.array(x) for _, x in pts[:-1]], axis=0)

        reflected = _clamp(centroid + config.reflection * (centroid - np.array(worst_x)), bounds)
        fr = f(reflected)
        if best_v <= fr < second_worst_v:
            pts[-1] = (fr, reflected)
        elif fr < best_v:
            expanded = _clamp(centroid + config.expansion * (centroid - np.array(worst_x)), bounds)
            fe = f(expanded)
            pts[-1] = (fe, expanded) if fe < fr else (fr, reflected)
        else:
            if fr < worst_v:  # outside contraction
                contracted = _clamp(centroid + config.contraction * (np.array(reflected) - centroid), bounds)
                fc = f(contracted)
                accept = fc <= fr
            else:  # inside contraction
                contracted = _clamp(centroid - config.contraction * (centroid - np.array(worst_x)), bounds)
                fc = f(contracted)
                accept = fc < worst_v
            if accept:
                pts[-1] = (fc, contracted)
            else:
                best_x = np.array(pts[0][1])
                shrunk = [pts[0]]
                for _, x in pts[1:]:
                    nx = _clamp(best_x + config.shrink * (np.array(x) - best_x), bounds)
                    shrunk.append((f(nx), nx))
                pts = shrunk
        pts.sort()
        trajectory.append((iteration, pts[0][1], pts[0][0]))
        below = pts[-1][0] - pts[0][0] < config.tolerance
        converged = below and prev_below
        prev_below = below

    return NelderMeadResult(
        point=pts[0][1],
        value=pts[0][0],
        iterations=iteration,
        evaluations=evaluations,
        converged=converged,
        trajectory=tuple(trajectory),
    )


def _round_to_grid(x: float, lo: int, hi: int) -> int:
    # round-half-up keeps the mapping monotone; banker's rounding does not
    v = int(np.floor(x + 0.5))
    return min(max(v, lo), hi)


@dataclass(frozen=True)
class TuneResult:
    d: int
    k: int
    value: float
    n_evaluations: int
    trajectory: tuple[tuple[int, int, int, float], ...] = field(repr=False)


def _unit_simplex(base: tuple[float, float], d_hi: int, k_hi: int):
    # step inward when a unit step would leave the box
    dx = 1.0 if base[0] + 1 <= d_hi else -1.0
    dy = 1.0 if base[1] + 1 <= k_hi else -1.0
    return [base, (base[0] + dx, base[1]), (base[0], base[1] + dy)]


def tune_integer_objective(objective, config: TunerConfig = TunerConfig()) -> TuneResult:
    """Maximize an integer objective f(d, k) over the configured box.

    The simplex explores continuous space; each vertex is rounded and
    clamped onto the integer grid, and f is evaluated at most once per
    grid pair. Because rounding makes the surrogate piecewise constant,
    a shrunken simplex can flatline one cell away from the optimum; the
    search therefore restarts with a fresh unit simplex at the incumbent
    best pair until a restart brings no improvement, all within the one
    max_iterations budget. Returns the best pair among everything
    evaluated (lowest d, then lowest k on ties). Trajectory rows mirror
    the simplex's incumbent best per iteration as
    (iteration, d, k, objective).
    """
    (d_lo, d_hi), (k_lo, k_hi) = config.d_bounds, config.k_bounds
    memo: dict[tuple[int, int], float] = {}

    def surrogate(x):
        pair = (_round_to_grid(x[0], d_lo, d_hi), _round_to_grid(x[1], k_lo, k_hi))
        if pair not in memo:
            memo[pair] = objective(*pair)
        return -memo[pair]

    def incumbent():
        return max(memo, key=lambda pr: (memo[pr], -pr[0], -pr[1]))

    if d_lo == d_hi or k_lo == k_hi:
        # box too thin for a non-degenerate 2-simplex; scan it outright
        trajectory = []
        for d in range(d_lo, d_hi + 1):
            for k in range(k_lo, k_hi + 1):
                memo[(d, k)] = objective(d, k)
                b = incumbent()
                trajectory.append((len(trajectory), b[0], b[1], memo[b]))
        best_pair = incumbent()
        return TuneResult(
            d=best_pair[0],
            k=best_pair[1],
            value=memo[best_pair],
            n_evaluations=len(memo),
            trajectory=tuple(trajectory),
        )

    bounds = [(float(d_lo), float(d_hi)), (float(k_lo), float(k_hi))]
    base = (float(min(max(1, d_lo), d_hi)), float(min(max(4, k_lo), k_hi)))
    trajectory: list[tuple[int, int, int, float]] = []
    iterations_used = 0
    best_pair = None
    while iterations_used < config.max_iterations:
        budget = replace(config, max_iterations=config.max_iterations - iterations_used)
        res = nelder_mead(surrogate, _unit_simplex(base, d_hi, k_hi), budget, bounds=bounds)
        for it, x, v in res.trajectory:
            if it == 0 and trajectory:
                continue  # restart's initial row duplicates the incumbent
            trajectory.append(
                (
                    len(trajectory),
                    _round_to_grid(x[0], d_lo, d_hi),
                    _round_to_grid(x[1], k_lo, k_hi),
                    -v,
                )
            )
        iterations_used += max(res.iterations, 1)
        now_best = incumbent()
        if now_best == best_pair:
            break
        best_pair = now_best
        base = (float(best_pair[0]), float(best_pair[1]))

    best_pair = incumbent()
    return TuneResult(
        d=best_pair[0],
        k=best_pair[1],
        value=memo[best_pair],
        n_evaluations=len(memo),
        trajectory=tuple(trajectory),
    )


def tune_parameters(
    trace: Trace,
    sample_times=None,
    config: TunerConfig = TunerConfig(),
    radio: RadioParams = RadioParams(),
) -> TuneResult:
    """Tune (d, k) to maximize mean aggregation rate over a trace.

    sample_times picks the delivery-period boundaries to score (every
    sampled instant when omitted). Each is turned into an unconstrained
    unit-disk graph; instants without vehicles contribute nothing.
    Deterministic for a fixed trace and config.
    """
    times = trace.times if sample_times is None else tuple(sample_times)
    usable = []
    for t in times:
        snap = snapshot_at(trace, t)
        if snap:
            usable.append(build_udg(snap, radio))
    if not usable:
        raise ValueError("no non-empty snapshots to tune on")

    def mean_rate(d: int, k: int) -> float:
        total = 0.0
        for g in usable:
            n_aps = len(centrality_select(g, d, k).aggregation_points)
            total += aggregation_rate(n_aps, g.n_vertices)
        return total / len(usable)

    return tune_integer_objective(mean_rate, config)


def write_tuning_trajectory_csv(result: TuneResult, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRAJECTORY_HEADER)
        for it, d, k, obj in result.trajectory:
            writer.writerow([it, d, k, repr(obj)])
