"""Vehicle traces and how snapshots of them become communication graphs.

A trace is a time-ordered list of (time, vehicle, x, y) samples. At any
sampled instant the vehicles' positions induce a unit-disk graph: two
vehicles are linked iff their Euclidean distance is at most the radio
range (boundary inclusive). The direction-constrained variant
additionally drops links between vehicles heading more than 45 degrees
apart, judged from their displacement over the previous sampling step;
a vehicle with no previous sample or zero displacement is
direction-neutral and keeps all its links.
"""

from __future__ import annotations

import csv
import math
import random
from dataclasses import dataclass, field

import numpy as np

from .graph import SnapshotGraph

__all__ = [
    "DisplacementVector",
    "RadioParams",
    "Trace",
    "TraceFormatError",
    "TracePoint",
    "build_direction_constrained_udg",
    "build_udg",
    "direction_angle",
    "displacements_at",
    "generate_two_way_roadway",
    "load_trace_csv",
    "snapshot_at",
    "write_trace_csv",
]

TRACE_HEADER = ["time", "id", "x", "y"]


class TraceFormatError(ValueError):
    """Raised when a trace file or sample list is malformed."""


@dataclass(frozen=True, order=True)
class TracePoint:
    time: float
    vehicle: int
    x: float
    y: float


class Trace:
    """Immutable, time-sorted sequence of position samples.

    Duplicate (time, vehicle) pairs are rejected. sampling_period is
    inferred as the smallest positive gap between distinct sample
    times (1.0 when the trace has a single instant).
    """

    def __init__(self, points):
        pts = sorted(points, key=lambda p: (p.time, p.vehicle))
        if not pts:
            raise TraceFormatError("trace has no samples")
        by_time: dict[float, dict[int, tuple[float, float]]] = {}
        for p in pts:
            at = by_time.setdefault(p.time, {})
            if p.vehicle in at:
                raise TraceFormatError(
                    f"duplicate sample for vehicle {p.vehicle} at t={p.time}"
                )
            at[p.vehicle] = (p.x, p.y)
        self._points = tuple(pts)
        self._by_time = by_time
        times = sorted(by_time)
        self._times = tuple(times)
        gaps = [b - a for a, b in zip(times, times[1:])]
        self._period = min(gaps) if gaps else 1.0

    @property
    def points(self) -> tuple[TracePoint, ...]:
        return self._points

    @property
    def times(self) -> tuple[float, ...]:
        return self._times

    @property
    def span(self) -> tuple[float, float]:
        return self._times[0], self._times[-1]

    @property
    def sampling_period(self) -> float:
        return self._period

    @property
    def vehicles(self) -> tuple[int, ...]:
        return tuple(sorted({p.vehicle for p in self._points}))

    def positions_at(self, t: float) -> dict[int, tuple[float, float]]:
        return dict(self._by_time.get(t, {}))

    def __len__(self):
        return len(self._points)


def load_trace_csv(path) -> Trace:
    """Read a trace from CSV with header time,id,x,y."""
    points = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header != TRACE_HEADER:
            raise TraceFormatError(
                f"expected header {','.join(TRACE_HEADER)!r}, got {header!r}"
            )
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 4:
                raise TraceFormatError(f"line {lineno}: expected 4 fields, got {len(row)}")
            try:
                points.append(
                    TracePoint(float(row[0]), int(row[1]), float(row[2]), float(row[3]))
                )
            except ValueError as exc:
                raise TraceFormatError(f"line {lineno}: {exc}") from exc
    if not points:
        raise TraceFormatError(f"{path}: no samples")
    return Trace(points)


def write_trace_csv(trace: Trace, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for p in trace.points:
            writer.writerow([repr(p.time), p.vehicle, repr(p.x), repr(p.y)])


def snapshot_at(trace: Trace, t: float) -> dict[int, tuple[float, float]]:
    """Positions of all vehicles sampled exactly at time t.

    Raises outside the trace's time span; an in-span instant with no
    samples just yields an empty snapshot.
    """
    lo, hi = trace.span
    if not lo <= t <= hi:
        raise ValueError(f"t={t} outside trace span [{lo}, {hi}]")
    return trace.positions_at(t)


@dataclass(frozen=True)
class RadioParams:
    """range_r in meters, angle_threshold in degrees."""

    range_r: float = 100.0
    angle_threshold: float = 45.0

    def __post_init__(self):
        if self.range_r <= 0:
            raise ValueError(f"range_r must be positive, got {self.range_r}")
        if not 0 <= self.angle_threshold <= 180:
            raise ValueError(
                f"angle_threshold must be in [0, 180], got {self.angle_threshold}"
            )


def build_udg(
    snapshot: dict[int, tuple[float, float]], radio: RadioParams = RadioParams()
) -> SnapshotGraph:
    """Unit-disk graph: edge iff distance <= range, boundary included."""
    ids = sorted(snapshot)
    n = len(ids)
    if n < 2:
        return SnapshotGraph(ids, [])
    pos = np.array([snapshot[v] for v in ids], dtype=float)
    ii, jj = np.triu_indices(n, k=1)
    diff = pos[ii] - pos[jj]
    sq = (diff * diff).sum(axis=1)
    within = sq <= radio.range_r * radio.range_r
    edges = [(ids[i], ids[j]) for i, j in zip(ii[within], jj[within])]
    return SnapshotGraph(ids, edges)


@dataclass(frozen=True)
class DisplacementVector:
    """Movement of one vehicle over one sampling step."""

    dx: float
    dy: float
    magnitude: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "magnitude", math.hypot(self.dx, self.dy))

    @property
    def is_neutral(self) -> bool:
        return self.magnitude == 0.0


def direction_angle(wi: DisplacementVector, wj: DisplacementVector) -> float:
    """Angle in degrees between two displacement vectors, in [0, 180].

    atan2 of the cross/dot pair keeps boundary cases exact: parallel
    axis-aligned vs diagonal unit vectors come out at 45.0, not a hair
    above it.
    """
    if wi.is_neutral or wj.is_neutral:
        raise ValueError("direction angle undefined for a zero displacement")
    dot = wi.dx * wj.dx + wi.dy * wj.dy
    cross = wi.dx * wj.dy - wi.dy * wj.dx
    return math.degrees(math.atan2(abs(cross), dot))


def displacements_at(
    snapshot: dict[int, tuple[float, float]],
    prev_snapshot: dict[int, tuple[float, float]],
) -> dict[int, DisplacementVector]:
    """Per-vehicle displacement since the previous snapshot.

    Vehicles absent from the previous snapshot get no entry, which the
    direction filter treats as neutral.
    """
    out = {}
    for v, (x, y) in snapshot.items():
        if v in prev_snapshot:
            px, py = prev_snapshot[v]
            out[v] = DisplacementVector(x - px, y - py)
    return out


def build_direction_constrained_udg(
    snapshot: dict[int, tuple[float, float]],
    prev_snapshot: dict[int, tuple[float, float]],
    radio: RadioParams = RadioParams(),
) -> tuple[SnapshotGraph, int]:
    """Unit-disk graph minus links between oppositely-heading vehicles.

    An edge survives when either endpoint is direction-neutral (no
    previous sample, or zero displacement) or the angle between the two
    displacement vectors is at most the threshold. Returns the filtered
    graph and the number of edges removed.
    """
    base = build_udg(snapshot, radio)
    moves = displacements_at(snapshot, prev_snapshot)
    kept = []
    removed = 0
    for i, j in base.edges():
        wi = moves.get(i)
        wj = moves.get(j)
        if (
            wi is None
            or wj is None
            or wi.is_neutral
            or wj.is_neutral
            or direction_angle(wi, wj) <= radio.angle_threshold
        ):
            kept.append((i, j))
        else:
            removed += 1
    return SnapshotGraph(base.vertices, kept), removed


def generate_two_way_roadway(
    n_vehicles: int,
    area_side: float = 1000.0,
    duration: float = 60.0,
    speed_range: tuple[float, float] = (8.0, 14.0),
    seed: int = 0,
) -> Trace:
    """Synthetic straight two-lane road with opposing traffic.

    Even-id vehicles drive east in the lower lane, odd-id vehicles west
    in the upper lane, each at a constant per-vehicle speed drawn
    uniformly from speed_range. Positions are sampled at 1 Hz from t=0.
    Vehicles run straight without wrapping, so cross-lane displacement
    pairs stay at exactly 180 degrees for the whole trace.
    """
    if n_vehicles < 1:
        raise ValueError(f"n_vehicles must be >= 1, got {n_vehicles}")
    if duration < 1:
        raise ValueError(f"duration must be >= 1, got {duration}")
    lo, hi = speed_range
    if not 0 < lo <= hi:
        raise ValueError(f"bad speed_range {speed_range}")
    rng = random.Random(seed)
    mid = area_side / 2.0
    lanes = {0: mid - 2.0, 1: mid + 2.0}  # 4 m lane separation
    starts = [rng.uniform(0.0, area_side) for _ in range(n_vehicles)]
    speeds = [rng.uniform(lo, hi) for _ in range(n_vehicles)]
    points = []
    for t in range(int(duration)):
        for v in range(n_vehicles):
            heading = 1.0 if v % 2 == 0 else -1.0
            x = starts[v] + heading * speeds[v] * t
            points.append(TracePoint(float(t), v, x, lanes[v % 2]))
    return Trace(points)
