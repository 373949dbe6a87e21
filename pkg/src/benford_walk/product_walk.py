"""Product trajectories ``s_n = {log_b Y_n}`` and their Weyl averages."""

from dataclasses import dataclass

import numpy as np

from .errors import CapacityError, DomainError
from .mantissa_core import SNAP_TOL, check_base, check_harmonic

MAX_TRAJECTORY = 10**7


@dataclass(frozen=True)
class MantissaTrajectory:
    """Points ``s_1 .. s_N`` in ``[0, 1)`` of one product walk."""

    points: np.ndarray
    base: float
    seed: int | None = None

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1:
            raise DomainError("trajectory points must be one-dimensional")
        if pts.size and (pts.min() < 0.0 or pts.max() >= 1.0):
            raise DomainError("trajectory points must lie in [0, 1)")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "base", check_base(self.base))

    @property
    def length(self):
        return int(self.points.size)

    def __len__(self):
        return self.length

    def mantissae(self):
        return np.power(self.base, self.points)


@dataclass(frozen=True)
class WeylSeries:
    """Prefix averages ``T_1 .. T_N`` of ``e_h(s_n)``."""

    harmonic: int
    values: np.ndarray
    base: float

    def __len__(self):
        return int(self.values.size)


def accumulate_fraclogs(increments):
    """Running fractional sums of ``increments`` with compensated summation.

    The Kahan residual survives the mod-1 wrap (subtracting 1.0 from a value in
    ``[1, 2)`` is exact), so the error grows like ``N * eps``.  Sums within
    ``SNAP_TOL`` below 1 snap to 0, and the residual is cleared whenever the
    running point is exactly 0.
    """
    out = np.empty(len(increments))
    s = 0.0
    c = 0.0
    for i, f in enumerate(increments):
        y = f - c
        t = s + y
        c = (t - s) - y
        s = t
        if s >= 1.0:
            s -= 1.0
        elif s < 0.0:
            s += 1.0
        if s >= 1.0 - SNAP_TOL:
            s = 0.0
        if s == 0.0:
            c = 0.0
        out[i] = s
    return out


def accumulate(stream, n):
    """Materialize the first ``n`` points of the product walk driven by ``stream``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"trajectory length must be a positive integer, got {n!r}")
    if n > MAX_TRAJECTORY:
        raise CapacityError(f"trajectory length {n} exceeds the cap {MAX_TRAJECTORY}")
    if stream.capacity is not None and stream.count + n > stream.capacity:
        raise CapacityError(
            f"{stream.spec.family} stream holds {stream.capacity} values; {n} requested"
        )
    pts = accumulate_fraclogs(stream.take(int(n)))
    return MantissaTrajectory(pts, stream.spec.base, stream.seed)


def phases(points, h):
    """``e_h`` of every point, reducing ``h * s`` mod 1 first."""
    return np.exp(2j * np.pi * np.mod(h * np.asarray(points, dtype=float), 1.0))


def weyl_series(traj, h):
    """All prefix averages ``T_N = (1/N) sum_{n<=N} e_h(s_n)`` in one pass."""
    h = check_harmonic(h)
    if traj.length == 0:
        raise DomainError("weyl_series needs a non-empty trajectory")
    running = np.cumsum(phases(traj.points, h))
    return WeylSeries(h, running / np.arange(1, traj.length + 1), traj.base)


def write_dump(traj, fh):
    """Write the trajectory as CSV ``n,fraclog,mantissa`` with 17 significant digits."""
    fh.write("n,fraclog,mantissa\n")
    for n, (s, m) in enumerate(zip(traj.points.tolist(), traj.mantissae().tolist()), 1):
        fh.write(f"{n},{s:.17g},{m:.17g}\n")

