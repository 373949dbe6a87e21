"""Distributional diagnostics for trajectories and replica ensembles."""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import CapacityError, DomainError
from .generators import derive_seed, make_stream
from .mantissa_core import check_harmonic, first_digit_probs
from .parallel import map_replicas
from .product_walk import accumulate_fraclogs, phases

#: Kolmogorov 1% critical constant: reject uniformity when KS > KS_CRIT_1PCT / sqrt(N).
KS_CRIT_1PCT = 1.63
#: Upper 1% quantiles of chi-square by degrees of freedom (first-digit tests).
CHI2_CRIT_1PCT = {1: 6.635, 2: 9.210, 3: 11.345, 4: 13.277, 5: 15.086, 6: 16.812,
                  7: 18.475, 8: 20.090, 9: 21.666, 10: 23.209, 14: 29.141}
ROBBINS_MAX_N = 10**4


def ks_threshold(n):
    return KS_CRIT_1PCT / math.sqrt(n)


def _sample(traj):
    pts = traj.points if hasattr(traj, "points") else np.asarray(traj, dtype=float)
    if pts.size == 0:
        raise DomainError("statistic needs at least one point")
    return pts


def _anchored_discrepancy(u):
    u = np.sort(u)
    n = u.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - u), np.max(u - (i - 1) / n)))


def ks_to_benford(traj):
    """Kolmogorov-Smirnov distance of the mantissa law of ``traj`` to Benford.

    Computed exactly on the fraclog sample against the uniform CDF, which is
    the same number as mantissae against ``log_b a``.  Accepts a trajectory or
    a bare array of points in ``[0, 1)``.
    """
    return _anchored_discrepancy(_sample(traj))


def star_discrepancy(traj):
    """Star discrepancy ``D*_N`` of the points over intervals ``[0, c)``."""
    return _anchored_discrepancy(_sample(traj))


def leading_digits(points, b):
    """Leading base-``b`` digit of ``b**s`` for each fraclog ``s``."""
    ib = int(b)
    d = np.floor(np.power(float(b), np.asarray(points, dtype=float))).astype(int)
    return np.clip(d, 1, ib - 1)


def chi_square_from_counts(counts, b):
    """Pearson statistic of first-digit ``counts`` (digits ``1 .. b-1``) against Benford."""
    probs = np.array(first_digit_probs(b))
    counts = np.asarray(counts, dtype=float)
    if counts.shape != probs.shape:
        raise DomainError(f"expected {probs.size} digit counts, got {counts.size}")
    expected = counts.sum() * probs
    return float(np.sum((counts - expected) ** 2 / expected))


def chi_square_first_digit(traj):
    """First-digit chi-square statistic against Benford.

    Returns ``(chi2, dof, digit_freqs)`` with ``dof = b - 2`` and
    ``digit_freqs`` a list of ``(digit, observed frequency)``.
    """
    pts = _sample(traj)
    b = traj.base
    probs = np.array(first_digit_probs(b))  # raises for non-integer bases
    ib = int(b)
    n = pts.size
    if n < 5 * (ib - 1):
        raise DomainError(f"chi-square needs N >= {5 * (ib - 1)} points, got {n}")
    counts = np.bincount(leading_digits(pts, ib), minlength=ib)[1:]
    chi2 = chi_square_from_counts(counts, ib)
    freqs = [(d, c / n) for d, c in zip(range(1, ib), counts.tolist())]
    return chi2, ib - 2, freqs


@dataclass(frozen=True)
class ConformanceReport:
    N: int
    ks: float
    dstar: float
    chi2: float | None = None
    dof: int | None = None
    digit_freqs: list = field(default_factory=list)


def conformance(traj):
    """KS, star discrepancy and (integer bases only) first-digit chi-square."""
    pts = _sample(traj)
    chi2 = dof = None
    freqs = []
    b = traj.base
    if b == math.floor(b) and pts.size >= 5 * (int(b) - 1):
        chi2, dof, freqs = chi_square_first_digit(traj)
    return ConformanceReport(pts.size, ks_to_benford(traj), star_discrepancy(traj), chi2, dof, freqs)


def robbins_rhs(traj, h, N):
    """``1/N + (2/N^2) sum_{k<n<=N} cos(2 pi h (s_n - s_k))``.

    Evaluated pairwise from phase differences, independently of the running
    sum behind :func:`weyl_series`; the two agree with ``|T_N|^2``.
    """
    h = check_harmonic(h)
    if N > ROBBINS_MAX_N:
        raise CapacityError(f"robbins_rhs is quadratic; N={N} exceeds {ROBBINS_MAX_N}")
    pts = _sample(traj)
    if not 1 <= N <= pts.size:
        raise DomainError(f"N must lie in [1, {pts.size}], got {N}")
    s = pts[:N]
    total = 0.0
    block = 512
    for start in range(1, N, block):
        rows = np.arange(start, min(start + block, N))
        diff = s[rows, None] - s[None, :rows[-1]]
        mask = np.arange(rows[-1])[None, :] < rows[:, None]
        total += float(np.sum(np.cos(2.0 * np.pi * np.mod(h * diff, 1.0)), where=mask))
    return 1.0 / N + 2.0 * total / (N * N)


def replica_points(spec, n_list, seed):
    """Trajectory points ``s_n`` at the requested indices for one replica."""
    n_max = max(n_list)
    traj = accumulate_fraclogs(make_stream(spec, seed).take(n_max))
    return traj[np.asarray(n_list) - 1]


def ensemble_points(spec, n_list, M, master, threads=None):
    """``(M, len(n_list))`` array of ``s_n`` across replicas ``derive_seed(master, i)``."""
    n_list = [int(n) for n in n_list]
    if not n_list or min(n_list) < 1:
        raise DomainError("indices must be positive")
    rows = map_replicas(lambda i: replica_points(spec, n_list, derive_seed(master, i)), M, threads)
    return np.vstack(rows)


@dataclass(frozen=True)
class EnsembleFourier:
    """Monte Carlo estimates of ``E[e_h(log_b Y_n)]`` with standard errors."""

    harmonic: int
    n: np.ndarray
    estimate: np.ndarray
    stderr: np.ndarray
    replicas: int

    def entries(self):
        return list(zip(self.n.tolist(), self.estimate.tolist(), self.stderr.tolist()))

    def at(self, n):
        idx = np.flatnonzero(self.n == n)
        if idx.size == 0:
            raise DomainError(f"index {n} not in ensemble")
        return complex(self.estimate[idx[0]])


def fourier_from_points(points, h):
    """Sample mean and standard error of ``e_h`` down the replica axis."""
    ph = phases(points, h)
    m = ph.shape[0]
    est = ph.mean(axis=0)
    # population std keeps stderr <= 1/sqrt(M) for unit-modulus samples
    sd = np.maximum(ph.real.std(axis=0), ph.imag.std(axis=0))
    return est, sd / math.sqrt(m)


def ensemble_fourier(spec, n_list, h_list, M, master, threads=None):
    """Monte Carlo ``E[e_h(log_b Y_n)]`` for every ``h`` in ``h_list``.

    Returns a dict ``{h: EnsembleFourier}``; replicas share trajectories across
    harmonics.
    """
    if M < 2:
        raise DomainError(f"ensemble needs M >= 2 replicas, got {M}")
    hs = [check_harmonic(h) for h in h_list]
    pts = ensemble_points(spec, n_list, M, master, threads)
    n_arr = np.asarray([int(n) for n in n_list])
    out = {}
    for h in hs:
        est, se = fourier_from_points(pts, h)
        out[h] = EnsembleFourier(h, n_arr, est, se, M)
    return out


def ensemble_ks_at(spec, n, M, master, threads=None):
    """KS distance to Benford of the cross-section ``{s_n}`` over ``M`` replicas."""
    if M < 10:
        raise DomainError(f"ensemble KS needs M >= 10 replicas, got {M}")
    return ks_to_benford(ensemble_points(spec, [n], M, master, threads)[:, 0])
