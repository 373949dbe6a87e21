import cmath
import io
import math

from hypothesis import given, settings, strategies as st
import mpmath
import numpy as np
import pytest

from benford_walk import CapacityError, MantissaTrajectory, accumulate, make_stream, weyl_series
from benford_walk.product_walk import accumulate_fraclogs, write_dump
from benford_walk.mantissa_core import fraclog

from conftest import spec

mpmath.mp.dps = 40


def test_constant_base_walk_stays_at_zero():
    traj = accumulate(make_stream(spec("constant", c=10), 0), 1000)
    assert np.all(traj.points == 0.0)


def test_constant_two_tenth_point():
    traj = accumulate(make_stream(spec("constant", c=2), 0), 10)
    expected = float(mpmath.frac(10 * mpmath.log10(2)))
    assert traj.points[9] == pytest.approx(expected, abs=1e-14)
    assert traj.points[9] == pytest.approx(0.01029995663981195, abs=1e-14)


def test_counterexample_even_points_are_zero():
    traj = accumulate(make_stream(spec("counterexample_pairs"), 8), 10_000)
    assert np.all(traj.points[1::2] == 0.0)
    assert np.count_nonzero(traj.points[0::2]) == 5000


def test_compensated_accumulation_against_exact_rational_oracle():
    n = 10**6
    f = fraclog(2, 10)
    traj = accumulate(make_stream(spec("constant", c=2), 0), n)
    # exact oracle: f = num / 2**k, so {n f} is computed in integer arithmetic
    num, den = f.as_integer_ratio()
    idx = np.arange(1, n + 1, dtype=object)
    exact = np.array([float((int(i) * num % den) / den) for i in idx[:: 997]])
    got = traj.points[::997]
    err = np.abs(got - exact)
    err = np.minimum(err, 1 - err)
    assert err.max() <= 1e-10


def test_compensation_survives_wraps():
    # naive float summation drifts on this sequence; compensated stays close
    f = np.full(200_000, 0.1)
    pts = accumulate_fraclogs(f)
    exact = np.mod(np.arange(1, f.size + 1) * (1 / 10), 1.0)
    d = np.abs(pts - exact)
    assert np.minimum(d, 1 - d).max() < 1e-9


def test_capacity_propagates():
    with pytest.raises(CapacityError):
        accumulate(make_stream(spec("gaussian_cov", gamma=[1.0], n_max=5), 0), 6)


def test_weyl_constant_base_is_one():
    traj = accumulate(make_stream(spec("constant", c=10), 0), 100)
    for h in (1, 2, 5):
        assert np.allclose(weyl_series(traj, h).values, 1.0)


def test_weyl_geometric_sum_oracle():
    n = 10_000
    traj = accumulate(make_stream(spec("constant", c=2), 0), n)
    alpha = math.log10(2)
    w = weyl_series(traj, 1)
    for N in (1, 7, 100, 5000, n):
        oracle = abs(math.sin(math.pi * N * alpha) / (N * math.sin(math.pi * alpha)))
        assert abs(w.values[N - 1]) == pytest.approx(oracle, abs=1e-9)
    assert abs(w.values[-1]) <= 0.01


def test_weyl_iid_benford_clt_bound():
    hits = 0
    for seed in range(10):
        traj = accumulate(make_stream(spec("iid_benford"), seed), 100_000)
        hits += abs(weyl_series(traj, 1).values[-1]) <= 0.02
    assert hits == 10


def _naive_weyl_sq(s, h):
    total = sum(cmath.exp(2j * math.pi * h * x) for x in s)
    return abs(total / len(s)) ** 2


def _naive_pairs(s, h):
    n = len(s)
    acc = 0.0
    for j in range(n):
        for k in range(j):
            acc += math.cos(2 * math.pi * h * (s[j] - s[k]))
    return 1 / n + 2 * acc / n**2


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=60), st.integers(1, 6))
def test_weyl_identity_exact(s, h):
    traj = MantissaTrajectory(np.array(s), 10)
    t = weyl_series(traj, h).values[-1]
    assert abs(abs(t) ** 2 - _naive_pairs(s, h)) <= 1e-9
    assert abs(abs(t) ** 2 - _naive_weyl_sq(s, h)) <= 1e-9


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-10, 10), min_size=1, max_size=100))
def test_van_der_corput_inequality(x):
    n = len(x)
    z = np.exp(1j * np.cumsum(x))
    lhs = abs(z.sum() / n) ** 2
    for L in range(1, n + 1):
        acc = 0j
        for lag in range(1, L):
            acc += (L - lag) * np.sum(z[lag:] * np.conj(z[:-lag]))
        rhs = 2 / L + 2 * ((n + L - 1) / (L**2 * n**2) * acc).real
        assert lhs <= rhs + 1e-9


@given(st.lists(st.floats(0, 1, exclude_max=True), min_size=1, max_size=300), st.integers(1, 40))
def test_weyl_modulus_bounded(s, h):
    vals = weyl_series(MantissaTrajectory(np.array(s), 10), h).values
    assert np.all(np.abs(vals) <= 1 + 1e-12)


def test_trajectory_rejects_out_of_range():
    with pytest.raises(ValueError):
        MantissaTrajectory(np.array([0.2, 1.0]), 10)


def test_dump_format():
    traj = accumulate(make_stream(spec("constant", c=2), 0), 3)
    buf = io.StringIO()
    write_dump(traj, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "n,fraclog,mantissa"
    n, s, m = lines[2].split(",")
    assert n == "2"
    assert float(s) == traj.points[1]
    assert float(m) == pytest.approx(4.0, rel=1e-15)
    assert float(m) == 10 ** traj.points[1]
