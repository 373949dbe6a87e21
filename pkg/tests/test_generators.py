import math

import numpy as np
import pytest

from benford_walk import (
    CapacityError,
    DomainError,
    GeneratorSpec,
    UnsupportedFamilyError,
    derive_seed,
    fraclog,
    gamma_of,
    make_stream,
)
from benford_walk.generators import FAMILIES, log_stream
from benford_walk.mantissa_core import circle_distance
from benford_walk.rng import Xoshiro256pp
from benford_walk.statistics import ks_to_benford

from conftest import spec

U64 = np.uint64


def _mix_np(z):
    # independent vectorized SplitMix64 finalizer (numpy wraps mod 2**64)
    with np.errstate(over="ignore"):
        z = (z ^ (z >> U64(30))) * U64(0xBF58476D1CE4E5B9)
        z = (z ^ (z >> U64(27))) * U64(0x94D049BB133111EB)
        return z ^ (z >> U64(31))


def _xoshiro_np(state, count):
    s = [U64(v) for v in state]
    out = []
    with np.errstate(over="ignore"):
        for _ in range(count):
            t0 = s[0] + s[3]
            out.append(int(((t0 << U64(23)) | (t0 >> U64(41))) + s[0]))
            t = s[1] << U64(17)
            s[2] ^= s[0]
            s[3] ^= s[1]
            s[1] ^= s[2]
            s[0] ^= s[3]
            s[2] ^= t
            s[3] = (s[3] << U64(45)) | (s[3] >> U64(19))
    return out


def test_derive_seed_examples():
    assert derive_seed(0, 0) == 0
    assert derive_seed(0, 1) == 0xE220A8397B1DCDAF


def test_derive_seed_matches_vectorized_oracle_and_has_no_collisions():
    master = 0x0123456789ABCDEF
    idx = np.arange(10**6, dtype=np.uint64)
    with np.errstate(over="ignore"):
        seeds = _mix_np(U64(master) + idx * U64(0x9E3779B97F4A7C15))
    assert np.unique(seeds).size == 10**6
    for i in (0, 1, 2, 999_999, 123_456):
        assert derive_seed(master, i) == int(seeds[i])


def test_xoshiro_reference_vector():
    rng = Xoshiro256pp(state=(1, 2, 3, 4))
    assert rng.next_u64() == 41943041


def test_xoshiro_matches_independent_implementation():
    state = [derive_seed(99, i) for i in range(4)]
    rng = Xoshiro256pp(99)
    assert rng.state == tuple(state)
    assert [rng.next_u64() for _ in range(500)] == _xoshiro_np(state, 500)


def test_uniforms_and_normals_have_expected_moments():
    rng = Xoshiro256pp(5)
    u = np.array([rng.uniform() for _ in range(50_000)])
    assert u.min() >= 0.0 and u.max() < 1.0
    assert abs(u.mean() - 0.5) < 4 * math.sqrt(1 / 12 / u.size)
    z = np.array([rng.normal() for _ in range(50_000)])
    assert abs(z.mean()) < 4 / math.sqrt(z.size)
    assert abs(z.var() - 1.0) < 4 * math.sqrt(2 / z.size)


ALL_SPECS = [
    spec("iid_lognormal", mu=0.3, sigma=1.2),
    spec("iid_exponential", rate=2.0),
    spec("iid_weibull", shape=1.5, scale=3.0),
    spec("iid_atoms", atoms=[[2, 0.5], [3, 0.5]]),
    spec("iid_benford"),
    spec("constant", c=2),
    spec("gaussian_ar1", phi=0.5, sigma=1.0, mean=0.1),
    spec("gaussian_cov", gamma=[2.0, 0.3], n_max=1000),
    spec("brownian_log", times=[0.01 * k for k in range(1, 1001)]),
    spec("exchangeable", kernel="exp_sum", dist_u={"kind": "normal", "mu": 0, "sigma": 1},
         dist_z={"kind": "uniform", "lo": -1, "hi": 1}),
    spec("exchangeable", kernel="exp_product", dist_u={"kind": "uniform", "lo": 0.5, "hi": 2},
         dist_z={"kind": "exponential", "rate": 1}),
    spec("one_dependent", kernel="exp_sum", dist_z={"kind": "normal", "mu": 0, "sigma": 1}),
    spec("one_dependent", kernel="exp_product", dist_z={"kind": "normal", "mu": 1, "sigma": 1}),
    spec("counterexample_pairs"),
]


def test_every_family_is_covered():
    assert {s.family for s in ALL_SPECS} == set(FAMILIES)


@pytest.mark.parametrize("s", ALL_SPECS, ids=lambda s: s.family)
def test_streams_are_reproducible_and_in_range(s):
    a = make_stream(s, 42).take(1000)
    b = make_stream(s, 42).take(1000)
    assert a.tobytes() == b.tobytes()
    assert np.all((a >= 0) & (a < 1))
    c = make_stream(s, 43).take(1000)
    if s.family != "constant":
        assert not np.array_equal(a, c)


@pytest.mark.parametrize("s", [s for s in ALL_SPECS if s.family not in
                               ("iid_atoms", "iid_benford", "constant", "counterexample_pairs")],
                         ids=lambda s: s.family)
def test_fraclog_stream_reduces_log_stream(s):
    logs = log_stream(s, 7).take(300)
    fl = make_stream(s, 7).take(300)
    expected = np.mod(logs / math.log(s.base), 1.0)
    assert max(circle_distance(x, y) for x, y in zip(fl, expected)) < 1e-12


def test_constant_base_gives_zero_stream():
    assert np.all(make_stream(spec("constant", c=10), 1).take(100) == 0.0)


def test_counterexample_pairs_close_to_integers():
    f = make_stream(spec("counterexample_pairs"), 3).take(20_000)
    odd, even = f[0::2], f[1::2]
    for v, w in zip(odd, even):
        assert w == (0.0 if v == 0 else (1.0 - v) % 1.0)
    sums = np.mod(odd + even, 1.0)
    assert np.all(np.minimum(sums, 1 - sums) <= 1e-12)
    assert ks_to_benford(odd) <= 1.63 / math.sqrt(odd.size)


def test_atoms_stream_values():
    f = make_stream(spec("iid_atoms", atoms=[[2, 0.5], [3, 0.5]]), 9).take(2000)
    allowed = {fraclog(2, 10), fraclog(3, 10)}
    assert set(f.tolist()) == allowed
    assert abs(np.mean(f == fraclog(2, 10)) - 0.5) < 4 * 0.5 / math.sqrt(2000)


def test_iid_benford_is_uniform():
    f = make_stream(spec("iid_benford"), 2026).take(100_000)
    assert ks_to_benford(f) <= 0.006


def test_gaussian_cov_empirical_covariance():
    gamma = [2.0, 0.3, -0.1]
    s = spec("gaussian_cov", gamma=gamma, n_max=3)
    reps = 100_000
    x = np.array([log_stream(s, derive_seed(77, i)).take(3) for i in range(reps)])
    for k in range(3):
        prod = x[:, 0] * x[:, k]
        se = prod.std() / math.sqrt(reps)
        assert abs(prod.mean() - gamma[k]) <= 4 * se


def test_gaussian_ar1_variance():
    s = spec("gaussian_ar1", phi=0.5, sigma=1.0)
    x = log_stream(s, 5).take(200_000)
    g1 = 1 / (1 - 0.25)
    assert abs(x.var() - g1) < 0.05
    lag = np.mean(x[1:] * x[:-1])
    assert abs(lag - 0.5 * g1) < 0.05


def test_exchangeable_given_u_is_uncorrelated():
    s = spec("exchangeable", kernel="exp_sum", dist_u={"kind": "uniform", "lo": 0.7, "hi": 0.7},
             dist_z={"kind": "normal", "mu": 0, "sigma": 1})
    x = log_stream(s, 11).take(50_000)
    assert np.allclose(x.mean(), 0.7, atol=4 / math.sqrt(x.size))
    r = np.corrcoef(x[1:], x[:-1])[0, 1]
    assert abs(r) <= 4 / math.sqrt(x.size)


def test_brownian_increments_and_ties():
    s = spec("brownian_log", times=[1.0, 1.0, 3.0])
    draws = np.array([log_stream(s, derive_seed(1, i)).take(3) for i in range(20_000)])
    assert np.array_equal(draws[:, 0], draws[:, 1])
    assert abs(draws[:, 2].var() - 3.0) < 0.15


def test_capacity_errors():
    s = spec("gaussian_cov", gamma=[1.0], n_max=4)
    st = make_stream(s, 1)
    st.take(4)
    with pytest.raises(CapacityError):
        next(st)
    with pytest.raises(CapacityError):
        make_stream(s, 1).take(5)


def test_gamma_of_examples():
    assert gamma_of(spec("gaussian_ar1", phi=0.0, sigma=1.0), 1) == 1.0
    assert gamma_of(spec("gaussian_ar1", phi=0.0, sigma=1.0), 2) == 0.0
    s = spec("gaussian_ar1", phi=0.5, sigma=1.0)
    assert gamma_of(s, 2) / gamma_of(s, 1) == pytest.approx(0.5)
    c = spec("gaussian_cov", gamma=[2, 0.3], n_max=5)
    assert (gamma_of(c, 1), gamma_of(c, 2), gamma_of(c, 3)) == (2.0, 0.3, 0.0)
    with pytest.raises(UnsupportedFamilyError):
        gamma_of(spec("iid_benford"), 1)


@pytest.mark.parametrize("family,params,key", [
    ("iid_atoms", {"atoms": [[2, 0.5], [3, 0.4]]}, "atoms"),
    ("iid_atoms", {"atoms": [[-2, 0.5], [3, 0.5]]}, "value"),
    ("iid_lognormal", {"mu": 0, "sigma": 0}, "sigma"),
    ("gaussian_ar1", {"phi": 1.0, "sigma": 1}, "phi"),
    ("gaussian_cov", {"gamma": [1, 2], "n_max": 4}, "gamma"),
    ("gaussian_cov", {"gamma": [1], "n_max": 5000}, "n_max"),
    ("brownian_log", {"times": [1, 0.5]}, "times"),
    ("exchangeable", {"kernel": "exp_cube", "dist_u": {}, "dist_z": {}}, "kernel"),
    ("one_dependent", {"kernel": "exp_sum", "dist_z": {"kind": "cauchy"}}, "dist_z"),
    ("constant", {"c": 2, "d": 1}, "d"),
    ("no_such_family", {}, "family"),
])
def test_invalid_specs_name_the_parameter(family, params, key):
    with pytest.raises(DomainError, match=key):
        GeneratorSpec(family, params, 10)


def test_semidefinite_covariance_accepted_with_jitter():
    s = spec("gaussian_cov", gamma=[1.0, 1.0, 1.0], n_max=3)
    x = log_stream(s, 3).take(3)
    assert np.allclose(x, x[0], atol=1e-4)
