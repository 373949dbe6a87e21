"""Seeded streams of ``fraclog(X_n, b)`` for every factor family.

A :class:`GeneratorSpec` names a family and its parameters; :func:`make_stream`
turns it into a deterministic :class:`Stream` given a 64-bit seed.  Families
whose fraclog is known in closed form (``iid_benford``, ``constant``,
``counterexample_pairs``, ``iid_atoms``) never round-trip through ``x``;
the others sample ``log X_n`` and reduce.
"""

from bisect import bisect_right
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import CapacityError, DomainError, UnsupportedFamilyError
from .mantissa_core import check_base, frac, fraclog
from .rng import Xoshiro256pp, derive_seed  # noqa: F401  (re-exported)

FAMILIES = (
    "iid_lognormal",
    "iid_exponential",
    "iid_weibull",
    "iid_atoms",
    "iid_benford",
    "constant",
    "gaussian_ar1",
    "gaussian_cov",
    "brownian_log",
    "exchangeable",
    "one_dependent",
    "counterexample_pairs",
)
GAUSSIAN_FAMILIES = ("iid_lognormal", "gaussian_ar1", "gaussian_cov")
IID_FAMILIES = ("iid_lognormal", "iid_exponential", "iid_weibull", "iid_atoms",
                "iid_benford", "constant")
KERNELS = ("exp_sum", "exp_product")
MAX_COV_DIM = 4096
COV_JITTER = 1e-10
ATOM_PROB_TOL = 1e-9


def _real(params, key, *, positive=False, lo=None, hi=None):
    if key not in params:
        raise DomainError(f"{key}: missing parameter")
    v = params[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise DomainError(f"{key}: must be a finite real, got {v!r}")
    v = float(v)
    if positive and v <= 0:
        raise DomainError(f"{key}: must be > 0, got {v!r}")
    if lo is not None and not v > lo:
        raise DomainError(f"{key}: must be > {lo}, got {v!r}")
    if hi is not None and not v < hi:
        raise DomainError(f"{key}: must be < {hi}, got {v!r}")
    return v


def _no_extra(params, allowed):
    extra = sorted(set(params) - set(allowed))
    if extra:
        raise DomainError(f"{extra[0]}: unknown parameter (allowed: {', '.join(allowed) or 'none'})")


@dataclass(frozen=True)
class ScalarDist:
    """One of ``normal(mu, sigma)``, ``uniform(lo, hi)``, ``exponential(rate)``."""

    kind: str
    params: dict

    @classmethod
    def from_mapping(cls, m):
        if not isinstance(m, dict) or "kind" not in m:
            raise DomainError(f"kind: scalar distribution needs a 'kind', got {m!r}")
        kind = m["kind"]
        p = {k: v for k, v in m.items() if k != "kind"}
        if kind == "normal":
            _no_extra(p, ("mu", "sigma"))
            norm = {"mu": _real(p, "mu"), "sigma": _real(p, "sigma", positive=True)}
        elif kind == "uniform":
            _no_extra(p, ("lo", "hi"))
            lo, hi = _real(p, "lo"), _real(p, "hi")
            if hi < lo:
                raise DomainError(f"hi: must be >= lo, got lo={lo!r}, hi={hi!r}")
            norm = {"lo": lo, "hi": hi}
        elif kind == "exponential":
            _no_extra(p, ("rate",))
            norm = {"rate": _real(p, "rate", positive=True)}
        else:
            raise DomainError(f"kind: unknown scalar distribution {kind!r}")
        return cls(kind, norm)

    def to_mapping(self):
        return {"kind": self.kind, **self.params}

    def draw(self, rng):
        p = self.params
        if self.kind == "normal":
            return p["mu"] + p["sigma"] * rng.normal()
        if self.kind == "uniform":
            return p["lo"] + (p["hi"] - p["lo"]) * rng.uniform()
        return rng.exponential(p["rate"])


def _toeplitz_cholesky(gamma, n_max):
    g = np.zeros(n_max)
    g[: len(gamma)] = gamma
    idx = np.arange(n_max)
    cov = g[np.abs(idx[:, None] - idx[None, :])]
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        pass
    try:
        return np.linalg.cholesky(cov + COV_JITTER * np.eye(n_max))
    except np.linalg.LinAlgError:
        raise DomainError(
            "gamma: covariance matrix is not positive semi-definite "
            f"(Cholesky fails even with jitter {COV_JITTER:g})"
        ) from None


def _validate(family, p):
    """Return normalized parameters for ``family`` or raise DomainError."""
    if family == "iid_lognormal":
        _no_extra(p, ("mu", "sigma"))
        return {"mu": _real(p, "mu"), "sigma": _real(p, "sigma", positive=True)}
    if family == "iid_exponential":
        _no_extra(p, ("rate",))
        return {"rate": _real(p, "rate", positive=True)}
    if family == "iid_weibull":
        _no_extra(p, ("shape", "scale"))
        return {"shape": _real(p, "shape", positive=True),
                "scale": _real(p, "scale", positive=True)}
    if family == "iid_atoms":
        _no_extra(p, ("atoms",))
        atoms = p.get("atoms")
        if not isinstance(atoms, (list, tuple)) or not atoms:
            raise DomainError("atoms: must be a non-empty list of [value, prob] pairs")
        norm = []
        for i, a in enumerate(atoms):
            if isinstance(a, dict):
                a = (a.get("value"), a.get("prob"))
            if not isinstance(a, (list, tuple)) or len(a) != 2:
                raise DomainError(f"atoms[{i}]: expected a [value, prob] pair, got {a!r}")
            pair = {"value": a[0], "prob": a[1]}
            norm.append((_real(pair, "value", positive=True), _real(pair, "prob", positive=True)))
        total = sum(pr for _, pr in norm)
        if abs(total - 1.0) > ATOM_PROB_TOL:
            raise DomainError(f"atoms: probabilities must be normalized to sum to 1, got {total!r}")
        return {"atoms": tuple(norm)}
    if family in ("iid_benford", "counterexample_pairs"):
        _no_extra(p, ())
        return {}
    if family == "constant":
        _no_extra(p, ("c",))
        return {"c": _real(p, "c", positive=True)}
    if family == "gaussian_ar1":
        _no_extra(p, ("phi", "sigma", "mean"))
        q = dict(p)
        q.setdefault("mean", 0.0)
        return {"phi": _real(q, "phi", lo=-1.0, hi=1.0),
                "sigma": _real(q, "sigma", positive=True),
                "mean": _real(q, "mean")}
    if family == "gaussian_cov":
        _no_extra(p, ("gamma", "n_max"))
        gamma = p.get("gamma")
        if not isinstance(gamma, (list, tuple)) or not gamma:
            raise DomainError("gamma: must be a non-empty list of covariances")
        gamma = tuple(_real({"gamma": g}, "gamma") for g in gamma)
        n_max = p.get("n_max", len(gamma))
        if isinstance(n_max, bool) or not isinstance(n_max, int) or not 1 <= n_max <= MAX_COV_DIM:
            raise DomainError(f"n_max: must be an integer in [1, {MAX_COV_DIM}], got {n_max!r}")
        if len(gamma) > n_max:
            raise DomainError(f"gamma: has {len(gamma)} entries but n_max is {n_max}")
        if gamma[0] < 0:
            raise DomainError("gamma: gamma(1) is a variance and must be >= 0")
        return {"gamma": gamma, "n_max": n_max}
    if family == "brownian_log":
        _no_extra(p, ("times",))
        times = p.get("times")
        if not isinstance(times, (list, tuple)) or not times:
            raise DomainError("times: must be a non-empty list")
        times = tuple(_real({"times": t}, "times") for t in times)
        if times[0] < 0 or any(t1 < t0 for t0, t1 in zip(times, times[1:])):
            raise DomainError("times: must be non-negative and non-decreasing")
        return {"times": times}
    if family in ("exchangeable", "one_dependent"):
        allowed = ("kernel", "dist_u", "dist_z") if family == "exchangeable" else ("kernel", "dist_z")
        _no_extra(p, allowed)
        kernel = p.get("kernel")
        if kernel not in KERNELS:
            raise DomainError(f"kernel: must be one of {', '.join(KERNELS)}, got {kernel!r}")
        out = {"kernel": kernel}
        for key in allowed[1:]:
            if key not in p:
                raise DomainError(f"{key}: missing parameter")
            try:
                out[key] = ScalarDist.from_mapping(p[key])
            except DomainError as exc:
                raise DomainError(f"{key}.{exc}") from None
        return out
    raise DomainError(f"family: unknown generator family {family!r}")


@dataclass(frozen=True)
class GeneratorSpec:
    """A factor family, its parameters and the base ``b``.

    Parameters are validated and normalized on construction, so an existing
    spec always satisfies its family's invariants.
    """

    family: str
    params: dict = field(default_factory=dict)
    base: float = 10.0

    def __post_init__(self):
        object.__setattr__(self, "base", check_base(self.base))
        if self.family not in FAMILIES:
            raise DomainError(f"family: unknown generator family {self.family!r}")
        object.__setattr__(self, "params", _validate(self.family, dict(self.params)))
        if self.family == "gaussian_cov":
            chol = _toeplitz_cholesky(self.params["gamma"], self.params["n_max"])
            object.__setattr__(self, "_chol", chol)

    @property
    def capacity(self):
        """Maximum number of yields, or ``None`` when unbounded."""
        if self.family == "gaussian_cov":
            return self.params["n_max"]
        if self.family == "brownian_log":
            return len(self.params["times"])
        return None

    def to_mapping(self):
        """Plain-JSON form of the parameters (inverse of the scenario format)."""
        out = {"family": self.family}
        for k, v in self.params.items():
            if isinstance(v, ScalarDist):
                v = v.to_mapping()
            elif k == "atoms":
                v = [list(a) for a in v]
            elif isinstance(v, tuple):
                v = list(v)
            out[k] = v
        return out


class Stream:
    """Single-consumer iterator over ``fraclog(X_1, b), fraclog(X_2, b), ...``."""

    def __init__(self, spec, seed, source):
        self.spec = spec
        self.seed = seed
        self.capacity = spec.capacity
        self.count = 0
        self._source = source

    def __iter__(self):
        return self

    def __next__(self):
        if self.capacity is not None and self.count >= self.capacity:
            raise CapacityError(
                f"{self.spec.family} stream holds {self.capacity} values; "
                f"value {self.count + 1} requested"
            )
        self.count += 1
        return next(self._source)

    def take(self, n):
        """Next ``n`` values as a float array."""
        if self.capacity is not None and self.count + n > self.capacity:
            raise CapacityError(
                f"{self.spec.family} stream holds {self.capacity} values; "
                f"{self.count + n} requested"
            )
        out = np.fromiter((next(self._source) for _ in range(n)), dtype=float, count=n)
        self.count += n
        return out


def _log_kernel(kernel):
    if kernel == "exp_sum":
        return lambda u, z: u + z
    return lambda u, z: u * z


ANALYTIC_FAMILIES = ("iid_benford", "constant", "counterexample_pairs", "iid_atoms")


def _analytic_source(spec, rng):
    p, b = spec.params, spec.base
    fam = spec.family
    if fam == "iid_benford":
        while True:
            yield rng.uniform()
    elif fam == "constant":
        f = fraclog(p["c"], b)
        while True:
            yield f
    elif fam == "counterexample_pairs":
        while True:
            v = rng.uniform()
            yield v
            yield 0.0 if v == 0.0 else frac(1.0 - v)
    else:
        fl = [fraclog(v, b) for v, _ in p["atoms"]]
        cum = list(np.cumsum([pr for _, pr in p["atoms"]]))
        cum[-1] = 1.0
        last = len(fl) - 1
        while True:
            yield fl[min(bisect_right(cum, rng.uniform()), last)]


def _log_source(spec, rng):
    """Natural logarithms ``log X_1, log X_2, ...`` for the sampled families."""
    p = spec.params
    fam = spec.family
    if fam == "iid_lognormal":
        mu, sigma = p["mu"], p["sigma"]
        while True:
            yield mu + sigma * rng.normal()
    elif fam == "iid_exponential":
        shift = math.log(p["rate"])
        while True:
            yield math.log(-math.log(rng.uniform_open())) - shift
    elif fam == "iid_weibull":
        inv_k, shift = 1.0 / p["shape"], math.log(p["scale"])
        while True:
            yield shift + inv_k * math.log(-math.log(rng.uniform_open()))
    elif fam == "gaussian_ar1":
        phi, sigma, mean = p["phi"], p["sigma"], p["mean"]
        y = sigma / math.sqrt(1.0 - phi * phi) * rng.normal()
        while True:
            yield mean + y
            y = phi * y + sigma * rng.normal()
    elif fam == "gaussian_cov":
        chol = spec._chol
        z = np.empty(p["n_max"])
        for n in range(p["n_max"]):
            z[n] = rng.normal()
            yield float(chol[n, : n + 1] @ z[: n + 1])
    elif fam == "brownian_log":
        w, t_prev = 0.0, 0.0
        for t in p["times"]:
            w += math.sqrt(t - t_prev) * rng.normal()
            t_prev = t
            yield w
    elif fam == "exchangeable":
        g = _log_kernel(p["kernel"])
        u = p["dist_u"].draw(rng)
        dz = p["dist_z"]
        while True:
            yield g(u, dz.draw(rng))
    elif fam == "one_dependent":
        g = _log_kernel(p["kernel"])
        dz = p["dist_z"]
        z = dz.draw(rng)
        while True:
            z_next = dz.draw(rng)
            yield g(z, z_next)
            z = z_next
    else:
        raise UnsupportedFamilyError(f"{fam} emits fraclogs analytically and has no log stream")


def _reduced(logs, b):
    lnb = math.log(b)
    for v in logs:
        yield frac(v / lnb)


def log_stream(spec, seed):
    """Stream of natural logs ``log X_n``; consumes randomness exactly like :func:`make_stream`."""
    if spec.family in ANALYTIC_FAMILIES:
        raise UnsupportedFamilyError(f"{spec.family} emits fraclogs analytically and has no log stream")
    return Stream(spec, seed, _log_source(spec, Xoshiro256pp(seed)))


def make_stream(spec, seed):
    """Deterministic stream of fraclogs for ``spec`` seeded by ``seed``."""
    rng = Xoshiro256pp(seed)
    if spec.family in ANALYTIC_FAMILIES:
        return Stream(spec, seed, _analytic_source(spec, rng))
    return Stream(spec, seed, _reduced(_log_source(spec, rng), spec.base))


def gamma_of(spec, k):
    """``Cov(log X_1, log X_k)`` in natural-log units; ``gamma_of(spec, 1)`` is the variance."""
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    k = int(k)
    p = spec.params
    if spec.family == "gaussian_ar1":
        g1 = p["sigma"] ** 2 / (1.0 - p["phi"] ** 2)
        return g1 * p["phi"] ** (k - 1)
    if spec.family == "gaussian_cov":
        return p["gamma"][k - 1] if k <= len(p["gamma"]) else 0.0
    if spec.family == "iid_lognormal":
        return p["sigma"] ** 2 if k == 1 else 0.0
    raise UnsupportedFamilyError(f"gamma is defined for Gaussian families only, not {spec.family}")
