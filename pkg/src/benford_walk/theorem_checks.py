"""Finite-sample verdicts for the convergence conditions on product walks.

No finite computation proves a limit.  Each check evaluates its condition on
a doubling ladder and reads the trend: decay ratios below ``DECAY_RATIO``
count as convergence, growth ratios above ``1 + GROWTH_TOL`` as divergence,
and anything ambiguous is reported as ``inconclusive``.
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .errors import DomainError, UnsupportedFamilyError
from .generators import (
    GAUSSIAN_FAMILIES,
    GeneratorSpec,
    derive_seed,
    gamma_of,
    make_stream,
)
from .mantissa_core import check_base, check_harmonic, circle_distance, frac, fraclog
from .parallel import map_replicas
from .product_walk import accumulate_fraclogs, phases
from .rng import Xoshiro256pp
from .statistics import (
    EnsembleFourier,
    ensemble_points,
    fourier_from_points,
    ks_threshold,
    ks_to_benford,
)

HOLDS, FAILS, INCONCLUSIVE = "holds", "fails", "inconclusive"
DECAY_RATIO = 0.75
GROWTH_TOL = 1e-3
CESARO_TOL = 0.05
LATTICE_TOL = 1e-9
LATTICE_H = 32
BOUND_SLACK = 1e-9
POINTWISE_TOL = 1e-12


@dataclass
class Verdict:
    name: str
    status: str
    evidence: list = field(default_factory=list)
    tolerance: float = 0.0

    def __post_init__(self):
        if self.status not in (HOLDS, FAILS, INCONCLUSIVE):
            raise ValueError(f"bad verdict status {self.status!r}")
        if self.status == INCONCLUSIVE and not self.evidence:
            raise ValueError("an inconclusive verdict must carry evidence")

    def to_json(self):
        return {
            "name": self.name,
            "status": self.status,
            "evidence": [{"label": str(k), "value": _num(v)} for k, v in self.evidence],
            "tolerance": _num(self.tolerance),
        }


def _num(v):
    if isinstance(v, (bool, np.bool_)):
        return int(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    return float(v)


# -- Cesaro condition ----------------------------------------------------------

def cesaro_fourier(ensemble, L):
    """``(1/L) sum_{l<=L}`` of the ensemble estimates of ``E e_h(log_b Y_l)``."""
    n = np.asarray(ensemble.n)
    est = np.asarray(ensemble.estimate)
    pos = {int(k): i for i, k in enumerate(n.tolist())}
    missing = [l for l in range(1, L + 1) if l not in pos]
    if missing:
        raise DomainError(f"ensemble lacks indices {missing[:5]} needed for L={L}")
    idx = [pos[l] for l in range(1, L + 1)]
    return complex(np.mean(est[idx]))


def _cesaro_stderr(ensemble, L):
    pos = {int(k): i for i, k in enumerate(np.asarray(ensemble.n).tolist())}
    se = np.asarray(ensemble.stderr)
    # std of an average is at most the average std, whatever the correlations
    return float(np.mean(se[[pos[l] for l in range(1, L + 1)]]))


def cesaro_verdict(ensemble, L0=16, rungs=3, tol=CESARO_TOL):
    """Read the Cesaro means on the ladder ``L0, 2 L0, 4 L0, ...``."""
    ladder = [L0 * 2**k for k in range(rungs)]
    mags = [abs(cesaro_fourier(ensemble, L)) for L in ladder]
    threshold = tol + 3.0 * _cesaro_stderr(ensemble, ladder[-1])
    evidence = [("h", ensemble.harmonic)]
    evidence += [(f"abs_cesaro_L{L}", m) for L, m in zip(ladder, mags)]
    evidence.append(("threshold", threshold))
    if mags[-1] <= threshold:
        status = HOLDS
    elif mags[-1] < DECAY_RATIO * mags[0]:
        status = INCONCLUSIVE
    else:
        status = FAILS
    return Verdict("cesaro_fourier", status, evidence, tol)


# -- Summability of E|T_N|^p / N -----------------------------------------------

def weyl_moments(spec, h_list, p, N_max, M, master, threads=None):
    """Monte Carlo ``E|T_N^(h)|^p`` for ``N = 1..N_max``; dict keyed by ``h``."""
    hs = [check_harmonic(h) for h in h_list]
    inv_n = 1.0 / np.arange(1, N_max + 1)

    def one(i):
        pts = accumulate_fraclogs(make_stream(spec, derive_seed(master, i)).take(N_max))
        return [np.abs(np.cumsum(phases(pts, h)) * inv_n) ** p for h in hs]

    rows = map_replicas(one, M, threads)
    return {h: np.mean(np.vstack([r[j] for r in rows]), axis=0) for j, h in enumerate(hs)}


def doubling_ladder(n_max, start=1):
    ladder = []
    k = start
    while k <= n_max:
        ladder.append(k)
        k *= 2
    return ladder


@dataclass(frozen=True)
class DelvResult:
    harmonic: int
    p: float
    ladder: list
    partial_sums: list
    moments: np.ndarray
    verdict: Verdict


def delv_partial_sums_from_moments(moments, ladder):
    """Partial sums ``sum_{N<=K} moments[N-1] / N`` at each ``K`` of ``ladder``."""
    moments = np.asarray(moments, dtype=float)
    terms = moments / np.arange(1, moments.size + 1)
    csum = np.cumsum(terms)
    return [float(csum[K - 1]) for K in ladder]


def delv_verdict(ladder, sums, h, p):
    incs = np.diff(sums)
    evidence = [("h", h), ("p", p)] + [(f"partial_sum_K{K}", s) for K, s in zip(ladder, sums)]
    # skip the first few rungs, which are dominated by the N=1 term
    usable = incs[2:] if incs.size > 3 else incs
    if usable.size < 2 or usable[0] <= 0:
        evidence.append(("usable_increments", usable.size))
        return Verdict("delv_series", INCONCLUSIVE, evidence, DECAY_RATIO)
    ratio = float((usable[-1] / usable[0]) ** (1.0 / (usable.size - 1)))
    evidence.append(("mean_increment_ratio", ratio))
    status = HOLDS if ratio < DECAY_RATIO else INCONCLUSIVE
    return Verdict("delv_series", status, evidence, DECAY_RATIO)


def delv_partial_sums(spec, h, p=2.0, N_max=256, M=100, master=0, *, moments=None, threads=None):
    """Partial sums of ``sum_N E|T_N^(h)|^p / N`` on a doubling ladder.

    ``moments`` bypasses the simulation with known values of ``E|T_N|^p``.
    The verdict is ``holds`` when the ladder increments shrink geometrically
    and ``inconclusive`` otherwise; divergence cannot be certified.
    """
    h = check_harmonic(h)
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    if N_max < 16:
        raise DomainError(f"N_max must be >= 16, got {N_max}")
    if moments is None:
        moments = weyl_moments(spec, [h], p, N_max, M, master, threads)[h]
    moments = np.asarray(moments, dtype=float)[:N_max]
    ladder = doubling_ladder(N_max)
    sums = delv_partial_sums_from_moments(moments, ladder)
    return DelvResult(h, p, ladder, sums, moments, delv_verdict(ladder, sums, h, p))


# -- Gaussian log-factors --------------------------------------------------------

def gaussian_variance_growth(spec, n):
    """``Var(log Y_n) = n g(1) + 2 sum_{k=2}^{n} (n-k+1) g(k)`` for Gaussian families.

    ``g(1)`` is the variance of ``log X_1`` and ``g(k)`` the lag ``k-1``
    covariance.  ``brownian_log`` is handled through ``Cov = min(t_k, t_l)``.
    """
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    n = int(n)
    if spec.family == "brownian_log":
        t = np.asarray(spec.params["times"][:n])
        if t.size < n:
            raise DomainError(f"brownian_log has only {t.size} times")
        return float(np.sum(np.minimum(t[:, None], t[None, :])))
    if spec.family not in GAUSSIAN_FAMILIES:
        raise UnsupportedFamilyError(f"variance growth needs a Gaussian family, not {spec.family}")
    if spec.family == "gaussian_ar1":
        g1 = gamma_of(spec, 1)
        phi = spec.params["phi"]
        gam = g1 * phi ** np.arange(n)
    else:
        gam = np.array([gamma_of(spec, k) for k in range(1, n + 1)])
    weights = np.arange(n, 0, -1, dtype=float)  # n, n-1, ..., 1
    return float(weights[0] * gam[0] + 2.0 * np.dot(weights[1:], gam[1:]))


def variance_growth_verdict(spec, n0=16, rungs=5, tol=GROWTH_TOL):
    ladder = [n0 * 2**k for k in range(rungs)]
    if spec.family == "brownian_log":
        ladder = [n for n in ladder if n <= len(spec.params["times"])] or [len(spec.params["times"])]
    vs = [gaussian_variance_growth(spec, n) for n in ladder]
    ratios = [v2 / v1 if v1 > 0 else math.inf for v1, v2 in zip(vs, vs[1:])]
    evidence = [(f"V_{n}", v) for n, v in zip(ladder, vs)]
    evidence += [(f"ratio_{n2}_{n1}", r) for n1, n2, r in zip(ladder, ladder[1:], ratios)]
    if not ratios:
        return Verdict("gaussian_variance_growth", INCONCLUSIVE, evidence, tol)
    if all(r >= 1.0 + tol for r in ratios):
        status = HOLDS
    elif ratios[-1] < 1.0 + tol:
        status = FAILS
    else:
        status = INCONCLUSIVE
    return Verdict("gaussian_variance_growth", status, evidence, tol)


def gaussian_fourier_magnitude(h, V_n, b):
    """``|E e_h(log_b Y_n)| = exp(-2 pi^2 h^2 V_n / ln(b)^2)`` when ``log Y_n`` is Gaussian."""
    h = check_harmonic(h)
    b = check_base(b)
    if V_n < 0:
        raise DomainError(f"variance must be >= 0, got {V_n}")
    return math.exp(-2.0 * math.pi**2 * h * h * V_n / math.log(b) ** 2)


def _char_abs(dist, t):
    """``|E exp(i t Z)|`` for a scalar distribution."""
    p = dist.params
    if dist.kind == "normal":
        return math.exp(-0.5 * (p["sigma"] * t) ** 2)
    if dist.kind == "uniform":
        half = 0.5 * t * (p["hi"] - p["lo"])
        return 1.0 if half == 0 else abs(math.sin(half) / half)
    return 1.0 / math.sqrt(1.0 + (t / p["rate"]) ** 2)


def _gamma_one_plus_it_abs(t):
    """``|Gamma(1 + i t)| = sqrt(pi t / sinh(pi t))``."""
    if t == 0:
        return 1.0
    x = math.pi * t
    # sinh overflows for large x; work in logs
    return math.exp(0.5 * (math.log(x) - (x + math.log1p(-math.exp(-2 * x)) - math.log(2))))


def analytic_fourier_abs(spec, h, n):
    """Closed-form ``|E e_h(log_b Y_n)|`` when one is known, else ``None``."""
    h = check_harmonic(h)
    b, p, fam = spec.base, spec.params, spec.family
    t = 2.0 * math.pi * h / math.log(b)
    if fam == "constant":
        return 1.0
    if fam == "iid_benford":
        return 0.0
    if fam == "counterexample_pairs":
        return 1.0 if n % 2 == 0 else 0.0
    if fam == "iid_atoms":
        c = sum(pr * complex(np.exp(2j * np.pi * frac(h * fraclog(v, b)))) for v, pr in p["atoms"])
        return min(abs(c), 1.0) ** n
    if fam in GAUSSIAN_FAMILIES or fam == "brownian_log":
        if fam == "brownian_log" and n > len(p["times"]):
            return None
        return gaussian_fourier_magnitude(h, gaussian_variance_growth(spec, n), b)
    if fam == "iid_exponential":
        return _gamma_one_plus_it_abs(t) ** n
    if fam == "iid_weibull":
        return _gamma_one_plus_it_abs(t / p["shape"]) ** n
    if fam == "exchangeable" and p["kernel"] == "exp_sum":
        return _char_abs(p["dist_u"], n * t) * _char_abs(p["dist_z"], t) ** n
    if fam == "one_dependent" and p["kernel"] == "exp_sum":
        # log Y_n = Z_1 + 2 Z_2 + ... + 2 Z_n + Z_{n+1}
        dz = p["dist_z"]
        return _char_abs(dz, t) ** 2 * _char_abs(dz, 2 * t) ** (n - 1)
    return None


# -- Lattice support of atomic factors -------------------------------------------

@dataclass(frozen=True)
class LatticeResult:
    h: int
    lattice: bool
    offset: float | None = None
    zero_offset: bool = False


def lattice_support_test(atoms, b, H=LATTICE_H, tol=LATTICE_TOL):
    """Per-harmonic test whether ``atoms`` sit on ``{b^(a + z/h)}``.

    For each ``h <= H`` the values ``{h fraclog(x_i)}`` are compared on the
    circle; when they coincide within ``tol`` the atoms lie on a lattice with
    offset ``a = {h fraclog(x_1)} / h`` in ``h``-scaled units, reported as the
    common value.  Zero offset is the lattice ``{b^(z/h)}``.
    """
    b = check_base(b)
    if not atoms:
        raise DomainError("atoms must be non-empty")
    if H < 1:
        raise DomainError(f"H must be >= 1, got {H}")
    fl = [fraclog(x, b) for x in atoms]
    out = []
    for h in range(1, H + 1):
        vals = [frac(h * f) for f in fl]
        ref = vals[0]
        if all(circle_distance(v, ref) <= tol for v in vals):
            zero = circle_distance(ref, 0.0) <= tol
            out.append(LatticeResult(h, True, 0.0 if zero else ref, zero))
        else:
            out.append(LatticeResult(h, False))
    return out


def lattice_verdicts(atoms, b, H=LATTICE_H, tol=LATTICE_TOL):
    """Verdicts for i.i.d. atomic factors.

    ``lattice_as_benford`` holds when no ``{b^(z/h)}`` lattice carries the
    atoms (a.s. Benford products); ``lattice_tends_benford`` holds when no
    shifted lattice does (weak convergence of the mantissa law).
    """
    res = lattice_support_test(atoms, b, H, tol)
    hits = [r for r in res if r.lattice]
    zero_hits = [r for r in hits if r.zero_offset]
    ev_any = [("H", H), ("lattice_count", len(hits))] + [(f"lattice_h{r.h}_offset", r.offset) for r in hits[:8]]
    ev_zero = [("H", H), ("zero_offset_count", len(zero_hits))] + [(f"zero_lattice_h{r.h}", 1) for r in zero_hits[:8]]
    return [
        Verdict("lattice_as_benford", FAILS if zero_hits else HOLDS, ev_zero, tol),
        Verdict("lattice_tends_benford", FAILS if hits else HOLDS, ev_any, tol),
    ]


# -- Bounded densities ----------------------------------------------------------

@dataclass(frozen=True)
class PiecewiseDensity:
    """Piecewise-constant probability density on ``[0, 1)``."""

    breakpoints: tuple
    heights: tuple

    def __post_init__(self):
        t = np.asarray(self.breakpoints, dtype=float)
        hgt = np.asarray(self.heights, dtype=float)
        if t.ndim != 1 or t.size < 2 or hgt.size != t.size - 1:
            raise DomainError("density needs m+1 breakpoints and m heights")
        if t[0] != 0.0 or t[-1] != 1.0 or np.any(np.diff(t) <= 0):
            raise DomainError("breakpoints must increase strictly from 0 to 1")
        if np.any(hgt < 0) or not np.all(np.isfinite(hgt)):
            raise DomainError("heights must be finite and non-negative")
        mass = float(np.dot(hgt, np.diff(t)))
        if abs(mass - 1.0) > 1e-12:
            raise DomainError(f"density must integrate to 1, got {mass!r}")
        object.__setattr__(self, "breakpoints", tuple(t.tolist()))
        object.__setattr__(self, "heights", tuple(hgt.tolist()))

    @property
    def sup(self):
        return max(self.heights)

    def fourier(self, h):
        """Exact ``E e_h(Z)`` by integrating each constant piece in closed form."""
        h = check_harmonic(h)
        t = np.asarray(self.breakpoints)
        e = np.exp(2j * np.pi * h * t)
        return complex(np.sum(np.asarray(self.heights) * (e[1:] - e[:-1])) / (2j * np.pi * h))


def density_bound(a):
    """Uniform bound ``sqrt(1 - 1/(4 a^2))`` on Fourier coefficients of a density capped by ``a``."""
    return math.sqrt(1.0 - 1.0 / (4.0 * a * a))


def density_fourier_bound_check(density, h_max):
    if h_max < 1:
        raise DomainError(f"h_max must be >= 1, got {h_max}")
    a = density.sup
    bound = density_bound(a)
    coeffs = [abs(density.fourier(h)) for h in range(1, h_max + 1)]
    worst = int(np.argmax(coeffs)) + 1
    ok = all(c <= bound + BOUND_SLACK for c in coeffs)
    evidence = [("a", a), ("bound", bound), ("max_abs_coefficient", max(coeffs)), ("argmax_h", worst)]
    return Verdict("density_fourier_bound", HOLDS if ok else FAILS, evidence, BOUND_SLACK)


def unimodal_mantissa_bound(d_n, b):
    """Cap ``(1 + 2 d_n) / ln b`` on the mantissa density when ``log_b X_n`` is unimodal with sup ``d_n``."""
    if d_n <= 0:
        raise DomainError(f"d_n must be > 0, got {d_n}")
    return (1.0 + 2.0 * d_n) / math.log(check_base(b))


def log_density_sup(spec):
    """Supremum of the density of ``log_b X`` for the unimodal i.i.d. families."""
    lnb = math.log(spec.base)
    p = spec.params
    if spec.family == "iid_lognormal":
        return lnb / (p["sigma"] * math.sqrt(2.0 * math.pi))
    if spec.family == "iid_exponential":
        return lnb / math.e
    if spec.family == "iid_weibull":
        return p["shape"] * lnb / math.e
    raise UnsupportedFamilyError(f"no unimodal log-density for {spec.family}")


def unimodal_verdict(spec, h_list):
    """Check analytic ``|E e_h(log_b X_1)|`` against the bound implied by a unimodal log-density."""
    d = log_density_sup(spec)
    a = 1.0 + 2.0 * d  # cap on the density of {log_b X}
    bound = density_bound(a)
    evidence = [("d", d), ("mantissa_density_cap", unimodal_mantissa_bound(d, spec.base)),
                ("fraclog_density_cap", a), ("bound", bound)]
    ok = True
    for h in h_list:
        c = analytic_fourier_abs(spec, h, 1)
        evidence.append((f"abs_fourier_h{h}", c))
        ok = ok and c <= bound + BOUND_SLACK
    return Verdict("unimodal_fourier_bound", HOLDS if ok else FAILS, evidence, BOUND_SLACK)


# -- Invariance catalogue ---------------------------------------------------------

INVARIANCE_MODES = ("scale", "power", "product", "hill_base")


def with_base(spec, b):
    """Copy of ``spec`` read in base ``b``."""
    params = {k: v for k, v in spec.to_mapping().items() if k != "family"}
    return GeneratorSpec(spec.family, params, b)


def _benford_sample(source, M, seed):
    return make_stream(source, seed).take(M)


def invariance_suite(mode, params, M, master, threads=None):
    """Monte Carlo check of one invariance property of Benford variables.

    ``params`` holds ``base`` plus the mode's parameter: ``lambda`` (scale),
    ``m`` (power), ``second`` (product, a GeneratorSpec for the other factor)
    or ``n`` (hill_base).  ``source`` optionally replaces the ``iid_benford``
    factor.  The KS threshold is the 1% Kolmogorov critical value.
    """
    if mode not in INVARIANCE_MODES:
        raise DomainError(f"mode must be one of {', '.join(INVARIANCE_MODES)}, got {mode!r}")
    b = check_base(params.get("base", 10.0))
    source = params.get("source") or GeneratorSpec("iid_benford", {}, b)
    if M < 10:
        raise DomainError(f"M must be >= 10, got {M}")
    f = _benford_sample(source, M, derive_seed(master, 0))
    thr = ks_threshold(M)
    evidence = []

    if mode == "scale":
        lam = params.get("lambda")
        if lam is None or not lam > 0:
            raise DomainError(f"lambda must be > 0, got {lam!r}")
        shifted = np.mod(fraclog(lam, b) + f, 1.0)
        ks = ks_to_benford(shifted)
        worst = _scale_pointwise_error(b, 1000, derive_seed(master, 2))
        evidence += [("lambda", lam), ("ks_base_sample", ks_to_benford(f)), ("ks", ks),
                     ("threshold", thr), ("pointwise_max_error", worst)]
        ok = ks <= thr and worst <= POINTWISE_TOL
    elif mode == "power":
        m = params.get("m")
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise DomainError(f"m must be an integer >= 1, got {m!r}")
        ks = ks_to_benford(np.mod(m * f, 1.0))
        evidence += [("m", m), ("ks", ks), ("threshold", thr)]
        ok = ks <= thr
    elif mode == "product":
        second = params.get("second")
        if not isinstance(second, GeneratorSpec):
            raise DomainError("second must be a generator spec for the other factor")
        if second.base != b:
            second = with_base(second, b)
        g = make_stream(second, derive_seed(master, 1)).take(M)
        ks = ks_to_benford(np.mod(f + g, 1.0))
        evidence += [("ks_second_factor", ks_to_benford(g)), ("ks", ks), ("threshold", thr)]
        ok = ks <= thr
    else:
        n = params.get("n")
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise DomainError(f"n must be an integer >= 1, got {n!r}")
        root = b ** (1.0 / n)
        direct = np.array([fraclog(x, root) for x in np.power(b, f)])
        via_power = np.mod(n * f, 1.0)
        gap = max(circle_distance(u, v) for u, v in zip(direct.tolist(), via_power.tolist()))
        ks = ks_to_benford(via_power)
        evidence += [("n", n), ("ks", ks), ("threshold", thr), ("root_base_max_gap", gap)]
        ok = ks <= thr and gap <= 1e-9
    return Verdict(f"invariance_{mode}", HOLDS if ok else FAILS, evidence, thr)


def _scale_pointwise_error(b, count, seed):
    """Largest circle distance between ``fraclog(lx)`` and ``{fraclog l + fraclog x}``."""
    rng = Xoshiro256pp(seed)
    worst = 0.0
    for _ in range(count):
        lam = math.exp(60.0 * rng.uniform() - 30.0)
        x = math.exp(60.0 * rng.uniform() - 30.0)
        lhs = fraclog(lam * x, b)
        rhs = frac(fraclog(lam, b) + fraclog(x, b))
        worst = max(worst, circle_distance(lhs, rhs))
    return worst


def base_change_ks(f, b, other_base):
    """KS to uniform of ``{log_c X}`` for ``X = b^f``, i.e. the sample read in base ``c``."""
    x = np.power(check_base(b), np.asarray(f, dtype=float))
    return ks_to_benford(np.array([fraclog(v, other_base) for v in x.tolist()]))


# -- Family dispatch for the `check` command --------------------------------------

def applicable_checks(spec, harmonics, M, master, *, p=2.0, L0=16, delv_N_max=256,
                      H=LATTICE_H, lattice_tol=LATTICE_TOL, cesaro_tol=CESARO_TOL, threads=None):
    """All verdicts that apply to ``spec``'s family, in a fixed order."""
    verdicts = []
    L_max = 4 * L0
    fam = spec.family
    capacity = spec.capacity
    if capacity is not None:
        L_max = min(L_max, capacity)
        delv_N_max = min(delv_N_max, capacity)
    if L_max >= L0 * 4:
        pts = ensemble_points(spec, list(range(1, L_max + 1)), M, master, threads)
        n_arr = np.arange(1, L_max + 1)
        for h in harmonics:
            est, se = fourier_from_points(pts, h)
            verdicts.append(cesaro_verdict(EnsembleFourier(h, n_arr, est, se, M), L0, 3, cesaro_tol))
    if delv_N_max >= 16:
        moments = weyl_moments(spec, harmonics, p, delv_N_max, M, derive_seed(master, 1 << 32), threads)
        for h in harmonics:
            verdicts.append(delv_partial_sums(spec, h, p, delv_N_max, M, master, moments=moments[h]).verdict)
    if fam in GAUSSIAN_FAMILIES or fam == "brownian_log":
        verdicts.append(variance_growth_verdict(spec))
    if fam in ("iid_lognormal", "iid_exponential", "iid_weibull"):
        verdicts.append(unimodal_verdict(spec, harmonics))
    if fam == "iid_atoms":
        verdicts += lattice_verdicts([v for v, _ in spec.params["atoms"]], spec.base, H, lattice_tol)
    if fam == "constant":
        verdicts += lattice_verdicts([spec.params["c"]], spec.base, H, lattice_tol)
    return verdicts
