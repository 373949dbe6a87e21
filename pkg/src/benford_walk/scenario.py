"""Strict JSON scenario documents."""

from dataclasses import dataclass, field
import json
import math

from .errors import ConfigError, DomainError
from .generators import GeneratorSpec
from .theorem_checks import (
    CESARO_TOL,
    INVARIANCE_MODES,
    LATTICE_H,
    LATTICE_TOL,
    PiecewiseDensity,
)

DEFAULT_HARMONICS = (1, 2, 3)
DEFAULT_REPLICAS = 100

REQUIRED = ("base", "seed", "length", "generator")
OPTIONAL = ("trajectories", "harmonics", "p", "cesaro_L0", "cesaro_tol", "delv_N_max",
            "lattice_H", "lattice_tol", "fourier_n", "invariance", "density", "h_max")


@dataclass
class Scenario:
    base: float
    seed: int
    length: int
    generator: GeneratorSpec
    trajectories: int = DEFAULT_REPLICAS
    harmonics: tuple = DEFAULT_HARMONICS
    p: float = 2.0
    cesaro_L0: int = 16
    cesaro_tol: float = CESARO_TOL
    delv_N_max: int = 256
    lattice_H: int = LATTICE_H
    lattice_tol: float = LATTICE_TOL
    fourier_n: tuple | None = None
    invariance: dict | None = None
    density: PiecewiseDensity | None = None
    h_max: int = 16
    raw: dict = field(default_factory=dict, repr=False)

    def fourier_indices(self):
        return self.fourier_n if self.fourier_n is not None else tuple(range(1, self.length + 1))


def _reject_duplicates(pairs):
    out = {}
    for k, v in pairs:
        if k in out:
            raise ConfigError("duplicate key", k)
        out[k] = v
    return out


def _nonfinite(name):
    # let the per-key validators reject it so the message names the key
    return float(name)


def _int(doc, key, lo=None, hi=None):
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"must be an integer, got {v!r}", key)
    if lo is not None and v < lo:
        raise ConfigError(f"must be >= {lo}, got {v}", key)
    if hi is not None and v > hi:
        raise ConfigError(f"must be <= {hi}, got {v}", key)
    return v


def _real(doc, key, positive=False):
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"must be a finite number, got {v!r}", key)
    if positive and v <= 0:
        raise ConfigError(f"must be > 0, got {v!r}", key)
    return float(v)


def _generator(obj, base, key):
    if not isinstance(obj, dict):
        raise ConfigError("must be an object with a 'family' key", key)
    if "family" not in obj:
        raise ConfigError("missing 'family'", key)
    params = {k: v for k, v in obj.items() if k != "family"}
    try:
        return GeneratorSpec(obj["family"], params, base)
    except DomainError as exc:
        raise ConfigError(str(exc), key) from None


def _invariance(obj, base):
    if not isinstance(obj, dict) or obj.get("mode") not in INVARIANCE_MODES:
        raise ConfigError(f"needs 'mode' in {', '.join(INVARIANCE_MODES)}", "invariance.mode")
    mode = obj["mode"]
    allowed = {"scale": "lambda", "power": "m", "product": "second", "hill_base": "n"}[mode]
    extra = sorted(set(obj) - {"mode", allowed})
    if extra:
        raise ConfigError("unknown key", f"invariance.{extra[0]}")
    if allowed not in obj:
        raise ConfigError(f"missing for mode {mode!r}", f"invariance.{allowed}")
    out = {"mode": mode}
    if mode == "scale":
        out["lambda"] = _real({"invariance.lambda": obj["lambda"]}, "invariance.lambda", positive=True)
    elif mode == "product":
        out["second"] = _generator(obj["second"], base, "invariance.second")
    else:
        out[allowed] = _int({f"invariance.{allowed}": obj[allowed]}, f"invariance.{allowed}", lo=1)
    return out


def _density(obj):
    if not isinstance(obj, dict) or set(obj) != {"breakpoints", "heights"}:
        raise ConfigError("must be an object with exactly 'breakpoints' and 'heights'", "density")
    try:
        return PiecewiseDensity(tuple(obj["breakpoints"]), tuple(obj["heights"]))
    except (DomainError, TypeError, ValueError) as exc:
        raise ConfigError(str(exc), "density") from None


def parse_scenario(text):
    """Parse and validate a scenario document, filling defaults.

    Raises :class:`ConfigError` naming the offending key.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_reject_duplicates, parse_constant=_nonfinite)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ConfigError("scenario must be a JSON object")
    unknown = sorted(set(doc) - set(REQUIRED) - set(OPTIONAL))
    if unknown:
        raise ConfigError("unknown top-level key", unknown[0])
    for key in REQUIRED:
        if key not in doc:
            raise ConfigError("missing required key", key)

    base = _real(doc, "base")
    if base <= 1.0:
        raise ConfigError(f"base must exceed 1, got {doc['base']!r}", "base")
    seed = _int(doc, "seed", lo=0, hi=(1 << 64) - 1)
    length = _int(doc, "length", lo=1)
    kw = {}
    if "trajectories" in doc:
        kw["trajectories"] = _int(doc, "trajectories", lo=1)
    if "harmonics" in doc:
        hs = doc["harmonics"]
        if not isinstance(hs, list) or not hs:
            raise ConfigError("must be a non-empty list of positive integers", "harmonics")
        for i, h in enumerate(hs):
            if isinstance(h, bool) or not isinstance(h, int) or h < 1:
                raise ConfigError(f"must be a positive integer, got {h!r}", f"harmonics[{i}]")
        if len(set(hs)) != len(hs):
            raise ConfigError("harmonics must be distinct", "harmonics")
        kw["harmonics"] = tuple(hs)
    if "p" in doc:
        kw["p"] = _real(doc, "p")
        if kw["p"] < 1:
            raise ConfigError(f"must be >= 1, got {kw['p']}", "p")
    for key, lo in (("cesaro_L0", 1), ("delv_N_max", 16), ("lattice_H", 1), ("h_max", 1)):
        if key in doc:
            kw[key] = _int(doc, key, lo=lo)
    for key in ("cesaro_tol", "lattice_tol"):
        if key in doc:
            kw[key] = _real(doc, key, positive=True)
    if "fourier_n" in doc:
        ns = doc["fourier_n"]
        if not isinstance(ns, list) or not ns or any(
            isinstance(n, bool) or not isinstance(n, int) or n < 1 for n in ns
        ):
            raise ConfigError("must be a non-empty list of positive integers", "fourier_n")
        kw["fourier_n"] = tuple(ns)

    generator = _generator(doc["generator"], base, "generator")
    if "invariance" in doc:
        kw["invariance"] = _invariance(doc["invariance"], base)
    if "density" in doc:
        kw["density"] = _density(doc["density"])
    return Scenario(base=base, seed=seed, length=length, generator=generator, raw=doc, **kw)

