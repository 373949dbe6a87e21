"""Fractional logarithms, mantissae and the Benford measure.

Every quantity in the package is carried in the fractional-log coordinate
``{log_b x}`` in ``[0, 1)``: ``x`` is Benford in base ``b`` exactly when this
coordinate is uniform.
"""

import cmath
import math

from .errors import DomainError, PrecisionError

#: Reduced values closer than this to 1.0 are snapped to 0.0.
SNAP_TOL = 1e-12

_MAX_EXACT_LOG = 2.0**52


def check_base(b):
    """Return ``b`` as a float after checking ``b > 1``."""
    try:
        b = float(b)
    except (TypeError, ValueError):
        raise DomainError(f"base must be a real number, got {b!r}") from None
    if not math.isfinite(b) or b <= 1.0:
        raise DomainError(f"base must exceed 1, got {b!r}")
    return b


def check_harmonic(h):
    if isinstance(h, bool) or int(h) != h or h < 1:
        raise DomainError(f"harmonic must be a positive integer, got {h!r}")
    return int(h)


def _log_b(x, b):
    if b == 10.0:
        return math.log10(x)
    if b == 2.0:
        return math.log2(x)
    return math.log(x) / math.log(b)


def frac(t):
    """Fractional part of ``t`` reduced to ``[0, 1)`` with snapping near 1."""
    r = t - math.floor(t)
    if r >= 1.0 - SNAP_TOL:
        r = 0.0
    return r


def circle_distance(a, b):
    """Distance between ``a`` and ``b`` as points of the circle ``R/Z``."""
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def fraclog(x, b):
    """Return ``{log_b x}``, the fractional part of the base-``b`` logarithm.

    Raises :class:`DomainError` for non-positive or non-finite ``x`` and
    :class:`PrecisionError` when ``|log_b x|`` exceeds ``2**52`` (no
    fractional digits survive in double precision).
    """
    b = check_base(b)
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"fraclog needs a positive finite argument, got {x!r}")
    t = _log_b(x, b)
    if abs(t) > _MAX_EXACT_LOG:
        raise PrecisionError(f"|log_b x| = {abs(t):g} exceeds 2**52")
    return frac(t)


def mantissa(x, b):
    """Return the unique ``m`` in ``[1, b)`` with ``x = m * b**k`` for an integer ``k``."""
    b = check_base(b)
    m = b ** fraclog(x, b)
    # b**f may round up to b for f just below 1
    return 1.0 if m >= b else m


def benford_cdf(a, b):
    """Benford measure of ``[1, a)``, i.e. ``log_b a``."""
    b = check_base(b)
    a = float(a)
    if not 1.0 <= a <= b:
        raise DomainError(f"benford_cdf needs 1 <= a <= b, got a={a!r}, b={b!r}")
    if a == b:
        return 1.0
    return _log_b(a, b)


def _integer_base(b):
    b = check_base(b)
    if b != math.floor(b):
        raise DomainError(f"digit probabilities need an integer base, got {b!r}")
    return int(b)


def first_digit_prob(d, b):
    """Probability ``log_b(1 + 1/d)`` that the leading base-``b`` digit is ``d``."""
    ib = _integer_base(b)
    if isinstance(d, bool) or int(d) != d or not 1 <= d <= ib - 1:
        raise DomainError(f"digit must be an integer in [1, {ib - 1}], got {d!r}")
    return _log_b(1.0 + 1.0 / int(d), float(ib))


def first_digit_probs(b):
    """Benford first-digit probabilities for digits ``1 .. b-1``."""
    ib = _integer_base(b)
    return [first_digit_prob(d, ib) for d in range(1, ib)]


def unit_phase(h, f):
    """``exp(2*pi*i*h*f)``, the harmonic-``h`` character evaluated at ``f``."""
    h = check_harmonic(h)
    # reduce h*f first so the phase argument stays in [0, 1)
    return cmath.exp(2j * math.pi * ((h * f) % 1.0))
