"""Scalar special functions used by the correlation kernel and the
dipole mutual-impedance closed forms.

Only four functions are provided: ``sinc``, ``rect``, ``sine_integral``
(Si) and ``cosine_integral`` (Ci).  Si and Ci are evaluated with a
Maclaurin series for small arguments and a complex continued fraction
for the exponential integral E1(ix) beyond that; the branch point is
chosen so both evaluations agree to better than 1e-11.
"""

import cmath
import math

from .errors import DomainError

EULER_GAMMA = 0.577215664901532860606512090082

# Series/continued-fraction crossover.  The alternating Maclaurin series
# still carries ~13 significant digits here and the continued fraction
# converges in a few dozen terms.
_SERIES_LIMIT = 6.0
_CF_MAX_ITER = 200
_EPS = 1e-16


def sinc(x: float) -> float:
    """Normalized sinc, sin(pi x) / (pi x), with sinc(0) = 1.

    Parameters
    ----------
    x : float
        Dimensionless argument.

    Returns
    -------
    float
        sin(pi x) / (pi x); exactly 1.0 at x = 0.
    """
    x = _require_finite(x)
    if x == 0.0:
        return 1.0
    px = math.pi * x
    return math.sin(px) / px


def rect(x: float) -> int:
    """Rectangle (boxcar) function: 1 for |x| <= 1/2, else 0.

    The boundary |x| = 1/2 maps to 1 so that points exactly on the
    propagating/evanescent circle classify as propagating.
    """
    x = _require_finite(x)
    return 1 if abs(x) <= 0.5 else 0


def sine_integral(x: float) -> float:
    """Sine integral Si(x) = integral of sin(t)/t from 0 to x.

    Odd in x; accurate to ~1e-12 absolute for |x| <= 100.
    """
    x = _require_finite(x)
    if x < 0.0:
        return -sine_integral(-x)
    if x == 0.0:
        return 0.0
    if x < _SERIES_LIMIT:
        return _si_series(x)
    ci, si = _cisi_continued_fraction(x)
    return si


def cosine_integral(x: float) -> float:
    """Cosine integral Ci(x) = gamma + ln(x) + integral of (cos(t)-1)/t.

    Defined for x > 0 only (logarithmic singularity at the origin);
    accurate to ~1e-12 absolute for x <= 100.
    """
    x = _require_finite(x)
    if x <= 0.0:
        raise DomainError(f"cosine_integral requires x > 0, got {x}")
    if x < _SERIES_LIMIT:
        return EULER_GAMMA + math.log(x) - _cin_series(x)
    ci, si = _cisi_continued_fraction(x)
    return ci


def _require_finite(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"argument must be finite, got {x}")
    return x


def _si_series(x: float) -> float:
    """Maclaurin series sum (-1)^n x^(2n+1) / ((2n+1)(2n+1)!)."""
    x2 = x * x
    t = x  # sine-series term x^(2n+1)/(2n+1)!
    total = x
    for n in range(1, 201):
        k = 2 * n + 1
        t *= -x2 / ((k - 1) * k)
        c = t / k
        total += c
        if abs(c) <= _EPS * abs(total):
            break
    return total


def _cin_series(x: float) -> float:
    """Entire part Cin(x) = sum (-1)^(n+1) x^(2n) / (2n (2n)!)."""
    x2 = x * x
    u = x2 / 2.0  # cosine-series term x^(2n)/(2n)!
    total = u / 2.0
    for n in range(2, 201):
        k = 2 * n
        u *= -x2 / ((k - 1) * k)
        c = u / k
        total += c
        if abs(c) <= _EPS * abs(total):
            break
    return total


def _cisi_continued_fraction(x: float) -> tuple[float, float]:
    """Ci(x) and Si(x) for x >= ~2 via the Lentz continued fraction for
    the exponential integral at imaginary argument:

        E1(ix) = e^{-ix} / (ix + 1 - 1/(ix + 3 - 4/(ix + 5 - ...)))

    with Ci(x) = -Re E1(ix) and Si(x) = pi/2 + Im E1(ix).
    """
    z = complex(0.0, x)
    tiny = 1e-290
    b = z + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, _CF_MAX_ITER):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    e1 = cmath.exp(-z) * h
    return -e1.real, math.pi / 2.0 + e1.imag
