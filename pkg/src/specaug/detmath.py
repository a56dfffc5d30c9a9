"""Deterministic transcendental functions.

Platform libms disagree in the last ulp for log, exp, sin and cos, which
would break this package's byte-identical-output guarantee. The routines
here use only IEEE-754 operations with exactly specified results (add,
subtract, multiply, divide, sqrt, frexp, ldexp, floor) applied in a fixed
order, so every conforming platform computes the same bits.

Accuracy is a few ulp, not correctly rounded. That is more than enough for
building window, twiddle and filterbank tables and for log compression.

``_kernels.pyx`` carries a C copy of :func:`ln` (the only function needed
per cell inside hot loops). The two implementations must stay in sync;
the backend tests compare them bit for bit.
"""

from __future__ import annotations

import math

# ln(2) split into a high part exact in 32 bits plus a correction term
# (fdlibm constants), so e*ln2 keeps full precision for any exponent e.
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10
_INV_LN2 = 1.4426950408889634
_LN10 = 2.302585092994046
_TWO_PI = 6.283185307179586
_SQRT_HALF = 0.7071067811865476

# atanh series: ln(m) = 2t(1 + s/3 + s^2/5 + ...) with t=(m-1)/(m+1), s=t^2.
# 12 terms keep the truncation error below an eighth of an ulp for
# m in [sqrt(1/2), sqrt(2)).
_LN_COEFFS = tuple(1.0 / k for k in range(3, 27, 2))

_EXP_COEFFS = tuple(1.0 / math.factorial(k) for k in range(15))

# sin(x)/x and cos(x) Taylor coefficients, enough terms for |x| < pi/2.
_SIN_COEFFS = tuple((-1.0) ** k / math.factorial(2 * k + 1) for k in range(13))
_COS_COEFFS = tuple((-1.0) ** k / math.factorial(2 * k) for k in range(14))


def ln(x: float) -> float:
    """Natural log of a positive finite float, bit-stable across platforms."""
    if not (x > 0.0) or math.isinf(x):
        raise ValueError(f"ln requires a positive finite argument, got {x!r}")
    m, e = math.frexp(x)
    if m < _SQRT_HALF:
        m *= 2.0
        e -= 1
    t = (m - 1.0) / (m + 1.0)
    s = t * t
    p = _LN_COEFFS[-1]
    for c in reversed(_LN_COEFFS[:-1]):
        p = p * s + c
    lnm = 2.0 * t * (1.0 + s * p)
    return e * _LN2_HI + (lnm + e * _LN2_LO)


def log10(x: float) -> float:
    return ln(x) / _LN10


def exp(x: float) -> float:
    """e**x for |x| <= 709, bit-stable across platforms."""
    if math.isnan(x) or abs(x) > 709.0:
        raise ValueError(f"exp argument out of range: {x!r}")
    k = math.floor(x * _INV_LN2 + 0.5)
    r = (x - k * _LN2_HI) - k * _LN2_LO
    p = _EXP_COEFFS[-1]
    for c in reversed(_EXP_COEFFS[:-1]):
        p = p * r + c
    return math.ldexp(p, int(k))


def exp10(x: float) -> float:
    return exp(x * _LN10)


def _sincos_turns(x: float) -> tuple[float, float]:
    # x in turns (1 turn = 2*pi rad). Reduction to a quarter turn is exact
    # arithmetic: x - floor(x) is exact, r*4 is a power-of-two scale, and
    # r - q/4 is exact by Sterbenz. Only theta = d*2pi rounds.
    r = x - math.floor(x)
    q = int(r * 4.0)
    d = r - 0.25 * q
    theta = d * _TWO_PI
    z = theta * theta
    p = _SIN_COEFFS[-1]
    for c in reversed(_SIN_COEFFS[:-1]):
        p = p * z + c
    s = theta * p
    p = _COS_COEFFS[-1]
    for c in reversed(_COS_COEFFS[:-1]):
        p = p * z + c
    co = p
    if q == 0:
        return s, co
    if q == 1:
        return co, -s
    if q == 2:
        return -s, -co
    return -co, s


def sin_turns(x: float) -> float:
    """sin(2*pi*x), bit-stable across platforms."""
    return _sincos_turns(x)[0]


def cos_turns(x: float) -> float:
    """cos(2*pi*x), bit-stable across platforms."""
    return _sincos_turns(x)[1]
