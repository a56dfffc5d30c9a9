"""Deterministic random streams.

Every random decision in this package flows through :class:`SeededRng`.
The contract is frozen so outputs are bit-identical across runs, platforms
and backends:

* Generator: SplitMix64 (Steele/Lea/Flood, as published in Vigna's
  public-domain reference code). 64-bit state, increment
  ``0x9E3779B97F4A7C15``, output passed through the two-round
  multiply-xorshift finalizer. The first three outputs for seed 0 are
  ``0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F``; the
  tests pin this against the published sequence.
* Stream derivation: ``stream_id = FNV-1a-64(utf-8 bytes of utterance id)``
  with offset basis ``0xCBF29CE484222325`` and prime ``0x100000001B3``.
  The initial generator state is ``mix64((mix64(seed) + stream_id) mod 2^64)``.
* ``uniform_int(a, b)`` is inclusive on both endpoints and unbiased
  (bitmask rejection). ``a == b`` consumes no generator words.
* ``random()`` maps one word to [0, 1) as ``(word >> 11) * 2**-53``.
* ``normal()`` maps one word to the centered uniform
  ``((word >> 11) + 0.5) * 2**-53`` and applies the AS241 (Wichura PPND16)
  rational approximation of the inverse normal CDF. The only transcendental
  involved is the deterministic :func:`specaug.detmath.ln`, so normal draws
  are also bit-stable across platforms.

A single stream must not be shared across concurrent calls; derive one
stream per utterance instead (distinct streams are independent by
construction, so parallel augmentation stays order-independent).
"""

from __future__ import annotations

import math

from . import detmath

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

_TWO_NEG53 = math.ldexp(1.0, -53)


def mix64(z: int) -> int:
    """SplitMix64 output finalizer (a 64-bit bijection)."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def fnv1a64(text: str) -> int:
    """FNV-1a 64-bit hash of the UTF-8 encoding of ``text``."""
    h = _FNV_OFFSET
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _ppnd16(u: float) -> float:
    # AS241 PPND16: inverse of the standard normal CDF, |error| ~ 1e-16.
    # Constants and branch structure are frozen; _kernels.pyx and
    # _kernels_py.py carry copies that must match bit for bit.
    q = u - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        num = (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r
                    + 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r
                  + 1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r
                + 1.3314166789178437745e2) * r + 3.3871328727963666080e0)
        den = (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r
                    + 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r
                  + 5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r
                + 4.2313330701600911252e1) * r + 1.0)
        return q * num / den
    r = u if q < 0.0 else 1.0 - u
    r = math.sqrt(-detmath.ln(r))
    if r <= 5.0:
        r -= 1.6
        num = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r
                    + 2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r
                  + 3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r
                + 4.63033784615654529590e0) * r + 1.42343711074968357734e0)
        den = (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r
                    + 1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r
                  + 6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r
                + 2.05319162663775882187e0) * r + 1.0)
    else:
        r -= 5.0
        num = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r
                    + 1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r
                  + 2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r
                + 5.46378491116411436990e0) * r + 6.65790464350110377720e0)
        den = (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r
                    + 1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r
                  + 1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r
                + 5.99832206555887937690e-1) * r + 1.0)
    z = num / den
    return -z if q < 0.0 else z


def normal_from_word(word: int) -> float:
    """Standard normal value for one generator word (frozen mapping)."""
    u = ((word >> 11) + 0.5) * _TWO_NEG53
    return _ppnd16(u)


class SeededRng:
    """One deterministic draw stream, identified by (seed, stream_id).

    The identity fields are immutable; the draw position advances as values
    are consumed. ``state`` is exposed so compiled kernels can continue the
    same stream in-place and hand the advanced position back.
    """

    __slots__ = ("seed", "stream_id", "_state")

    def __init__(self, seed: int, stream_id: int = 0):
        object.__setattr__(self, "seed", seed & _MASK64)
        object.__setattr__(self, "stream_id", stream_id & _MASK64)
        self._state = mix64((mix64(self.seed) + self.stream_id) & _MASK64)

    def __setattr__(self, name, value):
        if name in ("seed", "stream_id"):
            raise AttributeError(f"SeededRng.{name} is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self) -> str:
        return f"SeededRng(seed={self.seed}, stream_id={self.stream_id:#018x})"

    @property
    def state(self) -> int:
        return self._state

    @state.setter
    def state(self, value: int) -> None:
        self._state = value & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        return mix64(self._state)

    def uniform_int(self, a: int, b: int) -> int:
        """Uniform integer on the inclusive range [a, b]."""
        if a > b:
            raise ValueError(f"empty range [{a}, {b}]")
        span = b - a + 1
        if span == 1:
            return a
        mask = (1 << (span - 1).bit_length()) - 1
        while True:
            v = self.next_u64() & mask
            if v < span:
                return a + v

    def random(self) -> float:
        """Uniform float in [0, 1) on the 2**-53 grid."""
        return (self.next_u64() >> 11) * _TWO_NEG53

    def normal(self) -> float:
        """Standard normal draw (one word consumed)."""
        return normal_from_word(self.next_u64())

    def bernoulli(self, p: float) -> bool:
        """True with probability p (one word consumed)."""
        return self.random() < p


def derive_stream(seed: int, utterance_id: str) -> SeededRng:
    """Per-utterance stream: same (seed, id) always yields the same draws."""
    return SeededRng(seed, fnv1a64(utterance_id))
