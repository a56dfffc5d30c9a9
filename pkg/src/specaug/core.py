"""Domain types, policy presets and adaptive mask-plan resolution.

All types here are immutable once constructed, so they are safe to share
across threads. Randomness lives entirely in :mod:`specaug.rng`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import PolicyFormatError, UnknownPresetError


class Spectrogram:
    """A tau x nu matrix of log-mel values, time-major.

    ``values`` is a read-only float64 array; augmentation ops return new
    instances and never mutate their input. All entries must be finite.
    """

    __slots__ = ("values",)

    def __init__(self, values: np.ndarray):
        arr = np.array(values, dtype=np.float64, order="C", copy=True)
        if arr.ndim != 2:
            raise ValueError(f"spectrogram must be 2-D, got shape {arr.shape}")
        if arr.shape[1] < 1:
            raise ValueError("spectrogram needs at least one frequency channel")
        if arr.size and not np.isfinite(arr).all():
            raise ValueError("spectrogram contains non-finite values")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    @classmethod
    def _from_values(cls, arr: np.ndarray) -> "Spectrogram":
        # Internal: adopt an array whose finiteness is guaranteed by the
        # producing operation. Skips the copy and the O(n) validation.
        self = object.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.float64)
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("Spectrogram is immutable")

    @property
    def tau(self) -> int:
        return self.values.shape[0]

    @property
    def nu(self) -> int:
        return self.values.shape[1]

    def __repr__(self) -> str:
        return f"Spectrogram(tau={self.tau}, nu={self.nu})"


class TimeMode(enum.Enum):
    FIXED = "fixed"
    ADAPTIVE_SIZE = "adaptive-size"
    ADAPTIVE_MULTIPLICITY = "adaptive-multiplicity"
    ADAPTIVE_BOTH = "adaptive-both"


class FillMode(enum.Enum):
    CONSTANT = "constant"
    UTTERANCE_MEAN = "utterance-mean"
    GAUSSIAN = "gaussian"


@dataclass(frozen=True)
class MaskFill:
    """What masked cells are set to.

    ``constant`` is used only in CONSTANT mode. GAUSSIAN draws one value per
    cell from Normal(utterance mean, sigma**2) where the mean is taken over
    the spectrogram before any masks were applied.
    """

    mode: FillMode = FillMode.CONSTANT
    constant: float = 0.0
    sigma: float = 0.0

    def __post_init__(self):
        if self.sigma < 0.0:
            raise ValueError("sigma must be >= 0")
        if not math.isfinite(self.constant) or not math.isfinite(self.sigma):
            raise ValueError("fill parameters must be finite")


@dataclass(frozen=True)
class AugmentPolicy:
    """Declarative description of one augmentation recipe.

    Only the fields demanded by ``time_mode`` are consulted when resolving
    time masks; the others are carried but ignored.
    """

    warp_param: int = 0
    freq_mask_param: int = 0
    freq_mask_count: int = 0
    time_mode: TimeMode = TimeMode.FIXED
    time_mask_param: int = 0
    time_mask_count: int = 0
    multiplicity_ratio: float = 0.0
    size_ratio: float = 0.0
    multiplicity_cap: int = 20
    fill: MaskFill = MaskFill()

    def __post_init__(self):
        if min(self.warp_param, self.freq_mask_param, self.freq_mask_count,
               self.time_mask_param, self.time_mask_count, self.multiplicity_cap) < 0:
            raise ValueError("policy counts and sizes must be >= 0")
        for ratio in (self.multiplicity_ratio, self.size_ratio):
            if not 0.0 <= ratio <= 1.0:
                raise ValueError("ratios must lie in [0, 1]")


@dataclass(frozen=True)
class ResolvedMaskPlan:
    """Concrete per-utterance mask counts and sizes."""

    n_time_masks: int
    time_mask_param: int
    n_freq_masks: int
    freq_mask_param: int


def resolve_policy(policy: AugmentPolicy, tau: int) -> ResolvedMaskPlan:
    """Resolve adaptive time masking against an utterance of ``tau`` frames.

    Adaptive multiplicity scales the mask count as floor(ratio * tau),
    capped at ``multiplicity_cap``; adaptive size scales the mask size
    parameter as floor(ratio * tau). Frequency fields pass through.
    """
    if tau < 0:
        raise ValueError("tau must be >= 0")
    mode = policy.time_mode
    if mode is TimeMode.FIXED:
        n, size = policy.time_mask_count, policy.time_mask_param
    elif mode is TimeMode.ADAPTIVE_MULTIPLICITY:
        n = min(policy.multiplicity_cap, math.floor(policy.multiplicity_ratio * tau))
        size = policy.time_mask_param
    elif mode is TimeMode.ADAPTIVE_SIZE:
        n = policy.time_mask_count
        size = math.floor(policy.size_ratio * tau)
    else:
        n = min(policy.multiplicity_cap, math.floor(policy.multiplicity_ratio * tau))
        size = math.floor(policy.size_ratio * tau)
    return ResolvedMaskPlan(
        n_time_masks=n,
        time_mask_param=size,
        n_freq_masks=policy.freq_mask_count,
        freq_mask_param=policy.freq_mask_param,
    )


_PRESETS: dict[str, AugmentPolicy] = {
    "librispeech-double": AugmentPolicy(
        warp_param=80, freq_mask_param=27, freq_mask_count=2,
        time_mode=TimeMode.FIXED, time_mask_param=100, time_mask_count=2,
    ),
    "libri-full-adapt": AugmentPolicy(
        warp_param=80, freq_mask_param=27, freq_mask_count=2,
        time_mode=TimeMode.ADAPTIVE_BOTH,
        multiplicity_ratio=0.04, size_ratio=0.04, multiplicity_cap=20,
    ),
    "specaug-basic": AugmentPolicy(
        warp_param=0, freq_mask_param=27, freq_mask_count=2,
        time_mode=TimeMode.FIXED, time_mask_param=50, time_mask_count=2,
    ),
    "freq-only": AugmentPolicy(
        warp_param=0, freq_mask_param=27, freq_mask_count=2,
        time_mode=TimeMode.FIXED, time_mask_param=0, time_mask_count=0,
    ),
}


def preset_names() -> tuple[str, ...]:
    return tuple(sorted(_PRESETS))


def preset(name: str) -> AugmentPolicy:
    """Return a named recipe; raises UnknownPresetError for anything else."""
    try:
        return _PRESETS[name]
    except KeyError:
        valid = ", ".join(preset_names())
        raise UnknownPresetError(f"unknown preset {name!r}; valid presets: {valid}") from None


_POLICY_KEYS = (
    "warp_param", "freq_mask_param", "freq_mask_count", "time_mode",
    "time_mask_param", "time_mask_count", "multiplicity_ratio", "size_ratio",
    "multiplicity_cap", "fill_mode", "fill_constant", "fill_sigma",
)

_INT_KEYS = frozenset({
    "warp_param", "freq_mask_param", "freq_mask_count",
    "time_mask_param", "time_mask_count", "multiplicity_cap",
})
_FLOAT_KEYS = frozenset({"multiplicity_ratio", "size_ratio", "fill_constant", "fill_sigma"})


def format_policy(policy: AugmentPolicy) -> str:
    """Render a policy as the flat key=value text format (one pair per line)."""
    f = policy.fill
    values = {
        "warp_param": policy.warp_param,
        "freq_mask_param": policy.freq_mask_param,
        "freq_mask_count": policy.freq_mask_count,
        "time_mode": policy.time_mode.value,
        "time_mask_param": policy.time_mask_param,
        "time_mask_count": policy.time_mask_count,
        "multiplicity_ratio": repr(policy.multiplicity_ratio),
        "size_ratio": repr(policy.size_ratio),
        "multiplicity_cap": policy.multiplicity_cap,
        "fill_mode": f.mode.value,
        "fill_constant": repr(f.constant),
        "fill_sigma": repr(f.sigma),
    }
    return "\n".join(f"{k}={values[k]}" for k in _POLICY_KEYS) + "\n"


def parse_policy(text: str) -> AugmentPolicy:
    """Parse the key=value policy format. Missing keys take their defaults."""
    raw: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise PolicyFormatError(f"line {lineno}: expected key=value, got {line!r}")
        key, value = (part.strip() for part in stripped.split("=", 1))
        if key not in _POLICY_KEYS:
            raise PolicyFormatError(f"line {lineno}: unknown key {key!r}")
        if key in raw:
            raise PolicyFormatError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    kwargs: dict = {}
    try:
        for key, value in raw.items():
            if key in _INT_KEYS:
                kwargs[key] = int(value)
            elif key in _FLOAT_KEYS:
                kwargs[key] = float(value)
        if "time_mode" in raw:
            kwargs["time_mode"] = TimeMode(raw["time_mode"])
        fill_mode = FillMode(raw.get("fill_mode", FillMode.CONSTANT.value))
    except ValueError as e:
        raise PolicyFormatError(str(e)) from None

    fill = MaskFill(
        mode=fill_mode,
        constant=kwargs.pop("fill_constant", 0.0),
        sigma=kwargs.pop("fill_sigma", 0.0),
    )
    try:
        return AugmentPolicy(fill=fill, **kwargs)
    except ValueError as e:
        raise PolicyFormatError(str(e)) from None


def with_fill(policy: AugmentPolicy, fill: MaskFill) -> AugmentPolicy:
    """Copy of ``policy`` with a different mask fill."""
    return replace(policy, fill=fill)
