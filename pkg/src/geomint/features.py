"""Slice-profile features and self-symmetry.

A figure is cut into unit-width slices along one axis and each slice is
summarized by the mean (center shift), count (area) and population
standard deviation (spread) of the cross-axis coordinate. ``vertical``
slices by ``y`` and records ``x``; ``horizontal`` slices by ``x`` and
records ``y``.

Slice index of a coordinate ``c`` is ``floor(c + 0.5)``: round to nearest,
halves upward. Coordinates within ``BIN_TOL`` below a half-integer are
treated as that half-integer so floating-point noise from rotation does
not move points across a bin edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from . import kernels
from .align import AlignedFigure
from .raster import PointSet

BIN_TOL = 1e-9

FEATURES = ("center_shift", "area", "spread")
AXES = ("vertical", "horizontal")
KINDS = ("base", "self")

Figure = Union[AlignedFigure, PointSet, np.ndarray]


@dataclass(frozen=True, eq=False)
class Profile:
    """Real values over consecutive integer bins.

    ``values[offset]`` is the bin containing coordinate 0.
    """

    values: np.ndarray
    offset: int

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=np.float64).reshape(-1)
        if v.size == 0:
            raise ValueError("profile must be nonempty")
        if not 0 <= self.offset < v.size:
            raise ValueError(f"offset {self.offset} outside [0, {v.size})")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "offset", int(self.offset))

    @property
    def lo(self) -> int:
        """Bin index of ``values[0]``."""
        return -self.offset

    @property
    def bins(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + self.values.size)

    def __getitem__(self, b: int) -> float:
        i = b + self.offset
        return float(self.values[i]) if 0 <= i < self.values.size else 0.0

    def as_dict(self) -> dict[int, float]:
        return {int(b): float(v) for b, v in zip(self.bins, self.values)}

    def __len__(self) -> int:
        return self.values.size

    def __eq__(self, other):
        if not isinstance(other, Profile):
            return NotImplemented
        return self.offset == other.offset and np.array_equal(self.values, other.values)

    __hash__ = None


def _coords(fig: Figure) -> np.ndarray:
    if isinstance(fig, AlignedFigure):
        fig = fig.points
    if isinstance(fig, PointSet):
        fig = fig.points
    p = np.asarray(fig, dtype=np.float64).reshape(-1, 2)
    if p.shape[0] == 0:
        raise ValueError("figure has no points")
    return p


def _split(fig: Figure, axis: str) -> tuple[np.ndarray, np.ndarray]:
    p = _coords(fig)
    if axis == "vertical":
        return p[:, 1], p[:, 0]
    if axis == "horizontal":
        return p[:, 0], p[:, 1]
    raise ValueError(f"axis must be 'vertical' or 'horizontal', got {axis!r}")


def slice_bins(fig: Figure, axis: str) -> dict[int, list[float]]:
    """Group cross-coordinates by slice index (occupied slices only)."""
    along, cross = _split(fig, axis)
    bins = np.floor(along + 0.5 + BIN_TOL).astype(np.int64)
    out: dict[int, list[float]] = {}
    for b, c in zip(bins.tolist(), cross.tolist()):
        out.setdefault(b, []).append(c)
    return dict(sorted(out.items()))


def axis_profiles(fig: Figure, axis: str) -> tuple[Profile, Profile, Profile]:
    """``(center_shift, area, spread)`` profiles along one axis in one pass."""
    along, cross = _split(fig, axis)
    lo, counts, means, stds = kernels.slice_profiles(along, cross, BIN_TOL)
    return Profile(means, -lo), Profile(counts, -lo), Profile(stds, -lo)


def center_shift_profile(fig: Figure, axis: str) -> Profile:
    return axis_profiles(fig, axis)[0]


def area_profile(fig: Figure, axis: str) -> Profile:
    return axis_profiles(fig, axis)[1]


def spread_profile(fig: Figure, axis: str) -> Profile:
    return axis_profiles(fig, axis)[2]


def _union(p: Profile, q: Profile) -> tuple[int, np.ndarray, np.ndarray]:
    lo = min(p.lo, q.lo)
    hi = max(p.lo + len(p), q.lo + len(q))
    a = np.zeros(hi - lo)
    b = np.zeros(hi - lo)
    a[p.lo - lo:p.lo - lo + len(p)] = p.values
    b[q.lo - lo:q.lo - lo + len(q)] = q.values
    return lo, a, b


def self_symmetry(p_v: Profile, p_h: Profile) -> Profile:
    """Signed ``p_v - p_h``, aligned at the centroid bin, over the union domain."""
    lo, a, b = _union(p_v, p_h)
    return Profile(a - b, -lo)


def profile_difference(p: Profile, q: Profile) -> float:
    """L1 distance between two profiles aligned at their centroid bins."""
    return kernels.l1_aligned(p.values, p.lo, q.values, q.lo)


@dataclass(frozen=True)
class FeatureProfiles:
    center_shift_v: Profile
    center_shift_h: Profile
    area_v: Profile
    area_h: Profile
    spread_v: Profile
    spread_h: Profile
    self_center_shift: Profile
    self_area: Profile
    self_spread: Profile

    def base(self, feature: str) -> tuple[Profile, Profile]:
        return getattr(self, f"{feature}_v"), getattr(self, f"{feature}_h")

    def self_profile(self, feature: str) -> Profile:
        return getattr(self, f"self_{feature}")

    def items(self) -> Iterable[tuple[str, str, Profile]]:
        """``(feature, axis, profile)`` triples; axis is ``v``, ``h`` or ``self``."""
        for f in FEATURES:
            v, h = self.base(f)
            yield f, "v", v
            yield f, "h", h
        for f in FEATURES:
            yield f, "self", self.self_profile(f)


def extract_features(fig: Figure) -> FeatureProfiles:
    cv, av, sv = axis_profiles(fig, "vertical")
    ch, ah, sh = axis_profiles(fig, "horizontal")
    return FeatureProfiles(
        cv, ch, av, ah, sv, sh,
        self_symmetry(cv, ch),
        self_symmetry(av, ah),
        self_symmetry(sv, sh),
    )


def base_difference(t: FeatureProfiles, c: FeatureProfiles, feature: str) -> float:
    """Vertical plus horizontal profile difference for one base feature."""
    tv, th = t.base(feature)
    cv, ch = c.base(feature)
    return profile_difference(tv, cv) + profile_difference(th, ch)


def self_difference(t: FeatureProfiles, c: FeatureProfiles, feature: str) -> float:
    return profile_difference(t.self_profile(feature), c.self_profile(feature))


# ---------------------------------------------------------------------------
# Feature selections
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FeatureSelection:
    """Equal-weight subset of ``FEATURES x KINDS``."""

    chosen: frozenset

    def __post_init__(self):
        chosen = frozenset(self.chosen)
        if not chosen:
            raise ValueError("feature selection must be nonempty")
        for f, k in chosen:
            if f not in FEATURES or k not in KINDS:
                raise ValueError(f"unknown feature {f}:{k}")
        object.__setattr__(self, "chosen", chosen)

    @classmethod
    def parse(cls, names: str | Iterable[str]) -> "FeatureSelection":
        """Parse ``center_shift:base,spread:self`` style lists.

        A bare feature name means its base variant.
        """
        if isinstance(names, str):
            names = [n for n in names.split(",") if n.strip()]
        chosen = set()
        for name in names:
            f, _, k = name.strip().partition(":")
            chosen.add((f, k or "base"))
        return cls(frozenset(chosen))

    def names(self) -> list[str]:
        key = lambda fk: (KINDS.index(fk[1]), FEATURES.index(fk[0]))  # noqa: E731
        return [f"{f}:{k}" for f, k in sorted(self.chosen, key=key)]

    def __str__(self) -> str:
        return ",".join(self.names())


PRESETS = {
    "cs": FeatureSelection(frozenset({("center_shift", "base")})),
    "cs+sspread": FeatureSelection(frozenset({("center_shift", "base"), ("spread", "self")})),
    "four": FeatureSelection(frozenset({
        ("center_shift", "base"),
        ("center_shift", "self"),
        ("area", "self"),
        ("spread", "self"),
    })),
}
