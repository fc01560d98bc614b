"""Two-alternative choice: orient each choice against the target, score, pick."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .align import AlignedFigure, align, candidate_orientations, principal_angle
from .errors import DegenerateFigure, EmptyFigure
from .features import (
    FEATURES,
    PRESETS,
    FeatureProfiles,
    FeatureSelection,
    base_difference,
    extract_features,
    self_difference,
)
from .raster import DEFAULT_THRESHOLD, GrayImage, PointSet, image_points

TIE_RTOL = 1e-9


@dataclass(frozen=True)
class ModelConfig:
    selection: FeatureSelection = field(default_factory=lambda: PRESETS["four"])
    threshold: int = DEFAULT_THRESHOLD
    preset_name: Optional[str] = "four"

    def __post_init__(self):
        if not 0 <= self.threshold <= 255:
            raise ValueError(f"threshold must be in [0, 255], got {self.threshold}")

    @classmethod
    def preset(cls, name: str, threshold: int = DEFAULT_THRESHOLD) -> "ModelConfig":
        if name not in PRESETS:
            raise KeyError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
        return cls(PRESETS[name], threshold, name)

    def to_dict(self) -> dict:
        return {
            "preset_name": self.preset_name,
            "selection": self.selection.names(),
            "threshold": self.threshold,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ModelConfig":
        return cls(FeatureSelection.parse(d["selection"]), int(d["threshold"]), d.get("preset_name"))


@dataclass(frozen=True)
class Decision:
    chosen_index: int
    differences: tuple[float, float]
    orientation_flags: tuple[bool, bool]
    tie: bool

    def to_dict(self) -> dict:
        return {
            "chosen_index": self.chosen_index,
            "differences": list(self.differences),
            "orientation_flags": list(self.orientation_flags),
            "tie": self.tie,
        }


def base_sum(t: FeatureProfiles, c: FeatureProfiles) -> float:
    """All three base-feature differences; used for orientation only."""
    return sum(base_difference(t, c, f) for f in FEATURES)


def _orient(target: FeatureProfiles, ps: PointSet) -> tuple[AlignedFigure, FeatureProfiles]:
    upright, flipped = candidate_orientations(ps)
    fu, ff = extract_features(upright), extract_features(flipped)
    if base_sum(target, ff) < base_sum(target, fu):
        return flipped, ff
    return upright, fu


def orient_choice(target: AlignedFigure, choice_points: PointSet) -> AlignedFigure:
    """The half-turn orientation of the choice closer to the target.

    Exact ties keep the unflipped orientation.
    """
    return _orient(extract_features(target), choice_points)[0]


def overall_difference(t: FeatureProfiles, c: FeatureProfiles, sel: FeatureSelection) -> float:
    total = 0.0
    for feature in FEATURES:
        if (feature, "base") in sel.chosen:
            total += base_difference(t, c, feature)
    for feature in FEATURES:
        if (feature, "self") in sel.chosen:
            total += self_difference(t, c, feature)
    return total


def decide(d0: float, d1: float, flags=(False, False)) -> Decision:
    tie = abs(d0 - d1) <= TIE_RTOL * max(d0, d1)
    chosen = 0 if tie or d0 < d1 else 1
    return Decision(chosen, (d0, d1), tuple(bool(f) for f in flags), tie)


def target_figure(ps: PointSet) -> AlignedFigure:
    return align(ps, principal_angle(ps), flipped=False)


def solve_points(target: PointSet, choice_a: PointSet, choice_b: PointSet,
                 cfg: ModelConfig = ModelConfig()) -> Decision:
    """Solve a trial given figure point sets (integer or continuous)."""
    tf = extract_features(target_figure(target))
    diffs, flags = [], []
    for ps in (choice_a, choice_b):
        fig, feats = _orient(tf, ps)
        diffs.append(overall_difference(tf, feats, cfg.selection))
        flags.append(fig.flipped)
    return decide(diffs[0], diffs[1], flags)


def _points_for(img: GrayImage, threshold: int, role: str) -> PointSet:
    try:
        return image_points(img, threshold)
    except (EmptyFigure, DegenerateFigure) as exc:
        raise type(exc)(f"{role} image: {exc}") from exc


def solve_trial(target_img: GrayImage, choice_a: GrayImage, choice_b: GrayImage,
                cfg: ModelConfig = ModelConfig()) -> Decision:
    pts = [
        _points_for(img, cfg.threshold, role)
        for img, role in ((target_img, "target"), (choice_a, "choice 0"), (choice_b, "choice 1"))
    ]
    return solve_points(*pts, cfg=cfg)
