"""Odd-one-out problems, their two-alternative trials, and JSON manifests.

A problem has six images, one of which (``odd_index``) violates the
concept. Each trial takes one conforming image as target, another
conforming image as the correct choice and the odd image as the wrong
choice: 5 targets x 4 other conforming images = 20 trials per problem.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence, Union

from .errors import ManifestError
from .raster import GrayImage, load_image, save_pgm
from .stimuli import DEFAULT_SIZE, GENERATORS, Jitter, synthesize_images

CATEGORIES = (
    "Topology",
    "Euclidean geometry",
    "Geometrical figures",
    "Symmetrical figures",
    "Chiral figures",
    "Metric properties",
    "Geometrical transformations",
)

TRIALS_PER_PROBLEM = 20

# An image reference is a path (resolved against a base directory) or an in-memory image.
ImageRef = Union[str, os.PathLike, GrayImage]


@dataclass(frozen=True)
class Problem:
    concept_id: int
    concept_name: str
    category: str
    images: tuple
    odd_index: int

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != 6:
            raise ManifestError(f"a problem needs exactly 6 images, got {len(self.images)}")
        if not 0 <= self.odd_index < 6:
            raise ManifestError(f"odd_index {self.odd_index} outside [0, 6)")
        if self.category not in CATEGORIES:
            raise ManifestError(f"unknown category {self.category!r}")

    @property
    def conforming(self) -> list[int]:
        return [k for k in range(6) if k != self.odd_index]


@dataclass(frozen=True)
class Trial:
    concept_id: int
    category: str
    target: Any
    choices: tuple
    correct_index: int
    concept_name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(self.choices))
        if len(self.choices) != 2:
            raise ManifestError("a trial has exactly two choices")
        if self.correct_index not in (0, 1):
            raise ManifestError(f"correct_index must be 0 or 1, got {self.correct_index}")


def generate_trials(p: Problem) -> list[Trial]:
    """All 20 (target, conforming choice) ordered pairs.

    The correct choice alternates between left (even trials) and right.
    """
    odd = p.images[p.odd_index]
    out = []
    for t in p.conforming:
        for c in p.conforming:
            if c == t:
                continue
            correct = len(out) % 2
            choices = (p.images[c], odd) if correct == 0 else (odd, p.images[c])
            out.append(Trial(p.concept_id, p.category, p.images[t], choices, correct, p.concept_name))
    return out


def synthesize_problem(gen_id: str, params: Jitter | dict | None = None, seed: int = 0,
                       size: int = DEFAULT_SIZE) -> Problem:
    """Render a six-image problem from a named generator (images held in memory)."""
    images, odd = synthesize_images(gen_id, seed, params, size)
    g = GENERATORS[gen_id]
    return Problem(g.concept_id, g.concept_name, g.category, images, odd)


def synthetic_benchmark(seed: int = 0, generators: Sequence[str] | None = None,
                        problems_per_generator: int = 1) -> list[Trial]:
    """Trials from every generator, seeded deterministically from ``seed``."""
    trials = []
    for i, gen_id in enumerate(generators or sorted(GENERATORS)):
        for j in range(problems_per_generator):
            p = synthesize_problem(gen_id, seed=seed * 1_000_003 + i * 1009 + j)
            trials.extend(generate_trials(p))
    return trials


# ---------------------------------------------------------------------------
# Manifests
# ---------------------------------------------------------------------------


def _rel(ref, base: Path) -> str:
    if isinstance(ref, GrayImage):
        raise ManifestError("in-memory images must be written to disk before serializing")
    p = Path(ref)
    try:
        return os.path.relpath(p if p.is_absolute() else p.resolve(), base.resolve())
    except ValueError:
        return str(p.resolve())


def problem_to_dict(p: Problem, base: Path) -> dict:
    return {
        "concept_id": p.concept_id,
        "concept_name": p.concept_name,
        "category": p.category,
        "images": [_rel(im, base) for im in p.images],
        "odd_index": p.odd_index,
    }


def write_problem(p: Problem, out_dir: str | os.PathLike, stem: str = "image") -> Path:
    """Write images as PGM plus ``problem.json`` into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = []
    for k, im in enumerate(p.images):
        if isinstance(im, GrayImage):
            path = out / f"{stem}_{k}.pgm"
            save_pgm(im, path)
            paths.append(path)
        else:
            paths.append(Path(im))
    manifest = out / "problem.json"
    disk = Problem(p.concept_id, p.concept_name, p.category, paths, p.odd_index)
    manifest.write_text(json.dumps(problem_to_dict(disk, out), indent=2) + "\n")
    return manifest


def _require(d: dict, keys: Sequence[str], what: str) -> None:
    if not isinstance(d, dict):
        raise ManifestError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise ManifestError(f"{what} is missing {', '.join(missing)}")


def _read_json(path: Path):
    try:
        return json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read {path}: {exc}") from exc


def read_problem(path: str | os.PathLike) -> Problem:
    """Load a problem manifest; image paths become absolute."""
    path = Path(path)
    d = _read_json(path)
    _require(d, ("concept_id", "concept_name", "category", "images", "odd_index"), "problem manifest")
    base = path.parent
    try:
        return Problem(int(d["concept_id"]), str(d["concept_name"]), d["category"],
                       [str(base / im) for im in d["images"]], int(d["odd_index"]))
    except (TypeError, ValueError) as exc:
        raise ManifestError(f"{path}: {exc}") from exc


def trial_to_dict(t: Trial, base: Path) -> dict:
    d = {
        "concept_id": t.concept_id,
        "category": t.category,
        "target": _rel(t.target, base),
        "choices": [_rel(c, base) for c in t.choices],
        "correct_index": t.correct_index,
    }
    if t.concept_name:
        d["concept_name"] = t.concept_name
    return d


def write_trials(trials: Sequence[Trial], path: str | os.PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    records = [trial_to_dict(t, path.parent) for t in trials]
    path.write_text(json.dumps(records, indent=2) + "\n")
    return path


def read_trials(path: str | os.PathLike) -> list[Trial]:
    path = Path(path)
    data = _read_json(path)
    if not isinstance(data, list):
        raise ManifestError(f"{path}: trial manifest must be a JSON list")
    base = path.parent
    out = []
    for i, d in enumerate(data):
        _require(d, ("concept_id", "category", "target", "choices", "correct_index"), f"trial {i}")
        try:
            out.append(Trial(int(d["concept_id"]), d["category"], str(base / d["target"]),
                             [str(base / c) for c in d["choices"]], int(d["correct_index"]),
                             d.get("concept_name", "")))
        except (TypeError, ValueError) as exc:
            raise ManifestError(f"{path}: trial {i}: {exc}") from exc
    return out


def resolve_image(ref: ImageRef) -> GrayImage:
    return ref if isinstance(ref, GrayImage) else load_image(ref)


__all__ = [
    "CATEGORIES", "Jitter", "Problem", "Trial", "generate_trials", "synthesize_problem",
    "synthetic_benchmark", "read_problem", "write_problem", "read_trials", "write_trials",
    "resolve_image",
]
