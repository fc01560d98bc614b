"""Principal-axis alignment of figure point sets.

Only proper rotations are used (no reflections), so a figure and its
mirror image never become identical after alignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateFigure
from .raster import PointSet

# Relative eigenvalue gap below which the principal axis is considered undefined.
DEGENERACY_TOL = 1e-6
_EPS = 1e-12


@dataclass(frozen=True, eq=False)
class AlignedFigure:
    points: PointSet  # centered and rotated, float coordinates
    angle: float  # principal angle that was undone (radians)
    centroid: tuple[float, float]
    flipped: bool = False

    def __len__(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> np.ndarray:
        return self.points.xs

    @property
    def ys(self) -> np.ndarray:
        return self.points.ys


def _check(ps: PointSet) -> None:
    if len(ps) < 2:
        raise DegenerateFigure(f"need at least 2 points, got {len(ps)}")


def _centered(ps: PointSet) -> tuple[np.ndarray, np.ndarray, tuple[float, float]]:
    """Centered coordinates.

    For integer input the centering is done as ``(n*x - sum(x)) / n`` in
    exact integer arithmetic, so any integer translation of the input gives
    bit-identical output.
    """
    n = len(ps)
    if ps.is_integral:
        p = ps.points
        sx, sy = int(p[:, 0].sum()), int(p[:, 1].sum())
        cx = p[:, 0] * n - sx
        cy = p[:, 1] * n - sy
        return cx / n, cy / n, (sx / n, sy / n)
    p = ps.points
    mx, my = p[:, 0].mean(), p[:, 1].mean()
    return p[:, 0] - mx, p[:, 1] - my, (float(mx), float(my))


def _covariance(ps: PointSet) -> tuple[float, float, float]:
    """Population covariance entries (sxx, syy, sxy)."""
    n = len(ps)
    if ps.is_integral:
        p = ps.points
        # integer-scaled deviations; int64 holds these for any realistic canvas
        cx = p[:, 0] * n - int(p[:, 0].sum())
        cy = p[:, 1] * n - int(p[:, 1].sum())
        n3 = float(n) ** 3
        return (
            float(np.dot(cx, cx)) / n3,
            float(np.dot(cy, cy)) / n3,
            float(np.dot(cx, cy)) / n3,
        )
    dx, dy, _ = _centered(ps)
    return float(dx @ dx) / n, float(dy @ dy) / n, float(dx @ dy) / n


def eigen_gap(ps: PointSet) -> tuple[float, float]:
    """Covariance eigenvalues ``(l1, l2)`` with ``l1 >= l2``."""
    sxx, syy, sxy = _covariance(ps)
    half_tr = 0.5 * (sxx + syy)
    r = math.hypot(0.5 * (sxx - syy), sxy)
    return half_tr + r, half_tr - r


def principal_angle(ps: PointSet) -> float:
    """Direction of the first principal axis, in ``(-pi/2, pi/2]``.

    Returns 0 when the two covariance eigenvalues are (relatively) equal.
    """
    _check(ps)
    sxx, syy, sxy = _covariance(ps)
    half_tr = 0.5 * (sxx + syy)
    r = math.hypot(0.5 * (sxx - syy), sxy)
    l1 = half_tr + r
    if 2.0 * r / max(l1, _EPS) < DEGENERACY_TOL:
        return 0.0
    theta = 0.5 * math.atan2(2.0 * sxy, sxx - syy)
    if theta <= -math.pi / 2:
        theta += math.pi
    return theta


def align(ps: PointSet, angle: float, flipped: bool = False) -> AlignedFigure:
    """Center ``ps`` on its centroid and rotate it by ``-angle``.

    ``flipped`` adds a half turn.
    """
    _check(ps)
    dx, dy, centroid = _centered(ps)
    c, s = math.cos(angle), math.sin(angle)
    x = c * dx + s * dy
    y = c * dy - s * dx
    if flipped:
        # exact negation, so the two orientations are exact half-turns of each other
        x, y = -x, -y
    return AlignedFigure(PointSet(np.column_stack((x, y))), angle, centroid, flipped)


def candidate_orientations(ps: PointSet) -> tuple[AlignedFigure, AlignedFigure]:
    theta = principal_angle(ps)
    upright = align(ps, theta, False)
    pts = upright.points.points
    flipped = AlignedFigure(PointSet(-pts), theta, upright.centroid, True)
    return upright, flipped
