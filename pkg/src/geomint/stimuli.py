"""Parametric stand-in stimuli for odd-one-out geometry problems.

Every generator draws a figure in a local frame (pixels, origin at the
figure's nominal center), either embodying its concept or violating it.
The figure is then placed on the canvas with random rotation, scale and
position, which are the attributes the concept must be invariant to, and
rasterized with hard edges.

Each generator ships a validator that decides conformance from the
rendered mask alone, using connected components, moments and reflections
rather than anything the solver computes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import ndimage

from .raster import BinaryImage, GrayImage

DEFAULT_SIZE = 128
DEFAULT_STROKE = 2.5


@dataclass(frozen=True)
class Jitter:
    """Amplitudes of the irrelevant attributes."""

    position: float = 12.0  # max offset of the figure center, px
    rotation: float = math.pi  # max |angle|, radians
    size: float = 0.15  # max relative scale change

    def __post_init__(self):
        if self.position < 0 or self.rotation < 0:
            raise ValueError("jitter amplitudes must be nonnegative")
        if not 0 <= self.size < 1:
            raise ValueError("size jitter must be in [0, 1) or figures can vanish")

    @classmethod
    def from_dict(cls, d: dict | None) -> "Jitter":
        return cls(**(d or {}))


# ---------------------------------------------------------------------------
# Shapes and rasterization
# ---------------------------------------------------------------------------


@dataclass
class Shape:
    """Polylines (stroked) and disks (filled) in local coordinates."""

    polylines: list[np.ndarray] = field(default_factory=list)
    disks: list[tuple[float, float, float]] = field(default_factory=list)

    def line(self, *pts, closed=False) -> "Shape":
        a = np.asarray(pts, dtype=np.float64).reshape(-1, 2)
        if closed:
            a = np.vstack([a, a[:1]])
        self.polylines.append(a)
        return self

    def disk(self, x, y, r) -> "Shape":
        self.disks.append((float(x), float(y), float(r)))
        return self

    def transformed(self, angle, scale, dx, dy) -> "Shape":
        c, s = math.cos(angle), math.sin(angle)
        m = np.array([[c, -s], [s, c]]) * scale

        def tf(p):
            return p @ m.T + (dx, dy)

        out = Shape([tf(p) for p in self.polylines])
        for x, y, r in self.disks:
            (tx, ty), = tf(np.array([[x, y]]))
            out.disks.append((tx, ty, r * scale))
        return out

    def extent(self) -> float:
        pts = [p for p in self.polylines] + [np.array([[x, y]]) for x, y, _ in self.disks]
        r = max(float(np.hypot(p[:, 0], p[:, 1]).max()) for p in pts)
        return r + max([d[2] for d in self.disks], default=0.0)


def arc(cx, cy, rx, ry, t0=0.0, t1=2 * math.pi, n=None):
    if n is None:
        n = max(8, int(abs(t1 - t0) / (2 * math.pi) * 72))
    t = np.linspace(t0, t1, n + 1)
    return np.column_stack((cx + rx * np.cos(t), cy + ry * np.sin(t)))


def render(shape: Shape, size: int = DEFAULT_SIZE, stroke: float = DEFAULT_STROKE) -> BinaryImage:
    """Pixels whose center lies within ``stroke/2`` of a polyline or inside a disk."""
    half = stroke / 2.0
    mask = np.zeros((size, size), dtype=bool)

    def window(x0, x1, y0, y1, pad):
        c0, c1 = max(int(math.floor(min(x0, x1) - pad)), 0), min(int(math.ceil(max(x0, x1) + pad)) + 1, size)
        r0, r1 = max(int(math.floor(min(y0, y1) - pad)), 0), min(int(math.ceil(max(y0, y1) + pad)) + 1, size)
        if c0 >= c1 or r0 >= r1:
            return None
        ys, xs = np.mgrid[r0:r1, c0:c1].astype(np.float64)
        return (slice(r0, r1), slice(c0, c1)), xs, ys

    for poly in shape.polylines:
        for (x0, y0), (x1, y1) in zip(poly[:-1], poly[1:]):
            w = window(x0, x1, y0, y1, half + 1)
            if w is None:
                continue
            sl, xs, ys = w
            vx, vy = x1 - x0, y1 - y0
            ll = vx * vx + vy * vy
            if ll == 0:
                d = np.hypot(xs - x0, ys - y0)
            else:
                t = np.clip(((xs - x0) * vx + (ys - y0) * vy) / ll, 0.0, 1.0)
                d = np.hypot(xs - (x0 + t * vx), ys - (y0 + t * vy))
            mask[sl] |= d <= half
    for x, y, r in shape.disks:
        w = window(x, x, y, y, r + 1)
        if w is not None:
            sl, xs, ys = w
            mask[sl] |= np.hypot(xs - x, ys - y) <= r
    return BinaryImage(mask)


# ---------------------------------------------------------------------------
# Mask measurements used by the validators
# ---------------------------------------------------------------------------


def _coords(mask: np.ndarray) -> np.ndarray:
    r, c = np.nonzero(mask)
    return np.column_stack((c, r)).astype(np.float64)


def _pca(p: np.ndarray):
    """Centroid, eigenvalues (desc) and eigenvectors (columns) of a point cloud."""
    mu = p.mean(axis=0)
    w, v = np.linalg.eigh(np.cov((p - mu).T, bias=True))
    return mu, w[::-1], v[:, ::-1]


def _components(mask: np.ndarray) -> list[np.ndarray]:
    """Foreground components (8-connected), largest first."""
    lab, n = ndimage.label(mask, structure=np.ones((3, 3)))
    comps = [lab == i for i in range(1, n + 1)]
    return sorted(comps, key=lambda m: -int(m.sum()))


def _enclosed(mask: np.ndarray) -> np.ndarray:
    """Background pixels not 4-connected to the canvas border."""
    lab, _ = ndimage.label(~mask)
    border = set(np.unique(np.concatenate([lab[0], lab[-1], lab[:, 0], lab[:, -1]])))
    border.discard(0)
    return (~mask) & ~np.isin(lab, list(border))


def _mirror_score(mask: np.ndarray, steps: int = 180) -> float:
    """Best overlap of the mask with its reflection about some line.

    Lines pass within 2 px of the centroid (aliasing can shift the raster
    centroid off the true axis); directions are searched in ``180/steps``
    degree increments. Reflected pixels count as hits when within one
    pixel of the figure.
    """
    p = _coords(mask)
    mu = p.mean(axis=0)
    d = p - mu
    near = ndimage.binary_dilation(mask, structure=np.ones((3, 3)))
    h, w = mask.shape
    best = 0.0
    for t in np.arange(steps) * math.pi / steps:
        a = np.array([math.cos(t), math.sin(t)])
        normal = np.array([-a[1], a[0]])
        base = 2 * np.outer(d @ a, a) - d
        for off in np.arange(-2.0, 2.01, 0.5):
            ij = np.rint(mu + off * normal + base + off * normal).astype(int)
            ok = (ij[:, 0] >= 0) & (ij[:, 0] < w) & (ij[:, 1] >= 0) & (ij[:, 1] < h)
            best = max(best, float(near[ij[ok, 1], ij[ok, 0]].sum()) / len(p))
    return best


def _elongation(mask: np.ndarray) -> float:
    _, w, _ = _pca(_coords(mask))
    return float(math.sqrt(w[0] / max(w[1], 1e-12)))


def chirality_sign(mask: np.ndarray) -> int:
    """Handedness from the fourth-order mixed moment in the principal frame.

    ``sum(u * v**3)`` is unchanged by rotation and by the half-turn
    ambiguity of the principal axis, and changes sign under reflection.
    """
    p = _coords(mask)
    mu, _, vecs = _pca(p)
    a = vecs[:, 0]
    b = np.array([-a[1], a[0]])
    d = p - mu
    u, v = d @ a, d @ b
    return 1 if float(np.sum(u * v ** 3)) > 0 else -1


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    gen_id: str
    concept_id: int
    concept_name: str
    category: str
    draw: Callable[[np.random.Generator, bool], Shape]
    validate: Callable[[np.ndarray], bool]
    jitter: Jitter = Jitter()


GENERATORS: dict[str, Generator] = {}


def _register(gen_id, concept_id, concept_name, category, validate, jitter=Jitter()):
    def deco(fn):
        GENERATORS[gen_id] = Generator(gen_id, concept_id, concept_name, category, fn, validate, jitter)
        return fn

    return deco


def _closed_outline(rng, kind, r):
    """A closed outline of roughly radius ``r`` as a point array."""
    if kind == "circle":
        return arc(0, 0, r, r)
    if kind == "ellipse":
        return arc(0, 0, r, 0.65 * r)
    n = {"triangle": 3, "square": 4, "pentagon": 5}[kind]
    t = np.arange(n + 1) * 2 * math.pi / n
    return np.column_stack((r * np.cos(t), r * np.sin(t)))


def _open_outline(pts: np.ndarray, gap: float) -> np.ndarray:
    """Drop a fraction ``gap`` of the perimeter from a closed outline."""
    seg = np.hypot(*np.diff(pts, axis=0).T)
    s = np.concatenate([[0], np.cumsum(seg)])
    total = s[-1]
    keep = np.linspace(0, total * (1 - gap), 200)
    return np.column_stack((np.interp(keep, s, pts[:, 0]), np.interp(keep, s, pts[:, 1])))


_OUTLINES = ("circle", "triangle", "square", "pentagon", "ellipse")


def _is_closed(mask):
    return bool(_enclosed(mask).sum() > 20)


@_register("closure", 5, "Closure", "Topology", _is_closed)
def _closure(rng, conforming):
    kind = _OUTLINES[rng.integers(len(_OUTLINES))]
    pts = _closed_outline(rng, kind, rng.uniform(22, 32))
    if not conforming:
        pts = _open_outline(pts, 0.15)
    return Shape().line(pts)


def _dot_inside(mask):
    comps = _components(mask)
    if len(comps) < 2:
        return False
    inner = _enclosed(comps[0])
    r, c = np.nonzero(comps[1])
    return bool(inner[int(round(r.mean())), int(round(c.mean()))])


@_register("inside", 4, "Inside", "Topology", _dot_inside)
def _inside(rng, conforming):
    kind = _OUTLINES[rng.integers(len(_OUTLINES))]
    r = rng.uniform(24, 30)
    sh = Shape().line(_closed_outline(rng, kind, r))
    t = rng.uniform(0, 2 * math.pi)
    d = rng.uniform(0, 0.25) * r if conforming else 1.45 * r
    return sh.disk(d * math.cos(t), d * math.sin(t), 3.0)


def _straight(mask):
    p = _coords(mask)
    mu, _, vecs = _pca(p)
    off = np.abs((p - mu) @ vecs[:, 1])
    return bool(off.max() < DEFAULT_STROKE / 2 + 2.0)


@_register("straight_line", 10, "Straight line", "Euclidean geometry", _straight)
def _straight_line(rng, conforming):
    half = rng.uniform(25, 40)
    if conforming:
        return Shape().line((-half, 0), (half, 0))
    sag = 0.2 * 2 * half
    # circle through both endpoints with the requested sagitta
    rad = (half * half + sag * sag) / (2 * sag)
    t = math.asin(half / rad)
    return Shape().line(arc(0, rad - sag, rad, rad, -math.pi / 2 - t, -math.pi / 2 + t))


def _parallel(mask):
    comps = _components(mask)
    if len(comps) != 2:
        return False
    dirs = [_pca(_coords(c))[2][:, 0] for c in comps]
    ang = math.degrees(math.acos(min(1.0, abs(float(dirs[0] @ dirs[1])))))
    return ang < 6.0


@_register("parallel_lines", 37, "Parallel lines", "Euclidean geometry", _parallel)
def _parallel_lines(rng, conforming):
    half = rng.uniform(20, 30)
    gap = rng.uniform(16, 24)
    shift = rng.uniform(-10, 10)
    sh = Shape().line((-half, -gap / 2), (half, -gap / 2))
    tilt = 0.0 if conforming else math.radians(rng.choice([-1, 1]) * rng.uniform(22, 30))
    c, s = math.cos(tilt), math.sin(tilt)
    half2 = rng.uniform(20, 30)
    return sh.line((shift - c * half2, gap / 2 - s * half2), (shift + c * half2, gap / 2 + s * half2))


def _round_ratio(limit):
    def check(mask):
        return _elongation(mask) < limit

    return check


@_register("square", 23, "Square", "Geometrical figures", _round_ratio(1.2))
def _square(rng, conforming):
    side = rng.uniform(36, 50)
    w, h = (side, side) if conforming else (side * 1.3, side / 1.3)
    return Shape().line((-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2), closed=True)


@_register("circle", 17, "Circle", "Geometrical figures", _round_ratio(1.15))
def _circle(rng, conforming):
    r = rng.uniform(20, 32)
    return Shape().line(arc(0, 0, r, r) if conforming else arc(0, 0, r * 1.25, r / 1.25))


def _mirror_symmetric(mask):
    return _mirror_score(mask) > 0.97


def _star(radii, mirrored):
    n = len(radii)
    t = np.arange(n) * 2 * math.pi / n
    if mirrored:
        # r(-t) = r(t): radii symmetric about the local x-axis
        radii = np.array([radii[min(k, n - k) % n] for k in range(n)])
    return np.column_stack((radii * np.cos(t), radii * np.sin(t)))


def _star_asymmetry(radii) -> float:
    """Smallest radius mismatch over all mirror axes a star polygon could have."""
    n = len(radii)
    worst = np.inf
    for j in range(n):
        through = max(abs(radii[(j + m) % n] - radii[(j - m) % n]) for m in range(n))
        between = max(abs(radii[(j + 1 + m) % n] - radii[(j - m) % n]) for m in range(n))
        worst = min(worst, through, between)
    return float(worst)


@_register("vertical_axis", 28, "Vertical axis", "Symmetrical figures", _mirror_symmetric)
def _vertical_axis(rng, conforming):
    def draw():
        # short and long spikes, so asymmetry stays visible on small canvases
        return np.where(rng.random(8) < 0.5, rng.uniform(10, 14, 8), rng.uniform(32, 38, 8))

    radii = draw()
    while not conforming and _star_asymmetry(radii) < 18.0:
        radii = draw()
    return Shape().line(_star(radii, conforming), closed=True)


@_register("chirality_z", 42, "Vertical axis (chirality)", "Chiral figures",
           lambda m: chirality_sign(m) < 0, Jitter(size=0.05))
def _chirality_z(rng, conforming):
    a, h = 18.0, 28.0
    sx = 1.0 if conforming else -1.0
    pts = [(-a, -h), (a, -h), (-a, h), (a, h)]
    return Shape().line(*[(sx * x, y) for x, y in pts])


def _dot_centered(mask):
    comps = _components(mask)
    if len(comps) < 2:
        return False
    ring, dot = _coords(comps[0]), _coords(comps[1])
    center = ring.mean(axis=0)
    radius = float(np.hypot(*(ring - center).T).mean())
    return float(np.hypot(*(dot.mean(axis=0) - center))) < 0.15 * radius


@_register("center_of_circle", 18, "Center of circle", "Metric properties", _dot_centered)
def _center_of_circle(rng, conforming):
    r = rng.uniform(22, 32)
    sh = Shape().line(arc(0, 0, r, r))
    if conforming:
        return sh.disk(0, 0, 3.0)
    t = rng.uniform(0, 2 * math.pi)
    return sh.disk(0.5 * r * math.cos(t), 0.5 * r * math.sin(t), 3.0)


def _tick_centered(mask):
    p = _coords(mask)
    mu, _, vecs = _pca(p)
    u, v = (p - mu) @ vecs[:, 0], (p - mu) @ vecs[:, 1]
    tick = np.abs(v) > DEFAULT_STROKE / 2 + 1.5
    if not tick.any():
        return False
    mid = 0.5 * (u.min() + u.max())
    return abs(float(u[tick].mean()) - mid) < 0.08 * float(u.max() - u.min())


@_register("middle_of_segment", 19, "Middle of segment", "Metric properties", _tick_centered)
def _middle_of_segment(rng, conforming):
    half = rng.uniform(28, 40)
    pos = 0.0 if conforming else rng.choice([-1, 1]) * 0.5 * half
    return Shape().line((-half, 0), (half, 0)).line((pos, -6), (pos, 6))


_FLAG = [(0, 14), (0, -14), (11, -8), (0, -2)]


@_register("vertical_symmetry", 27, "Vertical symmetry", "Geometrical transformations", _mirror_symmetric)
def _vertical_symmetry(rng, conforming):
    d = rng.uniform(10, 16)
    sh = Shape().line(*[(x - d - 11, y) for x, y in _FLAG])
    if conforming:
        return sh.line(*[(d + 11 - x, y) for x, y in _FLAG])
    return sh.line(*[(x + d, y) for x, y in _FLAG])


# ---------------------------------------------------------------------------


def place(gen: Generator, rng: np.random.Generator, conforming: bool, jitter: Jitter,
          size: int = DEFAULT_SIZE) -> BinaryImage:
    shape = gen.draw(rng, conforming)
    angle = rng.uniform(-jitter.rotation, jitter.rotation)
    # shapes are drawn for the default canvas and scaled to the requested one
    scale = (1.0 + rng.uniform(-jitter.size, jitter.size)) * size / DEFAULT_SIZE
    room = size / 2 - shape.extent() * scale - 2
    if room < 0:
        raise ValueError(f"{gen.gen_id}: figure does not fit a {size}px canvas")
    amp = min(jitter.position, room)
    dx, dy = rng.uniform(-amp, amp, size=2)
    # pixel centers are integers, so the canvas center is (size - 1) / 2
    c = (size - 1) / 2
    return render(shape.transformed(angle, scale, c + dx, c + dy), size)


def synthesize_images(gen_id: str, seed: int, jitter: Jitter | dict | None = None,
                      size: int = DEFAULT_SIZE) -> tuple[list[GrayImage], int]:
    """Six rendered images and the index of the odd one."""
    if gen_id not in GENERATORS:
        raise KeyError(f"unknown generator {gen_id!r}; known: {sorted(GENERATORS)}")
    if size < 64:
        raise ValueError("canvas must be at least 64x64")
    gen = GENERATORS[gen_id]
    if jitter is None:
        jitter = gen.jitter
    elif isinstance(jitter, dict):
        jitter = Jitter(**{**gen.jitter.__dict__, **jitter})
    rng = np.random.default_rng(np.random.SeedSequence(int(seed) & (2 ** 64 - 1)))
    odd = int(rng.integers(6))
    images = [place(gen, rng, k != odd, jitter, size).to_gray() for k in range(6)]
    return images, odd
