"""Acceptance criteria, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get a PASS/FAIL line per
criterion in the terminal summary.
"""

import itertools
import math
import time

import numpy as np
import pytest

from geomint import evalkit
from geomint.align import align
from geomint.cli import main
from geomint.features import axis_profiles, profile_difference, self_symmetry
from geomint.raster import GrayImage, PointSet, image_points
from geomint.solver import ModelConfig, solve_points, solve_trial
from geomint.stimuli import GENERATORS
from geomint.trials import generate_trials, synthesize_problem, synthetic_benchmark

from conftest import oracle_l1, oracle_profiles, oracle_self

GEN_IDS = sorted(GENERATORS)
PRESETS = ("cs", "cs+sspread", "four")


def note(request, text):
    request.node.acceptance_note = text


@pytest.fixture(scope="module")
def benchmark_run():
    t0 = time.perf_counter()
    trials = synthetic_benchmark(seed=0)
    reports = {name: evalkit.evaluate(trials, ModelConfig.preset(name)) for name in ("four", "cs")}
    return trials, reports, time.perf_counter() - t0


@pytest.mark.acceptance("1. conditional: presets reported beside published values")
def test_presets_side_by_side_with_published(tmp_path, capsys, request):
    manifests = []
    for k, gen in enumerate(("closure", "circle", "chirality_z")):
        main(["generate", "--concept", gen, "--seed", str(k), "--out", str(tmp_path / gen)])
        manifests.append(str(tmp_path / gen / "problem.json"))
    assert main(["trials", *manifests, "--out", str(tmp_path / "trials.json")]) == 0
    capsys.readouterr()
    assert main(["evaluate", str(tmp_path / "trials.json"), "--compare-presets"]) == 0
    text = capsys.readouterr().out
    overall = next(l for l in text.splitlines() if l.startswith("Overall")).split()[1:]
    assert len(overall) == 6
    assert overall[1::2] == ["78.4%", "82.8%", "84.7%"]
    assert all(v.endswith("%") and v != "undefined" for v in overall[0::2])
    note(request, ", ".join(f"{n} {overall[2 * i]} (published {overall[2 * i + 1]})"
                            for i, n in enumerate(PRESETS)))


@pytest.mark.acceptance("2. trial-count law over 50 problems, < 1 s")
def test_trial_count_law(request):
    rng = np.random.default_rng(50)
    t0 = time.perf_counter()
    problems = [synthesize_problem(GEN_IDS[i % len(GEN_IDS)], seed=int(rng.integers(2 ** 62)), size=64 + 64 * (i % 2))
                for i in range(50)]
    synth = time.perf_counter() - t0
    t0 = time.perf_counter()
    all_trials = [generate_trials(p) for p in problems]
    elapsed = time.perf_counter() - t0
    for p, trials in zip(problems, all_trials):
        assert len(trials) == 20
        odd = p.images[p.odd_index]
        idx = {id(im): k for k, im in enumerate(p.images)}
        pairs = set()
        for t in trials:
            assert [c is odd for c in t.choices].count(True) == 1
            assert t.choices[1 - t.correct_index] is odd
            pairs.add((idx[id(t.target)], idx[id(t.choices[t.correct_index])]))
        conf = p.conforming
        assert pairs == {(a, b) for a in conf for b in conf if a != b}
    note(request, f"generate_trials {elapsed * 1e3:.1f} ms; synthesis {synth:.2f} s")
    assert elapsed < 1.0


def _oracle_check(pts):
    """Compare kernels with the per-slice oracle; returns per-feature dicts."""
    out = {}
    for axis in ("vertical", "horizontal"):
        want = oracle_profiles(pts, axis)
        got = axis_profiles(np.asarray(pts, dtype=float), axis)
        for i, prof in enumerate(got):
            d = {b: v[i] for b, v in want.items()}
            assert prof.as_dict() == d
            out[axis, i] = (prof, d)
    for i in range(3):
        (pv, dv), (ph, dh) = out["vertical", i], out["horizontal", i]
        s = self_symmetry(pv, ph)
        assert s.as_dict() == oracle_self(dv, dh)
        out["self", i] = (s, s.as_dict())
    return out


@pytest.mark.acceptance("3. exhaustive 4x4 feature-oracle sweep, bit-equal, < 30 s")
def test_exhaustive_oracle_sweep(request):
    cells = [(x, y) for y in range(4) for x in range(4)]
    t0 = time.perf_counter()
    n = 0
    prev = None
    for k in range(2, 7):
        for combo in itertools.combinations(cells, k):
            raw = _oracle_check(list(combo))
            # the same figure centered by the pipeline, without rotation
            cen = _oracle_check(align(PointSet(combo), 0.0).points.points.tolist())
            if prev is not None:
                for key in raw:
                    assert profile_difference(raw[key][0], prev[key][0]) == oracle_l1(raw[key][1], prev[key][1])
                    assert profile_difference(cen[key][0], raw[key][0]) == oracle_l1(cen[key][1], raw[key][1])
            prev = raw
            n += 1
    elapsed = time.perf_counter() - t0
    note(request, f"{n} figures in {elapsed:.1f} s")
    assert n == sum(math.comb(16, k) for k in range(2, 7)) == 14876
    assert elapsed < 30


def _shift(img: GrayImage, dx: int, dy: int, pad: int = 12) -> GrayImage:
    a = np.full((img.height + pad, img.width + pad), 255, dtype=np.uint8)
    a[dy:dy + img.height, dx:dx + img.width] = img.intensities
    return GrayImage(a)


@pytest.mark.acceptance("4. translation and rotation invariance over 200 trials, < 60 s")
def test_invariance_suite(request):
    rng = np.random.default_rng(2024)
    cfg = ModelConfig()
    t0 = time.perf_counter()
    total = agree = big = big_agree = 0
    for i in range(200):
        trial = generate_trials(synthesize_problem(GEN_IDS[i % len(GEN_IDS)], seed=5000 + i))[i % 20]
        imgs = (trial.target, *trial.choices)
        base = solve_trial(*imgs, cfg=cfg)
        # (a) independent integer shifts of every image
        shifts = rng.integers(0, 13, size=(3, 2))
        moved = [_shift(im, int(dx), int(dy)) for im, (dx, dy) in zip(imgs, shifts)]
        assert solve_trial(*moved, cfg=cfg) == base, f"trial {i}"
        # (b) common continuous rotation of the three point sets
        phi = rng.uniform(0, 2 * math.pi)
        pts = [image_points(im, cfg.threshold) for im in imgs]
        rot = solve_points(*(PointSet(p.points.astype(float)).rotated(phi) for p in pts), cfg=cfg)
        same = rot.chosen_index == base.chosen_index
        d0, d1 = base.differences
        total += 1
        agree += same
        if abs(d0 - d1) > 0.05 * max(d0, d1):
            big += 1
            big_agree += same
    elapsed = time.perf_counter() - t0
    note(request, f"rotation kept {agree}/{total}, {big_agree}/{big} with gap > 5%; {elapsed:.1f} s")
    assert agree / total >= 0.95
    assert big_agree == big
    assert elapsed < 60


@pytest.mark.acceptance("5. chirality suite scores 100% with four features, < 10 s")
def test_chirality_suite(request):
    t0 = time.perf_counter()
    trials = generate_trials(synthesize_problem("chirality_z", seed=0))
    r = evalkit.evaluate(trials, ModelConfig.preset("four"))
    elapsed = time.perf_counter() - t0
    note(request, f"{r.n_correct}/{r.n_trials} in {elapsed:.2f} s")
    assert r.n_trials == 20
    assert r.overall == 1.0
    assert elapsed < 10


@pytest.mark.acceptance("6. benchmark: four >= 75% and >= cs - 5 pts, < 60 s")
def test_above_chance(benchmark_run, request):
    trials, reports, elapsed = benchmark_run
    four, cs = reports["four"].overall, reports["cs"].overall
    note(request, f"{len(trials)} trials, four {four:.3f}, cs {cs:.3f}, {elapsed:.1f} s")
    assert len({t.concept_id for t in trials}) >= 7 and len(trials) >= 140
    assert four >= 0.75
    assert four >= cs - 0.05
    assert elapsed < 60


def _random_figure(rng, size=24):
    a = np.full((size, size), 255, dtype=np.uint8)
    h, w = rng.integers(4, 16, size=2)
    block = rng.random((h, w)) < rng.uniform(0.3, 0.8)
    block[0, 0] = block[-1, -1] = True
    y, x = rng.integers(0, size - 16, size=2)
    a[y:y + h, x:x + w][block] = 0
    return GrayImage(a)


@pytest.mark.acceptance("7. duplicated target is chosen with difference 0, < 5 s")
def test_zero_difference_identity(request):
    rng = np.random.default_rng(7)
    t0 = time.perf_counter()
    for i in range(100):
        target, other = _random_figure(rng), _random_figure(rng)
        for name in PRESETS:
            cfg = ModelConfig.preset(name)
            for slot in (0, 1):
                choices = (target, other) if slot == 0 else (other, target)
                d = solve_trial(target, *choices, cfg=cfg)
                assert d.differences[slot] == 0.0
                assert d.chosen_index == slot, f"figure {i}, {name}"
    elapsed = time.perf_counter() - t0
    note(request, f"{elapsed:.2f} s")
    assert elapsed < 5


@pytest.mark.acceptance("8. per-concept accuracies are multiples of 5%")
def test_granularity(benchmark_run, request):
    _, reports, _ = benchmark_run
    accs = [c.accuracy for r in reports.values() for c in r.per_concept.values()]
    assert accs and all(evalkit.is_multiple_of(a, 0.05) for a in accs)
    note(request, f"{len(accs)} concept accuracies checked")


@pytest.mark.acceptance("9. same-seed benchmark runs give byte-identical CSV")
def test_determinism(benchmark_run):
    _, reports, _ = benchmark_run
    again = evalkit.evaluate(synthetic_benchmark(seed=0), ModelConfig.preset("four"))
    first = evalkit.to_csv(reports["four"]).encode()
    assert evalkit.to_csv(again).encode() == first
