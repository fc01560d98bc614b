"""Accuracy evaluation over trial sets and report rendering (table, CSV, JSON)."""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import reference
from .errors import GeomintError
from .solver import Decision, ModelConfig, solve_trial
from .trials import Trial, resolve_image

CSV_COLUMNS = (
    "concept_id", "concept_name", "category", "n_trials", "n_correct",
    "accuracy", "reference_human", "delta",
)

# A solver maps (trial, config) to a Decision or a bare chosen index.
Solver = Callable[[Trial, ModelConfig], "Decision | int"]


@dataclass(frozen=True)
class ConceptResult:
    concept_id: int
    concept_name: str
    category: str
    n_trials: int
    n_correct: int

    @property
    def accuracy(self) -> Optional[float]:
        return self.n_correct / self.n_trials if self.n_trials else None


@dataclass
class EvalReport:
    per_concept: dict[int, ConceptResult]
    config: ModelConfig
    errors: list[dict] = field(default_factory=list)
    with_reference: bool = True

    def _totals(self, results) -> tuple[int, int, Optional[float]]:
        n = sum(r.n_trials for r in results)
        c = sum(r.n_correct for r in results)
        return n, c, (c / n if n else None)

    @property
    def per_category(self) -> dict[str, tuple[int, int, Optional[float]]]:
        cats = {}
        for r in self.per_concept.values():
            cats.setdefault(r.category, []).append(r)
        order = {c: i for i, c in enumerate(reference.CATEGORY_ORDER)}
        return {c: self._totals(cats[c]) for c in sorted(cats, key=lambda c: (order.get(c, 99), c))}

    @property
    def overall(self) -> Optional[float]:
        return self._totals(self.per_concept.values())[2]

    @property
    def n_trials(self) -> int:
        return self._totals(self.per_concept.values())[0]

    @property
    def n_correct(self) -> int:
        return self._totals(self.per_concept.values())[1]

    @property
    def reference_deltas(self) -> Optional[dict]:
        """Signed (model - reference) differences; positive favors the model."""
        if not self.with_reference:
            return None
        concept = {}
        for cid, r in self.per_concept.items():
            h = reference.human_concept(cid)
            if h is not None and r.accuracy is not None:
                concept[cid] = r.accuracy - h
        category = {}
        for cat, (_, _, acc) in self.per_category.items():
            if cat in reference.HUMAN_CATEGORY and acc is not None:
                category[cat] = acc - reference.HUMAN_CATEGORY[cat]
        out = {"concept_vs_human": concept, "category_vs_human": category}
        preset = self.config.preset_name
        if preset in reference.MODEL_OVERALL and self.overall is not None:
            out["overall_vs_published_model"] = self.overall - reference.MODEL_OVERALL[preset]
        return out

    def __eq__(self, other):
        if not isinstance(other, EvalReport):
            return NotImplemented
        return (self.per_concept == other.per_concept and self.config == other.config
                and self.errors == other.errors)


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------


def default_solver(trial: Trial, cfg: ModelConfig) -> Decision:
    return solve_trial(resolve_image(trial.target), resolve_image(trial.choices[0]),
                       resolve_image(trial.choices[1]), cfg)


def _run_one(args):
    trial, cfg = args
    try:
        return default_solver(trial, cfg).chosen_index, None
    except GeomintError as exc:
        return None, f"{type(exc).__name__}: {exc}"


def evaluate(trials: Sequence[Trial], cfg: ModelConfig = ModelConfig(), *, strict: bool = True,
             jobs: int = 1, solver: Solver | None = None, with_reference: bool = True) -> EvalReport:
    """Solve every trial and aggregate accuracy by concept.

    In strict mode the first image error propagates. Otherwise failing
    trials are listed in ``errors`` and left out of every denominator.
    ``jobs > 1`` solves in worker processes (default solver only); the
    report is identical to a sequential run.
    """
    if solver is None and jobs > 1 and len(trials) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_run_one, [(t, cfg) for t in trials], chunksize=8))
        if strict:
            for (_, err), t in zip(outcomes, trials):
                if err is not None:
                    raise GeomintError(err)
    else:
        solve = solver or default_solver
        outcomes = []
        for t in trials:
            try:
                d = solve(t, cfg)
                outcomes.append((d.chosen_index if isinstance(d, Decision) else int(d), None))
            except GeomintError as exc:
                if strict:
                    raise
                outcomes.append((None, f"{type(exc).__name__}: {exc}"))

    counts: dict[int, list] = {}
    errors = []
    for i, (t, (chosen, err)) in enumerate(zip(trials, outcomes)):
        if err is not None:
            errors.append({"trial": i, "concept_id": t.concept_id, "error": err})
            continue
        slot = counts.setdefault(t.concept_id, [t.concept_name, t.category, 0, 0])
        if t.concept_name and (not slot[0] or t.concept_name < slot[0]):
            slot[0] = t.concept_name
        slot[2] += 1
        slot[3] += int(chosen == t.correct_index)
    per_concept = {
        cid: ConceptResult(cid, name or reference.CONCEPTS.get(cid, ("", ""))[1], cat, n, c)
        for cid, (name, cat, n, c) in sorted(counts.items())
    }
    return EvalReport(per_concept, cfg, errors, with_reference)


# ---------------------------------------------------------------------------
# Rendering and parsing
# ---------------------------------------------------------------------------


def _num(x: Optional[float]) -> str:
    return "" if x is None else repr(float(x))


def _pct(x: Optional[float]) -> str:
    return "undefined" if x is None else f"{100 * x:.1f}%"


def _signed_pct(x: Optional[float]) -> str:
    return "" if x is None else f"{100 * x:+.1f}%"


def to_csv(r: EvalReport) -> str:
    buf = io.StringIO()
    buf.write("# config=" + json.dumps(r.config.to_dict(), sort_keys=True) + "\n")
    buf.write("# errors=" + json.dumps(r.errors, sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for cid in sorted(r.per_concept):
        c = r.per_concept[cid]
        human = reference.human_concept(cid) if r.with_reference else None
        delta = c.accuracy - human if human is not None and c.accuracy is not None else None
        w.writerow([cid, c.concept_name, c.category, c.n_trials, c.n_correct,
                    _num(c.accuracy), _num(human), _num(delta)])
    return buf.getvalue()


def from_csv(text: str) -> EvalReport:
    meta, rows = {}, []
    for line in text.splitlines():
        if line.startswith("# ") and "=" in line:
            key, _, value = line[2:].partition("=")
            meta[key] = json.loads(value)
        elif line.strip():
            rows.append(line)
    reader = csv.DictReader(rows)
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV columns {reader.fieldnames}")
    per_concept = {}
    has_ref = False
    for row in reader:
        cid = int(row["concept_id"])
        has_ref |= bool(row["reference_human"])
        per_concept[cid] = ConceptResult(cid, row["concept_name"], row["category"],
                                         int(row["n_trials"]), int(row["n_correct"]))
    cfg = ModelConfig.from_dict(meta["config"]) if "config" in meta else ModelConfig()
    return EvalReport(per_concept, cfg, meta.get("errors", []), has_ref or not per_concept)


def to_dict(r: EvalReport) -> dict:
    return {
        "per_concept": {
            str(cid): {
                "concept_name": c.concept_name,
                "category": c.category,
                "n_trials": c.n_trials,
                "n_correct": c.n_correct,
                "accuracy": c.accuracy,
            }
            for cid, c in sorted(r.per_concept.items())
        },
        "per_category": {
            cat: {"n_trials": n, "n_correct": k, "accuracy": acc}
            for cat, (n, k, acc) in r.per_category.items()
        },
        "overall": r.overall,
        "n_trials": r.n_trials,
        "n_correct": r.n_correct,
        "config": r.config.to_dict(),
        "reference_deltas": (
            None if r.reference_deltas is None else {
                k: ({str(kk): vv for kk, vv in v.items()} if isinstance(v, dict) else v)
                for k, v in r.reference_deltas.items()
            }
        ),
        "errors": r.errors,
    }


def to_json(r: EvalReport) -> str:
    return json.dumps(to_dict(r), indent=2, sort_keys=False) + "\n"


def from_json(text: str) -> EvalReport:
    d = json.loads(text)
    per_concept = {
        int(cid): ConceptResult(int(cid), v["concept_name"], v["category"], v["n_trials"], v["n_correct"])
        for cid, v in d["per_concept"].items()
    }
    return EvalReport(per_concept, ModelConfig.from_dict(d["config"]), d.get("errors", []),
                      d.get("reference_deltas") is not None)


def to_table(r: EvalReport) -> str:
    preset = r.config.preset_name
    published = reference.MODEL_ACCURACY.get(preset, {}) if r.with_reference else {}
    lines = [f"features: {r.config.selection}  (preset: {preset or 'custom'})  threshold: {r.config.threshold}"]
    header = f"{'Category':<30}{'Trials':>7}{'Correct':>8}{'Accuracy':>10}"
    if r.with_reference:
        header += f"{'Human':>9}{'Delta':>9}{'Publ.':>8}"
    lines += [header, "-" * len(header)]
    for cat, (n, k, acc) in r.per_category.items():
        row = f"{cat:<30}{n:>7}{k:>8}{_pct(acc):>10}"
        if r.with_reference:
            h = reference.HUMAN_CATEGORY.get(cat)
            delta = acc - h if h is not None and acc is not None else None
            row += f"{_pct(h) if h is not None else '':>9}{_signed_pct(delta):>9}"
            row += f"{_pct(published[cat]) if cat in published else '':>8}"
        lines.append(row)
    lines.append("-" * len(header))
    overall = f"{'Overall':<30}{r.n_trials:>7}{r.n_correct:>8}{_pct(r.overall):>10}"
    if r.with_reference and preset in reference.MODEL_OVERALL:
        overall += f"{'':>9}{'':>9}{_pct(reference.MODEL_OVERALL[preset]):>8}"
    lines.append(overall)
    if r.per_concept:
        lines += ["", f"{'Concept':<8}{'Name':<32}{'Trials':>7}{'Accuracy':>10}"
                  + (f"{'Human':>9}{'Delta':>9}" if r.with_reference else "")]
        for cid in sorted(r.per_concept):
            c = r.per_concept[cid]
            row = f"{cid:<8}{c.concept_name[:31]:<32}{c.n_trials:>7}{_pct(c.accuracy):>10}"
            if r.with_reference:
                h = reference.human_concept(cid)
                delta = c.accuracy - h if h is not None and c.accuracy is not None else None
                row += f"{_pct(h) if h is not None else '':>9}{_signed_pct(delta):>9}"
            lines.append(row)
    if r.errors:
        lines += ["", f"{len(r.errors)} trial(s) failed and were excluded:"]
        lines += [f"  trial {e['trial']}: {e['error']}" for e in r.errors]
    if r.with_reference:
        lines += ["", "Human and Publ. columns are published reference values measured on the",
                  "original stimuli; they are not targets for synthetic stimuli."]
    return "\n".join(lines) + "\n"


def render_report(r: EvalReport, fmt: str = "table") -> str:
    if fmt == "table":
        return to_table(r)
    if fmt == "csv":
        return to_csv(r)
    if fmt == "json":
        return to_json(r)
    raise ValueError(f"unknown report format {fmt!r}")


def compare_presets(trials: Sequence[Trial], threshold: int = 128, *, strict: bool = True,
                    jobs: int = 1) -> tuple[dict[str, EvalReport], str]:
    """Evaluate the three shipped presets and tabulate them next to the published values."""
    reports = {
        name: evaluate(trials, ModelConfig.preset(name, threshold), strict=strict, jobs=jobs)
        for name in reference.MODEL_OVERALL
    }
    names = list(reports)
    lines = [f"{'Category':<30}" + "".join(f"{n:>12}{'(publ.)':>9}" for n in names)]
    lines.append("-" * len(lines[0]))
    cats = list(reference.CATEGORY_ORDER)
    for rep in reports.values():
        cats += [c for c in rep.per_category if c not in cats]
    for cat in cats:
        row = f"{cat:<30}"
        for n in names:
            acc = reports[n].per_category.get(cat, (0, 0, None))[2]
            row += f"{_pct(acc):>12}{_pct(reference.MODEL_ACCURACY[n].get(cat)) if cat in reference.MODEL_ACCURACY[n] else '':>9}"
        lines.append(row)
    lines.append("-" * len(lines[0]))
    lines.append(f"{'Overall':<30}" + "".join(
        f"{_pct(reports[n].overall):>12}{_pct(reference.MODEL_OVERALL[n]):>9}" for n in names))
    return reports, "\n".join(lines) + "\n"


def is_multiple_of(x: float, step: float, tol: float = 1e-9) -> bool:
    q = x / step
    return math.isclose(q, round(q), abs_tol=tol)
