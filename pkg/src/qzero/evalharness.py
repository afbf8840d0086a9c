"""Dataset loading, accuracy evaluation, comparison, and top-k sweeps.

Dataset files are UTF-8 TSV, one `text<TAB>gold_label` per line; `#`
lines are comments and blank lines are skipped. Accuracy is averaged
over a configurable number of runs; with deterministic providers the
runs must agree exactly and that is asserted rather than assumed.
Examples that fail with a hard error count as incorrect: excluding
failures would inflate accuracy.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

from .classify import ClassificationResult, LabelSet

logger = logging.getLogger(__name__)

DEFAULT_RUNS = 3
DEFAULT_SWEEP_KS = (5, 10, 25, 50, 100)

ClassifyFn = Callable[[str], ClassificationResult]


class DatasetError(ValueError):
    """Dataset file is unusable."""


@dataclass(frozen=True)
class LabeledExample:
    text: str
    gold: str


@dataclass
class EvalReport:
    dataset_name: str
    mode: str
    accuracy: float
    n: int
    per_label: dict[str, tuple[int, int]]  # label -> (correct, total)
    config_fingerprint: str
    runs: int
    accuracy_mean_over_runs: float
    run_accuracies: tuple[float, ...] = ()
    failures: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "dataset_name": self.dataset_name,
            "mode": self.mode,
            "accuracy": self.accuracy,
            "n": self.n,
            "per_label": {y: list(ct) for y, ct in self.per_label.items()},
            "config_fingerprint": self.config_fingerprint,
            "runs": self.runs,
            "accuracy_mean_over_runs": self.accuracy_mean_over_runs,
            "run_accuracies": list(self.run_accuracies),
            "failures": list(self.failures),
        }


@dataclass
class SweepReport:
    points: list[tuple[int, float]]  # (k, accuracy), ks strictly increasing
    config_fingerprint: str
    failures: tuple[str, ...] = ()

    def as_dict(self) -> dict:
        return {
            "points": [[k, acc] for k, acc in self.points],
            "config_fingerprint": self.config_fingerprint,
            "failures": list(self.failures),
        }


def config_fingerprint(settings: dict) -> str:
    """Stable hash of a settings mapping (canonical JSON, sorted keys)."""
    payload = json.dumps(settings, sort_keys=True, ensure_ascii=True, default=str)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def load_dataset(path: str | Path, labels: LabelSet) -> list[LabeledExample]:
    """Read and validate a TSV dataset against the label set."""
    examples: list[LabeledExample] = []
    blanks = 0
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                blanks += 1
                continue
            if line.lstrip().startswith("#"):
                continue
            if "\t" not in line:
                raise DatasetError(f"line {line_no}: expected 'text<TAB>gold_label'")
            text, gold = line.split("\t", 1)
            gold = gold.strip()
            if gold not in labels:
                raise DatasetError(
                    f"line {line_no}: gold label {gold!r} not in the label set"
                )
            examples.append(LabeledExample(text=text, gold=gold))
    if blanks:
        logger.info("%s: skipped %d blank lines", path, blanks)
    if not examples:
        raise DatasetError(f"{path}: no examples")
    return examples


def _run_once(
    examples: Sequence[LabeledExample],
    labels: LabelSet,
    classify_fn: ClassifyFn,
    jobs: int,
) -> tuple[float, dict[str, tuple[int, int]], list[str]]:
    outcomes: list[tuple[int, bool, str | None]] = []

    def judge(item: tuple[int, LabeledExample]) -> tuple[int, bool, str | None]:
        i, ex = item
        try:
            result = classify_fn(ex.text)
            return i, result.predicted == ex.gold, None
        except Exception as e:  # hard failure counts as incorrect
            return i, False, f"example {i}: {type(e).__name__}: {e}"

    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(judge, enumerate(examples)))
    else:
        outcomes = [judge(item) for item in enumerate(examples)]

    outcomes.sort(key=lambda t: t[0])
    per_label = {y: [0, 0] for y in labels.labels}
    failures: list[str] = []
    correct = 0
    for (i, ok, err), ex in zip(outcomes, examples):
        per_label[ex.gold][1] += 1
        if ok:
            per_label[ex.gold][0] += 1
            correct += 1
        if err is not None:
            failures.append(err)
    accuracy = correct / len(examples)
    return accuracy, {y: (c, t) for y, (c, t) in per_label.items()}, failures


def evaluate(
    examples: Sequence[LabeledExample],
    labels: LabelSet,
    classify_fn: ClassifyFn,
    *,
    runs: int = DEFAULT_RUNS,
    dataset_name: str = "dataset",
    mode: str = "unknown",
    settings: dict | None = None,
    deterministic: bool = True,
    jobs: int = 1,
) -> EvalReport:
    """Run the classifier over the dataset `runs` times and report accuracy.

    With deterministic=True (local providers) all run accuracies must be
    identical, and are asserted to be; remote providers may vary, and the
    mean over runs captures that.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    if not examples:
        raise ValueError("no examples to evaluate")
    run_accs: list[float] = []
    first: tuple[float, dict[str, tuple[int, int]], list[str]] | None = None
    for _ in range(runs):
        outcome = _run_once(examples, labels, classify_fn, jobs)
        run_accs.append(outcome[0])
        if first is None:
            first = outcome
    if deterministic and len(set(run_accs)) != 1:
        raise RuntimeError(
            f"deterministic evaluation produced varying accuracies: {run_accs}"
        )
    accuracy, per_label, failures = first
    fingerprint = config_fingerprint(settings or {})
    return EvalReport(
        dataset_name=dataset_name,
        mode=mode,
        accuracy=accuracy,
        n=len(examples),
        per_label=per_label,
        config_fingerprint=fingerprint,
        runs=runs,
        accuracy_mean_over_runs=sum(run_accs) / runs,
        run_accuracies=tuple(run_accs),
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class CompareReport:
    dataset_name: str
    n: int
    base_mode: str
    new_mode: str
    base_pct: float
    delta_pct: float
    rendered: str

    def as_dict(self) -> dict:
        return {
            "dataset_name": self.dataset_name,
            "n": self.n,
            "base_mode": self.base_mode,
            "new_mode": self.new_mode,
            "base_pct": self.base_pct,
            "delta_pct": self.delta_pct,
            "rendered": self.rendered,
        }


def compare(report_a: EvalReport, report_b: EvalReport) -> CompareReport:
    """Signed percentage-point delta of b over a, rendered as
    "<base> +<delta>" / "<base> -<delta>" with two decimals."""
    if report_a.dataset_name != report_b.dataset_name or report_a.n != report_b.n:
        raise ValueError("reports compare different datasets")
    base_pct = round(report_a.accuracy * 100.0, 2)
    delta_pct = round(report_b.accuracy * 100.0 - base_pct, 2)
    sign = "+" if delta_pct >= 0 else "-"
    rendered = f"{base_pct:.2f} {sign}{abs(delta_pct):.2f}"
    return CompareReport(
        dataset_name=report_a.dataset_name,
        n=report_a.n,
        base_mode=report_a.mode,
        new_mode=report_b.mode,
        base_pct=base_pct,
        delta_pct=delta_pct,
        rendered=rendered,
    )


def sweep_k(
    examples: Sequence[LabeledExample],
    labels: LabelSet,
    classify_fn_for_k: Callable[[int], ClassifyFn],
    ks: Sequence[int] = DEFAULT_SWEEP_KS,
    *,
    settings: dict | None = None,
    runs: int = 1,
    jobs: int = 1,
) -> SweepReport:
    """One full evaluation per retrieved-document count, all else fixed.

    A failing k is recorded and the sweep continues; accuracy is not
    assumed monotone in k.
    """
    if not ks:
        raise ValueError("ks must be non-empty")
    if list(ks) != sorted(set(ks)):
        raise ValueError("ks must be strictly increasing")
    points: list[tuple[int, float]] = []
    failures: list[str] = []
    for k in ks:
        try:
            report = evaluate(
                examples,
                labels,
                classify_fn_for_k(k),
                runs=runs,
                dataset_name="sweep",
                mode=f"k={k}",
                settings=dict(settings or {}, k=k),
                jobs=jobs,
            )
            points.append((k, report.accuracy))
        except Exception as e:
            failures.append(f"k={k}: {type(e).__name__}: {e}")
    fingerprint = config_fingerprint(dict(settings or {}, ks=list(ks)))
    return SweepReport(points=points, config_fingerprint=fingerprint, failures=tuple(failures))


def write_report(report: EvalReport | SweepReport, path: str | Path) -> None:
    """Write one report as a single JSON object."""
    Path(path).write_text(
        json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def write_sweep_flat(report: SweepReport, path: str | Path) -> None:
    """Two-column k<TAB>accuracy file for plotting."""
    lines = [f"{k}\t{acc}" for k, acc in report.points]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
