"""Metrics and report formats: per-class precision/recall/F1/support with
accuracy and unweighted macro averages, ablation sweeps, and per-dimension
prediction reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

from .dimensions import (
    ALTERNATIVE,
    BASIC_OPERATION,
    CONDITIONAL,
    DIMENSIONS,
    GOAL,
    IMPLICATION_ORDER,
    POLARITY,
    SOURCE_OF_COHERENCE,
    SPECIFICITY,
    TEMPORALITY,
    VALUE_SETS,
    DimensionProfile,
)
from .errors import UnknownDimensionError, UnknownLabelError

# Ablation group names: the four binary features are removed together.
ABLATION_GROUPS: dict[str, tuple[str, ...]] = {
    "pol": (POLARITY,),
    "bop": (BASIC_OPERATION,),
    "soc": (SOURCE_OF_COHERENCE,),
    "impl": (IMPLICATION_ORDER,),
    "temp": (TEMPORALITY,),
    "add": (SPECIFICITY, ALTERNATIVE, CONDITIONAL, GOAL),
}


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class ClassificationReport:
    rows: dict[str, ClassMetrics]
    accuracy: float
    macro_precision: float
    macro_recall: float
    macro_f1: float
    total_support: int

    def to_dict(self) -> dict:
        return {
            "rows": {
                cls: {"precision": m.precision, "recall": m.recall,
                      "f1": m.f1, "support": m.support}
                for cls, m in self.rows.items()
            },
            "accuracy": self.accuracy,
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "total_support": self.total_support,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ClassificationReport":
        return cls(
            rows={c: ClassMetrics(**m) for c, m in d["rows"].items()},
            accuracy=d["accuracy"],
            macro_precision=d["macro_precision"],
            macro_recall=d["macro_recall"],
            macro_f1=d["macro_f1"],
            total_support=d["total_support"],
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ClassificationReport":
        return cls.from_dict(json.loads(text))


def classification_report(golds, preds, class_set) -> ClassificationReport:
    """Per-class P/R/F1/support plus accuracy and unweighted macro means.

    Any 0/0 metric is defined as 0. Macro averages run over the full
    class_set, so zero-support classes drag the macro down, matching the
    fixed-way reporting convention.
    """
    if len(golds) != len(preds):
        raise ValueError(f"length mismatch: {len(golds)} golds vs {len(preds)} preds")
    if not golds:
        raise ValueError("empty label sequence")
    classes = list(class_set)
    allowed = set(classes)
    for label in list(golds) + list(preds):
        if label not in allowed:
            raise UnknownLabelError(f"label {label!r} not in class set")
    tp = {c: 0 for c in classes}
    fp = {c: 0 for c in classes}
    fn = {c: 0 for c in classes}
    support = {c: 0 for c in classes}
    correct = 0
    for g, p in zip(golds, preds):
        support[g] += 1
        if g == p:
            tp[g] += 1
            correct += 1
        else:
            fp[p] += 1
            fn[g] += 1
    rows = {}
    for c in classes:
        prec = tp[c] / (tp[c] + fp[c]) if tp[c] + fp[c] else 0.0
        rec = tp[c] / (tp[c] + fn[c]) if tp[c] + fn[c] else 0.0
        f1 = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        rows[c] = ClassMetrics(precision=prec, recall=rec, f1=f1, support=support[c])
    n_classes = len(classes)
    return ClassificationReport(
        rows=rows,
        accuracy=correct / len(golds),
        macro_precision=sum(m.precision for m in rows.values()) / n_classes,
        macro_recall=sum(m.recall for m in rows.values()) / n_classes,
        macro_f1=sum(m.f1 for m in rows.values()) / n_classes,
        total_support=len(golds),
    )


def format_report(report: ClassificationReport,
                  baseline: ClassificationReport | None = None) -> str:
    """Human-readable aligned table; a second report renders as paired columns."""
    def cells(r, cls):
        m = r.rows.get(cls)
        if m is None:
            return "    -     -     -      -"
        return f"{m.precision:6.2f}{m.recall:6.2f}{m.f1:6.2f}{m.support:7d}"

    width = max([len(c) for c in report.rows] + [len("macro avg")])
    header = f"{'class':<{width}}  {'prec':>5} {'rec':>5} {'f1':>5} {'supp':>6}"
    if baseline is not None:
        header += f"  | {'prec':>5} {'rec':>5} {'f1':>5} {'supp':>6}"
    lines = [header]
    for cls in report.rows:
        line = f"{cls:<{width}}{cells(report, cls)}"
        if baseline is not None:
            line += "  |" + cells(baseline, cls)
        lines.append(line)
    lines.append("")
    lines.append(f"{'accuracy':<{width}}{report.accuracy:6.2f}")
    lines.append(
        f"{'macro avg':<{width}}{report.macro_precision:6.2f}"
        f"{report.macro_recall:6.2f}{report.macro_f1:6.2f}{report.total_support:7d}"
    )
    if baseline is not None:
        lines.append(f"{'accuracy (2)':<{width}}{baseline.accuracy:6.2f}")
        lines.append(
            f"{'macro avg (2)':<{width}}{baseline.macro_precision:6.2f}"
            f"{baseline.macro_recall:6.2f}{baseline.macro_f1:6.2f}"
            f"{baseline.total_support:7d}"
        )
    return "\n".join(lines)


@dataclass(frozen=True)
class AblationResult:
    removed: tuple[str, ...]
    full_report: ClassificationReport
    ablated_report: ClassificationReport
    accuracy_delta: float
    macro_f1_delta: float
    per_class_f1_delta: dict[str, float]


def resolve_ablation_dims(names) -> tuple[str, ...]:
    """Group names ("pol", "add", ...) or bare dimension ids -> dimension ids."""
    removed: list[str] = []
    for name in names:
        if name in ABLATION_GROUPS:
            removed.extend(ABLATION_GROUPS[name])
        elif name in DIMENSIONS:
            removed.append(name)
        else:
            raise UnknownDimensionError(f"unknown dimension or group {name!r}")
    return tuple(dict.fromkeys(removed))


def run_ablation(splits, removed_names, cfg) -> AblationResult:
    """Train the full model and the reduced-concatenation model with the same
    seed and data; report the metric deltas (ablated minus full)."""
    from .models import KIND_AUGMENTED, ModelConfig
    from .training import predictions, train

    removed = resolve_ablation_dims(removed_names)
    active = tuple(d for d in DIMENSIONS if d not in removed)

    def run(active_dims):
        model_config = ModelConfig(
            hidden_dim=cfg.encoder.hidden_dim,
            num_classes=len(splits.class_set),
            dropout=cfg.dropout,
            active_dims=active_dims,
        )
        model, _history, test_data = train(KIND_AUGMENTED, splits, cfg, model_config)
        preds = predictions(model, KIND_AUGMENTED, test_data)
        golds = [int(v) for v in test_data.labels.tolist()]
        index = list(range(len(splits.class_set)))
        report = classification_report(golds, preds, index)
        # re-key rows by class label for readability
        rows = {splits.class_set[i]: report.rows[i] for i in index}
        return replace(report, rows=rows)

    full = run(DIMENSIONS)
    ablated = run(active) if removed else full
    return AblationResult(
        removed=removed,
        full_report=full,
        ablated_report=ablated,
        accuracy_delta=ablated.accuracy - full.accuracy,
        macro_f1_delta=ablated.macro_f1 - full.macro_f1,
        per_class_f1_delta={
            cls: ablated.rows[cls].f1 - full.rows[cls].f1 for cls in full.rows
        },
    )


def dimension_prediction_report(
    gold_profiles: list[DimensionProfile],
    predicted_profiles: list[DimensionProfile],
) -> dict[str, ClassificationReport]:
    """Nine independent single-label reports, one per dimension."""
    if len(gold_profiles) != len(predicted_profiles):
        raise ValueError(
            f"length mismatch: {len(gold_profiles)} gold vs "
            f"{len(predicted_profiles)} predicted profiles"
        )
    return {
        dim: classification_report(
            [p.value(dim) for p in gold_profiles],
            [p.value(dim) for p in predicted_profiles],
            list(VALUE_SETS[dim]),
        )
        for dim in DIMENSIONS
    }


def format_dimension_report(reports: dict[str, ClassificationReport]) -> str:
    width = max(len(d) for d in DIMENSIONS)
    lines = [f"{'dimension':<{width}}  {'acc':>5} {'macro-f1':>9}"]
    for dim in DIMENSIONS:
        r = reports[dim]
        lines.append(f"{dim:<{width}}{r.accuracy:7.2f}{r.macro_f1:10.2f}")
    return "\n".join(lines)
