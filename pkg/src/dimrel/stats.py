"""Corpus distribution statistics: per-dimension value histograms and
per-class instance counts, keyed by (framework, relation_type)."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .dimensions import DIMENSIONS
from .interchange import RelationInstance


@dataclass
class CorpusStats:
    # key: (framework, relation_type)
    dim_histograms: dict[tuple[str, str], dict[str, Counter]] = field(default_factory=dict)
    class_counts: dict[tuple[str, str], Counter] = field(default_factory=dict)
    totals: dict[tuple[str, str], int] = field(default_factory=dict)


def compute_stats(instances: list[RelationInstance]) -> CorpusStats:
    dim_hist: dict[tuple[str, str], dict[str, Counter]] = defaultdict(
        lambda: {dim: Counter() for dim in DIMENSIONS}
    )
    class_counts: dict[tuple[str, str], Counter] = defaultdict(Counter)
    totals: dict[tuple[str, str], int] = defaultdict(int)
    for inst in instances:
        key = (inst.framework, inst.relation_type)
        for dim in DIMENSIONS:
            dim_hist[key][dim][inst.profile.value(dim)] += 1
        class_counts[key][inst.class_label] += 1
        totals[key] += 1
    return CorpusStats(
        dim_histograms=dict(dim_hist),
        class_counts=dict(class_counts),
        totals=dict(totals),
    )


def write_stats_tsv(stats: CorpusStats, path) -> None:
    """Plot-ready tabular dump: one row per (framework, type, kind, key, value)."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("framework\trelation_type\tkind\tname\tvalue\tcount\n")
        for key in sorted(stats.totals):
            fw, rel_type = key
            for dim in DIMENSIONS:
                for value, count in sorted(stats.dim_histograms[key][dim].items()):
                    fh.write(f"{fw}\t{rel_type}\tdimension\t{dim}\t{value}\t{count}\n")
            for cls, count in sorted(stats.class_counts[key].items()):
                fh.write(f"{fw}\t{rel_type}\tclass\t{cls}\t\t{count}\n")
            fh.write(f"{fw}\t{rel_type}\ttotal\t\t\t{stats.totals[key]}\n")
