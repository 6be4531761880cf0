"""Task filtering and train/validation/test splitting."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import MissingSectionError
from .interchange import (
    FRAMEWORK_PDTB,
    FRAMEWORK_RST,
    REL_EXPLICIT,
    REL_IMPLICIT,
    RelationInstance,
)

TASK_RST = "RST"
TASK_PDTB_EXPLICIT = "PDTB_EXPLICIT"
TASK_PDTB_IMPLICIT = "PDTB_IMPLICIT"
TASK_PDTB_TOTAL = "PDTB_TOTAL"

TASKS = (TASK_RST, TASK_PDTB_EXPLICIT, TASK_PDTB_IMPLICIT, TASK_PDTB_TOTAL)

MIN_TRAIN_INSTANCES = 100

_SECTION_RE = re.compile(r"wsj_(\d{2})\d{2}")


@dataclass
class DatasetSplits:
    train: list[RelationInstance]
    validation: list[RelationInstance]
    test: list[RelationInstance]
    class_set: list[str] = field(default_factory=list)

    def __post_init__(self):
        if not self.class_set:
            self.class_set = sorted({i.class_label for i in self.train})


def wsj_section(doc_id: str) -> int:
    m = _SECTION_RE.search(doc_id)
    if not m:
        raise MissingSectionError(f"doc id {doc_id!r} does not encode a WSJ section")
    return int(m.group(1))


def _restrict_to_classes(instances, classes):
    return [i for i in instances if i.class_label in classes]


def filter_and_split(instances: list[RelationInstance], task: str,
                     min_train_instances: int = MIN_TRAIN_INSTANCES) -> DatasetSplits:
    """Apply the task's relation-type filter, split by document metadata and
    drop rare classes (computed on the training split, applied everywhere).

    PDTB: WSJ sections 2-20 train / 0-1 validation / 21-22 test, then classes
    with fewer than ``min_train_instances`` training instances removed.
    RST: documents prefixed ``TEST/`` form the test set; the last 20% of
    training documents in lexicographic order are held out for validation.
    """
    if task == TASK_RST:
        pool = [i for i in instances if i.framework == FRAMEWORK_RST]
        test = [i for i in pool if i.doc_id.startswith("TEST/")]
        train_pool = [i for i in pool if not i.doc_id.startswith("TEST/")]
        docs = sorted({i.doc_id for i in train_pool})
        n_val = len(docs) // 5
        val_docs = set(docs[len(docs) - n_val :]) if n_val else set()
        train = [i for i in train_pool if i.doc_id not in val_docs]
        validation = [i for i in train_pool if i.doc_id in val_docs]
        classes = sorted({i.class_label for i in train})
        return DatasetSplits(
            train=train,
            validation=_restrict_to_classes(validation, classes),
            test=_restrict_to_classes(test, classes),
            class_set=classes,
        )

    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}")
    pool = [i for i in instances if i.framework == FRAMEWORK_PDTB]
    if task == TASK_PDTB_EXPLICIT:
        pool = [i for i in pool if i.relation_type == REL_EXPLICIT]
    elif task == TASK_PDTB_IMPLICIT:
        pool = [i for i in pool if i.relation_type == REL_IMPLICIT]
    train, validation, test = [], [], []
    for inst in pool:
        section = wsj_section(inst.doc_id)
        if 2 <= section <= 20:
            train.append(inst)
        elif section <= 1:
            validation.append(inst)
        elif 21 <= section <= 22:
            test.append(inst)
        # sections 23-24 are unused by the split convention
    counts: dict[str, int] = {}
    for inst in train:
        counts[inst.class_label] = counts.get(inst.class_label, 0) + 1
    classes = sorted(c for c, n in counts.items() if n >= min_train_instances)
    return DatasetSplits(
        train=_restrict_to_classes(train, classes),
        validation=_restrict_to_classes(validation, classes),
        test=_restrict_to_classes(test, classes),
        class_set=classes,
    )


def fraction_splits(instances: list[RelationInstance],
                    train_frac: float = 0.8,
                    val_frac: float = 0.1) -> DatasetSplits:
    """Deterministic positional split for corpora without WSJ metadata
    (used by dimension-prediction training on mixed corpora)."""
    n = len(instances)
    n_train = int(n * train_frac)
    n_val = int(n * val_frac)
    train = instances[:n_train]
    classes = sorted({i.class_label for i in train})
    return DatasetSplits(
        train=train,
        validation=instances[n_train : n_train + n_val],
        test=instances[n_train + n_val :],
        class_set=classes,
    )
