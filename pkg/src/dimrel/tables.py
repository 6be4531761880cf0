"""Embedded relation-to-dimension mapping tables.

Raw cell strings are preserved exactly as transcribed ("pos/neg", "any",
"N.A.", ...); normalization happens in :mod:`dimrel.dimensions`. The RST
table keys on (class, end label, nuclearity arity, nucleus order); the PDTB
table keys on (level-2 sense, level-3 end label, argument order).
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass

from .errors import CorruptTablesError

ARITY_MONO = "MONO"
ARITY_MULTI = "MULTI"
ARITY_BOTH = "BOTH"

ORDER_N_S = "N_S"
ORDER_S_N = "S_N"
ORDER_ANY = "ANY"

ORDER_A1_A2 = "A1_A2"
ORDER_A2_A1 = "A2_A1"


@dataclass(frozen=True)
class RstRow:
    class_label: str
    end_label: str
    arity: str  # MONO / MULTI / BOTH
    order: str  # N_S / S_N / ANY
    polarity: str
    basic_operation: str
    implication_order: str
    source_of_coherence: str
    temporality: str
    additional: str


@dataclass(frozen=True)
class PdtbRow:
    level2_class: str
    end_label: str  # level-3 label, or "" when the level-2 sense has none
    arg_order: str  # A1_A2 / A2_A1 / ANY
    polarity: str
    basic_operation: str
    implication_order: str
    source_of_coherence: str
    temporality: str
    additional: str


@dataclass(frozen=True)
class MappingTable:
    rst_rows: tuple[RstRow, ...]
    pdtb_rows: tuple[PdtbRow, ...]


_ARITY = {"Mono": ARITY_MONO, "Multi": ARITY_MULTI, "Both": ARITY_BOTH}
_NS_ORDER = {"N-S": ORDER_N_S, "S-N": ORDER_S_N, "": ORDER_ANY}
_ARG_ORDER = {"A1-A2": ORDER_A1_A2, "A2-A1": ORDER_A2_A1, "": ORDER_ANY}

# (class, end label, nuclearity, order, pol, bop, impl, soc, temp, additional)
_RST_RAW = [
    ("Background", "Background", "Mono", "N-S", "pos/neg", "add", "N.A.", "obj", "anti/N.A.", ""),
    ("Background", "Background", "Mono", "S-N", "pos/neg", "add", "N.A.", "obj", "chron/N.A.", ""),
    ("Background", "Circumstance", "Mono", "", "pos/neg", "add", "N.A.", "obj", "syn/N.A.", ""),
    ("Cause", "Cause", "Mono", "N-S", "pos", "cau", "bas", "obj", "chron", ""),
    ("Cause", "Cause", "Mono", "S-N", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Cause", "Cause-result", "Multi", "", "pos", "cau", "bas/non-b", "obj", "chron/anti", ""),
    ("Cause", "Result", "Mono", "N-S", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Cause", "Result", "Mono", "S-N", "pos", "cau", "bas", "obj", "chron", ""),
    ("Cause", "Consequence-n", "Mono", "N-S", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Cause", "Consequence-n", "Mono", "S-N", "pos", "cau", "bas", "obj", "chron", ""),
    ("Cause", "Consequence-s", "Mono", "N-S", "pos", "cau", "bas", "obj", "chron", ""),
    ("Cause", "Consequence-s", "Mono", "S-N", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Cause", "Consequence", "Multi", "", "pos", "cau", "bas/non-b", "obj", "chron/anti", ""),
    ("Comparison", "Comparison", "Both", "", "pos", "add", "N.A.", "obj/sub", "N.A.", ""),
    ("Comparison", "Preference", "Mono", "", "neg", "add", "N.A.", "obj/sub", "N.A.", ""),
    ("Comparison", "Analogy", "Both", "", "pos", "add", "N.A.", "sub", "N.A.", ""),
    ("Comparison", "Proportion", "Multi", "", "pos", "add/cau", "any", "obj/sub", "any", ""),
    ("Conditional", "Condition", "Mono", "N-S", "pos/neg", "cau", "non-b", "obj/sub", "anti/N.A.", "conditional"),
    ("Conditional", "Condition", "Mono", "S-N", "pos/neg", "cau", "bas", "obj/sub", "chron/N.A.", "conditional"),
    ("Conditional", "Hypothetical", "Mono", "N-S", "pos", "cau", "non-b", "sub", "N.A.", "conditional"),
    ("Conditional", "Hypothetical", "Mono", "S-N", "pos", "cau", "bas", "sub", "N.A.", "conditional"),
    ("Conditional", "Contingency", "Mono", "N-S", "pos/neg", "cau", "non-b", "obj", "anti", "conditional"),
    ("Conditional", "Contingency", "Mono", "S-N", "pos/neg", "cau", "bas", "obj", "chron", "conditional"),
    ("Conditional", "Otherwise", "Mono", "N-S", "neg", "cau", "bas", "obj/sub", "chron/N.A.", "conditional"),
    ("Conditional", "Otherwise", "Multi", "", "neg", "cau", "bas", "obj/sub", "chron/N.A.", "conditional"),
    ("Contrast", "Contrast", "Multi", "", "neg", "add", "N.A.", "obj/sub", "any", ""),
    ("Contrast", "Concession", "Mono", "N-S", "neg", "cau", "non-b", "obj/sub", "anti/N.A.", ""),
    ("Contrast", "Concession", "Mono", "S-N", "neg", "cau", "bas", "obj/sub", "chron/N.A.", ""),
    ("Contrast", "Antithesis", "Mono", "", "neg", "add/cau", "any", "obj/sub", "any", ""),
    ("Elaboration", "El.-additional", "Mono", "", "pos", "add", "N.A.", "obj/sub", "N.A.", ""),
    ("Elaboration", "El.-gen.-spec.", "Mono", "", "pos", "add", "N.A.", "obj/sub", "N.A.", "specificity"),
    ("Elaboration", "El.-part-whole", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "specificity"),
    ("Elaboration", "El.-process-step", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "specificity"),
    ("Elaboration", "El.-object-attr.", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "specificity"),
    ("Elaboration", "El.-set-member", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "spec.-ex."),
    ("Elaboration", "Example", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "spec.-ex."),
    ("Elaboration", "Definition", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "specificity"),
    ("Enablement", "Purpose", "Mono", "N-S", "pos", "cau", "bas", "obj/sub", "chron/N.A.", "goal"),
    ("Enablement", "Purpose", "Mono", "S-N", "pos", "cau", "non-b", "obj/sub", "anti/N.A.", "goal"),
    ("Enablement", "Enablement", "Mono", "N-S", "pos", "cau", "non-b", "obj/sub", "anti/N.A.", "goal"),
    ("Enablement", "Enablement", "Mono", "S-N", "pos", "cau", "bas", "obj/sub", "chron/N.A.", "goal"),
    ("Evaluation", "Evaluation", "Both", "", "pos", "add/cau", "any", "sub", "N.A.", "specificity"),
    ("Evaluation", "Interpretation", "Both", "", "pos", "add/cau", "any", "sub", "N.A.", "specificity"),
    ("Evaluation", "Conclusion", "Mono", "N-S", "pos", "cau", "bas", "sub", "N.A.", "specificity"),
    ("Evaluation", "Conclusion", "Mono", "S-N", "pos", "cau", "non-b", "sub", "N.A.", "specificity"),
    ("Evaluation", "Conclusion", "Multi", "", "pos", "cau", "bas/non-b", "sub", "N.A.", "specificity"),
    ("Evaluation", "Comment", "Mono", "", "pos", "add", "N.A.", "sub", "N.A.", "specificity"),
    ("Explanation", "Evidence", "Mono", "N-S", "pos", "cau", "non-b", "sub", "anti", ""),
    ("Explanation", "Evidence", "Mono", "S-N", "pos", "cau", "bas", "sub", "chron", ""),
    ("Explanation", "Exp.-argument.", "Mono", "N-S", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Explanation", "Exp.-argument.", "Mono", "S-N", "pos", "cau", "bas", "obj", "chron", ""),
    ("Explanation", "Reason", "Mono", "N-S", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Explanation", "Reason", "Mono", "S-N", "pos", "cau", "bas", "obj", "chron", ""),
    ("Explanation", "Reason", "Multi", "", "pos", "cau", "bas/non-b", "obj", "chron/anti", ""),
    ("Joint", "List", "Multi", "", "pos", "add", "N.A.", "obj/sub", "syn/chron/N.A.", "list"),
    ("Joint", "Disjunction", "Multi", "", "pos/neg", "add", "N.A.", "obj/sub", "syn/N.A.", "alternative"),
    ("Summary", "Summary", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "specificity"),
    ("Summary", "Restatement", "Mono", "", "pos", "add", "N.A.", "obj", "N.A.", "spec.-equiv."),
    ("Temporal", "Temp.-before", "Mono", "N-S", "pos", "add", "N.A.", "obj", "chron", ""),
    ("Temporal", "Temp.-before", "Mono", "S-N", "pos", "add", "N.A.", "obj", "anti", ""),
    ("Temporal", "Temp.-after", "Mono", "N-S", "pos", "add", "N.A.", "obj", "anti", ""),
    ("Temporal", "Temp.-after", "Mono", "S-N", "pos", "add", "N.A.", "obj", "chron", ""),
    ("Temporal", "Temp.-same-time", "Both", "", "pos", "add", "N.A.", "obj", "syn", ""),
    ("Temporal", "Sequence", "Multi", "", "pos", "add", "N.A.", "obj", "chron", ""),
    ("Temporal", "Inverted-seq.", "Multi", "", "pos", "add", "N.A.", "obj", "anti", ""),
    ("Manner-Means", "Means", "Mono", "N-S", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Manner-Means", "Means", "Mono", "S-N", "pos", "cau", "bas", "obj", "chron", "goal"),
    ("Topic-Comment", "Problem-sol.-n", "Mono", "N-S", "pos", "cau", "non-b", "obj/sub", "anti/N.A.", "goal"),
    ("Topic-Comment", "Problem-sol.-n", "Mono", "S-N", "pos", "cau", "bas", "obj/sub", "chron/N.A.", "goal"),
    ("Topic-Comment", "Problem-sol.-s", "Mono", "N-S", "pos", "cau", "bas", "obj/sub", "chron/N.A.", "goal"),
    ("Topic-Comment", "Problem-sol.-s", "Mono", "S-N", "pos", "cau", "non-b", "obj/sub", "anti/N.A.", "goal"),
    # "achron" in the Multi temporality cell is treated as "chron" (typographical variant).
    ("Topic-Comment", "Problem-sol.", "Multi", "", "pos", "cau", "bas/non-b", "obj/sub", "achron/anti/N.A.", "goal"),
]

# (level-2 sense, level-3 end label, arg order, pol, bop, impl, soc, temp, additional)
# The duplicated "Result / A1-A2" row under Cause is stored once.
_PDTB_RAW = [
    ("Synchronous", "", "", "pos", "add", "N.A.", "obj", "sync", ""),
    ("Asynchronous", "Precedence", "A1-A2", "pos", "add", "N.A.", "obj", "chron", ""),
    ("Asynchronous", "Precedence", "A2-A1", "pos", "add", "N.A.", "obj", "anti", ""),
    ("Asynchronous", "Succession", "A1-A2", "pos", "add", "N.A.", "obj", "anti", ""),
    ("Asynchronous", "Succession", "A2-A1", "pos", "add", "N.A.", "obj", "chron", ""),
    ("Cause", "Reason", "A1-A2", "pos", "cau", "non-b", "obj", "anti", ""),
    ("Cause", "Reason", "A2-A1", "pos", "cau", "bas", "obj", "chron", ""),
    ("Cause", "Result", "A1-A2", "pos", "cau", "bas", "obj", "chron", "goal"),
    ("Cause", "NegResult", "", "neg", "cau", "bas", "obj", "chron", ""),
    ("Cause+Belief", "Reason+Belief", "A1-A2", "pos", "cau", "non-b", "sub", "NS", ""),
    ("Cause+Belief", "Reason+Belief", "A2-A1", "pos", "cau", "bas", "sub", "NS", ""),
    ("Cause+Belief", "Result+Belief", "A1-A2", "pos", "cau", "bas", "sub", "NS", ""),
    ("Cause+Belief", "Result+Belief", "A2-A1", "pos", "cau", "non-b", "sub", "NS", ""),
    ("Cause+SpeechAct", "Reason+SpeechAct", "A1-A2", "pos", "cau", "non-b", "sub", "NS", ""),
    ("Cause+SpeechAct", "Reason+SpeechAct", "A2-A1", "pos", "cau", "bas", "sub", "NS", ""),
    ("Cause+SpeechAct", "Result+SpeechAct", "A1-A2", "pos", "cau", "bas", "sub", "NS", ""),
    ("Cause+SpeechAct", "Result+SpeechAct", "A2-A1", "pos", "cau", "non-b", "sub", "NS", ""),
    ("Purpose", "arg1-as-goal", "A1-A2", "pos", "cau", "non-b", "obj/sub", "NS", "goal"),
    ("Purpose", "arg1-as-goal", "A2-A1", "pos", "cau", "bas", "obj/sub", "NS", "goal"),
    ("Purpose", "arg2-as-goal", "A1-A2", "pos", "cau", "bas", "sub", "NS", "goal"),
    ("Condition", "arg1-as-cond", "A1-A2", "pos", "cau", "bas", "obj/sub", "NS", "conditional"),
    ("Condition", "arg1-as-cond", "A2-A1", "pos", "cau", "non-b", "obj/sub", "NS", "conditional"),
    ("Condition", "arg2-as-cond", "A1-A2", "pos", "cau", "non-b", "obj/sub", "NS", "conditional"),
    ("Condition", "arg2-as-cond", "A2-A1", "pos", "cau", "bas", "obj/sub", "NS", "conditional"),
    ("Condition+SpeechAct", "", "", "pos", "cau", "bas", "sub", "NS", "conditional"),
    ("Negative-Condition", "arg1-as-negcond", "A1-A2", "neg", "cau", "bas", "sub", "NS", "conditional"),
    ("Negative-Condition", "arg1-as-negcond", "A2-A1", "neg", "cau", "non-b", "sub", "NS", "conditional"),
    ("Negative-Condition", "arg2-as-negcond", "A1-A2", "neg", "cau", "non-b", "sub", "NS", "conditional"),
    ("Negative-Condition", "arg2-as-negcond", "A2-A1", "neg", "cau", "bas", "sub", "NS", "conditional"),
    ("Negative-Condition+SpeechAct", "", "", "neg", "cau", "bas", "sub", "NS", "conditional"),
    ("Concession", "arg1-as-denier", "A1-A2", "neg", "cau", "non-b", "obj/sub", "NS", ""),
    ("Concession", "arg1-as-denier", "A2-A1", "neg", "cau", "bas", "obj/sub", "NS", ""),
    ("Concession", "arg2-as-denier", "A1-A2", "neg", "cau", "bas", "obj/sub", "NS", ""),
    ("Concession", "arg2-as-denier", "A2-A1", "neg", "cau", "non-b", "obj/sub", "NS", ""),
    ("Concession+SpeechAct", "", "", "neg", "cau", "bas", "sub", "NS", ""),
    ("Contrast", "", "", "neg", "add", "NA", "obj", "NS", ""),
    ("Similarity", "", "", "pos", "add", "NA", "obj", "NS", ""),
    ("Conjunction", "", "", "pos", "add", "NA", "obj/sub", "NS", ""),
    ("Disjunction", "", "", "neg", "add", "NA", "obj/sub", "NS", "alternative"),
    ("Equivalence", "", "", "pos", "add", "NA", "obj/sub", "NS", ""),
    ("Exception", "arg1-as-excpt", "", "neg", "add", "NA", "obj/sub", "NS", ""),
    ("Exception", "arg2-as-excpt", "", "neg", "add", "NA", "obj/sub", "NS", ""),
    ("Instantiation", "arg1-as-instance", "", "pos", "add", "NA", "obj/sub", "NS", "specificity"),
    ("Instantiation", "arg2-as-instance", "", "pos", "add", "NA", "obj/sub", "NS", "specificity"),
    ("Level-of-detail", "arg1-as-detail", "", "pos", "add", "NA", "obj/sub", "NS", "specificity"),
    ("Level-of-detail", "arg2-as-detail", "", "pos", "add", "NA", "obj/sub", "NS", "specificity"),
    ("Manner", "arg1-as-manner", "A1-A2", "pos", "add", "NA", "obj/sub", "NS", "specificity"),
    ("Manner", "arg2-as-manner", "", "pos", "add", "NA", "obj/sub", "NS", "specificity"),
    ("Substitution", "arg1-as-subst", "A1-A2", "neg", "cau", "bas", "obj/sub", "NS", ""),
    ("Substitution", "arg1-as-subst", "A2-A1", "neg", "cau", "non-b", "obj/sub", "NS", ""),
    ("Substitution", "arg2-as-subst", "A1-A2", "neg", "cau", "non-b", "obj/sub", "NS", ""),
    ("Substitution", "arg2-as-subst", "A2-A1", "neg", "cau", "bas", "obj/sub", "NS", ""),
]

RST_ROW_COUNT = 72
PDTB_ROW_COUNT = 52

_CHECKSUM = "f5cffd5b4b1858a2e7c9d3fc09a4dc989fe4896ebec6f61a627a5eec8cd3c41d"


def _digest() -> str:
    blob = json.dumps([_RST_RAW, _PDTB_RAW], separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def load_embedded_tables() -> MappingTable:
    """Return both embedded tables. Raises CorruptTablesError on checksum mismatch."""
    if _digest() != _CHECKSUM:
        raise CorruptTablesError("embedded mapping tables failed integrity check")
    rst = tuple(
        RstRow(c, e, _ARITY[a], _NS_ORDER[o], pol, bop, impl, soc, temp, add)
        for (c, e, a, o, pol, bop, impl, soc, temp, add) in _RST_RAW
    )
    pdtb = tuple(
        PdtbRow(c, e, _ARG_ORDER[o], pol, bop, impl, soc, temp, add)
        for (c, e, o, pol, bop, impl, soc, temp, add) in _PDTB_RAW
    )
    assert len(rst) == RST_ROW_COUNT and len(pdtb) == PDTB_ROW_COUNT
    return MappingTable(rst_rows=rst, pdtb_rows=pdtb)


def export_fixture(path) -> None:
    """Write both tables as a machine-readable CSV for auditing.

    One record per table row; field names match the appendix column headers.
    """
    table = load_embedded_tables()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["table", "class", "end_label", "nuclearity", "order",
             "polarity", "basic_operation", "implication_order",
             "source_of_coherence", "temporality", "additional_features"]
        )
        for r in table.rst_rows:
            writer.writerow(
                ["rst", r.class_label, r.end_label, r.arity, r.order,
                 r.polarity, r.basic_operation, r.implication_order,
                 r.source_of_coherence, r.temporality, r.additional]
            )
        for p in table.pdtb_rows:
            writer.writerow(
                ["pdtb", p.level2_class, p.end_label, "", p.arg_order,
                 p.polarity, p.basic_operation, p.implication_order,
                 p.source_of_coherence, p.temporality, p.additional]
            )
