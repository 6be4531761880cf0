"""Cognitive coherence dimensions and the relation-label lookups.

Nine dimensions are used: the five core ones (polarity, basic operation,
source of coherence, implication order, temporality) plus four binary
additional features (specificity, alternative, conditional, goal). The
``list`` feature is not a dimension here and is ignored when it occurs in a
table cell.

Dimension values are plain strings drawn from closed per-dimension sets
(see VALUE_SETS); categorical feature indices follow the declared order.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from . import tables
from .errors import UnknownLabelError, UnknownTokenError
from .tables import (
    ARITY_BOTH,
    ARITY_MONO,
    ARITY_MULTI,
    ORDER_A1_A2,
    ORDER_A2_A1,
    ORDER_ANY,
    ORDER_N_S,
    ORDER_S_N,
    MappingTable,
    PdtbRow,
    RstRow,
)

POLARITY = "polarity"
BASIC_OPERATION = "basic_operation"
SOURCE_OF_COHERENCE = "source_of_coherence"
IMPLICATION_ORDER = "implication_order"
TEMPORALITY = "temporality"
SPECIFICITY = "specificity"
ALTERNATIVE = "alternative"
CONDITIONAL = "conditional"
GOAL = "goal"

DIMENSIONS = (
    POLARITY,
    BASIC_OPERATION,
    SOURCE_OF_COHERENCE,
    IMPLICATION_ORDER,
    TEMPORALITY,
    SPECIFICITY,
    ALTERNATIVE,
    CONDITIONAL,
    GOAL,
)

CORE_DIMENSIONS = DIMENSIONS[:5]
BINARY_DIMENSIONS = DIMENSIONS[5:]

# Declared value order fixes the categorical index assignment.
VALUE_SETS: dict[str, tuple[str, ...]] = {
    POLARITY: ("POS", "NEG", "NS"),
    BASIC_OPERATION: ("CAUSAL", "ADDITIVE", "NS"),
    SOURCE_OF_COHERENCE: ("OBJECTIVE", "SUBJECTIVE", "NS"),
    IMPLICATION_ORDER: ("BASIC", "NONBASIC", "NA", "NS"),
    TEMPORALITY: ("SYNCHRONOUS", "CHRONOLOGICAL", "ANTICHRONOLOGICAL", "NA", "NS"),
    SPECIFICITY: ("FALSE", "TRUE"),
    ALTERNATIVE: ("FALSE", "TRUE"),
    CONDITIONAL: ("FALSE", "TRUE"),
    GOAL: ("FALSE", "TRUE"),
}

# Full raw-token lexicon of the embedded tables, per core dimension.
# Any token outside these maps is a transcription error and must fail loudly.
_CORE_LEXICON: dict[str, dict[str, str]] = {
    POLARITY: {"pos": "POS", "neg": "NEG", "NS": "NS", "any": "NS"},
    BASIC_OPERATION: {"add": "ADDITIVE", "cau": "CAUSAL", "NS": "NS", "any": "NS"},
    SOURCE_OF_COHERENCE: {"obj": "OBJECTIVE", "sub": "SUBJECTIVE", "NS": "NS", "any": "NS"},
    IMPLICATION_ORDER: {
        "bas": "BASIC", "non-b": "NONBASIC",
        "N.A.": "NA", "NA": "NA", "NS": "NS", "any": "NS",
    },
    TEMPORALITY: {
        "syn": "SYNCHRONOUS", "sync": "SYNCHRONOUS",  # both spellings occur
        "chron": "CHRONOLOGICAL",
        "achron": "CHRONOLOGICAL",  # typographical variant of "chron"
        "anti": "ANTICHRONOLOGICAL",
        "N.A.": "NA", "NA": "NA", "NS": "NS", "any": "NS",
    },
}

# Additional-feature tokens occurring in table cells, mapped to the binary
# dimension they switch on ("list" is recognized but discarded).
_FEATURE_TOKENS: dict[str, str | None] = {
    "specificity": SPECIFICITY,
    "spec.-ex.": SPECIFICITY,
    "spec.-equiv.": SPECIFICITY,
    "alternative": ALTERNATIVE,
    "conditional": CONDITIONAL,
    "goal": GOAL,
    "list": None,
}

# Canonical raw spelling of each normalized value, used for round-tripping.
_CANONICAL_RAW: dict[str, dict[str, str]] = {
    POLARITY: {"POS": "pos", "NEG": "neg", "NS": "NS"},
    BASIC_OPERATION: {"CAUSAL": "cau", "ADDITIVE": "add", "NS": "NS"},
    SOURCE_OF_COHERENCE: {"OBJECTIVE": "obj", "SUBJECTIVE": "sub", "NS": "NS"},
    IMPLICATION_ORDER: {"BASIC": "bas", "NONBASIC": "non-b", "NA": "N.A.", "NS": "NS"},
    TEMPORALITY: {
        "SYNCHRONOUS": "sync", "CHRONOLOGICAL": "chron",
        "ANTICHRONOLOGICAL": "anti", "NA": "N.A.", "NS": "NS",
    },
}


def stringify_value(dim: str, value: str) -> str:
    """Canonical raw token for a normalized value (inverse of normalize_value)."""
    if dim in BINARY_DIMENSIONS:
        return dim if value == "TRUE" else ""
    return _CANONICAL_RAW[dim][value]


def normalize_value(dim: str, raw: str) -> str:
    """Normalize one raw table cell for the given dimension.

    Slash-joined alternatives and "any" collapse to NS (under-specification);
    a lone N.A. stays NA; binary features are TRUE iff the cell names them.
    """
    if dim not in VALUE_SETS:
        raise UnknownTokenError(dim, raw)
    raw = raw.strip()
    if dim in BINARY_DIMENSIONS:
        if not raw:
            return "FALSE"
        result = "FALSE"
        for token in raw.replace(",", " ").split():
            if token not in _FEATURE_TOKENS:
                raise UnknownTokenError(dim, token)
            if _FEATURE_TOKENS[token] == dim:
                result = "TRUE"
        return result
    lexicon = _CORE_LEXICON[dim]
    if "/" in raw:
        parts = raw.split("/")
        for part in parts:
            if part not in lexicon:
                raise UnknownTokenError(dim, raw)
        values = {lexicon[p] for p in parts}
        return values.pop() if len(values) == 1 else "NS"
    if raw not in lexicon:
        raise UnknownTokenError(dim, raw)
    return lexicon[raw]


@dataclass(frozen=True)
class DimensionProfile:
    """One value per dimension; all nine slots mandatory."""

    polarity: str
    basic_operation: str
    source_of_coherence: str
    implication_order: str
    temporality: str
    specificity: str = "FALSE"
    alternative: str = "FALSE"
    conditional: str = "FALSE"
    goal: str = "FALSE"

    def __post_init__(self):
        for f in fields(self):
            value = getattr(self, f.name)
            if value not in VALUE_SETS[f.name]:
                raise UnknownTokenError(f.name, value)

    def value(self, dim: str) -> str:
        return getattr(self, dim)

    def as_dict(self) -> dict[str, str]:
        return {dim: getattr(self, dim) for dim in DIMENSIONS}

    @classmethod
    def from_dict(cls, d: dict[str, str]) -> "DimensionProfile":
        return cls(**{dim: d[dim] for dim in DIMENSIONS})


def underspecified_profile() -> DimensionProfile:
    """All-NS profile for relation labels the mapping tables do not cover."""
    return DimensionProfile("NS", "NS", "NS", "NS", "NS")


def encode_profile(profile: DimensionProfile) -> list[int]:
    """Nine categorical indices, one per dimension, in declared order."""
    return [VALUE_SETS[dim].index(profile.value(dim)) for dim in DIMENSIONS]


@dataclass(frozen=True)
class RstMappingKey:
    class_label: str
    end_label: str
    arity: str  # MONO / MULTI / BOTH
    order: str  # N_S / S_N / ANY


@dataclass(frozen=True)
class PdtbMappingKey:
    level2_class: str
    end_label: str  # level-3 label or ""
    arg_order: str  # A1_A2 / A2_A1 / ANY


# Abbreviated table spellings -> full RST-DT relation names (lowercase).
_RST_LABEL_ALIASES = {
    "el.-additional": "elaboration-additional",
    "el.-gen.-spec.": "elaboration-general-specific",
    "el.-part-whole": "elaboration-part-whole",
    "el.-process-step": "elaboration-process-step",
    "el.-object-attr.": "elaboration-object-attribute",
    "el.-set-member": "elaboration-set-member",
    "exp.-argument.": "explanation-argumentative",
    "temp.-before": "temporal-before",
    "temp.-after": "temporal-after",
    "temp.-same-time": "temporal-same-time",
    "inverted-seq.": "inverted-sequence",
    "problem-sol.-n": "problem-solution-n",
    "problem-sol.-s": "problem-solution-s",
    "problem-sol.": "problem-solution",
}


def canonical_rst_label(end_label: str) -> str:
    """Lowercase the label, resolve table abbreviations, drop the embedded
    ("-e") suffix RST-DT uses for relations inside embedded units."""
    label = end_label.strip().lower()
    label = _RST_LABEL_ALIASES.get(label, label)
    if label.endswith("-e") and label != "same-unit-e":
        base = label[:-2]
        label = base
    return _RST_LABEL_ALIASES.get(label, label)


def _profile_from_raw(pol, bop, impl, soc, temp, add) -> DimensionProfile:
    return DimensionProfile(
        polarity=normalize_value(POLARITY, pol),
        basic_operation=normalize_value(BASIC_OPERATION, bop),
        source_of_coherence=normalize_value(SOURCE_OF_COHERENCE, soc),
        implication_order=normalize_value(IMPLICATION_ORDER, impl),
        temporality=normalize_value(TEMPORALITY, temp),
        specificity=normalize_value(SPECIFICITY, add),
        alternative=normalize_value(ALTERNATIVE, add),
        conditional=normalize_value(CONDITIONAL, add),
        goal=normalize_value(GOAL, add),
    )


def profile_for_rst_row(row: RstRow) -> DimensionProfile:
    return _profile_from_raw(
        row.polarity, row.basic_operation, row.implication_order,
        row.source_of_coherence, row.temporality, row.additional,
    )


def profile_for_pdtb_row(row: PdtbRow) -> DimensionProfile:
    return _profile_from_raw(
        row.polarity, row.basic_operation, row.implication_order,
        row.source_of_coherence, row.temporality, row.additional,
    )


def merge_profiles(profiles: list[DimensionProfile]) -> DimensionProfile:
    """Slot-wise merge: disagreements demote to NS; for binary features TRUE wins."""
    merged: dict[str, str] = {}
    for dim in DIMENSIONS:
        values = {p.value(dim) for p in profiles}
        if len(values) == 1:
            merged[dim] = values.pop()
        elif dim in BINARY_DIMENSIONS:
            merged[dim] = "TRUE"
        else:
            merged[dim] = "NS"
    return DimensionProfile(**merged)


def _resolve(candidates, exact, relaxed, wildcard):
    for tier in (exact, relaxed, wildcard, lambda r: True):
        rows = [r for r in candidates if tier(r)]
        if rows:
            return rows
    return []


def lookup_rst(key: RstMappingKey, table: MappingTable | None = None) -> DimensionProfile:
    """Resolve an RST relation to a dimension profile.

    Resolution order: exact (label, arity, order); then (label, arity) with
    an ANY order on either side; then rows applicable to both arities;
    finally all rows for the label. Surviving rows merge slot-wise.
    """
    table = table or tables.load_embedded_tables()
    label = canonical_rst_label(key.end_label)
    candidates = [r for r in table.rst_rows if canonical_rst_label(r.end_label) == label]
    if not candidates:
        raise UnknownLabelError(f"RST end label {key.end_label!r} not in mapping table")
    rows = _resolve(
        candidates,
        exact=lambda r: r.arity == key.arity and r.order == key.order,
        relaxed=lambda r: r.arity == key.arity
        and (r.order == ORDER_ANY or key.order == ORDER_ANY),
        wildcard=lambda r: r.arity == ARITY_BOTH or key.arity == ARITY_BOTH,
    )
    return merge_profiles([profile_for_rst_row(r) for r in rows])


def lookup_pdtb(key: PdtbMappingKey, table: MappingTable | None = None) -> DimensionProfile:
    """Resolve a PDTB level-2 (+optional level-3) sense to a dimension profile."""
    table = table or tables.load_embedded_tables()
    candidates = [r for r in table.pdtb_rows if r.level2_class == key.level2_class]
    if not candidates:
        raise UnknownLabelError(f"PDTB level-2 class {key.level2_class!r} not in mapping table")
    end = key.end_label.strip()
    if end and end != "—":
        narrowed = [r for r in candidates if r.end_label.lower() == end.lower()]
        if narrowed:
            candidates = narrowed
    rows = _resolve(
        candidates,
        exact=lambda r: r.arg_order == key.arg_order,
        relaxed=lambda r: r.arg_order == ORDER_ANY or key.arg_order == ORDER_ANY,
        wildcard=lambda r: True,
    )
    return merge_profiles([profile_for_pdtb_row(r) for r in rows])


__all__ = [
    "DIMENSIONS", "CORE_DIMENSIONS", "BINARY_DIMENSIONS", "VALUE_SETS",
    "POLARITY", "BASIC_OPERATION", "SOURCE_OF_COHERENCE", "IMPLICATION_ORDER",
    "TEMPORALITY", "SPECIFICITY", "ALTERNATIVE", "CONDITIONAL", "GOAL",
    "DimensionProfile", "RstMappingKey", "PdtbMappingKey",
    "normalize_value", "stringify_value", "encode_profile",
    "lookup_rst", "lookup_pdtb", "merge_profiles", "underspecified_profile",
    "canonical_rst_label", "profile_for_rst_row", "profile_for_pdtb_row",
    "ARITY_MONO", "ARITY_MULTI", "ARITY_BOTH",
    "ORDER_N_S", "ORDER_S_N", "ORDER_ANY", "ORDER_A1_A2", "ORDER_A2_A1",
]
