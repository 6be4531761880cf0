"""RST tree binarization and relation-instance extraction."""

from __future__ import annotations

import re
from dataclasses import replace

from .dimensions import (
    ARITY_MONO,
    ARITY_MULTI,
    ORDER_ANY,
    ORDER_N_S,
    ORDER_S_N,
    DimensionProfile,
    RstMappingKey,
    canonical_rst_label,
    lookup_rst,
    underspecified_profile,
)
from .dis_parser import KIND_NUCLEUS, KIND_SATELLITE, RstNode
from .errors import UnknownLabelError
from .interchange import FRAMEWORK_RST, RelationInstance

# Excluded per preprocessing convention; the remaining 16 are the task classes.
EXCLUDED_CLASSES = ("Attribution", "Same-Unit")

RST_CLASSES = (
    "Background", "Cause", "Comparison", "Condition", "Contrast",
    "Elaboration", "Enablement", "Evaluation", "Explanation", "Joint",
    "Manner-Means", "Summary", "Temporal", "Textual-Organization",
    "Topic-Change", "Topic-Comment",
)

# Grouping of RST-DT end labels into the standard class inventory
# (first matching prefix wins; order matters for topic-*).
_CLASS_PATTERNS = [
    (r"^attribution", "Attribution"),
    (r"^same-unit", "Same-Unit"),
    (r"^(background|circumstance)", "Background"),
    (r"^(cause|result|consequence)", "Cause"),
    (r"^(comparison|preference|analogy|proportion)", "Comparison"),
    (r"^(condition|hypothetical|contingency|otherwise)", "Condition"),
    (r"^(contrast|concession|antithesis)", "Contrast"),
    (r"^(elaboration|example|definition)", "Elaboration"),
    (r"^(purpose|enablement)", "Enablement"),
    (r"^(evaluation|interpretation|conclusion|comment-topic)", "Evaluation"),
    (r"^(problem-solution|question-answer|statement-response|topic-comment|rhetorical-question)", "Topic-Comment"),
    (r"^comment", "Evaluation"),
    (r"^(evidence|explanation|reason)", "Explanation"),
    (r"^(list|disjunction)", "Joint"),
    (r"^(manner|means)", "Manner-Means"),
    (r"^(summary|restatement)", "Summary"),
    (r"^(temporal-|sequence|inverted-sequence)", "Temporal"),
    (r"^(topic-shift|topic-drift)", "Topic-Change"),
    (r"^textual-?organization", "Textual-Organization"),
]


def group_rst_class(end_label: str) -> str:
    """Map an RST-DT end label to its class (the 16 task classes plus the
    two excluded ones)."""
    label = canonical_rst_label(end_label)
    for pattern, cls in _CLASS_PATTERNS:
        if re.match(pattern, label):
            return cls
    raise UnknownLabelError(f"RST end label {end_label!r} not in grouping map")


def binarize(node: RstNode) -> RstNode:
    """Right-branching binarization; intermediate nodes take NUCLEUS kind and
    inherit the relation of the subtree they head. Leaf order is preserved."""
    children = [binarize(c) for c in node.children]
    return _rebinarize(replace(node, children=children))


def _rebinarize(node: RstNode) -> RstNode:
    if len(node.children) <= 2:
        return node
    right = node.children[1:]
    inner = RstNode(
        kind=KIND_NUCLEUS,
        span=(right[0].span[0], right[-1].span[1]),
        rel2par=right[0].rel2par,
        children=right,
    )
    return replace(node, children=[node.children[0], _rebinarize(inner)])


def node_relation(node: RstNode) -> tuple[str, str, str]:
    """(end_label, arity, order) of a binary internal node, derived from the
    children's kinds and rel2par labels."""
    left, right = node.children
    if left.kind == KIND_SATELLITE and right.kind == KIND_NUCLEUS:
        return left.rel2par, ARITY_MONO, ORDER_S_N
    if right.kind == KIND_SATELLITE and left.kind == KIND_NUCLEUS:
        return right.rel2par, ARITY_MONO, ORDER_N_S
    # multinuclear: the nuclei carry the relation name (skip plain "span")
    label = left.rel2par if left.rel2par and left.rel2par != "span" else right.rel2par
    return label, ARITY_MULTI, ORDER_ANY


def rst_profile(end_label: str, arity: str, order: str) -> DimensionProfile:
    """Dimension profile for an RST relation. Labels whose class has no
    mapping rows (e.g. topic-shift) get the fully under-specified profile."""
    cls = group_rst_class(end_label)
    try:
        return lookup_rst(RstMappingKey(cls, end_label, arity, order))
    except UnknownLabelError:
        return underspecified_profile()


def span_text(node: RstNode) -> str:
    """EDU texts of the span joined by single spaces."""
    return " ".join(leaf.text.strip() for leaf in node.leaves())


def extract_rst_instances(tree: RstNode, doc_id: str) -> list[RelationInstance]:
    """One instance per internal node of a binarized tree, excluding nodes
    whose relation groups to Same-Unit or Attribution."""
    instances = []
    for node in tree.internal_nodes():
        if len(node.children) != 2:
            raise UnknownLabelError(
                f"extract_rst_instances requires a binarized tree; node {node.span} "
                f"has {len(node.children)} children"
            )
        end_label, arity, order = node_relation(node)
        if end_label is None:
            raise UnknownLabelError(f"node {node.span} carries no relation label")
        cls = group_rst_class(end_label)
        if cls in EXCLUDED_CLASSES:
            continue
        left, right = node.children
        instances.append(
            RelationInstance(
                framework=FRAMEWORK_RST,
                doc_id=doc_id,
                class_label=cls,
                end_label=canonical_rst_label(end_label),
                arity=arity,
                order=order,
                arg1_text=span_text(left),
                arg2_text=span_text(right),
                profile=rst_profile(end_label, arity, order),
            )
        )
    return instances
