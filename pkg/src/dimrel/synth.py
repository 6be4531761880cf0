"""Deterministic synthetic corpus generator.

Each class gets the mapping-table profile of a fixed representative
relation (arity/order pinned per class). Argument texts carry three kinds
of tokens: a group token shared by a small confusion group of classes
(always present), a class token that appears only with probability
``class_token_prob`` (otherwise an ambiguous group filler), and noise.
Dimension profiles disambiguate within a group, so models with access to
the dimensions can separate classes the text alone cannot.

With ``dim_tokens=True`` the texts additionally spell out the profile
(tokens like ``polarity=POS``), which makes the dimensions recoverable
from text alone; used for dimension-prediction experiments.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .dimensions import (
    ARITY_BOTH,
    ARITY_MONO,
    ARITY_MULTI,
    DIMENSIONS,
    ORDER_A1_A2,
    ORDER_ANY,
    ORDER_N_S,
    DimensionProfile,
    PdtbMappingKey,
    RstMappingKey,
    lookup_pdtb,
    lookup_rst,
    underspecified_profile,
)
from .errors import UnsupportedClassError
from .interchange import (
    FRAMEWORK_PDTB,
    FRAMEWORK_RST,
    REL_EXPLICIT,
    REL_IMPLICIT,
    RelationInstance,
)
from .rst import RST_CLASSES

# Representative (end_label, arity, order) per RST class; None = no mapping
# rows exist for the class, fall back to the under-specified profile.
RST_CLASS_ROWS: dict[str, tuple[str, str, str] | None] = {
    "Background": ("Background", ARITY_MONO, ORDER_N_S),
    "Cause": ("Cause", ARITY_MONO, ORDER_N_S),
    "Comparison": ("Comparison", ARITY_BOTH, ORDER_ANY),
    "Condition": ("Condition", ARITY_MONO, ORDER_N_S),
    "Contrast": ("Contrast", ARITY_MULTI, ORDER_ANY),
    "Elaboration": ("elaboration-additional", ARITY_MONO, ORDER_ANY),
    "Enablement": ("Enablement", ARITY_MONO, ORDER_N_S),
    "Evaluation": ("Evaluation", ARITY_BOTH, ORDER_ANY),
    "Explanation": ("Evidence", ARITY_MONO, ORDER_N_S),
    "Joint": ("Disjunction", ARITY_MULTI, ORDER_ANY),
    "Manner-Means": ("Means", ARITY_MONO, ORDER_N_S),
    "Summary": ("Summary", ARITY_MONO, ORDER_ANY),
    "Temporal": ("Sequence", ARITY_MULTI, ORDER_ANY),
    "Textual-Organization": None,
    "Topic-Change": None,
    "Topic-Comment": ("problem-solution-s", ARITY_MONO, ORDER_N_S),
}

# Representative (end_label, arg_order) per PDTB level-2 class.
PDTB_CLASS_ROWS: dict[str, tuple[str, str]] = {
    "Asynchronous": ("Precedence", ORDER_A1_A2),
    "Cause": ("Reason", ORDER_A1_A2),
    "Cause+Belief": ("Reason+Belief", ORDER_A1_A2),
    "Cause+SpeechAct": ("Reason+SpeechAct", ORDER_A1_A2),
    "Concession": ("arg1-as-denier", ORDER_A1_A2),
    "Concession+SpeechAct": ("", ORDER_ANY),
    "Condition": ("arg1-as-cond", ORDER_A1_A2),
    "Condition+SpeechAct": ("", ORDER_ANY),
    "Conjunction": ("", ORDER_ANY),
    "Contrast": ("", ORDER_ANY),
    "Disjunction": ("", ORDER_ANY),
    "Equivalence": ("", ORDER_ANY),
    "Exception": ("arg1-as-excpt", ORDER_ANY),
    "Instantiation": ("arg1-as-instance", ORDER_ANY),
    "Level-of-detail": ("arg1-as-detail", ORDER_ANY),
    "Manner": ("arg1-as-manner", ORDER_A1_A2),
    "Negative-Condition": ("arg1-as-negcond", ORDER_A1_A2),
    "Purpose": ("arg2-as-goal", ORDER_A1_A2),
    "Similarity": ("", ORDER_ANY),
    "Substitution": ("arg1-as-subst", ORDER_A1_A2),
    "Synchronous": ("", ORDER_ANY),
}

_NOISE_VOCAB = [f"noise{i}" for i in range(32)]


@dataclass(frozen=True)
class SyntheticConfig:
    class_set: tuple[str, ...]
    n_per_class: int
    seed: int
    framework: str = FRAMEWORK_RST
    class_token_prob: float = 0.15
    noise_tokens_per_arg: int = 5
    dim_tokens: bool = False
    group_size: int = 2


def class_profile(framework: str, class_label: str) -> tuple[DimensionProfile, str, str, str]:
    """(profile, end_label, arity, order) of the class's representative relation."""
    if framework == FRAMEWORK_RST:
        if class_label not in RST_CLASS_ROWS:
            raise UnsupportedClassError(f"unsupported RST class {class_label!r}")
        row = RST_CLASS_ROWS[class_label]
        if row is None:
            return underspecified_profile(), class_label.lower(), ARITY_MONO, ORDER_N_S
        end_label, arity, order = row
        return lookup_rst(RstMappingKey(class_label, end_label, arity, order)), end_label, arity, order
    if framework == FRAMEWORK_PDTB:
        if class_label not in PDTB_CLASS_ROWS:
            raise UnsupportedClassError(f"unsupported PDTB class {class_label!r}")
        end_label, order = PDTB_CLASS_ROWS[class_label]
        return lookup_pdtb(PdtbMappingKey(class_label, end_label, order)), end_label, "", order
    raise UnsupportedClassError(f"unknown framework {framework!r}")


def _slug(label: str) -> str:
    return label.lower().replace("+", "").replace("-", "")


def _doc_id(framework: str, index: int, total: int, slug: str) -> str:
    # Encodes split membership so filter_and_split works on synthetic data:
    # PDTB ids carry a WSJ section, RST ids a TRAINING/TEST prefix.
    frac = index / total if total else 0.0
    if framework == FRAMEWORK_PDTB:
        if frac < 0.7:
            section = 2 + index % 19
        elif frac < 0.85:
            section = index % 2
        else:
            section = 21 + index % 2
        return f"wsj_{section:02d}{index % 100:02d}_{slug}{index:04d}"
    prefix = "TEST" if frac >= 0.85 else "TRAINING"
    return f"{prefix}/doc{index:04d}_{slug}"


def generate_synthetic(config: SyntheticConfig) -> list[RelationInstance]:
    """Pure function of (config, seed): byte-identical output across runs."""
    rng = random.Random(config.seed)
    classes = list(config.class_set)
    for cls in classes:
        class_profile(config.framework, cls)  # validate up front
    group_of = {cls: i // config.group_size for i, cls in enumerate(classes)}
    instances = []
    for index in range(config.n_per_class):
        for cls in classes:
            profile, end_label, arity, order = class_profile(config.framework, cls)
            slug = _slug(cls)
            group = f"grp{group_of[cls]}"
            if rng.random() < config.class_token_prob:
                evidence = f"cls_{slug}"
            else:
                evidence = f"amb{group_of[cls]}"
            noise1 = rng.choices(_NOISE_VOCAB, k=config.noise_tokens_per_arg)
            noise2 = rng.choices(_NOISE_VOCAB, k=config.noise_tokens_per_arg)
            arg1 = [group, evidence] + noise1
            arg2 = noise2 + [group]
            if config.dim_tokens:
                arg1 += [f"{dim}={profile.value(dim)}" for dim in DIMENSIONS[:5]]
                arg2 += [f"{dim}={profile.value(dim)}" for dim in DIMENSIONS[5:]]
            rel_type = ""
            if config.framework == FRAMEWORK_PDTB:
                rel_type = REL_EXPLICIT if index % 2 == 0 else REL_IMPLICIT
            instances.append(
                RelationInstance(
                    framework=config.framework,
                    doc_id=_doc_id(config.framework, index, config.n_per_class, slug),
                    relation_type=rel_type,
                    class_label=cls,
                    end_label=end_label,
                    arity=arity,
                    order=order,
                    arg1_text=" ".join(arg1),
                    arg2_text=" ".join(arg2),
                    profile=profile,
                )
            )
    return instances


DEFAULT_RST_CLASSES = RST_CLASSES
DEFAULT_PDTB_CLASSES = tuple(sorted(PDTB_CLASS_ROWS))
