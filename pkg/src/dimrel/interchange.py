"""Canonical interchange format: one JSON record per line, UTF-8.

Fields are exactly {framework, doc_id, relation_type, class_label,
end_label, arity, order, arg1_text, arg2_text, dims}. This file format is
the contract between corpus extraction and everything downstream.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

from .dimensions import DIMENSIONS, DimensionProfile
from .errors import FormatError

FRAMEWORK_RST = "RST"
FRAMEWORK_PDTB = "PDTB"

REL_EXPLICIT = "EXPLICIT"
REL_IMPLICIT = "IMPLICIT"

_FIELDS = (
    "framework", "doc_id", "relation_type", "class_label", "end_label",
    "arity", "order", "arg1_text", "arg2_text", "dims",
)


@dataclass(frozen=True)
class RelationInstance:
    framework: str  # RST / PDTB
    doc_id: str
    class_label: str
    end_label: str
    arity: str  # MONO/MULTI/BOTH for RST, "" for PDTB
    order: str  # N_S/S_N/ANY or A1_A2/A2_A1/ANY
    arg1_text: str
    arg2_text: str
    profile: DimensionProfile
    relation_type: str = ""  # EXPLICIT / IMPLICIT for PDTB, "" for RST

    def with_profile(self, profile: DimensionProfile) -> "RelationInstance":
        return replace(self, profile=profile)

    def to_record(self) -> dict:
        return {
            "framework": self.framework,
            "doc_id": self.doc_id,
            "relation_type": self.relation_type,
            "class_label": self.class_label,
            "end_label": self.end_label,
            "arity": self.arity,
            "order": self.order,
            "arg1_text": self.arg1_text,
            "arg2_text": self.arg2_text,
            "dims": self.profile.as_dict(),
        }

    @classmethod
    def from_record(cls, record: dict) -> "RelationInstance":
        missing = [f for f in _FIELDS if f not in record]
        if missing:
            raise FormatError(f"interchange record missing fields {missing}")
        dims = record["dims"]
        absent = [d for d in DIMENSIONS if d not in dims]
        if absent:
            raise FormatError(f"interchange record missing dimensions {absent}")
        return cls(
            framework=record["framework"],
            doc_id=record["doc_id"],
            relation_type=record["relation_type"],
            class_label=record["class_label"],
            end_label=record["end_label"],
            arity=record["arity"],
            order=record["order"],
            arg1_text=record["arg1_text"],
            arg2_text=record["arg2_text"],
            profile=DimensionProfile.from_dict(dims),
        )


def write_instances(instances, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for inst in instances:
            fh.write(json.dumps(inst.to_record(), sort_keys=True, ensure_ascii=False))
            fh.write("\n")


def read_instances(path) -> list[RelationInstance]:
    instances = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise FormatError(f"{path}:{lineno}: invalid JSON: {exc}") from exc
            instances.append(RelationInstance.from_record(record))
    return instances
