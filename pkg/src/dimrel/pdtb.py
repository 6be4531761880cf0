"""Reader for PDTB 3.0 annotation files.

Two sources are accepted: the canonical interchange format (any ``*.jsonl``
path) or LDC-style pipe-delimited annotation files plus the raw text files
their character offsets point into. Column positions for the pipe format
are configurable because distributions differ slightly; the defaults follow
the PDTB 3.0 gold layout.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .dimensions import ORDER_A1_A2, ORDER_A2_A1, PdtbMappingKey, lookup_pdtb
from .errors import FormatError, UnknownSenseError
from .interchange import (
    FRAMEWORK_PDTB,
    REL_EXPLICIT,
    REL_IMPLICIT,
    RelationInstance,
    read_instances,
)

_TYPE_MAP = {"Explicit": REL_EXPLICIT, "Implicit": REL_IMPLICIT}


@dataclass(frozen=True)
class PipeColumns:
    relation_type: int = 0
    senses: tuple[int, ...] = (8, 9, 10, 11)
    arg1_span: int = 14
    arg2_span: int = 20


def split_sense(sense: str) -> tuple[str, str]:
    """'Contingency.Cause.Reason' -> ('Cause', 'Reason')."""
    parts = sense.split(".")
    if len(parts) < 2:
        raise UnknownSenseError(f"sense {sense!r} has no level-2 component")
    return parts[1], parts[2] if len(parts) > 2 else ""


def _span_start(span_list: str) -> int | None:
    # "123..456;789..800" -> 123
    starts = []
    for piece in span_list.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        try:
            starts.append(int(piece.split("..")[0]))
        except ValueError:
            return None
    return min(starts) if starts else None


def _span_text(span_list: str, raw: str) -> str:
    pieces = []
    for piece in span_list.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        lo, hi = piece.split("..")
        pieces.append(raw[int(lo) : int(hi)])
    return " ".join(" ".join(pieces).split())


def parse_pipe_file(path, raw_text: str, doc_id: str,
                    columns: PipeColumns = PipeColumns()) -> list[RelationInstance]:
    instances = []
    with open(path, encoding="utf-8", errors="replace") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            cols = line.split("|")
            needed = max(columns.relation_type, *columns.senses,
                         columns.arg1_span, columns.arg2_span)
            if len(cols) <= needed:
                raise FormatError(f"{path}:{lineno}: expected >= {needed + 1} columns")
            rel_type = _TYPE_MAP.get(cols[columns.relation_type])
            if rel_type is None:
                continue  # AltLex / EntRel / NoRel etc. are out of task scope
            arg1_span, arg2_span = cols[columns.arg1_span], cols[columns.arg2_span]
            start1, start2 = _span_start(arg1_span), _span_start(arg2_span)
            if start1 is None or start2 is None:
                raise FormatError(f"{path}:{lineno}: malformed argument span list")
            order = ORDER_A1_A2 if start1 <= start2 else ORDER_A2_A1
            arg1_text = _span_text(arg1_span, raw_text)
            arg2_text = _span_text(arg2_span, raw_text)
            if order == ORDER_A2_A1:
                linear1, linear2 = arg2_text, arg1_text
            else:
                linear1, linear2 = arg1_text, arg2_text
            senses = [cols[i] for i in columns.senses if i < len(cols) and cols[i]]
            if not senses:
                raise FormatError(f"{path}:{lineno}: record carries no sense annotation")
            for sense in senses:
                level2, end_label = split_sense(sense)
                profile = lookup_pdtb(PdtbMappingKey(level2, end_label, order))
                instances.append(
                    RelationInstance(
                        framework=FRAMEWORK_PDTB,
                        doc_id=doc_id,
                        relation_type=rel_type,
                        class_label=level2,
                        end_label=end_label,
                        arity="",
                        order=order,
                        arg1_text=linear1,
                        arg2_text=linear2,
                        profile=profile,
                    )
                )
    return instances


def read_pdtb_records(source, raw_dir=None,
                      columns: PipeColumns = PipeColumns()) -> list[RelationInstance]:
    """Read PDTB records from an interchange file or a pipe-format tree.

    For pipe mode, ``source`` is the annotation root and ``raw_dir`` the
    matching raw-text root (same relative file layout, char offsets).
    """
    source = os.fspath(source)
    if os.path.isfile(source):
        return read_instances(source)
    if raw_dir is None:
        raise FormatError("pipe-format input requires the raw text directory")
    instances = []
    for dirpath, _dirnames, filenames in sorted(os.walk(source)):
        for name in sorted(filenames):
            if not name.startswith("wsj_"):
                continue
            ann_path = os.path.join(dirpath, name)
            rel = os.path.relpath(ann_path, source)
            raw_path = os.path.join(raw_dir, rel)
            if not os.path.exists(raw_path):
                raise FormatError(f"raw text file missing for {rel}")
            with open(raw_path, encoding="utf-8", errors="replace") as fh:
                raw_text = fh.read()
            doc_id = os.path.splitext(name)[0]
            instances.extend(parse_pipe_file(ann_path, raw_text, doc_id, columns))
    return instances
