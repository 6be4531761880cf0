"""Sequence-pair encoders behind a backend-agnostic interface.

The TOY backend is fully deterministic and offline: tokens are hashed into
a sparse count vector, projected through a seed-derived fixed random matrix
and squashed with tanh, so outputs are reproducible across runs and lie in
[-1, 1]. The PRETRAINED backend adapts a masked-language-model checkpoint
(first-position pooling) and is only available when the weights can be
loaded.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BackendUnavailableError, EmptyArgumentError, FormatError

BACKEND_TOY = "TOY"
BACKEND_PRETRAINED = "PRETRAINED"

CLS = "[CLS]"
SEP = "[SEP]"

_HASH_BUCKETS = 4096


@dataclass(frozen=True)
class EncoderConfig:
    backend: str = BACKEND_TOY
    hidden_dim: int = 768
    max_sequence_length: int = 512
    seed: int = 0
    pretrained_name: str = "bert-base-uncased"

    def __post_init__(self):
        if self.hidden_dim <= 0:
            raise ValueError("hidden_dim must be positive")
        if self.max_sequence_length < 8:
            raise ValueError("max_sequence_length must be >= 8")

    def fingerprint(self) -> str:
        blob = json.dumps(
            [self.backend, self.hidden_dim, self.max_sequence_length,
             self.seed, self.pretrained_name]
        ).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class PairSequence:
    tokens: tuple[str, ...]
    segments: tuple[int, ...]


def build_pair_sequence(arg1: str, arg2: str, cfg: EncoderConfig) -> PairSequence:
    """[CLS] arg1 [SEP] arg2 [SEP] with 0/1 segment ids.

    Over-length pairs are truncated from both tails, proportionally to the
    argument lengths, until the sequence fits.
    """
    t1, t2 = arg1.split(), arg2.split()
    if not t1 or not t2:
        raise EmptyArgumentError("both arguments must be non-empty after tokenization")
    budget = cfg.max_sequence_length - 3  # CLS + 2x SEP
    if len(t1) + len(t2) > budget:
        keep1 = max(1, round(budget * len(t1) / (len(t1) + len(t2))))
        keep2 = max(1, budget - keep1)
        if keep1 + keep2 > budget:
            keep1 = budget - keep2
        t1, t2 = t1[:keep1], t2[:keep2]
    tokens = [CLS] + t1 + [SEP] + t2 + [SEP]
    segments = [0] * (len(t1) + 2) + [1] * (len(t2) + 1)
    return PairSequence(tokens=tuple(tokens), segments=tuple(segments))


def _token_bucket(token: str, segment: int) -> int:
    digest = hashlib.blake2b(f"{segment}:{token}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "little") % _HASH_BUCKETS


@lru_cache(maxsize=4)
def _projection(seed: int, hidden_dim: int) -> np.ndarray:
    rng = np.random.RandomState(seed & 0x7FFFFFFF)
    return rng.standard_normal((_HASH_BUCKETS, hidden_dim)).astype(np.float32)


def encode_toy(seq: PairSequence, cfg: EncoderConfig) -> np.ndarray:
    counts = np.zeros(_HASH_BUCKETS, dtype=np.float32)
    for token, segment in zip(seq.tokens, seq.segments):
        if token in (CLS, SEP):
            continue
        counts[_token_bucket(token, segment)] += 1.0
    counts /= max(1.0, float(len(seq.tokens)))
    projected = counts @ _projection(cfg.seed, cfg.hidden_dim)
    return np.tanh(projected).astype(np.float32)


def encode_pretrained(seq: PairSequence, cfg: EncoderConfig) -> np.ndarray:
    try:
        import torch
        from transformers import AutoModel, AutoTokenizer
    except ImportError as exc:
        raise BackendUnavailableError(f"pretrained backend unavailable: {exc}") from exc
    try:
        tokenizer = AutoTokenizer.from_pretrained(cfg.pretrained_name)
        model = AutoModel.from_pretrained(cfg.pretrained_name)
    except Exception as exc:  # offline / missing weights
        raise BackendUnavailableError(
            f"cannot load pretrained weights {cfg.pretrained_name!r}: {exc}"
        ) from exc
    sep = seq.tokens.index(SEP)
    text1 = " ".join(seq.tokens[1:sep])
    text2 = " ".join(t for t in seq.tokens[sep + 1 :] if t != SEP)
    with torch.no_grad():
        enc = tokenizer(text1, text2, return_tensors="pt",
                        truncation=True, max_length=cfg.max_sequence_length)
        out = model(**enc).last_hidden_state[0, 0]  # first-position pooling
    return out.numpy().astype(np.float32)


def encode(seq: PairSequence, cfg: EncoderConfig) -> np.ndarray:
    if cfg.backend == BACKEND_TOY:
        return encode_toy(seq, cfg)
    if cfg.backend == BACKEND_PRETRAINED:
        return encode_pretrained(seq, cfg)
    raise BackendUnavailableError(f"unknown encoder backend {cfg.backend!r}")


def encode_pair(arg1: str, arg2: str, cfg: EncoderConfig) -> np.ndarray:
    return encode(build_pair_sequence(arg1, arg2, cfg), cfg)


def write_embedding_file(path, records: dict[str, np.ndarray]) -> None:
    """(instance id -> vector) records: id length + utf-8 id + vector length
    + raw little-endian float32 values, repeated."""
    with open(path, "wb") as fh:
        for key, vec in records.items():
            raw = key.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)
            values = np.asarray(vec, dtype="<f4")
            fh.write(struct.pack("<I", values.size))
            fh.write(values.tobytes())


def read_embedding_file(path) -> dict[str, np.ndarray]:
    records: dict[str, np.ndarray] = {}
    with open(path, "rb") as fh:
        while True:
            head = fh.read(4)
            if not head:
                break
            if len(head) != 4:
                raise FormatError("truncated embedding file (id length)")
            (id_len,) = struct.unpack("<I", head)
            raw = fh.read(id_len)
            if len(raw) != id_len:
                raise FormatError("truncated embedding file (id bytes)")
            (vec_len,) = struct.unpack("<I", fh.read(4))
            data = fh.read(4 * vec_len)
            if len(data) != 4 * vec_len:
                raise FormatError("truncated embedding file (vector bytes)")
            records[raw.decode("utf-8")] = np.frombuffer(data, dtype="<f4").copy()
    return records
