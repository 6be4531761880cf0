"""Model variants for relation classification.

Four architectures share a common vocabulary of shapes:

* ``AugmentedClassifier`` — encoder vector concatenated with nine trainable
  categorical feature embeddings, passed through two two-layer feed-forward
  blocks and a linear classifier.
* ``BaselineClassifier`` — linear softmax classifier straight on the
  encoder vector.
* ``TransferModel`` — the augmented classifier's body with every tensor
  frozen, topped by a freshly initialized classifier for a new class set.
* ``DimPredictor`` — a shared two-layer trunk with nine classification
  heads, one per feature dimension, head widths equal to the value-set
  sizes.
"""

from __future__ import annotations

import hashlib
import io
from dataclasses import dataclass

import torch
import torch.nn as nn

from .dimensions import DIMENSIONS, VALUE_SETS
from .errors import (
    CheckpointError,
    LabelOutOfRangeError,
    ShapeMismatchError,
    UnknownDimensionError,
)

DIM_EMBED_SIZE = 8
FFN1_WIDTH = 256
FFN2_WIDTH = 128
LEAKY_SLOPE = 0.01
DROPOUT = 0.2

KIND_BASELINE = "baseline"
KIND_AUGMENTED = "augmented"
KIND_TRANSFER = "transfer"
KIND_DIM_PREDICTOR = "dim_predictor"

CHECKPOINT_VERSION = 1


@dataclass(frozen=True)
class ModelConfig:
    hidden_dim: int = 768
    num_classes: int = 16
    dim_embed_size: int = DIM_EMBED_SIZE
    dropout: float = DROPOUT
    # dimensions whose embeddings participate in the concatenation;
    # shrinking this set is how ablation runs are configured.
    active_dims: tuple[str, ...] = DIMENSIONS

    def __post_init__(self):
        for dim in self.active_dims:
            if dim not in DIMENSIONS:
                raise UnknownDimensionError(f"unknown dimension {dim!r}")


def _two_layer_ffn(in_dim: int, out_dim: int, dropout: float) -> nn.Sequential:
    return nn.Sequential(
        nn.Linear(in_dim, out_dim),
        nn.LeakyReLU(LEAKY_SLOPE),
        nn.Linear(out_dim, out_dim),
        nn.LeakyReLU(LEAKY_SLOPE),
        nn.Dropout(dropout),
    )


class AugmentedClassifier(nn.Module):
    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        self.embeddings = nn.ModuleDict(
            {
                dim: nn.Embedding(len(VALUE_SETS[dim]), config.dim_embed_size)
                for dim in config.active_dims
            }
        )
        for emb in self.embeddings.values():
            nn.init.uniform_(emb.weight, -0.1, 0.1)
        in_dim = config.hidden_dim + len(config.active_dims) * config.dim_embed_size
        self.ffn1 = _two_layer_ffn(in_dim, FFN1_WIDTH, config.dropout)
        self.ffn2 = _two_layer_ffn(FFN1_WIDTH, FFN2_WIDTH, config.dropout)
        self.classifier = nn.Linear(FFN2_WIDTH, config.num_classes)

    def _check_inputs(self, h_s: torch.Tensor, feature_ids: torch.Tensor) -> None:
        if h_s.shape[-1] != self.config.hidden_dim:
            raise ShapeMismatchError(
                f"encoder vector has width {h_s.shape[-1]}, "
                f"expected {self.config.hidden_dim}"
            )
        if feature_ids.shape[-1] != len(DIMENSIONS):
            raise ShapeMismatchError(
                f"feature ids have width {feature_ids.shape[-1]}, expected {len(DIMENSIONS)}"
            )
        for i, dim in enumerate(DIMENSIONS):
            ids = feature_ids[..., i]
            if ids.numel() and (ids.min() < 0 or ids.max() >= len(VALUE_SETS[dim])):
                raise LabelOutOfRangeError(f"feature id out of range for {dim}")

    def body(self, h_s: torch.Tensor, feature_ids: torch.Tensor) -> torch.Tensor:
        """Pre-classifier representation (the transfer model reuses this)."""
        self._check_inputs(h_s, feature_ids)
        pieces = [h_s]
        for i, dim in enumerate(DIMENSIONS):
            if dim in self.embeddings:
                pieces.append(self.embeddings[dim](feature_ids[..., i]))
        return self.ffn2(self.ffn1(torch.cat(pieces, dim=-1)))

    def forward(self, h_s: torch.Tensor, feature_ids: torch.Tensor) -> torch.Tensor:
        return self.classifier(self.body(h_s, feature_ids))


class BaselineClassifier(nn.Module):
    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        self.classifier = nn.Linear(config.hidden_dim, config.num_classes)

    def forward(self, h_s: torch.Tensor) -> torch.Tensor:
        if h_s.shape[-1] != self.config.hidden_dim:
            raise ShapeMismatchError(
                f"encoder vector has width {h_s.shape[-1]}, "
                f"expected {self.config.hidden_dim}"
            )
        return self.classifier(h_s)


class TransferModel(nn.Module):
    """Frozen augmented-classifier body with a new trainable head."""

    def __init__(self, source: AugmentedClassifier, num_target_classes: int):
        super().__init__()
        self.source = source
        self.config = ModelConfig(
            hidden_dim=source.config.hidden_dim,
            num_classes=num_target_classes,
            dim_embed_size=source.config.dim_embed_size,
            dropout=source.config.dropout,
            active_dims=source.config.active_dims,
        )
        for param in self.source.parameters():
            param.requires_grad_(False)
        self.head = nn.Linear(FFN2_WIDTH, num_target_classes)

    def forward(self, h_s: torch.Tensor, feature_ids: torch.Tensor) -> torch.Tensor:
        return self.head(self.source.body(h_s, feature_ids))


def make_transfer(source: AugmentedClassifier, num_target_classes: int) -> TransferModel:
    return TransferModel(source, num_target_classes)


class DimPredictor(nn.Module):
    def __init__(self, config: ModelConfig):
        super().__init__()
        self.config = config
        self.trunk = nn.Sequential(
            _two_layer_ffn(config.hidden_dim, FFN1_WIDTH, config.dropout),
            _two_layer_ffn(FFN1_WIDTH, FFN2_WIDTH, config.dropout),
        )
        self.heads = nn.ModuleDict(
            {dim: nn.Linear(FFN2_WIDTH, len(VALUE_SETS[dim])) for dim in DIMENSIONS}
        )

    def forward(self, h_s: torch.Tensor) -> dict[str, torch.Tensor]:
        if h_s.shape[-1] != self.config.hidden_dim:
            raise ShapeMismatchError(
                f"encoder vector has width {h_s.shape[-1]}, "
                f"expected {self.config.hidden_dim}"
            )
        rep = self.trunk(h_s)
        return {dim: self.heads[dim](rep) for dim in DIMENSIONS}


def cross_entropy(logits: torch.Tensor, labels: torch.Tensor) -> torch.Tensor:
    """Batch-mean negative log softmax probability of the gold class."""
    num_classes = logits.shape[-1]
    if labels.numel() and (labels.min() < 0 or labels.max() >= num_classes):
        raise LabelOutOfRangeError(
            f"label outside [0, {num_classes}) in cross-entropy input"
        )
    return nn.functional.cross_entropy(logits, labels)


def dim_prediction_loss(
    logits: dict[str, torch.Tensor],
    labels: torch.Tensor,
    weights: dict[str, float] | None = None,
) -> torch.Tensor:
    """Sum of the nine per-head cross-entropies (unweighted by default).

    ``labels``: tensor of shape (batch, 9), columns in declared dimension
    order.
    """
    total = None
    for i, dim in enumerate(DIMENSIONS):
        head_labels = labels[..., i]
        if head_labels.numel() and (
            head_labels.min() < 0 or head_labels.max() >= len(VALUE_SETS[dim])
        ):
            raise LabelOutOfRangeError(f"label out of range for dimension {dim}")
        term = nn.functional.cross_entropy(logits[dim], head_labels)
        if weights is not None:
            term = term * weights.get(dim, 1.0)
        total = term if total is None else total + term
    return total


def count_trainable_params(model: nn.Module) -> int:
    return sum(p.numel() for p in model.parameters() if p.requires_grad)


def body_fingerprint(model: nn.Module) -> str:
    """Hash of all frozen tensors; equality certifies the freeze contract."""
    digest = hashlib.sha256()
    for name, param in sorted(model.named_parameters()):
        if not param.requires_grad:
            digest.update(name.encode())
            digest.update(param.detach().cpu().numpy().tobytes())
    return digest.hexdigest()


_MODEL_KINDS = {
    KIND_BASELINE: BaselineClassifier,
    KIND_AUGMENTED: AugmentedClassifier,
    KIND_TRANSFER: TransferModel,
    KIND_DIM_PREDICTOR: DimPredictor,
}


def build_model(kind: str, config: ModelConfig,
                source: AugmentedClassifier | None = None) -> nn.Module:
    if kind == KIND_TRANSFER:
        if source is None:
            raise CheckpointError("transfer model needs a source augmented classifier")
        return TransferModel(source, config.num_classes)
    if kind not in _MODEL_KINDS:
        raise CheckpointError(f"unknown model kind {kind!r}")
    return _MODEL_KINDS[kind](config)


def save_checkpoint(path, model: nn.Module, kind: str, class_set: list[str],
                    encoder_fingerprint: str = "", seed: int = 0) -> None:
    payload = {
        "version": CHECKPOINT_VERSION,
        "kind": kind,
        "state_dict": model.state_dict(),
        "frozen": sorted(
            name for name, p in model.named_parameters() if not p.requires_grad
        ),
        "config": {
            "hidden_dim": model.config.hidden_dim,
            "num_classes": model.config.num_classes,
            "dim_embed_size": getattr(model.config, "dim_embed_size", DIM_EMBED_SIZE),
            "dropout": model.config.dropout,
            "active_dims": list(getattr(model.config, "active_dims", DIMENSIONS)),
        },
        "source_num_classes": (
            model.source.config.num_classes if isinstance(model, TransferModel) else None
        ),
        "class_set": list(class_set),
        "value_sets": {dim: list(VALUE_SETS[dim]) for dim in DIMENSIONS},
        "encoder_fingerprint": encoder_fingerprint,
        "seed": seed,
    }
    torch.save(payload, path)


def load_checkpoint(path):
    """-> (model, metadata dict). Validates shapes and value-set ordering."""
    try:
        payload = torch.load(path, map_location="cpu", weights_only=False)
    except Exception as exc:
        raise CheckpointError(f"cannot read checkpoint {path}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("version") != CHECKPOINT_VERSION:
        raise CheckpointError(f"unsupported checkpoint format in {path}")
    if payload["value_sets"] != {dim: list(VALUE_SETS[dim]) for dim in DIMENSIONS}:
        raise CheckpointError("checkpoint value-set ordering differs from this build")
    cfg_d = payload["config"]
    config = ModelConfig(
        hidden_dim=cfg_d["hidden_dim"],
        num_classes=cfg_d["num_classes"],
        dim_embed_size=cfg_d["dim_embed_size"],
        dropout=cfg_d["dropout"],
        active_dims=tuple(cfg_d["active_dims"]),
    )
    kind = payload["kind"]
    if kind == KIND_TRANSFER:
        source_config = ModelConfig(
            hidden_dim=config.hidden_dim,
            num_classes=payload["source_num_classes"],
            dim_embed_size=config.dim_embed_size,
            dropout=config.dropout,
            active_dims=config.active_dims,
        )
        model = TransferModel(AugmentedClassifier(source_config), config.num_classes)
    else:
        model = build_model(kind, config)
    try:
        model.load_state_dict(payload["state_dict"])
    except RuntimeError as exc:
        raise CheckpointError(f"checkpoint shape mismatch: {exc}") from exc
    for name, param in model.named_parameters():
        param.requires_grad_(name not in set(payload["frozen"]))
    meta = {k: payload[k] for k in
            ("kind", "class_set", "encoder_fingerprint", "seed")}
    return model, meta


def checkpoint_bytes(model: nn.Module) -> bytes:
    buf = io.BytesIO()
    torch.save(model.state_dict(), buf)
    return buf.getvalue()
