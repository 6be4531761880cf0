"""Optimization loop shared by all model variants.

AdamW with decoupled weight decay, a linear warmup + linear-decay-to-zero
learning-rate schedule, per-step global gradient-norm clipping, per-epoch
validation and best-epoch checkpoint selection (ties broken by the earliest
epoch). All randomness (init, shuffling, dropout) derives from the run
seed, so equal (data, config, seed) triples produce identical checkpoints.
"""

from __future__ import annotations

import json
import math
import os
import random
import time
from dataclasses import asdict, dataclass, field, replace

import numpy as np
import torch

from .dimensions import encode_profile
from .encoder import EncoderConfig, encode_pair
from .errors import CheckpointError, DivergenceError, EmptySplitError
from .interchange import RelationInstance
from .models import (
    KIND_AUGMENTED,
    KIND_BASELINE,
    KIND_DIM_PREDICTOR,
    KIND_TRANSFER,
    AugmentedClassifier,
    ModelConfig,
    build_model,
    checkpoint_bytes,
    count_trainable_params,
    cross_entropy,
    dim_prediction_loss,
    save_checkpoint,
)
from .splits import DatasetSplits

SELECT_ACCURACY = "ACCURACY"
SELECT_MACRO_F1 = "MACRO_F1"


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 5e-5
    batch_size: int = 4
    max_epochs: int = 10
    grad_clip_max_norm: float = 1.0
    dropout: float = 0.2
    warmup_steps: int = 0
    seed: int = 0
    selection_metric: str = SELECT_ACCURACY
    weight_decay: float = 0.01
    encoder: EncoderConfig = field(default_factory=EncoderConfig)
    run_dir: str | None = None

    def __post_init__(self):
        if self.learning_rate <= 0 or self.batch_size < 1 or self.max_epochs < 0:
            raise ValueError("learning_rate/batch_size/max_epochs out of range")
        if not 0.0 <= self.dropout < 1.0:
            raise ValueError("dropout must be in [0, 1)")


TRANSFER_DEFAULTS = {"learning_rate": 1e-5, "max_epochs": 50}
DIM_PREDICTOR_DEFAULTS = {"learning_rate": 1e-5}


@dataclass
class TrainHistory:
    train_loss: list[float] = field(default_factory=list)
    validation_metric: list[float] = field(default_factory=list)
    wall_clock: list[float] = field(default_factory=list)
    selected_epoch: int = -1


def seed_everything(seed: int) -> None:
    random.seed(seed)
    np.random.seed(seed & 0xFFFFFFFF)
    torch.manual_seed(seed)
    torch.use_deterministic_algorithms(True, warn_only=True)


def resolve_seed(cfg: TrainConfig) -> int:
    env = os.environ.get("DIMREL_SEED")
    return int(env) if env else cfg.seed


def resolve_device() -> torch.device:
    return torch.device(os.environ.get("DIMREL_DEVICE", "cpu"))


def linear_schedule(step: int, total_steps: int, warmup_steps: int) -> float:
    """Multiplier on the base learning rate: linear 0->1 over the warmup,
    then linear 1->0 ending at the final step."""
    if total_steps <= 0:
        return 0.0
    if warmup_steps > 0 and step < warmup_steps:
        return step / warmup_steps
    remaining = max(0, total_steps - step)
    return remaining / max(1, total_steps - warmup_steps)


@dataclass
class EncodedDataset:
    vectors: torch.Tensor       # (n, hidden_dim)
    feature_ids: torch.Tensor   # (n, 9)
    labels: torch.Tensor        # (n,) class indices

    def __len__(self) -> int:
        return self.vectors.shape[0]


def encode_dataset(instances: list[RelationInstance], class_set: list[str],
                   encoder_cfg: EncoderConfig,
                   label_mode: str = "class") -> EncodedDataset:
    """Encode instances once up front; training then iterates over tensors.

    ``label_mode``: "class" -> class-set indices, "dims" -> (n, 9) feature
    indices (dimension-prediction training targets).
    """
    index = {c: i for i, c in enumerate(class_set)}
    if not instances:
        return EncodedDataset(
            vectors=torch.zeros(0, encoder_cfg.hidden_dim),
            feature_ids=torch.zeros(0, 9, dtype=torch.long),
            labels=torch.zeros((0, 9) if label_mode == "dims" else (0,),
                               dtype=torch.long),
        )
    vectors, features, labels = [], [], []
    for inst in instances:
        vectors.append(encode_pair(inst.arg1_text, inst.arg2_text, encoder_cfg))
        ids = encode_profile(inst.profile)
        features.append(ids)
        labels.append(ids if label_mode == "dims" else index[inst.class_label])
    return EncodedDataset(
        vectors=torch.from_numpy(np.stack(vectors)),
        feature_ids=torch.tensor(features, dtype=torch.long),
        labels=torch.tensor(labels, dtype=torch.long),
    )


def _batches(n: int, batch_size: int, rng: random.Random):
    order = list(range(n))
    rng.shuffle(order)
    for start in range(0, n, batch_size):
        yield order[start : start + batch_size]


def _forward(model, kind: str, data: EncodedDataset, idx: list[int] | slice):
    h_s = data.vectors[idx]
    if kind == KIND_BASELINE:
        return model(h_s)
    if kind == KIND_DIM_PREDICTOR:
        return model(h_s)
    return model(h_s, data.feature_ids[idx])


def _loss(kind: str, outputs, labels: torch.Tensor) -> torch.Tensor:
    if kind == KIND_DIM_PREDICTOR:
        return dim_prediction_loss(outputs, labels)
    return cross_entropy(outputs, labels)


def evaluate_model(model, kind: str, data: EncodedDataset,
                   selection_metric: str = SELECT_ACCURACY) -> float:
    from .evaluation import classification_report  # local: avoid cycle

    model.eval()
    with torch.no_grad():
        outputs = _forward(model, kind, data, slice(None))
        if kind == KIND_DIM_PREDICTOR:
            # mean per-dimension accuracy (each head scored independently)
            from .dimensions import DIMENSIONS
            accs = [
                (outputs[dim].argmax(dim=-1) == data.labels[:, i]).float().mean().item()
                for i, dim in enumerate(DIMENSIONS)
            ]
            return sum(accs) / len(accs)
        preds = outputs.argmax(dim=-1)
        if selection_metric == SELECT_MACRO_F1:
            classes = sorted({int(v) for v in data.labels.tolist()})
            report = classification_report(
                [int(v) for v in data.labels.tolist()],
                [int(v) for v in preds.tolist()],
                classes,
            )
            return report.macro_f1
        return (preds == data.labels).float().mean().item()


def predictions(model, kind: str, data: EncodedDataset) -> list[int]:
    model.eval()
    with torch.no_grad():
        outputs = _forward(model, kind, data, slice(None))
    return [int(v) for v in outputs.argmax(dim=-1).tolist()]


def _run_dir_setup(cfg: TrainConfig, kind: str, seed: int):
    if cfg.run_dir is None:
        return None
    os.makedirs(cfg.run_dir, exist_ok=True)
    snapshot = asdict(replace(cfg, run_dir=None))
    snapshot["model_kind"] = kind
    snapshot["resolved_seed"] = seed
    with open(os.path.join(cfg.run_dir, "config.json"), "w") as fh:
        json.dump(snapshot, fh, indent=2, sort_keys=True)
    with open(os.path.join(cfg.run_dir, "log.txt"), "a") as fh:
        fh.write(f"start {time.strftime('%Y-%m-%dT%H:%M:%S')}\n")
    return cfg.run_dir


def fit(model, kind: str, train_data: EncodedDataset, val_data: EncodedDataset,
        cfg: TrainConfig, class_set: list[str]) -> tuple[dict, TrainHistory]:
    """Core loop; returns (best state_dict, history). Model ends at the
    final epoch's weights; the selected checkpoint is the returned dict."""
    if len(train_data) == 0 or len(val_data) == 0:
        raise EmptySplitError("training and validation splits must be non-empty")
    seed = resolve_seed(cfg)
    run_dir = _run_dir_setup(cfg, kind, seed)
    device = resolve_device()
    model.to(device)
    rng = random.Random(seed ^ 0x5EED)
    trainable = [p for p in model.parameters() if p.requires_grad]
    optimizer = torch.optim.AdamW(trainable, lr=cfg.learning_rate,
                                  weight_decay=cfg.weight_decay)
    steps_per_epoch = math.ceil(len(train_data) / cfg.batch_size)
    total_steps = steps_per_epoch * cfg.max_epochs
    scheduler = torch.optim.lr_scheduler.LambdaLR(
        optimizer,
        lambda step: linear_schedule(step, total_steps, cfg.warmup_steps),
    )
    history = TrainHistory()
    best_metric, best_state = -math.inf, {
        k: v.detach().clone() for k, v in model.state_dict().items()
    }
    for epoch in range(cfg.max_epochs):
        t0 = time.monotonic()
        model.train()
        epoch_loss, n_batches = 0.0, 0
        for idx in _batches(len(train_data), cfg.batch_size, rng):
            optimizer.zero_grad()
            outputs = _forward(model, kind, train_data, idx)
            loss = _loss(kind, outputs, train_data.labels[idx])
            if not torch.isfinite(loss):
                raise DivergenceError(f"non-finite loss at epoch {epoch}")
            loss.backward()
            torch.nn.utils.clip_grad_norm_(trainable, cfg.grad_clip_max_norm)
            optimizer.step()
            scheduler.step()
            epoch_loss += loss.item()
            n_batches += 1
        metric = evaluate_model(model, kind, val_data, cfg.selection_metric)
        history.train_loss.append(epoch_loss / max(1, n_batches))
        history.validation_metric.append(metric)
        history.wall_clock.append(time.monotonic() - t0)
        if metric > best_metric:
            best_metric = metric
            best_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
            history.selected_epoch = epoch
        if run_dir:
            with open(os.path.join(run_dir, "metrics.jsonl"), "a") as fh:
                fh.write(json.dumps({
                    "epoch": epoch,
                    "train_loss": history.train_loss[-1],
                    "validation_metric": metric,
                }) + "\n")
    if run_dir:
        final_state = {k: v.detach().clone() for k, v in model.state_dict().items()}
        model.load_state_dict(best_state)
        save_checkpoint(os.path.join(run_dir, "best.pt"), model, kind, class_set,
                        cfg.encoder.fingerprint(), seed)
        model.load_state_dict(final_state)
        save_checkpoint(os.path.join(run_dir, "final.pt"), model, kind, class_set,
                        cfg.encoder.fingerprint(), seed)
    model.load_state_dict(best_state)
    return best_state, history


def train(model_kind: str, splits: DatasetSplits, cfg: TrainConfig,
          model_config: ModelConfig | None = None):
    """Train a fresh model of the given kind on the splits.

    Returns (model at its best epoch, history, encoded test data).
    """
    seed = resolve_seed(cfg)
    seed_everything(seed)
    if model_config is None:
        model_config = ModelConfig(
            hidden_dim=cfg.encoder.hidden_dim,
            num_classes=len(splits.class_set),
            dropout=cfg.dropout,
        )
    model = build_model(model_kind, model_config)
    label_mode = "dims" if model_kind == KIND_DIM_PREDICTOR else "class"
    train_data = encode_dataset(splits.train, splits.class_set, cfg.encoder, label_mode)
    val_data = encode_dataset(splits.validation, splits.class_set, cfg.encoder, label_mode)
    test_data = encode_dataset(splits.test, splits.class_set, cfg.encoder, label_mode)
    _, history = fit(model, model_kind, train_data, val_data, cfg, splits.class_set)
    return model, history, test_data


def train_transfer(source_model: AugmentedClassifier, source_kind: str,
                   target_splits: DatasetSplits, cfg: TrainConfig):
    """Freeze the source body, fit a fresh head on the target task."""
    if source_kind != KIND_AUGMENTED:
        raise CheckpointError(
            f"transfer source must be an augmented classifier, got {source_kind!r}"
        )
    seed = resolve_seed(cfg)
    seed_everything(seed)
    from .models import make_transfer

    model = make_transfer(source_model, len(target_splits.class_set))
    before = checkpoint_bytes(model.source)
    train_data = encode_dataset(target_splits.train, target_splits.class_set, cfg.encoder)
    val_data = encode_dataset(target_splits.validation, target_splits.class_set, cfg.encoder)
    test_data = encode_dataset(target_splits.test, target_splits.class_set, cfg.encoder)
    _, history = fit(model, KIND_TRANSFER, train_data, val_data, cfg,
                     target_splits.class_set)
    after = checkpoint_bytes(model.source)
    if before != after:
        raise DivergenceError("frozen source parameters changed during transfer")
    return model, history, test_data


__all__ = [
    "TrainConfig", "TrainHistory", "TRANSFER_DEFAULTS", "DIM_PREDICTOR_DEFAULTS",
    "SELECT_ACCURACY", "SELECT_MACRO_F1",
    "seed_everything", "linear_schedule", "encode_dataset", "EncodedDataset",
    "fit", "train", "train_transfer", "evaluate_model", "predictions",
    "count_trainable_params",
]
