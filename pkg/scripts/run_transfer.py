#!/usr/bin/env python3
"""Transfer experiment: train the augmented classifier on a synthetic PDTB
corpus, freeze everything but the head, retrain the head on synthetic RST."""

import argparse

from dimrel.encoder import EncoderConfig
from dimrel.evaluation import classification_report
from dimrel.interchange import FRAMEWORK_PDTB
from dimrel.models import KIND_AUGMENTED, body_fingerprint, count_trainable_params
from dimrel.splits import TASK_PDTB_TOTAL, TASK_RST, filter_and_split
from dimrel.synth import (
    DEFAULT_PDTB_CLASSES,
    DEFAULT_RST_CLASSES,
    SyntheticConfig,
    generate_synthetic,
)
from dimrel.training import TrainConfig, predictions, train, train_transfer


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-per-class", type=int, default=80)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--hidden-dim", type=int, default=96)
    ap.add_argument("--lr", type=float, default=1e-3)
    args = ap.parse_args()

    enc = EncoderConfig(hidden_dim=args.hidden_dim, seed=args.seed)
    pdtb = filter_and_split(
        generate_synthetic(SyntheticConfig(
            class_set=DEFAULT_PDTB_CLASSES, n_per_class=args.n_per_class,
            seed=args.seed, framework=FRAMEWORK_PDTB)),
        TASK_PDTB_TOTAL, min_train_instances=1)
    source_cfg = TrainConfig(learning_rate=args.lr, max_epochs=10,
                             seed=args.seed, encoder=enc)
    source, _, _ = train(KIND_AUGMENTED, pdtb, source_cfg)

    rst = filter_and_split(
        generate_synthetic(SyntheticConfig(
            class_set=DEFAULT_RST_CLASSES, n_per_class=args.n_per_class,
            seed=args.seed + 1)),
        TASK_RST)
    transfer_cfg = TrainConfig(learning_rate=1e-3, max_epochs=50,
                               seed=args.seed, encoder=enc)
    model, history, test_data = train_transfer(source, KIND_AUGMENTED, rst, transfer_cfg)
    print(f"trainable parameters: {count_trainable_params(model)}")
    print(f"frozen-body hash:     {body_fingerprint(model)}")
    preds = predictions(model, "transfer", test_data)
    golds = [int(v) for v in test_data.labels.tolist()]
    rep = classification_report(golds, preds, list(range(len(rst.class_set))))
    print(f"transfer test acc {rep.accuracy:.3f} macro-F1 {rep.macro_f1:.3f} "
          f"(best epoch {history.selected_epoch})")


if __name__ == "__main__":
    main()
