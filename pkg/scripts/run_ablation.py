#!/usr/bin/env python3
"""Ablation sweep: retrain the augmented classifier with each dimension
group removed and print the metric deltas."""

import argparse

from dimrel.encoder import EncoderConfig
from dimrel.evaluation import ABLATION_GROUPS, run_ablation
from dimrel.splits import TASK_RST, filter_and_split
from dimrel.synth import DEFAULT_RST_CLASSES, SyntheticConfig, generate_synthetic
from dimrel.training import TrainConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-per-class", type=int, default=80)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--hidden-dim", type=int, default=96)
    ap.add_argument("--lr", type=float, default=1e-3)
    ap.add_argument("--epochs", type=int, default=10)
    ap.add_argument("--groups", nargs="*", default=list(ABLATION_GROUPS))
    args = ap.parse_args()

    corpus = generate_synthetic(SyntheticConfig(
        class_set=DEFAULT_RST_CLASSES, n_per_class=args.n_per_class, seed=args.seed))
    splits = filter_and_split(corpus, TASK_RST)
    cfg = TrainConfig(
        learning_rate=args.lr, max_epochs=args.epochs, seed=args.seed,
        encoder=EncoderConfig(hidden_dim=args.hidden_dim, seed=args.seed))
    print(f"{'removed':<8} {'acc delta':>10} {'macro-F1 delta':>15}")
    for group in args.groups:
        result = run_ablation(splits, [group], cfg)
        print(f"-{group:<7} {result.accuracy_delta:>+10.3f} "
              f"{result.macro_f1_delta:>+15.3f}")


if __name__ == "__main__":
    main()
