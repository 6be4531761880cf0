"""Command-line entry point.

One binary with subcommands covering the pipeline: corpus conversion,
distribution statistics, classifier training, transfer learning, ablation
sweeps, dimension prediction, and synthetic-corpus generation.

Every flag has a config-file equivalent (``--config FILE``, simple
``key = value`` lines, ``#`` comments); precedence is CLI flag > config
file > built-in default. ``DIMREL_OUTPUT_ROOT`` prefixes relative output
paths. Errors print a single machine-greppable line ``ERROR <code>: text``
and exit 1; usage problems exit 2.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import dis_parser, rst, stats, synth
from .encoder import BACKEND_PRETRAINED, BACKEND_TOY, EncoderConfig
from .errors import DimrelError, FormatError
from .interchange import FRAMEWORK_PDTB, FRAMEWORK_RST, read_instances, write_instances
from .models import (
    KIND_AUGMENTED,
    KIND_BASELINE,
    KIND_DIM_PREDICTOR,
    body_fingerprint,
    count_trainable_params,
    load_checkpoint,
    save_checkpoint,
)
from .pdtb import read_pdtb_records
from .splits import (
    TASK_PDTB_EXPLICIT,
    TASK_PDTB_IMPLICIT,
    TASK_PDTB_TOTAL,
    TASK_RST,
    filter_and_split,
    fraction_splits,
)

_TASKS = {
    "rst": TASK_RST,
    "pdtb-explicit": TASK_PDTB_EXPLICIT,
    "pdtb-implicit": TASK_PDTB_IMPLICIT,
    "pdtb-total": TASK_PDTB_TOTAL,
}

_ENCODERS = {"toy": BACKEND_TOY, "pretrained": BACKEND_PRETRAINED}


def _read_config_file(path) -> dict[str, str]:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise FormatError(f"{path}:{lineno}: expected 'key = value'")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config_file(parser: argparse.ArgumentParser, args: argparse.Namespace,
                       argv: list[str]) -> argparse.Namespace:
    """Config-file values override defaults but not explicit flags."""
    if not getattr(args, "config", None):
        return args
    file_values = _read_config_file(args.config)
    # find which dests the user actually typed by re-parsing with all
    # defaults suppressed
    explicit_ns, _ = _explicit_parser(parser).parse_known_args(argv)
    explicit = set(vars(explicit_ns))
    for key, value in file_values.items():
        if key in explicit or not hasattr(args, key):
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            setattr(args, key, value.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, key, int(value))
        elif isinstance(current, float):
            setattr(args, key, float(value))
        elif isinstance(current, list):
            setattr(args, key, value.split(","))
        else:
            setattr(args, key, value)
    return args


def _explicit_parser(parser: argparse.ArgumentParser) -> argparse.ArgumentParser:
    """Clone of the parser whose defaults are all suppressed, so parsing
    yields only flags the user actually typed."""
    import copy

    clone = copy.deepcopy(parser)

    def suppress(p):
        for action in p._actions:
            action.default = argparse.SUPPRESS
            if isinstance(action, argparse._SubParsersAction):
                for sub in action.choices.values():
                    suppress(sub)

    suppress(clone)
    return clone


def _out_path(path: str) -> str:
    root = os.environ.get("DIMREL_OUTPUT_ROOT")
    if root and not os.path.isabs(path):
        return os.path.join(root, path)
    return path


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value config file (flags take precedence)")


def _add_train_flags(p: argparse.ArgumentParser, lr: float, epochs: int) -> None:
    p.add_argument("--encoder", choices=sorted(_ENCODERS), default="toy")
    p.add_argument("--hidden-dim", type=int, default=768)
    p.add_argument("--lr", type=float, default=lr)
    p.add_argument("--epochs", type=int, default=epochs)
    p.add_argument("--batch-size", type=int, default=4)
    p.add_argument("--warmup-steps", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="run directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dimrel",
        description="Discourse relation classification with coherence-dimension features.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convert", help="parse raw corpus files into interchange records")
    _add_common(p)
    p.add_argument("--framework", choices=["rst", "pdtb"], required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--raw", help="raw-text root for PDTB pipe-format input")
    p.add_argument("--out", required=True)

    p = sub.add_parser("stats", help="dimension/class distribution statistics")
    _add_common(p)
    p.add_argument("--in", dest="in_paths", action="append", required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("train", help="train a relation classifier")
    _add_common(p)
    p.add_argument("--task", choices=sorted(_TASKS), required=True)
    p.add_argument("--model", choices=["baseline", "augmented"], default="augmented")
    p.add_argument("--in", dest="in_path", required=True, help="interchange file")
    _add_train_flags(p, lr=5e-5, epochs=10)

    p = sub.add_parser("transfer", help="retrain only the classifier head on a new task")
    _add_common(p)
    p.add_argument("--source-ckpt", required=True)
    p.add_argument("--target", choices=sorted(_TASKS), default="rst")
    p.add_argument("--in", dest="in_path", required=True, help="target interchange file")
    _add_train_flags(p, lr=1e-5, epochs=50)

    p = sub.add_parser("ablate", help="retrain without selected dimensions")
    _add_common(p)
    p.add_argument("--task", choices=sorted(_TASKS), required=True)
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--remove", action="append", default=[],
                   help="dimension or group: pol bop soc impl temp add")
    _add_train_flags(p, lr=5e-5, epochs=10)

    p = sub.add_parser("predict-dims", help="train/evaluate the dimension predictor")
    _add_common(p)
    p.add_argument("--in", dest="in_paths", action="append", required=True,
                   help="interchange file(s); repeat to combine corpora")
    p.add_argument("--eval-ckpt", help="evaluate this checkpoint instead of training")
    _add_train_flags(p, lr=1e-5, epochs=10)

    p = sub.add_parser("synth", help="generate a deterministic synthetic corpus")
    _add_common(p)
    p.add_argument("--framework", choices=["rst", "pdtb"], default="rst")
    p.add_argument("--classes", help="comma-separated class list (default: all)")
    p.add_argument("--n", type=int, required=True, help="instances per class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dim-tokens", action="store_true",
                   help="spell the dimension profile out in the argument text")
    p.add_argument("--out", required=True)
    return parser


def _train_config(args) -> "TrainConfig":
    from .training import TrainConfig

    return TrainConfig(
        learning_rate=args.lr,
        batch_size=args.batch_size,
        max_epochs=args.epochs,
        warmup_steps=args.warmup_steps,
        seed=args.seed,
        encoder=EncoderConfig(backend=_ENCODERS[args.encoder],
                              hidden_dim=args.hidden_dim, seed=args.seed),
        run_dir=_out_path(args.out),
    )


def _write_report(run_dir, name, report) -> None:
    from .evaluation import format_report

    with open(os.path.join(run_dir, f"{name}.json"), "w") as fh:
        fh.write(report.to_json() + "\n")
    with open(os.path.join(run_dir, f"{name}.txt"), "w") as fh:
        fh.write(format_report(report) + "\n")


def _test_report(model, kind, splits, test_data):
    from .evaluation import classification_report
    from .training import predictions

    preds = predictions(model, kind, test_data)
    golds = [int(v) for v in test_data.labels.tolist()]
    index = list(range(len(splits.class_set)))
    report = classification_report(golds, preds, index)
    rows = {splits.class_set[i]: report.rows[i] for i in index}
    return dataclasses.replace(report, rows=rows)


def cmd_convert(args) -> int:
    out = _out_path(args.out)
    if args.framework == "pdtb":
        instances = read_pdtb_records(args.in_path, args.raw)
    else:
        instances = []
        paths = []
        if os.path.isfile(args.in_path):
            paths = [(args.in_path, os.path.basename(args.in_path))]
        else:
            for dirpath, _dirs, files in sorted(os.walk(args.in_path)):
                for name in sorted(files):
                    if name.endswith(".dis"):
                        full = os.path.join(dirpath, name)
                        paths.append((full, os.path.relpath(full, args.in_path)))
        for path, rel in paths:
            with open(path, encoding="utf-8") as fh:
                tree = dis_parser.parse_dis(fh.read())
            doc_id = rel[: -len(".dis")] if rel.endswith(".dis") else rel
            instances.extend(rst.extract_rst_instances(rst.binarize(tree), doc_id))
    write_instances(instances, out)
    print(f"wrote {len(instances)} instances to {out}")
    return 0


def cmd_stats(args) -> int:
    instances = []
    for path in args.in_paths:
        instances.extend(read_instances(path))
    out = _out_path(args.out)
    stats.write_stats_tsv(stats.compute_stats(instances), out)
    print(f"wrote statistics for {len(instances)} instances to {out}")
    return 0


def cmd_train(args) -> int:
    from .training import train

    instances = read_instances(args.in_path)
    splits = filter_and_split(instances, _TASKS[args.task])
    kind = KIND_AUGMENTED if args.model == "augmented" else KIND_BASELINE
    cfg = _train_config(args)
    model, history, test_data = train(kind, splits, cfg)
    report = _test_report(model, kind, splits, test_data)
    _write_report(cfg.run_dir, "test_report", report)
    print(f"best epoch {history.selected_epoch} "
          f"validation {max(history.validation_metric, default=0.0):.4f} "
          f"test accuracy {report.accuracy:.4f}")
    return 0


def cmd_transfer(args) -> int:
    from .training import train_transfer

    model, meta = load_checkpoint(args.source_ckpt)
    instances = read_instances(args.in_path)
    splits = filter_and_split(instances, _TASKS[args.target])
    cfg = _train_config(args)
    transfer, history, test_data = train_transfer(model, meta["kind"], splits, cfg)
    print(f"trainable parameters: {count_trainable_params(transfer)}")
    print(f"frozen-body hash pre:  {body_fingerprint(transfer)}")
    report = _test_report(transfer, "transfer", splits, test_data)
    print(f"frozen-body hash post: {body_fingerprint(transfer)}")
    _write_report(cfg.run_dir, "test_report", report)
    print(f"best epoch {history.selected_epoch} test accuracy {report.accuracy:.4f}")
    return 0


def cmd_ablate(args) -> int:
    from .evaluation import run_ablation

    instances = read_instances(args.in_path)
    splits = filter_and_split(instances, _TASKS[args.task])
    cfg = _train_config(args)
    result = run_ablation(splits, args.remove, cfg)
    os.makedirs(cfg.run_dir, exist_ok=True)
    with open(os.path.join(cfg.run_dir, "ablation.json"), "w") as fh:
        json.dump({
            "removed": list(result.removed),
            "full": result.full_report.to_dict(),
            "ablated": result.ablated_report.to_dict(),
            "accuracy_delta": result.accuracy_delta,
            "macro_f1_delta": result.macro_f1_delta,
            "per_class_f1_delta": result.per_class_f1_delta,
        }, fh, indent=2, sort_keys=True)
    print(f"removed {list(result.removed)}: "
          f"accuracy delta {result.accuracy_delta:+.4f}, "
          f"macro-F1 delta {result.macro_f1_delta:+.4f}")
    return 0


def cmd_predict_dims(args) -> int:
    from .dimensions import DIMENSIONS, VALUE_SETS, DimensionProfile
    from .evaluation import dimension_prediction_report, format_dimension_report
    from .training import encode_dataset, train

    instances = []
    for path in args.in_paths:
        instances.extend(read_instances(path))
    cfg = _train_config(args)
    if args.eval_ckpt:
        model, _meta = load_checkpoint(args.eval_ckpt)
        splits = fraction_splits(instances, train_frac=0.0, val_frac=0.0)
        test = splits.test
    else:
        splits = fraction_splits(instances)
        model, _history, _test_data = train(KIND_DIM_PREDICTOR, splits, cfg)
        test = splits.test
    test_data = encode_dataset(test, splits.class_set, cfg.encoder, label_mode="dims")
    model.eval()
    import torch

    with torch.no_grad():
        outputs = model(test_data.vectors)
    golds = [inst.profile for inst in test]
    preds = []
    for row in range(len(test)):
        values = {
            dim: VALUE_SETS[dim][int(outputs[dim][row].argmax())]
            for dim in DIMENSIONS
        }
        preds.append(DimensionProfile(**values))
    reports = dimension_prediction_report(golds, preds)
    os.makedirs(cfg.run_dir, exist_ok=True)
    table = format_dimension_report(reports)
    with open(os.path.join(cfg.run_dir, "dim_report.txt"), "w") as fh:
        fh.write(table + "\n")
    with open(os.path.join(cfg.run_dir, "dim_report.json"), "w") as fh:
        json.dump({dim: reports[dim].to_dict() for dim in DIMENSIONS},
                  fh, indent=2, sort_keys=True)
    if not args.eval_ckpt:
        save_checkpoint(os.path.join(cfg.run_dir, "dim_predictor.pt"), model,
                        KIND_DIM_PREDICTOR, splits.class_set,
                        cfg.encoder.fingerprint(), args.seed)
    print(table)
    return 0


def cmd_synth(args) -> int:
    framework = FRAMEWORK_RST if args.framework == "rst" else FRAMEWORK_PDTB
    if args.classes:
        classes = tuple(c.strip() for c in args.classes.split(",") if c.strip())
    else:
        classes = (synth.DEFAULT_RST_CLASSES if framework == FRAMEWORK_RST
                   else synth.DEFAULT_PDTB_CLASSES)
    config = synth.SyntheticConfig(
        class_set=classes, n_per_class=args.n, seed=args.seed,
        framework=framework, dim_tokens=args.dim_tokens,
    )
    instances = synth.generate_synthetic(config)
    out = _out_path(args.out)
    write_instances(instances, out)
    print(f"wrote {len(instances)} instances to {out}")
    return 0


_COMMANDS = {
    "convert": cmd_convert,
    "stats": cmd_stats,
    "train": cmd_train,
    "transfer": cmd_transfer,
    "ablate": cmd_ablate,
    "predict-dims": cmd_predict_dims,
    "synth": cmd_synth,
}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config_file(parser, args, argv)
        return _COMMANDS[args.command](args)
    except DimrelError as exc:
        print(f"ERROR {exc.code}: {exc.message}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"ERROR E_IO: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
