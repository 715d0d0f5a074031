"""Command-line surface for the full pipeline.

Subcommands:

    convert     load a root/<class>/*.txt corpus and write it as ARFF
    vectorize   fit a vocabulary on a train ARFF, transform train (+test)
    train       train one of the eight classifiers on a vectorized ARFF
    evaluate    score a persisted model on a test ARFF
    compare     train + evaluate every requested algorithm in one run
    gen-corpus  write the bundled synthetic review corpus

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal error.
Diagnostics go to stderr; results go to files or stdout.

Every command that writes files also writes a JSON run manifest next to
its outputs; re-running the command described by a manifest reproduces
the outputs byte for byte (manifests carry no timestamps).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, synth
from .arff import load_text_directory, parse_arff, write_arff
from .classifiers import (
    ALGORITHMS,
    TreeConfig,
    load_model,
    train_adaboost,
    train_bagging,
    train_dtree,
    train_knn,
    train_mlp,
    train_mnb,
    train_rforest,
    train_svm,
)
from .corpus import StopWordList, TokenizerConfig
from .errors import ArffError, RusentError
from .evaluation import compare as compare_models
from .evaluation import evaluate, render_json, render_table
from .util import atomic_write_text
from .vectorize import fit, matrix_from_dataset, to_arff, transform

MANIFEST_SCHEMA = "rusent-manifest/1"


class _Parser(argparse.ArgumentParser):
    """argparse, but usage problems exit 1 instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _read_arff(path):
    try:
        with open(path, "rb") as fh:
            return parse_arff(fh.read())
    except OSError as exc:
        raise ArffError(f"cannot read {path!r}: {exc}") from None


def _write_manifest(path, command, config):
    payload = {
        "schema": MANIFEST_SCHEMA,
        "tool": "rusent",
        "version": __version__,
        "command": command,
        "config": config,
    }
    atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _stopwords(spec: str) -> StopWordList:
    if spec == "none":
        return StopWordList()
    if spec == "default":
        return StopWordList.default()
    return StopWordList.from_file(spec)


# ---------------------------------------------------------------------------
# subcommands

def cmd_convert(args) -> int:
    dataset = load_text_directory(args.input_dir)
    atomic_write_text(args.output, write_arff(dataset))
    _write_manifest(args.output + ".manifest.json", "convert", {
        "input_dir": args.input_dir, "output": args.output,
    })
    counts = {v: 0 for v in dataset.class_values}
    for row in dataset.instances:
        counts[row[dataset.class_index]] += 1
    print(f"wrote {len(dataset.instances)} instances to {args.output}")
    for value in dataset.class_values:
        print(f"  class {value}: {counts[value]}")
    return 0


def cmd_vectorize(args) -> int:
    train = _read_arff(args.train)
    stops = _stopwords(args.stopwords)
    space = fit(train, weighting=args.weighting, tokenizer=TokenizerConfig(),
                stopwords=stops, min_term_freq=args.min_term_freq)
    vocab_out = args.vocab_out or os.path.splitext(args.out_train)[0] + ".vocab.txt"

    train_matrix = transform(space, train)
    atomic_write_text(args.out_train, write_arff(to_arff(space, train_matrix), sparse=True))
    atomic_write_text(vocab_out, "\n".join(space.vocabulary) + "\n")
    outputs = {"out_train": args.out_train, "vocab_out": vocab_out}

    if args.test:
        if not args.out_test:
            raise RusentError("--out-test is required when --test is given")
        test = _read_arff(args.test)
        test_matrix = transform(space, test)
        empty = int((test_matrix.rows.sum(axis=1) == 0).sum())
        if empty:
            print(
                f"warning: {empty} test instance(s) contain only out-of-vocabulary"
                " words and became all-zero rows",
                file=sys.stderr,
            )
        atomic_write_text(args.out_test, write_arff(to_arff(space, test_matrix), sparse=True))
        outputs["out_test"] = args.out_test

    _write_manifest(args.out_train + ".manifest.json", "vectorize", {
        "train": args.train, "test": args.test, "weighting": args.weighting,
        "stopwords": args.stopwords, "min_term_freq": args.min_term_freq,
        **outputs,
    })
    print(f"vocabulary size {space.width}; wrote {', '.join(outputs.values())}")
    return 0


def _hidden_layers(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise RusentError(f"--hidden expects comma-separated integers, got {text!r}") from None


def _trainer_for(algorithm: str, args, seed: int):
    tree_cfg = TreeConfig(args.max_depth, args.min_leaf)
    if algorithm == "mnb":
        return lambda m: train_mnb(m, alpha=args.alpha)
    if algorithm == "knn":
        return lambda m: train_knn(m, k=args.k, distance=args.distance, p=args.minkowski_p)
    if algorithm == "dtree":
        return lambda m: train_dtree(m, max_depth=args.max_depth, min_leaf=args.min_leaf)
    if algorithm == "bagging":
        return lambda m: train_bagging(m, m=args.trees, base=tree_cfg, seed=seed)
    if algorithm == "rforest":
        return lambda m: train_rforest(
            m, m=args.trees, features_per_split=args.features_per_split,
            base=tree_cfg, seed=seed,
        )
    if algorithm == "adaboost":
        return lambda m: train_adaboost(
            m, rounds=args.rounds,
            weak=TreeConfig(args.weak_depth, args.min_leaf), seed=seed,
        )
    if algorithm == "svm":
        return lambda m: train_svm(m, lam=args.svm_lambda, epochs=args.svm_epochs, seed=seed)
    if algorithm == "mlp":
        return lambda m: train_mlp(
            m, hidden=_hidden_layers(args.hidden), activation=args.activation,
            learning_rate=args.learning_rate, epochs=args.mlp_epochs,
            batch_size=args.batch_size, seed=seed,
        )
    raise RusentError(f"unknown algorithm {algorithm!r}")


def _hyper_config(args) -> dict:
    return {
        "alpha": args.alpha, "k": args.k, "distance": args.distance,
        "minkowski_p": args.minkowski_p, "max_depth": args.max_depth,
        "min_leaf": args.min_leaf, "trees": args.trees,
        "features_per_split": args.features_per_split, "rounds": args.rounds,
        "weak_depth": args.weak_depth, "svm_lambda": args.svm_lambda,
        "svm_epochs": args.svm_epochs, "hidden": args.hidden,
        "activation": args.activation, "learning_rate": args.learning_rate,
        "mlp_epochs": args.mlp_epochs, "batch_size": args.batch_size,
    }


def cmd_train(args) -> int:
    matrix = matrix_from_dataset(_read_arff(args.train))
    trainer = _trainer_for(args.algorithm, args, args.seed)
    started = time.perf_counter()
    model = trainer(matrix)
    elapsed = time.perf_counter() - started
    model.save(args.model_out)
    _write_manifest(args.model_out + ".manifest.json", "train", {
        "train": args.train, "algorithm": args.algorithm, "seed": args.seed,
        "model_out": args.model_out, **_hyper_config(args),
    })
    report = evaluate(model, matrix)
    print(f"trained {args.algorithm} in {elapsed:.3f} s")
    print(f"training accuracy {100.0 * report.accuracy:.2f}%")
    return 0


def cmd_evaluate(args) -> int:
    model = load_model(args.model)
    matrix = matrix_from_dataset(_read_arff(args.test))
    report = evaluate(model, matrix, args.positive_class)
    print(render_table([report]), end="")
    if args.report_out:
        atomic_write_text(args.report_out, render_json([report]))
        _write_manifest(args.report_out + ".manifest.json", "evaluate", {
            "model": args.model, "test": args.test,
            "positive_class": args.positive_class, "report_out": args.report_out,
        })
    return 0


def cmd_compare(args) -> int:
    os.makedirs(args.out_dir, exist_ok=True)
    train = _read_arff(args.train)
    test = _read_arff(args.test)

    vectorize_config = None
    if any(a.kind == "string" for a in train.attributes):
        # raw text corpus: one shared vectorization for every algorithm
        stops = _stopwords(args.stopwords)
        space = fit(train, weighting=args.weighting, tokenizer=TokenizerConfig(),
                    stopwords=stops, min_term_freq=args.min_term_freq)
        train_matrix = transform(space, train)
        test_matrix = transform(space, test)
        atomic_write_text(
            os.path.join(args.out_dir, "train_vectorized.arff"),
            write_arff(to_arff(space, train_matrix), sparse=True),
        )
        atomic_write_text(
            os.path.join(args.out_dir, "test_vectorized.arff"),
            write_arff(to_arff(space, test_matrix), sparse=True),
        )
        atomic_write_text(
            os.path.join(args.out_dir, "vocabulary.txt"),
            "\n".join(space.vocabulary) + "\n",
        )
        vectorize_config = {
            "weighting": args.weighting, "stopwords": args.stopwords,
            "min_term_freq": args.min_term_freq,
        }
    else:
        train_matrix = matrix_from_dataset(train)
        test_matrix = matrix_from_dataset(test)

    models = []
    failures = []
    models_dir = os.path.join(args.out_dir, "models")
    os.makedirs(models_dir, exist_ok=True)
    for algorithm in args.algorithms:
        try:
            model = _trainer_for(algorithm, args, args.seed)(train_matrix)
            model.save(os.path.join(models_dir, f"{algorithm}.model"))
            models.append(model)
        except RusentError as exc:
            failures.append(algorithm)
            print(f"error: {algorithm} failed: {exc}", file=sys.stderr)

    if models:
        reports = compare_models(models, test_matrix, args.positive_class)
        table = render_table(reports)
        atomic_write_text(os.path.join(args.out_dir, "report.txt"), table)
        atomic_write_text(os.path.join(args.out_dir, "report.json"), render_json(reports))
        print(table, end="")

    _write_manifest(os.path.join(args.out_dir, "manifest.json"), "compare", {
        "train": args.train, "test": args.test, "algorithms": list(args.algorithms),
        "seed": args.seed, "positive_class": args.positive_class,
        "out_dir": args.out_dir, "vectorize": vectorize_config,
        **_hyper_config(args),
    })
    if failures:
        print(f"error: {len(failures)} of {len(args.algorithms)} algorithms failed:"
              f" {', '.join(failures)}", file=sys.stderr)
        return 2
    return 0


def cmd_gen_corpus(args) -> int:
    counts = synth.generate_corpus(args.out, per_class=args.per_class, seed=args.seed)
    _write_manifest(os.path.join(args.out, "manifest.json"), "gen-corpus", {
        "out": args.out, "per_class": args.per_class, "seed": args.seed,
    })
    total = sum(counts.values())
    print(f"wrote {total} reviews under {args.out} "
          f"({', '.join(f'{k}: {v}' for k, v in sorted(counts.items()))})")
    return 0


# ---------------------------------------------------------------------------
# argument wiring

def _add_hyper_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("hyperparameters")
    g.add_argument("--alpha", type=float, default=1.0, help="MNB smoothing (default 1.0)")
    g.add_argument("--k", type=int, default=1, help="k-NN neighbor count (default 1)")
    g.add_argument("--distance", choices=("euclidean", "manhattan", "minkowski"),
                   default="euclidean", help="k-NN distance (default euclidean)")
    g.add_argument("--minkowski-p", type=float, default=3.0,
                   help="minkowski exponent (default 3)")
    g.add_argument("--max-depth", type=int, default=None,
                   help="tree depth limit (default unlimited)")
    g.add_argument("--min-leaf", type=int, default=1,
                   help="minimum instances per tree leaf (default 1)")
    g.add_argument("--trees", type=int, default=10,
                   help="bagging/forest ensemble size (default 10)")
    g.add_argument("--features-per-split", type=int, default=None,
                   help="forest feature subset size (default ceil(sqrt(d)))")
    g.add_argument("--rounds", type=int, default=10,
                   help="AdaBoost rounds (default 10)")
    g.add_argument("--weak-depth", type=int, default=1,
                   help="AdaBoost weak-tree depth (default 1 = stumps)")
    g.add_argument("--svm-lambda", type=float, default=1e-3,
                   help="SVM regularization (default 1e-3)")
    g.add_argument("--svm-epochs", type=int, default=100,
                   help="SVM training epochs (default 100)")
    g.add_argument("--hidden", default="32,32",
                   help="MLP hidden layer widths, comma separated (default 32,32)")
    g.add_argument("--activation", choices=("logistic", "tanh"), default="logistic",
                   help="MLP hidden activation (default logistic)")
    g.add_argument("--learning-rate", type=float, default=0.1,
                   help="MLP learning rate (default 0.1)")
    g.add_argument("--mlp-epochs", type=int, default=200,
                   help="MLP training epochs (default 200)")
    g.add_argument("--batch-size", type=int, default=16,
                   help="MLP mini-batch size (default 16)")


def _add_vectorize_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--weighting", choices=("binary", "count", "tfidf"), default="count",
                   help="feature weighting (default count)")
    p.add_argument("--stopwords", default="default",
                   help="'default', 'none', or a stop-word file path")
    p.add_argument("--min-term-freq", type=int, default=1,
                   help="drop terms occurring fewer times in training (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rusent",
                     description="Roman Urdu sentiment classification toolkit")
    parser.add_argument("--version", action="version", version=f"rusent {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("convert", help="load a class-per-directory text corpus as ARFF")
    p.add_argument("input_dir")
    p.add_argument("output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("vectorize", help="fit a vocabulary and emit numeric ARFFs")
    p.add_argument("--train", required=True)
    p.add_argument("--test")
    p.add_argument("--out-train", required=True)
    p.add_argument("--out-test")
    p.add_argument("--vocab-out")
    _add_vectorize_flags(p)
    p.set_defaults(func=cmd_vectorize)

    p = sub.add_parser("train", help="train one classifier on a vectorized ARFF")
    p.add_argument("--train", required=True)
    p.add_argument("--algorithm", required=True, choices=ALGORITHMS)
    p.add_argument("--model-out", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_hyper_flags(p)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("evaluate", help="score a persisted model on a test ARFF")
    p.add_argument("--model", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--positive-class")
    p.add_argument("--report-out")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("compare", help="train and evaluate several algorithms")
    p.add_argument("--train", required=True)
    p.add_argument("--test", required=True)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--algorithms", nargs="+", choices=ALGORITHMS,
                   default=list(ALGORITHMS))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--positive-class")
    _add_vectorize_flags(p)
    _add_hyper_flags(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("gen-corpus", help="generate the synthetic review corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--per-class", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RusentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except Exception as exc:  # unexpected: internal error
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
