"""Command line front-end.

Exit codes: 0 success, 1 usage error, 2 data or validation error. Failures
print one line ``ERROR <CODE>: <detail>`` on stderr.
"""

import argparse
import datetime
import sys
import warnings
from pathlib import Path

import numpy as np

from . import __version__
from .errors import DifficultyError, DifficultyWarning, MissingFactorError, ShapeMismatchError, UnknownLabelError
from .factors import FACTOR_NAMES, FactorSelection, difficulty_profile, loss_weights
from .io import (
    dump_report,
    file_digest,
    load_annotations,
    load_features,
    load_model,
    load_report,
    save_annotations,
    save_features,
    save_model,
    save_report,
)
from .lexicon import load_lexicon
from .metrics import evaluate, pearson
from .predictor import fit_ols, loocv_predict
from .synth import SynthConfig, generate, train_test_split
from .trainer import TrainConfig, train


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _header(kind, args, inputs):
    report = {"tool": "classdiff", "version": __version__, "kind": kind}
    if not args.reproducible:
        report["created"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    report["inputs"] = {name: file_digest(path) for name, path in inputs.items() if path}
    return report


def _warning_records(caught):
    records = []
    for item in caught:
        if isinstance(item.message, DifficultyWarning):
            record = item.message.as_record()
            if record not in records:
                records.append(record)
    return records


def _classes(report, label):
    try:
        return {row["name"]: row for row in report["classes"]}
    except (KeyError, TypeError):
        raise DifficultyError(f"{label} report has no per-class records") from None


def cmd_factors(args):
    selection = FactorSelection.parse(args.select)
    if selection.visual_variation and not args.features:
        raise UsageError("visual variation (visvar) needs --features")
    if selection.semantic_abstraction and not args.lexicon:
        raise UsageError("semantic abstraction (abstr) needs --lexicon")
    labels = load_annotations(args.annotations, args.classes)
    features = load_features(args.features) if args.features else None
    lexicon = None
    if args.lexicon:
        with open(args.lexicon, encoding="utf-8") as fh:
            lexicon = load_lexicon(fh)
    profile = difficulty_profile(labels, features, lexicon, selection, args.normalize)

    report = _header("factors", args, {
        "annotations": args.annotations, "classes": args.classes,
        "features": args.features, "lexicon": args.lexicon})
    report["selection"] = list(selection.selected)
    report["normalization"] = args.normalize
    report["classes"] = profile.records()
    report["warnings"] = profile.warnings
    save_report(args.out, report)


def cmd_weights(args):
    source = load_report(args.factors)
    rows = list(_classes(source, "factors").values())
    scores = np.array([row["score"] for row in rows], dtype=np.float64)
    weights = loss_weights(scores, args.normalize)
    report = _header("weights", args, {"factors": args.factors})
    report["normalization"] = args.normalize
    report["classes"] = [{"name": row["name"], "score": float(s), "weight": float(w)}
                         for row, s, w in zip(rows, scores, weights)]
    report["warnings"] = []
    save_report(args.out, report)


def _predictions(args, labels):
    if args.predictions:
        return load_features(args.predictions).data
    if not (args.model and args.features):
        raise UsageError("give --predictions, or --model together with --features")
    model = load_model(args.model)
    features = load_features(args.features)
    if model.dim != features.dim or model.n_classes != labels.n_classes:
        raise ShapeMismatchError(
            f"model is {model.n_classes}x{model.dim}, data has {labels.n_classes} classes "
            f"and {features.dim} features")
    return model.predict(features.data)


def cmd_evaluate(args):
    labels = load_annotations(args.annotations, args.classes)
    if args.predictions and (args.model or args.features):
        raise UsageError("--predictions cannot be combined with --model/--features")
    predictions = _predictions(args, labels)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        result = evaluate(predictions, labels)
    report = _header("evaluation", args, {
        "annotations": args.annotations, "classes": args.classes, "predictions": args.predictions,
        "model": args.model, "features": args.features})
    report["classes"] = result.records()
    report["aggregates"] = {"map": result.map, "mean_auc": result.mean_auc}
    report["boxplots"] = {
        "ap": None if result.ap_box is None else result.ap_box.as_dict(),
        "auc": None if result.auc_box is None else result.auc_box.as_dict(),
    }
    report["excluded"] = result.excluded
    report["warnings"] = _warning_records(caught)
    save_report(args.out, report)


def _paired(factor_rows, eval_rows, factor, metric):
    names = [name for name in factor_rows
             if name in eval_rows and factor_rows[name].get(factor) is not None
             and eval_rows[name].get(metric) is not None]
    x = [factor_rows[n][factor] for n in names]
    y = [eval_rows[n][metric] for n in names]
    return names, x, y


def cmd_correlate(args):
    factor_rows = _classes(load_report(args.factors), "factors")
    eval_rows = _classes(load_report(args.evaluation), "evaluation")
    table, recorded = [], []
    for factor in FACTOR_NAMES + ("score",):
        row = {"factor": factor}
        for metric in ("ap", "auc"):
            names, x, y = _paired(factor_rows, eval_rows, factor, metric)
            if not names:
                row[metric] = None
                continue
            try:
                row[metric] = pearson(x, y)
            except DifficultyError as exc:
                row[metric] = None
                recorded.append({"code": exc.code, "detail": str(exc), "factor": factor, "metric": metric})
            row["n_classes"] = len(names)
        if row.get("n_classes"):
            table.append(row)

    def cell(v):
        return "       -" if v is None else f"{v:8.4f}"

    print(f"{'factor':<22}{'r(AP)':>8}{'r(AUC)':>9}{'classes':>9}")
    for row in table:
        print(f"{row['factor']:<22}{cell(row['ap'])} {cell(row['auc'])}{row['n_classes']:>9}")
    if args.out:
        report = _header("correlation", args, {"factors": args.factors, "evaluation": args.evaluation})
        report["correlations"] = table
        report["warnings"] = recorded
        save_report(args.out, report)


def _factor_matrix(rows, names, factors):
    missing = [f for f in factors if any(rows[n].get(f) is None for n in names)]
    if missing:
        raise MissingFactorError(f"factors {missing} absent from some classes")
    return np.array([[rows[n][f] for f in factors] for n in names], dtype=np.float64)


def cmd_predict(args):
    train_rows = _classes(load_report(args.factors_train), "factors")
    eval_rows = _classes(load_report(args.evaluation_train), "evaluation")
    if args.select:
        factors = FactorSelection.parse(args.select).selected
    else:
        first = next(iter(train_rows.values()))
        factors = tuple(f for f in FACTOR_NAMES if first.get(f) is not None)
    names = [n for n in train_rows if n in eval_rows and eval_rows[n].get(args.target) is not None]
    X = _factor_matrix(train_rows, names, factors)
    y = np.array([eval_rows[n][args.target] for n in names])

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        model = fit_ols(X, y)
        out = {"factors": list(factors), "target": args.target,
               "model": {"intercept": model.intercept,
                         "coefficients": dict(zip(factors, model.coefficients.tolist())),
                         "ridge": model.ridge}}
        if args.loocv:
            preds, r = loocv_predict(X, y)
            out["loocv"] = {"pearson": r, "predictions": dict(zip(names, preds.tolist()))}
        if args.factors_test:
            test_rows = _classes(load_report(args.factors_test), "factors")
            test_names = list(test_rows)
            Xt = _factor_matrix(test_rows, test_names, factors)
            out["test_predictions"] = dict(zip(test_names, model.predict(Xt).tolist()))

    report = _header("prediction", args, {
        "factors_train": args.factors_train, "evaluation_train": args.evaluation_train,
        "factors_test": args.factors_test})
    report.update(out)
    report["warnings"] = _warning_records(caught)
    if args.out:
        save_report(args.out, report)
    else:
        sys.stdout.write(dump_report(report))


def cmd_train(args):
    labels = load_annotations(args.annotations, args.classes)
    features = load_features(args.features)
    config = TrainConfig.from_json(Path(args.config).read_text(encoding="utf-8"))
    if args.weights:
        by_name = {row["name"]: row["weight"] for row in _classes(load_report(args.weights), "weights").values()}
        missing = [n for n in labels.class_names if n not in by_name]
        if missing:
            raise UnknownLabelError(f"no weight for classes {missing}")
        config = TrainConfig(**{**config.__dict__,
                                "class_weights": tuple(by_name[n] for n in labels.class_names)})
    model, trace = train(labels, features, config)
    save_model(args.out, model)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("iteration,loss\n")
            for i, loss in enumerate(trace):
                fh.write(f"{i},{float(loss)!r}\n")


def cmd_synth(args):
    config = SynthConfig.from_json(Path(args.config).read_text(encoding="utf-8"))
    labels, features, names = generate(config)
    if args.test_fraction:
        if not (args.out_test_annotations and args.out_test_features):
            raise UsageError("--test-fraction needs --out-test-annotations and --out-test-features")
        (labels, features), (test_labels, test_features) = train_test_split(
            labels, features, args.test_fraction)
        save_annotations(args.out_test_annotations, test_labels,
                         ids=[f"s{i:06d}" for i in range(labels.n_samples, labels.n_samples + test_labels.n_samples)])
        save_features(args.out_test_features, test_features)
    save_annotations(args.out_annotations, labels)
    save_features(args.out_features, features)
    if args.out_classes:
        Path(args.out_classes).write_text("".join(n + "\n" for n in names), encoding="utf-8")


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--reproducible", action="store_true",
                        help="omit the timestamp so reports are byte-identical across runs")

    parser = _Parser(prog="classdiff", description="Class-level difficulty factors for multi-label data.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("factors", parents=[common], help="compute difficulty factors, scores and weights")
    p.add_argument("--annotations", required=True, help="JSON-lines annotations (training split)")
    p.add_argument("--classes", help="class list fixing column order")
    p.add_argument("--features", help="DFMX1 feature matrix, rows aligned with annotations")
    p.add_argument("--lexicon", help="TSV concreteness lexicon")
    p.add_argument("--select", default="freq,visvar,abstr,cooc",
                   help="comma list of freq, visvar, abstr, cooc (default: all)")
    p.add_argument("--normalize", choices=("none", "mean1"), default="mean1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_factors)

    p = sub.add_parser("weights", parents=[common], help="reciprocal loss weights from a factors report")
    p.add_argument("--factors", required=True)
    p.add_argument("--normalize", choices=("none", "mean1"), default="mean1")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_weights)

    p = sub.add_parser("evaluate", parents=[common], help="per-class AP/AUC, means and box plots")
    p.add_argument("--predictions", help="DFMX1 matrix of per-class scores")
    p.add_argument("--model", help="DWLM1 model to score --features with")
    p.add_argument("--features")
    p.add_argument("--annotations", required=True)
    p.add_argument("--classes")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("correlate", parents=[common], help="Pearson r of each factor with AP and AUC")
    p.add_argument("--factors", required=True)
    p.add_argument("--evaluation", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_correlate)

    p = sub.add_parser("predict", parents=[common], help="regress class performance on factors")
    p.add_argument("--factors-train", required=True)
    p.add_argument("--evaluation-train", required=True)
    p.add_argument("--factors-test")
    p.add_argument("--loocv", action="store_true")
    p.add_argument("--select", help="factor subset (default: all present)")
    p.add_argument("--target", choices=("ap", "auc"), default="ap")
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("train", parents=[common], help="momentum SGD on a sigmoid linear model")
    p.add_argument("--annotations", required=True)
    p.add_argument("--classes")
    p.add_argument("--features", required=True)
    p.add_argument("--weights", help="weights report; overrides class_weights in --config")
    p.add_argument("--config", required=True, help="JSON TrainConfig")
    p.add_argument("--out", required=True, help="DWLM1 checkpoint")
    p.add_argument("--trace", help="CSV of per-iteration batch loss")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("synth", parents=[common], help="generate a seeded synthetic dataset")
    p.add_argument("--config", required=True, help="JSON SynthConfig")
    p.add_argument("--out-annotations", required=True)
    p.add_argument("--out-features", required=True)
    p.add_argument("--out-classes")
    p.add_argument("--test-fraction", type=float, default=0.0,
                   help="hold out the last rows as a test split")
    p.add_argument("--out-test-annotations")
    p.add_argument("--out-test-features")
    p.set_defaults(func=cmd_synth)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", DifficultyWarning)
            args.func(args)
    except UsageError as exc:
        print(f"ERROR USAGE: {exc}", file=sys.stderr)
        return 1
    except DifficultyError as exc:
        print(f"ERROR {exc.code}: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"ERROR IO_ERROR: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
