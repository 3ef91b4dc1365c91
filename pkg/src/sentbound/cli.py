"""Command-line surface: train, segment, evaluate, induce-abbrevs, learning-curve.

Logs go to stderr; data to stdout or --output. Exit codes: 0 success, 2 IO,
3 format/contract, 4 training divergence.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional

from . import corpus as corpus_mod
from . import evaluation, features, maxent, pipeline

EXIT_OK = 0
EXIT_IO = 2
EXIT_FORMAT = 3
EXIT_TRAINING = 4


def _log(msg: str) -> None:
    print(msg, file=sys.stderr)


def _normalize_encoding(name: str) -> str:
    return {"utf8": "utf-8", "latin1": "latin-1"}.get(name.lower(), name)


def _write_output(text: str, output: Optional[str]) -> None:
    if output:
        tmp = Path(output).with_suffix(Path(output).suffix + ".tmp")
        try:
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(output)
        except OSError:
            tmp.unlink(missing_ok=True)
            raise
    else:
        sys.stdout.write(text)


def _lexicons(args) -> features.ResourceLexicons:
    return features.load_lexicons(args.honorifics, args.designators)


def cmd_train(args) -> int:
    corp = corpus_mod.load_annotated(args.corpus, encoding=args.encoding)
    lexicons = _lexicons(args) if args.templates == "best" else None
    model, labeled = pipeline.train_model(
        corp,
        args.templates,
        cutoff=args.cutoff,
        max_iters=args.max_iters,
        tolerance=args.tolerance,
        lexicons=lexicons,
    )
    for warning in labeled.warnings:
        _log(f"warning: {warning}")
    for i, (ll, viol) in enumerate(model.history):
        _log(f"iter {i}: log-likelihood {ll:.6f}  max-violation {viol:.6g}")
    _log(
        f"trained {args.templates} model: {len(model.registry)} predicates, "
        f"{len(model.log_alpha)} features, C={model.C}, "
        f"{'converged' if model.converged else 'not converged'} "
        f"after {model.iterations} iterations"
    )
    tmp = Path(args.model).with_suffix(Path(args.model).suffix + ".tmp")
    try:
        maxent.save_model(model, tmp)
        tmp.replace(args.model)
    except OSError:
        tmp.unlink(missing_ok=True)
        raise
    return EXIT_OK


def _load_model_checked(args) -> maxent.Model:
    model = maxent.load_model(args.model)
    if args.templates and args.templates != model.template_set:
        raise maxent.ModelFormatError(
            f"model was trained with --templates {model.template_set}, "
            f"refusing to run with --templates {args.templates}"
        )
    return model


def cmd_segment(args) -> int:
    model = _load_model_checked(args)
    lexicons = _lexicons(args) if model.template_set == "best" else None
    text = corpus_mod.load_raw(args.input, encoding=args.encoding)
    seg = pipeline.segment_text(model, text, lexicons)
    if args.offsets:
        offsets = pipeline.byte_offsets(text, seg.boundary_offsets, args.encoding)
        out = "".join(f"{off}\n" for off in offsets)
    else:
        out = "".join(line + "\n" for line in seg.sentences)
    _write_output(out, args.output)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    model = _load_model_checked(args)
    lexicons = _lexicons(args) if model.template_set == "best" else None
    corp = corpus_mod.load_annotated(args.corpus, encoding=args.encoding)
    labeled = corpus_mod.label_candidates(corp)
    report = evaluation.evaluate(model, labeled, lexicons, sentences=len(corp))
    _write_output(evaluation.format_report(report), args.output)
    return EXIT_OK


def cmd_induce_abbrevs(args) -> int:
    corp = corpus_mod.load_annotated(args.corpus, encoding=args.encoding)
    labeled = corpus_mod.label_candidates(corp)
    abbrevs = corpus_mod.induce_abbreviations(labeled)
    out = "".join(tok + "\n" for tok in abbrevs.sorted())
    _write_output(out, args.output)
    return EXIT_OK


def cmd_learning_curve(args) -> int:
    corp = corpus_mod.load_annotated(args.corpus, encoding=args.encoding)
    eval_corp = corpus_mod.load_annotated(args.input, encoding=args.encoding)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    for size in sizes:
        if size > len(corp):
            raise corpus_mod.CorpusError(
                f"requested training size {size} exceeds corpus size {len(corp)}"
            )
    lexicons = _lexicons(args) if args.templates == "best" else None
    eval_labeled = corpus_mod.label_candidates(eval_corp)
    rows = evaluation.learning_curve(
        corp,
        eval_labeled,
        sizes,
        args.templates,
        args.seed,
        lexicons=lexicons,
        eval_sentences=len(eval_corp),
        cutoff=args.cutoff,
        max_iters=args.max_iters,
        tolerance=args.tolerance,
    )
    _write_output(evaluation.format_learning_curve(rows), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sentbound",
        description="Trainable maximum-entropy sentence boundary detector.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=False, corpus=False, inp=False, templates=True):
        if corpus:
            p.add_argument("--corpus", required=True, help="annotated corpus, one sentence per line")
        if model:
            p.add_argument("--model", required=True, help="model file path")
        if inp:
            p.add_argument("--input", required=True)
        p.add_argument("--output", default=None)
        if templates:
            p.add_argument("--templates", choices=features.TEMPLATE_SETS, default=None)
        p.add_argument("--cutoff", type=int, default=1)
        p.add_argument("--max-iters", type=int, default=maxent.DEFAULT_MAX_ITERS)
        p.add_argument("--tolerance", type=float, default=maxent.DEFAULT_TOLERANCE)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--honorifics", default=None, help="honorific lexicon file")
        p.add_argument("--designators", default=None, help="corporate designator lexicon file")
        p.add_argument("--encoding", default="utf-8", type=_normalize_encoding)

    p_train = sub.add_parser("train", help="train a model on an annotated corpus")
    common(p_train, model=True, corpus=True)
    p_train.set_defaults(func=cmd_train)

    p_seg = sub.add_parser("segment", help="segment raw text with a trained model")
    common(p_seg, model=True, inp=True)
    p_seg.add_argument("--offsets", action="store_true", help="emit byte offsets of boundary marks")
    p_seg.set_defaults(func=cmd_segment)

    p_eval = sub.add_parser("evaluate", help="score a model against a labeled corpus")
    common(p_eval, model=True, corpus=True)
    p_eval.set_defaults(func=cmd_evaluate)

    p_ind = sub.add_parser("induce-abbrevs", help="induce the abbreviation list from a corpus")
    common(p_ind, corpus=True, templates=False)
    p_ind.set_defaults(func=cmd_induce_abbrevs)

    p_lc = sub.add_parser("learning-curve", help="accuracy as a function of training size")
    common(p_lc, corpus=True, inp=True)
    p_lc.add_argument("--sizes", required=True, help="comma-separated training sizes")
    p_lc.set_defaults(func=cmd_learning_curve)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "train" and args.templates is None:
        args.templates = "portable"
    if args.command == "learning-curve" and args.templates is None:
        args.templates = "portable"
    try:
        return args.func(args)
    except (FileNotFoundError, OSError, UnicodeDecodeError) as exc:
        _log(f"error: {exc}")
        return EXIT_IO
    except (corpus_mod.CorpusError, features.FeatureError, maxent.ModelFormatError) as exc:
        _log(f"error: {exc}")
        return EXIT_FORMAT
    except maxent.TrainingError as exc:
        _log(f"error: {exc}")
        return EXIT_TRAINING


if __name__ == "__main__":
    sys.exit(main())
