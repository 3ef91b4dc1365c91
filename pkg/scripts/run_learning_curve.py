#!/usr/bin/env python3
"""Accuracy as a function of training-set size for both template systems,
on synthetic corpora with a fixed held-out evaluation set."""

import argparse

from sentbound.corpus import label_candidates
from sentbound.evaluation import learning_curve
from sentbound.features import default_lexicons
from sentbound.synthetic import make_corpus


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--train-sentences", type=int, default=2000)
    parser.add_argument("--eval-sentences", type=int, default=500)
    parser.add_argument("--sizes", default="125,250,500,1000,2000")
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--max-iters", type=int, default=50000)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    corpus = make_corpus(args.train_sentences, seed=args.seed)
    eval_labeled = label_candidates(make_corpus(args.eval_sentences, seed=args.seed + 1))
    lexicons = default_lexicons()

    results = {}
    for template_set, lex in (("best", lexicons), ("portable", None)):
        results[template_set] = dict(
            learning_curve(
                corpus,
                eval_labeled,
                sizes,
                template_set,
                seed=args.seed,
                lexicons=lex,
                max_iters=args.max_iters,
            )
        )

    header = "system      " + "".join(f"{s:>9}" for s in sizes)
    print(header)
    for template_set in ("best", "portable"):
        row = "".join(f"{results[template_set][s] * 100:8.1f}%" for s in sizes)
        print(f"{template_set:<12}{row}")


if __name__ == "__main__":
    main()
