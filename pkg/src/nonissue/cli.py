"""Command-line interface.

Commands: analyze, match, gen, train, eval, predict, serve, stats.
Domain errors exit 1 with a one-line diagnostic; usage errors exit 2.
Environment overrides: NONISSUE_PORT, NONISSUE_MODEL, NONISSUE_STORE,
NONISSUE_THRESHOLD.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .evaluation import (
    ABLATION_SUBSETS,
    cross_validate,
    render_metrics_table,
    subset_label,
    write_metrics_records,
)
from .features import ALL_EXTRACTORS, Extractor, FeatureExtractor, default_config
from .morphology import default_analyzer
from .patterns import default_catalog, match_patterns
from .service import DEFAULT_THRESHOLD, TriageService, build_app
from .store import (
    CorpusStore,
    Verdict,
    read_labeled_corpus,
    write_labeled_corpus,
)
from .svm import ModelBundle, TrainConfig, load_model, save_model, train
from .synth import GeneratorConfig, generate_synthetic, scale_project_counts
from .vectorize import fit_vocabulary, transform


class CliError(Exception):
    pass


def _parse_features(text: str) -> frozenset[Extractor]:
    names = {
        "ngrams": Extractor.NGRAMS,
        "n-grams": Extractor.NGRAMS,
        "ma": Extractor.MA,
        "patterns": Extractor.PATTERNS,
    }
    chosen = set()
    for piece in text.split(","):
        piece = piece.strip().lower()
        if not piece:
            continue
        if piece == "all":
            return ALL_EXTRACTORS
        if piece not in names:
            raise CliError(f"unknown extractor {piece!r} (use ngrams, ma, patterns)")
        chosen.add(names[piece])
    if not chosen:
        raise CliError("no extractors selected")
    return frozenset(chosen)


def _pipeline(enabled: frozenset[Extractor] = ALL_EXTRACTORS) -> FeatureExtractor:
    return FeatureExtractor(default_config(enabled), default_analyzer(), default_catalog())


def cmd_analyze(args: argparse.Namespace) -> int:
    analyses = default_analyzer().analyze(args.word)
    if not analyses:
        print(f"{args.word}: no analysis")
        return 0
    for a in analyses:
        tags = ",".join(t.value for t in a.tags) or "-"
        print(f"root={a.root} pos={a.pos.value} tags={tags} segmentation={'-'.join(a.segmentation)}")
    return 0


def cmd_match(args: argparse.Namespace) -> int:
    text = Path(args.file).read_text(encoding="utf-8")
    matches = match_patterns(text, default_catalog(), default_analyzer())
    for m in matches:
        print(
            json.dumps(
                {
                    "sentence": m.sentence_index,
                    "code": m.code,
                    "evidence": [{"token": i, "reason": r.value} for i, r in m.evidence],
                },
                ensure_ascii=False,
            )
        )
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    config = GeneratorConfig(
        project_counts=scale_project_counts(args.n),
        prevalence=args.prevalence,
        pattern_free_fraction=args.pattern_free,
    )
    pairs = generate_synthetic(config, seed=args.seed)
    write_labeled_corpus(args.out, pairs)
    nonissue = sum(1 for _, lab in pairs if lab.verdict is Verdict.NON_ISSUE)
    print(f"wrote {len(pairs)} reports ({nonissue} non-issue) to {args.out}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    enabled = _parse_features(args.features)
    pairs = read_labeled_corpus(args.corpus)
    extractor = _pipeline(enabled)
    bags = [extractor.bag(rep.text, enabled) for rep, _ in pairs]
    labels = [1 if lab.verdict is Verdict.NON_ISSUE else -1 for _, lab in pairs]
    vocab = fit_vocabulary(bags)
    X = [transform(bag, vocab) for bag in bags]
    config = TrainConfig(C=args.C, max_epochs=args.max_epochs, tolerance=args.tolerance, seed=args.seed)
    model = train(X, labels, config, n_features=len(vocab))
    ordered = [e.value for e in (Extractor.NGRAMS, Extractor.MA, Extractor.PATTERNS) if e in enabled]
    save_model(args.out, ModelBundle(vocabulary=vocab, model=model, extractors=tuple(ordered)))
    print(
        f"trained on {len(pairs)} reports, {len(vocab)} features, "
        f"final objective {model.objective_history[-1]:.6f}; wrote {args.out}"
    )
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    pairs = read_labeled_corpus(args.corpus)
    texts = [rep.text for rep, _ in pairs]
    flags = [lab.verdict is Verdict.NON_ISSUE for _, lab in pairs]
    extractor = _pipeline()
    config = TrainConfig(C=args.C, max_epochs=args.max_epochs, tolerance=args.tolerance, seed=args.seed)
    rows = cross_validate(texts, flags, ABLATION_SUBSETS, args.k, args.seed, config, extractor)
    print(render_metrics_table(rows))
    write_metrics_records(rows, args.out)
    print(f"wrote {args.out}")
    return 0


def _predict_service(model_path: str, threshold: float) -> TriageService:
    bundle = load_model(model_path)
    return TriageService(
        extractor=_pipeline(),
        catalog=default_catalog(),
        analyzer=default_analyzer(),
        bundle=bundle,
        threshold=threshold,
    )


def cmd_predict(args: argparse.Namespace) -> int:
    if not args.model:
        raise CliError("predict needs --model FILE (or NONISSUE_MODEL)")
    service = _predict_service(args.model, args.threshold)
    if args.text is not None:
        print(json.dumps(service.predict_text(args.text), ensure_ascii=False))
        return 0
    if args.infile is None:
        raise CliError("predict needs --in FILE or --text TEXT")
    pairs = read_labeled_corpus(args.infile)
    for rep, _ in pairs:
        out = service.predict_text(rep.text)
        out["id"] = rep.id
        print(json.dumps(out, ensure_ascii=False))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    if not args.store:
        raise CliError("stats needs --store DIR (or NONISSUE_STORE)")
    store = CorpusStore(args.store, catalog_codes=default_catalog().codes)
    rows, totals = store.distribution()
    width = max([len("Project"), *(len(r.project) for r in rows), len(totals.project)])
    print(f"{'Project'.ljust(width)}  Non-Issue  Issue  Total")
    for r in [*rows, totals]:
        print(
            f"{r.project.ljust(width)}  {r.non_issue_count:>4} ({r.non_issue_pct:5.2f}%)"
            f"  {r.issue_count:>5}  {r.total:>5}"
        )
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    store = CorpusStore(args.store, catalog_codes=default_catalog().codes) if args.store else None
    bundle = load_model(args.model) if args.model else None
    service = TriageService(
        extractor=_pipeline(),
        catalog=default_catalog(),
        analyzer=default_analyzer(),
        store=store,
        bundle=bundle,
        threshold=args.threshold,
        eval_records_path=Path(args.eval_records) if args.eval_records else None,
    )
    uvicorn.run(build_app(service), host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nonissue", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="morphologically analyze one word")
    p.add_argument("word")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("match", help="run the pattern catalog over a text file")
    p.add_argument("file")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("gen", help="generate a seeded synthetic labeled corpus")
    p.add_argument("--n", type=int, default=1200)
    p.add_argument("--prevalence", type=float, default=0.1325)
    p.add_argument("--pattern-free", type=float, default=0.10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("train", help="train a classifier on a labeled corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--features", default="all", help="comma list of ngrams,ma,patterns or 'all'")
    p.add_argument("--out", required=True)
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--max-epochs", type=int, default=1000)
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="cross-validated ablation over extractor subsets")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="eval_records.jsonl")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--max-epochs", type=int, default=1000)
    p.add_argument("--tolerance", type=float, default=1e-4)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("predict", help="score reports with a trained model")
    p.add_argument("--model", default=os.environ.get("NONISSUE_MODEL"))
    p.add_argument("--in", dest="infile")
    p.add_argument("--text")
    p.add_argument(
        "--threshold",
        type=float,
        default=float(os.environ.get("NONISSUE_THRESHOLD", DEFAULT_THRESHOLD)),
    )
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--model", default=os.environ.get("NONISSUE_MODEL"))
    p.add_argument("--store", default=os.environ.get("NONISSUE_STORE"))
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=int(os.environ.get("NONISSUE_PORT", "8437")))
    p.add_argument(
        "--threshold",
        type=float,
        default=float(os.environ.get("NONISSUE_THRESHOLD", DEFAULT_THRESHOLD)),
    )
    p.add_argument("--eval-records")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("stats", help="per-project label distribution of a store")
    p.add_argument("--store", default=os.environ.get("NONISSUE_STORE"))
    p.set_defaults(func=cmd_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # domain errors: one-line diagnostic, exit 1
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
