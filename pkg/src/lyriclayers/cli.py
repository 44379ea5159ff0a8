"""Command-line interface.

One subcommand per pipeline capability plus ``pipeline`` to run a full
configured pass. Exit codes: 0 ok, 2 configuration error, 3 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import emotion, explicit, pipeline, segmenter, summarizer, topics
from .corpus import (Corpus, CorpusError, corpus_stats, detect_language,
                     load_corpus, write_corpus)
from .ssm import line_ssm, segment_ssm, write_ssm

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DATA = 3


def _load(path: str) -> Corpus:
    if not Path(path).exists():
        raise pipeline.ConfigError(f"corpus file not found: {path}")
    return load_corpus(path)


def _write_jsonl(path: str, records: list[dict]) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    with p.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")


def cmd_ingest(args) -> int:
    corpus = _load(args.corpus)
    if args.detect_language:
        songs = []
        for song in corpus:
            if song.language is None or args.overwrite_language:
                code = detect_language(song)
                songs.append(replace(song, language=None if code == "unknown" else code))
            else:
                songs.append(song)
        corpus = Corpus(songs=songs)
    print(f"{len(corpus)} songs, {sum(s.line_count for s in corpus)} lines")
    if args.out:
        write_corpus(corpus, args.out)
        print(f"wrote normalized corpus to {args.out}")
    return EXIT_OK


def cmd_stats(args) -> int:
    corpus = _load(args.corpus)
    stats = corpus_stats(corpus)
    for name, hist in (("language", stats.language_hist),
                       ("genre", stats.genre_hist),
                       ("decade", stats.decade_hist)):
        print(f"[{name}]")
        for label, (count, fraction) in hist.items():
            print(f"  {label}: {count} ({100 * fraction:.1f}%)")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, hist in (("language_hist", stats.language_hist),
                           ("genre_hist", stats.genre_hist),
                           ("decade_hist", stats.decade_hist)):
            pipeline._hist_csv(hist, out / f"{name}.csv")
        print(f"wrote histogram CSVs to {out}")
    return EXIT_OK


def cmd_ssm(args) -> int:
    corpus = _load(args.corpus)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    wanted = set(args.ids) if args.ids else None
    build = line_ssm if args.granularity == "line" else segment_ssm
    count = 0
    for song in corpus:
        if wanted is not None and song.id not in wanted:
            continue
        if song.line_count == 0:
            continue
        write_ssm(build(song), out / f"{song.id}.{args.granularity}.ssm")
        count += 1
    print(f"wrote {count} {args.granularity}-level SSMs to {out}")
    return EXIT_OK


def cmd_segment_train(args) -> int:
    corpus = _load(args.corpus)
    config = segmenter.FeatureConfig(tau_rep=args.tau_rep)
    model = segmenter.train_segmenter(corpus, config=config, l2=args.l2,
                                      iters=args.iters, seed=args.seed)
    segmenter.save_segmenter(model, args.out)
    print(f"trained border model (theta={model.theta:.4f}) -> {args.out}")
    return EXIT_OK


def _segmenter_predictions(corpus: Corpus, model_path: str) -> dict[str, list[int]]:
    model = segmenter.load_segmenter(model_path)
    preds = {}
    for song in corpus:
        if song.line_count < 2:
            preds[song.id] = []
        else:
            preds[song.id] = segmenter.predict_borders(model, line_ssm(song))
    return preds


def cmd_segment_predict(args) -> int:
    corpus = _load(args.corpus)
    preds = _segmenter_predictions(corpus, args.model)
    _write_jsonl(args.out, [{"id": sid, "borders": borders}
                            for sid, borders in preds.items()])
    print(f"wrote border predictions for {len(preds)} songs to {args.out}")
    return EXIT_OK


def cmd_segment_eval(args) -> int:
    corpus = _load(args.corpus)
    preds = _segmenter_predictions(corpus, args.model)
    pairs = [(set(preds[s.id]), s.gold_borders()) for s in corpus]
    overall = segmenter.evaluate_pooled(pairs)
    print(f"overall: P={overall.precision:.1f} R={overall.recall:.1f} "
          f"F1={overall.f1:.1f}")
    if args.by_genre:
        for genre, prf in segmenter.evaluate_by_genre(
                corpus, {sid: set(b) for sid, b in preds.items()}).items():
            print(f"{genre}: P={prf.precision:.1f} R={prf.recall:.1f} "
                  f"F1={prf.f1:.1f}")
    return EXIT_OK


def cmd_summarize(args) -> int:
    corpus = _load(args.corpus)
    scorers = tuple(args.scorers.split(","))
    lda = None
    if "topic" in scorers:
        if not args.topics_model:
            raise pipeline.ConfigError(
                "summarizer.Topic requires topics model (--topics-model)")
        lda = topics.load_lda(args.topics_model)
    records = []
    for song in corpus:
        summary = summarizer.summarize(song, scorers=scorers, k=args.k, lda=lda,
                                       seed=args.seed)
        records.append({"id": song.id, "summary": summary})
    _write_jsonl(args.out, records)
    print(f"wrote {len(records)} summaries to {args.out}")
    return EXIT_OK


def cmd_explicit_induce(args) -> int:
    corpus = _load(args.corpus)
    dictionary = explicit.induce_dictionary(corpus, n=args.size,
                                            prior=args.prior, min_df=args.min_df)
    explicit.save_dictionary(dictionary, args.out)
    preview = ", ".join(t for t, _ in dictionary.entries[:10])
    print(f"induced {len(dictionary)}-term dictionary -> {args.out}")
    print(f"top terms: {preview}")
    return EXIT_OK


def cmd_explicit_train(args) -> int:
    corpus = _load(args.corpus)
    if args.method == "dictionary":
        if not args.dictionary:
            raise pipeline.ConfigError("--method dictionary requires --dictionary")
        dictionary = explicit.load_dictionary(args.dictionary)
        model = explicit.train_dictionary_regression(
            corpus, dictionary, l2=args.l2, iters=args.iters, seed=args.seed)
    else:
        model = explicit.train_tfidf_regression(
            corpus, l2=args.l2, iters=args.iters, seed=args.seed,
            min_df=args.min_df)
    explicit.save_explicit_model(model, args.out)
    print(f"trained {args.method} classifier -> {args.out}")
    return EXIT_OK


def _explicit_predictions(corpus: Corpus, args) -> tuple[list[str], list[float] | None]:
    if args.model:
        model = explicit.load_explicit_model(args.model)
        labels, probs = explicit.classify(model, corpus.songs)
        return labels, [float(p) for p in probs]
    if args.dictionary:
        dictionary = explicit.load_dictionary(args.dictionary)
        return [explicit.lookup_classify(s, dictionary) for s in corpus], None
    raise pipeline.ConfigError("need --model or --dictionary")


def cmd_explicit_predict(args) -> int:
    corpus = _load(args.corpus)
    labels, probs = _explicit_predictions(corpus, args)
    records = []
    for i, song in enumerate(corpus):
        record = {"id": song.id, "explicit_pred": labels[i]}
        if probs is not None:
            record["explicit_prob"] = probs[i]
        records.append(record)
    _write_jsonl(args.out, records)
    print(f"wrote explicitness predictions to {args.out}")
    return EXIT_OK


def cmd_explicit_eval(args) -> int:
    corpus = _load(args.corpus)
    labelled = [s for s in corpus if s.explicit_gold in ("explicit", "clean")]
    if not labelled:
        raise CorpusError("no gold explicitness labels in corpus")
    sub = Corpus(songs=labelled)
    if args.pred:
        by_id = {r["id"]: r["explicit_pred"]
                 for r in pipeline.read_annotations(args.pred)}
        preds = [by_id[s.id] for s in sub]
    else:
        preds, _ = _explicit_predictions(sub, args)
    golds = [s.explicit_gold for s in sub]
    result = explicit.evaluate_explicit(preds, golds)
    print(f"macro: P={result.precision:.1f} R={result.recall:.1f} "
          f"F1={result.f1:.1f}")
    for cls, scores in result.per_class.items():
        print(f"  {cls}: P={scores.precision:.1f} R={scores.recall:.1f} "
              f"F1={scores.f1:.1f}")
    return EXIT_OK


def cmd_emotion_project(args) -> int:
    corpus = _load(args.corpus)
    lexicon = emotion.load_lexicon(args.lexicon)
    records = []
    for song in corpus:
        tags = list(song.emotion_tags) + list(song.social_tags)
        point = emotion.tags_to_va(tags, lexicon)
        record = {"id": song.id}
        if point is not None:
            record["valence_pred"] = point.valence
            record["arousal_pred"] = point.arousal
        records.append(record)
    _write_jsonl(args.out, records)
    matched = sum(1 for r in records if "valence_pred" in r)
    print(f"projected tags for {matched}/{len(records)} songs -> {args.out}")
    return EXIT_OK


def cmd_emotion_train(args) -> int:
    corpus = _load(args.corpus)
    model = emotion.train_va_regressor(corpus, l2=args.l2, min_df=args.min_df)
    emotion.save_emotion_model(model, args.out)
    print(f"trained valence/arousal regressor -> {args.out}")
    return EXIT_OK


def cmd_emotion_predict(args) -> int:
    corpus = _load(args.corpus)
    model = emotion.load_emotion_model(args.model)
    points = emotion.predict_va(model, corpus.songs)
    _write_jsonl(args.out, [
        {"id": song.id, "valence_pred": p.valence, "arousal_pred": p.arousal}
        for song, p in zip(corpus, points)])
    print(f"wrote valence/arousal predictions to {args.out}")
    return EXIT_OK


def cmd_emotion_eval(args) -> int:
    corpus = _load(args.corpus)
    labelled = [s for s in corpus if s.va_gold is not None]
    if len(labelled) < 2:
        raise CorpusError("need at least two songs with gold valence-arousal")
    model = emotion.load_emotion_model(args.model)
    points = emotion.predict_va(model, labelled)
    for dim, idx in (("valence", 0), ("arousal", 1)):
        gold = [s.va_gold[idx] for s in labelled]
        pred = [p[idx] for p in points]
        pr = emotion.pearson(gold, pred)
        sr = emotion.spearman(gold, pred)
        flag = " (degenerate)" if pr.degenerate or sr.degenerate else ""
        print(f"{dim}: pearson={pr.value:.3f} spearman={sr.value:.3f}{flag}")
    return EXIT_OK


def _corpus_docs(corpus: Corpus, subset: int | None = None) -> list[list[str]]:
    songs = corpus.songs if subset is None else corpus.songs[:subset]
    return [topics.preprocess(s.text()) for s in songs]


def cmd_topics_select(args) -> int:
    corpus = _load(args.corpus)
    docs = _corpus_docs(corpus, args.subset)
    grid = [(k, a, e)
            for k in (int(x) for x in args.k_grid.split(","))
            for a in (float(x) for x in args.alpha_grid.split(","))
            for e in (float(x) for x in args.eta_grid.split(","))]
    result = topics.select_hyperparameters(docs, grid, seed=args.seed,
                                           iters=args.iters)
    for cell, score in result.scores:
        print(f"k={cell[0]} alpha={cell[1]} eta={cell[2]}: coherence={score:.4f}")
    k, alpha, eta = result.best
    print(f"best: k={k} alpha={alpha} eta={eta}")
    return EXIT_OK


def cmd_topics_train(args) -> int:
    corpus = _load(args.corpus)
    docs = _corpus_docs(corpus, args.subset)
    model = topics.train_lda(docs, args.k, alpha=args.alpha, eta=args.eta,
                             iters=args.iters, seed=args.seed)
    topics.save_lda(model, args.out)
    print(f"trained {args.k}-topic model on {len(docs)} docs -> {args.out}")
    for topic in range(min(args.k, 5)):
        print(f"  topic {topic}: {' '.join(topics.top_words(model, topic))}")
    return EXIT_OK


def cmd_topics_infer(args) -> int:
    corpus = _load(args.corpus)
    model = topics.load_lda(args.model)
    records = []
    for idx, song in enumerate(corpus):
        theta = topics.infer_topics(model, topics.preprocess(song.text()),
                                    seed=args.seed * 1000003 + idx)
        records.append({"id": song.id, "topics": theta.tolist()})
    _write_jsonl(args.out, records)
    print(f"wrote topic distributions to {args.out}")
    return EXIT_OK


def cmd_diachronic(args) -> int:
    corpus = _load(args.corpus)
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    annotations = pipeline.read_annotations(args.annotations) if args.annotations else []
    emitted = pipeline.emit_report(corpus, annotations, out)
    keep = {k: v for k, v in emitted.items() if "hist" not in k}
    for name, path in keep.items():
        print(f"{name}: {path}")
    return EXIT_OK


def cmd_report(args) -> int:
    corpus = _load(args.corpus)
    annotations = pipeline.read_annotations(args.annotations) if args.annotations else []
    emitted = pipeline.emit_report(corpus, annotations, args.out_dir)
    print(f"report bundle: {len(emitted)} files in {args.out_dir}")
    return EXIT_OK


def cmd_pipeline(args) -> int:
    config = pipeline.PipelineConfig.from_toml(args.config, overrides=args.set or [])
    result = pipeline.run_pipeline(config)
    print(f"annotated {len(result.annotations)} songs -> {result.annotations_path}")
    if result.report_dir:
        print(f"report bundle in {result.report_dir}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyriclayers",
        description="Lyric corpus annotation: structure, summaries, "
                    "explicitness, emotion, topics, decade trends.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate (and optionally normalize) a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out")
    p.add_argument("--detect-language", action="store_true")
    p.add_argument("--overwrite-language", action="store_true")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("stats", help="language/genre/decade histograms")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out-dir")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("ssm", help="write self-similarity matrices")
    p.add_argument("--corpus", required=True)
    p.add_argument("--granularity", choices=["line", "segment"], default="line")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--ids", nargs="*")
    p.set_defaults(func=cmd_ssm)

    seg = sub.add_parser("segment", help="segment border model").add_subparsers(
        dest="action", required=True)
    p = seg.add_parser("train")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=300)
    p.add_argument("--l2", type=float, default=1.0)
    p.add_argument("--tau-rep", type=float, default=0.7)
    p.set_defaults(func=cmd_segment_train)
    p = seg.add_parser("predict")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_segment_predict)
    p = seg.add_parser("eval")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--by-genre", action="store_true")
    p.set_defaults(func=cmd_segment_eval)

    p = sub.add_parser("summarize", help="extractive summaries")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--scorers", default="rank,topic,fit")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--topics-model")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_summarize)

    exp = sub.add_parser("explicit", help="explicit-lyrics detection").add_subparsers(
        dest="action", required=True)
    p = exp.add_parser("induce")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--size", type=int, default=32)
    p.add_argument("--prior", type=float, default=0.5)
    p.add_argument("--min-df", type=int, default=5)
    p.set_defaults(func=cmd_explicit_induce)
    p = exp.add_parser("train")
    p.add_argument("--corpus", required=True)
    p.add_argument("--method", choices=["dictionary", "tfidf"], required=True)
    p.add_argument("--dictionary")
    p.add_argument("--out", required=True)
    p.add_argument("--l2", type=float, default=1.0)
    p.add_argument("--iters", type=int, default=300)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--min-df", type=int, default=1)
    p.set_defaults(func=cmd_explicit_train)
    p = exp.add_parser("predict")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model")
    p.add_argument("--dictionary")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_explicit_predict)
    p = exp.add_parser("eval")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model")
    p.add_argument("--dictionary")
    p.add_argument("--pred")
    p.set_defaults(func=cmd_explicit_eval)

    emo = sub.add_parser("emotion", help="valence-arousal estimation").add_subparsers(
        dest="action", required=True)
    p = emo.add_parser("project")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_emotion_project)
    p = emo.add_parser("train")
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--l2", type=float, default=1.0)
    p.add_argument("--min-df", type=int, default=1)
    p.set_defaults(func=cmd_emotion_train)
    p = emo.add_parser("predict")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_emotion_predict)
    p = emo.add_parser("eval")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.set_defaults(func=cmd_emotion_eval)

    top = sub.add_parser("topics", help="LDA topic modeling").add_subparsers(
        dest="action", required=True)
    p = top.add_parser("select")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k-grid", default="20,40,60,80")
    p.add_argument("--alpha-grid", default="0.1,0.5")
    p.add_argument("--eta-grid", default="0.01,0.1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--iters", type=int, default=30)
    p.add_argument("--subset", type=int, default=200000)
    p.set_defaults(func=cmd_topics_select)
    p = top.add_parser("train")
    p.add_argument("--corpus", required=True)
    p.add_argument("--k", type=int, default=60)
    p.add_argument("--alpha", type=float, default=0.1)
    p.add_argument("--eta", type=float, default=0.01)
    p.add_argument("--iters", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--subset", type=int)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_topics_train)
    p = top.add_parser("infer")
    p.add_argument("--corpus", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_topics_infer)

    p = sub.add_parser("diachronic", help="decade-level trend series")
    p.add_argument("--corpus", required=True)
    p.add_argument("--annotations")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_diachronic)

    p = sub.add_parser("report", help="full report bundle (CSVs + SVG charts)")
    p.add_argument("--corpus", required=True)
    p.add_argument("--annotations")
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("pipeline", help="run the configured annotation pipeline")
    p.add_argument("--config", required=True)
    p.add_argument("--set", action="append", metavar="SECTION.KEY=VALUE")
    p.set_defaults(func=cmd_pipeline)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except pipeline.ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CorpusError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ValueError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
