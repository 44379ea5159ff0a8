"""Pipeline orchestration: run enabled annotation stages over a corpus,
write one JSONL annotation record per song, and emit a report bundle of
statistics CSVs and SVG line charts.

Configuration is a TOML file plus ``section.key=value`` overrides; every
run is deterministic given the config and its seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from . import diachronic, summarizer
from .corpus import Corpus, corpus_stats, load_corpus
from .emotion import EmotionModel, load_emotion_model, predict_va
from .explicit import ExplicitModel, classify, load_explicit_model
from .segmenter import SegmenterModel, load_segmenter, predict_borders
from .ssm import line_ssm, segment_ssm, write_ssm
from .thumbnail import segment_families, segment_fitness
from .topics import LdaModel, infer_topics, load_lda, preprocess, top_words

STAGES = ("ssm", "segment", "thumbnail", "summarize", "explicit", "emotion", "topics")

_SSM_DEPENDENT = ("segment", "thumbnail", "summarize")


class ConfigError(ValueError):
    """Invalid pipeline configuration (exit code 2 at the CLI)."""


@dataclass
class PipelineConfig:
    corpus_path: Path
    annotations_path: Path
    report_dir: Path | None = None
    ssm_dir: Path | None = None
    stages: tuple[str, ...] = STAGES
    models: dict[str, Path] = field(default_factory=dict)
    scorers: tuple[str, ...] = summarizer.SCORERS
    summary_budget: int = summarizer.DEFAULT_BUDGET
    tau_fam: float = 0.6
    seed: int = 0

    @classmethod
    def from_toml(cls, path: str | Path, overrides: list[str] = ()) -> "PipelineConfig":
        path = Path(path)
        try:
            data = tomllib.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError as exc:
            raise ConfigError(f"config file not found: {path}") from exc
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"{path}: {exc}") from exc
        for override in overrides:
            if "=" not in override:
                raise ConfigError(f"override '{override}' is not section.key=value")
            dotted, value = override.split("=", 1)
            parts = dotted.strip().split(".")
            if len(parts) != 2:
                raise ConfigError(f"override '{override}' is not section.key=value")
            section = data.setdefault(parts[0], {})
            try:
                section[parts[1]] = json.loads(value)
            except json.JSONDecodeError:
                section[parts[1]] = value
        return cls._from_dict(data, path.parent)

    @classmethod
    def _from_dict(cls, data: dict, base: Path) -> "PipelineConfig":
        def resolve(p) -> Path:
            p = Path(str(p))
            return p if p.is_absolute() else base / p

        corpus_cfg = data.get("corpus", {})
        if "path" not in corpus_cfg:
            raise ConfigError("config is missing corpus.path")
        output = data.get("output", {})
        if "annotations" not in output:
            raise ConfigError("config is missing output.annotations")
        stage_cfg = data.get("stages", {})
        unknown = set(stage_cfg) - set(STAGES)
        if unknown:
            raise ConfigError(f"unknown stages in config: {sorted(unknown)}")
        stages = tuple(s for s in STAGES if stage_cfg.get(s, False)) if stage_cfg \
            else STAGES
        models = {name: resolve(p) for name, p in data.get("models", {}).items()}
        params = data.get("params", {})
        scorers = tuple(params.get("scorers", list(summarizer.SCORERS)))
        return cls(
            corpus_path=resolve(corpus_cfg["path"]),
            annotations_path=resolve(output["annotations"]),
            report_dir=resolve(output["report_dir"]) if "report_dir" in output else None,
            ssm_dir=resolve(output["ssm_dir"]) if "ssm_dir" in output else None,
            stages=stages,
            models=models,
            scorers=scorers,
            summary_budget=int(params.get("summary_budget", summarizer.DEFAULT_BUDGET)),
            tau_fam=float(params.get("tau_fam", 0.6)),
            seed=int(data.get("seeds", {}).get("pipeline", 0)),
        )


@dataclass
class LoadedModels:
    segmenter: SegmenterModel | None = None
    topics: LdaModel | None = None
    explicit: ExplicitModel | None = None
    emotion: EmotionModel | None = None


def _require_model(config: PipelineConfig, name: str, stage: str) -> Path:
    if name not in config.models:
        raise ConfigError(f"stage '{stage}' requires models.{name}")
    path = config.models[name]
    if not path.exists():
        raise ConfigError(f"stage '{stage}': {name} model not found at {path}")
    return path


def validate_config(config: PipelineConfig) -> None:
    unknown = set(config.stages) - set(STAGES)
    if unknown:
        raise ConfigError(f"unknown stages: {sorted(unknown)}")
    bad_scorers = set(config.scorers) - set(summarizer.SCORERS)
    if bad_scorers:
        raise ConfigError(f"unknown scorers: {sorted(bad_scorers)}")
    for stage in _SSM_DEPENDENT:
        if stage in config.stages and "ssm" not in config.stages:
            raise ConfigError(f"stage '{stage}' requires stage 'ssm'")
    if "segment" in config.stages:
        _require_model(config, "segmenter", "segment")
    if "topics" in config.stages:
        _require_model(config, "topics", "topics")
    if "summarize" in config.stages and "topic" in config.scorers:
        if "topics" not in config.models:
            raise ConfigError("summarizer.Topic requires topics model (models.topics)")
        _require_model(config, "topics", "summarize")
    if "explicit" in config.stages:
        _require_model(config, "explicit", "explicit")
    if "emotion" in config.stages:
        _require_model(config, "emotion", "emotion")


def load_models(config: PipelineConfig) -> LoadedModels:
    models = LoadedModels()
    if "segment" in config.stages:
        models.segmenter = load_segmenter(config.models["segmenter"])
    needs_lda = "topics" in config.stages or (
        "summarize" in config.stages and "topic" in config.scorers)
    if needs_lda:
        models.topics = load_lda(config.models["topics"])
    if "explicit" in config.stages:
        models.explicit = load_explicit_model(config.models["explicit"])
    if "emotion" in config.stages:
        models.emotion = load_emotion_model(config.models["emotion"])
    return models


@dataclass
class PipelineResult:
    annotations: list[dict]
    annotations_path: Path
    report_dir: Path | None


def annotate_corpus(corpus: Corpus, config: PipelineConfig,
                    models: LoadedModels) -> list[dict]:
    """Compute every enabled annotation layer for every song, in corpus order."""
    stages = set(config.stages)
    explicit_labels = explicit_probs = None
    if "explicit" in stages:
        explicit_labels, explicit_probs = classify(models.explicit, corpus.songs)
    va_points = None
    if "emotion" in stages:
        va_points = predict_va(models.emotion, corpus.songs)
    topic_top_words = None
    if "topics" in stages:
        topic_top_words = [top_words(models.topics, t)
                           for t in range(models.topics.k)]

    records = []
    for idx, song in enumerate(corpus):
        record: dict = {"id": song.id}
        lssm = sssm = None
        if "ssm" in stages:
            lssm = line_ssm(song) if song.line_count else None
            sssm = segment_ssm(song) if song.segments else None
            if config.ssm_dir is not None and lssm is not None:
                config.ssm_dir.mkdir(parents=True, exist_ok=True)
                write_ssm(lssm, config.ssm_dir / f"{song.id}.line.ssm")
                write_ssm(sssm, config.ssm_dir / f"{song.id}.segment.ssm")
        if "segment" in stages and lssm is not None:
            record["borders"] = predict_borders(models.segmenter, lssm)
        fitness = None
        if "thumbnail" in stages and sssm is not None:
            counts = [len(seg) for seg in song.segments]
            families = segment_families(sssm, counts, config.tau_fam)
            fitness = segment_fitness(song, families)
            record["segment_fitness"] = fitness
            best = max(range(len(fitness)), key=lambda i: (fitness[i], -i))
            record["chorus"] = best
        theta = None
        needs_theta = "topics" in stages or (
            "summarize" in stages and "topic" in config.scorers)
        if models.topics is not None and needs_theta:
            infer_seed = config.seed * 1000003 + idx
            theta = infer_topics(models.topics, preprocess(song.text()),
                                 seed=infer_seed)
        if "topics" in stages and theta is not None:
            record["topics"] = theta.tolist()
            record["top_words"] = topic_top_words[int(np.argmax(theta))]
        if "summarize" in stages and lssm is not None:
            raw = {}
            if "rank" in config.scorers:
                raw["rank"] = summarizer.rank_scores(lssm)
            if "topic" in config.scorers:
                raw["topic"] = summarizer.topic_scores(song, models.topics,
                                                       theta=theta)
            if "fit" in config.scorers:
                if fitness is None:
                    counts = [len(seg) for seg in song.segments]
                    families = segment_families(sssm, counts, config.tau_fam)
                    fitness = segment_fitness(song, families)
                raw["fit"] = np.array([f for seg, f in zip(song.segments, fitness)
                                       for _ in seg])
            combined = summarizer.LineScores(raw=raw).combined(config.scorers)
            record["summary"] = summarizer.select_lines(song.lines(), combined,
                                                        config.summary_budget)
        if explicit_labels is not None:
            record["explicit_pred"] = explicit_labels[idx]
            record["explicit_prob"] = float(explicit_probs[idx])
        if va_points is not None:
            record["valence_pred"] = va_points[idx].valence
            record["arousal_pred"] = va_points[idx].arousal
        records.append(record)
    return records


def write_annotations(records: list[dict], path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record, sort_keys=True, ensure_ascii=False) + "\n")


def read_annotations(path: str | Path) -> list[dict]:
    records = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                records.append(json.loads(line))
    return records


def run_pipeline(config: PipelineConfig) -> PipelineResult:
    """Validate, annotate, write the JSONL output, and emit the report."""
    validate_config(config)
    if not config.corpus_path.exists():
        raise ConfigError(f"corpus file not found: {config.corpus_path}")
    corpus = load_corpus(config.corpus_path)
    models = load_models(config)
    records = annotate_corpus(corpus, config, models)
    write_annotations(records, config.annotations_path)
    if config.report_dir is not None:
        emit_report(corpus, records, config.report_dir)
    return PipelineResult(annotations=records,
                          annotations_path=config.annotations_path,
                          report_dir=config.report_dir)


def _hist_csv(hist: dict, path: Path) -> None:
    lines = ["label,count,fraction"]
    for label, (count, fraction) in hist.items():
        lines.append(f"{label},{count},{fraction!r}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


_PALETTE = ("#1f6f8b", "#c7502e", "#5a8f29", "#7a4fa3", "#b8860b",
            "#2e7f76", "#a33c5e", "#556b2f")


def polyline_chart(title: str,
                   series: list[tuple[str, list[tuple[float, float]]]],
                   width: int = 640, height: int = 320) -> str:
    """A small deterministic SVG line chart (one polyline per series)."""
    margin = 50.0
    points = [pt for _, pts in series for pt in pts]
    if points:
        xs = [p[0] for p in points]
        ys = [p[1] for p in points]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
    else:
        x_lo = x_hi = y_lo = y_hi = 0.0
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(x: float) -> float:
        return margin + (x - x_lo) / (x_hi - x_lo) * (width - 2 * margin)

    def sy(y: float) -> float:
        return height - margin - (y - y_lo) / (y_hi - y_lo) * (height - 2 * margin)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.2f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{title}</text>',
        f'<line x1="{margin:.2f}" y1="{height - margin:.2f}" x2="{width - margin:.2f}" '
        f'y2="{height - margin:.2f}" stroke="black"/>',
        f'<line x1="{margin:.2f}" y1="{margin:.2f}" x2="{margin:.2f}" '
        f'y2="{height - margin:.2f}" stroke="black"/>',
        f'<text x="{margin:.2f}" y="{height - margin + 16:.2f}" font-family="sans-serif" '
        f'font-size="10">{x_lo:.0f}</text>',
        f'<text x="{width - margin:.2f}" y="{height - margin + 16:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{x_hi:.0f}</text>',
        f'<text x="{margin - 6:.2f}" y="{height - margin:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y_lo:.3f}</text>',
        f'<text x="{margin - 6:.2f}" y="{margin + 4:.2f}" text-anchor="end" '
        f'font-family="sans-serif" font-size="10">{y_hi:.3f}</text>',
    ]
    for i, (name, pts) in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                     f'stroke-width="1.5"/>')
        for x, y in pts:
            parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="2.5" '
                         f'fill="{color}"/>')
        parts.append(f'<text x="{width - margin + 4:.2f}" y="{margin + 14 * i + 4:.2f}" '
                     f'font-family="sans-serif" font-size="10" '
                     f'fill="{color}">{name}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_report(corpus: Corpus, annotations: list[dict],
                report_dir: str | Path) -> dict[str, Path]:
    """Write corpus statistics CSVs, diachronic series CSVs, and SVG charts.

    Returns the emitted files keyed by a short name.
    """
    report_dir = Path(report_dir)
    report_dir.mkdir(parents=True, exist_ok=True)
    emitted: dict[str, Path] = {}

    stats = corpus_stats(corpus)
    for name, hist in (("language_hist", stats.language_hist),
                       ("genre_hist", stats.genre_hist),
                       ("decade_hist", stats.decade_hist)):
        path = report_dir / f"{name}.csv"
        _hist_csv(hist, path)
        emitted[name] = path

    by_id = {record["id"]: record for record in annotations}

    gold_labels = {s.id: s.explicit_gold for s in corpus if s.explicit_gold}
    if gold_labels:
        series = diachronic.explicitness_by_decade(corpus, gold_labels, source="gold")
        _emit_series(series, "explicitness_gold", report_dir, emitted,
                     advisory_note=True)
    pred_labels = {sid: rec["explicit_pred"] for sid, rec in by_id.items()
                   if "explicit_pred" in rec}
    if pred_labels:
        series = diachronic.explicitness_by_decade(corpus, pred_labels,
                                                   source="predicted")
        _emit_series(series, "explicitness_predicted", report_dir, emitted,
                     advisory_note=True)

    va_preds = {sid: (rec["valence_pred"], rec["arousal_pred"])
                for sid, rec in by_id.items() if "valence_pred" in rec}
    emotion_series = diachronic.emotion_by_decade(corpus, va_preds)
    if emotion_series.points:
        path = report_dir / "emotion_by_decade.csv"
        diachronic.write_series_csv(emotion_series, path)
        emitted["emotion_by_decade"] = path
        svg = polyline_chart("Mean valence and arousal by decade", [
            ("valence", [(p.decade, p.value[0]) for p in emotion_series.points]),
            ("arousal", [(p.decade, p.value[1]) for p in emotion_series.points]),
        ])
        svg_path = report_dir / "emotion_by_decade.svg"
        svg_path.write_text(svg, encoding="utf-8")
        emitted["emotion_by_decade_svg"] = svg_path

    dists = {sid: rec["topics"] for sid, rec in by_id.items() if "topics" in rec}
    if dists:
        topic_series = diachronic.topic_importance_by_decade(corpus, dists)
        path = report_dir / "topic_importance_by_decade.csv"
        lines = ["decade,topic,value,count"]
        for series in topic_series:
            topic = series.label.split("_")[1]
            for p in series.points:
                lines.append(f"{p.decade},{topic},{p.value[0]!r},{p.count}")
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        emitted["topic_importance_by_decade"] = path
        svg = polyline_chart("Topic importance by decade", [
            (series.label, [(p.decade, p.value[0]) for p in series.points])
            for series in topic_series])
        svg_path = report_dir / "topic_importance_by_decade.svg"
        svg_path.write_text(svg, encoding="utf-8")
        emitted["topic_importance_by_decade_svg"] = svg_path

    return emitted


def _emit_series(series, name: str, report_dir: Path, emitted: dict,
                 advisory_note: bool = False) -> None:
    if not series.points:
        return
    path = report_dir / f"{name}.csv"
    diachronic.write_series_csv(series, path, advisory_note=advisory_note)
    emitted[name] = path
    svg = polyline_chart(f"{series.label} by decade ({series.points[0].source})", [
        (series.label, [(p.decade, p.value[0]) for p in series.points])])
    svg_path = report_dir / f"{name}.svg"
    svg_path.write_text(svg, encoding="utf-8")
    emitted[f"{name}_svg"] = svg_path
