"""lyriclayers: annotation layers for song-lyric corpora.

Modules:
    corpus      data model, JSONL ingestion, language detection, statistics
    ssm         self-similarity matrices from normalized edit distance
    segmenter   segment-border prediction and border-level evaluation
    thumbnail   segment repetition families, fitness, chorus detection
    summarizer  graph/topic/fitness line scorers and extractive summaries
    explicit    profanity dictionary induction and linear classifiers
    emotion     valence-arousal lexicon projection, regression, correlations
    topics      collapsed-Gibbs LDA, coherence, hyperparameter selection
    diachronic  decade-level trend series
    pipeline    configured multi-stage runs, annotation JSONL, reports
    cli         command-line entry point
    synthetic   seeded corpus generators for tests and demos
"""

from .corpus import (Corpus, CorpusError, CorpusStats, Song, corpus_stats,
                     decade_of, detect_language, load_corpus, write_corpus)
from .diachronic import (DecadePoint, DecadeSeries, emotion_by_decade,
                         explicitness_by_decade, topic_importance_by_decade)
from .emotion import (Correlation, EmotionModel, VALexicon, VAPoint,
                      load_lexicon, pearson, predict_va, spearman, tags_to_va,
                      train_va_regressor)
from .explicit import (BowSpace, Dictionary, ExplicitModel, MacroPRF,
                       evaluate_explicit, induce_dictionary, lookup_classify,
                       train_dictionary_regression, train_tfidf_regression)
from .linear import LinearModel
from .pipeline import PipelineConfig, emit_report, run_pipeline
from .segmenter import (PRF, FeatureConfig, SegmenterModel,
                        evaluate_by_genre, evaluate_segmentation,
                        extract_border_features, predict_borders,
                        train_segmenter)
from .ssm import (SSM, levenshtein, line_ssm, normalized_edit_distance,
                  read_ssm, segment_ssm, similarity, write_ssm)
from .summarizer import (LineScores, fitness_scores, rank_scores, summarize,
                         topic_scores)
from .thumbnail import (SegmentFamily, chorus_candidate, segment_families,
                        segment_fitness)
from .topics import (LdaModel, SelectionResult, coherence, infer_topics,
                     preprocess, select_hyperparameters, top_words, train_lda)

__version__ = "0.1.0"
