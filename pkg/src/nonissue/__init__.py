"""Issue-report triage toolkit for Turkish.

Classifies issue reports as issue / non-issue with three feature extractors
(token n-grams, verb morphology, discourse patterns) feeding a tf-idf
weighted linear max-margin classifier, plus the labeling workflow around it.
"""
from .features import Extractor, ExtractorConfig, FeatureExtractor, compose, tokenize
from .morphology import Analyzer, MorphAnalysis, Pos, Tag, default_analyzer, resolve_surface
from .patterns import PatternCatalog, PatternMatch, PatternRule, default_catalog, match_patterns
from .store import CorpusStore, IssueReport, LabelRecord, Verdict
from .svm import LinearModel, ModelBundle, TrainConfig, load_model, predict, save_model, train
from .vectorize import SparseVector, Vocabulary, fit_vocabulary, transform

__version__ = "0.1.0"

__all__ = [
    "Analyzer",
    "CorpusStore",
    "Extractor",
    "ExtractorConfig",
    "FeatureExtractor",
    "IssueReport",
    "LabelRecord",
    "LinearModel",
    "ModelBundle",
    "MorphAnalysis",
    "PatternCatalog",
    "PatternMatch",
    "PatternRule",
    "Pos",
    "SparseVector",
    "Tag",
    "TrainConfig",
    "Verdict",
    "Vocabulary",
    "compose",
    "default_analyzer",
    "default_catalog",
    "fit_vocabulary",
    "load_model",
    "match_patterns",
    "predict",
    "resolve_surface",
    "save_model",
    "tokenize",
    "train",
    "transform",
    "__version__",
]
