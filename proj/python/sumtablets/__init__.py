"""Sumerian cuneiform glyph-transliteration corpus toolkit."""

from ._sumtablets import (
    NgramModel,
    SignList,
    chrf,
    chunk_tablet,
    count_corpus,
    dict_transliterate,
    evaluate_corpus,
    map_transliteration,
    normalize_annotations,
    stratified_split,
    train_ngram,
    with_counts,
)

__all__ = [
    "NgramModel",
    "SignList",
    "chrf",
    "chunk_tablet",
    "count_corpus",
    "dict_transliterate",
    "evaluate_corpus",
    "map_transliteration",
    "normalize_annotations",
    "stratified_split",
    "train_ngram",
    "with_counts",
]

__version__ = "0.1.0"
