"""Tokenization, word counting and TF-IDF featurization.

Feature matrices are ``scipy.sparse.csr_matrix`` instances with float64
weights; every row is L2-normalised or entirely zero.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .errors import EmptyCorpus

_TOKEN = re.compile(r"[^\W_]+")

DEFAULT_MIN_DF = 2
DEFAULT_MAX_FEATURES = 50_000


def tokenize(text: str) -> list:
    return [m.group().lower() for m in _TOKEN.finditer(text) if len(m.group()) >= 2]


def word_count(text: str) -> int:
    return len(text.split())


@dataclass(frozen=True)
class Vocabulary:
    """Fitted term index. ``terms[i]`` is the term at column ``i``."""

    terms: tuple
    document_frequency: np.ndarray
    n_documents_fitted: int

    def __post_init__(self):
        df = np.asarray(self.document_frequency, dtype=np.int64)
        df.setflags(write=False)
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "document_frequency", df)
        object.__setattr__(self, "_index", {t: i for i, t in enumerate(self.terms)})

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term) -> bool:
        return term in self._index

    def index(self, term: str) -> Optional[int]:
        return self._index.get(term)

    @property
    def idf(self) -> np.ndarray:
        return np.log((1.0 + self.n_documents_fitted) / (1.0 + self.document_frequency)) + 1.0

    def to_dict(self) -> dict:
        return {
            "terms": list(self.terms),
            "document_frequency": self.document_frequency.tolist(),
            "n_documents_fitted": self.n_documents_fitted,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Vocabulary":
        return cls(tuple(d["terms"]), np.asarray(d["document_frequency"]), int(d["n_documents_fitted"]))


def fit_vectorizer(
    texts: Sequence[str],
    min_df: int = DEFAULT_MIN_DF,
    max_features: Optional[int] = DEFAULT_MAX_FEATURES,
) -> Vocabulary:
    """Fit a vocabulary of terms appearing in at least ``min_df`` documents.

    When more than ``max_features`` terms qualify, the most frequent (by
    document frequency, ties lexicographic) are kept. Column order is
    lexicographic in the retained terms.
    """
    if len(texts) == 0:
        raise EmptyCorpus("cannot fit a vocabulary on zero documents")
    df = Counter()
    for text in texts:
        df.update(set(tokenize(text)))
    kept = [(t, c) for t, c in df.items() if c >= min_df]
    if max_features is not None and len(kept) > max_features:
        kept.sort(key=lambda tc: (-tc[1], tc[0]))
        kept = kept[:max_features]
    kept.sort()
    return Vocabulary(
        tuple(t for t, _ in kept),
        np.array([c for _, c in kept], dtype=np.int64),
        len(texts),
    )


def transform(vocab: Vocabulary, texts: Iterable[str]) -> sp.csr_matrix:
    idf = vocab.idf
    indptr = [0]
    indices = []
    data = []
    for text in texts:
        counts = Counter(j for j in map(vocab.index, tokenize(text)) if j is not None)
        cols = sorted(counts)
        w = np.array([counts[j] * idf[j] for j in cols], dtype=np.float64)
        norm = np.sqrt(np.dot(w, w))
        if norm > 0:
            w /= norm
        indices.extend(cols)
        data.extend(w.tolist())
        indptr.append(len(indices))
    n_rows = len(indptr) - 1
    return sp.csr_matrix(
        (np.array(data, dtype=np.float64), np.array(indices, dtype=np.int64), np.array(indptr, dtype=np.int64)),
        shape=(n_rows, len(vocab)),
    )
