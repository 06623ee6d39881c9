"""Fake news detection by weighted model accuracies: corpus handling,
TF-IDF features, a seven-classifier suite with a capability gate,
outlet authenticity scoring and an accuracy-gated self-training loop."""

from .authenticity import Verdict, authenticity_score, classify_outlet, fake_fraction, real_fraction
from .classifiers import AlgorithmId, capability_gate, fit, predict
from .corpus import Dataset, Label, NewsRecord, load_csv, save_csv, split
from .evaluation import accuracy_stats, evaluate, select_best_fit
from .features import fit_vectorizer, tokenize, transform
from .gate import GateConfig, outlet_gate, single_link_gate

__version__ = "0.1.0"
