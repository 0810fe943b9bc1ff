"""SMART-corpus ingestion and multinomial Naive Bayes with add-one smoothing.

Feature modes: "full_bag" uses every token of a document; "significant_k"
keeps only the k most frequent distinct tokens per document (the same
reduction is applied at train and test time).
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyCorpus, EmptyTestSet, FormatError, SingleClass

_TOKEN_RE = re.compile(r"[a-z]+")

# standard English list, applied only when stopword removal is enabled
STOPWORDS = frozenset(
    """a about above after again against all am an and any are as at be because
    been before being below between both but by could did do does doing down
    during each few for from further had has have having he her here hers
    herself him himself his how i if in into is it its itself just me more most
    my myself no nor not now of off on once only or other our ours ourselves
    out over own same she should so some such than that the their theirs them
    themselves then there these they this those through to too under until up
    very was we were what when where which while who whom why will with you
    your yours yourself yourselves""".split()
)


@dataclass(frozen=True)
class Document:
    doc_id: str
    text: str
    label: str | None = None


@dataclass(frozen=True)
class FeatureMode:
    kind: str = "full_bag"  # or "significant_k"
    k: int = 5

    def __post_init__(self):
        if self.kind not in ("full_bag", "significant_k"):
            raise ValueError(f"bad feature mode {self.kind!r}")
        if self.k < 1:
            raise ValueError("k must be >= 1")

    def describe(self) -> str:
        return self.kind if self.kind == "full_bag" else f"significant_k({self.k})"


@dataclass
class NBModel:
    classes: list[str]
    log_priors: np.ndarray  # per class
    vocab: list[str]  # sorted, unique
    word_counts: np.ndarray  # (n_classes, |vocab|)
    class_totals: np.ndarray  # per class total token count
    vocab_index: dict[str, int] = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.vocab_index:
            self.vocab_index = {w: i for i, w in enumerate(self.vocab)}


@dataclass(frozen=True)
class ClassificationResult:
    label: str
    log_posteriors: np.ndarray
    posteriors: np.ndarray


def parse_smart(path) -> list[Document]:
    """Split a SMART dot-format file into documents.

    A document starts at a ".I <id>" line; its body is everything after the
    following ".W" line up to the next ".I". Other dot sections are skipped.
    """
    docs: list[Document] = []
    seen: set[str] = set()
    cur_id = None
    in_body = False
    body: list[str] = []

    def flush():
        nonlocal cur_id, body, in_body
        if cur_id is not None:
            docs.append(Document(doc_id=cur_id, text="\n".join(body).strip()))
        cur_id, body, in_body = None, [], False

    with open(path, encoding="utf-8", errors="replace") as f:
        for lineno, line in enumerate(f, 1):
            line = line.rstrip("\n")
            if line.startswith(".I"):
                flush()
                cur_id = line[2:].strip()
                if cur_id in seen:
                    raise FormatError(f"{path}:{lineno}: duplicate document id {cur_id!r}")
                seen.add(cur_id)
            elif line.startswith(".W"):
                if cur_id is None:
                    raise FormatError(f"{path}:{lineno}: body section before any .I")
                in_body = True
            elif line.startswith("."):
                in_body = False
            elif in_body:
                body.append(line)
            elif line.strip() and cur_id is None:
                raise FormatError(f"{path}:{lineno}: text before any .I marker")
    flush()
    return docs


def tokenize(text: str, stopwords: bool = False) -> list[str]:
    """Lowercased runs of ASCII letters, length >= 2; optional stopword removal."""
    tokens = [t for t in _TOKEN_RE.findall(text.lower()) if len(t) >= 2]
    if stopwords:
        tokens = [t for t in tokens if t not in STOPWORDS]
    return tokens


def significant_words(tokens: list[str], k: int = 5) -> list[str]:
    """The k distinct tokens with the highest in-document frequency; ties
    broken by earliest first occurrence."""
    if k < 1:
        raise ValueError("k must be >= 1")
    counts = Counter(tokens)
    first = {}
    for i, t in enumerate(tokens):
        first.setdefault(t, i)
    ranked = sorted(counts, key=lambda t: (-counts[t], first[t]))
    return ranked[:k]


def doc_tokens(doc: Document, mode: FeatureMode, stopwords: bool = False) -> list[str]:
    tokens = tokenize(doc.text, stopwords=stopwords)
    if mode.kind == "significant_k":
        tokens = significant_words(tokens, mode.k)
    return tokens


def train_nb(
    docs: list[Document],
    mode: FeatureMode = FeatureMode(),
    stopwords: bool = False,
) -> NBModel:
    """Multinomial Naive Bayes from labeled documents."""
    if not docs:
        raise EmptyCorpus("no training documents")
    classes = sorted({d.label for d in docs if d.label is not None})
    if any(d.label is None for d in docs):
        raise ValueError("all training documents must be labeled")
    if len(classes) < 2:
        raise SingleClass(f"need >= 2 classes, got {classes}")
    class_index = {c: i for i, c in enumerate(classes)}
    per_class_counts = [Counter() for _ in classes]
    doc_counts = np.zeros(len(classes))
    for d in docs:
        ci = class_index[d.label]
        doc_counts[ci] += 1
        per_class_counts[ci].update(doc_tokens(d, mode, stopwords))
    vocab = sorted(set().union(*[set(c) for c in per_class_counts]))
    vocab_index = {w: i for i, w in enumerate(vocab)}
    word_counts = np.zeros((len(classes), len(vocab)))
    for ci, counter in enumerate(per_class_counts):
        for w, n in counter.items():
            word_counts[ci, vocab_index[w]] = n
    return NBModel(
        classes=classes,
        log_priors=np.log(doc_counts / doc_counts.sum()),
        vocab=vocab,
        word_counts=word_counts,
        class_totals=word_counts.sum(axis=1),
        vocab_index=vocab_index,
    )


def classify(model: NBModel, tokens: list[str]) -> ClassificationResult:
    """Laplace-smoothed log scores; tokens outside the vocabulary are skipped;
    posteriors by log-sum-exp normalization; ties go to the first class."""
    v = len(model.vocab)
    log_scores = model.log_priors.copy()
    for t in tokens:
        i = model.vocab_index.get(t)
        if i is None:
            continue
        log_scores += np.log(
            (model.word_counts[:, i] + 1.0) / (model.class_totals + v)
        )
    shift = log_scores.max()
    exp = np.exp(log_scores - shift)
    posteriors = exp / exp.sum()
    log_posteriors = log_scores - (shift + math.log(exp.sum()))
    return ClassificationResult(
        label=model.classes[int(np.argmax(log_scores))],
        log_posteriors=log_posteriors,
        posteriors=posteriors,
    )


def evaluate_nb(
    model: NBModel,
    docs: list[Document],
    mode: FeatureMode = FeatureMode(),
    stopwords: bool = False,
) -> dict:
    """Accuracy and confusion matrix (rows = true class, cols = predicted)."""
    if not docs:
        raise EmptyTestSet("no test documents")
    n = len(model.classes)
    class_index = {c: i for i, c in enumerate(model.classes)}
    confusion = [[0] * n for _ in range(n)]
    correct = 0
    for d in docs:
        if d.label is None:
            raise ValueError(f"test document {d.doc_id} is unlabeled")
        result = classify(model, doc_tokens(d, mode, stopwords))
        if result.label == d.label:
            correct += 1
        confusion[class_index[d.label]][class_index[result.label]] += 1
    return {
        "accuracy": correct / len(docs),
        "confusion": confusion,
        "classes": list(model.classes),
        "n_test": len(docs),
        "feature_mode": mode.describe(),
    }


def save_nb_model(model: NBModel, path):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(
            {
                "classes": model.classes,
                "log_priors": model.log_priors.tolist(),
                "vocab": model.vocab,
                "word_counts": model.word_counts.tolist(),
                "class_totals": model.class_totals.tolist(),
            },
            f,
        )
        f.write("\n")


def load_nb_model(path) -> NBModel:
    with open(path, encoding="utf-8") as f:
        d = json.load(f)
    return NBModel(
        classes=d["classes"],
        log_priors=np.array(d["log_priors"]),
        vocab=d["vocab"],
        word_counts=np.array(d["word_counts"]),
        class_totals=np.array(d["class_totals"]),
    )
