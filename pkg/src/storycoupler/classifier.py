"""Grammar-bootstrapped linear classifier over 10-token stat windows.

Rule matches label sentences STAT / NO_STAT for free; windows around the
matched quantities become positive training examples and windows from
NO_STAT sentences become negatives. A maximum-margin linear model (hinge
loss + L2, seeded stochastic subgradient descent) then flags stat
mentions phrased in ways the grammar has no rule for.

Everything here is deterministic: a fixed seed gives bit-identical model
files and metrics on every run.
"""

from __future__ import annotations

import json
import math
import random
import re
from collections import Counter
from dataclasses import dataclass, field

from .domain import (
    NarrativeDocument, Provenance, Sentence, StatKey, Token, TokenKind,
    WhatValue, WMention, WType,
)
from .grammar import Grammar, match_grammar, normalize_number
from .segmenter import NUMBER_WORD_VALUES

PAD = "⟨pad⟩"      # ⟨pad⟩ sentinel at sentence edges
NUM = "⟨num⟩"      # ⟨num⟩ placeholder for numeric tokens
WINDOW = 5                   # context tokens on each side
LEARNING_RATE = 0.5

_NUMERIC_RE = re.compile(r"^\d+(\.\d+)?$")


class ClassifierError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class WindowSource:
    doc_id: str
    sentence_index: int
    center_span: tuple[int, int]


@dataclass(frozen=True)
class WindowExample:
    tokens: tuple[str, ...]      # exactly 10 norms: 5 left + 5 right
    center_token: str
    label: str                   # STAT | NO_STAT
    source: WindowSource


@dataclass(frozen=True)
class Hyperparams:
    reg_lambda: float = 1e-4
    epochs: int = 20
    seed: int = 42


@dataclass
class StatClassifierModel:
    vocabulary: dict[str, int]
    weights: list[float]
    bias: float
    hyperparams: Hyperparams
    training_report: dict = field(default_factory=dict)


def _placehold(norm: str) -> str:
    if _NUMERIC_RE.match(norm) or norm in NUMBER_WORD_VALUES:
        return NUM
    return norm


def window_features(example: WindowExample) -> Counter:
    """Bag of context norms (numbers collapsed to ⟨num⟩) plus the center
    token as its own dimension. Pads contribute nothing, so an all-pad
    window has an empty feature vector."""
    feats: Counter = Counter()
    for norm in example.tokens:
        if norm == PAD:
            continue
        feats[_placehold(norm)] += 1
    if example.center_token != PAD:
        feats["center=" + _placehold(example.center_token)] += 1
    return feats


def _context_stream(sentence: Sentence) -> list[Token]:
    return [t for t in sentence.tokens if t.kind is not TokenKind.PUNCT]


def _window_at(stream: list[Token], idx: int, label: str,
               doc_id: str, sentence_index: int) -> WindowExample:
    norms = []
    for k in range(idx - WINDOW, idx + WINDOW + 1):
        if k == idx:
            continue
        norms.append(stream[k].norm if 0 <= k < len(stream) else PAD)
    return WindowExample(
        tokens=tuple(norms),
        center_token=stream[idx].norm,
        label=label,
        source=WindowSource(doc_id, sentence_index, stream[idx].span))


def _positive_center(stream: list[Token], mention: WMention) -> int | None:
    """Index of the quantity token of a WHAT mention, else its first token."""
    inside = [i for i, t in enumerate(stream)
              if mention.span[0] <= t.span[0] and t.span[1] <= mention.span[1]]
    if not inside:
        return None
    for i in inside:
        if stream[i].kind in (TokenKind.NUMBER, TokenKind.NUMBER_WORD):
            return i
    return inside[0]


def build_windows(corpus: list[NarrativeDocument], g: Grammar,
                  seed: int = 42) -> list[WindowExample]:
    """Label the corpus through the grammar and cut training windows.

    Positives: one window per grammar WHAT mention, centered on its
    quantity token. Negatives: every NUMBER / NUMBER_WORD token in
    NO_STAT sentences, topped up with seeded uniform samples of word
    tokens from NO_STAT sentences until negatives >= positives.
    """
    if not corpus:
        raise ClassifierError("EMPTY_CORPUS", "no documents to window")

    positives: list[WindowExample] = []
    negatives: list[WindowExample] = []
    word_pool: list[tuple[str, int, list[Token], int]] = []

    for doc in corpus:
        for sentence in doc.sentences:
            stream = _context_stream(sentence)
            if not stream:
                continue
            mentions = match_grammar(sentence, g, doc.raw_text)
            what_mentions = [m for m in mentions if m.w_type is WType.WHAT]
            if what_mentions:
                for m in what_mentions:
                    center = _positive_center(stream, m)
                    if center is not None:
                        positives.append(_window_at(
                            stream, center, "STAT", doc.doc_id, sentence.index))
            else:
                for i, tok in enumerate(stream):
                    if tok.kind in (TokenKind.NUMBER, TokenKind.NUMBER_WORD):
                        negatives.append(_window_at(
                            stream, i, "NO_STAT", doc.doc_id, sentence.index))
                    elif tok.kind is TokenKind.WORD:
                        word_pool.append((doc.doc_id, sentence.index, stream, i))

    rng = random.Random(seed)
    rng.shuffle(word_pool)
    pool_iter = iter(word_pool)
    while len(negatives) < len(positives):
        try:
            doc_id, sent_index, stream, i = next(pool_iter)
        except StopIteration:
            break
        negatives.append(_window_at(stream, i, "NO_STAT", doc_id, sent_index))

    return positives + negatives


def _vectorize(example: WindowExample,
               vocabulary: dict[str, int]) -> list[tuple[int, int]]:
    pairs = []
    for feat, count in window_features(example).items():
        fid = vocabulary.get(feat)
        if fid is not None:
            pairs.append((fid, count))
    return pairs


def train(examples: list[WindowExample],
          hyperparams: Hyperparams = Hyperparams()) -> StatClassifierModel:
    """Fit the linear max-margin model on an 80/20 seeded split.

    Subgradient step on hinge loss with L2 shrinkage applied through a
    running scale factor (so each step is O(active features)). The
    returned model is the one fit on the 80% split; training_report
    holds its held-out metrics.
    """
    labels = {e.label for e in examples}
    if labels != {"STAT", "NO_STAT"}:
        raise ClassifierError("SINGLE_CLASS_INPUT",
                              f"need both labels, got {sorted(labels)}")

    rng = random.Random(hyperparams.seed)
    order = list(range(len(examples)))
    rng.shuffle(order)
    n_test = len(examples) // 5
    test_idx = order[:n_test]
    train_idx = order[n_test:]
    train_set = [examples[i] for i in train_idx]
    test_set = [examples[i] for i in test_idx]

    vocab_terms = sorted({feat for e in train_set
                          for feat in window_features(e)})
    vocabulary = {feat: i for i, feat in enumerate(vocab_terms)}
    vectors = [_vectorize(e, vocabulary) for e in train_set]
    ys = [1.0 if e.label == "STAT" else -1.0 for e in train_set]

    weights = [0.0] * len(vocabulary)
    scale = 1.0
    bias = 0.0
    lam = hyperparams.reg_lambda
    step = 0
    indices = list(range(len(train_set)))
    for _ in range(hyperparams.epochs):
        rng.shuffle(indices)
        for i in indices:
            step += 1
            eta = LEARNING_RATE / (1.0 + LEARNING_RATE * lam * step)
            x = vectors[i]
            y = ys[i]
            margin = y * (scale * sum(weights[f] * c for f, c in x) + bias)
            scale *= (1.0 - eta * lam)
            if scale < 1e-9:
                weights = [w * scale for w in weights]
                scale = 1.0
            if margin < 1.0:
                for f, c in x:
                    weights[f] += eta * y * c / scale
                bias += eta * y

    final_weights = [w * scale for w in weights]
    model = StatClassifierModel(
        vocabulary=vocabulary,
        weights=final_weights,
        bias=bias,
        hyperparams=hyperparams)

    report = {"n_train": len(train_set), "n_test": len(test_set)}
    if test_set:
        metrics = evaluate(model, test_set)
        report.update({k: metrics[k] for k in ("accuracy", "precision", "recall")})
    model.training_report = report
    return model


def hinge_objective(model: StatClassifierModel,
                    examples: list[WindowExample]) -> float:
    """Regularized hinge loss: lambda/2 * ||w||^2 + mean hinge."""
    lam = model.hyperparams.reg_lambda
    total = 0.0
    for e in examples:
        y = 1.0 if e.label == "STAT" else -1.0
        x = _vectorize(e, model.vocabulary)
        margin = y * (sum(model.weights[f] * c for f, c in x) + model.bias)
        total += max(0.0, 1.0 - margin)
    reg = 0.5 * lam * sum(w * w for w in model.weights)
    return reg + total / len(examples)


def predict(window: WindowExample, m: StatClassifierModel) -> dict:
    """Score one window; out-of-vocabulary features are ignored."""
    margin = m.bias + sum(m.weights[f] * c
                          for f, c in _vectorize(window, m.vocabulary))
    confidence = 1.0 / (1.0 + math.exp(-margin))
    return {"label": "STAT" if margin >= 0 else "NO_STAT",
            "margin": margin, "confidence": confidence}


def evaluate(m: StatClassifierModel, test: list[WindowExample]) -> dict:
    if not test:
        raise ClassifierError("EMPTY_TEST_SET", "no examples to evaluate")
    tp = fp = tn = fn = 0
    for e in test:
        predicted = predict(e, m)["label"]
        if e.label == "STAT":
            if predicted == "STAT":
                tp += 1
            else:
                fn += 1
        else:
            if predicted == "STAT":
                fp += 1
            else:
                tn += 1
    accuracy = (tp + tn) / len(test)
    precision = tp / (tp + fp) if tp + fp else 0.0
    recall = tp / (tp + fn) if tp + fn else 0.0
    return {"accuracy": accuracy, "precision": precision, "recall": recall,
            "confusion_matrix": {"tp": tp, "fp": fp, "tn": tn, "fn": fn}}


def scan_for_missed_stats(sentence: Sentence, g: Grammar,
                          m: StatClassifierModel, threshold: float,
                          raw_text: str | None = None) -> list[WMention]:
    """Flag stat mentions the grammar missed.

    Every word / number token outside a grammar WHAT mention is a
    candidate center; confident STAT predictions become UNKNOWN_STAT
    mentions spanning that token.
    """
    grammar_mentions = match_grammar(sentence, g, raw_text)
    what_spans = [gm.span for gm in grammar_mentions
                  if gm.w_type is WType.WHAT]
    stream = _context_stream(sentence)
    found: list[WMention] = []
    for i, tok in enumerate(stream):
        if tok.kind not in (TokenKind.WORD, TokenKind.NUMBER,
                            TokenKind.NUMBER_WORD):
            continue
        if any(s[0] <= tok.span[0] and tok.span[1] <= s[1]
               for s in what_spans):
            continue
        window = _window_at(stream, i, "NO_STAT", "", sentence.index)
        scored = predict(window, m)
        if scored["label"] != "STAT" or scored["confidence"] < threshold:
            continue
        quantity = None
        if tok.kind in (TokenKind.NUMBER, TokenKind.NUMBER_WORD):
            quantity = normalize_number([tok])
        found.append(WMention(
            sentence_index=sentence.index,
            w_type=WType.WHAT,
            span=tok.span,
            surface=tok.text,
            value=WhatValue(stat_key=StatKey.UNKNOWN_STAT, quantity=quantity),
            provenance=Provenance.CLASSIFIER,
            confidence=scored["confidence"]))
    return found


# --- model file I/O ----------------------------------------------------------

def save_model(m: StatClassifierModel, path: str) -> None:
    payload = {
        "vocabulary": m.vocabulary,
        "weights": m.weights,
        "bias": m.bias,
        "hyperparams": {"reg_lambda": m.hyperparams.reg_lambda,
                        "epochs": m.hyperparams.epochs,
                        "seed": m.hyperparams.seed},
        "training_report": m.training_report,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, ensure_ascii=False,
                  separators=(",", ":"))


def load_model(path: str) -> StatClassifierModel:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    hp = payload["hyperparams"]
    return StatClassifierModel(
        vocabulary=payload["vocabulary"],
        weights=payload["weights"],
        bias=payload["bias"],
        hyperparams=Hyperparams(hp["reg_lambda"], hp["epochs"], hp["seed"]),
        training_report=payload["training_report"])
