"""
Sentence-pair similarity experiments: compose, compare by cosine, and rank
against human judgements.
"""

from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from scipy.stats import rankdata

from .distributional import VectorSpaceModel
from .lexicon import Grammar
from .parsing import parse_sentence, tokenize
from .semantics import meaning
from .tensor import cosine
from .types import is_implication

__all__ = ["SentencePair", "SkippedPairWarning", "COMPOSERS", "load_dataset",
           "compose", "score_pairs", "spearman_rho", "report", "format_report"]

COMPOSERS = ("baseline", "add", "multiply", "cat1", "cat2")
TAGS = ("HIGH", "LOW")


class SkippedPairWarning(UserWarning):
    pass


@dataclass(frozen=True)
class SentencePair:
    sentence1: tuple
    sentence2: tuple
    human_score: float
    tag: Optional[str] = None


def load_dataset(path) -> list:
    """TSV rows ``sentence1, sentence2, human_score[, tag]``; a header row is skipped."""
    pairs = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter="\t"), 1):
            if not row or not any(c.strip() for c in row):
                continue
            if len(row) < 3:
                raise ValueError(f"{path}:{lineno}: expected at least 3 columns")
            try:
                score = float(row[2])
            except ValueError:
                if lineno == 1:
                    continue
                raise ValueError(f"{path}:{lineno}: bad score {row[2]!r}") from None
            tag = row[3].strip().upper() if len(row) > 3 and row[3].strip() else None
            if tag is not None and tag not in TAGS:
                raise ValueError(f"{path}:{lineno}: tag must be HIGH or LOW, got {row[3]!r}")
            pairs.append(SentencePair(tuple(tokenize(row[0])), tuple(tokenize(row[1])), score, tag))
    return pairs


def _vector(model: VectorSpaceModel, word: str) -> np.ndarray:
    if word not in model.vectors:
        raise KeyError(f"no vector for {word!r}")
    return model.vectors[word]


def _verb(words, grammar: Grammar) -> str:
    for w in words:
        if any(is_implication(e.lambek_type) for e in grammar.lookup(w)):
            return w
    raise ValueError("no verb in: " + " ".join(words))


def compose(words: Sequence[str], model: VectorSpaceModel, composer: str,
            grammar: Grammar) -> np.ndarray:
    """Vector for one sentence under ``composer``."""
    if composer == "add":
        return np.sum([_vector(model, w) for w in words], axis=0)
    if composer == "multiply":
        return np.prod([_vector(model, w) for w in words], axis=0)
    if composer == "baseline":
        return _vector(model, _verb(words, grammar))
    if composer in ("cat1", "cat2"):
        verb = _verb(words, grammar)
        if composer not in model.verbs.get(verb, {}):
            raise KeyError(f"no {composer} tensor for {verb!r}")
        relation = model.verbs[verb][composer]
        args = [w for w in words if w != verb]
        if (list(words) == args[:1] + [verb] + args[1:] and len(args) == relation.ndim
                and parse_sentence(list(words), grammar, "pregroup") is not None):
            # same value as the compiled meaning with the verb embedded
            # diagonally, without building the embedding
            product = _vector(model, args[0])
            for w in args[1:]:
                product = np.multiply.outer(product, _vector(model, w))
            return (product * relation).reshape(-1)
        return meaning(list(words), grammar, model.word_tensors(composer, words), "pregroup")
    raise ValueError(f"unknown composer {composer!r}")


def score_pairs(pairs: Sequence[SentencePair], model: VectorSpaceModel, composer: str,
                grammar: Grammar, strict: bool = True) -> list:
    """
    Cosine of the two composed sentences, per pair and in order.

    With ``strict=False`` a pair that cannot be composed scores None and a
    SkippedPairWarning names the row.
    """
    scores = []
    for k, p in enumerate(pairs):
        try:
            a = compose(p.sentence1, model, composer, grammar)
            b = compose(p.sentence2, model, composer, grammar)
        except (KeyError, ValueError) as exc:
            if strict:
                raise
            warnings.warn(f"pair {k + 1} skipped under {composer}: {exc}",
                          SkippedPairWarning, stacklevel=2)
            scores.append(None)
            continue
        scores.append(cosine(a, b))
    return scores


def spearman_rho(model_scores: Sequence[float], human_scores: Sequence[float]) -> float:
    """
    Pearson correlation of average ranks.

    >>> spearman_rho([1, 2, 3, 4], [2, 1, 4, 3])
    0.6
    """
    x = np.asarray(model_scores, dtype=np.float64)
    y = np.asarray(human_scores, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("score lists must have the same length")
    if len(x) == 0:
        raise ValueError("no scores to correlate")
    rx, ry = rankdata(x) - (len(x) + 1) / 2, rankdata(y) - (len(y) + 1) / 2
    denom = np.sqrt(np.dot(rx, rx) * np.dot(ry, ry))
    if denom == 0:
        raise ValueError("rank correlation is undefined for constant scores")
    return float(round(np.dot(rx, ry) / denom, 15))


def _mean(values) -> Optional[float]:
    return round(float(np.mean(values)), 6) if values else None


def report(pairs: Sequence[SentencePair], model: VectorSpaceModel,
           composers: Sequence[str], grammar: Grammar) -> dict:
    """Mean HIGH and LOW cosines and Spearman rho for each composer, in order."""
    rows = []
    for composer in composers:
        if composer not in COMPOSERS:
            raise ValueError(f"unknown composer {composer!r}")
        scores = score_pairs(pairs, model, composer, grammar, strict=False)
        kept = [(s, p) for s, p in zip(scores, pairs) if s is not None]
        high = [s for s, p in kept if p.tag == "HIGH"]
        low = [s for s, p in kept if p.tag == "LOW"]
        try:
            # rounding first so that cosines equal up to float noise tie
            rho = round(spearman_rho([round(s, 12) for s, _ in kept],
                                     [p.human_score for _, p in kept]), 6)
        except ValueError:
            rho = None
        rows.append({"composer": composer, "high": _mean(high), "low": _mean(low),
                     "rho": rho, "scored": len(kept), "skipped": len(pairs) - len(kept),
                     "scores": [None if s is None else round(s, 6) for s in scores]})
    return {"pairs": len(pairs), "rows": rows}


def format_report(rep: dict, as_json: bool = True) -> str:
    if as_json:
        return json.dumps(rep, indent=2) + "\n"

    def cell(v):
        return "n/a" if v is None else f"{v:.6f}"

    header = ("composer", "high", "low", "rho", "scored", "skipped")
    body = [(r["composer"], cell(r["high"]), cell(r["low"]), cell(r["rho"]),
             str(r["scored"]), str(r["skipped"])) for r in rep["rows"]]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) if i == 0 else c.rjust(w)
                       for i, (c, w) in enumerate(zip(row, widths))).rstrip()
             for row in [header] + body]
    return "\n".join(lines) + "\n"
