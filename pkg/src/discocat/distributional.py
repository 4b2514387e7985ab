"""
Word vectors from co-occurrence counts and verb tensors built from them.

A corpus is a list of sentences, one per non-empty line, each a list of
lowercased whitespace tokens. Lines double as documents for TF-IDF.
"""

from __future__ import annotations

import csv
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .tensor import from_json, kronecker_power, to_json

__all__ = ["read_corpus", "tokenize_corpus", "build_basis", "cooccurrence",
           "document_frequencies", "tfidf", "DependencyTriple", "load_triples",
           "verb_tensor_cat1", "verb_tensor_cat2", "embed_diagonal",
           "VectorSpaceModel", "build_model", "add_verb_tensors",
           "DEFAULT_WINDOW", "WEIGHTINGS", "METHODS"]

DEFAULT_WINDOW = 5
WEIGHTINGS = ("tfidf", "raw")
METHODS = ("cat1", "cat2")


def tokenize_corpus(text: str) -> list:
    return [line.lower().split() for line in text.splitlines() if line.strip()]


def read_corpus(path) -> list:
    return tokenize_corpus(Path(path).read_text(encoding="utf-8"))


def build_basis(corpus: Sequence[Sequence[str]], size: int) -> list:
    """
    The ``size`` most frequent tokens, ties broken alphabetically.

    >>> build_basis([["a", "b", "a", "c", "a", "b"]], 2)
    ['a', 'b']
    """
    if size < 1:
        raise ValueError("basis size must be at least 1")
    counts = Counter(tok for line in corpus for tok in line)
    if not counts:
        raise ValueError("empty corpus")
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [w for w, _ in ranked[:size]]


def cooccurrence(corpus: Sequence[Sequence[str]], basis: Sequence[str], window: int) -> dict:
    """
    Counts of basis words within ``window`` tokens either side, per word.

    Windows stop at line ends. Every token of the corpus gets a vector.

    >>> cooccurrence([["dogs", "eat", "food"]], ["food"], 1)["eat"]
    array([1.])
    """
    if window < 1:
        raise ValueError("window must be at least 1")
    index = {b: k for k, b in enumerate(basis)}
    vectors = {}
    for line in corpus:
        for i, w in enumerate(line):
            v = vectors.setdefault(w, np.zeros(len(basis)))
            for j in range(max(0, i - window), min(len(line), i + window + 1)):
                if j != i and line[j] in index:
                    v[index[line[j]]] += 1
    return vectors


def document_frequencies(corpus: Sequence[Sequence[str]]) -> Counter:
    return Counter(tok for line in corpus for tok in set(line))


def tfidf(counts: Mapping[str, np.ndarray], basis: Sequence[str],
          corpus: Sequence[Sequence[str]]) -> dict:
    """Scale column ``b`` by ``log(D / df(b))`` with lines as documents."""
    df = document_frequencies(corpus)
    docs = len(corpus)
    idf = np.array([math.log(docs / df[b]) if df[b] else 0.0 for b in basis])
    return {w: v * idf for w, v in counts.items()}


@dataclass(frozen=True)
class DependencyTriple:
    subject: str
    verb: str
    object: Optional[str] = None

    def __post_init__(self):
        if not self.verb:
            raise ValueError("a triple needs a verb")


def load_triples(path) -> list:
    """TSV rows ``subject, verb, object``; an empty object marks an intransitive use."""
    triples = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, row in enumerate(csv.reader(fh, delimiter="\t"), 1):
            if not row or not any(c.strip() for c in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected subject and verb")
            subj, verb = row[0].strip().lower(), row[1].strip().lower()
            obj = row[2].strip().lower() if len(row) > 2 and row[2].strip() else None
            triples.append(DependencyTriple(subj, verb, obj))
    return triples


def verb_tensor_cat1(verb: str, triples: Iterable[DependencyTriple],
                     vectors: Mapping[str, np.ndarray]) -> np.ndarray:
    """
    Sum over the verb's occurrences of its subject vector, tensored with its
    object vector when it has one.
    """
    uses = [t for t in triples if t.verb == verb]
    if not uses:
        raise KeyError(f"verb {verb!r} does not occur in the triples")
    arities = {1 if t.object is None else 2 for t in uses}
    if len(arities) > 1:
        raise ValueError(f"verb {verb!r} is used both with and without an object")
    total = None
    for t in uses:
        missing = [w for w in (t.subject, t.object) if w is not None and w not in vectors]
        if missing:
            raise KeyError(f"no vector for {missing[0]!r}")
        term = vectors[t.subject] if t.object is None else np.multiply.outer(
            vectors[t.subject], vectors[t.object])
        total = term.copy() if total is None else total + term
    return total


def verb_tensor_cat2(verb: str, vectors: Mapping[str, np.ndarray], arity: int) -> np.ndarray:
    """Kronecker power of the verb's own context vector."""
    if verb not in vectors:
        raise KeyError(f"no vector for {verb!r}")
    return kronecker_power(vectors[verb], arity)


def embed_diagonal(t: np.ndarray) -> np.ndarray:
    """
    Place a relational verb tensor into its sentence-typed space.

    A sentence of a ``k``-ary verb lives in the ``k``-fold tensor power of N,
    flattened row-major. Arity 1 gives ``u[i, i] = t[i]`` in N x S, arity 2
    gives ``u[i, (i, j), j] = t[i, j]`` in N x S x N, and arity 3 gives
    ``u[i, (i, j, k), k, j] = t[i, j, k]`` to match the nested links of
    ``n^r . s . n^l . n^l``. Everything else is zero.
    """
    t = np.asarray(t, dtype=np.float64)
    k = t.ndim
    if k == 0 or len(set(t.shape)) != 1:
        raise ValueError(f"expected a cubical tensor of rank 1 to 3, got shape {t.shape}")
    n = t.shape[0]
    idx = np.indices(t.shape).reshape(k, -1)
    flat = np.ravel_multi_index(tuple(idx), t.shape)
    values = t.reshape(-1)
    if k == 1:
        u = np.zeros((n, n))
        u[idx[0], flat] = values
    elif k == 2:
        u = np.zeros((n, n * n, n))
        u[idx[0], flat, idx[1]] = values
    elif k == 3:
        u = np.zeros((n, n ** 3, n, n))
        u[idx[0], flat, idx[2], idx[1]] = values
    else:
        raise ValueError("verbs of arity above 3 are not supported")
    return u


@dataclass
class VectorSpaceModel:
    basis: list
    vectors: dict                                  # word -> vector over the basis
    verbs: dict = field(default_factory=dict)      # word -> {method: relational tensor}
    tensors: dict = field(default_factory=dict)    # word -> explicit word tensor
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "basis": list(self.basis),
            "vectors": {w: np.asarray(v).tolist() for w, v in sorted(self.vectors.items())},
            "verbs": {w: {m: to_json(t) for m, t in sorted(ms.items())}
                      for w, ms in sorted(self.verbs.items())},
            "tensors": {w: to_json(t) for w, t in sorted(self.tensors.items())},
            "meta": dict(self.meta),
        }

    @classmethod
    def from_json(cls, data: dict) -> "VectorSpaceModel":
        basis = list(data.get("basis", []))
        vectors = {w: np.asarray(v, dtype=np.float64) for w, v in data.get("vectors", {}).items()}
        for w, v in vectors.items():
            if v.ndim != 1 or (basis and len(v) != len(basis)):
                raise ValueError(f"vector for {w!r} does not match the basis")
        verbs = {w: {m: from_json(t) for m, t in ms.items()}
                 for w, ms in data.get("verbs", {}).items()}
        tensors = {w: from_json(t) for w, t in data.get("tensors", {}).items()}
        return cls(basis, vectors, verbs, tensors, dict(data.get("meta", {})))

    def dumps(self) -> str:
        """JSON with one line per word, so model files diff well."""
        data = self.to_json()
        parts = []
        for key, value in data.items():
            if isinstance(value, dict) and value and key != "meta":
                inner = ",\n".join(f"    {json.dumps(k)}: {json.dumps(v)}" for k, v in value.items())
                parts.append(f'  {json.dumps(key)}: {{\n{inner}\n  }}')
            else:
                parts.append(f"  {json.dumps(key)}: {json.dumps(value)}")
        return "{\n" + ",\n".join(parts) + "\n}\n"

    def save(self, path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def load(cls, path) -> "VectorSpaceModel":
        return cls.from_json(json.loads(Path(path).read_text(encoding="utf-8")))

    def word_tensors(self, method: Optional[str] = None,
                     words: Optional[Iterable[str]] = None) -> dict:
        """
        Tensors to feed the compositional semantics: word vectors, verbs
        diagonally embedded when ``method`` is given, then explicit tensors.

        Embedded verbs grow as the cube of the basis or worse, so pass
        ``words`` to build only what one sentence needs.
        """
        keep = None if words is None else set(words)
        out = {w: v for w, v in self.vectors.items() if keep is None or w in keep}
        if method is not None:
            for w, ms in self.verbs.items():
                if method in ms and (keep is None or w in keep):
                    out[w] = embed_diagonal(ms[method])
        out.update((w, t) for w, t in self.tensors.items() if keep is None or w in keep)
        return out


def build_model(corpus: Sequence[Sequence[str]], basis_size: int,
                window: int = DEFAULT_WINDOW, weighting: str = "tfidf") -> VectorSpaceModel:
    if weighting not in WEIGHTINGS:
        raise ValueError(f"unknown weighting {weighting!r}")
    basis = build_basis(corpus, basis_size)
    counts = cooccurrence(corpus, basis, window)
    vectors = tfidf(counts, basis, corpus) if weighting == "tfidf" else counts
    meta = {"window": window, "weighting": weighting, "basis_size": basis_size,
            "documents": len(corpus)}
    return VectorSpaceModel(basis, vectors, {}, {}, meta)


def add_verb_tensors(model: VectorSpaceModel, triples: Sequence[DependencyTriple],
                     method: str) -> list:
    """Build ``method`` tensors for every verb in ``triples``; returns the verbs done."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    done = []
    for verb in sorted({t.verb for t in triples}):
        if method == "cat1":
            tensor = verb_tensor_cat1(verb, triples, model.vectors)
        else:
            arity = 1 if all(t.object is None for t in triples if t.verb == verb) else 2
            tensor = verb_tensor_cat2(verb, model.vectors, arity)
        model.verbs.setdefault(verb, {})[method] = tensor
        done.append(verb)
    return done
