"""
Sentence similarity on the toy corpus
=====================================

Builds word vectors from the bundled 50-line corpus, adds two kinds of verb
tensors from the subject/verb/object triples, then scores the eight sentence
pairs of the bundled dataset with five ways of composing a sentence.
"""

import warnings

import numpy as np

from discocat.distributional import add_verb_tensors, build_model, load_triples, read_corpus
from discocat.evaluation import compose, format_report, load_dataset, report
from discocat.lexicon import bundled_path, load_grammar
from discocat.tensor import cosine

corpus = read_corpus(bundled_path("corpus.txt"))
model = build_model(corpus, basis_size=2000)      # every word of this corpus
triples = load_triples(bundled_path("triples.tsv"))
add_verb_tensors(model, triples, "cat1")
add_verb_tensors(model, triples, "cat2")
print(len(corpus), "sentences,", len(model.basis), "basis words,", len(model.verbs), "verbs")

grammar = load_grammar(bundled_path("corpus_lexicon.json"))
pairs = load_dataset(bundled_path("dataset.tsv"))

with warnings.catch_warnings():
    warnings.simplefilter("ignore")     # multiply hits an all-zero vector once
    rep = report(pairs, model, ["baseline", "add", "multiply", "cat1", "cat2"], grammar)
print(format_report(rep, as_json=False))

# adding vectors forgets who did what to whom
a, b = ("child", "meet", "system"), ("system", "meet", "child")
for composer in ("add", "cat1"):
    u, v = compose(a, model, composer, grammar), compose(b, model, composer, grammar)
    print(f"{composer:5s} cos({' '.join(a)!r}, {' '.join(b)!r}) = {cosine(u, v):.4f}")

# a cat1 sentence lives in N x N: 95 * 95 numbers
print("cat1 sentence size:", np.size(compose(a, model, "cat1", grammar)))
