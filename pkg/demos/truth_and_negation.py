"""
Truth values and negation
=========================

A model with two individuals (men, dogs) and a two-dimensional sentence
space whose basis reads [true, false]. Negation swaps the two coordinates.
"""

import numpy as np

from discocat.distributional import VectorSpaceModel
from discocat.lexicon import bundled_path, load_grammar
from discocat.semantics import SWAP_2, compile_sentence, meaning, name_tensor

grammar = load_grammar()
model = VectorSpaceModel.load(bundled_path("truth.json"))
words = model.word_tensors()

for s in ["men kill dogs", "dogs kill men", "men do not kill dogs", "dogs do not kill men"]:
    for logic in ("pregroup", "lambek"):
        v = meaning(s.split(), grammar, words, logic)
        print(f"{s:24s} {logic:9s} {v}")

# The plan behind one of them. Every step is a plain record; the whole plan
# round-trips through JSON.
_, plan, inputs = compile_sentence("men do not kill dogs".split(), grammar, words, "lambek")
for step in plan.steps:
    print("  ", step)

# "not" as stored is the compact form: identity on the subject wire, swap on
# the sentence. The monoidal reading lets it act on subject and sentence
# together. With a map that also swaps the individuals the two readings part.
flip = np.array([[0.0, 1.0], [1.0, 0.0]])
wider = name_tensor(np.kron(flip, SWAP_2), (2, 2), (2, 2), side="right").transpose(0, 1, 3, 2)
print()
print("compact not      :", meaning("men do not kill dogs".split(), grammar, words, "pregroup"))
print("not on both wires:", meaning("men do not kill dogs".split(), grammar,
                                    dict(words, **{"not": wider}), "lambek"))
