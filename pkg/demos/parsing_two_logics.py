"""
Parsing the same sentences twice
================================

Each sentence is parsed with pregroup types and again with Lambek types.
The pregroup side prints which factors cancel; the Lambek side prints the
derivation term. Drawings go to the directory given on the command line
(default: ./drawings).
"""

import sys
from pathlib import Path

from discocat.diagrams import render_baez_stay, render_cancellation
from discocat.lexicon import load_grammar
from discocat.parsing import parse_sentence

out = Path(sys.argv[1] if len(sys.argv) > 1 else "drawings")
out.mkdir(exist_ok=True)
grammar = load_grammar()   # the bundled toy lexicon

sentences = ["men kill dogs", "men kill cute dogs", "men do not kill dogs", "kill men dogs"]

for s in sentences:
    words = s.split()
    p = parse_sentence(words, grammar, "pregroup")
    if p is None:
        print(f"{s!r}: no parse")
        continue
    print(f"{s!r}")
    print("   types :", " . ".join(str(t) for t in p.proof.input))
    print("   links :", p.proof.links)

    q = parse_sentence(words, grammar, "lambek")
    print("   term  :", q.proof)

    stem = s.replace(" ", "_")
    (out / f"{stem}.cancel.svg").write_text(render_cancellation(p.proof, p.words, p.word_lengths))
    (out / f"{stem}.clasp.svg").write_text(render_baez_stay(q.proof, q.words))

print("drawings written to", out.resolve())
