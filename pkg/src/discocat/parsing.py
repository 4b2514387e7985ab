"""Sentence parsing under either type-logic, backtracking over lexical ambiguity."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .lambek import Derivation, prove, to_sexpr
from .lexicon import Grammar
from .pregroup import Reduction, reduce
from .types import Basic, PregroupType, format_lambek, lambek_to_pregroup

__all__ = ["LOGICS", "ParseResult", "UnknownWordError", "tokenize", "parse_sentence"]

LOGICS = ("pregroup", "lambek")


class UnknownWordError(KeyError):
    def __init__(self, word: str):
        self.word = word
        super().__init__(word)

    def __str__(self):
        return f"word {self.word!r} is not in the lexicon"


@dataclass(frozen=True)
class ParseResult:
    words: tuple
    types: tuple          # one Lambek type per word
    target: str
    logic: str
    proof: Union[Reduction, Derivation]

    @property
    def word_lengths(self) -> list:
        return [len(lambek_to_pregroup(t)) for t in self.types]

    def to_dict(self) -> dict:
        out = {"logic": self.logic, "words": list(self.words),
               "types": [format_lambek(t) for t in self.types], "target": self.target}
        if self.logic == "pregroup":
            out.update(self.proof.to_dict())
        else:
            out["derivation"] = to_sexpr(self.proof)
        return out


def tokenize(sentence: str) -> list:
    return sentence.lower().split()


def parse_sentence(words: Sequence[str], grammar: Grammar, logic: str = "pregroup",
                   targets: Optional[Sequence[str]] = None) -> Optional[ParseResult]:
    """
    First parse of ``words`` reaching one of ``targets`` (the designated types
    by default). Type assignments are tried in lexicon order, leftmost word
    varying slowest. Returns None when the string is ungrammatical.
    """
    if logic not in LOGICS:
        raise ValueError(f"unknown logic {logic!r}")
    if not words:
        raise ValueError("empty sentence")
    choices = []
    for w in words:
        entries = grammar.lookup(w)
        if not entries:
            raise UnknownWordError(w)
        choices.append([e.lambek_type for e in entries])
    targets = grammar.designated if targets is None else tuple(targets)
    for target in targets:
        for types in itertools.product(*choices):
            if logic == "pregroup":
                string = sum((lambek_to_pregroup(t) for t in types), PregroupType())
                proof = reduce(string.factors, target)
            else:
                proof = prove(list(types), Basic(target))
            if proof is not None:
                return ParseResult(tuple(words), tuple(types), target, logic, proof)
    return None
