"""Type dictionaries: words paired with Lambek types, plus designated types."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .types import (LambekType, TypeSyntaxError, basic_names, format_lambek,
                    parse_lambek_type)

__all__ = ["LexiconEntry", "Grammar", "GrammarError", "load_grammar",
           "save_grammar", "grammar_from_dict", "bundled_path"]


class GrammarError(ValueError):
    """Invalid lexicon file. ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: Optional[int] = None,
                 column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class LexiconEntry:
    word: str
    lambek_type: LambekType
    tensor_binding: Optional[str] = None


@dataclass(frozen=True)
class Grammar:
    basic_types: tuple
    designated: tuple
    entries: tuple = ()
    _index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for entry in self.entries:
            index.setdefault(entry.word, []).append(entry)
        object.__setattr__(self, "_index", index)

    def lookup(self, word: str) -> list:
        """All entries for ``word`` in file order; ``[]`` when unknown."""
        return list(self._index.get(word, ()))

    @property
    def words(self) -> list:
        return list(self._index)

    def __contains__(self, word):
        return word in self._index


def bundled_path(name: str) -> Path:
    """Path of a data file shipped with the package (``toy.json``, ...)."""
    return Path(str(resources.files("discocat") / "data" / name))


def _locate(text: str, needle: str, start: int = 0) -> tuple:
    offset = text.find(json.dumps(needle, ensure_ascii=False), start)
    if offset < 0:
        return None, None, start
    line = text.count("\n", 0, offset) + 1
    column = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, column, offset + 1


def grammar_from_dict(data: dict, source: str = "") -> Grammar:
    if not isinstance(data, dict):
        raise GrammarError("lexicon must be a JSON object")
    for key in ("basic_types", "designated", "entries"):
        if key not in data:
            raise GrammarError(f"lexicon is missing {key!r}")
    basic = tuple(data["basic_types"])
    designated = tuple(data["designated"])
    if not designated:
        raise GrammarError("designated type set is empty")
    for d in designated:
        if d not in basic:
            raise GrammarError(f"designated type {d!r} is not a declared basic type")

    entries, seen, cursor = [], set(), 0
    for k, raw in enumerate(data["entries"]):
        word, text = raw.get("word"), raw.get("type")
        if not isinstance(word, str) or not isinstance(text, str):
            raise GrammarError(f"entry {k} needs string 'word' and 'type'")
        line, column, cursor = _locate(source, text, cursor)
        try:
            t = parse_lambek_type(text)
        except TypeSyntaxError as exc:
            col = column + exc.column if column is not None else exc.column
            raise GrammarError(f"entry {word!r}: {exc}", line, col) from None
        undeclared = sorted(basic_names(t) - set(basic))
        if undeclared:
            raise GrammarError(
                f"entry {word!r} uses undeclared basic type {undeclared[0]!r}", line, column)
        if (word, t) in seen:
            raise GrammarError(f"duplicate entry {word!r}: {text}", line, column)
        seen.add((word, t))
        entries.append(LexiconEntry(word, t, raw.get("tensor")))
    return Grammar(basic, designated, tuple(entries))


def load_grammar(path=None) -> Grammar:
    """Read a JSON lexicon; the bundled toy lexicon when ``path`` is None."""
    path = bundled_path("toy.json") if path is None else Path(path)
    source = path.read_text(encoding="utf-8")
    try:
        data = json.loads(source)
    except json.JSONDecodeError as exc:
        raise GrammarError(f"{path}: {exc.msg}", exc.lineno, exc.colno) from None
    return grammar_from_dict(data, source)


def dumps_grammar(grammar: Grammar) -> str:
    entries = []
    for e in grammar.entries:
        item = {"word": e.word, "type": format_lambek(e.lambek_type)}
        if e.tensor_binding is not None:
            item["tensor"] = e.tensor_binding
        entries.append(item)
    data = {"basic_types": list(grammar.basic_types),
            "designated": list(grammar.designated),
            "entries": entries}
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def save_grammar(grammar: Grammar, path) -> None:
    Path(path).write_text(dumps_grammar(grammar), encoding="utf-8")
