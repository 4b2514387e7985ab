"""
Command-line front end.

Exit status: 0 on success, 1 when a sentence is ungrammatical, 2 for bad
input or I/O trouble. Paths written ``pkg:NAME`` refer to files shipped in
the package's data directory (``pkg:toy.json``, ``pkg:truth.json``, ...).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path
from typing import Optional, Sequence

from . import diagrams
from .distributional import (DEFAULT_WINDOW, METHODS, WEIGHTINGS, VectorSpaceModel,
                             add_verb_tensors, build_model, load_triples, read_corpus)
from .evaluation import COMPOSERS, format_report, load_dataset, report
from .lexicon import GrammarError, bundled_path, load_grammar
from .parsing import LOGICS, UnknownWordError, parse_sentence, tokenize
from .semantics import SemanticsError, compile_sentence, execute
from .tensor import to_json

OK, UNGRAMMATICAL, FAILURE = 0, 1, 2


class UsageError(Exception):
    pass


def _path(text: str) -> Path:
    if text.startswith("pkg:"):
        return bundled_path(text[4:])
    return Path(text)


def _grammar(args, default: str = "toy.json"):
    return load_grammar(_path(args.grammar) if args.grammar else bundled_path(default))


def _write(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(args, obj) -> None:
    _write(args, json.dumps(obj, indent=2 if args.pretty else None) + "\n")


def _clean(x: float) -> float:
    x = round(float(x), 12)
    return 0.0 if x == 0 else x


def cmd_parse(args) -> int:
    words = tokenize(args.sentence)
    try:
        p = parse_sentence(words, _grammar(args), args.logic)
    except UnknownWordError as exc:
        print(f"ungrammatical: {exc}", file=sys.stderr)
        return UNGRAMMATICAL
    if p is None:
        print("ungrammatical", file=sys.stderr)
        return UNGRAMMATICAL
    _dump(args, p.to_dict())
    return OK


def cmd_diagram(args) -> int:
    words = tokenize(args.sentence)
    try:
        p = parse_sentence(words, _grammar(args), args.logic)
    except UnknownWordError as exc:
        print(f"ungrammatical: {exc}", file=sys.stderr)
        return UNGRAMMATICAL
    if p is None:
        print("ungrammatical", file=sys.stderr)
        return UNGRAMMATICAL
    if args.logic == "pregroup":
        svg = diagrams.render_cancellation(p.proof, p.words, p.word_lengths)
    else:
        svg = diagrams.render_baez_stay(p.proof, p.words)
    _write(args, svg)
    return OK


def cmd_build_model(args) -> int:
    model = build_model(read_corpus(_path(args.corpus)), args.basis_size,
                        args.window, args.weighting)
    _write(args, model.dumps())
    return OK


def cmd_build_verbs(args) -> int:
    model = VectorSpaceModel.load(_path(args.model))
    triples = load_triples(_path(args.triples))
    for method in args.method:
        add_verb_tensors(model, triples, method)
    if args.out is None:
        args.out = str(_path(args.model))
    _write(args, model.dumps())
    return OK


def _dims(text: Optional[str]) -> Optional[dict]:
    if not text:
        return None
    out = {}
    for part in text.split(","):
        name, _, value = part.partition("=")
        if not value.strip().isdigit() or int(value) < 1:
            raise UsageError(f"bad dimension {part!r}; expected NAME=POSITIVE_INT")
        out[name.strip()] = int(value)
    return out


def cmd_meaning(args) -> int:
    words = tokenize(args.sentence)
    grammar = _grammar(args)
    model = VectorSpaceModel.load(_path(args.model))
    tensors = model.word_tensors(args.method)
    try:
        if parse_sentence(words, grammar, args.logic, grammar.basic_types) is None:
            print("ungrammatical", file=sys.stderr)
            return UNGRAMMATICAL
    except UnknownWordError as exc:
        print(f"ungrammatical: {exc}", file=sys.stderr)
        return UNGRAMMATICAL
    _, plan, inputs = compile_sentence(words, grammar, tensors, args.logic, _dims(args.dims))
    vec = execute(plan, inputs)
    out = to_json(vec)
    out["data"] = [_clean(x) for x in out["data"]]
    if args.emit_plan:
        out = {"tensor": out, "plan": plan.to_dict()}
    _dump(args, out)
    return OK


def cmd_eval(args) -> int:
    composers = [c.strip() for c in args.composers.split(",") if c.strip()]
    unknown = [c for c in composers if c not in COMPOSERS]
    if unknown or not composers:
        raise UsageError(f"unknown composer {unknown[0]!r}" if unknown else "no composers given")
    grammar = _grammar(args, default="corpus_lexicon.json")
    model = VectorSpaceModel.load(_path(args.model))
    pairs = load_dataset(_path(args.dataset))
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = report(pairs, model, composers, grammar)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.pretty:
        _write(args, format_report(rep, as_json=False))
    else:
        _write(args, format_report(rep))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="discocat", description="Type-logical parsing and compositional vector semantics.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grammar=True, logic=True):
        if grammar:
            p.add_argument("--grammar", help="lexicon JSON (default: bundled toy lexicon)")
        if logic:
            p.add_argument("--logic", choices=LOGICS, default="pregroup")
        p.add_argument("--out", help="write here instead of stdout")
        p.add_argument("--pretty", action="store_true", help="human-friendly output")

    p = sub.add_parser("parse", help="decide grammaticality and print the proof")
    p.add_argument("sentence")
    common(p)
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("diagram", help="draw the proof of a sentence as SVG")
    p.add_argument("sentence")
    common(p)
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("build-model", help="word vectors from a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    p.add_argument("--basis-size", type=int, default=2000)
    p.add_argument("--weighting", choices=WEIGHTINGS, default="tfidf")
    common(p, grammar=False, logic=False)
    p.set_defaults(func=cmd_build_model)

    p = sub.add_parser("build-verbs", help="add verb tensors to a model")
    p.add_argument("--model", required=True)
    p.add_argument("--triples", required=True)
    p.add_argument("--method", choices=METHODS, action="append", required=True,
                   help="repeat to build several kinds")
    common(p, grammar=False, logic=False)
    p.set_defaults(func=cmd_build_verbs)

    p = sub.add_parser("meaning", help="vector of a sentence")
    p.add_argument("sentence")
    p.add_argument("--model", required=True)
    p.add_argument("--method", choices=METHODS, help="which verb tensors to use")
    p.add_argument("--dims", help="fix dimensions, e.g. n=2,s=2")
    p.add_argument("--emit-plan", action="store_true")
    common(p)
    p.set_defaults(func=cmd_meaning)

    p = sub.add_parser("eval", help="sentence-pair similarity report")
    p.add_argument("--dataset", required=True)
    p.add_argument("--model", required=True)
    p.add_argument("--composers", default=",".join(COMPOSERS),
                   help="comma-separated subset of " + ",".join(COMPOSERS))
    common(p, logic=False)
    p.set_defaults(func=cmd_eval)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else FAILURE
    for flag in ("window", "basis_size"):
        if getattr(args, flag, 1) < 1:
            print(f"error: --{flag.replace('_', '-')} must be at least 1", file=sys.stderr)
            return FAILURE
    try:
        return args.func(args)
    except (OSError, GrammarError, SemanticsError, UsageError, ValueError, KeyError,
            json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
