"""
Cut-free proof search for the Lambek calculus with product and unit.

Proofs are returned as morphism terms of a monoidal bi-closed category:
identities, left/right evaluations, curryings and names, glued by sequential
composition and the monoidal product. Products are strict, so a domain is
compared by its flattened factor list.

>>> from discocat.types import parse_lambek_type as T
>>> d = prove([T("n"), T("(n -o s) o- n"), T("n")], T("s"))
>>> print(to_sexpr(d))
(compose (evl "n" "s") (par (id "n") (evr "n -o s" "n")))
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional, Sequence

from .types import (LambekType, LImpl, Product, RImpl, Unit, flatten,
                    format_lambek, parse_lambek_type, product_of)

__all__ = ["Derivation", "Id", "EvL", "EvR", "CurryL", "CurryR", "NameL", "NameR",
           "Compose", "Par", "DerivationTypeError", "prove", "check",
           "to_sexpr", "from_sexpr", "compose", "par"]


class DerivationTypeError(TypeError):
    def __init__(self, message: str, term: "Derivation"):
        self.term = term
        super().__init__(f"{message} in {to_sexpr(term)}")


def _same(a: LambekType, b: LambekType) -> bool:
    return flatten(a) == flatten(b)


class Derivation:
    """Base class; ``dom``/``cod`` type-check the term on first access."""

    @cached_property
    def dom(self) -> LambekType:
        return self._types()[0]

    @cached_property
    def cod(self) -> LambekType:
        return self._types()[1]

    def _types(self):
        raise NotImplementedError

    def __str__(self):
        return to_sexpr(self)


@dataclass(frozen=True, eq=True)
class Id(Derivation):
    type: LambekType

    def _types(self):
        return self.type, self.type


@dataclass(frozen=True, eq=True)
class EvL(Derivation):
    """``a . (a -o b) -> b``"""
    a: LambekType
    b: LambekType

    def _types(self):
        return Product(self.a, LImpl(self.a, self.b)), self.b


@dataclass(frozen=True, eq=True)
class EvR(Derivation):
    """``(a o- b) . b -> a``"""
    a: LambekType
    b: LambekType

    def _types(self):
        return Product(RImpl(self.a, self.b), self.b), self.a


@dataclass(frozen=True, eq=True)
class CurryL(Derivation):
    """From ``f: a . c -> b`` build ``c -> a -o b``."""
    f: Derivation
    a: LambekType

    def _types(self):
        head = flatten(self.a)
        factors = flatten(self.f.dom)
        if factors[:len(head)] != head:
            raise DerivationTypeError(f"domain does not start with {format_lambek(self.a)}", self)
        return product_of(factors[len(head):]), LImpl(self.a, self.f.cod)


@dataclass(frozen=True, eq=True)
class CurryR(Derivation):
    """From ``g: c . b -> a`` build ``c -> a o- b``."""
    f: Derivation
    b: LambekType

    def _types(self):
        tail = flatten(self.b)
        factors = flatten(self.f.dom)
        cut = len(factors) - len(tail)
        if cut < 0 or factors[cut:] != tail:
            raise DerivationTypeError(f"domain does not end with {format_lambek(self.b)}", self)
        return product_of(factors[:cut]), RImpl(self.f.cod, self.b)


@dataclass(frozen=True, eq=True)
class NameL(Derivation):
    """The left name ``1 -> a -o b`` of ``f: a -> b``."""
    f: Derivation

    def _types(self):
        return Unit(), LImpl(self.f.dom, self.f.cod)


@dataclass(frozen=True, eq=True)
class NameR(Derivation):
    """The right name ``1 -> b o- a`` of ``f: a -> b``."""
    f: Derivation

    def _types(self):
        return Unit(), RImpl(self.f.cod, self.f.dom)


@dataclass(frozen=True, eq=True)
class Compose(Derivation):
    """``g`` after ``f``."""
    g: Derivation
    f: Derivation

    def _types(self):
        if not _same(self.f.cod, self.g.dom):
            raise DerivationTypeError(
                f"cannot compose {format_lambek(self.f.cod)} with {format_lambek(self.g.dom)}", self)
        return self.f.dom, self.g.cod


@dataclass(frozen=True, eq=True)
class Par(Derivation):
    f: Derivation
    g: Derivation

    def _types(self):
        return product_of([self.f.dom, self.g.dom]), product_of([self.f.cod, self.g.cod])


def check(d: Derivation) -> tuple:
    """Re-verify every boundary of ``d``; return ``(dom, cod)`` or raise."""
    for child in _children(d):
        check(child)
    try:
        return d.dom, d.cod
    except DerivationTypeError as exc:
        if exc.term is d:
            raise
        raise DerivationTypeError(str(exc).split(" in (")[0], d) from exc


def _children(d: Derivation) -> tuple:
    if isinstance(d, (Compose,)):
        return (d.f, d.g)
    if isinstance(d, Par):
        return (d.f, d.g)
    if isinstance(d, (CurryL, CurryR, NameL, NameR)):
        return (d.f,)
    return ()


def _is_id(d: Derivation) -> bool:
    return isinstance(d, Id)


def compose(g: Derivation, f: Derivation) -> Derivation:
    """``g`` after ``f``, dropping identities."""
    if _is_id(f):
        return g
    if _is_id(g):
        return f
    return Compose(g, f)


def par(*parts: Derivation) -> Derivation:
    """Monoidal product of ``parts``; identities merge and units vanish."""
    out = None
    for p in parts:
        if _is_id(p) and isinstance(p.type, Unit):
            continue
        if out is None:
            out = p
        elif _is_id(out) and _is_id(p):
            out = Id(product_of([out.type, p.type]))
        else:
            out = Par(out, p)
    return Id(Unit()) if out is None else out


def _ident(factors: Sequence[LambekType]) -> Derivation:
    return Id(product_of(factors))


# --------------------------------------------------------------------------
# Proof search
# --------------------------------------------------------------------------

def prove(antecedents: Sequence[LambekType], succedent: LambekType) -> Optional[Derivation]:
    """
    Search for a proof of ``antecedents |- succedent``.

    Rule order: identity, product/unit decomposition on the left, the left
    implication rules (leftmost connective first, shortest argument first),
    then the right rules. The first proof found is returned.
    """
    if not antecedents:
        raise ValueError("antecedent list must be non-empty")
    gamma = tuple(f for t in antecedents for f in flatten(t))
    return _search(gamma, succedent)


@lru_cache(maxsize=None)
def _search(gamma: tuple, goal: LambekType) -> Optional[Derivation]:
    if len(gamma) == 1 and gamma[0] == goal:
        return Id(goal)
    if not gamma and isinstance(goal, Unit):
        return Id(Unit())

    # Left rules: a product/unit among the antecedents is already flattened.
    for i, t in enumerate(gamma):
        if isinstance(t, LImpl):
            # gamma = left, delta, a -o b, right
            for k in range(i, -1, -1):
                arg = _search(gamma[k:i], t.left)
                if arg is None:
                    continue
                rest = _search(gamma[:k] + flatten(t.right) + gamma[i + 1:], goal)
                if rest is None:
                    continue
                step = compose(EvL(t.left, t.right), par(arg, Id(t)))
                return compose(rest, par(_ident(gamma[:k]), step, _ident(gamma[i + 1:])))
        elif isinstance(t, RImpl):
            # gamma = left, a o- b, delta, right
            for k in range(i + 1, len(gamma) + 1):
                arg = _search(gamma[i + 1:k], t.right)
                if arg is None:
                    continue
                rest = _search(gamma[:i] + flatten(t.left) + gamma[k:], goal)
                if rest is None:
                    continue
                step = compose(EvR(t.left, t.right), par(Id(t), arg))
                return compose(rest, par(_ident(gamma[:i]), step, _ident(gamma[k:])))

    if isinstance(goal, LImpl):
        body = _search(flatten(goal.left) + gamma, goal.right)
        if body is not None:
            return NameL(body) if not gamma else CurryL(body, goal.left)
    elif isinstance(goal, RImpl):
        body = _search(gamma + flatten(goal.right), goal.left)
        if body is not None:
            return NameR(body) if not gamma else CurryR(body, goal.right)
    elif isinstance(goal, Product):
        for k in range(len(gamma) + 1):
            left = _search(gamma[:k], goal.left)
            if left is None:
                continue
            right = _search(gamma[k:], goal.right)
            if right is not None:
                return par(left, right)
    return None


# --------------------------------------------------------------------------
# S-expression form
# --------------------------------------------------------------------------

_TAGS = {Id: "id", EvL: "evl", EvR: "evr", CurryL: "curryl", CurryR: "curryr",
         NameL: "namel", NameR: "namer", Compose: "compose", Par: "par"}
_CLASSES = {v: k for k, v in _TAGS.items()}


def to_sexpr(d: Derivation) -> str:
    def q(t):
        return '"' + format_lambek(t) + '"'
    tag = _TAGS[type(d)]
    if isinstance(d, Id):
        args = [q(d.type)]
    elif isinstance(d, (EvL, EvR)):
        args = [q(d.a), q(d.b)]
    elif isinstance(d, CurryL):
        args = [to_sexpr(d.f), q(d.a)]
    elif isinstance(d, CurryR):
        args = [to_sexpr(d.f), q(d.b)]
    elif isinstance(d, (NameL, NameR)):
        args = [to_sexpr(d.f)]
    elif isinstance(d, Compose):
        args = [to_sexpr(d.g), to_sexpr(d.f)]
    else:
        args = [to_sexpr(d.f), to_sexpr(d.g)]
    return f"({tag} {' '.join(args)})"


_SEXPR_TOKEN = re.compile(r'\s*(?:(\()|(\))|"([^"]*)"|([a-z]+))')


def from_sexpr(text: str) -> Derivation:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _SEXPR_TOKEN.match(text, pos)
        if m is None:
            raise ValueError(f"bad derivation text at offset {pos}")
        tokens.append(m.groups())
        pos = m.end()
    tokens.reverse()

    def read():
        if not tokens:
            raise ValueError("unexpected end of derivation text")
        open_, close, string, word = tokens.pop()
        if string is not None:
            return parse_lambek_type(string)
        if open_ is None:
            raise ValueError("expected '(' or a quoted type")
        tag = tokens.pop()[3] if tokens else None
        if tag not in _CLASSES:
            raise ValueError(f"unknown constructor {tag!r}")
        args = []
        while tokens and tokens[-1][1] is None:
            args.append(read())
        if not tokens:
            raise ValueError("missing ')' in derivation text")
        tokens.pop()
        try:
            return _CLASSES[tag](*args)
        except TypeError:
            raise ValueError(f"wrong arguments for {tag!r}") from None

    d = read()
    if tokens:
        raise ValueError("trailing text after derivation")
    return d
