"""
Grammatical types for the two type-logics.

Lambek types are trees built from basic types with a product and two
implications; pregroup types are flat strings of simple types, each a basic
type decorated with an integer adjoint order.

>>> t = parse_lambek_type("(n -o s) o- n")
>>> print(lambek_to_pregroup(t))
n^r . s . n^l
>>> print(left_adjoint(lambek_to_pregroup(t)))
n^l^l . s^l . n
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

__all__ = [
    "Basic", "Unit", "Product", "LImpl", "RImpl", "LambekType",
    "SimpleType", "PregroupType",
    "TypeSyntaxError",
    "left_adjoint", "right_adjoint", "lambek_to_pregroup", "lambek_axis_order",
    "parse_lambek_type", "parse_pregroup_type", "format_lambek",
    "flatten", "product_of", "basic_names", "connective_count", "is_implication",
]


# --------------------------------------------------------------------------
# Lambek types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Basic:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Unit:
    def __str__(self):
        return "1"


@dataclass(frozen=True)
class Product:
    left: "LambekType"
    right: "LambekType"

    def __str__(self):
        return format_lambek(self)


@dataclass(frozen=True)
class LImpl:
    """``left -o right``: consumes a ``left`` on its left, yields ``right``."""
    left: "LambekType"
    right: "LambekType"

    def __str__(self):
        return format_lambek(self)


@dataclass(frozen=True)
class RImpl:
    """``left o- right``: consumes a ``right`` on its right, yields ``left``."""
    left: "LambekType"
    right: "LambekType"

    def __str__(self):
        return format_lambek(self)


LambekType = Union[Basic, Unit, Product, LImpl, RImpl]


def is_implication(t: LambekType) -> bool:
    return isinstance(t, (LImpl, RImpl))


def flatten(t: LambekType) -> tuple:
    """Product factors of ``t`` with units dropped; products are strict."""
    if isinstance(t, Unit):
        return ()
    if isinstance(t, Product):
        return flatten(t.left) + flatten(t.right)
    return (t,)


def product_of(factors: Sequence[LambekType]) -> LambekType:
    """Left-nested product of ``factors``; the empty product is the unit."""
    factors = [f for f in factors if not isinstance(f, Unit)]
    if not factors:
        return Unit()
    out = factors[0]
    for f in factors[1:]:
        out = Product(out, f)
    return out


def basic_names(t: LambekType) -> set:
    if isinstance(t, Basic):
        return {t.name}
    if isinstance(t, Unit):
        return set()
    return basic_names(t.left) | basic_names(t.right)


def connective_count(t: LambekType) -> int:
    if isinstance(t, (Basic, Unit)):
        return 0
    return 1 + connective_count(t.left) + connective_count(t.right)


# --------------------------------------------------------------------------
# Pregroup types
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class SimpleType:
    """A basic type with ``z`` iterated adjoints (negative: left, positive: right)."""
    base: str
    z: int = 0

    @property
    def l(self) -> "SimpleType":  # noqa: E743
        return SimpleType(self.base, self.z - 1)

    @property
    def r(self) -> "SimpleType":
        return SimpleType(self.base, self.z + 1)

    def __str__(self):
        return self.base + ("^l" * -self.z if self.z < 0 else "^r" * self.z)


@dataclass(frozen=True)
class PregroupType:
    """Ordered string of simple types; concatenation is the monoid product."""
    factors: tuple = ()

    def __init__(self, factors: Sequence[SimpleType] = ()):
        object.__setattr__(self, "factors", tuple(factors))

    def __add__(self, other: "PregroupType") -> "PregroupType":
        return PregroupType(self.factors + other.factors)

    def __len__(self):
        return len(self.factors)

    def __iter__(self) -> Iterator[SimpleType]:
        return iter(self.factors)

    def __getitem__(self, i):
        return self.factors[i]

    @property
    def l(self) -> "PregroupType":  # noqa: E743
        return left_adjoint(self)

    @property
    def r(self) -> "PregroupType":
        return right_adjoint(self)

    def __str__(self):
        return " . ".join(map(str, self.factors)) if self.factors else "1"


def left_adjoint(t: PregroupType) -> PregroupType:
    """
    >>> print(left_adjoint(parse_pregroup_type("n^r . s . n^l")))
    n^l^l . s^l . n
    """
    return PregroupType([f.l for f in reversed(t.factors)])


def right_adjoint(t: PregroupType) -> PregroupType:
    return PregroupType([f.r for f in reversed(t.factors)])


def _translate(t: LambekType, start: int) -> tuple:
    """Pregroup factors of ``t`` paired with their Lambek surface positions."""
    if isinstance(t, Basic):
        return [(SimpleType(t.name), start)], start + 1
    if isinstance(t, Unit):
        return [], start
    left, mid = _translate(t.left, start)
    right, end = _translate(t.right, mid)
    if isinstance(t, LImpl):
        left = [(f.r, i) for f, i in reversed(left)]
    elif isinstance(t, RImpl):
        right = [(f.l, i) for f, i in reversed(right)]
    return left + right, end


def lambek_to_pregroup(t: LambekType) -> PregroupType:
    """Translate ``a -o b`` to ``a^r . b`` and ``a o- b`` to ``a . b^l``."""
    factors, _ = _translate(t, 0)
    return PregroupType([f for f, _ in factors])


def lambek_axis_order(t: LambekType) -> tuple:
    """
    Axis permutation taking a tensor laid out in pregroup factor order to the
    Lambek surface order of ``t``: ``lambek = canonical.transpose(order)``.

    Adjoints of compound types reverse their factors, so the two layouts only
    differ for types with a compound antecedent.

    >>> lambek_axis_order(parse_lambek_type("(n -o s) o- (sigma -o j)"))
    (0, 1, 3, 2)
    """
    factors, _ = _translate(t, 0)
    positions = [i for _, i in factors]
    return tuple(sorted(range(len(positions)), key=positions.__getitem__))


# --------------------------------------------------------------------------
# Concrete syntax
# --------------------------------------------------------------------------

class TypeSyntaxError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        self.text = text
        self.column = column
        super().__init__(f"{message} at column {column} in {text!r}")


_TOKEN = re.compile(r"\s*(?:(?P<impl>-o)|(?P<ident>[^\W\d]\w*|1)|(?P<adj>\^[lr]+)|(?P<punct>[().]))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        # ``o-`` is an operator only after something that ends an operand
        stripped = len(text) - len(text[pos:].lstrip())
        if (text.startswith("o-", stripped) and tokens
                and tokens[-1][0] in ("ident", "adj", ")")):
            tokens.append(("rimpl", "o-", stripped + 1))
            pos = stripped + 2
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise TypeSyntaxError("unexpected character", text, stripped + 1)
        kind = m.lastgroup
        value, col = m.group(kind), m.start(kind) + 1
        if kind == "punct":
            kind = value
        tokens.append((kind, value, col))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, allow_adjoints: bool):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.allow_adjoints = allow_adjoints

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text) + 1)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None or (kind is not None and tok[0] != kind):
            expected = kind or "a type"
            found = "end of input" if tok[0] is None else repr(tok[1])
            raise TypeSyntaxError(f"expected {expected}, found {found}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek()[0] is not None:
            raise TypeSyntaxError(f"unexpected {self.peek()[1]!r}", self.text, self.peek()[2])
        return node

    def expr(self):
        left = self.term()
        kind = self.peek()[0]
        if kind == ".":
            while self.peek()[0] == ".":
                self.take()
                left = ("prod", left, self.term())
            if self.peek()[0] in ("impl", "rimpl"):
                raise TypeSyntaxError(
                    "mixing products and implications needs parentheses",
                    self.text, self.peek()[2])
        elif kind in ("impl", "rimpl"):
            self.take()
            left = (kind, left, self.term())
            if self.peek()[0] in ("impl", "rimpl", "."):
                raise TypeSyntaxError(
                    "implications are non-associative; add parentheses",
                    self.text, self.peek()[2])
        return left

    def term(self):
        kind, value, col = self.peek()
        if kind == "(":
            self.take()
            node = self.expr()
            self.take(")")
        elif kind == "ident":
            self.take()
            node = ("unit",) if value == "1" else ("basic", value, 0)
        else:
            self.take("ident")
        while self.peek()[0] == "adj":
            _, value, col = self.take()
            if not self.allow_adjoints:
                raise TypeSyntaxError("adjoints are not Lambek types", self.text, col)
            if node[0] != "basic":
                raise TypeSyntaxError("adjoints apply to basic types only", self.text, col)
            shift = value.count("r") - value.count("l")
            node = ("basic", node[1], node[2] + shift)
        return node


def _to_lambek(node) -> LambekType:
    kind = node[0]
    if kind == "basic":
        return Basic(node[1])
    if kind == "unit":
        return Unit()
    cls = {"prod": Product, "impl": LImpl, "rimpl": RImpl}[kind]
    return cls(_to_lambek(node[1]), _to_lambek(node[2]))


def parse_lambek_type(text: str) -> LambekType:
    """
    Parse ``a . b``, ``a -o b``, ``a o- b`` and ``1`` with explicit parentheses.

    >>> parse_lambek_type("n o- n")
    RImpl(left=Basic(name='n'), right=Basic(name='n'))
    """
    return _to_lambek(_Parser(text, allow_adjoints=False).parse())


def parse_pregroup_type(text: str) -> PregroupType:
    """
    Parse a product of simple types such as ``n^r . s . n^l``.

    >>> parse_pregroup_type("n^l^l . 1 . s").factors
    (SimpleType(base='n', z=-2), SimpleType(base='s', z=0))
    """
    node = _Parser(text, allow_adjoints=True).parse()
    factors = []

    def walk(n):
        if n[0] == "prod":
            walk(n[1])
            walk(n[2])
        elif n[0] == "basic":
            factors.append(SimpleType(n[1], n[2]))
        elif n[0] != "unit":
            raise TypeSyntaxError("implications are not pregroup types", text, 1)

    walk(node)
    return PregroupType(factors)


def format_lambek(t: LambekType, unicode: bool = False) -> str:
    """Canonical text form; ``parse_lambek_type`` inverts it exactly."""
    dot, lolli, illol = (" · ", " ⊸ ", " ⟜ ") if unicode else (" . ", " -o ", " o- ")

    def fmt(t, bare_product=False):
        if isinstance(t, Basic):
            return t.name
        if isinstance(t, Unit):
            return "1"
        if isinstance(t, Product):
            inner = fmt(t.left, bare_product=True) + dot + fmt(t.right)
            return inner if bare_product else f"({inner})"
        op = lolli if isinstance(t, LImpl) else illol
        return f"({fmt(t.left)}{op}{fmt(t.right)})"

    if isinstance(t, Product):
        return fmt(t, bare_product=True)
    text = fmt(t)
    if is_implication(t):
        text = text[1:-1]
    return text
