"""
From grammatical proofs to linear maps.

Word meanings are tensors whose axes follow the word's pregroup factors
(``kill : n^r . s . n^l`` lives in N x S x N). Both logics compile a proof
into a ContractionPlan, a short program over a row of tensor segments:

* ``load`` places a word tensor (optionally transposed) at an axis position;
* ``identity`` places an identity tensor, the cap used by currying and names;
* ``contract`` sums pairs of equal-dimension axes, merging the segments they
  touch with a single einsum;
* ``apply`` acts with a named matrix on one axis;
* ``join`` multiplies every remaining segment into the output tensor.

The Lambek path works in surface order, where ``a -o b`` lays out the axes of
``a`` before those of ``b`` and ``a o- b`` those of ``a`` before ``b``; words
are transposed into that layout when loaded.

>>> import numpy as np
>>> from discocat.lexicon import load_grammar
>>> g = load_grammar()
>>> men, dogs = np.array([1., 0.]), np.array([0., 1.])
>>> kill = np.arange(8.).reshape(2, 2, 2)
>>> meaning(["men", "kill", "dogs"], g, {"men": men, "kill": kill, "dogs": dogs})
array([1., 3.])
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

import numpy as np

from .lambek import (Compose, CurryL, CurryR, Derivation, EvL, EvR, Id, NameL,
                     NameR, Par, check)
from .lexicon import Grammar
from .parsing import LOGICS, parse_sentence
from .pregroup import Reduction, is_valid_reduction
from .types import (Basic, LambekType, Unit, flatten,
                    lambek_axis_order, lambek_to_pregroup)

__all__ = [
    "SpaceAssignment", "SemanticsError", "ShapeError",
    "LoadWord", "LoadIdentity", "Contract", "ApplyMatrix", "TensorJoin",
    "ContractionPlan", "quantise_type", "word_shape",
    "compile_pregroup", "compile_lambek", "execute", "compile_sentence", "meaning",
    "infer_spaces", "name_tensor", "compact_modifier_tensor", "IDENTITY_2", "SWAP_2",
]

IDENTITY_2 = np.eye(2)
SWAP_2 = np.array([[0.0, 1.0], [1.0, 0.0]])


class SemanticsError(ValueError):
    pass


class ShapeError(SemanticsError):
    pass


# --------------------------------------------------------------------------
# Spaces
# --------------------------------------------------------------------------

DEFAULT_ALIASES = {"sigma": "n", "j": "s"}


@dataclass(frozen=True)
class SpaceAssignment:
    """Dimension of each basic type; aliased types share their target's space."""
    dims: Mapping[str, int]
    aliases: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_ALIASES))

    def resolve(self, base: str) -> str:
        seen = set()
        while base in self.aliases and base not in seen:
            seen.add(base)
            base = self.aliases[base]
        return base

    def dim(self, base: str) -> int:
        key = self.resolve(base)
        if key not in self.dims:
            raise SemanticsError(f"basic type {base!r} has no assigned dimension")
        return int(self.dims[key])


def quantise_type(t: LambekType, sa: SpaceAssignment) -> tuple:
    """
    Shape of the space a type is sent to, in surface order.

    >>> from discocat.types import parse_lambek_type as T
    >>> quantise_type(T("(n -o s) o- n"), SpaceAssignment({"n": 2, "s": 3}))
    (2, 3, 2)
    """
    if isinstance(t, Basic):
        return (sa.dim(t.name),)
    if isinstance(t, Unit):
        return ()
    return quantise_type(t.left, sa) + quantise_type(t.right, sa)


def word_shape(t: LambekType, sa: SpaceAssignment) -> tuple:
    """Shape of a word tensor: one axis per pregroup factor of ``t``."""
    return tuple(sa.dim(f.base) for f in lambek_to_pregroup(t))


def infer_spaces(types: Sequence[LambekType], tensors: Sequence[np.ndarray],
                 aliases: Optional[Mapping[str, str]] = None,
                 known: Optional[Mapping[str, int]] = None) -> SpaceAssignment:
    """Read dimensions off word tensors, checking that they agree."""
    sa = SpaceAssignment(dict(known or {}),
                         dict(DEFAULT_ALIASES if aliases is None else aliases))
    dims = dict(sa.dims)
    for t, x in zip(types, tensors):
        factors = lambek_to_pregroup(t).factors
        if np.ndim(x) != len(factors):
            raise ShapeError(f"tensor of rank {np.ndim(x)} cannot inhabit a type "
                             f"with {len(factors)} factors")
        for f, d in zip(factors, np.shape(x)):
            key = sa.resolve(f.base)
            if dims.setdefault(key, d) != d:
                raise ShapeError(f"type {key!r} used with dimensions {dims[key]} and {d}")
    return SpaceAssignment(dims, sa.aliases)


# --------------------------------------------------------------------------
# Plans
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class LoadWord:
    slot: int
    at: int
    perm: Optional[tuple] = None

    def to_dict(self):
        d = {"op": "load", "slot": self.slot, "at": self.at}
        if self.perm is not None:
            d["perm"] = list(self.perm)
        return d


@dataclass(frozen=True)
class LoadIdentity:
    dims: tuple
    at: int

    def to_dict(self):
        return {"op": "identity", "dims": list(self.dims), "at": self.at}


@dataclass(frozen=True)
class Contract:
    pairs: tuple

    def to_dict(self):
        return {"op": "contract", "pairs": [list(p) for p in self.pairs]}


@dataclass(frozen=True)
class ApplyMatrix:
    name: str
    axis: int

    def to_dict(self):
        return {"op": "apply", "name": self.name, "axis": self.axis}


@dataclass(frozen=True)
class TensorJoin:
    def to_dict(self):
        return {"op": "join"}


_STEP_READERS = {
    "load": lambda d: LoadWord(d["slot"], d["at"], tuple(d["perm"]) if "perm" in d else None),
    "identity": lambda d: LoadIdentity(tuple(d["dims"]), d["at"]),
    "contract": lambda d: Contract(tuple(tuple(p) for p in d["pairs"])),
    "apply": lambda d: ApplyMatrix(d["name"], d["axis"]),
    "join": lambda d: TensorJoin(),
}


@dataclass(frozen=True)
class ContractionPlan:
    input_shapes: tuple      # per slot, in the word's pregroup-factor layout
    output_shape: tuple
    steps: tuple
    labels: tuple = ()       # optional word per slot, for display

    def then_apply(self, name: str, axis: int) -> "ContractionPlan":
        """This plan followed by a named matrix acting on one output axis."""
        steps = tuple(s for s in self.steps if not isinstance(s, TensorJoin))
        return ContractionPlan(self.input_shapes, self.output_shape,
                               steps + (ApplyMatrix(name, axis), TensorJoin()), self.labels)

    def to_dict(self) -> dict:
        inputs = []
        for k, shape in enumerate(self.input_shapes):
            item = {"slot": k, "shape": list(shape)}
            if self.labels:
                item["word"] = self.labels[k]
            inputs.append(item)
        return {"inputs": inputs, "output_shape": list(self.output_shape),
                "steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, d: dict) -> "ContractionPlan":
        inputs = sorted(d["inputs"], key=lambda i: i["slot"])
        labels = tuple(i["word"] for i in inputs) if all("word" in i for i in inputs) else ()
        return cls(tuple(tuple(i["shape"]) for i in inputs), tuple(d["output_shape"]),
                   tuple(_STEP_READERS[s["op"]](s) for s in d["steps"]), labels)


class _Row:
    """A row of tensor segments whose concatenated axes are the open wires."""

    def __init__(self):
        self.segs = []

    def _starts(self):
        out, pos = [], 0
        for s in self.segs:
            out.append(pos)
            pos += s.ndim
        return out, pos

    def width(self):
        return self._starts()[1]

    def insert(self, t: np.ndarray, at: int):
        starts, width = self._starts()
        if not 0 <= at <= width:
            raise ShapeError(f"cannot insert at axis {at} of {width}")
        for k, (s, start) in enumerate(zip(self.segs, starts)):
            if start == at:
                self.segs.insert(k, t)
                return
            if start < at < start + s.ndim:
                local = at - start
                merged = np.multiply.outer(s, t)
                src = list(range(s.ndim, s.ndim + t.ndim))
                self.segs[k] = np.moveaxis(merged, src, list(range(local, local + t.ndim)))
                return
        self.segs.append(t)

    def _seg_of(self, axis: int, starts) -> int:
        for k, (s, start) in enumerate(zip(self.segs, starts)):
            if start <= axis < start + s.ndim:
                return k
        raise ShapeError(f"no open axis {axis}")

    def contract(self, pairs):
        starts, width = self._starts()
        axes = [a for p in pairs for a in p]
        if len(set(axes)) != len(axes):
            raise ShapeError(f"axis used twice in {pairs}")
        lo, hi = self._seg_of(min(axes), starts), self._seg_of(max(axes), starts)
        first = starts[lo]
        shape = [d for s in self.segs[lo:hi + 1] for d in s.shape]
        labels = list(range(len(shape)))
        for i, j in pairs:
            if shape[i - first] != shape[j - first]:
                raise ShapeError(f"cannot contract axes {i} and {j}: "
                                 f"dimensions {shape[i - first]} and {shape[j - first]}")
            labels[j - first] = labels[i - first]
        closed = set(axes)
        out = [labels[a - first] for a in range(first, first + len(shape)) if a not in closed]
        operands, pos = [], 0
        for s in self.segs[lo:hi + 1]:
            operands += [s, labels[pos:pos + s.ndim]]
            pos += s.ndim
        result = np.einsum(*operands, out, optimize=len(operands) > 4)
        self.segs[lo:hi + 1] = [np.asarray(result)]

    def apply(self, m: np.ndarray, axis: int):
        starts, _ = self._starts()
        k = self._seg_of(axis, starts)
        local = axis - starts[k]
        s = self.segs[k]
        if m.ndim != 2 or m.shape[1] != s.shape[local]:
            raise ShapeError(f"matrix of shape {m.shape} cannot act on an axis of "
                             f"dimension {s.shape[local]}")
        self.segs[k] = np.moveaxis(np.tensordot(m, s, axes=([1], [local])), 0, local)

    def join(self):
        out = np.asarray(1.0)
        for s in self.segs:
            out = np.multiply.outer(out, s)
        self.segs = [out]
        return out


def execute(plan: ContractionPlan, tensors: Sequence[np.ndarray],
            matrices: Optional[Mapping[str, np.ndarray]] = None) -> np.ndarray:
    """Run ``plan`` on one tensor per slot."""
    if len(tensors) != len(plan.input_shapes):
        raise SemanticsError(f"plan takes {len(plan.input_shapes)} tensors, got {len(tensors)}")
    tensors = [np.asarray(t, dtype=np.float64) for t in tensors]
    for k, (t, shape) in enumerate(zip(tensors, plan.input_shapes)):
        if t.shape != tuple(shape):
            raise ShapeError(f"slot {k} expects shape {list(shape)}, got {list(t.shape)}")
    row = _Row()
    for step in plan.steps:
        if isinstance(step, LoadWord):
            t = tensors[step.slot]
            row.insert(t if step.perm is None else t.transpose(step.perm), step.at)
        elif isinstance(step, LoadIdentity):
            size = int(np.prod(step.dims, dtype=np.int64))
            row.insert(np.eye(size).reshape(tuple(step.dims) * 2), step.at)
        elif isinstance(step, Contract):
            row.contract(step.pairs)
        elif isinstance(step, ApplyMatrix):
            if not matrices or step.name not in matrices:
                raise SemanticsError(f"no matrix named {step.name!r}")
            row.apply(np.asarray(matrices[step.name], dtype=np.float64), step.axis)
        elif isinstance(step, TensorJoin):
            row.join()
    out = row.join()
    if out.shape != tuple(plan.output_shape):
        raise ShapeError(f"plan produced {list(out.shape)}, declared {list(plan.output_shape)}")
    return out


# --------------------------------------------------------------------------
# Compilers
# --------------------------------------------------------------------------

def compile_pregroup(r: Reduction, sa: SpaceAssignment,
                     word_lengths: Optional[Sequence[int]] = None,
                     labels: Sequence[str] = ()) -> ContractionPlan:
    """
    Each link becomes a contraction between the two factor axes it joins.

    Words are loaded left to right and a link is contracted as soon as the
    word holding its right end is in place; planarity guarantees everything
    under the link is already gone.
    """
    if not is_valid_reduction(r):
        raise SemanticsError("invalid reduction")
    n = len(r.input)
    lengths = [1] * n if word_lengths is None else list(word_lengths)
    if sum(lengths) != n:
        raise SemanticsError(f"word lengths {lengths} do not cover {n} factors")
    dims = [sa.dim(f.base) for f in r.input]
    for i, j in r.links:
        if dims[i] != dims[j]:
            raise ShapeError(f"link ({i}, {j}) joins dimensions {dims[i]} and {dims[j]}")
    closing = {}
    for i, j in r.links:
        closing.setdefault(j, []).append(i)

    steps, alive, start, shapes = [], [], 0, []
    for slot, length in enumerate(lengths):
        steps.append(LoadWord(slot, len(alive)))
        shapes.append(tuple(dims[start:start + length]))
        alive += range(start, start + length)
        pairs = [(i, j) for j in range(start, start + length) for i in closing.get(j, ())]
        if pairs:
            steps.append(Contract(tuple((alive.index(i), alive.index(j)) for i, j in pairs)))
            gone = {a for p in pairs for a in p}
            alive = [a for a in alive if a not in gone]
        start += length
    steps.append(TensorJoin())
    return ContractionPlan(tuple(shapes), tuple(dims[k] for k in r.residual_indices),
                           tuple(steps), tuple(labels))


def _width(t: LambekType, sa) -> int:
    return len(quantise_type(t, sa))


def _emit(d: Derivation, lo: int, sa, steps: list):
    if isinstance(d, Id):
        return
    if isinstance(d, EvL):
        na = _width(d.a, sa)
        steps.append(Contract(tuple((lo + k, lo + na + k) for k in range(na))))
    elif isinstance(d, EvR):
        na, nb = _width(d.a, sa), _width(d.b, sa)
        steps.append(Contract(tuple((lo + na + k, lo + na + nb + k) for k in range(nb))))
    elif isinstance(d, Compose):
        _emit(d.f, lo, sa, steps)
        _emit(d.g, lo, sa, steps)
    elif isinstance(d, Par):
        _emit(d.f, lo, sa, steps)
        _emit(d.g, lo + _width(d.f.cod, sa), sa, steps)
    elif isinstance(d, (CurryL, NameL)):
        a = d.a if isinstance(d, CurryL) else d.f.dom
        shape = quantise_type(a, sa)
        if shape:
            steps.append(LoadIdentity(shape, lo))
        _emit(d.f, lo + len(shape), sa, steps)
    elif isinstance(d, CurryR):
        shape = quantise_type(d.b, sa)
        if shape:
            steps.append(LoadIdentity(shape, lo + _width(d.dom, sa)))
        _emit(d.f, lo, sa, steps)
    elif isinstance(d, NameR):
        shape = quantise_type(d.f.dom, sa)
        if shape:
            steps.append(LoadIdentity(shape, lo))
        _emit(d.f, lo, sa, steps)
    else:
        raise SemanticsError(f"cannot compile {type(d).__name__}")


def compile_lambek(d: Derivation, sa: SpaceAssignment,
                   word_types: Optional[Sequence[LambekType]] = None,
                   labels: Sequence[str] = ()) -> ContractionPlan:
    """
    Evaluations contract an argument with the matching end of a function
    tensor; curryings and names only insert an identity; composition
    concatenates, and the two halves of a tensor product act on disjoint
    axis ranges.

    ``word_types`` splits the domain into input slots; by default every
    factor of the domain is its own slot.
    """
    dom, cod = check(d)
    if word_types is None:
        word_types = list(flatten(dom))
    elif tuple(f for t in word_types for f in flatten(t)) != flatten(dom):
        raise SemanticsError("word types do not match the derivation's domain")
    steps, at, shapes = [], 0, []
    for slot, t in enumerate(word_types):
        perm = lambek_axis_order(t)
        shapes.append(word_shape(t, sa))
        steps.append(LoadWord(slot, at, None if perm == tuple(sorted(perm)) else perm))
        at += _width(t, sa)
    _emit(d, 0, sa, steps)
    steps.append(TensorJoin())
    return ContractionPlan(tuple(shapes), quantise_type(cod, sa), tuple(steps), tuple(labels))


# --------------------------------------------------------------------------
# Sentences
# --------------------------------------------------------------------------

def compile_sentence(words: Sequence[str], grammar: Grammar,
                     tensors: Mapping[str, np.ndarray], logic: str = "pregroup",
                     dims: Optional[Mapping[str, int]] = None) -> tuple:
    """
    Parse ``words`` and compile the parse; returns ``(parse, plan, inputs)``.

    Sentences reduce to a designated type when they can; otherwise any basic
    type is accepted so that phrases such as a lone noun still have a meaning.
    """
    missing = [w for w in words if w not in tensors]
    if missing:
        raise SemanticsError(f"no tensor for {missing[0]!r}")
    targets = list(grammar.designated) + [b for b in grammar.basic_types
                                          if b not in grammar.designated]
    # try each type assignment whose shapes fit the bound tensors
    fitting = _fitting_grammar(words, grammar, tensors)
    p = parse_sentence(words, fitting, logic, targets)
    if p is None:
        raise SemanticsError("sentence does not parse: " + " ".join(words))
    inputs = [np.asarray(tensors[w], dtype=np.float64) for w in words]
    sa = infer_spaces(p.types, inputs, known=dims)
    if logic == "pregroup":
        plan = compile_pregroup(p.proof, sa, p.word_lengths, words)
    else:
        plan = compile_lambek(p.proof, sa, p.types, words)
    return p, plan, inputs


def _fitting_grammar(words, grammar: Grammar, tensors) -> Grammar:
    kept = [e for e in grammar.entries
            if e.word not in tensors or len(lambek_to_pregroup(e.lambek_type)) == np.ndim(tensors[e.word])]
    return Grammar(grammar.basic_types, grammar.designated, tuple(kept))


def meaning(words: Sequence[str], grammar: Grammar, tensors: Mapping[str, np.ndarray],
            logic: str = "pregroup", dims: Optional[Mapping[str, int]] = None) -> np.ndarray:
    """Vector of a sentence: its parse compiled and run on the words' tensors."""
    if logic not in LOGICS:
        raise ValueError(f"unknown logic {logic!r}")
    _, plan, inputs = compile_sentence(list(words), grammar, tensors, logic, dims)
    return execute(plan, inputs)


# --------------------------------------------------------------------------
# Names of maps
# --------------------------------------------------------------------------

def name_tensor(m, dom_shape: Optional[Sequence[int]] = None,
                cod_shape: Optional[Sequence[int]] = None, side: str = "left") -> np.ndarray:
    """
    The tensor representing the linear map ``m`` (a matrix from Q(a) to Q(b)).

    The left name lives in ``a -o b`` with the axes of ``a`` first; the right
    name lives in ``b o- a`` with the axes of ``b`` first. Evaluating either
    against a vector ``v`` gives ``m @ v``.

    >>> name_tensor([[0, 1], [1, 0]])
    array([[0., 1.],
           [1., 0.]])
    """
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise ShapeError("a map is given as a matrix")
    dom_shape = (m.shape[1],) if dom_shape is None else tuple(dom_shape)
    cod_shape = (m.shape[0],) if cod_shape is None else tuple(cod_shape)
    if (int(np.prod(dom_shape)), int(np.prod(cod_shape))) != (m.shape[1], m.shape[0]):
        raise ShapeError(f"matrix {m.shape} does not map {dom_shape} to {cod_shape}")
    if side == "left":
        return m.T.reshape(dom_shape + cod_shape)
    if side == "right":
        return m.reshape(cod_shape + dom_shape)
    raise ValueError("side is 'left' or 'right'")


def compact_modifier_tensor(m, n: int) -> np.ndarray:
    """
    Word tensor for a verb-phrase modifier of type ``(n -o s) o- (sigma -o j)``
    that acts with ``m`` on the sentence space and passes the subject through.

    Axes follow the factors ``n^r . s . s^l . n``: ``T[e, f, g, h] =
    [e == h] * m[f, g]``. With ``m`` the identity this is ``do``; with the
    swap it is ``not``.
    """
    m = np.asarray(m, dtype=np.float64)
    return np.einsum("eh,fg->efgh", np.eye(n), m)
