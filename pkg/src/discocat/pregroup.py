"""
Pregroup reduction by planar contraction.

A string of simple types reduces to a basic type ``t`` when all factors but
one occurrence of ``t`` can be cancelled by non-crossing cups, each joining
``x`` with ``x^r`` or ``x^l`` with ``x``. Expansions are never needed to reach
a simple type, so only contractions are searched.

Nothing may sit under a cup without being cancelled, so a reduction splits
the string into two fully cancelled halves around the surviving factor.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache
from itertools import islice
from typing import Iterator, Optional, Sequence

from .types import SimpleType

__all__ = ["Reduction", "contracts", "reduce", "enumerate_reductions",
           "is_valid_reduction", "link_levels"]


def contracts(left: SimpleType, right: SimpleType) -> bool:
    """``left . right <= 1``: same base and ``right`` one adjoint step to the right."""
    return left.base == right.base and right.z == left.z + 1


@dataclass(frozen=True)
class Reduction:
    input: tuple
    links: tuple
    residual_indices: tuple

    @property
    def residual(self) -> tuple:
        return tuple(self.input[i] for i in self.residual_indices)

    @property
    def span(self) -> int:
        return sum(j - i for i, j in self.links)

    def to_dict(self) -> dict:
        return {"types": [str(t) for t in self.input],
                "links": [list(l) for l in self.links],
                "residual": list(self.residual_indices)}


def is_valid_reduction(r: Reduction) -> bool:
    """Link-by-link soundness check: disjoint, planar, contracting, uncovered residue."""
    used = set()
    for i, j in r.links:
        if not (0 <= i < j < len(r.input)) or i in used or j in used:
            return False
        used |= {i, j}
        if not contracts(r.input[i], r.input[j]):
            return False
    for (i, j) in r.links:
        for (k, l) in r.links:
            if i < k < j < l:
                return False
    residue = [k for k in range(len(r.input)) if k not in used]
    if residue != list(r.residual_indices):
        return False
    return not any(i < k < j for k in residue for i, j in r.links)


def link_levels(links: Sequence) -> dict:
    """Reduction step of each link: 1 for innermost cups, 1 + deepest nested link otherwise."""
    levels = {}
    for i, j in sorted(links, key=lambda l: l[1] - l[0]):
        inner = [levels[l] for l in levels if i < l[0] and l[1] < j]
        levels[(i, j)] = 1 + max(inner, default=0)
    return levels


class _Table:
    """Memoised well-nested perfect matchings of sub-intervals ``[i, j)``."""

    def __init__(self, types: Sequence[SimpleType]):
        self.types = tuple(types)
        self.best = lru_cache(maxsize=None)(self._best)

    def _best(self, i: int, j: int):
        """``(span, links)`` of the minimal-span matching of ``[i, j)``, or None."""
        if i == j:
            return (0, ())
        if (j - i) % 2:
            return None
        found = None
        for m in range(i + 1, j, 2):
            if not contracts(self.types[i], self.types[m]):
                continue
            inner, outer = self.best(i + 1, m), self.best(m + 1, j)
            if inner is None or outer is None:
                continue
            cand = (m - i + inner[0] + outer[0], ((i, m),) + inner[1] + outer[1])
            if found is None or cand < found:
                found = cand
        return found

    def all(self, i: int, j: int) -> Iterator[tuple]:
        """Every matching of ``[i, j)`` as a sorted link tuple, in lexicographic order."""
        if i == j:
            yield ()
            return
        if (j - i) % 2:
            return
        for m in range(i + 1, j, 2):
            if not contracts(self.types[i], self.types[m]):
                continue
            if self.best(i + 1, m) is None or self.best(m + 1, j) is None:
                continue
            for inner in self.all(i + 1, m):
                for outer in self.all(m + 1, j):
                    yield ((i, m),) + inner + outer


def _target(target) -> SimpleType:
    return target if isinstance(target, SimpleType) else SimpleType(str(target))


def reduce(types: Sequence[SimpleType], target) -> Optional[Reduction]:
    """
    A reduction of ``types`` to ``target`` or None.

    Among several reductions the one with least total link span wins, ties
    going to the lexicographically smallest sorted link list.
    """
    types, goal = tuple(types), _target(target)
    table = _Table(types)
    best = None
    for k, t in enumerate(types):
        if t != goal:
            continue
        left, right = table.best(0, k), table.best(k + 1, len(types))
        if left is None or right is None:
            continue
        cand = (left[0] + right[0], left[1] + right[1], k)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return Reduction(types, best[1], (best[2],))


def enumerate_reductions(types: Sequence[SimpleType], target, limit: int = 100) -> list:
    """Up to ``limit`` distinct reductions, ordered by their sorted link lists."""
    if limit < 1:
        raise ValueError("limit must be at least 1")
    types, goal = tuple(types), _target(target)
    table = _Table(types)

    def split_at(k):
        for left in table.all(0, k):
            for right in table.all(k + 1, len(types)):
                yield left + right, k

    streams = [split_at(k) for k, t in enumerate(types) if t == goal
               and table.best(0, k) is not None
               and table.best(k + 1, len(types)) is not None]
    merged = heapq.merge(*streams)
    return [Reduction(types, links, (k,)) for links, k in islice(merged, limit)]
