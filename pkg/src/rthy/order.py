"""Finite preorders and their set-lifted orders.

Relations are stored as dense bitmasks: ``above[i]`` has bit ``j`` set
when ``i`` dominates ``j``.  Carriers are small throughout, so we trade
memory for O(1) closure queries.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable

from .errors import FormatError, IndexOutOfRange, NotReflexiveTransitive


def _check_indices(size: int, subset: Iterable[int]) -> frozenset:
    out = frozenset(subset)
    for i in out:
        if not (0 <= i < size):
            raise IndexOutOfRange(f"element {i} outside carrier of size {size}")
    return out


@dataclass(frozen=True)
class FinitePreorder:
    """Reflexive transitive relation on {0, ..., size-1}.

    The constructor demands reflexive input (a missing loop is almost
    always a modeling bug) and then takes the transitive closure of the
    given pairs.
    """

    size: int
    above: tuple = field(compare=True)  # above[i] bit j set  <=>  i >= j

    def __init__(self, size: int, pairs: Iterable[tuple]):
        adj = [1 << i for i in range(size)]
        seen_loop = [False] * size
        for a, b in pairs:
            if not (0 <= a < size and 0 <= b < size):
                raise IndexOutOfRange(f"pair ({a},{b}) outside carrier of size {size}")
            if a == b:
                seen_loop[a] = True
            adj[a] |= 1 << b
        if size and not all(seen_loop):
            missing = seen_loop.index(False)
            raise NotReflexiveTransitive(f"relation not reflexive at element {missing}")
        # Warshall closure over bitmasks
        for k in range(size):
            kbit = 1 << k
            row_k = adj[k]
            for i in range(size):
                if adj[i] & kbit:
                    adj[i] |= row_k
        object.__setattr__(self, "size", size)
        object.__setattr__(self, "above", tuple(adj))

    def geq(self, a: int, b: int) -> bool:
        """a dominates b."""
        if not (0 <= a < self.size and 0 <= b < self.size):
            raise IndexOutOfRange(f"({a},{b}) outside carrier")
        return bool(self.above[a] & (1 << b))

    def pairs(self) -> list:
        return [
            (i, j)
            for i in range(self.size)
            for j in range(self.size)
            if self.above[i] & (1 << j)
        ]

    # -- JSON -------------------------------------------------------------

    @staticmethod
    def from_json(doc) -> "FinitePreorder":
        if isinstance(doc, str):
            doc = json.loads(doc)
        try:
            size = int(doc["size"])
            raw = doc.get("pairs", [])
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError("preorder JSON needs {'size': n, 'pairs': [[i,j],...]}") from exc
        pairs = [(int(a), int(b)) for a, b in raw]
        pairs.extend((i, i) for i in range(size))
        return FinitePreorder(size, pairs)

    def to_json(self) -> dict:
        return {"size": self.size, "pairs": [[a, b] for a, b in self.pairs()]}


def _to_mask(p: FinitePreorder, subset) -> int:
    if isinstance(subset, int):
        return subset
    mask = 0
    for i in _check_indices(p.size, subset):
        mask |= 1 << i
    return mask


def _to_set(mask: int) -> FrozenSet[int]:
    out = set()
    i = 0
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def down_closure(p: FinitePreorder, subset) -> FrozenSet[int]:
    """Everything dominated by some member of ``subset``."""
    mask = _to_mask(p, subset)
    out = 0
    for i in range(p.size):
        if mask & (1 << i):
            out |= p.above[i]
    return _to_set(out)


def up_closure(p: FinitePreorder, subset) -> FrozenSet[int]:
    """Everything dominating some member of ``subset``."""
    mask = _to_mask(p, subset)
    out = 0
    for i in range(p.size):
        if p.above[i] & mask:
            out |= 1 << i
    return _to_set(out)


def enhancement_geq(p: FinitePreorder, y, z) -> bool:
    """Set order where Y beats Z iff each member of Z is dominated from Y.

    Decided via inclusion of downward closures; the empty set is bottom.
    """
    return down_closure(p, y) >= down_closure(p, z)


def degradation_geq(p: FinitePreorder, y, z) -> bool:
    """Set order where Y beats Z iff Y survives a dominance-decreasing map into Z.

    Decided via inclusion of upward closures; the empty set is top.
    """
    return up_closure(p, y) <= up_closure(p, z)


# spec-facing aliases: the *_leq names read as "is the relation <first arg
# dominates second arg> true", matching the operation contracts
enhancement_leq = enhancement_geq
degradation_leq = degradation_geq


def downsets_fixed(p: FinitePreorder, subset) -> bool:
    """True when ``subset`` is already downward closed."""
    s = _check_indices(p.size, subset) if not isinstance(subset, int) else _to_set(subset)
    return down_closure(p, s) == s


def all_downsets(p: FinitePreorder) -> list:
    """Every downward closed subset, as frozensets (exponential; small carriers only)."""
    out = []
    for mask in range(1 << p.size):
        s = _to_set(mask)
        if down_closure(p, s) == s:
            out.append(s)
    return out


def chain(n: int) -> FinitePreorder:
    """Total order n-1 >= ... >= 1 >= 0."""
    pairs = [(i, i) for i in range(n)] + [(i + 1, i) for i in range(n - 1)]
    return FinitePreorder(n, pairs)


def discrete(n: int) -> FinitePreorder:
    return FinitePreorder(n, [(i, i) for i in range(n)])
