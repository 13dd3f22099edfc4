"""Boolean-semiring shadow of encoding distinguishability.

``ceil`` forgets probabilities and keeps supports; conversion questions
become Boolean matrix equations T (x) x = y, decided by exhaustive
column-wise backtracking (so a negative answer is a proof).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from .errors import FormatError, HypothesisMismatch, SearchTooLarge
from .majorize import Convertible, Encoding, NotConvertible

SEARCH_GUARD = 1 << 24


def _check_bool(matrix, what: str):
    for row in matrix:
        for v in row:
            if v not in (0, 1):
                raise FormatError(f"{what} entries must be 0 or 1")
    ncols = len(matrix[0]) if matrix else 0
    for j in range(ncols):
        if not any(row[j] for row in matrix):
            raise FormatError(f"{what} column {j} is all zero")


@dataclass(frozen=True)
class BoolEncoding:
    matrix: tuple  # outcomes x hypotheses over {0,1}

    def __init__(self, matrix):
        matrix = tuple(tuple(int(v) for v in row) for row in matrix)
        _check_bool(matrix, "boolean encoding")
        object.__setattr__(self, "matrix", matrix)

    @property
    def hypotheses(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def outcomes(self) -> int:
        return len(self.matrix)


@dataclass(frozen=True)
class BoolStochasticMap:
    matrix: tuple  # to x from over {0,1}, every column nonzero

    def __init__(self, matrix):
        matrix = tuple(tuple(int(v) for v in row) for row in matrix)
        _check_bool(matrix, "boolean map")
        object.__setattr__(self, "matrix", matrix)

    @property
    def n_from(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def n_to(self) -> int:
        return len(self.matrix)

    def __call__(self, x: BoolEncoding) -> BoolEncoding:
        if self.n_from != x.outcomes:
            raise FormatError("boolean map/encoding size mismatch")
        out = [[0] * x.hypotheses for _ in range(self.n_to)]
        for i in range(self.n_to):
            for h in range(x.hypotheses):
                out[i][h] = int(any(self.matrix[i][j] and x.matrix[j][h]
                                    for j in range(x.outcomes)))
        return BoolEncoding(out)

    def compose(self, other: "BoolStochasticMap") -> "BoolStochasticMap":
        if self.n_from != other.n_to:
            raise FormatError("boolean map composition size mismatch")
        out = [[int(any(self.matrix[i][k] and other.matrix[k][j]
                        for k in range(self.n_from)))
                for j in range(other.n_from)] for i in range(self.n_to)]
        return BoolStochasticMap(out)


def ceil(x: Encoding) -> BoolEncoding:
    """Support pattern of an encoding (entrywise positive -> 1)."""
    return BoolEncoding(tuple(tuple(1 if v > 0 else 0 for v in x.matrix.row(i))
                              for i in range(x.outcomes)))


def ceil_map(t) -> BoolStochasticMap:
    """Support pattern of a rational stochastic map."""
    return BoolStochasticMap(tuple(tuple(1 if v > 0 else 0 for v in t.matrix.row(i))
                                   for i in range(t.n_to)))


def to_hypergraph(x: BoolEncoding) -> List[frozenset]:
    """One hyperedge per hypothesis: the outcomes it can produce."""
    return [frozenset(i for i in range(x.outcomes) if x.matrix[i][h])
            for h in range(x.hypotheses)]


def bool_majorizes(x: BoolEncoding, y: BoolEncoding):
    """Exhaustive search for a Boolean stochastic T with T (x) x = y.

    Column j of T may only hit rows whose target pattern covers x's row-j
    support; within that, all nonempty choices are tried (lexicographically
    smallest witness first), with a reachability prune on the uncovered
    part.  A NotConvertible verdict is therefore a completed search.
    """
    if x.hypotheses != y.hypotheses:
        raise HypothesisMismatch(
            f"encodings have {x.hypotheses} vs {y.hypotheses} hypotheses")
    h = x.hypotheses
    nx, ny = x.outcomes, y.outcomes
    # supports of x's rows, and y's columns as row masks
    xrow_support = [frozenset(c for c in range(h) if x.matrix[j][c]) for j in range(nx)]
    ycol_mask = [0] * h
    for c in range(h):
        for i in range(ny):
            if y.matrix[i][c]:
                ycol_mask[c] |= 1 << i
    full_rows = (1 << ny) - 1
    allowed = []
    for j in range(nx):
        mask = full_rows
        for c in xrow_support[j]:
            mask &= ycol_mask[c]
        allowed.append(mask)
    if any(a == 0 for a in allowed):
        return NotConvertible()
    space = 1
    for a in allowed:
        space *= (1 << bin(a).count("1")) - 1
        if space > SEARCH_GUARD:
            raise SearchTooLarge(
                f"boolean witness space exceeds {SEARCH_GUARD} candidates")

    # target (i, c) cells to cover, flattened as i*h + c
    target = 0
    for c in range(h):
        for i in range(ny):
            if y.matrix[i][c]:
                target |= 1 << (i * h + c)

    def column_cover(j: int, pick: int) -> int:
        cov = 0
        for i in range(ny):
            if pick & (1 << i):
                for c in xrow_support[j]:
                    cov |= 1 << (i * h + c)
        return cov

    potential = [column_cover(j, allowed[j]) for j in range(nx)]
    potential_suffix = [0] * (nx + 1)
    for j in range(nx - 1, -1, -1):
        potential_suffix[j] = potential_suffix[j + 1] | potential[j]

    choice = [0] * nx

    def search(j: int, covered: int):
        if j == nx:
            return covered == target
        if (covered | potential_suffix[j]) & target != target:
            return False
        for pick in range(1, 1 << ny):  # ascending => lexicographically least witness
            if pick & ~allowed[j]:
                continue
            choice[j] = pick
            if search(j + 1, covered | column_cover(j, pick)):
                return True
        return False

    if not search(0, 0):
        return NotConvertible()
    witness = [[1 if choice[j] & (1 << i) else 0 for j in range(nx)] for i in range(ny)]
    return Convertible(witness=BoolStochasticMap(witness))
