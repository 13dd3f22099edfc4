"""Exact rational linear algebra and a certified LP solver.

Everything here works over `fractions.Fraction`; no floats are ever
produced.  The simplex implementation returns machine-checkable
certificates for all three outcomes:

* ``Optimal``     -- primal solution plus dual multipliers (checked via
  feasibility, dual feasibility and complementary slackness),
* ``Infeasible``  -- a Farkas vector ``y`` with ``y^T A <= 0`` and
  ``y^T b > 0``,
* ``Unbounded``   -- a feasible point plus an improving ray.

``verify_certificate`` re-checks any outcome against the problem data
from scratch, using nothing from the solver's internals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .errors import FormatError, ShapeMismatch

F0 = Fraction(0)
F1 = Fraction(1)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (integers, optional sign) into a Fraction."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise FormatError(f"expected rational string, got {type(text).__name__}")
    try:
        if "/" in text:
            num, den = text.split("/")
            return Fraction(int(num), int(den))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational literal {text!r}") from exc


def format_rational(value: Fraction) -> str:
    """Canonical string form: ``"p"`` for integers, else ``"p/q"`` reduced."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _as_fraction_rows(rows) -> tuple:
    out = []
    width = None
    for row in rows:
        frow = tuple(Fraction(v) for v in row)
        if width is None:
            width = len(frow)
        elif len(frow) != width:
            raise ShapeMismatch("ragged rows")
        out.append(frow)
    return tuple(out)


@dataclass(frozen=True)
class Matrix:
    """Immutable rational matrix (tuple-of-tuples storage)."""

    rows: tuple

    def __init__(self, rows):
        object.__setattr__(self, "rows", _as_fraction_rows(rows))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, key):
        i, j = key
        return self.rows[i][j]

    def row(self, i) -> tuple:
        return self.rows[i]

    def col(self, j) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows)) if self.rows else Matrix(())

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ShapeMismatch(
                f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}"
            )
        cols = other.transpose().rows
        return Matrix(
            tuple(sum((a * b for a, b in zip(r, c)), F0) for c in cols) for r in self.rows
        )

    def apply(self, vec: Sequence[Fraction]) -> list:
        """Matrix-vector product as a plain list."""
        if self.rows and len(vec) != self.ncols:
            raise ShapeMismatch("vector length does not match column count")
        return [sum((a * v for a, v in zip(r, vec)), F0) for r in self.rows]

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(tuple(F1 if i == j else F0 for j in range(n)) for i in range(n))

    def to_lists(self) -> list:
        return [list(r) for r in self.rows]


def rank(mat: Matrix) -> int:
    """Rank via fraction-free (Bareiss) elimination on a denominator-cleared copy."""
    if not mat.rows or mat.ncols == 0:
        return 0
    # row-wise clearing of denominators keeps every later pivot an integer
    work = []
    for row in mat.rows:
        scale = lcm(*(v.denominator for v in row)) if row else 1
        work.append([int(v * scale) for v in row])
    nr, nc = len(work), len(work[0])
    prev = 1
    r = 0
    for c in range(nc):
        pivot_row = next((i for i in range(r, nr) if work[i][c] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        piv = work[r][c]
        for i in range(r + 1, nr):
            for j in range(c + 1, nc):
                work[i][j] = (piv * work[i][j] - work[i][c] * work[r][j]) // prev
            work[i][c] = 0
        prev = piv
        r += 1
        if r == nr:
            break
    return r


# --------------------------------------------------------------------------
# Linear programming
# --------------------------------------------------------------------------

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"


@dataclass
class LpProblem:
    """Standard-form LP: minimize c.v subject to A v = b, v >= 0.

    ``var_names`` labels the standard-form columns; user-facing variables
    created through :class:`LpBuilder` record how they map onto columns
    (plain column index, or a +/- split pair for free variables).
    """

    c: list
    a_rows: list
    b: list
    var_names: list = field(default_factory=list)
    user_vars: dict = field(default_factory=dict)

    @property
    def nrows(self) -> int:
        return len(self.a_rows)

    @property
    def ncols(self) -> int:
        return len(self.c)

    def extract(self, primal: Sequence[Fraction]) -> dict:
        """Map a standard-form primal vector back to user variables."""
        out = {}
        for name, spec in self.user_vars.items():
            if spec[0] == "nonneg":
                out[name] = primal[spec[1]]
            else:  # free variable stored as a difference of two columns
                out[name] = primal[spec[1]] - primal[spec[2]]
        return out


@dataclass
class LpOutcome:
    status: str
    primal: Optional[list] = None
    dual: Optional[list] = None
    farkas: Optional[list] = None
    ray: Optional[list] = None

    @property
    def objective(self):
        return self._objective

    def __post_init__(self):
        self._objective = None


class LpBuilder:
    """Incremental construction of a standard-form LP.

    Inequalities get slack columns, free variables get split into a
    difference of two nonnegative columns; the bookkeeping needed to map
    solutions back lands in ``LpProblem.user_vars``.
    """

    def __init__(self):
        self._names = []
        self._user = {}
        self._rows = []
        self._rhs = []
        self._objective = {}

    def _new_col(self, name: str) -> int:
        self._names.append(name)
        return len(self._names) - 1

    def nonneg(self, name: str) -> str:
        if name in self._user:
            raise FormatError(f"duplicate variable {name!r}")
        self._user[name] = ("nonneg", self._new_col(name))
        return name

    def free(self, name: str) -> str:
        if name in self._user:
            raise FormatError(f"duplicate variable {name!r}")
        pos = self._new_col(name + "+")
        neg = self._new_col(name + "-")
        self._user[name] = ("free", pos, neg)
        return name

    def _expand(self, coeffs: dict) -> dict:
        cols = {}
        for name, coeff in coeffs.items():
            coeff = Fraction(coeff)
            spec = self._user[name]
            if spec[0] == "nonneg":
                cols[spec[1]] = cols.get(spec[1], F0) + coeff
            else:
                cols[spec[1]] = cols.get(spec[1], F0) + coeff
                cols[spec[2]] = cols.get(spec[2], F0) - coeff
        return cols

    def add_eq(self, coeffs: dict, rhs) -> None:
        self._rows.append(self._expand(coeffs))
        self._rhs.append(Fraction(rhs))

    def add_le(self, coeffs: dict, rhs) -> None:
        cols = self._expand(coeffs)
        slack = self._new_col(f"_slack{len(self._rows)}")
        cols[slack] = F1
        self._rows.append(cols)
        self._rhs.append(Fraction(rhs))

    def add_ge(self, coeffs: dict, rhs) -> None:
        cols = self._expand(coeffs)
        surplus = self._new_col(f"_surplus{len(self._rows)}")
        cols[surplus] = -F1
        self._rows.append(cols)
        self._rhs.append(Fraction(rhs))

    def minimize(self, coeffs: dict) -> None:
        self._objective = self._expand(coeffs)

    def build(self) -> LpProblem:
        n = len(self._names)
        c = [self._objective.get(j, F0) for j in range(n)]
        a_rows = [[row.get(j, F0) for j in range(n)] for row in self._rows]
        return LpProblem(c=c, a_rows=a_rows, b=list(self._rhs),
                         var_names=list(self._names), user_vars=dict(self._user))


def _pivot(tableau, costrow, basis, r, col):
    piv = tableau[r][col]
    inv = F1 / piv
    tableau[r] = [v * inv for v in tableau[r]]
    prow = tableau[r]
    for i, row in enumerate(tableau):
        if i != r and row[col] != 0:
            f = row[col]
            tableau[i] = [v - f * p for v, p in zip(row, prow)]
    if costrow[col] != 0:
        f = costrow[col]
        for j in range(len(costrow)):
            costrow[j] -= f * prow[j]
    basis[r] = col


def _bland_step(tableau, costrow, basis, allowed_cols):
    """One Bland-rule pivot.  Returns 'optimal', 'pivoted', or the entering
    column index when the problem is unbounded in that direction."""
    enter = next((j for j in allowed_cols if costrow[j] < 0), None)
    if enter is None:
        return "optimal", None
    best = None
    for i, row in enumerate(tableau):
        a = row[enter]
        if a > 0:
            ratio = row[-1] / a
            if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                best = (ratio, i)
    if best is None:
        return "unbounded", enter
    _pivot(tableau, costrow, basis, best[1], enter)
    return "pivoted", None


def lp_solve(problem: LpProblem) -> LpOutcome:
    """Two-phase simplex with Bland's anti-cycling rule, fully exact."""
    m, n = problem.nrows, problem.ncols
    signs = []
    tableau = []
    for i in range(m):
        row = [Fraction(v) for v in problem.a_rows[i]]
        rhs = Fraction(problem.b[i])
        if rhs < 0:  # flip so artificial start is feasible; remember for duals
            row = [-v for v in row]
            rhs = -rhs
            signs.append(-1)
        else:
            signs.append(1)
        art = [F1 if k == i else F0 for k in range(m)]
        tableau.append(row + art + [rhs])
    basis = [n + i for i in range(m)]

    # phase 1: minimize the sum of artificials; price the cost row out
    width = n + m + 1
    costrow = [F0] * width
    for j in range(n, n + m):
        costrow[j] = F1
    for row in tableau:
        costrow = [cv - rv for cv, rv in zip(costrow, row)]

    allowed = range(n + m)
    while True:
        state, _ = _bland_step(tableau, costrow, basis, allowed)
        if state == "optimal":
            break

    if -costrow[-1] > 0:  # residual infeasibility; costrow[-1] holds -objective
        y_flip = [F1 - costrow[n + i] for i in range(m)]
        farkas = [s * y for s, y in zip(signs, y_flip)]
        return LpOutcome(status=INFEASIBLE, farkas=farkas)

    # drive leftover artificials out of the basis where possible
    for r in range(m):
        if basis[r] >= n:
            col = next((j for j in range(n) if tableau[r][j] != 0), None)
            if col is not None:
                _pivot(tableau, costrow, basis, r, col)
            # else: redundant 0 = 0 row; inert from here on

    # phase 2: original objective, artificial columns barred from entering
    costrow = [F0] * width
    for j in range(n):
        costrow[j] = Fraction(problem.c[j])
    for r, row in enumerate(tableau):
        cb = problem.c[basis[r]] if basis[r] < n else F0
        if cb != 0:
            costrow = [cv - cb * rv for cv, rv in zip(costrow, row)]

    allowed = range(n)
    while True:
        state, enter = _bland_step(tableau, costrow, basis, allowed)
        if state == "optimal":
            break
        if state == "unbounded":
            primal = [F0] * n
            for r in range(m):
                if basis[r] < n:
                    primal[basis[r]] = tableau[r][-1]
            ray = [F0] * n
            ray[enter] = F1
            for r in range(m):
                if basis[r] < n:
                    ray[basis[r]] = -tableau[r][enter]
            return LpOutcome(status=UNBOUNDED, primal=primal, ray=ray)

    primal = [F0] * n
    for r in range(m):
        if basis[r] < n:
            primal[basis[r]] = tableau[r][-1]
    y_flip = [
        sum(
            (Fraction(problem.c[basis[r]]) * tableau[r][n + i]
             for r in range(m) if basis[r] < n),
            F0,
        )
        for i in range(m)
    ]
    dual = [s * y for s, y in zip(signs, y_flip)]
    out = LpOutcome(status=OPTIMAL, primal=primal, dual=dual)
    out._objective = sum((ci * vi for ci, vi in zip(problem.c, primal)), F0)
    return out


def verify_certificate(problem: LpProblem, outcome: LpOutcome) -> bool:
    """Re-derive the claimed outcome from first principles.

    No solver state is trusted: every check is a direct substitution into
    the problem data.
    """
    m, n = problem.nrows, problem.ncols
    a = problem.a_rows
    b = problem.b
    c = problem.c

    def primal_feasible(x):
        if x is None or len(x) != n or any(v < 0 for v in x):
            return False
        return all(
            sum((aij * xj for aij, xj in zip(a[i], x)), F0) == b[i] for i in range(m)
        )

    if outcome.status == OPTIMAL:
        x, y = outcome.primal, outcome.dual
        if not primal_feasible(x) or y is None or len(y) != m:
            return False
        # reduced costs nonnegative, and zero wherever x is positive
        for j in range(n):
            red = c[j] - sum((y[i] * a[i][j] for i in range(m)), F0)
            if red < 0 or (x[j] > 0 and red != 0):
                return False
        return True

    if outcome.status == INFEASIBLE:
        y = outcome.farkas
        if y is None or len(y) != m:
            return False
        for j in range(n):
            if sum((y[i] * a[i][j] for i in range(m)), F0) > 0:
                return False
        return sum((y[i] * b[i] for i in range(m)), F0) > 0

    if outcome.status == UNBOUNDED:
        x, d = outcome.primal, outcome.ray
        if not primal_feasible(x) or d is None or len(d) != n:
            return False
        if any(v < 0 for v in d):
            return False
        if any(sum((a[i][j] * d[j] for j in range(n)), F0) != 0 for i in range(m)):
            return False
        return sum((c[j] * d[j] for j in range(n)), F0) < 0

    return False
