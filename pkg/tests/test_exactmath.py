"""Exact rationals, matrices, and the certified simplex.

The LP oracle here is deliberately independent of the solver: basic
solutions are enumerated by brute force with a tiny Gaussian solver, so
optimal values are cross-checked against vertex enumeration and
infeasibility against the absence of any basic feasible point.
"""

import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from rthy import (
    FormatError,
    INFEASIBLE,
    LpBuilder,
    LpOutcome,
    LpProblem,
    Matrix,
    OPTIMAL,
    UNBOUNDED,
    format_rational,
    lp_solve,
    parse_rational,
    rank,
    verify_certificate,
)

F = Fraction


def test_parse_rational_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-7") == F(-7)
    assert parse_rational("  2/6 ") == F(1, 3)
    assert parse_rational(5) == F(5)
    with pytest.raises(FormatError):
        parse_rational("1/0")
    with pytest.raises(FormatError):
        parse_rational("0.5x")


@given(st.fractions(max_denominator=50))
def test_rational_roundtrip(q):
    assert parse_rational(format_rational(q)) == q


def test_format_is_canonical():
    assert format_rational(F(2, 4)) == "1/2"
    assert format_rational(F(-8, 2)) == "-4"
    assert format_rational(F(0)) == "0"


def test_matrix_basics():
    a = Matrix([[F(1), F(2)], [F(0), F(1)]])
    assert (a @ Matrix.identity(2)).rows == a.rows
    assert a.transpose().transpose().rows == a.rows
    assert list(a.apply([F(1), F(1)])) == [F(3), F(1)]


@given(st.lists(st.lists(st.integers(-5, 5), min_size=1, max_size=4),
                min_size=1, max_size=4).filter(
                    lambda rows: len({len(r) for r in rows}) == 1))
def test_rank_vs_sympy(rows):
    ours = rank(Matrix([[F(v) for v in r] for r in rows]))
    assert ours == sympy.Matrix(rows).rank()


def test_rank_pinned():
    assert rank(Matrix([[F(1), F(2)], [F(2), F(4)]])) == 1
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix([[F(0)]])) == 0


# ---------------------------------------------------------------------------
# simplex: pinned instances
# ---------------------------------------------------------------------------


def test_lp_optimal_pinned():
    b = LpBuilder()
    x = b.nonneg("x")
    y = b.nonneg("y")
    b.add_le({x: F(1), y: F(1)}, F(4))
    b.add_le({x: F(1)}, F(2))
    b.minimize({x: F(-1), y: F(-1)})
    problem = b.build()
    out = lp_solve(problem)
    assert out.status == OPTIMAL
    assert verify_certificate(problem, out)
    sol = problem.extract(out.primal)
    assert sol["x"] + sol["y"] == F(4)


def test_lp_infeasible_pinned():
    b = LpBuilder()
    x = b.nonneg("x")
    b.add_eq({x: F(1)}, F(-1))
    b.minimize({x: F(1)})
    problem = b.build()
    out = lp_solve(problem)
    assert out.status == INFEASIBLE
    assert out.farkas is not None
    assert verify_certificate(problem, out)


def test_lp_unbounded_pinned():
    b = LpBuilder()
    x = b.free("x")
    b.minimize({x: F(1)})
    problem = b.build()
    out = lp_solve(problem)
    assert out.status == UNBOUNDED
    assert verify_certificate(problem, out)


def test_lp_free_variable_split():
    b = LpBuilder()
    x = b.free("x")
    b.add_eq({x: F(1)}, F(-3))
    b.minimize({x: F(1)})
    out = lp_solve(b.build())
    assert out.status == OPTIMAL
    assert b.build().extract(out.primal)["x"] == F(-3)


def test_lp_ge_constraint():
    b = LpBuilder()
    x = b.nonneg("x")
    b.add_ge({x: F(1)}, F(5))
    b.minimize({x: F(1)})
    problem = b.build()
    out = lp_solve(problem)
    assert out.status == OPTIMAL
    assert problem.extract(out.primal)["x"] == F(5)
    assert verify_certificate(problem, out)


def test_verify_rejects_tampered_certificates():
    b = LpBuilder()
    x = b.nonneg("x")
    b.add_eq({x: F(1)}, F(2))
    b.minimize({x: F(1)})
    problem = b.build()
    out = lp_solve(problem)
    bad = LpOutcome(status=OPTIMAL, primal=tuple(v + 1 for v in out.primal),
                    dual=out.dual, farkas=None, ray=None)
    assert not verify_certificate(problem, bad)
    bad_dual = LpOutcome(status=OPTIMAL, primal=out.primal,
                         dual=tuple(v + 1 for v in out.dual), farkas=None, ray=None)
    assert not verify_certificate(problem, bad_dual)


# ---------------------------------------------------------------------------
# simplex: randomized self-certification against vertex enumeration
# ---------------------------------------------------------------------------


def _solve_square(cols, b):
    """Solve sum_j cols[j]*v[j] = b exactly; None if inconsistent or the
    columns are dependent.  Plain Gaussian elimination, no pivoting tricks."""
    m, k = len(b), len(cols)
    aug = [[cols[j][i] for j in range(k)] + [b[i]] for i in range(m)]
    row = 0
    where = [-1] * k
    for col in range(k):
        piv = next((r for r in range(row, m) if aug[r][col] != 0), None)
        if piv is None:
            return None  # dependent columns: not a basis candidate
        aug[row], aug[piv] = aug[piv], aug[row]
        where[col] = row
        inv = F(1) / aug[row][col]
        aug[row] = [v * inv for v in aug[row]]
        for r in range(m):
            if r != row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * p for a, p in zip(aug[r], aug[row])]
        row += 1
    for r in range(row, m):
        if aug[r][k] != 0:
            return None
    return [aug[where[j]][k] for j in range(k)]


def _enumerate_basic_solutions(problem):
    """All basic feasible solutions of Av=b, v>=0 by brute force."""
    m = len(problem.b)
    n = len(problem.c)
    cols = [[problem.a_rows[i][j] for i in range(m)] for j in range(n)]
    found = []
    if all(v == 0 for v in problem.b):
        found.append(tuple([F(0)] * n))
    for size in range(1, m + 1):
        for subset in itertools.combinations(range(n), size):
            sol = _solve_square([cols[j] for j in subset], list(problem.b))
            if sol is None or any(v < 0 for v in sol):
                continue
            full = [F(0)] * n
            for j, v in zip(subset, sol):
                full[j] = v
            found.append(tuple(full))
    return found


def _objective(problem, point):
    return sum((c * v for c, v in zip(problem.c, point)), F(0))


@st.composite
def random_problems(draw):
    m = draw(st.integers(1, 3))
    n = draw(st.integers(1, 5))
    coeff = st.integers(-3, 3)
    a_rows = [tuple(F(draw(coeff)) for _ in range(n)) for _ in range(m)]
    b = tuple(F(draw(coeff)) for _ in range(m))
    c = tuple(F(draw(coeff)) for _ in range(n))
    names = tuple(f"v{j}" for j in range(n))
    return LpProblem(c=list(c), a_rows=[list(r) for r in a_rows], b=list(b), var_names=list(names),
                     user_vars={nm: ("nonneg", j) for j, nm in enumerate(names)})


@settings(max_examples=120)
@given(random_problems())
def test_lp_self_certification(problem):
    out = lp_solve(problem)
    assert verify_certificate(problem, out)
    basics = _enumerate_basic_solutions(problem)
    if out.status == INFEASIBLE:
        assert basics == []
    elif out.status == OPTIMAL:
        assert basics, "optimal LP must have a basic feasible solution"
        assert min(_objective(problem, p) for p in basics) == _objective(problem, out.primal)
    else:
        assert out.status == UNBOUNDED
        assert basics, "unbounded LP is still feasible"


def test_problem_extract_names():
    b = LpBuilder()
    x = b.nonneg("cats")
    y = b.free("dogs")
    b.add_eq({x: F(1), y: F(1)}, F(1))
    b.add_eq({y: F(1)}, F(-2))
    b.minimize({x: F(1)})
    problem = b.build()
    out = lp_solve(problem)
    sol = problem.extract(out.primal)
    assert set(sol) == {"cats", "dogs"}
    assert sol["dogs"] == F(-2) and sol["cats"] == F(3)
