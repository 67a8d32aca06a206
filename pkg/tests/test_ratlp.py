import random
from fractions import Fraction

from chtoucakit.ratlp import INFEASIBLE, OPTIMAL, UNBOUNDED, max_slack, solve_lp


def test_bounded_max():
    res = solve_lp([1, 1], [[1, 0], [0, 1]], [2, 3], maximize=True)
    assert res.status == OPTIMAL
    assert res.value == 5


def test_equality_constraints():
    res = solve_lp([1, 0], None, None, [[1, 1], [1, -1]], [4, 0], maximize=True)
    assert res.status == OPTIMAL
    assert res.x == [Fraction(2), Fraction(2)]


def test_infeasible():
    res = solve_lp([1], [[1], [-1]], [1, -3])
    assert res.status == INFEASIBLE


def test_unbounded():
    res = solve_lp([1], [[-1]], [0], maximize=True)
    assert res.status == UNBOUNDED


def test_free_variables_negative_solution():
    # min x st x >= -7 hits the negative orthant
    res = solve_lp([1], [[-1]], [7])
    assert res.status == OPTIMAL
    assert res.value == -7


def test_max_slack_strict_feasible():
    d, x = max_slack([[1, 0], [0, 1], [-1, -1]], [0, 0, -4])
    assert d > 0
    assert x[0] > 0 and x[1] > 0 and x[0] + x[1] < 4


def test_max_slack_tight_system():
    # x >= 0 and -x >= 0 forces x = 0: no strict solution
    d, _ = max_slack([[1], [-1]], [0, 0])
    assert d == 0


def test_max_slack_no_rows_hits_cap():
    d, _ = max_slack([], [], cap=1)
    assert d == 1


def test_random_against_vertex_enumeration():
    """2-variable LPs checked against brute-force vertex enumeration."""
    rng = random.Random(42)
    for _ in range(60):
        m = rng.randint(2, 5)
        rows = [[Fraction(rng.randint(-4, 4)), Fraction(rng.randint(-4, 4))] for _ in range(m)]
        rhs = [Fraction(rng.randint(-6, 6)) for _ in range(m)]
        # keep feasible region bounded by a box
        rows += [[1, 0], [-1, 0], [0, 1], [0, -1]]
        rhs += [10, 10, 10, 10]
        c = [Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3))]
        res = solve_lp(c, rows, rhs, maximize=True)
        # brute force: all intersection points of constraint pairs
        best = None
        k = len(rows)
        for i in range(k):
            for j in range(i + 1, k):
                det = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]
                if det == 0:
                    continue
                x = (rhs[i] * rows[j][1] - rows[i][1] * rhs[j]) / det
                y = (rows[i][0] * rhs[j] - rhs[i] * rows[j][0]) / det
                if all(rows[t][0] * x + rows[t][1] * y <= rhs[t] for t in range(k)):
                    val = c[0] * x + c[1] * y
                    if best is None or val > best:
                        best = val
        if best is None:
            assert res.status == INFEASIBLE
        else:
            assert res.status == OPTIMAL
            assert res.value == best
