import itertools
import random
from fractions import Fraction

import pytest

from lipfree.lp import LinearProgram, max_slack, recording, solve, verify_outcome


def solve_square(rows, rhs):
    """Gauss-Jordan over Fractions; None when singular."""
    n = len(rows)
    m = [list(map(Fraction, r)) + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[c])]
    return [m[i][n] / m[i][i] for i in range(n)]


def vertex_oracle(A, b, c):
    """max c.x over {A x <= b} by enumerating every basis; None if empty."""
    n = len(c)
    best = None
    for idx in itertools.combinations(range(len(A)), n):
        x = solve_square([A[i] for i in idx], [b[i] for i in idx])
        if x is None:
            continue
        if all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(A, b)):
            val = sum(ci * xi for ci, xi in zip(c, x))
            best = val if best is None else max(best, val)
    return best


def to_lp(A, b, c):
    lp = LinearProgram(len(c), {j: v for j, v in enumerate(c) if v})
    for row, bi in zip(A, b):
        lp.add({j: v for j, v in enumerate(row) if v}, "<=", bi)
    return lp


def test_trivial_optimum():
    lp = LinearProgram(1, {0: 1})
    lp.add({0: 1}, "<=", 1)
    out = solve(lp)
    assert out.status == "optimal" and out.value == 1 and out.x == [1]
    assert verify_outcome(lp, out) == []


def test_infeasible_with_farkas_certificate():
    lp = LinearProgram(1, {0: 1})
    lp.add({0: 1}, "<=", 1)
    lp.add({0: -1}, "<=", -2)
    out = solve(lp)
    assert out.status == "infeasible"
    y = out.farkas
    assert all(v >= 0 for v in y)
    # the combination of rows cancels x and leaves 0 <= negative
    assert y[0] * 1 + y[1] * -1 == 0
    assert y[0] * 1 + y[1] * -2 < 0
    assert verify_outcome(lp, out) == []


def test_unbounded_ray():
    lp = LinearProgram(2, {0: 1, 1: 1})
    lp.add({0: 1, 1: -1}, "<=", 1)
    out = solve(lp)
    assert out.status == "unbounded"
    assert verify_outcome(lp, out) == []


def test_equality_rows_and_bounds():
    lp = LinearProgram(2, {0: 3, 1: 2}, bounds=[(0, None), (0, None)])
    lp.add({0: 1, 1: 1}, "==", 4)
    lp.add({0: 1, 1: 3}, ">=", 6)
    out = solve(lp)
    # x + y = 4, x + 3y >= 6 -> y >= 1, maximize 3x + 2y = 12 - y -> y = 1
    assert out.value == 11 and out.x == [3, 1]
    assert verify_outcome(lp, out) == []


@pytest.mark.parametrize("seed", range(40))
def test_random_bounded_lp_matches_vertex_enumeration(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    A, b = [], []
    for j in range(n):  # box keeps the region bounded
        e = [0] * n
        e[j] = 1
        A += [e, [-v for v in e]]
        b += [rng.randint(1, 6), rng.randint(1, 6)]
    for _ in range(rng.randint(0, 4)):
        A.append([rng.randint(-3, 3) for _ in range(n)])
        b.append(Fraction(rng.randint(-4, 8), rng.randint(1, 3)))
    c = [rng.randint(-4, 4) for _ in range(n)]
    expected = vertex_oracle(A, b, c)
    lp = to_lp(A, b, c)
    for method in ("simplex", "crossover"):
        out = solve(lp, method=method)
        if expected is None:
            assert out.status == "infeasible"
        else:
            assert out.status == "optimal" and out.value == expected
        assert verify_outcome(lp, out) == []


def test_float_mode_tracks_exact():
    rng = random.Random(3)
    for _ in range(10):
        A = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(5)] + [[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, 0, 0], [0, -1, 0], [0, 0, -1]]
        b = [rng.randint(1, 5) for _ in range(5)] + [4] * 6
        c = [rng.randint(-3, 3) for _ in range(3)]
        lp = to_lp(A, b, c)
        ex, fl = solve(lp), solve(lp, mode="float")
        assert abs(float(ex.value) - fl.value) <= 1e-9


def test_degenerate_cycling_example_terminates():
    # Beale's example, which cycles under the textbook rule without an anti-cycling guard
    lp = LinearProgram(4, {0: Fraction(3, 4), 1: -150, 2: Fraction(1, 50), 3: -6}, bounds=[(0, None)] * 4)
    lp.add({0: Fraction(1, 4), 1: -60, 2: Fraction(-1, 25), 3: 9}, "<=", 0)
    lp.add({0: Fraction(1, 2), 1: -90, 2: Fraction(-1, 50), 3: 3}, "<=", 0)
    lp.add({2: 1}, "<=", 1)
    out = solve(lp, method="simplex")
    assert out.status == "optimal" and out.value == Fraction(1, 20)
    assert verify_outcome(lp, out) == []


def test_solve_is_deterministic():
    lp = LinearProgram(2, {0: 1, 1: 1})
    lp.add({0: 1}, "<=", 1)
    lp.add({1: 1}, "<=", 1)
    lp.add({0: 1, 1: 1}, "<=", 2)
    a, b = solve(lp), solve(lp)
    assert (a.value, a.x, a.duals) == (b.value, b.x, b.duals)


def test_verifier_rejects_tampered_outcome():
    lp = LinearProgram(1, {0: 1})
    lp.add({0: 1}, "<=", 1)
    out = solve(lp)
    out.value = Fraction(2)
    assert verify_outcome(lp, out)


def test_max_slack_normalization():
    lp = LinearProgram(1, bounds=[(0, None)])
    row = lp.add({0: 1}, "<=", 1)
    res = max_slack(lp, [row])
    # uniform tightening x <= 1 - t with t capped at 1
    assert res.slack == 1 and res.point == [0]
    assert res.point[0] < 1 and res.satisfiable


def test_max_slack_contradiction():
    lp = LinearProgram(1)
    r1 = lp.add({0: 1}, "<=", 0)
    r2 = lp.add({0: -1}, "<=", 0)
    res = max_slack(lp, [r1, r2])
    assert res.slack <= 0 and not res.satisfiable


def test_max_slack_infeasible_base_system():
    lp = LinearProgram(1)
    lp.add({0: 1}, "<=", 0)
    lp.add({0: -1}, "<=", -1)
    r = lp.add({0: 1}, "<=", 5)
    res = max_slack(lp, [r])
    assert res.slack is None and not res.satisfiable


def test_recording_collects_exact_solves():
    lp = LinearProgram(1, {0: 1})
    lp.add({0: 1}, "<=", 1)
    with recording() as log:
        solve(lp)
        solve(lp, mode="float")
    assert len(log) == 1 and log[0][1].value == 1
