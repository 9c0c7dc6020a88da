import random

import pytest

from planecurves.linalg import solve_linear

from .helpers import F7, QQ


def q(*vals):
    return [QQ.scalar(v) for v in vals]


class TestRational:
    def test_unique_solution(self):
        rows = [q(2, 1), q(1, -1)]
        sol = solve_linear(rows, q(5, 1), QQ)
        assert sol == q(2, 1)

    def test_fractions_stay_exact(self):
        rows = [q(3)]
        (x,) = solve_linear(rows, q(1), QQ)
        assert x == QQ.scalar(1) / QQ.scalar(3)

    def test_inconsistent_returns_none(self):
        rows = [q(1, 1), q(2, 2)]
        assert solve_linear(rows, q(1, 3), QQ) is None

    def test_free_variables_default_to_zero(self):
        rows = [q(1, 1)]
        sol = solve_linear(rows, q(4), QQ)
        assert sol == q(4, 0)

    def test_free_values_pin_chosen_columns(self):
        rows = [q(1, 1)]
        sol = solve_linear(rows, q(4), QQ, free_values={1: QQ.scalar(1)})
        assert sol == q(3, 1)

    def test_pivoting_handles_a_zero_corner(self):
        rows = [q(0, 1), q(1, 0)]
        assert solve_linear(rows, q(7, -2), QQ) == q(-2, 7)

    def test_wide_system(self):
        rows = [q(1, 2, 3), q(0, 1, 1)]
        x = solve_linear(rows, q(6, 2), QQ)
        assert [sum(a * b for a, b in zip(row, x)) for row in rows] == q(6, 2)

    def test_ragged_matrix_rejected(self):
        with pytest.raises(ValueError):
            solve_linear([q(1, 2), q(1)], q(0, 0), QQ)
        with pytest.raises(ValueError):
            solve_linear([q(1)], q(1, 2), QQ)


class TestFinite:
    def f(self, *vals):
        return [F7.scalar(v) for v in vals]

    def test_unique_solution_mod_7(self):
        rows = [self.f(2, 1), self.f(1, 6)]
        x = solve_linear(rows, self.f(0, 0), F7)
        assert all(v.is_zero() for v in x)
        rows = [self.f(3, 0), self.f(0, 5)]
        x = solve_linear(rows, self.f(1, 1), F7)
        assert x[0] * F7.scalar(3) == F7.one()
        assert x[1] * F7.scalar(5) == F7.one()

    def test_inconsistent_mod_7(self):
        rows = [self.f(1, 1), self.f(2, 2)]
        assert solve_linear(rows, self.f(1, 1), F7) is None

    def test_free_values_mod_7(self):
        rows = [self.f(1, 1)]
        sol = solve_linear(rows, self.f(3), F7, free_values={1: F7.scalar(2)})
        assert sol == self.f(1, 2)


def test_random_consistent_systems_are_solved():
    rng = random.Random(20260818)
    for _ in range(25):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        rows = [q(*[rng.randint(-9, 9) for _ in range(n)]) for _ in range(m)]
        x0 = q(*[rng.randint(-9, 9) for _ in range(n)])
        rhs = [sum((a * b for a, b in zip(row, x0)), QQ.zero()) for row in rows]
        x = solve_linear(rows, rhs, QQ)
        assert x is not None
        # any solution is fine, as long as it solves the system
        for row, b in zip(rows, rhs):
            assert sum((a * v for a, v in zip(row, x)), QQ.zero()) == b
