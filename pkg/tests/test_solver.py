"""Solving leading systems over nonzero complex numbers with certification."""

from fractions import Fraction

import pytest

from toricpot import (build_example, leading_equations, solve, solve_partial)


@pytest.fixture(scope="module")
def twoblow():
    return build_example("two_point_blowup", Fraction(2, 5), Fraction(3, 10))


class TestFullSolve:
    def test_cp2_center_cube_roots(self):
        P = build_example("cpn", 2)
        system = leading_equations(P, (Fraction(1, 3), Fraction(1, 3)))
        result = solve(system)
        assert result.certified
        assert len(result.solutions) == 3
        for s in result.solutions:
            for v in s.values.values():
                assert abs(v ** 3 - 1) < 1e-8

    def test_interval_fiber_free_variable(self, twoblow):
        system = leading_equations(twoblow,
                                   (Fraction(13, 40), Fraction(3, 10)))
        result = solve(system)
        assert result.certified
        assert len(result.solutions) == 1
        s = result.solutions[0]
        assert abs(s.values[(1, 1)] + 1) < 1e-9
        assert s.free == {(2, 1)}
        assert s.residual < 1e-9

    def test_certified_empty(self, twoblow):
        # just outside the balanced interval the top level is obstructed
        system = leading_equations(twoblow, (Fraction(2, 5), Fraction(3, 10)))
        result = solve(system)
        assert result.solutions == []
        assert result.certified

    def test_residuals_certified(self, twoblow):
        system = leading_equations(twoblow,
                                   (Fraction(13, 40), Fraction(3, 10)))
        for s in solve(system).solutions:
            assert s.residual < 1e-9

    def test_multiplicity_detection(self):
        P = build_example("one_point_blowup_monotone")
        u = (Fraction(1, 3), Fraction(1, 3))
        facet = next(i for i, f in enumerate(P.facets) if f.v == (0, 1))
        system = leading_equations(P, u,
                                   coefficients={facet: Fraction(-27, 256)})
        result = solve(system)
        assert result.certified
        mults = sorted(s.multiplicity for s in result.solutions)
        assert 2 in mults
        assert sum(mults) == 4

    def test_solution_dict_shape(self, twoblow):
        system = leading_equations(twoblow,
                                   (Fraction(13, 40), Fraction(3, 10)))
        d = solve(system).solutions[0].to_dict()
        assert set(d) == {"values", "free", "multiplicity", "residual"}
        assert "Y2_1" in d["free"]


class TestPartialSolve:
    def test_vacuous_prefix_trivially_solvable(self):
        P = build_example("cpn", 2)
        result = solve_partial(P, (Fraction(1, 4), Fraction(1, 4)), 0)
        assert result.certified
        assert len(result.solutions) == 1

    def test_partial_level_one(self, twoblow):
        u = (Fraction(3, 8), Fraction(3, 10))
        result = solve_partial(twoblow, u, 1)
        assert result.certified
        assert len(result.solutions) >= 1

    def test_partial_obstructed_at_level_one(self, twoblow):
        # the level-1 system at this fiber contains a constant equation
        u = (Fraction(2, 5), Fraction(3, 10))
        result = solve_partial(twoblow, u, 1)
        assert result.certified
        assert result.solutions == []

    def test_obstructed_partial_certified_empty(self):
        P = build_example("cpn", 2)
        u = (Fraction(1, 4), Fraction(1, 4))
        result = solve_partial(P, u, 1)
        assert result.solutions == []
        assert result.certified
