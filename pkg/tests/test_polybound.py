"""Degree lower bounds, root isolation, the extremal LP, and the projection
inequality."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simonlab import polybound
from simonlab.polybound import (
    check_degree_bound,
    curve_to_test_polynomial,
    degree_bound,
    derivative_max_bracket,
    extremal_search,
    frontier_sweep,
    isolate_real_roots,
    projection_ratio_property,
    projection_ratio_sweep,
    query_lower_bound,
)
from simonlab.polymethod import RationalPolynomial, interpolate, simon_curve
from simonlab.rationals import log2_bracket
from simonlab.simplex import UnboundedError, solve_lp


def _poly(*coeffs):
    return RationalPolynomial.from_coefficients(coeffs)


# -- simplex -------------------------------------------------------------------


def test_simplex_basic():
    result = solve_lp([Fraction(1)], [[Fraction(1)]], [Fraction(5)])
    assert result.value == 5 and result.solution == (Fraction(5),)


def test_simplex_two_variables():
    result = solve_lp(
        [Fraction(1), Fraction(1)],
        [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]],
        [Fraction(3), Fraction(1)],
    )
    assert result.value == 3
    assert 0 in result.tight


def test_simplex_free_variables_go_negative():
    result = solve_lp(
        [Fraction(-1)],
        [[Fraction(-1)]],
        [Fraction(2)],
    )
    # maximize -x subject to -x <= 2, i.e. x >= -2: optimum at x = -2.
    assert result.value == 2 and result.solution == (Fraction(-2),)


def test_simplex_unbounded():
    with pytest.raises(UnboundedError):
        solve_lp([Fraction(1)], [[Fraction(-1)]], [Fraction(1)])


def test_simplex_rejects_negative_bounds():
    with pytest.raises(ValueError):
        solve_lp([Fraction(1)], [[Fraction(1)]], [Fraction(-1)])


# -- certified log2 and the bound formula --------------------------------------


def test_log2_bracket_powers_of_two_exact():
    for value, expected in ((Fraction(1), 0), (Fraction(8), 3), (Fraction(1, 4), -2)):
        bracket = log2_bracket(value)
        assert bracket.exact and bracket.lo == expected


def test_log2_bracket_tightness_and_coverage():
    for value in (Fraction(3), Fraction(5, 7), Fraction(1000, 3)):
        bracket = log2_bracket(value)
        assert bracket.width <= Fraction(1, 2**40)
        approx = math.log2(float(value))
        assert float(bracket.lo) - 1e-9 <= approx <= float(bracket.hi) + 1e-9


def test_degree_bound_examples():
    assert degree_bound(10, 1).lo == 3
    assert degree_bound(4, Fraction(1, 4)).lo == 1
    vacuous = degree_bound(6, Fraction(1, 2**8))
    assert vacuous.exact and vacuous.lo == 0
    with pytest.raises(ValueError):
        degree_bound(4, 0)


# -- root isolation and derivative maxima ---------------------------------------


def test_isolate_known_roots():
    p = _poly(Fraction(35, 16), -3, 1)  # (x - 5/4)(x - 7/4)
    intervals = isolate_real_roots(p, Fraction(1), Fraction(2))
    assert len(intervals) == 2
    for (lo, hi), root in zip(intervals, (Fraction(5, 4), Fraction(7, 4))):
        assert lo <= root <= hi and hi - lo <= Fraction(1, 2**40)


def test_isolate_handles_multiple_roots():
    double = _poly(Fraction(9, 4), -3, 1) * _poly(Fraction(9, 4), -3, 1)
    intervals = isolate_real_roots(double, Fraction(1), Fraction(2))
    assert len(intervals) == 1
    lo, hi = intervals[0]
    assert lo <= Fraction(3, 2) <= hi


def test_isolate_excludes_endpoints():
    p = _poly(-1, 1) * _poly(-2, 1)  # roots at exactly 1 and 2
    assert isolate_real_roots(p, Fraction(1), Fraction(2)) == []


def test_derivative_max_linear():
    c_lo, c_hi, point = derivative_max_bracket(_poly(0, Fraction(1, 16)))
    assert c_lo == Fraction(1, 16) and c_hi >= c_lo


def test_derivative_max_with_interior_critical_point():
    # p = (x - 3/2)^3: derivative 3(x-3/2)^2 peaks at the interval endpoints.
    p = _poly(Fraction(-27, 8), Fraction(27, 4), Fraction(-9, 2), 1)
    c_lo, c_hi, point = derivative_max_bracket(p)
    assert c_lo == Fraction(3, 4)
    assert point in (Fraction(1), Fraction(2))


def test_derivative_max_quadratic():
    c_lo, _, point = derivative_max_bracket(_poly(0, 0, 1))  # x^2 on [1,2]
    assert c_lo == 4 and point == 2


# -- the degree bound checker ----------------------------------------------------


def test_check_degree_bound_hand_example():
    report = check_degree_bound(_poly(0, Fraction(1, 16)), 4)
    assert report.premises_ok and report.conclusion_ok
    assert report.c_lo == Fraction(1, 16)
    assert report.bound.lo == Fraction(1, 2)
    assert report.degree == 1


def test_check_degree_bound_rejects_constants():
    with pytest.raises(ValueError):
        check_degree_bound(_poly(Fraction(1, 2)), 4)


def test_check_degree_bound_flags_premise_violation():
    report = check_degree_bound(_poly(0, 1), 4)  # P(16) = 16 > 1
    assert not report.premises_ok
    assert report.bound is None and not report.conclusion_ok


def test_check_degree_bound_on_lp_witness():
    result = extremal_search(6, 2, grid=9, refine=1)
    report = check_degree_bound(result.witness, 6)
    assert report.premises_ok and report.conclusion_ok
    assert report.c_hi >= result.c_star  # the witness achieves c_star at x0


# -- projection inequality --------------------------------------------------------


def test_projection_property_degenerate_cases():
    assert projection_ratio_property(complex(1.7, 0.0), 1.0, 2.0)
    # real alpha: both ratios coincide
    assert projection_ratio_property(complex(1.5, 2.5), 1.0, 2.0)
    with pytest.raises(ValueError):
        projection_ratio_property(complex(1.0, 1.0), 1.0, 1.5)  # b == Re(alpha)
    with pytest.raises(ValueError):
        projection_ratio_property(complex(0.0, 1.0), 1.0, 9.0)  # precondition fails


@settings(max_examples=300)
@given(
    st.fractions(min_value=-8, max_value=8, max_denominator=16),
    st.fractions(min_value=-8, max_value=8, max_denominator=16),
    st.fractions(min_value=-8, max_value=8, max_denominator=16),
    st.fractions(min_value=-8, max_value=8, max_denominator=16),
)
def test_projection_property_rationals(ar, ai, b, cc):
    to_cc = (cc - ar) ** 2 + ai**2
    to_b = (b - ar) ** 2 + ai**2
    if b == ar or to_cc > to_b:
        return
    assert to_cc * (b - ar) ** 2 >= (cc - ar) ** 2 * to_b


def test_projection_sweep():
    assert projection_ratio_sweep(200_000, seed=3) == 0


# -- extremal search ---------------------------------------------------------------


def test_extremal_hand_cases():
    result = extremal_search(4, 1, grid=9, refine=0)
    assert result.c_star == Fraction(2, 15)
    assert result.cap == Fraction(1, 4)
    assert result.witness.derivative()(result.x0) == Fraction(2, 15)
    assert extremal_search(2, 1, grid=5, refine=0).c_star == Fraction(2, 3)
    assert extremal_search(5, 0, grid=5, refine=0).c_star == 0


def test_extremal_witness_feasible_and_active():
    result = extremal_search(6, 2, grid=9, refine=0)
    for i in range(7):
        assert abs(result.witness(Fraction(1 << i))) <= 1
    assert result.active  # at least one constraint is tight at an optimum
    assert result.grid_spacing > 0


def test_extremal_degree_one_cells_closed_form():
    # With one degree of freedom the optimum is pinned by the extreme nodes.
    for n in (2, 3, 4, 5, 6):
        result = extremal_search(n, 1, grid=5, refine=0)
        assert result.c_star == Fraction(2, (1 << n) - 1)


def test_frontier_monotone_and_capped():
    results = frontier_sweep(8, grid=5)
    table = {(r.n, r.d): r.c_star for r in results}
    for r in results:
        assert r.cap is None or r.c_star <= r.cap
    for (n, d), value in table.items():
        if (n, d + 1) in table:
            assert table[(n, d + 1)] >= value
        if (n + 1, d) in table:
            assert table[(n + 1, d)] <= value


def test_extremal_validates_input():
    with pytest.raises(ValueError):
        extremal_search(4, 5)
    with pytest.raises(ValueError):
        extremal_search(4, 1, grid=1)


# -- query lower bound --------------------------------------------------------------


def test_query_lower_bound_values():
    quarter = query_lower_bound(30, Fraction(1, 4))
    assert quarter.exact and quarter.lo == 4
    zero = query_lower_bound(6, 0)
    assert zero.exact and zero.lo == Fraction(9, 8)
    tiny_gap = query_lower_bound(10, Fraction(2**14 - 1, 2**15))
    assert tiny_gap.lo < 0  # error nearly one half: vacuous bound
    with pytest.raises(ValueError):
        query_lower_bound(5, Fraction(1, 2))


def test_end_to_end_consistency_small():
    n = 3
    curve = simon_curve(n, Fraction(1, 4))
    poly = interpolate([(p.order, p.value) for p in curve.points])
    recentered = curve_to_test_polynomial(poly)
    report = check_degree_bound(recentered, n)
    assert report.premises_ok and report.conclusion_ok
    achieved = max(1 - curve.points[0].value, curve.points[1].value)
    assert report.c_lo >= 2 - 4 * achieved
    assert poly.degree <= 2 * curve.query_count
