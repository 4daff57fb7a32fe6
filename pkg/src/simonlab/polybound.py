"""Degree lower bounds for polynomials bounded on powers of two.

A polynomial with |P(2^i)| <= 1 for i = 0..n and a derivative of size c
somewhere on [1, 2] must have degree at least min(n/2, (n+2+log2 c)/4).
This module checks that statement on concrete polynomials with certified
exact arithmetic, probes its tightness with an exact LP over coefficient
space, and exposes the resulting query-complexity lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .polymethod import RationalPolynomial, interpolate
from .rationals import Bracket, log2_bracket
from .simplex import LPResult, solve_lp

ROOT_WIDTH = Fraction(1, 2**40)


def degree_bound(n: int, c) -> Bracket:
    """The certified value min(n/2, (n + 2 + log2 c) / 4).

    Exact when c is a power of two, otherwise a bracket at most 2**-40 wide.
    """
    c = Fraction(c)
    if c <= 0:
        raise ValueError("derivative size must be positive")
    log_term = log2_bracket(c)
    return ((log_term + (n + 2)) / 4).min_with(Fraction(n, 2))


# ---------------------------------------------------------------------------
# Exact real-root isolation (Sturm chains) for the derivative maximum.
# ---------------------------------------------------------------------------


def _poly_content_free(p: RationalPolynomial) -> RationalPolynomial:
    lead = p.coefficients[-1]
    return RationalPolynomial(tuple(c / lead for c in p.coefficients))


def _poly_gcd(a: RationalPolynomial, b: RationalPolynomial) -> RationalPolynomial:
    while b.coefficients:
        a, b = b, a % b
    return _poly_content_free(a) if a.coefficients else a


def _sturm_chain(p: RationalPolynomial) -> list[RationalPolynomial]:
    chain = [p, p.derivative()]
    while chain[-1].coefficients:
        rem = chain[-2] % chain[-1]
        if not rem.coefficients:
            break
        chain.append(-rem)
    return chain


def _sign_changes(chain: Sequence[RationalPolynomial], x: Fraction) -> int:
    signs = [v for v in (poly(x) for poly in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a < 0) != (b < 0))


def isolate_real_roots(
    p: RationalPolynomial,
    lo: Fraction,
    hi: Fraction,
    width: Fraction = ROOT_WIDTH,
) -> list[tuple[Fraction, Fraction]]:
    """Disjoint rational intervals, each at most `width` wide, that together
    contain every root of p in the open interval (lo, hi), one root apiece.

    Multiple roots are collapsed through the square-free part first; Sturm
    counts make the subdivision exact rather than heuristic.
    """
    if p.degree < 1:
        return []
    square_free = divmod(p, _poly_gcd(p, p.derivative()))[0]
    chain = _sturm_chain(square_free)

    def roots_within(a: Fraction, b: Fraction) -> int:
        # Sturm counts roots in (a, b]; drop b if it is itself a root.
        count = _sign_changes(chain, a) - _sign_changes(chain, b)
        if square_free(b) == 0:
            count -= 1
        return count

    intervals = []
    stack = [(lo, hi, roots_within(lo, hi))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if count == 1 and b - a <= width:
            intervals.append((a, b))
            continue
        mid = (a + b) / 2
        if square_free(mid) == 0:
            # Nudge the split point off the root so it stays interior.
            mid = a + (b - a) * Fraction(13, 32)
        left = roots_within(a, mid)
        stack.append((a, mid, left))
        stack.append((mid, b, count - left))
    return sorted(intervals)


def derivative_max_bracket(
    p: RationalPolynomial, lo: Fraction = Fraction(1), hi: Fraction = Fraction(2)
) -> tuple[Fraction, Fraction, Fraction]:
    """Certified bracket [c_lo, c_hi] of max |p'| on [lo, hi], plus a point
    achieving |p'| = c_lo.

    The derivative is monotone between consecutive roots of p'', so its
    extremes sit at the interval ends or at those roots; root positions are
    known to ROOT_WIDTH and the residual uncertainty is charged at the size
    of p'' on the interval.
    """
    dp = p.derivative()
    ddp = dp.derivative()
    candidates = [lo, hi]
    for a, b in isolate_real_roots(ddp, lo, hi):
        candidates.extend((a, b))
    best_point = max(candidates, key=lambda x: abs(dp(x)))
    c_lo = abs(dp(best_point))
    curvature = sum(abs(c) * hi ** i for i, c in enumerate(ddp.coefficients))
    c_hi = c_lo + ROOT_WIDTH * curvature
    return c_lo, c_hi, best_point


@dataclass(frozen=True)
class BoundReport:
    """Outcome of checking the degree lower bound on one polynomial."""

    n: int
    degree: int
    c_lo: Fraction
    c_hi: Fraction
    witness_point: Fraction
    bound: Bracket | None
    premises_ok: bool
    conclusion_ok: bool


def check_degree_bound(p: RationalPolynomial, n: int) -> BoundReport:
    """Verify |P(2^i)| <= 1 exactly, certify c = max |P'| on [1, 2], and
    test deg(P) >= min(n/2, (n+2+log2 c)/4) against the safe side of the
    bracket.  A failed conclusion on valid premises is an implementation bug,
    never a fact about the polynomial."""
    if p.degree < 1:
        raise ValueError("degree bound checks need degree >= 1")
    premises_ok = all(abs(p(Fraction(1 << i))) <= 1 for i in range(n + 1))
    c_lo, c_hi, point = derivative_max_bracket(p)
    if not premises_ok:
        return BoundReport(n, p.degree, c_lo, c_hi, point, None, False, False)
    if c_lo == 0:
        # Derivative indistinguishable from zero at every certified point:
        # the bound is vacuous.
        return BoundReport(n, p.degree, c_lo, c_hi, point, None, True, True)
    bound = degree_bound(n, c_lo)
    conclusion = Fraction(p.degree) >= bound.lo
    return BoundReport(n, p.degree, c_lo, c_hi, point, bound, True, conclusion)


# ---------------------------------------------------------------------------
# The planar projection inequality behind the bound's proof machinery.
# ---------------------------------------------------------------------------


def projection_ratio_property(alpha: complex, b, cc) -> bool:
    """For a point alpha no farther from cc than from b, dropping alpha to
    the real axis cannot increase the distance ratio:
    |cc - alpha| / |b - alpha| >= |cc - Re(alpha)| / |b - Re(alpha)|.

    Evaluated exactly through squared distances (floats convert losslessly
    to rationals), so the comparison never suffers rounding.
    """
    ar = Fraction(alpha.real if isinstance(alpha, complex) else alpha)
    ai = Fraction(alpha.imag if isinstance(alpha, complex) else 0)
    b = Fraction(b)
    cc = Fraction(cc)
    if b == ar:
        raise ValueError("b must differ from Re(alpha)")
    to_cc = (cc - ar) ** 2 + ai**2
    to_b = (b - ar) ** 2 + ai**2
    if to_cc > to_b:
        raise ValueError("precondition |alpha - cc| <= |alpha - b| violated")
    return to_cc * (b - ar) ** 2 >= (cc - ar) ** 2 * to_b


def projection_ratio_sweep(count: int, seed, coordinate_bound: int = 1000) -> int:
    """Check the projection inequality on `count` random integer-coordinate
    inputs satisfying the precondition; returns the number of failures.

    Integer coordinates keep every squared quantity below 2**53, so the
    vectorized comparison is exact.
    """
    rng = np.random.default_rng(seed)
    failures = 0
    done = 0
    while done < count:
        batch = min(count - done, 1 << 18)
        draw = rng.integers(-coordinate_bound, coordinate_bound + 1, size=(4, 2 * batch))
        ar, ai, b, cc = (draw[i].astype(np.int64) for i in range(4))
        to_cc = (cc - ar) ** 2 + ai**2
        to_b = (b - ar) ** 2 + ai**2
        ok = (to_cc <= to_b) & (b != ar)
        ar, b, cc, to_cc, to_b = (v[ok][:batch] for v in (ar, b, cc, to_cc, to_b))
        failures += int(np.sum(to_cc * (b - ar) ** 2 < (cc - ar) ** 2 * to_b))
        done += len(ar)
    return failures


# ---------------------------------------------------------------------------
# Extremal search: how large can the derivative get at a fixed degree?
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremalResult:
    n: int
    d: int
    c_star: Fraction
    witness: RationalPolynomial
    x0: Fraction
    active: tuple[int, ...]
    cap: Fraction | None
    grid_spacing: Fraction


def _max_derivative_at(n: int, d: int, x0: Fraction) -> LPResult:
    objective = [Fraction(0)] + [j * x0 ** (j - 1) for j in range(1, d + 1)]
    constraints = []
    bounds = []
    for i in range(n + 1):
        point = Fraction(1 << i)
        row = [point**j for j in range(d + 1)]
        constraints.append(row)
        bounds.append(Fraction(1))
        constraints.append([-v for v in row])
        bounds.append(Fraction(1))
    return solve_lp(objective, constraints, bounds)


def extremal_search(n: int, d: int, grid: int = 33, refine: int = 2) -> ExtremalResult:
    """Maximize P'(x0) over polynomials of degree <= d with |P(2^i)| <= 1,
    scanning x0 over a grid on [1, 2] with optional refinement rounds around
    the best node.  The final grid spacing is reported so the discretization
    gap stays visible.

    Whenever 2d <= n the optimum must respect the cap 2**(4d - n - 2); a
    violation is an implementation bug and raises.
    """
    if not 0 <= d <= n:
        raise ValueError("degree must lie in [0, n]")
    if grid < 2:
        raise ValueError("need at least two grid nodes")

    lo, hi = Fraction(1), Fraction(2)
    best: tuple[Fraction, Fraction, LPResult] | None = None
    spacing = (hi - lo) / (grid - 1)
    for _ in range(refine + 1):
        nodes = [lo + spacing * i for i in range(grid)]
        for x0 in nodes:
            if not 1 <= x0 <= 2:
                continue
            result = _max_derivative_at(n, d, x0)
            if best is None or result.value > best[1]:
                best = (x0, result.value, result)
        center = best[0]
        lo = max(Fraction(1), center - spacing)
        hi = min(Fraction(2), center + spacing)
        spacing = (hi - lo) / (grid - 1)

    x0, c_star, lp = best
    witness = RationalPolynomial.from_coefficients(lp.solution)
    if c_star < 0:
        raise RuntimeError("zero polynomial is feasible; optimum cannot be negative")
    for i in range(n + 1):
        if abs(witness(Fraction(1 << i))) > 1:
            raise RuntimeError("LP witness violates its own constraints")
    if witness.derivative()(x0) != c_star:
        raise RuntimeError("LP witness does not achieve the reported optimum")
    cap = None
    if 2 * d <= n:
        cap = (
            Fraction(1 << (4 * d - n - 2))
            if 4 * d - n - 2 >= 0
            else Fraction(1, 1 << (n + 2 - 4 * d))
        )
        if c_star > cap:
            raise RuntimeError(
                f"extremal value {c_star} exceeds the degree-bound cap {cap}"
            )
    return ExtremalResult(
        n, d, c_star, witness, x0, lp.tight, cap, spacing
    )


def frontier_sweep(
    max_n: int, grid: int = 9
) -> list[ExtremalResult]:
    """Extremal values for every cell 1 <= d <= n/2, n <= max_n, computed on
    one shared grid (no refinement) so cross-cell comparisons are exact."""
    out = []
    for n in range(2, max_n + 1):
        for d in range(1, n // 2 + 1):
            out.append(extremal_search(n, d, grid=grid, refine=0))
    return out


# ---------------------------------------------------------------------------
# From polynomial degrees to query counts.
# ---------------------------------------------------------------------------


def query_lower_bound(n: int, epsilon) -> Bracket:
    """Minimum number of oracle queries for any bounded-error decision
    procedure: (n + 2 + log2(2 - 4 epsilon)) / 8, certified."""
    epsilon = Fraction(epsilon)
    if not 0 <= epsilon < Fraction(1, 2):
        raise ValueError("error bound must lie in [0, 1/2)")
    c = 2 - 4 * epsilon
    return (log2_bracket(c) + (n + 2)) / 8


def curve_to_test_polynomial(q: RationalPolynomial) -> RationalPolynomial:
    """Recenter an acceptance polynomial onto [-1, 1]: P = 2Q - 1.  With a
    gap of 1 - 2*eps between the first two curve values, P carries a
    derivative of size at least 2 - 4*eps somewhere on [1, 2]."""
    return q * 2 - 1


def acceptance_curve_polynomial(points: Sequence[tuple]) -> RationalPolynomial:
    """Interpolant of an exact acceptance curve on its native abscissae."""
    return interpolate(points)
