"""Exact acceptance curves over random hiding functions.

For an algorithm written as a weighted sum of extension indicators, the
average acceptance probability over uniformly random functions hiding a
subgroup of order D = 2**d is an exact rational, and as a function of D it
is a low-degree polynomial.  This module computes those probabilities three
ways (brute force over all subgroups, closed forms, and an exact dynamic
program for the implemented decision algorithm), interpolates the resulting
curves in exact arithmetic, and reads off degrees.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from . import qsim
from .gf2 import (
    Subspace,
    count_containing,
    count_subgroups,
    enumerate_subspaces,
    join,
    member,
    orthogonal_complement,
    random_subspace,
    rref,
    trivial_subspace,
)
from .hiding import (
    LazyHidingFunction,
    PartialAssignment,
    QueryCountingOracle,
    count_extensions,
    random_hiding_function,
)
from .rationals import fraction_str, parse_fraction


@dataclass(frozen=True)
class RationalPolynomial:
    """Univariate polynomial with exact rational coefficients, ascending
    powers, trailing zeros stripped.  The zero polynomial has degree -1."""

    coefficients: tuple[Fraction, ...]

    @staticmethod
    def from_coefficients(coeffs: Iterable) -> "RationalPolynomial":
        out = [Fraction(c) for c in coeffs]
        while out and out[-1] == 0:
            out.pop()
        return RationalPolynomial(tuple(out))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def derivative(self) -> "RationalPolynomial":
        return RationalPolynomial.from_coefficients(
            i * c for i, c in enumerate(self.coefficients) if i
        )

    def __add__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.from_coefficients([Fraction(other)])
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for i, c in enumerate(b):
            merged[i] += c
        return RationalPolynomial.from_coefficients(merged)

    __radd__ = __add__

    def __neg__(self) -> "RationalPolynomial":
        return RationalPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other) -> "RationalPolynomial":
        if not isinstance(other, RationalPolynomial):
            other = RationalPolynomial.from_coefficients([Fraction(other)])
        return self + (-other)

    def __rsub__(self, other) -> "RationalPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "RationalPolynomial":
        if isinstance(other, RationalPolynomial):
            if not self.coefficients or not other.coefficients:
                return RationalPolynomial(())
            out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
            return RationalPolynomial.from_coefficients(out)
        other = Fraction(other)
        return RationalPolynomial.from_coefficients(c * other for c in self.coefficients)

    __rmul__ = __mul__

    def __divmod__(self, other: "RationalPolynomial"):
        if not other.coefficients:
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        quotient = [Fraction(0)] * max(len(remainder) - len(other.coefficients) + 1, 0)
        lead = other.coefficients[-1]
        for i in range(len(quotient) - 1, -1, -1):
            factor = remainder[i + other.degree] / lead
            quotient[i] = factor
            for j, c in enumerate(other.coefficients):
                remainder[i + j] -= factor * c
        return (
            RationalPolynomial.from_coefficients(quotient),
            RationalPolynomial.from_coefficients(remainder[: other.degree]),
        )

    def __mod__(self, other: "RationalPolynomial") -> "RationalPolynomial":
        return divmod(self, other)[1]


def interpolate(points: Sequence[tuple]) -> RationalPolynomial:
    """The unique polynomial of degree < len(points) through the given
    (x, y) pairs, by Newton divided differences in exact arithmetic."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be distinct")
    coef = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    result = RationalPolynomial(())
    basis = RationalPolynomial.from_coefficients([1])
    for j, c in enumerate(coef):
        result = result + basis * c
        basis = basis * RationalPolynomial.from_coefficients([-xs[j], 1])
    return result


def _order_exponent(n: int, order: int) -> int:
    d = order.bit_length() - 1
    if order <= 0 or order != 1 << d or d > n:
        raise ValueError(f"subgroup order must be a power of two in [1, 2**{n}]")
    return d


# ---------------------------------------------------------------------------
# Extension probabilities: the chance that a uniformly random function hiding
# a subgroup of a given order agrees with a partial assignment.
# ---------------------------------------------------------------------------


def extension_prob_bruteforce(n: int, s: PartialAssignment, order: int) -> Fraction:
    """Independent oracle: enumerate every subgroup of the given order and
    count extensions directly."""
    d = _order_exponent(n, order)
    subgroups = enumerate_subspaces(n, d)
    empty = PartialAssignment(n, ())
    numerator = sum(count_extensions(H, s) for H in subgroups)
    denominator = sum(count_extensions(H, empty) for H in subgroups)
    return Fraction(numerator, denominator)


def _constant_prob(n: int, d: int, span_dim: int) -> Fraction:
    """Probability that a random order-2**d-hiding function is constant on a
    fixed set spanning a subspace of dimension span_dim (0 included): the
    span must land inside the hidden subgroup and one label must match."""
    if span_dim > d:
        return Fraction(0)
    prob = Fraction(1, 1 << n)
    for i in range(span_dim):
        prob *= Fraction((1 << (d - i)) - 1, (1 << (n - i)) - 1)
    return prob


def extension_prob_constant(n: int, s: PartialAssignment, order: int) -> Fraction:
    """Closed form for a constant assignment: translate the domain through
    one of its points and measure the span that must sit inside the hidden
    subgroup."""
    if not s.is_constant():
        raise ValueError("assignment is not constant")
    d = _order_exponent(n, order)
    if s.size == 0:
        return Fraction(1)
    base = s.domain[0]
    span = rref([p ^ base for p in s.domain], n)
    return _constant_prob(n, d, span.dim)


def avoidance_probability(
    n: int,
    points: Sequence[int],
    d: int,
    method: str = "auto",
) -> Fraction:
    """Probability that a uniformly random dimension-d subspace contains no
    pairwise difference of the given points.

    "inclusion-exclusion" expands over subsets of the difference set, each
    term a containment count; "filter" checks every subspace explicitly
    (enumeration-capped); "both" computes the two and insists they agree.
    """
    differences = sorted({a ^ b for i, a in enumerate(points) for b in points[i + 1 :]})
    if 0 in differences:
        raise ValueError("points must be distinct")
    if method == "auto":
        method = "inclusion-exclusion"

    value_ie = None
    value_filter = None
    if method in ("inclusion-exclusion", "both"):
        total = count_subgroups(n, d)
        acc = Fraction(0)
        sign_terms = [(trivial_subspace(n), 1)]
        for delta in differences:
            sign_terms += [(join(S, delta), -sign) for S, sign in sign_terms]
        for span, sign in sign_terms:
            acc += sign * count_containing(n, span, d)
        value_ie = acc / total
    if method in ("filter", "both"):
        subgroups = enumerate_subspaces(n, d)
        good = sum(
            1 for H in subgroups if not any(member(H, delta) for delta in differences)
        )
        value_filter = Fraction(good, len(subgroups))
    if method == "both" and value_ie != value_filter:
        raise AssertionError(
            f"inclusion-exclusion {value_ie} disagrees with direct filter {value_filter}"
        )
    return value_ie if value_ie is not None else value_filter


def extension_prob_injective(
    n: int, s: PartialAssignment, order: int, method: str = "auto"
) -> Fraction:
    """Closed form for an injective assignment: the points must fall in
    distinct cosets (an avoidance event on their differences) and each coset
    must pick the prescribed label."""
    if not s.is_injective():
        raise ValueError("assignment is not injective")
    d = _order_exponent(n, order)
    label_prob = Fraction(1)
    for j in range(s.size):
        label_prob *= Fraction(1, (1 << n) - j)
    return label_prob * avoidance_probability(n, s.domain, d, method)


@dataclass(frozen=True)
class GeneralForm:
    """Normalized shape of an arbitrary partial assignment.

    The assignment is translated so the class of its smallest point contains
    0; repeated-value points fold into difference points attached to that
    anchor class.  The remaining constraints are one point per other value,
    pushed to the quotient modulo the anchor span.
    """

    contradictory: bool
    anchor_points: tuple[int, ...]
    anchor_span: Subspace
    quotient_dim: int
    quotient_points: tuple[int, ...]


def general_decomposition(n: int, s: PartialAssignment) -> GeneralForm:
    if s.size == 0:
        raise ValueError("empty assignment has no decomposition")
    classes: dict[int, list[int]] = {}
    for point, value in s.entries:
        classes.setdefault(value, []).append(point)
    base = min(s.domain)
    anchor_value = s.as_dict()[base]

    anchor = [p ^ base for p in classes.pop(anchor_value)]
    reps = []
    for points in classes.values():
        translated = sorted(p ^ base for p in points)
        rep = translated[0]
        anchor.extend(p ^ rep for p in translated[1:])
        reps.append(rep)

    span = rref(anchor, n)
    pivot_bits = [row.bit_length() - 1 for row in span.basis]
    free_bits = [b for b in range(n) if b not in pivot_bits]

    def quotient_image(g: int) -> int:
        reduced = span.reduce(g)
        image = 0
        for idx, b in enumerate(free_bits):
            image |= ((reduced >> b) & 1) << idx
        return image

    quotient_points = [0] + [quotient_image(rep) for rep in reps]
    contradictory = len(set(quotient_points)) != len(quotient_points)
    return GeneralForm(
        contradictory=contradictory,
        anchor_points=tuple(sorted(set(anchor) | {0})),
        anchor_span=span,
        quotient_dim=n - span.dim,
        quotient_points=tuple(quotient_points),
    )


def extension_prob(n: int, s: PartialAssignment, order: int, method: str = "auto") -> Fraction:
    """Extension probability for an arbitrary partial assignment.

    Factorizes as: (probability the anchor class collapses into the hidden
    subgroup with the right label) times (conditional probability that the
    remaining one-point-per-value constraints hold on the quotient group,
    whose label pool is still the full codomain of size 2**n).  Contradictory
    assignments give the zero polynomial.
    """
    if s.n != n:
        raise ValueError("dimension mismatch")
    d = _order_exponent(n, order)
    if s.size == 0:
        return Fraction(1)
    form = general_decomposition(n, s)
    if form.contradictory:
        return Fraction(0)
    d_prime = form.anchor_span.dim
    if d < d_prime:
        return Fraction(0)
    anchor_prob = _constant_prob(n, d, d_prime)
    conditional_labels = Fraction(1)
    for j in range(1, len(form.quotient_points)):
        conditional_labels *= Fraction(1, (1 << n) - j)
    avoid = avoidance_probability(
        form.quotient_dim, form.quotient_points, d - d_prime, method
    )
    return anchor_prob * conditional_labels * avoid


def quotient_extension_ratio(n: int, s: PartialAssignment, order: int) -> Fraction:
    """Enumeration cross-check of the conditional factor in extension_prob:
    the ratio of extension counts on the quotient group, keeping the original
    codomain size.  Intended for desk-scale verification."""
    d = _order_exponent(n, order)
    form = general_decomposition(n, s)
    if form.contradictory:
        return Fraction(0)
    d_bar = d - form.anchor_span.dim
    if d_bar < 0:
        return Fraction(0)
    nq = form.quotient_dim
    constrained = PartialAssignment(
        nq, tuple((p, i) for i, p in enumerate(form.quotient_points))
    )
    anchored = PartialAssignment(nq, ((0, 0),))
    full_range = 1 << n
    num = 0
    den = 0
    for H in enumerate_subspaces(nq, d_bar):
        num += count_extensions(H, constrained, range_size=full_range)
        den += count_extensions(H, anchored, range_size=full_range)
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# Algorithms as weighted indicator sums, and their acceptance curves.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SyntheticAlgorithm:
    """An algorithm given directly as terms (assignment, weight): it accepts
    a function f with probability sum of weights over the assignments f
    extends.  Every domain must fit in 2 * query_count points."""

    n: int
    query_count: int
    terms: tuple[tuple[PartialAssignment, Fraction], ...]

    def __post_init__(self) -> None:
        for assignment, _ in self.terms:
            if assignment.n != self.n:
                raise ValueError("assignment dimension mismatch")
            if assignment.size > 2 * self.query_count:
                raise ValueError("assignment domain exceeds twice the query count")

    @property
    def max_domain_size(self) -> int:
        return max((a.size for a, _ in self.terms), default=0)

    def acceptance(self, f) -> Fraction:
        """Acceptance probability on one concrete function."""
        total = Fraction(0)
        for assignment, weight in self.terms:
            if all(f.value(p) == v for p, v in assignment.entries):
                total += weight
        return total

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "query_count": self.query_count,
            "terms": [
                {
                    "weight": fraction_str(Fraction(w)),
                    "points": [[p, v] for p, v in a.entries],
                }
                for a, w in self.terms
            ],
        }

    @staticmethod
    def from_json_dict(data: dict) -> "SyntheticAlgorithm":
        n = int(data["n"])
        terms = tuple(
            (
                PartialAssignment(n, tuple((int(p), int(v)) for p, v in t["points"])),
                parse_fraction(str(t["weight"])),
            )
            for t in data["terms"]
        )
        return SyntheticAlgorithm(n, int(data["query_count"]), terms)


def random_mixture_algorithm(
    n: int, max_domain: int, num_terms: int, rng
) -> SyntheticAlgorithm:
    """A random valid synthetic algorithm: nonnegative weights with total at
    most 1, so the acceptance of any function lands in [0, 1]."""
    raw = [Fraction(int(rng.integers(0, 100)), 1) for _ in range(num_terms)]
    total = sum(raw) or Fraction(1)
    scale = Fraction(int(rng.integers(1, 101)), 100)
    weights = [w / total * scale for w in raw]
    terms = []
    for w in weights:
        size = int(rng.integers(1, max_domain + 1))
        points = rng.choice(1 << n, size=size, replace=False)
        values = rng.integers(0, 1 << n, size=size)
        terms.append(
            (
                PartialAssignment(n, tuple((int(p), int(v)) for p, v in zip(points, values))),
                w,
            )
        )
    max_size = max(a.size for a, _ in terms)
    return SyntheticAlgorithm(n, (max_size + 1) // 2, tuple(terms))


def acceptance_probability(alg: SyntheticAlgorithm, n: int, order: int) -> Fraction:
    """Average acceptance over random order-D hiding functions: the weighted
    sum of extension probabilities."""
    return sum(
        (weight * extension_prob(n, assignment, order) for assignment, weight in alg.terms),
        Fraction(0),
    )


# ---------------------------------------------------------------------------
# Exact acceptance of the implemented decision algorithm.
# ---------------------------------------------------------------------------


def _exact_accept_given_subgroup(hidden: Subspace, rounds: int) -> Fraction:
    """Exact acceptance probability of the decision algorithm on any function
    hiding this subgroup.

    Round outcomes are uniform on the dual subspace and the decision depends
    only on the running span, so a dynamic program over subspaces of the dual
    gives the exact probability.  The pair test succeeds (rejects) iff the
    candidate period lies in the hidden subgroup, which holds for every
    function hiding it; labels never matter.
    """
    n = hidden.n
    dual = orthogonal_complement(hidden)
    dual_size = dual.order
    dist: dict[Subspace, Fraction] = {trivial_subspace(n): Fraction(1)}
    dual_elements = list(dual.elements())
    grow_memo: dict[tuple[Subspace, int], Subspace] = {}
    for _ in range(rounds):
        nxt: dict[Subspace, Fraction] = {}
        for span, prob in dist.items():
            share = prob / dual_size
            for y in dual_elements:
                key = (span, y)
                grown = grow_memo.get(key)
                if grown is None:
                    grown = grow_memo[key] = join(span, y)
                nxt[grown] = nxt.get(grown, Fraction(0)) + share
        dist = nxt
    accept = Fraction(0)
    for span, prob in dist.items():
        if span.dim == n:
            accept += prob
        else:
            candidate = orthogonal_complement(span).min_nonzero()
            if not member(hidden, candidate):
                accept += prob
    return accept


def simon_exact_acceptance(n: int, epsilon: Fraction, order: int) -> Fraction:
    """Exact acceptance probability of the decision algorithm averaged over
    uniformly random functions hiding a subgroup of the given order.

    Every subgroup of a fixed order carries the same number of hiding
    functions and the algorithm's acceptance depends only on the subgroup,
    so the average over functions equals the average over subgroups.
    """
    d = _order_exponent(n, order)
    rounds = qsim.round_count(n, Fraction(epsilon))
    subgroups = enumerate_subspaces(n, d)
    total = sum(
        (_exact_accept_given_subgroup(H, rounds) for H in subgroups), Fraction(0)
    )
    return total / len(subgroups)


# ---------------------------------------------------------------------------
# Curves, Monte Carlo estimation, and degree checks.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvePoint:
    order: int
    value: object  # Fraction (exact) or float (monte-carlo)
    provenance: str  # "exact" | "monte-carlo"
    stderr: float | None = None

    def __post_init__(self) -> None:
        if self.provenance not in ("exact", "monte-carlo"):
            raise ValueError("provenance must be 'exact' or 'monte-carlo'")


@dataclass(frozen=True)
class AcceptanceCurve:
    """Acceptance probability at every admissible subgroup order 2**d."""

    n: int
    points: tuple[CurvePoint, ...]
    query_count: int | None = None

    @property
    def is_exact(self) -> bool:
        return all(p.provenance == "exact" for p in self.points)

    def to_json_dict(self) -> dict:
        payload = []
        for p in self.points:
            entry: dict = {"order": p.order, "provenance": p.provenance}
            if p.provenance == "exact":
                entry["value"] = fraction_str(Fraction(p.value))
            else:
                entry["value"] = float(p.value)
                entry["stderr"] = p.stderr
            payload.append(entry)
        return {"n": self.n, "query_count": self.query_count, "points": payload}

    @staticmethod
    def from_json_dict(data: dict) -> "AcceptanceCurve":
        points = []
        for entry in data["points"]:
            if entry["provenance"] == "exact":
                value: object = parse_fraction(str(entry["value"]))
                stderr = None
            else:
                value = float(entry["value"])
                stderr = entry.get("stderr")
            points.append(
                CurvePoint(int(entry["order"]), value, entry["provenance"], stderr)
            )
        qc = data.get("query_count")
        return AcceptanceCurve(int(data["n"]), tuple(points), None if qc is None else int(qc))


def simon_curve(n: int, epsilon: Fraction) -> AcceptanceCurve:
    """Exact acceptance curve of the decision algorithm (desk-scale n)."""
    epsilon = Fraction(epsilon)
    points = tuple(
        CurvePoint(1 << d, simon_exact_acceptance(n, epsilon, 1 << d), "exact")
        for d in range(n + 1)
    )
    return AcceptanceCurve(n, points, qsim.round_count(n, epsilon) + 2)


def synthetic_curve(alg: SyntheticAlgorithm) -> AcceptanceCurve:
    points = tuple(
        CurvePoint(1 << d, acceptance_probability(alg, alg.n, 1 << d), "exact")
        for d in range(alg.n + 1)
    )
    return AcceptanceCurve(alg.n, points, alg.query_count)


def estimate_acceptance(
    run: Callable,
    n: int,
    order: int,
    trials: int,
    seed,
    lazy: bool = True,
) -> tuple[float, float]:
    """Monte Carlo estimate of the average acceptance at one subgroup order.

    Each trial draws a uniform subgroup of the given order, a uniform
    function hiding it, and calls `run(f, rng)`, which returns an acceptance
    indicator or probability in [0, 1].  Returns (mean, standard error).
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    d = _order_exponent(n, order)
    rng = np.random.default_rng(seed)
    samples = np.empty(trials)
    for t in range(trials):
        hidden = random_subspace(n, d, rng)
        f = LazyHidingFunction(hidden, rng) if lazy else random_hiding_function(hidden, rng)
        samples[t] = float(run(f, rng))
    mean = float(samples.mean())
    stderr = float(samples.std(ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return mean, stderr


def simon_monte_carlo_point(
    n: int,
    epsilon: Fraction,
    order: int,
    trials: int,
    seed,
    method: str = "auto",
) -> CurvePoint:
    """Monte Carlo curve point for the decision algorithm."""

    def run(f, rng) -> float:
        oracle = QueryCountingOracle(f)
        outcome = qsim.simon_decide(oracle, n, epsilon, rng, method=method)
        return 1.0 if outcome.verdict == "accept" else 0.0

    mean, stderr = estimate_acceptance(run, n, order, trials, seed)
    return CurvePoint(order, mean, "monte-carlo", stderr)


@dataclass(frozen=True)
class DegreeReport:
    polynomial: RationalPolynomial
    degree: int
    bound: int
    passed: bool

    @property
    def margin(self) -> int:
        return self.bound - self.degree


def degree_check(curve: AcceptanceCurve, query_count: int) -> DegreeReport:
    """Interpolate an exact curve and check its degree against twice the
    query count.  Degree claims are discrete, so Monte Carlo points are
    refused rather than rounded."""
    if not curve.is_exact:
        raise ValueError("degree checks require an exact curve")
    poly = interpolate([(p.order, p.value) for p in curve.points])
    bound = 2 * query_count
    return DegreeReport(poly, poly.degree, bound, poly.degree <= bound)
