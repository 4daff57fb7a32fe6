"""State-vector simulation of the oracle-query model and Simon's algorithm.

The register convention: an m-qubit state is a dense complex vector of
length 2**m, qubit q corresponding to bit m-1-q of the basis index.  Simon's
circuit uses m = 2n qubits, the input register on qubits 0..n-1 and the
output register on qubits n..2n-1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .gf2 import SpanAccumulator, Subspace, orthogonal_complement
from .hiding import QueryCountingOracle

_SQRT_HALF = 1.0 / math.sqrt(2.0)

STATEVECTOR_LIMIT = 4


class StateVector:
    """Dense amplitudes of an m-qubit register, mutated in place by gates."""

    def __init__(self, m: int) -> None:
        if m < 1:
            raise ValueError("need at least one qubit")
        self.m = m
        self.amplitudes = np.zeros(1 << m, dtype=np.complex128)
        self.amplitudes[0] = 1.0

    def norm_error(self) -> float:
        return abs(float(np.sum(np.abs(self.amplitudes) ** 2)) - 1.0)


def _gather_register(indices: np.ndarray, m: int, qubits: Sequence[int]) -> np.ndarray:
    width = len(qubits)
    out = np.zeros_like(indices)
    for j, q in enumerate(qubits):
        out |= ((indices >> (m - 1 - q)) & 1) << (width - 1 - j)
    return out


def apply_oracle(state: StateVector, oracle, x_qubits: Sequence[int], y_qubits: Sequence[int]) -> StateVector:
    """Apply |x, y> -> |x, y xor f(x)> on the given registers.

    Both registers must have width n and be disjoint.  The oracle's query
    counter advances by one.
    """
    n = oracle.n
    if len(x_qubits) != n or len(y_qubits) != n:
        raise ValueError("register widths must equal the oracle dimension")
    if set(x_qubits) & set(y_qubits):
        raise ValueError("oracle registers overlap")
    if not all(0 <= q < state.m for q in (*x_qubits, *y_qubits)):
        raise ValueError("qubit index out of range")

    if isinstance(oracle, QueryCountingOracle):
        oracle.charge(1)
        table = oracle.function.values
    else:
        table = oracle.values
    indices = np.arange(1 << state.m, dtype=np.int64)
    x = _gather_register(indices, state.m, x_qubits)
    fx = np.asarray(table, dtype=np.int64)[x]
    delta = np.zeros_like(indices)
    for j, q in enumerate(y_qubits):
        delta |= ((fx >> (n - 1 - j)) & 1) << (state.m - 1 - q)
    # XOR-ing f(x) into y is an involution, so the permutation is its own inverse.
    state.amplitudes = state.amplitudes[indices ^ delta]
    return state


def apply_hadamard_layer(state: StateVector, qubits: Sequence[int]) -> StateVector:
    """Tensor-product Hadamard on each listed qubit; self-inverse."""
    for q in qubits:
        if not 0 <= q < state.m:
            raise ValueError("qubit index out of range")
        bit = state.m - 1 - q
        view = state.amplitudes.reshape(-1, 2, 1 << bit)
        top = view[:, 0, :].copy()
        view[:, 0, :] += view[:, 1, :]
        view[:, 1, :] = top - view[:, 1, :]
        state.amplitudes *= _SQRT_HALF
    return state


def measure_register(state: StateVector, qubits: Sequence[int], rng) -> int:
    """Sample a computational-basis outcome of one register (marginal)."""
    probs = register_distribution(state, qubits)
    return int(rng.choice(len(probs), p=probs))


def register_distribution(state: StateVector, qubits: Sequence[int]) -> np.ndarray:
    indices = np.arange(1 << state.m, dtype=np.int64)
    values = _gather_register(indices, state.m, qubits)
    probs = np.bincount(values, weights=np.abs(state.amplitudes) ** 2, minlength=1 << len(qubits))
    return probs / probs.sum()


def simon_round_distribution(hidden: Subspace) -> dict[int, Fraction]:
    """Exact outcome distribution of one Hadamard-oracle-Hadamard round.

    Uniform over the dual subspace: each y orthogonal to the hidden subgroup
    has probability |H| / 2**n, every other outcome has probability zero.
    """
    dual = orthogonal_complement(hidden)
    p = Fraction(hidden.order, 1 << hidden.n)
    return {y: p for y in dual.elements()}


def simulate_simon_round(oracle, rng) -> int:
    """Run one round of Simon's circuit on a fresh 2n-qubit state and measure
    the input register."""
    n = oracle.n
    state = StateVector(2 * n)
    x_reg = range(n)
    y_reg = range(n, 2 * n)
    apply_hadamard_layer(state, x_reg)
    apply_oracle(state, oracle, x_reg, y_reg)
    apply_hadamard_layer(state, x_reg)
    return measure_register(state, x_reg, rng)


def _analytic_simon_round(oracle, rng) -> int:
    """Sample the round outcome from its exact distribution without building
    the state vector; still charges one oracle application."""
    if isinstance(oracle, QueryCountingOracle):
        oracle.charge(1)
    dual = orthogonal_complement(oracle.hidden)
    mask = int(rng.integers(0, 1 << dual.dim)) if dual.dim else 0
    y = 0
    for i, row in enumerate(dual.basis):
        if (mask >> i) & 1:
            y ^= row
    return y


def sample_round(oracle, rng, method: str = "auto") -> int:
    """One measured round outcome, by state-vector simulation or by sampling
    the (provably identical) exact distribution.

    "auto" simulates for small n and switches to the analytic sampler beyond
    STATEVECTOR_LIMIT, where dense 2n-qubit vectors stop being practical.
    """
    if method == "auto":
        function = oracle.function if isinstance(oracle, QueryCountingOracle) else oracle
        tabulated = hasattr(function, "values")
        method = "statevector" if oracle.n <= STATEVECTOR_LIMIT and tabulated else "analytic"
    if method == "statevector":
        return simulate_simon_round(oracle, rng)
    if method == "analytic":
        return _analytic_simon_round(oracle, rng)
    raise ValueError(f"unknown sampling method {method!r}")


def ceil_log2_reciprocal(x: Fraction) -> int:
    """Smallest integer t >= 0 with 2**t >= 1/x, for 0 < x <= 1."""
    x = Fraction(x)
    if not 0 < x <= 1:
        raise ValueError("argument must lie in (0, 1]")
    t = 0
    while (x.numerator << t) < x.denominator:
        t += 1
    return t


def round_count(n: int, epsilon: Fraction) -> int:
    """Number of sampling rounds used by the decision algorithm."""
    return n - 1 + ceil_log2_reciprocal(Fraction(epsilon))


@dataclass(frozen=True)
class DecisionOutcome:
    verdict: str  # "accept" (injective) or "reject" (period found)
    queries: int
    rounds: tuple[int, ...]
    pair_test: tuple[int, bool] | None  # (candidate period, values matched)


def simon_decide(
    oracle: QueryCountingOracle,
    n: int,
    epsilon: Fraction,
    rng,
    method: str = "auto",
) -> DecisionOutcome:
    """Decide whether the oracle hides the trivial subgroup or an order-2 one.

    Collects r = n - 1 + ceil(log2(1/epsilon)) round outcomes, spans them,
    picks the smallest nonzero vector orthogonal to the span as the candidate
    period, and rejects iff f(0) = f(candidate).  Injective instances are
    always accepted; order-2 instances are accepted with probability at most
    2**(n - 1 - r) <= epsilon.  The query counter always advances by r + 2:
    when the span reaches full dimension the pair test is skipped but still
    charged, keeping the query count deterministic per n.
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < Fraction(1, 2):
        raise ValueError("error bound must lie in (0, 1/2)")
    if oracle.n != n:
        raise ValueError("oracle dimension mismatch")
    before = oracle.count
    r = round_count(n, epsilon)
    span = SpanAccumulator(n)
    outcomes = []
    for _ in range(r):
        y = sample_round(oracle, rng, method)
        outcomes.append(y)
        span.add(y)
    if span.dim == n:
        oracle.charge(2)
        verdict, pair = "accept", None
    else:
        candidate = orthogonal_complement(span.to_subspace()).min_nonzero()
        matched = oracle.evaluate(0) == oracle.evaluate(candidate)
        verdict = "reject" if matched else "accept"
        pair = (candidate, matched)
    assert oracle.count - before == r + 2
    return DecisionOutcome(verdict, oracle.count - before, tuple(outcomes), pair)


def hsp_solve(
    oracle: QueryCountingOracle,
    n: int,
    delta: Fraction,
    rng,
    method: str = "auto",
) -> Subspace:
    """Recover an arbitrary hidden subgroup from n + ceil(log2(1/delta))
    round outcomes; correct with probability at least 1 - delta."""
    delta = Fraction(delta)
    if not 0 < delta < 1:
        raise ValueError("failure probability must lie in (0, 1)")
    if oracle.n != n:
        raise ValueError("oracle dimension mismatch")
    span = SpanAccumulator(n)
    for _ in range(n + ceil_log2_reciprocal(delta)):
        span.add(sample_round(oracle, rng, method))
    return orthogonal_complement(span.to_subspace())


def classical_decide(oracle: QueryCountingOracle, n: int, q: int, rng) -> str:
    """Classical baseline: query q distinct uniform points and reject iff a
    collision is seen.  One-sided, like the quantum decision."""
    if not 1 <= q <= 1 << n:
        raise ValueError("query budget must lie in [1, 2**n]")
    points = rng.choice(1 << n, size=q, replace=False)
    values = [oracle.evaluate(int(p)) for p in points]
    return "reject" if len(set(values)) < q else "accept"


def collision_detection_probability(n: int, q: int) -> Fraction:
    """Exact probability that q distinct uniform queries reveal the collision
    structure of an order-2 hiding function."""
    size = 1 << n
    if not 1 <= q <= size:
        raise ValueError("query budget must lie in [1, 2**n]")
    miss = Fraction(1)
    for i in range(1, q):
        if size - 2 * i <= 0:
            miss = Fraction(0)
            break
        miss *= Fraction(size - 2 * i, size - i)
    return 1 - miss
