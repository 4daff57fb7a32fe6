"""State-vector simulation, decision algorithm, and classical baseline."""

import math
from fractions import Fraction

import numpy as np
import pytest

from simonlab import qsim
from simonlab.gf2 import (
    SpanAccumulator,
    enumerate_subspaces,
    full_space,
    member,
    orthogonal_complement,
    rref,
    trivial_subspace,
)
from simonlab.hiding import (
    HidingFunction,
    QueryCountingOracle,
    random_hiding_function,
    simon_instance,
)
from simonlab.polybound import query_lower_bound


def _identity_function(n):
    return HidingFunction(n, np.arange(1 << n, dtype=np.int64), trivial_subspace(n))


def test_oracle_identity_function_copies_register():
    n = 2
    f = _identity_function(n)
    for x in range(1 << n):
        state = qsim.StateVector(2 * n)
        state.amplitudes[:] = 0
        state.amplitudes[x << n] = 1.0  # |x, 0>
        qsim.apply_oracle(state, f, range(n), range(n, 2 * n))
        assert state.amplitudes[(x << n) | x] == 1.0


def test_oracle_is_involution():
    rng = np.random.default_rng(0)
    n = 3
    f = random_hiding_function(rref([0b101], n), rng)
    state = qsim.StateVector(2 * n)
    state.amplitudes = rng.normal(size=1 << (2 * n)) + 1j * rng.normal(size=1 << (2 * n))
    state.amplitudes /= np.linalg.norm(state.amplitudes)
    before = state.amplitudes.copy()
    qsim.apply_oracle(state, f, range(n), range(n, 2 * n))
    assert state.norm_error() <= 1e-10
    qsim.apply_oracle(state, f, range(n), range(n, 2 * n))
    assert np.allclose(state.amplitudes, before, atol=1e-12)


def test_oracle_on_uniform_superposition():
    n = 2
    f = _identity_function(n)
    state = qsim.StateVector(2 * n)
    qsim.apply_hadamard_layer(state, range(n))
    qsim.apply_oracle(state, f, range(n), range(n, 2 * n))
    for x in range(1 << n):
        assert abs(state.amplitudes[(x << n) | x] - 0.5) < 1e-12


def test_oracle_register_validation():
    f = _identity_function(2)
    state = qsim.StateVector(4)
    with pytest.raises(ValueError):
        qsim.apply_oracle(state, f, (0, 1), (1, 2))
    with pytest.raises(ValueError):
        qsim.apply_oracle(state, f, (0,), (1, 2))


def test_hadamard_layer():
    state = qsim.StateVector(3)
    qsim.apply_hadamard_layer(state, range(3))
    assert np.allclose(state.amplitudes, np.full(8, 1 / math.sqrt(8)))
    qsim.apply_hadamard_layer(state, range(3))
    reference = np.zeros(8)
    reference[0] = 1.0
    assert np.allclose(state.amplitudes, reference, atol=1e-10)

    single = qsim.StateVector(1)
    single.amplitudes[:] = (0, 1)
    qsim.apply_hadamard_layer(single, (0,))
    assert np.allclose(single.amplitudes, (1 / math.sqrt(2), -1 / math.sqrt(2)))


def test_round_distribution_closed_forms():
    uniform = qsim.simon_round_distribution(trivial_subspace(2))
    assert uniform == {y: Fraction(1, 4) for y in range(4)}
    point = qsim.simon_round_distribution(full_space(2))
    assert point == {0: Fraction(1)}
    half = qsim.simon_round_distribution(rref([0b11], 2))
    assert half == {0b00: Fraction(1, 2), 0b11: Fraction(1, 2)}


def test_round_distribution_matches_simulation_everywhere():
    rng = np.random.default_rng(17)
    for n in (1, 2, 3, 4):
        for k in range(n + 1):
            for hidden in enumerate_subspaces(n, k):
                f = random_hiding_function(hidden, rng)
                state = qsim.StateVector(2 * n)
                qsim.apply_hadamard_layer(state, range(n))
                qsim.apply_oracle(state, f, range(n), range(n, 2 * n))
                assert state.norm_error() <= 1e-10
                qsim.apply_hadamard_layer(state, range(n))
                assert state.norm_error() <= 1e-10
                probs = qsim.register_distribution(state, range(n))
                exact = qsim.simon_round_distribution(hidden)
                for y in range(1 << n):
                    assert abs(probs[y] - float(exact.get(y, 0))) <= 1e-9


def test_round_distribution_label_invariance():
    rng = np.random.default_rng(29)
    hidden = rref([0b011], 3)
    dists = []
    for _ in range(2):
        f = random_hiding_function(hidden, rng)
        state = qsim.StateVector(6)
        qsim.apply_hadamard_layer(state, range(3))
        qsim.apply_oracle(state, f, range(3), range(3, 6))
        qsim.apply_hadamard_layer(state, range(3))
        dists.append(qsim.register_distribution(state, range(3)))
    assert np.allclose(dists[0], dists[1], atol=1e-12)


def test_pair_test_membership_is_label_invariant():
    rng = np.random.default_rng(41)
    hidden = rref([0b0110], 4)
    for _ in range(3):
        f = random_hiding_function(hidden, rng)
        for candidate in range(1, 16):
            assert (f.value(0) == f.value(candidate)) == member(hidden, candidate)


def test_simon_decide_one_sided_and_query_count():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        for _ in range(400):
            oracle = QueryCountingOracle(simon_instance(n, 1, rng))
            outcome = qsim.simon_decide(oracle, n, Fraction(1, 4), rng)
            assert outcome.verdict == "accept"
            assert outcome.queries == oracle.count == n + 3


def test_simon_decide_rejects_period_instances():
    rng = np.random.default_rng(13)
    rejections = 0
    trials = 2000
    for _ in range(trials):
        oracle = QueryCountingOracle(simon_instance(3, 2, rng))
        outcome = qsim.simon_decide(oracle, 3, Fraction(1, 4), rng)
        rejections += outcome.verdict == "reject"
    assert rejections / trials >= 0.75


def test_simon_decide_transcript_determines_candidate():
    rng = np.random.default_rng(19)
    oracle = QueryCountingOracle(simon_instance(3, 2, rng))
    outcome = qsim.simon_decide(oracle, 3, Fraction(1, 4), rng)
    span = SpanAccumulator(3)
    for y in outcome.rounds:
        span.add(y)
    if outcome.pair_test is not None:
        candidate, matched = outcome.pair_test
        dual = orthogonal_complement(span.to_subspace())
        assert candidate == dual.min_nonzero()
        assert matched == member(oracle.hidden, candidate)


def test_simon_decide_methods_agree_in_distribution():
    rng = np.random.default_rng(23)
    rates = {}
    for method in ("statevector", "analytic"):
        rejections = 0
        for _ in range(600):
            oracle = QueryCountingOracle(simon_instance(3, 2, rng))
            outcome = qsim.simon_decide(oracle, 3, Fraction(1, 4), rng, method=method)
            rejections += outcome.verdict == "reject"
        rates[method] = rejections / 600
    assert abs(rates["statevector"] - rates["analytic"]) < 0.06


def test_query_count_respects_lower_bound():
    for n in range(2, 20):
        upper = n + 3
        bound = query_lower_bound(n, Fraction(1, 4))
        assert Fraction(upper) >= bound.lo


def test_hsp_solve_sweep():
    rng = np.random.default_rng(37)
    for k in range(4):
        for hidden in enumerate_subspaces(3, k):
            hits = 0
            trials = 200
            for _ in range(trials):
                oracle = QueryCountingOracle(random_hiding_function(hidden, rng))
                hits += qsim.hsp_solve(oracle, 3, Fraction(1, 8), rng) == hidden
            assert hits / trials >= 1 - 1 / 8 - 0.05, (hidden, hits)


def test_hsp_full_group_is_deterministic():
    rng = np.random.default_rng(43)
    for _ in range(20):
        oracle = QueryCountingOracle(random_hiding_function(full_space(3), rng))
        assert qsim.hsp_solve(oracle, 3, Fraction(1, 4), rng) == full_space(3)


def test_classical_decide_edges():
    rng = np.random.default_rng(3)
    oracle = QueryCountingOracle(simon_instance(3, 2, rng))
    assert qsim.classical_decide(oracle, 3, 1, rng) == "accept"
    assert oracle.count == 1
    for _ in range(10):
        oracle = QueryCountingOracle(simon_instance(3, 2, rng))
        assert qsim.classical_decide(oracle, 3, 8, rng) == "reject"
    oracle = QueryCountingOracle(simon_instance(3, 1, rng))
    assert qsim.classical_decide(oracle, 3, 8, rng) == "accept"
    with pytest.raises(ValueError):
        qsim.classical_decide(oracle, 3, 9, rng)


def test_classical_detection_probability():
    assert qsim.collision_detection_probability(2, 2) == Fraction(1, 3)
    assert qsim.collision_detection_probability(3, 8) == 1
    assert qsim.collision_detection_probability(4, 1) == 0

    rng = np.random.default_rng(51)
    n, q, trials = 4, 4, 4000
    detected = 0
    for _ in range(trials):
        oracle = QueryCountingOracle(simon_instance(n, 2, rng))
        detected += qsim.classical_decide(oracle, n, q, rng) == "reject"
    p = float(qsim.collision_detection_probability(n, q))
    sigma = (p * (1 - p) / trials) ** 0.5
    assert abs(detected / trials - p) <= 3.5 * sigma


def test_round_count_formula():
    assert qsim.round_count(3, Fraction(1, 4)) == 4
    assert qsim.round_count(5, Fraction(1, 8)) == 7
    assert qsim.ceil_log2_reciprocal(Fraction(1, 5)) == 3
    with pytest.raises(ValueError):
        qsim.simon_decide(
            QueryCountingOracle(_identity_function(2)),
            2,
            Fraction(1, 2),
            np.random.default_rng(0),
        )
