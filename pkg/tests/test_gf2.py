"""Subspace arithmetic, enumeration, and counting over GF(2)."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simonlab import gf2
from simonlab.gf2 import (
    SpanAccumulator,
    Subspace,
    coset_representative,
    count_containing,
    count_subgroups,
    enumerate_subspaces,
    full_space,
    member,
    orthogonal_complement,
    random_subspace,
    rref,
    trivial_subspace,
)


def test_rref_empty_span():
    space = rref([], 3)
    assert space.dim == 0 and space.n == 3


def test_rref_duplicates_collapse():
    space = rref([0b011, 0b011], 3)
    assert space.dim == 1 and space.basis == (0b011,)


def test_rref_dependent_triple():
    space = rref([0b011, 0b101, 0b110], 3)
    assert space.dim == 2
    assert member(space, 0b110)


def test_rref_rejects_out_of_range_vectors():
    with pytest.raises(ValueError):
        rref([0b100], 2)


@settings(max_examples=60)
@given(st.integers(1, 6), st.lists(st.integers(0, 63), max_size=8))
def test_rref_idempotent_and_order_free(n, vectors):
    vectors = [v & ((1 << n) - 1) for v in vectors]
    space = rref(vectors, n)
    assert rref(space.basis, n) == space
    assert rref(list(reversed(vectors)), n) == space
    for v in vectors:
        assert member(space, v)


def test_member_basics():
    assert member(trivial_subspace(3), 0)
    line = rref([0b011], 3)
    assert member(line, 0b011)
    assert not member(line, 0b010)
    for g in range(4):
        assert member(full_space(2), g)


def test_member_dimension_mismatch():
    with pytest.raises(ValueError):
        member(rref([0b01], 2), 0b100)


def test_enumerate_small_cases():
    assert {s.basis for s in enumerate_subspaces(2, 1)} == {(0b01,), (0b10,), (0b11,)}
    assert enumerate_subspaces(3, 0) == [trivial_subspace(3)]
    assert len(enumerate_subspaces(3, 1)) == 7


def test_enumerate_matches_counting_formula():
    for n in range(6):
        for k in range(n + 1):
            assert len(enumerate_subspaces(n, k)) == count_subgroups(n, k)


def test_enumerate_out_of_range():
    with pytest.raises(ValueError):
        enumerate_subspaces(9, 1)
    with pytest.raises(ValueError):
        enumerate_subspaces(3, 4)


def test_count_subgroups_values():
    assert count_subgroups(3, 1) == 7
    assert count_subgroups(4, 2) == 35
    assert count_subgroups(5, 2) == 155
    for n in range(8):
        assert count_subgroups(n, 0) == 1
        assert count_subgroups(n, n) == 1
    assert count_subgroups(3, 5) == 0


def test_subspace_lattice_total_matches_distinct_spans():
    # Every subset of the group spans some subspace; the distinct spans are
    # exactly the subspaces of every dimension.
    for n in (2, 3):
        elements = range(1 << n)
        spans = set()
        for size in range(len(list(elements)) + 1):
            for subset in itertools.combinations(elements, size):
                spans.add(rref(subset, n))
        assert len(spans) == sum(count_subgroups(n, k) for k in range(n + 1))


def test_orthogonal_complement_cases():
    assert orthogonal_complement(trivial_subspace(3)) == full_space(3)
    assert orthogonal_complement(full_space(3)) == trivial_subspace(3)
    diag = rref([0b11], 2)
    assert orthogonal_complement(diag) == diag


def test_orthogonal_complement_properties():
    for n in range(5):
        for k in range(n + 1):
            for space in enumerate_subspaces(n, k):
                dual = orthogonal_complement(space)
                assert space.dim + dual.dim == n
                assert orthogonal_complement(dual) == space
                for y in range(1 << n):
                    expected = all(gf2.dot(y, b) == 0 for b in space.basis)
                    assert member(dual, y) == expected


def test_count_containing():
    assert count_containing(2, rref([0b01], 2), 1) == 1
    assert count_containing(3, rref([0b001], 3), 2) == 3
    for n in (3, 4):
        for k in range(n + 1):
            assert count_containing(n, trivial_subspace(n), k) == count_subgroups(n, k)
    assert count_containing(3, rref([0b001, 0b010], 3), 1) == 0


def test_count_containing_matches_enumeration():
    for n in (3, 4):
        for kp in range(n + 1):
            for sub in enumerate_subspaces(n, kp):
                for k in range(n + 1):
                    direct = sum(
                        1
                        for big in enumerate_subspaces(n, k)
                        if big.contains_subspace(sub)
                    )
                    assert count_containing(n, sub, k) == direct


def test_coset_representative():
    line = rref([0b01], 2)
    assert coset_representative(line, 0b11) == 0b10
    assert coset_representative(trivial_subspace(3), 5) == 5
    H = rref([0b011, 0b100], 3)
    for h in H.elements():
        assert coset_representative(H, h) == 0


def test_coset_representative_is_coset_minimum():
    for k in range(4):
        for space in enumerate_subspaces(3, k):
            for g in range(8):
                rep = coset_representative(space, g)
                coset = {g ^ h for h in space.elements()}
                assert rep == min(coset)
                for other in coset:
                    assert coset_representative(space, other) == rep


def test_subspace_text_format_round_trip():
    space = rref([0b1010, 0b0110], 4)
    lines = space.to_lines()
    assert all(set(line) <= {"0", "1"} and len(line) == 4 for line in lines)
    assert Subspace.from_lines(lines) == space
    assert Subspace.from_lines([], n=3) == trivial_subspace(3)


def test_min_nonzero():
    space = rref([0b110, 0b011], 3)
    assert space.min_nonzero() == min(set(space.elements()) - {0})
    with pytest.raises(ValueError):
        trivial_subspace(2).min_nonzero()


@settings(max_examples=40)
@given(st.integers(1, 6), st.lists(st.integers(0, 63), max_size=10))
def test_span_accumulator_matches_rref(n, vectors):
    vectors = [v & ((1 << n) - 1) for v in vectors]
    acc = SpanAccumulator(n)
    for v in vectors:
        acc.add(v)
    assert acc.to_subspace() == rref(vectors, n)
    assert acc.dim == rref(vectors, n).dim


def test_random_subspace_uniform():
    rng = np.random.default_rng(99)
    counts = {space: 0 for space in enumerate_subspaces(3, 1)}
    draws = 7000
    for _ in range(draws):
        counts[random_subspace(3, 1, rng)] += 1
    expected = draws / 7
    sigma = (draws * (1 / 7) * (6 / 7)) ** 0.5
    for space, count in counts.items():
        assert abs(count - expected) <= 4 * sigma, (space, count)
