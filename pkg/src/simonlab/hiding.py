"""Black-box functions over (Z/2Z)^n that hide a subgroup.

A function f hides the subgroup H when f(g) = f(g') iff g xor g' lies in H,
i.e. f is constant on each coset of H and injective across cosets.  The
codomain is fixed to X = {0, ..., 2**n - 1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .gf2 import Subspace, check_element, rref, trivial_subspace
from .rationals import falling_factorial


def coset_table(space: Subspace) -> np.ndarray:
    """Canonical coset representative of every element, vectorized."""
    table = np.arange(1 << space.n, dtype=np.int64)
    for row in space.basis:
        pivot = row.bit_length() - 1
        table ^= ((table >> pivot) & 1) * row
    return table


@dataclass(frozen=True, eq=False)
class HidingFunction:
    """A full value table f : (Z/2Z)^n -> X together with the subgroup it hides."""

    n: int
    values: np.ndarray
    hidden: Subspace

    def __post_init__(self) -> None:
        if self.hidden.n != self.n:
            raise ValueError("hidden subgroup dimension mismatch")
        if len(self.values) != 1 << self.n:
            raise ValueError("value table must have length 2**n")
        self.values.setflags(write=False)

    def value(self, g: int) -> int:
        check_element(g, self.n)
        return int(self.values[g])

    __call__ = value

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "values": [int(v) for v in self.values],
            "hidden_basis": self.hidden.to_lines(),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "HidingFunction":
        n = int(data["n"])
        hidden = (
            Subspace.from_lines(data["hidden_basis"], n)
            if data["hidden_basis"]
            else trivial_subspace(n)
        )
        return HidingFunction(n, np.asarray(data["values"], dtype=np.int64), hidden)


class LazyHidingFunction:
    """A hiding function sampled on demand.

    Coset labels are drawn uniformly without replacement only when a coset is
    first queried, which matches the distribution of a fully tabulated random
    hiding function while keeping large-n Monte Carlo runs cheap.  Only the
    streaming `value` interface is available.
    """

    def __init__(self, hidden: Subspace, rng) -> None:
        self.n = hidden.n
        self.hidden = hidden
        self._rng = rng
        self._labels: dict[int, int] = {}
        self._used: set[int] = set()

    def value(self, g: int) -> int:
        rep = self.hidden.reduce(g)
        label = self._labels.get(rep)
        if label is None:
            size = 1 << self.n
            while True:
                label = int(self._rng.integers(0, size))
                if label not in self._used:
                    break
            self._used.add(label)
            self._labels[rep] = label
        return label

    __call__ = value


@dataclass(frozen=True)
class PartialAssignment:
    """A partial function from (Z/2Z)^n to X, stored as sorted (point, value) pairs."""

    n: int
    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        points = [p for p, _ in self.entries]
        for p, v in self.entries:
            check_element(p, self.n)
            check_element(v, self.n)
        if len(set(points)) != len(points):
            raise ValueError("assignment points must be distinct")
        object.__setattr__(self, "entries", tuple(sorted(self.entries)))

    @staticmethod
    def from_mapping(n: int, mapping: Mapping[int, int]) -> "PartialAssignment":
        return PartialAssignment(n, tuple(mapping.items()))

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    def is_constant(self) -> bool:
        return len({v for _, v in self.entries}) <= 1

    def is_injective(self) -> bool:
        values = [v for _, v in self.entries]
        return len(set(values)) == len(values)


class QueryCountingOracle:
    """Wraps a hiding function and counts every oracle use.

    The counter advances by one per classical evaluation and, via `charge`,
    by one per simulated quantum oracle application.
    """

    def __init__(self, function) -> None:
        self.function = function
        self.count = 0

    @property
    def n(self) -> int:
        return self.function.n

    @property
    def hidden(self) -> Subspace:
        return self.function.hidden

    def evaluate(self, g: int) -> int:
        self.count += 1
        return self.function.value(g)

    def charge(self, applications: int = 1) -> None:
        self.count += applications


def random_hiding_function(hidden: Subspace, rng) -> HidingFunction:
    """Uniformly random function hiding the given subgroup.

    A uniformly random permutation of X restricted to the canonical coset
    representatives is a uniformly random injection from cosets to X.
    """
    labels = rng.permutation(1 << hidden.n)
    values = labels[coset_table(hidden)]
    return HidingFunction(hidden.n, values.astype(np.int64), hidden)


def hides(values, space: Subspace) -> bool:
    """True iff the value table is constant on each coset of `space` and
    injective across cosets (the two directions of the hiding equivalence)."""
    table = np.asarray(values, dtype=np.int64)
    if len(table) != 1 << space.n:
        raise ValueError("value table must have length 2**n")
    reps = coset_table(space)
    if not np.array_equal(table, table[reps]):
        return False
    rep_points = np.unique(reps)
    return len(np.unique(table[rep_points])) == len(rep_points)


def hidden_subgroup_of(values) -> Subspace | None:
    """The unique subgroup hidden by the table, or None if there is none.

    The candidate is the level set of f(0); it must be a subspace and the
    whole table must respect it.
    """
    table = np.asarray(values, dtype=np.int64)
    size = len(table)
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError("value table length must be a power of two")
    level = [g for g in range(size) if table[g] == table[0]]
    if len(level) & (len(level) - 1):
        return None
    candidate = rref(level, n)
    if candidate.order != len(level):
        return None
    if not hides(table, candidate):
        return None
    return candidate


def simon_instance(n: int, case: int, rng) -> HidingFunction:
    """A uniformly random promise instance: case 1 is injective, case 2
    hides a uniformly random order-2 subgroup."""
    if case == 1:
        hidden = trivial_subspace(n)
    elif case == 2:
        s = int(rng.integers(1, 1 << n))
        hidden = rref([s], n)
    else:
        raise ValueError("case must be 1 or 2")
    return random_hiding_function(hidden, rng)


def extends(f, assignment: PartialAssignment) -> bool:
    """True iff f agrees with the partial assignment on its whole domain."""
    if f.n != assignment.n:
        raise ValueError("dimension mismatch")
    return all(f.value(p) == v for p, v in assignment.entries)


def count_extensions(
    hidden: Subspace,
    assignment: PartialAssignment,
    range_size: int | None = None,
) -> int:
    """Exact number of functions hiding `hidden` that extend the assignment.

    Zero when the assignment is inconsistent with the coset structure (two
    same-coset points with different values, or two different-coset points
    with equal values).  Otherwise the pinned cosets fix their labels and the
    remaining cosets take distinct fresh labels in falling-factorial count.
    """
    if assignment.n != hidden.n:
        raise ValueError("dimension mismatch")
    size = range_size if range_size is not None else 1 << hidden.n
    rep_value: dict[int, int] = {}
    value_rep: dict[int, int] = {}
    for point, value in assignment.entries:
        rep = hidden.reduce(point)
        if rep_value.setdefault(rep, value) != value:
            return 0
        if value_rep.setdefault(value, rep) != rep:
            return 0
    cosets = 1 << (hidden.n - hidden.dim)
    pinned = len(rep_value)
    return falling_factorial(size - pinned, cosets - pinned)


def all_hiding_functions(hidden: Subspace) -> Iterator[np.ndarray]:
    """Every value table hiding the subgroup, one per injection cosets -> X."""
    reps = coset_table(hidden)
    rep_points = sorted(set(int(r) for r in reps))
    rank = {rep: i for i, rep in enumerate(rep_points)}
    rank_of = np.asarray([rank[int(r)] for r in reps], dtype=np.int64)
    for labels in itertools.permutations(range(1 << hidden.n), len(rep_points)):
        yield np.asarray(labels, dtype=np.int64)[rank_of]
