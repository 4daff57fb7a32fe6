"""Linear algebra over GF(2): subspaces of (Z/2Z)^n with int bit-vector bases.

Group elements are plain Python ints in [0, 2**n).  Coordinate i of a vector
is bit n-1-i of the int, so the zero-padded binary string of an element reads
left to right in coordinate order, and lexicographic order on bit strings
coincides with integer order.  Addition is XOR.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

MAX_DIMENSION = 24
DEFAULT_ENUMERATION_CAP = 5


def enumeration_cap() -> int:
    """Ambient-dimension cap for exhaustive subspace enumeration.

    Overridable through the SIMONLAB_MAX_N environment variable.
    """
    return int(os.environ.get("SIMONLAB_MAX_N", DEFAULT_ENUMERATION_CAP))


def check_dimension(n: int) -> None:
    if not 0 <= n <= MAX_DIMENSION:
        raise ValueError(f"dimension must be in [0, {MAX_DIMENSION}], got {n}")


def check_element(g: int, n: int) -> None:
    if not 0 <= g < (1 << n):
        raise ValueError(f"element {g} out of range for dimension {n}")


def dot(a: int, b: int) -> int:
    """Mod-2 inner product of two bit vectors."""
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class Subspace:
    """A subspace of (Z/2Z)^n held as a reduced row-echelon basis.

    Basis rows are ordered by strictly decreasing leading-bit position
    (equivalently, strictly increasing pivot coordinate), and each pivot bit
    is set in exactly one row.  The representation is canonical: two
    subspaces are equal iff their (n, basis) fields are equal.
    """

    n: int
    basis: tuple[int, ...]

    def __post_init__(self) -> None:
        check_dimension(self.n)
        prev_pivot = self.n
        for row in self.basis:
            check_element(row, self.n)
            pivot = row.bit_length() - 1
            if row == 0 or pivot >= prev_pivot:
                raise ValueError("basis is not in reduced row-echelon form")
            prev_pivot = pivot
        for i, row in enumerate(self.basis):
            for j, other in enumerate(self.basis):
                if i != j and (other >> (row.bit_length() - 1)) & 1:
                    raise ValueError("pivot bit appears in more than one row")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def order(self) -> int:
        return 1 << self.dim

    def __contains__(self, g: int) -> bool:
        return member(self, g)

    def reduce(self, g: int) -> int:
        """Clear every pivot bit of g; the unique coset representative.

        The result is the lexicographically (= numerically) smallest element
        of g + self, and the map g -> reduce(g) is linear.
        """
        check_element(g, self.n)
        for row in self.basis:
            if (g >> (row.bit_length() - 1)) & 1:
                g ^= row
        return g

    def elements(self) -> Iterator[int]:
        """All 2**dim elements of the subspace."""
        for mask in range(1 << self.dim):
            value = 0
            while mask:
                low = mask & -mask
                value ^= self.basis[low.bit_length() - 1]
                mask ^= low
            yield value

    def min_nonzero(self) -> int:
        """Smallest nonzero element; the last basis row."""
        if not self.basis:
            raise ValueError("trivial subspace has no nonzero element")
        return self.basis[-1]

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.n != self.n:
            raise ValueError("ambient dimension mismatch")
        return all(member(self, row) for row in other.basis)

    def to_lines(self) -> list[str]:
        """One basis row per line as a {0,1} string of width n."""
        return [format(row, f"0{self.n}b") for row in self.basis]

    @staticmethod
    def from_lines(lines: Sequence[str], n: int | None = None) -> "Subspace":
        rows = [line.strip() for line in lines if line.strip()]
        if n is None:
            if not rows:
                raise ValueError("cannot infer dimension from an empty basis")
            n = len(rows[0])
        if any(len(row) != n or set(row) - {"0", "1"} for row in rows):
            raise ValueError("basis lines must be {0,1} strings of equal width")
        return rref([int(row, 2) for row in rows], n)


def trivial_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, tuple(1 << (n - 1 - i) for i in range(n)))


def rref(vectors: Iterable[int], n: int) -> Subspace:
    """Canonical reduced row-echelon basis of the span of the given vectors."""
    check_dimension(n)
    rows = []
    for v in vectors:
        check_element(v, n)
        for row in rows:
            if (v >> (row.bit_length() - 1)) & 1:
                v ^= row
        if v:
            for i, row in enumerate(rows):
                if (row >> (v.bit_length() - 1)) & 1:
                    rows[i] ^= v
            rows.append(v)
    rows.sort(reverse=True)
    return Subspace(n, tuple(rows))


def member(space: Subspace, g: int) -> bool:
    """True iff g lies in the span of the basis."""
    return space.reduce(g) == 0


def join(space: Subspace, g: int) -> Subspace:
    """Span of the subspace together with one extra element."""
    if member(space, g):
        return space
    return rref(space.basis + (g,), space.n)


class SpanAccumulator:
    """Online Gaussian elimination: grow a span one vector at a time.

    Cheaper than re-canonicalizing after every insertion; convert with
    `to_subspace` when the canonical form is needed.
    """

    def __init__(self, n: int) -> None:
        check_dimension(n)
        self.n = n
        self._rows: dict[int, int] = {}

    @property
    def dim(self) -> int:
        return len(self._rows)

    def add(self, g: int) -> bool:
        """Insert one vector; True iff it enlarged the span."""
        check_element(g, self.n)
        while g:
            pivot = g.bit_length() - 1
            row = self._rows.get(pivot)
            if row is None:
                self._rows[pivot] = g
                return True
            g ^= row
        return False

    def to_subspace(self) -> Subspace:
        return rref(self._rows.values(), self.n)


@lru_cache(maxsize=None)
def _enumerate_cached(n: int, k: int) -> tuple[Subspace, ...]:
    out = []
    # Generate reduced row-echelon bases directly: pick the pivot bits,
    # then fill every free position (non-pivot bits below a row's pivot).
    for pivots in itertools.combinations(range(n), k):
        pivot_bits = sorted(pivots, reverse=True)
        pivot_set = set(pivot_bits)
        free = [
            [b for b in range(p) if b not in pivot_set]
            for p in pivot_bits
        ]
        for choice in itertools.product(*(range(1 << len(f)) for f in free)):
            rows = []
            for p, positions, mask in zip(pivot_bits, free, choice):
                row = 1 << p
                for idx, b in enumerate(positions):
                    if (mask >> idx) & 1:
                        row |= 1 << b
                rows.append(row)
            out.append(Subspace(n, tuple(rows)))
    return tuple(out)


def enumerate_subspaces(n: int, k: int, max_n: int | None = None) -> list[Subspace]:
    """All distinct subspaces of dimension k, each exactly once.

    Guarded by the enumeration cap: the count grows like a Gaussian binomial
    and exhaustive listing is only meant for desk-scale cross-checks.
    """
    cap = enumeration_cap() if max_n is None else max_n
    if not 0 <= n <= cap:
        raise ValueError(f"ambient dimension {n} outside enumeration cap {cap}")
    if not 0 <= k <= n:
        raise ValueError(f"subspace dimension {k} outside [0, {n}]")
    return list(_enumerate_cached(n, k))


def count_subgroups(n: int, k: int) -> int:
    """Number of dimension-k subspaces of (Z/2Z)^n, exactly.

    Computed as a ratio of products of (2**(n-i) - 1) over (2**(k-i) - 1);
    the two products are taken separately in big integers and divided at the
    end, where the quotient is always integral.
    """
    if n < 0 or k < 0:
        raise ValueError("n and k must be nonnegative")
    if k > n:
        return 0
    num = 1
    den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (k - i)) - 1
    quotient, remainder = divmod(num, den)
    assert remainder == 0
    return quotient


@lru_cache(maxsize=8192)
def orthogonal_complement(space: Subspace) -> Subspace:
    """The dual subspace {y : dot(y, h) = 0 for every h in the subspace}."""
    n = space.n
    pivot_bits = [row.bit_length() - 1 for row in space.basis]
    pivot_set = set(pivot_bits)
    rows = []
    for b in range(n):
        if b in pivot_set:
            continue
        y = 1 << b
        for p, row in zip(pivot_bits, space.basis):
            if (row >> b) & 1:
                y |= 1 << p
        rows.append(y)
    return rref(rows, n)


def count_containing(n: int, sub: Subspace, k: int) -> int:
    """Exact number of dimension-k subspaces of (Z/2Z)^n containing `sub`.

    Containment quotients by `sub`, so the count equals the number of
    (k - dim)-dimensional subspaces of an (n - dim)-dimensional space.
    """
    if sub.n != n:
        raise ValueError("ambient dimension mismatch")
    if k < sub.dim:
        return 0
    return count_subgroups(n - sub.dim, k - sub.dim)


def coset_representative(space: Subspace, g: int) -> int:
    """Lexicographically smallest element of the coset g + space."""
    return space.reduce(g)


def random_subspace(n: int, k: int, rng) -> Subspace:
    """A uniformly random dimension-k subspace.

    Rejection-samples k vectors until they are independent; every subspace
    is spanned by the same number of ordered independent k-tuples, so the
    resulting span is uniform.
    """
    check_dimension(n)
    if not 0 <= k <= n:
        raise ValueError(f"subspace dimension {k} outside [0, {n}]")
    while True:
        vectors = [int(rng.integers(0, 1 << n)) for _ in range(k)]
        span = rref(vectors, n)
        if span.dim == k:
            return span
