"""Exact root systems for the exceptional Lie types G2, F4, E6, E7, E8.

Roots are integer coefficient vectors over a fixed base of simple roots.
The node numbering follows the diagram convention in which the highest
root of F4 is 2a1+4a2+3a3+2a4 and that of E8 is 2a1+3a2+4a3+5a4+6a5+4a6+
2a7+3a8 (this is *not* the Bourbaki numbering for F4/E6/E7/E8).

All arithmetic is exact; no floats appear anywhere in this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

Coeffs = tuple[int, ...]

SCHEMA_VERSION = 1

# Hard upper bound on |R+| across the supported types (attained by E8).
MAX_POSITIVE_ROOTS = 120


class FlagrootsError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(FlagrootsError):
    """A coefficient vector has the wrong length for its root system."""


class InvalidCartanError(FlagrootsError):
    """A matrix is not a valid Cartan matrix of supported finite type."""


class UndefinedStringError(FlagrootsError):
    """Root strings through b in the direction of a need b != +-a."""


class LieType(Enum):
    """The five supported simple Lie types, keyed by rank."""

    G2 = 2
    F4 = 4
    E6 = 6
    E7 = 7
    E8 = 8

    @property
    def family(self) -> str:
        return self.name

    @property
    def rank(self) -> int:
        return self.value


class Root(tuple):
    """A root as an integer coefficient vector over the simple roots.

    Instances compare and hash like plain tuples.  Checked construction
    goes through :meth:`RootSystem.root`; raw arithmetic on coefficient
    vectors uses plain tuples and wraps verified results.
    """

    __slots__ = ()

    @property
    def height(self) -> int:
        return sum(self)

    @property
    def is_positive(self) -> bool:
        return sum(self) > 0

    def __neg__(self) -> "Root":
        return Root(-c for c in self)

    def __repr__(self) -> str:
        return f"Root({tuple(self)})"


def _vec_add(x: Sequence[int], y: Sequence[int]) -> Coeffs:
    return tuple(a + b for a, b in zip(x, y))

def _vec_sub(x: Sequence[int], y: Sequence[int]) -> Coeffs:
    return tuple(a - b for a, b in zip(x, y))

def _vec_neg(x: Sequence[int]) -> Coeffs:
    return tuple(-a for a in x)


@dataclass(frozen=True)
class CartanMatrix:
    """Cartan matrix with entries A[i][j] = 2(ai,aj)/(ai,ai).

    With this (row) convention the pairing of a root b = sum m_j a_j
    with the i-th simple coroot is the i-th entry of A @ m.  The
    symmetrizer d (d_i = (ai,ai)/2, normalized so short roots have
    squared length 2) makes diag(d) @ A the matrix of inner products.
    """

    entries: tuple[Coeffs, ...]
    symmetrizer: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.entries)
        if n == 0 or any(len(row) != n for row in self.entries):
            raise InvalidCartanError("matrix must be square and nonempty")
        if len(self.symmetrizer) != n or any(d <= 0 for d in self.symmetrizer):
            raise InvalidCartanError("symmetrizer must be positive and of matching length")
        for i in range(n):
            if self.entries[i][i] != 2:
                raise InvalidCartanError("diagonal entries must equal 2")
            for j in range(n):
                if i == j:
                    continue
                a = self.entries[i][j]
                if a not in (0, -1, -2, -3):
                    raise InvalidCartanError(f"off-diagonal entry A[{i}][{j}]={a} out of range")
                if (a == 0) != (self.entries[j][i] == 0):
                    raise InvalidCartanError("zero pattern must be symmetric")
                if self.symmetrizer[i] * a != self.symmetrizer[j] * self.entries[j][i]:
                    raise InvalidCartanError("symmetrizer does not symmetrize the matrix")

    @property
    def rank(self) -> int:
        return len(self.entries)

    def coroot_pairing(self, coeffs: Sequence[int]) -> Coeffs:
        """Pairings <b, ai^> of b = sum coeffs_j a_j with each simple coroot."""
        if len(coeffs) != self.rank:
            raise DimensionMismatchError(
                f"expected length {self.rank}, got {len(coeffs)}")
        return tuple(
            sum(row[j] * coeffs[j] for j in range(self.rank))
            for row in self.entries
        )

    def inner(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Inner product (x, y), normalized so short roots have norm 2."""
        n = self.rank
        return sum(
            self.symmetrizer[i] * self.entries[i][j] * x[i] * y[j]
            for i in range(n) for j in range(n)
        )

    def normsq(self, x: Sequence[int]) -> int:
        return self.inner(x, x)


# Cartan data in the diagram orderings used throughout this package.
# Edge lists give the chain; F4/G2 carry the non-simply-laced entries
# explicitly.  Validated against the printed highest-root marks below.
def _simply_laced(rank: int, edges: Iterable[tuple[int, int]]) -> CartanMatrix:
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        a[i - 1][j - 1] = -1
        a[j - 1][i - 1] = -1
    return CartanMatrix(tuple(tuple(row) for row in a), (1,) * rank)


_CARTAN: dict[LieType, CartanMatrix] = {
    # a1 short (mark 3), a2 long (mark 2); triple edge.
    LieType.G2: CartanMatrix(((2, -3), (-1, 2)), (1, 3)),
    # a1,a2 short, a3,a4 long; double edge between a2 and a3.
    LieType.F4: CartanMatrix(
        ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2)),
        (1, 1, 2, 2),
    ),
    # Chain 1-2-3-4-5 with node 6 attached to node 3.
    LieType.E6: _simply_laced(6, [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)]),
    # Chain 1-..-6 with node 7 attached to node 4.
    LieType.E7: _simply_laced(7, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]),
    # Chain 1-..-7 with node 8 attached to node 5.
    LieType.E8: _simply_laced(8, [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)]),
}


def cartan_matrix(lie_type: LieType) -> CartanMatrix:
    """The hard-coded Cartan matrix of a supported type."""
    return _CARTAN[lie_type]


def canonical_key(coeffs: Sequence[int]) -> tuple[int, Coeffs]:
    """Sort key of the canonical root order: height, then lexicographic."""
    return (sum(coeffs), tuple(coeffs))


def generate_positive_roots(cartan: CartanMatrix) -> list[Root]:
    """All positive roots of a finite-type Cartan matrix, canonically ordered.

    Height-by-height closure: a root b extends to b + a_i exactly when
    the string number q = p - <b, ai^> is positive, where p is the
    largest k with b - k a_i a root.  Raises InvalidCartanError if the
    closure exceeds the theoretical bound |R+| <= 120.
    """
    rank = cartan.rank
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    found: set[Coeffs] = set(simple)
    level = list(simple)
    while level:
        nxt: list[Coeffs] = []
        for beta in level:
            pairing = cartan.coroot_pairing(beta)
            for i in range(rank):
                p = 0
                down = _vec_sub(beta, simple[i])
                while down in found:
                    p += 1
                    down = _vec_sub(down, simple[i])
                if p - pairing[i] >= 1:
                    up = _vec_add(beta, simple[i])
                    if up not in found:
                        found.add(up)
                        nxt.append(up)
        if len(found) > MAX_POSITIVE_ROOTS:
            raise InvalidCartanError(
                "positive-root closure exceeded the finite-type bound; "
                "matrix is not of supported finite type")
        level = nxt
    return [Root(c) for c in sorted(found, key=canonical_key)]


class RootSystem:
    """An indexed root system: positive roots, membership, marks.

    Immutable after construction and safe to share across threads.
    """

    def __init__(self, lie_type: LieType, cartan: CartanMatrix | None = None):
        self.lie_type = lie_type
        self.cartan = cartan if cartan is not None else cartan_matrix(lie_type)
        if self.cartan.rank != lie_type.rank:
            raise InvalidCartanError("matrix rank does not match Lie type")
        self.positive_roots: tuple[Root, ...] = tuple(generate_positive_roots(self.cartan))
        self.index: dict[Coeffs, int] = {
            tuple(r): k for k, r in enumerate(self.positive_roots)
        }
        self._members: frozenset[Coeffs] = frozenset(self.index) | frozenset(
            _vec_neg(r) for r in self.positive_roots
        )
        self.highest_root: Root = self.positive_roots[-1]
        self.marks: Coeffs = tuple(self.highest_root)

    @property
    def rank(self) -> int:
        return self.lie_type.rank

    def __repr__(self) -> str:
        return f"RootSystem({self.lie_type.name}, {len(self.positive_roots)} positive roots)"

    def root(self, coeffs: Sequence[int]) -> Root:
        """Checked constructor: the vector must pass the membership index."""
        v = tuple(coeffs)
        if len(v) != self.rank:
            raise DimensionMismatchError(
                f"expected length {self.rank}, got {len(v)}")
        if v not in self._members:
            raise FlagrootsError(f"{v} is not a root of {self.lie_type.name}")
        return Root(v)

    def is_root(self, coeffs: Sequence[int]) -> bool:
        """True iff the vector or its negative is a positive root."""
        v = tuple(coeffs)
        if len(v) != self.rank:
            raise DimensionMismatchError(
                f"expected length {self.rank}, got {len(v)}")
        return v in self._members

    def root_string(self, alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, int]:
        """(p, q) with p = max k: b - k a in R and q = max k: b + k a in R."""
        a = tuple(alpha)
        b = tuple(beta)
        if not (self.is_root(a) and self.is_root(b)):
            raise FlagrootsError("root_string arguments must be roots")
        if b == a or b == _vec_neg(a):
            raise UndefinedStringError("string through b undefined for b = +-a")
        p = 0
        down = _vec_sub(b, a)
        while down in self._members:
            p += 1
            down = _vec_sub(down, a)
        q = 0
        up = _vec_add(b, a)
        while up in self._members:
            q += 1
            up = _vec_add(up, a)
        return (p, q)

    def reflect(self, i: int, coeffs: Sequence[int]) -> Coeffs:
        """Simple reflection s_i applied to a coefficient vector (0-based i)."""
        pairing = self.cartan.coroot_pairing(coeffs)
        out = list(coeffs)
        out[i] -= pairing[i]
        return tuple(out)

    def iter_all_roots(self) -> Iterator[Root]:
        """Positive roots in canonical order, then their negatives."""
        for r in self.positive_roots:
            yield r
        for r in self.positive_roots:
            yield -r

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "family": self.lie_type.family,
            "rank": self.rank,
            "cartan": {
                "entries": [list(row) for row in self.cartan.entries],
                "symmetrizer": list(self.cartan.symmetrizer),
            },
            "positive_roots": [list(r) for r in self.positive_roots],
        }

    def to_json(self) -> str:
        """Byte-stable JSON serialization (canonical root order)."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def root_system_from_json(text: str) -> RootSystem:
    """Rebuild a RootSystem from its JSON document, verifying the root list."""
    doc = json.loads(text)
    lie_type = LieType[doc["family"]]
    cartan = CartanMatrix(
        tuple(tuple(row) for row in doc["cartan"]["entries"]),
        tuple(doc["cartan"]["symmetrizer"]),
    )
    system = RootSystem(lie_type, cartan)
    listed = [tuple(r) for r in doc["positive_roots"]]
    if listed != [tuple(r) for r in system.positive_roots]:
        raise FlagrootsError("serialized positive roots disagree with generation")
    return system


@lru_cache(maxsize=None)
def root_system(lie_type: LieType) -> RootSystem:
    """Shared immutable RootSystem instance for a supported type."""
    return RootSystem(lie_type)
