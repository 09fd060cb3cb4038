"""Structural equigeodesic subspaces and exact residual verification.

A cross-module pair of complementary roots a, b is compatible when
neither a+b nor a-b is a root; same-module pairs are unconditionally
compatible because [m_i, m_i] lies in the isotropy subalgebra and the
equigeodesic system only constrains distinct modules.  A set of roots
all of whose cross-module pairs are compatible spans a subspace
consisting entirely of equigeodesic vectors, for every invariant
metric; such sets are exactly the cliques of the compatibility graph.

The residual [X, Lambda X]_m is evaluated with exact rational
coefficients, so a zero here is an identity, not a tolerance.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .chevalley import (
    AlgebraElement,
    Scalar,
    StructureConstantTable,
    bracket,
    project_m,
)
from .flag import G2Kind, NotG2TypeError, PaintedDiagram
from .rootsys import Coeffs, FlagrootsError, Root, SCHEMA_VERSION, _vec_add, _vec_sub


class SupportError(FlagrootsError):
    """A tangent vector or family involves roots outside R_M+."""


@dataclass(frozen=True)
class MetricVector:
    """One positive scaling parameter per isotropy module."""

    lambdas: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "lambdas", tuple(Fraction(v) for v in self.lambdas))
        if any(v <= 0 for v in self.lambdas):
            raise FlagrootsError("metric parameters must be strictly positive")

    def __getitem__(self, module_index: int) -> Fraction:
        """Parameter of a 1-based module index."""
        return self.lambdas[module_index - 1]


@dataclass(frozen=True)
class StructuralFamily:
    """Candidate family: a set of (module index, root) members."""

    space: PaintedDiagram
    members: frozenset[tuple[int, Root]]

    def __post_init__(self) -> None:
        if not self.members:
            raise FlagrootsError("a structural family must be nonempty")
        roots = [r for _, r in self.members]
        if len(set(roots)) != len(roots):
            raise FlagrootsError("duplicate roots in family")
        for k, r in self.members:
            if self.space.module_index(r) != k:
                raise FlagrootsError(
                    f"root {tuple(r)} is not in module {k}")

    @classmethod
    def from_roots(cls, space: PaintedDiagram, roots: Iterable[Sequence[int]]) -> "StructuralFamily":
        members = frozenset(
            (space.module_index(r), space.system.root(r)) for r in roots)
        return cls(space, members)

    def modules(self) -> set[int]:
        return {k for k, _ in self.members}

    def sorted_members(self) -> list[tuple[int, Root]]:
        return sorted(self.members, key=lambda kr: (kr[0], sum(kr[1]), tuple(kr[1])))

    def root_set(self) -> frozenset[Coeffs]:
        return frozenset(tuple(r) for _, r in self.members)

    def to_dict(self, structural: bool | None = None, maximal: bool | None = None) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "space": self.space.to_dict()["space"],
            "members": [
                {"module": k, "root_coeffs": list(r)} for k, r in self.sorted_members()
            ],
        }
        if structural is not None:
            doc["structural"] = structural
        if maximal is not None:
            doc["maximal"] = maximal
        return doc


class TangentVector:
    """An element of the tangent space: no Cartan part, no K-support."""

    def __init__(self, pd: PaintedDiagram, element: AlgebraElement):
        if element.system is not pd.system:
            raise SupportError("element does not match the painted diagram")
        if any(element.cartan):
            raise SupportError("tangent vectors have no Cartan component")
        bad = [r for r in element.support() if r in pd.k_positive_set]
        if bad:
            raise SupportError(f"support meets R_K: {sorted(bad)}")
        self.space = pd
        self.element = element

    @classmethod
    def from_coefficients(
        cls,
        pd: PaintedDiagram,
        a: dict[Sequence[int], Scalar] | None = None,
        b: dict[Sequence[int], Scalar] | None = None,
    ) -> "TangentVector":
        elem = AlgebraElement.zero(pd.system)
        for root, coeff in (a or {}).items():
            elem = elem + AlgebraElement.basis_a(pd.system, root, coeff)
        for root, coeff in (b or {}).items():
            elem = elem + AlgebraElement.basis_b(pd.system, root, coeff)
        return cls(pd, elem)

    def module_components(self) -> dict[int, AlgebraElement]:
        """Split into per-module pieces X = sum X_i."""
        parts: dict[int, AlgebraElement] = {}
        for r, c in self.element.a.items():
            k = self.space.module_index(r)
            parts.setdefault(k, AlgebraElement.zero(self.space.system)).a[r] = c
        for r, c in self.element.b.items():
            k = self.space.module_index(r)
            parts.setdefault(k, AlgebraElement.zero(self.space.system)).b[r] = c
        return parts


def pair_compatible(pd: PaintedDiagram, alpha: Sequence[int], beta: Sequence[int]) -> bool:
    """True iff the two R_M+ roots can share a structural family.

    Same module: always.  Different modules: neither sum nor difference
    may be a root (that forces every relevant structure constant to
    vanish, so all cross brackets are identically zero).
    """
    a = tuple(alpha)
    b = tuple(beta)
    if a not in pd._m_set or b not in pd._m_set:
        raise SupportError("pair_compatible needs roots from R_M+")
    if a == b:
        raise FlagrootsError("pair_compatible needs two distinct roots")
    if pd.module_index(a) == pd.module_index(b):
        return True
    system = pd.system
    return not system.is_root(_vec_add(a, b)) and not system.is_root(_vec_sub(a, b))


def is_structural_family(family: StructuralFamily) -> bool:
    """Every cross-module pair of members must be compatible."""
    members = family.sorted_members()
    for i, (ki, ri) in enumerate(members):
        for kj, rj in members[i + 1:]:
            if ki == kj:
                continue
            if not pair_compatible(family.space, ri, rj):
                return False
    return True


@dataclass(frozen=True)
class CompatibilityGraph:
    """Vertices are R_M+ roots (module order, then canonical root order);
    adjacency is pair compatibility, kept as per-vertex bitmasks."""

    space: PaintedDiagram
    vertices: tuple[tuple[int, Root], ...]
    adjacency: tuple[int, ...]

    def neighbors(self, v: int) -> int:
        return self.adjacency[v]


def compatibility_graph(pd: PaintedDiagram) -> CompatibilityGraph:
    if pd.classify_g2_type().kind is G2Kind.NOT_G2_TYPE:
        raise NotG2TypeError("compatibility graphs need a G2-type painting")
    vertices: list[tuple[int, Root]] = []
    for k, mod in enumerate(pd.isotropy_decomposition(), start=1):
        for r in mod.roots:
            vertices.append((k, r))
    n = len(vertices)
    adj = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if pair_compatible(pd, vertices[i][1], vertices[j][1]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatibilityGraph(pd, tuple(vertices), tuple(adj))


def _bron_kerbosch_pivot(adj: Sequence[int], n: int) -> list[int]:
    """All maximal cliques as bitmasks, Tomita-style pivoting."""
    cliques: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            cliques.append(r)
            return
        pool = p | x
        pivot, best = -1, -1
        m = pool
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            deg = (p & adj[u]).bit_count()
            if deg > best:
                pivot, best = u, deg
        cand = p & ~adj[pivot]
        while cand:
            v = (cand & -cand).bit_length() - 1
            bit = 1 << v
            cand &= cand - 1
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << n) - 1, 0)
    return cliques


@dataclass(frozen=True)
class EnumerationResult:
    families: tuple[StructuralFamily, ...]
    truncated: bool
    total: int


def enumerate_maximal_families(
    pd: PaintedDiagram,
    min_modules: int = 2,
    cap: int | None = None,
) -> EnumerationResult:
    """All maximal structural families spanning >= min_modules modules.

    Maximal cliques of the compatibility graph, canonically sorted.
    When cap is given, at most cap families are returned and the result
    is flagged truncated; nothing is dropped silently.
    """
    if cap is not None and cap < 0:
        raise FlagrootsError("cap must be nonnegative")
    if min_modules < 1:
        raise FlagrootsError("min_modules must be at least 1")
    graph = compatibility_graph(pd)
    n = len(graph.vertices)
    masks = _bron_kerbosch_pivot(graph.adjacency, n)
    families = []
    for mask in masks:
        idxs = []
        m = mask
        while m:
            idxs.append((m & -m).bit_length() - 1)
            m &= m - 1
        mods = {graph.vertices[i][0] for i in idxs}
        if len(mods) < min_modules:
            continue
        members = frozenset(graph.vertices[i] for i in idxs)
        families.append(StructuralFamily(pd, members))
    families.sort(key=lambda f: [(k, sum(r), tuple(r)) for k, r in f.sorted_members()])
    total = len(families)
    truncated = cap is not None and total > cap
    if truncated:
        families = families[:cap]
    return EnumerationResult(tuple(families), truncated, total)


def scale_by_metric(x: TangentVector, metric: MetricVector) -> AlgebraElement:
    """Lambda X: scale each module component by its metric parameter."""
    out = AlgebraElement.zero(x.space.system)
    for k, part in x.module_components().items():
        out = out + part * metric[k]
    return out


def equigeodesic_residual(
    table: StructureConstantTable,
    pd: PaintedDiagram,
    x: TangentVector,
    metric: MetricVector,
) -> AlgebraElement:
    """[X, Lambda X]_m with exact rational coefficients."""
    if x.space is not pd:
        raise SupportError("tangent vector belongs to a different painting")
    n_modules = len(pd.isotropy_decomposition())
    if len(metric.lambdas) != n_modules:
        raise FlagrootsError(
            f"metric has {len(metric.lambdas)} parameters, expected {n_modules}")
    lam_x = scale_by_metric(x, metric)
    return project_m(pd, bracket(table, x.element, lam_x))


def is_equigeodesic_all_metrics(
    table: StructureConstantTable, pd: PaintedDiagram, x: TangentVector
) -> bool:
    """True iff all cross-module component brackets vanish identically.

    This is equivalent to the residual vanishing for every invariant
    metric; cross-module brackets already lie in the tangent space, so
    the full bracket is tested, not just its projection.
    """
    if x.space is not pd:
        raise SupportError("tangent vector belongs to a different painting")
    parts = x.module_components()
    keys = sorted(parts)
    for i, ki in enumerate(keys):
        for kj in keys[i + 1:]:
            if not bracket(table, parts[ki], parts[kj]).is_zero():
                return False
    return True


def family_json(family: StructuralFamily, structural: bool, maximal: bool) -> str:
    return json.dumps(
        family.to_dict(structural=structural, maximal=maximal),
        sort_keys=True,
        separators=(",", ":"),
    )
