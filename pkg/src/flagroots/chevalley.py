"""Integer structure constants and the compact real form bracket.

The complex algebra carries a Chevalley basis {e_x : x a root} with
[e_x, e_y] = N(x,y) e_{x+y} and |N(x,y)| = p+1.  Signs are fixed by the
extraspecial-pair rule over the canonical root order.  The table stored
here is for the sign-adjusted basis f_x = e_x (x > 0), f_{-x} = -e_x,
in which the constants obey

    N(x,y) = -N(y,x),   N(x,y) = N(-x,-y),   N(x,-y) = N(-x,y),

the symmetric convention the real-form formulas below rely on.

The compact real form has basis {A_x, B_x, sqrt(-1) h_i} with
A_x = f_x + f_{-x} and B_x = sqrt(-1)(f_x - f_{-x}) for positive x.
Its bracket (with B_{-y} = -B_y, A_{-y} = A_y understood):

    [A_x, A_y] = N(x,y) A_{x+y} + N(x,-y) A_{x-y}
    [B_x, B_y] = -N(x,y) A_{x+y} + N(x,-y) A_{x-y}
    [A_x, B_y] = N(x,y) B_{x+y} + N(x,-y) B_{y-x}
    [A_x, B_x] = 2 sqrt(-1) h_x
    [sqrt(-1)h, A_y] = y(h) B_y,   [sqrt(-1)h, B_y] = -y(h) A_y

where h_x is the coroot of x and y(h_i) the integer coroot pairing.
These are forced by the f-basis expansion and the Jacobi identity;
sign conventions never create or destroy a zero bracket.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .rootsys import (
    Coeffs,
    FlagrootsError,
    Root,
    RootSystem,
    SCHEMA_VERSION,
    _vec_add,
    _vec_neg,
    _vec_sub,
    canonical_key,
)

Scalar = int | Fraction


class MixedSystemError(FlagrootsError):
    """Operands belong to different root systems."""


def _is_positive(v: Coeffs) -> bool:
    return sum(v) > 0


class StructureConstantTable:
    """All constants N(x,y), x, y, x+y roots, in the symmetric convention.

    Immutable after construction; bracket evaluation is pure.
    """

    def __init__(self, system: RootSystem):
        self.system = system
        self._carter: dict[tuple[Coeffs, Coeffs], int] = {}
        self._build_positive_pairs()
        self.n_map: dict[tuple[Coeffs, Coeffs], int] = self._expand_all_pairs()
        self._coroot: dict[Coeffs, Coeffs] = {
            tuple(r): self._coroot_coeffs(r) for r in system.positive_roots
        }

    # -- construction ------------------------------------------------

    def _string_p(self, a: Coeffs, b: Coeffs) -> int:
        members = self.system._members
        p = 0
        down = _vec_sub(b, a)
        while down in members:
            p += 1
            down = _vec_sub(down, a)
        return p

    def _build_positive_pairs(self) -> None:
        """Fix signs by extraspecial pairs, ascending canonical order."""
        pos = [tuple(r) for r in self.system.positive_roots]
        order = {r: k for k, r in enumerate(pos)}
        members = self.system._members
        for gamma in pos:
            decomps = [
                (a, _vec_sub(gamma, a))
                for a in pos
                if _vec_sub(gamma, a) in order and order[a] < order[_vec_sub(gamma, a)]
            ]
            if not decomps:
                continue
            decomps.sort(key=lambda ab: order[ab[0]])
            a1, b1 = decomps[0]
            self._carter[(a1, b1)] = self._string_p(a1, b1) + 1
            for a, b in decomps[1:]:
                # Jacobi on (e_{-a1}, e_a, e_b); every factor on the right
                # has a lower-height sum, so it is already determined.
                rhs = 0
                if _vec_sub(b, a1) in members:
                    rhs += self._n_carter(b, _vec_neg(a1)) * self._n_carter(a, _vec_sub(b, a1))
                if _vec_sub(a, a1) in members:
                    rhs += self._n_carter(_vec_neg(a1), a) * self._n_carter(b, _vec_sub(a, a1))
                denom = self._n_carter(_vec_neg(a1), gamma)
                num = -rhs
                if denom == 0 or num % denom != 0:
                    raise FlagrootsError("inconsistent structure-constant recursion")
                val = num // denom
                expected = self._string_p(a, b) + 1
                if abs(val) != expected:
                    raise FlagrootsError("structure-constant magnitude check failed")
                self._carter[(a, b)] = val

    def _n_carter(self, x: Coeffs, y: Coeffs) -> int:
        """N(x,y) in the raw Chevalley convention, any sign pattern."""
        px, py = _is_positive(x), _is_positive(y)
        if px and py:
            if (x, y) in self._carter:
                return self._carter[(x, y)]
            return -self._carter[(y, x)]
        if not px and not py:
            return -self._n_carter(_vec_neg(x), _vec_neg(y))
        if not px:
            return -self._n_carter(y, x)
        # x > 0 > y; reduce to a positive pair via norm-weighted identities.
        cartan = self.system.cartan
        z = _vec_add(x, y)
        if _is_positive(z):
            num = self._n_carter(z, _vec_neg(y)) * cartan.normsq(z)
            den = cartan.normsq(x)
        else:
            num = self._n_carter(_vec_neg(z), x) * cartan.normsq(z)
            den = cartan.normsq(y)
        if num % den != 0:
            raise FlagrootsError("non-integral structure constant reduction")
        return num // den

    def _expand_all_pairs(self) -> dict[tuple[Coeffs, Coeffs], int]:
        """The stored table over all ordered root pairs, f-basis signs."""
        members = self.system._members
        all_roots = [tuple(r) for r in self.system.iter_all_roots()]
        table: dict[tuple[Coeffs, Coeffs], int] = {}
        for x in all_roots:
            sx = 1 if _is_positive(x) else -1
            for y in all_roots:
                s = _vec_add(x, y)
                if s not in members:
                    continue
                sy = 1 if _is_positive(y) else -1
                ss = 1 if _is_positive(s) else -1
                table[(x, y)] = sx * sy * ss * self._n_carter(x, y)
        return table

    def _coroot_coeffs(self, root: Sequence[int]) -> Coeffs:
        """h_root in the basis of simple coroots; always integral."""
        cartan = self.system.cartan
        d_root = cartan.normsq(root) // 2
        out = []
        for i, m in enumerate(root):
            num = m * cartan.symmetrizer[i]
            if num % d_root != 0:
                raise FlagrootsError("non-integral coroot coefficient")
            out.append(num // d_root)
        return tuple(out)

    # -- queries -----------------------------------------------------

    def n(self, x: Sequence[int], y: Sequence[int]) -> int:
        """N(x,y); zero when x+y is not a root."""
        return self.n_map.get((tuple(x), tuple(y)), 0)

    def coroot(self, root: Sequence[int]) -> Coeffs:
        v = tuple(root)
        if v in self._coroot:
            return self._coroot[v]
        neg = _vec_neg(v)
        if neg in self._coroot:
            return _vec_neg(self._coroot[neg])
        raise FlagrootsError(f"{v} is not a root")

    def to_dict(self) -> dict:
        pos = self.system.positive_roots
        pairs = sorted(
            self.n_map.items(),
            key=lambda kv: (canonical_key(kv[0][0]), canonical_key(kv[0][1])),
        )
        return {
            "schema_version": SCHEMA_VERSION,
            "family": self.system.lie_type.family,
            "pairs": [[list(x), list(y), n] for (x, y), n in pairs],
        }

    def to_json(self) -> str:
        """Canonical JSON dump of the table, for external cross-validation."""
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def build_constants(system: RootSystem) -> StructureConstantTable:
    """Structure constants of a root system, deterministic signs."""
    return StructureConstantTable(system)


@dataclass
class AlgebraElement:
    """A compact-real-form element in sparse canonical form.

    cartan holds coordinates over sqrt(-1) h_{a_1} .. sqrt(-1) h_{a_l};
    a and b map positive roots to the coefficients of A_root / B_root.
    Zero coefficients are never stored.  Treated as immutable.
    """

    system: RootSystem
    cartan: tuple[Scalar, ...]
    a: dict[Coeffs, Scalar] = field(default_factory=dict)
    b: dict[Coeffs, Scalar] = field(default_factory=dict)

    @classmethod
    def zero(cls, system: RootSystem) -> "AlgebraElement":
        return cls(system, (0,) * system.rank)

    @classmethod
    def basis_a(cls, system: RootSystem, root: Sequence[int], coeff: Scalar = 1) -> "AlgebraElement":
        r = tuple(system.root(root))
        if not _is_positive(r):
            r = _vec_neg(r)
        return cls(system, (0,) * system.rank, a={r: coeff} if coeff else {})

    @classmethod
    def basis_b(cls, system: RootSystem, root: Sequence[int], coeff: Scalar = 1) -> "AlgebraElement":
        r = tuple(system.root(root))
        if not _is_positive(r):
            r, coeff = _vec_neg(r), -coeff
        return cls(system, (0,) * system.rank, b={r: coeff} if coeff else {})

    @classmethod
    def basis_h(cls, system: RootSystem, i: int, coeff: Scalar = 1) -> "AlgebraElement":
        cartan = tuple(coeff if j == i else 0 for j in range(system.rank))
        return cls(system, cartan)

    def is_zero(self) -> bool:
        return not self.a and not self.b and not any(self.cartan)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check(other)
        a = dict(self.a)
        for k, v in other.a.items():
            w = a.get(k, 0) + v
            if w:
                a[k] = w
            else:
                a.pop(k, None)
        b = dict(self.b)
        for k, v in other.b.items():
            w = b.get(k, 0) + v
            if w:
                b[k] = w
            else:
                b.pop(k, None)
        cartan = tuple(x + y for x, y in zip(self.cartan, other.cartan))
        return AlgebraElement(self.system, cartan, a, b)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (other * -1)

    def __mul__(self, scalar: Scalar) -> "AlgebraElement":
        if not scalar:
            return AlgebraElement.zero(self.system)
        return AlgebraElement(
            self.system,
            tuple(scalar * c for c in self.cartan),
            {k: scalar * v for k, v in self.a.items()},
            {k: scalar * v for k, v in self.b.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return (
            self.system is other.system
            and self.a == other.a
            and self.b == other.b
            and tuple(self.cartan) == tuple(other.cartan)
        )

    def _check(self, other: "AlgebraElement") -> None:
        if self.system is not other.system:
            raise MixedSystemError("elements live over different root systems")

    def support(self) -> set[Coeffs]:
        return set(self.a) | set(self.b)


def _acc(store: dict[Coeffs, Scalar], key: Coeffs, value: Scalar) -> None:
    if not value:
        return
    w = store.get(key, 0) + value
    if w:
        store[key] = w
    else:
        del store[key]


def bracket(table: StructureConstantTable, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket of two real-form elements, exact coefficients."""
    if x.system is not table.system or y.system is not table.system:
        raise MixedSystemError("elements do not match the constant table")
    system = table.system
    members = system._members
    n = table.n
    out_a: dict[Coeffs, Scalar] = {}
    out_b: dict[Coeffs, Scalar] = {}
    out_h = [0] * system.rank

    def pairing(root: Coeffs) -> Coeffs:
        return system.cartan.coroot_pairing(root)

    # [A,A] and [B,B]: both land on A components.
    for (al, ca) in x.a.items():
        for (bt, cb) in y.a.items():
            if al == bt:
                continue
            c = ca * cb
            s = _vec_add(al, bt)
            if s in members:
                _acc(out_a, s, c * n(al, bt))
            d = _vec_sub(al, bt)
            if d in members:
                key = d if _is_positive(d) else _vec_neg(d)
                _acc(out_a, key, c * n(al, _vec_neg(bt)))
    for (al, ca) in x.b.items():
        for (bt, cb) in y.b.items():
            if al == bt:
                continue
            c = ca * cb
            s = _vec_add(al, bt)
            if s in members:
                _acc(out_a, s, -c * n(al, bt))
            d = _vec_sub(al, bt)
            if d in members:
                key = d if _is_positive(d) else _vec_neg(d)
                _acc(out_a, key, c * n(al, _vec_neg(bt)))

    # [A,B] from both orderings; diagonal pairs feed the Cartan part.
    def a_bracket_b(al: Coeffs, bt: Coeffs, c: Scalar, sign: int) -> None:
        if al == bt:
            for i, h in enumerate(table.coroot(al)):
                out_h[i] += sign * 2 * c * h
            return
        s = _vec_add(al, bt)
        if s in members:
            _acc(out_b, s, sign * c * n(al, bt))
        d = _vec_sub(bt, al)
        if d in members:
            if _is_positive(d):
                _acc(out_b, d, sign * c * n(al, _vec_neg(bt)))
            else:
                _acc(out_b, _vec_neg(d), -sign * c * n(al, _vec_neg(bt)))

    for (al, ca) in x.a.items():
        for (bt, cb) in y.b.items():
            a_bracket_b(al, bt, ca * cb, 1)
    for (bt, cb) in x.b.items():
        for (al, ca) in y.a.items():
            a_bracket_b(al, bt, ca * cb, -1)

    # Cartan action: [sqrt(-1)h, A_y] = y(h) B_y, [sqrt(-1)h, B_y] = -y(h) A_y.
    def h_action(hcoeffs: Sequence[Scalar], elem: AlgebraElement, sign: int) -> None:
        if not any(hcoeffs):
            return
        for (bt, cb) in elem.a.items():
            val = sum(h * p for h, p in zip(hcoeffs, pairing(bt)))
            _acc(out_b, bt, sign * cb * val)
        for (bt, cb) in elem.b.items():
            val = sum(h * p for h, p in zip(hcoeffs, pairing(bt)))
            _acc(out_a, bt, -sign * cb * val)

    h_action(x.cartan, y, 1)
    h_action(y.cartan, x, -1)

    return AlgebraElement(system, tuple(out_h), out_a, out_b)


def project_m(pd, x: AlgebraElement) -> AlgebraElement:
    """Projection onto the tangent part: drop Cartan and K-root components."""
    if x.system is not pd.system:
        raise MixedSystemError("element does not match the painted diagram")
    k_roots = pd.k_positive_set
    return AlgebraElement(
        x.system,
        (0,) * x.system.rank,
        {r: c for r, c in x.a.items() if r not in k_roots},
        {r: c for r, c in x.b.items() if r not in k_roots},
    )
