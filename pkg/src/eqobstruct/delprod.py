"""Simplicial deleted product with twisted integer coefficients.

Cells are ordered pairs ``(σ, τ)`` of vertex-disjoint simplices. The cell
``(σ, τ)`` is an orbit representative when ``σ < τ`` as index tuples.
Chains and cochains only store values on representatives; a value on the
swapped cell ``(τ, σ)`` is recovered with

    (τ, σ) = s · (-1)^(dim σ · dim τ) · (σ, τ)

where ``s`` is +1 for ``Z`` and -1 for ``Z-``. In ``Z2`` everything is
reduced mod 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

from .complex import Simplex, SimplicialComplex

Cell = tuple[Simplex, Simplex]

Z, ZMINUS, Z2 = "Z", "Z-", "Z2"
SYSTEMS = (Z, ZMINUS, Z2)
_ALIASES = {"Z": Z, "Z+": Z, "Z-": ZMINUS, "Zminus": ZMINUS, "Z2": Z2, "Z/2": Z2}


class ChainError(ValueError):
    pass


def normalize_system(system: str) -> str:
    try:
        return _ALIASES[system]
    except KeyError:
        raise ChainError(f"unknown coefficient system {system!r}") from None


def twist(system: str) -> int:
    """``s`` in the rewriting rule (``Z2`` behaves like ``Z``)."""
    return -1 if system == ZMINUS else 1


def system_for_sign(sign: int) -> str:
    """``Z^{+}`` is ``Z`` and ``Z^{-}`` is ``Z-``."""
    return Z if sign > 0 else ZMINUS


def dim(s: Simplex) -> int:
    return len(s) - 1


def is_rep(cell: Cell) -> bool:
    return cell[0] < cell[1]


def swap(cell: Cell) -> Cell:
    return cell[1], cell[0]


def rewrite_sign(cell: Cell, system: str) -> int:
    """Sign turning a coefficient on ``cell`` into one on its representative."""
    if is_rep(cell):
        return 1
    s, t = cell
    return twist(system) * (-1) ** (dim(s) * dim(t))


def simplex_boundary(s: Simplex) -> list[tuple[Simplex, int]]:
    if len(s) == 1:
        return []
    return [(s[:i] + s[i + 1:], (-1) ** i) for i in range(len(s))]


def cell_boundary(cell: Cell) -> list[tuple[Cell, int]]:
    """``∂(σ,τ) = (∂σ, τ) + (-1)^{dim σ} (σ, ∂τ)`` on lifted cells."""
    s, t = cell
    out = [((f, t), e) for f, e in simplex_boundary(s)]
    sign = (-1) ** dim(s)
    out += [((s, f), sign * e) for f, e in simplex_boundary(t)]
    return out


def involution_terms(lifts: Mapping[Cell, int]) -> dict[Cell, int]:
    """``ι⋆(σ,τ) = (-1)^{dim σ dim τ} (τ,σ)`` on lifted chains."""
    out: dict[Cell, int] = {}
    for (s, t), a in lifts.items():
        out[(t, s)] = out.get((t, s), 0) + (-1) ** (dim(s) * dim(t)) * a
    return {c: a for c, a in out.items() if a}


def lifted_boundary(lifts: Mapping[Cell, int]) -> dict[Cell, int]:
    out: dict[Cell, int] = {}
    for cell, a in lifts.items():
        for face, e in cell_boundary(cell):
            out[face] = out.get(face, 0) + e * a
    return {c: a for c, a in out.items() if a}


@dataclass(frozen=True, eq=False)
class DeletedProduct:
    complex: SimplicialComplex

    @cached_property
    def cells(self) -> dict[int, tuple[Cell, ...]]:
        by_deg: dict[int, list[Cell]] = {}
        simplices = sorted(self.complex.simplices)
        for s in simplices:
            ss = set(s)
            for t in simplices:
                if ss.isdisjoint(t):
                    by_deg.setdefault(dim(s) + dim(t), []).append((s, t))
        return {d: tuple(sorted(v)) for d, v in sorted(by_deg.items())}

    @cached_property
    def _reps(self) -> dict[int, tuple[Cell, ...]]:
        return {d: tuple(c for c in cs if is_rep(c)) for d, cs in self.cells.items()}

    @cached_property
    def _rep_index(self) -> dict[int, dict[Cell, int]]:
        return {d: {c: i for i, c in enumerate(cs)} for d, cs in self._reps.items()}

    @property
    def top(self) -> int:
        return max(self.cells, default=-1)

    def cells_of(self, degree: int) -> tuple[Cell, ...]:
        return self.cells.get(degree, ())

    def representatives(self, degree: int) -> tuple[Cell, ...]:
        return self._reps.get(degree, ())

    def rep_index(self, degree: int) -> dict[Cell, int]:
        return self._rep_index.get(degree, {})

    def involution(self, cell: Cell) -> Cell:
        return swap(cell)

    def __contains__(self, cell) -> bool:
        s, t = cell
        return s in self.complex.simplices and t in self.complex.simplices and set(s).isdisjoint(t)

    def census(self) -> dict[int, dict[str, int]]:
        return {
            d: {"cells": len(cs), "orbits": len(self.representatives(d))}
            for d, cs in self.cells.items()
        }

    def named(self, cell: Cell) -> tuple[list[str], list[str]]:
        return self.complex.names(cell[0]), self.complex.names(cell[1])

    def cell(self, sigma: Iterable[str], tau: Iterable[str]) -> Cell:
        c = (self.complex.simplex(sigma), self.complex.simplex(tau))
        if not set(c[0]).isdisjoint(c[1]):
            raise ChainError(f"cell {list(sigma)} x {list(tau)} meets the diagonal")
        return c


def deleted_product(K: SimplicialComplex) -> DeletedProduct:
    return DeletedProduct(K)


def _canonical(dp: DeletedProduct, degree: int, system: str, lifts: Mapping[Cell, int]) -> dict[Cell, int]:
    out: dict[Cell, int] = {}
    for cell, a in lifts.items():
        if cell not in dp:
            raise ChainError(f"{cell} is not a cell of the deleted product")
        if dim(cell[0]) + dim(cell[1]) != degree:
            raise ChainError(f"cell {cell} has the wrong degree (expected {degree})")
        rep = cell if is_rep(cell) else swap(cell)
        out[rep] = out.get(rep, 0) + rewrite_sign(cell, system) * a
    if system == Z2:
        return {c: 1 for c in sorted(out) if out[c] % 2}
    return {c: out[c] for c in sorted(out) if out[c]}


@dataclass(frozen=True, eq=False)
class TwistedChain:
    """A chain supported on orbit representatives."""

    dp: DeletedProduct
    degree: int
    system: str
    terms: dict[Cell, int] = field(default_factory=dict)

    @classmethod
    def from_lifts(cls, dp, degree, system, lifts: Mapping[Cell, int]) -> "TwistedChain":
        system = normalize_system(system)
        return cls(dp, degree, system, _canonical(dp, degree, system, lifts))

    @classmethod
    def zero(cls, dp, degree, system) -> "TwistedChain":
        return cls(dp, degree, normalize_system(system), {})

    def _check(self, other: "TwistedChain"):
        if other.dp is not self.dp and other.dp.complex != self.dp.complex:
            raise ChainError("chains live on different deleted products")
        if (other.degree, other.system) != (self.degree, self.system):
            raise ChainError("degree/system mismatch")

    def __add__(self, other: "TwistedChain") -> "TwistedChain":
        self._check(other)
        lifts = dict(self.terms)
        for c, a in other.terms.items():
            lifts[c] = lifts.get(c, 0) + a
        return TwistedChain.from_lifts(self.dp, self.degree, self.system, lifts)

    def __neg__(self) -> "TwistedChain":
        return self.scale(-1)

    def __sub__(self, other: "TwistedChain") -> "TwistedChain":
        return self + (-other)

    def scale(self, k: int) -> "TwistedChain":
        return TwistedChain.from_lifts(
            self.dp, self.degree, self.system, {c: k * a for c, a in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedChain):
            return NotImplemented
        return (
            self.dp.complex == other.dp.complex
            and self.degree == other.degree
            and self.system == other.system
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.degree, self.system, tuple(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, cell: Cell) -> int:
        """Coefficient of an arbitrary ordered cell, via the rewriting rule."""
        if is_rep(cell):
            return self.terms.get(cell, 0)
        a = self.terms.get(swap(cell), 0)
        return a if self.system == Z2 else rewrite_sign(cell, self.system) * a

    def lifts(self) -> dict[Cell, int]:
        """The chain as a lifted chain supported on representatives."""
        return dict(self.terms)

    def vector(self) -> list[int]:
        idx = self.dp.rep_index(self.degree)
        v = [0] * len(idx)
        for c, a in self.terms.items():
            v[idx[c]] = a
        return v

    @classmethod
    def from_vector(cls, dp, degree, system, vec) -> "TwistedChain":
        reps = dp.representatives(degree)
        return cls.from_lifts(dp, degree, system, {reps[i]: a for i, a in enumerate(vec) if a})

    def __repr__(self):
        K = self.dp.complex
        body = " + ".join(f"{a}*({','.join(K.names(s))}|{','.join(K.names(t))})"
                          for (s, t), a in self.terms.items()) or "0"
        return f"TwistedChain[{self.system}, deg {self.degree}]({body})"


@dataclass(frozen=True, eq=False)
class TwistedCochain:
    """A cochain given by its values on orbit representatives."""

    dp: DeletedProduct
    degree: int
    system: str
    values: dict[Cell, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "system", normalize_system(self.system))
        clean = {}
        for c, a in self.values.items():
            if not is_rep(c):
                raise ChainError("cochain values must be given on representatives")
            a = a % 2 if self.system == Z2 else a
            if a:
                clean[c] = a
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    def value(self, cell: Cell) -> int:
        """Equivariant extension: ``φ(τ,σ) = s (-1)^{dim σ dim τ} φ(σ,τ)``."""
        if is_rep(cell):
            return self.values.get(cell, 0)
        a = self.values.get(swap(cell), 0)
        return a if self.system == Z2 else rewrite_sign(cell, self.system) * a

    def __eq__(self, other) -> bool:
        if not isinstance(other, TwistedCochain):
            return NotImplemented
        return (self.dp.complex == other.dp.complex and self.degree == other.degree
                and self.system == other.system and self.values == other.values)

    def __hash__(self):
        return hash((self.degree, self.system, tuple(self.values.items())))

    def __add__(self, other: "TwistedCochain") -> "TwistedCochain":
        if (other.degree, other.system) != (self.degree, self.system):
            raise ChainError("degree/system mismatch")
        vals = dict(self.values)
        for c, a in other.values.items():
            vals[c] = vals.get(c, 0) + a
        return TwistedCochain(self.dp, self.degree, self.system, vals)

    def scale(self, k: int) -> "TwistedCochain":
        return TwistedCochain(self.dp, self.degree, self.system,
                              {c: k * a for c, a in self.values.items()})

    def coboundary(self) -> "TwistedCochain":
        """``δφ(c) = φ(∂c)`` on representatives of degree + 1."""
        vals = {}
        for cell in self.dp.representatives(self.degree + 1):
            vals[cell] = sum(e * self.value(f) for f, e in cell_boundary(cell))
        return TwistedCochain(self.dp, self.degree + 1, self.system, vals)


def boundary(x: TwistedChain) -> TwistedChain:
    if x.degree < 1:
        raise ChainError("boundary needs a chain of degree >= 1")
    return TwistedChain.from_lifts(x.dp, x.degree - 1, x.system, lifted_boundary(x.terms))


def involution_map(x: TwistedChain) -> TwistedChain:
    """``ι⋆`` followed by rewriting. Equals ``s · x`` on representatives."""
    return TwistedChain.from_lifts(x.dp, x.degree, x.system, involution_terms(x.terms))


@dataclass(frozen=True, eq=False)
class Presentation:
    """Boundary matrices of the quotient complex in one coefficient system.

    ``matrices[d]`` represents ``∂_d : C_d → C_{d-1}`` with one row per
    degree-(d-1) representative and one column per degree-d representative.
    """

    dp: DeletedProduct
    system: str
    matrices: dict[int, list[list[int]]]

    def size(self, degree: int) -> int:
        return len(self.dp.representatives(degree))

    def matrix(self, degree: int) -> list[list[int]]:
        """``∂_degree``; an empty-shaped zero matrix outside the stored range."""
        if degree in self.matrices:
            return self.matrices[degree]
        return [[0] * self.size(degree) for _ in range(self.size(degree - 1))]


def chain_complex_presentation(dp: DeletedProduct, system: str) -> Presentation:
    """Boundary matrices on representatives; ``Z2`` entries are 0/1."""
    system = normalize_system(system)
    mats: dict[int, list[list[int]]] = {}
    for d in range(1, dp.top + 1):
        rows = dp.rep_index(d - 1)
        cols = dp.representatives(d)
        M = [[0] * len(cols) for _ in range(len(rows))]
        for j, cell in enumerate(cols):
            for face, e in cell_boundary(cell):
                rep = face if is_rep(face) else swap(face)
                M[rows[rep]][j] += rewrite_sign(face, system) * e
        if system == Z2:
            M = [[a % 2 for a in row] for row in M]
        mats[d] = M
    return Presentation(dp, system, mats)


def random_chain(dp: DeletedProduct, degree: int, system: str, rng: random.Random,
                 density: float = 0.5, bound: int = 5) -> TwistedChain:
    lifts = {}
    for cell in dp.cells_of(degree):
        if rng.random() < density:
            lifts[cell] = rng.randint(-bound, bound)
    return TwistedChain.from_lifts(dp, degree, system, lifts)


def random_lifts(dp: DeletedProduct, degree: int, rng: random.Random,
                 density: float = 0.5, bound: int = 5) -> dict[Cell, int]:
    out = {}
    for cell in dp.cells_of(degree):
        if rng.random() < density:
            a = rng.randint(-bound, bound)
            if a:
                out[cell] = a
    return out


def random_cochain(dp: DeletedProduct, degree: int, system: str, rng: random.Random,
                   bound: int = 5) -> TwistedCochain:
    return TwistedCochain(dp, degree, system,
                          {c: rng.randint(-bound, bound) for c in dp.representatives(degree)})
