"""Exact rational PL geometry of vertex configurations.

Every predicate is decided with Fractions. Randomness only enters through
``generic_coords`` and the projection retries, both driven by string seeds
so that runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import _lp
from .complex import Simplex, SimplicialComplex
from .delprod import Cell, dim

Point = tuple[Fraction, ...]

DEFAULT_RETRIES = 64
COORD_BOUND = 2 ** 16


class GenericityError(RuntimeError):
    """A configuration (or projection) is not generic enough."""


@dataclass(frozen=True)
class RationalConfiguration:
    complex: SimplicialComplex
    d: int
    coords: tuple[Point, ...]
    seed: str | None = None

    def __post_init__(self):
        if len(self.coords) != len(self.complex.vertices):
            raise ValueError("need one coordinate vector per vertex")
        for v, p in zip(self.complex.vertices, self.coords):
            if len(p) != self.d:
                raise ValueError(f"vertex {v!r} has {len(p)} coordinates, expected {self.d}")

    def point(self, i: int) -> Point:
        return self.coords[i]

    def transformed(self, M: Sequence[Sequence[Fraction]]) -> "RationalConfiguration":
        coords = tuple(
            tuple(sum(M[r][k] * p[k] for k in range(self.d)) for r in range(self.d))
            for p in self.coords
        )
        return RationalConfiguration(self.complex, self.d, coords, self.seed)

    def projected(self) -> "RationalConfiguration":
        """Drop the last coordinate."""
        return RationalConfiguration(
            self.complex, self.d - 1, tuple(p[:-1] for p in self.coords), self.seed
        )


def make_configuration(K: SimplicialComplex, coords: Mapping[str, Sequence], seed=None) -> RationalConfiguration:
    missing = [v for v in K.vertices if v not in coords]
    if missing:
        raise ValueError(f"no coordinates for vertex {missing[0]!r}")
    pts = tuple(tuple(Fraction(x) for x in coords[v]) for v in K.vertices)
    d = len(pts[0]) if pts else 0
    return RationalConfiguration(K, d, pts, seed)


@dataclass(frozen=True)
class CrossingRecord:
    sigma: Simplex
    tau: Simplex
    lam: tuple[Fraction, ...]
    mu: tuple[Fraction, ...]
    point: Point
    sign: int
    over: bool | None = None

    @property
    def cell(self) -> Cell:
        return self.sigma, self.tau


def det(M: Sequence[Sequence[Fraction]]) -> Fraction:
    """Exact determinant by Gaussian elimination over Fractions."""
    A = [list(map(Fraction, r)) for r in M]
    n = len(A)
    out = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            out = -out
        out *= A[c][c]
        inv = 1 / A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] * inv
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return out


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    A = [list(map(Fraction, v)) for v in vectors]
    if not A:
        return 0
    r = 0
    cols = len(A[0])
    for c in range(cols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
    return r


def _edges(config: RationalConfiguration, s: Simplex) -> list[Point]:
    base = config.coords[s[0]]
    return [tuple(a - b for a, b in zip(config.coords[v], base)) for v in s[1:]]


def affinely_independent(config: RationalConfiguration, verts: Sequence[int]) -> bool:
    verts = list(verts)
    if len(verts) <= 1:
        return True
    if len(verts) > config.d + 1:
        return False
    return rank(_edges(config, tuple(verts))) == len(verts) - 1


def orientation_sign(config: RationalConfiguration, sigma: Simplex, tau: Simplex) -> int:
    """Sign of det[edge vectors of σ | edge vectors of τ] (columns)."""
    cols = _edges(config, sigma) + _edges(config, tau)
    if len(cols) != config.d:
        raise ValueError("orientation sign needs dim σ + dim τ = d")
    M = [[c[r] for c in cols] for r in range(config.d)]
    D = det(M)
    return (D > 0) - (D < 0)


def _solve_square(M, rhs):
    """Solve ``M x = rhs`` exactly; returns None when singular."""
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(v)] for row, v in zip(M, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return None
        A[c], A[p] = A[p], A[c]
        pv = A[c][c]
        A[c] = [x / pv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [A[r][n] for r in range(n)]


def _intersection_system(config, sigma, tau):
    """Equations ``Σλ x = Σμ y, Σλ = 1, Σμ = 1`` as an (A, b) pair."""
    d = config.d
    A = []
    for r in range(d):
        A.append([config.coords[v][r] for v in sigma] + [-config.coords[v][r] for v in tau])
    A.append([1] * len(sigma) + [0] * len(tau))
    A.append([0] * len(sigma) + [1] * len(tau))
    return A, [0] * d + [1, 1]


def signed_intersections(config: RationalConfiguration, sigma: Simplex, tau: Simplex) -> list[CrossingRecord]:
    """Transverse interior crossings of f(σ) and f(τ), dim σ + dim τ = d.

    Raises GenericityError for boundary or non-transverse contact.
    """
    if dim(sigma) + dim(tau) != config.d:
        raise ValueError("signed_intersections needs dim σ + dim τ = d")
    if not set(sigma).isdisjoint(tau):
        raise ValueError("σ and τ must be vertex-disjoint")
    A, b = _intersection_system(config, sigma, tau)
    sol = _solve_square(A, b)
    if sol is None:
        status, _, _ = _lp.solve(A, b)
        if status == _lp.INFEASIBLE:
            return []
        # singular system and the simplices themselves touch
        raise GenericityError(f"non-transverse contact between {sigma} and {tau}")
    lam, mu = sol[: len(sigma)], sol[len(sigma):]
    if any(x < 0 for x in sol):
        return []
    if any(x == 0 for x in sol):
        raise GenericityError(f"boundary crossing between {sigma} and {tau}")
    point = tuple(sum(l * config.coords[v][r] for l, v in zip(lam, sigma)) for r in range(config.d))
    sign = orientation_sign(config, sigma, tau)
    return [CrossingRecord(sigma, tau, tuple(lam), tuple(mu), point, sign)]


def _simplex_pairs(K: SimplicialComplex):
    simplices = sorted(K.simplices)
    for i, s in enumerate(simplices):
        for t in simplices[i:]:
            yield s, t


def is_generic(config: RationalConfiguration) -> bool:
    """General position for every union of two simplices.

    Unions of at most d+1 vertices must be affinely independent; disjoint
    pairs with dim σ + dim τ = d must span complementary directions.
    """
    K, d = config.complex, config.d
    if d == 0:
        return True
    checked: set[tuple[int, ...]] = set()
    for s, t in _simplex_pairs(K):
        u = tuple(sorted(set(s) | set(t)))
        if len(u) <= d + 1 and u not in checked:
            checked.add(u)
            if not affinely_independent(config, u):
                return False
        if set(s).isdisjoint(t) and dim(s) + dim(t) == d:
            if orientation_sign(config, s, t) == 0:
                return False
    return True


def _random_coords(K: SimplicialComplex, d: int, rng: random.Random, bound: int) -> tuple[Point, ...]:
    return tuple(
        tuple(Fraction(rng.randint(-bound, bound), bound) for _ in range(d))
        for _ in K.vertices
    )


def generic_coords(K: SimplicialComplex, d: int, seed=0, max_retries: int = DEFAULT_RETRIES) -> RationalConfiguration:
    """Seeded pseudo-random dyadic coordinates in [-1, 1]^d passing ``is_generic``.

    Attempt ``k`` draws from ``Random(f"{seed}:{k}")`` with denominator
    ``2^16 · 2^k``.
    """
    if d < 0:
        raise ValueError("dimension must be non-negative")
    for attempt in range(max_retries + 1):
        rng = random.Random(f"{seed}:{attempt}")
        config = RationalConfiguration(K, d, _random_coords(K, d, rng, COORD_BOUND << attempt), str(seed))
        if is_generic(config):
            return config
    raise GenericityError(f"no generic configuration after {max_retries} retries")


@dataclass
class Violation:
    sigma: Simplex
    tau: Simplex
    witness: Point | None
    reason: str

    def describe(self, K: SimplicialComplex) -> dict:
        return {
            "sigma": K.names(self.sigma),
            "tau": K.names(self.tau),
            "witness": None if self.witness is None else [str(x) for x in self.witness],
            "reason": self.reason,
        }


@dataclass
class ValidationResult:
    ok: bool
    violation: Violation | None = None

    def __bool__(self):
        return self.ok


def _meet_point(config, sigma, tau, maximize_over: Sequence[int] = ()):
    """Solve the intersection LP; returns (status, value, witness point)."""
    A, b = _intersection_system(config, sigma, tau)
    c = None
    if maximize_over:
        c = [1 if v in maximize_over else 0 for v in sigma] + [0] * len(tau)
    status, value, x = _lp.solve(A, b, c)
    if status != _lp.OPTIMAL:
        return status, value, None
    lam = x[: len(sigma)]
    point = tuple(sum(l * config.coords[v][r] for l, v in zip(lam, sigma)) for r in range(config.d))
    return status, value, point


def _maximal_disjoint_pairs(K: SimplicialComplex):
    """Vertex-disjoint pairs (σ, τ), σ ≤ τ, that cannot be enlarged."""
    simplices = sorted(K.simplices)
    out = []
    for s in simplices:
        for t in simplices:
            if t < s or not set(s).isdisjoint(t):
                continue
            grow = any(
                v not in s and v not in t
                and (tuple(sorted(s + (v,))) in K.simplices or tuple(sorted(t + (v,))) in K.simplices)
                for v in range(len(K.vertices))
            )
            if not grow:
                out.append((s, t))
    return out


def validate_almost_embedding(config: RationalConfiguration) -> ValidationResult:
    """Vertex-disjoint simplices must have disjoint images."""
    for s, t in _maximal_disjoint_pairs(config.complex):
        status, _, point = _meet_point(config, s, t)
        if status == _lp.OPTIMAL:
            return ValidationResult(False, Violation(s, t, point, "disjoint simplices meet"))
    return ValidationResult(True)


def validate_embedding(config: RationalConfiguration) -> ValidationResult:
    """Injectivity of the linear extension.

    Every facet must be non-degenerate and any two facets must meet exactly
    in the image of their common face.
    """
    K = config.complex
    facets = K.facets()
    for f in facets:
        if not affinely_independent(config, f):
            return ValidationResult(False, Violation(f, f, None, "degenerate simplex"))
    for i, f in enumerate(facets):
        for g in facets[i + 1:]:
            common = set(f) & set(g)
            if not common:
                status, _, point = _meet_point(config, f, g)
                if status == _lp.OPTIMAL:
                    return ValidationResult(False, Violation(f, g, point, "disjoint simplices meet"))
            else:
                extra = [v for v in f if v not in common]
                status, value, point = _meet_point(config, f, g, extra)
                if status == _lp.OPTIMAL and value > 0:
                    return ValidationResult(
                        False, Violation(f, g, point, "simplices meet outside their common face")
                    )
    return ValidationResult(True)


def random_orientation_preserving(d: int, rng: random.Random, bound: int = 8) -> list[list[Fraction]]:
    while True:
        M = [[Fraction(rng.randint(-bound, bound)) for _ in range(d)] for _ in range(d)]
        if det(M) > 0:
            return M


def crossing_data(config: RationalConfiguration) -> list[CrossingRecord]:
    """Crossings of the projection to the first d-1 coordinates.

    Returns records for every ordered vertex-disjoint pair (σ, τ) with
    dim σ + dim τ = d - 1, in canonical cell order; ``over`` tells whether σ
    is higher (last coordinate) at the crossing. Raises GenericityError when
    the projection is not generic.
    """
    if config.d < 1:
        raise ValueError("crossing data needs ambient dimension >= 1")
    n = config.d - 1
    proj = config.projected()
    K = config.complex
    out = []
    simplices = sorted(K.simplices)
    for s in simplices:
        for t in simplices:
            if dim(s) + dim(t) != n or not set(s).isdisjoint(t):
                continue
            for rec in signed_intersections(proj, s, t):
                hs = sum(l * config.coords[v][-1] for l, v in zip(rec.lam, s))
                ht = sum(m * config.coords[v][-1] for m, v in zip(rec.mu, t))
                if hs == ht:
                    raise GenericityError(f"images of {s} and {t} meet")
                out.append(CrossingRecord(s, t, rec.lam, rec.mu, rec.point, rec.sign, hs > ht))
    return out


def generic_projection(
    config: RationalConfiguration, seed=0, max_retries: int = DEFAULT_RETRIES
) -> tuple[RationalConfiguration, list[CrossingRecord], int]:
    """Crossing data, retrying through orientation-preserving linear maps.

    Attempt 0 uses the configuration unchanged. Returns the configuration
    actually projected, its crossings and the attempt number.
    """
    last = None
    for attempt in range(max_retries + 1):
        if attempt == 0:
            cfg = config
        else:
            rng = random.Random(f"{seed}:proj:{attempt}")
            cfg = config.transformed(random_orientation_preserving(config.d, rng))
        try:
            return cfg, crossing_data(cfg), attempt
        except GenericityError as exc:
            last = exc
    raise GenericityError(f"no generic projection after {max_retries} retries ({last})")


def coords_to_json(config: RationalConfiguration) -> dict:
    return {v: [str(x) for x in p] for v, p in zip(config.complex.vertices, config.coords)}


def coords_from_json(K: SimplicialComplex, data: Mapping) -> RationalConfiguration:
    try:
        return make_configuration(K, {v: [Fraction(x) for x in data[v]] for v in K.vertices})
    except KeyError as exc:
        raise ValueError(f"no coordinates for vertex {exc.args[0]!r}") from None
