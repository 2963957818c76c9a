"""Van Kampen and Wu cocycles, evaluation cycles and obstructor certificates.

Sign bookkeeping: in degree n let ε = (-1)^n. The van Kampen cocycle lives
in ``Z^ε`` (``Z`` for even n) and the Wu cocycle and evaluation cycles in
``Z^{-ε}`` (``Z-`` for even n).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .complex import Simplex, SimplicialComplex
from .delprod import (
    Z,
    Z2,
    ZMINUS,
    DeletedProduct,
    TwistedChain,
    TwistedCochain,
    boundary,
    chain_complex_presentation,
    deleted_product,
    dim,
    is_rep,
    rewrite_sign,
    swap,
)
from .geometry import (
    DEFAULT_RETRIES,
    RationalConfiguration,
    generic_coords,
    generic_projection,
    signed_intersections,
    validate_almost_embedding,
    validate_embedding,
)
from .group import GroupAction, induced_chain_map, squares_subgroup
from .homology import class_coordinates, evaluate_pairing, homology, reduce_mod2, smith_normal_form

DEFAULT_SUBSET_CAP = 20


class ObstructionError(ValueError):
    pass


class EmbeddingError(ObstructionError):
    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class SearchCapError(ObstructionError):
    pass


def vk_system(n: int) -> str:
    return Z if n % 2 == 0 else ZMINUS


def wu_system(n: int) -> str:
    return ZMINUS if n % 2 == 0 else Z


@dataclass(frozen=True)
class ObstructionClass:
    kind: str
    degree: int
    cochain: TwistedCochain
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("vk", "wu"):
            raise ObstructionError(f"unknown obstruction kind {self.kind!r}")
        expected = vk_system(self.degree) if self.kind == "vk" else wu_system(self.degree)
        if self.cochain.system != expected or self.cochain.degree != self.degree:
            raise ObstructionError(
                f"{self.kind} in degree {self.degree} must live in {expected}, "
                f"got {self.cochain.system} in degree {self.cochain.degree}"
            )

    @property
    def system(self) -> str:
        return self.cochain.system

    def value(self, cell) -> int:
        return self.cochain.value(cell)


def vk_cochain(
    K: SimplicialComplex,
    n: int,
    config: RationalConfiguration | None = None,
    seed=0,
    max_retries: int = DEFAULT_RETRIES,
    dp: DeletedProduct | None = None,
) -> ObstructionClass:
    """Van Kampen cocycle from a generic linear map ``K → R^n``.

    On a representative (σ, τ) the value is ``(-1)^{dim τ}`` times the
    orientation sign of the crossing of f(σ) and f(τ), or 0 when they miss.
    """
    if config is None:
        config = generic_coords(K, n, seed, max_retries)
    elif config.d != n:
        raise ObstructionError(f"configuration lives in R^{config.d}, expected R^{n}")
    dp = dp or deleted_product(K)
    values = {}
    for s, t in dp.representatives(n):
        total = sum(r.sign for r in signed_intersections(config, s, t))
        if total:
            values[(s, t)] = (-1) ** dim(t) * total
    cochain = TwistedCochain(dp, n, vk_system(n), values)
    return ObstructionClass("vk", n, cochain, {"seed": config.seed, "ambient": n})


def wu_cochain(
    K: SimplicialComplex,
    config: RationalConfiguration,
    almost: bool = False,
    seed=0,
    max_retries: int = DEFAULT_RETRIES,
    dp: DeletedProduct | None = None,
) -> ObstructionClass:
    """Wu cocycle of an (almost) embedding ``K → R^{n+1}``.

    Project to the first n coordinates. Each crossing of (σ, τ) contributes
    ``(-1)^{dim τ} · sign · (+1 if σ is above τ else -1)``.
    """
    check = validate_almost_embedding(config) if almost else validate_embedding(config)
    if not check.ok:
        v = check.violation
        raise EmbeddingError(
            f"not an {'almost ' if almost else ''}embedding: {K.names(v.sigma)} and "
            f"{K.names(v.tau)} ({v.reason})",
            v,
        )
    n = config.d - 1
    _, crossings, attempt = generic_projection(config, seed, max_retries)
    dp = dp or deleted_product(K)
    values: dict = {}
    for rec in crossings:
        if not is_rep(rec.cell):
            continue
        contrib = (-1) ** dim(rec.tau) * rec.sign * (1 if rec.over else -1)
        values[rec.cell] = values.get(rec.cell, 0) + contrib
    cochain = TwistedCochain(dp, n, wu_system(n), values)
    prov = {"seed": str(seed), "projection_attempt": attempt, "almost": almost, "ambient": config.d}
    return ObstructionClass("wu", n, cochain, prov)


@dataclass
class EvaluationCycleReport:
    degree: int
    condition1: int
    condition1_raw: list[int]
    seeds: list[str]
    seeds_agree: bool
    residuals: dict[tuple[str, ...], int]
    verdict: bool

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "condition1_mod2": self.condition1,
            "condition1_raw": self.condition1_raw,
            "seeds": self.seeds,
            "seeds_agree": self.seeds_agree,
            "residuals": [{"sigma": list(k), "value": v} for k, v in self.residuals.items()],
            "verdict": "pass" if self.verdict else "fail",
        }


def vertex_residuals(phi: TwistedChain) -> dict[Simplex, int]:
    """``Σ_v a_(σ,v)`` for every n-simplex σ, with signed coefficients."""
    K = phi.dp.complex
    n = phi.degree
    out = {}
    for s in K.simplices_of_dim(n):
        total = 0
        for v in range(len(K.vertices)):
            if v not in s:
                total += phi.coefficient((s, (v,)))
        out[s] = total % 2 if phi.system == Z2 else total
    return out


def _require_cycle(phi: TwistedChain):
    if phi.degree > 0:
        bd = boundary(phi)
        if not bd.is_zero():
            cell, a = next(iter(bd.terms.items()))
            raise ObstructionError(
                f"not a cycle: boundary has coefficient {a} on {phi.dp.named(cell)}"
            )


def check_evaluation_cycle(
    K: SimplicialComplex,
    phi: TwistedChain,
    n: int | None = None,
    seeds: Sequence = (0, 1),
    max_retries: int = DEFAULT_RETRIES,
) -> EvaluationCycleReport:
    n = phi.degree if n is None else n
    if phi.degree != n:
        raise ObstructionError(f"cycle has degree {phi.degree}, expected {n}")
    if phi.system not in (wu_system(n), Z2):
        raise ObstructionError(f"evaluation cycles of degree {n} live in {wu_system(n)}")
    _require_cycle(phi)
    phi2 = reduce_mod2(phi)
    raws, mods = [], []
    for seed in seeds:
        vk = vk_cochain(K, n, seed=seed, max_retries=max_retries, dp=phi.dp)
        raws.append(sum(a * vk.cochain.values.get(c, 0) for c, a in phi.terms.items()))
        mods.append(evaluate_pairing(reduce_mod2(vk.cochain), phi2))
    agree = len(set(mods)) == 1
    residuals = {tuple(K.names(s)): r for s, r in vertex_residuals(phi).items()}
    verdict = agree and mods[0] == 1 and all(r == 0 for r in residuals.values())
    return EvaluationCycleReport(n, mods[0], raws, [str(s) for s in seeds], agree, residuals, verdict)


@dataclass
class ObstructorCertificate:
    complex: SimplicialComplex
    action: GroupAction
    cycle: TwistedChain
    subset: list[str]
    level: str
    degree: int

    @property
    def statement(self) -> str:
        return (
            f"equivariant {self.degree + 1}-obstructor: no equivariant embedding "
            f"into R^{self.degree + 1}"
        )

    def replay(self) -> bool:
        return replay_certificate(self)


@dataclass
class SearchFailure:
    reason: str
    subsets_tried: int = 0
    report: EvaluationCycleReport | None = None


def _orbit_images(G: GroupAction, phi: TwistedChain, members: Sequence[int]) -> dict[str, TwistedChain]:
    return {G.labels[i]: induced_chain_map(G, G.elements[i], phi) for i in members}


def _sum(chains: Sequence[TwistedChain]) -> TwistedChain:
    lifts: dict = {}
    for c in chains:
        for cell, a in c.terms.items():
            lifts[cell] = lifts.get(cell, 0) + a
    first = chains[0]
    return TwistedChain.from_lifts(first.dp, first.degree, first.system, lifts)


def check_equivariant_obstructor(
    K: SimplicialComplex,
    G: GroupAction,
    phi: TwistedChain,
    n: int | None = None,
    cap: int = DEFAULT_SUBSET_CAP,
    seeds: Sequence = (0, 1),
    max_retries: int = DEFAULT_RETRIES,
):
    """First nonempty ``A ⊆ S(H)`` with ``Σ_{h∈A} h⋆Φ = 0``.

    Subsets are tried by size, then lexicographically by element label;
    chain level over all subsets first, then homology level. Returns an
    ObstructorCertificate or a SearchFailure.
    """
    n = phi.degree if n is None else n
    if G.complex != K:
        raise ObstructionError("action is not on the given complex")
    report = check_evaluation_cycle(K, phi, n, seeds, max_retries)
    if not report.verdict:
        return SearchFailure("not an evaluation cycle", 0, report)
    S = squares_subgroup(G)
    if len(S) > cap:
        raise SearchCapError(f"|S(H)| = {len(S)} exceeds the subset search cap {cap}")
    images = _orbit_images(G, phi, S.members)
    labels = sorted(images)
    subsets = [A for k in range(1, len(labels) + 1) for A in combinations(labels, k)]
    for A in subsets:
        if _sum([images[h] for h in A]).is_zero():
            return ObstructorCertificate(K, G, phi, list(A), "chain", n)
    H = homology(phi.dp, n, phi.system)
    for A in subsets:
        if all(x == 0 for x in class_coordinates(_sum([images[h] for h in A]), H)):
            return ObstructorCertificate(K, G, phi, list(A), "homology", n)
    return SearchFailure("no subset of S(H) annihilates the cycle", 2 * len(subsets), report)


def replay_certificate(cert: ObstructorCertificate, seeds: Sequence = (0, 1)) -> bool:
    """Re-verify a certificate from scratch."""
    G, phi = cert.action, cert.cycle
    if not cert.subset:
        return False
    S = set(squares_subgroup(G).labels)
    if not set(cert.subset) <= S or len(set(cert.subset)) != len(cert.subset):
        return False
    if not check_evaluation_cycle(cert.complex, phi, cert.degree, seeds).verdict:
        return False
    total = _sum([induced_chain_map(G, G.element(h), phi) for h in cert.subset])
    if cert.level == "chain":
        return total.is_zero()
    if cert.level == "homology":
        H = homology(phi.dp, cert.degree, phi.system)
        return all(x == 0 for x in class_coordinates(total, H))
    return False


def _circle_orders(K: SimplicialComplex) -> list[list[int]]:
    """Vertex cycles of a complex that is a disjoint union of two circles."""
    if K.dim != 1:
        raise ObstructionError("linking number needs a 1-dimensional complex")
    nbrs = {v: [] for v in range(len(K.vertices))}
    for a, b in K.simplices_of_dim(1):
        nbrs[a].append(b)
        nbrs[b].append(a)
    if any(len(x) != 2 for x in nbrs.values()):
        raise ObstructionError("linking number needs every vertex to have degree 2")
    seen, cycles = set(), []
    for start in range(len(K.vertices)):
        if start in seen:
            continue
        walk = [start]
        prev, cur = start, min(nbrs[start])
        while cur != start:
            walk.append(cur)
            prev, cur = cur, next(x for x in nbrs[cur] if x != prev)
        seen.update(walk)
        cycles.append(walk)
    if len(cycles) != 2:
        raise ObstructionError(f"linking number needs exactly two circles, found {len(cycles)}")
    return cycles


def _oriented_edges(walk: list[int]) -> list[tuple[Simplex, int]]:
    out = []
    for i, a in enumerate(walk):
        b = walk[(i + 1) % len(walk)]
        out.append(((a, b), 1) if a < b else ((b, a), -1))
    return out


def torus_cycle(K: SimplicialComplex, dp: DeletedProduct | None = None) -> TwistedChain:
    """The product 2-cycle ``C1 × C2`` of two disjoint circles, in ``Z-``.

    Each circle is oriented by walking from its first vertex towards its
    smaller neighbour.
    """
    c1, c2 = _circle_orders(K)
    dp = dp or deleted_product(K)
    lifts = {}
    for e, a in _oriented_edges(c1):
        for f, b in _oriented_edges(c2):
            lifts[(e, f)] = a * b
    return TwistedChain.from_lifts(dp, 2, wu_system(2), lifts)


def linking_number(
    K: SimplicialComplex, config: RationalConfiguration, seed=0, max_retries: int = DEFAULT_RETRIES
) -> int:
    """Half the Wu evaluation on the torus cycle.

    The Wu cocycle counts each crossing between the two circles once,
    whichever strand is on top, so its value on the torus is twice the
    classical linking number.
    """
    dp = deleted_product(K)
    wu = wu_cochain(K, config, seed=seed, max_retries=max_retries, dp=dp)
    value = evaluate_pairing(wu.cochain, torus_cycle(K, dp))
    if value % 2:
        raise ObstructionError(f"odd Wu evaluation {value} on the torus cycle")
    return value // 2


def vertex_condition_cycles(dp: DeletedProduct, n: int, system: str | None = None) -> list[TwistedChain]:
    """Integer basis of the n-cycles that satisfy the vertex-sum condition."""
    system = system or wu_system(n)
    reps = dp.representatives(n)
    idx = dp.rep_index(n)
    rows = []
    if n > 0:
        rows.extend(chain_complex_presentation(dp, system).matrix(n))
    K = dp.complex
    for s in K.simplices_of_dim(n):
        row = [0] * len(reps)
        for v in range(len(K.vertices)):
            if v in s:
                continue
            cell = (s, (v,))
            rep = cell if is_rep(cell) else swap(cell)
            row[idx[rep]] += rewrite_sign(cell, system)
        rows.append(row)
    if not reps:
        return []
    snf = smith_normal_form(rows, cols=len(reps))
    r = snf.rank
    basis = []
    for j in range(r, len(reps)):
        col = [snf.V[i][j] for i in range(len(reps))]
        basis.append(TwistedChain.from_vector(dp, n, system, col))
    return basis
