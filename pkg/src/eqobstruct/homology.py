"""Exact homology of the presented quotient complexes.

Integer systems go through Smith normal form over Python ints; ``Z2`` uses
bitset Gaussian elimination. Nothing here touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .delprod import (
    Z2,
    ChainError,
    DeletedProduct,
    Presentation,
    TwistedChain,
    TwistedCochain,
    boundary,
    chain_complex_presentation,
)

Matrix = list[list[int]]


class HomologyError(ValueError):
    pass


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                bk = B[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += a * bk[j]
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, v) if a) for row in A]


@dataclass
class SmithDecomposition:
    """``U · A · V = D`` with ``D`` diagonal and ``d1 | d2 | ...``."""

    rows: int
    cols: int
    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    diagonal: list[int]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    def D(self) -> Matrix:
        out = [[0] * self.cols for _ in range(self.rows)]
        for i, d in enumerate(self.diagonal):
            out[i][i] = d
        return out


def smith_normal_form(A: Sequence[Sequence[int]], cols: int | None = None) -> SmithDecomposition:
    """Deterministic SNF: the pivot is the smallest nonzero |entry| of the
    remaining block, ties broken row-major. ``cols`` is needed when ``A`` has
    no rows."""
    M = [list(map(int, r)) for r in A]
    m = len(M)
    n = len(M[0]) if M else (cols or 0)
    U, U_inv = identity(m), identity(m)
    V, V_inv = identity(n), identity(n)

    def row_add(i, j, k):  # R_i += k R_j
        Mi, Mj = M[i], M[j]
        for c in range(n):
            if Mj[c]:
                Mi[c] += k * Mj[c]
        Ui, Uj = U[i], U[j]
        for c in range(m):
            if Uj[c]:
                Ui[c] += k * Uj[c]
        for r in U_inv:  # col_j -= k col_i
            if r[i]:
                r[j] -= k * r[i]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]
        for r in U_inv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        M[i] = [-x for x in M[i]]
        U[i] = [-x for x in U[i]]
        for r in U_inv:
            r[i] = -r[i]

    def col_add(i, j, k):  # C_i += k C_j
        for r in M:
            if r[j]:
                r[i] += k * r[j]
        for r in V:
            if r[j]:
                r[i] += k * r[j]
        Vi, Vj = V_inv[i], V_inv[j]  # R_j -= k R_i
        for c in range(n):
            if Vi[c]:
                Vj[c] -= k * Vi[c]

    def col_swap(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    diagonal = []
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            row_swap(i, t)
        if j != t:
            col_swap(j, t)
        p = M[t][t]
        dirty = False
        for i in range(t + 1, m):
            if M[i][t]:
                q = M[i][t] // p
                row_add(i, t, -q)
                if M[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if M[t][j]:
                q = M[t][j] // p
                col_add(j, t, -q)
                if M[t][j]:
                    dirty = True
        if dirty:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
            None,
        )
        if bad is not None:
            row_add(t, bad, 1)
            continue
        if p < 0:
            row_neg(t)
        diagonal.append(M[t][t])
        t += 1
    diagonal += [0] * (min(m, n) - len(diagonal))
    return SmithDecomposition(m, n, U, V, U_inv, V_inv, diagonal)


# GF(2) linear algebra on int bitsets.

def _columns_mod2(M: Matrix, ncols: int) -> list[int]:
    cols = [0] * ncols
    for i, row in enumerate(M):
        for j, a in enumerate(row):
            if a % 2:
                cols[j] |= 1 << i
    return cols


class _Echelon:
    """Incremental GF(2) echelon basis; each row carries a tag bitmask."""

    def __init__(self):
        self.rows: dict[int, tuple[int, int]] = {}  # pivot bit -> (vec, tag)

    def reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        while vec:
            p = vec.bit_length() - 1
            if p not in self.rows:
                break
            rv, rt = self.rows[p]
            vec ^= rv
            tag ^= rt
        return vec, tag

    def fully_reduce(self, vec: int, tag: int = 0) -> tuple[int, int]:
        rem = 0
        while vec:
            p = vec.bit_length() - 1
            if p in self.rows:
                rv, rt = self.rows[p]
                vec ^= rv
                tag ^= rt
            else:
                rem |= 1 << p
                vec ^= 1 << p
        return rem, tag

    def add(self, vec: int, tag: int = 0) -> bool:
        vec, tag = self.reduce(vec, tag)
        if not vec:
            return False
        self.rows[vec.bit_length() - 1] = (vec, tag)
        return True


def rank_mod2(M: Matrix, ncols: int) -> int:
    ech = _Echelon()
    return sum(ech.add(c) for c in _columns_mod2(M, ncols))


def kernel_mod2(M: Matrix, ncols: int) -> list[int]:
    """Kernel basis of ``M`` over GF(2) as bitsets over the columns."""
    ech = _Echelon()
    out = []
    for j, c in enumerate(_columns_mod2(M, ncols)):
        vec, tag = ech.reduce(c, 1 << j)
        if vec:
            ech.rows[vec.bit_length() - 1] = (vec, tag)
        else:
            out.append(tag)
    return out


@dataclass
class HomologyGroup:
    """``H_n`` of a presented quotient complex.

    For ``Z2`` the group is a vector space; ``free_rank`` is its dimension.
    """

    dp: DeletedProduct
    system: str
    degree: int
    free_rank: int
    torsion: list[int]
    basis: list[TwistedChain]
    _data: dict = field(default_factory=dict, repr=False)

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def summary(self) -> str:
        if self.system == Z2:
            return f"(Z/2)^{self.free_rank}" if self.free_rank else "0"
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) or "0"


def _as_presentation(src, system: str | None) -> Presentation:
    if isinstance(src, Presentation):
        if system is not None and system != src.system:
            raise HomologyError("system does not match the presentation")
        return src
    if isinstance(src, DeletedProduct):
        if system is None:
            raise HomologyError("a coefficient system is required")
        return chain_complex_presentation(src, system)
    raise HomologyError("expected a Presentation or DeletedProduct")


def homology(src, degree: int, system: str | None = None) -> HomologyGroup:
    """``H_degree = ker ∂_degree / im ∂_{degree+1}``."""
    P = _as_presentation(src, system)
    if degree < 0:
        raise HomologyError("degree must be non-negative")
    dp, sys_ = P.dp, P.system
    N = P.size(degree)
    if N == 0:
        return HomologyGroup(dp, sys_, degree, 0, [], [], {"kind": "empty"})
    d_n = P.matrix(degree)
    d_up = P.matrix(degree + 1)
    n_up = P.size(degree + 1)
    if sys_ == Z2:
        return _homology_mod2(P, degree, N, d_n, d_up, n_up)

    snf = smith_normal_form(d_n, cols=N)
    r = snf.rank
    k = N - r
    # coordinates of im ∂_{n+1} in the kernel basis V[:, r:]
    X = [row for row in matmul(snf.V_inv, d_up)[r:]] if n_up else [[] for _ in range(k)]
    snf2 = smith_normal_form(X, cols=n_up) if k else None
    if k == 0:
        return HomologyGroup(dp, sys_, degree, 0, [], [], {"kind": "zero"})
    diag = snf2.diagonal + [0] * (k - len(snf2.diagonal))
    gens_matrix = matmul([row[r:] for row in snf.V], snf2.U_inv)  # N × k
    basis, torsion, slots = [], [], []
    for i, d in enumerate(diag):
        if d == 1:
            continue
        col = [gens_matrix[row][i] for row in range(N)]
        basis.append(TwistedChain.from_vector(dp, degree, sys_, col))
        slots.append((i, d))
        if d > 1:
            torsion.append(d)
    free = sum(1 for _, d in slots if d == 0)
    # order: torsion generators first, then free ones
    order = sorted(range(len(slots)), key=lambda j: (slots[j][1] == 0, j))
    basis = [basis[j] for j in order]
    slots = [slots[j] for j in order]
    data = {"kind": "int", "rank": r, "V_inv": snf.V_inv, "P": snf2.U, "slots": slots}
    return HomologyGroup(dp, sys_, degree, free, torsion, basis, data)


def _homology_mod2(P, degree, N, d_n, d_up, n_up) -> HomologyGroup:
    kernel = kernel_mod2(d_n, N) if degree > 0 else [1 << j for j in range(N)]
    ech = _Echelon()
    for c in _columns_mod2(d_up, n_up):
        ech.add(c)
    gens = []
    for vec in kernel:
        red, _ = ech.fully_reduce(vec)
        if red and ech.add(vec, 1 << len(gens)):
            gens.append(vec)
    basis = [
        TwistedChain.from_vector(P.dp, degree, Z2, [(v >> j) & 1 for j in range(N)])
        for v in gens
    ]
    return HomologyGroup(P.dp, Z2, degree, len(gens), [], basis, {"kind": "mod2", "echelon": ech})


def class_coordinates(x: TwistedChain, H: HomologyGroup) -> list[int]:
    """Coordinates of ``[x]``: torsion residues first, then free coordinates.

    Two cycles are homologous iff their coordinates agree.
    """
    if x.degree != H.degree or x.system != H.system:
        raise HomologyError("chain degree/system does not match the homology group")
    if x.degree > 0:
        bd = boundary(x)
        if not bd.is_zero():
            cell, a = next(iter(bd.terms.items()))
            raise HomologyError(
                f"not a cycle: boundary has coefficient {a} on {x.dp.named(cell)}"
            )
    kind = H._data.get("kind")
    if kind in ("empty", "zero"):
        return []
    if kind == "mod2":
        vec = sum(1 << j for j, a in enumerate(x.vector()) if a % 2)
        rem, tag = H._data["echelon"].fully_reduce(vec)
        if rem:
            raise HomologyError("chain is not in the cycle space")
        return [(tag >> i) & 1 for i in range(H.free_rank)]
    r = H._data["rank"]
    y = matvec(H._data["V_inv"], x.vector())[r:]
    c = matvec(H._data["P"], y)
    out = []
    for i, d in H._data["slots"]:
        out.append(c[i] % d if d > 1 else c[i])
    return out


def evaluate_pairing(phi: TwistedCochain, x: TwistedChain) -> int:
    """``⟨φ, x⟩ = Σ_rep x(rep) φ(rep)``.

    Systems must agree unless one side is ``Z2``, in which case both are
    reduced and the result is 0 or 1.
    """
    if phi.degree != x.degree:
        raise ChainError(f"degree mismatch: cochain {phi.degree}, chain {x.degree}")
    if phi.dp.complex != x.dp.complex:
        raise ChainError("cochain and chain live on different complexes")
    mod2 = Z2 in (phi.system, x.system)
    if not mod2 and phi.system != x.system:
        raise ChainError(f"system mismatch: cochain {phi.system}, chain {x.system}")
    total = sum(a * phi.values.get(c, 0) for c, a in x.terms.items())
    return total % 2 if mod2 else total


def reduce_mod2(obj):
    if isinstance(obj, TwistedChain):
        return TwistedChain.from_lifts(obj.dp, obj.degree, Z2, obj.terms)
    if isinstance(obj, TwistedCochain):
        return TwistedCochain(obj.dp, obj.degree, Z2, obj.values)
    raise TypeError("reduce_mod2 expects a TwistedChain or TwistedCochain")


def euler_characteristic(P: Presentation) -> int:
    return sum((-1) ** d * P.size(d) for d in range(P.dp.top + 1))


def betti_numbers(P: Presentation) -> list[int]:
    """Ranks over Q (or GF(2) dimensions for ``Z2``) per degree."""
    out = []
    for d in range(P.dp.top + 1):
        if P.system == Z2:
            rk = rank_mod2(P.matrix(d), P.size(d)) if d > 0 else 0
            rk_up = rank_mod2(P.matrix(d + 1), P.size(d + 1)) if d < P.dp.top else 0
        else:
            rk = smith_normal_form(P.matrix(d), cols=P.size(d)).rank if d > 0 else 0
            rk_up = smith_normal_form(P.matrix(d + 1), cols=P.size(d + 1)).rank if d < P.dp.top else 0
        out.append(P.size(d) - rk - rk_up)
    return out
