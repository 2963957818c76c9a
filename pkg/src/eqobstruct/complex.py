"""Finite abstract simplicial complexes.

A simplex is stored as a tuple of vertex *indices* sorted in the global
vertex order of its complex; that order is also the simplex orientation.
Vertex identifiers are opaque strings and only appear at the I/O boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping, Sequence

Simplex = tuple[int, ...]


class ComplexError(ValueError):
    """Invalid complex input (duplicate ids, unknown vertices, ...)."""


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple[str, ...]
    simplices: frozenset[Simplex]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ComplexError("duplicate vertex id")
        n = len(self.vertices)
        for s in self.simplices:
            if not s or list(s) != sorted(set(s)) or s[0] < 0 or s[-1] >= n:
                raise ComplexError(f"malformed simplex {s!r}")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    @cached_property
    def by_dim(self) -> dict[int, tuple[Simplex, ...]]:
        out: dict[int, list[Simplex]] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {k: tuple(sorted(v)) for k, v in sorted(out.items())}

    def simplices_of_dim(self, k: int) -> tuple[Simplex, ...]:
        return self.by_dim.get(k, ())

    def __contains__(self, s) -> bool:
        return tuple(s) in self.simplices

    def names(self, s: Iterable[int]) -> list[str]:
        return [self.vertices[i] for i in s]

    def simplex(self, ids: Iterable[str]) -> Simplex:
        """Canonical simplex for a collection of vertex ids."""
        try:
            s = tuple(sorted({self.index[v] for v in ids}))
        except KeyError as exc:
            raise ComplexError(f"unknown vertex {exc.args[0]!r}") from None
        if s not in self.simplices:
            raise ComplexError(f"{list(ids)!r} is not a simplex")
        return s

    def facets(self) -> list[Simplex]:
        maximal = []
        for s in sorted(self.simplices, key=lambda t: (-len(t), t)):
            if not any(set(s) < set(m) for m in maximal):
                maximal.append(s)
        return sorted(maximal)

    def f_vector(self) -> list[int]:
        return [len(self.simplices_of_dim(k)) for k in range(self.dim + 1)]

    def is_face_closed(self) -> bool:
        return all(
            sub in self.simplices
            for s in self.simplices
            for k in range(1, len(s))
            for sub in combinations(s, k)
        )


@dataclass(frozen=True)
class VertexMap:
    """Simplicial map given by a vertex assignment (indices to indices)."""

    source: SimplicialComplex
    target: SimplicialComplex
    assignment: tuple[int, ...]

    def __post_init__(self):
        if len(self.assignment) != len(self.source.vertices):
            raise ComplexError("vertex map must assign every source vertex")
        for s in self.source.simplices:
            if self(s) not in self.target.simplices:
                raise ComplexError(
                    f"image of {self.source.names(s)} is not a simplex of the target"
                )

    def __call__(self, s: Iterable[int]) -> Simplex:
        return tuple(sorted({self.assignment[i] for i in s}))


def _closure(facets: Iterable[Simplex]) -> frozenset[Simplex]:
    out: set[Simplex] = set()
    for f in facets:
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return frozenset(out)


def build_complex(vertices: Sequence[str], facets: Iterable[Iterable[str]]) -> SimplicialComplex:
    """Face closure of ``facets``; every listed vertex is a 0-simplex."""
    vertices = tuple(str(v) for v in vertices)
    if len(set(vertices)) != len(vertices):
        seen = set()
        dup = next(v for v in vertices if v in seen or seen.add(v))
        raise ComplexError(f"duplicate vertex id {dup!r}")
    index = {v: i for i, v in enumerate(vertices)}
    tops: list[Simplex] = [(i,) for i in range(len(vertices))]
    for facet in facets:
        ids = [str(v) for v in facet]
        if not ids:
            raise ComplexError("empty facet")
        unknown = [v for v in ids if v not in index]
        if unknown:
            raise ComplexError(f"facet references unknown vertex {unknown[0]!r}")
        if len(set(ids)) != len(ids):
            raise ComplexError(f"facet {ids} repeats a vertex")
        tops.append(tuple(sorted({index[v] for v in ids})))
    return SimplicialComplex(vertices, _closure(tops))


def _fresh(name: str, taken: set[str]) -> str:
    while name in taken:
        name += "'"
    return name


def cone(K: SimplicialComplex, apex: str = "c") -> tuple[SimplicialComplex, VertexMap]:
    """Cone on ``K`` with the apex placed *first* in vertex order.

    With the apex first, the canonical orientation of ``{c} ∪ σ`` is the
    cone ``c * σ``, whose boundary is ``σ - c * ∂σ``.
    """
    apex = _fresh(apex, set(K.vertices))
    vertices = (apex,) + K.vertices
    shifted = [tuple(i + 1 for i in s) for s in K.simplices]
    simplices = set(shifted) | {(0,)} | {(0,) + s for s in shifted}
    C = SimplicialComplex(vertices, frozenset(simplices))
    return C, VertexMap(K, C, tuple(range(1, len(K.vertices) + 1)))


def _join_names(K: SimplicialComplex, J: SimplicialComplex) -> tuple[list[str], list[str]]:
    if set(K.vertices).isdisjoint(J.vertices):
        return list(K.vertices), list(J.vertices)
    left = [f"K:{v}" for v in K.vertices]
    right = [f"J:{v}" for v in J.vertices]
    if not set(left).isdisjoint(right):  # pragma: no cover - prefixes differ
        raise ComplexError("cannot disjointify vertex ids")
    return left, right


def join_inclusions(K: SimplicialComplex, J: SimplicialComplex):
    """``(K * J, K -> K*J, J -> K*J)``; K-vertices precede J-vertices."""
    left, right = _join_names(K, J)
    nk = len(left)
    simplices = set(K.simplices)
    simplices |= {tuple(i + nk for i in t) for t in J.simplices}
    simplices |= {s + tuple(i + nk for i in t) for s in K.simplices for t in J.simplices}
    KJ = SimplicialComplex(tuple(left + right), frozenset(simplices))
    inc_k = VertexMap(K, KJ, tuple(range(nk)))
    inc_j = VertexMap(J, KJ, tuple(range(nk, nk + len(right))))
    return KJ, inc_k, inc_j


def join(K: SimplicialComplex, J: SimplicialComplex) -> SimplicialComplex:
    """Join ``K * J``; ``σ * σ'`` is oriented by concatenation.

    Clashing vertex ids are disjointified as ``K:<id>`` / ``J:<id>``.
    """
    return join_inclusions(K, J)[0]


def n_points(n: int, names: Sequence[str] | None = None) -> SimplicialComplex:
    if n < 1:
        raise ComplexError("n_points needs n >= 1")
    names = list(names) if names is not None else [str(i) for i in range(n)]
    if len(names) != n:
        raise ComplexError("wrong number of names")
    return build_complex(names, [[v] for v in names])


def disjoint_union(K: SimplicialComplex, J: SimplicialComplex) -> SimplicialComplex:
    left, right = _join_names(K, J)
    nk = len(left)
    simplices = set(K.simplices) | {tuple(i + nk for i in t) for t in J.simplices}
    return SimplicialComplex(tuple(left + right), frozenset(simplices))


def cycle_graph(k: int, prefix: str = "v") -> SimplicialComplex:
    if k < 3:
        raise ComplexError("a cycle needs at least 3 vertices")
    names = [f"{prefix}{i}" for i in range(k)]
    return build_complex(names, [[names[i], names[(i + 1) % k]] for i in range(k)])


def standard(name: str, *params: int) -> SimplicialComplex:
    """Named fixture complexes.

    ``n_points(n)``, ``sphere_join(m)`` (the (m+1)-fold join of S^0, an
    m-sphere), ``sphere_join_plus_point(m)``, ``complete_graph(n)``,
    ``complete_bipartite(p, q)``, ``cycle(k)``, ``two_cycles(k)``,
    ``cube_graph()``, ``triangle_boundary()``.
    """
    def need(count: int, lo: int):
        if len(params) != count or any(p < lo for p in params):
            raise ComplexError(f"{name} expects {count} integer parameter(s) >= {lo}")

    if name == "n_points":
        need(1, 1)
        return n_points(params[0])
    if name == "sphere_join":
        need(1, 0)
        m = params[0]
        pairs = [build_complex([f"p{i}", f"q{i}"], [[f"p{i}"], [f"q{i}"]]) for i in range(m + 1)]
        out = pairs[0]
        for P in pairs[1:]:
            out = join(out, P)
        return out
    if name == "sphere_join_plus_point":
        need(1, 0)
        S = standard("sphere_join", params[0])
        pt = build_complex(["x"], [["x"]])
        return disjoint_union(S, pt)
    if name == "complete_graph":
        need(1, 1)
        names = [str(i) for i in range(params[0])]
        return build_complex(names, [list(e) for e in combinations(names, 2)] or [[names[0]]])
    if name == "complete_bipartite":
        need(2, 1)
        p, q = params
        left = [f"a{i}" for i in range(p)]
        right = [f"b{j}" for j in range(q)]
        return build_complex(left + right, [[a, b] for a in left for b in right])
    if name == "cycle":
        need(1, 3)
        return cycle_graph(params[0])
    if name == "two_cycles":
        need(1, 3)
        k = params[0]
        A, B = cycle_graph(k, "a"), cycle_graph(k, "b")
        return disjoint_union(A, B)
    if name == "cube_graph":
        need(0, 0)
        names = [format(i, "03b") for i in range(8)]
        edges = [[u, v] for u, v in combinations(names, 2)
                 if sum(a != b for a, b in zip(u, v)) == 1]
        return build_complex(names, edges)
    if name == "triangle_boundary":
        need(0, 0)
        return build_complex(["a", "b", "c"], [["a", "b"], ["b", "c"], ["a", "c"]])
    raise ComplexError(f"unknown standard complex {name!r}")


def to_json(K: SimplicialComplex) -> dict:
    return {"vertices": list(K.vertices), "facets": [K.names(f) for f in K.facets()]}


def from_json(data: Mapping) -> SimplicialComplex:
    try:
        vertices, facets = data["vertices"], data["facets"]
    except (KeyError, TypeError):
        raise ComplexError("complex file needs 'vertices' and 'facets'") from None
    return build_complex(vertices, facets)
