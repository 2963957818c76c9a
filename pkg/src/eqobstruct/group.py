"""Finite groups acting simplicially by vertex permutations."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .complex import ComplexError, Simplex, SimplicialComplex, VertexMap

Perm = tuple[int, ...]

DEFAULT_CAP = 10_000


class ActionError(ValueError):
    pass


def compose(g: Perm, h: Perm) -> Perm:
    """``g ∘ h`` (apply ``h`` first)."""
    return tuple(g[i] for i in h)


def inverse(g: Perm) -> Perm:
    out = [0] * len(g)
    for i, j in enumerate(g):
        out[j] = i
    return tuple(out)


def sort_sign(values: Sequence[int]) -> int:
    """Sign of the permutation that sorts ``values`` (distinct entries)."""
    sign = 1
    vals = list(values)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            if vals[i] > vals[j]:
                sign = -sign
    return sign


def apply_simplex(g: Perm, s: Simplex) -> tuple[Simplex, int]:
    """Image of an oriented simplex: canonical image and orientation sign."""
    image = [g[v] for v in s]
    return tuple(sorted(image)), sort_sign(image)


def _word_label(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "e"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(names[word[i]] if run == 1 else f"{names[word[i]]}^{run}")
        i = j
    return "*".join(parts)


@dataclass(frozen=True)
class GroupAction:
    """Closure of the generators; element 0 is the identity.

    Elements are listed in shortlex order of their minimal words over the
    generators (the order they were discovered by breadth-first search).
    """

    complex: SimplicialComplex
    generators: tuple[Perm, ...]
    names: tuple[str, ...]
    elements: tuple[Perm, ...]
    labels: tuple[str, ...]

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Perm:
        return self.elements[0]

    def element(self, label: str) -> Perm:
        try:
            return self.elements[self.labels.index(label)]
        except ValueError:
            raise ActionError(f"no group element labelled {label!r}") from None

    def label(self, g: Perm) -> str:
        return self.labels[self.index[g]]

    def multiply(self, i: int, j: int) -> int:
        return self.index[compose(self.elements[i], self.elements[j])]

    def inverse_index(self, i: int) -> int:
        return self.index[inverse(self.elements[i])]

    def table(self) -> list[list[int]]:
        n = self.order
        return [[self.multiply(i, j) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class SquaresSubgroup:
    parent: GroupAction
    members: tuple[int, ...]  # indices into parent.elements, ascending

    @property
    def labels(self) -> list[str]:
        return [self.parent.labels[i] for i in self.members]

    @property
    def elements(self) -> list[Perm]:
        return [self.parent.elements[i] for i in self.members]

    def __len__(self) -> int:
        return len(self.members)


def _check_simplicial(K: SimplicialComplex, g: Perm, name: str):
    if sorted(g) != list(range(len(K.vertices))):
        raise ActionError(f"generator {name} is not a permutation of the vertices")
    for s in sorted(K.simplices):
        if apply_simplex(g, s)[0] not in K.simplices:
            raise ActionError(
                f"generator {name} is not simplicial: {K.names(s)} maps to a non-simplex"
            )


def build_action(
    K: SimplicialComplex,
    generators: Iterable[Perm | Mapping[str, str]],
    names: Sequence[str] | None = None,
    cap: int = DEFAULT_CAP,
) -> GroupAction:
    """Enumerate the group generated by ``generators``.

    A generator is either an index permutation or a partial map of vertex
    ids (unlisted vertices are fixed).
    """
    gens: list[Perm] = []
    for g in generators:
        if isinstance(g, Mapping):
            perm = list(range(len(K.vertices)))
            for src, dst in g.items():
                if src not in K.index or dst not in K.index:
                    raise ActionError(f"unknown vertex in generator: {src!r} -> {dst!r}")
                perm[K.index[src]] = K.index[dst]
            gens.append(tuple(perm))
        else:
            gens.append(tuple(g))
    if names is None:
        default = ["h", "k", "g", "r", "s", "t"]
        names = default[: len(gens)] if len(gens) <= len(default) else [f"g{i}" for i in range(len(gens))]
    names = tuple(names)
    if len(names) != len(gens) or len(set(names)) != len(names):
        raise ActionError("generator names must be distinct, one per generator")
    for g, nm in zip(gens, names):
        _check_simplicial(K, g, nm)

    ident = tuple(range(len(K.vertices)))
    seen = {ident: ()}
    order = [ident]
    queue = deque([ident])
    while queue:
        g = queue.popleft()
        for gi, h in enumerate(gens):
            gh = compose(g, h)
            if gh not in seen:
                if len(seen) >= cap:
                    raise ActionError(f"group closure exceeds cap of {cap} elements")
                seen[gh] = seen[g] + (gi,)
                order.append(gh)
                queue.append(gh)
    labels = tuple(_word_label(seen[g], names) for g in order)
    return GroupAction(K, tuple(gens), names, tuple(order), labels)


def trivial_action(K: SimplicialComplex) -> GroupAction:
    return build_action(K, [])


def _generated(G: GroupAction, seeds: Iterable[int]) -> tuple[int, ...]:
    members = {0}
    frontier = list(set(seeds))
    members.update(frontier)
    while frontier:
        new = []
        for a in frontier:
            for b in list(members):
                for c in (G.multiply(a, b), G.multiply(b, a)):
                    if c not in members:
                        members.add(c)
                        new.append(c)
        frontier = new
    return tuple(sorted(members))


def squares_subgroup(G: GroupAction) -> SquaresSubgroup:
    squares = {G.multiply(i, i) for i in range(G.order)}
    return SquaresSubgroup(G, _generated(G, squares))


def extend_action(G: GroupAction, inclusion: VertexMap) -> GroupAction:
    """Transport ``G`` along an injective inclusion, fixing all other vertices.

    This covers both the cone (apex fixed) and ``K * J`` with J fixed.
    """
    if inclusion.source != G.complex:
        raise ActionError("inclusion does not start at the acting complex")
    amap = inclusion.assignment
    if len(set(amap)) != len(amap):
        raise ActionError("inclusion must be injective")
    T = inclusion.target
    gens = []
    for g in G.generators:
        perm = list(range(len(T.vertices)))
        for i, j in enumerate(g):
            perm[amap[i]] = amap[j]
        gens.append(tuple(perm))
    return build_action(T, gens, G.names)


def product_action(
    GK: GroupAction, GJ: GroupAction, inc_k: VertexMap, inc_j: VertexMap
) -> GroupAction:
    """``GK × GJ`` acting factorwise on a join (or disjoint union)."""
    if inc_k.target != inc_j.target:
        raise ActionError("inclusions must share a target")
    ek = extend_action(GK, inc_k)
    ej = extend_action(GJ, inc_j)
    names = list(ek.names)
    for nm in ej.names:
        while nm in names:
            nm += "'"
        names.append(nm)
    return build_action(inc_k.target, list(ek.generators) + list(ej.generators), names)


def induced_chain_map(G: GroupAction, g: Perm | str, x):
    """Push a twisted chain forward along ``g``: ``(σ,τ) ↦ ±(gσ, gτ)``.

    The sign is the product of the orientation signs of ``g`` on σ and τ;
    the result is rewritten onto orbit representatives.
    """
    if isinstance(g, str):
        g = G.element(g)
    lifts = {}
    for (s, t), a in x.terms.items():
        gs, e1 = apply_simplex(g, s)
        gt, e2 = apply_simplex(g, t)
        assert set(gs).isdisjoint(gt), "automorphism produced a diagonal cell"
        lifts[(gs, gt)] = lifts.get((gs, gt), 0) + e1 * e2 * a
    return type(x).from_lifts(x.dp, x.degree, x.system, lifts)


def pullback(G: GroupAction, g: Perm | str, phi):
    """The cochain ``φ ∘ g⋆``."""
    if isinstance(g, str):
        g = G.element(g)
    values = {}
    for cell in phi.dp.representatives(phi.degree):
        s, t = cell
        gs, e1 = apply_simplex(g, s)
        gt, e2 = apply_simplex(g, t)
        values[cell] = e1 * e2 * phi.value((gs, gt))
    return type(phi)(phi.dp, phi.degree, phi.system, values)


def action_to_json(G: GroupAction) -> dict:
    K = G.complex
    gens = [
        [[K.vertices[i], K.vertices[j]] for i, j in enumerate(g) if i != j]
        for g in G.generators
    ]
    return {"generators": gens, "names": list(G.names)}


def action_from_json(K: SimplicialComplex, data: Mapping) -> GroupAction:
    try:
        raw = data["generators"]
    except (KeyError, TypeError):
        raise ActionError("action file needs 'generators'") from None
    gens = []
    for gen in raw:
        mapping = {}
        for pair in gen:
            if len(pair) != 2:
                raise ActionError("generator entries must be [from, to] pairs")
            mapping[str(pair[0])] = str(pair[1])
        gens.append(mapping)
    return build_action(K, gens, data.get("names"))


__all__ = [
    "ActionError", "ComplexError", "GroupAction", "SquaresSubgroup", "build_action",
    "trivial_action", "squares_subgroup", "extend_action", "product_action",
    "induced_chain_map", "pullback",
    "apply_simplex", "sort_sign", "compose", "inverse",
]
