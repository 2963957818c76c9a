import random

import pytest

from eqobstruct import fixtures
from eqobstruct.complex import build_complex, standard
from eqobstruct.delprod import SYSTEMS, boundary, deleted_product, random_chain
from eqobstruct.group import (
    ActionError,
    action_from_json,
    action_to_json,
    apply_simplex,
    build_action,
    compose,
    induced_chain_map,
    inverse,
    squares_subgroup,
    trivial_action,
)

from support import random_symmetric


def test_five_point_group():
    G = fixtures.five_points().action
    assert G.order == 4
    assert list(G.labels) == ["e", "h", "h^2", "h^3"]
    assert squares_subgroup(G).labels == ["e", "h^2"]


def test_product_group_labels():
    G = fixtures.double_five_points().action
    assert G.order == 16
    S = squares_subgroup(G)
    assert S.labels == ["e", "h^2", "k^2", "h^2*k^2"]


def test_apply_simplex_sign():
    assert apply_simplex((1, 0, 2), (0, 1)) == ((0, 1), -1)
    assert apply_simplex((0, 2, 1), (0, 1, 2)) == ((0, 1, 2), -1)
    assert apply_simplex((1, 2, 0), (0, 1, 2)) == ((0, 1, 2), 1)


def test_compose_and_inverse():
    g, h = (1, 2, 0), (0, 2, 1)
    assert compose(g, h) == tuple(g[h[i]] for i in range(3))
    assert compose(g, inverse(g)) == (0, 1, 2)


def test_non_simplicial_generator_rejected():
    K = build_complex(["a", "b", "c"], [["a", "b"]])
    with pytest.raises(ActionError):
        build_action(K, [{"a": "c", "c": "a"}])
    with pytest.raises(ActionError):
        build_action(K, [{"a": "z"}])


def test_closure_cap():
    K = standard("n_points", 6)
    with pytest.raises(ActionError):
        build_action(K, [(1, 2, 3, 4, 5, 0), (1, 0, 2, 3, 4, 5)], cap=100)


def test_trivial_action():
    G = trivial_action(standard("cycle", 4))
    assert G.order == 1 and G.labels == ("e",)


@pytest.mark.parametrize("seed", range(12))
def test_chain_map_commutes_with_boundary(seed):
    rng = random.Random(seed)
    K, perm = random_symmetric(rng, max_vertices=8, max_dim=2)
    G = build_action(K, [perm])
    dp = deleted_product(K)
    for d in range(1, dp.top + 1):
        for system in SYSTEMS:
            x = random_chain(dp, d, system, rng)
            for g in G.elements:
                assert boundary(induced_chain_map(G, g, x)) == induced_chain_map(G, g, boundary(x))


@pytest.mark.parametrize("seed", range(8))
def test_functoriality(seed):
    rng = random.Random(100 + seed)
    K, perm = random_symmetric(rng, max_vertices=7, max_dim=2)
    G = build_action(K, [perm])
    dp = deleted_product(K)
    d = rng.randint(0, dp.top)
    for system in SYSTEMS:
        x = random_chain(dp, d, system, rng)
        for i in range(G.order):
            for j in range(G.order):
                gh = G.elements[G.multiply(i, j)]
                inner = induced_chain_map(G, G.elements[j], x)
                assert induced_chain_map(G, gh, x) == induced_chain_map(G, G.elements[i], inner)


@pytest.mark.parametrize("name", ["five_points", "star", "double_five_points"])
def test_squares_subgroup_is_normal(name):
    G = fixtures.get(name).action
    S = set(squares_subgroup(G).members)
    assert 0 in S
    for g in range(G.order):
        for s in S:
            conj = G.multiply(G.multiply(g, s), G.inverse_index(g))
            assert conj in S
    for i in range(G.order):
        assert G.multiply(i, i) in S


def test_action_json_round_trip():
    f = fixtures.double_five_points()
    G = action_from_json(f.complex, action_to_json(f.action))
    assert G.elements == f.action.elements and G.labels == f.action.labels
    with pytest.raises(ActionError):
        action_from_json(f.complex, {})
