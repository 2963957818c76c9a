import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqobstruct import fixtures
from eqobstruct.complex import standard
from eqobstruct.delprod import (
    SYSTEMS,
    Z,
    Z2,
    ZMINUS,
    ChainError,
    TwistedChain,
    TwistedCochain,
    boundary,
    cell_boundary,
    chain_complex_presentation,
    deleted_product,
    involution_map,
    involution_terms,
    lifted_boundary,
    normalize_system,
    random_chain,
    random_cochain,
    random_lifts,
    rewrite_sign,
)
from eqobstruct.homology import evaluate_pairing, matmul

from support import complexes


def brute_force_cells(K):
    out = {}
    for s, t in itertools.product(K.simplices, repeat=2):
        if not set(s) & set(t):
            d = len(s) + len(t) - 2
            out[d] = out.get(d, 0) + 1
    return out


@pytest.mark.parametrize("name", ["five_points", "star", "K5", "K33", "triangle_boundary", "cube_graph"])
def test_census_matches_enumeration(name):
    K = fixtures.get(name).complex
    census = deleted_product(K).census()
    assert {d: v["cells"] for d, v in census.items()} == brute_force_cells(K)
    assert all(v["cells"] == 2 * v["orbits"] for v in census.values())


def test_known_census():
    # K5: ordered pairs of disjoint edges 30, edge/vertex 60, vertex pairs 20
    census = deleted_product(standard("complete_graph", 5)).census()
    assert census == {
        0: {"cells": 20, "orbits": 10},
        1: {"cells": 60, "orbits": 30},
        2: {"cells": 30, "orbits": 15},
    }


def test_system_names():
    assert normalize_system("Z+") == Z and normalize_system("Zminus") == ZMINUS
    with pytest.raises(ChainError):
        normalize_system("Q")


def test_rewrite_rule():
    s, t = (0, 1), (2,)
    assert rewrite_sign((s, t), Z) == 1
    assert rewrite_sign((t, s), Z) == 1
    assert rewrite_sign((t, s), ZMINUS) == -1
    assert rewrite_sign(((2, 3), (0, 1)), Z) == -1
    assert rewrite_sign(((2, 3), (0, 1)), ZMINUS) == 1


def test_cell_boundary_formula():
    faces = dict(cell_boundary(((0, 1), (2, 3))))
    assert faces == {
        ((1,), (2, 3)): 1, ((0,), (2, 3)): -1,
        ((0, 1), (3,)): -1, ((0, 1), (2,)): 1,
    }


@pytest.mark.parametrize("name", fixtures.CHAIN_AXIOM_FIXTURES)
@pytest.mark.parametrize("system", SYSTEMS)
def test_boundary_squares_to_zero(name, system):
    dp = deleted_product(fixtures.get(name).complex)
    P = chain_complex_presentation(dp, system)
    for d in range(2, dp.top + 1):
        prod = matmul(P.matrix(d - 1), P.matrix(d))
        if system == Z2:
            prod = [[a % 2 for a in row] for row in prod]
        assert all(a == 0 for row in prod for a in row)


@given(complexes(max_vertices=7), st.sampled_from(SYSTEMS), st.integers(0, 2**16))
def test_boundary_of_boundary_on_chains(K, system, seed):
    dp = deleted_product(K)
    if dp.top < 2:
        return
    rng = random.Random(seed)
    x = random_chain(dp, rng.randint(2, dp.top), system, rng)
    assert boundary(boundary(x)).is_zero()


@given(complexes(max_vertices=7), st.sampled_from(SYSTEMS), st.integers(0, 2**16))
def test_matrix_matches_chain_boundary(K, system, seed):
    dp = deleted_product(K)
    if dp.top < 1:
        return
    rng = random.Random(seed)
    d = rng.randint(1, dp.top)
    x = random_chain(dp, d, system, rng)
    P = chain_complex_presentation(dp, system)
    col = x.vector()
    image = [sum(a * b for a, b in zip(row, col)) for row in P.matrix(d)]
    expected = TwistedChain.from_vector(dp, d - 1, system, image)
    assert boundary(x) == expected
    assert boundary(x).degree == d - 1


@given(complexes(max_vertices=7), st.integers(0, 2**16))
def test_involution_properties(K, seed):
    dp = deleted_product(K)
    if dp.top < 0:
        return
    rng = random.Random(seed)
    for cells in dp.cells.values():
        assert all(dp.involution(c) != c for c in cells)
    d = rng.randint(0, dp.top)
    lifts = random_lifts(dp, d, rng)
    assert involution_terms(involution_terms(lifts)) == lifts
    if d >= 1:
        assert involution_terms(lifted_boundary(lifts)) == lifted_boundary(involution_terms(lifts))


@given(complexes(max_vertices=7), st.integers(0, 2**16))
def test_involution_acts_by_twist_on_quotient(K, seed):
    dp = deleted_product(K)
    if dp.top < 0:
        return
    rng = random.Random(seed)
    d = rng.randint(0, dp.top)
    for system, twist in ((Z, 1), (ZMINUS, -1), (Z2, 1)):
        x = random_chain(dp, d, system, rng)
        assert involution_map(x) == x.scale(twist)


@given(complexes(max_vertices=7), st.sampled_from(SYSTEMS), st.integers(0, 2**16))
def test_cochain_extension_agrees_with_rewriting(K, system, seed):
    dp = deleted_product(K)
    if dp.top < 0:
        return
    rng = random.Random(seed)
    d = rng.randint(0, dp.top)
    phi = random_cochain(dp, d, system, rng)
    lifts = random_lifts(dp, d, rng)
    direct = sum(a * phi.value(c) for c, a in lifts.items())
    via_reps = evaluate_pairing(phi, TwistedChain.from_lifts(dp, d, system, lifts))
    if system == Z2:
        direct %= 2
    assert direct == via_reps


@given(complexes(max_vertices=7), st.sampled_from(SYSTEMS), st.integers(0, 2**16))
def test_coboundary_is_adjoint(K, system, seed):
    dp = deleted_product(K)
    if dp.top < 1:
        return
    rng = random.Random(seed)
    d = rng.randint(1, dp.top)
    phi = random_cochain(dp, d - 1, system, rng)
    x = random_chain(dp, d, system, rng)
    assert evaluate_pairing(phi.coboundary(), x) == evaluate_pairing(phi, boundary(x))


def test_chain_validation():
    dp = deleted_product(standard("cycle", 4))
    with pytest.raises(ChainError):
        TwistedChain.from_lifts(dp, 1, Z, {((0,), (1,)): 1})
    with pytest.raises(ChainError):
        TwistedChain.from_lifts(dp, 0, Z, {((0,), (0,)): 1})
    with pytest.raises(ChainError):
        dp.cell(["v0", "v1"], ["v1"])
    with pytest.raises(ChainError):
        boundary(TwistedChain.zero(dp, 0, Z))
    with pytest.raises(ChainError):
        TwistedCochain(dp, 0, Z, {((1,), (0,)): 1})


def test_chain_arithmetic():
    dp = deleted_product(standard("n_points", 3))
    a = TwistedChain.from_lifts(dp, 0, ZMINUS, {((0,), (1,)): 2, ((2,), (0,)): 1})
    assert a.terms == {((0,), (1,)): 2, ((0,), (2,)): -1}
    assert (a - a).is_zero()
    assert (a + a) == a.scale(2)
    assert a.coefficient(((2,), (0,))) == 1
    b = TwistedChain.from_lifts(dp, 0, Z2, {((0,), (1,)): 2, ((2,), (0,)): 1})
    assert b.terms == {((0,), (2,)): 1}
    with pytest.raises(ChainError):
        a + b
