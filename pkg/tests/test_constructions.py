import random
from itertools import product

import pytest

from eqobstruct import fixtures
from eqobstruct.complex import cone, join_inclusions, standard
from eqobstruct.constructions import (
    CONE_FIRST,
    CONE_SECOND,
    INVOLUTION,
    JOIN_FIRST,
    JOIN_FIRST_AS_PRINTED,
    JOIN_SECOND,
    JOIN_SECOND_AS_PRINTED,
    ConstructionError,
    cone_cycle,
    cone_lifts,
    cone_mod2,
    join_cycle,
    join_lifts,
    join_mod2,
    verify_sign_identities,
)
from eqobstruct.delprod import (
    Z,
    Z2,
    ZMINUS,
    TwistedChain,
    boundary,
    deleted_product,
    is_rep,
    rewrite_sign,
    swap,
)
from eqobstruct.homology import reduce_mod2
from eqobstruct.obstruction import vertex_condition_cycles, wu_system

from support import random_complex


def random_vertex_condition_cycle(rng, max_vertices=6, max_dim=1):
    """A random integer combination of cycles satisfying the vertex-sum condition."""
    while True:
        K = random_complex(rng, max_vertices, max_dim)
        dp = deleted_product(K)
        if dp.top < 0:
            continue
        options = [(n, b) for n in range(dp.top + 1) if (b := vertex_condition_cycles(dp, n))]
        if not options:
            continue
        n, basis = options[-1] if rng.random() < 0.6 else rng.choice(options)
        x = TwistedChain.zero(dp, n, wu_system(n))
        for b in basis:
            x = x + b.scale(rng.randint(-2, 2))
        if not x.is_zero():
            return x


def flip_some(x: TwistedChain, rng) -> dict:
    """Equivalent lifts of ``x`` with a random subset of terms moved to the other orbit member."""
    out = {}
    for cell, a in x.terms.items():
        if rng.random() < 0.5:
            other = swap(cell)
            out[other] = rewrite_sign(other, x.system) * a
        else:
            out[cell] = a
    return out


def test_cone_of_five_points():
    f = fixtures.five_points()
    out = cone_cycle(f.cycle)
    assert out.degree == 1 and out.system == wu_system(1) == Z
    assert boundary(out).is_zero()
    assert len(out.terms) == 6
    assert out == fixtures.star().cycle


def test_join_of_five_points():
    f = fixtures.five_points()
    out = join_cycle(f.cycle, f.cycle)
    assert out.degree == 2 and out.system == wu_system(2) == ZMINUS
    assert boundary(out).is_zero()
    assert len(out.terms) == 18


@pytest.mark.parametrize("seed", range(100))
def test_cone_outputs_are_cycles(seed):
    rng = random.Random(seed)
    x = random_vertex_condition_cycle(rng, max_dim=1 + seed % 2)
    data = cone(x.dp.complex)
    out = cone_cycle(x, data)
    assert out.degree == x.degree + 1 and out.system == wu_system(x.degree + 1)
    assert boundary(out).is_zero()
    again = TwistedChain.from_lifts(out.dp, out.degree, out.system, cone_lifts(flip_some(x, rng), data[1]))
    assert again == out
    assert reduce_mod2(out) == cone_mod2(reduce_mod2(x), data)


@pytest.mark.parametrize("seed", range(100))
def test_join_outputs_are_cycles(seed):
    rng = random.Random(1000 + seed)
    x = random_vertex_condition_cycle(rng, max_vertices=4, max_dim=1 + seed % 2)
    y = random_vertex_condition_cycle(rng, max_vertices=4)
    data = join_inclusions(x.dp.complex, y.dp.complex)
    out = join_cycle(x, y, data)
    assert out.degree == x.degree + y.degree + 2
    assert out.system == wu_system(out.degree)
    if out.degree > 0:
        assert boundary(out).is_zero()
    lifts = join_lifts(flip_some(x, rng), flip_some(y, rng), data[1], data[2])
    assert TwistedChain.from_lifts(out.dp, out.degree, out.system, lifts) == out
    assert reduce_mod2(out) == join_mod2(reduce_mod2(x), reduce_mod2(y), data)


def test_mod2_inputs():
    f = fixtures.five_points()
    x = reduce_mod2(f.cycle)
    assert cone_cycle(x) == cone_mod2(x)
    assert join_cycle(x, x) == join_mod2(x, x)
    with pytest.raises(ConstructionError):
        join_cycle(x, f.cycle)


def test_bad_inputs():
    f = fixtures.five_points()
    dp = f.cycle.dp
    with pytest.raises(ConstructionError):
        cone_cycle(TwistedChain.from_lifts(dp, 0, Z, {dp.cell(["A"], ["1"]): 1}))
    lonely = TwistedChain.from_lifts(dp, 0, ZMINUS, {dp.cell(["A"], ["1"]): 1})
    with pytest.raises(ConstructionError, match="vertex-sum"):
        cone_cycle(lonely)
    with pytest.raises(ConstructionError, match="vertex-sum"):
        join_cycle(lonely, f.cycle)
    star = fixtures.star()
    sdp = star.cycle.dp
    open_path = TwistedChain.from_lifts(sdp, 1, Z, {sdp.cell(["c", "A"], ["1"]): 1})
    with pytest.raises(ConstructionError, match="not a cycle"):
        cone_cycle(open_path)
    with pytest.raises(ConstructionError):
        cone_cycle(f.cycle, cone(standard("n_points", 5)))


def test_sign_identities():
    report = verify_sign_identities()
    assert report["passed"]
    rows = {r["name"]: r for r in report["identities"]}
    printed = {"join-1a", "join-1b", "join-2a", "join-2b", "cone-1", "cone-2", "cone-2-as-printed"}
    assert printed <= set(rows)
    for row in rows.values():
        assert row["all_hold"] == (not row["misprint"] and not row["restricted"])
        assert len(row["tuples"]) == 2 ** len(row["variables"])
    assert rows["cone-2-as-printed"]["failures"] == [[0, 1], [1, 0]]
    # printed join signs: faces from K cancel iff deg J = s' + t' is even, and vice versa
    for row in rows.values():
        if row["name"].startswith("join-face-K") and row["restricted"]:
            assert all((f[2] + f[3]) % 2 == 1 for f in row["failures"])
        if row["name"].startswith("join-face-J") and row["restricted"]:
            assert all((f[0] + f[1]) % 2 == 1 for f in row["failures"])


def test_formulas_reproduce_coded_signs():
    for s, t, s2, t2 in product(range(3), repeat=4):
        vals = {"s": s, "t": t, "s'": s2, "t'": t2}
        assert JOIN_FIRST_AS_PRINTED.sign(vals) == (-1) ** (s * (t2 + 1) + s2)
        assert JOIN_SECOND_AS_PRINTED.sign(vals) == (-1) ** ((s + 1) * (s2 + 1) + s2 * t2)
        assert JOIN_FIRST.sign(vals) == (-1) ** (s * (t2 + 1) + s2 + s * s2 + t * t2)
        assert JOIN_SECOND.sign(vals) == (-1) ** ((s + 1) * (s2 + 1) + s2 * t2 + s * t2 + t * s2)
        assert CONE_FIRST.sign(vals) == (-1) ** s
        assert CONE_SECOND.sign(vals) == -1
        assert INVOLUTION.sign(vals) == (-1) ** (s * t)
    assert set(JOIN_FIRST_AS_PRINTED.variables) == {"s", "t'", "s'"}


def test_printed_join_signs_agree_in_degree_zero():
    f = fixtures.five_points()
    assert join_cycle(f.cycle, f.cycle, as_printed=True) == join_cycle(f.cycle, f.cycle)


def test_printed_join_signs_fail_for_odd_degrees():
    rng = random.Random(4)
    failures = 0
    for _ in range(5):
        x = random_vertex_condition_cycle(rng, max_vertices=4)
        while x.degree != 1:
            x = random_vertex_condition_cycle(rng, max_vertices=4)
        out = join_cycle(x, x)
        assert boundary(out).is_zero()
        try:
            join_cycle(x, x, as_printed=True)
        except ConstructionError:
            failures += 1
    assert failures == 5


def test_cone_lifts_formula():
    inc = cone(standard("n_points", 2))[1]
    lifts = cone_lifts({((0,), (1,)): 1}, inc)
    assert lifts == {((1,), (0, 2)): 1, ((0, 1), (2,)): -1}
