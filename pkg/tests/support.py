"""Shared generators for the test suite."""

import random

from hypothesis import strategies as st

from eqobstruct.complex import build_complex


def random_complex(rng: random.Random, max_vertices: int = 8, max_dim: int = 2):
    """Random complex on at most ``max_vertices`` vertices with facets up to ``max_dim``."""
    nv = rng.randint(1, max_vertices)
    names = [f"v{i}" for i in range(nv)]
    facets = []
    for _ in range(rng.randint(0, 2 * nv)):
        k = rng.randint(1, min(max_dim + 1, nv))
        facets.append(rng.sample(names, k))
    return build_complex(names, facets)


@st.composite
def complexes(draw, max_vertices: int = 7, max_dim: int = 2):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_complex(random.Random(seed), max_vertices, max_dim)


def random_symmetric(rng: random.Random, max_vertices: int = 7, max_dim: int = 1):
    """Random complex closed under a random vertex permutation; returns (K, perm)."""
    nv = rng.randint(2, max_vertices)
    perm = list(range(nv))
    rng.shuffle(perm)
    names = [f"v{i}" for i in range(nv)]
    facets = set()
    for _ in range(rng.randint(1, nv)):
        f = tuple(sorted(rng.sample(range(nv), rng.randint(1, min(max_dim + 1, nv)))))
        while f not in facets:
            facets.add(f)
            f = tuple(sorted(perm[v] for v in f))
    K = build_complex(names, [[names[v] for v in f] for f in facets])
    return K, tuple(perm)


# criterion number -> "PASS/FAIL criterion k ..." line, filled by test_acceptance
ACCEPTANCE: dict[int, str] = {}
