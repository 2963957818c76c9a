"""Built-in corpus: complexes, actions, cycles and spatial configurations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .complex import SimplicialComplex, build_complex, cone, join_inclusions, standard
from .constructions import cone_cycle, join_cycle
from .delprod import ZMINUS, TwistedChain, deleted_product
from .geometry import RationalConfiguration, make_configuration
from .group import GroupAction, build_action, extend_action, product_action


@dataclass
class Fixture:
    name: str
    complex: SimplicialComplex
    action: GroupAction | None = None
    cycle: TwistedChain | None = None
    coords: RationalConfiguration | None = None
    description: str = ""


def five_points() -> Fixture:
    K = build_complex(["A", "1", "2", "3", "4"], [["A"], ["1"], ["2"], ["3"], ["4"]])
    G = build_action(K, [{"1": "2", "2": "3", "3": "4", "4": "1"}], ["h"])
    dp = deleted_product(K)
    phi = TwistedChain.from_lifts(
        dp, 0, ZMINUS,
        {dp.cell(["A"], ["1"]): 1, dp.cell(["1"], ["3"]): 1, dp.cell(["3"], ["A"]): 1},
    )
    return Fixture("five_points", K, G, phi, None,
                   "Z/4 rotating four of five points; degree-0 evaluation cycle")


def star() -> Fixture:
    base = five_points()
    C, inc = cone(base.complex)
    G = extend_action(base.action, inc)
    phi = cone_cycle(base.cycle, (C, inc))
    return Fixture("star", C, G, phi, None, "cone on five points with the cone point fixed")


def double_five_points() -> Fixture:
    a, b = five_points(), five_points()
    KJ, inc_k, inc_j = join_inclusions(a.complex, b.complex)
    G_b = build_action(b.complex, list(b.action.generators), ["k"])
    G = product_action(a.action, G_b, inc_k, inc_j)
    phi = join_cycle(a.cycle, b.cycle, (KJ, inc_k, inc_j))
    return Fixture("double_five_points", KJ, G, phi, None,
                   "join of two five-point examples with the Z/4 x Z/4 product action")


def _shear(points: dict[str, tuple], a=Fraction(1, 7), b=Fraction(1, 5)) -> dict[str, tuple]:
    # x += a z, y += b z keeps orientation and breaks vertical edges
    return {v: (x + a * z, y + b * z, z) for v, (x, y, z) in points.items()}


def _frac_points(raw: dict[str, tuple]) -> dict[str, tuple]:
    return {v: tuple(Fraction(c) for c in p) for v, p in raw.items()}


def _two_circle_complex(k1: int, k2: int) -> SimplicialComplex:
    names = [f"a{i}" for i in range(k1)] + [f"b{i}" for i in range(k2)]
    edges = [[f"a{i}", f"a{(i + 1) % k1}"] for i in range(k1)]
    edges += [[f"b{i}", f"b{(i + 1) % k2}"] for i in range(k2)]
    return build_complex(names, edges)


_SQUARE = {"a0": (0, 0, 0), "a1": (2, 0, 0), "a2": (2, 2, 0), "a3": (0, 2, 0)}


def hopf_link() -> Fixture:
    raw = dict(_SQUARE)
    raw.update({"b0": (1, "9/10", -1), "b1": (3, "11/10", -1), "b2": (3, "13/10", 1), "b3": (1, "11/10", 1)})
    K = _two_circle_complex(4, 4)
    coords = make_configuration(K, _shear(_frac_points(raw)))
    return Fixture("hopf", K, None, None, coords, "two linked squares, linking number one")


def unlink() -> Fixture:
    raw = dict(_SQUARE)
    raw.update({"b0": (11, "9/10", -1), "b1": (13, "11/10", -1), "b2": (13, "13/10", 1), "b3": (11, "11/10", 1)})
    K = _two_circle_complex(4, 4)
    coords = make_configuration(K, _shear(_frac_points(raw)))
    return Fixture("unlink", K, None, None, coords, "two separated squares")


def torus_link() -> Fixture:
    raw = {"a0": (0, 0, 0), "a1": (4, 0, 0), "a2": (4, 4, 0), "a3": (0, 4, 0)}
    b = [(1, 1, 2), (1, 1, -1), (6, 2, -1), (6, 2, 1), (3, 3, 1), (3, 3, -2), (7, 0, -2), (7, 0, 2)]
    raw.update({f"b{i}": p for i, p in enumerate(b)})
    K = _two_circle_complex(4, 8)
    coords = make_configuration(K, _shear(_frac_points(raw)))
    return Fixture("torus_link", K, None, None, coords,
                   "square and an octagon threading it twice, linking number two")


def skew_edges() -> Fixture:
    K = build_complex(["a", "b", "c", "d"], [["a", "b"], ["c", "d"]])
    coords = make_configuration(
        K, {"a": (-1, 0, 1), "b": (1, 0, 1), "c": (0, -1, 0), "d": (0, 1, 0)}
    )
    return Fixture("skew_edges", K, None, None, coords,
                   "two skew edges, ab passing over cd in the projection")


def star_in_plane() -> Fixture:
    base = star()
    coords = make_configuration(base.complex, {
        "c": (0, 0), "A": (3, 1), "1": (-1, 3), "2": (-3, -1), "3": (1, -3), "4": (2, 2),
    })
    return Fixture("star_in_plane", base.complex, base.action, base.cycle, coords,
                   "the star embedded in the plane, used as an almost embedding")


def _plain(name: str, K: SimplicialComplex, description: str) -> Fixture:
    return Fixture(name, K, None, None, None, description)


def corpus() -> dict[str, Fixture]:
    out = {
        "five_points": five_points(),
        "star": star(),
        "double_five_points": double_five_points(),
        "hopf": hopf_link(),
        "unlink": unlink(),
        "torus_link": torus_link(),
        "skew_edges": skew_edges(),
        "star_in_plane": star_in_plane(),
        "triangle_boundary": _plain("triangle_boundary", standard("triangle_boundary"), "hollow triangle"),
        "K5": _plain("K5", standard("complete_graph", 5), "complete graph on five vertices"),
        "K33": _plain("K33", standard("complete_bipartite", 3, 3), "utility graph"),
        "cube_graph": _plain("cube_graph", standard("cube_graph"), "1-skeleton of the cube"),
        "cycle4": _plain("cycle4", standard("cycle", 4), "4-cycle"),
        "two_cycles4": _plain("two_cycles4", standard("two_cycles", 4), "two disjoint 4-cycles"),
        "sphere_plus_point": _plain(
            "sphere_plus_point", standard("sphere_join_plus_point", 1), "4-cycle plus an isolated point"
        ),
    }
    return out


def get(name: str) -> Fixture:
    table = corpus()
    if name not in table:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(sorted(table))}")
    return table[name]


CHAIN_AXIOM_FIXTURES = ("five_points", "star", "triangle_boundary", "K5", "K33", "double_five_points", "two_cycles4")
