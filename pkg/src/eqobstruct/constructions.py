"""Cone and join transport of evaluation cycles, with their sign rules.

Cone: each term ``a (σ, τ)`` of a degree-n cycle on C(K) becomes

    a [ (-1)^{dim σ} (σ, c*τ) - (c*σ, τ) ]

on C(Cone K). Join: terms ``a (σ, τ)`` of Φ_K and ``b (σ', τ')`` of Φ_J give

    a b [ (-1)^{σ(τ'+1) + σ' + σσ' + ττ'} (σ*σ', τ*τ')
          + (-1)^{(σ+1)(σ'+1) + σ'τ' + στ' + τσ'} (σ*τ', τ*σ') ]

(dimensions abbreviated to the simplex letters). The quadratic terms
``σσ' + ττ'`` and ``στ' + τσ'`` vanish when either input has degree 0; without
them the output fails to be a cycle once both degrees are positive and one
is odd. The shorter signs are kept as ``JOIN_*_AS_PRINTED``. Both outputs
are rewritten onto representatives in the Wu-side system of the new degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .complex import SimplicialComplex, VertexMap, cone, join_inclusions
from .delprod import (
    Z2,
    Cell,
    ChainError,
    TwistedChain,
    boundary,
    deleted_product,
    dim,
)
from .obstruction import wu_system


class ConstructionError(ValueError):
    pass


# GF(2) polynomials in parity variables; x^2 = x since variables are 0/1.

@dataclass(frozen=True)
class SignFormula:
    """A sign ``(-1)^p`` with ``p`` a GF(2) polynomial in dimension parities.

    ``monomials`` is a set of variable sets; the empty set is the constant 1.
    """

    name: str
    monomials: frozenset[frozenset[str]]

    def exponent(self, values: Mapping[str, int]) -> int:
        return sum(all(values[v] % 2 for v in m) for m in self.monomials) % 2

    def sign(self, values: Mapping[str, int]) -> int:
        return -1 if self.exponent(values) else 1

    @property
    def variables(self) -> list[str]:
        return sorted(set().union(*self.monomials)) if self.monomials else []

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        parts = sorted(("*".join(sorted(m)) or "1") for m in self.monomials)
        return " + ".join(parts)


def _mul(p, q):
    out: set = set()
    for a in p:
        for b in q:
            out ^= {a | b}
    return frozenset(out)


def _add(*ps):
    out: set = set()
    for p in ps:
        out ^= set(p)
    return frozenset(out)


_ONE = frozenset([frozenset()])


def _v(name):
    return frozenset([frozenset([name])])


S, T, S2, T2 = _v("s"), _v("t"), _v("s'"), _v("t'")

CONE_FIRST = SignFormula("cone", S)
CONE_SECOND = SignFormula("cone-second-term", _ONE)
_J1 = _add(_mul(S, _add(T2, _ONE)), S2)
_J2 = _add(_mul(_add(S, _ONE), _add(S2, _ONE)), _mul(S2, T2))
JOIN_FIRST_AS_PRINTED = SignFormula("join-first-term-as-printed", _J1)
JOIN_SECOND_AS_PRINTED = SignFormula("join-second-term-as-printed", _J2)
JOIN_FIRST = SignFormula("join-first-term", _add(_J1, _mul(S, S2), _mul(T, T2)))
JOIN_SECOND = SignFormula("join-second-term", _add(_J2, _mul(S, T2), _mul(T, S2)))
INVOLUTION = SignFormula("involution-rewrite", _mul(S, T))

SIGN_FORMULAS = (
    CONE_FIRST, CONE_SECOND, JOIN_FIRST, JOIN_SECOND,
    JOIN_FIRST_AS_PRINTED, JOIN_SECOND_AS_PRINTED, INVOLUTION,
)


def cone_lifts(terms: Mapping[Cell, int], inclusion: VertexMap, apex: int = 0) -> dict[Cell, int]:
    """The cone construction on lifted cells (any orientation of each orbit)."""
    out: dict[Cell, int] = {}
    for (s, t), a in terms.items():
        s2, t2 = inclusion(s), inclusion(t)
        vals = {"s": dim(s), "t": dim(t)}
        c1 = (s2, (apex,) + t2)
        c2 = ((apex,) + s2, t2)
        out[c1] = out.get(c1, 0) + CONE_FIRST.sign(vals) * a
        out[c2] = out.get(c2, 0) + CONE_SECOND.sign(vals) * a
    return out


def _require_cycle(x: TwistedChain, what: str):
    if x.degree > 0 and not boundary(x).is_zero():
        raise ConstructionError(f"{what} is not a cycle")


def _check_system(x: TwistedChain, what: str):
    if x.system not in (wu_system(x.degree), Z2):
        raise ConstructionError(
            f"{what} must live in {wu_system(x.degree)} (degree {x.degree}), got {x.system}"
        )


def cone_cycle(phi: TwistedChain, cone_data: tuple[SimplicialComplex, VertexMap] | None = None) -> TwistedChain:
    """Transport a degree-n cycle on C(K) to a degree-(n+1) cycle on C(Cone K)."""
    _check_system(phi, "input cycle")
    _require_cycle(phi, "input chain")
    C, inc = cone_data or cone(phi.dp.complex)
    if inc.source != phi.dp.complex:
        raise ConstructionError("cone data does not match the cycle's complex")
    apex = next(i for i in range(len(C.vertices)) if i not in inc.assignment)
    if apex != 0:
        raise ConstructionError("the cone apex must come first in the vertex order")
    n = phi.degree
    system = Z2 if phi.system == Z2 else wu_system(n + 1)
    dp = deleted_product(C)
    out = TwistedChain.from_lifts(dp, n + 1, system, cone_lifts(phi.terms, inc))
    if not boundary(out).is_zero():
        raise ConstructionError("cone output is not a cycle: the input violates the vertex-sum condition")
    return out


def join_lifts(terms_k: Mapping[Cell, int], terms_j: Mapping[Cell, int],
               inc_k: VertexMap, inc_j: VertexMap, as_printed: bool = False) -> dict[Cell, int]:
    first, second = (JOIN_FIRST_AS_PRINTED, JOIN_SECOND_AS_PRINTED) if as_printed else (JOIN_FIRST, JOIN_SECOND)
    out: dict[Cell, int] = {}
    for (s, t), a in terms_k.items():
        sk, tk = inc_k(s), inc_k(t)
        for (s2, t2), b in terms_j.items():
            sj, tj = inc_j(s2), inc_j(t2)
            vals = {"s": dim(s), "t": dim(t), "s'": dim(s2), "t'": dim(t2)}
            c1 = (sk + sj, tk + tj)
            c2 = (sk + tj, tk + sj)
            out[c1] = out.get(c1, 0) + first.sign(vals) * a * b
            out[c2] = out.get(c2, 0) + second.sign(vals) * a * b
    return out


def join_cycle(phi_k: TwistedChain, phi_j: TwistedChain, join_data=None,
               as_printed: bool = False) -> TwistedChain:
    """Degree ``n+m+2`` cycle on C(K * J) from cycles of degrees n and m.

    ``as_printed`` drops the quadratic sign corrections; the result is then a
    cycle only when n = 0, m = 0, or both are even.
    """
    for x, what in ((phi_k, "first cycle"), (phi_j, "second cycle")):
        _check_system(x, what)
        _require_cycle(x, what)
    if (phi_k.system == Z2) != (phi_j.system == Z2):
        raise ConstructionError("cannot mix Z2 and integral inputs")
    KJ, inc_k, inc_j = join_data or join_inclusions(phi_k.dp.complex, phi_j.dp.complex)
    if inc_k.source != phi_k.dp.complex or inc_j.source != phi_j.dp.complex:
        raise ConstructionError("join data does not match the cycles' complexes")
    deg = phi_k.degree + phi_j.degree + 2
    system = Z2 if phi_k.system == Z2 else wu_system(deg)
    dp = deleted_product(KJ)
    out = TwistedChain.from_lifts(dp, deg, system, join_lifts(phi_k.terms, phi_j.terms, inc_k, inc_j, as_printed))
    if not boundary(out).is_zero():
        raise ConstructionError(
            "join output is not a cycle: an input violates the vertex-sum condition"
            + (" or the printed signs do not apply to these degrees" if as_printed else "")
        )
    return out


def cone_mod2(phi: TwistedChain, cone_data=None) -> TwistedChain:
    """Unsigned cone construction on mod-2 chains."""
    C, inc = cone_data or cone(phi.dp.complex)
    lifts: dict[Cell, int] = {}
    for (s, t), a in phi.terms.items():
        if a % 2:
            for cell in ((inc(s), (0,) + inc(t)), ((0,) + inc(s), inc(t))):
                lifts[cell] = lifts.get(cell, 0) + 1
    return TwistedChain.from_lifts(deleted_product(C), phi.degree + 1, Z2, lifts)


def join_mod2(phi_k: TwistedChain, phi_j: TwistedChain, join_data=None) -> TwistedChain:
    """Unsigned join construction on mod-2 chains."""
    KJ, inc_k, inc_j = join_data or join_inclusions(phi_k.dp.complex, phi_j.dp.complex)
    lifts: dict[Cell, int] = {}
    for (s, t), a in phi_k.terms.items():
        for (s2, t2), b in phi_j.terms.items():
            if a * b % 2:
                for cell in ((inc_k(s) + inc_j(s2), inc_k(t) + inc_j(t2)),
                             (inc_k(s) + inc_j(t2), inc_k(t) + inc_j(s2))):
                    lifts[cell] = lifts.get(cell, 0) + 1
    return TwistedChain.from_lifts(deleted_product(KJ), phi_k.degree + phi_j.degree + 2, Z2, lifts)


# Parity identities: representative independence (swap-*) and cancellation of
# boundary faces coming from the two factors (face-*).

@dataclass(frozen=True)
class ParityIdentity:
    name: str
    variables: tuple[str, ...]
    lhs: frozenset
    rhs: frozenset
    misprint: bool = False
    restricted: bool = False
    note: str = ""

    def holds(self, values: Mapping[str, int]) -> bool:
        left = SignFormula("lhs", self.lhs).exponent(values)
        right = SignFormula("rhs", self.rhs).exponent(values)
        return left == right


def _subst(p, mapping: Mapping[str, frozenset]) -> frozenset:
    out = frozenset()
    for mono in p:
        term = _ONE
        for v in mono:
            term = _mul(term, mapping.get(v, _v(v)))
        out = _add(out, term)
    return out


_VARS = ("s", "t", "s'", "t'")


def _join_identities(e1, e2, suffix: str = "", restricted: bool = False) -> list[ParityIdentity]:
    """Swap and face identities for join exponents ``e1``, ``e2``."""
    one = _ONE
    s, t, s2, t2 = S, T, S2, T2
    swap_j = {"s'": t2, "t'": s2}
    swap_k = {"s": t, "t": s}
    k_face = {"s": _add(s, one), "t": _add(t, one)}
    j_face = {"s'": _add(s2, one), "t'": _add(t2, one)}
    k_twist = _add(_mul(s, t), s, t, one)
    j_twist = _add(_mul(s2, t2), s2, t2, one)
    zero = frozenset()
    rows = [
        ("swap-J-first", _add(j_twist, _subst(e2, swap_j)), e1, False),
        ("swap-J-second", _add(j_twist, _subst(e1, swap_j)), e2, False),
        ("swap-K-first", _add(e1, _mul(_add(s, s2), _add(t, t2))), _add(k_twist, _subst(e2, swap_k)), False),
        ("swap-K-second", _add(e2, _mul(_add(s, t2), _add(t, s2))), _add(k_twist, _subst(e1, swap_k)), False),
        ("face-K-first", _add(e1, _subst(e1, k_face), s2, one), zero, restricted),
        ("face-J-first", _add(e1, _subst(e1, j_face), t, one), zero, restricted),
        ("face-K-second", _add(e2, _subst(e2, k_face), t2, one), zero, restricted),
        ("face-J-second", _add(e2, _subst(e2, j_face), t, t2, s2), zero, restricted),
    ]
    note = "holds only when the other factor has even degree" if restricted else ""
    return [
        ParityIdentity(f"join-{name}{suffix}", _VARS, lhs, rhs, restricted=r, note=note if r else "")
        for name, lhs, rhs, r in rows
    ]


def _identities() -> list[ParityIdentity]:
    one = _ONE
    s, t, s2, t2 = S, T, S2, T2
    n = _add(s, t)
    return [
        ParityIdentity(
            "join-1a", ("s", "t", "s'", "t'"),
            _add(_mul(s2, t2), t2, s2, one, _mul(_add(s, one), _add(t2, one)), _mul(t2, s2)),
            _add(_mul(s, _add(t2, one)), s2),
        ),
        ParityIdentity(
            "join-1b", ("s", "t", "s'", "t'"),
            _add(_mul(_add(s, one), _add(s2, one)), _mul(s2, t2)),
            _add(_mul(s, _add(s2, one)), t2, _mul(s2, t2), s2, t2, one),
        ),
        ParityIdentity(
            "join-2a", ("s", "t", "s'", "t'"),
            _add(_mul(s, _add(t2, one)), s2, _mul(_add(s, s2), _add(t, t2))),
            _add(_mul(s, t), s, t, one, _mul(_add(t, one), _add(s2, one)), _mul(s2, t2)),
        ),
        ParityIdentity(
            "join-2b", ("s", "t", "s'", "t'"),
            _add(_mul(_add(s, one), _add(s2, one)), _mul(s2, t2), _mul(_add(s, t2), _add(t, s2))),
            _add(_mul(s, t), s, t, one, _mul(t, _add(t2, one)), s2),
        ),
        ParityIdentity(
            "cone-1", ("s", "t"),
            _add(s, _mul(s, _add(t, one)), n),
            _add(_mul(s, t), n),
        ),
        ParityIdentity(
            "cone-2", ("s", "t"),
            _add(_mul(_add(s, one), t), one, n),
            _add(_mul(s, t), s, one),
            note="degree n = dim σ + dim τ included on the left",
        ),
        ParityIdentity(
            "cone-2-as-printed", ("s", "t"),
            _add(_mul(_add(s, one), t), one),
            _add(_mul(s, t), s, one),
            misprint=True,
            note="fails when dim σ and dim τ differ in parity; the degree term is missing",
        ),
        *_join_identities(JOIN_FIRST.monomials, JOIN_SECOND.monomials),
        *_join_identities(_J1, _J2, "-as-printed", restricted=True),
    ]


def verify_sign_identities() -> dict:
    """Evaluate every parity identity on all 0/1 assignments of its variables.

    ``passed`` covers the identities the constructions rely on; entries
    flagged ``misprint`` or ``restricted`` are reported but may fail.
    """
    rows = []
    passed = True
    for ident in _identities():
        results = []
        for bits in product((0, 1), repeat=len(ident.variables)):
            vals = dict(zip(ident.variables, bits))
            results.append({"tuple": list(bits), "holds": ident.holds(vals)})
        ok = all(r["holds"] for r in results)
        if not (ident.misprint or ident.restricted):
            passed = passed and ok
        rows.append({
            "name": ident.name,
            "variables": list(ident.variables),
            "all_hold": ok,
            "misprint": ident.misprint,
            "restricted": ident.restricted,
            "failures": [r["tuple"] for r in results if not r["holds"]],
            "tuples": results,
            "note": ident.note,
        })
    formulas = [{"name": f.name, "exponent": str(f)} for f in SIGN_FORMULAS]
    return {"passed": passed, "identities": rows, "formulas": formulas}


__all__ = [
    "ConstructionError", "SignFormula", "SIGN_FORMULAS", "cone_cycle", "join_cycle",
    "cone_lifts", "join_lifts", "cone_mod2", "join_mod2", "verify_sign_identities", "ChainError",
]
