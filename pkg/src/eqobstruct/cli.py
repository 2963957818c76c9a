"""Command-line front end: ``eqobstruct <subcommand> [options]``.

Structured JSON goes to stdout (or ``--out``), a short human summary to
stderr. Exit codes: 0 success, 1 negative mathematical result, 2 input
error, 3 genericity retries exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from . import complex as cx
from . import fixtures as fx
from . import group as grp
from . import io
from .constructions import ConstructionError, cone_cycle, join_cycle, verify_sign_identities
from .delprod import ChainError, deleted_product, normalize_system
from .geometry import (
    DEFAULT_RETRIES,
    GenericityError,
    coords_from_json,
    coords_to_json,
    generic_coords,
    validate_almost_embedding,
    validate_embedding,
)
from .homology import HomologyError, evaluate_pairing, homology, reduce_mod2
from .obstruction import (
    EmbeddingError,
    ObstructionError,
    ObstructorCertificate,
    check_equivariant_obstructor,
    check_evaluation_cycle,
    linking_number,
    replay_certificate,
    vk_cochain,
    wu_cochain,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_GENERICITY = 0, 1, 2, 3


class InputError(Exception):
    pass


class Inputs:
    """Complex, action, cycle and coordinates from a fixture and/or files."""

    def __init__(self, args, suffix: str = "", require_complex: bool = True):
        self.hashes: dict[str, str] = {}
        self.complex = self.action = self.cycle = self.coords = self.dp = None
        get = lambda name: getattr(args, name + suffix, None)  # noqa: E731
        fixture = None
        if get("fixture"):
            try:
                fixture = fx.get(get("fixture"))
            except KeyError as exc:
                raise InputError(str(exc.args[0])) from None
            self.hashes[f"fixture{suffix}"] = io.sha256_text(
                io.dumps(fixture_to_json(fixture))
            )
        self.complex = fixture.complex if fixture else None
        if get("complex"):
            self.complex = cx.from_json(self._load(get("complex"), "complex" + suffix))
        if self.complex is None:
            if not require_complex:
                return
            raise InputError("a complex is required (--complex or --fixture)")
        self.action = fixture.action if fixture else None
        if get("action"):
            self.action = grp.action_from_json(self.complex, self._load(get("action"), "action" + suffix))
        self.dp = deleted_product(self.complex)
        self.cycle = fixture.cycle if fixture else None
        if self.cycle is not None and self.cycle.dp.complex == self.complex:
            self.dp = self.cycle.dp
        elif self.cycle is not None:
            self.cycle = None
        if get("cycle"):
            self.cycle = io.chain_from_json(self.dp, self._load(get("cycle"), "cycle" + suffix))
        if self.action is not None and self.action.complex != self.complex:
            self.action = None
        self.coords = fixture.coords if fixture else None
        if self.coords is not None and self.coords.complex != self.complex:
            self.coords = None
        if get("coords"):
            try:
                self.coords = coords_from_json(self.complex, self._load(get("coords"), "coords" + suffix))
            except (ValueError, ZeroDivisionError) as exc:
                raise InputError(f"bad coordinates: {exc}") from None

    def _load(self, path: str, key: str):
        try:
            self.hashes[key] = io.sha256_file(path)
            return io.load_json(path)
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        except json.JSONDecodeError as exc:
            raise InputError(f"{path} is not valid JSON: {exc}") from None


def fixture_to_json(f: fx.Fixture) -> dict:
    out = {"name": f.name, "description": f.description, "complex": cx.to_json(f.complex)}
    if f.action is not None:
        out["action"] = grp.action_to_json(f.action)
    if f.cycle is not None:
        out["cycle"] = io.chain_to_json(f.cycle)
    if f.coords is not None:
        out["coords"] = coords_to_json(f.coords)
    return out


def _need(value, what: str):
    if value is None:
        raise InputError(f"{what} is required for this subcommand")
    return value


def _seeds(seed: str) -> tuple:
    # the second vk map uses the next integer seed, or a derived string seed
    try:
        k = int(seed)
        return (k, k + 1)
    except ValueError:
        return (seed, f"{seed}+1")


def _action_or_trivial(inp: Inputs):
    return inp.action if inp.action is not None else grp.trivial_action(inp.complex)


# Subcommands return (exit code, result dict, summary line).

def cmd_delprod(args, inp: Inputs):
    dp = inp.dp
    census = [
        {"degree": d, "cells": v["cells"], "orbits": v["orbits"]}
        for d, v in dp.census().items()
    ]
    free = all(c != dp.involution(c) for cs in dp.cells.values() for c in cs)
    total = sum(c["cells"] for c in census)
    return EXIT_OK, {"census": census, "involution_free": free}, f"{total} cells in {len(census)} degrees"


def cmd_homology(args, inp: Inputs):
    system = normalize_system(args.system or "Z")
    degrees = [args.degree] if args.degree is not None else list(range(inp.dp.top + 1))
    groups = []
    for d in degrees:
        H = homology(inp.dp, d, system)
        groups.append({
            "degree": d,
            "system": system,
            "free_rank": H.free_rank,
            "torsion": H.torsion,
            "summary": H.summary(),
            "basis": [io.chain_to_json(b) for b in H.basis],
        })
    line = ", ".join(f"H_{g['degree']} = {g['summary']}" for g in groups) or "empty"
    return EXIT_OK, {"groups": groups}, line


def _evaluations(phi, cycle):
    if cycle is None or cycle.degree != phi.degree:
        return None
    out = {"mod2": evaluate_pairing(reduce_mod2(phi), reduce_mod2(cycle))}
    if phi.system == cycle.system:
        out["integral"] = evaluate_pairing(phi, cycle)
    return out


def cmd_vk(args, inp: Inputs):
    n = args.degree if args.degree is not None else (inp.cycle.degree if inp.cycle else None)
    n = _need(n, "--degree (or a cycle)")
    config = inp.coords if inp.coords is not None and inp.coords.d == n else None
    if config is None:
        config = generic_coords(inp.complex, n, _seeds(args.seed)[0], args.max_retries)
    vk = vk_cochain(inp.complex, n, config, dp=inp.dp)
    result = {
        "cochain": io.cochain_to_json(vk.cochain),
        "coordinates": coords_to_json(config),
        "evaluation": _evaluations(vk.cochain, inp.cycle),
    }
    return EXIT_OK, result, f"vk^{n} has {len(vk.cochain.values)} nonzero values"


def cmd_wu(args, inp: Inputs):
    config = _need(inp.coords, "--coords")
    if args.ambient_dim is not None and args.ambient_dim != config.d:
        raise InputError(f"coordinates live in R^{config.d}, not R^{args.ambient_dim}")
    try:
        wu = wu_cochain(inp.complex, config, args.almost, _seeds(args.seed)[0], args.max_retries, dp=inp.dp)
    except EmbeddingError as exc:
        return EXIT_NEGATIVE, {"validation": exc.violation.describe(inp.complex)}, str(exc)
    result = {
        "validation": "ok",
        "cochain": io.cochain_to_json(wu.cochain),
        "projection_attempt": wu.provenance["projection_attempt"],
        "evaluation": _evaluations(wu.cochain, inp.cycle),
    }
    return EXIT_OK, result, f"Wu^{wu.degree} has {len(wu.cochain.values)} nonzero values"


def cmd_validate(args, inp: Inputs):
    config = _need(inp.coords, "--coords")
    res = validate_almost_embedding(config) if args.almost else validate_embedding(config)
    if res.ok:
        return EXIT_OK, {"validation": "ok"}, "ok"
    return EXIT_NEGATIVE, {"validation": res.violation.describe(inp.complex)}, res.violation.reason


def cmd_check_cycle(args, inp: Inputs):
    cycle = _need(inp.cycle, "--cycle")
    seeds = _seeds(args.seed)
    report = check_evaluation_cycle(inp.complex, cycle, args.degree, seeds, args.max_retries)
    code = EXIT_OK if report.verdict else EXIT_NEGATIVE
    return code, report.to_json(), "evaluation cycle" if report.verdict else "not an evaluation cycle"


def cmd_check_eqobstructor(args, inp: Inputs):
    seeds = _seeds(args.seed)
    if args.certificate:
        try:
            cert = io.certificate_from_json(inp._load(args.certificate, "certificate"))
        except KeyError as exc:
            raise InputError(f"cannot load certificate: {exc}") from None
        ok = replay_certificate(cert, seeds)
        return (EXIT_OK if ok else EXIT_NEGATIVE), {"replay": ok}, "replay ok" if ok else "replay failed"
    cycle = _need(inp.cycle, "--cycle")
    G = _action_or_trivial(inp)
    out = check_equivariant_obstructor(inp.complex, G, cycle, args.degree, seeds=seeds,
                                       max_retries=args.max_retries)
    if isinstance(out, ObstructorCertificate):
        return EXIT_OK, {"certificate": io.certificate_to_json(out)}, (
            f"A = {{{', '.join(out.subset)}}} at {out.level} level: {out.statement}"
        )
    result = {"found": False, "reason": out.reason, "subsets_tried": out.subsets_tried}
    if out.report is not None:
        result["evaluation_report"] = out.report.to_json()
    return EXIT_NEGATIVE, result, out.reason


def cmd_cone(args, inp: Inputs):
    C, inc = cx.cone(inp.complex)
    result = {"complex": cx.to_json(C)}
    if inp.action is not None:
        result["action"] = grp.action_to_json(grp.extend_action(inp.action, inc))
    if inp.cycle is not None:
        out = cone_cycle(inp.cycle, (C, inc))
        result["cycle"] = io.chain_to_json(out, {"construction": "cone"})
    return EXIT_OK, result, f"cone with {len(C.vertices)} vertices"


def cmd_join(args, inp: Inputs):
    other = Inputs(args, "2")
    KJ, inc_k, inc_j = cx.join_inclusions(inp.complex, other.complex)
    result = {"complex": cx.to_json(KJ)}
    if inp.action is not None and other.action is not None:
        G = grp.product_action(inp.action, other.action, inc_k, inc_j)
    elif inp.action is not None:
        G = grp.extend_action(inp.action, inc_k)
    elif other.action is not None:
        G = grp.extend_action(other.action, inc_j)
    else:
        G = None
    if G is not None:
        result["action"] = grp.action_to_json(G)
    if inp.cycle is not None and other.cycle is not None:
        out = join_cycle(inp.cycle, other.cycle, (KJ, inc_k, inc_j))
        result["cycle"] = io.chain_to_json(out, {"construction": "join"})
    inp.hashes.update(other.hashes)
    return EXIT_OK, result, f"join with {len(KJ.vertices)} vertices"


def cmd_linking(args, inp: Inputs):
    config = _need(inp.coords, "--coords")
    try:
        lk = linking_number(inp.complex, config, _seeds(args.seed)[0], args.max_retries)
    except EmbeddingError as exc:
        return EXIT_NEGATIVE, {"validation": exc.violation.describe(inp.complex)}, str(exc)
    return EXIT_OK, {"linking_number": lk}, f"linking number {lk}"


def cmd_verify_signs(args, inp):
    report = verify_sign_identities()
    return (EXIT_OK if report["passed"] else EXIT_NEGATIVE), report, (
        "all sign identities hold" if report["passed"] else "sign identity failure"
    )


def cmd_fixtures(args, inp):
    corpus = {name: fixture_to_json(f) for name, f in sorted(fx.corpus().items())}
    if args.out_dir:
        root = Path(args.out_dir)
        root.mkdir(parents=True, exist_ok=True)
        for name, data in corpus.items():
            for part in ("complex", "action", "cycle", "coords"):
                if part in data:
                    (root / f"{name}.{part}.json").write_text(io.dumps(data[part]), encoding="utf-8")
    return EXIT_OK, {"fixtures": corpus}, f"{len(corpus)} fixtures"


COMMANDS = {
    "delprod": (cmd_delprod, "cell census of the deleted product"),
    "homology": (cmd_homology, "twisted homology groups"),
    "vk": (cmd_vk, "van Kampen cocycle from a generic map"),
    "wu": (cmd_wu, "Wu cocycle of an (almost) embedding"),
    "validate": (cmd_validate, "check an (almost) embedding"),
    "check-cycle": (cmd_check_cycle, "evaluation-cycle report"),
    "check-eqobstructor": (cmd_check_eqobstructor, "equivariant obstructor certificate search"),
    "cone": (cmd_cone, "cone on a complex, action and cycle"),
    "join": (cmd_join, "join of two complexes with actions and cycles"),
    "linking": (cmd_linking, "linking number of two embedded circles"),
    "verify-signs": (cmd_verify_signs, "exhaustive check of the sign identities"),
    "fixtures": (cmd_fixtures, "emit the built-in corpus"),
}

NO_INPUT = {"verify-signs", "fixtures"}


def _add_inputs(p: argparse.ArgumentParser, suffix: str = ""):
    p.add_argument(f"--fixture{suffix}", help="built-in fixture name")
    p.add_argument(f"--complex{suffix}", help="complex JSON file")
    p.add_argument(f"--action{suffix}", help="action JSON file")
    p.add_argument(f"--cycle{suffix}", help="chain JSON file")
    p.add_argument(f"--coords{suffix}", help="coordinates JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eqobstruct", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        if name not in NO_INPUT:
            _add_inputs(p)
        if name == "join":
            _add_inputs(p, "2")
        if name == "check-eqobstructor":
            p.add_argument("--certificate", help="replay a certificate file instead of searching")
        if name == "fixtures":
            p.add_argument("--out-dir", help="also write one file per fixture part")
        p.add_argument("--seed", default="0", help="seed for generic coordinates and projections")
        p.add_argument("--system", choices=["Z", "Z-", "Z2"], help="coefficient system")
        p.add_argument("--degree", type=int, help="degree")
        p.add_argument("--ambient-dim", type=int, help="expected ambient dimension of --coords")
        p.add_argument("--almost", action="store_true", help="only require an almost embedding")
        p.add_argument("--max-retries", type=int, default=DEFAULT_RETRIES)
        p.add_argument("--out", help="write JSON here instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    func, _ = COMMANDS[args.command]
    try:
        replay = getattr(args, "certificate", None) is not None
        inp = None if args.command in NO_INPUT else Inputs(args, require_complex=not replay)
        code, result, summary = func(args, inp)
    except GenericityError as exc:
        print(f"eqobstruct: genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except (InputError, cx.ComplexError, grp.ActionError, ChainError, HomologyError,
            ObstructionError, ConstructionError, ValueError) as exc:
        print(f"eqobstruct: {exc}", file=sys.stderr)
        return EXIT_INPUT
    provenance = {
        "subcommand": args.command,
        "seed": str(args.seed),
        "version": __version__,
        "inputs": dict(sorted(inp.hashes.items())) if inp else {},
        "options": {
            k: getattr(args, k) for k in ("system", "degree", "ambient_dim", "almost", "max_retries")
        },
    }
    text = io.dumps({"provenance": provenance, "result": result})
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(f"{args.command}: {summary}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
