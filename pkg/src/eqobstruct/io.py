"""JSON formats shared by the CLI and the library."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any, Mapping

from . import complex as cx
from . import group as grp
from .delprod import (
    ChainError,
    DeletedProduct,
    TwistedChain,
    TwistedCochain,
    deleted_product,
    normalize_system,
)
from .obstruction import ObstructorCertificate


def dumps(obj: Any) -> str:
    """Canonical serialization: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def sha256_file(path: str | Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def load_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def chain_to_json(x: TwistedChain, provenance: Mapping | None = None) -> dict:
    K = x.dp.complex
    out = {
        "degree": x.degree,
        "system": x.system,
        "terms": [
            {"sigma": K.names(s), "tau": K.names(t), "coeff": a}
            for (s, t), a in x.terms.items()
        ],
    }
    if provenance:
        out["provenance"] = dict(provenance)
    return out


def chain_from_json(dp: DeletedProduct, data: Mapping) -> TwistedChain:
    try:
        degree = int(data["degree"])
        system = normalize_system(data["system"])
        terms = data["terms"]
    except (KeyError, TypeError, ValueError):
        raise ChainError("chain file needs 'degree', 'system' and 'terms'") from None
    lifts: dict = {}
    for term in terms:
        try:
            cell = dp.cell(term["sigma"], term["tau"])
            coeff = int(term["coeff"])
        except (KeyError, TypeError):
            raise ChainError("each term needs 'sigma', 'tau' and 'coeff'") from None
        lifts[cell] = lifts.get(cell, 0) + coeff
    return TwistedChain.from_lifts(dp, degree, system, lifts)


def cochain_to_json(phi: TwistedCochain) -> dict:
    K = phi.dp.complex
    return {
        "degree": phi.degree,
        "system": phi.system,
        "values": [
            {"sigma": K.names(s), "tau": K.names(t), "value": a}
            for (s, t), a in phi.values.items()
        ],
    }


def certificate_to_json(cert: ObstructorCertificate) -> dict:
    body = {
        "complex": cx.to_json(cert.complex),
        "action": grp.action_to_json(cert.action),
        "cycle": chain_to_json(cert.cycle),
        "subset": list(cert.subset),
        "level": cert.level,
        "degree": cert.degree,
        "statement": cert.statement,
    }
    body["transcript_sha256"] = sha256_text(dumps(body))
    return body


def certificate_from_json(data: Mapping) -> ObstructorCertificate:
    body = {k: v for k, v in data.items() if k != "transcript_sha256"}
    if "transcript_sha256" in data and sha256_text(dumps(body)) != data["transcript_sha256"]:
        raise ValueError("certificate transcript hash does not match its contents")
    K = cx.from_json(data["complex"])
    G = grp.action_from_json(K, data["action"])
    phi = chain_from_json(deleted_product(K), data["cycle"])
    return ObstructorCertificate(K, G, phi, list(data["subset"]), data["level"], int(data["degree"]))
