import json

import pytest

from eqobstruct import cli, fixtures, io
from eqobstruct.delprod import ChainError, ZMINUS, TwistedChain, deleted_product
from eqobstruct.geometry import GenericityError
from eqobstruct.obstruction import check_equivariant_obstructor


def run(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = cli.main([*args, "--out", str(out)])
    data = json.loads(out.read_text()) if out.exists() else None
    return code, data


def test_chain_json_rewrites_non_representatives():
    f = fixtures.five_points()
    dp = f.cycle.dp
    data = {"degree": 0, "system": "Z-", "terms": [
        {"sigma": ["1"], "tau": ["A"], "coeff": 1},
        {"sigma": ["A"], "tau": ["1"], "coeff": 2},
    ]}
    x = io.chain_from_json(dp, data)
    assert x == TwistedChain.from_lifts(dp, 0, ZMINUS, {dp.cell(["A"], ["1"]): 1})
    assert io.chain_from_json(dp, io.chain_to_json(f.cycle)) == f.cycle
    with pytest.raises(ChainError):
        io.chain_from_json(dp, {"degree": 0})
    with pytest.raises(ChainError):
        io.chain_from_json(dp, {"degree": 0, "system": "Z", "terms": [{"sigma": ["A"]}]})


def test_cochain_json_shape():
    from eqobstruct.obstruction import vk_cochain

    K = fixtures.get("K5").complex
    vk = vk_cochain(K, 2, seed=3).cochain
    data = io.cochain_to_json(vk)
    assert data["degree"] == 2 and data["system"] == "Z"
    assert len(data["values"]) == len(vk.values)


def test_certificate_round_trip_and_tamper():
    f = fixtures.five_points()
    cert = check_equivariant_obstructor(f.complex, f.action, f.cycle)
    data = io.certificate_to_json(cert)
    back = io.certificate_from_json(json.loads(io.dumps(data)))
    assert back.subset == cert.subset and back.level == "chain" and back.replay()
    data["subset"] = ["e"]
    with pytest.raises(ValueError):
        io.certificate_from_json(data)


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": [1, 2]}) == io.dumps({"a": [1, 2], "b": 1})
    assert io.dumps({}).endswith("\n")


def test_five_point_certificate_via_cli(tmp_path):
    code, data = run(["check-eqobstructor", "--fixture", "five_points"], tmp_path)
    assert code == cli.EXIT_OK
    cert = data["result"]["certificate"]
    assert cert["subset"] == ["e", "h^2"] and cert["level"] == "chain"
    assert data["provenance"]["seed"] == "0"
    assert data["provenance"]["version"]
    assert "fixture" in data["provenance"]["inputs"]
    path = tmp_path / "cert.json"
    path.write_text(io.dumps(cert))
    code, data = run(["check-eqobstructor", "--certificate", str(path)], tmp_path, "replay.json")
    assert code == cli.EXIT_OK and data["result"]["replay"] is True
    assert set(data["provenance"]["inputs"]) == {"certificate"}
    cert["level"] = "homology"
    path.write_text(io.dumps(cert))
    assert cli.main(["check-eqobstructor", "--certificate", str(path)]) == cli.EXIT_INPUT


def test_linking_and_homology_via_cli(tmp_path):
    code, data = run(["linking", "--fixture", "hopf"], tmp_path)
    assert code == 0 and abs(data["result"]["linking_number"]) == 1
    code, data = run(["homology", "--fixture", "triangle_boundary", "--system", "Z", "--degree", "1"], tmp_path)
    assert code == 0
    (group,) = data["result"]["groups"]
    assert group["free_rank"] == 1 and group["torsion"] == []


def test_negative_results_exit_one(tmp_path):
    f = fixtures.five_points()
    cycle = tmp_path / "doubled.json"
    cycle.write_text(io.dumps(io.chain_to_json(f.cycle.scale(2))))
    code, data = run(["check-cycle", "--fixture", "five_points", "--cycle", str(cycle)], tmp_path)
    assert code == cli.EXIT_NEGATIVE and data["result"]["verdict"] == "fail"
    code, data = run(["check-eqobstructor", "--fixture", "five_points", "--cycle", str(cycle)], tmp_path)
    assert code == cli.EXIT_NEGATIVE and data["result"]["found"] is False
    square = tmp_path / "square.json"
    square.write_text(io.dumps({"vertices": ["v0", "v1", "v2", "v3"],
                                "facets": [["v0", "v1"], ["v1", "v2"], ["v2", "v3"], ["v0", "v3"]]}))
    bowtie = tmp_path / "bowtie.json"
    bowtie.write_text(io.dumps({"v0": ["0", "0"], "v1": ["1", "1"], "v2": ["1", "0"], "v3": ["0", "1"]}))
    code, data = run(["validate", "--complex", str(square), "--coords", str(bowtie)], tmp_path)
    assert code == cli.EXIT_NEGATIVE
    code, _ = run(["wu", "--complex", str(square), "--coords", str(bowtie)], tmp_path)
    assert code == cli.EXIT_NEGATIVE


def test_input_errors_exit_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert cli.main(["delprod", "--complex", str(bad)]) == cli.EXIT_INPUT
    assert cli.main(["delprod", "--complex", str(tmp_path / "missing.json")]) == cli.EXIT_INPUT
    assert cli.main(["delprod"]) == cli.EXIT_INPUT
    assert cli.main(["delprod", "--fixture", "nope"]) == cli.EXIT_INPUT
    assert cli.main(["wu", "--fixture", "K5"]) == cli.EXIT_INPUT
    assert cli.main(["vk", "--fixture", "K5"]) == cli.EXIT_INPUT
    err = capsys.readouterr().err
    assert "not valid JSON" in err and "unknown fixture" in err


def test_genericity_exhaustion_exits_three(tmp_path, monkeypatch):
    def fail(*args, **kwargs):
        raise GenericityError("no generic position found")

    monkeypatch.setattr(cli, "generic_coords", fail)
    assert cli.main(["vk", "--fixture", "K5", "--degree", "2"]) == cli.EXIT_GENERICITY


def test_fixtures_out_dir_round_trip(tmp_path):
    code, data = run(["fixtures", "--out-dir", str(tmp_path / "corpus")], tmp_path)
    assert code == 0 and set(data["result"]["fixtures"]) == set(fixtures.corpus())
    root = tmp_path / "corpus"
    args = ["--complex", str(root / "five_points.complex.json"),
            "--action", str(root / "five_points.action.json"),
            "--cycle", str(root / "five_points.cycle.json")]
    code, data = run(["check-eqobstructor", *args], tmp_path)
    assert code == 0 and data["result"]["certificate"]["subset"] == ["e", "h^2"]
    assert set(data["provenance"]["inputs"]) == {"complex", "action", "cycle"}
    code, data = run(["linking", "--complex", str(root / "hopf.complex.json"),
                      "--coords", str(root / "hopf.coords.json")], tmp_path)
    assert code == 0 and abs(data["result"]["linking_number"]) == 1


def test_cone_and_join_via_cli(tmp_path):
    code, data = run(["cone", "--fixture", "five_points"], tmp_path)
    assert code == 0 and data["result"]["cycle"]["degree"] == 1
    assert data["result"]["cycle"]["provenance"] == {"construction": "cone"}
    code, data = run(["join", "--fixture", "five_points", "--fixture2", "five_points"], tmp_path)
    assert code == 0
    assert data["result"]["cycle"]["degree"] == 2 and data["result"]["cycle"]["system"] == "Z-"
    assert {"fixture", "fixture2"} <= set(data["provenance"]["inputs"])
    K = fixtures.double_five_points().complex
    joined = io.chain_from_json(deleted_product(K), data["result"]["cycle"])
    assert joined == fixtures.double_five_points().cycle


def test_vk_evaluation_and_seed_recorded(tmp_path):
    code, data = run(["vk", "--fixture", "five_points", "--seed", "7"], tmp_path)
    assert code == 0 and data["provenance"]["seed"] == "7"
    assert data["result"]["evaluation"]["mod2"] == 1
    code, data = run(["wu", "--fixture", "star_in_plane", "--almost"], tmp_path)
    assert code == 0 and data["result"]["evaluation"]["mod2"] == 1


def test_verify_signs_via_cli(tmp_path):
    code, data = run(["verify-signs"], tmp_path)
    assert code == 0 and data["result"]["passed"] is True


def test_repeated_runs_are_byte_identical(tmp_path):
    args = ["vk", "--fixture", "K33", "--degree", "2", "--seed", "11"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert cli.main([*args, "--out", str(a)]) == 0
    assert cli.main([*args, "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert cli.main(["vk", "--fixture", "K33", "--degree", "2", "--seed", "12", "--out", str(b)]) == 0
    assert a.read_bytes() != b.read_bytes()
