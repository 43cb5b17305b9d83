import json

import pytest

from holedecomp import cli, families, formats

C6 = "p 6 6\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 6\ne 6 1\n"


@pytest.fixture
def c6(tmp_path):
    path = tmp_path / "c6.txt"
    path.write_text(C6)
    return str(path)


def run_json(capsys, argv):
    code = cli.run(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith(("{", "[")) else out)


def test_check_member_and_non_member(capsys, c6, tmp_path):
    code, out = run_json(capsys, ["check", c6])
    assert code == 0 and out["member"] is True
    pet = tmp_path / "pet.json"
    pet.write_text(formats.emit_json_graph(formats.GraphDocument(families.petersen())))
    code, out = run_json(capsys, ["check", str(pet)])
    assert code == 1 and out["member"] is False and out["witness_kind"] == "theta"


def test_separator_certificate_round_trip(capsys, c6, tmp_path):
    code, doc = run_json(capsys, ["separator", c6, "--c", "1/2", "--d", "3"])
    assert code == 0 and len(doc["certificate"]["separator"]) == 2
    cert = tmp_path / "cert.json"
    cert.write_text(json.dumps(doc))
    code, out = run_json(capsys, ["verify", str(cert)])
    assert code == 0 and out["ok"] is True


def test_separator_modes(capsys, c6, tmp_path):
    code, doc = run_json(capsys, ["separator", c6, "--tight", "--no-shortcircuit"])
    assert code == 0 and doc["tight_d"] >= 1
    # uniform weights on six vertices are too heavy for the parameter calculator at degree 2
    assert run_json(capsys, ["separator", c6, "--paper-params"]) == (
        1, {"error": "w^max must be below 1/12", "wmax_ceiling": "1/12"})
    c13 = tmp_path / "c13.txt"
    c13.write_text(formats.emit_edge_list(formats.GraphDocument(families.cycle(13))))
    code, doc = run_json(capsys, ["separator", str(c13), "--paper-params"])
    assert code == 0 and doc["meta"]["params"]["d"] == 2 * 49 + 4 * 19 * 2 - 4


def test_oracle_commands(capsys, c6):
    assert run_json(capsys, ["oracle", "treewidth", c6]) == (0, {"treewidth": 2})
    code, out = run_json(capsys, ["oracle", "sep-star", c6])
    assert code == 0 and out["sep_star"] == 2
    code, out = run_json(capsys, ["oracle", "balanced-separator", c6, "--d", "3"])
    assert code == 0 and len(out["separator"]) == 2


def test_treedec_and_twojoin(capsys, c6, tmp_path):
    code, out = run_json(capsys, ["treedec", c6])
    assert code == 0 and out["width"] == 2
    gadget = tmp_path / "gadget.txt"
    gadget.write_text(formats.emit_edge_list(formats.GraphDocument(families.two_gadget())))
    code, out = run_json(capsys, ["twojoin", str(gadget)])
    assert code == 0 and out["split"] is not None


def test_gen_is_deterministic(capsys):
    argv = ["gen", "--delta", "3", "--n", "12", "--seed", "4", "--format", "json"]
    first = run_json(capsys, argv)
    assert first == run_json(capsys, argv)
    code, doc = first
    assert code == 0 and doc["n"] == 12


def test_params_text(capsys):
    code, out = run_json(capsys, ["params", "--delta", "3"])
    assert code == 0
    assert "539" in out and "134" in out


def test_exit_codes(capsys, c6, tmp_path):
    assert cli.run(["check", str(tmp_path / "missing.txt")]) == 64
    bad = tmp_path / "bad.txt"
    bad.write_text("p 3 5\ne 1 2\n")
    assert cli.run(["check", str(bad)]) == 64
    assert cli.run(["check", c6, "--nonsense"]) == 64
    assert cli.run(["--cap", "5", "check", c6]) == 2
    capsys.readouterr()


def test_config_file_and_environment(capsys, c6, tmp_path, monkeypatch):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# tiny budget\ncap = 5\n")
    assert cli.run(["--config", str(cfg), "check", c6]) == 2
    assert cli.run(["--config", str(cfg), "--cap", "0", "check", c6]) == 0
    monkeypatch.setenv("HOLEDECOMP_CAP", "5")
    assert cli.run(["check", c6]) == 2
    capsys.readouterr()
