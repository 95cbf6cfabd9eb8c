import io
import json
import re

import pytest

from rklat.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from rklat.serialize import loads_instance


@pytest.fixture
def inst_path(tmp_path):
    path = tmp_path / "inst.json"
    assert main(["gen", "--atoms", "2", "--dim-x", "2", "--dim-y", "2", "--seed", "3", "--out", str(path)]) == EXIT_OK
    return path


@pytest.fixture(autouse=True)
def no_env_seed(monkeypatch):
    monkeypatch.delenv("RKLAT_SEED", raising=False)


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_is_deterministic(capsys):
    _, a, _ = run(capsys, "gen", "--seed", "5")
    _, b, _ = run(capsys, "gen", "--seed", "5")
    _, c, _ = run(capsys, "gen", "--seed", "6")
    assert a == b != c
    inst = loads_instance(a)
    assert set(inst.operators) == {"S", "T", "R", "F"}


def test_seed_env_overrides_flag(capsys, monkeypatch):
    _, a, _ = run(capsys, "gen", "--seed", "9")
    monkeypatch.setenv("RKLAT_SEED", "9")
    _, b, _ = run(capsys, "gen", "--seed", "1")
    assert a == b
    monkeypatch.setenv("RKLAT_SEED", "nine")
    assert run(capsys, "gen")[0] == EXIT_USAGE


def test_check_random_passes(capsys):
    code, out, _ = run(capsys, "check", "--suite", "rk-oracle", "--trials", "3")
    assert code == EXIT_OK and out.startswith("PASS rk-oracle")


def test_check_json_report(capsys):
    code, out, _ = run(capsys, "check", "--suite", "dual", "--trials", "2", "--seed", "4", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK and doc["passed"] and doc["seed"] == 4 and doc["trials"] == 2


def test_check_on_instance(capsys, inst_path):
    code, out, _ = run(capsys, "check", inst_path, "--suite", "rk-lattice-identities", "--trials", "4")
    assert code == EXIT_OK


def test_check_instance_from_stdin(capsys, inst_path, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(inst_path.read_text()))
    code, _, _ = run(capsys, "check", "-", "--suite", "rk-oracle", "--trials", "2")
    assert code == EXIT_OK


def test_swap_is_expected_failure(capsys, inst_path):
    code, out, _ = run(capsys, "check", inst_path, "--suite", "extension", "--cone-map", "swap",
                       "--trials", "2", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert not doc["passed"] and doc["expected_failure"]
    assert doc["counterexample"]["witness"]["idem"] == {"idem": [1, 0]}


def test_empty_budget(capsys):
    code, out, _ = run(capsys, "check", "--suite", "rdp", "--trials", "0")
    assert code == EXIT_OK and "warning" in out


def test_compute_abs_is_entrywise(capsys, inst_path):
    inst = loads_instance(inst_path.read_text())
    code, out, _ = run(capsys, "compute", inst_path, "abs", "S")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["domain"] == "X" and doc["codomain"] == "Y"
    S = inst.operators["S"]
    if S.domain.transform is None and S.codomain.transform is None:
        assert doc["blocks"] == [[str(abs(v)) for row in b for v in row] for b in S.blocks]


def test_compute_text_and_elements(capsys, inst_path):
    assert run(capsys, "compute", inst_path, "sup", "S", "T", "--format", "text")[1].startswith("atom 0:")
    code, out, _ = run(capsys, "compute", inst_path, "freudenthal", "a", "--N", "3")
    assert code == EXIT_OK and len(json.loads(out)) == 2
    code, out, _ = run(capsys, "compute", inst_path, "support", "x")
    assert code == EXIT_OK and set(json.loads(out)) <= {0, 1}
    assert run(capsys, "compute", inst_path, "cmp-idem", "a", "b")[0] == EXIT_OK


def test_compute_extend(capsys, inst_path):
    code, out, _ = run(capsys, "compute", inst_path, "extend", "cut")
    assert code == EXIT_OK and json.loads(out)["domain"] == "X"
    code, out, _ = run(capsys, "compute", inst_path, "extend", "swap")
    doc = json.loads(out)
    assert code == EXIT_FAIL and doc["error"] == "NotPHomogeneous"


@pytest.mark.parametrize("argv", [
    ["compute", "{inst}", "sup", "S", "Q"],
    ["compute", "{inst}", "sup", "S"],
    ["compute", "{inst}", "extend", "nope"],
    ["compute", "{inst}", "freudenthal", "a", "--N", "-1"],
    ["check", "--suite", "nope"],
    ["check", "--suite", "rdp", "--trials", "-1"],
    ["check", "{inst}", "--suite", "extension", "--cone-map", "nope"],
    ["gen", "--atoms", "0"],
    ["gen", "--out", "/nonexistent/dir/file.json"],
    ["check", "/nonexistent.json", "--suite", "rdp"],
    [],
])
def test_usage_errors(capsys, inst_path, argv):
    code, _, _ = run(capsys, *[a.replace("{inst}", str(inst_path)) for a in argv])
    assert code == EXIT_USAGE


def test_parse_error_reports_location(capsys, inst_path, tmp_path):
    doc = json.loads(inst_path.read_text())
    doc["operators"][0]["blocks"][1][3] = "3/0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, _, err = run(capsys, "compute", bad, "abs", "S")
    assert code == EXIT_USAGE and "$.operators[0].blocks[1][3]" in err


def test_float_input_rejected(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"version": 1, "atom_space": {"n_atoms": 2}, "elements": [{"id": "a", "kind": "felem", "values": [0.5, 1]}]}')
    code, _, err = run(capsys, "compute", bad, "support", "a")
    assert code == EXIT_USAGE and "floating point" in err


def test_help_exits_zero(capsys):
    assert main(["--help"]) == EXIT_OK


def _handmade(tmp_path):
    doc = {
        "version": 1,
        "atom_space": {"n_atoms": 1},
        "modules": [{"id": "X", "m_dim": 2}, {"id": "K", "m_dim": 1}],
        "operators": [{"id": "S", "domain": "X", "codomain": "K", "blocks": [["1", "-2"]]}],
        "elements": [
            {"id": "zero", "kind": "felem", "values": ["0"]},
            {"id": "b", "kind": "felem", "values": ["3/10"]},
        ],
    }
    path = tmp_path / "hand.json"
    path.write_text(json.dumps(doc))
    return path


def test_compute_examples(capsys, tmp_path):
    path = _handmade(tmp_path)
    code, out, _ = run(capsys, "compute", path, "abs", "S")
    assert code == EXIT_OK and json.loads(out)["blocks"] == [["1", "2"]]
    code, out, _ = run(capsys, "compute", path, "support", "zero")
    assert code == EXIT_OK and json.loads(out) == [0]
    code, out, _ = run(capsys, "compute", path, "freudenthal", "b", "--N", "2")
    assert code == EXIT_OK and json.loads(out) == ["1/4"]


def test_generated_denominators_respect_cap(capsys):
    _, out, _ = run(capsys, "gen", "--atoms", "3", "--dim-x", "3", "--dim-y", "2", "--denom-cap", "16", "--seed", "2")
    strings = []

    def walk(v):
        if isinstance(v, str) and re.fullmatch(r"-?\d+(/\d+)?", v):
            strings.append(v)
        elif isinstance(v, list):
            for w in v:
                walk(w)
        elif isinstance(v, dict):
            for w in v.values():
                walk(w)

    walk(json.loads(out))
    dens = [int(s.split("/")[1]) if "/" in s else 1 for s in strings]
    assert dens and max(dens) <= 16
