import json
from fractions import Fraction as Q

import pytest
from hypothesis import given

from rklat import generate as gen
from rklat.cli import build_instance
from rklat.falgebra import AtomSpace
from rklat.operators import Operator, extend_cone_map
from rklat.pomodule import ModuleSpace
from rklat.serialize import (
    ParseError,
    dump_rational,
    dump_value,
    dumps,
    instance_to_dict,
    loads_instance,
    parse_rational,
    parse_value,
)

from conftest import instance_from_seed, seeds


def test_rational_strings():
    assert parse_rational("3/4") == Q(3, 4)
    assert parse_rational("-7") == Q(-7)
    assert dump_rational(Q(4, 2)) == "2"
    assert dump_rational(Q(-1, 3)) == "-1/3"


@pytest.mark.parametrize("bad", ["3/0", "2/4", "1.5", "1e3", " 1", "", 3, None, "1/-2"])
def test_bad_rationals(bad):
    with pytest.raises(ParseError):
        parse_rational(bad)


@given(seeds())
def test_value_round_trip(seed):
    rng, X, Y = instance_from_seed(seed)
    vals = {
        "a": gen.felem(rng, X.space),
        "p": gen.idem(rng, X.space),
        "x": gen.element(rng, X),
        "T": gen.operator(rng, X, Y),
        "q": Q(-5, 7),
    }
    doc = json.loads(json.dumps(dump_value(vals)))
    back = parse_value(doc)
    for key in ("a", "p", "x", "T"):
        assert back[key] == vals[key]
    assert parse_rational(back["q"]) == vals["q"]


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_instance_round_trip(seed):
    inst = build_instance(2, 2, 3, 8, seed)
    text = dumps(instance_to_dict(inst))
    again = loads_instance(text)
    assert instance_to_dict(again) == instance_to_dict(inst)
    assert again.operators["S"] == inst.operators["S"]
    assert again.elements["x"] == inst.elements["x"]
    assert extend_cone_map(again.cone_map("restrict-R")) == inst.operators["R"]


def _doc():
    return instance_to_dict(build_instance(2, 2, 1, 8, 0))


def _error(doc) -> ParseError:
    with pytest.raises(ParseError) as info:
        loads_instance(json.dumps(doc))
    return info.value


def test_zero_denominator_location():
    doc = _doc()
    doc["operators"][0]["blocks"][1][1] = "3/0"
    assert _error(doc).location == "$.operators[0].blocks[1][1]"


def test_float_rejected():
    with pytest.raises(ParseError) as info:
        loads_instance('{"version": 1, "atom_space": {"n_atoms": 1.5}}')
    assert "floating point" in str(info.value)


def test_unknown_module_reference():
    doc = _doc()
    doc["operators"][0]["domain"] = "Z"
    assert _error(doc).location == "$.operators[0].domain"


def test_duplicate_ids():
    doc = _doc()
    doc["operators"][1]["id"] = doc["operators"][0]["id"]
    assert "duplicate" in str(_error(doc))


def test_wrong_block_shape():
    doc = _doc()
    doc["operators"][0]["blocks"][0] = doc["operators"][0]["blocks"][0][:-1]
    assert _error(doc).location == "$.operators[0].blocks[0]"


def test_bad_version_and_json():
    doc = _doc()
    doc["version"] = 99
    assert _error(doc).location == "$.version"
    with pytest.raises(ParseError):
        loads_instance("{not json")


def test_bad_transform():
    doc = _doc()
    doc["modules"][0]["cone_transform"] = [{"permutation": [0, 0], "diagonal": ["1", "1"]}] * 2
    assert _error(doc).location == "$.modules[0].cone_transform[0].permutation"
    doc["modules"][0]["cone_transform"] = [{"permutation": [0, 1], "diagonal": ["1", "-1"]}] * 2
    assert _error(doc).location == "$.modules[0].cone_transform[0].diagonal"


def test_bad_idempotent_mask():
    doc = _doc()
    for e in doc["elements"]:
        if e["kind"] == "idem":
            e["mask"] = [1, 2]
    assert _error(doc).location.endswith(".mask[1]")


def test_general_transform_round_trip():
    A = AtomSpace(1)
    doc = {
        "version": 1,
        "atom_space": {"n_atoms": 1},
        "modules": [{"id": "X", "m_dim": 2, "cone_transform": [{"matrix": ["1", "0", "1/2", "1"]}]}],
        "operators": [{"id": "I", "domain": "X", "codomain": "X", "blocks": [["1", "0", "0", "1"]]}],
    }
    inst = loads_instance(json.dumps(doc))
    X = inst.modules["X"]
    assert X.transform is not None and X != ModuleSpace(A, 2)
    assert inst.operators["I"] == Operator.identity(X)
    assert instance_to_dict(inst)["modules"][0]["cone_transform"] == doc["modules"][0]["cone_transform"]
