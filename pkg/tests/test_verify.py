import json
from fractions import Fraction as Q

import pytest
from hypothesis import given

from rklat import generate as gen
from rklat.falgebra import AtomSpace
from rklat.operators import Operator, rk_abs, rk_inf, rk_neg, rk_pos, rk_sup
from rklat.pomodule import ModuleSpace, interval_vertices, OrderInterval
from rklat.serialize import dump_value
from rklat.verify import (
    SUITES,
    DownwardChain,
    OracleConfig,
    Report,
    SuiteParams,
    UnknownSuiteError,
    check_arch_combination,
    check_archimedean,
    oracle_rk_abs,
    oracle_rk_all,
    oracle_rk_inf,
    oracle_rk_neg,
    oracle_rk_pos,
    oracle_rk_sup,
    replay_archimedean,
    run_suite,
)
from rklat.verify import suites
from rklat.verify.archimedean import (
    check_chain,
    idem_chain,
    idempotent_chains,
    product_chain,
    scalar_chain,
    split_at,
)
from rklat.verify.oracle import oracle_box_points
from rklat.verify.report import FIELD_ORDER

from conftest import instance_from_seed, seeds

A1, A2, A3 = AtomSpace(1), AtomSpace(2), AtomSpace(3)


# -- oracles -------------------------------------------------------------------


@given(seeds())
def test_every_oracle_matches_its_closed_form(seed):
    rng, X, Y = instance_from_seed(seed, max_atoms=3, max_x=3, max_y=2)
    S, T = gen.operator(rng, X, Y), gen.operator(rng, X, Y)
    x = gen.element(rng, X, positive=True)
    assert oracle_rk_sup(S, T, x) == rk_sup(S, T)(x)
    assert oracle_rk_inf(S, T, x) == rk_inf(S, T)(x)
    assert oracle_rk_pos(S, x) == rk_pos(S)(x)
    assert oracle_rk_neg(S, x) == rk_neg(S)(x)
    assert oracle_rk_abs(S, x) == rk_abs(S)(x)


def test_batched_oracle_agrees_with_single_calls():
    rng, X, Y = instance_from_seed(7, max_atoms=3, max_x=3, max_y=3)
    S, T = gen.operator(rng, X, Y), gen.operator(rng, X, Y)
    xs = [gen.element(rng, X, positive=True) for _ in range(4)]
    for x, res in zip(xs, oracle_rk_all(S, T, xs)):
        assert set(res) == {"sup", "inf", "pos", "neg", "abs"}
        assert res["sup"] == oracle_rk_sup(S, T, x)
        assert res["abs"] == oracle_rk_abs(S, x)


def test_oracle_grid_without_vertices():
    # a grid with even subdivisions contains the vertices, so the result is unchanged
    X = ModuleSpace(A2, 2)
    S = Operator.from_cone(X, X, [[[1, -2], [0, 1]], [[-1, 0], [3, -1]]])
    x = X.element([[1, 2], ["1/2", 1]])
    cfg = OracleConfig(subdiv=2, use_vertices=False)
    assert oracle_rk_abs(S, x, cfg) == rk_abs(S)(x)


def test_oracle_box_contains_vertices():
    X = ModuleSpace(A1, 2)
    x = X.element([[1], [2]])
    verts = interval_vertices(OrderInterval(X.zero(), x))
    assert oracle_box_points(x, OracleConfig(subdiv=2)) == verts
    grid = oracle_box_points(x, OracleConfig(subdiv=2, use_vertices=False))
    assert verts <= grid and len(grid) == 9


def test_oracle_requires_positive_x():
    X = ModuleSpace(A1, 1)
    S = Operator.identity(X)
    with pytest.raises(ValueError):
        oracle_rk_sup(S, S, X.element([[-1]]))


def test_oracle_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(subdiv=0)


# -- reports -------------------------------------------------------------------


def test_report_invariant():
    with pytest.raises(ValueError):
        Report("rdp", 1, 0, passed=True, counterexample={"x": 1})
    with pytest.raises(ValueError):
        Report("rdp", 1, 0, passed=False)


def test_report_json_field_order_and_round_trip():
    r = Report("rdp", 3, 9, passed=False, counterexample={"check": "c"}, elapsed_ms=1.5, warnings=["w"])
    d = json.loads(r.to_json())
    assert tuple(d) == FIELD_ORDER
    assert Report.from_dict(d) == r
    assert "elapsed_ms" not in r.to_dict(with_elapsed=False)
    assert r.to_text().splitlines()[0] == "FAIL rdp"


def test_report_ok():
    r = Report("extension", 1, 0, passed=False, expected_failure=True, counterexample={})
    assert r.ok and r.to_text().startswith("EXPECTED-FAIL")


# -- archimedean checks -----------------------------------------------------------


def test_chain_validation():
    with pytest.raises(ValueError):
        DownwardChain((A1.one(), A1.one()), A1.one())
    with pytest.raises(ValueError):
        DownwardChain((A1.const(-1),), A1.const(-1))
    with pytest.raises(ValueError):
        DownwardChain((A1.one(),), A1.zero())
    c = scalar_chain(A1, 3)
    assert c.term(2) == A1.const(Q(1, 3)) and c.term(5) == A1.const(Q(1, 6))


def test_idempotent_chain_counts():
    assert len(idempotent_chains(A3, to_zero=True)) == 13
    assert len(idempotent_chains(A3, to_zero=False)) == 26


def test_check_chain_finds_far_tail_index():
    X = ModuleSpace(A1, 1)
    x = X.element([[1]])
    cand = X.element([[Q(1, 1000)]])
    assert check_chain(scalar_chain(A1, 3), x, cand, "full") is None


def test_genuine_violation_replays():
    # a chain stopping at a nonzero idempotent leaves a positive lower bound
    X = ModuleSpace(A2, 1)
    x = X.element([[1, 1]])
    chain = idem_chain([A2.idem([1, 1]), A2.idem([1, 0])])
    cand = X.element([[1, 0]])
    found = check_chain(chain, x, cand, "full")
    assert found is not None
    assert replay_archimedean(dump_value(found))
    # and the witness index refutes a candidate that is too big
    assert check_chain(chain, x, X.element([[2, 0]]), "full") is None


def test_product_chain_reaches_zero_or_has_tail():
    lam = A2.felem([2, 1])
    c = product_chain(lam, [A2.idem([1, 1]), A2.idem([1, 0]), A2.idem([0, 0])], hold=2)
    assert c.elements[-1].is_zero() and not c.harmonic_tail
    c = product_chain(lam, [A2.idem([1, 1])], hold=1)
    assert c.harmonic_tail


def test_split_at_example():
    low, high = split_at(A2.felem([3, "1/2"]), 1)
    assert low == A2.felem([1, "1/2"]) and high == A2.felem([2, 0])


@pytest.mark.parametrize("flavor", ["R", "P", "L"])
@pytest.mark.parametrize("mode", ["full", "almost"])
def test_archimedean_flavors(flavor, mode):
    X = ModuleSpace(A2, 2)
    rep = check_archimedean(X, flavor, mode, trials=10, seed=3)
    assert rep.passed and rep.suite == "archimedean"


def test_archimedean_bad_args():
    X = ModuleSpace(A1, 1)
    with pytest.raises(ValueError):
        check_archimedean(X, "Q")
    with pytest.raises(ValueError):
        check_archimedean(X, "R", "sometimes")


def test_arch_combination():
    assert check_arch_combination(ModuleSpace(A3, 1), trials=6, seed=1).passed


# -- suite runner --------------------------------------------------------------


SMALL = SuiteParams(trials=3)


@pytest.mark.parametrize("name", SUITES)
def test_each_suite_runs_small(name):
    rep = run_suite(name, SMALL, seed=5)
    assert rep.passed, rep.counterexample
    assert rep.trials == 3 and rep.suite == name


def test_runner_is_deterministic():
    a = run_suite("rk-oracle", SuiteParams(trials=5), seed=11)
    b = run_suite("rk-oracle", SuiteParams(trials=5), seed=11)
    assert a.to_dict(with_elapsed=False) == b.to_dict(with_elapsed=False)


def test_unknown_suite():
    with pytest.raises(UnknownSuiteError):
        run_suite("nope")


def test_empty_budget_warns():
    rep = run_suite("rdp", SuiteParams(trials=0))
    assert rep.passed and rep.warnings


def test_swap_campaign_is_expected_failure():
    rep = run_suite("extension", SuiteParams(trials=3, cone_map="swap"))
    assert not rep.passed and rep.expected_failure and rep.ok
    w = rep.counterexample["witness"]
    assert w["idem"] == {"idem": [1, 0]}
    assert w["x"]["coords"] == ["1", "0"]


def test_failures_are_shrunk(monkeypatch):
    def fragile(ctx):
        suites._require(ctx.shape.n_atoms < 2, "forced", n=ctx.shape.n_atoms)

    monkeypatch.setitem(suites._TRIALS, "rdp", fragile)
    rep = run_suite("rdp", SuiteParams(trials=2, n_atoms=8, dim_x=4, denom_cap=8))
    assert not rep.passed and not rep.ok
    ce = rep.counterexample
    assert ce["trial"] == 0 and ce["check"] == "forced"
    assert ce["shape"]["n_atoms"] == 2 and ce["shape"]["dim_x"] == 1
