"""Acceptance battery: one test per criterion, each printing a PASS/FAIL line.

The suites run at their default budgets, which are the acceptance budgets.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

from fractions import Fraction as Q

import pytest

from rklat.falgebra import AtomSpace, bounded_idem_seq, stabilization_index
from rklat.operators import ConeMap, NotPHomogeneous, extend_cone_map
from rklat.pomodule import ModuleSpace
from rklat.verify import SUITES, SuiteParams, run_suite

SEED = 20240601
_reports = {}


def suite(name: str, **overrides):
    """Default-budget report for ``name``, shared across criteria."""
    key = (name, tuple(sorted(overrides.items())))
    if key not in _reports:
        _reports[key] = run_suite(name, SuiteParams(**overrides), seed=SEED)
    return _reports[key]


@pytest.fixture
def verdict(capsys):
    def emit(number: int, title: str, ok: bool, detail: str = ""):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({detail})" if detail else ""))
        assert ok, detail
    return emit


def _summary(rep) -> str:
    return f"{rep.trials} trials, {rep.elapsed_ms / 1000:.1f} s"


def test_criterion_01_rk_oracle_equivalence(verdict):
    rep = suite("rk-oracle")
    assert rep.trials >= 1000
    ok = rep.passed and rep.elapsed_ms < 60_000
    verdict(1, "closed-form lattice operations equal vertex enumeration", ok,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_02_riesz_identities(verdict):
    rep = suite("rk-lattice-identities")
    assert rep.trials >= 1000
    verdict(2, "Riesz identities hold exactly", rep.passed, _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_03_extension_round_trip(verdict):
    rep = suite("extension")
    assert rep.trials >= 500
    verdict(3, "extension of a restriction reproduces the operator", rep.passed,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_04_swap_rejected(verdict):
    X = ModuleSpace(AtomSpace(2), 1)
    witnesses = []
    for seed in range(3):
        with pytest.raises(NotPHomogeneous) as info:
            extend_cone_map(ConeMap.swap(X), seed=seed)
        witnesses.append(info.value.witness)
    same = all(w == witnesses[0] for w in witnesses)
    idem = witnesses[0]["idem"]
    rep = suite("extension", cone_map="swap", trials=5)
    ok = same and not idem.is_zero() and not idem.is_one() and rep.expected_failure and not rep.passed
    verdict(4, "the swap map is rejected with a fixed witness idempotent", ok, f"witness idempotent {[int(b) for b in idem.mask]}")


def test_criterion_05_freudenthal(verdict):
    rep = suite("freudenthal")
    assert rep.trials >= 200
    verdict(5, "dyadic approximations stay within 2^-N and are monotone for N <= 12", rep.passed,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_06_interval_scaling(verdict):
    rep = suite("interval-lemmas")
    verdict(6, "[0, p x] = p [0, x] on grids, all idempotents, n <= 3, m <= 2, subdiv <= 4", rep.passed,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_07_rdp(verdict):
    rep = suite("rdp")
    assert rep.trials >= 500
    verdict(7, "Riesz decomposition on grids, both inclusions", rep.passed,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_08_support_calculus(verdict):
    rep = suite("support-calculus")
    assert rep.trials >= 1000
    verdict(8, "supports match enumeration and disjointness tests agree", rep.passed,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_09_bounded_idempotent_sequence(verdict):
    # the support-calculus suite walks the sequence for every random element
    rep = suite("support-calculus")
    A = AtomSpace(3)
    a = A.felem([Q(7, 2), -2, 0])
    seq = [bounded_idem_seq(a, n) for n in range(1, 6)]
    direct = (
        stabilization_index(a) == 4
        and [[int(b) for b in p.mask] for p in seq] == [[0, 0, 1], [0, 0, 1], [0, 1, 1], [1, 1, 1], [1, 1, 1]]
    )
    verdict(9, "bounded idempotent sequence is increasing, bounded and stabilizes at floor(max|a|) + 1",
            rep.passed and direct, _summary(rep))


def test_criterion_10_directed_sup(verdict):
    rep = suite("directed-sup")
    assert rep.trials >= 200
    verdict(10, "directed suprema are pointwise maxima and least among sampled bounds", rep.passed,
            _summary(rep) if rep.passed else str(rep.counterexample))


def test_criterion_11_determinism(verdict):
    mismatched = []
    for name in SUITES:
        a = run_suite(name, SuiteParams(trials=5), seed=SEED)
        b = run_suite(name, SuiteParams(trials=5), seed=SEED)
        if a.to_dict(with_elapsed=False) != b.to_dict(with_elapsed=False):
            mismatched.append(name)
    full = run_suite("falgebra-axioms", seed=SEED)
    if full.to_dict(with_elapsed=False) != suite("falgebra-axioms").to_dict(with_elapsed=False):
        mismatched.append("falgebra-axioms (default budget)")
    swap = run_suite("extension", SuiteParams(cone_map="swap", trials=5), seed=SEED)
    if swap.to_dict(with_elapsed=False) != suite("extension", cone_map="swap", trials=5).to_dict(with_elapsed=False):
        mismatched.append("extension --cone-map swap")
    verdict(11, "reruns with the same seed give identical reports", not mismatched,
            ", ".join(mismatched) or f"{len(SUITES)} suites rerun")
