from fractions import Fraction as Q

import pytest
from hypothesis import given

from rklat import generate as gen
from rklat.falgebra import AtomSpace, DimensionError
from rklat.operators import (
    ConeMap,
    DirectedFamily,
    NotAdditive,
    NotDirectedError,
    NotPHomogeneous,
    NotPositive,
    Operator,
    apply,
    directed_sup,
    dual_abs,
    dual_inf,
    dual_sup,
    extend_cone_map,
    is_order_bounded,
    is_positive,
    op_leq,
    rk_abs,
    rk_inf,
    rk_neg,
    rk_pos,
    rk_sup,
    validate_cone_map,
)
from rklat.pomodule import ConeTransform, ModuleSpace, OrderInterval, interval_vertices
from rklat.verify.oracle import oracle_pointwise_sup, oracle_rk_sup

from conftest import instance_from_seed, seeds

A1, A2, A3 = AtomSpace(1), AtomSpace(2), AtomSpace(3)


def row_functional(X, *entries):
    K = ModuleSpace(X.space, 1)
    return Operator(X, K, tuple(((tuple(Q(e) for e in entries)),) for _ in range(X.n_atoms)))


# -- evaluation and positivity ----------------------------------------------------


def test_identity_and_zero():
    X = ModuleSpace(A2, 2)
    x = X.element([[1, -2], ["1/3", 0]])
    assert apply(Operator.identity(X), x) == x
    assert apply(Operator.zero(X, X), x).is_zero()


def test_domain_mismatch():
    X, Y = ModuleSpace(A2, 2), ModuleSpace(A2, 1)
    with pytest.raises(DimensionError):
        apply(Operator.identity(X), Y.zero())


@given(seeds())
def test_operator_commutes_with_idempotents(seed):
    rng, X, Y = instance_from_seed(seed)
    T = gen.operator(rng, X, Y)
    x, y = gen.element(rng, X), gen.element(rng, X)
    lam = gen.felem(rng, X.space)
    for p in X.space.idempotents():
        assert apply(T, p * x) == p * apply(T, x)
    assert apply(T, lam * x + y) == lam * apply(T, x) + apply(T, y)


def test_positivity_examples():
    X = ModuleSpace(A1, 2)
    assert is_positive(Operator(X, X, ((((1, 2), (0, 3))),)))
    assert not is_positive(Operator(X, X, ((((1, -1), (0, 3))),)))


def test_positivity_monomial_cone_mixed_signs():
    # the domain cone is spanned by (0, 1) and (-1, 0); positive despite a raw -1
    t = ConeTransform(((((0, -1), (1, 0))),))
    X = ModuleSpace(A1, 2, t)
    Y = ModuleSpace(A1, 2)
    T = Operator(X, Y, ((((-1, 0), (0, 1))),))
    assert any(v < 0 for row in T.blocks[0] for v in row)
    assert is_positive(T)
    hull = X.from_cone([[1], [1]])
    assert all(apply(T, v).is_positive() for v in interval_vertices(OrderInterval(X.zero(), hull)))


def test_order_bounded_examples():
    X = ModuleSpace(A2, 2)
    x = X.element([[1, 2], [3, 1]])
    R = Operator.from_cone(X, X, [[[1, 2], [0, 1]], [[1, 0], [2, 2]]])
    ok, w = is_order_bounded(R, OrderInterval(X.zero(), x))
    assert ok and w.lo.is_zero() and w.hi == apply(R, x)
    ok, w = is_order_bounded(Operator.zero(X, X), OrderInterval(X.zero(), x))
    assert w.lo.is_zero() and w.hi.is_zero()


@given(seeds())
def test_order_bounded_witness_contains_vertex_images(seed):
    rng, X, Y = instance_from_seed(seed, max_atoms=2, max_x=2)
    S, R = gen.operator(rng, X, Y, positive=True), gen.operator(rng, X, Y, positive=True)
    T = S - R
    lo = gen.element(rng, X)
    iv = OrderInterval(lo, lo + gen.element(rng, X, positive=True))
    ok, w = is_order_bounded(T, iv, audit_vertices=True)
    assert ok and all(apply(T, v) in w for v in interval_vertices(iv))


# -- Riesz-Kantorovich ---------------------------------------------------------


def test_rk_sup_scalar_example():
    X = ModuleSpace(A1, 1)
    S, T = Operator(X, X, ((((3,),)),)), Operator(X, X, ((((5,),)),))
    assert rk_sup(S, T) == T
    x = X.element([[1]])
    assert oracle_rk_sup(S, T, x) == X.element([[5]])


def test_rk_row_example():
    X = ModuleSpace(A1, 2)
    S = row_functional(X, 1, -2)
    x = X.element([[1], [1]])
    assert apply(rk_pos(S), x).coords == ((1,),)
    assert rk_abs(S) == row_functional(X, 1, 2)
    assert apply(rk_abs(S), x).coords == ((3,),)
    # the corner (1, -1) of [-x, x] attains it
    assert apply(S, X.element([[1], [-1]])).coords == ((3,),)


@given(seeds())
def test_riesz_identities(seed):
    rng, X, Y = instance_from_seed(seed)
    S, T, R = (gen.operator(rng, X, Y) for _ in range(3))
    assert rk_sup(S, T) + rk_inf(S, T) == S + T
    assert rk_inf(rk_pos(S), rk_neg(S)) == Operator.zero(X, Y)
    assert rk_abs(S) == rk_sup(S, -S)
    assert S == rk_pos(S) - rk_neg(S)
    assert rk_sup(S, T) == rk_sup(T, S)
    assert rk_sup(rk_sup(S, T), R) == rk_sup(S, rk_sup(T, R))
    assert is_positive(rk_pos(S)) and is_positive(rk_neg(S)) and is_positive(rk_abs(S))
    assert op_leq(S, rk_sup(S, T)) and op_leq(T, rk_sup(S, T))


@given(seeds())
def test_closed_form_matches_oracle(seed):
    rng, X, Y = instance_from_seed(seed)
    S, T = gen.operator(rng, X, Y), gen.operator(rng, X, Y)
    x = gen.element(rng, X, positive=True)
    assert apply(rk_sup(S, T), x) == oracle_rk_sup(S, T, x)


def test_operator_scalar_action():
    X = ModuleSpace(A2, 1)
    T = Operator.identity(X)
    p = A2.idem([1, 0])
    assert (p * T).blocks == ((((1,),)), (((0,),)))
    assert 2 * T == T + T


# -- extension ---------------------------------------------------------------


@given(seeds())
def test_extension_of_restriction_is_identity(seed):
    rng, X, Y = instance_from_seed(seed)
    T = gen.operator(rng, X, Y, positive=True)
    assert extend_cone_map(ConeMap.restriction(T), seed=seed % 1000) == T


def test_swap_is_rejected_with_witness():
    X = ModuleSpace(A2, 1)
    with pytest.raises(NotPHomogeneous) as info:
        extend_cone_map(ConeMap.swap(X))
    assert info.value.witness["idem"] == A2.idem([1, 0])
    assert info.value.witness["x"] == X.element([[1, 0]])


def test_swap_rejection_is_deterministic():
    X = ModuleSpace(A2, 1)
    seen = set()
    for seed in range(5):
        with pytest.raises(NotPHomogeneous) as info:
            extend_cone_map(ConeMap.swap(X), seed=seed)
        seen.add((info.value.witness["idem"], info.value.witness["x"]))
    assert len(seen) == 1


def test_idempotent_cut_extension():
    X = ModuleSpace(A3, 2)
    p = A3.idem([1, 0, 1])
    T = extend_cone_map(ConeMap.idempotent_cut(X, p))
    assert T == p.as_felem() * Operator.identity(X)


def test_non_positive_map_rejected():
    X = ModuleSpace(A1, 1)
    f = ConeMap(X, X, rule=lambda x: -x, name="negate")
    with pytest.raises(NotPositive):
        validate_cone_map(f)


def test_non_additive_map_rejected():
    X = ModuleSpace(A1, 1)
    f = ConeMap(X, X, rule=lambda x: X.element([[v * v for v in x.coords[0]]]), name="square")
    with pytest.raises(NotAdditive):
        extend_cone_map(f)


def test_tabulated_cone_map():
    X = ModuleSpace(A2, 1)
    T = Operator(X, X, ((((2,),)), (((3,),))))
    pts = X.generators() + [X.element([[1, 1]]), X.element([[2, 1]])]
    f = ConeMap.tabulated(X, X, [(x, apply(T, x)) for x in pts])
    assert extend_cone_map(f) == T


def test_cone_map_domain():
    X = ModuleSpace(A1, 1)
    with pytest.raises(ValueError):
        ConeMap.swap(X)(X.element([[-1]]))


# -- directed families -------------------------------------------------------


def test_directed_sup_examples():
    X = ModuleSpace(A2, 2)
    T = Operator.from_cone(X, X, [[[1, 0], [1, 2]], [[0, 1], [3, 1]]])
    assert directed_sup(DirectedFamily((T,))) == T
    assert directed_sup(DirectedFamily((T, 2 * T, 3 * T))) == 3 * T


def test_not_directed():
    X = ModuleSpace(A1, 2)
    a = Operator(X, X, ((((1, 0), (0, 0))),))
    b = Operator(X, X, ((((0, 0), (0, 1))),))
    with pytest.raises(NotDirectedError) as info:
        directed_sup(DirectedFamily((a, b)))
    assert info.value.pair == (0, 1)


@given(seeds())
def test_directed_sup_pointwise(seed):
    rng, X, Y = instance_from_seed(seed)
    base = [gen.operator(rng, X, Y, positive=True) for _ in range(3)]
    top = rk_sup(rk_sup(base[0], base[1]), base[2])
    fam = DirectedFamily(tuple(base) + (top,))
    s = directed_sup(fam)
    for _ in range(5):
        x = gen.element(rng, X, positive=True)
        assert apply(s, x) == oracle_pointwise_sup(fam.members, x)
    ub = top + gen.operator(rng, X, Y, positive=True)
    assert op_leq(s, ub)


# -- the dual ------------------------------------------------------------------


def test_dual_examples():
    X = ModuleSpace(A1, 2)
    e1, e2 = row_functional(X, 1, 0), row_functional(X, 0, 1)
    s = dual_sup(e1, e2)
    assert s == row_functional(X, 1, 1)
    x = X.element([[1], [1]])
    assert apply(s, x).coords == ((2,),)
    assert oracle_rk_sup(e1, e2, x).coords == ((2,),)
    phi = row_functional(X, 2, 3)
    assert op_leq(dual_inf(phi, -phi), Operator.zero(X, phi.codomain))
    assert dual_abs(phi) == phi


def test_dual_requires_functionals():
    X = ModuleSpace(A1, 2)
    with pytest.raises(ValueError):
        dual_sup(Operator.identity(X), Operator.identity(X))
