"""Named property batteries.

Every trial draws its inputs from ``trial_rng(seed, index, salt)``, so a
trial is reproducible on its own and a campaign does not depend on the
order trials run in.  On the first failing trial the runner shrinks the
shape parameters (atoms, dimensions, denominator cap) by halving while the
same trial keeps failing, and reports the smallest failing inputs.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional

from .. import falgebra as fa
from .. import generate as gen
from .. import pomodule as pm
from ..falgebra import AtomSpace, InvariantViolation
from ..operators import (
    ConeMap,
    DirectedFamily,
    NotPHomogeneous,
    ExtensionError,
    Operator,
    apply,
    directed_sup,
    dual_abs,
    dual_inf,
    dual_neg,
    dual_pos,
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
)
from ..pomodule import ModuleSpace, OrderInterval
from ..serialize import Instance, dump_value
from .archimedean import check_arch_combination
from .oracle import OracleConfig, oracle_pointwise_sup, oracle_rk_all, oracle_rk_sup, oracle_support
from .report import Report

SUITES = (
    "falgebra-axioms",
    "support-calculus",
    "freudenthal",
    "interval-lemmas",
    "rdp",
    "rk-oracle",
    "rk-lattice-identities",
    "extension",
    "directed-sup",
    "archimedean",
    "dual",
)


class UnknownSuiteError(KeyError):
    pass


@dataclass(frozen=True)
class SuiteParams:
    """Campaign knobs; ``None`` means the suite's own default."""

    trials: Optional[int] = None
    n_atoms: Optional[int] = None
    dim_x: Optional[int] = None
    dim_y: Optional[int] = None
    denom_cap: Optional[int] = None
    subdiv: Optional[int] = None
    points: Optional[int] = None
    cone_map: Optional[str] = None
    instance: Optional[Instance] = None


@dataclass(frozen=True)
class _Shape:
    n_atoms: int
    dim_x: int
    dim_y: int
    denom_cap: int
    subdiv: int
    points: int

    def halved(self) -> Optional[_Shape]:
        smaller = _Shape(
            max(1, self.n_atoms // 2), max(1, self.dim_x // 2), max(1, self.dim_y // 2),
            max(1, self.denom_cap // 2), self.subdiv, self.points,
        )
        return None if smaller == self else smaller


_DEFAULTS = {
    #                        trials atoms  x  y  denom subdiv points
    "falgebra-axioms":       (1000, 4, 1, 1, 16, 4, 1),
    "support-calculus":      (1000, 4, 3, 1, 16, 4, 1),
    "freudenthal":           (200, 4, 1, 1, 16, 4, 13),
    "interval-lemmas":       (48, 3, 2, 1, 4, 4, 1),
    "rdp":                   (500, 2, 2, 1, 4, 2, 1),
    "rk-oracle":             (1000, 4, 4, 4, 16, 4, 10),
    "rk-lattice-identities": (1000, 4, 4, 4, 16, 4, 4),
    "extension":             (500, 4, 4, 4, 16, 4, 8),
    "directed-sup":          (200, 3, 3, 3, 16, 4, 50),
    "archimedean":           (40, 3, 2, 1, 16, 4, 10),
    "dual":                  (500, 4, 4, 1, 16, 4, 5),
}

_SALTS = {name: 100 + i for i, name in enumerate(SUITES)}


class _Fail(Exception):
    def __init__(self, check: str, **inputs):
        super().__init__(check)
        self.check = check
        self.inputs = inputs


def _require(cond: bool, check: str, **inputs):
    if not cond:
        raise _Fail(check, **inputs)


class _Ctx:
    """Per-trial input source: random shapes, or the objects of an instance file."""

    def __init__(self, rng, shape: _Shape, instance: Optional[Instance], index: int):
        self.rng = rng
        self.shape = shape
        self.instance = instance
        self.index = index

    def _dim(self, cap: int) -> int:
        return int(self.rng.integers(1, cap + 1))

    def atom_space(self) -> AtomSpace:
        if self.instance is not None:
            return self.instance.space
        return AtomSpace(self._dim(self.shape.n_atoms))

    def felem(self, space, bound: int = 3, nonneg: bool = False):
        return gen.felem(self.rng, space, self.shape.denom_cap, bound, nonneg)

    def module(self, space, cap: int, kinds=gen.TRANSFORM_KINDS) -> ModuleSpace:
        if self.instance is not None and self.instance.modules:
            mods = list(self.instance.modules.values())
            return mods[int(self.rng.integers(0, len(mods)))]
        return gen.module_space(self.rng, space, self._dim(cap), self.shape.denom_cap, kinds)

    def element(self, X, positive: bool = False, bound: int = 3):
        return gen.element(self.rng, X, self.shape.denom_cap, bound, positive)

    def operator(self, X, Y, positive: bool = False):
        return gen.operator(self.rng, X, Y, self.shape.denom_cap, positive=positive)

    def operator_pair(self) -> tuple[Operator, Operator]:
        """Two operators with common domain and codomain."""
        if self.instance is not None and self.instance.operators:
            ops = list(self.instance.operators.values())
            S = ops[self.index % len(ops)]
            partners = [T for T in ops if T.domain == S.domain and T.codomain == S.codomain]
            T = partners[int(self.rng.integers(0, len(partners)))]
            if T is S and len(partners) == 1:
                T = self.operator(S.domain, S.codomain)
            return S, T
        space = self.atom_space()
        X = self.module(space, self.shape.dim_x)
        Y = self.module(space, self.shape.dim_y)
        return self.operator(X, Y), self.operator(X, Y)


TrialFn = Callable[[_Ctx], None]


# -- f-algebra ---------------------------------------------------------------


def _falgebra_axioms(ctx: _Ctx):
    A = ctx.atom_space()
    a, b, c = ctx.felem(A), ctx.felem(A), ctx.felem(A)
    ins = dict(a=a, b=b, c=c)
    _require((a + b) + c == a + (b + c) and (a * b) * c == a * (b * c), "associativity", **ins)
    _require(a + b == b + a and a * b == b * a, "commutativity", **ins)
    _require(a * (b + c) == a * b + a * c, "distributivity", **ins)
    _require(a == fa.pos_part(a) - fa.neg_part(a), "jordan", **ins)
    _require(abs(a) == fa.sup(a, -a) and abs(a) == fa.pos_part(a) + fa.neg_part(a), "modulus", **ins)
    _require(fa.sup(a, fa.inf(b, c)) == fa.inf(fa.sup(a, b), fa.sup(a, c)), "lattice-distributivity", **ins)
    _require(fa.sup(a, b) + fa.inf(a, b) == a + b, "sup-plus-inf", **ins)
    # f-algebra property on a disjoint positive pair
    p = gen.idem(ctx.rng, A)
    u, v, w = p * abs(a), (~p) * abs(b), abs(c)
    _require(fa.inf(u, v).is_zero() and fa.inf(w * u, v).is_zero(), "f-algebra", u=u, v=v, w=w)
    if fa.inf(abs(a), abs(b)).is_zero():
        _require(fa.inf(abs(c) * abs(a), abs(b)).is_zero(), "f-algebra", **ins)
    # idempotents and bands
    q = gen.idem(ctx.rng, A)
    ins = dict(p=p, q=q, a=a)
    _require(p * a + (~p) * a == a, "band-split", **ins)
    _require((p * p) == p and fa.meet(p, q).as_felem() == p.as_felem() * q.as_felem(), "meet-is-product", **ins)
    _require(fa.join(p, q).as_felem() == p.as_felem() + q.as_felem() - p.as_felem() * q.as_felem(), "join", **ins)
    _require(fa.complement(p).as_felem() == A.one() - p.as_felem(), "complement", **ins)
    _require(fa.join(p, ~p).is_one() and fa.meet(p, ~p).is_zero(), "complemented", **ins)
    _require(~(p & q) == (~p | ~q), "de-morgan", **ins)
    if A.n_atoms <= 4 and ctx.index == 0:
        for r in A.idempotents():
            _require(fa.join(r, fa.complement(r)).is_one(), "complemented", p=r)
    # inverses of strictly positive elements
    d = abs(a) + A.one()
    _require(d * fa.invert_pos(d) == A.one() and fa.invert_pos(d).is_positive(), "invert", d=d)


def _support_calculus(ctx: _Ctx):
    A = ctx.atom_space()
    a = ctx.felem(A, bound=6)
    if ctx.rng.integers(0, 3) == 0:
        a = gen.idem(ctx.rng, A) * a
    s = fa.support(a)
    _require(s == oracle_support(a), "support-oracle", a=a, support=s)
    _require(s * a == a, "support-attained", a=a)
    for r in A.idempotents():
        if r * a == a:
            _require(s <= r, "support-minimal", a=a, rho=r)
    b = ctx.felem(A)
    if ctx.rng.integers(0, 2) == 0:
        b = (~s) * b
    pi = fa.cmp_idem(a, b)
    _require(pi * a <= pi * b, "cmp-idem-order", a=a, b=b)
    _require(pi == oracle_support(fa.pos_part(b - a)), "cmp-idem-support", a=a, b=b)
    try:
        conds = fa.disjointness_conditions(a, b)
        fa.are_disjoint(a, b)
    except InvariantViolation:
        raise _Fail("disjointness-equivalence", a=a, b=b) from None
    _require(len(set(conds)) == 1, "disjointness-equivalence", a=a, b=b)
    # bounded idempotent sequence
    stab = math.floor(max(abs(v) for v in a.values)) + 1
    prev = None
    for n in range(1, stab + 2):
        pn = fa.bounded_idem_seq(a, n)
        _require(A.const(-n) <= pn * a <= A.const(n), "bounded-seq-bounds", a=a, n=n)
        if prev is not None:
            _require(prev <= pn, "bounded-seq-monotone", a=a, n=n)
            if a.is_positive():
                _require(prev * a <= pn * a, "bounded-seq-increasing", a=a, n=n)
        _require(pn.is_one() == (n >= stab), "bounded-seq-stabilizes", a=a, n=n, stab=stab)
        prev = pn
    _require(prev * a == a and fa.stabilization_index(a) == stab, "bounded-seq-limit", a=a)
    # supports of module elements
    X = ctx.module(A, ctx.shape.dim_x)
    x = ctx.element(X)
    if ctx.rng.integers(0, 2) == 0:
        x = gen.idem(ctx.rng, A) * x
    px = pm.support_of_element(x)
    brute = A.idem_from_int((1 << A.n_atoms) - 1)
    for r in A.idempotents():
        if r * x == x:
            brute = brute & r
    _require(px == brute and px * x == x, "module-support", x=x)


# the step decomposition has about max(b) * 2**N terms
_STEP_CHECK_MAX_N = 6


def _freudenthal(ctx: _Ctx):
    A = ctx.atom_space()
    # values in [0, 3] with denominators up to 10**6, so the fine grids matter
    big = 10 ** int(ctx.rng.integers(1, 7))
    qs = [int(ctx.rng.integers(1, big + 1)) for _ in range(A.n_atoms)]
    b = A.felem([Fraction(int(ctx.rng.integers(0, 3 * q + 1)), q) for q in qs])
    if ctx.rng.integers(0, 2) == 0:
        b = ctx.felem(A, nonneg=True)
    prev_lo = prev_hi = None
    for N in range(ctx.shape.points):
        lo, hi = fa.freudenthal_lower(b, N), fa.freudenthal_upper(b, N)
        gap = A.const(Fraction(1, 1 << N))
        ins = dict(beta=b, N=N)
        _require(A.zero() <= b - lo <= gap, "lower-sandwich", **ins)
        _require(A.zero() <= hi - b <= gap, "upper-sandwich", **ins)
        if prev_lo is not None:
            _require(prev_lo <= lo and hi <= prev_hi, "monotone", **ins)
        if N <= _STEP_CHECK_MAX_N:
            total = A.zero()
            for coef, p in fa.freudenthal_steps(b, N):
                _require(coef > 0, "step-coefficient", **ins)
                total = total + coef * p.as_felem()
            _require(total == lo, "step-sum", **ins)
        prev_lo, prev_hi = lo, hi
    # sign-changing input via the Jordan split
    c = ctx.felem(A)
    N = int(ctx.rng.integers(0, ctx.shape.points))
    _require(fa.freudenthal_lower(c, N) <= c <= fa.freudenthal_upper(c, N), "signed-sandwich", c=c, N=N)


# -- modules -----------------------------------------------------------------


_INTERVAL_COMBOS = [(n, m, s) for n in (1, 2, 3) for m in (1, 2) for s in (1, 2, 3, 4)]


def _interval_lemmas(ctx: _Ctx):
    if ctx.instance is None:
        n, m, s = _INTERVAL_COMBOS[ctx.index % len(_INTERVAL_COMBOS)]
        n, m, s = min(n, ctx.shape.n_atoms), min(m, ctx.shape.dim_x), min(s, ctx.shape.subdiv)
        A = AtomSpace(n)
        X = gen.module_space(ctx.rng, A, m, ctx.shape.denom_cap)
    else:
        A = ctx.instance.space
        X = ctx.module(A, 1)
        s = ctx.shape.subdiv
    x = ctx.element(X, positive=True)
    for p in A.idempotents():
        res = pm.scale_interval(p, x, s)
        _require(res.passed, "interval-scaling", p=p, x=x, subdiv=s, witness=res.witness)
    lam = ctx.felem(A, nonneg=True)
    chain = [ctx.element(X, positive=True)]
    for _ in range(int(ctx.rng.integers(0, 4))):
        chain.append(pm.inf(chain[-1], ctx.element(X, positive=True)))
    res = pm.scalar_chain_inf(lam, chain)
    _require(res.passed, "scalar-chain-inf", lam=lam, chain=chain)


def _rdp(ctx: _Ctx):
    A = ctx.atom_space()
    X = ctx.module(A, ctx.shape.dim_x)
    x, y = ctx.element(X, positive=True, bound=2), ctx.element(X, positive=True, bound=2)
    if ctx.rng.integers(0, 5) == 0:
        y = X.zero()
    res = pm.check_rdp(x, y, ctx.shape.subdiv)
    _require(res.passed, "rdp", x=x, y=y, witness=res.witness)
    u, v = ctx.element(X), ctx.element(X)
    s = pm.sup(u, v)
    _require(u <= s and v <= s, "sup-upper-bound", u=u, v=v)
    w = s + ctx.element(X, positive=True)
    _require(pm.sup(u, v) <= w, "sup-least", u=u, v=v, w=w)
    _require(u == pm.pos_part(u) - pm.neg_part(u), "module-jordan", u=u)


# -- operators ---------------------------------------------------------------


def _rk_oracle(ctx: _Ctx):
    S, T = ctx.operator_pair()
    X = S.domain
    xs = [ctx.element(X, positive=True) for _ in range(ctx.shape.points)]
    closed = {"sup": rk_sup(S, T), "inf": rk_inf(S, T), "pos": rk_pos(S), "neg": rk_neg(S), "abs": rk_abs(S)}
    for x, brute in zip(xs, oracle_rk_all(S, T, xs, OracleConfig(use_vertices=True))):
        for key, op in closed.items():
            got = apply(op, x)
            _require(got == brute[key], f"oracle-{key}", S=S, T=T, x=x, closed=got, oracle=brute[key])


def _rk_identities(ctx: _Ctx):
    S, T = ctx.operator_pair()
    R = ctx.operator(S.domain, S.codomain)
    ins = dict(S=S, T=T)
    _require(rk_sup(S, T) + rk_inf(S, T) == S + T, "sup-plus-inf", **ins)
    _require(rk_inf(rk_pos(S), rk_neg(S)) == Operator.zero(S.domain, S.codomain), "pos-meet-neg", **ins)
    _require(rk_abs(S) == rk_sup(S, -S), "abs-is-sup", **ins)
    _require(S == rk_pos(S) - rk_neg(S), "regular-decomposition", **ins)
    _require(rk_abs(S) == rk_pos(S) + rk_neg(S), "abs-is-sum", **ins)
    _require(all(is_positive(op) for op in (rk_pos(S), rk_neg(S), rk_abs(S))), "parts-positive", **ins)
    _require(rk_sup(S, T) == rk_sup(T, S), "sup-commutative", **ins)
    _require(rk_sup(rk_sup(S, T), R) == rk_sup(S, rk_sup(T, R)), "sup-associative", R=R, **ins)
    _require(op_leq(S, rk_sup(S, T)) and op_leq(rk_inf(S, T), T), "sup-bounds", **ins)
    X = S.domain
    lam, x, y = ctx.felem(X.space), ctx.element(X), ctx.element(X)
    _require(apply(S, lam * x + y) == lam * apply(S, x) + apply(S, y), "module-homomorphism", S=S, lam=lam, x=x, y=y)
    for p in (list(X.space.idempotents()) if X.n_atoms <= 3 else [gen.idem(ctx.rng, X.space)]):
        _require(apply(S, p * x) == p * apply(S, x), "idempotent-commutation", S=S, p=p, x=x)
    lo = ctx.element(X)
    hi = lo + ctx.element(X, positive=True)
    ok, witness = is_order_bounded(S, OrderInterval(lo, hi), audit_vertices=X.m_dim * X.n_atoms <= 6)
    _require(ok, "order-bounded", S=S, lo=lo, hi=hi)


def _extension(ctx: _Ctx):
    A = ctx.atom_space()
    X = ctx.module(A, ctx.shape.dim_x)
    Y = ctx.module(A, ctx.shape.dim_y)
    T = ctx.operator(X, Y, positive=True)
    seed = int(ctx.rng.integers(0, 2**31))
    try:
        ext = extend_cone_map(ConeMap.restriction(T), n_samples=ctx.shape.points, seed=seed)
    except ExtensionError as exc:
        raise _Fail(f"rejected-restriction:{type(exc).__name__}", T=T, witness=exc.witness) from None
    _require(ext == T, "round-trip", T=T, extended=ext)
    p = gen.idem(ctx.rng, A)
    cut = extend_cone_map(ConeMap.idempotent_cut(X, p), n_samples=ctx.shape.points, seed=seed)
    direct = p.as_felem() * Operator.identity(X)
    _require(cut == direct, "idempotent-cut", p=p, extended=cut)


def _directed_sup(ctx: _Ctx):
    A = ctx.atom_space()
    X = ctx.module(A, ctx.shape.dim_x)
    Y = ctx.module(A, ctx.shape.dim_y)
    positive = bool(ctx.rng.integers(0, 2))
    base = [ctx.operator(X, Y, positive=positive) for _ in range(3)]
    top = base[0]
    for op in base[1:]:
        top = rk_sup(top, op)
    top = top + ctx.operator(X, Y, positive=True)
    members = base + [top]
    order = ctx.rng.permutation(len(members))
    fam = DirectedFamily(tuple(members[int(i)] for i in order))
    result = directed_sup(fam)
    for _ in range(ctx.shape.points):
        x = ctx.element(X, positive=True)
        got, want = apply(result, x), oracle_pointwise_sup(fam.members, x)
        _require(got == want, "pointwise-sup", family=list(fam.members), x=x, result=got, oracle=want)
    bounds = [top, top + ctx.operator(X, Y, positive=True), rk_abs(top) + rk_abs(base[0])]
    for ub in bounds:
        if all(op_leq(m, ub) for m in fam.members):
            _require(op_leq(result, ub), "least-upper-bound", family=list(fam.members), bound=ub)
    extra = ctx.operator(X, Y, positive=positive)
    bigger = DirectedFamily(fam.members + (extra, rk_sup(top, extra)))
    _require(op_leq(result, directed_sup(bigger)), "monotone", family=list(fam.members), extra=extra)
    chain = DirectedFamily((top, 2 * top, 3 * top)) if is_positive(top) else None
    if chain is not None:
        _require(directed_sup(chain) == 3 * top, "chain-max", T=top)


def _archimedean(ctx: _Ctx):
    A = ctx.atom_space()
    X = ctx.module(A, ctx.shape.dim_x)
    seed = int(ctx.rng.integers(0, 2**31))
    rep = check_arch_combination(X, trials=ctx.shape.points, seed=seed, denom_cap=ctx.shape.denom_cap)
    _require(rep.passed, "archimedean", detail=rep.counterexample)


def _dual(ctx: _Ctx):
    A = ctx.atom_space()
    X = ctx.module(A, ctx.shape.dim_x)
    K = ModuleSpace(A, 1)
    phi, psi = ctx.operator(X, K), ctx.operator(X, K)
    ins = dict(phi=phi, psi=psi)
    _require(dual_sup(phi, psi) + dual_inf(phi, psi) == phi + psi, "dual-sup-plus-inf", **ins)
    _require(dual_abs(phi) == dual_sup(phi, -phi), "dual-abs", **ins)
    _require(dual_pos(phi) - dual_neg(phi) == phi, "dual-jordan", **ins)
    for _ in range(ctx.shape.points):
        x = ctx.element(X, positive=True)
        want = oracle_rk_sup(phi, psi, x)
        _require(apply(dual_sup(phi, psi), x) == want, "dual-oracle", x=x, **ins)
    pos = ctx.operator(X, K, positive=True)
    _require(op_leq(dual_inf(pos, -pos), Operator.zero(X, K)) and dual_abs(pos) == pos, "dual-positive", phi=pos)
    try:
        dual_sup(ctx.operator(X, ModuleSpace(A, 2)), ctx.operator(X, ModuleSpace(A, 2)))
    except ValueError:
        pass
    else:
        raise _Fail("dual-codomain-check")


_TRIALS: dict[str, TrialFn] = {
    "falgebra-axioms": _falgebra_axioms,
    "support-calculus": _support_calculus,
    "freudenthal": _freudenthal,
    "interval-lemmas": _interval_lemmas,
    "rdp": _rdp,
    "rk-oracle": _rk_oracle,
    "rk-lattice-identities": _rk_identities,
    "extension": _extension,
    "directed-sup": _directed_sup,
    "archimedean": _archimedean,
    "dual": _dual,
}


# -- runner ------------------------------------------------------------------


def _run_trial(fn: TrialFn, seed: int, index: int, salt: int, shape: _Shape,
               instance: Optional[Instance]) -> Optional[dict]:
    ctx = _Ctx(gen.trial_rng(seed, index, salt), shape, instance, index)
    try:
        fn(ctx)
    except _Fail as f:
        return {"check": f.check, "inputs": dump_value(f.inputs)}
    except (ArithmeticError, ValueError, AssertionError) as exc:
        return {"check": "exception", "error": f"{type(exc).__name__}: {exc}"}
    return None


def _resolve(name: str, params: SuiteParams) -> tuple[int, _Shape]:
    trials, n, x, y, d, s, pts = _DEFAULTS[name]
    shape = _Shape(
        params.n_atoms or n, params.dim_x or x, params.dim_y or y,
        params.denom_cap or d, params.subdiv or s, params.points or pts,
    )
    return (trials if params.trials is None else params.trials), shape


def _swap_campaign(trials: int, seed: int, params: SuiteParams) -> tuple[Optional[dict], bool]:
    """Run the atom-swap cone map through the extension; it must be rejected."""
    if params.instance is not None and params.cone_map in params.instance.cone_map_specs:
        f = params.instance.cone_map(params.cone_map)
    else:
        f = ConeMap.swap(ModuleSpace(AtomSpace(2), 1))
    witness = None
    for t in range(max(trials, 1)):
        try:
            extend_cone_map(f, seed=seed + t)
        except NotPHomogeneous as exc:
            w = dump_value(exc.witness)
            if witness is not None and w != witness:
                return {"check": "swap-witness-deterministic", "first": witness, "trial": t, "witness": w}, False
            witness = w
        except ExtensionError as exc:
            return {"check": "swap-wrong-rejection", "error": type(exc).__name__,
                    "witness": dump_value(exc.witness)}, False
        else:
            return {"check": "swap-accepted", "trial": t}, False
    return {"check": "not-p-homogeneous", "cone_map": f.name, "witness": witness}, True


def _named_cone_map_campaign(name: str, trials: int, seed: int, instance: Instance) -> Optional[dict]:
    f = instance.cone_map(name)
    for t in range(trials):
        try:
            T = extend_cone_map(f, seed=seed + t)
        except ExtensionError as exc:
            return {"check": f"rejected:{type(exc).__name__}", "cone_map": name, "witness": dump_value(exc.witness)}
        if f.rule is not None and f.name == "restriction":
            spec = instance.cone_map_specs[name]
            if T != instance.operators[spec["operator"]]:
                return {"check": "round-trip", "cone_map": name}
    return None


def run_suite(name: str, params: SuiteParams = SuiteParams(), seed: int = 0) -> Report:
    """Execute the named battery; deterministic in ``(name, params, seed)``."""
    if name not in _TRIALS:
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {', '.join(SUITES)}")
    start = time.perf_counter()
    trials, shape = _resolve(name, params)
    if trials < 0:
        raise ValueError("trials must be >= 0")
    warnings = []
    if trials == 0:
        warnings.append("empty trial budget: nothing was checked")
    failure, expected = None, False
    cone_map = params.cone_map
    swap = cone_map == "swap" or (
        params.instance is not None and cone_map in params.instance.cone_map_specs
        and params.instance.cone_map_specs[cone_map].get("rule") == "swap"
    )
    if name == "extension" and swap:
        failure, expected = _swap_campaign(trials, seed, params)
    elif name == "extension" and cone_map is not None and cone_map not in ("restriction", "idempotent-cut"):
        if params.instance is None or cone_map not in params.instance.cone_map_specs:
            raise ValueError(f"unknown cone map {cone_map!r}")
        failure = _named_cone_map_campaign(cone_map, trials, seed, params.instance)
    else:
        fn, salt = _TRIALS[name], _SALTS[name]
        for t in range(trials):
            failure = _run_trial(fn, seed, t, salt, shape, params.instance)
            if failure is None:
                continue
            best_shape = shape
            if params.instance is None:
                smaller = shape.halved()
                while smaller is not None:
                    again = _run_trial(fn, seed, t, salt, smaller, None)
                    if again is None:
                        break
                    failure, best_shape = again, smaller
                    smaller = smaller.halved()
            failure = {"trial": t, "shape": asdict(best_shape), **failure}
            break
    return Report(
        suite=name,
        trials=trials,
        seed=seed,
        passed=failure is None,
        expected_failure=expected,
        counterexample=failure,
        elapsed_ms=round((time.perf_counter() - start) * 1000, 3),
        warnings=warnings,
    )
