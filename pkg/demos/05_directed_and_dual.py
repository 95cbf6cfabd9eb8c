"""
Directed families and the dual
==============================

The supremum of a finite directed family is its largest member, and it is
evaluated pointwise.  Functionals into the scalar module form the dual,
which inherits the same lattice operations.
"""

from rklat import generate as gen
from rklat.falgebra import AtomSpace
from rklat.operators import (
    DirectedFamily,
    NotDirectedError,
    Operator,
    apply,
    directed_sup,
    dual_abs,
    dual_sup,
    rk_sup,
)
from rklat.pomodule import ModuleSpace
from rklat.verify import oracle_pointwise_sup

rng = gen.trial_rng(seed=2, index=0)
A = AtomSpace(2)
X, Y = gen.module_space(rng, A, 2), gen.module_space(rng, A, 2)
base = [gen.operator(rng, X, Y, positive=True) for _ in range(3)]
top = rk_sup(rk_sup(base[0], base[1]), base[2])
fam = DirectedFamily(tuple(base) + (top,))

s = directed_sup(fam)
x = gen.element(rng, X, positive=True)
print("sup at x:      ", apply(s, x))
print("pointwise max: ", oracle_pointwise_sup(fam.members, x))

try:
    directed_sup(DirectedFamily(tuple(base)))
except NotDirectedError as exc:
    print("without the top element:", exc)

# %%
A1 = AtomSpace(1)
X = ModuleSpace(A1, 2)
K = ModuleSpace(A1, 1)
e1 = Operator(X, K, (((1, 0),),))
e2 = Operator(X, K, (((0, 1),),))
print("\ne1* v e2* =", dual_sup(e1, e2), " at (1, 1):", apply(dual_sup(e1, e2), X.element([[1], [1]])))
print("|e1* - e2*| =", dual_abs(e1 - e2))
