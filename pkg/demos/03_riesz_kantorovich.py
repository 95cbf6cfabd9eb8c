"""
Lattice operations on operators
===============================

Order-bounded operators between ordered modules form a lattice.  The supremum
of S and T at a positive x is the largest value of S(u) + T(x - u) over
u in [0, x].  The library evaluates it in closed form; the oracle gets the
same value by brute-force enumeration of the interval.
"""

from rklat import generate as gen
from rklat.falgebra import AtomSpace
from rklat.operators import Operator, apply, is_positive, rk_abs, rk_inf, rk_neg, rk_pos, rk_sup
from rklat.pomodule import ModuleSpace
from rklat.verify import oracle_rk_abs, oracle_rk_sup

# A functional on Q^2 with mixed signs.
A1 = AtomSpace(1)
X = ModuleSpace(A1, 2)
K = ModuleSpace(A1, 1)
S = Operator(X, K, (((1, -2),),))
x = X.element([[1], [1]])
print("S+ (x) =", apply(rk_pos(S), x))
print("S- (x) =", apply(rk_neg(S), x))
print("|S|(x) =", apply(rk_abs(S), x), " oracle:", oracle_rk_abs(S, x))

# %%
# Random operators over a cone with a monomial transform.
rng = gen.trial_rng(seed=4, index=0)
A = AtomSpace(3)
X = gen.module_space(rng, A, 2, kinds=("monomial",))
Y = gen.module_space(rng, A, 2)
S, T = gen.operator(rng, X, Y), gen.operator(rng, X, Y)
x = gen.element(rng, X, positive=True)

closed = apply(rk_sup(S, T), x)
brute = oracle_rk_sup(S, T, x)
print("\nS v T at x, closed form:", closed)
print("S v T at x, enumeration:", brute)
print("equal:", closed == brute)

print("S v T + S ^ T == S + T:", rk_sup(S, T) + rk_inf(S, T) == S + T)
print("|S| positive:", is_positive(rk_abs(S)))
