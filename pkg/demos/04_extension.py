"""
Extending maps on the positive cone
===================================

An additive map on the positive cone that commutes with idempotents extends
uniquely to a positive operator.  Maps that mix atoms are rejected, with an
idempotent that witnesses the failure.
"""

from rklat import generate as gen
from rklat.falgebra import AtomSpace
from rklat.operators import ConeMap, NotPHomogeneous, extend_cone_map
from rklat.pomodule import ModuleSpace

rng = gen.trial_rng(seed=1, index=0)
A = AtomSpace(2)
X, Y = gen.module_space(rng, A, 2), gen.module_space(rng, A, 3)
T = gen.operator(rng, X, Y, positive=True)

# Restrict T to the cone, then extend back.
back = extend_cone_map(ConeMap.restriction(T))
print("restriction round-trip exact:", back == T)

# Cutting by an idempotent extends to multiplication by it.
p = A.idem([0, 1])
cut = extend_cone_map(ConeMap.idempotent_cut(X, p))
print("idempotent cut:", cut)

# %%
# Swapping the two atoms of Q^2 is additive and positive but does not
# commute with idempotents.
swap = ConeMap.swap(ModuleSpace(A, 1))
try:
    extend_cone_map(swap)
except NotPHomogeneous as exc:
    print("\nswap rejected:", exc)
    print("witness idempotent:", exc.witness["idem"], " at x =", exc.witness["x"])
