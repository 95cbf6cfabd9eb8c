"""
Archimedean checks
==================

A module is Archimedean for a family of downward chains when no nonzero
element survives below every d x.  The checker samples chains and
candidates, and either refutes each candidate with an explicit index or
reports a violation that can be replayed.
"""

from fractions import Fraction as Q

from rklat.falgebra import AtomSpace
from rklat.pomodule import ModuleSpace
from rklat.serialize import dump_value
from rklat.verify import check_arch_combination, check_archimedean, replay_archimedean
from rklat.verify.archimedean import check_chain, idem_chain, product_chain, scalar_chain

A = AtomSpace(3)
X = ModuleSpace(A, 2)

# Scalars 1/j, idempotents decreasing to 0, and their products.
for flavor in ("R", "P", "L"):
    for mode in ("full", "almost"):
        rep = check_archimedean(X, flavor, mode, trials=20, seed=0)
        print(f"{flavor} {mode:6s} passed={rep.passed}")

print("combination:", check_arch_combination(X, trials=10).passed)

# %%
# A candidate below the first few chain terms is refuted further down.
x = X.element([[1, 1, 1], [1, 1, 1]])
cand = X.element([[Q(1, 500), 0, 0], [0, 0, 0]])
print("\nrefuted:", check_chain(scalar_chain(A, 3), x, cand, "full") is None)
print("product chain:", [str(d) for d in product_chain(A.felem([2, 1, 1]), [A.idem([1, 1, 1]), A.idem([1, 0, 0])]).elements])

# An idempotent chain that stops short of 0 leaves a genuine lower bound.
stuck = idem_chain([A.idem([1, 1, 1]), A.idem([1, 0, 0])])
found = check_chain(stuck, x, X.element([[1, 0, 0], [0, 0, 0]]), "full")
print("violation replays:", replay_archimedean(dump_value(found)))
