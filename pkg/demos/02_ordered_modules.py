"""
Ordered modules and their cones
===============================

A module element stores one column per atom.  The order is the one induced
by a cone, which need not be the standard orthant: a cone transform maps cone
coordinates to raw coordinates.
"""

from fractions import Fraction as Q

from rklat.falgebra import AtomSpace
from rklat.pomodule import (
    ConeTransform,
    ModuleSpace,
    OrderInterval,
    check_rdp,
    grid_points,
    interval_vertices,
    scale_interval,
    sup,
    support_of_element,
)

A = AtomSpace(2)

# Standard cone: the order is coordinatewise.
X = ModuleSpace(A, 2)
x = X.element([[1, -1], [0, 3]])
y = X.element([[0, 2], [1, 1]])
print("x v y =", sup(x, y))
print("support of", X.element([[0, 0], [0, -2]]), "is", support_of_element(X.element([[0, 0], [0, -2]])))

# A sheared cone spanned by (1, 1/2) and (0, 1) on every atom.
shear = ConeTransform(tuple(((Q(1), Q(0)), (Q(1, 2), Q(1))) for _ in range(2)))
Z = ModuleSpace(A, 2, shear)
u = Z.element([[1, 0], [0, 1]])
v = Z.element([[0, 1], [1, 0]])
s = sup(u, v)
print("\nsheared cone")
print("(1, 0) positive?", Z.element([[1, 1], [0, 0]]).is_positive())
print("u v v =", s, " u <= s:", u <= s, " v <= s:", v <= s)

# %%
# Order intervals have 2^(m n) vertices and can be sampled on a grid.
iv = OrderInterval(Z.zero(), Z.from_cone([[1, 2], [1, 1]]))
print("\nvertices:", len(interval_vertices(iv)), " grid points (subdiv 2):", len(grid_points(iv, 2)))

# Scaling by an idempotent scales the interval.
res = scale_interval(A.idem([1, 0]), Z.from_cone([[2, 2], [1, 1]]), 2)
print("[0, p x] = p [0, x]:", res.passed, res.counts)

# Riesz decomposition: every z in [0, x + y] splits as u + v with u in [0, x], v in [0, y].
res = check_rdp(Z.from_cone([[1, 2], [1, 1]]), Z.from_cone([[2, 1], [0, 1]]), 2)
print("decomposition property:", res.passed, res.counts)
