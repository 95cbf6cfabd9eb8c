"""
Finite f-algebras
=================

An element of Q^n is a function on n atoms.  Lattice operations act atom by
atom and idempotents are 0/1 masks.
"""

from fractions import Fraction as Q

from rklat.falgebra import (
    AtomSpace,
    are_disjoint,
    bounded_idem_seq,
    cmp_idem,
    freudenthal_lower,
    freudenthal_steps,
    freudenthal_upper,
    invert_pos,
    neg_part,
    pos_part,
    sup,
    support,
)

A = AtomSpace(3)
a = A.felem([3, -2, 0])
b = A.felem(["1/2", 1, 4])

print("a      =", a)
print("a+     =", pos_part(a))
print("a-     =", neg_part(a))
print("|a|    =", abs(a))
print("a v b  =", sup(a, b))

# The support is the smallest idempotent that leaves a unchanged.
print("support(a) =", support(a))

# The comparison idempotent marks the atoms where a < b.
p = cmp_idem(a, b)
print("[a < b]    =", p, " p*a =", p * a, " p*b =", p * b)

print("a and [0, 0, 1] disjoint:", are_disjoint(a, A.felem([0, 0, 1])))

# Strictly positive elements are invertible.
print("inverse of |b| + 1:", invert_pos(abs(b) + A.one()))

# %%
# Bounded idempotents pick out the atoms where |a| < n; they reach 1 at
# n = floor(max |a|) + 1.
for n in range(1, 5):
    pn = bounded_idem_seq(a, n)
    print(f"n={n}: pi_n = {pn}  pi_n*a = {pn * a}")

# %%
# Dyadic approximation from below and above by simple elements.
beta = A.felem([Q(3, 10), Q(5, 3), 2])
for N in (0, 2, 4, 8):
    print(f"N={N}: {freudenthal_lower(beta, N)} <= beta <= {freudenthal_upper(beta, N)}")

# The lower approximation is a positive combination of idempotents.
print("steps at N=2:", [(str(c), str(p)) for c, p in freudenthal_steps(beta, 2)])
