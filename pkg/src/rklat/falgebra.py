"""The f-algebra of rational functions on a finite atom set.

A Dedekind complete unital f-algebra is modelled on a finite discrete
Stonean space: an element is one exact rational per atom, all operations
act atom by atom, and the idempotents are the 0/1 vectors.  In this model
the ideal generated by the unit is the whole algebra.

>>> A = AtomSpace(3)
>>> a = A.felem([0, 3, "-2"])
>>> support(a)
Idem(0, 1, 1)
>>> absolute(a).values
(Fraction(0, 1), Fraction(3, 1), Fraction(2, 1))
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from ._linalg import as_fraction

__all__ = [
    "AtomSpace",
    "FElem",
    "Idem",
    "DimensionError",
    "NotInvertibleError",
    "InvariantViolation",
    "sup",
    "inf",
    "absolute",
    "pos_part",
    "neg_part",
    "support",
    "cmp_idem",
    "disjointness_conditions",
    "are_disjoint",
    "bounded_idem_seq",
    "stabilization_index",
    "invert_pos",
    "freudenthal_lower",
    "freudenthal_upper",
    "freudenthal_steps",
    "meet",
    "join",
    "complement",
]


class DimensionError(ValueError):
    """Operands live over different atom spaces or have the wrong shape."""


class NotInvertibleError(ArithmeticError):
    pass


class InvariantViolation(AssertionError):
    """An identity that must hold in the model did not hold."""


@dataclass(frozen=True)
class AtomSpace:
    n_atoms: int

    def __post_init__(self):
        if not isinstance(self.n_atoms, int) or isinstance(self.n_atoms, bool) or self.n_atoms < 1:
            raise ValueError(f"n_atoms must be a positive integer, got {self.n_atoms!r}")

    def felem(self, values: Iterable) -> FElem:
        return FElem(self, tuple(values))

    def const(self, r) -> FElem:
        r = as_fraction(r)
        return FElem(self, (r,) * self.n_atoms)

    def zero(self) -> FElem:
        return self.const(0)

    def one(self) -> FElem:
        return self.const(1)

    def idem(self, mask: Iterable) -> Idem:
        return Idem(self, tuple(bool(b) for b in mask))

    def idem_from_int(self, bits: int) -> Idem:
        """Atom ``i`` is in the idempotent when bit ``i`` of ``bits`` is set."""
        return Idem(self, tuple(bool((bits >> i) & 1) for i in range(self.n_atoms)))

    def idempotents(self) -> Iterator[Idem]:
        # ascending bit order: 0, atom 0, atom 1, atoms {0,1}, ...
        for bits in range(1 << self.n_atoms):
            yield self.idem_from_int(bits)

    def atom(self, i: int) -> Idem:
        return self.idem_from_int(1 << i)


def _check_space(a, b):
    if a.space != b.space:
        raise DimensionError(f"atom spaces differ: {a.space.n_atoms} vs {b.space.n_atoms}")


@dataclass(frozen=True)
class FElem:
    """An element of the algebra: one rational value per atom."""

    space: AtomSpace
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(as_fraction(v) for v in self.values)
        if len(vals) != self.space.n_atoms:
            raise DimensionError(f"expected {self.space.n_atoms} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def _lift(self, other) -> FElem:
        if isinstance(other, FElem):
            _check_space(self, other)
            return other
        if isinstance(other, Idem):
            _check_space(self, other)
            return other.as_felem()
        return self.space.const(other)

    def _zip(self, other, f) -> FElem:
        other = self._lift(other)
        return FElem(self.space, tuple(f(x, y) for x, y in zip(self.values, other.values)))

    def __add__(self, other):
        return self._zip(other, lambda x, y: x + y)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(other, lambda x, y: x - y)

    def __rsub__(self, other):
        return self._zip(other, lambda x, y: y - x)

    def __mul__(self, other):
        if not isinstance(other, (FElem, Idem, int, Fraction, str)):
            return NotImplemented
        return self._zip(other, lambda x, y: x * y)

    def __rmul__(self, other):
        if not isinstance(other, (Idem, int, Fraction, str)):
            return NotImplemented
        return self._zip(other, lambda x, y: x * y)

    def __neg__(self):
        return FElem(self.space, tuple(-v for v in self.values))

    def __abs__(self):
        return absolute(self)

    def __le__(self, other):
        other = self._lift(other)
        return all(x <= y for x, y in zip(self.values, other.values))

    def __ge__(self, other):
        other = self._lift(other)
        return all(x >= y for x, y in zip(self.values, other.values))

    def is_positive(self) -> bool:
        return all(v >= 0 for v in self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __repr__(self):
        return "FElem(" + ", ".join(str(v) for v in self.values) + ")"


@dataclass(frozen=True)
class Idem:
    """An idempotent of the algebra, i.e. a band projection."""

    space: AtomSpace
    mask: tuple[bool, ...]

    def __post_init__(self):
        mask = tuple(bool(b) for b in self.mask)
        if len(mask) != self.space.n_atoms:
            raise DimensionError(f"expected {self.space.n_atoms} mask bits, got {len(mask)}")
        object.__setattr__(self, "mask", mask)

    def as_felem(self) -> FElem:
        return FElem(self.space, tuple(Fraction(int(b)) for b in self.mask))

    def bits(self) -> int:
        return sum(1 << i for i, b in enumerate(self.mask) if b)

    def __and__(self, other: Idem) -> Idem:
        return meet(self, other)

    def __or__(self, other: Idem) -> Idem:
        return join(self, other)

    def __invert__(self) -> Idem:
        return complement(self)

    def __mul__(self, other):
        if isinstance(other, Idem):
            return meet(self, other)
        if isinstance(other, FElem):
            return other * self
        return NotImplemented

    def __le__(self, other: Idem) -> bool:
        _check_space(self, other)
        return all(b or not a for a, b in zip(self.mask, other.mask))

    def __ge__(self, other: Idem) -> bool:
        return other <= self

    def is_zero(self) -> bool:
        return not any(self.mask)

    def is_one(self) -> bool:
        return all(self.mask)

    def __repr__(self):
        return "Idem(" + ", ".join(str(int(b)) for b in self.mask) + ")"


def sup(a: FElem, b: FElem) -> FElem:
    return a._zip(b, max)


def inf(a: FElem, b: FElem) -> FElem:
    return a._zip(b, min)


def absolute(a: FElem) -> FElem:
    return sup(a, -a)


def pos_part(a: FElem) -> FElem:
    return sup(a, a.space.zero())


def neg_part(a: FElem) -> FElem:
    return sup(-a, a.space.zero())


def meet(p: Idem, q: Idem) -> Idem:
    _check_space(p, q)
    return Idem(p.space, tuple(x and y for x, y in zip(p.mask, q.mask)))


def join(p: Idem, q: Idem) -> Idem:
    _check_space(p, q)
    return Idem(p.space, tuple(x or y for x, y in zip(p.mask, q.mask)))


def complement(p: Idem) -> Idem:
    return Idem(p.space, tuple(not x for x in p.mask))


def support(a: FElem) -> Idem:
    """Smallest idempotent fixing ``a``: the indicator of its nonzero atoms."""
    return Idem(a.space, tuple(v != 0 for v in a.values))


def cmp_idem(a: FElem, b: FElem) -> Idem:
    """The idempotent on which ``a < b``, i.e. the support of ``(b - a)^+``."""
    return support(pos_part(b - a))


def disjointness_conditions(a: FElem, b: FElem) -> tuple[bool, bool, bool, bool]:
    _check_space(a, b)
    pa, pb = support(a), support(b)
    return (
        (a * b).is_zero(),
        inf(absolute(a), absolute(b)).is_zero(),
        meet(pa, pb).is_zero(),
        (pa.as_felem() * pb.as_felem()).is_zero(),
    )


def are_disjoint(a: FElem, b: FElem) -> bool:
    conds = disjointness_conditions(a, b)
    if len(set(conds)) != 1:
        raise InvariantViolation(f"disjointness conditions disagree for {a!r}, {b!r}: {conds}")
    return conds[0]


def bounded_idem_seq(a: FElem, n: int) -> Idem:
    """``pi_n``: the idempotent on which ``|a| < n``.

    The sequence increases to 1 in ``n`` and keeps ``pi_n * a`` inside
    ``[-n, n]``.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return cmp_idem(absolute(a), a.space.const(n))


def stabilization_index(a: FElem) -> int:
    """First ``n`` with ``bounded_idem_seq(a, n) == 1``."""
    return math.floor(max(absolute(a).values)) + 1


def invert_pos(a: FElem) -> FElem:
    if any(v == 0 for v in a.values):
        raise NotInvertibleError(f"{a!r} vanishes on an atom")
    if any(v < 0 for v in a.values):
        raise ValueError(f"invert_pos requires strictly positive values, got {a!r}")
    return FElem(a.space, tuple(1 / v for v in a.values))


def _dyadic(b: FElem, N: int, rounding) -> FElem:
    if not isinstance(N, int) or N < 0:
        raise ValueError(f"N must be a nonnegative integer, got {N!r}")
    scale = 1 << N
    return FElem(b.space, tuple(Fraction(rounding(v * scale), scale) for v in b.values))


def freudenthal_lower(b: FElem, N: int) -> FElem:
    """Dyadic step function ``alpha_N <= b`` on the grid ``2**-N``.

    Sign-changing input is split into positive and negative parts:
    ``alpha_N(b) = alpha_N(b+) - gamma_N(b-)``.
    """
    if b.is_positive():
        return _dyadic(b, N, math.floor)
    return freudenthal_lower(pos_part(b), N) - freudenthal_upper(neg_part(b), N)


def freudenthal_upper(b: FElem, N: int) -> FElem:
    if b.is_positive():
        return _dyadic(b, N, math.ceil)
    return freudenthal_upper(pos_part(b), N) - freudenthal_lower(neg_part(b), N)


def freudenthal_steps(b: FElem, N: int) -> list[tuple[Fraction, Idem]]:
    """Write ``freudenthal_lower(b, N)`` as a positive combination of idempotents.

    For ``b >= 0`` the lower approximant is
    ``sum_k 2**-N * (1 - pi_{b < k 2**-N})`` over ``k = 1 .. floor(max(b) 2**N)``,
    so every term is a complemented comparison idempotent.
    """
    if not b.is_positive():
        raise ValueError("freudenthal_steps needs b >= 0")
    h = Fraction(1, 1 << N)
    top = math.floor(max(b.values) / h)
    return [(h, complement(cmp_idem(b, b.space.const(k * h)))) for k in range(1, top + 1)]
