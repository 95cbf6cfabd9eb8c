"""Operators between partially ordered A-modules and their lattice structure.

An operator ``X -> Y`` of the free modules is stored as one ``k x m``
rational block per atom, acting on raw coordinates.  A-linearity is
automatic in this representation: multiplying by an algebra element scales
each atom column and the block of that atom commutes with it.

The lattice operations of the operator space reduce, in cone coordinates,
to entrywise extrema of the blocks.  For ``x >= 0`` the supremum
``sup {S(y) + T(x - y) : 0 <= y <= x}`` separates over the coordinates of
``y`` and each coordinate is a linear function of ``y_j`` on ``[0, x_j]``, so
it is attained at an endpoint.  ``rklat.verify.oracle`` checks this against
plain vertex enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence

import numpy as np

from . import _linalg as la
from .falgebra import DimensionError, FElem, Idem, InvariantViolation
from .pomodule import ModuleElem, ModuleSpace, OrderInterval, interval_vertices, neg_part, pos_part

__all__ = [
    "Operator",
    "ConeMap",
    "DirectedFamily",
    "ExtensionError",
    "NotAdditive",
    "NotPHomogeneous",
    "NotPositive",
    "NotDirectedError",
    "apply",
    "is_positive",
    "op_leq",
    "is_order_bounded",
    "rk_sup",
    "rk_inf",
    "rk_pos",
    "rk_neg",
    "rk_abs",
    "extend_cone_map",
    "directed_sup",
    "dual_sup",
    "dual_inf",
    "dual_abs",
    "dual_pos",
    "dual_neg",
]


@dataclass(frozen=True)
class Operator:
    domain: ModuleSpace
    codomain: ModuleSpace
    blocks: tuple[la.Matrix, ...]

    def __post_init__(self):
        if self.domain.space != self.codomain.space:
            raise DimensionError("domain and codomain over different atom spaces")
        blocks = tuple(la.matrix(b) for b in self.blocks)
        if len(blocks) != self.domain.n_atoms:
            raise DimensionError(f"expected {self.domain.n_atoms} blocks, got {len(blocks)}")
        want = (self.codomain.m_dim, self.domain.m_dim)
        for b in blocks:
            if la.shape(b) != want:
                raise DimensionError(f"block shape {la.shape(b)}, expected {want}")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def zero(cls, X: ModuleSpace, Y: ModuleSpace) -> Operator:
        return cls(X, Y, tuple(la.zeros(Y.m_dim, X.m_dim) for _ in range(X.n_atoms)))

    @classmethod
    def identity(cls, X: ModuleSpace) -> Operator:
        return cls(X, X, tuple(la.identity(X.m_dim) for _ in range(X.n_atoms)))

    @classmethod
    def from_cone(cls, X: ModuleSpace, Y: ModuleSpace, blocks: Sequence[Sequence[Sequence]]) -> Operator:
        """Build from blocks written in cone coordinates: ``Q_a B_a P_a^{-1}``."""
        raw = []
        for a, b in enumerate(blocks):
            b = la.matrix(b)
            if Y.transform is not None:
                b = la.matmul(Y.transform.matrices[a], b)
            if X.transform is not None:
                b = la.matmul(b, X.transform.inverses[a])
            raw.append(b)
        return cls(X, Y, tuple(raw))

    def cone_blocks(self) -> tuple[la.Matrix, ...]:
        """Blocks in cone coordinates: ``Q_a^{-1} T_a P_a``."""
        out = []
        for a, b in enumerate(self.blocks):
            if self.codomain.transform is not None:
                b = la.matmul(self.codomain.transform.inverses[a], b)
            if self.domain.transform is not None:
                b = la.matmul(b, self.domain.transform.matrices[a])
            out.append(b)
        return tuple(out)

    def _check(self, other: Operator):
        if not isinstance(other, Operator) or (other.domain, other.codomain) != (self.domain, self.codomain):
            raise DimensionError("operators between different spaces")

    def __call__(self, x: ModuleElem) -> ModuleElem:
        return apply(self, x)

    def __add__(self, other: Operator) -> Operator:
        self._check(other)
        return Operator(
            self.domain, self.codomain,
            tuple(la.entrywise(lambda s, t: s + t, a, b) for a, b in zip(self.blocks, other.blocks)),
        )

    def __sub__(self, other: Operator) -> Operator:
        return self + (-other)

    def __neg__(self) -> Operator:
        return Operator(self.domain, self.codomain, tuple(la.entrywise(lambda s: -s, b) for b in self.blocks))

    def __rmul__(self, scalar) -> Operator:
        """``(lam T)(x) = lam T(x)``; algebra elements scale atom by atom."""
        if isinstance(scalar, Idem):
            scalar = scalar.as_felem()
        if isinstance(scalar, FElem):
            if scalar.space != self.domain.space:
                raise DimensionError("scalar over a different atom space")
            return Operator(
                self.domain, self.codomain,
                tuple(la.entrywise(lambda s, lam=lam: lam * s, b) for lam, b in zip(scalar.values, self.blocks)),
            )
        if isinstance(scalar, (int, Fraction)):
            return Operator(self.domain, self.codomain, tuple(la.entrywise(lambda s: scalar * s, b) for b in self.blocks))
        return NotImplemented

    def __repr__(self):
        body = " | ".join("; ".join(" ".join(str(v) for v in row) for row in b) for b in self.blocks)
        return f"Operator[{body}]"


def apply(T: Operator, x: ModuleElem) -> ModuleElem:
    if x.mspace != T.domain:
        raise DimensionError("element is not in the operator's domain")
    cols = list(zip(*x.coords))
    out = [la.matvec(b, c) for b, c in zip(T.blocks, cols)]
    return ModuleElem(T.codomain, tuple(zip(*out)))


def is_positive(T: Operator) -> bool:
    """True when every cone-coordinate entry is ``>= 0``.

    The answer is cross-checked against the images of the cone generators.
    """
    entrywise = all(v >= 0 for b in T.cone_blocks() for row in b for v in row)
    semantic = all(apply(T, g).is_positive() for g in T.domain.generators())
    if entrywise != semantic:
        raise InvariantViolation(f"positivity tests disagree for {T!r}")
    return entrywise


def op_leq(S: Operator, T: Operator) -> bool:
    S._check(T)
    return is_positive(T - S)


def _cone_entrywise(f: Callable, *ops: Operator) -> Operator:
    first = ops[0]
    for op in ops[1:]:
        first._check(op)
    blocks = [op.cone_blocks() for op in ops]
    out = [la.entrywise(f, *per_atom) for per_atom in zip(*blocks)]
    return Operator.from_cone(first.domain, first.codomain, out)


def rk_sup(S: Operator, T: Operator) -> Operator:
    return _cone_entrywise(max, S, T)


def rk_inf(S: Operator, T: Operator) -> Operator:
    return _cone_entrywise(min, S, T)


def rk_pos(S: Operator) -> Operator:
    return _cone_entrywise(lambda s: max(s, 0), S)


def rk_neg(S: Operator) -> Operator:
    """The positive operator ``S^- = (-S) v 0``, so that ``S = S^+ - S^-``."""
    return _cone_entrywise(lambda s: max(-s, 0), S)


def rk_abs(S: Operator) -> Operator:
    return _cone_entrywise(abs, S)


def is_order_bounded(T: Operator, iv: OrderInterval, audit_vertices: bool = False) -> tuple[bool, OrderInterval]:
    """Return an interval containing ``T([lo, hi])``.

    From ``T = T+ - T-`` with both parts positive:
    ``T+(lo) - T-(hi) <= T(y) <= T+(hi) - T-(lo)``.  With ``audit_vertices``
    every vertex image is checked against the witness (for ``m n <= 12``).
    """
    if iv.mspace != T.domain:
        raise DimensionError("interval is not in the operator's domain")
    tp, tn = rk_pos(T), rk_neg(T)
    witness = OrderInterval(apply(tp, iv.lo) - apply(tn, iv.hi), apply(tp, iv.hi) - apply(tn, iv.lo))
    if audit_vertices and T.domain.m_dim * T.domain.n_atoms <= 12:
        for v in interval_vertices(iv):
            if apply(T, v) not in witness:
                raise InvariantViolation(f"vertex image {apply(T, v)!r} escapes {witness!r}")
    return True, witness


# -- cone maps and the extension lemma ---------------------------------------


class ExtensionError(ValueError):
    def __init__(self, message: str, **witness):
        super().__init__(message)
        self.witness = witness


class NotAdditive(ExtensionError):
    pass


class NotPHomogeneous(ExtensionError):
    pass


class NotPositive(ExtensionError):
    pass


@dataclass(frozen=True, eq=False)
class ConeMap:
    """A map defined on the positive cone of ``domain`` with values in ``codomain``.

    Either a closed-form ``rule`` (callable on positive elements) or a finite
    ``table`` of sample points.
    """

    domain: ModuleSpace
    codomain: ModuleSpace
    rule: Optional[Callable[[ModuleElem], ModuleElem]] = None
    table: Optional[Mapping[ModuleElem, ModuleElem]] = None
    name: str = "cone-map"

    def __post_init__(self):
        if (self.rule is None) == (self.table is None):
            raise ValueError("a cone map needs exactly one of rule or table")

    def __call__(self, x: ModuleElem) -> ModuleElem:
        if not x.is_positive():
            raise ValueError(f"{self.name} is only defined on the positive cone")
        if self.rule is not None:
            return self.rule(x)
        return self.table[x]

    def defined_at(self, x: ModuleElem) -> bool:
        return self.rule is not None or x in self.table

    @classmethod
    def restriction(cls, T: Operator) -> ConeMap:
        return cls(T.domain, T.codomain, rule=T.__call__, name="restriction")

    @classmethod
    def swap(cls, X: ModuleSpace) -> ConeMap:
        """Reverse the atoms: on ``A = Q^2`` this is ``(x, y) -> (y, x)``."""
        def rule(x: ModuleElem) -> ModuleElem:
            return X.element([row[::-1] for row in x.coords])
        return cls(X, X, rule=rule, name="swap")

    @classmethod
    def idempotent_cut(cls, X: ModuleSpace, p: Idem) -> ConeMap:
        return cls(X, X, rule=lambda x: p * x, name="idempotent-cut")

    @classmethod
    def tabulated(cls, X: ModuleSpace, Y: ModuleSpace, samples: Iterable[tuple[ModuleElem, ModuleElem]]) -> ConeMap:
        return cls(X, Y, table=dict(samples), name="tabulated")


def _random_cone_point(rng: np.random.Generator, X: ModuleSpace, cap: int = 8) -> ModuleElem:
    grid = [[Fraction(int(rng.integers(0, 4 * cap + 1)), int(rng.integers(1, cap + 1))) for _ in range(X.n_atoms)]
            for _ in range(X.m_dim)]
    return X.from_cone(grid)


def _validation_points(f: ConeMap, rng: np.random.Generator, n_samples: int) -> list[ModuleElem]:
    X = f.domain
    if f.table is not None:
        return sorted(f.table, key=repr)
    pts = X.generators()
    pts += [_random_cone_point(rng, X) for _ in range(n_samples)]
    return pts


def _validation_idems(X: ModuleSpace, rng: np.random.Generator, n_samples: int) -> list[Idem]:
    if X.n_atoms <= 8:
        return list(X.space.idempotents())
    return [X.space.idem_from_int(int(rng.integers(0, 1 << X.n_atoms))) for _ in range(n_samples)]


def validate_cone_map(f: ConeMap, n_samples: int = 8, seed: int = 0) -> list[ModuleElem]:
    """Check positivity, P-homogeneity and additivity of ``f`` on samples.

    Returns the sample points used; raises the matching ``ExtensionError``
    subclass with the first witness found.  Idempotents are enumerated
    exhaustively when there are at most 8 atoms.
    """
    rng = np.random.default_rng(seed)
    pts = _validation_points(f, rng, n_samples)
    idems = _validation_idems(f.domain, rng, n_samples)
    for x in pts:
        if not f(x).is_positive():
            raise NotPositive(f"{f.name} maps {x!r} outside the cone", x=x, fx=f(x))
    for x in pts:
        fx = f(x)
        for p in idems:
            px = p * x
            if f.defined_at(px) and f(px) != p * fx:
                raise NotPHomogeneous(f"{f.name}(p x) != p {f.name}(x) for p={p!r}, x={x!r}", idem=p, x=x)
    for u, v in zip(pts, pts[1:] + pts[:1]):
        if f.defined_at(u + v) and f(u + v) != f(u) + f(v):
            raise NotAdditive(f"{f.name}(u+v) != {f.name}(u) + {f.name}(v)", u=u, v=v)
    return pts


def extend_cone_map(f: ConeMap, n_samples: int = 8, seed: int = 0, n_decompositions: int = 10) -> Operator:
    """Extend an additive, P-homogeneous ``f: X+ -> Y+`` to a positive operator.

    The block of atom ``a`` is read off the images of the single-atom cone
    generators.  The result is checked against ``f`` on every validation
    sample and, for closed-form maps, ``f(y) - f(z)`` is checked to be the
    same for several decompositions ``x = y - z``.
    """
    pts = validate_cone_map(f, n_samples=n_samples, seed=seed)
    X, Y = f.domain, f.codomain
    blocks = []
    for a in range(X.n_atoms):
        images = []
        for j in range(X.m_dim):
            g = X.generator(j, a)
            if not f.defined_at(g):
                raise ValueError(f"tabulated cone map lacks generator ({j}, atom {a})")
            images.append(f(g))
        # raw columns of T_a P_a are the atom-a columns of the generator images
        tp = tuple(tuple(img.coords[i][a] for img in images) for i in range(Y.m_dim))
        blocks.append(la.matmul(tp, X.transform.inverses[a]) if X.transform is not None else tp)
    T = Operator(X, Y, tuple(blocks))
    for x in pts:
        if apply(T, x) != f(x):
            raise NotAdditive(f"{f.name} disagrees with its linear extension at {x!r}", x=x)
    if f.rule is not None:
        rng = np.random.default_rng([seed, 1])
        check_well_defined(f, T, rng, n_decompositions)
    return T


def check_well_defined(f: ConeMap, T: Operator, rng: np.random.Generator, n_decompositions: int = 10) -> None:
    """``f(y) - f(z)`` must not depend on how ``x = y - z`` is split."""
    X = f.domain
    x = _random_cone_point(rng, X) - _random_cone_point(rng, X)
    base = None
    for _ in range(n_decompositions):
        w = _random_cone_point(rng, X)
        y, z = pos_part(x) + w, neg_part(x) + w
        val = f(y) - f(z)
        if base is None:
            base = val
        elif val != base:
            raise NotAdditive("extension is not well defined", x=x, y=y, z=z)
    if base != apply(T, x):
        raise NotAdditive("extension disagrees with the difference of cone values", x=x)


# -- directed families ------------------------------------------------------


class NotDirectedError(ValueError):
    def __init__(self, message: str, pair: tuple[int, int]):
        super().__init__(message)
        self.pair = pair


@dataclass(frozen=True)
class DirectedFamily:
    members: tuple[Operator, ...]
    upper_bound: Optional[Operator] = None

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("directed family must be nonempty")
        first = self.members[0]
        for op in self.members[1:]:
            first._check(op)

    def validate(self) -> None:
        ms = self.members
        for i in range(len(ms)):
            for j in range(i + 1, len(ms)):
                if not any(op_leq(ms[i], v) and op_leq(ms[j], v) for v in ms):
                    raise NotDirectedError(f"members {i} and {j} have no common upper bound in the family", (i, j))
        if self.upper_bound is not None:
            for i, op in enumerate(ms):
                if not op_leq(op, self.upper_bound):
                    raise ValueError(f"member {i} is not below the declared upper bound")


def directed_sup(fam: DirectedFamily) -> Operator:
    fam.validate()
    out = fam.members[0]
    for op in fam.members[1:]:
        out = rk_sup(out, op)
    return out


# -- the dual X~ ------------------------------------------------------------


def _check_functional(*phis: Operator):
    for phi in phis:
        Y = phi.codomain
        if Y.m_dim != 1 or Y.transform is not None:
            raise ValueError("dual lattice operations need functionals into A itself (k = 1, standard cone)")


def dual_sup(phi: Operator, psi: Operator) -> Operator:
    _check_functional(phi, psi)
    return rk_sup(phi, psi)


def dual_inf(phi: Operator, psi: Operator) -> Operator:
    _check_functional(phi, psi)
    return rk_inf(phi, psi)


def dual_abs(phi: Operator) -> Operator:
    _check_functional(phi)
    return rk_abs(phi)


def dual_pos(phi: Operator) -> Operator:
    _check_functional(phi)
    return rk_pos(phi)


def dual_neg(phi: Operator) -> Operator:
    _check_functional(phi)
    return rk_neg(phi)
