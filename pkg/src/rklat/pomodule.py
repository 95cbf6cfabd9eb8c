"""Partially ordered modules ``A^m`` over the finite f-algebra.

An element is an ``m x n`` grid of rationals: row ``j`` is the ``j``-th
coordinate, column ``a`` is atom ``a``.  The order is given per atom by a
simplicial cone ``P_a R^m_+``; with no transform it is the componentwise
order.  Since ``P_a`` acts inside a single atom it commutes with the module
action, so every such cone is again an A-vector lattice with the Riesz
decomposition property, and every lattice operation is computed by moving
to cone coordinates ``P_a^{-1} x``, working componentwise, and moving back.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from . import _linalg as la
from .falgebra import AtomSpace, DimensionError, FElem, Idem, InvariantViolation

__all__ = [
    "ConeTransform",
    "ModuleSpace",
    "ModuleElem",
    "OrderInterval",
    "LemmaCheck",
    "SizeGuardError",
    "leq",
    "sup",
    "inf",
    "pos_part",
    "neg_part",
    "absolute",
    "interval_vertices",
    "grid_points",
    "support_of_element",
    "scale_interval",
    "check_rdp",
    "scalar_chain_inf",
]

MAX_VERTEX_DIM = 20
# beyond this many (u, v) pairs the reverse RDP inclusion is checked axis by axis
RDP_PAIR_LIMIT = 1 << 13


class SizeGuardError(ValueError):
    """An enumeration would be too large to carry out."""


@dataclass(frozen=True, eq=False)
class ConeTransform:
    """Per-atom invertible ``m x m`` matrices whose columns span the cone.

    ``monomial`` records the (permutation, diagonal) pair when the transform
    was built that way; such cones coincide with the standard cone as sets
    but change the coordinates every computation goes through.
    """

    matrices: tuple[la.Matrix, ...]
    monomial: Optional[tuple[tuple[tuple[int, ...], tuple[Fraction, ...]], ...]] = None
    inverses: tuple[la.Matrix, ...] = field(init=False, repr=False)

    def __post_init__(self):
        mats = tuple(la.matrix(m) for m in self.matrices)
        if not mats:
            raise ValueError("cone transform needs at least one atom")
        m = len(mats[0])
        for mat in mats:
            if la.shape(mat) != (m, m):
                raise DimensionError("cone transform blocks must all be m x m")
        try:
            invs = tuple(la.inverse(mat) for mat in mats)
        except ZeroDivisionError:
            raise ValueError("cone transform must be invertible on every atom") from None
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "inverses", invs)

    @classmethod
    def from_monomial(cls, permutations: Sequence[Sequence[int]], diagonals: Sequence[Sequence]) -> ConeTransform:
        """Column ``j`` of atom ``a``'s matrix is ``diagonals[a][j] * e_{permutations[a][j]}``."""
        mats, spec = [], []
        for perm, diag in zip(permutations, diagonals, strict=True):
            perm = tuple(int(p) for p in perm)
            diag = tuple(la.as_fraction(d) for d in diag)
            m = len(perm)
            if sorted(perm) != list(range(m)) or len(diag) != m:
                raise ValueError(f"not a permutation of range({m}): {perm}")
            if any(d <= 0 for d in diag):
                raise ValueError("monomial diagonal entries must be strictly positive")
            rows = [[Fraction(0)] * m for _ in range(m)]
            for j, (p, d) in enumerate(zip(perm, diag)):
                rows[p][j] = d
            mats.append(la.matrix(rows))
            spec.append((perm, diag))
        return cls(tuple(mats), monomial=tuple(spec))

    @property
    def m_dim(self) -> int:
        return len(self.matrices[0])

    @property
    def n_atoms(self) -> int:
        return len(self.matrices)

    def __eq__(self, other):
        return isinstance(other, ConeTransform) and self.matrices == other.matrices

    def __hash__(self):
        return hash(self.matrices)


@dataclass(frozen=True)
class ModuleSpace:
    space: AtomSpace
    m_dim: int
    transform: Optional[ConeTransform] = None

    def __post_init__(self):
        if not isinstance(self.m_dim, int) or self.m_dim < 1:
            raise ValueError(f"m_dim must be a positive integer, got {self.m_dim!r}")
        t = self.transform
        if t is not None:
            if t.n_atoms != self.space.n_atoms or t.m_dim != self.m_dim:
                raise DimensionError("cone transform shape does not match the module")
            if all(mat == la.identity(self.m_dim) for mat in t.matrices):
                object.__setattr__(self, "transform", None)

    @property
    def n_atoms(self) -> int:
        return self.space.n_atoms

    def element(self, coords: Sequence[Sequence]) -> ModuleElem:
        return ModuleElem(self, tuple(tuple(r) for r in coords))

    def zero(self) -> ModuleElem:
        return self.element([[0] * self.n_atoms for _ in range(self.m_dim)])

    def to_cone_cols(self, coords) -> list[tuple[Fraction, ...]]:
        """Per-atom columns of ``coords`` in cone coordinates."""
        cols = list(zip(*coords))
        if self.transform is None:
            return [tuple(c) for c in cols]
        return [la.matvec(inv, c) for inv, c in zip(self.transform.inverses, cols)]

    def from_cone_cols(self, cols: Sequence[Sequence[Fraction]]) -> ModuleElem:
        if self.transform is not None:
            cols = [la.matvec(mat, c) for mat, c in zip(self.transform.matrices, cols)]
        return ModuleElem(self, tuple(zip(*cols)))

    def from_cone(self, coords: Sequence[Sequence]) -> ModuleElem:
        """Build the element whose cone coordinates (``m x n`` grid) are ``coords``."""
        grid = la.matrix(coords)
        return self.from_cone_cols(list(zip(*grid)))

    def generator(self, j: int, atom: int) -> ModuleElem:
        """Extreme ray ``j`` of the cone, cut down to a single atom."""
        coords = [[0] * self.n_atoms for _ in range(self.m_dim)]
        coords[j][atom] = 1
        return self.from_cone(coords)

    def generators(self) -> list[ModuleElem]:
        return [self.generator(j, a) for a in range(self.n_atoms) for j in range(self.m_dim)]


@dataclass(frozen=True)
class ModuleElem:
    mspace: ModuleSpace
    coords: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        grid = la.matrix(self.coords)
        if la.shape(grid) != (self.mspace.m_dim, self.mspace.n_atoms):
            raise DimensionError(
                f"coords have shape {la.shape(grid)}, expected {(self.mspace.m_dim, self.mspace.n_atoms)}"
            )
        object.__setattr__(self, "coords", grid)

    def cone_coords(self) -> la.Matrix:
        """The ``m x n`` grid of cone coordinates."""
        return tuple(zip(*self.mspace.to_cone_cols(self.coords)))

    def row(self, j: int) -> FElem:
        return FElem(self.mspace.space, self.coords[j])

    def _check(self, other: ModuleElem):
        if not isinstance(other, ModuleElem) or other.mspace != self.mspace:
            raise DimensionError("module elements live in different spaces")

    def __add__(self, other: ModuleElem) -> ModuleElem:
        self._check(other)
        return ModuleElem(self.mspace, la.entrywise(lambda x, y: x + y, self.coords, other.coords))

    def __sub__(self, other: ModuleElem) -> ModuleElem:
        self._check(other)
        return ModuleElem(self.mspace, la.entrywise(lambda x, y: x - y, self.coords, other.coords))

    def __neg__(self) -> ModuleElem:
        return ModuleElem(self.mspace, la.entrywise(lambda x: -x, self.coords))

    def __rmul__(self, scalar) -> ModuleElem:
        """Module action of an algebra element, idempotent, or rational."""
        if isinstance(scalar, Idem):
            scalar = scalar.as_felem()
        if isinstance(scalar, FElem):
            if scalar.space != self.mspace.space:
                raise DimensionError("scalar and module over different atom spaces")
            lam = scalar.values
            return ModuleElem(self.mspace, tuple(tuple(v * l for v, l in zip(row, lam)) for row in self.coords))
        if isinstance(scalar, (int, Fraction)):
            return ModuleElem(self.mspace, la.entrywise(lambda v: v * scalar, self.coords))
        return NotImplemented

    def is_positive(self) -> bool:
        return all(v >= 0 for col in self.mspace.to_cone_cols(self.coords) for v in col)

    def __le__(self, other: ModuleElem) -> bool:
        return leq(self, other)

    def __ge__(self, other: ModuleElem) -> bool:
        return leq(other, self)

    def is_zero(self) -> bool:
        return not any(v for row in self.coords for v in row)

    def __repr__(self):
        rows = "; ".join(" ".join(str(v) for v in row) for row in self.coords)
        return f"ModuleElem[{rows}]"


def leq(x: ModuleElem, y: ModuleElem) -> bool:
    x._check(y)
    return (y - x).is_positive()


def _conewise(f, *elems: ModuleElem) -> ModuleElem:
    ms = elems[0].mspace
    for e in elems[1:]:
        elems[0]._check(e)
    cols = [ms.to_cone_cols(e.coords) for e in elems]
    out = [tuple(f(*vals) for vals in zip(*atom_cols)) for atom_cols in zip(*cols)]
    return ms.from_cone_cols(out)


def sup(x: ModuleElem, y: ModuleElem) -> ModuleElem:
    return _conewise(max, x, y)


def inf(x: ModuleElem, y: ModuleElem) -> ModuleElem:
    return _conewise(min, x, y)


def pos_part(x: ModuleElem) -> ModuleElem:
    return sup(x, x.mspace.zero())


def neg_part(x: ModuleElem) -> ModuleElem:
    return pos_part(-x)


def absolute(x: ModuleElem) -> ModuleElem:
    return sup(x, -x)


@dataclass(frozen=True)
class OrderInterval:
    lo: ModuleElem
    hi: ModuleElem

    def __post_init__(self):
        if not leq(self.lo, self.hi):
            raise ValueError("empty order interval: lo is not below hi")

    def __contains__(self, z: ModuleElem) -> bool:
        return leq(self.lo, z) and leq(z, self.hi)

    @property
    def mspace(self) -> ModuleSpace:
        return self.lo.mspace


def _box(iv: OrderInterval):
    ms = iv.mspace
    lo = ms.to_cone_cols(iv.lo.coords)
    hi = ms.to_cone_cols(iv.hi.coords)
    return ms, lo, hi


def interval_vertices(iv: OrderInterval) -> frozenset[ModuleElem]:
    """Corners of the box ``[lo, hi]`` taken in cone coordinates."""
    ms, lo, hi = _box(iv)
    dim = ms.m_dim * ms.n_atoms
    if dim > MAX_VERTEX_DIM:
        raise SizeGuardError(f"refusing to enumerate 2^{dim} vertices (limit 2^{MAX_VERTEX_DIM})")
    out = set()
    for pick in itertools.product((False, True), repeat=dim):
        # pick is atom-major: atom a, coordinate j at index a*m + j
        cols = [
            tuple(hi[a][j] if pick[a * ms.m_dim + j] else lo[a][j] for j in range(ms.m_dim))
            for a in range(ms.n_atoms)
        ]
        out.add(ms.from_cone_cols(cols))
    return frozenset(out)


def grid_points(iv: OrderInterval, subdiv: int, max_points: int = 1 << 18) -> list[ModuleElem]:
    """Points ``lo + (k/subdiv)(hi - lo)`` per cone coordinate, ``k = 0..subdiv``.

    The grid always contains the vertices of the box.
    """
    if subdiv < 1:
        raise ValueError("subdiv must be >= 1")
    ms, lo, hi = _box(iv)
    axes = []
    for a in range(ms.n_atoms):
        for j in range(ms.m_dim):
            width = hi[a][j] - lo[a][j]
            axes.append(sorted({lo[a][j] + Fraction(k, subdiv) * width for k in range(subdiv + 1)}))
    count = 1
    for ax in axes:
        count *= len(ax)
    if count > max_points:
        raise SizeGuardError(f"grid has {count} points, limit {max_points}")
    pts = []
    for combo in itertools.product(*axes):
        cols = [combo[a * ms.m_dim:(a + 1) * ms.m_dim] for a in range(ms.n_atoms)]
        pts.append(ms.from_cone_cols(cols))
    return pts


def support_of_element(x: ModuleElem) -> Idem:
    space = x.mspace.space
    mask = [False] * space.n_atoms
    for j in range(x.mspace.m_dim):
        for a, v in enumerate(x.coords[j]):
            if v != 0:
                mask[a] = True
    p = Idem(space, tuple(mask))
    if p * x != x:
        raise InvariantViolation(f"{x!r} does not attain its support")
    return p


@dataclass
class LemmaCheck:
    """Outcome of an exhaustive grid check of one lemma instance."""

    name: str
    passed: bool
    counts: dict = field(default_factory=dict)
    witness: Optional[dict] = None


def scale_interval(p: Idem, x: ModuleElem, subdiv: int) -> LemmaCheck:
    """Check ``[0, p x] = p [0, x]`` on the grid of both sides."""
    if not x.is_positive():
        raise ValueError("scale_interval needs x >= 0")
    zero = x.mspace.zero()
    px = p * x
    big = OrderInterval(zero, x)
    small = OrderInterval(zero, px)
    lhs = set(grid_points(small, subdiv))
    rhs = {p * g for g in grid_points(big, subdiv)}
    counts = {"lhs": len(lhs), "rhs": len(rhs)}
    for g in sorted(rhs, key=repr):
        if g not in small:
            return LemmaCheck("interval-scaling", False, counts, {"point": g, "side": "p[0,x] not in [0,px]"})
    for z in sorted(lhs, key=repr):
        # z in [0, px]  =>  z in [0, x] and z = p z
        if z not in big or p * z != z:
            return LemmaCheck("interval-scaling", False, counts, {"point": z, "side": "[0,px] not in p[0,x]"})
    if lhs != rhs:
        diff = sorted(lhs ^ rhs, key=repr)[0]
        return LemmaCheck("interval-scaling", False, counts, {"point": diff, "side": "grid sets differ"})
    return LemmaCheck("interval-scaling", True, counts)


def check_rdp(x: ModuleElem, y: ModuleElem, subdiv: int) -> LemmaCheck:
    """Check ``[0, x+y] = [0, x] + [0, y]`` on grids, with witness ``u = inf(z, x)``."""
    if not (x.is_positive() and y.is_positive()):
        raise ValueError("check_rdp needs x, y >= 0")
    zero = x.mspace.zero()
    ix, iy, ixy = OrderInterval(zero, x), OrderInterval(zero, y), OrderInterval(zero, x + y)
    forward = grid_points(ixy, subdiv)
    for z in forward:
        u = inf(z, x)
        v = z - u
        if u not in ix or v not in iy:
            return LemmaCheck("rdp", False, {"forward": len(forward)}, {"z": z, "u": u, "v": v})
    gx, gy = grid_points(ix, subdiv), grid_points(iy, subdiv)
    if len(gx) * len(gy) <= RDP_PAIR_LIMIT:
        for u in gx:
            for v in gy:
                if u + v not in ixy:
                    return LemmaCheck("rdp", False, {"forward": len(forward)}, {"u": u, "v": v})
        return LemmaCheck("rdp", True, {"forward": len(forward), "reverse": len(gx) * len(gy)})
    # both grids are products of axes in cone coordinates, so pairs can be checked axis by axis
    ms = x.mspace
    xc, yc, sc = ms.to_cone_cols(x.coords), ms.to_cone_cols(y.coords), ms.to_cone_cols((x + y).coords)
    pairs = 0
    for a in range(ms.n_atoms):
        for j in range(ms.m_dim):
            for k in range(subdiv + 1):
                for l in range(subdiv + 1):
                    pairs += 1
                    t = Fraction(k, subdiv) * xc[a][j] + Fraction(l, subdiv) * yc[a][j]
                    if not 0 <= t <= sc[a][j]:
                        return LemmaCheck("rdp", False, {"forward": len(forward)},
                                          {"atom": a, "coordinate": j, "u_step": k, "v_step": l})
    return LemmaCheck("rdp", True, {"forward": len(forward), "reverse_axis_pairs": pairs})


def scalar_chain_inf(lam: FElem, chain: Sequence[ModuleElem]) -> LemmaCheck:
    """Check that scaling a finite descending chain by ``lam >= 0`` scales its infimum."""
    if not chain:
        raise ValueError("empty chain")
    if not lam.is_positive():
        raise ValueError("lambda must be positive")
    for a, b in zip(chain, chain[1:]):
        if not leq(b, a):
            raise ValueError("chain is not descending")
    scaled = [lam * d for d in chain]
    lowest = scaled[0]
    for d in scaled[1:]:
        lowest = inf(lowest, d)
    expected = lam * chain[-1]
    ok = lowest == expected
    return LemmaCheck(
        "scalar-chain-inf", ok, {"length": len(chain)}, None if ok else {"inf": lowest, "expected": expected}
    )

