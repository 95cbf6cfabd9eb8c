"""Seeded random instances with bounded denominators."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

import numpy as np

from . import _linalg as la
from .falgebra import AtomSpace, FElem, Idem
from .operators import Operator
from .pomodule import ConeTransform, ModuleElem, ModuleSpace

TRANSFORM_KINDS = ("none", "monomial", "general")


def trial_rng(seed: int, index: int, salt: int = 0) -> np.random.Generator:
    """Independent stream for trial ``index`` of a campaign seeded by ``seed``."""
    return np.random.default_rng(np.random.SeedSequence([salt, seed, index]))


def rational(rng: np.random.Generator, denom_cap: int = 16, bound: int = 3, nonneg: bool = False) -> Fraction:
    q = int(rng.integers(1, denom_cap + 1))
    lo = 0 if nonneg else -bound * q
    return Fraction(int(rng.integers(lo, bound * q + 1)), q)


def felem(rng, space: AtomSpace, denom_cap: int = 16, bound: int = 3, nonneg: bool = False) -> FElem:
    return FElem(space, tuple(rational(rng, denom_cap, bound, nonneg) for _ in range(space.n_atoms)))


def idem(rng, space: AtomSpace) -> Idem:
    return space.idem_from_int(int(rng.integers(0, 1 << space.n_atoms)))


def monomial_transform(rng, space: AtomSpace, m: int, denom_cap: int = 16) -> ConeTransform:
    perms = [tuple(int(p) for p in rng.permutation(m)) for _ in range(space.n_atoms)]
    diags = [tuple(Fraction(int(rng.integers(1, 2 * denom_cap + 1)), int(rng.integers(1, denom_cap + 1)))
                   for _ in range(m)) for _ in range(space.n_atoms)]
    return ConeTransform.from_monomial(perms, diags)


def general_transform(rng, space: AtomSpace, m: int, denom_cap: int = 16) -> ConeTransform:
    """Monomial matrix times a unit lower-triangular shear.

    The resulting cone differs from the standard one as soon as a shear
    entry is nonzero, so positive operators may have mixed-sign raw blocks.
    """
    mono = monomial_transform(rng, space, m, denom_cap)
    mats = []
    for base in mono.matrices:
        shear = [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
        for i in range(m):
            for j in range(i):
                shear[i][j] = rational(rng, min(denom_cap, 4), bound=1)
        mats.append(la.matmul(base, la.matrix(shear)))
    return ConeTransform(tuple(mats))


def transform(rng, space: AtomSpace, m: int, kind: str, denom_cap: int = 16) -> Optional[ConeTransform]:
    if kind == "none":
        return None
    if kind == "monomial":
        return monomial_transform(rng, space, m, denom_cap)
    if kind == "general":
        return general_transform(rng, space, m, denom_cap)
    raise ValueError(f"unknown transform kind {kind!r}")


def module_space(rng, space: AtomSpace, m: int, denom_cap: int = 16, kinds=TRANSFORM_KINDS) -> ModuleSpace:
    kind = kinds[int(rng.integers(0, len(kinds)))]
    return ModuleSpace(space, m, transform(rng, space, m, kind, denom_cap))


def element(rng, X: ModuleSpace, denom_cap: int = 16, bound: int = 3, positive: bool = False) -> ModuleElem:
    """Random element; positive ones are drawn in cone coordinates."""
    grid = [[rational(rng, denom_cap, bound, nonneg=positive) for _ in range(X.n_atoms)] for _ in range(X.m_dim)]
    return X.from_cone(grid) if positive else X.element(grid)


def operator(rng, X: ModuleSpace, Y: ModuleSpace, denom_cap: int = 16, bound: int = 3,
             positive: bool = False) -> Operator:
    """Random operator; positive ones have nonnegative cone-coordinate blocks."""
    blocks = [
        [[rational(rng, denom_cap, bound, nonneg=positive) for _ in range(X.m_dim)] for _ in range(Y.m_dim)]
        for _ in range(X.n_atoms)
    ]
    return Operator.from_cone(X, Y, blocks) if positive else Operator(X, Y, tuple(blocks))


def dims(rng, max_atoms: int, max_x: int, max_y: int) -> tuple[int, int, int]:
    return (int(rng.integers(1, max_atoms + 1)), int(rng.integers(1, max_x + 1)), int(rng.integers(1, max_y + 1)))
