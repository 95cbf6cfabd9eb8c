"""Brute-force oracles.

Nothing in here calls the closed-form lattice operations of
``rklat.operators``.  The Riesz-Kantorovich oracles enumerate every vertex
(or grid point) of the order interval jointly over all coordinates and
atoms, evaluate the candidate set directly and take coordinatewise extrema
in the codomain's cone coordinates.  Arithmetic is done on integers after
clearing denominators, so it is exact and independent of ``Fraction``
matrix code used elsewhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from ..falgebra import FElem, Idem
from ..operators import Operator
from ..pomodule import ModuleElem, ModuleSpace, SizeGuardError

_INT64_SAFE = 1 << 62


@dataclass(frozen=True)
class OracleConfig:
    subdiv: int = 4
    use_vertices: bool = True
    max_points: int = 1 << 16

    def __post_init__(self):
        if self.subdiv < 1:
            raise ValueError("subdiv must be >= 1")
        if self.max_points < 1:
            raise ValueError("max_points must be >= 1")


@lru_cache(maxsize=64)
def _levels_table(m: int, n: int, levels: tuple[int, ...]) -> np.ndarray:
    """Every assignment of ``levels`` to the ``m x n`` coordinates, shape ``(V, m, n)``."""
    base = len(levels)
    dim = m * n
    idx = np.arange(base**dim, dtype=np.int64)
    digits = np.empty((idx.size, dim), dtype=np.int64)
    for p in range(dim):
        digits[:, p] = (idx // base**p) % base
    lv = np.asarray(levels, dtype=np.int64)[digits]
    # position p = atom * m + coordinate
    out = lv.reshape(idx.size, n, m).transpose(0, 2, 1).copy()
    out.setflags(write=False)
    return out


def _coefficients(m: int, n: int, cfg: OracleConfig, symmetric: bool) -> tuple[np.ndarray, int]:
    if cfg.use_vertices:
        levels, den = ((-1, 1) if symmetric else (0, 1)), 1
    else:
        s = cfg.subdiv
        levels = tuple(range(-s, s + 1, 2)) if symmetric else tuple(range(s + 1))
        den = s
    count = len(levels) ** (m * n)
    if count > cfg.max_points:
        raise SizeGuardError(f"oracle would enumerate {count} points (limit {cfg.max_points})")
    return _levels_table(m, n, levels), den


def _fr_matrix(rows) -> np.ndarray:
    return np.array([[Fraction(v) for v in row] for row in rows], dtype=object)


def _cone_block(T: Operator, a: int) -> np.ndarray:
    """Block of atom ``a`` seen from cone coordinates on both sides."""
    B = _fr_matrix(T.blocks[a])
    if T.codomain.transform is not None:
        B = _fr_matrix(T.codomain.transform.inverses[a]).dot(B)
    if T.domain.transform is not None:
        B = B.dot(_fr_matrix(T.domain.transform.matrices[a]))
    return B


def _cone_column(x: ModuleElem, a: int) -> np.ndarray:
    col = np.array([Fraction(x.coords[j][a]) for j in range(x.mspace.m_dim)], dtype=object)
    if x.mspace.transform is not None:
        col = _fr_matrix(x.mspace.transform.inverses[a]).dot(col)
    return col


_FLOAT_EXACT = 1 << 53


def _scaled_columns(mats: Sequence[np.ndarray]) -> tuple[list[np.ndarray], list[int]]:
    """Clear denominators column by column, the same factor across all ``mats``."""
    ncols = mats[0].shape[1]
    scales = []
    for c in range(ncols):
        dens = [v.denominator for M in mats for v in M[:, c]]
        scales.append(math.lcm(*dens))
    ints = [
        np.array([[v.numerator * (scales[c] // v.denominator) for c, v in enumerate(row)] for row in M], dtype=object)
        for M in mats
    ]
    return ints, scales


def _matmul_exact(C: np.ndarray, W: np.ndarray, bound: int) -> np.ndarray:
    """``C @ W`` for integer arrays given ``|C @ W| <= bound`` entrywise.

    Below 2**53 every partial sum is an exactly representable integer, so
    the float path is exact; beyond 2**62 Python integers take over.
    """
    if bound < _FLOAT_EXACT:
        return np.rint(C.astype(np.float64) @ W.astype(np.float64)).astype(np.int64)
    if bound < _INT64_SAFE:
        return C.astype(np.int64) @ W.astype(np.int64)
    return C.astype(object) @ W.astype(object)


def _box_extrema(terms: list[tuple[Operator, bool]], xs: Sequence[ModuleElem], cfg: OracleConfig,
                 symmetric: bool) -> tuple[list, list]:
    """Coordinatewise max and min of ``sum_t T_t(y_t)`` over the box, for each point.

    Each term is ``(T, complementary)``; ``y`` runs over the points of
    ``[0, x]`` (or ``[-x, x]`` when ``symmetric``) and a complementary term
    is evaluated at ``x - y`` instead of ``y``.  For every ``x`` in ``xs``
    the result is a list of per-atom columns in the codomain's cone
    coordinates.
    """
    X = xs[0].mspace
    for T, _ in terms:
        if T.domain != X:
            raise ValueError("operator and point live in different modules")
    k = terms[0][0].codomain.m_dim
    coef, den = _coefficients(X.m_dim, X.n_atoms, cfg, symmetric)
    coef_max = max(int(np.abs(coef).max()), den)
    blocks = [[_cone_block(T, a) for a in range(X.n_atoms)] for T, _ in terms]
    hi = [[None] * X.n_atoms for _ in xs]
    lo = [[None] * X.n_atoms for _ in xs]
    for a in range(X.n_atoms):
        cols = [_cone_column(x, a) for x in xs]
        # term t: m x (P k) weights, column block i belongs to point i
        weights = [np.concatenate([xa[:, None] * B[a].T for xa in cols], axis=1) for B in blocks]
        ints, scales = _scaled_columns(weights)
        col_bound = [sum(abs(int(v)) for W in ints for v in W[:, c]) for c in range(len(scales))]
        bound = coef_max * max(col_bound)
        C = coef[:, :, a]
        total = None
        for (_, comp), W in zip(terms, ints):
            part = _matmul_exact((den - C) if comp else C, W, bound)
            total = part if total is None else total + part
        top, bottom = total.max(axis=0), total.min(axis=0)
        for i in range(len(xs)):
            sl = range(i * k, (i + 1) * k)
            hi[i][a] = [Fraction(int(top[c]), scales[c] * den) for c in sl]
            lo[i][a] = [Fraction(int(bottom[c]), scales[c] * den) for c in sl]
    return hi, lo


def _from_cone_cols(Y: ModuleSpace, cols) -> ModuleElem:
    return Y.from_cone_cols([tuple(c) for c in cols])


def _require_positive(xs: Sequence[ModuleElem]):
    for x in xs:
        if not x.is_positive():
            raise ValueError("the oracle needs x >= 0")


def oracle_rk_sup(S: Operator, T: Operator, x: ModuleElem, cfg: OracleConfig = OracleConfig()) -> ModuleElem:
    """``sup {S(y) + T(x - y) : y in [0, x]}`` by enumeration."""
    _require_positive([x])
    hi, _ = _box_extrema([(S, False), (T, True)], [x], cfg, symmetric=False)
    return _from_cone_cols(S.codomain, hi[0])


def oracle_rk_inf(S: Operator, T: Operator, x: ModuleElem, cfg: OracleConfig = OracleConfig()) -> ModuleElem:
    _require_positive([x])
    _, lo = _box_extrema([(S, False), (T, True)], [x], cfg, symmetric=False)
    return _from_cone_cols(S.codomain, lo[0])


def oracle_rk_pos(S: Operator, x: ModuleElem, cfg: OracleConfig = OracleConfig()) -> ModuleElem:
    """``sup {S(y) : y in [0, x]}``."""
    _require_positive([x])
    hi, _ = _box_extrema([(S, False)], [x], cfg, symmetric=False)
    return _from_cone_cols(S.codomain, hi[0])


def oracle_rk_neg(S: Operator, x: ModuleElem, cfg: OracleConfig = OracleConfig()) -> ModuleElem:
    """``-inf {S(y) : y in [0, x]}``, the value of the positive operator ``S^-``."""
    _require_positive([x])
    _, lo = _box_extrema([(S, False)], [x], cfg, symmetric=False)
    return _from_cone_cols(S.codomain, [[-v for v in col] for col in lo[0]])


def oracle_rk_abs(S: Operator, x: ModuleElem, cfg: OracleConfig = OracleConfig()) -> ModuleElem:
    """``sup {S(y) : y in [-x, x]}``."""
    _require_positive([x])
    hi, _ = _box_extrema([(S, False)], [x], cfg, symmetric=True)
    return _from_cone_cols(S.codomain, hi[0])


def oracle_rk_all(S: Operator, T: Operator, xs: Sequence[ModuleElem],
                  cfg: OracleConfig = OracleConfig()) -> list[dict[str, ModuleElem]]:
    """All five formulas at every point of ``xs``, three enumerations in total.

    Keys: ``sup``, ``inf`` (of ``S`` and ``T``), ``pos``, ``neg``, ``abs`` (of ``S``).
    """
    xs = list(xs)
    _require_positive(xs)
    Y = S.codomain
    st_hi, st_lo = _box_extrema([(S, False), (T, True)], xs, cfg, symmetric=False)
    s_hi, s_lo = _box_extrema([(S, False)], xs, cfg, symmetric=False)
    abs_hi, _ = _box_extrema([(S, False)], xs, cfg, symmetric=True)
    return [
        {
            "sup": _from_cone_cols(Y, st_hi[i]),
            "inf": _from_cone_cols(Y, st_lo[i]),
            "pos": _from_cone_cols(Y, s_hi[i]),
            "neg": _from_cone_cols(Y, [[-v for v in col] for col in s_lo[i]]),
            "abs": _from_cone_cols(Y, abs_hi[i]),
        }
        for i in range(len(xs))
    ]


def oracle_box_points(x: ModuleElem, cfg: OracleConfig = OracleConfig(), symmetric: bool = False) -> set[ModuleElem]:
    """The points the oracle enumerates, as module elements (small cases only)."""
    X = x.mspace
    coef, den = _coefficients(X.m_dim, X.n_atoms, cfg, symmetric)
    xa = [_cone_column(x, a) for a in range(X.n_atoms)]
    out = set()
    for row in coef:
        cols = [tuple(Fraction(int(row[j, a]), den) * xa[a][j] for j in range(X.m_dim)) for a in range(X.n_atoms)]
        out.add(X.from_cone_cols(cols))
    return out


def oracle_pointwise_sup(ops: Sequence[Operator], x: ModuleElem) -> ModuleElem:
    """Coordinatewise supremum, in cone coordinates, of ``T(x)`` over ``ops``."""
    Y = ops[0].codomain
    images = []
    for T in ops:
        y = np.array([[Fraction(v) for v in row] for row in T(x).coords], dtype=object)
        if Y.transform is not None:
            y = np.stack([_fr_matrix(Y.transform.inverses[a]).dot(y[:, a]) for a in range(Y.n_atoms)], axis=1)
        images.append(y)
    best = images[0].copy()
    for img in images[1:]:
        best = np.where(img > best, img, best)
    return _from_cone_cols(Y, [list(best[:, a]) for a in range(Y.n_atoms)])


def oracle_support(a: FElem) -> Idem:
    """Meet of every idempotent ``p`` with ``p a = a``, by enumeration."""
    space = a.space
    bits = (1 << space.n_atoms) - 1
    for cand in range(1 << space.n_atoms):
        if space.idem_from_int(cand) * a == a:
            bits &= cand
    return space.idem_from_int(bits)
