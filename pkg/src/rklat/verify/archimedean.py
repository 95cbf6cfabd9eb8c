"""Archimedean-type checks on finite instances.

A downward chain ``D`` with infimum 0 is sampled from one of three
flavors: scalar chains ``1/j`` (R), strictly shrinking idempotent chains
(P) and products of the two scaled by a positive function (L).  For a
positive ``x`` the full condition asks that ``D x`` decrease to 0, the
almost condition that only 0 be squeezed between ``-d x`` and ``d x`` for
every ``d``.  Only the positive direction can be exercised: a finite model
is Archimedean in every sense, so these checks certify rather than
separate.

Scalar and product chains never reach 0.  They are stored as a finite
prefix followed by the harmonic tail ``d_{J+i} = d_J J / (J + i)``, which
is what makes ``0`` their infimum; the checkers refute every candidate
lower bound with an explicit index into that tail.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..falgebra import AtomSpace, FElem, Idem, cmp_idem, inf as finf, pos_part
from ..generate import element, felem, trial_rng
from ..pomodule import ModuleElem, ModuleSpace
from ..serialize import dump_value, parse_value
from .report import Report

FLAVORS = ("R", "P", "L")
MODES = ("full", "almost")

_SALT = {"R": 11, "P": 12, "L": 13}


@dataclass(frozen=True)
class DownwardChain:
    elements: tuple[FElem, ...]
    declared_inf: FElem
    harmonic_tail: bool = False
    flavor: str = "R"

    def __post_init__(self):
        els = self.elements
        if not els:
            raise ValueError("empty chain")
        for d in els:
            if not d.is_positive():
                raise ValueError("chain elements must be positive")
        for a, b in zip(els, els[1:]):
            if not (b <= a) or a == b:
                raise ValueError("chain is not strictly descending")
        if self.harmonic_tail:
            if els[-1].is_zero():
                raise ValueError("a harmonic tail must start from a nonzero element")
            if not self.declared_inf.is_zero():
                raise ValueError("a chain with harmonic tail has infimum 0")
        elif self.declared_inf != els[-1]:
            raise ValueError("the infimum of a finite chain is its last element")

    def __len__(self) -> int:
        return len(self.elements)

    def term(self, i: int) -> FElem:
        """Element ``i`` of the chain, reaching into the tail past the prefix."""
        J = len(self.elements)
        if i < J:
            return self.elements[i]
        if not self.harmonic_tail:
            return self.elements[-1]
        return Fraction(J, i + 1) * self.elements[-1]


def _cone(x: ModuleElem) -> list[tuple[Fraction, ...]]:
    return x.mspace.to_cone_cols(x.coords)


def _witness_index(chain: DownwardChain, x: ModuleElem, bound: ModuleElem) -> Optional[int]:
    """An index ``i`` with ``d_i |x| < |bound|`` in some cone coordinate.

    ``None`` means ``|bound| <= d x`` for every ``d`` of the chain, i.e. the
    bound survives; by construction this can only happen when ``bound = 0``.
    """
    xs, bs = _cone(x), _cone(bound)

    def refutes(d: FElem) -> bool:
        return any(d.values[a] * xv < abs(bv) for a, (xc, bc) in enumerate(zip(xs, bs)) for xv, bv in zip(xc, bc))

    # descending chain: once an element refutes, all later ones do
    J = len(chain.elements)
    if refutes(chain.elements[-1]):
        lo, hi = 0, J - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if refutes(chain.elements[mid]):
                hi = mid
            else:
                lo = mid + 1
        return lo
    if not chain.harmonic_tail:
        return None
    last = chain.elements[-1]
    best = None
    for a, (xc, bc) in enumerate(zip(xs, bs)):
        for xv, bv in zip(xc, bc):
            if bv == 0:
                continue
            # d_{J-1+t} = last * J / (J + t) at atom a; want last_a J xv < |bv| (J + t)
            t = math.floor(last.values[a] * J * xv / abs(bv)) - J + 1
            i = J - 1 + max(t, 1)
            best = i if best is None else min(best, i)
    return best


def _squeezed(d: FElem, x: ModuleElem, y: ModuleElem) -> bool:
    dx = d * x
    return (-dx) <= y <= dx


def check_chain(chain: DownwardChain, x: ModuleElem, candidate: ModuleElem, mode: str) -> Optional[dict]:
    """Refute ``candidate`` as an obstruction; return a violation or ``None``.

    In full mode the candidate is a positive lower bound for ``D x``; in
    almost mode it is an element to be squeezed.  The refuting index is
    re-checked with exact order relations before it is accepted.
    """
    if mode == "full" and not candidate.is_positive():
        raise ValueError("full-mode candidates must be positive")
    if candidate.is_zero():
        return None
    i = _witness_index(chain, x, candidate)
    if i is not None:
        d = chain.term(i)
        refuted = not (candidate <= d * x) if mode == "full" else not _squeezed(d, x, candidate)
        if refuted:
            return None
    return {"chain": list(chain.elements), "harmonic_tail": chain.harmonic_tail, "flavor": chain.flavor,
            "mode": mode, "x": x, "candidate": candidate, "index": i}


def replay_archimedean(counterexample: dict) -> bool:
    """Re-evaluate a serialized violation; ``True`` if it is a genuine one.

    A violation is genuine when the candidate is nonzero and satisfies the
    order relations against every element of the chain, with the tail
    accounted for through its infimum.
    """
    ce = parse_value(counterexample)
    chain = ce["chain"]
    x, cand = ce["x"], ce["candidate"]
    if cand.is_zero():
        return False
    if ce["harmonic_tail"]:
        # the tail decreases to 0, which bounds it from below
        chain = chain + [chain[-1].space.zero()]
    if ce["mode"] == "full":
        return all(cand <= d * x for d in chain)
    return all(_squeezed(d, x, cand) for d in chain)


# -- chain generators -------------------------------------------------------


def scalar_chain(space: AtomSpace, length: int) -> DownwardChain:
    els = tuple(space.const(Fraction(1, j)) for j in range(1, length + 1))
    return DownwardChain(els, space.zero(), harmonic_tail=True, flavor="R")


def idempotent_chains(space: AtomSpace, to_zero: bool = True) -> list[tuple[Idem, ...]]:
    """Every strictly descending idempotent chain starting at 1.

    With ``to_zero`` the chains end at 0; otherwise all nonempty prefixes
    are included too.  Meant for small atom counts.
    """
    out = []

    def walk(chain):
        top = chain[-1]
        if top.is_zero() or not to_zero:
            out.append(tuple(chain))
        for sub in range(top.bits()):
            if sub & top.bits() == sub:
                walk(chain + [space.idem_from_int(sub)])

    walk([space.idem_from_int((1 << space.n_atoms) - 1)])
    return out


def random_idempotent_chain(rng, space: AtomSpace) -> tuple[Idem, ...]:
    """Drop a random nonempty set of atoms at every step until nothing is left."""
    bits = (1 << space.n_atoms) - 1
    chain = [space.idem_from_int(bits)]
    while bits:
        drop = 0
        while drop == 0:
            drop = int(rng.integers(1, bits + 1)) & bits
        bits &= ~drop
        chain.append(space.idem_from_int(bits))
    return tuple(chain)


def idem_chain(ps: Sequence[Idem]) -> DownwardChain:
    els = tuple(p.as_felem() for p in ps)
    return DownwardChain(els, els[-1], harmonic_tail=False, flavor="P")


def product_chain(lam: FElem, ps: Sequence[Idem], hold: int = 1) -> DownwardChain:
    """``d_j = (1/j) lam pi_{ceil(j/hold)}`` for ``j = 1 .. hold * len(ps)``."""
    if not lam.is_positive():
        raise ValueError("lambda must be positive")
    els = []
    for j in range(1, hold * len(ps) + 1):
        d = Fraction(1, j) * (ps[(j - 1) // hold] * lam)
        if els and d == els[-1]:
            continue
        els.append(d)
        if d.is_zero():
            break
    zero = lam.space.zero()
    if els[-1].is_zero():
        return DownwardChain(tuple(els), zero, harmonic_tail=False, flavor="L")
    return DownwardChain(tuple(els), zero, harmonic_tail=True, flavor="L")


# -- campaigns --------------------------------------------------------------


def _candidates(rng, chain: DownwardChain, x: ModuleElem, mode: str, denom_cap: int) -> list[ModuleElem]:
    """Obstruction candidates: prefix bounds, their halves and random elements."""
    last = chain.elements[-1] * x
    out = [last, Fraction(1, 2) * last, chain.elements[0] * x]
    for _ in range(2):
        out.append(element(rng, x.mspace, denom_cap, bound=1, positive=(mode == "full")))
    if mode == "almost":
        out += [-last, (-1) * (Fraction(1, 3) * last)]
    return out


def _chain_for(flavor: str, rng, space: AtomSpace, index: int, trials: int, denom_cap: int,
               small_chains: Optional[list]) -> DownwardChain:
    if flavor == "R":
        return scalar_chain(space, max(trials, 1))
    if flavor == "P":
        ps = small_chains[index % len(small_chains)] if small_chains else random_idempotent_chain(rng, space)
        return idem_chain(ps)
    lam = felem(rng, space, denom_cap, bound=3, nonneg=True)
    if lam.is_zero():
        lam = space.one()
    if small_chains:
        ps = small_chains[index % len(small_chains)]
    else:
        full = random_idempotent_chain(rng, space)
        ps = full[:int(rng.integers(1, len(full) + 1))]
    return product_chain(lam, ps, hold=int(rng.integers(1, 4)))


def check_archimedean(X: ModuleSpace, flavor: str, mode: str = "full", trials: int = 100, seed: int = 0,
                      denom_cap: int = 16) -> Report:
    """Sample chains of one flavor and positive ``x`` and refute every obstruction."""
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")
    start = time.perf_counter()
    space = X.space
    small = None
    if space.n_atoms <= 3 and flavor != "R":
        small = idempotent_chains(space, to_zero=(flavor == "P"))
    r_chain = scalar_chain(space, max(trials, 1)) if flavor == "R" else None
    failure = None
    for t in range(trials):
        rng = trial_rng(seed, t, _SALT[flavor])
        chain = r_chain or _chain_for(flavor, rng, space, t, trials, denom_cap, small)
        x = element(rng, X, denom_cap, positive=True)
        for cand in _candidates(rng, chain, x, mode, denom_cap):
            found = check_chain(chain, x, cand, mode)
            if found is not None:
                failure = {"trial": t, **dump_value(found)}
                break
        if failure:
            break
    warnings = ["no trials run"] if trials == 0 else []
    return Report("archimedean", trials, seed, failure is None, counterexample=failure,
                  elapsed_ms=round((time.perf_counter() - start) * 1000, 3), warnings=warnings)


def split_at(lam: FElem, r) -> tuple[FElem, FElem]:
    """``lam = lam ^ r + (lam - r)^+``."""
    rr = lam.space.const(r)
    return finf(lam, rr), pos_part(lam - rr)


def check_arch_combination(X: ModuleSpace, trials: int = 100, seed: int = 0, denom_cap: int = 16) -> Report:
    """R and P together give L, and the splitting identity behind it holds."""
    start = time.perf_counter()
    outcome = {}
    failure = None
    for flavor in FLAVORS:
        for mode in MODES:
            rep = check_archimedean(X, flavor, mode, trials, seed, denom_cap)
            outcome[f"{flavor}-{mode}"] = rep.passed
            if not rep.passed and failure is None:
                failure = {"flavor": flavor, "mode": mode, **rep.counterexample}
    for mode in MODES:
        if outcome[f"R-{mode}"] and outcome[f"P-{mode}"] and not outcome[f"L-{mode}"]:
            failure = failure or {"implication": mode, "outcome": outcome}
    space = X.space
    for t in range(trials if failure is None else 0):
        rng = trial_rng(seed, t, 14)
        lam = felem(rng, space, denom_cap, bound=4, nonneg=True)
        r = Fraction(int(rng.integers(0, 4 * denom_cap + 1)), int(rng.integers(1, denom_cap + 1)))
        low, high = split_at(lam, r)
        if low + high != lam or not (low <= space.const(r)) or not high.is_positive():
            failure = {"trial": t, "check": "split", **dump_value({"lambda": lam, "r": r})}
            break
        # pi_{r < lam} shrinks to 0 as r grows past max(lam)
        top = max(lam.values)
        prev = None
        for s in range(0, math.floor(top) + 2):
            p = cmp_idem(space.const(s), lam)
            if prev is not None and not (p <= prev):
                failure = {"trial": t, "check": "cut-monotone", **dump_value({"lambda": lam, "s": s})}
                break
            prev = p
        if failure is None and not prev.is_zero():
            failure = {"trial": t, "check": "cut-vanishes", **dump_value({"lambda": lam})}
        if failure:
            break
    warnings = ["no trials run"] if trials == 0 else []
    return Report("archimedean", trials, seed, failure is None, counterexample=failure,
                  elapsed_ms=round((time.perf_counter() - start) * 1000, 3), warnings=warnings)
