"""Exact finite models of f-algebras, ordered modules over them and their operator lattices."""

from .falgebra import AtomSpace, DimensionError, FElem, Idem, InvariantViolation, NotInvertibleError
from .operators import (
    ConeMap,
    DirectedFamily,
    ExtensionError,
    NotAdditive,
    NotDirectedError,
    NotPHomogeneous,
    NotPositive,
    Operator,
    apply,
    directed_sup,
    extend_cone_map,
    rk_abs,
    rk_inf,
    rk_neg,
    rk_pos,
    rk_sup,
)
from .pomodule import ConeTransform, ModuleElem, ModuleSpace, OrderInterval, SizeGuardError

__version__ = "0.1.0"

__all__ = [
    "AtomSpace",
    "ConeMap",
    "ConeTransform",
    "DimensionError",
    "DirectedFamily",
    "ExtensionError",
    "FElem",
    "Idem",
    "InvariantViolation",
    "ModuleElem",
    "ModuleSpace",
    "NotAdditive",
    "NotDirectedError",
    "NotInvertibleError",
    "NotPHomogeneous",
    "NotPositive",
    "Operator",
    "OrderInterval",
    "SizeGuardError",
    "apply",
    "directed_sup",
    "extend_cone_map",
    "rk_abs",
    "rk_inf",
    "rk_neg",
    "rk_pos",
    "rk_sup",
]
