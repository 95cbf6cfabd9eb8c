"""JSON interchange for instances, objects and reports.

Rationals travel as strings ``"p/q"`` in lowest terms with ``q > 0``
(integers may drop the ``/1``); floats are rejected everywhere.  Matrices
and module elements are flattened row-major.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .falgebra import AtomSpace, FElem, Idem
from .operators import ConeMap, Operator
from .pomodule import ConeTransform, ModuleElem, ModuleSpace

FORMAT_VERSION = 1
CONE_MAP_RULES = ("restriction", "swap", "idempotent-cut")

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")


class ParseError(ValueError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


# -- leaves -----------------------------------------------------------------


def dump_rational(q: Fraction) -> str:
    return str(q)


def parse_rational(s: Any, loc: str = "$") -> Fraction:
    if not isinstance(s, str) or not _RATIONAL.fullmatch(s):
        raise ParseError(loc, f"expected a rational string 'p/q', got {s!r}")
    if "/" in s:
        p, q = (int(t) for t in s.split("/"))
        if q == 0:
            raise ParseError(loc, f"zero denominator in {s!r}")
        if math.gcd(p, q) != 1:
            raise ParseError(loc, f"{s!r} is not in lowest terms")
        return Fraction(p, q)
    return Fraction(int(s))


def _list(obj, loc, length: Optional[int] = None) -> list:
    if not isinstance(obj, list):
        raise ParseError(loc, f"expected an array, got {type(obj).__name__}")
    if length is not None and len(obj) != length:
        raise ParseError(loc, f"expected {length} entries, got {len(obj)}")
    return obj


def _dict(obj, loc) -> dict:
    if not isinstance(obj, dict):
        raise ParseError(loc, f"expected an object, got {type(obj).__name__}")
    return obj


def _get(obj: dict, key: str, loc: str):
    if key not in obj:
        raise ParseError(loc, f"missing field {key!r}")
    return obj[key]


def _int(obj, loc, minimum: Optional[int] = None) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise ParseError(loc, f"expected an integer, got {obj!r}")
    if minimum is not None and obj < minimum:
        raise ParseError(loc, f"expected an integer >= {minimum}, got {obj}")
    return obj


def _rationals(obj, loc, length: Optional[int] = None) -> list[Fraction]:
    return [parse_rational(v, f"{loc}[{i}]") for i, v in enumerate(_list(obj, loc, length))]


def dump_felem(a: FElem) -> list[str]:
    return [dump_rational(v) for v in a.values]


def parse_felem(obj, space: AtomSpace, loc: str = "$") -> FElem:
    return FElem(space, tuple(_rationals(obj, loc, space.n_atoms)))


def dump_idem(p: Idem) -> list[int]:
    return [int(b) for b in p.mask]


def parse_idem(obj, space: AtomSpace, loc: str = "$") -> Idem:
    bits = _list(obj, loc, space.n_atoms)
    for i, b in enumerate(bits):
        if b not in (0, 1) or isinstance(b, bool):
            raise ParseError(f"{loc}[{i}]", f"idempotent entries must be 0 or 1, got {b!r}")
    return Idem(space, tuple(bool(b) for b in bits))


def dump_module_elem(x: ModuleElem) -> dict:
    return {
        "m_dim": x.mspace.m_dim,
        "n_atoms": x.mspace.n_atoms,
        "coords": [dump_rational(v) for row in x.coords for v in row],
    }


def parse_module_elem(obj, X: ModuleSpace, loc: str = "$") -> ModuleElem:
    if isinstance(obj, dict):
        for key, want in (("m_dim", X.m_dim), ("n_atoms", X.n_atoms)):
            if key in obj and obj[key] != want:
                raise ParseError(f"{loc}.{key}", f"expected {want}, got {obj[key]!r}")
        obj = _get(obj, "coords", loc)
        loc = f"{loc}.coords"
    flat = _rationals(obj, loc, X.m_dim * X.n_atoms)
    n = X.n_atoms
    return X.element([flat[j * n:(j + 1) * n] for j in range(X.m_dim)])


def dump_transform(t: Optional[ConeTransform]):
    if t is None:
        return None
    if t.monomial is not None:
        return [{"permutation": list(perm), "diagonal": [dump_rational(d) for d in diag]} for perm, diag in t.monomial]
    return [{"matrix": [dump_rational(v) for row in mat for v in row]} for mat in t.matrices]


def parse_transform(obj, space: AtomSpace, m: int, loc: str) -> Optional[ConeTransform]:
    if obj is None:
        return None
    atoms = _list(obj, loc, space.n_atoms)
    mats, perms, diags = [], [], []
    monomial = True
    for a, spec in enumerate(atoms):
        aloc = f"{loc}[{a}]"
        spec = _dict(spec, aloc)
        if "matrix" in spec:
            monomial = False
            flat = _rationals(spec["matrix"], f"{aloc}.matrix", m * m)
            mats.append([flat[i * m:(i + 1) * m] for i in range(m)])
            continue
        perm = [_int(p, f"{aloc}.permutation[{i}]", 0) for i, p in enumerate(_list(_get(spec, "permutation", aloc), f"{aloc}.permutation", m))]
        diag = _rationals(_get(spec, "diagonal", aloc), f"{aloc}.diagonal", m)
        if sorted(perm) != list(range(m)):
            raise ParseError(f"{aloc}.permutation", f"not a permutation of 0..{m - 1}")
        if any(d <= 0 for d in diag):
            raise ParseError(f"{aloc}.diagonal", "diagonal entries must be strictly positive")
        perms.append(perm)
        diags.append(diag)
        rows = [[Fraction(0)] * m for _ in range(m)]
        for j, (p, d) in enumerate(zip(perm, diag)):
            rows[p][j] = d
        mats.append(rows)
    try:
        if monomial:
            return ConeTransform.from_monomial(perms, diags)
        return ConeTransform(tuple(tuple(tuple(r) for r in mat) for mat in mats))
    except ValueError as exc:
        raise ParseError(loc, str(exc)) from None


def dump_operator_blocks(T: Operator) -> list[list[str]]:
    return [[dump_rational(v) for row in b for v in row] for b in T.blocks]


def parse_operator_blocks(obj, X: ModuleSpace, Y: ModuleSpace, loc: str) -> Operator:
    k, m = Y.m_dim, X.m_dim
    blocks = []
    for a, flat in enumerate(_list(obj, loc, X.n_atoms)):
        vals = _rationals(flat, f"{loc}[{a}]", k * m)
        blocks.append([vals[i * m:(i + 1) * m] for i in range(k)])
    return Operator(X, Y, tuple(blocks))


# -- self-describing values (report counterexamples) -------------------------


def dump_module_space(X: ModuleSpace) -> dict:
    return {"n_atoms": X.n_atoms, "m_dim": X.m_dim, "cone_transform": dump_transform(X.transform)}


def parse_module_space(obj, loc: str = "$") -> ModuleSpace:
    obj = _dict(obj, loc)
    space = AtomSpace(_int(_get(obj, "n_atoms", loc), f"{loc}.n_atoms", 1))
    m = _int(_get(obj, "m_dim", loc), f"{loc}.m_dim", 1)
    return ModuleSpace(space, m, parse_transform(obj.get("cone_transform"), space, m, f"{loc}.cone_transform"))


def dump_value(v):
    """Encode domain objects (recursively inside lists and dicts) as JSON data.

    Module elements and operators carry their spaces so they can be rebuilt
    without an instance file.
    """
    if isinstance(v, FElem):
        return {"felem": dump_felem(v)}
    if isinstance(v, Idem):
        return {"idem": dump_idem(v)}
    if isinstance(v, ModuleElem):
        return {"module": dump_module_space(v.mspace), "coords": dump_module_elem(v)["coords"]}
    if isinstance(v, Operator):
        return {"domain": dump_module_space(v.domain), "codomain": dump_module_space(v.codomain),
                "blocks": dump_operator_blocks(v)}
    if isinstance(v, Fraction):
        return dump_rational(v)
    if isinstance(v, dict):
        return {str(k): dump_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [dump_value(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return repr(v)


def parse_value(obj, loc: str = "$"):
    """Inverse of ``dump_value`` for the domain objects it tags."""
    if isinstance(obj, list):
        return [parse_value(x, f"{loc}[{i}]") for i, x in enumerate(obj)]
    if not isinstance(obj, dict):
        return obj
    if set(obj) == {"felem"}:
        vals = _rationals(obj["felem"], f"{loc}.felem")
        return FElem(AtomSpace(max(len(vals), 1)), tuple(vals))
    if set(obj) == {"idem"}:
        bits = _list(obj["idem"], f"{loc}.idem")
        return parse_idem(bits, AtomSpace(max(len(bits), 1)), f"{loc}.idem")
    if set(obj) == {"module", "coords"}:
        X = parse_module_space(obj["module"], f"{loc}.module")
        return parse_module_elem(obj["coords"], X, f"{loc}.coords")
    if set(obj) == {"domain", "codomain", "blocks"}:
        X = parse_module_space(obj["domain"], f"{loc}.domain")
        Y = parse_module_space(obj["codomain"], f"{loc}.codomain")
        return parse_operator_blocks(obj["blocks"], X, Y, f"{loc}.blocks")
    return {k: parse_value(v, f"{loc}.{k}") for k, v in obj.items()}


# -- instance files ---------------------------------------------------------


@dataclass
class Instance:
    space: AtomSpace
    modules: dict[str, ModuleSpace] = field(default_factory=dict)
    operators: dict[str, Operator] = field(default_factory=dict)
    operator_refs: dict[str, tuple[str, str]] = field(default_factory=dict)
    cone_map_specs: dict[str, dict] = field(default_factory=dict)
    elements: dict[str, Union[FElem, Idem, ModuleElem]] = field(default_factory=dict)
    element_modules: dict[str, str] = field(default_factory=dict)
    seeds: list[int] = field(default_factory=list)
    version: int = FORMAT_VERSION

    def module_id(self, X: ModuleSpace) -> str:
        for name, ms in self.modules.items():
            if ms == X:
                return name
        raise KeyError("module not registered in instance")

    def cone_map(self, name: str) -> ConeMap:
        spec = self.cone_map_specs[name]
        rule = spec.get("rule")
        if rule == "swap":
            return ConeMap.swap(self.modules[spec["module"]])
        if rule == "idempotent-cut":
            return ConeMap.idempotent_cut(self.modules[spec["module"]], parse_idem(spec["idem"], self.space))
        if rule == "restriction":
            return ConeMap.restriction(self.operators[spec["operator"]])
        X, Y = self.modules[spec["domain"]], self.modules[spec["codomain"]]
        pairs = [
            (parse_module_elem(s["x"], X), parse_module_elem(s["fx"], Y)) for s in spec["samples"]
        ]
        return ConeMap.tabulated(X, Y, pairs)


def _parse_cone_map(spec, inst: Instance, loc: str) -> dict:
    spec = _dict(spec, loc)
    if "rule" in spec:
        rule = spec["rule"]
        if rule not in CONE_MAP_RULES:
            raise ParseError(f"{loc}.rule", f"unknown rule {rule!r}; known: {', '.join(CONE_MAP_RULES)}")
        if rule in ("swap", "idempotent-cut"):
            mod = _get(spec, "module", loc)
            if mod not in inst.modules:
                raise ParseError(f"{loc}.module", f"unknown module {mod!r}")
        if rule == "idempotent-cut":
            parse_idem(_get(spec, "idem", loc), inst.space, f"{loc}.idem")
        if rule == "restriction":
            op = _get(spec, "operator", loc)
            if op not in inst.operators:
                raise ParseError(f"{loc}.operator", f"unknown operator {op!r}")
        return spec
    for key in ("domain", "codomain"):
        if _get(spec, key, loc) not in inst.modules:
            raise ParseError(f"{loc}.{key}", f"unknown module {spec[key]!r}")
    X, Y = inst.modules[spec["domain"]], inst.modules[spec["codomain"]]
    for i, s in enumerate(_list(_get(spec, "samples", loc), f"{loc}.samples")):
        sloc = f"{loc}.samples[{i}]"
        parse_module_elem(_get(s, "x", sloc), X, f"{sloc}.x")
        parse_module_elem(_get(s, "fx", sloc), Y, f"{sloc}.fx")
    return spec


def instance_from_dict(doc) -> Instance:
    doc = _dict(doc, "$")
    version = _int(_get(doc, "version", "$"), "$.version")
    if version != FORMAT_VERSION:
        raise ParseError("$.version", f"unsupported version {version}")
    atoms = _get(doc, "atom_space", "$")
    n = _int(_get(atoms, "n_atoms", "$.atom_space") if isinstance(atoms, dict) else atoms, "$.atom_space.n_atoms", 1)
    inst = Instance(AtomSpace(n), version=version)
    ids = set()

    def fresh(name, loc):
        if not isinstance(name, str) or not name:
            raise ParseError(loc, "ids must be nonempty strings")
        if name in ids:
            raise ParseError(loc, f"duplicate id {name!r}")
        ids.add(name)
        return name

    for i, spec in enumerate(_list(doc.get("modules", []), "$.modules")):
        loc = f"$.modules[{i}]"
        spec = _dict(spec, loc)
        name = fresh(_get(spec, "id", loc), f"{loc}.id")
        m = _int(_get(spec, "m_dim", loc), f"{loc}.m_dim", 1)
        t = parse_transform(spec.get("cone_transform"), inst.space, m, f"{loc}.cone_transform")
        inst.modules[name] = ModuleSpace(inst.space, m, t)
    for i, spec in enumerate(_list(doc.get("operators", []), "$.operators")):
        loc = f"$.operators[{i}]"
        spec = _dict(spec, loc)
        name = fresh(_get(spec, "id", loc), f"{loc}.id")
        refs = []
        for key in ("domain", "codomain"):
            ref = _get(spec, key, loc)
            if ref not in inst.modules:
                raise ParseError(f"{loc}.{key}", f"unknown module {ref!r}")
            refs.append(ref)
        X, Y = inst.modules[refs[0]], inst.modules[refs[1]]
        inst.operators[name] = parse_operator_blocks(_get(spec, "blocks", loc), X, Y, f"{loc}.blocks")
        inst.operator_refs[name] = (refs[0], refs[1])
    for i, spec in enumerate(_list(doc.get("cone_maps", []), "$.cone_maps")):
        loc = f"$.cone_maps[{i}]"
        name = fresh(_get(_dict(spec, loc), "id", loc), f"{loc}.id")
        inst.cone_map_specs[name] = _parse_cone_map(spec, inst, loc)
    for i, spec in enumerate(_list(doc.get("elements", []), "$.elements")):
        loc = f"$.elements[{i}]"
        spec = _dict(spec, loc)
        name = fresh(_get(spec, "id", loc), f"{loc}.id")
        kind = _get(spec, "kind", loc)
        if kind == "felem":
            inst.elements[name] = parse_felem(_get(spec, "values", loc), inst.space, f"{loc}.values")
        elif kind == "idem":
            inst.elements[name] = parse_idem(_get(spec, "mask", loc), inst.space, f"{loc}.mask")
        elif kind == "module":
            mod = _get(spec, "module", loc)
            if mod not in inst.modules:
                raise ParseError(f"{loc}.module", f"unknown module {mod!r}")
            inst.elements[name] = parse_module_elem(spec, inst.modules[mod], loc)
            inst.element_modules[name] = mod
        else:
            raise ParseError(f"{loc}.kind", f"unknown element kind {kind!r}")
    inst.seeds = [_int(s, f"$.seeds[{i}]") for i, s in enumerate(_list(doc.get("seeds", []), "$.seeds"))]
    return inst


def instance_to_dict(inst: Instance) -> dict:
    elements = []
    for name, e in inst.elements.items():
        if isinstance(e, FElem):
            elements.append({"id": name, "kind": "felem", "values": dump_felem(e)})
        elif isinstance(e, Idem):
            elements.append({"id": name, "kind": "idem", "mask": dump_idem(e)})
        else:
            elements.append({"id": name, "kind": "module", "module": inst.element_modules[name], **dump_module_elem(e)})
    return {
        "version": inst.version,
        "atom_space": {"n_atoms": inst.space.n_atoms},
        "modules": [
            {"id": name, "m_dim": ms.m_dim, "cone_transform": dump_transform(ms.transform)}
            for name, ms in inst.modules.items()
        ],
        "operators": [
            {"id": name, "domain": inst.operator_refs[name][0], "codomain": inst.operator_refs[name][1],
             "blocks": dump_operator_blocks(T)}
            for name, T in inst.operators.items()
        ],
        "cone_maps": [{"id": name, **{k: v for k, v in spec.items() if k != "id"}}
                      for name, spec in inst.cone_map_specs.items()],
        "elements": elements,
        "seeds": list(inst.seeds),
    }


def _reject_float(value: str):
    raise ParseError("$", f"floating point literal {value} not allowed; use 'p/q' strings")


def loads_instance(text: str) -> Instance:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from None
    return instance_from_dict(doc)


def dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"
