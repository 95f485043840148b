"""The JSON document format: named algebras, modules, comma data,
presentations, families, universes and tasks.

Matrices are arrays of arrays of integers (residues); structure
constants are triply nested arrays mul[i][j][k]; a comma object's phi is
stored dim B x (dim U * dim A) with column index u_index * dim A +
a_index.  Every reference must resolve and every object must pass its
validation before any task runs; errors carry the offending path.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Optional

from .algebra import Bimodule, FDAlgebra, TriangularAlgebra, triangular_algebra, validate_algebra, validate_bimodule
from .comma import CommaObject, RightTModule, to_T_module, validate_comma, validate_right_t
from .linalg import FpMatrix
from .modules import LEFT, RIGHT, ModuleMap, ModuleRep, validate_module
from .presentations import Presentation, validate_presentation
from .torsion import (
    ModuleFamily,
    comma_family,
    family_all,
    family_d_sigma,
    family_explicit,
    family_gen,
    family_zero,
    perp_left,
    perp_right,
    perp_right_modules,
)


class DocumentError(ValueError):
    """Parse or validation failure, with the offending path."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(f"{path}: {message}")
        self.path = path
        self.message = message


@dataclass
class Document:
    p: int
    algebras: dict[str, FDAlgebra] = field(default_factory=dict)
    bimodules: dict[str, Bimodule] = field(default_factory=dict)
    triangulars: dict[str, TriangularAlgebra] = field(default_factory=dict)
    modules: dict[str, ModuleRep] = field(default_factory=dict)
    comma_objects: dict[str, CommaObject] = field(default_factory=dict)
    right_t_modules: dict[str, RightTModule] = field(default_factory=dict)
    presentations: dict[str, Presentation] = field(default_factory=dict)
    families: dict[str, ModuleFamily] = field(default_factory=dict)
    universes: dict[str, list[ModuleRep]] = field(default_factory=dict)
    tasks: list[dict] = field(default_factory=list)
    raw: dict = field(default_factory=dict)


def _matrix(p: int, data: Any, path: str, rows: Optional[int] = None, cols: Optional[int] = None) -> FpMatrix:
    try:
        m = FpMatrix(p, data)
    except (ValueError, TypeError) as exc:
        raise DocumentError(path, f"malformed matrix: {exc}") from None
    if rows is not None and m.rows != rows:
        raise DocumentError(path, f"expected {rows} rows, got {m.rows}")
    if cols is not None and m.cols != cols:
        raise DocumentError(path, f"expected {cols} columns, got {m.cols}")
    return m


def _lookup(table: dict, name: str, path: str, kind: str):
    if name not in table:
        raise DocumentError(path, f"unresolved {kind} reference {name!r}")
    return table[name]


def parse_document(data: dict, collect: Optional[list] = None) -> Document:
    """Build and validate all named objects.

    With ``collect`` as a list, violations are appended there and the
    offending objects skipped (best effort); otherwise the first
    violation raises DocumentError.
    """

    def report(exc: DocumentError) -> None:
        if collect is None:
            raise exc
        collect.append({"path": exc.path, "message": exc.message})

    fieldrec = data.get("field")
    if not isinstance(fieldrec, dict) or "p" not in fieldrec:
        raise DocumentError("field", "missing field record with the prime p")
    p = fieldrec["p"]
    if not isinstance(p, int):
        raise DocumentError("field.p", "p must be an integer")
    try:
        FpMatrix(p, [[0]])
    except ValueError as exc:
        raise DocumentError("field.p", str(exc)) from None
    doc = Document(p=p, raw=data)

    for name, rec in (data.get("algebras") or {}).items():
        path = f"algebras.{name}"
        try:
            try:
                alg = FDAlgebra(p, rec["mul"], rec["unit"], label=name)
            except (KeyError, ValueError, TypeError) as exc:
                raise DocumentError(path, f"malformed algebra: {exc}") from None
            bad = validate_algebra(alg)
            if bad:
                raise DocumentError(path, f"invalid algebra: {bad[0]}")
            doc.algebras[name] = alg
        except DocumentError as exc:
            report(exc)

    for name, rec in (data.get("bimodules") or {}).items():
        path = f"bimodules.{name}"
        try:
            s_alg = _lookup(doc.algebras, rec.get("s_algebra", ""), path, "algebra")
            r_alg = _lookup(doc.algebras, rec.get("r_algebra", ""), path, "algebra")
            dim = rec.get("dim")
            if not isinstance(dim, int) or dim < 0:
                raise DocumentError(path, "dim must be a nonnegative integer")
            left = [
                _matrix(p, m, f"{path}.left_action[{i}]", dim, dim)
                for i, m in enumerate(rec.get("left_action", []))
            ]
            right = [
                _matrix(p, m, f"{path}.right_action[{i}]", dim, dim)
                for i, m in enumerate(rec.get("right_action", []))
            ]
            try:
                u = Bimodule(s_alg, r_alg, dim, left, right, label=name)
            except ValueError as exc:
                raise DocumentError(path, str(exc)) from None
            bad = validate_bimodule(u)
            if bad:
                raise DocumentError(path, f"invalid bimodule: {bad[0]}")
            doc.bimodules[name] = u
            doc.triangulars[name] = triangular_algebra(r_alg, s_alg, u, label=f"T[{name}]")
        except DocumentError as exc:
            report(exc)

    for name, rec in (data.get("modules") or {}).items():
        path = f"modules.{name}"
        try:
            alg = _lookup(doc.algebras, rec.get("algebra", ""), path, "algebra")
            side = rec.get("side", LEFT)
            if side not in (LEFT, RIGHT):
                raise DocumentError(path, f"side must be 'left' or 'right', got {side!r}")
            dim = rec.get("dim")
            if not isinstance(dim, int) or dim < 0:
                raise DocumentError(path, "dim must be a nonnegative integer")
            action = [
                _matrix(p, m, f"{path}.action[{i}]", dim, dim)
                for i, m in enumerate(rec.get("action", []))
            ]
            if len(action) != alg.dim:
                raise DocumentError(path, f"need {alg.dim} action matrices, got {len(action)}")
            mod = ModuleRep(alg, side, dim, action, label=name)
            bad = validate_module(mod)
            if bad:
                raise DocumentError(path, f"invalid module: {bad[0]}")
            doc.modules[name] = mod
        except DocumentError as exc:
            report(exc)

    for name, rec in (data.get("comma_objects") or {}).items():
        path = f"comma_objects.{name}"
        try:
            u = _lookup(doc.bimodules, rec.get("bimodule", ""), path, "bimodule")
            a = _lookup(doc.modules, rec.get("A", ""), path, "module")
            b = _lookup(doc.modules, rec.get("B", ""), path, "module")
            phi = _matrix(p, rec.get("phi", []), f"{path}.phi")
            if phi.rows == 0 and phi.cols == 0:
                phi = FpMatrix.zeros(p, b.dim, u.dim * a.dim)
            try:
                c = CommaObject(u, a, b, phi, label=name)
            except ValueError as exc:
                raise DocumentError(path, str(exc)) from None
            bad = validate_comma(c)
            if bad:
                raise DocumentError(path, f"invalid comma object: {bad[0]}")
            doc.comma_objects[name] = c
        except DocumentError as exc:
            report(exc)

    for name, rec in (data.get("right_t_modules") or {}).items():
        path = f"right_t_modules.{name}"
        try:
            u = _lookup(doc.bimodules, rec.get("bimodule", ""), path, "bimodule")
            x = _lookup(doc.modules, rec.get("X", ""), path, "module")
            y = _lookup(doc.modules, rec.get("Y", ""), path, "module")
            psi = _matrix(p, rec.get("psi", []), f"{path}.psi")
            if psi.rows == 0 and psi.cols == 0:
                psi = FpMatrix.zeros(p, x.dim, y.dim * u.dim)
            try:
                rt = RightTModule(u, x, y, psi, label=name)
            except ValueError as exc:
                raise DocumentError(path, str(exc)) from None
            bad = validate_right_t(rt)
            if bad:
                raise DocumentError(path, f"invalid right T-module: {bad[0]}")
            doc.right_t_modules[name] = rt
        except DocumentError as exc:
            report(exc)

    def resolve_module(name: str, path: str) -> ModuleRep:
        if name in doc.modules:
            return doc.modules[name]
        if name in doc.comma_objects:
            c = doc.comma_objects[name]
            t = doc.triangulars[c.bimodule.label]
            return to_T_module(c, t).relabel(name)
        raise DocumentError(path, f"unresolved module reference {name!r}")

    for name, rec in (data.get("presentations") or {}).items():
        path = f"presentations.{name}"
        try:
            src = resolve_module(rec.get("source", ""), f"{path}.source")
            tgt = resolve_module(rec.get("target", ""), f"{path}.target")
            mod = resolve_module(rec.get("module", ""), f"{path}.module")
            sigma = ModuleMap(
                src, tgt, _matrix(p, rec.get("sigma", []), f"{path}.sigma", tgt.dim, src.dim)
            )
            witness = ModuleMap(
                tgt, mod, _matrix(p, rec.get("witness", []), f"{path}.witness", mod.dim, tgt.dim)
            )
            pres = Presentation(sigma=sigma, target=mod, witness=witness)
            bad = validate_presentation(pres)
            if bad:
                raise DocumentError(path, f"not exact: {bad[0]}")
            doc.presentations[name] = pres
        except DocumentError as exc:
            report(exc)

    for name, rec in (data.get("universes") or {}).items():
        path = f"universes.{name}"
        try:
            if not isinstance(rec, list):
                raise DocumentError(path, "universe must be a list of module names")
            doc.universes[name] = [resolve_module(n, f"{path}[{i}]") for i, n in enumerate(rec)]
        except DocumentError as exc:
            report(exc)

    for name, rec in (data.get("families") or {}).items():
        try:
            doc.families[name] = _build_family(doc, name, rec, f"families.{name}")
        except DocumentError as exc:
            report(exc)

    tasks = data.get("tasks") or []
    if not isinstance(tasks, list):
        raise DocumentError("tasks", "tasks must be a list")
    for i, task in enumerate(tasks):
        if not isinstance(task, dict) or "kind" not in task:
            report(DocumentError(f"tasks[{i}]", "each task needs a 'kind'"))
    doc.tasks = [t for t in tasks if isinstance(t, dict) and "kind" in t]
    return doc


def _build_family(doc: Document, name: str, rec: dict, path: str) -> ModuleFamily:
    kind = rec.get("kind")
    universe = _lookup(doc.universes, rec.get("universe", ""), path, "universe")
    if kind == "all":
        fam = family_all(universe)
    elif kind == "zero":
        fam = family_zero(universe)
    elif kind == "explicit":
        mods = [
            _lookup(doc.modules, n, f"{path}.modules[{i}]", "module")
            for i, n in enumerate(rec.get("modules", []))
        ]
        fam = family_explicit(mods, universe, label=name)
    elif kind == "gen":
        mod = _lookup(doc.modules, rec.get("module", ""), path, "module")
        fam = family_gen(mod, universe, label=name)
    elif kind == "d_sigma":
        pres = _lookup(doc.presentations, rec.get("presentation", ""), path, "presentation")
        fam = family_d_sigma(pres, universe, label=name)
    elif kind == "perp_right":
        of = _lookup(doc.families, rec.get("of", ""), path, "family")
        fam = perp_right(of, universe)
    elif kind == "perp_left":
        of = _lookup(doc.families, rec.get("of", ""), path, "family")
        fam = perp_left(of, universe)
    elif kind == "perp_right_modules":
        mods = [
            _lookup(doc.modules, n, f"{path}.modules[{i}]", "module")
            for i, n in enumerate(rec.get("modules", []))
        ]
        fam = perp_right_modules(mods, universe, label=name)
    elif kind == "comma":
        cfam = _lookup(doc.families, rec.get("c", ""), path, "family")
        dfam = _lookup(doc.families, rec.get("d", ""), path, "family")
        u = _lookup(doc.bimodules, rec.get("bimodule", ""), path, "bimodule")
        fam = comma_family(rec.get("family", "U"), cfam, dfam, doc.triangulars[u.label], universe, label=name)
    else:
        raise DocumentError(path, f"unknown family kind {kind!r}")
    fam.label = name
    return fam


def serialize_document(doc: Document) -> dict:
    """Canonical dict form: rebuilt from the parsed objects, sorted names."""
    out: dict[str, Any] = {"field": {"p": doc.p}}
    if doc.algebras:
        out["algebras"] = {
            name: {
                "dim": alg.dim,
                "mul": [[[int(x) for x in row] for row in plane] for plane in alg.mul],
                "unit": [int(x) for x in alg.unit],
            }
            for name, alg in sorted(doc.algebras.items())
        }
    if doc.bimodules:
        out["bimodules"] = {
            name: {
                "s_algebra": u.s_algebra.label,
                "r_algebra": u.r_algebra.label,
                "dim": u.dim,
                "left_action": [m.to_lists() for m in u.left_action],
                "right_action": [m.to_lists() for m in u.right_action],
            }
            for name, u in sorted(doc.bimodules.items())
        }
    if doc.modules:
        out["modules"] = {
            name: {
                "algebra": m.algebra.label,
                "side": m.side,
                "dim": m.dim,
                "action": [a.to_lists() for a in m.action],
            }
            for name, m in sorted(doc.modules.items())
        }
    if doc.comma_objects:
        out["comma_objects"] = {
            name: {
                "bimodule": c.bimodule.label,
                "A": c.A.label,
                "B": c.B.label,
                "phi": c.phi.to_lists(),
            }
            for name, c in sorted(doc.comma_objects.items())
        }
    if doc.right_t_modules:
        out["right_t_modules"] = {
            name: {
                "bimodule": rt.bimodule.label,
                "X": rt.X.label,
                "Y": rt.Y.label,
                "psi": rt.psi.to_lists(),
            }
            for name, rt in sorted(doc.right_t_modules.items())
        }
    if doc.presentations:
        out["presentations"] = {
            name: {
                "source": pres.sigma.source.label,
                "target": pres.sigma.target.label,
                "module": pres.target.label,
                "sigma": pres.sigma.matrix.to_lists(),
                "witness": pres.witness.matrix.to_lists(),
            }
            for name, pres in sorted(doc.presentations.items())
        }
    if doc.universes:
        out["universes"] = {
            name: [m.label for m in mods] for name, mods in sorted(doc.universes.items())
        }
    if doc.families:
        out["families"] = {
            name: dict(doc.raw.get("families", {}).get(name, fam.spec))
            for name, fam in sorted(doc.families.items())
        }
    if doc.tasks:
        out["tasks"] = doc.tasks
    return out


def load_document(path: str) -> Document:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DocumentError("$", f"not valid JSON: {exc}") from None
    return parse_document(data)


def document_validation_report(data: dict) -> dict:
    """Run every invariant, collecting all violations (best effort)."""
    violations: list[dict] = []
    try:
        parse_document(data, collect=violations)
    except DocumentError as exc:
        violations.append({"path": exc.path, "message": exc.message})
    return {"valid": not violations, "violations": violations}
