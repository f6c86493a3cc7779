"""Deterministic report assembly and serialization."""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from . import __version__
from .algebra import DEFAULT_DIGITS, CoeffExpr
from .geometry import Geometry
from .manifold import FramedManifold
from .soliton import (ConformalData, GradientReport, SolitonReport, VectorFieldClassification)
from .tensors import Endomorphism, FrameVectorField, Tensor02
from .verify import CheckResult

__all__ = ["Report", "display_digits", "emit_report"]

DIGITS_ENV = "KENMOTSU_DIGITS"


def display_digits() -> int:
    """Digits for numeric spot values; symbolic results never depend on it."""
    try:
        return max(1, int(os.environ.get(DIGITS_ENV, DEFAULT_DIGITS)))
    except ValueError:
        return DEFAULT_DIGITS


def _q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def render(value: Any, names=None) -> Any:
    if isinstance(value, CoeffExpr):
        return str(value)
    if isinstance(value, Fraction):
        return _q(value)
    if isinstance(value, FrameVectorField):
        return value.render(names) if names else [str(c) for c in value]
    if isinstance(value, (Tensor02, Endomorphism)):
        return [[str(c) for c in row] for row in value.table]
    if isinstance(value, CheckResult):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): render(v, names) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [render(v, names) for v in value]
    return value


def manifold_summary(m: FramedManifold) -> dict:
    out = {
        "name": m.name,
        "dim": m.dim,
        "n": m.n,
        "coords": list(m.coords),
        "frame_names": list(m.frame_names),
        "xi": m.xi_field.render(m.frame_names),
        "eta": [_q(e) for e in m.eta],
    }
    if m.frame is not None:
        out["frame"] = {name: f"{scale}*d/d{coord}" for name, (coord, scale)
                        in zip(m.frame_names, m.frame)}
    return out


def curvature_tables(geo: Geometry) -> dict:
    m = geo.manifold
    names = m.frame_names
    brackets = {}
    structure = m.structure()
    for i in range(m.dim):
        for j in range(m.dim):
            if not structure[i][j].is_zero():
                brackets[f"[{names[i]},{names[j]}]"] = structure[i][j].render(names)
    nabla = {}
    for i in range(m.dim):
        for j in range(m.dim):
            vec = geo.connection(i, j)
            if not vec.is_zero():
                nabla[f"nabla_{names[i]} {names[j]}"] = vec.render(names)
    riemann = {}
    for (i, j, k), vec in geo.riemann.nonzero():
        if i < j:
            riemann[f"R({names[i]},{names[j]}){names[k]}"] = vec.render(names)
    return {
        "brackets": brackets,
        "connection": nabla,
        "riemann": riemann,
        "ricci": render(geo.ricci),
        "scalar_curvature": str(geo.scalar),
        "star_ricci": render(geo.star_ricci),
        "star_scalar_curvature": str(geo.star_scalar),
        "ricci_operator": render(geo.ricci_operator),
        "star_ricci_operator": render(geo.star_ricci_operator),
    }


def soliton_summary(rep: SolitonReport, m: FramedManifold, label: str = "") -> dict:
    names = m.frame_names
    p = rep.params
    out = {
        "label": label,
        "mode": rep.mode,
        "star": p.star,
        "alpha": str(p.alpha),
        "beta": str(p.beta),
        "k": str(p.k),
        "lambda": None if p.lam is None else str(p.lam),
        "fitted_lambda": None if rep.fitted_lambda is None else str(rep.fitted_lambda),
        "classification": rep.classification,
        "special_case": rep.special_case,
        "residual": render(rep.residual),
        "residual_zero": rep.residual_zero,
        "trace_residual": str(rep.trace_residual),
        "satisfied": rep.satisfied,
        "notes": list(rep.notes),
    }
    if rep.witness is not None:
        i, j, c = rep.witness
        out["witness"] = {"slots": [names[i], names[j]], "value": str(c)}
        if not c.depends_on(set(c.free_symbols()) - set(m.coords)):
            point = {name: 1 for name in m.coords}
            out["witness"]["value_at_unit_point"] = _numeric(c.evaluate(point, display_digits()))
    if isinstance(rep, GradientReport) and rep.gradient is not None:
        out["function"] = str(rep.gradient.f)
        out["gradient"] = rep.gradient.gradient.render(names)
        out["hessian"] = render(rep.gradient.hessian)
        out["laplacian"] = str(rep.laplacian)
        out["predicted_laplacian"] = (None if rep.predicted_laplacian is None
                                      else str(rep.predicted_laplacian))
    return out


def _numeric(value) -> str:
    if isinstance(value, Fraction):
        return _q(value)
    import mpmath

    return mpmath.nstr(value, display_digits())


def classification_summary(c: VectorFieldClassification, m: FramedManifold) -> dict:
    out: dict[str, Any] = {"subtype": c.subtype, "torse_forming": c.torse_forming is not None,
                           "notes": list(c.notes)}
    if c.torse_forming is not None:
        out["psi"] = str(c.torse_forming.psi)
        out["omega"] = {name: str(w) for name, w in zip(m.frame_names, c.torse_forming.omega)}
    out["conformal_killing"] = c.conformal is not None
    if isinstance(c.conformal, ConformalData):
        out["conformal_factor"] = str(c.conformal.omega)
        out["conformal_kind"] = c.conformal.kind
    return out


@dataclass
class Report:
    command: str
    source: str = ""
    manifold: dict = field(default_factory=dict)
    checks: list[CheckResult] = field(default_factory=list)
    sections: dict[str, Any] = field(default_factory=dict)

    @property
    def input_digest(self) -> str:
        return hashlib.sha256(self.source.encode()).hexdigest()

    @property
    def checks_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "tool": "kenmotsu",
            "version": __version__,
            "command": self.command,
            "input_digest": self.input_digest,
            "manifold": self.manifold,
            "checks": [c.to_dict() for c in self.checks],
            **{k: render(v) for k, v in self.sections.items()},
        }


def emit_report(report: Report, fmt: str = "structured") -> bytes:
    data = report.to_dict()
    if fmt == "structured":
        return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=True) + "\n").encode()
    if fmt == "text":
        return _text(data).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _text(data: dict) -> str:
    lines = [f"kenmotsu {data['version']}  {data['command']}  input sha256 {data['input_digest'][:16]}"]
    m = data.get("manifold") or {}
    if m:
        lines.append(f"manifold {m['name']}: dim {m['dim']} (n = {m['n']}), coords {' '.join(m['coords'])}")
    if data["checks"]:
        lines.append("")
        lines.append("checks")
        width = max(len(c["name"]) for c in data["checks"])
        for c in data["checks"]:
            line = f"  {c['status'].upper():4}  {c['name']:<{width}}  {c['description']}"
            if c["status"] == "fail":
                line += f"  [at {', '.join(c['witness'])}: residual {c['residual']}]"
            lines.append(line)
    for key in sorted(k for k in data if k not in
                      ("tool", "version", "command", "input_digest", "manifold", "checks")):
        lines.append("")
        lines.append(key)
        lines.extend(_text_value(data[key], 1))
    return "\n".join(lines) + "\n"


def _text_value(value: Any, depth: int) -> list[str]:
    pad = "  " * depth
    if isinstance(value, dict):
        out = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _is_matrix(v):
                out.append(f"{pad}{k}:")
                out.extend(_text_value(v, depth + 1))
            elif _is_matrix(v):
                out.append(f"{pad}{k}:")
                out.extend(_matrix(v, depth + 1))
            else:
                out.append(f"{pad}{k}: {v}")
        return out
    if _is_matrix(value):
        return _matrix(value, depth)
    if isinstance(value, list):
        out = []
        for v in value:
            if isinstance(v, dict):
                out.append(f"{pad}-")
                out.extend(_text_value(v, depth + 1))
            else:
                out.append(f"{pad}- {v}")
        return out
    return [f"{pad}{value}"]


def _is_matrix(v: Any) -> bool:
    return (isinstance(v, list) and bool(v) and all(isinstance(r, list) for r in v)
            and all(isinstance(c, str) for r in v for c in r))


def _matrix(rows: list[list[str]], depth: int) -> list[str]:
    width = max(len(c) for r in rows for c in r)
    return ["  " * depth + "[ " + "  ".join(c.rjust(width) for c in r) + " ]" for r in rows]
