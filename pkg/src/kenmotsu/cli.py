"""Command line front end: ``kenmotsu <command> [options]``."""

from __future__ import annotations

import argparse
import sys
from functools import lru_cache
from pathlib import Path

from .algebra import CoeffExpr, symbol
from .dsl import BUILTINS, DSLError, ManifoldDocument, builtin_source, parse_manifold_dsl
from .geometry import Geometry, analyze
from .manifold import FramedManifold
from .report import (Report, classification_summary, curvature_tables, emit_report,
                     manifold_summary, soliton_summary)
from .soliton import (MODES, SolitonError, SolitonParams, classify_vector,
                      concurrent_lambda_unit_k, divergence, eta_einstein_analyze,
                      gradient_residual, lambda_eta_einstein, lambda_torse, laplacian_identity,
                      sign_regions, soliton_residual, torse_specializations, xi_trace_lambda)
from .tensors import FrameVectorField

__all__ = ["main", "run_command"]

COMMANDS = ("check", "curvature", "soliton", "classify-vector", "theorems", "example")
SPECIAL_CASES = {"ricci": (1, 0), "yamabe": (0, 2), "einstein": (1, 1)}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kenmotsu", description=(
        "Exact curvature and soliton analysis of almost contact metric manifolds."))
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        src = p.add_mutually_exclusive_group()
        src.add_argument("--builtin", choices=BUILTINS, default=None)
        src.add_argument("--file", type=Path, default=None)
        p.add_argument("--format", choices=("text", "structured"), default="text")
        if name in ("soliton", "classify-vector"):
            p.add_argument("--vector", default=None,
                           help="declared vector name, xi, a frame field, or an expression")
        if name == "soliton":
            p.add_argument("--function", default=None)
            p.add_argument("--lambda", dest="lam", default=None)
            p.add_argument("--mode", choices=MODES, default="exact")
        if name in ("soliton", "theorems"):
            p.add_argument("--alpha", default="alpha")
            p.add_argument("--beta", default="beta")
            p.add_argument("--k", default="k")
            p.add_argument("--star", choices=("true", "false"), default="true")
        if name == "example":
            p.add_argument("--source", action="store_true", help="print the DSL source only")
    return parser


# -- input resolution ----------------------------------------------------------

def load_document(args) -> ManifoldDocument:
    if args.file is not None:
        try:
            text = args.file.read_text()
        except OSError as err:
            raise UsageError(f"cannot read {args.file}: {err.strerror}") from None
    else:
        text = builtin_source(args.builtin or "kenmotsu5")
    return parse_manifold_dsl(text)


def _expr(text: str, what: str) -> CoeffExpr:
    try:
        return CoeffExpr.parse(text)
    except (DSLError, ValueError, ArithmeticError) as err:
        raise UsageError(f"bad value for {what}: {err}") from None


def resolve_vector(doc: ManifoldDocument, m: FramedManifold, text: str) -> FrameVectorField:
    if text in doc.vectors:
        return doc.vector_field(m, text)
    if text == "xi":
        return m.xi_field
    if text in m.frame_names:
        return m.e(m.index_of(text))
    kind, comps = doc.parse_vector(text)
    if kind == "coord":
        return m.to_frame_components(comps)
    return FrameVectorField(comps.get(n, CoeffExpr.parse("0")) for n in m.frame_names)


def resolve_function(doc: ManifoldDocument, text: str) -> CoeffExpr:
    if text in doc.functions:
        return doc.functions[text]
    return doc.parse_function(text)


def params_from(values: dict[str, str]) -> SolitonParams:
    lam = values.get("lambda")
    try:
        return SolitonParams(_expr(values.get("alpha", "alpha"), "alpha"),
                             _expr(values.get("beta", "beta"), "beta"),
                             _expr(values.get("k", "k"), "k"),
                             None if lam is None else _expr(lam, "lambda"),
                             values.get("star", "true") == "true")
    except SolitonError as err:
        raise UsageError(str(err)) from None


# -- sections ------------------------------------------------------------------

def soliton_section(doc: ManifoldDocument, geo: Geometry, label: str,
                    values: dict[str, str]) -> dict:
    params = params_from(values)
    m = geo.manifold
    if values.get("function"):
        if values.get("vector"):
            raise UsageError("give either a vector or a function, not both")
        f = resolve_function(doc, values["function"])
        rep = gradient_residual(geo, f, params)
    elif values.get("vector"):
        v = resolve_vector(doc, m, values["vector"])
        rep = soliton_residual(geo, v, params, values.get("mode", "exact"))
    else:
        raise UsageError(f"soliton {label!r} names neither a vector nor a function")
    out = soliton_summary(rep, m, label)
    if values.get("vector"):
        out["vector"] = values["vector"]
    if values.get("function"):
        out["function_name"] = values["function"]
    return out


def theorem_section(doc: ManifoldDocument, geo: Geometry, params: SolitonParams) -> dict:
    """Closed-form Lambda values, each set beside the direct computation it predicts."""
    m = geo.manifold
    n, r = geo.n, geo.scalar
    out: dict = {}
    if not geo.kenmotsu:
        out["notes"] = ["the closed forms assume a Kenmotsu structure, which failed"]
        return out
    lam_xi, label = xi_trace_lambda(geo, params.beta)
    out["xi_trace_lambda"] = {"lambda": str(lam_xi), "classification": label,
                              "killing_lambda": str(lam_xi)}
    eta_e = eta_einstein_analyze(m, geo.ricci)
    if eta_e is not None:
        out["eta_einstein"] = {"a": str(eta_e.a), "b": str(eta_e.b),
                               "lambda": str(lambda_eta_einstein(eta_e.a, eta_e.b, n, r, params))}
    xi_class = classify_vector(geo, m.xi_field)
    if xi_class.torse_forming is not None:
        tf = xi_class.torse_forming
        omega_tau = tf.omega_of(m.xi_field)
        fit = soliton_residual(geo, m.xi_field, params.with_lambda(None), "trace")
        out["torse_forming_xi"] = {
            "psi": str(tf.psi),
            "omega_of_tau": str(omega_tau),
            "lambda": str(lambda_torse(n, r, params, tf.psi, omega_tau)),
            "trace_fit": str(fit.fitted_lambda),
            "specializations": {k: str(v) for k, v in
                                torse_specializations(n, r, params, tf.psi, omega_tau).items()},
            "concurrent_unit_k": str(concurrent_lambda_unit_k(n, r, params)),
        }
    potentials = {}
    for name in doc.vectors:
        v = doc.vector_field(m, name)
        fit = soliton_residual(geo, v, params.with_lambda(None), "trace")
        entry: dict = {"divergence": str(divergence(m, geo.connection, v)),
                       "trace_lambda": str(fit.fitted_lambda)}
        if fit.fitted_lambda is not None:
            try:
                lap = laplacian_identity(r, n, params.with_lambda(fit.fitted_lambda), m.coords)
                entry["laplacian_identity"] = str(lap.value)
            except SolitonError as err:
                entry["laplacian_identity"] = None
                entry["notes"] = [str(err)]
            cases = {}
            for case, (a, b) in SPECIAL_CASES.items():
                cp = SolitonParams(a, b, symbol("k"), None, params.star)
                lam = soliton_residual(geo, v, cp, "trace").fitted_lambda
                if lam is None:
                    continue
                regions = sign_regions(lam, "k")
                cases[case] = {"lambda": str(lam)}
                if regions is not None:
                    cases[case].update({key: str(val) for key, val in regions.items()})
            entry["special_cases"] = cases
        potentials[name] = entry
    out["potentials"] = potentials
    return out


@lru_cache(maxsize=8)
def geometry_of(source: str) -> Geometry:
    # structural failures such as eta(xi) != 1 surface as failed checks
    return analyze(parse_manifold_dsl(source).to_manifold(strict=False))


# -- commands ------------------------------------------------------------------

def run_command(argv: list[str] | None = None) -> tuple[int, Report | None, str]:
    """Return (exit status, report, format).  Usage and input errors exit 2."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return int(err.code or 0), None, "text"
    fmt = args.format
    try:
        doc = load_document(args)
        if args.command == "example" and args.source:
            return 0, Report("example", doc.source, sections={"source": doc.source}), fmt
        geo = geometry_of(doc.source)
        report = Report(args.command, doc.source, manifold_summary(geo.manifold),
                        geo.all_checks())
        return _dispatch(args, doc, geo, report), report, fmt
    except (UsageError, DSLError, SolitonError, KeyError) as err:
        msg = err.args[0] if isinstance(err, KeyError) and err.args else str(err)
        sys.stderr.write(f"kenmotsu: error: {msg}\n")
        return 2, None, fmt


def _dispatch(args, doc: ManifoldDocument, geo: Geometry, rep: Report) -> int:
    m = geo.manifold
    status = 0 if geo.passed else 1
    if args.command == "check":
        return status
    if args.command == "curvature":
        rep.sections.update(curvature_tables(geo))
        return status
    if args.command == "classify-vector":
        if args.vector is None:
            raise UsageError("classify-vector needs --vector")
        v = resolve_vector(doc, m, args.vector)
        rep.sections["classification"] = classification_summary(classify_vector(geo, v), m)
        rep.sections["vector"] = v.render(m.frame_names)
        return status
    if args.command == "soliton":
        if args.vector is None and args.function is None:
            blocks = doc.solitons.items()
        else:
            values = {"vector": args.vector, "function": args.function, "alpha": args.alpha,
                      "beta": args.beta, "k": args.k, "mode": args.mode, "star": args.star}
            if args.lam is not None:
                values["lambda"] = args.lam
            blocks = [("cli", values)]
        sections = [soliton_section(doc, geo, label, values) for label, values in blocks]
        rep.sections["solitons"] = sections
        if not all(s["satisfied"] for s in sections):
            status = 1
        return status
    if args.command == "theorems":
        values = {"alpha": args.alpha, "beta": args.beta, "k": args.k, "star": args.star}
        rep.sections["theorems"] = theorem_section(doc, geo, params_from(values))
        return status
    # example: the whole pipeline
    rep.sections.update(curvature_tables(geo))
    sections = [soliton_section(doc, geo, label, values) for label, values in doc.solitons.items()]
    rep.sections["solitons"] = sections
    rep.sections["theorems"] = theorem_section(doc, geo, params_from({}))
    if not all(s["satisfied"] for s in sections):
        status = 1
    return status


def main(argv: list[str] | None = None) -> int:
    status, report, fmt = run_command(argv)
    if report is not None:
        if report.command == "example" and "source" in report.sections:
            sys.stdout.write(report.sections["source"])
        else:
            out = getattr(sys.stdout, "buffer", None)
            data = emit_report(report, fmt)
            if out is not None:
                sys.stdout.flush()
                out.write(data)
                out.flush()
            else:
                sys.stdout.write(data.decode())
    return status


if __name__ == "__main__":
    sys.exit(main())
