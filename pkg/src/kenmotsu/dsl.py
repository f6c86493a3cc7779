"""Line-oriented manifold description language.

Example (the built-in ``kenmotsu5`` document)::

    name kenmotsu5
    dim 5
    coords x y z u v
    frame e1 = exp(-1*v) d x
    ...
    frame e5 = d v
    metric identity
    xi e5
    phi e1 -> e3
    vector V = x d x + y d y + z d z + u d u + d v
    function f = v
    soliton fit vector=V alpha=1 beta=0 k=1 mode=trace

Directives: ``name``, ``dim``, ``coords``, ``frame NAME = EXPR d COORD``,
``frame NAME`` (abstract field; its brackets come from ``bracket`` lines),
``bracket A B = COMBO``, ``metric identity | ROW ; ROW ...``, ``xi COMBO``,
``phi NAME -> COMBO``, ``vector NAME = EXPR d COORD [+ ...] | COMBO``,
``function NAME = EXPR``, ``soliton NAME key=value ...``.  A COMBO is a linear
combination of frame fields such as ``-e1`` or ``2*e3 + x*e4``; ``0`` is
allowed.  ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .algebra import ZERO, CoeffExpr, const
from .manifold import (BadMetric, BadPhiShape, EvenDimension, FramedManifold, ManifoldError,
                       NonUnitFrameScale, XiNotUnit, build_manifold)
from .syntax import DSLError, ParseError, TokenStream, parse_expr, parse_rational, tokenize
from .tensors import FrameVectorField

__all__ = [
    "BUILTINS",
    "DSLError",
    "DuplicateDirective",
    "ManifoldDocument",
    "ParseError",
    "UndeclaredCoordinate",
    "UndeclaredFrameField",
    "builtin_source",
    "load_builtin",
    "parse_manifold_dsl",
]

BUILTINS = ("kenmotsu5",)
SINGLE_DIRECTIVES = ("name", "dim", "coords", "metric", "xi")
SOLITON_KEYS = ("vector", "function", "alpha", "beta", "k", "lambda", "mode", "star")
MODES = ("exact", "trace", "xi-trace")


class DuplicateDirective(DSLError):
    pass


class UndeclaredCoordinate(DSLError):
    pass


class UndeclaredFrameField(DSLError):
    pass


Combo = dict[str, CoeffExpr]


@dataclass
class ManifoldDocument:
    source: str = ""
    name: str = "manifold"
    dim: int | None = None
    coords: list[str] = field(default_factory=list)
    frames: dict[str, tuple[str, CoeffExpr] | None] = field(default_factory=dict)
    brackets: dict[tuple[str, str], Combo] = field(default_factory=dict)
    metric: list[list[Fraction]] | None = None
    xi: Combo | None = None
    phi: dict[str, Combo] = field(default_factory=dict)
    vectors: dict[str, tuple[str, dict]] = field(default_factory=dict)
    functions: dict[str, CoeffExpr] = field(default_factory=dict)
    solitons: dict[str, dict[str, str]] = field(default_factory=dict)
    lines: dict[str, int] = field(default_factory=dict, repr=False)

    def structure(self) -> tuple:
        """Everything except the source text and line bookkeeping."""
        return (self.name, self.dim, tuple(self.coords),
                tuple(self.frames.items()), tuple(sorted(self.brackets.items())),
                None if self.metric is None else tuple(map(tuple, self.metric)),
                None if self.xi is None else tuple(sorted(self.xi.items())),
                tuple((k, tuple(sorted(v.items()))) for k, v in self.phi.items()),
                tuple((k, kind, tuple(sorted(v.items()))) for k, (kind, v) in self.vectors.items()),
                tuple(self.functions.items()),
                tuple((k, tuple(v.items())) for k, v in self.solitons.items()))

    # -- emission -----------------------------------------------------------

    def to_source(self) -> str:
        out = [f"name {self.name}"]
        if self.dim is not None:
            out.append(f"dim {self.dim}")
        if self.coords:
            out.append("coords " + " ".join(self.coords))
        for fname, spec in self.frames.items():
            if spec is None:
                out.append(f"frame {fname}")
            else:
                coord, scale = spec
                out.append(f"frame {fname} = {_coeff_source(scale)}d {coord}")
        for (a, b), combo in self.brackets.items():
            out.append(f"bracket {a} {b} = {render_combo(combo)}")
        if self.metric is not None:
            if _is_identity(self.metric):
                out.append("metric identity")
            else:
                out.append("metric " + " ; ".join(" ".join(_rat(x) for x in row)
                                                  for row in self.metric))
        if self.xi is not None:
            out.append(f"xi {render_combo(self.xi)}")
        for fname, combo in self.phi.items():
            out.append(f"phi {fname} -> {render_combo(combo)}")
        for vname, (kind, comps) in self.vectors.items():
            if kind == "coord":
                body = " + ".join(f"{_coeff_source(c)}d {coord}" for coord, c in comps.items())
                out.append(f"vector {vname} = {body or '0'}")
            else:
                out.append(f"vector {vname} = {render_combo(comps)}")
        for fname, expr in self.functions.items():
            out.append(f"function {fname} = {expr}")
        for sname, params in self.solitons.items():
            out.append(" ".join([f"soliton {sname}"] + [f"{k}={v}" for k, v in params.items()]))
        return "\n".join(out) + "\n"

    # -- conversion ---------------------------------------------------------

    def to_manifold(self, strict: bool = True) -> FramedManifold:
        if self.dim is None:
            raise DSLError("missing 'dim' directive", 1, 1)
        if not self.coords:
            raise DSLError("missing 'coords' directive", self.lines.get("dim", 1), 1)
        names = list(self.frames)
        if len(names) != self.dim:
            raise DSLError(f"expected {self.dim} frame fields, found {len(names)}",
                           self.lines.get("coords", 1), 1)
        index = {n: i for i, n in enumerate(names)}
        abstract = [n for n, spec in self.frames.items() if spec is None]
        if abstract and len(abstract) != len(names):
            raise DSLError("frame fields must be all coordinate-expressed or all abstract",
                           self.lines.get(f"frame {abstract[0]}", 1), 1)
        if not abstract and self.brackets:
            first = next(iter(self.brackets))
            raise DSLError("bracket directives need abstract frame fields",
                           self.lines.get(f"bracket {first[0]} {first[1]}", 1), 1)
        if self.xi is None:
            raise DSLError("missing 'xi' directive", self.lines.get("coords", 1), 1)

        def vec(combo: Combo) -> list[CoeffExpr]:
            return [combo.get(n, ZERO) for n in names]

        phi = [[ZERO] * self.dim for _ in range(self.dim)]
        for src, combo in self.phi.items():
            for k, c in enumerate(vec(combo)):
                phi[k][index[src]] = c
        try:
            kwargs = dict(phi=[[_constant(c) for c in row] for row in phi],
                          xi=[_constant(c) for c in vec(self.xi)],
                          metric=self.metric, frame_names=names, name=self.name, strict=strict)
            if abstract:
                structure = {(index[a], index[b]): vec(c) for (a, b), c in self.brackets.items()}
                return build_manifold(self.dim, self.coords, structure=structure, **kwargs)
            frame = [self.frames[n] for n in names]
            return build_manifold(self.dim, self.coords, frame=frame, **kwargs)
        except EvenDimension as err:
            raise DSLError(str(err), self.lines.get("dim", 1), 1) from err
        except NonUnitFrameScale as err:
            bad = next((n for n, s in self.frames.items() if s and not s[1].is_unit()), names[0])
            raise DSLError(str(err), self.lines.get(f"frame {bad}", 1), 1) from err
        except XiNotUnit as err:
            raise DSLError(str(err), self.lines.get("xi", 1), 1) from err
        except BadMetric as err:
            raise DSLError(str(err), self.lines.get("metric", 1), 1) from err
        except BadPhiShape as err:
            raise DSLError(str(err), min((v for k, v in self.lines.items() if k.startswith("phi")),
                                         default=1), 1) from err
        except ManifoldError as err:
            raise DSLError(str(err), self.lines.get("coords", 1), 1) from err

    def vector_field(self, m: FramedManifold, name: str) -> FrameVectorField:
        kind, comps = self.vectors[name]
        if kind == "coord":
            return m.to_frame_components(comps)
        return FrameVectorField(comps.get(n, ZERO) for n in m.frame_names)


    def parse_vector(self, text: str) -> tuple[str, dict]:
        """Parse the right-hand side of a ``vector`` line against this document."""
        parser = _Parser("")
        parser.doc.coords = list(self.coords)
        parser.doc.frames = dict(self.frames)
        return _run_line(parser, "vector", f"vector _ = {text}").vectors["_"]

    def parse_function(self, text: str) -> CoeffExpr:
        parser = _Parser("")
        parser.doc.coords = list(self.coords)
        return _run_line(parser, "function", f"function _ = {text}").functions["_"]


def _run_line(parser: "_Parser", directive: str, line: str) -> ManifoldDocument:
    try:
        ts = TokenStream(tokenize(line))
        head = ts.next()
        getattr(parser, f"_d_{directive}")(ts, head)
        ts.expect_end()
    except DSLError:
        raise
    except (ArithmeticError, ValueError, RecursionError) as err:
        raise DSLError(f"invalid input: {err}") from None
    return parser.doc


def _constant(c: CoeffExpr) -> Fraction:
    q = c.as_rational()
    if q is None:
        raise DSLError(f"expected a rational constant, found {c}")
    return q


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _is_identity(m) -> bool:
    return all(m[i][j] == (1 if i == j else 0) for i in range(len(m)) for j in range(len(m)))


def _coeff_source(c: CoeffExpr) -> str:
    if c == 1:
        return ""
    if len(c) > 1 or c.as_rational() is not None and c.as_rational() < 0:
        return f"({c}) "
    return f"{c} "


def render_combo(combo: Combo) -> str:
    parts = []
    for name, c in combo.items():
        if c.is_zero():
            continue
        if c == 1:
            parts.append(f"+ {name}")
        elif c == -1:
            parts.append(f"- {name}")
        elif len(c) == 1 and not str(c).startswith("-"):
            parts.append(f"+ {c}*{name}")
        else:
            parts.append(f"+ ({c})*{name}")
    if not parts:
        return "0"
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.doc = ManifoldDocument(source=text)

    def run(self) -> ManifoldDocument:
        for lineno, raw in enumerate(self.text.splitlines(), start=1):
            line = raw.split("#", 1)[0]
            if not line.strip():
                continue
            ts = TokenStream(tokenize(line, lineno))
            head = ts.peek
            if head.kind != "name":
                ts.fail("a directive")
            handler = getattr(self, f"_d_{head.text}", None)
            if handler is None:
                raise ParseError(head.line, head.column, "a known directive", head.text)
            ts.next()
            handler(ts, head)
            ts.expect_end()
        return self.doc

    # -- helpers ------------------------------------------------------------

    def _once(self, key: str, tok) -> None:
        if key in self.doc.lines:
            raise DuplicateDirective(f"duplicate '{key}' directive (first on line "
                                     f"{self.doc.lines[key]})", tok.line, tok.column)
        self.doc.lines[key] = tok.line

    def _need_coords(self, tok) -> None:
        if not self.doc.coords:
            raise ParseError(tok.line, tok.column, "'dim' and 'coords' before this directive", tok.text)

    def _unknown_coord(self, tok):
        raise UndeclaredCoordinate(f"undeclared coordinate {tok.text!r}", tok.line, tok.column)

    def _expr(self, ts: TokenStream) -> CoeffExpr:
        return parse_expr(ts, frozenset(self.doc.coords), self._unknown_coord)

    def _coord(self, ts: TokenStream) -> str:
        tok = ts.expect_name("a coordinate")
        if tok.text not in self.doc.coords:
            self._unknown_coord(tok)
        return tok.text

    def _frame_name(self, ts: TokenStream) -> str:
        tok = ts.expect_name("a frame field name")
        if tok.text not in self.doc.frames:
            raise UndeclaredFrameField(f"undeclared frame field {tok.text!r}", tok.line, tok.column)
        return tok.text

    def _combo(self, ts: TokenStream, constant: bool) -> Combo:
        frames = frozenset(self.doc.frames)
        start = ts.peek

        def unknown(tok):
            if tok.text in self.doc.coords and not constant:
                return
            raise UndeclaredFrameField(f"undeclared frame field {tok.text!r}", tok.line, tok.column)

        expr = parse_expr(ts, frames | frozenset(self.doc.coords), unknown)
        combo: Combo = {}
        for (powers, weights), c in expr.items():
            hits = [(n, e) for n, e in powers if n in frames]
            if len(hits) != 1 or hits[0][1] != 1:
                raise ParseError(start.line, start.column,
                                 "a linear combination of frame fields", str(expr))
            fname = hits[0][0]
            coeff = CoeffExpr._from_map({(tuple(p for p in powers if p[0] != fname), weights): c})
            if constant and coeff.as_rational() is None:
                raise ParseError(start.line, start.column, "rational coefficients", str(coeff))
            combo[fname] = combo.get(fname, ZERO) + coeff
        return {k: v for k, v in combo.items() if not v.is_zero()}

    # -- directives ---------------------------------------------------------

    def _d_name(self, ts, tok):
        self._once("name", tok)
        self.doc.name = ts.expect_name("a manifold name").text

    def _d_dim(self, ts, tok):
        self._once("dim", tok)
        self.doc.dim = int(ts.expect_kind("int", "an integer dimension").text)

    def _d_coords(self, ts, tok):
        self._once("coords", tok)
        if self.doc.dim is None:
            raise ParseError(tok.line, tok.column, "'dim' before 'coords'", tok.text)
        names = []
        while ts.peek.kind == "name":
            t = ts.expect_name("a coordinate name")
            if t.text in names:
                raise DuplicateDirective(f"coordinate {t.text!r} declared twice", t.line, t.column)
            names.append(t.text)
        if len(names) != self.doc.dim:
            raise ParseError(ts.peek.line, ts.peek.column,
                             f"{self.doc.dim} coordinate names (found {len(names)})",
                             ts.peek.text or "end of line")
        self.doc.coords = names

    def _d_frame(self, ts, tok):
        self._need_coords(tok)
        name_tok = ts.expect_name("a frame field name")
        fname = name_tok.text
        if fname in self.doc.coords:
            raise ParseError(name_tok.line, name_tok.column, "a name distinct from the coordinates", fname)
        self._once(f"frame {fname}", name_tok)
        if ts.peek.kind == "eof":
            self.doc.frames[fname] = None
            return
        ts.expect("=")
        scale = const(1)
        sign = 1
        if ts.at("-") and ts.tokens[ts.pos + 1].text == "d":
            ts.next()
            sign = -1
        if not ts.at("d"):
            scale = self._expr(ts)
        ts.expect("d")
        coord = self._coord(ts)
        if ts.at("+") or ts.at("-"):
            ts.fail("end of line (frames must be diagonal: one coordinate per field)")
        self.doc.frames[fname] = (coord, scale * sign)

    def _d_bracket(self, ts, tok):
        a = self._frame_name(ts)
        b = self._frame_name(ts)
        key = tuple(sorted((a, b)))
        self._once(f"bracket {key[0]} {key[1]}", tok)
        ts.expect("=")
        self.doc.brackets[(a, b)] = self._combo(ts, constant=False)

    def _d_metric(self, ts, tok):
        self._once("metric", tok)
        if ts.accept("identity"):
            dim = self.doc.dim or 0
            self.doc.metric = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
            return
        rows = [[]]
        while ts.peek.kind != "eof":
            if ts.accept(";"):
                rows.append([])
                continue
            sign = -1 if ts.accept("-") else 1
            rows[-1].append(sign * parse_rational(ts))
        self.doc.metric = rows

    def _d_xi(self, ts, tok):
        self._once("xi", tok)
        self.doc.xi = self._combo(ts, constant=True)

    def _d_phi(self, ts, tok):
        src = self._frame_name(ts)
        self._once(f"phi {src}", tok)
        ts.expect("->")
        self.doc.phi[src] = self._combo(ts, constant=True)

    def _d_vector(self, ts, tok):
        self._need_coords(tok)
        vname = ts.expect_name("a vector name").text
        self._once(f"vector {vname}", tok)
        ts.expect("=")
        if not any(t.kind == "name" and t.text == "d" for t in ts.tokens[ts.pos:]):
            self.doc.vectors[vname] = ("frame", self._combo(ts, constant=False))
            return
        comps: dict[str, CoeffExpr] = {}
        first = True
        while True:
            sign = 1
            if ts.at("+") or ts.at("-"):
                sign = -1 if ts.next().text == "-" else 1
            elif not first:
                break
            coeff = const(1) if ts.at("d") else self._expr(ts)
            ts.expect("d")
            coord = self._coord(ts)
            comps[coord] = comps.get(coord, ZERO) + coeff * sign
            first = False
        self.doc.vectors[vname] = ("coord", {k: v for k, v in comps.items() if not v.is_zero()})

    def _d_function(self, ts, tok):
        self._need_coords(tok)
        fname = ts.expect_name("a function name").text
        self._once(f"function {fname}", tok)
        ts.expect("=")
        self.doc.functions[fname] = self._expr(ts)

    def _d_soliton(self, ts, tok):
        sname = ts.expect_name("a soliton block name").text
        self._once(f"soliton {sname}", tok)
        params: dict[str, str] = {}
        while ts.peek.kind != "eof":
            key_tok = ts.expect_name("a soliton parameter")
            key = key_tok.text
            if key not in SOLITON_KEYS:
                raise ParseError(key_tok.line, key_tok.column, "one of " + ", ".join(SOLITON_KEYS), key)
            if key in params:
                raise DuplicateDirective(f"parameter {key!r} given twice", key_tok.line, key_tok.column)
            ts.expect("=")
            if key in ("vector", "function"):
                params[key] = ts.expect_name(f"a {key} name").text
            elif key == "mode":
                first = ts.expect_kind("name", "a mode")
                text = first.text
                if text == "xi" and ts.accept("-"):
                    text += "-" + ts.expect_kind("name", "'trace'").text
                if text not in MODES:
                    raise ParseError(first.line, first.column, "exact, trace or xi-trace", text)
                params[key] = text
            elif key == "star":
                val = ts.expect_kind("name", "true or false")
                if val.text not in ("true", "false"):
                    raise ParseError(val.line, val.column, "true or false", val.text)
                params[key] = val.text
            else:
                params[key] = str(parse_expr(ts))
        self.doc.solitons[sname] = params


def parse_manifold_dsl(text: str) -> ManifoldDocument:
    """Parse a manifold description.  Every failure is a positioned :class:`DSLError`."""
    try:
        return _Parser(text).run()
    except DSLError:
        raise
    except RecursionError:
        raise DSLError("expression nested too deeply") from None
    except (ArithmeticError, ValueError) as err:
        raise DSLError(f"invalid input: {err}") from None


def builtin_source(name: str) -> str:
    if name not in BUILTINS:
        raise KeyError(f"unknown built-in manifold {name!r}; choose from {', '.join(BUILTINS)}")
    return resources.files("kenmotsu").joinpath("data", f"{name}.kmf").read_text()


def load_builtin(name: str) -> ManifoldDocument:
    return parse_manifold_dsl(builtin_source(name))
