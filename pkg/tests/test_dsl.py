import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from helpers import ABSTRACT_KENMOTSU5, mutated_source
from kenmotsu.algebra import CoeffExpr, symbol
from kenmotsu.dsl import (DuplicateDirective, UndeclaredCoordinate, UndeclaredFrameField,
                          builtin_source, parse_manifold_dsl)
from kenmotsu.syntax import DSLError, ParseError

HEADER = "dim 5\ncoords x y z u v\n"


def error_of(text):
    with pytest.raises(DSLError) as info:
        parse_manifold_dsl(text)
    return info.value


def test_builtin_document(doc):
    assert doc.name == "kenmotsu5" and doc.dim == 5
    assert doc.coords == ["x", "y", "z", "u", "v"]
    assert doc.frames["e1"] == ("x", CoeffExpr.exp_of({"v": -1}))
    assert doc.frames["e5"] == ("v", CoeffExpr.parse("1"))
    assert set(doc.vectors) == {"V", "P"}
    assert doc.functions == {"f": symbol("v")}
    assert doc.solitons["fit"]["mode"] == "trace"


def test_coordinate_arity():
    err = error_of("dim 5\ncoords x y z u\n")
    assert isinstance(err, ParseError)
    assert (err.line, err.column) == (2, 15)


def test_undeclared_coordinate_in_frame():
    err = error_of(HEADER + "frame e1 = exp(-1*w) d x\n")
    assert isinstance(err, UndeclaredCoordinate)
    assert err.line == 3 and err.column == 19


def test_undeclared_frame_field():
    err = error_of(HEADER + "frame e1 = d x\nphi e7 -> e1\n")
    assert isinstance(err, UndeclaredFrameField)
    assert (err.line, err.column) == (4, 5)


@pytest.mark.parametrize("text", [
    HEADER + "dim 5\n",
    HEADER + "frame e1 = d x\nframe e1 = d y\n",
    HEADER.replace("coords x y z u v", "coords x y z x v"),
])
def test_duplicates(text):
    assert isinstance(error_of(text), DuplicateDirective)


@pytest.mark.parametrize("text, line", [
    ("bogus 3\n", 1),
    ("dim 5\n\n# comment\nhello\n", 4),
    (HEADER + "frame e1 = d x + d y\n", 3),
    (HEADER + "frame e1 = exp(x*v) d x\n", 3),
    (HEADER + "metric identity extra\n", 3),
    (HEADER + "soliton s mode=sideways\n", 3),
    (HEADER + "soliton s gamma=1\n", 3),
    ("dim 5\ncoords x y z u v\nvector W = x d q\n", 3),
    ("x\x00y\n", 1),
])
def test_errors_are_positioned(text, line):
    err = error_of(text)
    assert err.line == line and err.column >= 1


def test_reserved_name_as_coordinate():
    assert error_of("dim 3\ncoords a b d\n").line == 2


def test_even_dimension_reported_at_dim_line():
    src = "dim 4\ncoords a b c e\nframe f1 = d a\nframe f2 = d b\nframe f3 = d c\nframe f4 = d e\nxi f4\n"
    assert error_of_manifold(src).line == 1


def test_bad_xi_reported_at_xi_line():
    src = ("dim 3\ncoords a b c\nframe f1 = d a\nframe f2 = d b\nframe f3 = d c\n"
           "xi f3\nphi f1 -> f2\nphi f2 -> -f1\nphi f3 -> 0\n")
    assert parse_manifold_dsl(src).to_manifold().dim == 3
    err = error_of_manifold(src.replace("xi f3", "xi 2*f3"))
    assert err.line == 6


def error_of_manifold(text):
    with pytest.raises(DSLError) as info:
        parse_manifold_dsl(text).to_manifold()
    return info.value


def test_non_unit_frame_scale_positioned():
    err = error_of_manifold(mutated_source("frame e3 = exp(-1*v) d z", "frame e3 = z d z"))
    assert err.line == 8


@pytest.mark.parametrize("source", [builtin_source("kenmotsu5"), ABSTRACT_KENMOTSU5])
def test_round_trip(source):
    doc = parse_manifold_dsl(source)
    again = parse_manifold_dsl(doc.to_source())
    assert again.structure() == doc.structure()
    assert again.to_source() == doc.to_source()


def test_round_trip_of_general_metric_and_combos():
    src = ("name demo\ndim 3\ncoords a b c\nframe f1\nframe f2\nframe f3\n"
           "bracket f1 f3 = 1/2*f1 - f2\nmetric 2 0 0 ; 0 1 0 ; 0 0 1\nxi f3\n"
           "phi f1 -> f2\nphi f2 -> -f1\nphi f3 -> 0\nvector W = f1 + 3*f3\nfunction h = a^2\n"
           "soliton s vector=W alpha=1 beta=0 k=2 lambda=-1 mode=xi-trace star=false\n")
    doc = parse_manifold_dsl(src)
    assert parse_manifold_dsl(doc.to_source()).structure() == doc.structure()
    assert doc.solitons["s"] == {"vector": "W", "alpha": "1", "beta": "0", "k": "2",
                                 "lambda": "-1", "mode": "xi-trace", "star": "false"}


def test_parse_vector_and_function(doc, m):
    kind, comps = doc.parse_vector("x d x - 2 d v")
    assert kind == "coord"
    assert m.to_frame_components(comps) == m.e(0).scale(symbol("x") * CoeffExpr.exp_of({"v": 1})) \
        - m.e(4).scale(2)
    assert doc.parse_function("v^2 + x") == symbol("v") ** 2 + symbol("x")
    with pytest.raises(UndeclaredCoordinate):
        doc.parse_function("w")


def test_parser_is_reentrant():
    a = parse_manifold_dsl(builtin_source("kenmotsu5"))
    b = parse_manifold_dsl(ABSTRACT_KENMOTSU5)
    c = parse_manifold_dsl(builtin_source("kenmotsu5"))
    assert a.structure() == c.structure() != b.structure()


# -- fuzz -----------------------------------------------------------------------

fragments = st.sampled_from([
    "dim", "coords", "frame", "metric", "xi", "phi", "vector", "function", "soliton", "bracket",
    "identity", "e1", "e5", "x", "v", "d", "exp", "(", ")", "->", "=", "+", "-", "*", "/", "^",
    ";", "0", "1", "5", "-1", "\n", " ", "#", "alpha", "mode=trace", "99999999999999999999",
])


def parse_or_positioned_error(text):
    try:
        parse_manifold_dsl(text)
    except DSLError as err:
        assert err.line >= 1 and err.column >= 1


@settings(max_examples=300, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(st.text(max_size=120))
def test_fuzz_arbitrary_text(text):
    parse_or_positioned_error(text)


@settings(max_examples=300, deadline=None)
@given(st.lists(fragments, max_size=40).map(" ".join))
def test_fuzz_token_soup(text):
    parse_or_positioned_error(text)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 400), st.text(max_size=8))
def test_fuzz_corrupted_builtin(pos, junk):
    src = builtin_source("kenmotsu5")
    pos = min(pos, len(src))
    parse_or_positioned_error(src[:pos] + junk + src[pos:])


@settings(max_examples=50, deadline=None)
@given(st.binary(max_size=80))
def test_fuzz_bytes(data):
    parse_or_positioned_error(data.decode("utf-8", errors="replace"))


def test_deep_nesting_is_controlled():
    parse_or_positioned_error(HEADER + "function f = " + "(" * 5000 + "x" + ")" * 5000 + "\n")
