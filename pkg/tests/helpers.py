"""Shared hypothesis strategies and manifold sources."""

from hypothesis import strategies as st

from kenmotsu.algebra import CoeffExpr, Term
from kenmotsu.dsl import builtin_source

SYMBOLS = ("x", "y", "v")

# kenmotsu5 again, with the frame given only through its structure functions
ABSTRACT_KENMOTSU5 = """\
name abstract5
dim 5
coords x y z u v
frame e1
frame e2
frame e3
frame e4
frame e5
bracket e1 e5 = e1
bracket e2 e5 = e2
bracket e3 e5 = e3
bracket e4 e5 = e4
metric identity
xi e5
phi e1 -> e3
phi e2 -> e4
phi e3 -> -e1
phi e4 -> -e2
phi e5 -> 0
"""

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero = rationals.filter(lambda q: q != 0)


@st.composite
def terms(draw):
    powers = {s: draw(st.integers(0, 3)) for s in SYMBOLS}
    weights = {s: draw(st.integers(-2, 2)) for s in ("v", "x")}
    return Term(draw(nonzero), powers, weights)


@st.composite
def exprs(draw, max_terms=4):
    return CoeffExpr(draw(st.lists(terms(), max_size=max_terms)))


@st.composite
def units(draw):
    coeff = draw(nonzero)
    weights = {"v": draw(st.integers(-2, 2)), "x": draw(st.integers(-2, 2))}
    return CoeffExpr.exp_of(weights, coeff)


def mutated_source(old: str, new: str, base: str | None = None) -> str:
    text = builtin_source("kenmotsu5") if base is None else base
    assert old in text
    return text.replace(old, new, 1)


# Reference tables for kenmotsu5 in frame indices 1..5: (i, j) -> (sign, k)
# meaning nabla_{e_i} e_j = sign * e_k; pairs not listed vanish.
CONNECTION_TABLE = {**{(i, i): (-1, 5) for i in range(1, 5)},
                    **{(i, 5): (1, i) for i in range(1, 5)}}

# (i, j, k) -> (sign, l) meaning R(e_i, e_j) e_k = sign * e_l
RIEMANN_TABLE = {
    (1, 2, 2): (-1, 1), (1, 3, 3): (-1, 1), (1, 4, 4): (-1, 1),
    (1, 5, 5): (-1, 1), (1, 2, 1): (1, 2), (1, 3, 1): (1, 3),
    (1, 4, 1): (1, 4), (1, 5, 1): (1, 5), (2, 3, 2): (1, 3),
    (2, 4, 2): (1, 4), (2, 5, 2): (1, 5), (2, 3, 3): (-1, 2),
    (2, 4, 4): (-1, 2), (2, 5, 5): (-1, 2), (3, 4, 3): (1, 4),
    (3, 5, 3): (1, 5), (3, 4, 4): (-1, 3), (4, 5, 4): (1, 5),
    (5, 3, 5): (1, 3), (5, 4, 5): (1, 4),
}
