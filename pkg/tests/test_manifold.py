from fractions import Fraction

import pytest

from kenmotsu.algebra import ONE, ZERO, CoeffExpr, symbol
from kenmotsu.manifold import (BadMetric, BadPhiShape, EvenDimension, ManifoldError,
                               NonUnitFrameScale, StructureOnlyFrame, XiNotUnit, build_manifold,
                               determinant, invert_matrix)
from kenmotsu.tensors import FrameVectorField
from kenmotsu.verify import verify_jacobi

x, y, v = symbol("x"), symbol("y"), symbol("v")
ev = CoeffExpr.exp_of({"v": 1})
emv = CoeffExpr.exp_of({"v": -1})

PHI5 = [[0, 0, -1, 0, 0],
        [0, 0, 0, -1, 0],
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0]]
COORDS = ("x", "y", "z", "u", "v")


def kenmotsu_frame(scale=emv):
    return [(c, scale) for c in COORDS[:4]] + [("v", 1)]


def test_builtin_matches_direct_construction(m):
    direct = build_manifold(5, COORDS, phi=PHI5, xi=4, frame=kenmotsu_frame())
    assert m.n == 2
    assert m.frame == direct.frame
    assert m.phi == direct.phi and m.xi == direct.xi and m.metric == direct.metric


def test_even_dimension():
    with pytest.raises(EvenDimension):
        build_manifold(4, COORDS[:4], phi=[[0] * 4] * 4, xi=3,
                       frame=[(c, 1) for c in COORDS[:4]])


def test_non_unit_frame_scale():
    frame = kenmotsu_frame()
    frame[0] = ("x", x)
    with pytest.raises(NonUnitFrameScale):
        build_manifold(5, COORDS, phi=PHI5, xi=4, frame=frame)


@pytest.mark.parametrize("kwargs, exc", [
    ({"xi": [0, 0, 0, 0, 2]}, XiNotUnit),
    ({"phi": [[0] * 4] * 5}, BadPhiShape),
    ({"metric": [[1, 1, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0],
                 [0, 0, 0, 0, 1]]}, BadMetric),
    ({"metric": [[-1 if i == j == 0 else int(i == j) for j in range(5)] for i in range(5)]},
     BadMetric),
    ({"frame": [(c, 1) for c in ("x", "x", "z", "u", "v")]}, ManifoldError),
])
def test_invalid_descriptions(kwargs, exc):
    args = {"phi": PHI5, "xi": 4, "frame": kenmotsu_frame(), **kwargs}
    with pytest.raises(exc):
        build_manifold(5, COORDS, **args)


def test_non_strict_accepts_non_unit_xi():
    m = build_manifold(5, COORDS, phi=PHI5, xi=[0, 0, 0, 0, 2], frame=kenmotsu_frame(),
                       strict=False)
    assert m.xi_field == FrameVectorField.basis(5, 4, 2)


@pytest.mark.parametrize("i, a, expected", [
    (0, x * ev, ONE),
    (4, x * ev, x * ev),
    (1, x, ZERO),
])
def test_frame_derivative(m, i, a, expected):
    assert m.frame_derivative(i, a) == expected


def test_bracket_table(m):
    # 25 brackets: [e_i, e5] = e_i, [e5, e_i] = -e_i for i < 5, all others vanish
    for i in range(5):
        for j in range(5):
            got = m.lie_bracket(m.e(i), m.e(j))
            if j == 4 and i < 4:
                assert got == m.e(i)
            elif i == 4 and j < 4:
                assert got == -m.e(j)
            else:
                assert got.is_zero(), (i, j)


def test_named_brackets(m):
    assert m.lie_bracket(m.e(0), m.e(4)) == m.e(0)
    assert m.lie_bracket(m.e(0), m.e(1)).is_zero()
    assert m.lie_bracket(m.e(4), m.e(3)) == -m.e(3)


def test_bracket_of_functional_combinations(m):
    # [f X, Y] = f [X, Y] - Y(f) X
    f = x * v
    lhs = m.lie_bracket(m.e(0).scale(f), m.e(4))
    rhs = m.lie_bracket(m.e(0), m.e(4)).scale(f) - m.e(0).scale(m.derivative(m.e(4), f))
    assert lhs == rhs


def test_coordinate_and_structure_routes_agree(m, abstract_geo):
    a = abstract_geo.manifold
    assert m.structure() == a.structure()
    basis = m.basis()
    for i in range(5):
        for j in range(5):
            assert m.lie_bracket(basis[i], basis[j]) == a.lie_bracket(basis[i], basis[j])


def test_abstract_frame_rejects_non_constant_derivatives(abstract_geo):
    a = abstract_geo.manifold
    assert a.frame_derivative(0, 3) == ZERO
    with pytest.raises(StructureOnlyFrame):
        a.frame_derivative(0, x)


def test_to_frame_components(m, doc):
    assert m.to_frame_components({"x": 1}) == m.e(0).scale(ev)
    assert m.to_frame_components({"v": 1}) == m.e(4)
    expected = FrameVectorField([x * ev, y * ev, symbol("z") * ev, symbol("u") * ev, ONE])
    assert doc.vector_field(m, "V") == expected


def test_frame_coordinate_round_trip(m):
    w = {"x": x * v, "v": ev}
    back = m.to_coordinate_components(m.to_frame_components(w))
    assert {k: c for k, c in back.items() if not c.is_zero()} == w


def test_contact_structure_examples(m):
    assert m.phi_apply(m.e(0)) == m.e(2)
    assert m.eta_apply(m.e(4)) == ONE
    assert m.phi_apply(m.phi_apply(m.e(0))) == -m.e(0)
    phi_x, eta_x = m.contact_apply(m.e(4))
    assert phi_x.is_zero() and eta_x == ONE


def test_jacobi_holds_for_builtin(m):
    assert verify_jacobi(m).passed


def test_jacobi_detects_inconsistent_structure():
    # [e1, e2] = e3 with [e3, e1] = e1 and [e2, e3] = 0 breaks the Jacobi identity
    s = {(0, 1): [0, 0, 1], (2, 0): [1, 0, 0]}
    m = build_manifold(3, ("a", "b", "c"), phi=[[0, -1, 0], [1, 0, 0], [0, 0, 0]], xi=2,
                       structure=s)
    res = verify_jacobi(m)
    assert not res.passed and not res.residual.is_zero()


def test_structure_must_be_antisymmetric():
    with pytest.raises(ManifoldError):
        build_manifold(3, ("a", "b", "c"), phi=[[0, -1, 0], [1, 0, 0], [0, 0, 0]], xi=2,
                       structure={(0, 1): [0, 0, 1], (1, 0): [0, 0, 1]})


def test_matrix_helpers():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert determinant(a) == 5
    inv = invert_matrix(a)
    assert inv == ((Fraction(3, 5), Fraction(-1, 5)), (Fraction(-1, 5), Fraction(2, 5)))


def test_non_identity_metric_raises_and_traces():
    metric = [[2 if i == j == 0 else int(i == j) for j in range(3)] for i in range(3)]
    m = build_manifold(3, ("a", "b", "c"), phi=[[0, 0, 0], [0, 0, 0], [0, 0, 0]], xi=2,
                       frame=[("a", 1), ("b", 1), ("c", 1)], metric=metric)
    assert m.metric_inverse[0][0] == Fraction(1, 2)
    assert m.metric_trace(m.metric_tensor) == 3
