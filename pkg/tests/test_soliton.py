from fractions import Fraction

import pytest

from kenmotsu.algebra import ZERO, CoeffExpr, symbol
from kenmotsu.curvature import star_ricci_kenmotsu
from kenmotsu.geometry import analyze
from kenmotsu.manifold import build_manifold
from kenmotsu.soliton import (NonConstantK, NotNowhereVanishing, SolitonError, SolitonParams,
                              UnknownLambda, classify_lambda, classify_vector,
                              concurrent_lambda_unit_k, conformal_killing_classify,
                              divergence, eta_einstein_analyze, gradient_data, gradient_residual,
                              lambda_eta_einstein, lambda_torse, laplacian_identity,
                              lie_derivative_metric, lie_derivative_metric_brackets, sign_regions,
                              soliton_residual, theorem_omega, torse_forming_classify,
                              torse_specializations, xi_trace_lambda, xi_trace_lambda_value)
from kenmotsu.tensors import Tensor02

alpha, beta, k = symbol("alpha"), symbol("beta"), symbol("k")
x, v = symbol("x"), symbol("v")
ev = CoeffExpr.exp_of({"v": 1})
SYMBOLIC = SolitonParams(alpha, beta, k)


@pytest.fixture(scope="module")
def V(doc, m):
    return doc.vector_field(m, "V")


@pytest.fixture(scope="module")
def P(doc, m):
    return doc.vector_field(m, "P")


def g_minus_eta(m):
    return m.metric_tensor - m.eta_eta


# -- Lie derivative and divergence -------------------------------------------------

def test_lie_derivative_of_potential(geo, V):
    m = geo.manifold
    assert lie_derivative_metric(m, geo.connection, V) == g_minus_eta(m).scale(4)


def test_lie_derivative_along_xi(geo):
    m = geo.manifold
    assert lie_derivative_metric(m, geo.connection, m.xi_field) == g_minus_eta(m).scale(2)


def test_lie_derivative_of_translation(geo, P):
    m = geo.manifold
    assert P == m.e(0).scale(ev)
    assert lie_derivative_metric(m, geo.connection, P).is_zero()


@pytest.mark.parametrize("name", ["V", "P"])
def test_bracket_route_agrees(geo, doc, name):
    m = geo.manifold
    w = doc.vector_field(m, name)
    assert lie_derivative_metric_brackets(m, w) == lie_derivative_metric(m, geo.connection, w)


def test_divergence(geo, V, P):
    m, conn = geo.manifold, geo.connection
    assert divergence(m, conn, V) == 8
    assert divergence(m, conn, m.xi_field) == 4
    assert divergence(m, conn, P) == 0


# -- residual ----------------------------------------------------------------------

def test_trace_fit_symbolic(geo, V):
    rep = soliton_residual(geo, V, SYMBOLIC, "trace")
    assert rep.fitted_lambda == (4 * alpha - 10 * beta - 8 * k) / 5
    assert rep.trace_residual == 0
    assert rep.classification == "indeterminate"


@pytest.mark.parametrize("a, b, expected, root", [
    (1, 0, (4 - 8 * k) / 5, Fraction(1, 2)),
    (0, 2, (-20 - 8 * k) / 5, Fraction(-5, 2)),
    (1, 1, (-6 - 8 * k) / 5, Fraction(-3, 4)),
])
def test_special_cases_and_sign_flip(geo, V, a, b, expected, root):
    rep = soliton_residual(geo, V, SolitonParams(a, b, k), "trace")
    assert rep.fitted_lambda == expected
    regions = sign_regions(rep.fitted_lambda, "k")
    assert regions["root"] == root
    assert regions["below"] == "expanding" and regions["above"] == "shrinking"
    at_root = soliton_residual(geo, V, SolitonParams(a, b, root), "trace")
    assert at_root.classification == "steady"
    just_below = soliton_residual(geo, V, SolitonParams(a, b, root - Fraction(1, 100)), "trace")
    just_above = soliton_residual(geo, V, SolitonParams(a, b, root + Fraction(1, 100)), "trace")
    assert (just_below.classification, just_above.classification) == ("expanding", "shrinking")


def test_trace_fit_at_unit_parameters(geo, V):
    rep = soliton_residual(geo, V, SolitonParams(1, 0, 1), "trace")
    assert rep.fitted_lambda == Fraction(-4, 5)
    assert rep.classification == "shrinking"
    assert rep.special_case == "*-k-Ricci"
    assert not rep.residual_zero and rep.satisfied


def test_exact_mode_exposes_trace_only_fit(geo, V):
    rep = soliton_residual(geo, V, SolitonParams(1, 0, 1, Fraction(-4, 5)), "exact")
    assert not rep.satisfied
    assert rep.residual[4, 4] == Fraction(-8, 5)
    assert rep.residual[0, 0] == Fraction(2, 5)
    assert rep.witness is not None and not rep.witness[2].is_zero()


def test_xi_potential_is_exact_soliton(geo):
    m = geo.manifold
    rep = soliton_residual(geo, m.xi_field, SolitonParams(alpha, beta, alpha, -2 * beta), "exact")
    assert rep.residual_zero and rep.satisfied and rep.witness is None


def test_xi_trace_mode(geo):
    m = geo.manifold
    rep = soliton_residual(geo, m.xi_field, SYMBOLIC, "xi-trace")
    # (xi, xi) component: k*0 + 2 alpha*0 + 2 Lambda + 4 beta
    assert rep.fitted_lambda == -2 * beta
    assert rep.trace_residual == 0


def test_star_off_uses_plain_ricci(geo, V):
    params = SolitonParams(1, 0, 1, star=False)
    rep = soliton_residual(geo, V, params, "trace")
    # 2*5*Lambda = -16 - 2*(-20) + 0  =>  Lambda = 12/5
    assert rep.fitted_lambda == Fraction(12, 5)
    assert rep.special_case == "k-Ricci"


def test_exact_mode_needs_lambda(geo, V):
    with pytest.raises(UnknownLambda):
        soliton_residual(geo, V, SYMBOLIC, "exact")


def test_fitting_rejects_non_constant_k(geo, V):
    with pytest.raises(NonConstantK):
        soliton_residual(geo, V, SolitonParams(1, 0, v), "trace")


def test_zero_k_rejected():
    with pytest.raises(SolitonError):
        SolitonParams(1, 0, 0)


def test_classify_lambda():
    assert classify_lambda(CoeffExpr.parse("1/3")) == "expanding"
    assert classify_lambda(ZERO) == "steady"
    assert classify_lambda(CoeffExpr.parse("-2")) == "shrinking"
    assert classify_lambda(beta) == "indeterminate"


# -- closed forms --------------------------------------------------------------------

def test_xi_trace_lambda(geo):
    lam, label = xi_trace_lambda(geo, beta)
    assert lam == -2 * beta and label == "indeterminate"
    assert xi_trace_lambda_value(0, 2, beta) == 8 * beta
    assert xi_trace_lambda(geo, 0) == (ZERO, "steady")


def test_laplacian_identity_matches_divergence(geo, V):
    lam = soliton_residual(geo, V, SYMBOLIC, "trace").fitted_lambda
    res = laplacian_identity(geo.scalar, geo.n, SYMBOLIC.with_lambda(lam), geo.manifold.coords)
    assert res.value == 8 == divergence(geo.manifold, geo.connection, V)


def test_laplacian_special_cases():
    lam = symbol("Lambda")
    yam = laplacian_identity(-20, 2, SolitonParams(0, 2, 2, lam))
    assert yam.special_cases["yamabe"] == yam.value == (-4 - lam) * 5 / 2
    ric = laplacian_identity(-20, 2, SolitonParams(1, 0, 1, 0))
    assert ric.value == ric.special_cases["ricci"] == 4
    ein = laplacian_identity(-20, 2, SolitonParams(1, 1, 2, 1))
    assert ein.value == ein.special_cases["einstein"]


def test_laplacian_symbolic_k_only_when_divisible():
    # 1/k is outside the algebra, so a symbolic k needs a numerator that is a multiple of k
    with pytest.raises(NonConstantK):
        laplacian_identity(-20, 2, SolitonParams(0, 2, k, symbol("Lambda")))


def test_laplacian_needs_constant_k():
    with pytest.raises(NonConstantK):
        laplacian_identity(-20, 2, SolitonParams(1, 0, v, 0), coords=("v",))
    with pytest.raises(NonConstantK):
        laplacian_identity(-20, 2, SolitonParams(1, 0, k + 1, 0))


def test_theorem_omega_killing():
    assert theorem_omega(-20, 2, SolitonParams(alpha, beta, k, -2 * beta)) == 0


def test_eta_einstein(geo):
    data = eta_einstein_analyze(geo.manifold, geo.ricci)
    assert (data.a, data.b) == (-4, 0)
    assert lambda_eta_einstein(data.a, data.b, geo.n, geo.scalar, SYMBOLIC) == -2 * beta


def test_eta_einstein_synthetic(m):
    s = m.metric_tensor.scale(2) + m.eta_eta.scale(3)
    data = eta_einstein_analyze(m, s)
    assert (data.a, data.b) == (2, 3)
    assert data.trace(m.n) == m.metric_trace(s) == 13


def test_not_eta_einstein(m):
    s = Tensor02.build(5, lambda i, j: 1 if (i, j) == (0, 0) else 0)
    assert eta_einstein_analyze(m, s) is None


def test_star_ricci_closed_form_is_eta_einstein(geo):
    data = eta_einstein_analyze(geo.manifold, star_ricci_kenmotsu(geo.manifold, geo.ricci))
    assert (data.a, data.b) == (-1, 1)


def test_lambda_torse_for_xi(geo):
    m = geo.manifold
    lam = lambda_torse(geo.n, geo.scalar, SYMBOLIC, 1, -1)
    assert lam == (4 * alpha - 10 * beta - 4 * k) / 5
    assert soliton_residual(geo, m.xi_field, SYMBOLIC, "trace").fitted_lambda == lam
    assert lam.substitute({"k": alpha}) == -2 * beta


def test_torse_specializations():
    spec = torse_specializations(2, -20, SYMBOLIC, symbol("psi"), symbol("w"))
    assert spec["concurrent"] == lambda_torse(2, -20, SYMBOLIC, 1, 0)
    assert spec["parallel"] == lambda_torse(2, -20, SYMBOLIC, 0, 0)
    unit_k = concurrent_lambda_unit_k(2, -20, SYMBOLIC)
    assert unit_k - spec["concurrent"] == k - 1
    assert unit_k == spec["concurrent"].substitute({"k": 1})


# -- vector classification -----------------------------------------------------------

def test_xi_is_torse_forming(geo):
    m = geo.manifold
    res = torse_forming_classify(m, geo.connection, m.xi_field)
    tf = res.torse_forming
    assert tf.psi == 1
    assert tf.omega == -m.xi_field  # omega = -eta with identity metric
    assert tf.omega_of(m.xi_field) == -1
    assert res.subtype == "generic"


def test_e1_is_not_torse_forming(geo):
    m = geo.manifold
    res = torse_forming_classify(m, geo.connection, m.e(0))
    assert res.torse_forming is None and res.subtype == "not-torse-forming"
    assert res.notes


def test_potential_component_zero_everywhere_rejected(geo):
    m = geo.manifold
    with pytest.raises(NotNowhereVanishing):
        torse_forming_classify(m, geo.connection, m.e(0).scale(x))


def test_torse_forming_subtypes():
    flat = build_manifold(3, ("a", "b", "c"), phi=[[0, -1, 0], [1, 0, 0], [0, 0, 0]], xi=2,
                          frame=[("a", 1), ("b", 1), ("c", 1)])
    geo = analyze(flat)
    parallel = classify_vector(geo, flat.e(0))
    assert parallel.subtype == "parallel"
    assert parallel.conformal.kind == "killing"
    a, b, c = symbol("a"), symbol("b"), symbol("c")
    position = flat.to_frame_components({"a": a, "b": b, "c": c})
    # the position field generates dilations: L g = 2 g
    dilation = conformal_killing_classify(flat, geo.connection, position)
    assert dilation.omega == 1 and dilation.kind == "proper-homothetic"


def test_translation_is_killing(geo, P):
    res = classify_vector(geo, P)
    assert res.conformal is not None
    assert res.conformal.kind == "killing" and res.conformal.omega == 0


def test_potential_is_not_conformal_killing(geo, V):
    assert conformal_killing_classify(geo.manifold, geo.connection, V) is None


# -- gradient solitons -------------------------------------------------------------------

def test_gradient_data_of_v(geo):
    m = geo.manifold
    data = gradient_data(m, geo.connection, v)
    assert data.gradient == m.xi_field
    assert data.hessian == g_minus_eta(m)


def test_gradient_soliton_exact(geo):
    rep = gradient_residual(geo, v, SolitonParams(alpha, beta, alpha, -2 * beta))
    assert rep.residual_zero and rep.satisfied
    assert rep.laplacian == 4 == rep.predicted_laplacian
    assert rep.notes == []


def test_gradient_residual_witness(geo):
    lam = symbol("Lambda")
    rep = gradient_residual(geo, v, SolitonParams(alpha, beta, k, lam))
    i, j, c = rep.witness
    assert (i, j) == (0, 0)
    assert c == (k - alpha) + (lam + 2 * beta)


def test_constant_potential(geo):
    m = geo.manifold
    lam = symbol("Lambda")
    rep = gradient_residual(geo, 3, SolitonParams(alpha, beta, k, lam))
    assert gradient_data(m, geo.connection, 3).hessian.is_zero()
    expected = geo.star_ricci.scale(alpha) + m.metric_tensor.scale(lam + 2 * beta)
    assert rep.residual == expected
    zero_case = gradient_residual(geo, 3, SolitonParams(0, beta, k, -2 * beta))
    assert zero_case.residual_zero


def test_gradient_needs_lambda(geo):
    with pytest.raises(UnknownLambda):
        gradient_residual(geo, v, SYMBOLIC)
