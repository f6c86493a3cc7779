"""Exact checks of the almost contact axioms, the Kenmotsu conditions and the
standard Kenmotsu curvature identities.

Every check compares canonical forms; a failing check records the first
frame tuple where the two sides differ together with the nonzero residual.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable

from .algebra import ZERO, CoeffExpr
from .connection import (Connection, covariant_derivative_endomorphism,
                         covariant_derivative_form, covariant_derivative_vector)
from .curvature import RiemannTensor
from .manifold import FramedManifold
from .tensors import Endomorphism, FrameVectorField, Tensor02

__all__ = [
    "CheckResult",
    "identity_suite",
    "lemma_nabla_qstar",
    "qstar_derivative_formula",
    "star_ricci_agreement",
    "verify_almost_contact",
    "verify_jacobi",
    "verify_kenmotsu",
    "verify_levi_civita",
    "verify_riemann_symmetries",
]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    description: str = ""
    witness: tuple[str, ...] = ()
    residual: CoeffExpr | None = None
    component: str | None = None

    def __post_init__(self) -> None:
        if not self.passed and (self.residual is None or self.residual.is_zero()):
            raise ValueError("a failing check needs a nonzero residual")

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        out = {"name": self.name, "status": self.status, "description": self.description}
        if not self.passed:
            out["witness"] = list(self.witness)
            out["residual"] = str(self.residual)
            if self.component is not None:
                out["component"] = self.component
        return out


Side = Callable[..., "CoeffExpr | FrameVectorField"]


def _compare(m: FramedManifold, lhs, rhs, idx: tuple[int, ...]):
    """Return (residual, component name) of the first mismatch, or None."""
    diff = lhs - rhs
    if isinstance(diff, FrameVectorField):
        for k, c in enumerate(diff):
            if not c.is_zero():
                return c, m.frame_names[k]
        return None
    return None if diff.is_zero() else (diff, None)


def _check(m: FramedManifold, name: str, description: str, arity: int,
           lhs: Side, rhs: Side, indices: Iterable[tuple[int, ...]] | None = None) -> CheckResult:
    basis = m.basis()
    if indices is None:
        indices = product(range(m.dim), repeat=arity)
    for idx in indices:
        args = [basis[i] for i in idx]
        bad = _compare(m, lhs(*args), rhs(*args), idx)
        if bad is not None:
            residual, comp = bad
            return CheckResult(name, False, description,
                               tuple(m.frame_names[i] for i in idx), residual, comp)
    return CheckResult(name, True, description)


def verify_almost_contact(m: FramedManifold) -> list[CheckResult]:
    phi, eta, g = m.phi_apply, m.eta_apply, m.metric_pairing
    xi = m.xi_field
    zero = FrameVectorField.zero(m.dim)
    return [
        _check(m, "phi_squared", "phi^2 X = -X + eta(X) xi", 1,
               lambda x: phi(phi(x)), lambda x: -x + xi.scale(eta(x))),
        _check(m, "eta_of_xi", "eta(xi) = 1", 0, lambda: eta(xi), lambda: ZERO + 1),
        _check(m, "eta_after_phi", "eta(phi X) = 0", 1, lambda x: eta(phi(x)), lambda x: ZERO),
        _check(m, "phi_of_xi", "phi xi = 0", 0, lambda: phi(xi), lambda: zero),
        _check(m, "phi_metric_compatibility", "g(phi X, phi Y) = g(X, Y) - eta(X) eta(Y)", 2,
               lambda x, y: g(phi(x), phi(y)), lambda x, y: g(x, y) - eta(x) * eta(y)),
        _check(m, "phi_skew", "g(X, phi Y) = -g(phi X, Y)", 2,
               lambda x, y: g(x, phi(y)), lambda x, y: -g(phi(x), y)),
        _check(m, "eta_is_metric_dual", "g(X, xi) = eta(X)", 1,
               lambda x: g(x, xi), lambda x: eta(x)),
    ]


def verify_kenmotsu(m: FramedManifold, conn: Connection) -> list[CheckResult]:
    phi, eta, g = m.phi_apply, m.eta_apply, m.metric_pairing
    xi = m.xi_field
    nabla = lambda x, w: covariant_derivative_vector(m, conn, x, w)  # noqa: E731
    phi_end = m.phi_endomorphism

    def nabla_phi(x, y):
        return covariant_derivative_endomorphism(m, conn, x, phi_end)(y)

    return [
        _check(m, "kenmotsu_nabla_phi", "(nabla_X phi) Y = -g(X, phi Y) xi - eta(Y) phi X", 2,
               nabla_phi, lambda x, y: xi.scale(-g(x, phi(y))) - phi(x).scale(eta(y))),
        _check(m, "kenmotsu_nabla_xi", "nabla_X xi = X - eta(X) xi", 1,
               lambda x: nabla(x, xi), lambda x: x - xi.scale(eta(x))),
    ]


def identity_suite(m: FramedManifold, conn: Connection, r: RiemannTensor,
                   s: Tensor02) -> list[CheckResult]:
    eta, g = m.eta_apply, m.metric_pairing
    xi = m.xi_field
    nabla = lambda x, w: covariant_derivative_vector(m, conn, x, w)  # noqa: E731
    phi = m.phi_apply
    two_n = 2 * m.n
    eta_form = FrameVectorField(m.eta)
    return [
        _check(m, "curvature_eta_projection",
               "eta(R(X, Y) Z) = g(X, Z) eta(Y) - g(Y, Z) eta(X)", 3,
               lambda x, y, z: eta(r(x, y, z)),
               lambda x, y, z: g(x, z) * eta(y) - g(y, z) * eta(x)),
        _check(m, "curvature_on_xi", "R(X, Y) xi = eta(X) Y - eta(Y) X", 2,
               lambda x, y: r(x, y, xi), lambda x, y: y.scale(eta(x)) - x.scale(eta(y))),
        _check(m, "curvature_xi_slot", "R(X, xi) Y = g(X, Y) xi - eta(Y) X", 2,
               lambda x, y: r(x, xi, y), lambda x, y: xi.scale(g(x, y)) - x.scale(eta(y))),
        _check(m, "ricci_on_xi", "S(X, xi) = -2n eta(X)", 1,
               lambda x: s(x, xi), lambda x: eta(x) * (-two_n)),
        _check(m, "ricci_phi_invariance", "S(phi X, phi Y) = S(X, Y) + 2n eta(X) eta(Y)", 2,
               lambda x, y: s(phi(x), phi(y)), lambda x, y: s(x, y) + eta(x) * eta(y) * two_n),
        _check(m, "nabla_eta", "(nabla_X eta) Y = g(X, Y) - eta(X) eta(Y)", 2,
               lambda x, y: covariant_derivative_form(m, conn, x, eta_form, y),
               lambda x, y: g(x, y) - eta(x) * eta(y)),
        _check(m, "lie_xi_metric", "(L_xi g)(X, Y) = 2 [g(X, Y) - eta(X) eta(Y)]", 2,
               lambda x, y: g(nabla(x, xi), y) + g(x, nabla(y, xi)),
               lambda x, y: (g(x, y) - eta(x) * eta(y)) * 2),
    ]


def star_ricci_agreement(m: FramedManifold, definitional: Tensor02, closed_form: Tensor02,
                         r_value: CoeffExpr, r_star: CoeffExpr) -> list[CheckResult]:
    return [
        _check(m, "star_ricci_closed_form", "S*(X, Y) = S(X, Y) + (2n - 1) g(X, Y) + eta(X) eta(Y)", 2,
               lambda x, y: definitional(x, y), lambda x, y: closed_form(x, y)),
        _check(m, "star_scalar_shift", "r* = r + 4n^2", 0,
               lambda: r_star, lambda: r_value + 4 * m.n ** 2),
    ]


def lemma_nabla_qstar(m: FramedManifold, conn: Connection, q_star: Endomorphism) -> list[CheckResult]:
    """The three identities for the covariant derivative of Q* along and at xi."""
    xi = m.xi_field
    nabla = lambda x, w: covariant_derivative_vector(m, conn, x, w)  # noqa: E731

    def dq(y):
        return covariant_derivative_endomorphism(m, conn, y, q_star)

    zero = FrameVectorField.zero(m.dim)
    return [
        _check(m, "nabla_qstar_at_xi", "(nabla_Y Q*) xi = nabla_Y xi", 1,
               lambda y: dq(y)(xi), lambda y: nabla(y, xi)),
        _check(m, "nabla_xi_qstar", "(nabla_xi Q*) Y = 0", 1,
               lambda y: dq(xi)(y), lambda y: zero),
        _check(m, "nabla_qstar_lemma", "(nabla_Y Q*) xi - (nabla_xi Q*) Y = nabla_Y xi", 1,
               lambda y: dq(y)(xi) - dq(xi)(y), lambda y: nabla(y, xi)),
    ]


def qstar_derivative_formula(m: FramedManifold, conn: Connection, q_star: Endomorphism) -> CheckResult:
    """(nabla_Y Q*) X = g(X, Y) xi - 2 eta(X) eta(Y) xi + eta(X) Y.

    This follows from Q* X = -X + eta(X) xi, so it is only expected where
    that closed form of Q* holds.
    """
    eta, g = m.eta_apply, m.metric_pairing
    xi = m.xi_field
    return _check(m, "nabla_qstar_formula",
                  "(nabla_Y Q*) X = g(X, Y) xi - 2 eta(X) eta(Y) xi + eta(X) Y", 2,
                  lambda y, x: covariant_derivative_endomorphism(m, conn, y, q_star)(x),
                  lambda y, x: xi.scale(g(x, y) - eta(x) * eta(y) * 2) + y.scale(eta(x)))


def verify_jacobi(m: FramedManifold) -> CheckResult:
    br = m.lie_bracket
    zero = FrameVectorField.zero(m.dim)
    return _check(m, "jacobi", "[X, [Y, Z]] + [Y, [Z, X]] + [Z, [X, Y]] = 0", 3,
                  lambda x, y, z: br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)),
                  lambda x, y, z: zero)


def verify_levi_civita(m: FramedManifold, conn: Connection) -> list[CheckResult]:
    g = m.metric_pairing
    br = m.lie_bracket
    nabla = lambda x, w: covariant_derivative_vector(m, conn, x, w)  # noqa: E731
    return [
        _check(m, "torsion_free", "nabla_X Y - nabla_Y X = [X, Y]", 2,
               lambda x, y: nabla(x, y) - nabla(y, x), br),
        _check(m, "metric_compatible", "Z g(X, Y) = g(nabla_Z X, Y) + g(X, nabla_Z Y)", 3,
               lambda z, x, y: m.derivative(z, g(x, y)),
               lambda z, x, y: g(nabla(z, x), y) + g(x, nabla(z, y))),
    ]


def verify_riemann_symmetries(m: FramedManifold, r: RiemannTensor) -> list[CheckResult]:
    g = m.metric_pairing
    zero = FrameVectorField.zero(m.dim)
    return [
        _check(m, "riemann_antisymmetry", "R(X, Y) Z = -R(Y, X) Z", 3,
               lambda x, y, z: r(x, y, z), lambda x, y, z: -r(y, x, z)),
        _check(m, "first_bianchi", "R(X, Y) Z + R(Y, Z) X + R(Z, X) Y = 0", 3,
               lambda x, y, z: r(x, y, z) + r(y, z, x) + r(z, x, y), lambda x, y, z: zero),
        _check(m, "pair_symmetry", "g(R(X, Y) Z, W) = g(R(Z, W) X, Y)", 4,
               lambda x, y, z, w: g(r(x, y, z), w), lambda x, y, z, w: g(r(z, w, x), y)),
    ]
