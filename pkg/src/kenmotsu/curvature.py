"""Riemann, Ricci and *-Ricci data on a framed manifold.

Conventions:

* ``R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z``
* ``S(X, Y) = trace(Z -> R(Z, X)Y)``
* ``S*(X, Y) = 1/2 trace(Z -> phi(R(X, phi Y) Z))``

Traces of endomorphisms are taken on frame components, so they do not depend
on the metric; scalar contractions of (0,2) tensors use the inverse metric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import ZERO, CoeffExpr
from .connection import Connection, covariant_derivative_vector
from .manifold import FramedManifold
from .tensors import Endomorphism, FrameVectorField, Tensor02

__all__ = [
    "NotKenmotsu",
    "RiemannTensor",
    "ricci",
    "ricci_operators",
    "riemann",
    "scalar_curvature",
    "star_ricci_definitional",
    "star_ricci_kenmotsu",
    "star_scalar",
]


class NotKenmotsu(ValueError):
    pass


@dataclass(frozen=True)
class RiemannTensor:
    """``components[i][j][k]`` is R(e_i, e_j)e_k."""

    components: tuple[tuple[tuple[FrameVectorField, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.components)

    def __call__(self, x: FrameVectorField, y: FrameVectorField, z: FrameVectorField) -> FrameVectorField:
        n = self.dim
        out = FrameVectorField.zero(n)
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero():
                    continue
                for k, zk in enumerate(z):
                    if zk.is_zero():
                        continue
                    r = self.components[i][j][k]
                    if not r.is_zero():
                        out = out + r.scale(xi * yj * zk)
        return out

    def nonzero(self):
        for i, plane in enumerate(self.components):
            for j, row in enumerate(plane):
                for k, vec in enumerate(row):
                    if not vec.is_zero():
                        yield (i, j, k), vec

    def endomorphism(self, x: FrameVectorField, y: FrameVectorField) -> Endomorphism:
        """Z -> R(X, Y)Z."""
        basis = [FrameVectorField.basis(self.dim, k) for k in range(self.dim)]
        return Endomorphism.from_columns([self(x, y, z) for z in basis])


def riemann(m: FramedManifold, conn: Connection) -> RiemannTensor:
    n = m.dim
    basis = m.basis()
    structure = m.structure()
    nabla = lambda x, w: covariant_derivative_vector(m, conn, x, w)  # noqa: E731
    comps = []
    for i in range(n):
        plane = []
        for j in range(n):
            row = []
            bracket = structure[i][j]
            for k in range(n):
                val = (nabla(basis[i], conn.gamma[j][k]) - nabla(basis[j], conn.gamma[i][k])
                       - nabla(bracket, basis[k]))
                row.append(val)
            plane.append(tuple(row))
        comps.append(tuple(plane))
    return RiemannTensor(tuple(comps))


def ricci(m: FramedManifold, r: RiemannTensor) -> Tensor02:
    n = m.dim

    def entry(a: int, b: int) -> CoeffExpr:
        total = ZERO
        for i in range(n):
            total = total + r.components[i][a][b][i]
        return total

    return Tensor02.build(n, entry)


def scalar_curvature(m: FramedManifold, s: Tensor02) -> CoeffExpr:
    return m.metric_trace(s)


def star_ricci_definitional(m: FramedManifold, r: RiemannTensor) -> Tensor02:
    """S*(X, Y) = 1/2 trace(Z -> phi R(X, phi Y) Z)."""
    n = m.dim
    phi = m.phi_endomorphism
    basis = m.basis()
    half = Fraction(1, 2)

    def entry(a: int, b: int) -> CoeffExpr:
        phi_y = phi(basis[b])
        total = ZERO
        for k in range(n):
            total = total + phi(r(basis[a], phi_y, basis[k]))[k]
        return total * half

    return Tensor02.build(n, entry)


def star_ricci_kenmotsu(m: FramedManifold, s: Tensor02, kenmotsu_verified: bool = True) -> Tensor02:
    """S* = S + (2n - 1) g + eta (x) eta, valid on Kenmotsu manifolds."""
    if not kenmotsu_verified:
        raise NotKenmotsu("the closed form for S* needs a verified Kenmotsu structure")
    return s + m.metric_tensor.scale(2 * m.n - 1) + m.eta_eta


def star_scalar(m: FramedManifold, s_star: Tensor02) -> CoeffExpr:
    return m.metric_trace(s_star)


def ricci_operators(m: FramedManifold, s: Tensor02, s_star: Tensor02) -> tuple[Endomorphism, Endomorphism]:
    """The Ricci operators Q and Q* with g(QX, Y) = S(X, Y)."""
    return m.raise_index(s), m.raise_index(s_star)
