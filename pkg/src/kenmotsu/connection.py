"""Levi-Civita connection of a constant frame metric via Koszul's formula."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import ZERO, CoeffExpr
from .manifold import FramedManifold
from .tensors import Endomorphism, FrameVectorField

__all__ = [
    "Connection",
    "covariant_derivative_endomorphism",
    "covariant_derivative_vector",
    "koszul_connection",
]


@dataclass(frozen=True)
class Connection:
    """``gamma[i][j]`` holds the frame components of nabla_{e_i} e_j."""

    gamma: tuple[tuple[FrameVectorField, ...], ...]

    def __call__(self, i: int, j: int) -> FrameVectorField:
        return self.gamma[i][j]

    def symbol(self, k: int, i: int, j: int) -> CoeffExpr:
        return self.gamma[i][j][k]

    @property
    def dim(self) -> int:
        return len(self.gamma)


def koszul_connection(m: FramedManifold) -> Connection:
    """Solve Koszul's formula frame-pairwise.

    With g(e_i, e_j) constant the derivative terms drop out and

        2 g(nabla_i e_j, e_k) = g(e_k, [e_i, e_j]) - g(e_i, [e_j, e_k]) - g(e_j, [e_i, e_k]).
    """
    n = m.dim
    c = m.structure()
    g = m.metric
    ginv = m.metric_inverse

    def lowered(l: int, a: int, b: int) -> CoeffExpr:
        # g(e_l, [e_a, e_b])
        vec = c[a][b]
        total = ZERO
        for mm in range(n):
            if g[l][mm] and not vec[mm].is_zero():
                total = total + vec[mm] * g[l][mm]
        return total

    half = Fraction(1, 2)
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            low = [(lowered(k, i, j) - lowered(i, j, k) - lowered(j, i, k)) * half
                   for k in range(n)]
            row.append(FrameVectorField(
                sum((low[l] * ginv[k][l] for l in range(n) if ginv[k][l]), ZERO)
                for k in range(n)))
        gamma.append(tuple(row))
    return Connection(tuple(gamma))


def covariant_derivative_vector(m: FramedManifold, conn: Connection,
                                x: FrameVectorField, w: FrameVectorField) -> FrameVectorField:
    """nabla_X W = X(W^j) e_j + X^i W^j nabla_{e_i} e_j."""
    out = FrameVectorField(m.derivative(x, wj) for wj in w)
    for i, xi in enumerate(x):
        if xi.is_zero():
            continue
        for j, wj in enumerate(w):
            if wj.is_zero():
                continue
            g_ij = conn.gamma[i][j]
            if not g_ij.is_zero():
                out = out + g_ij.scale(xi * wj)
    return out


def covariant_derivative_endomorphism(m: FramedManifold, conn: Connection,
                                      x: FrameVectorField, a: Endomorphism) -> Endomorphism:
    """(nabla_X A)W = nabla_X(A W) - A(nabla_X W), tabulated on the frame."""
    columns = []
    for w in m.basis():
        columns.append(covariant_derivative_vector(m, conn, x, a(w))
                       - a(covariant_derivative_vector(m, conn, x, w)))
    return Endomorphism.from_columns(columns)


def covariant_derivative_form(m: FramedManifold, conn: Connection, x: FrameVectorField,
                              form: FrameVectorField, y: FrameVectorField) -> CoeffExpr:
    """(nabla_X w)(Y) = X(w(Y)) - w(nabla_X Y) for a 1-form given by frame components."""
    def apply(v: FrameVectorField) -> CoeffExpr:
        return sum((a * b for a, b in zip(form, v)), ZERO)

    return m.derivative(x, apply(y)) - apply(covariant_derivative_vector(m, conn, x, y))
