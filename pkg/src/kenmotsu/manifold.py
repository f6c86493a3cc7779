"""Odd-dimensional manifolds described by an orthonormal-style frame and
an almost contact metric structure (phi, xi, eta, g).

Two frame descriptions are supported:

* diagonal-unit frames, ``e_i = u_i * d/d(coord_sigma(i))`` with every
  ``u_i`` invertible in the coefficient algebra;
* abstract frames given only by their structure functions
  ``[e_i, e_j] = sum_k c^k_ij e_k``.

The metric, phi and xi are constant in the frame; eta is always derived as
``eta(X) = g(X, xi)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import ZERO, CoeffExpr, NotAUnit, ZeroElement, as_expr
from .tensors import Endomorphism, FrameVectorField, Tensor02, frame_basis

__all__ = [
    "BadMetric",
    "BadPhiShape",
    "EvenDimension",
    "FramedManifold",
    "ManifoldError",
    "NonUnitFrameScale",
    "StructureOnlyFrame",
    "XiNotUnit",
    "build_manifold",
    "determinant",
    "invert_matrix",
]


class ManifoldError(ValueError):
    pass


class EvenDimension(ManifoldError):
    pass


class NonUnitFrameScale(ManifoldError):
    pass


class XiNotUnit(ManifoldError):
    pass


class BadPhiShape(ManifoldError):
    pass


class BadMetric(ManifoldError):
    pass


class StructureOnlyFrame(ManifoldError):
    pass


def determinant(m: Sequence[Sequence[Fraction]]) -> Fraction:
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    det = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        det *= a[col][col]
        for r in range(col + 1, n):
            f = a[r][col] / a[col][col]
            if f:
                for c in range(col, n):
                    a[r][c] -= f * a[col][c]
    return det


def invert_matrix(m: Sequence[Sequence[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise BadMetric("metric matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


@dataclass(frozen=True, eq=False)
class FramedManifold:
    dim: int
    coords: tuple[str, ...]
    frame_names: tuple[str, ...]
    metric: tuple[tuple[Fraction, ...], ...]
    xi: tuple[Fraction, ...]
    phi: tuple[tuple[Fraction, ...], ...]
    frame: tuple[tuple[str, CoeffExpr], ...] | None = None
    structure_table: tuple[tuple[FrameVectorField, ...], ...] | None = field(default=None, repr=False)
    name: str = "manifold"

    # -- derived data -------------------------------------------------------

    @property
    def n(self) -> int:
        return (self.dim - 1) // 2

    @property
    def is_coordinate_frame(self) -> bool:
        return self.frame is not None

    @property
    def metric_inverse(self) -> tuple[tuple[Fraction, ...], ...]:
        cached = self.__dict__.get("_metric_inverse")
        if cached is None:
            cached = invert_matrix(self.metric)
            object.__setattr__(self, "_metric_inverse", cached)
        return cached

    @property
    def eta(self) -> tuple[Fraction, ...]:
        """Components eta_i = g(e_i, xi)."""
        return tuple(sum((self.metric[i][j] * self.xi[j] for j in range(self.dim)), Fraction(0))
                     for i in range(self.dim))

    @property
    def xi_field(self) -> FrameVectorField:
        return FrameVectorField(self.xi)

    @property
    def metric_tensor(self) -> Tensor02:
        return Tensor02(self.metric)

    @property
    def eta_eta(self) -> Tensor02:
        eta = self.eta
        return Tensor02.build(self.dim, lambda i, j: eta[i] * eta[j])

    @property
    def phi_endomorphism(self) -> Endomorphism:
        return Endomorphism(self.phi)

    def basis(self) -> list[FrameVectorField]:
        return frame_basis(self.dim)

    def e(self, i: int) -> FrameVectorField:
        return FrameVectorField.basis(self.dim, i)

    def index_of(self, name: str) -> int:
        try:
            return self.frame_names.index(name)
        except ValueError:
            raise KeyError(f"unknown frame field {name!r}") from None

    # -- differential operations --------------------------------------------

    def frame_derivative(self, i: int, a) -> CoeffExpr:
        """Directional derivative e_i(a)."""
        a = as_expr(a)
        if a.is_zero():
            return ZERO
        if self.frame is None:
            if a.depends_on(self.coords):
                raise StructureOnlyFrame(
                    f"cannot differentiate {a} along {self.frame_names[i]}: "
                    "the frame is given by structure functions only")
            return ZERO
        coord, scale = self.frame[i]
        d = a.diff(coord)
        return ZERO if d.is_zero() else scale * d

    def derivative(self, x: FrameVectorField, a) -> CoeffExpr:
        """X(a) for a frame vector field X."""
        a = as_expr(a)
        total = ZERO
        if a.is_zero():
            return total
        for i, xi in enumerate(x):
            if not xi.is_zero():
                d = self.frame_derivative(i, a)
                if not d.is_zero():
                    total = total + xi * d
        return total

    def to_coordinate_components(self, x: FrameVectorField) -> dict[str, CoeffExpr]:
        if self.frame is None:
            raise StructureOnlyFrame("frame has no coordinate expression")
        out = {c: ZERO for c in self.coords}
        for xi, (coord, scale) in zip(x, self.frame):
            out[coord] = out[coord] + xi * scale
        return out

    def to_frame_components(self, w: Mapping[str, object]) -> FrameVectorField:
        """Re-express a coordinate vector field ``{coord: coefficient}`` in the frame."""
        if self.frame is None:
            raise StructureOnlyFrame("frame has no coordinate expression")
        unknown = set(w) - set(self.coords)
        if unknown:
            raise KeyError(f"unknown coordinates: {sorted(unknown)}")
        return FrameVectorField(as_expr(w.get(coord, 0)) * scale.invert_unit()
                                for coord, scale in self.frame)

    def lie_bracket(self, x: FrameVectorField, y: FrameVectorField) -> FrameVectorField:
        if self.frame is not None:
            return self._coordinate_bracket(x, y)
        return self.structure_bracket(x, y)

    def _coordinate_bracket(self, x: FrameVectorField, y: FrameVectorField) -> FrameVectorField:
        xc = self.to_coordinate_components(x)
        yc = self.to_coordinate_components(y)
        bracket = {}
        for c in self.coords:
            total = ZERO
            for d in self.coords:
                if not xc[d].is_zero():
                    total = total + xc[d] * yc[c].diff(d)
                if not yc[d].is_zero():
                    total = total - yc[d] * xc[c].diff(d)
            bracket[c] = total
        return self.to_frame_components(bracket)

    def structure_bracket(self, x: FrameVectorField, y: FrameVectorField) -> FrameVectorField:
        """[X, Y] = (X(Y^k) - Y(X^k)) e_k + X^i Y^j [e_i, e_j]."""
        table = self.structure()
        out = FrameVectorField(self.derivative(x, yk) - self.derivative(y, xk)
                               for xk, yk in zip(x, y))
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if yj.is_zero() or table[i][j].is_zero():
                    continue
                out = out + table[i][j].scale(xi * yj)
        return out

    def structure(self) -> tuple[tuple[FrameVectorField, ...], ...]:
        """Table of [e_i, e_j] in the frame."""
        if self.structure_table is None:
            basis = self.basis()
            table = tuple(tuple(self._coordinate_bracket(a, b) for b in basis) for a in basis)
            object.__setattr__(self, "structure_table", table)
        return self.structure_table

    # -- contact structure --------------------------------------------------

    def phi_apply(self, x: FrameVectorField) -> FrameVectorField:
        return self.phi_endomorphism(x)

    def eta_apply(self, x: FrameVectorField) -> CoeffExpr:
        total = ZERO
        for e, xi in zip(self.eta, x):
            if e:
                total = total + xi * e
        return total

    def metric_pairing(self, x: FrameVectorField, y: FrameVectorField) -> CoeffExpr:
        return self.metric_tensor(x, y)

    def contact_apply(self, x: FrameVectorField) -> tuple[FrameVectorField, CoeffExpr]:
        return self.phi_apply(x), self.eta_apply(x)

    def raise_index(self, t: Tensor02) -> Endomorphism:
        """The endomorphism A with g(A X, Y) = T(X, Y)."""
        ginv = self.metric_inverse
        n = self.dim
        rows = []
        for k in range(n):
            row = []
            for j in range(n):
                total = ZERO
                for l in range(n):
                    if ginv[k][l]:
                        total = total + t[l, j] * ginv[k][l]
                row.append(total)
            rows.append(row)
        return Endomorphism(rows)

    def metric_trace(self, t: Tensor02) -> CoeffExpr:
        ginv = self.metric_inverse
        total = ZERO
        for i in range(self.dim):
            for j in range(self.dim):
                if ginv[i][j]:
                    total = total + t[i, j] * ginv[i][j]
        return total

    def gradient(self, f) -> FrameVectorField:
        """Metric gradient Df with g(Df, X) = X(f)."""
        df = [self.frame_derivative(j, f) for j in range(self.dim)]
        ginv = self.metric_inverse
        return FrameVectorField(
            sum((df[j] * ginv[i][j] for j in range(self.dim) if ginv[i][j]), ZERO)
            for i in range(self.dim))

    def replace(self, **changes) -> FramedManifold:
        """Rebuild with some fields changed, skipping validation."""
        data = dict(dim=self.dim, coords=self.coords, frame_names=self.frame_names,
                    metric=self.metric, xi=self.xi, phi=self.phi, frame=self.frame,
                    structure_table=self.structure_table if self.frame is None else None,
                    name=self.name)
        data.update(changes)
        if "frame" in changes and changes["frame"] is not None:
            data["structure_table"] = None
        return FramedManifold(**data)


def _as_frac_matrix(m, dim: int, what: str, exc=ManifoldError) -> tuple[tuple[Fraction, ...], ...]:
    try:
        rows = tuple(tuple(Fraction(x) for x in row) for row in m)
    except (TypeError, ValueError) as err:
        raise exc(f"{what} must be a matrix of rationals") from err
    if len(rows) != dim or any(len(r) != dim for r in rows):
        raise exc(f"{what} must be {dim}x{dim}")
    return rows


def build_manifold(dim: int, coords: Sequence[str], *, phi, xi,
                   frame: Sequence[tuple[str, object]] | None = None,
                   structure: Mapping[tuple[int, int], object] | None = None,
                   metric=None, frame_names: Sequence[str] | None = None,
                   name: str = "manifold", strict: bool = True) -> FramedManifold:
    """Validate a manifold description and return a :class:`FramedManifold`.

    ``phi[k][j]`` is the e_k component of phi(e_j).  ``xi`` is a frame index
    or a list of constant frame components.  ``structure`` maps ``(i, j)`` to
    the components of ``[e_i, e_j]``; the antisymmetric partner is filled in.
    With ``strict=False`` the contact-structure checks (xi unit length) are
    skipped so that a broken structure can be handed to the verifier.
    """
    if not isinstance(dim, int) or dim < 3 or dim % 2 == 0:
        raise EvenDimension(f"dimension must be odd and at least 3, got {dim}")
    coords = tuple(coords)
    if len(coords) != dim or len(set(coords)) != dim:
        raise ManifoldError(f"need {dim} distinct coordinates, got {list(coords)}")
    names = tuple(frame_names) if frame_names else tuple(f"e{i + 1}" for i in range(dim))
    if len(names) != dim or len(set(names)) != dim:
        raise ManifoldError("frame names must be distinct and one per dimension")
    if (frame is None) == (structure is None):
        raise ManifoldError("give exactly one of frame or structure")

    frame_t = None
    table = None
    if frame is not None:
        if len(frame) != dim:
            raise ManifoldError(f"frame needs {dim} entries")
        targets = [c for c, _ in frame]
        if sorted(targets) != sorted(coords):
            raise ManifoldError("frame targets must be a permutation of the coordinates")
        entries = []
        for i, (coord, scale) in enumerate(frame):
            scale = as_expr(scale)
            try:
                scale.invert_unit()
            except (NotAUnit, ZeroElement) as err:
                raise NonUnitFrameScale(f"frame scale {scale} of {names[i]} is not invertible") from err
            entries.append((coord, scale))
        frame_t = tuple(entries)
    else:
        zero = FrameVectorField.zero(dim)
        rows = [[zero] * dim for _ in range(dim)]
        for (i, j), vec in structure.items():
            vec = vec if isinstance(vec, FrameVectorField) else FrameVectorField(vec)
            if vec.dim != dim:
                raise ManifoldError(f"structure entry ({i}, {j}) has wrong length")
            if i == j and not vec.is_zero():
                raise ManifoldError("[e_i, e_i] must vanish")
            if not rows[i][j].is_zero() and rows[i][j] != vec:
                raise ManifoldError(f"conflicting structure functions for ({i}, {j})")
            if not rows[j][i].is_zero() and rows[j][i] != -vec:
                raise ManifoldError(f"structure functions for ({i}, {j}) are not antisymmetric")
            rows[i][j] = vec
            rows[j][i] = -vec
        table = tuple(tuple(r) for r in rows)

    if metric is None:
        metric_t = tuple(tuple(Fraction(int(i == j)) for j in range(dim)) for i in range(dim))
    else:
        metric_t = _as_frac_matrix(metric, dim, "metric", BadMetric)
        if any(metric_t[i][j] != metric_t[j][i] for i in range(dim) for j in range(i)):
            raise BadMetric("metric must be symmetric")
        for size in range(1, dim + 1):
            if determinant([row[:size] for row in metric_t[:size]]) <= 0:
                raise BadMetric("metric must be positive definite")

    phi_t = _as_frac_matrix(phi, dim, "phi", BadPhiShape)

    if isinstance(xi, int):
        if not 0 <= xi < dim:
            raise ManifoldError(f"xi index {xi} out of range")
        xi_t = tuple(Fraction(int(i == xi)) for i in range(dim))
    else:
        xi_t = tuple(Fraction(x) for x in xi)
        if len(xi_t) != dim:
            raise ManifoldError("xi must have one component per frame field")

    m = FramedManifold(dim=dim, coords=coords, frame_names=names, metric=metric_t, xi=xi_t,
                       phi=phi_t, frame=frame_t, structure_table=table, name=name)
    if strict:
        eta_xi = sum((e * x for e, x in zip(m.eta, xi_t)), Fraction(0))
        if eta_xi != 1:
            raise XiNotUnit(f"eta(xi) = {eta_xi}, expected 1")
    return m
