"""Frame-component containers for vectors, (0,2) tensors and endomorphisms."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import ZERO, CoeffExpr, as_expr

__all__ = ["Endomorphism", "FrameVectorField", "Tensor02", "frame_basis"]


class FrameVectorField:
    """Vector field given by its components in the manifold's frame."""

    __slots__ = ("components",)

    def __init__(self, components: Iterable) -> None:
        self.components: tuple[CoeffExpr, ...] = tuple(as_expr(c) for c in components)

    @classmethod
    def zero(cls, dim: int) -> FrameVectorField:
        return cls([ZERO] * dim)

    @classmethod
    def basis(cls, dim: int, index: int, coeff=1) -> FrameVectorField:
        return cls([coeff if i == index else 0 for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> CoeffExpr:
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def _check(self, other: FrameVectorField) -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: FrameVectorField) -> FrameVectorField:
        self._check(other)
        return FrameVectorField(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other: FrameVectorField) -> FrameVectorField:
        self._check(other)
        return FrameVectorField(a - b for a, b in zip(self.components, other.components))

    def __neg__(self) -> FrameVectorField:
        return FrameVectorField(-a for a in self.components)

    def scale(self, f) -> FrameVectorField:
        f = as_expr(f)
        return FrameVectorField(f * a for a in self.components)

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def map(self, fn: Callable[[CoeffExpr], CoeffExpr]) -> FrameVectorField:
        return FrameVectorField(fn(c) for c in self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FrameVectorField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def render(self, names: Sequence[str]) -> str:
        parts = []
        for name, c in zip(names, self.components):
            if c.is_zero():
                continue
            text = str(c)
            if c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            elif len(c) > 1:
                parts.append(f"({text})*{name}")
            else:
                parts.append(f"{text}*{name}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self) -> str:
        return f"FrameVectorField({[str(c) for c in self.components]})"


def frame_basis(dim: int) -> list[FrameVectorField]:
    return [FrameVectorField.basis(dim, i) for i in range(dim)]


class Tensor02:
    """A (0,2) tensor as a dim x dim table of frame components ``T(e_i, e_j)``."""

    __slots__ = ("table",)

    def __init__(self, table: Iterable[Iterable]) -> None:
        self.table: tuple[tuple[CoeffExpr, ...], ...] = tuple(
            tuple(as_expr(c) for c in row) for row in table)
        n = len(self.table)
        if any(len(row) != n for row in self.table):
            raise ValueError("Tensor02 table must be square")

    @classmethod
    def build(cls, dim: int, fn: Callable[[int, int], object]) -> Tensor02:
        return cls([[fn(i, j) for j in range(dim)] for i in range(dim)])

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[Fraction]]) -> Tensor02:
        return cls(matrix)

    @property
    def dim(self) -> int:
        return len(self.table)

    def __getitem__(self, idx: tuple[int, int]) -> CoeffExpr:
        i, j = idx
        return self.table[i][j]

    def __call__(self, x: FrameVectorField, y: FrameVectorField) -> CoeffExpr:
        total = ZERO
        for i, xi in enumerate(x):
            if xi.is_zero():
                continue
            for j, yj in enumerate(y):
                if not yj.is_zero() and not self.table[i][j].is_zero():
                    total = total + xi * yj * self.table[i][j]
        return total

    def __add__(self, other: Tensor02) -> Tensor02:
        return Tensor02([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.table, other.table)])

    def __sub__(self, other: Tensor02) -> Tensor02:
        return Tensor02([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.table, other.table)])

    def __neg__(self) -> Tensor02:
        return Tensor02([[-a for a in row] for row in self.table])

    def scale(self, f) -> Tensor02:
        f = as_expr(f)
        return Tensor02([[f * a for a in row] for row in self.table])

    __mul__ = scale
    __rmul__ = scale

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.table for c in row)

    def is_symmetric(self) -> bool:
        n = self.dim
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i))

    def entries(self):
        for i, row in enumerate(self.table):
            for j, c in enumerate(row):
                yield i, j, c

    def first_nonzero(self) -> tuple[int, int, CoeffExpr] | None:
        for i, j, c in self.entries():
            if not c.is_zero():
                return i, j, c
        return None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor02):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"Tensor02({[[str(c) for c in row] for row in self.table]})"


class Endomorphism:
    """A (1,1) tensor: ``table[k][j]`` is the e_k component of A(e_j)."""

    __slots__ = ("table",)

    def __init__(self, table: Iterable[Iterable]) -> None:
        self.table: tuple[tuple[CoeffExpr, ...], ...] = tuple(
            tuple(as_expr(c) for c in row) for row in table)

    @classmethod
    def from_columns(cls, columns: Sequence[FrameVectorField]) -> Endomorphism:
        n = len(columns)
        return cls([[columns[j][k] for j in range(n)] for k in range(n)])

    @classmethod
    def identity(cls, dim: int) -> Endomorphism:
        return cls([[1 if i == j else 0 for j in range(dim)] for i in range(dim)])

    @property
    def dim(self) -> int:
        return len(self.table)

    def column(self, j: int) -> FrameVectorField:
        return FrameVectorField(row[j] for row in self.table)

    def __call__(self, x: FrameVectorField) -> FrameVectorField:
        out = []
        for row in self.table:
            total = ZERO
            for a, xj in zip(row, x):
                if not a.is_zero() and not xj.is_zero():
                    total = total + a * xj
            out.append(total)
        return FrameVectorField(out)

    def trace(self) -> CoeffExpr:
        total = ZERO
        for i in range(self.dim):
            total = total + self.table[i][i]
        return total

    def __add__(self, other: Endomorphism) -> Endomorphism:
        return Endomorphism([[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.table, other.table)])

    def __sub__(self, other: Endomorphism) -> Endomorphism:
        return Endomorphism([[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.table, other.table)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self.table == other.table

    def __hash__(self) -> int:
        return hash(self.table)

    def __repr__(self) -> str:
        return f"Endomorphism({[[str(c) for c in row] for row in self.table]})"
