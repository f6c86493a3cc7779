"""Exact coefficient algebra.

Every tensor component in the package lives in the ring spanned by terms

    q * x1^p1 * ... * xm^pm * exp(w1*y1 + ... + wl*yl)

with ``q`` and the weights ``w`` rational and the ``p`` nonnegative integers.
The ring is closed under addition, multiplication and partial
differentiation, and every single-term element without polynomial factors is
invertible.  Elements are immutable and kept in a canonical form, so
structural equality is mathematical equality.

Symbol names are free: manifold coordinates and symbolic parameters such as
``alpha`` or ``k`` are handled identically.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

import mpmath

__all__ = [
    "AlgebraError",
    "CoeffExpr",
    "MissingCoordinate",
    "NotAUnit",
    "NotDivisible",
    "Term",
    "ZeroElement",
    "as_expr",
    "const",
    "symbol",
    "DEFAULT_DIGITS",
]

DEFAULT_DIGITS = 50

Powers = tuple[tuple[str, int], ...]
Weights = tuple[tuple[str, Fraction], ...]
Key = tuple[Powers, Weights]
Scalar = Union[int, Fraction]
ExprLike = Union["CoeffExpr", int, Fraction]


class AlgebraError(ArithmeticError):
    pass


class NotAUnit(AlgebraError):
    pass


class ZeroElement(AlgebraError, ZeroDivisionError):
    pass


class NotDivisible(AlgebraError):
    pass


class MissingCoordinate(AlgebraError, KeyError):
    pass


class Term:
    """A single monomial-exponential term with a nonzero rational coefficient."""

    __slots__ = ("coeff", "powers", "exp_weights")

    def __init__(self, coeff: Scalar, powers: Mapping[str, int] | Powers = (),
                 exp_weights: Mapping[str, Scalar] | Weights = ()) -> None:
        coeff = Fraction(coeff)
        if coeff == 0:
            raise ValueError("term coefficient must be nonzero")
        powers = dict(powers)
        exp_weights = dict(exp_weights)
        for name, p in powers.items():
            if not isinstance(p, int) or p < 0:
                raise ValueError(f"power of {name!r} must be a nonnegative integer")
        self.coeff = coeff
        self.powers: Powers = tuple(sorted((k, v) for k, v in powers.items() if v))
        self.exp_weights: Weights = tuple(
            sorted((k, Fraction(v)) for k, v in exp_weights.items() if v))

    @property
    def key(self) -> Key:
        return self.powers, self.exp_weights

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Term):
            return NotImplemented
        return self.coeff == other.coeff and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.coeff, self.key))

    def __repr__(self) -> str:
        return f"Term({_render_term(self.coeff, self.key, leading=True)!r})"


def _merge_powers(a: Powers, b: Powers) -> Powers:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, p in b:
        out[name] = out.get(name, 0) + p
    return tuple(sorted(out.items()))


def _merge_weights(a: Weights, b: Weights) -> Weights:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for name, w in b:
        out[name] = out.get(name, 0) + w
    return tuple(sorted((k, v) for k, v in out.items() if v))


class CoeffExpr:
    """Canonical finite sum of :class:`Term` objects.

    >>> x, v = symbol("x"), symbol("v")
    >>> str(x * CoeffExpr.exp_of({"v": 1}) + x * CoeffExpr.exp_of({"v": 1}))
    '2*x*exp(1*v)'
    >>> (x + symbol("y") - x) == symbol("y")
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Iterable[Term] = ()) -> None:
        acc: dict[Key, Fraction] = {}
        for t in terms:
            acc[t.key] = acc.get(t.key, Fraction(0)) + t.coeff
        self._set(acc)

    def _set(self, acc: Mapping[Key, Fraction]) -> None:
        self._terms: tuple[tuple[Key, Fraction], ...] = tuple(
            sorted((k, c) for k, c in acc.items() if c))
        self._hash: int | None = None

    @classmethod
    def _from_map(cls, acc: Mapping[Key, Fraction]) -> CoeffExpr:
        obj = cls.__new__(cls)
        obj._set(acc)
        return obj

    @classmethod
    def exp_of(cls, weights: Mapping[str, Scalar], coeff: Scalar = 1) -> CoeffExpr:
        return cls([Term(coeff, (), weights)])

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> list[Term]:
        return [Term(c, dict(k[0]), dict(k[1])) for k, c in self._terms]

    def items(self) -> tuple[tuple[Key, Fraction], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def free_symbols(self) -> frozenset[str]:
        names: set[str] = set()
        for (powers, weights), _ in self._terms:
            names.update(n for n, _ in powers)
            names.update(n for n, _ in weights)
        return frozenset(names)

    def depends_on(self, names: Iterable[str]) -> bool:
        return not self.free_symbols().isdisjoint(names)

    def as_rational(self) -> Fraction | None:
        """The value as a rational number when the expression is constant."""
        if not self._terms:
            return Fraction(0)
        if len(self._terms) == 1 and self._terms[0][0] == ((), ()):
            return self._terms[0][1]
        return None

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and not self._terms[0][0][0]

    def normalize(self) -> CoeffExpr:
        return CoeffExpr._from_map(dict(self._terms))

    # -- ring operations --------------------------------------------------

    def __add__(self, other: ExprLike) -> CoeffExpr:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for k, c in other._terms:
            acc[k] = acc.get(k, Fraction(0)) + c
        return CoeffExpr._from_map(acc)

    __radd__ = __add__

    def __neg__(self) -> CoeffExpr:
        return CoeffExpr._from_map({k: -c for k, c in self._terms})

    def __pos__(self) -> CoeffExpr:
        return self

    def __sub__(self, other: ExprLike) -> CoeffExpr:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: ExprLike) -> CoeffExpr:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other: ExprLike) -> CoeffExpr:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            q = Fraction(other)
            if q == 0:
                return ZERO
            return CoeffExpr._from_map({k: c * q for k, c in self._terms})
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[Key, Fraction] = {}
        for (pa, wa), ca in self._terms:
            for (pb, wb), cb in other._terms:
                key = (_merge_powers(pa, pb), _merge_weights(wa, wb))
                acc[key] = acc.get(key, Fraction(0)) + ca * cb
        return CoeffExpr._from_map(acc)

    __rmul__ = __mul__

    def __truediv__(self, other: ExprLike) -> CoeffExpr:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                raise ZeroElement("division by zero")
            return self * (1 / Fraction(other))
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert_unit()

    def __pow__(self, exponent: int) -> CoeffExpr:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("only nonnegative integer powers are supported")
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def invert_unit(self) -> CoeffExpr:
        """Multiplicative inverse of a single exponential-times-rational term."""
        if not self._terms:
            raise ZeroElement("zero has no inverse")
        if len(self._terms) > 1:
            raise NotAUnit(f"{self} has {len(self._terms)} terms")
        (powers, weights), c = self._terms[0]
        if powers:
            raise NotAUnit(f"{self} has a polynomial factor")
        return CoeffExpr._from_map({((), tuple((n, -w) for n, w in weights)): 1 / c})

    def exact_quotient(self, divisor: ExprLike) -> CoeffExpr:
        """``self / divisor`` when ``divisor`` is a single term dividing every term."""
        divisor = _coerce(divisor)
        if not divisor._terms:
            raise ZeroElement("division by zero")
        if len(divisor._terms) > 1:
            try:
                return self * divisor.invert_unit()
            except NotAUnit:
                raise NotDivisible(f"cannot divide {self} by {divisor}") from None
        (dp, dw), dc = divisor._terms[0]
        neg_w = tuple((n, -w) for n, w in dw)
        acc: dict[Key, Fraction] = {}
        for (p, w), c in self._terms:
            powers = dict(p)
            for name, e in dp:
                left = powers.get(name, 0) - e
                if left < 0:
                    raise NotDivisible(f"cannot divide {self} by {divisor}")
                powers[name] = left
            key = (tuple(sorted((n, e) for n, e in powers.items() if e)),
                   _merge_weights(w, neg_w))
            acc[key] = acc.get(key, Fraction(0)) + c / dc
        return CoeffExpr._from_map(acc)

    # -- calculus ---------------------------------------------------------

    def diff(self, name: str) -> CoeffExpr:
        """Exact partial derivative with respect to ``name``."""
        acc: dict[Key, Fraction] = {}
        for (powers, weights), c in self._terms:
            p = dict(powers).get(name, 0)
            w = dict(weights).get(name, 0)
            if w:
                key = (powers, weights)
                acc[key] = acc.get(key, Fraction(0)) + c * w
            if p:
                lowered = tuple((n, e - 1 if n == name else e) for n, e in powers)
                key = (tuple((n, e) for n, e in lowered if e), weights)
                acc[key] = acc.get(key, Fraction(0)) + c * p
        return CoeffExpr._from_map(acc)

    def substitute(self, values: Mapping[str, ExprLike]) -> CoeffExpr:
        """Replace polynomial symbols by expressions.

        Only symbols that never appear inside an exponential can be replaced.
        """
        values = {k: _coerce(v) for k, v in values.items()}
        result = ZERO
        for (powers, weights), c in self._terms:
            if any(n in values for n, _ in weights):
                raise ValueError("cannot substitute a symbol that appears in an exponential")
            piece = CoeffExpr._from_map({(tuple((n, e) for n, e in powers if n not in values),
                                          weights): c})
            for n, e in powers:
                if n in values:
                    piece = piece * values[n] ** e
            result = result + piece
        return result

    def evaluate(self, point: Mapping[str, Scalar], digits: int = DEFAULT_DIGITS):
        """Numeric value at ``point``.

        Returns an exact :class:`~fractions.Fraction` when every exponential
        argument vanishes at the point, otherwise an ``mpmath.mpf`` carrying
        ``digits`` significant decimal digits.
        """
        missing = sorted(self.free_symbols() - set(point))
        if missing:
            raise MissingCoordinate(f"no value for {', '.join(missing)}")
        exact = Fraction(0)
        inexact = []
        for (powers, weights), c in self._terms:
            mono = c
            for n, e in powers:
                mono *= Fraction(point[n]) ** e
            arg = sum((w * Fraction(point[n]) for n, w in weights), Fraction(0))
            if arg == 0:
                exact += mono
            else:
                inexact.append((mono, arg))
        if not inexact:
            return exact
        with mpmath.workdps(digits + 10):
            total = mpmath.mpf(exact.numerator) / exact.denominator
            for mono, arg in inexact:
                total += (mpmath.mpf(mono.numerator) / mono.denominator
                          * mpmath.exp(mpmath.mpf(arg.numerator) / arg.denominator))
        with mpmath.workdps(digits):
            return +total

    # -- comparison and display ---------------------------------------------

    def __eq__(self, other: object) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (key, c) in enumerate(self._terms):
            body = _render_term(abs(c), key, leading=True)
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"CoeffExpr({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> CoeffExpr:
        from .syntax import parse_expression

        return parse_expression(text)


def _render_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _render_term(c: Fraction, key: Key, leading: bool = False) -> str:
    powers, weights = key
    factors = [n if e == 1 else f"{n}^{e}" for n, e in powers]
    factors += [f"exp({_render_rational(w)}*{n})" for n, w in weights]
    if c == 1 and factors:
        return "*".join(factors)
    if c == -1 and factors and not leading:
        return "-" + "*".join(factors)
    return "*".join([_render_rational(c)] + factors)


def _coerce(value):
    if isinstance(value, CoeffExpr):
        return value
    if isinstance(value, bool):
        return NotImplemented
    if isinstance(value, (int, Fraction)):
        return const(value)
    if isinstance(value, Rational):
        return const(Fraction(value.numerator, value.denominator))
    return NotImplemented


def as_expr(value: ExprLike | str) -> CoeffExpr:
    if isinstance(value, str):
        return CoeffExpr.parse(value)
    out = _coerce(value)
    if out is NotImplemented:
        raise TypeError(f"cannot convert {type(value).__name__} to CoeffExpr")
    return out


def const(q: Scalar) -> CoeffExpr:
    q = Fraction(q)
    return CoeffExpr._from_map({((), ()): q} if q else {})


def symbol(name: str) -> CoeffExpr:
    return CoeffExpr._from_map({(((name, 1),), ()): Fraction(1)})


ZERO = CoeffExpr()
ONE = const(1)
