"""Exact scalar arithmetic over declared rationally independent constants.

Every certified verdict in this package reduces to a linear statement about
a handful of real constants: 1, pi, and whatever parameters a manifold
declares (the logarithm of an algebraic unit, a free lattice parameter t,
and so on).  A scalar is therefore stored as a rational coefficient vector
over a finite table of named constants, and equality, vanishing and
membership in 2*pi*Z are decided coefficient-wise.  This is sound exactly
when the declared constants are linearly independent over Q, which is the
assumption a caller makes when declaring a symbol.

Products of two non-rational constants are deliberately unrepresentable:
the model is a Q-vector space, not a ring.  Callers catch
:class:`SymbolProductUnrepresentable` and fall back to the float witnesses
that every symbol carries; witnesses feed advisory numeric checks only,
never certified verdicts.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

__all__ = [
    "ComplexExact",
    "ExactScalar",
    "SymbolProductUnrepresentable",
    "SymbolTable",
    "TableMismatch",
    "parse_rational",
]


class TableMismatch(ValueError):
    """Operands were declared over different symbol tables."""


class SymbolProductUnrepresentable(ArithmeticError):
    """A product would need a symbol-times-symbol term.

    Raised when neither factor is a pure rational; the caller is expected
    to switch to float witnesses if an approximate answer is acceptable.
    """


_RATIONAL_LITERAL = re.compile(r"^[+-]?\d+(?:/0*[1-9]\d*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse a rational literal ``"p"`` or ``"p/q"`` with q > 0."""
    if not isinstance(text, str) or not _RATIONAL_LITERAL.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text.strip())


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected a rational, got {type(value).__name__}")


@dataclass(frozen=True)
class SymbolTable:
    """Ordered family of named real constants with float witnesses.

    The names are treated as linearly independent over Q; ``one`` and
    ``pi`` are always present with witnesses 1.0 and math.pi.
    """

    entries: tuple[tuple[str, float], ...]

    def __post_init__(self):
        names = [name for name, _ in self.entries]
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        lookup = dict(self.entries)
        if lookup.get("one") != 1.0:
            raise ValueError('symbol table must declare "one" with witness 1.0')
        if lookup.get("pi") != math.pi:
            raise ValueError('symbol table must declare "pi" with witness math.pi')
        for name, witness in self.entries:
            if not isinstance(name, str) or not name:
                raise ValueError(f"bad symbol name: {name!r}")
            if not math.isfinite(witness) or witness == 0.0:
                raise ValueError(f"witness of {name!r} must be finite and nonzero")

    @classmethod
    def base(cls) -> "SymbolTable":
        return cls((("one", 1.0), ("pi", math.pi)))

    def with_symbol(self, name: str, witness: float) -> "SymbolTable":
        """Return a new table extending this one by a fresh symbol."""
        if name in self:
            raise ValueError(f"symbol {name!r} already declared")
        return SymbolTable(self.entries + ((name, float(witness)),))

    def witness(self, name: str) -> float:
        for sym, value in self.entries:
            if sym == name:
                return value
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(sym == name for sym, _ in self.entries)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def __repr__(self):
        return "SymbolTable(%s)" % ", ".join(self.names)


@dataclass(frozen=True)
class ExactScalar:
    """A rational linear combination of the table's constants.

    Zero coefficients are never stored, so equality of the coefficient
    tuples is equality of scalars.
    """

    table: SymbolTable
    coeffs: tuple[tuple[str, Fraction], ...]

    def __post_init__(self):
        previous = None
        for name, coeff in self.coeffs:
            if name not in self.table:
                raise ValueError(f"undeclared symbol {name!r}")
            if not isinstance(coeff, Fraction) or coeff == 0:
                raise ValueError("coefficients must be nonzero Fractions")
            if previous is not None and name <= previous:
                raise ValueError("coefficients must be sorted by symbol name")
            previous = name

    @classmethod
    def make(cls, table: SymbolTable, coeffs: Mapping[str, Fraction | int | str]) -> "ExactScalar":
        cleaned = {name: _as_fraction(c) for name, c in coeffs.items()}
        items = tuple(sorted((n, c) for n, c in cleaned.items() if c != 0))
        return cls(table, items)

    @classmethod
    def zero(cls, table: SymbolTable) -> "ExactScalar":
        return cls(table, ())

    @classmethod
    def rational(cls, table: SymbolTable, value) -> "ExactScalar":
        return cls.make(table, {"one": _as_fraction(value)})

    @classmethod
    def symbol(cls, table: SymbolTable, name: str, coeff=1) -> "ExactScalar":
        return cls.make(table, {name: _as_fraction(coeff)})

    @classmethod
    def pi_multiple(cls, table: SymbolTable, coeff) -> "ExactScalar":
        return cls.make(table, {"pi": _as_fraction(coeff)})

    @classmethod
    def from_literal(cls, table: SymbolTable, literal: Mapping[str, str]) -> "ExactScalar":
        """Build from the file syntax, a map of symbol names to "p/q" strings."""
        return cls.make(table, {name: parse_rational(text) for name, text in literal.items()})

    def to_literal(self) -> dict[str, str]:
        return {name: str(coeff) for name, coeff in self.coeffs}

    def coefficient(self, name: str) -> Fraction:
        for sym, coeff in self.coeffs:
            if sym == name:
                return coeff
        return Fraction(0)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_rational(self) -> bool:
        """True when the scalar is a rational multiple of "one" (including 0)."""
        return all(name == "one" for name, _ in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational:
            raise SymbolProductUnrepresentable(f"{self!r} is not rational")
        return self.coefficient("one")

    def _check_table(self, other: "ExactScalar"):
        if self.table != other.table:
            raise TableMismatch("scalars declared over different symbol tables")

    def __add__(self, other: "ExactScalar") -> "ExactScalar":
        if not isinstance(other, ExactScalar):
            return NotImplemented
        self._check_table(other)
        merged = dict(self.coeffs)
        for name, coeff in other.coeffs:
            merged[name] = merged.get(name, Fraction(0)) + coeff
        return ExactScalar.make(self.table, merged)

    def __sub__(self, other: "ExactScalar") -> "ExactScalar":
        return self + (-other)

    def __neg__(self) -> "ExactScalar":
        return ExactScalar(self.table, tuple((n, -c) for n, c in self.coeffs))

    def scaled(self, factor) -> "ExactScalar":
        """Multiply by a rational number."""
        q = _as_fraction(factor)
        if q == 0:
            return ExactScalar.zero(self.table)
        return ExactScalar(self.table, tuple((n, c * q) for n, c in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(other)
        if not isinstance(other, ExactScalar):
            return NotImplemented
        self._check_table(other)
        if self.is_rational:
            return other.scaled(self.coefficient("one"))
        if other.is_rational:
            return self.scaled(other.coefficient("one"))
        raise SymbolProductUnrepresentable(
            f"cannot multiply {self!r} by {other!r}: both carry non-rational symbols"
        )

    __rmul__ = __mul__

    def is_multiple_of_2pi(self) -> bool:
        """Decide membership in 2*pi*Z.

        Under the declared independence this holds exactly when the scalar
        is pi times an even integer (zero included).
        """
        for name, coeff in self.coeffs:
            if name != "pi":
                return False
            if coeff.denominator != 1 or coeff.numerator % 2 != 0:
                return False
        return True

    def float_value(self) -> float:
        return sum(float(c) * self.table.witness(n) for n, c in self.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "0"
        parts = []
        for name, coeff in self.coeffs:
            parts.append(f"{coeff}*{name}" if name != "one" else f"{coeff}")
        return " + ".join(parts)


@dataclass(frozen=True)
class ComplexExact:
    """A complex number with exact real and imaginary parts."""

    re: ExactScalar
    im: ExactScalar

    def __post_init__(self):
        if self.re.table != self.im.table:
            raise TableMismatch("real and imaginary parts use different tables")

    @classmethod
    def make(cls, table: SymbolTable, re=0, im=0) -> "ComplexExact":
        def scalar(v):
            if isinstance(v, ExactScalar):
                if v.table != table:
                    raise TableMismatch("scalar declared over a different table")
                return v
            return ExactScalar.rational(table, v)

        return cls(scalar(re), scalar(im))

    @classmethod
    def zero(cls, table: SymbolTable) -> "ComplexExact":
        return cls.make(table)

    @classmethod
    def one(cls, table: SymbolTable) -> "ComplexExact":
        return cls.make(table, re=1)

    @classmethod
    def from_literal(cls, table: SymbolTable, literal: Mapping) -> "ComplexExact":
        re_lit = literal.get("re", {})
        im_lit = literal.get("im", {})
        return cls(ExactScalar.from_literal(table, re_lit), ExactScalar.from_literal(table, im_lit))

    def to_literal(self) -> dict:
        return {"re": self.re.to_literal(), "im": self.im.to_literal()}

    @property
    def table(self) -> SymbolTable:
        return self.re.table

    @property
    def is_zero(self) -> bool:
        return self.re.is_zero and self.im.is_zero

    def conjugate(self) -> "ComplexExact":
        return ComplexExact(self.re, -self.im)

    def __add__(self, other: "ComplexExact") -> "ComplexExact":
        if not isinstance(other, ComplexExact):
            return NotImplemented
        return ComplexExact(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexExact") -> "ComplexExact":
        return self + (-other)

    def __neg__(self) -> "ComplexExact":
        return ComplexExact(-self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ComplexExact(self.re.scaled(other), self.im.scaled(other))
        if not isinstance(other, ComplexExact):
            return NotImplemented
        re = self.re * other.re - self.im * other.im
        im = self.re * other.im + self.im * other.re
        return ComplexExact(re, im)

    __rmul__ = __mul__

    def complex_value(self) -> complex:
        return complex(self.re.float_value(), self.im.float_value())

    def sort_key(self):
        return (self.re.coeffs, self.im.coeffs)

    def __repr__(self):
        if self.is_zero:
            return "0"
        if self.im.is_zero:
            return repr(self.re)
        if self.re.is_zero:
            return f"({self.im})*i"
        return f"({self.re}) + ({self.im})*i"
