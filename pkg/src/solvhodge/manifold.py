"""Manifold data model, structural validation, and example builders.

A manifold here is a semidirect product C^n x| C^m acted on diagonally by
m characters of the base, together with a lattice basis for the base
factor and, optionally, one for the fiber.  Cohomology only consumes the
base lattice (every relevant unitary character factors through the base
coordinates); the fiber lattice is carried solely so that the preservation
of the fiber lattice under the action can be validated numerically.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .characters import CharacterExponent, LatticeBasis
from .exact import ComplexExact, ExactScalar, SymbolTable, TableMismatch

__all__ = [
    "SolvManifoldSpec",
    "ValidationReport",
    "example1",
    "example2_n1",
    "torus",
    "validate",
]

INTEGRALITY_TOLERANCE = 1e-6

FIBER_OK = "ok"
FIBER_VIOLATED = "violated"
FIBER_NOT_CHECKED = "not_checked"


@dataclass(frozen=True)
class SolvManifoldSpec:
    """Complete description of one manifold: characters, lattices, symbols."""

    name: str
    n: int
    m: int
    alphas: tuple[CharacterExponent, ...]
    lattice: LatticeBasis
    lattice_fiber: Optional[LatticeBasis]
    symbols: SymbolTable

    def __post_init__(self):
        if self.n < 0 or self.m < 0 or self.n + self.m < 1:
            raise ValueError("need n, m >= 0 with n + m >= 1")
        if len(self.alphas) != self.m:
            raise ValueError(f"expected {self.m} characters, got {len(self.alphas)}")
        for alpha in self.alphas:
            if alpha.n != self.n:
                raise ValueError("character dimension differs from base dimension")
            if alpha.table != self.symbols:
                raise TableMismatch("character uses a foreign symbol table")
        if self.lattice.n != self.n:
            raise ValueError("base lattice dimension mismatch")
        if self.lattice_fiber is not None and self.lattice_fiber.n != self.m:
            raise ValueError("fiber lattice dimension mismatch")

    @property
    def complex_dim(self) -> int:
        return self.n + self.m


@dataclass(frozen=True)
class ValidationReport:
    lattice_rank_ok: bool
    fiber_preserved: str  # FIBER_OK | FIBER_VIOLATED | FIBER_NOT_CHECKED
    details: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.lattice_rank_ok and self.fiber_preserved != FIBER_VIOLATED


def _integer_determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a small integer matrix (fraction-free elimination)."""
    size = len(mat)
    if size == 0:
        return 1
    work = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for col in range(size):
        pivot_row = next((r for r in range(col, size) if work[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            work[col], work[pivot_row] = work[pivot_row], work[col]
            det = -det
        pivot = work[col][col]
        det *= pivot
        for r in range(col + 1, size):
            factor = work[r][col] / pivot
            for c in range(col, size):
                work[r][c] -= factor * work[col][c]
    assert det.denominator == 1
    return int(det)


def _realified_diagonal(values: Sequence[complex]) -> np.ndarray:
    """Realification of diag(values) acting on C^m, in (Re..., Im...) block layout."""
    m = len(values)
    out = np.zeros((2 * m, 2 * m))
    for k, v in enumerate(values):
        out[k, k] = v.real
        out[k, m + k] = -v.imag
        out[m + k, k] = v.imag
        out[m + k, m + k] = v.real
    return out


def validate(spec: SolvManifoldSpec) -> ValidationReport:
    """Numeric structural checks: lattice ranks and fiber preservation.

    Failures are reported, never raised; all checks run on float witnesses.
    """
    details: list[str] = []
    rank_ok, smallest = spec.lattice.rank_certificate()
    if not rank_ok:
        details.append(f"base lattice rank deficient: smallest singular value {smallest:.3e}")
    fiber_status = FIBER_NOT_CHECKED
    if spec.lattice_fiber is not None:
        fiber_rank_ok, fiber_smallest = spec.lattice_fiber.rank_certificate()
        if not fiber_rank_ok:
            details.append(
                f"fiber lattice rank deficient: smallest singular value {fiber_smallest:.3e}"
            )
        rank_ok = rank_ok and fiber_rank_ok
        fiber_status = _check_fiber_preservation(spec, details)
    return ValidationReport(rank_ok, fiber_status, tuple(details))


def _check_fiber_preservation(spec: SolvManifoldSpec, details: list[str]) -> str:
    if spec.m == 0:
        details.append("fiber lattice empty; preservation holds vacuously")
        return FIBER_OK
    basis = spec.lattice_fiber.real_matrix().T  # columns = realified generators
    status = FIBER_OK
    for gi, gen in enumerate(spec.lattice.generators, start=1):
        point = [c.complex_value() for c in gen]
        action = _realified_diagonal([alpha.value_at(point) for alpha in spec.alphas])
        try:
            coeff = np.linalg.solve(basis, action @ basis)
        except np.linalg.LinAlgError:
            details.append(f"base generator {gi}: fiber basis is numerically singular")
            status = FIBER_VIOLATED
            continue
        nearest = np.rint(coeff)
        residual = float(np.abs(coeff - nearest).max())
        if residual > INTEGRALITY_TOLERANCE:
            details.append(
                f"base generator {gi}: image not in the integer span, residual {residual:.3e}"
            )
            status = FIBER_VIOLATED
            continue
        det = _integer_determinant(nearest.astype(int).tolist())
        if abs(det) != 1:
            details.append(
                f"base generator {gi}: integer matrix has determinant {det}, not a lattice automorphism"
            )
            status = FIBER_VIOLATED
            continue
        details.append(
            f"base generator {gi}: integer matrix recovered, residual {residual:.3e}, determinant {det}"
        )
    return status


def _standard_lattice(table: SymbolTable, n: int) -> LatticeBasis:
    """Generators e_1..e_n, i*e_1..i*e_n of the Gaussian-integer lattice."""
    zero = ComplexExact.zero(table)
    one = ExactScalar.rational(table, 1)
    generators = []
    for j in range(n):
        generators.append(tuple(ComplexExact.make(table, re=one) if k == j else zero for k in range(n)))
    for j in range(n):
        generators.append(tuple(ComplexExact.make(table, im=one) if k == j else zero for k in range(n)))
    return LatticeBasis(n, tuple(generators))


def torus(n: int, m: int) -> SolvManifoldSpec:
    """Complex torus baseline: trivial action, standard lattices."""
    if n < 0 or m < 0 or n + m < 1:
        raise ValueError("need n, m >= 0 with n + m >= 1")
    table = SymbolTable.base()
    alphas = tuple(CharacterExponent.trivial(table, n) for _ in range(m))
    return SolvManifoldSpec(
        name=f"torus_{n}_{m}",
        n=n,
        m=m,
        alphas=alphas,
        lattice=_standard_lattice(table, n),
        lattice_fiber=_standard_lattice(table, m),
        symbols=table,
    )


_T_MODE_PATTERN = re.compile(r"^rational_pi\(\s*(-?\d+)\s*,\s*(\d+)\s*\)$")


def _parse_t_mode(t_mode) -> Optional[tuple[int, int]]:
    """None means the symbolic regime; otherwise (r, s) with t = (r/s)*pi."""
    if t_mode == "symbolic":
        return None
    if isinstance(t_mode, str):
        match = _T_MODE_PATTERN.match(t_mode.strip())
        if match:
            r, s = int(match.group(1)), int(match.group(2))
            if s <= 0 or r == 0:
                raise ValueError("rational_pi(r, s) needs r != 0 and s > 0")
            return r, s
        raise ValueError(f"unknown t_mode {t_mode!r}")
    if isinstance(t_mode, (tuple, list)) and len(t_mode) == 2:
        r, s = int(t_mode[0]), int(t_mode[1])
        if s <= 0 or r == 0:
            raise ValueError("rational_pi(r, s) needs r != 0 and s > 0")
        return r, s
    raise ValueError(f"unknown t_mode {t_mode!r}")


# log of the leading eigenvalue of [[2,1],[1,1]]; a convenient transcendental
# witness for the real-direction generator of the mapping-torus lattice
_GOLDEN_LOG = math.log((3.0 + math.sqrt(5.0)) / 2.0)


def example1(a: Sequence[int], t_mode="symbolic") -> SolvManifoldSpec:
    """Mapping-torus family over C with paired real characters e^{a_i x}, e^{-a_i x}.

    The base lattice has one real generator (transcendental witness) and
    one imaginary generator i*t; t is either a fresh independent symbol or
    the rational multiple (r/s)*pi of pi.  No fiber lattice is attached.
    """
    exponents = [int(v) for v in a]
    if not exponents:
        raise ValueError("need at least one fiber exponent")
    if any(v == 0 for v in exponents):
        raise ValueError("fiber exponents must be nonzero")
    ratio = _parse_t_mode(t_mode)
    table = SymbolTable.base().with_symbol("lambda", _GOLDEN_LOG)
    if ratio is None:
        table = table.with_symbol("t", 1.0)
        t_scalar = ExactScalar.symbol(table, "t")
        suffix = "t"
    else:
        r, s = ratio
        t_scalar = ExactScalar.pi_multiple(table, Fraction(r, s))
        suffix = f"pi_{r}_{s}"
    alphas = []
    for v in exponents:
        alphas.append(CharacterExponent.from_real_exponent(table, [v]))
        alphas.append(CharacterExponent.from_real_exponent(table, [-v]))
    lattice = LatticeBasis(
        1,
        (
            (ComplexExact.make(table, re=ExactScalar.symbol(table, "lambda")),),
            (ComplexExact.make(table, im=t_scalar),),
        ),
    )
    name = "example1_" + "_".join(str(v) for v in exponents) + "_" + suffix
    return SolvManifoldSpec(
        name=name,
        n=1,
        m=2 * len(exponents),
        alphas=tuple(alphas),
        lattice=lattice,
        lattice_fiber=None,
        symbols=table,
    )


def example2_n1(matrix: Sequence[Sequence[int]]) -> SolvManifoldSpec:
    """Hyperbolic-torus-bundle family: characters e^x, e^{-x} over C.

    The input is a unimodular hyperbolic integer matrix; its eigenvector
    basis spans the fiber lattice (four generators of a lattice in C^2,
    entered as fresh symbols with float witnesses), and the log of the
    leading eigenvalue modulus gives the real base generator.  The
    imaginary base generator is a fresh irrational parameter.
    """
    rows = [list(map(int, row)) for row in matrix]
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise ValueError("expected a 2x2 integer matrix")
    (a11, a12), (a21, a22) = rows
    trace = a11 + a22
    det = a11 * a22 - a12 * a21
    if det != 1:
        raise ValueError(f"matrix must have determinant 1, got {det}")
    if abs(trace) <= 2:
        raise ValueError(f"matrix must be hyperbolic, |trace| = {abs(trace)} <= 2")
    disc = math.sqrt(trace * trace - 4)
    # dominant eigenvalue first so the expanding character e^x matches it;
    # for negative traces the recovered integer matrix is -A, still unimodular
    lam_dom = (trace + disc) / 2.0 if trace > 0 else (trace - disc) / 2.0
    lam_sub = 1.0 / lam_dom
    # a12 != 0 for hyperbolic unimodular integer matrices, so the columns
    # (a12, lam - a11) are honest eigenvectors
    eig = np.array([[a12, a12], [lam_dom - a11, lam_sub - a11]], dtype=float)
    dual = np.linalg.inv(eig)

    table = SymbolTable.base().with_symbol("logeps", math.log((abs(trace) + disc) / 2.0))
    table = table.with_symbol("c1", math.sqrt(2.0))
    entry_names = (("g11", "g12"), ("g21", "g22"))
    for r in range(2):
        for c in range(2):
            table = table.with_symbol(entry_names[r][c], float(dual[r, c]))

    def column(c: int, imaginary: bool) -> tuple[ComplexExact, ...]:
        parts = []
        for r in range(2):
            scalar = ExactScalar.symbol(table, entry_names[r][c])
            parts.append(
                ComplexExact.make(table, im=scalar) if imaginary else ComplexExact.make(table, re=scalar)
            )
        return tuple(parts)

    fiber = LatticeBasis(
        2, (column(0, False), column(1, False), column(0, True), column(1, True))
    )
    lattice = LatticeBasis(
        1,
        (
            (ComplexExact.make(table, re=ExactScalar.symbol(table, "logeps")),),
            (ComplexExact.make(table, im=ExactScalar.symbol(table, "c1")),),
        ),
    )
    alphas = (
        CharacterExponent.from_real_exponent(table, [1]),
        CharacterExponent.from_real_exponent(table, [-1]),
    )
    name = f"example2_n1_{a11}_{a12}_{a21}_{a22}"
    return SolvManifoldSpec(
        name=name,
        n=1,
        m=2,
        alphas=alphas,
        lattice=lattice,
        lattice_fiber=fiber,
        symbols=table,
    )
