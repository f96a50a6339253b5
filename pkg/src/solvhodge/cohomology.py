"""Finite Dolbeault model: basis enumeration, Hodge and Betti tables.

The cohomology of these manifolds is computed by a finite bigraded model
spanned by monomials indexed by quadruples (I, J, K, L): base indices I, K
pick holomorphic respectively antiholomorphic base differentials, fiber
indices J, L pick twisted fiber differentials, subject to one arithmetic
gate: the unitary character attached to the fiber pair (J, L) must restrict
to 1 on the base lattice.  Everything else is counting.

Two code paths produce the Hodge numbers: a closed binomial formula over
the admissible pairs, and literal enumeration of basis elements.  Tests
hold them against each other.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Optional

from .characters import CharacterExponent, is_trivial_on_lattice, is_trivial_on_lattice_float
from .exact import SymbolProductUnrepresentable
from .manifold import SolvManifoldSpec

__all__ = [
    "BasisElement",
    "BettiNumbers",
    "ConditionReport",
    "FiberTooLarge",
    "HodgeTable",
    "PairSweep",
    "basis_elements",
    "betti_numbers",
    "check_condition",
    "conjugation_symmetry",
    "hodge_symmetry",
    "hodge_table",
    "serre_duality_check",
    "sweep_trivial_pairs",
    "trivial_pairs",
]

MAX_FIBER_DIM = 12

VIOLATION_REASON = "trivial_restriction_but_alpha_nontrivial"


class FiberTooLarge(ValueError):
    """The 4^m pair sweep was refused because the fiber dimension exceeds the cap."""


MultiIndex = tuple[int, ...]


def _check_multi_index(indices: MultiIndex, bound: int, label: str):
    if list(indices) != sorted(set(indices)):
        raise ValueError(f"{label} must be strictly increasing")
    if indices and (indices[0] < 1 or indices[-1] > bound):
        raise ValueError(f"{label} entries must lie in 1..{bound}")


@dataclass(frozen=True)
class BasisElement:
    """One basis monomial, indexed by (I, J, K, L)."""

    I: MultiIndex
    J: MultiIndex
    K: MultiIndex
    L: MultiIndex

    def __post_init__(self):
        for label, indices in (("I", self.I), ("J", self.J), ("K", self.K), ("L", self.L)):
            if list(indices) != sorted(set(indices)):
                raise ValueError(f"{label} must be strictly increasing")

    @property
    def p(self) -> int:
        return len(self.I) + len(self.J)

    @property
    def q(self) -> int:
        return len(self.K) + len(self.L)

    def swapped(self) -> "BasisElement":
        """Image under conjugation at the index level: (I,J,K,L) -> (K,L,I,J)."""
        return BasisElement(self.K, self.L, self.I, self.J)

    def __repr__(self):
        return f"BasisElement(I={list(self.I)}, J={list(self.J)}, K={list(self.K)}, L={list(self.L)})"


@dataclass(frozen=True)
class PairSweep:
    """Result of the fiber pair sweep: the admissible (J, L) and a certification flag."""

    pairs: tuple[tuple[MultiIndex, MultiIndex], ...]
    certified: bool

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair) -> bool:
        return pair in self.pair_set

    @functools.cached_property
    def pair_set(self) -> frozenset:
        return frozenset(self.pairs)


@dataclass(frozen=True)
class HodgeTable:
    """Square table of model dimensions indexed by bidegree."""

    n_plus_m: int
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        size = self.n_plus_m + 1
        if len(self.h) != size or any(len(row) != size for row in self.h):
            raise ValueError("table has the wrong shape")
        if self.h[0][0] < 1:
            raise ValueError("constants are always present: h[0][0] >= 1")
        for p, row in enumerate(self.h):
            for q, value in enumerate(row):
                if not 0 <= value <= comb(self.n_plus_m, p) * comb(self.n_plus_m, q):
                    raise ValueError(f"h[{p}][{q}] = {value} exceeds the binomial bound")

    def __getitem__(self, p: int) -> tuple[int, ...]:
        return self.h[p]

    def rows(self) -> tuple[tuple[int, ...], ...]:
        return self.h


@dataclass(frozen=True)
class ConditionReport:
    """Verdict on the matching of lattice-trivial pairs and globally trivial characters."""

    holds: bool
    violations: tuple[tuple[MultiIndex, MultiIndex, str], ...]
    checked_pairs: int


@dataclass(frozen=True)
class BettiNumbers:
    """Anti-diagonal sums of the Hodge table, with a de Rham certification flag."""

    values: tuple[int, ...]
    certified_de_rham: bool

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, r: int) -> int:
        return self.values[r]


def _binomial(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def _subsets(m: int) -> tuple[MultiIndex, ...]:
    out: list[MultiIndex] = []
    for size in range(m + 1):
        out.extend(combinations(range(1, m + 1), size))
    return tuple(out)


def unitary_factors(
    spec: SolvManifoldSpec,
) -> tuple[tuple[CharacterExponent, ...], tuple[CharacterExponent, ...]]:
    """Per fiber character: unitary part, and unitary part of the conjugate."""
    betas = tuple(alpha.decompose().unit for alpha in spec.alphas)
    gammas = tuple(alpha.conjugate_unitary_part() for alpha in spec.alphas)
    return betas, gammas


def _subset_products(
    factors: tuple[CharacterExponent, ...], subsets: tuple[MultiIndex, ...], trivial: CharacterExponent
) -> dict[MultiIndex, CharacterExponent]:
    products = {(): trivial}
    for subset in subsets:
        if subset:
            products[subset] = products[subset[:-1]] * factors[subset[-1] - 1]
    return products


@functools.lru_cache(maxsize=None)
def sweep_trivial_pairs(spec: SolvManifoldSpec, force_float: bool = False) -> PairSweep:
    """Sweep all 4^m fiber pairs for lattice triviality of the paired unitary character.

    Exact arithmetic is used wherever the lattice data allows it; pairs whose
    evaluation leaves the exact layer fall back to float witnesses and mark
    the sweep as not certified.
    """
    if spec.m > MAX_FIBER_DIM:
        raise FiberTooLarge(f"fiber dimension {spec.m} exceeds the cap {MAX_FIBER_DIM}")
    betas, gammas = unitary_factors(spec)
    subsets = _subsets(spec.m)
    trivial = CharacterExponent.trivial(spec.symbols, spec.n)
    beta_products = _subset_products(betas, subsets, trivial)
    gamma_products = _subset_products(gammas, subsets, trivial)
    pairs: list[tuple[MultiIndex, MultiIndex]] = []
    certified = True
    for J, L in product(subsets, subsets):
        chi = beta_products[J] * gamma_products[L]
        if force_float:
            certified = False
            accept = is_trivial_on_lattice_float(chi, spec.lattice)
        else:
            try:
                accept = is_trivial_on_lattice(chi, spec.lattice)
            except SymbolProductUnrepresentable:
                certified = False
                accept = is_trivial_on_lattice_float(chi, spec.lattice)
        if accept:
            pairs.append((J, L))
    pairs.sort()
    return PairSweep(tuple(pairs), certified)


def trivial_pairs(spec: SolvManifoldSpec) -> frozenset:
    """The set of fiber pairs (J, L) admitted by the lattice-triviality gate."""
    return sweep_trivial_pairs(spec).pair_set


def basis_elements(
    spec: SolvManifoldSpec, p: int, q: int, sweep: Optional[PairSweep] = None
) -> tuple[BasisElement, ...]:
    """All basis monomials of bidegree (p, q), in lexicographic order."""
    dim = spec.complex_dim
    if not (0 <= p <= dim and 0 <= q <= dim):
        raise ValueError(f"bidegree ({p}, {q}) out of range for dimension {dim}")
    sweep = sweep if sweep is not None else sweep_trivial_pairs(spec)
    elements = []
    for J, L in sweep:
        if len(J) > p or len(L) > q:
            continue
        if p - len(J) > spec.n or q - len(L) > spec.n:
            continue
        for I in combinations(range(1, spec.n + 1), p - len(J)):
            for K in combinations(range(1, spec.n + 1), q - len(L)):
                elements.append(BasisElement(I, J, K, L))
    elements.sort(key=lambda el: (el.I, el.J, el.K, el.L))
    return tuple(elements)


def all_basis_elements(spec: SolvManifoldSpec, sweep: Optional[PairSweep] = None) -> tuple[BasisElement, ...]:
    """Every basis monomial across all bidegrees."""
    sweep = sweep if sweep is not None else sweep_trivial_pairs(spec)
    dim = spec.complex_dim
    out = []
    for p in range(dim + 1):
        for q in range(dim + 1):
            out.extend(basis_elements(spec, p, q, sweep))
    return tuple(out)


def hodge_table(spec: SolvManifoldSpec, sweep: Optional[PairSweep] = None) -> HodgeTable:
    """Model dimensions by the closed binomial count over admissible pairs."""
    sweep = sweep if sweep is not None else sweep_trivial_pairs(spec)
    dim = spec.complex_dim
    rows = []
    for p in range(dim + 1):
        row = []
        for q in range(dim + 1):
            row.append(
                sum(_binomial(spec.n, p - len(J)) * _binomial(spec.n, q - len(L)) for J, L in sweep)
            )
        rows.append(tuple(row))
    return HodgeTable(dim, tuple(rows))


def check_condition(spec: SolvManifoldSpec, sweep: Optional[PairSweep] = None) -> ConditionReport:
    """Test whether every lattice-trivial pair has a globally trivial character.

    A pair (J, L) violates when the paired unitary character restricts to 1
    on the lattice while the underlying product of fiber characters (times
    the conjugates over L) is not identically 1.  The converse implication
    holds identically and is asserted, not reported.
    """
    sweep = sweep if sweep is not None else sweep_trivial_pairs(spec)
    subsets = _subsets(spec.m)
    trivial = CharacterExponent.trivial(spec.symbols, spec.n)
    alpha_products = _subset_products(spec.alphas, subsets, trivial)
    conj_products = _subset_products(
        tuple(alpha.conjugate() for alpha in spec.alphas), subsets, trivial
    )
    violations = []
    for J, L in sweep:
        if not (alpha_products[J] * conj_products[L]).is_trivial:
            violations.append((J, L, VIOLATION_REASON))
    for J, L in product(subsets, subsets):
        if (alpha_products[J] * conj_products[L]).is_trivial:
            # the unitary part of a trivial character is trivial, so the
            # lattice gate must admit this pair; anything else is a bug
            assert (J, L) in sweep
    return ConditionReport(not violations, tuple(violations), len(sweep))


def hodge_symmetry(table: HodgeTable) -> bool:
    """Table-level symmetry h[p][q] == h[q][p]."""
    size = table.n_plus_m + 1
    return all(table.h[p][q] == table.h[q][p] for p in range(size) for q in range(size))


def conjugation_symmetry(spec: SolvManifoldSpec, sweep: Optional[PairSweep] = None) -> bool:
    """Set-level symmetry: index swap is a bijection between mirror bidegrees."""
    sweep = sweep if sweep is not None else sweep_trivial_pairs(spec)
    dim = spec.complex_dim
    for p in range(dim + 1):
        for q in range(dim + 1):
            source = basis_elements(spec, p, q, sweep)
            target = set(basis_elements(spec, q, p, sweep))
            if {el.swapped() for el in source} != target:
                return False
    return True


def serre_duality_check(table: HodgeTable) -> bool:
    """Complement symmetry h[p][q] == h[N-p][N-q]."""
    size = table.n_plus_m + 1
    return all(
        table.h[p][q] == table.h[size - 1 - p][size - 1 - q]
        for p in range(size)
        for q in range(size)
    )


def betti_numbers(
    spec: SolvManifoldSpec,
    sweep: Optional[PairSweep] = None,
    condition: Optional[ConditionReport] = None,
) -> BettiNumbers:
    """Anti-diagonal sums of the Hodge table.

    The sums equal de Rham Betti numbers exactly when the condition verdict
    holds; otherwise they are reported as first-page column sums only and
    the certification flag is cleared.
    """
    sweep = sweep if sweep is not None else sweep_trivial_pairs(spec)
    table = hodge_table(spec, sweep)
    condition = condition if condition is not None else check_condition(spec, sweep)
    dim = spec.complex_dim
    values = []
    for r in range(2 * dim + 1):
        values.append(
            sum(table.h[p][r - p] for p in range(dim + 1) if 0 <= r - p <= dim)
        )
    return BettiNumbers(tuple(values), condition.holds)
