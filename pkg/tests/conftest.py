"""Shared corpus and random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

import solvhodge as sh


def corpus_specs() -> list[sh.SolvManifoldSpec]:
    """Every manifold the suite certifies end to end."""
    return [
        sh.torus(1, 1),
        sh.torus(2, 1),
        sh.torus(1, 2),
        sh.torus(2, 2),
        sh.example1([1], "symbolic"),
        sh.example1([1], "rational_pi(1,1)"),
        sh.example1([1, -2], "symbolic"),
        sh.example1([2, 3], "symbolic"),
        sh.example2_n1([[2, 1], [1, 1]]),
    ]


def forms_corpus_specs() -> list[sh.SolvManifoldSpec]:
    """Corpus entries small enough for forms-level certification."""
    return [spec for spec in corpus_specs() if spec.complex_dim <= 4]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)


def random_fraction(rng: random.Random, max_num: int = 2, max_den: int = 2) -> Fraction:
    return Fraction(rng.randint(-max_num, max_num), rng.randint(1, max_den))


def random_scalar(table: sh.SymbolTable, rng: random.Random) -> sh.ExactScalar:
    coeffs = {}
    for name in table.names:
        if rng.random() < 0.5:
            coeffs[name] = random_fraction(rng)
    return sh.ExactScalar.make(table, coeffs)


def random_rational_complex(table: sh.SymbolTable, rng: random.Random) -> sh.ComplexExact:
    return sh.ComplexExact.make(table, re=random_fraction(rng), im=random_fraction(rng))


def random_character(
    table: sh.SymbolTable, n: int, rng: random.Random
) -> sh.CharacterExponent:
    """Random character with small rational exponent entries."""
    a = tuple(random_rational_complex(table, rng) for _ in range(n))
    b = tuple(random_rational_complex(table, rng) for _ in range(n))
    return sh.CharacterExponent(table, a, b)


def random_unitary_character(
    table: sh.SymbolTable, n: int, rng: random.Random
) -> sh.CharacterExponent:
    a = tuple(random_rational_complex(table, rng) for _ in range(n))
    b = tuple(-c.conjugate() for c in a)
    return sh.CharacterExponent(table, a, b)


def random_word(n: int, m: int, rng: random.Random, length: int | None = None):
    """Random duplicate-free wedge word over the twisted alphabet."""
    from solvhodge.forms import dw, dwbar, dz, dzbar

    alphabet = (
        [dz(i) for i in range(1, n + 1)]
        + [dw(i) for i in range(1, m + 1)]
        + [dzbar(i) for i in range(1, n + 1)]
        + [dwbar(i) for i in range(1, m + 1)]
    )
    if length is None:
        length = rng.randint(0, len(alphabet))
    word = rng.sample(alphabet, length)
    rng.shuffle(word)
    return tuple(word)


def random_twisted_form(
    table: sh.SymbolTable, n: int, m: int, rng: random.Random, terms: int | None = None
) -> sh.TwistedForm:
    terms = terms if terms is not None else rng.randint(1, 3)
    entries = []
    for _ in range(terms):
        coeff = random_rational_complex(table, rng)
        entries.append((coeff, random_character(table, n, rng), random_word(n, m, rng)))
    return sh.TwistedForm(entries)


def random_homogeneous_form(
    table: sh.SymbolTable, n: int, m: int, rng: random.Random
) -> sh.TwistedForm:
    """Random form whose terms all share one word length (hence total degree)."""
    length = rng.randint(0, 2 * (n + m))
    entries = []
    for _ in range(rng.randint(1, 3)):
        coeff = random_rational_complex(table, rng)
        entries.append(
            (coeff, random_character(table, n, rng), random_word(n, m, rng, length))
        )
    return sh.TwistedForm(entries)
