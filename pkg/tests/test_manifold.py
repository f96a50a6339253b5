import math

import numpy as np
import pytest

from solvhodge.characters import CharacterExponent, LatticeBasis
from solvhodge.exact import ComplexExact, ExactScalar, SymbolTable
from solvhodge.manifold import (
    FIBER_NOT_CHECKED,
    FIBER_OK,
    FIBER_VIOLATED,
    SolvManifoldSpec,
    example1,
    example2_n1,
    torus,
    validate,
)

from conftest import corpus_specs


def exponent_data(chi):
    """Exponent coefficients, comparable across symbol tables."""
    return tuple((c.re.coeffs, c.im.coeffs) for c in chi.a + chi.b)


class TestTorus:
    def test_basic_shape(self):
        spec = torus(1, 1)
        assert spec.n == 1 and spec.m == 1
        assert len(spec.alphas) == 1 and spec.alphas[0].is_trivial
        assert len(spec.lattice.generators) == 2
        assert len(spec.lattice_fiber.generators) == 2

    def test_degenerate_base(self):
        spec = torus(0, 2)
        assert spec.n == 0 and spec.lattice.generators == ()
        assert all(alpha.n == 0 for alpha in spec.alphas)

    def test_degenerate_fiber(self):
        spec = torus(2, 0)
        assert spec.m == 0 and spec.alphas == ()

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            torus(0, 0)

    def test_validates_clean(self):
        report = validate(torus(1, 1))
        assert report.lattice_rank_ok and report.fiber_preserved == FIBER_OK


class TestExample1:
    def test_characters_pair_up(self):
        spec = example1([1], "symbolic")
        assert spec.n == 1 and spec.m == 2
        assert exponent_data(spec.alphas[0]) == exponent_data(
            CharacterExponent.from_real_exponent(spec.symbols, [1])
        )
        assert exponent_data(spec.alphas[1]) == exponent_data(
            CharacterExponent.from_real_exponent(spec.symbols, [-1])
        )

    def test_symbolic_lattice(self):
        spec = example1([1], "symbolic")
        g1, g2 = spec.lattice.generators
        assert g1[0].im.is_zero and g1[0].re == ExactScalar.symbol(spec.symbols, "lambda")
        assert g2[0].re.is_zero and g2[0].im == ExactScalar.symbol(spec.symbols, "t")

    def test_rational_pi_lattice(self):
        spec = example1([1], "rational_pi(1,2)")
        g2 = spec.lattice.generators[1]
        assert g2[0].im == ExactScalar.pi_multiple(spec.symbols, "1/2")

    def test_tuple_t_mode(self):
        assert example1([1], (1, 2)) == example1([1], "rational_pi(1,2)")

    def test_zero_exponent_rejected(self):
        with pytest.raises(ValueError):
            example1([1, 0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            example1([])

    def test_bad_t_mode_rejected(self):
        with pytest.raises(ValueError):
            example1([1], "sometimes")
        with pytest.raises(ValueError):
            example1([1], "rational_pi(1,0)")

    def test_deterministic(self):
        assert example1([1, -2], "symbolic") == example1([1, -2], "symbolic")

    def test_no_fiber_data(self):
        assert example1([1]).lattice_fiber is None
        assert validate(example1([1])).fiber_preserved == FIBER_NOT_CHECKED


class TestExample2:
    def test_accepted_and_preserved(self):
        spec = example2_n1([[2, 1], [1, 1]])
        assert spec.n == 1 and spec.m == 2
        report = validate(spec)
        assert report.lattice_rank_ok
        assert report.fiber_preserved == FIBER_OK

    def test_logeps_witness(self):
        spec = example2_n1([[2, 1], [1, 1]])
        assert spec.symbols.witness("logeps") == pytest.approx(
            math.log((3 + math.sqrt(5)) / 2)
        )

    def test_identity_rejected(self):
        with pytest.raises(ValueError):
            example2_n1([[1, 0], [0, 1]])

    def test_elliptic_rejected(self):
        with pytest.raises(ValueError):
            example2_n1([[0, -1], [1, 0]])

    def test_wrong_determinant_rejected(self):
        with pytest.raises(ValueError):
            example2_n1([[2, 0], [0, 1]])

    def test_negative_trace_accepted(self):
        spec = example2_n1([[-2, 1], [1, -1]])
        assert validate(spec).fiber_preserved == FIBER_OK

    def test_matches_example1_characters(self):
        ex1 = example1([1], "symbolic")
        ex2 = example2_n1([[2, 1], [1, 1]])
        assert [exponent_data(a) for a in ex1.alphas] == [
            exponent_data(a) for a in ex2.alphas
        ]

    def test_fiber_preservation_numeric_oracle(self):
        # independent check straight from the input matrix: multiplying the
        # fiber generators by the eigenvalue diagonal must reproduce the
        # integer combinations read off from A itself
        A = [[2, 1], [1, 1]]
        spec = example2_n1(A)
        eps = math.exp(spec.symbols.witness("logeps"))
        gens = [
            np.array([c.complex_value() for c in gen]) for gen in spec.lattice_fiber.generators
        ]
        diag = np.array([eps, 1.0 / eps])
        # real-part generators: columns of the dual eigenvector matrix
        for j in range(2):
            image = diag * gens[j]
            combo = A[0][j] * gens[0] + A[1][j] * gens[1]
            assert np.abs(image - combo).max() < 1e-6
        # imaginary-part generators transform by the same integer matrix
        for j in range(2):
            image = diag * gens[2 + j]
            combo = A[0][j] * gens[2] + A[1][j] * gens[3]
            assert np.abs(image - combo).max() < 1e-6


class TestValidate:
    def test_violation_detected(self):
        # irrational scaling e * w cannot stay in the Gaussian integer span
        table = SymbolTable.base()
        one = ExactScalar.rational(table, 1)
        spec = SolvManifoldSpec(
            name="broken",
            n=1,
            m=1,
            alphas=(CharacterExponent.from_real_exponent(table, [1]),),
            lattice=LatticeBasis(
                1,
                (
                    (ComplexExact.make(table, re=one),),
                    (ComplexExact.make(table, im=one),),
                ),
            ),
            lattice_fiber=LatticeBasis(
                1,
                (
                    (ComplexExact.make(table, re=one),),
                    (ComplexExact.make(table, im=one),),
                ),
            ),
            symbols=table,
        )
        report = validate(spec)
        assert report.fiber_preserved == FIBER_VIOLATED
        assert any("residual" in line for line in report.details)

    def test_corpus_validates_clean(self):
        for spec in corpus_specs():
            report = validate(spec)
            assert report.lattice_rank_ok, spec.name
            assert report.fiber_preserved != FIBER_VIOLATED, spec.name


class TestSpecInvariants:
    def test_character_count_enforced(self):
        table = SymbolTable.base()
        with pytest.raises(ValueError):
            SolvManifoldSpec(
                name="bad",
                n=1,
                m=2,
                alphas=(CharacterExponent.trivial(table, 1),),
                lattice=torus(1, 1).lattice,
                lattice_fiber=None,
                symbols=table,
            )

    def test_character_dimension_enforced(self):
        table = SymbolTable.base()
        with pytest.raises(ValueError):
            SolvManifoldSpec(
                name="bad",
                n=1,
                m=1,
                alphas=(CharacterExponent.trivial(table, 2),),
                lattice=torus(1, 1).lattice,
                lattice_fiber=None,
                symbols=table,
            )
