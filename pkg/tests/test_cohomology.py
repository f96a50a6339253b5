from math import comb

import pytest

import solvhodge as sh
from solvhodge.cohomology import (
    BasisElement,
    FiberTooLarge,
    HodgeTable,
    PairSweep,
    all_basis_elements,
    basis_elements,
    betti_numbers,
    check_condition,
    conjugation_symmetry,
    hodge_symmetry,
    hodge_table,
    serre_duality_check,
    sweep_trivial_pairs,
    trivial_pairs,
)

from conftest import corpus_specs

EXAMPLE1_PAIRS = {
    ((), ()),
    ((1,), (2,)),
    ((2,), (1,)),
    ((1, 2), (1, 2)),
    ((), (1, 2)),
    ((1, 2), ()),
}

EXAMPLE1_HODGE = ((1, 1, 1, 1), (1, 3, 3, 1), (1, 3, 3, 1), (1, 1, 1, 1))


class TestTrivialPairs:
    def test_torus_all_pairs(self):
        assert len(trivial_pairs(sh.torus(1, 1))) == 4

    def test_example1_symbolic(self):
        assert trivial_pairs(sh.example1([1], "symbolic")) == frozenset(EXAMPLE1_PAIRS)

    def test_example1_rational_pi_strictly_grows(self):
        symbolic = trivial_pairs(sh.example1([1], "symbolic"))
        pi_pairs = trivial_pairs(sh.example1([1], "rational_pi(1,1)"))
        assert symbolic < pi_pairs
        assert ((1,), (1,)) in pi_pairs

    def test_sweep_is_certified_on_corpus(self):
        for spec in corpus_specs():
            assert sweep_trivial_pairs(spec).certified, spec.name

    def test_fiber_cap_enforced(self):
        with pytest.raises(FiberTooLarge):
            sweep_trivial_pairs(sh.torus(0, 13))

    def test_swap_closed_for_real_valued_actions(self):
        for spec in corpus_specs():
            if all(alpha.is_real_valued for alpha in spec.alphas):
                pairs = trivial_pairs(spec)
                assert {(L, J) for J, L in pairs} == pairs, spec.name

    def test_matches_direct_lattice_test(self):
        # the sweep must agree with testing each pair directly
        from itertools import combinations, product

        spec = sh.example1([1], "rational_pi(1,1)")
        betas = [alpha.decompose().unit for alpha in spec.alphas]
        gammas = [alpha.conjugate_unitary_part() for alpha in spec.alphas]
        subsets = [
            tuple(s)
            for size in range(3)
            for s in combinations(range(1, 3), size)
        ]
        expected = set()
        for J, L in product(subsets, subsets):
            chi = sh.CharacterExponent.trivial(spec.symbols, 1)
            for j in J:
                chi = chi * betas[j - 1]
            for l in L:
                chi = chi * gammas[l - 1]
            if sh.is_trivial_on_lattice(chi, spec.lattice):
                expected.add((J, L))
        assert trivial_pairs(spec) == expected


class TestFloatFallback:
    def symbolic_exponent_spec(self):
        """Character exponent and lattice entry both symbolic: the exact
        layer refuses their product and the sweep must degrade gracefully."""
        table = (
            sh.SymbolTable.base().with_symbol("s", 0.5).with_symbol("t", 1.0)
        )
        alpha = sh.CharacterExponent.from_real_exponent(
            table, [sh.ExactScalar.symbol(table, "s")]
        )
        lattice = sh.LatticeBasis(
            1,
            (
                (sh.ComplexExact.make(table, re=1),),
                (sh.ComplexExact.make(table, im=sh.ExactScalar.symbol(table, "t")),),
            ),
        )
        return sh.SolvManifoldSpec(
            name="symbolic_exponent",
            n=1,
            m=1,
            alphas=(alpha,),
            lattice=lattice,
            lattice_fiber=None,
            symbols=table,
        )

    def test_sweep_degrades_to_float(self):
        sweep = sweep_trivial_pairs(self.symbolic_exponent_spec())
        assert not sweep.certified
        # s*t = 0.5 is far from 2*pi*Z, so only the empty pair survives
        assert sweep.pairs == (((), ()),)

    def test_forced_float_mode(self):
        spec = sh.torus(1, 1)
        sweep = sweep_trivial_pairs(spec, force_float=True)
        assert not sweep.certified
        assert sweep.pair_set == trivial_pairs(spec)


class TestBasisElements:
    def test_torus_bidegree_one_zero(self):
        got = basis_elements(sh.torus(1, 1), 1, 0)
        assert got == (
            BasisElement((), (1,), (), ()),
            BasisElement((1,), (), (), ()),
        )

    def test_example1_one_zero(self):
        got = basis_elements(sh.example1([1], "symbolic"), 1, 0)
        assert got == (BasisElement((1,), (), (), ()),)

    def test_example1_one_one(self):
        got = basis_elements(sh.example1([1], "symbolic"), 1, 1)
        assert len(got) == 3
        assert BasisElement((1,), (), (1,), ()) in got
        assert BasisElement((), (1,), (), (2,)) in got
        assert BasisElement((), (2,), (), (1,)) in got

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            basis_elements(sh.torus(1, 1), 3, 0)
        with pytest.raises(ValueError):
            basis_elements(sh.torus(1, 1), 0, -1)

    def test_unsorted_indices_rejected(self):
        with pytest.raises(ValueError):
            BasisElement((2, 1), (), (), ())
        with pytest.raises(ValueError):
            BasisElement((1, 1), (), (), ())

    def test_deterministic_order(self):
        spec = sh.example1([1], "symbolic")
        assert basis_elements(spec, 1, 1) == basis_elements(spec, 1, 1)


class TestHodgeTable:
    @pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (0, 2), (3, 0), (2, 2)])
    def test_torus_binomials(self, n, m):
        table = hodge_table(sh.torus(n, m))
        dim = n + m
        for p in range(dim + 1):
            for q in range(dim + 1):
                assert table.h[p][q] == comb(dim, p) * comb(dim, q)

    def test_example1_table(self):
        assert hodge_table(sh.example1([1], "symbolic")).rows() == EXAMPLE1_HODGE

    def test_example1_23_one_zero(self):
        # no nonempty exponent selection sums to zero with one pick
        table = hodge_table(sh.example1([2, 3], "symbolic"))
        assert table.h[1][0] == 1

    def test_counting_matches_enumeration(self):
        for spec in corpus_specs():
            sweep = sweep_trivial_pairs(spec)
            table = hodge_table(spec, sweep)
            dim = spec.complex_dim
            for p in range(dim + 1):
                for q in range(dim + 1):
                    assert table.h[p][q] == len(basis_elements(spec, p, q, sweep)), (
                        spec.name,
                        p,
                        q,
                    )

    def test_binomial_upper_bound(self):
        for spec in corpus_specs():
            table = hodge_table(spec)
            dim = spec.complex_dim
            for p in range(dim + 1):
                for q in range(dim + 1):
                    assert table.h[p][q] <= comb(dim, p) * comb(dim, q)

    def test_shape_enforced(self):
        with pytest.raises(ValueError):
            HodgeTable(1, ((1, 1),))
        with pytest.raises(ValueError):
            HodgeTable(1, ((0, 1), (1, 1)))


class TestCondition:
    def test_example1_symbolic_holds(self):
        report = check_condition(sh.example1([1], "symbolic"))
        assert report.holds and report.violations == ()
        assert report.checked_pairs == 6

    def test_example1_rational_pi_fails(self):
        report = check_condition(sh.example1([1], "rational_pi(1,1)"))
        assert not report.holds
        assert ((1,), (1,), "trivial_restriction_but_alpha_nontrivial") in report.violations

    def test_torus_holds(self):
        assert check_condition(sh.torus(2, 2)).holds


class TestSymmetryChecks:
    def test_example1_both_symmetries(self):
        spec = sh.example1([1], "symbolic")
        assert hodge_symmetry(hodge_table(spec))
        assert conjugation_symmetry(spec)

    def test_torus(self):
        spec = sh.torus(1, 2)
        assert hodge_symmetry(hodge_table(spec))
        assert conjugation_symmetry(spec)

    def test_asymmetric_stub_breaks_symmetry(self):
        # a deliberately swap-open pair set: (J, L) admitted, (L, J) not
        spec = sh.torus(1, 1)
        stub = PairSweep(pairs=(((), ()), ((1,), ())), certified=True)
        assert not conjugation_symmetry(spec, stub)
        table = hodge_table(spec, stub)
        assert not hodge_symmetry(table)
        assert not serre_duality_check(table)

    def test_serre_on_corpus(self):
        for spec in corpus_specs():
            assert serre_duality_check(hodge_table(spec)), spec.name


class TestBetti:
    def test_example1_values(self):
        betti = betti_numbers(sh.example1([1], "symbolic"))
        assert betti.values == (1, 2, 5, 8, 5, 2, 1)
        assert betti.certified_de_rham

    def test_torus_values(self):
        betti = betti_numbers(sh.torus(1, 1))
        assert betti.values == tuple(comb(4, r) for r in range(5))
        assert betti.certified_de_rham

    def test_rational_pi_not_certified(self):
        betti = betti_numbers(sh.example1([1], "rational_pi(1,1)"))
        assert not betti.certified_de_rham

    def test_euler_characteristic_vanishes(self):
        for spec in corpus_specs():
            betti = betti_numbers(spec)
            assert sum((-1) ** r * b for r, b in enumerate(betti.values)) == 0, spec.name


class TestPipelineInvariant:
    def test_condition_implies_full_symmetry(self):
        for spec in corpus_specs():
            sweep = sweep_trivial_pairs(spec)
            if not check_condition(spec, sweep).holds:
                continue
            table = hodge_table(spec, sweep)
            assert hodge_symmetry(table), spec.name
            assert conjugation_symmetry(spec, sweep), spec.name
            assert serre_duality_check(table), spec.name
            assert betti_numbers(spec, sweep).certified_de_rham, spec.name

    def test_all_elements_cover_table(self):
        for spec in corpus_specs():
            sweep = sweep_trivial_pairs(spec)
            table = hodge_table(spec, sweep)
            total = sum(sum(row) for row in table.rows())
            assert len(all_basis_elements(spec, sweep)) == total, spec.name
