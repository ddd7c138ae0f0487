# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the grading library."""
import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from parameterized import parameterized

from gradedval.v0.gradedval_exceptions import InfiniteIndexError, NotASublatticeError
from gradedval.v0.grading import (
    INFINITE,
    Lattice,
    LatticeHom,
    coset_representatives,
    format_index,
    hom_extend,
    lattice_index,
)


class TestLattice(unittest.TestCase):
    def test_membership(self):
        """Membership needs integral coordinates."""
        half = Lattice(1, [[Fraction(1, 2)]])
        self.assertIn((Fraction(3, 2),), half)
        self.assertNotIn((Fraction(1, 3),), half)
        self.assertEqual(half.integer_coordinates((Fraction(3, 2),)), (3,))

        with self.assertRaises(NotASublatticeError):
            half.integer_coordinates((Fraction(1, 3),))

    def test_dependent_basis_rejected(self):
        """A basis must be linearly independent."""
        with self.assertRaises(ValueError):
            Lattice(2, [[1, 2], [2, 4]])

    def test_from_generators(self):
        """Redundant generators collapse to a basis of the same lattice."""
        lattice = Lattice.from_generators(2, [[2, 0], [0, 2], [2, 2], [4, 6]])
        self.assertEqual(lattice.rank, 2)
        self.assertEqual(lattice, Lattice(2, [[2, 0], [0, 2]]))
        self.assertEqual(Lattice.from_generators(1, [[4], [6]]), Lattice(1, [[2]]))

    @parameterized.expand(
        [
            ("two_z", Lattice.standard(1), Lattice(1, [[2]]), 2),
            ("smith", Lattice.standard(2), Lattice(2, [[2, 0], [1, 3]]), 6),
            ("rank_drop", Lattice.standard(2), Lattice(2, [[1, 0]]), INFINITE),
            ("same", Lattice.standard(2), Lattice.standard(2), 1),
        ]
    )
    def test_lattice_index(self, _, sup, sub, expected):
        """Index of a sublattice."""
        self.assertEqual(lattice_index(sup, sub), expected)

    def test_lattice_index_not_a_sublattice(self):
        """The smaller lattice must lie inside the bigger one."""
        with self.assertRaises(NotASublatticeError):
            lattice_index(Lattice(1, [[2]]), Lattice.standard(1))

    def test_quotient_invariants(self):
        """Z^2 / <(2,0),(1,3)> is cyclic of order 6."""
        invariants = Lattice.standard(2).quotient_invariants(Lattice(2, [[2, 0], [1, 3]]))
        self.assertEqual([d for d in invariants if d != 1], [6])

    def test_coset_representatives(self):
        """One representative per coset, the zero vector first."""
        reps = coset_representatives(Lattice.standard(2), Lattice(2, [[2, 0], [0, 3]]))
        self.assertEqual(len(reps), 6)
        self.assertEqual(reps[0], (0, 0))

        with self.assertRaises(InfiniteIndexError):
            coset_representatives(Lattice.standard(2), Lattice(2, [[1, 0]]))

    def test_format_index(self):
        """Indices render as ints or "inf"."""
        self.assertEqual(format_index(4), 4)
        self.assertEqual(format_index(INFINITE), str(INFINITE))

    @settings(max_examples=50, deadline=None)
    @given(
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=1, max_value=6),
        st.integers(min_value=-5, max_value=5),
    )
    def test_index_multiplicative_in_chains(self, a, b, c):
        """[G : G''] = [G : G'] [G' : G''] for G'' ⊆ G' ⊆ G."""
        top = Lattice.standard(2)
        middle = Lattice(2, [[a, 0], [c, 1]])
        bottom = Lattice(2, [[a * b, 0], [c, 1]])
        self.assertEqual(
            lattice_index(top, bottom), lattice_index(top, middle) * lattice_index(middle, bottom)
        )


class TestLatticeHom(unittest.TestCase):
    def test_hom_extend_halves(self):
        """psi(2) = 1 on 2Z extends to psi'(1) = 1/2 on Z."""
        psi = LatticeHom(Lattice(1, [[2]]), 1, [[1]])
        extended = hom_extend(psi, Lattice.standard(1))
        self.assertEqual(extended((1,)), (Fraction(1, 2),))

    def test_hom_extend_identity(self):
        """The identity on Z^2 extends to itself."""
        identity = LatticeHom.inclusion(Lattice.standard(2))
        self.assertEqual(hom_extend(identity, Lattice.standard(2)), identity)

    def test_hom_extend_index_three(self):
        """Extension from an index 3 sublattice has denominators dividing 3."""
        sub = Lattice(2, [[1, 1], [0, 3]])
        psi = LatticeHom(sub, 2, [[1, 0], [0, 1]])
        extended = hom_extend(psi, Lattice.standard(2))
        for row in extended.matrix:
            for x in row:
                self.assertEqual(3 % x.denominator, 0)
        for b in sub.basis:
            self.assertEqual(extended(b), psi(b))

    def test_hom_extend_infinite_index(self):
        """Extension needs a finite index."""
        psi = LatticeHom(Lattice(2, [[1, 0]]), 1, [[1]])
        with self.assertRaises(InfiniteIndexError):
            hom_extend(psi, Lattice.standard(2))

    def test_preimage(self):
        """{g : psi(g) in Z} for psi(1) = 1/2 is 2Z."""
        psi = LatticeHom(Lattice.standard(1), 1, [[Fraction(1, 2)]])
        self.assertEqual(psi.preimage(Lattice.standard(1)), Lattice(1, [[2]]))

    def test_zero(self):
        """The zero map sends everything to 0."""
        zero = LatticeHom.zero(Lattice.standard(2), 1)
        self.assertEqual(zero((3, -4)), (0,))
