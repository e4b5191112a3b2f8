from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from latzeta import lattice
from latzeta.errors import DimensionMismatch, ZeroVector
from latzeta.lattice import Character, LatticeVector


def coords(vs):
    return [v.coords for v in vs]


class TestEnumerateShell:
    def test_norm_one_in_2d(self):
        assert coords(lattice.enumerate_shell(2, 1)) == [(-1, 0), (0, -1), (0, 1), (1, 0)]

    def test_zero_shell(self):
        assert coords(lattice.enumerate_shell(2, 0)) == [(0, 0)]

    def test_count_n25(self):
        # brute-force oracle over |m_i| <= 5
        brute = [
            (a, b)
            for a in range(-5, 6)
            for b in range(-5, 6)
            if a * a + b * b == 25
        ]
        got = lattice.enumerate_shell(2, 25)
        assert len(got) == len(brute) == 12
        assert coords(got) == sorted(brute)

    def test_deterministic_and_sorted(self):
        a = coords(lattice.enumerate_shell(3, 14))
        b = coords(lattice.enumerate_shell(3, 14))
        assert a == b == sorted(a)

    def test_empty_shell(self):
        assert lattice.enumerate_shell(2, 3) == []

    @given(st.integers(1, 4), st.integers(1, 60))
    @settings(max_examples=40, deadline=None)
    def test_shell_members_have_requested_norm(self, nu, n):
        for v in lattice.enumerate_shell(nu, n):
            assert v.squared_norm == n

    def test_count_invariant_under_coordinate_permutation(self):
        # the shell is symmetric under coordinate permutation
        for n in (5, 9, 14):
            vs = set(coords(lattice.enumerate_shell(3, n)))
            assert all(tuple(reversed(v)) in vs for v in vs)


class TestEnumerateBall:
    def test_dim1(self):
        assert coords(lattice.enumerate_ball(1, 4)) == [(-2,), (-1,), (1,), (2,)]

    def test_count_2d(self):
        assert sum(1 for _ in lattice.enumerate_ball(2, 2)) == 8

    def test_count_3d(self):
        assert sum(1 for _ in lattice.enumerate_ball(3, 1)) == 6

    def test_excludes_origin_and_matches_shells(self):
        R2 = 12
        ball = coords(lattice.enumerate_ball(3, R2))
        assert (0, 0, 0) not in ball
        assert len(ball) == len(set(ball))
        by_shell = sum(len(lattice.enumerate_shell(3, n)) for n in range(1, R2 + 1))
        assert len(ball) == by_shell

    def test_ball_array_matches_iterator(self):
        arr = lattice.ball_array(2, 9)
        it = np.array(coords(lattice.enumerate_ball(2, 9)))
        assert np.array_equal(arr, it)

    def test_ball_chunks_concatenate_to_ball_array(self):
        chunks = list(lattice.ball_chunks(3, 16, max_rows=50))
        cat = np.concatenate(chunks, axis=0)
        assert np.array_equal(cat, lattice.ball_array(3, 16))


class TestGcdPrimitive:
    def test_examples(self):
        assert lattice.vec_gcd((2, 4)) == 2
        assert lattice.vec_gcd((3, 0, 5)) == 1
        assert lattice.vec_gcd((-6, 9, 0, 15)) == 3

    def test_zero_vector_raises(self):
        with pytest.raises(ZeroVector):
            lattice.vec_gcd((0, 0))
        with pytest.raises(ZeroVector):
            lattice.is_primitive((0, 0, 0))

    def test_is_primitive(self):
        assert lattice.is_primitive((1, 0))
        assert not lattice.is_primitive((2, 2))
        assert lattice.is_primitive((3, 5))

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=5))
    @settings(max_examples=100, deadline=None)
    def test_unique_factorization(self, cs):
        v = tuple(cs)
        if not any(v):
            return
        d = lattice.vec_gcd(v)
        u = tuple(c // d for c in v)
        assert lattice.is_primitive(u)
        assert tuple(d * c for c in u) == v


class TestCharacter:
    def test_reduction_into_unit_box(self):
        c = Character((Fraction(5, 4), Fraction(-1, 3)))
        assert c.alpha == (Fraction(1, 4), Fraction(2, 3))

    def test_from_string(self):
        c = Character.from_string("1/3,0,1/2")
        assert c.alpha == (Fraction(1, 3), Fraction(0), Fraction(1, 2))

    def test_scaled_reduces_mod_one(self):
        c = Character((Fraction(1, 3), Fraction(1, 2)))
        assert c.scaled(2).alpha == (Fraction(2, 3), Fraction(0))

    def test_pairing_trivial_character_is_exactly_one(self):
        for v in ((3, -7), (0, 5)):
            assert lattice.char_pairing(v, Character.zero(2)) == 1.0

    def test_pairing_examples(self):
        c = Character((Fraction(1, 2), Fraction(1, 3)))
        assert lattice.char_pairing((1, 0), c) == pytest.approx(-1.0)
        c2 = Character((Fraction(1, 4), Fraction(1, 4)))
        # exponent 1/4 + 1/4 = 1/2 gives -1
        assert lattice.char_pairing((1, 1), c2) == pytest.approx(-1.0)

    def test_pairing_unit_modulus(self):
        c = Character((Fraction(2, 7), Fraction(5, 11)))
        for v in ((1, 2), (-3, 4), (6, -5)):
            assert abs(abs(lattice.char_pairing(v, c)) - 1.0) < 1e-15

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            lattice.char_pairing((1, 2, 3), Character.zero(2))

    def test_pairing_phases_match_scalar(self):
        c = Character((Fraction(1, 3), Fraction(2, 5)))
        arr = lattice.ball_array(2, 8)
        vec = lattice.pairing_phases(arr, c)
        for row, z in zip(arr, vec):
            assert z == pytest.approx(lattice.char_pairing(tuple(row), c), abs=1e-14)


class TestLatticeVector:
    def test_norms(self):
        v = LatticeVector((3, 4))
        assert v.squared_norm == 25
        assert v.norm == pytest.approx(5.0)

    def test_dim_validation(self):
        with pytest.raises(ValueError):
            LatticeVector(())
