import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sphericallab import arithmetic
from sphericallab import exceptions


def test_factorize():
    assert arithmetic.factorize(1) == ()
    assert arithmetic.factorize(360) == ((2, 3), (3, 2), (5, 1))
    assert arithmetic.factorize(97) == ((97, 1),)
    with pytest.raises(exceptions.ArithmeticInputError):
        arithmetic.factorize(0)


def test_multiplicative_functions():
    assert [arithmetic.mobius(n) for n in (1, 2, 4, 6, 30)] == [1, -1, 0, 1, -1]
    assert arithmetic.euler_phi(1) == 1
    assert arithmetic.euler_phi(12) == 4
    assert arithmetic.divisors(12) == [1, 2, 3, 4, 6, 12]
    assert arithmetic.divisor_sum(12) == 28


def test_units():
    assert arithmetic.units(1).tolist() == [0]
    assert arithmetic.units(10).tolist() == [1, 3, 7, 9]
    with pytest.raises(exceptions.ArithmeticInputError):
        arithmetic.units(0)


def test_residue():
    assert int(arithmetic.Residue(3, 7)) == 3
    with pytest.raises(exceptions.ArithmeticInputError):
        arithmetic.Residue(7, 7)
    with pytest.raises(exceptions.ArithmeticInputError):
        arithmetic.Residue(0, 0)


def test_mod_inverse():
    assert arithmetic.mod_inverse(3, 7).value == 5
    assert arithmetic.mod_inverse(-1, 7).value == 6
    assert arithmetic.mod_inverse(5, 1) == arithmetic.Residue(0, 1)
    with pytest.raises(exceptions.NotCoprime):
        arithmetic.mod_inverse(2, 4)


class TestRamanujan:
    def test_values(self):
        assert arithmetic.ramanujan_sum(1, 17) == 1
        assert arithmetic.ramanujan_sum(12, 0) == 4
        assert arithmetic.ramanujan_sum(6, 1) == 1
        assert arithmetic.ramanujan_sum(4, 2) == -2
        assert arithmetic.ramanujan_sum(9, 3) == -3

    @given(st.integers(1, 60), st.integers(-200, 200))
    def test_closed_form_matches_direct(self, q, n):
        direct = arithmetic.ramanujan_sum_direct(q, n)
        assert abs(direct - arithmetic.ramanujan_sum(q, n)) < 1e-9
        assert abs(direct.imag) < 1e-9

    @given(st.integers(1, 40))
    def test_sum_over_period(self, q):
        # Σ_{n mod q} c_q(n) vanishes unless q = 1
        total = sum(arithmetic.ramanujan_sum(q, n) for n in range(q))
        assert total == (1 if q == 1 else 0)


class TestGauss:
    def test_trivial_modulus(self):
        assert arithmetic.gauss_sum(0, 1, [3, -2, 5]) == 1

    @pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
    def test_prime_modulus_absolute_value(self, q):
        for a in range(1, q):
            g = arithmetic.gauss_sum(a, q, [1, 0, 2])
            assert abs(g) == pytest.approx(q ** -1.5, rel=1e-9)

    def test_non_unit(self):
        with pytest.raises(exceptions.NotCoprime):
            arithmetic.gauss_sum(2, 4, [1])

    @pytest.mark.parametrize("q", [1, 4, 9, 10])
    def test_table(self, q):
        table = arithmetic.gauss_table(q)
        assert table.shape == (arithmetic.euler_phi(q), q)
        for i, a in enumerate(arithmetic.units(q)):
            for b in range(q):
                assert abs(table[i, b] - arithmetic.gauss_sum_1d(int(a), b, q)) < 1e-9

    @given(
        st.integers(1, 24),
        st.integers(0, 200),
        st.lists(st.integers(-30, 30), min_size=1, max_size=4),
    )
    def test_inversion(self, q, a, x):
        if math.gcd(a, q) != 1 and q > 1:
            a = 1
        lhs, rhs = arithmetic.gauss_inversion_check(a, q, x, len(x))
        assert abs(lhs - rhs) < 1e-8

    def test_inversion_dimension_mismatch(self):
        with pytest.raises(exceptions.ArithmeticInputError):
            arithmetic.gauss_inversion_check(1, 5, [1, 2], 3)


class TestKloosterman:
    def test_full_range_is_ramanujan(self):
        for q in range(2, 30):
            for b in range(q):
                k = arithmetic.kloosterman_restricted(b, q, 1, q - 1)
                assert abs(k - arithmetic.ramanujan_sum(q, b)) < 1e-9

    def test_bad_range(self):
        with pytest.raises(exceptions.BadRange):
            arithmetic.kloosterman_restricted(1, 1, 1, 1)
        with pytest.raises(exceptions.BadRange):
            arithmetic.kloosterman_restricted(1, 7, 4, 3)
        with pytest.raises(exceptions.BadRange):
            arithmetic.kloosterman_restricted(1, 7, 1, 7)
        with pytest.raises(exceptions.BadRange):
            arithmetic.kloosterman_interval_max(1, 1)

    @pytest.mark.parametrize("q", [2, 5, 9, 12, 17])
    def test_interval_max_is_brute_force(self, q):
        for b in (1, 2, q - 1):
            brute = max(
                abs(arithmetic.kloosterman_restricted(b, q, x, y))
                for x in range(1, q) for y in range(x, q)
            )
            value, (x, y) = arithmetic.kloosterman_interval_max(b, q)
            assert value == pytest.approx(brute, abs=1e-9)
            assert 1 <= x <= y < q
            assert abs(arithmetic.kloosterman_restricted(b, q, x, y)) == pytest.approx(value, abs=1e-9)

    def test_phase(self):
        # a single unit: inverse of 1 mod 5 is 1
        k = arithmetic.kloosterman_restricted(2, 5, 1, 1)
        assert abs(k - cmath.exp(2j * math.pi * 2 / 5)) < 1e-12


class TestGcdProduct:
    def test_lcm(self):
        assert arithmetic.lcm_vec([4, 6]) == 12
        assert arithmetic.lcm_vec([]) == 1
        with pytest.raises(exceptions.ArithmeticInputError):
            arithmetic.lcm_vec([3, 0])

    def test_trivial(self):
        assert arithmetic.gcd_product_sum([1], 1000) == 1000
        assert arithmetic.gcd_product_sum([2], 4) == 1 + 2 + 1 + 2

    @given(
        st.lists(st.integers(1, 30), min_size=1, max_size=3),
        st.integers(1, 600),
    )
    def test_matches_direct(self, qs, L):
        brute = sum(math.prod(math.gcd(q, n) for q in qs) for n in range(1, L + 1))
        assert arithmetic.gcd_product_sum(qs, L) == brute

    def test_rejects_bad_length(self):
        with pytest.raises(exceptions.ArithmeticInputError):
            arithmetic.gcd_product_sum([3], 0)
