import numpy as np
import pytest
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_mul, gf_rem

from qssrec import gf
from qssrec.gf import GF, CONWAY_POLYNOMIALS, field_new, supported_orders

SMALL = [q for q in supported_orders() if q <= 16]


def test_f2_characteristic():
    F = field_new(2, 1)
    assert F(1) + F(1) == 0


def test_f4_generator_squares_to_x_plus_1():
    F = field_new(2, 2)
    x = F(2)
    assert x * x == x + 1
    assert x * x == 3


def test_f5_inverse_of_two():
    F = field_new(5, 1)
    assert F(2) * F(3) == 1
    assert F(2).inverse() == 3


def test_f3_inverse_of_two():
    assert GF(3)(2).inverse() == 2


def test_f4_mul_2_3():
    assert GF(4).mul(2, 3) == 1


def test_module_level_ops():
    F = GF(7)
    assert gf.add(F(3), F(5)) == 1
    assert gf.sub(F(3), F(5)) == 5
    assert gf.mul(F(3), F(5)) == 1
    assert gf.neg(F(3)) == 4
    assert gf.inv(F(3)) == 5


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GF(4)(0).inverse()


def test_cross_field_raises():
    with pytest.raises(ValueError):
        GF(2)(1) + GF(3)(1)


@pytest.mark.parametrize("p,m", [(4, 1), (1, 1), (2, 7), (3, 4), (65, 1)])
def test_rejects_bad_fields(p, m):
    with pytest.raises(ValueError):
        field_new(p, m)


def test_rejects_non_prime_power():
    with pytest.raises(ValueError):
        GF(6)


def test_element_range_checked():
    with pytest.raises(ValueError):
        GF(5)(5)


@pytest.mark.parametrize("pm", sorted(CONWAY_POLYNOMIALS))
def test_extension_tables_match_polynomial_arithmetic(pm):
    """Every product agrees with sympy's F_p[x] multiplication mod the Conway polynomial."""
    p, m = pm
    F = field_new(p, m)
    modulus = [ZZ(c) for c in reversed(CONWAY_POLYNOMIALS[pm])]

    def poly(v):
        coeffs = [(v // p**i) % p for i in range(m)]
        return [ZZ(c) for c in reversed(coeffs)]

    def value(coeffs):
        return sum(int(c) * p**i for i, c in enumerate(reversed(coeffs)))

    for a in range(F.q):
        for b in range(F.q):
            expected = value(gf_rem(gf_mul(poly(a), poly(b), p, ZZ), modulus, p, ZZ))
            assert F.mul(a, b) == expected


@pytest.mark.parametrize("q", SMALL)
def test_field_axioms_exhaustive(q):
    F = GF(q)
    a = np.arange(q)
    A, B, C = np.meshgrid(a, a, a, indexing="ij")
    add, mul = F.add_table, F.mul_table
    assert np.array_equal(add[add[A, B], C], add[A, add[B, C]])
    assert np.array_equal(mul[mul[A, B], C], mul[A, mul[B, C]])
    assert np.array_equal(add, add.T) and np.array_equal(mul, mul.T)
    assert np.array_equal(mul[A, add[B, C]], add[mul[A, B], mul[A, C]])
    assert np.all(add[a, 0] == a) and np.all(mul[a, 1] == a)
    assert np.all(add[a, F.neg_table] == 0)
    assert np.all(mul[a[1:], F.inv_table[1:]] == 1)
    # unique inverses: each nonzero row of the multiplication table is a permutation
    for x in range(1, q):
        assert sorted(mul[x]) == list(range(q))


@pytest.mark.parametrize("q", SMALL)
def test_neg_inv_frobenius(q):
    F = GF(q)
    for x in range(q):
        assert F.neg(x) == F.sub(0, x)
        if x:
            assert F.inv(F.inv(x)) == x
    frob = [F.pow(x, F.p) for x in range(q)]
    for x in range(q):
        for y in range(q):
            assert frob[F.add(x, y)] == F.add(frob[x], frob[y])


def test_fields_are_cached_and_comparable():
    assert GF(9) is field_new(3, 2)
    assert GF(9) == field_new(3, 2)
    assert GF(9) != GF(3)


def test_all_orders_up_to_64_build():
    for q in supported_orders():
        F = GF(q)
        assert F.q == q
        assert (F.mul_table[1:, 1:] != 0).all()
