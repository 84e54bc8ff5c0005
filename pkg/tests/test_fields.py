"""Polynomial and field arithmetic checked against brute-force oracles."""

import random

import numpy as np
import pytest

from qdsbch.fields import (
    PRIMITIVE_POLYNOMIALS,
    BinaryPolynomial,
    GF2m,
    GF4_OMEGA,
    GF4_OMEGA_BAR,
    GF4_ONE,
    GF4_ZERO,
    cyclotomic_cosets,
    gf4_add,
    gf4_conjugate,
    gf4_mul,
    gf4_trace_inner_product,
    minimal_polynomial,
    poly_lcm,
)


# --- BinaryPolynomial --------------------------------------------------------


def test_polynomial_basics():
    p = BinaryPolynomial.from_coefficients([1, 1, 0, 1])  # 1 + x + x^3
    assert p.degree == 3
    assert p.coefficients() == (1, 1, 0, 1)
    assert not p.is_zero
    assert BinaryPolynomial.zero().is_zero
    assert BinaryPolynomial.one().degree == 0
    assert BinaryPolynomial.x_power(5).coefficients() == (0, 0, 0, 0, 0, 1)


def test_polynomial_hex_roundtrip():
    rng = random.Random(11)
    for _ in range(50):
        p = BinaryPolynomial(rng.getrandbits(40))
        assert BinaryPolynomial.from_hex(p.to_hex()) == p
    assert BinaryPolynomial.from_hex("0x13").coefficients() == (1, 1, 0, 0, 1)


def test_polynomial_mul_matches_convolution():
    """Product coefficients are the mod-2 convolution of the factors'."""
    rng = random.Random(7)
    for _ in range(200):
        a = BinaryPolynomial(rng.getrandbits(24))
        b = BinaryPolynomial(rng.getrandbits(24))
        if a.is_zero or b.is_zero:
            assert (a * b).is_zero
            continue
        ca = np.array(a.coefficients(), dtype=np.int64)
        cb = np.array(b.coefficients(), dtype=np.int64)
        want = tuple(int(v) for v in np.convolve(ca, cb) % 2)
        assert (a * b).coefficients() == want


def test_polynomial_divmod_identity():
    rng = random.Random(13)
    for _ in range(300):
        a = BinaryPolynomial(rng.getrandbits(30))
        b = BinaryPolynomial(rng.getrandbits(12) | 1)
        if b.is_zero:
            continue
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree
        assert a % b == r
        assert a // b == q


def test_polynomial_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(BinaryPolynomial.one(), BinaryPolynomial.zero())


def test_polynomial_gcd_divides_both():
    rng = random.Random(17)
    for _ in range(100):
        g = BinaryPolynomial(rng.getrandbits(8) | 1)
        a = g * BinaryPolynomial(rng.getrandbits(10) | 1)
        b = g * BinaryPolynomial(rng.getrandbits(10) | 1)
        d = a.gcd(b)
        assert (a % d).is_zero
        assert (b % d).is_zero
        # gcd of multiples of g is itself a multiple of g
        assert (d % g).is_zero


def test_poly_lcm_properties():
    rng = random.Random(19)
    for _ in range(100):
        a = BinaryPolynomial(rng.getrandbits(10) | 1)
        b = BinaryPolynomial(rng.getrandbits(10) | 1)
        m = poly_lcm([a, b])
        assert (m % a).is_zero
        assert (m % b).is_zero
        assert m.degree == a.degree + b.degree - a.gcd(b).degree


def test_poly_lcm_of_one():
    p = BinaryPolynomial(0b1011)
    assert poly_lcm([p]) == p


# --- GF(2^m) -----------------------------------------------------------------


@pytest.mark.parametrize("m", range(2, 11))
def test_field_tables_exhaustive(m):
    """alpha generates the full multiplicative group; inv and log agree."""
    field = GF2m(m)
    n = field.group_order
    seen = set()
    for i in range(n):
        e = field.pow_alpha(i)
        assert 0 < e < (1 << m)
        seen.add(e)
        assert field.log_of(e) == i
    assert len(seen) == n
    for a in range(1, 1 << m):
        assert field.mul(a, field.inv(a)) == 1


def test_field_mul_is_log_addition():
    field = GF2m(8)
    n = field.group_order
    rng = random.Random(23)
    for _ in range(500):
        a = rng.randrange(1, 256)
        b = rng.randrange(1, 256)
        want = field.pow_alpha((field.log_of(a) + field.log_of(b)) % n)
        assert field.mul(a, b) == want
    assert field.mul(0, 37) == 0
    assert field.mul(37, 0) == 0


def test_field_mul_matches_polynomial_reduction():
    """Table lookups agree with direct polynomial multiplication mod p(x)."""
    for m in (3, 5, 8):
        field = GF2m(m)
        p = BinaryPolynomial(PRIMITIVE_POLYNOMIALS[m])
        rng = random.Random(m)
        for _ in range(200):
            a = rng.randrange(0, 1 << m)
            b = rng.randrange(0, 1 << m)
            want = (BinaryPolynomial(a) * BinaryPolynomial(b)) % p
            assert field.mul(a, b) == want.mask


def test_non_primitive_polynomial_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible but its root has order 5, not 15
    with pytest.raises(ValueError):
        GF2m(4, 0b11111)
    # x^4 + 1 = (x + 1)^4 is reducible
    with pytest.raises(ValueError):
        GF2m(4, 0b10001)
    with pytest.raises(ValueError):
        GF2m(4, 0b1011)  # wrong degree


def test_all_default_polynomials_are_primitive():
    for m in PRIMITIVE_POLYNOMIALS:
        GF2m(m)  # table construction asserts primitivity


def test_unsupported_degree():
    with pytest.raises(ValueError):
        GF2m(1)
    with pytest.raises(ValueError):
        GF2m(17)


# --- cyclotomic cosets and minimal polynomials -------------------------------


@pytest.mark.parametrize("m", range(2, 11))
def test_cyclotomic_cosets_partition(m):
    n = (1 << m) - 1
    cosets = cyclotomic_cosets(m)
    all_elems = sorted(e for c in cosets for e in c)
    assert all_elems == list(range(n))
    for c in cosets:
        assert m % len(c) == 0
        for e in c:
            assert (2 * e) % n in c


def test_minimal_polynomial_known_values():
    # standard minimal polynomials over GF(16) built on x^4 + x + 1
    field = GF2m(4)
    assert minimal_polynomial(field, 0).mask == 0b11  # x + 1
    assert minimal_polynomial(field, 1).mask == 0b10011
    assert minimal_polynomial(field, 3).mask == 0b11111
    assert minimal_polynomial(field, 5).mask == 0b111
    assert minimal_polynomial(field, 7).mask == 0b11001


def _trial_divide_irreducible(p: BinaryPolynomial) -> bool:
    for mask in range(2, 1 << (p.degree // 2 + 1)):
        d = BinaryPolynomial(mask)
        if d.degree >= 1 and (p % d).is_zero:
            return False
    return True


@pytest.mark.parametrize("m", [4, 6])
def test_minimal_polynomial_properties(m):
    """Roots are exactly the coset conjugates; the polynomial is irreducible."""
    field = GF2m(m)
    n = field.group_order
    cosets = {c[0]: c for c in cyclotomic_cosets(m)}
    for lead, coset in cosets.items():
        mp = minimal_polynomial(field, lead)
        assert mp.degree == len(coset)
        roots = {e for e in range(n) if mp.eval_in(field, field.pow_alpha(e)) == 0}
        assert roots == set(coset)
        assert _trial_divide_irreducible(mp)


# --- GF(4) -------------------------------------------------------------------


def test_gf4_constants():
    assert (GF4_ZERO, GF4_ONE, GF4_OMEGA, GF4_OMEGA_BAR) == (0, 1, 2, 3)


def test_gf4_is_a_field():
    elems = range(4)
    for a in elems:
        assert gf4_add(a, a) == 0
        assert gf4_mul(a, 1) == a
        for b in elems:
            assert gf4_mul(a, b) == gf4_mul(b, a)
            for c in elems:
                assert gf4_mul(a, gf4_mul(b, c)) == gf4_mul(gf4_mul(a, b), c)
                assert gf4_mul(a, gf4_add(b, c)) == gf4_add(gf4_mul(a, b), gf4_mul(a, c))
    # every nonzero element has an inverse
    for a in (1, 2, 3):
        assert any(gf4_mul(a, b) == 1 for b in (1, 2, 3))
    assert gf4_mul(GF4_OMEGA, GF4_OMEGA) == GF4_OMEGA_BAR
    assert gf4_mul(GF4_OMEGA, GF4_OMEGA_BAR) == GF4_ONE


def test_gf4_conjugation_is_an_automorphism():
    for a in range(4):
        assert gf4_conjugate(gf4_conjugate(a)) == a
        for b in range(4):
            assert gf4_conjugate(gf4_mul(a, b)) == gf4_mul(gf4_conjugate(a), gf4_conjugate(b))
    assert gf4_conjugate(GF4_ZERO) == GF4_ZERO
    assert gf4_conjugate(GF4_ONE) == GF4_ONE
    assert gf4_conjugate(GF4_OMEGA) == GF4_OMEGA_BAR


def test_gf4_trace_inner_product_is_the_symplectic_form():
    """tr(a conj(b)) on bit-pair encodings equals x1&z2 XOR z1&x2."""
    for x1 in (0, 1):
        for z1 in (0, 1):
            for x2 in (0, 1):
                for z2 in (0, 1):
                    a = x1 + 2 * z1
                    b = x2 + 2 * z2
                    want = (x1 & z2) ^ (z1 & x2)
                    assert gf4_trace_inner_product([a], [b]) == want


def test_gf4_trace_inner_product_sums_coordinates():
    rng = random.Random(103)
    for _ in range(100):
        n = rng.randrange(1, 8)
        xs = [rng.randrange(4) for _ in range(n)]
        ys = [rng.randrange(4) for _ in range(n)]
        want = 0
        for a, b in zip(xs, ys):
            want ^= gf4_trace_inner_product([a], [b])
        assert gf4_trace_inner_product(xs, ys) == want
    with pytest.raises(ValueError):
        gf4_trace_inner_product([0, 1], [2])
