from itertools import product

import numpy as np
import pytest

from sympy import isprime, legendre_symbol, n_order, totient
from sympy.ntheory import is_primitive_root

from quatcyc.number_theory import (
    euler_phi,
    find_odd_primitive_root,
    is_prime,
    make_params,
    mod_pow,
    multiplicative_order,
    odd_primitive_roots,
    prime_factors,
    qr_class,
)

odd_primes = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
exponents = [1, 2, 3]


def test_is_prime_against_sympy():
    for n in range(-3, 500):
        assert is_prime(n) == isprime(n)


def test_prime_factors_and_phi():
    assert prime_factors(1) == []
    assert prime_factors(360) == [2, 3, 5]
    assert prime_factors(2 * 7**3) == [2, 7]
    for n in range(1, 300):
        assert euler_phi(n) == totient(n)

    with pytest.raises(ValueError, match="Expected a positive integer.*"):
        prime_factors(0)


def test_mod_pow():
    assert mod_pow(3, 4, 7) == 81 % 7
    assert mod_pow(-2, 3, 9) == (-8) % 9
    assert mod_pow(5, 0, 18) == 1

    with pytest.raises(ValueError, match="modulus must be at least 2.*"):
        mod_pow(2, 3, 1)
    with pytest.raises(ValueError, match="exp must be non-negative.*"):
        mod_pow(2, -1, 7)


@pytest.mark.parametrize("modulus", [2, 9, 18, 25, 49, 98, 121])
def test_multiplicative_order_against_sympy(modulus):
    for a in range(1, modulus):
        if all(a % r for r in prime_factors(modulus)):
            assert multiplicative_order(a, modulus) == n_order(a, modulus)


def test_multiplicative_order_errors():
    assert multiplicative_order(4, 1) == 1
    with pytest.raises(ValueError, match="6 is not invertible modulo 9.*"):
        multiplicative_order(6, 9)


@pytest.mark.parametrize(
    "p,m,g", [(3, 1, 5), (3, 2, 5), (5, 1, 3), (7, 1, 3), (7, 2, 3)]
)
def test_find_odd_primitive_root(p, m, g):
    assert find_odd_primitive_root(p, m) == g


@pytest.mark.parametrize("p,m", product(odd_primes[:5], exponents[:2]))
def test_odd_primitive_roots_against_sympy(p, m):
    q = p**m
    roots = list(odd_primitive_roots(p, m))
    assert roots == sorted(roots)
    assert roots == [
        g
        for g in range(3, 2 * q, 2)
        if g % p != 0 and is_primitive_root(g, q)
    ]
    # odd roots of p^m also generate the units of 2p^m
    for g in roots:
        assert is_primitive_root(g, 2 * q)


@pytest.mark.parametrize("p", odd_primes)
def test_qr_class_against_legendre(p):
    for n in range(-2 * p, 3 * p):
        if n % p == 0:
            continue
        expected = 0 if legendre_symbol(n % p, p) == 1 else 1
        assert qr_class(n, p) == expected


def test_qr_class_rejects_multiples():
    with pytest.raises(ValueError, match="14 is divisible by 7.*"):
        qr_class(14, 7)


def test_make_params():
    params = make_params(3, 2)
    assert (params.p, params.m, params.q, params.N) == (3, 2, 9, 18)
    assert params.g == 5
    assert params.phi == 6
    assert params.P == 3
    assert params.p_mod_8 == 3
    assert params.p_mod_4 == 3

    params = make_params(7, 1, g=5)
    assert params.g == 5


@pytest.mark.parametrize(
    "p,m,message",
    [
        (9, 1, "p must be an odd prime, got 9"),
        (2, 1, "p must be an odd prime, got 2"),
        (4, 1, "p must be an odd prime, got 4"),
        (3, 0, "m must be a positive integer, got 0"),
        (3.0, 1, "p and m must be integers, got float and int"),
    ],
)
def test_make_params_rejects_invalid_instances(p, m, message):
    with pytest.raises(ValueError, match=message):
        make_params(p, m)


def test_make_params_rejects_invalid_roots():
    with pytest.raises(ValueError, match="g must be odd.*"):
        make_params(7, 1, g=4)
    with pytest.raises(ValueError, match="g must be odd.*"):
        make_params(7, 1, g=15)
    with pytest.raises(ValueError, match="9 is not a primitive root of 7"):
        make_params(7, 1, g=9)


def test_make_params_accepts_numpy_integers():
    params = make_params(np.int64(7), np.int32(2))
    assert params == make_params(7, 2)
    assert type(params.p) is int and type(params.q) is int
