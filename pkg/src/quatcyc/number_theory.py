"""Modular arithmetic primitives.

Every function here is pure; residues are returned as canonical
representatives in ``[0, modulus)``.
"""

from dataclasses import dataclass
from math import gcd
from numbers import Integral
from typing import Iterator, List, Optional


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> List[int]:
    """Return the distinct prime factors of n in increasing order."""
    if n < 1:
        raise ValueError(f"Expected a positive integer, got {n}")
    factors = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            factors.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors.append(n)
    return factors


def euler_phi(n: int) -> int:
    """Euler's totient function."""
    result = n
    for r in prime_factors(n):
        result -= result // r
    return result


def mod_pow(base: int, exp: int, modulus: int) -> int:
    """Compute base^exp reduced into [0, modulus).

    Parameters
    ----------
    base: int
    exp: int
        Non-negative exponent.
    modulus: int
        Must be at least 2.

    Returns
    -------
    residue: int
    """
    if modulus < 2:
        raise ValueError(f"modulus must be at least 2, got {modulus}")
    if exp < 0:
        raise ValueError(f"exp must be non-negative, got {exp}")
    return pow(base % modulus, exp, modulus)


def multiplicative_order(a: int, modulus: int) -> int:
    """Least k >= 1 such that a^k = 1 (mod modulus).

    The order divides phi(modulus), so it is found by stripping prime
    factors off phi(modulus) rather than by enumerating powers.

    Parameters
    ----------
    a: int
        Residue coprime to modulus.
    modulus: int
        Positive modulus.

    Returns
    -------
    order: int
    """
    if modulus < 1:
        raise ValueError(f"modulus must be positive, got {modulus}")
    if gcd(a, modulus) != 1:
        raise ValueError(
            f"{a} is not invertible modulo {modulus} "
            f"(gcd = {gcd(a, modulus)})"
        )
    if modulus == 1:
        return 1

    order = euler_phi(modulus)
    for r in prime_factors(order):
        while order % r == 0 and pow(a, order // r, modulus) == 1:
            order //= r
    return order


def odd_primitive_roots(p: int, m: int) -> Iterator[int]:
    """Yield the odd primitive roots g of p^m with 1 < g < 2p^m.

    Roots are yielded in increasing order. Each of them is also a
    primitive root of 2p^m, since it is odd.
    """
    _check_prime_power(p, m)
    p, m = int(p), int(m)
    q = p**m
    phi = p ** (m - 1) * (p - 1)
    for g in range(3, 2 * q, 2):
        if g % p == 0:
            continue
        if multiplicative_order(g, q) == phi:
            yield g


def find_odd_primitive_root(p: int, m: int) -> int:
    """Smallest odd primitive root g of p^m with 1 < g < 2p^m.

    Parameters
    ----------
    p: int
        Odd prime.
    m: int
        Positive exponent.

    Returns
    -------
    g: int
        Odd integer whose multiplicative order is p^(m-1)(p-1)
        modulo both p^m and 2p^m.
    """
    g = next(odd_primitive_roots(p, m))
    phi = p ** (m - 1) * (p - 1)
    # CRT: an odd primitive root of p^m also generates the units of 2p^m
    assert multiplicative_order(g, 2 * p**m) == phi
    return g


def qr_class(n: int, p: int) -> int:
    """Quadratic character class of n modulo the odd prime p.

    Computed with Euler's criterion.

    Parameters
    ----------
    n: int
        Integer not divisible by p.
    p: int
        Odd prime.

    Returns
    -------
    class: 0 or 1
        0 if n is a quadratic residue mod p (n lies in D_0^(p)),
        1 otherwise.
    """
    if n % p == 0:
        raise ValueError(f"{n} is divisible by {p}, it has no QR class")
    return 0 if pow(n % p, (p - 1) // 2, p) == 1 else 1


def _check_prime_power(p, m):
    if not isinstance(p, Integral) or not isinstance(m, Integral):
        raise ValueError(
            "p and m must be integers, "
            f"got {type(p).__name__} and {type(m).__name__}"
        )
    if p < 3 or not is_prime(int(p)):
        raise ValueError(f"p must be an odd prime, got {p}")
    if m < 1:
        raise ValueError(f"m must be a positive integer, got {m}")


@dataclass(frozen=True)
class PrimePowerParams:
    """Parameters fixing one sequence family instance.

    Attributes
    ----------
    p: int
        Odd prime.
    m: int
        Positive exponent.
    q: int
        p^m, the period of the component sequences.
    N: int
        2p^m, the period of the quaternary sequence.
    g: int
        Odd common primitive root of p^m and 2p^m.
    phi: int
        p^(m-1)(p-1), the number of units of Z_q.
    """

    p: int
    m: int
    q: int
    N: int
    g: int
    phi: int

    @property
    def P(self) -> int:
        """p^(m-1), the recurring scale factor of the closed forms."""
        return self.q // self.p

    @property
    def p_mod_8(self) -> int:
        return self.p % 8

    @property
    def p_mod_4(self) -> int:
        return self.p % 4


def make_params(p: int, m: int, g: Optional[int] = None) -> PrimePowerParams:
    """Validate (p, m) and build the matching PrimePowerParams.

    Parameters
    ----------
    p: int
        Odd prime.
    m: int
        Positive exponent.
    g: int or None, optional, defaults to None
        Odd primitive root to use. If None, the smallest odd
        primitive root of p^m is used.

    Returns
    -------
    params: PrimePowerParams
    """
    _check_prime_power(p, m)
    p, m = int(p), int(m)
    q = p**m
    phi = p ** (m - 1) * (p - 1)

    if g is None:
        g = find_odd_primitive_root(p, m)
    else:
        if g % 2 == 0 or not 1 < g < 2 * q:
            raise ValueError(
                f"g must be odd and lie in ]1, {2 * q}[, got {g}"
            )
        if gcd(g, q) != 1 or multiplicative_order(g, q) != phi:
            raise ValueError(f"{g} is not a primitive root of {q}")

    return PrimePowerParams(p=p, m=m, q=q, N=2 * q, g=g, phi=phi)
