"""Generalized cyclotomic classes of order 2 modulo p^j and 2p^j."""

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Dict, List, Tuple, Union

import numpy as np

from quatcyc.number_theory import PrimePowerParams, qr_class
from quatcyc.utils import MAX_TABLE_N, _frozen_array, check_size, console


class ResidueLabel(IntEnum):
    """Label of a residue n of Z_{2p^m}, one per case of the sequence s."""

    ZERO_MOD_2P = 0
    P_MOD_2P = 1
    UNIT_0 = 2
    UNIT_1 = 3
    TWO_UNIT_0 = 4
    TWO_UNIT_1 = 5

    @classmethod
    def unit(cls, i):
        return cls(cls.UNIT_0 + i)

    @classmethod
    def two_unit(cls, i):
        return cls(cls.TWO_UNIT_0 + i)

    @property
    def class_index(self):
        """Cyclotomic class i of Unit2pm(i) / TwoUnit(i), None otherwise."""
        if self in (ResidueLabel.UNIT_0, ResidueLabel.TWO_UNIT_0):
            return 0
        if self in (ResidueLabel.UNIT_1, ResidueLabel.TWO_UNIT_1):
            return 1
        return None

    @property
    def is_unit(self):
        return self in (ResidueLabel.UNIT_0, ResidueLabel.UNIT_1)

    @property
    def is_two_unit(self):
        return self in (ResidueLabel.TWO_UNIT_0, ResidueLabel.TWO_UNIT_1)

    def __str__(self):
        if self == ResidueLabel.ZERO_MOD_2P:
            return "ZeroMod2p"
        if self == ResidueLabel.P_MOD_2P:
            return "PMod2p"
        if self.is_unit:
            return f"Unit2pm({self.class_index})"
        return f"TwoUnit({self.class_index})"


class ShiftClass(IntEnum):
    """Class of a residue k of Z_{p^m}."""

    ZERO = 0
    D0 = 1
    D1 = 2
    P_MULTIPLE = 3

    @property
    def class_index(self):
        return {ShiftClass.D0: 0, ShiftClass.D1: 1}.get(self)

    def __str__(self):
        return {
            ShiftClass.ZERO: "Zero",
            ShiftClass.D0: "D0",
            ShiftClass.D1: "D1",
            ShiftClass.P_MULTIPLE: "pMultNonzero",
        }[self]


@dataclass(frozen=True, eq=False)
class ClassTable:
    """Enumerated cyclotomic classes of every level j <= m.

    Attributes
    ----------
    params: PrimePowerParams
    d_pm: dict of int to tuple of 2 numpy.ndarray
        ``d_pm[j][i]`` is D_i^(p^j) as a sorted array, for 1 <= j <= m.
    d_2pm: dict of int to tuple of 2 numpy.ndarray
        ``d_2pm[j][i]`` is D_i^(2p^j) as a sorted array.
    label_of: numpy.ndarray of size (N,)
        ResidueLabel code of every residue of Z_N.
    """

    params: PrimePowerParams
    d_pm: Dict[int, Tuple[np.ndarray, np.ndarray]]
    d_2pm: Dict[int, Tuple[np.ndarray, np.ndarray]]
    label_of: np.ndarray

    def level_labels(self, j, double=False):
        """Class of every residue modulo p^j (or 2p^j), -1 on non-units."""
        p = self.params.p
        modulus = 2 * p**j if double else p**j
        classes = self.d_2pm[j] if double else self.d_pm[j]
        labels = np.full(modulus, -1, dtype=np.int8)
        for i in (0, 1):
            labels[classes[i]] = i
        return labels

    def classes(self, level=None):
        """Return the class sets of one level as an ordered dict."""
        p = self.params.p
        j = self.params.m if level is None else level
        if not 1 <= j <= self.params.m:
            raise ValueError(
                f"level must lie in [1, {self.params.m}], got {level}"
            )
        return {
            f"D_0^({p**j})": self.d_pm[j][0],
            f"D_1^({p**j})": self.d_pm[j][1],
            f"D_0^({2 * p**j})": self.d_2pm[j][0],
            f"D_1^({2 * p**j})": self.d_2pm[j][1],
        }


def _enumerate_classes(g, modulus, n_units):
    """Enumerate D_0 = <g^2> and D_1 = g D_0 modulo modulus."""
    g_squared = (g * g) % modulus
    d0 = np.empty(n_units // 2, dtype=np.int64)
    x = 1
    for t in range(n_units // 2):
        d0[t] = x
        x = (x * g_squared) % modulus
    d1 = (d0 * g) % modulus
    return _frozen_array(np.sort(d0)), _frozen_array(np.sort(d1))


@lru_cache(maxsize=32)
def _cached_table(params):
    p, m, g = params.p, params.m, params.g
    d_pm, d_2pm = {}, {}
    for j in range(1, m + 1):
        n_units = p ** (j - 1) * (p - 1)
        d_pm[j] = _enumerate_classes(g, p**j, n_units)
        d_2pm[j] = _enumerate_classes(g, 2 * p**j, n_units)

    N = params.N
    n = np.arange(N)
    labels = np.full(N, -1, dtype=np.int8)
    labels[n % (2 * p) == 0] = ResidueLabel.ZERO_MOD_2P
    labels[n % (2 * p) == p] = ResidueLabel.P_MOD_2P
    for i in (0, 1):
        labels[d_2pm[m][i]] = ResidueLabel.unit(i)
        labels[(2 * d_pm[m][i]) % N] = ResidueLabel.two_unit(i)
    labels.setflags(write=False)

    return ClassTable(params=params, d_pm=d_pm, d_2pm=d_2pm, label_of=labels)


def build_class_table(params, max_n=MAX_TABLE_N, verbose=False):
    """Enumerate all cyclotomic classes of order 2 up to level m.

    Classes are obtained by iterating powers g^(2t) and g^(2t+1)
    modulo p^j and 2p^j for every 1 <= j <= m.
    Tables are cached per params.

    Parameters
    ----------
    params: PrimePowerParams
    max_n: int or None, optional, defaults to MAX_TABLE_N
        Largest period N = 2p^m accepted.
    verbose: bool, optional, defaults to False
        Log table construction.

    Returns
    -------
    table: ClassTable
    """
    check_size(params.N, max_n)
    if verbose:
        console.log(
            f"Enumerating cyclotomic classes for p={params.p}, "
            f"m={params.m} (N={params.N}, g={params.g})"
        )
    return _cached_table(params)


def classify(n: int, table: ClassTable) -> ResidueLabel:
    """Label of n in Z_N, read from the enumerated table."""
    return ResidueLabel(int(table.label_of[n % table.params.N]))


def fast_class(
    n: int, table: Union[ClassTable, PrimePowerParams]
) -> ResidueLabel:
    """Label of n in Z_N without enumerating classes.

    An odd unit n lies in D_i^(2p^m) iff n mod p lies in D_i^(p),
    and n = 2x with x a unit lies in 2D_i^(p^m) iff x mod p lies in
    D_i^(p), so a single Euler criterion mod p decides the class.
    """
    params = getattr(table, "params", table)
    p = params.p
    n = n % params.N
    if n % (2 * p) == 0:
        return ResidueLabel.ZERO_MOD_2P
    if n % (2 * p) == p:
        return ResidueLabel.P_MOD_2P
    if n % 2 == 1:
        return ResidueLabel.unit(qr_class(n, p))
    return ResidueLabel.two_unit(qr_class(n // 2, p))


def qr_lookup(p):
    """qr_class of every residue mod p, with -1 at 0."""
    lookup = np.array(
        [-1] + [qr_class(x, p) for x in range(1, p)], dtype=np.int64
    )
    lookup.setflags(write=False)
    return lookup


def fast_labels(params: PrimePowerParams) -> np.ndarray:
    """Vectorized fast_class over all of Z_N."""
    p, N = params.p, params.N
    qr = qr_lookup(p)
    n = np.arange(N)
    r = n % (2 * p)
    labels = np.where(
        n % 2 == 1,
        ResidueLabel.UNIT_0 + qr[n % p],
        ResidueLabel.TWO_UNIT_0 + qr[(n // 2) % p],
    )
    labels = np.where(r == p, ResidueLabel.P_MOD_2P, labels)
    labels = np.where(r == 0, ResidueLabel.ZERO_MOD_2P, labels)
    return labels.astype(np.int8)


def shift_class(k: int, params: PrimePowerParams) -> ShiftClass:
    """Class of k in Z_q: zero, non-zero multiple of p, D_0 or D_1."""
    k = k % params.q
    if k == 0:
        return ShiftClass.ZERO
    if k % params.p == 0:
        return ShiftClass.P_MULTIPLE
    return ShiftClass.D1 if qr_class(k, params.p) else ShiftClass.D0


def _indicator(elements, size):
    indicator = np.zeros(size, dtype=bool)
    indicator[elements] = True
    return indicator


def _check_classes(i, j):
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"classes must be 0 or 1, got ({i}, {j})")


def cyclotomic_number_bf(i, j, params, table=None):
    """(i, j)_{p^m} = |(D_i + 1) cap D_j| by direct set intersection."""
    _check_classes(i, j)
    if table is None:
        table = build_class_table(params)
    q, m = params.q, params.m
    shifted = np.roll(_indicator(table.d_pm[m][i], q), 1)
    return int(np.count_nonzero(shifted & _indicator(table.d_pm[m][j], q)))


def cyclotomic_number_cf(i, j, params):
    """Closed form of the cyclotomic numbers of order 2 modulo p^m."""
    _check_classes(i, j)
    p, P = params.p, params.P
    if p % 4 == 1:
        numerator = p - 5 if (i, j) == (0, 0) else p - 1
    else:
        numerator = p + 1 if (i, j) == (0, 1) else p - 3
    return P * numerator // 4


def level_partition(table: ClassTable) -> List[Tuple[str, np.ndarray]]:
    """Sets of the decomposition of Z_N across all levels.

    Z_N is the union over 1 <= i <= m of p^(m-i) D_c^(2p^i) and
    2p^(m-i) D_c^(p^i) for c in {0, 1}, together with {0, p^m}.
    """
    p, m, N = table.params.p, table.params.m, table.params.N
    parts = []
    for i in range(1, m + 1):
        scale = p ** (m - i)
        for c in (0, 1):
            parts.append(
                (
                    f"{scale}*D_{c}^({2 * p**i})",
                    (scale * table.d_2pm[i][c]) % N,
                )
            )
            parts.append(
                (
                    f"{2 * scale}*D_{c}^({p**i})",
                    (2 * scale * table.d_pm[i][c]) % N,
                )
            )
    parts.append(("{0, p^m}", np.array([0, table.params.q])))
    return parts


def partition_multiplicity(table: ClassTable) -> np.ndarray:
    """Number of cases of the sequence s that each residue falls into."""
    p, m, N = table.params.p, table.params.m, table.params.N
    n = np.arange(N)
    counts = (n % (2 * p) == 0).astype(np.int64)
    counts += n % (2 * p) == p
    for i in (0, 1):
        counts += _indicator(table.d_2pm[m][i], N)
        counts += _indicator((2 * table.d_pm[m][i]) % N, N)
    return counts
