"""Quaternary and binary sequences built from cyclotomic classes."""

from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, NamedTuple, Tuple

import numpy as np

from quatcyc.cyclotomy import (
    ResidueLabel,
    build_class_table,
    fast_class,
    fast_labels,
    qr_lookup,
    shift_class,
)
from quatcyc.number_theory import PrimePowerParams
from quatcyc.utils import _frozen_array

# Symbol of s on each ResidueLabel, in label order
S_SYMBOL_BY_LABEL = (0, 2, 0, 1, 2, 3)


class SequenceKind(Enum):
    S = "s"
    S1 = "s1"
    S2 = "s2"
    U = "u"
    V = "v"

    @property
    def is_binary(self):
        return self in (SequenceKind.U, SequenceKind.V)

    @property
    def alphabet_size(self):
        return 2 if self.is_binary else 4

    def __str__(self):
        return self.value


QUATERNARY_KINDS = (SequenceKind.S, SequenceKind.S1, SequenceKind.S2)
BINARY_KINDS = (SequenceKind.U, SequenceKind.V)


@dataclass(frozen=True, eq=False)
class _Sequence:
    params: PrimePowerParams
    kind: SequenceKind
    symbols: np.ndarray

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, n):
        return int(self.symbols[n % len(self.symbols)])

    def to_string(self):
        """Symbols concatenated, without separators."""
        return "".join(str(int(x)) for x in self.symbols)

    def to_list(self):
        return [int(x) for x in self.symbols]


@dataclass(frozen=True, eq=False)
class QuaternarySequence(_Sequence):
    """Sequence over Z_4: s of period 2p^m, s1 and s2 of period p^m."""

    def __post_init__(self):
        if self.kind not in QUATERNARY_KINDS:
            raise ValueError(
                f"QuaternarySequence kind must be s, s1 or s2, got {self.kind}"
            )


@dataclass(frozen=True, eq=False)
class BinarySequence(_Sequence):
    """Sequence over {0, 1} of period p^m."""

    def __post_init__(self):
        if self.kind not in BINARY_KINDS:
            raise ValueError(
                f"BinarySequence kind must be u or v, got {self.kind}"
            )


class CharacteristicSets(NamedTuple):
    """Indicator arrays of C_0, C_1 modulo p^m and modulo 2p^m.

    C_0 is D_0 at both moduli. C_1 modulo p^m is D_1 together with all
    multiples of p, and C_1 modulo 2p^m is D_1 together with the odd
    multiples of p.
    """

    c_q: Tuple[np.ndarray, np.ndarray]
    c_2q: Tuple[np.ndarray, np.ndarray]


def characteristic_sets(params, table=None):
    """Indicators of the characteristic sets of u and v, from class tables."""
    if table is None:
        table = build_class_table(params)
    p, m, q, N = params.p, params.m, params.q, params.N

    c0_q = np.zeros(q, dtype=bool)
    c0_q[table.d_pm[m][0]] = True
    c1_q = np.zeros(q, dtype=bool)
    c1_q[table.d_pm[m][1]] = True
    c1_q[::p] = True

    c0_2q = np.zeros(N, dtype=bool)
    c0_2q[table.d_2pm[m][0]] = True
    c1_2q = np.zeros(N, dtype=bool)
    c1_2q[table.d_2pm[m][1]] = True
    c1_2q[p::2 * p] = True

    for x in (c0_q, c1_q, c0_2q, c1_2q):
        x.setflags(write=False)
    return CharacteristicSets(c_q=(c0_q, c1_q), c_2q=(c0_2q, c1_2q))


def build_s(params: PrimePowerParams) -> QuaternarySequence:
    """Quaternary sequence of period 2p^m.

    s(n) is 0 on n = 0 (mod 2p), 2 on n = p (mod 2p), i on
    D_i^(2p^m) and 2 + i on 2D_i^(p^m).
    """
    symbols = np.asarray(S_SYMBOL_BY_LABEL)[fast_labels(params)]
    return QuaternarySequence(
        params=params, kind=SequenceKind.S, symbols=_frozen_array(symbols)
    )


def build_s1(params: PrimePowerParams) -> QuaternarySequence:
    """Even-index component of s, of period p^m."""
    p, q = params.p, params.q
    n = np.arange(q)
    symbols = np.where(n % p == 0, 0, 2 + qr_lookup(p)[n % p])
    return QuaternarySequence(
        params=params, kind=SequenceKind.S1, symbols=_frozen_array(symbols)
    )


def build_s2(params: PrimePowerParams) -> QuaternarySequence:
    """Odd-index component of s, of period p^m, keyed on 2n + 1."""
    p, q = params.p, params.q
    x = 2 * np.arange(q) + 1
    symbols = np.where(x % p == 0, 2, qr_lookup(p)[x % p])
    return QuaternarySequence(
        params=params, kind=SequenceKind.S2, symbols=_frozen_array(symbols)
    )


def build_u(params: PrimePowerParams) -> BinarySequence:
    """Characteristic sequence of C_1 modulo p^m."""
    p, q = params.p, params.q
    n = np.arange(q)
    symbols = np.where(n % p == 0, 1, qr_lookup(p)[n % p])
    return BinarySequence(
        params=params, kind=SequenceKind.U, symbols=_frozen_array(symbols)
    )


def build_v(params: PrimePowerParams) -> BinarySequence:
    """v(n) = 1 iff 2n + 1 lies in C_1 modulo 2p^m."""
    p, q = params.p, params.q
    x = 2 * np.arange(q) + 1
    symbols = np.where(x % p == 0, 1, qr_lookup(p)[x % p])
    return BinarySequence(
        params=params, kind=SequenceKind.V, symbols=_frozen_array(symbols)
    )


_BUILDERS = {
    SequenceKind.S: build_s,
    SequenceKind.S1: build_s1,
    SequenceKind.S2: build_s2,
    SequenceKind.U: build_u,
    SequenceKind.V: build_v,
}


def build_sequence(kind, params):
    """Build the sequence of the given kind ("s", "s1", "s2", "u", "v")."""
    try:
        kind = SequenceKind(kind)
    except ValueError:
        raise ValueError(
            f"Unknown sequence kind {kind!r}, "
            f"expected one of {[k.value for k in SequenceKind]}"
        ) from None
    return _BUILDERS[kind](params)


class BalanceStats(NamedTuple):
    counts: Dict[int, int]
    balanced: bool


def balance_stats(seq) -> BalanceStats:
    """Count symbols over one period.

    The sequence is balanced when its symbol counts differ by at
    most one.
    """
    counts = np.bincount(seq.symbols, minlength=seq.kind.alphabet_size)
    return BalanceStats(
        counts={a: int(c) for a, c in enumerate(counts)},
        balanced=bool(counts.max() - counts.min() <= 1),
    )


def index_labels(seq) -> List[str]:
    """Class label driving each symbol of seq.

    Indices of s are labelled with their ResidueLabel, indices of s1
    and u with the class of n in Z_q, indices of s2 and v with the
    ResidueLabel of 2n + 1.
    """
    params = seq.params
    if seq.kind == SequenceKind.S:
        return [str(ResidueLabel(x)) for x in fast_labels(params)]
    if seq.kind in (SequenceKind.S1, SequenceKind.U):
        return [str(shift_class(n, params)) for n in range(params.q)]
    return [str(fast_class(2 * n + 1, params)) for n in range(params.q)]
