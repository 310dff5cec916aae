import numpy as np
import pytest

from quatcyc.number_theory import make_params
from quatcyc.sequences import (
    BinarySequence,
    QuaternarySequence,
    SequenceKind,
    balance_stats,
    build_s,
    build_s1,
    build_s2,
    build_sequence,
    build_u,
    build_v,
    characteristic_sets,
    index_labels,
)
from quatcyc.utils import _frozen_array

instances = [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2), (3, 3)]


def test_worked_example(params_3_2):
    s = build_s(params_3_2)
    assert len(s) == 18
    assert s.to_string() == "002231" * 3
    assert s[19] == s[1] == 0
    assert s[-2] == 3


def test_sequences_p5(params_5_1):
    assert build_s(params_5_1).to_list() == [0, 0, 2, 1, 3, 2, 3, 1, 2, 0]
    assert build_s1(params_5_1).to_list() == [0, 2, 3, 3, 2]
    assert build_s2(params_5_1).to_list() == [0, 1, 2, 1, 0]
    assert build_u(params_5_1).to_list() == [1, 0, 1, 1, 0]
    assert build_v(params_5_1).to_list() == [0, 1, 1, 1, 0]


@pytest.mark.parametrize("p,m", instances)
def test_interleaving(p, m):
    params = make_params(p, m)
    s = build_s(params).symbols
    assert np.array_equal(s[0::2], build_s1(params).symbols)
    assert np.array_equal(s[1::2], build_s2(params).symbols)


@pytest.mark.parametrize("p,m", instances)
def test_binary_sequences_follow_components(p, m):
    params = make_params(p, m)
    n = np.arange(params.q)
    s1, s2 = build_s1(params).symbols, build_s2(params).symbols
    u, v = build_u(params).symbols, build_v(params).symbols

    units = n % p != 0
    assert np.array_equal(s1[units], u[units] + 2)
    assert np.all(s1[~units] == 0) and np.all(u[~units] == 1)

    odd_units = (2 * n + 1) % p != 0
    assert np.array_equal(s2[odd_units], v[odd_units])
    assert np.all(s2[~odd_units] == 2) and np.all(v[~odd_units] == 1)


@pytest.mark.parametrize("p,m", instances)
def test_binary_sequences_are_characteristic(p, m):
    params = make_params(p, m)
    sets = characteristic_sets(params)
    c0_q, c1_q = sets.c_q
    c0_2q, c1_2q = sets.c_2q

    assert np.array_equal(build_u(params).symbols.astype(bool), c1_q)
    assert not np.any(c0_q & c1_q)
    assert np.all(c0_q | c1_q)

    odd = 2 * np.arange(params.q) + 1
    assert np.array_equal(build_v(params).symbols.astype(bool), c1_2q[odd])
    # C_0 and C_1 modulo 2p^m split the odd residues
    assert np.all(c0_2q[odd] | c1_2q[odd])
    assert not np.any((c0_2q | c1_2q)[0::2])
    assert not np.any(c0_2q & c1_2q)


def test_balance(params_5_1, params_3_2):
    stats = balance_stats(build_s(params_5_1))
    assert stats.counts == {0: 3, 1: 2, 2: 3, 3: 2}
    assert stats.balanced

    stats = balance_stats(build_s(params_3_2))
    assert stats.counts == {0: 6, 1: 3, 2: 6, 3: 3}
    assert not stats.balanced

    stats = balance_stats(build_u(params_5_1))
    assert stats.counts == {0: 2, 1: 3}
    assert stats.balanced


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
def test_s_is_balanced_for_m_equal_1(p):
    assert balance_stats(build_s(make_params(p, 1))).balanced


def test_index_labels(params_3_2, params_5_1):
    labels = index_labels(build_s(params_3_2))
    assert labels[:6] == [
        "ZeroMod2p",
        "Unit2pm(0)",
        "TwoUnit(0)",
        "PMod2p",
        "TwoUnit(1)",
        "Unit2pm(1)",
    ]
    assert index_labels(build_u(params_5_1)) == [
        "Zero",
        "D0",
        "D1",
        "D1",
        "D0",
    ]
    assert index_labels(build_v(params_5_1)) == [
        "Unit2pm(0)",
        "Unit2pm(1)",
        "PMod2p",
        "Unit2pm(1)",
        "Unit2pm(0)",
    ]


def test_build_sequence(params_5_1):
    for kind in SequenceKind:
        seq = build_sequence(kind.value, params_5_1)
        assert seq.kind == kind
        assert isinstance(
            seq, BinarySequence if kind.is_binary else QuaternarySequence
        )
        assert len(seq) == (10 if kind == SequenceKind.S else 5)
    assert build_sequence(SequenceKind.V, params_5_1).to_string() == "01110"

    with pytest.raises(ValueError, match="Unknown sequence kind 'w'.*"):
        build_sequence("w", params_5_1)


def test_sequence_kind_is_checked(params_5_1):
    symbols = _frozen_array([0, 1, 0, 1, 1])
    with pytest.raises(ValueError, match="BinarySequence kind must be.*"):
        BinarySequence(
            params=params_5_1, kind=SequenceKind.S1, symbols=symbols
        )
    with pytest.raises(ValueError, match="QuaternarySequence kind must.*"):
        QuaternarySequence(
            params=params_5_1, kind=SequenceKind.U, symbols=symbols
        )


def test_symbols_are_read_only(params_5_1):
    s = build_s(params_5_1)
    with pytest.raises(ValueError):
        s.symbols[0] = 1
