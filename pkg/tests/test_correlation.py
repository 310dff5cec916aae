from itertools import product

import numpy as np
import pytest
import torch

from quatcyc.correlation import (
    DifferenceKind,
    GaussianInt,
    _exponent_counts,
    autocorrelation,
    correlation_at,
    cross_correlation,
    difference_count,
    difference_profile,
    omega_power,
)
from quatcyc.number_theory import make_params
from quatcyc.sequences import build_s, build_s1, build_s2, build_u, build_v
from quatcyc.utils import SizeLimitError, _make_tensor

np.random.seed(0)
torch.manual_seed(0)

devices = [torch.device("cpu")]
if torch.cuda.is_available():
    devices.append(torch.device("cuda:0"))

n_jobs_values = [1, 2, 3]
max_tensor_sizes = [7, 1e7]
instances = [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2)]


def test_gaussian_int():
    a = GaussianInt(2, 4)
    b = GaussianInt(-1, 3)
    assert a + b == GaussianInt(1, 7)
    assert a - b == GaussianInt(3, 1)
    assert a * b == GaussianInt(-14, 2)
    assert 3 + a == GaussianInt(5, 4)
    assert 1 - a == GaussianInt(-1, -4)
    assert 2 * a == GaussianInt(4, 8)
    assert -a == GaussianInt(-2, -4)
    assert a.conjugate() == GaussianInt(2, -4)
    assert a.norm() == 20
    assert a * a.conjugate() == GaussianInt(a.norm())
    assert str(a) == "(2, 4)"
    assert a.to_dict() == {"re": 2, "im": 4}
    assert GaussianInt(5) == 5 + GaussianInt(0)


def test_omega_power():
    assert [omega_power(e) for e in range(-1, 5)] == [
        GaussianInt(0, -1),
        GaussianInt(1, 0),
        GaussianInt(0, 1),
        GaussianInt(-1, 0),
        GaussianInt(0, -1),
        GaussianInt(1, 0),
    ]
    assert omega_power(1) * omega_power(1) == omega_power(2)


def test_autocorrelation_p5(params_5_1):
    profile = autocorrelation(build_s(params_5_1), device="cpu")
    assert len(profile) == 10
    assert profile.re.tolist() == [10, -2, 0, -2, 0, -2, 0, -2, 0, -2]
    assert profile.im.tolist() == [0] * 10
    assert profile.kinds == ("s", "s")
    assert profile.is_auto
    assert profile[-1] == profile[9] == GaussianInt(-2)


def test_autocorrelation_p7(params_7_1):
    profile = autocorrelation(build_s(params_7_1), device="cpu")
    assert profile[0] == GaussianInt(14)
    assert profile[2] == GaussianInt(2, 4)
    assert profile[12] == GaussianInt(2, -4)
    assert profile.is_conjugate_symmetric()
    assert profile.conjugate()[2] == GaussianInt(2, -4)
    assert profile.squared_magnitudes()[2] == 20


@pytest.mark.parametrize(
    "device,n_jobs,max_tensor_size",
    product(devices, n_jobs_values, max_tensor_sizes),
)
def test_correlation_does_not_depend_on_batching(
    device, n_jobs, max_tensor_size
):
    params = make_params(3, 2)
    s1, s2 = build_s1(params), build_s2(params)
    reference = cross_correlation(s1, s2, device="cpu")
    profile = cross_correlation(
        s1,
        s2,
        n_jobs=n_jobs,
        device=device,
        max_tensor_size=max_tensor_size,
    )
    assert profile.equals(reference)
    assert profile.kinds == ("s1", "s2")
    assert not profile.is_auto


@pytest.mark.parametrize("p,m", instances)
def test_profile_agrees_with_direct_summation(p, m):
    params = make_params(p, m)
    for a, b in [
        (build_s(params), build_s(params)),
        (build_s1(params), build_s2(params)),
        (build_s2(params), build_s1(params)),
        (build_u(params), build_v(params)),
    ]:
        profile = cross_correlation(a, b, device="cpu")
        for tau in range(len(a)):
            assert profile[tau] == correlation_at(a, b, tau)


@pytest.mark.parametrize("p,m", instances)
def test_autocorrelation_invariants(p, m):
    params = make_params(p, m)
    for seq in [build_s(params), build_s1(params), build_u(params)]:
        profile = autocorrelation(seq, device="cpu")
        assert profile[0] == GaussianInt(len(seq))
        assert profile.is_conjugate_symmetric()


def test_binary_correlation_p5(params_5_1):
    u, v = build_u(params_5_1), build_v(params_5_1)
    # omega = +i applied to the 0/1 symbols
    assert correlation_at(u, u, 1) == GaussianInt(1)
    assert correlation_at(u, v, 0) == GaussianInt(3)


def test__exponent_counts():
    a = _make_tensor([0, 1, 2, 3])
    b = _make_tensor([0, 0, 0, 0])
    counts = _exponent_counts(a, b, _make_tensor([0, 1]), max_tensor_size=4)
    assert counts.tolist() == [[1, 1, 1, 1], [1, 1, 1, 1]]

    counts = _exponent_counts(a, a, _make_tensor([0, 2]))
    assert counts.tolist() == [[4, 0, 0, 0], [0, 0, 4, 0]]

    empty = _exponent_counts(a, a, torch.zeros(0, dtype=torch.int64))
    assert empty.shape == (0, 4)

    for max_tensor_size in [0, -1, "big"]:
        with pytest.raises(ValueError, match="Invalid value for.*"):
            _exponent_counts(
                a, b, _make_tensor([0]), max_tensor_size=max_tensor_size
            )


def test_correlation_errors(params_5_1):
    s, s1 = build_s(params_5_1), build_s1(params_5_1)
    with pytest.raises(ValueError, match="same period, got 10 and 5"):
        cross_correlation(s, s1)
    with pytest.raises(ValueError, match="same period, got 10 and 5"):
        correlation_at(s, s1, 0)
    with pytest.raises(ValueError, match="Cannot correlate a binary.*"):
        cross_correlation(s1, build_u(params_5_1))
    with pytest.raises(SizeLimitError, match="period 10 exceeds.*5"):
        autocorrelation(s, max_n=5)


def test_difference_count_p5(params_5_1):
    assert difference_count("u", 1, params_5_1) == 2
    assert difference_count(DifferenceKind.UV, 0, params_5_1) == 1
    assert difference_profile("u", params_5_1).tolist() == [0, 2, 1, 1, 2]
    with pytest.raises(ValueError, match=r"classes must be 0 or 1.*"):
        difference_count("v", 1, params_5_1, i=2)
    with pytest.raises(ValueError):
        difference_count("w", 1, params_5_1)


@pytest.mark.parametrize("p,m", instances)
def test_difference_count_identities(p, m):
    params = make_params(p, m)
    q = params.q
    for kind in DifferenceKind:
        profiles = {
            (i, j): difference_profile(kind, params, i=i, j=j)
            for i in (0, 1)
            for j in (0, 1)
        }
        assert np.all(sum(profiles.values()) == q)
        assert np.array_equal(profiles[(1, 0)], profiles[(0, 1)])


@pytest.mark.parametrize("p,m", instances)
def test_binary_correlation_identities(p, m):
    params = make_params(p, m)
    q = params.q
    u, v = build_u(params), build_v(params)
    c_u = autocorrelation(u, device="cpu")
    c_v = autocorrelation(v, device="cpu")
    c_uv = cross_correlation(u, v, device="cpu")
    c_vu = cross_correlation(v, u, device="cpu")
    for k in range(q):
        if k != 0:
            assert c_u[k] == GaussianInt(
                q - 2 * difference_count("u", k, params)
            )
            assert c_v[k] == GaussianInt(
                q - 2 * difference_count("v", k, params)
            )
        assert c_uv[k] == GaussianInt(
            q - 2 * difference_count("uv", k, params)
        )
        assert c_vu[k] == GaussianInt(
            q - 2 * difference_count("vu", k + 1, params)
        )
