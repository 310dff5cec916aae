"""Exact periodic correlation over Gaussian integers.

Correlations are sums of powers of a primitive 4th root of unity
``omega``, taken to be ``+i``. They are accumulated as counts of each
exponent in Z_4, so every value is an exact Gaussian integer and no
floating point number is involved.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import joblib
import numpy as np
import torch

from joblib import Parallel, delayed

from quatcyc.sequences import characteristic_sets
from quatcyc.utils import (
    MAX_CORRELATION_N,
    MAX_TENSOR_SIZE,
    _get_device,
    _make_tensor,
    check_size,
    console,
    rich_progress_joblib,
)


@dataclass(frozen=True)
class GaussianInt:
    """Exact value re + im * omega."""

    re: int
    im: int = 0

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, GaussianInt):
            return other
        if isinstance(other, (int, np.integer)):
            return cls(int(other), 0)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return -self + other

    def __neg__(self):
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        x0, y0 = self.re, self.im
        x1, y1 = other.re, other.im
        return GaussianInt(x0 * x1 - y0 * y1, x0 * y1 + x1 * y0)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianInt(self.re, -self.im)

    def norm(self):
        """Squared magnitude re^2 + im^2."""
        return self.re * self.re + self.im * self.im

    def to_dict(self):
        return {"re": int(self.re), "im": int(self.im)}

    def __str__(self):
        return f"({self.re}, {self.im})"


ZERO = GaussianInt(0, 0)

_OMEGA_POWERS = (
    GaussianInt(1, 0),
    GaussianInt(0, 1),
    GaussianInt(-1, 0),
    GaussianInt(0, -1),
)


def omega_power(e: int) -> GaussianInt:
    """omega^e for omega = +i, with e reduced mod 4."""
    return _OMEGA_POWERS[e % 4]


@dataclass(frozen=True, eq=False)
class CorrelationProfile:
    """Correlation values C(tau) for every shift tau of one period.

    Attributes
    ----------
    period: int
    re: numpy.ndarray of size (period,)
    im: numpy.ndarray of size (period,)
    kinds: tuple of 2 str
        Kinds of the correlated sequences, (a, b).
    """

    period: int
    re: np.ndarray
    im: np.ndarray
    kinds: Tuple[str, str]

    def __len__(self):
        return self.period

    def __getitem__(self, tau):
        tau = tau % self.period
        return GaussianInt(int(self.re[tau]), int(self.im[tau]))

    def __iter__(self):
        return (self[tau] for tau in range(self.period))

    @property
    def is_auto(self):
        return self.kinds[0] == self.kinds[1]

    def conjugate(self):
        """Profile obtained with omega = -i."""
        return CorrelationProfile(
            period=self.period, re=self.re, im=-self.im, kinds=self.kinds
        )

    def is_conjugate_symmetric(self):
        """Check C(L - tau) = conj(C(tau)) for all tau."""
        reverse = (-np.arange(self.period)) % self.period
        return bool(
            np.array_equal(self.re[reverse], self.re)
            and np.array_equal(self.im[reverse], -self.im)
        )

    def squared_magnitudes(self):
        return self.re * self.re + self.im * self.im

    def equals(self, other):
        return (
            self.period == other.period
            and np.array_equal(self.re, other.re)
            and np.array_equal(self.im, other.im)
        )


def _exponent_counts(a, b, shifts, max_tensor_size=MAX_TENSOR_SIZE):
    """Count each exponent (a[n + tau] - b[n]) mod 4, for all given tau.

    Shifts are processed in batches so that the gathered tensor
    never holds more than max_tensor_size elements.

    Parameters
    ----------
    a: torch.Tensor
        shape(L,)
    b: torch.Tensor
        shape(L,)
    shifts: torch.Tensor
        shape(k,)

    Returns
    -------
    counts: torch.Tensor
        shape(k, 4)
    """
    L, k = a.shape[0], shifts.shape[0]

    if isinstance(max_tensor_size, (int, float)) and max_tensor_size > 0:
        batch_size = max(1, min(int(max_tensor_size / L), k))
    else:
        raise ValueError(
            f"Invalid value for max_tensor_size: {max_tensor_size}"
        )

    n = torch.arange(L, device=a.device)
    exponents = torch.arange(4, device=a.device)
    counts = []
    for i in range(0, k, batch_size):
        idx = (shifts[i : i + batch_size, None] + n[None, :]) % L  # noqa
        diff = torch.remainder(a[idx] - b[None, :], 4)
        counts.append((diff[:, :, None] == exponents).sum(1))
    if len(counts) == 0:
        return torch.zeros((0, 4), dtype=torch.int64)
    return torch.cat(counts)


def _check_alphabets(a, b):
    if a.kind.is_binary != b.kind.is_binary:
        raise ValueError(
            "Cannot correlate a binary with a quaternary sequence, "
            f"got {a.kind} and {b.kind}"
        )


def cross_correlation(
    a,
    b,
    n_jobs=1,
    device="auto",
    max_tensor_size=MAX_TENSOR_SIZE,
    max_n=MAX_CORRELATION_N,
    verbose=False,
):
    """Periodic cross-correlation of two sequences of equal period.

    C(tau) = sum_n omega^(a(n + tau) - b(n)), indices taken mod the
    period L. Binary symbols 0 and 1 are read as exponents of omega
    too, so that C_u(k) = p^m - 2 d_u(1, 0; k).

    Parameters
    ----------
    a: QuaternarySequence or BinarySequence
    b: QuaternarySequence or BinarySequence
        Same period and alphabet as a.
    n_jobs: int, optional, defaults to 1
        Number of joblib threads among which shifts are split.
    device: "auto" or torch.device, optional, defaults to "auto"
        Device on which the counting kernel runs.
    max_tensor_size: int or float, optional, defaults to MAX_TENSOR_SIZE
        Largest number of elements held by one batch of shifts.
    max_n: int or None, optional, defaults to MAX_CORRELATION_N
        Largest period accepted.
    verbose: bool, optional, defaults to False
        Display a progress bar over shift chunks.

    Returns
    -------
    profile: CorrelationProfile
    """
    if len(a) != len(b):
        raise ValueError(
            f"Sequences must have the same period, got {len(a)} and {len(b)}"
        )
    L = len(a)
    check_size(L, max_n)
    _check_alphabets(a, b)

    device = _get_device(device)
    ta = _make_tensor(a.symbols, device=device)
    tb = _make_tensor(b.symbols, device=device)
    chunks = [
        chunk
        for chunk in np.array_split(
            np.arange(L), max(1, joblib.effective_n_jobs(n_jobs))
        )
        if len(chunk) > 0
    ]

    if verbose:
        console.log(
            f"Correlating {a.kind} with {b.kind} over {L} shifts "
            f"on {device}"
        )
    with rich_progress_joblib(
        f"C_{a.kind},{b.kind}", total=len(chunks), verbose=verbose
    ):
        counts = Parallel(n_jobs=n_jobs, prefer="threads")(
            delayed(_exponent_counts)(
                ta,
                tb,
                _make_tensor(chunk, device=device),
                max_tensor_size=max_tensor_size,
            )
            for chunk in chunks
        )
    counts = torch.cat(counts).cpu().numpy()

    re = counts[:, 0] - counts[:, 2]
    im = counts[:, 1] - counts[:, 3]
    re.setflags(write=False)
    im.setflags(write=False)
    return CorrelationProfile(
        period=L, re=re, im=im, kinds=(str(a.kind), str(b.kind))
    )


def autocorrelation(a, **kwargs):
    """Periodic autocorrelation, see cross_correlation."""
    return cross_correlation(a, a, **kwargs)


def correlation_at(a, b, tau):
    """Single value C_{a,b}(tau), by direct summation."""
    if len(a) != len(b):
        raise ValueError(
            f"Sequences must have the same period, got {len(a)} and {len(b)}"
        )
    _check_alphabets(a, b)
    L = len(a)
    n = np.arange(L)
    diff = (a.symbols[(n + tau) % L] - b.symbols) % 4
    counts = np.bincount(diff, minlength=4)
    return GaussianInt(
        int(counts[0] - counts[2]), int(counts[1] - counts[3])
    )


class DifferenceKind(Enum):
    U = "u"
    V = "v"
    UV = "uv"
    VU = "vu"

    def __str__(self):
        return self.value


def _double_embedding(indicator, N):
    """Indicator of 2X in Z_N from the indicator of X in Z_{N/2}."""
    doubled = np.zeros(N, dtype=bool)
    doubled[2 * np.flatnonzero(indicator)] = True
    return doubled


def difference_count(
    kind, shift, params, i=1, j=0, table=None, sets=None
) -> int:
    """Size of one characteristic set intersected with a shift of another.

    d_u(i, j; t) = |C_i^(p^m) cap (C_j^(p^m) + t)|
    d_v(i, j; t) = |C_i^(2p^m) cap (C_j^(2p^m) + 2t)|
    d_uv(i, j; t) = |2C_i^(p^m) cap (C_j^(2p^m) + 2t - 1)|
    d_vu(i, j; t) = |C_i^(2p^m) cap (2C_j^(p^m) + 2t - 1)|

    Parameters
    ----------
    kind: DifferenceKind or str
    shift: int
    params: PrimePowerParams
    i: 0 or 1, optional, defaults to 1
    j: 0 or 1, optional, defaults to 0
    table: ClassTable or None, optional, defaults to None
    sets: CharacteristicSets or None, optional, defaults to None
        Precomputed characteristic sets, built from table if None.

    Returns
    -------
    count: int
    """
    kind = DifferenceKind(kind)
    if i not in (0, 1) or j not in (0, 1):
        raise ValueError(f"classes must be 0 or 1, got ({i}, {j})")
    if sets is None:
        sets = characteristic_sets(params, table=table)
    N = params.N

    if kind == DifferenceKind.U:
        left = sets.c_q[i]
        right = np.roll(sets.c_q[j], shift % params.q)
    elif kind == DifferenceKind.V:
        left = sets.c_2q[i]
        right = np.roll(sets.c_2q[j], (2 * shift) % N)
    elif kind == DifferenceKind.UV:
        left = _double_embedding(sets.c_q[i], N)
        right = np.roll(sets.c_2q[j], (2 * shift - 1) % N)
    else:
        left = sets.c_2q[i]
        right = np.roll(
            _double_embedding(sets.c_q[j], N), (2 * shift - 1) % N
        )
    return int(np.count_nonzero(left & right))


def difference_profile(kind, params, i=1, j=0, table=None) -> np.ndarray:
    """difference_count for every shift in [0, p^m)."""
    sets = characteristic_sets(params, table=table)
    return np.array(
        [
            difference_count(kind, t, params, i=i, j=j, sets=sets)
            for t in range(params.q)
        ],
        dtype=np.int64,
    )
