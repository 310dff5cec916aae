"""Exhaustive comparison of brute force against the closed forms.

For one (p, m) instance every check enumerates all of its inputs and
records each disagreement; a mismatch never stops the run. Results are
gathered into an :class:`EntryReport` per instance and a
:class:`VerificationReport` for a whole grid.
"""

import json

from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Dict, List, Optional

import numpy as np

from joblib import Parallel, delayed

from quatcyc.closed_form import (
    CCF_SHIFT_OFFSET,
    component_profiles,
    consistency_mismatches,
    decompose_acf,
    explain_acf_s,
    explain_binary_correlation,
    explain_component_acf,
    explain_cross_ccf,
    explain_d_v_unit_part,
    explain_difference_count,
    fitting_values,
)
from quatcyc.correlation import (
    DifferenceKind,
    GaussianInt,
    autocorrelation,
    cross_correlation,
    difference_count,
)
from quatcyc.cyclotomy import (
    build_class_table,
    cyclotomic_number_bf,
    cyclotomic_number_cf,
    fast_labels,
    level_partition,
    partition_multiplicity,
)
from quatcyc.number_theory import (
    is_prime,
    make_params,
    odd_primitive_roots,
    qr_class,
)
from quatcyc.sequences import (
    balance_stats,
    build_s,
    build_s1,
    build_s2,
    build_u,
    build_v,
    characteristic_sets,
)
from quatcyc.utils import (
    DEFAULT_MAX_N,
    MAX_CORRELATION_N,
    MAX_TENSOR_SIZE,
    check_size,
    console,
    rich_progress_joblib,
)

STRUCTURAL_LEMMAS = (1, 2, 3, 4, 5)
VALUE_LEMMAS = (6, 7, 8, 9, 10, 11, 12, 13, 14, 15)

# Check ids produced by verify_lemma for each lemma id
LEMMA_CHECKS = {
    1: ("two_class_lifting", "unit_class_lifting"),
    2: ("two_class_mod_8",),
    3: ("class_translation",),
    4: ("class_lifting",),
    5: ("minus_one_class",),
    6: ("cyclotomic_numbers",),
    7: ("d_u",),
    8: ("d_v", "d_v_unit_part"),
    9: ("d_uv",),
    10: ("d_vu",),
    11: ("decomposition",),
    12: ("acf_s1",),
    13: ("acf_s2",),
    14: ("ccf_s1s2",),
    15: ("ccf_s2s1",),
}


def _jsonable(value):
    if isinstance(value, GaussianInt):
        return value.to_dict()
    if isinstance(value, (np.integer, np.bool_)):
        return value.item()
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


@dataclass
class Mismatch:
    input: Any
    expected: Any
    actual: Any
    label: Optional[str] = None

    def to_dict(self):
        d = {
            "input": _jsonable(self.input),
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
        }
        if self.label is not None:
            d["label"] = self.label
        return d


@dataclass
class CheckResult:
    id: str
    cases: int
    mismatches: List[Mismatch] = field(default_factory=list)
    detail: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self):
        return len(self.mismatches) == 0

    def to_dict(self):
        d = {
            "id": self.id,
            "cases": self.cases,
            "mismatches": [x.to_dict() for x in self.mismatches],
        }
        if self.detail:
            d["detail"] = _jsonable(self.detail)
        return d


@dataclass
class TypoResolution:
    """A published branch contradicted by brute force, and its fix."""

    check: str
    printed: str
    resolved: str
    fits: List[str]
    cases: int

    def to_dict(self):
        return {
            "check": self.check,
            "printed": self.printed,
            "resolved": self.resolved,
            "fits": list(self.fits),
            "cases": self.cases,
        }


@dataclass
class EntryReport:
    """Checks run on one (p, m) instance."""

    p: int
    m: int
    g: int
    checks: List[CheckResult] = field(default_factory=list)
    typo_resolutions: List[TypoResolution] = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def check(self, check_id):
        for c in self.checks:
            if c.id == check_id:
                return c
        raise KeyError(check_id)

    def extend(self, other):
        self.checks.extend(other.checks)
        self.typo_resolutions.extend(other.typo_resolutions)
        return self

    def to_dict(self):
        return {
            "p": self.p,
            "m": self.m,
            "g": self.g,
            "checks": [c.to_dict() for c in self.checks],
            "typo_resolutions": [t.to_dict() for t in self.typo_resolutions],
            "pass": self.passed,
        }


@dataclass
class VerificationReport:
    grid: List[List[int]]
    entries: List[EntryReport]
    omega_convention: str
    summary_by_p_mod_8: Dict[int, Dict[str, int]]

    @property
    def passed(self):
        return all(e.passed for e in self.entries)

    @property
    def typo_resolutions(self):
        return [t for e in self.entries for t in e.typo_resolutions]

    def to_dict(self):
        return {
            "grid": self.grid,
            "omega_convention": self.omega_convention,
            "entries": [e.to_dict() for e in self.entries],
            "summary_by_p_mod_8": _jsonable(self.summary_by_p_mod_8),
            "pass": self.passed,
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)


class InstanceData:
    """Lazily built brute-force data of one instance.

    Parameters
    ----------
    params: PrimePowerParams
    n_jobs: int, optional, defaults to 1
    device: "auto" or torch.device, optional, defaults to "auto"
    max_tensor_size: int or float, optional, defaults to MAX_TENSOR_SIZE
    max_n: int or None, optional, defaults to MAX_CORRELATION_N
        Largest period for which correlations are computed.
    """

    def __init__(
        self,
        params,
        n_jobs=1,
        device="auto",
        max_tensor_size=MAX_TENSOR_SIZE,
        max_n=MAX_CORRELATION_N,
    ):
        self.params = params
        self.correlation_kwargs = dict(
            n_jobs=n_jobs,
            device=device,
            max_tensor_size=max_tensor_size,
            max_n=max_n,
        )

    @cached_property
    def table(self):
        return build_class_table(self.params)

    @cached_property
    def sets(self):
        return characteristic_sets(self.params, table=self.table)

    @cached_property
    def s(self):
        return build_s(self.params)

    @cached_property
    def acf_s(self):
        return autocorrelation(self.s, **self.correlation_kwargs)

    @cached_property
    def components(self):
        return component_profiles(self.params, **self.correlation_kwargs)

    @cached_property
    def binary(self):
        u, v = build_u(self.params), build_v(self.params)
        kw = self.correlation_kwargs
        return {
            "u": autocorrelation(u, **kw),
            "v": autocorrelation(v, **kw),
            "uv": cross_correlation(u, v, **kw),
            "vu": cross_correlation(v, u, **kw),
        }


def _section(params, checks=(), typo_resolutions=()):
    return EntryReport(
        p=params.p,
        m=params.m,
        g=params.g,
        checks=list(checks),
        typo_resolutions=list(typo_resolutions),
    )


def _compare(check_id, inputs, brute, explain, params, input_name="shift"):
    """Compare brute(x) with explain(x).value for every x in inputs.

    Misprinted branches are grouped, and a TypoResolution is emitted
    for each group in which brute force contradicts the published form.
    """
    mismatches = []
    groups = {}
    inputs = list(inputs)
    for x in inputs:
        actual = brute(x)
        branch = explain(x)
        if actual != branch.value:
            mismatches.append(
                Mismatch(
                    input={input_name: x},
                    expected=branch.value,
                    actual=actual,
                    label=branch.label,
                )
            )
        if branch.is_misprinted:
            key = (branch.condition, branch.expression)
            groups.setdefault(key, (branch, []))[1].append(actual)

    resolutions = []
    for branch, values in groups.values():
        if all(v == branch.as_printed for v in values):
            continue
        printed = (
            f"{branch.printed_condition or branch.condition}: "
            f"{branch.printed_expression or branch.expression}"
        )
        if not branch.printed_covered:
            printed = f"{branch.printed_condition}: {branch.expression}"
        try:
            fits = fitting_values(branch.rule, values, params)
        except ValueError:
            fits = []
        resolutions.append(
            TypoResolution(
                check=check_id,
                printed=printed,
                resolved=f"{branch.condition}: {branch.expression}",
                fits=fits,
                cases=len(values),
            )
        )

    return (
        CheckResult(id=check_id, cases=len(inputs), mismatches=mismatches),
        resolutions,
    )


def _set_equality_check(check_id, pairs):
    """pairs: iterable of (input, expected set, actual set)."""
    mismatches = []
    cases = 0
    for x, expected, actual in pairs:
        cases += 1
        if set(int(a) for a in expected) != set(int(a) for a in actual):
            mismatches.append(
                Mismatch(
                    input=x,
                    expected=sorted(int(a) for a in expected),
                    actual=sorted(int(a) for a in actual),
                )
            )
    return CheckResult(id=check_id, cases=cases, mismatches=mismatches)


# structural lemmas


def _check_two_class_lifting(params, table):
    c = qr_class(2, params.p)
    mismatches = []
    for k in range(1, params.m + 1):
        actual = int(table.level_labels(k)[2])
        if actual != c:
            mismatches.append(Mismatch({"level": k}, c, actual))
    return CheckResult("two_class_lifting", params.m, mismatches)


def _check_unit_class_lifting(params, table):
    p = params.p
    cases, mismatches = 0, []
    for k in range(1, params.m + 1):
        labels = table.level_labels(k)
        for a in range(1, p**k):
            if a % p == 0:
                continue
            cases += 1
            expected = qr_class(a, p)
            if labels[a] != expected:
                mismatches.append(
                    Mismatch({"level": k, "a": a}, expected, int(labels[a]))
                )
    return CheckResult("unit_class_lifting", cases, mismatches)


def _check_two_class_mod_8(params, table):
    expected = 0 if params.p % 8 in (1, 7) else 1
    actual = int(table.level_labels(1)[2 % params.p])
    mismatches = []
    if actual != expected:
        mismatches.append(
            Mismatch({"p_mod_8": params.p % 8}, expected, actual)
        )
    return CheckResult("two_class_mod_8", 1, mismatches)


def translation_samples(p):
    """Odd integers t used to check class translations."""
    return sorted({1, -1, p - 2, 3, 2 * p + 1, -(2 * p + 1)})


def _check_class_translation(params, table):
    p = params.p
    c = qr_class(2, p)

    def pairs():
        for j in range(1, params.m + 1):
            modulus = 2 * p**j
            for i in (0, 1):
                for t in translation_samples(p):
                    yield (
                        {"level": j, "class": i, "t": t, "part": 1},
                        table.d_2pm[j][(i + c) % 2],
                        (2 * table.d_pm[j][i] + p * t) % modulus,
                    )
                    yield (
                        {"level": j, "class": i, "t": t, "part": 2},
                        table.d_2pm[j][i],
                        (table.d_2pm[j][i] + 2 * p * t) % modulus,
                    )

    return _set_equality_check("class_translation", pairs())


def _check_class_lifting(params, table):
    p = params.p

    def pairs():
        for k in range(1, params.m + 1):
            for i in (0, 1):
                x = table.d_pm[1][i]
                y = np.arange(p ** (k - 1))
                lifted = (x[:, None] + p * y[None, :]).ravel()
                yield (
                    {"level": k, "class": i, "modulus": p**k},
                    table.d_pm[k][i],
                    lifted,
                )
                delta = np.where(lifted % 2 == 1, 0, p**k)
                yield (
                    {"level": k, "class": i, "modulus": 2 * p**k},
                    table.d_2pm[k][i],
                    lifted + delta,
                )

    return _set_equality_check("class_lifting", pairs())


def _check_minus_one_class(params, table):
    p = params.p
    mismatches = []
    detail = {}
    for k in range(1, params.m + 1):
        odd = int(table.level_labels(k)[p**k - 1])
        even = int(table.level_labels(k, double=True)[2 * p**k - 1])
        detail[f"level_{k}"] = odd
        if odd != even:
            mismatches.append(Mismatch({"level": k}, odd, even))
    return CheckResult("minus_one_class", params.m, mismatches, detail)


def verify_lemma(lemma_id, params, data=None, **kwargs) -> EntryReport:
    """Run the checks attached to one lemma id on one instance.

    Ids 1 to 5 check class identities at every level k <= m, 6 to 10
    compare cyclotomic numbers and difference counts, 11 checks the
    decomposition of the autocorrelation of s, and 12 to 15 compare
    the correlations of s1 and s2 at every shift.

    Parameters
    ----------
    lemma_id: int
        One of 1 to 15.
    params: PrimePowerParams
    data: InstanceData or None, optional, defaults to None
        Brute-force data shared between checks.
    kwargs: dict
        Forwarded to InstanceData when data is None.

    Returns
    -------
    section: EntryReport
    """
    if lemma_id not in LEMMA_CHECKS:
        raise ValueError(
            f"lemma_id must lie in [1, {max(LEMMA_CHECKS)}], got {lemma_id}"
        )
    if data is None:
        data = InstanceData(params, **kwargs)
    table = data.table
    q, N = params.q, params.N

    structural = {
        1: (_check_two_class_lifting, _check_unit_class_lifting),
        2: (_check_two_class_mod_8,),
        3: (_check_class_translation,),
        4: (_check_class_lifting,),
        5: (_check_minus_one_class,),
    }
    if lemma_id in structural:
        return _section(
            params, [check(params, table) for check in structural[lemma_id]]
        )

    if lemma_id == 6:
        mismatches = []
        for i in (0, 1):
            for j in (0, 1):
                expected = cyclotomic_number_cf(i, j, params)
                actual = cyclotomic_number_bf(i, j, params, table=table)
                if actual != expected:
                    mismatches.append(
                        Mismatch({"i": i, "j": j}, expected, actual)
                    )
        return _section(
            params, [CheckResult("cyclotomic_numbers", 4, mismatches)]
        )

    if lemma_id in (7, 8, 9, 10):
        kind = {
            7: DifferenceKind.U,
            8: DifferenceKind.V,
            9: DifferenceKind.UV,
            10: DifferenceKind.VU,
        }[lemma_id]
        # d_u and d_v have no closed form at shift 0
        shifts = range(1, q) if lemma_id in (7, 8) else range(q)
        check, resolutions = _compare(
            f"d_{kind}",
            shifts,
            lambda t: difference_count(kind, t, params, sets=data.sets),
            lambda t: explain_difference_count(kind, t, params),
            params,
        )
        section = _section(params, [check], resolutions)
        if lemma_id == 8:
            m = params.m
            d0 = np.zeros(N, dtype=bool)
            d0[table.d_2pm[m][0]] = True
            d1 = np.zeros(N, dtype=bool)
            d1[table.d_2pm[m][1]] = True
            check, resolutions = _compare(
                "d_v_unit_part",
                range(q),
                lambda t: int(
                    np.count_nonzero(d1 & np.roll(d0, (2 * t) % N))
                ),
                lambda t: explain_d_v_unit_part(t, params),
                params,
            )
            section.extend(_section(params, [check], resolutions))
        return section

    if lemma_id == 11:
        components = data.components
        check, _ = _compare(
            "decomposition",
            range(N),
            lambda tau: decompose_acf(tau, params, profiles=components),
            lambda tau: _DirectBranch(data.acf_s[tau]),
            params,
        )
        return _section(params, [check])

    components = data.components
    if lemma_id in (12, 13):
        which = "s1" if lemma_id == 12 else "s2"
        profile = components.acf_s1 if which == "s1" else components.acf_s2
        check, resolutions = _compare(
            f"acf_{which}",
            range(q),
            lambda k: profile[k],
            lambda k: explain_component_acf(which, k, params),
            params,
        )
        return _section(params, [check], resolutions)

    direction = "s1s2" if lemma_id == 14 else "s2s1"
    profile = (
        components.ccf_s1s2 if direction == "s1s2" else components.ccf_s2s1
    )
    offset = CCF_SHIFT_OFFSET[direction]
    check, resolutions = _compare(
        f"ccf_{direction}",
        range(1, q + 1),
        lambda k: profile[k - offset],
        lambda k: explain_cross_ccf(direction, k, params),
        params,
        input_name="k",
    )
    if offset:
        resolutions.extend(
            _alignment_resolution(direction, profile, params, offset)
        )
    return _section(params, [check], resolutions)


@dataclass(frozen=True)
class _DirectBranch:
    """Stand-in branch wrapping a brute-force value."""

    value: Any
    label: str = "direct"
    is_misprinted: bool = False


def _alignment_resolution(direction, profile, params, offset):
    """Report the shift at which values keyed on 2k - 1 hold."""
    q = params.q
    candidates = {
        0: f"C_{{{direction[:2]},{direction[2:]}}}(k)",
        offset: f"C_{{{direction[:2]},{direction[2:]}}}(k - {offset})",
    }
    fits = []
    for shift, name in candidates.items():
        if all(
            profile[k - shift] == explain_cross_ccf(direction, k, params).value
            for k in range(1, q + 1)
        ):
            fits.append(name)
    if candidates[0] in fits:
        return []
    return [
        TypoResolution(
            check=f"ccf_{direction}",
            printed=f"values keyed on 2k - 1 are {candidates[0]}",
            resolved=f"values keyed on 2k - 1 are {candidates[offset]}",
            fits=fits,
            cases=q,
        )
    ]


def verify_theorem16(params, data=None, **kwargs) -> EntryReport:
    """Compare the autocorrelation of s with its closed form at every shift.

    The comparison is also run against the conjugate profile, which is
    what the closed form would have to match if omega were -i. Both
    outcomes are kept in the detail of the check.
    """
    if data is None:
        data = InstanceData(params, **kwargs)
    profile = data.acf_s
    check, _ = _compare(
        "acf_s",
        range(params.N),
        lambda tau: profile[tau],
        lambda tau: explain_acf_s(tau, params),
        params,
    )
    conjugate = profile.conjugate()
    predicted = [explain_acf_s(tau, params).value for tau in range(params.N)]
    check.detail = {
        "omega": {
            "+i": all(profile[t] == v for t, v in enumerate(predicted)),
            "-i": all(conjugate[t] == v for t, v in enumerate(predicted)),
        },
        "imaginary_cases": sum(1 for v in predicted if v.im != 0),
        "p_mod_8": params.p % 8,
    }
    return _section(params, [check])


# structural suite


def _count_check(check_id, cases, failures):
    return CheckResult(
        check_id,
        cases,
        [Mismatch(x, expected, actual) for x, expected, actual in failures],
    )


def verify_structural(params, data=None, **kwargs) -> EntryReport:
    """Class, sequence and profile properties of one instance.

    Covers partition completeness, class sizes, independence from the
    primitive root, interleaving of s1 and s2 into s, the relations
    between the quaternary and binary sequences, identities of the
    difference counts, conjugate symmetry, balance and the number of
    distinct correlation magnitudes.
    """
    if data is None:
        data = InstanceData(params, **kwargs)
    table = data.table
    p, m, q, N, P = params.p, params.m, params.q, params.N, params.P
    checks = []

    multiplicity = partition_multiplicity(table)
    checks.append(
        _count_check(
            "label_partition",
            N,
            [({"n": int(n)}, 1, int(multiplicity[n])) for n in
             np.flatnonzero(multiplicity != 1)],
        )
    )

    fast = fast_labels(params)
    checks.append(
        _count_check(
            "fast_class",
            N,
            [
                ({"n": int(n)}, int(table.label_of[n]), int(fast[n]))
                for n in np.flatnonzero(fast != table.label_of)
            ],
        )
    )

    cover = np.bincount(
        np.concatenate([part for _, part in level_partition(table)]),
        minlength=N,
    )
    checks.append(
        _count_check(
            "level_partition",
            N,
            [({"n": int(n)}, 1, int(cover[n])) for n in
             np.flatnonzero(cover != 1)],
        )
    )

    failures = []
    for j in range(1, m + 1):
        size = p ** (j - 1) * (p - 1) // 2
        for double, classes in (
            (False, table.d_pm[j]),
            (True, table.d_2pm[j]),
        ):
            for i in (0, 1):
                if len(classes[i]) != size:
                    modulus = 2 * p**j if double else p**j
                    failures.append(
                        (
                            {"modulus": modulus, "class": i},
                            size,
                            len(classes[i]),
                        )
                    )
    checks.append(_count_check("class_sizes", 4 * m, failures))

    checks.append(_check_root_independence(params, table))

    s = data.s.symbols
    s1, s2 = build_s1(params).symbols, build_s2(params).symbols
    failures = [
        ({"j": j, "parity": "even"}, int(s1[j]), int(s[2 * j]))
        for j in np.flatnonzero(s[0::2] != s1)
    ] + [
        ({"j": j, "parity": "odd"}, int(s2[j]), int(s[2 * j + 1]))
        for j in np.flatnonzero(s[1::2] != s2)
    ]
    checks.append(_count_check("interleaving", N, failures))

    u, v = build_u(params).symbols, build_v(params).symbols
    n = np.arange(q)
    units = n % p != 0
    odd_units = (2 * n + 1) % p != 0
    failures = [
        ({"n": int(x), "sequence": "u"}, int(u[x]) + 2, int(s1[x]))
        for x in np.flatnonzero(units & (s1 != u + 2))
    ] + [
        ({"n": int(x), "sequence": "v"}, int(v[x]), int(s2[x]))
        for x in np.flatnonzero(odd_units & (s2 != v))
    ]
    checks.append(
        _count_check(
            "unit_relations",
            int(units.sum() + odd_units.sum()),
            failures,
        )
    )

    failures = []
    for kind in DifferenceKind:
        for t in range(q):
            d = {
                (i, j): difference_count(
                    kind, t, params, i=i, j=j, sets=data.sets
                )
                for i in (0, 1)
                for j in (0, 1)
            }
            total = sum(d.values())
            if total != q:
                failures.append(
                    ({"kind": str(kind), "shift": t, "sum": True}, q, total)
                )
            if d[(1, 0)] != d[(0, 1)]:
                failures.append(
                    (
                        {"kind": str(kind), "shift": t, "symmetry": True},
                        d[(1, 0)],
                        d[(0, 1)],
                    )
                )
    # a sum and a symmetry identity per kind and shift
    checks.append(
        _count_check(
            "difference_identities", 2 * len(DifferenceKind) * q, failures
        )
    )

    profiles = {
        "s": data.acf_s,
        "s1": data.components.acf_s1,
        "s2": data.components.acf_s2,
        "u": data.binary["u"],
        "v": data.binary["v"],
    }
    failures = [
        ({"sequence": name}, True, False)
        for name, profile in profiles.items()
        if not profile.is_conjugate_symmetric()
    ]
    checks.append(_count_check("conjugate_symmetry", len(profiles), failures))

    stats = balance_stats(data.s)
    counts = stats.counts
    failures = []
    if m == 1 and not stats.balanced:
        failures.append(({"m": m}, True, False))
    check = _count_check("balance", 1 if m == 1 else 0, failures)
    check.detail = {"counts": counts, "balanced": stats.balanced}
    checks.append(check)

    expected = P * (p - 1) // 2
    failures = [
        ({"symbol": a}, expected, counts[a])
        for a in (1, 3)
        if counts[a] != expected
    ]
    checks.append(_count_check("symbol_counts", 2, failures))

    magnitudes = sorted(set(int(x) for x in data.acf_s.squared_magnitudes()))
    check = _count_check(
        "distinct_magnitudes",
        1,
        [] if len(magnitudes) <= 4 else [({"max": 4}, 4, len(magnitudes))],
    )
    check.detail = {"squared_magnitudes": magnitudes}
    checks.append(check)

    checks.append(
        _count_check(
            "closed_form_consistency",
            N - 1,
            [
                ({"tau": tau}, "s1/s2 closed forms", "s closed form")
                for tau in consistency_mismatches(params)
            ],
        )
    )

    for kind, profile in data.binary.items():
        check, _ = _compare(
            f"corr_{kind}",
            range(q),
            lambda k: profile[k],
            lambda k: explain_binary_correlation(kind, k, params),
            params,
        )
        checks.append(check)

    return _section(params, checks)


def _check_root_independence(params, table):
    """Rebuild the classes from another odd primitive root and compare."""
    second = None
    for g in odd_primitive_roots(params.p, params.m):
        if g != params.g:
            second = g
            break
    if second is None:
        check = CheckResult("primitive_root_independence", 0)
        check.detail = {"skipped": "no other odd primitive root below 2p^m"}
        return check

    other = build_class_table(make_params(params.p, params.m, g=second))
    failures = []
    cases = 0
    for j in range(1, params.m + 1):
        for name, mine, theirs in (
            ("p^j", table.d_pm[j], other.d_pm[j]),
            ("2p^j", table.d_2pm[j], other.d_2pm[j]),
        ):
            for i in (0, 1):
                cases += 1
                if not np.array_equal(mine[i], theirs[i]):
                    failures.append(
                        (
                            {"level": j, "modulus": name, "class": i},
                            True,
                            False,
                        )
                    )
    check = _count_check("primitive_root_independence", cases, failures)
    check.detail = {"g": params.g, "other_g": second}
    return check


def verify_entry(params, **kwargs) -> EntryReport:
    """Run every check on one instance."""
    data = InstanceData(params, **kwargs)
    report = _section(params)
    report.extend(verify_structural(params, data=data))
    for lemma_id in STRUCTURAL_LEMMAS + VALUE_LEMMAS:
        report.extend(verify_lemma(lemma_id, params, data=data))
    report.extend(verify_theorem16(params, data=data))
    return report


def default_grid(max_n=DEFAULT_MAX_N, max_p=31):
    """All odd primes p <= max_p with every m such that 2p^m <= max_n."""
    grid = []
    for p in range(3, max_p + 1, 2):
        if not is_prime(p):
            continue
        m = 1
        while 2 * p**m <= max_n:
            grid.append((p, m))
            m += 1
    return grid


def _validate_grid(grid, max_n):
    params, diagnostics = [], []
    for p, m in grid:
        try:
            entry = make_params(p, m)
            check_size(entry.N, max_n)
        except ValueError as e:
            diagnostics.append(f"({p}, {m}): {e}")
            continue
        params.append(entry)
    if diagnostics:
        raise ValueError(
            "Invalid grid entries:\n" + "\n".join(diagnostics)
        )
    unique = {(x.p, x.m): x for x in params}
    return [unique[key] for key in sorted(unique)]


def omega_convention(entries):
    """Which root of unity the closed form of s agrees with."""
    fits = [e.check("acf_s").detail["omega"] for e in entries]
    plus = all(f["+i"] for f in fits)
    minus = all(f["-i"] for f in fits)
    if plus and minus:
        return "either"
    if plus:
        return "+i"
    if minus:
        return "-i"
    return "both-fail"


def summary_by_p_mod_8(entries):
    summary = {}
    for e in entries:
        check = e.check("acf_s")
        row = summary.setdefault(
            e.p % 8, {"entries": 0, "cases": 0, "mismatches": 0}
        )
        row["entries"] += 1
        row["cases"] += check.cases
        row["mismatches"] += len(check.mismatches)
    return dict(sorted(summary.items()))


def run_suite(
    grid=None,
    n_jobs=1,
    max_n=DEFAULT_MAX_N,
    device="auto",
    verbose=False,
) -> VerificationReport:
    """Run every check on every (p, m) of grid.

    Parameters
    ----------
    grid: list of (int, int) or None, optional, defaults to None
        Instances to check. If None, default_grid(max_n) is used.
    n_jobs: int, optional, defaults to 1
        Number of instances checked in parallel.
    max_n: int, optional, defaults to DEFAULT_MAX_N
        Largest period 2p^m accepted.
    device: "auto" or torch.device, optional, defaults to "auto"
    verbose: bool, optional, defaults to False
        Log progress and display a progress bar.

    Returns
    -------
    report: VerificationReport
    """
    if grid is None:
        grid = default_grid(max_n)
    params = _validate_grid(grid, max_n)
    if not params:
        raise ValueError("Grid is empty, there is nothing to verify")

    if verbose:
        console.log(f"Verifying {len(params)} instances")
    with rich_progress_joblib(
        "Verifying", total=len(params), verbose=verbose
    ):
        entries = Parallel(n_jobs=n_jobs)(
            delayed(verify_entry)(x, device=device, max_n=max_n)
            for x in params
        )

    report = VerificationReport(
        grid=[[x.p, x.m] for x in params],
        entries=list(entries),
        omega_convention=omega_convention(entries),
        summary_by_p_mod_8=summary_by_p_mod_8(entries),
    )
    if verbose:
        status = "[green]pass" if report.passed else "[red]FAIL"
        console.log(
            f"{status}[/] omega convention: {report.omega_convention}, "
            f"{len(report.typo_resolutions)} typo resolutions"
        )
    return report
