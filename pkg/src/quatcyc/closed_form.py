"""Closed-form values of difference counts and correlations.

Every predictor comes in two flavours: ``explain_*`` returns the
:class:`Branch` selected for the input (its case, condition, expression
and value) and ``predict_*`` returns the value only.

Branches are selected from the class of the shift in Z_{p^m}, or from
the class of 2k - 1 in Z_{2p^m}, together with p mod 8. A few branches
are known to be misprinted in the published statements; such branches
keep the printed form next to the resolved one so that the
verification harness can report which of the two brute force supports.
"""

from dataclasses import dataclass
from typing import Dict, List, NamedTuple, Optional, Union

from quatcyc.correlation import (
    CorrelationProfile,
    DifferenceKind,
    GaussianInt,
    autocorrelation,
    cross_correlation,
)
from quatcyc.cyclotomy import (
    ResidueLabel,
    ShiftClass,
    cyclotomic_number_cf,
    fast_class,
    shift_class,
)
from quatcyc.number_theory import PrimePowerParams, qr_class
from quatcyc.sequences import SequenceKind, build_s1, build_s2

Value = Union[int, GaussianInt]

ACF_KINDS = ("s1", "s2")
CCF_DIRECTIONS = ("s1s2", "s2s1")
# Values keyed on 2k - 1 for C_{s2,s1} are those of the shift k - 1
CCF_SHIFT_OFFSET = {"s1s2": 0, "s2s1": 1}


@dataclass(frozen=True)
class CaseLabel:
    """Class of the branch key together with p mod 8.

    shift_class is a ResidueLabel name (ZeroMod2p, PMod2p, Unit2pm(i),
    TwoUnit(i)) for keys in Z_{2p^m}, a ShiftClass name (D0, D1,
    pMultNonzero) for keys in Z_{p^m}, or "peak" at shift 0.
    """

    shift_class: str
    p_mod_8: int

    def __str__(self):
        return self.shift_class


@dataclass(frozen=True)
class Branch:
    """Closed-form branch matching one input.

    Attributes
    ----------
    rule: str
        Name of the predicted quantity, e.g. "d_uv" or "acf_s".
    case: CaseLabel
    condition: str
    expression: str
    value: int or GaussianInt
    printed_condition: str or None
        Condition as published, when it differs from condition.
    printed_expression: str or None
        Expression as published, when it differs from expression.
    printed_value: int, GaussianInt or None
        Value of printed_expression.
    printed_covered: bool
        False when no published branch covers this input.
    """

    rule: str
    case: CaseLabel
    condition: str
    expression: str
    value: Value
    printed_condition: Optional[str] = None
    printed_expression: Optional[str] = None
    printed_value: Optional[Value] = None
    printed_covered: bool = True

    @property
    def is_misprinted(self):
        return (
            self.printed_condition is not None
            or self.printed_expression is not None
            or not self.printed_covered
        )

    @property
    def as_printed(self):
        """Value the published statement gives, None if it gives none."""
        if not self.printed_covered:
            return None
        if self.printed_value is not None:
            return self.printed_value
        return self.value

    @property
    def label(self):
        return str(self.case)


def _case(label, params):
    return CaseLabel(shift_class=str(label), p_mod_8=params.p % 8)


def _scaled(params, offset, denominator, reverse=False):
    """Expression and value of p^(m-1)(p + offset) / denominator.

    With reverse, p^(m-1)(offset - p) / denominator.
    """
    p, P = params.p, params.P
    if reverse:
        return (
            f"p^(m-1)({offset}-p)/{denominator}",
            P * (offset - p) // denominator,
        )
    sign = "+" if offset >= 0 else "-"
    return (
        f"p^(m-1)(p{sign}{abs(offset)})/{denominator}",
        P * (p + offset) // denominator,
    )


def _with_omega(params, real, coefficient):
    """Gaussian value real + coefficient * p^(m-1) * w."""
    expression, re = real
    sign = "+" if coefficient >= 0 else "-"
    return (
        f"{expression} {sign} {abs(coefficient)}p^(m-1)w",
        GaussianInt(re, coefficient * params.P),
    )


def _peak(rule, value, params):
    return Branch(
        rule=rule,
        case=_case("peak", params),
        condition="shift = 0",
        expression="period",
        value=value,
    )


def _mod8_condition(params, key, label):
    return f"p = {params.p % 8} (mod 8), {key} in {label}"


# difference counts


def _unit_difference(params, i):
    """d_u(1, 0; t) for t in D_i^(p^m)."""
    if params.p % 4 == 1:
        return _scaled(params, 3 if i == 0 else -1, 4)
    return _scaled(params, 1, 4)


_UV_OFFSETS = {
    1: (3, -1),
    3: (-3, 1),
    5: (-1, -1),
    7: (1, 1),
}
_VU_OFFSETS = {
    1: (3, -1),
    3: (1, -3),
    5: (-1, -1),
    7: (1, 1),
}


def _p_branch_difference(rule, params, key):
    """d_uv and d_vu when 2t - 1 = p (mod 2p)."""
    p, q, P = params.p, params.q, params.P
    split = p % 8 in (1, 7)
    if split:
        expression, value = "0", 0
        printed_expression, printed_value = "p^m", q
    else:
        expression, value = "p^(m-1)(p-1)/2", P * (p - 1) // 2
        printed_expression, printed_value = "p^(m-1)", P
    return Branch(
        rule=rule,
        case=_case(ResidueLabel.P_MOD_2P, params),
        condition=(
            f"p = {'+-1' if split else '+-3'} (mod 8), "
            f"{key} = p (mod 2p)"
        ),
        expression=expression,
        value=value,
        printed_expression=printed_expression,
        printed_value=printed_value,
    )


def explain_difference_count(kind, shift, params) -> Branch:
    """Closed form of d(1, 0; shift) for d_u, d_v, d_uv or d_vu.

    d_u and d_v are keyed on the class of the shift t in Z_{p^m} and
    have no closed form at t = 0. d_uv and d_vu are keyed on the
    class of 2t - 1 in Z_{2p^m}.

    Parameters
    ----------
    kind: DifferenceKind or str
    shift: int
    params: PrimePowerParams

    Returns
    -------
    branch: Branch
    """
    kind = DifferenceKind(kind)
    p = params.p
    rule = f"d_{kind}"

    if kind in (DifferenceKind.U, DifferenceKind.V):
        label = shift_class(shift, params)
        if label == ShiftClass.ZERO:
            raise ValueError(
                f"{rule}(1, 0; t) has no closed form at t = 0 (mod {params.q})"
            )
        if label == ShiftClass.P_MULTIPLE:
            return Branch(
                rule=rule,
                case=_case(label, params),
                condition="t in pZ_{p^m} \\ {0}",
                expression="0",
                value=0,
            )
        i = label.class_index
        if kind == DifferenceKind.V:
            # 2t lies in D_{i + c} where c is the class of 2
            i = (i + qr_class(2, p)) % 2
        expression, value = _unit_difference(params, i)
        return Branch(
            rule=rule,
            case=_case(label, params),
            condition=_mod8_condition(params, "t", f"D_{label.class_index}"),
            expression=expression,
            value=value,
        )

    key = "2t - 1"
    label = fast_class(2 * shift - 1, params)
    if label == ResidueLabel.P_MOD_2P:
        return _p_branch_difference(rule, params, key)

    i = label.class_index
    offsets = _UV_OFFSETS if kind == DifferenceKind.UV else _VU_OFFSETS
    expression, value = _scaled(params, offsets[p % 8][i], 4)
    condition = _mod8_condition(params, key, f"D_{i}^(2p^m)")
    if kind == DifferenceKind.UV and p % 8 == 3 and i == 0:
        return Branch(
            rule=rule,
            case=_case(label, params),
            condition=condition,
            expression=expression,
            value=value,
            printed_condition=_mod8_condition(
                params, "2t - 2", "D_0^(2p^m)"
            ),
            printed_covered=False,
        )
    return Branch(
        rule=rule,
        case=_case(label, params),
        condition=condition,
        expression=expression,
        value=value,
    )


def predict_difference_count(kind, shift, params) -> int:
    return explain_difference_count(kind, shift, params).value


def explain_d_v_unit_part(shift, params) -> Branch:
    """Closed form of |D_1^(2p^m) cap (D_0^(2p^m) + 2t)|.

    This is the part of d_v(1, 0; t) not coming from odd multiples of
    p. For t in D_i^(p^m) it is one of the cyclotomic numbers (0, 1)
    or (1, 0), depending on i and on whether 2 is a square mod p.
    """
    rule = "d_v_unit_part"
    label = shift_class(shift, params)
    if label in (ShiftClass.ZERO, ShiftClass.P_MULTIPLE):
        return Branch(
            rule=rule,
            case=_case(label, params),
            condition="t in pZ_{p^m}",
            expression="0",
            value=0,
        )

    i = label.class_index
    square_two = params.p % 8 in (1, 7)
    # 2 square: D0 -> (0, 1), D1 -> (1, 0); otherwise swapped
    split = (0, 1) if (i == 0) == square_two else (1, 0)
    first = (0, 1) if i == 0 else (1, 0)
    condition = (
        f"p = {'+-1' if square_two else '+-3'} (mod 8), t in D_{i}^(p^m)"
    )
    branch = dict(
        rule=rule,
        case=_case(label, params),
        condition=condition,
        expression=f"({split[0]}, {split[1]})_{{p^m}}",
        value=cyclotomic_number_cf(*split, params),
    )
    if square_two:
        return Branch(**branch)
    return Branch(
        **branch,
        printed_condition=f"p = +-1 (mod 8), t in D_{i}^(p^m)",
        printed_expression=f"({first[0]}, {first[1]})_{{p^m}}",
        printed_value=cyclotomic_number_cf(*first, params),
    )


def predict_d_v_unit_part(shift, params) -> int:
    return explain_d_v_unit_part(shift, params).value


# binary correlations

_BINARY_RULES = {
    "u": DifferenceKind.U,
    "v": DifferenceKind.V,
    "uv": DifferenceKind.UV,
    "vu": DifferenceKind.VU,
}


def explain_binary_correlation(kind, k, params) -> Branch:
    """Closed form of C_u, C_v, C_{u,v} or C_{v,u} at shift k.

    Each of them equals p^m - 2 d(1, 0; .) where d is the matching
    difference count, taken at k + 1 for C_{v,u}.
    """
    if kind not in _BINARY_RULES:
        raise ValueError(
            f"kind must be one of {list(_BINARY_RULES)}, got {kind!r}"
        )
    q = params.q
    rule = f"corr_{kind}"
    if kind in ("u", "v") and k % q == 0:
        return _peak(rule, GaussianInt(q), params)

    shift = k + 1 if kind == "vu" else k
    d = explain_difference_count(_BINARY_RULES[kind], shift, params)
    return Branch(
        rule=rule,
        case=d.case,
        condition=d.condition,
        expression=f"p^m - 2 * [{d.expression}]",
        value=GaussianInt(q - 2 * d.value),
    )


def predict_binary_correlation(kind, k, params) -> GaussianInt:
    return explain_binary_correlation(kind, k, params).value


# component correlations


def explain_component_acf(which, k, params) -> Branch:
    """Closed form of the autocorrelation of s1 or s2 at shift k.

    Parameters
    ----------
    which: "s1" or "s2"
    k: int
        Shift in Z_{p^m}; k = 0 gives the peak p^m.
    params: PrimePowerParams

    Returns
    -------
    branch: Branch
    """
    which = str(which).lower()
    if which not in ACF_KINDS:
        raise ValueError(f"which must be s1 or s2, got {which!r}")
    p, q = params.p, params.q
    rule = f"acf_{which}"
    label = shift_class(k, params)
    if label == ShiftClass.ZERO:
        return _peak(rule, GaussianInt(q), params)
    if label == ShiftClass.P_MULTIPLE:
        return Branch(
            rule=rule,
            case=_case(label, params),
            condition="k in pZ_{p^m} \\ {0}",
            expression="p^m",
            value=GaussianInt(q),
        )

    i = label.class_index
    sign = 1 if i == 0 else -1
    if which == "s1":
        condition = f"p = {p % 4} (mod 4), k in D_{i}^(p^m)"
        if p % 4 == 1:
            expression, re = _scaled(params, -7 if i == 0 else -3, 2)
            value = GaussianInt(re)
        else:
            real = _scaled(params, -5, 2)
            expression, value = _with_omega(params, real, 2 * sign)
            printed_sign = "+" if sign > 0 else "-"
            return Branch(
                rule=rule,
                case=_case(label, params),
                condition=condition,
                expression=expression,
                value=value,
                printed_expression=f"{real[0]} {printed_sign} 2w",
                printed_value=GaussianInt(real[1], 2 * sign),
            )
    else:
        condition = _mod8_condition(params, "k", f"D_{i}^(p^m)")
        if p % 8 in (1, 5):
            worse = (i == 0) == (p % 8 == 1)
            expression, re = _scaled(params, -7 if worse else -3, 2)
            value = GaussianInt(re)
        else:
            coefficient = 2 * sign if p % 8 == 7 else -2 * sign
            expression, value = _with_omega(
                params, _scaled(params, -5, 2), coefficient
            )
    return Branch(
        rule=rule,
        case=_case(label, params),
        condition=condition,
        expression=expression,
        value=value,
    )


def predict_component_acf(which, k, params) -> GaussianInt:
    return explain_component_acf(which, k, params).value


# (offset of the real part with reverse sign, omega coefficient sign)
_CCF_UNIT_FORMS = {
    "s1s2": {
        1: ((7, 0), (3, 0)),
        3: ((1, 0), (5, 0)),
        5: ((3, 2), (3, -2)),
        7: ((5, -2), (5, 2)),
    },
    "s2s1": {
        1: ((7, 0), (3, 0)),
        3: ((5, 0), (1, 0)),
        5: ((3, -2), (3, 2)),
        7: ((5, -2), (5, 2)),
    },
}


def explain_cross_ccf(direction, k, params) -> Branch:
    """Closed form of the cross-correlation of s1 and s2, keyed on 2k - 1.

    For direction "s1s2" the value is C_{s1,s2}(k). For direction
    "s2s1" it is C_{s2,s1}(k - 1), which is the term that completes
    C_{s1,s2}(k) in the autocorrelation of s at the odd shift 2k - 1.

    Parameters
    ----------
    direction: "s1s2" or "s2s1"
    k: int
    params: PrimePowerParams

    Returns
    -------
    branch: Branch
    """
    direction = str(direction).lower()
    if direction not in CCF_DIRECTIONS:
        raise ValueError(
            f"direction must be s1s2 or s2s1, got {direction!r}"
        )
    p, q, P = params.p, params.q, params.P
    rule = f"ccf_{direction}"
    label = fast_class(2 * k - 1, params)

    if label == ResidueLabel.P_MOD_2P:
        split = p % 8 in (1, 7)
        return Branch(
            rule=rule,
            case=_case(label, params),
            condition=(
                f"p = {'+-1' if split else '+-3'} (mod 8), "
                "2k - 1 = p (mod 2p)"
            ),
            expression="-p^m" if split else "-p^(m-1)",
            value=GaussianInt(-q if split else -P),
        )

    i = label.class_index
    offset, coefficient = _CCF_UNIT_FORMS[direction][p % 8][i]
    real = _scaled(params, offset, 2, reverse=True)
    if coefficient:
        expression, value = _with_omega(params, real, coefficient)
    else:
        expression, value = real[0], GaussianInt(real[1])
    return Branch(
        rule=rule,
        case=_case(label, params),
        condition=_mod8_condition(params, "2k - 1", f"D_{i}^(2p^m)"),
        expression=expression,
        value=value,
    )


def predict_cross_ccf(direction, k, params) -> GaussianInt:
    return explain_cross_ccf(direction, k, params).value


def cross_ccf_shift(direction, k, params) -> int:
    """Shift of the cross-correlation predicted by explain_cross_ccf."""
    return (k - CCF_SHIFT_OFFSET[str(direction).lower()]) % params.q


# autocorrelation of s


def explain_acf_s(tau, params) -> Branch:
    """Closed form of the autocorrelation of s at shift tau.

    Parameters
    ----------
    tau: int
        Shift in Z_{2p^m}.
    params: PrimePowerParams

    Returns
    -------
    branch: Branch
    """
    p, q, P, N = params.p, params.q, params.P, params.N
    rule = "acf_s"
    tau = tau % N
    if tau == 0:
        return _peak(rule, GaussianInt(N), params)

    label = fast_class(tau, params)
    case = _case(label, params)
    p8 = p % 8
    if label == ResidueLabel.ZERO_MOD_2P:
        return Branch(
            rule=rule,
            case=case,
            condition="tau = 0 (mod 2p)",
            expression="2p^m",
            value=GaussianInt(2 * q),
        )
    if label == ResidueLabel.P_MOD_2P:
        split = p8 in (1, 7)
        return Branch(
            rule=rule,
            case=case,
            condition=(
                f"p = {'+-1' if split else '+-3'} (mod 8), tau = p (mod 2p)"
            ),
            expression="-2p^m" if split else "-2p^(m-1)",
            value=GaussianInt(-2 * q if split else -2 * P),
        )

    j = label.class_index
    sign = 1 if j == 0 else -1
    if label.is_two_unit:
        where = f"2D_{j}^(p^m)"
        if p8 == 1:
            expression, re = _scaled(params, -7 if j == 0 else -3, 1)
            value = GaussianInt(re)
        elif p8 == 7:
            expression, value = _with_omega(
                params, _scaled(params, -5, 1), 4 * sign
            )
        else:
            expression, re = _scaled(params, -5, 1)
            value = GaussianInt(re)
    else:
        where = f"D_{j}^(2p^m)"
        if p8 == 1:
            expression, re = _scaled(
                params, 7 if j == 0 else 3, 1, reverse=True
            )
            value = GaussianInt(re)
        elif p8 == 7:
            expression, value = _with_omega(
                params, _scaled(params, 5, 1, reverse=True), -4 * sign
            )
        else:
            expression, re = _scaled(params, 3, 1, reverse=True)
            value = GaussianInt(re)

    return Branch(
        rule=rule,
        case=case,
        condition=_mod8_condition(params, "tau", where),
        expression=expression.replace("/1", ""),
        value=value,
    )


def predict_acf_s(tau, params) -> GaussianInt:
    return explain_acf_s(tau, params).value


# decomposition of the autocorrelation of s


class ComponentProfiles(NamedTuple):
    acf_s1: CorrelationProfile
    acf_s2: CorrelationProfile
    ccf_s1s2: CorrelationProfile
    ccf_s2s1: CorrelationProfile


def component_profiles(params, **kwargs) -> ComponentProfiles:
    """Brute-force auto and cross-correlations of s1 and s2.

    Keyword arguments are forwarded to cross_correlation.
    """
    s1, s2 = build_s1(params), build_s2(params)
    return ComponentProfiles(
        acf_s1=autocorrelation(s1, **kwargs),
        acf_s2=autocorrelation(s2, **kwargs),
        ccf_s1s2=cross_correlation(s1, s2, **kwargs),
        ccf_s2s1=cross_correlation(s2, s1, **kwargs),
    )


def decompose_acf(tau, params, profiles=None) -> GaussianInt:
    """Autocorrelation of s at tau, assembled from s1 and s2.

    C_s(2k) = C_{s1}(k) + C_{s2}(k) and
    C_s(2k - 1) = C_{s2,s1}(k - 1) + C_{s1,s2}(k).
    """
    if profiles is None:
        profiles = component_profiles(params)
    tau = tau % params.N
    if tau % 2 == 0:
        k = tau // 2
        return profiles.acf_s1[k] + profiles.acf_s2[k]
    k = (tau + 1) // 2
    return profiles.ccf_s2s1[k - 1] + profiles.ccf_s1s2[k]


# annotations


def explain_profile(a, b, params) -> List[Branch]:
    """Branch predicting each shift of the correlation of a with b.

    Parameters
    ----------
    a: SequenceKind or str
    b: SequenceKind or str
    params: PrimePowerParams

    Returns
    -------
    branches: list of Branch
        One per shift of the correlation period.
    """
    a, b = SequenceKind(a), SequenceKind(b)
    q = params.q
    if a == b == SequenceKind.S:
        return [explain_acf_s(tau, params) for tau in range(params.N)]
    if a == b and a in (SequenceKind.S1, SequenceKind.S2):
        return [explain_component_acf(a.value, k, params) for k in range(q)]
    if {a, b} == {SequenceKind.S1, SequenceKind.S2}:
        direction = f"{a}{b}"
        offset = CCF_SHIFT_OFFSET[direction]
        return [
            explain_cross_ccf(direction, k + offset, params)
            for k in range(q)
        ]
    if a.is_binary and b.is_binary:
        kind = a.value if a == b else f"{a}{b}"
        return [explain_binary_correlation(kind, k, params) for k in range(q)]
    raise ValueError(f"No closed form for the correlation of {a} with {b}")


# published values, used to report which of them brute force fits


def printed_value_pool(rule, params) -> Dict[str, Value]:
    """Every value the published statements and proofs give for rule."""
    q, P = params.q, params.P
    if rule in ("d_uv", "d_vu"):
        pool = dict(_scaled(params, offset, 4) for offset in (3, -1, 1, -3))
        pool.update(
            {
                "p^m": q,
                "p^(m-1)": P,
                "0": 0,
                "p^(m-1)(p-1)/2": P * (params.p - 1) // 2,
            }
        )
        return pool
    if rule == "d_v_unit_part":
        return {
            f"({i}, {j})_{{p^m}}": cyclotomic_number_cf(i, j, params)
            for i in (0, 1)
            for j in (0, 1)
        }
    if rule == "acf_s1":
        real, re = _scaled(params, -5, 2)
        pool = {}
        for sign in (1, -1):
            symbol = "+" if sign > 0 else "-"
            pool[f"{real} {symbol} 2w"] = GaussianInt(re, 2 * sign)
            pool[f"{real} {symbol} 2p^(m-1)w"] = GaussianInt(re, 2 * sign * P)
        return pool
    raise ValueError(f"No published value pool for {rule!r}")


def fitting_values(rule, values, params) -> List[str]:
    """Names of the published values equal to every one of values."""
    values = list(values)
    return [
        name
        for name, candidate in printed_value_pool(rule, params).items()
        if values and all(v == candidate for v in values)
    ]


def consistency_mismatches(params: PrimePowerParams) -> List[int]:
    """Shifts where the closed forms of s disagree with those of s1, s2.

    Even shifts are compared with the sum of the autocorrelations of s1
    and s2, odd shifts with the sum of both cross-correlations.
    """
    mismatches = []
    for tau in range(1, params.N):
        if tau % 2 == 0:
            k = tau // 2
            combined = predict_component_acf(
                "s1", k, params
            ) + predict_component_acf("s2", k, params)
        else:
            k = (tau + 1) // 2
            combined = predict_cross_ccf(
                "s2s1", k, params
            ) + predict_cross_ccf("s1s2", k, params)
        if combined != predict_acf_s(tau, params):
            mismatches.append(tau)
    return mismatches
