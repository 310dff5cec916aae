import json

import pytest

from quatcyc.number_theory import make_params
from quatcyc.verification import (
    LEMMA_CHECKS,
    InstanceData,
    default_grid,
    omega_convention,
    run_suite,
    summary_by_p_mod_8,
    translation_samples,
    verify_entry,
    verify_lemma,
    verify_structural,
    verify_theorem16,
)

instances = [(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (17, 1), (3, 2)]


@pytest.mark.parametrize("p,m", instances)
def test_lemmas(p, m):
    params = make_params(p, m)
    data = InstanceData(params, device="cpu")
    for lemma_id, check_ids in LEMMA_CHECKS.items():
        section = verify_lemma(lemma_id, params, data=data)
        assert [c.id for c in section.checks] == list(check_ids)
        assert section.passed, section.to_dict()
        assert all(c.cases > 0 for c in section.checks)


def test_lemma_examples(params_3_2, params_5_1):
    section = verify_lemma(6, make_params(13, 1))
    check = section.check("cyclotomic_numbers")
    assert check.cases == 4
    assert check.passed

    section = verify_lemma(11, params_5_1, device="cpu")
    assert section.check("decomposition").cases == 10

    # -1 is a non-residue modulo 3^k at every level
    section = verify_lemma(5, params_3_2)
    assert section.check("minus_one_class").detail == {
        "level_1": 1,
        "level_2": 1,
    }

    # 2 units modulo 3 and 6 modulo 9
    section = verify_lemma(1, params_3_2)
    assert section.check("unit_class_lifting").cases == 8
    assert section.passed

    section = verify_lemma(2, params_5_1)
    assert section.passed

    with pytest.raises(ValueError, match=r"lemma_id must lie in \[1, 15\].*"):
        verify_lemma(16, params_5_1)
    with pytest.raises(KeyError):
        section.check("acf_s")


def test_translation_samples():
    assert translation_samples(5) == [-11, -1, 1, 3, 11]
    assert all(t % 2 == 1 for t in translation_samples(7))


@pytest.mark.parametrize("p,m", [(3, 1), (5, 1), (7, 1), (3, 2), (5, 2)])
def test_theorem16(p, m):
    params = make_params(p, m)
    section = verify_theorem16(params, device="cpu")
    check = section.check("acf_s")
    assert check.passed
    assert check.cases == params.N
    assert check.detail["omega"]["+i"]
    assert check.detail["p_mod_8"] == p % 8
    # values with an imaginary part only occur for p = 7 (mod 8)
    assert check.detail["omega"]["-i"] == (p % 8 != 7)
    assert (check.detail["imaginary_cases"] > 0) == (p % 8 == 7)


@pytest.mark.parametrize("p,m", instances)
def test_structural(p, m):
    params = make_params(p, m)
    section = verify_structural(params, device="cpu")
    assert section.passed, section.to_dict()
    ids = [c.id for c in section.checks]
    for check_id in [
        "label_partition",
        "fast_class",
        "level_partition",
        "class_sizes",
        "primitive_root_independence",
        "interleaving",
        "unit_relations",
        "difference_identities",
        "conjugate_symmetry",
        "balance",
        "symbol_counts",
        "distinct_magnitudes",
        "closed_form_consistency",
        "corr_u",
        "corr_v",
        "corr_uv",
        "corr_vu",
    ]:
        assert check_id in ids


def test_structural_details(params_3_2, params_5_1):
    section = verify_structural(params_5_1, device="cpu")
    # sum and symmetry for 4 kinds at 5 shifts
    assert section.check("difference_identities").cases == 40
    assert section.check("balance").detail == {
        "counts": {0: 3, 1: 2, 2: 3, 3: 2},
        "balanced": True,
    }
    assert section.check("distinct_magnitudes").detail == {
        "squared_magnitudes": [0, 4, 100]
    }
    assert section.check("primitive_root_independence").detail == {
        "g": 3,
        "other_g": 7,
    }

    section = verify_structural(make_params(3, 1), device="cpu")
    check = section.check("primitive_root_independence")
    assert check.cases == 0
    assert "skipped" in check.detail

    section = verify_structural(params_3_2, device="cpu")
    assert not section.check("balance").detail["balanced"]
    assert section.check("balance").passed


def test_default_grid():
    grid = default_grid()
    assert len(grid) == 31
    assert grid[:4] == [(3, 1), (3, 2), (3, 3), (3, 4)]
    assert (31, 2) in grid and (31, 3) not in grid
    assert all(2 * p**m <= 5000 for p, m in grid)
    assert default_grid(max_n=20, max_p=7) == [(3, 1), (3, 2), (5, 1), (7, 1)]


def test_run_suite():
    report = run_suite([(3, 2)], device="cpu")
    assert report.passed
    assert report.grid == [[3, 2]]
    assert len(report.entries) == 1

    entry = report.entries[0]
    assert (entry.p, entry.m, entry.g) == (3, 2, 5)
    checks = {t.check for t in report.typo_resolutions}
    assert {"d_v_unit_part", "d_uv", "acf_s1"} <= checks

    resolution = next(
        t for t in report.typo_resolutions if t.check == "acf_s1"
    )
    assert resolution.printed.endswith("2w")
    assert resolution.resolved.endswith("2p^(m-1)w")
    assert resolution.fits
    assert all(f.endswith("2p^(m-1)w") for f in resolution.fits)

    resolution = next(
        t for t in report.typo_resolutions if t.check == "d_uv"
    )
    assert "2t - 2" in resolution.printed
    assert "2t - 1" in resolution.resolved


def test_run_suite_json_is_deterministic():
    grid = [(5, 1), (3, 1)]
    first = run_suite(grid, device="cpu").to_json()
    second = run_suite(list(reversed(grid)), device="cpu").to_json()
    assert first == second

    document = json.loads(first)
    assert document["grid"] == [[3, 1], [5, 1]]
    assert document["pass"]
    assert document["omega_convention"] == "either"
    assert set(document["summary_by_p_mod_8"]) == {"3", "5"}
    assert [e["p"] for e in document["entries"]] == [3, 5]


def test_omega_convention():
    report = run_suite([(7, 1), (3, 1)], device="cpu")
    assert report.omega_convention == "+i"
    assert omega_convention(report.entries) == "+i"

    summary = summary_by_p_mod_8(report.entries)
    assert list(summary) == [3, 7]
    assert summary[7] == {"entries": 1, "cases": 14, "mismatches": 0}


def test_run_suite_rejects_invalid_grids():
    with pytest.raises(ValueError, match=r"Invalid grid entries:\n\(9, 1\).*"):
        run_suite([(9, 1)])
    with pytest.raises(ValueError, match=r".*\(3, 0\): m must be.*"):
        run_suite([(3, 1), (3, 0)])
    with pytest.raises(ValueError, match=r".*\(7, 3\): period 686.*"):
        run_suite([(7, 3)], max_n=500)
    with pytest.raises(ValueError, match=r"Grid is empty.*"):
        run_suite([])


def test_verify_entry_parallel():
    params = make_params(5, 1)
    sequential = verify_entry(params, device="cpu")
    threaded = verify_entry(params, n_jobs=2, device="cpu")
    assert sequential.to_dict() == threaded.to_dict()
