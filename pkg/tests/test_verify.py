from __future__ import annotations

import json

import agkit.algebra
from agkit.verify import load_expectations, verify_paper


def test_full_run_has_zero_mismatches():
    report = verify_paper()
    assert report.ok, [r.id for r in report.failures()]
    assert len(report.records) > 200


def test_report_round_trips_through_canonical_json():
    report = verify_paper()
    text = report.to_json()
    payload = json.loads(text)
    assert json.dumps(payload, sort_keys=True, indent=2) + "\n" == text
    assert payload["schema"] == 1
    ids = [r["id"] for r in payload["records"]]
    assert len(ids) == len(set(ids))


def test_expectations_file_is_versioned():
    expect = load_expectations()
    assert expect["version"] == 1
    assert set(expect["ap"]["expected"]) == {
        "BA", "RDBLST", "RKLST", "DMBA", "G", "V_DBLST_DMBA", "V_KLST_DMBA", "AG"}


def test_tampered_builtin_flips_multiple_records(monkeypatch):
    # turn the quote row of 3_dblst into the Kleene one (a' = a)
    tampered = dict(agkit.algebra.BUILTIN_SPECS["3_dblst"])
    tampered["quote"] = (2, 1, 0)
    monkeypatch.setitem(agkit.algebra.BUILTIN_SPECS, "3_dblst", tampered)

    report = verify_paper()
    flipped = {r.id for r in report.failures()}
    assert len(flipped) >= 3
    # the axiom grid, the base matrix, and the AP table all notice
    assert any(r.startswith("axioms/3_dblst/") for r in flipped)
    assert any(r.startswith("base_matrix/3_dblst/") for r in flipped)
    assert "ap/G" in flipped
