import pytest

import toricfs


def test_check_split_tangent_plane():
    doc = toricfs.check_split("P2", "tangent", p=2)
    assert doc["decision"] == "SPLIT"
    assert doc["criterion"] == "all"
    assert len(doc["reports"]) == 3
    assert {r["criterion"] for r in doc["reports"]} == {"1", "2", "A"}


def test_check_split_single_criterion_witness():
    doc = toricfs.check_split("P2", "tangent", p=3, criterion="2")
    assert doc["decision"] == "SPLIT"
    assert doc["witness"]["type"] == "eigen_monomial"
    assert doc["witness"]["chart_values_verified"] is True


def test_not_split_bundle_document():
    full = [[1, 0], [0, 1]]
    lines = [[[1, 0]], [[0, 1]], [[1, 1]]]
    bundle = {
        "rank": 2,
        "field": {"p": 2, "d": 1},
        "filtrations": [
            {"ray": r, "jumps": [{"i": 0, "basis": full}, {"i": 2, "basis": lines[r]}]}
            for r in range(3)
        ],
    }
    doc = toricfs.check_split("P2", bundle, p=2, criterion="2")
    assert doc["decision"] == "NOT_SPLIT"
    assert doc["diagnostics"]["weight_mu_dim"] == 0


def test_klyachko_info_defaults():
    doc = toricfs.klyachko_info("P2", "tangent")
    assert doc["rank"] == 2
    assert doc["klyachko_length"] == 1
    assert doc["fan"]["complete"] is True
    assert len(doc["rays"]) == 3


def test_sections_counts():
    assert toricfs.sections("P2", "line:[1,1,1]")["h0"] == 10
    assert toricfs.sections("P2", "tangent", p=3)["h0"] == 8


def test_sections_charts():
    doc = toricfs.sections("P1", "line:[2,0]", charts=True)
    assert doc["h0"] == 3
    chi = doc["characters"][0]
    assert "basis" in chi and chi["basis"][0]["charts"]


def test_custom_fan_document():
    fan = {"rank": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]}
    doc = toricfs.sections(fan, "line:[3,0]")
    assert doc["h0"] == 4


def test_cocycle_holds():
    doc = toricfs.cocycle("P1xP1", "tangent", p=2)
    assert doc["holds"] is True


def test_fixtures_count():
    doc = toricfs.fixtures(p=3)
    assert doc["count"] == 64
    names = {f["name"] for f in doc["fixtures"]}
    assert "P2/tangent" in names
    assert "P1/O+O(2D0-D1)" in names


def test_builtin_fans():
    names = toricfs.builtin_fans()
    assert "P2" in names and "P1xP1" in names


def test_input_errors_raise():
    with pytest.raises(ValueError):
        toricfs.check_split("P9", "tangent", p=2)
    with pytest.raises(ValueError):
        toricfs.check_split("P2", "tangent", p=2, criterion="Z")
    with pytest.raises(ValueError):
        toricfs.klyachko_info("P2", "line:[1,2]")
