import json

import pytest

import jetvar


def test_catalog():
    names = {name for name, _ in jetvar.list_tasks()}
    assert {"projectability", "presymplectic-table", "mode-solve"} <= names


def test_empty_problem():
    out = jetvar.run("{}")
    assert out["ok"]
    assert out["csv"] == {}


def test_jacobi_poly_run():
    out = jetvar.run(json.dumps({"tasks": ["jacobi-poly degree=2"]}), seed=3)
    assert out["seed"] == 3
    assert "dimension: 90" in out["report"]
    assert len(out["csv"]) == 1


def test_failed_check_is_reported():
    out = jetvar.run(json.dumps({"tasks": ["mode-solve k=1,2,0,0 check=printed"]}))
    assert not out["ok"]


def test_spec_error():
    with pytest.raises(ValueError):
        jetvar.run('{"dimension": "four"}')


def test_direct_queries():
    assert jetvar.mode_solve([1, 2, 0, 0])["dimension"] == 4
    assert jetvar.quadratic_dimension(2) == 90
    assert jetvar.upsilon_determinant() == "81"
    assert jetvar.regularity_determinant([-1, 1, 1, 1]) == pytest.approx(3.0, rel=1e-12)
