import pytest
from fastapi.testclient import TestClient

from app import create_app
from app.core.config import settings
from app.core.errors import InvariantViolation
from app.services.code_service import CodeService

PREFIX = settings.API_V1_STR


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_css(client):
    response = client.post(f"{PREFIX}/css", json={"q": 3, "m": 4, "a": [15], "b": [16]})
    assert response.status_code == 200
    params = response.json()["params"]
    assert (params["n"], params["k"], params["d_lb"], params["q"]) == (27, 1, 11, 9)


def test_css_formula_only(client):
    body = {"q": 5, "m": 2, "t1": 3, "t2": 21, "explicit": False}
    response = client.post(f"{PREFIX}/css", json=body)
    assert response.status_code == 200
    assert response.json()["params"]["singleton_defect"] == 4


def test_css_out_of_range(client):
    response = client.post(f"{PREFIX}/css", json={"q": 3, "m": 4, "a": [2], "b": [40]})
    assert response.status_code == 400
    detail = response.json()["detail"]
    assert detail["error_type"] == "ParameterRangeError"
    assert len(detail["failures"]) == 2


def test_build(client):
    response = client.post(f"{PREFIX}/build", json={"q": 3, "m": 4, "a": [7]})
    assert response.status_code == 200
    assert response.json()["k"] == 5


def test_build_on_a_missing_curve(client):
    response = client.post(f"{PREFIX}/build", json={"q": 3, "m": 3, "a": [7]})
    assert response.status_code == 400
    assert response.json()["detail"]["error_type"] == "CurveError"


def test_invalid_body(client):
    response = client.post(f"{PREFIX}/build", json={"q": 3, "m": 4})
    assert response.status_code == 422


def test_certify(client):
    response = client.post(f"{PREFIX}/certify", json={"q": 3, "m": 2, "a": [3]})
    assert response.status_code == 200
    assert response.json()["upper"] == 12


def test_expand(client):
    response = client.post(f"{PREFIX}/expand", json={"q": 3, "m": 4, "a": [7], "b": [24]})
    assert response.status_code == 200
    assert response.json()["params"]["n"] == 54


def test_tables(client):
    response = client.get(f"{PREFIX}/tables/2")
    assert response.status_code == 200
    rows = response.json()
    assert len(rows) == 5
    assert {row["status"] for row in rows} == {"MATCH"}


def test_unknown_table(client):
    assert client.get(f"{PREFIX}/tables/7").status_code == 404


def test_tower(client):
    response = client.post(f"{PREFIX}/tower", json={"q2": 16, "levels": 3})
    assert response.status_code == 200
    assert response.json()["window"] == "1/3"


def test_tower_bad_rate(client):
    response = client.post(f"{PREFIX}/tower", json={"q2": 16, "levels": 3, "c": "x/y"})
    assert response.status_code == 422


def test_invariant_violation_is_a_server_error(client, monkeypatch):
    def broken(*args, **kwargs):
        raise InvariantViolation("css-rank", "ranks do not add up")

    monkeypatch.setattr(CodeService, "css", staticmethod(broken))
    response = client.post(f"{PREFIX}/css", json={"q": 3, "m": 4, "a": [15], "b": [16]})
    assert response.status_code == 500
    assert response.json()["detail"]["invariant"] == "css-rank"
