import csv
import io
import json
import math

import pytest

from fracbern.cli import main

FREE_POINT = math.sqrt(1 - 8 / math.pi**2)


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_constant():
    code, text = run("constant", "one-free", "--alpha", "1", "--center", "0", "--radius", "1")
    assert code == 0
    (record,) = rows(text)
    assert float(record["constant"]) == pytest.approx(2 * math.sqrt(2) / math.pi, abs=1e-8)
    assert float(record["argmin"]) == pytest.approx(0.5, abs=1e-7)


def test_constant_verify_json():
    code, text = run("constant", "one-free", "--radius", "4", "--verify", "--format", "json")
    assert code == 0
    document = json.loads(text)
    assert document["meta"]["command"] == "constant"
    assert document["meta"]["problem"] == "one-free"
    assert document["meta"]["domain_radius"] == 4.0
    (record,) = document["data"]
    assert record["exact"] == pytest.approx(math.sqrt(2) / math.pi)
    assert record["error"] < 1e-8


def test_curve():
    code, text = run("curve", "one-free", "--grid", "16")
    assert code == 0
    assert text.splitlines()[0] == "a,value"
    samples = rows(text)
    assert len(samples) == 16
    assert float(samples[0]["a"]) == pytest.approx(1 / 17)

    # the same run gives the same bytes
    assert run("curve", "one-free", "--grid", "16")[1] == text


def test_curve_small_alpha():
    code, text = run("curve", "one-free", "--alpha", "0.05", "--grid", "16")
    assert code == 0
    samples = rows(text)
    assert len(samples) == 16
    assert all(float(s["value"]) > 0 for s in samples)


@pytest.mark.slow
def test_curve_two_free():
    code, text = run("curve", "two-free", "--alpha", "1", "--grid", "16")
    assert code == 0
    samples = rows(text)
    assert len(samples) == 16
    assert all(0.7957 < float(s["value"]) for s in samples)


def test_curve_plot(tmp_path):
    path = tmp_path / "plots" / "rate.svg"
    code, _ = run("curve", "one-free", "--grid", "16", "--plot", str(path))
    assert code == 0
    assert "<svg" in path.read_text()


def test_solve():
    code, text = run("solve", "one-free", "--lambda", "1")
    assert code == 0
    assert text.splitlines()[0] == "solution_index,free_point,k_lo,k_hi,level"
    records = rows(text)
    assert [r["solution_index"] for r in records] == ["0", "1"]
    points = [float(r["free_point"]) for r in records]
    assert points == pytest.approx([-FREE_POINT, FREE_POINT], abs=1e-7)
    assert all(float(r["k_hi"]) == 1.0 for r in records)


def test_solve_below_constant():
    code, text = run("solve", "one-free", "--lambda", "0.5")
    assert code == 0
    assert text == "solution_index,free_point,k_lo,k_hi,level\n"


def test_profile_json():
    code, text = run("profile", "one-free", "--lambda", "1", "--format", "json")
    assert code == 0
    document = json.loads(text)
    assert document["meta"]["lambda"] == 1.0
    indices = {r["solution_index"] for r in document["data"]}
    assert indices == {0, 1}
    assert all(0 <= r["u"] <= 1 for r in document["data"])
    assert all(r["x"] != 1.0 for r in document["data"])


def test_bounds():
    code, text = run("bounds", "--alpha", "1")
    assert code == 0
    (record,) = rows(text)
    assert float(record["lower"]) == pytest.approx(0.7957747, abs=1e-7)
    assert float(record["upper"]) == pytest.approx(1.1253954, abs=1e-7)


def test_proofcheck():
    code, text = run("proofcheck", "--grid", "100")
    assert code == 0
    document = json.loads(text)
    assert document["meta"]["command"] == "proofcheck"
    report = document["data"]
    assert report["conclusion_holds"] is True
    assert report["f1_infimum_estimate"] >= 1.1582 - 1e-3
    assert report["f2_at_034"] < 1.03


@pytest.mark.parametrize(
    "argv",
    [
        ("constant", "one-free", "--alpha", "2.5"),
        ("constant", "one-free", "--radius", "0"),
        ("constant", "three-free"),
        ("solve", "one-free"),
        ("solve", "one-free", "--lambda", "-1"),
        ("curve", "one-free", "--grid", "4"),
        ("proofcheck", "--grid", "50"),
        ("integrate",),
        (),
    ],
)
def test_invalid_input(argv):
    assert run(*argv)[0] == 2


def test_accuracy_failure():
    assert run("profile", "one-free", "--lambda", "1", "--quad-tol", "1e-300")[0] == 3


def test_config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("# settings\nalpha = 1\nradius = 4\n")
    code, text = run("constant", "one-free", "--config", str(path))
    assert code == 0
    assert float(rows(text)[0]["constant"]) == pytest.approx(math.sqrt(2) / math.pi, abs=1e-8)

    # flags win over the file
    code, text = run("constant", "one-free", "--config", str(path), "--radius", "1")
    assert float(rows(text)[0]["constant"]) == pytest.approx(2 * math.sqrt(2) / math.pi, abs=1e-8)


def test_yaml_config(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("alpha: 1.0\ncenter: 2\nradius: 1\nformat: json\n")
    code, text = run("solve", "one-free", "--lambda", "1", "--config", str(path))
    assert code == 0
    document = json.loads(text)
    assert document["meta"]["domain_center"] == 2.0
    points = [r["free_point"] for r in document["data"]]
    assert points == pytest.approx([2 - FREE_POINT, 2 + FREE_POINT], abs=1e-7)


def test_bad_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text("colour = red\n")
    assert run("bounds", "--config", str(path))[0] == 2
    assert run("bounds", "--config", str(tmp_path / "missing.cfg"))[0] == 2


def test_threads_env(monkeypatch):
    monkeypatch.setenv("FRACBERN_THREADS", "2")
    code, text = run("bounds", "--format", "json")
    assert code == 0
    assert json.loads(text)["meta"]["threads"] == 2

    code, text = run("bounds", "--format", "json", "--threads", "1")
    assert json.loads(text)["meta"]["threads"] == 1

    monkeypatch.setenv("FRACBERN_THREADS", "many")
    assert run("bounds")[0] == 2
