"""명령줄 하위 명령과 종료 코드 테스트"""

import csv
import math

import pytest

from uniasym.cli import build_parser, main

SERIES_CONFIG = [
    "system.kind = series",
    "system.theta = 1",
    "system.alpha = -1, 0.5",
    "system.beta = 2, 0, -0.25",
    "grid.points = 0.3, 0.5, 0.7",
    "run.n_list = 200",
    "run.order = 1",
]


def write_config(tmp_path, lines, name="run.cfg"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return str(path)


def read_rows(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_frame_default_laguerre(frame_cache, tmp_path):
    out = tmp_path / "frame.csv"
    assert main(["frame", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 1
    assert float(rows[0]["tau0"]) == 0.5
    assert float(rows[0]["t2"]) == 4.0
    assert float(rows[0]["nu"]) == 0.0
    assert float(rows[0]["sigma"]) == pytest.approx(4e-3)


def test_constant_system_is_rejected(frame_cache, tmp_path):
    config = write_config(tmp_path, ["system.kind = constant"])
    assert main(["frame", "--config", config, "--out", str(tmp_path / "x.csv")]) == 2


def test_missing_config(tmp_path):
    assert main(["frame", "--config", str(tmp_path / "absent.cfg")]) == 2


def test_invalid_config_value(tmp_path):
    config = write_config(tmp_path, ["run.order = 7"])
    assert main(["wronskian", "--config", config]) == 2


def test_bessel_selftest(tmp_path):
    out = tmp_path / "selftest.csv"
    assert main(["bessel-selftest", "--out", str(out)]) == 0
    rows = read_rows(out)
    assert rows
    assert all(row["passed"] == "True" for row in rows)


def test_wronskian_series(frame_cache, tmp_path):
    config = write_config(tmp_path, SERIES_CONFIG)
    out = tmp_path / "wronskian.csv"
    assert main(["wronskian", "--config", config, "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 3
    for row in rows:
        assert float(row["rel_dev"]) < 0.02
        assert float(row["wronskian"]) < 0.0
        assert float(row["two_over_pi"]) == pytest.approx(2.0 / math.pi)


def test_frame_cache_document(frame_cache, tmp_path):
    config = write_config(tmp_path, SERIES_CONFIG)
    cache = tmp_path / "frame.json"
    assert main(["frame", "--config", config, "--cache", str(cache), "--out", str(tmp_path / "f.csv")]) == 0
    assert cache.exists()

    frame_cache.clear()
    out = tmp_path / "wronskian.csv"
    assert main(["wronskian", "--config", config, "--cache", str(cache), "--out", str(out)]) == 0
    # 문서에서 불러온 계수는 캐시에 있고 좌표계는 새로 만들지 않습니다.
    assert not frame_cache.frames
    assert len(frame_cache.coefficients) == 1
    assert all(float(row["rel_dev"]) < 0.02 for row in read_rows(out))


def test_compare_needs_oracle(frame_cache, tmp_path):
    config = write_config(tmp_path, SERIES_CONFIG)
    assert main(["compare", "--config", config]) == 2


@pytest.mark.slow
def test_compare_laguerre(frame_cache, tmp_path):
    config = write_config(tmp_path, ["run.n_list = 100", "grid.points = 0.5, -0.5", "run.block = 4"])
    out = tmp_path / "compare.csv"
    assert main(["compare", "--config", config, "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 2
    for row in rows:
        assert float(row["rel_err"]) < 0.05
        assert float(row["abs_err"]) <= 10.0 * float(row["budget"])


@pytest.mark.slow
def test_convergence_laguerre(frame_cache, tmp_path):
    config = write_config(tmp_path, ["grid.points = 0.5"])
    out = tmp_path / "convergence.csv"
    assert main(["convergence", "--config", config, "--out", str(out)]) == 0
    rows = read_rows(out)
    assert len(rows) == 1
    assert rows[0]["verdict"] == "PASS"
    assert 0.7 <= float(rows[0]["observed_order"]) <= 1.3
