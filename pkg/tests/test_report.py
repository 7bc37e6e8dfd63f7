import csv
import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from summa_lab.errors import DomainError, SummaError
from summa_lab.report import ResidualReport, TruncationSpec, fmt, read_csv, report_write, to_csv, to_json


def rows():
    t = TruncationSpec(K_zeros=10, K_trivial=5)
    return [
        ResidualReport.build("alpha", {"x": 2.5}, 0.1, 0.3, t),
        ResidualReport.build("beta", {"x": 10.0, "w": 1.0}, 1 / 3, 2 / 3, status="finding"),
    ]


def test_residual_is_lhs_minus_rhs():
    r = ResidualReport.build("a", {}, 0.1, 0.3)
    assert r.residual == 0.1 - 0.3


def test_csv_columns_and_order():
    text = to_csv(rows())
    header = text.splitlines()[0].split(",")
    assert header == ["identifier", "x", "w", "lhs", "rhs", "residual", "K_zeros", "K_trivial", "N_terms", "status"]
    first = next(csv.DictReader(text.splitlines()))
    assert first["w"] == "" and first["K_zeros"] == "10"


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_fmt_round_trips(x):
    assert float(fmt(x)) == x


def test_fmt_specials():
    assert fmt(math.inf) == "inf" and fmt(-math.inf) == "-inf" and fmt(math.nan) == "nan"


def test_csv_json_cross_parse(tmp_path):
    rs = rows()
    report_write(rs, "csv", tmp_path / "r.csv")
    report_write(rs, "json", tmp_path / "r.json")
    from_csv = read_csv(tmp_path / "r.csv")
    from_json = json.loads((tmp_path / "r.json").read_text())
    for c, j in zip(from_csv, from_json):
        for key in ("lhs", "rhs", "residual"):
            assert c[key] == j[key]
        assert c["identifier"] == j["identifier"] and c["status"] == j["status"]


def test_byte_identical(tmp_path):
    report_write(rows(), "csv", tmp_path / "a.csv")
    report_write(rows(), "csv", tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()
    assert to_json(rows()) == to_json(rows())


def test_write_errors(tmp_path):
    with pytest.raises(SummaError):
        report_write([], "csv", tmp_path / "x.csv")
    with pytest.raises(DomainError):
        report_write(rows(), "xml", tmp_path / "x.xml")
    bad = tmp_path / "missing" / "dir" / "x.csv"
    with pytest.raises(SummaError, match="missing"):
        report_write(rows(), "csv", bad)


def test_validation():
    with pytest.raises(DomainError):
        ResidualReport.build("a", {}, 0, 0, status="great")
    with pytest.raises(DomainError):
        TruncationSpec(K_zeros=-1)
    with pytest.raises(DomainError):
        TruncationSpec(N_terms=0)
    assert rows()[0].with_status("fail").status == "fail"
