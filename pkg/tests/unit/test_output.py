from __future__ import annotations

import re

import numpy as np
import pytest

from hd_transform.output import render_csv, render_svg, write_csv, write_svg
from hd_transform.output.csv_writer import read_csv


def test_render_csv_layout():
    text = render_csv(
        {"command": "normalize", "lambda": "0.25"},
        ["x", "value"],
        [[0.0, 0.1], [1, np.float64(1.0 / 3.0)], [np.int64(2), True]],
    )
    assert text == (
        "#command=normalize\n"
        "#lambda=0.25\n"
        "x,value\n"
        "0.0,0.1\n"
        "1,0.3333333333333333\n"
        "2,True\n"
    )


@pytest.mark.parametrize(
    "metadata, rows, message",
    [
        ({"a=b": "1"}, [], "cannot be written on one line"),
        ({"note": "two\nlines"}, [], "cannot be written on one line"),
        ({}, [[1.0]], "row has 1 cells, header has 2"),
    ],
)
def test_render_csv_errors(metadata, rows, message):
    with pytest.raises(ValueError) as exc:
        render_csv(metadata, ["x", "y"], rows)
    assert message in str(exc.value)


def test_write_then_read_csv(tmp_path):
    path = tmp_path / "out" / "kernels.csv"
    values = [[0.1, 1e-17], [0.2, -3.25]]

    write_csv(path, {"command": "kernels", "info.residual": "0.002"}, ["x", "k"], values)
    metadata, header, data = read_csv(path)

    assert metadata == {"command": "kernels", "info.residual": "0.002"}
    assert header == ["x", "k"]
    np.testing.assert_array_equal(data, np.array(values))
    assert [p.name for p in path.parent.iterdir()] == ["kernels.csv"]


def test_read_csv_without_header_raises(tmp_path):
    path = tmp_path / "empty.csv"
    path.write_text("#command=normalize\n", encoding="utf-8")
    with pytest.raises(ValueError) as exc:
        read_csv(path)
    assert "has no header row" in str(exc.value)


def test_svg_has_one_polyline_per_series():
    x = np.linspace(0.0, 1.0, 5)
    text = render_svg(x, {"f": x**2, "g<h": -x}, title="a & b")

    assert text.startswith('<?xml version="1.0"')
    assert text.count("<polyline") == 2
    assert "a &amp; b" in text
    assert "g&lt;h" in text
    first = re.search(r'points="([^"]*)"', text).group(1).split()
    assert len(first) == 5


def test_svg_breaks_the_line_at_non_finite_points():
    x = [0.0, 0.25, 0.5, 0.75, 1.0]
    nan = float("nan")
    text = render_svg(x, {"f": [0.0, 1.0, nan, 1.0, 0.0], "g": [nan, 0.0, 0.5, 1.0, nan]})
    runs = [m.split() for m in re.findall(r'points="([^"]*)"', text)]
    assert [len(r) for r in runs] == [2, 2, 3]
    assert runs[0][-1].split(",")[0] == "184.00"
    assert runs[1][0].split(",")[0] == "456.00"


def test_svg_flat_series_still_renders(tmp_path):
    path = write_svg(tmp_path / "flat.svg", [0.0, 1.0], {"zero": [0.0, 0.0]})
    assert "nan" not in path.read_text(encoding="utf-8")


@pytest.mark.parametrize(
    "x, series, message",
    [
        ([0.0], {"f": [1.0]}, "at least two x values"),
        ([0.0, 1.0], {"f": [1.0, 2.0, 3.0]}, "series 'f' has shape"),
    ],
)
def test_svg_input_errors(x, series, message):
    with pytest.raises(ValueError) as exc:
        render_svg(x, series)
    assert message in str(exc.value)
