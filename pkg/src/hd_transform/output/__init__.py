"""CSV and SVG writers for run results."""

from hd_transform.output.csv_writer import render_csv, write_csv
from hd_transform.output.svg import render_svg, write_svg

__all__ = ["render_csv", "write_csv", "render_svg", "write_svg"]
