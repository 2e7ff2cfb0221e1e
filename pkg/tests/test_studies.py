"""Study driver: sweeps, CSV output, SVG plots, and spectrum tables."""

import logging
import math
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from srdpeig.mesh import build_mesh, dof_totals
from srdpeig.eigensolve import InsufficientSpectrum
from srdpeig.studies import (
    CSV_HEADER,
    StudyRow,
    StudySpec,
    TARGET_PRESETS,
    exact_square_spectrum,
    plot_convergence,
    read_csv,
    resolve_target,
    run_study,
    spectrum_report,
    write_csv,
)

TWO_PI_SQ = 2 * math.pi**2


class TestTargets:
    def test_presets(self):
        assert resolve_target("two_pi_sq") == TWO_PI_SQ
        assert resolve_target("lshape_neumann_1") == 1.4756218450
        assert resolve_target("lshape_neumann_4") == 11.389479398

    def test_float_literal(self):
        assert resolve_target("19.5") == 19.5
        assert resolve_target(7) == 7.0

    def test_unknown(self):
        with pytest.raises(ValueError):
            resolve_target("first_eigenvalue")


class TestExactSpectrum:
    def test_neumann_head(self):
        got = exact_square_spectrum("neumann", 9) / math.pi**2
        assert np.allclose(got, [0, 1, 1, 2, 4, 4, 5, 5, 8])

    def test_dirichlet_head(self):
        got = exact_square_spectrum("dirichlet", 8) / math.pi**2
        assert np.allclose(got, [2, 5, 5, 8, 10, 10, 13, 13])

    def test_long_list_is_sorted_and_complete(self):
        got = exact_square_spectrum("dirichlet", 300)
        assert len(got) == 300
        assert (np.diff(got) >= 0).all()


class TestRunStudy:
    def test_p_sweep_cardinality(self):
        spec = StudySpec(
            domain="square",
            bc="neumann",
            families=("tensor", "serendipity"),
            target=TWO_PI_SQ,
            sweep="p",
            fixed=2,
        )
        rows = run_study(spec)
        assert len(rows) == 12
        assert [r.family for r in rows[:6]] == ["tensor"] * 6
        assert [r.p for r in rows[:6]] == [1, 2, 3, 4, 5, 6]
        assert all(r.N == 2 for r in rows)

    def test_ndofs_match_closed_form(self):
        spec = StudySpec(
            domain="lshape",
            bc="neumann",
            families=("serendipity",),
            target=TWO_PI_SQ,
            sweep="p",
            fixed=1,
        )
        for row in run_study(spec):
            mesh = build_mesh("lshape", row.N)
            assert row.ndofs == dof_totals(mesh, row.family, row.p)

    def test_serendipity_needs_fewer_dofs(self):
        spec = StudySpec(
            domain="square",
            bc="neumann",
            families=("tensor", "serendipity"),
            target=TWO_PI_SQ,
            sweep="p",
            fixed=2,
        )
        rows = run_study(spec)
        tensor = {r.p: r.ndofs for r in rows if r.family == "tensor"}
        ser = {r.p: r.ndofs for r in rows if r.family == "serendipity"}
        assert tensor[1] == ser[1]
        for p in range(2, 7):
            assert ser[p] < tensor[p]

    def test_large_mesh_dof_ratio(self):
        # at p = 6 the per-element ratio is 30/49; globally the shared
        # entities push the ratio below 0.55 already at N = 5
        mesh = build_mesh("square", 5)
        ratio = dof_totals(mesh, "serendipity", 6) / dof_totals(mesh, "tensor", 6)
        assert ratio == 486 / 961
        assert ratio < 0.55

    def test_degenerate_dirichlet_skipped_with_notice(self, caplog):
        spec = StudySpec(
            domain="square",
            bc="dirichlet",
            families=("tensor",),
            target=TWO_PI_SQ,
            sweep="h",
            fixed=1,
        )
        with caplog.at_level(logging.WARNING, logger="srdpeig.studies"):
            rows = run_study(spec)
        assert [r.N for r in rows] == [2, 3, 4, 5]  # N = 1 has no free DOFs
        assert any("skipping degenerate case" in rec.message for rec in caplog.records)

    def test_error_column_nonnegative_and_consistent(self):
        spec = StudySpec(
            domain="square",
            bc="dirichlet",
            families=("serendipity",),
            target=TWO_PI_SQ,
            sweep="h",
            fixed=2,
        )
        for row in run_study(spec):
            assert row.error == abs(row.lambda_h - TWO_PI_SQ) >= 0.0

    def test_invalid_specs_rejected(self):
        with pytest.raises(ValueError):
            StudySpec("square", "neumann", ("tensor",), 1.0, "p", 9)
        with pytest.raises(ValueError):
            StudySpec("square", "neumann", ("tensor",), 1.0, "x", 2)
        with pytest.raises(ValueError):
            StudySpec("disc", "neumann", ("tensor",), 1.0, "p", 2)


class TestCsv:
    def test_empty_rows_header_only(self, tmp_path):
        path = tmp_path / "empty.csv"
        write_csv([], path)
        assert path.read_text() == CSV_HEADER + "\n"

    def test_single_row_two_lines(self, tmp_path):
        path = tmp_path / "one.csv"
        write_csv([StudyRow("tensor", 2, 3, 49, 19.75, 0.01)], path)
        assert len(path.read_text().splitlines()) == 2

    def test_roundtrip_exact(self, tmp_path):
        rows = [
            StudyRow("tensor", 3, 4, 169, 19.739253645081587, 4.4980e-05),
            StudyRow("serendipity", 5, 4, 233, 19.739208910196313, 1.0812e-07),
        ]
        path = tmp_path / "rt.csv"
        write_csv(rows, path)
        assert read_csv(path) == rows

    def test_byte_determinism(self, tmp_path):
        spec = StudySpec(
            domain="square",
            bc="neumann",
            families=("serendipity",),
            target=TWO_PI_SQ,
            sweep="p",
            fixed=1,
            deterministic=True,
        )
        rows = run_study(spec)
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        write_csv(rows, a)
        write_csv(run_study(spec), b)
        assert a.read_bytes() == b.read_bytes()


def _svg_counts(path) -> tuple[int, int]:
    tree = ET.parse(path)
    ns = "{http://www.w3.org/2000/svg}"
    polylines = tree.findall(f".//{ns}polyline")
    circles = tree.findall(f".//{ns}circle")
    return len(polylines), len(circles)


class TestPlot:
    def test_two_families_structure(self, tmp_path):
        rows = [
            StudyRow("tensor", p, 2, 10 * p, 20.0, 10.0 ** (-p)) for p in range(1, 7)
        ] + [
            StudyRow("serendipity", p, 2, 8 * p, 20.0, 10.0 ** (-p)) for p in range(1, 7)
        ]
        path = tmp_path / "chart.svg"
        plot_convergence(rows, path)
        polylines, circles = _svg_counts(path)
        assert polylines == 2
        assert circles == 12

    def test_single_row_marker_only(self, tmp_path):
        path = tmp_path / "single.svg"
        plot_convergence([StudyRow("tensor", 1, 2, 9, 24.0, 4.26)], path)
        polylines, circles = _svg_counts(path)
        assert polylines == 0
        assert circles == 1

    def test_zero_error_clamped(self, tmp_path):
        path = tmp_path / "clamp.svg"
        plot_convergence(
            [
                StudyRow("tensor", 1, 2, 9, 24.0, 0.0),
                StudyRow("tensor", 2, 2, 25, 20.0, 1e-2),
            ],
            path,
        )
        text = path.read_text()
        assert "nan" not in text and "inf" not in text

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(ValueError):
            plot_convergence([], tmp_path / "never.svg")


class TestSpectrumReport:
    def test_neumann_low_indices(self):
        rows = spectrum_report("square", "neumann", 2, 2, 5)
        assert rows[0].exact == 0.0
        assert abs(rows[0].computed["tensor"]) < 1e-9
        assert abs(rows[0].computed["serendipity"]) < 1e-9
        assert rows[1].exact == rows[2].exact == pytest.approx(math.pi**2)

    def test_families_nearly_equal_at_low_indices(self):
        rows = spectrum_report("square", "neumann", 3, 5, 12)
        for row in rows[1:]:
            gap = abs(row.computed["tensor"] - row.computed["serendipity"])
            assert gap <= 1e-3 * row.exact

    def test_insufficient(self):
        with pytest.raises(InsufficientSpectrum):
            spectrum_report("square", "neumann", 1, 1, 10)

    def test_lshape_rejected(self):
        with pytest.raises(ValueError):
            spectrum_report("lshape", "neumann", 2, 2, 4)
