"""Tests for lattice sweeps and CSV output."""

import io

import numpy as np
import pytest

from pucci_liouville.classifier import OperatorKind, ProblemInstance, classify
from pucci_liouville.config import ToolkitConfig
from pucci_liouville.errors import InvalidInputError
from pucci_liouville.profiles import H1, H2
from pucci_liouville.pucci import Ellipticity
from pucci_liouville.sweep import SweepRow, parse_range, run_sweep, write_csv


def _h1_plus(q, gamma):
    return ProblemInstance(5, OperatorKind.PUCCI_PLUS, H1(q, gamma), Ellipticity(1.0, 1.0))


@pytest.mark.unit
class TestParseRange:
    def test_inclusive_bounds(self):
        np.testing.assert_allclose(parse_range("0:1:5"), [0.0, 0.25, 0.5, 0.75, 1.0])

    def test_single_point(self):
        assert parse_range("1.5:9:1").tolist() == [1.5]

    @pytest.mark.parametrize("text", ["1:2", "a:b:3", "0:1:0", "0:inf:3", "0:1:2.5", ""])
    def test_malformed(self, text):
        with pytest.raises(InvalidInputError):
            parse_range(text)


@pytest.mark.unit
class TestRunSweep:
    def test_rows_in_lattice_order(self):
        rows = run_sweep(_h1_plus, [2.0, 3.0], [1.2, 1.5])
        assert [(row.q, row.gamma) for row in rows] == [(2.0, 1.2), (2.0, 1.5), (3.0, 1.2), (3.0, 1.5)]
        assert all(row.beta == 5.0 for row in rows)

    def test_verdicts(self):
        rows = run_sweep(_h1_plus, [2.0, 3.0], [1.2, 1.5])
        by_point = {(row.q, row.gamma): row for row in rows}

        holds = by_point[(2.0, 1.2)]
        assert (holds.verdict, holds.theorem_ref) == ("holds", "h1-gradient-window")
        assert holds.witness_delta is None

        fails = by_point[(3.0, 1.5)]
        assert (fails.verdict, fails.theorem_ref) == ("fails", "h1-power-decay-witness")
        assert fails.witness_delta == 2.0
        assert fails.witness_amplitude > 0
        assert fails.residual_min is None

    def test_workers_do_not_change_rows(self):
        q_values, gamma_values = parse_range("1:6:8"), parse_range("0.5:2.5:8")
        inline = run_sweep(_h1_plus, q_values, gamma_values)
        threaded = run_sweep(_h1_plus, q_values, gamma_values, config=ToolkitConfig(sweep_workers=4))
        assert inline == threaded

    def test_verify_witnesses(self):
        rows = run_sweep(_h1_plus, parse_range("2:6:5"), parse_range("1.1:1.9:5"), verify_witnesses=True)
        fails = [row for row in rows if row.verdict == "fails"]
        assert fails
        assert all(row.residual_min is not None and row.residual_min >= -1e-12 for row in fails)
        assert all(row.residual_min is None for row in rows if row.verdict != "fails")

    def test_single_point_matches_classify(self):
        (row,) = run_sweep(_h1_plus, [3.0], [1.5])
        verdict = classify(_h1_plus(3.0, 1.5))
        assert (row.verdict, row.theorem_ref) == (verdict.outcome.value, verdict.theorem_ref.value)
        assert row.witness_delta == verdict.witness.chosen_delta
        assert row.witness_amplitude == verdict.witness.chosen_amplitude

    def test_h2_lattice_boundary(self):
        def h2_plus(q, gamma):
            return ProblemInstance(4, OperatorKind.PUCCI_PLUS, H2(q, gamma), Ellipticity(1.0, 1.0))

        rows = run_sweep(h2_plus, parse_range("0:3:20"), parse_range("1.05:3:20"))
        for row in rows:
            expected = "fails" if 2 * row.q + 3 * row.gamma > 4 else "conjectured"
            assert row.verdict == expected

    def test_empty_lattice(self):
        with pytest.raises(InvalidInputError):
            run_sweep(_h1_plus, [], [1.2])

    def test_progress_bar_on_stderr(self, capsys):
        run_sweep(_h1_plus, [2.0], [1.2], config=ToolkitConfig(show_progress=True))
        captured = capsys.readouterr()
        assert captured.out == ""
        assert "Sweep" in captured.err


@pytest.mark.unit
class TestCsv:
    def test_header(self):
        assert SweepRow.header() == [
            "q",
            "gamma",
            "beta",
            "verdict",
            "theorem_ref",
            "witness_delta",
            "witness_amplitude",
            "residual_min",
        ]

    def test_empty_cells(self):
        row = SweepRow(2.0, 1.2, 5.0, "holds", "h1-gradient-window")
        assert row.as_csv_row() == ["2.0", "1.2", "5.0", "holds", "h1-gradient-window", "", "", ""]

    def test_write(self):
        stream = io.StringIO()
        write_csv(run_sweep(_h1_plus, [3.0], [1.2, 1.5]), stream)
        lines = stream.getvalue().split("\n")
        assert lines[0] == "q,gamma,beta,verdict,theorem_ref,witness_delta,witness_amplitude,residual_min"
        assert lines[1] == "3.0,1.2,5.0,holds,h1-gradient-window,,,"
        assert lines[2].startswith("3.0,1.5,5.0,fails,h1-power-decay-witness,2.0,")
        assert lines[-1] == ""
        assert "\r" not in stream.getvalue()
