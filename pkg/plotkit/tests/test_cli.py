"""Command-line wrapper: exit codes and printed report."""

import numpy as np
import pytest

from plotkit.cli import main

from test_figures import _write_branch, _write_diag, _write_profile, \
    _write_snapshot


class TestExitCodes:
    def test_triptych_success(self, tmp_path, capsys):
        branch = tmp_path / "bifurcation.csv"
        _write_branch(branch)
        out = tmp_path / "fig.svg"
        assert main(["mass-energy-triptych", str(branch),
                     "-o", str(out)]) == 0
        printed = capsys.readouterr().out
        assert "wrote" in printed and "inputs sha256" in printed
        assert out.exists()

    def test_unknown_kind_is_usage_error(self, tmp_path, capsys):
        assert main(["histogram", "a.csv", "-o", "fig.svg"]) == 2

    def test_wrong_input_count(self, tmp_path, capsys):
        branch = tmp_path / "bifurcation.csv"
        _write_branch(branch)
        code = main(["final-state-overlay", str(branch),
                     "-o", str(tmp_path / "fig.svg")])
        assert code == 2
        assert "takes 3 input file(s)" in capsys.readouterr().err

    def test_schema_mismatch(self, tmp_path, capsys):
        bad = tmp_path / "bifurcation.csv"
        bad.write_text("wrong,columns\n1,2\n")
        code = main(["mass-energy-triptych", str(bad),
                     "-o", str(tmp_path / "fig.svg")])
        assert code == 2
        assert "schema mismatch" in capsys.readouterr().err

    def test_missing_output_flag(self, tmp_path):
        assert main(["linf-trace", "d.csv"]) == 2


class TestOverlayReport:
    def test_sup_difference_in_stdout(self, tmp_path, capsys):
        r = np.linspace(0.0, 6.0, 40)
        phi = 0.9 * np.exp(-(r ** 2) / 4.0)
        diag = tmp_path / "diagnostics.csv"
        snap = tmp_path / "snapshot_0000.csv"
        prof = tmp_path / "groundstate.csv"
        _write_diag(diag, np.linspace(0, 1, 11), np.full(11, 0.9))
        _write_snapshot(snap, "r", r, phi + 2e-4, np.zeros_like(r))
        _write_profile(prof, r, phi)
        assert main(["final-state-overlay", str(diag), str(snap),
                     str(prof), "-o", str(tmp_path / "fig.svg")]) == 0
        printed = capsys.readouterr().out
        assert "sup difference" in printed
        expected = float(np.max(np.abs(np.abs(phi + 2e-4) - phi)))
        assert f"{expected:.3g}" in printed

    def test_profile_family_multiple_inputs(self, tmp_path, capsys):
        paths = []
        r = np.linspace(0.0, 5.0, 30)
        for i in range(2):
            p = tmp_path / f"gs_{i}.csv"
            _write_profile(p, r, (0.5 + 0.2 * i) * np.exp(-r))
            paths.append(str(p))
        assert main(["profile-family", *paths,
                     "-o", str(tmp_path / "fam.svg")]) == 0
        assert "wrote" in capsys.readouterr().out
