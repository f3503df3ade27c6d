import math

import numpy as np
import pytest

import revproj.verifier as verifier_mod
from revproj import ResidualReport
from revproj.cli import cli_dispatch


def run(capsys, *argv):
    code = cli_dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestProjectCommand:
    def test_contract_example(self, capsys):
        code, out, _ = run(capsys, "project", "--c", "1", "--d", "0", "--k", "1",
                           "--c0", "0", "--t", "0", "--u", "1")
        assert code == 0
        assert out.strip() == "1 0"

    def test_quarter_turn(self, capsys):
        code, out, _ = run(capsys, "project", "--c", "1", "--d", "0", "--k", "1",
                           "--t", str(math.pi / 2), "--u", "1")
        assert code == 0
        x, y = (float(v) for v in out.split())
        assert (x, y) == pytest.approx((1.0, 2.0), abs=1e-10)

    def test_case_b_and_mirror_accepted(self, capsys):
        code, out, _ = run(capsys, "project", "--c", "1", "--d", "0.5", "--k", "1",
                           "--case", "b", "--theta0-branch", "mirror", "--t", "0.3", "--u", "1")
        assert code == 0
        assert len(out.split()) == 2


class TestVerifyCommand:
    def test_fig1_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--c", "1", "--d", "0", "--k", "1")
        assert code == 0
        assert "overall: pass" in out

    def test_small_grid_still_passes(self, capsys):
        code, out, _ = run(capsys, "verify", "--c", "2", "--d", "1", "--k", "1.5",
                           "--grid", "12x12", "--seed", "3")
        assert code == 0

    def test_fault_injection_fails_run(self, capsys, monkeypatch):
        real = verifier_mod.check_structural_identities

        def corrupted(p, u_samples):
            reports = real(p, u_samples)
            broken = ResidualReport(
                identity_name=reports[0].identity_name,
                max_abs_residual=1.0,
                mean_abs_residual=1.0,
                worst_point=reports[0].worst_point,
                samples=reports[0].samples,
            )
            return [broken] + reports[1:]

        monkeypatch.setattr(verifier_mod, "check_structural_identities", corrupted)
        code, out, _ = run(capsys, "verify", "--c", "1", "--d", "0", "--k", "1")
        assert code == 1
        assert "FAIL" in out


class TestClassifyCommand:
    def test_sphere_contract_example(self, capsys):
        code, out, _ = run(capsys, "classify", "--profile", "sphere")
        assert code == 1
        assert "exists: false" in out

    def test_pseudosphere(self, capsys):
        code, out, _ = run(capsys, "classify", "--profile", "pseudosphere")
        assert code == 1
        assert "exists: false" in out

    def test_quadratic_profile(self, capsys):
        code, out, _ = run(capsys, "classify", "--profile", "quadratic:1,0,1")
        assert code == 0
        assert "exists: true" in out
        assert "fitted:" in out

    def test_csv_profile(self, capsys, tmp_path):
        path = tmp_path / "profile.csv"
        u = np.linspace(0.2, 2.0, 1200)
        rows = "\n".join("%r,%r" % (float(ui), math.sqrt(ui * ui + 1)) for ui in u)
        path.write_text("u,f\n" + rows + "\n")
        code, out, _ = run(capsys, "classify", "--profile", "csv:%s" % path)
        assert code == 0
        assert "exists: true" in out

    def test_csv_bad_header(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n1,2\n2,3\n3,4\n4,5\n")
        code, _, err = run(capsys, "classify", "--profile", "csv:%s" % path)
        assert code == 2
        assert "header" in err

    def test_csv_unsorted_u_rejected(self, capsys, tmp_path):
        path = tmp_path / "unsorted.csv"
        path.write_text("u,f\n0.2,1.0\n0.5,1.1\n0.4,1.2\n0.9,1.3\n")
        code, _, err = run(capsys, "classify", "--profile", "csv:%s" % path)
        assert code == 2
        assert "increasing" in err

    def test_csv_ragged_row_rejected(self, capsys, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("u,f\n0.2,1.0\n0.5\n0.6,1.2\n0.9,1.3\n")
        code, _, err = run(capsys, "classify", "--profile", "csv:%s" % path)
        assert code == 2

    def test_csv_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "classify", "--profile", "csv:%s/nope.csv" % tmp_path)
        assert code == 3

    def test_unknown_profile(self, capsys):
        code, _, err = run(capsys, "classify", "--profile", "torus")
        assert code == 2
        assert "--profile" in err

    def test_threshold_flag(self, capsys):
        # an absurdly large threshold flips the sphere verdict to a fit
        # attempt, which the coefficient constraints then reject
        code, out, _ = run(capsys, "classify", "--profile", "sphere", "--threshold", "10")
        assert code == 1
        assert "exists: false" in out


class TestExportCommands:
    def test_graticule(self, capsys, tmp_path):
        out_path = tmp_path / "g.svg"
        code, out, _ = run(capsys, "export-graticule", "--c", "1", "--d", "0", "--k", "1",
                           "-o", str(out_path))
        assert code == 0
        assert out_path.exists()
        assert "9 meridians" in out

    def test_mesh(self, capsys, tmp_path):
        out_path = tmp_path / "m.obj"
        code, out, _ = run(capsys, "export-mesh", "--c", "1", "--d", "0", "--k", "1",
                           "-o", str(out_path))
        assert code == 0
        assert "2048 vertices" in out

    def test_table(self, capsys, tmp_path):
        out_path = tmp_path / "t.csv"
        code, out, _ = run(capsys, "table", "--c", "1", "--d", "0", "--k", "1",
                           "--grid", "3x4", "-o", str(out_path))
        assert code == 0
        assert out_path.read_text().startswith("t,u,x,y\n")
        assert "12 rows" in out

    def test_io_error_exit_code(self, capsys, tmp_path):
        code, _, err = run(capsys, "table", "--c", "1", "--d", "0", "--k", "1",
                           "-o", str(tmp_path / "missing" / "t.csv"))
        assert code == 3
        assert "error:" in err


class TestUsageErrors:
    def test_missing_required_flag(self, capsys):
        code, _, err = run(capsys, "project", "--c", "1", "--d", "0")
        assert code == 2

    def test_invalid_float(self, capsys):
        code, _, err = run(capsys, "project", "--c", "x", "--d", "0", "--k", "1",
                           "--t", "0", "--u", "1")
        assert code == 2
        assert "--c" in err

    def test_bad_grid_shape(self, capsys):
        code, _, err = run(capsys, "verify", "--c", "1", "--d", "0", "--k", "1", "--grid", "50")
        assert code == 2

    def test_unknown_command(self, capsys):
        code, _, _ = run(capsys, "frobnicate")
        assert code == 2

    def test_rejected_profile_is_usage_error(self, capsys):
        code, _, err = run(capsys, "project", "--c", "1", "--d", "2", "--k", "1",
                           "--t", "0", "--u", "1")
        assert code == 2
        assert "discriminant" in err

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
