"""Command-line interface and file formats."""

import json

import numpy as np
import pytest

from qps import formats
from qps import tomography as tom
from qps import transform as tr
from qps import wh_model as wh
from qps.cli import main

from conftest import random_low_block


def run(tmp_path, *argv):
    out = tmp_path / "report.json"
    code = main(list(argv) + ["--out", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report, out


# ---------------------------------------------------------------------------
# cohomology command
# ---------------------------------------------------------------------------


def test_cohomology_catalog_h3(tmp_path):
    code, report, _ = run(tmp_path, "cohomology", "h3")
    assert code == 0
    assert report["cohomology"]["dim_h2"] == 2
    assert report["config"]["command"] == "cohomology"


def test_cohomology_with_kernel(tmp_path):
    code, report, _ = run(tmp_path, "cohomology", "so3", "--omega", "1,0,0")
    assert code == 0
    assert report["kernel"]["gamma_dim"] == 2
    assert report["kernel"]["is_subalgebra"] is True


def test_cohomology_galilei_nontrivial(tmp_path):
    code, report, _ = run(tmp_path, "cohomology", "galilei")
    assert code == 0
    assert report["cohomology"]["dim_h2"] >= 1
    assert report["cohomology"]["dim_h1"] >= 1


def test_cohomology_malformed_json_exit_1(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 3,')
    assert main(["cohomology", str(bad)]) == 1


def test_cohomology_missing_file_exit_1(tmp_path):
    assert main(["cohomology", str(tmp_path / "absent.json")]) == 1


def test_cohomology_jacobi_failure_exit_2(tmp_path):
    algebra = tmp_path / "broken.json"
    algebra.write_text(
        json.dumps(
            {
                "name": "broken",
                "dim": 3,
                "basis": ["a", "b", "c"],
                "brackets": [
                    {"i": 0, "j": 1, "coeffs": {"2": "1"}},
                    {"i": 1, "j": 2, "coeffs": {"1": "1"}},
                ],
            }
        )
    )
    code, report, _ = run(tmp_path, "cohomology", str(algebra))
    assert code == 2
    assert report["jacobi_ok"] is False
    assert report["violations"]


def test_cohomology_file_equivalent_to_catalog(tmp_path):
    from qps import lie_cohomology as lc

    path = tmp_path / "h3.json"
    path.write_text(json.dumps(lc.to_json_dict(lc.catalog("h3"))))
    code, report, _ = run(tmp_path, "cohomology", str(path))
    assert code == 0
    assert report["cohomology"]["dim_h2"] == 2


# ---------------------------------------------------------------------------
# spectrum command
# ---------------------------------------------------------------------------


def test_spectrum_small_run_artifacts(tmp_path):
    code, report, out = run(
        tmp_path, "spectrum", "--dim", "16", "--radius", "6", "--spacing", "0.2",
        "--region", "disk:2",
    )
    assert code == 0
    csv_path = out.with_suffix(".csv")
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "index,eigenvalue"
    assert len(rows) == 17
    lam0 = float(rows[1].split(",")[1])
    assert lam0 == pytest.approx(1 - np.exp(-2.0), abs=5e-3)
    assert report["near_one"] + report["near_zero"] + report["mid"] == 16
    assert report["trace"] == pytest.approx(report["mu_delta"], rel=1e-6)


def test_spectrum_defaults_reproduce_disk_oracle(tmp_path):
    # with no flags the command must land on the acceptance tolerances:
    # top eigenvalue of the radius-3 disk within 1e-4 of 1 - e^-4.5
    code, report, out = run(tmp_path, "spectrum")
    assert code == 0
    first_row = out.with_suffix(".csv").read_text().splitlines()[1]
    lam0 = float(first_row.split(",")[1])
    assert lam0 == pytest.approx(1 - np.exp(-4.5), abs=1e-4)
    assert report["capacity_count"] == 4


def test_spectrum_empty_region_all_zero(tmp_path):
    code, report, out = run(
        tmp_path, "spectrum", "--dim", "8", "--radius", "4", "--spacing", "0.25",
        "--region", "disk:0.05",
    )
    assert code == 0
    values = [float(r.split(",")[1]) for r in out.with_suffix(".csv").read_text().splitlines()[1:]]
    assert all(v == 0.0 for v in values)
    assert report["capacity_count"] == 0


def test_spectrum_quarter_measure_region_passes_nothing(tmp_path):
    code, report, _ = run(
        tmp_path, "spectrum", "--dim", "16", "--radius", "6", "--spacing", "0.15",
        "--region", f"disk:{np.sqrt(0.5)}",
    )
    assert code == 0
    assert report["mu_delta"] == pytest.approx(0.25, abs=0.01)
    assert report["capacity_count"] == 0


def test_spectrum_bad_region_exit_2(tmp_path):
    assert main(["spectrum", "--region", "triangle:1"]) == 2


# ---------------------------------------------------------------------------
# tomography command
# ---------------------------------------------------------------------------


def test_tomography_self_test(tmp_path):
    code, report, _ = run(tmp_path, "tomography", "--self-test", "--seed", "7")
    assert code == 0
    assert report["frobenius_norm"] <= 1e-6
    assert report["rank"] == 16


def test_tomography_positions_only(tmp_path):
    code, report, _ = run(tmp_path, "tomography", "--positions-only")
    assert code == 0
    assert report["complete"] is False
    assert report["rank"] == 4


def test_tomography_missing_csv_exit_1(tmp_path):
    assert main(["tomography", "--probabilities", str(tmp_path / "no.csv")]) == 1


def test_tomography_without_mode_exit_2(tmp_path):
    assert main(["tomography"]) == 2


def test_tomography_probabilities_file_round_trip(tmp_path, ctx4, grid4, eta4):
    rho = tom.DensityOperator.pure(np.eye(4)[1])
    dens = tom.classical_density(rho, eta4, grid4, ctx4)
    csv_in = tmp_path / "probs.csv"
    formats.write_values_csv(dens.values, grid4, csv_in)
    code, report, _ = run(tmp_path, "tomography", "--probabilities", str(csv_in))
    assert code == 0
    assert report["residual"] <= 1e-6


# ---------------------------------------------------------------------------
# effects command
# ---------------------------------------------------------------------------


def test_effects_report(tmp_path):
    code, report, _ = run(tmp_path, "effects", "--trials", "60", "--seed", "2")
    assert code == 0
    assert report["axioms"]["total_failures"] == 0
    assert report["projection_scan"]["all_pass"] is True
    assert len(report["projection_scan"]["regions"]) == 6


def test_effects_zero_trials_exit_2(tmp_path):
    assert main(["effects", "--trials", "0"]) == 2


# ---------------------------------------------------------------------------
# transform and admissibility commands
# ---------------------------------------------------------------------------


def test_transform_round_trip_report(tmp_path):
    code, report, out = run(tmp_path, "transform", "--seed", "3")
    assert code == 0
    assert report["relative_error"] <= 1e-6
    header = out.with_suffix(".csv").read_text().splitlines()[0]
    assert header == "q,p,re,im,weight"


def test_admissibility_report(tmp_path):
    code, report, _ = run(tmp_path, "admissibility", "--trials", "10")
    assert code == 0
    assert report["integral"] == pytest.approx(1.0, abs=1e-3)
    assert report["d_constant"] == pytest.approx(1.0, abs=1e-3)
    assert report["beta_ok"] is True


def test_bad_generator_exit_2(tmp_path):
    assert main(["admissibility", "--generator", "thermal"]) == 2


def test_invalid_thread_hint_exit_2(tmp_path, monkeypatch):
    monkeypatch.setenv("QPS_THREADS", "-3")
    assert main(["admissibility", "--trials", "1"]) == 2


def test_csv_format_selects_tabular_artifact(tmp_path):
    out = tmp_path / "samples.csv"
    code = main(
        ["transform", "--dim", "12", "--radius", "5", "--spacing", "0.25",
         "--seed", "1", "--out", str(out), "--format", "csv"]
    )
    assert code == 0
    assert out.read_text().startswith("q,p,re,im,weight")


def test_csv_format_without_artifact_exit_2(tmp_path):
    out = tmp_path / "x.csv"
    assert main(["admissibility", "--out", str(out), "--format", "csv"]) == 2


# ---------------------------------------------------------------------------
# formats
# ---------------------------------------------------------------------------


def test_values_csv_round_trip(tmp_path, grid4):
    rng = np.random.default_rng(0)
    values = rng.uniform(size=len(grid4))
    path = tmp_path / "vals.csv"
    formats.write_values_csv(values, grid4, path)
    back = formats.read_values_csv(path, grid4)
    assert np.array_equal(back, values)


def test_values_csv_missing_point_rejected(tmp_path, grid4):
    values = np.ones(len(grid4))
    path = tmp_path / "vals.csv"
    formats.write_values_csv(values, grid4, path)
    lines = path.read_text().splitlines()
    path.write_text("\n".join(lines[:-1]) + "\n")
    with pytest.raises(ValueError, match="no value"):
        formats.read_values_csv(path, grid4)


def test_values_csv_off_lattice_rejected(tmp_path, grid4):
    path = tmp_path / "vals.csv"
    path.write_text("q,p,value,weight\n0.123,0.2,1.0,0.01\n")
    with pytest.raises(ValueError, match="lattice"):
        formats.read_values_csv(path, grid4)


def test_values_csv_wrong_columns_rejected(tmp_path, grid4):
    path = tmp_path / "vals.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="columns"):
        formats.read_values_csv(path, grid4)


def test_samples_csv_written_with_17_digits(tmp_path, ctx24, grid_ref, eta24):
    rng = np.random.default_rng(1)
    phi = random_low_block(rng, 24)
    samples = tr.w_transform(eta24, grid_ref, phi, ctx24)
    path = tmp_path / "samples.csv"
    formats.write_samples_csv(samples, path)
    row = path.read_text().splitlines()[1].split(",")
    assert len(row) == 5
    # values survive a text round trip exactly
    assert float(row[2]) == samples.values[0].real
