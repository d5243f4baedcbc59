import json

import numpy as np
import pytest

from invispace import serialize
from invispace.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


@pytest.fixture
def fixture_dir(tmp_path, capsys):
    for name in ("minimal-body", "minimal-base", "leds", "normal", "pauli", "cube"):
        assert main(["fixtures", name, "--dest", str(tmp_path)]) == 0
    capsys.readouterr()
    return tmp_path


class TestMetamerCommands:
    def test_space_with_builtin_fixtures(self, capsys):
        doc = run_json(capsys, "metamer", "space")
        assert len(doc["metamer_basis"]) == 1
        assert len(doc["metamer_basis"][0]) == 4
        assert np.array(doc["response_matrix"]).shape == (3, 4)

    def test_space_with_files(self, capsys, fixture_dir):
        doc = run_json(
            capsys,
            "metamer",
            "space",
            "--receptors",
            str(fixture_dir / "normal.csv"),
            "--illuminants",
            str(fixture_dir / "leds.csv"),
        )
        assert len(doc["metamer_basis"]) == 1

    def test_family_reports_finite_range(self, capsys):
        doc = run_json(capsys, "metamer", "family", "--base", "1,1,1,1")
        assert doc["lambda_range"]["lo"] < 0 < doc["lambda_range"]["hi"]

    def test_table_builtin_banks(self, capsys):
        doc = run_json(capsys, "metamer", "table")
        table = doc["discrimination_table"]
        for i, row in table.items():
            assert row[i] is False
            assert all(v is True for j, v in row.items() if j != i)

    def test_same(self, capsys):
        doc = run_json(capsys, "metamer", "same", "--b1", "1,1,1,1", "--b2", "1,1,1,1")
        assert doc["indistinguishable"] is True


class TestBodyCommands:
    def test_minimal_body_invisible(self, capsys, fixture_dir):
        doc = run_json(capsys, "body", "invisible", "--input", str(fixture_dir / "minimal_body.csv"))
        assert doc["invisible"] is True
        assert doc["summary"]["total_mass"] == 0.0
        assert doc["summary"]["center_of_mass"] is None

    def test_summary(self, capsys, fixture_dir):
        doc = run_json(capsys, "body", "summary", "--input", str(fixture_dir / "cube.csv"))
        np.testing.assert_allclose(doc["summary"]["inertia_origin"], 16.0 * np.eye(3), atol=1e-12)

    def test_equivalent(self, capsys, fixture_dir):
        cube = str(fixture_dir / "cube.csv")
        doc = run_json(capsys, "body", "equivalent", "--input", cube, "--other", cube)
        assert doc["equivalent"] is True

    def test_family_bounds(self, capsys, fixture_dir):
        doc = run_json(
            capsys,
            "body",
            "family",
            "--input",
            str(fixture_dir / "minimal_base.csv"),
            "--invisible",
            str(fixture_dir / "minimal_body.csv"),
        )
        assert doc["lambda_range"] == {"lo": -1.0, "hi": 1.0}

    def test_parity(self, capsys, fixture_dir):
        doc = run_json(capsys, "body", "parity", "--input", str(fixture_dir / "cube.csv"))
        assert doc["invisible"] is True
        assert len(doc["points"]) == 16


class TestQstateCommands:
    def test_interval_matches_qubit_bound(self, capsys, fixture_dir, tmp_path):
        rho = tmp_path / "rho.json"
        rho.write_text(json.dumps([[[0.8, 0], [0, 0]], [[0, 0], [0.2, 0]]]))
        doc = run_json(
            capsys,
            "qstate",
            "interval",
            "--rho",
            str(rho),
            "--direction",
            str(fixture_dir / "sigma1.json"),
        )
        assert doc["interval"]["lo"] == pytest.approx(-0.4, abs=1e-9)
        assert doc["interval"]["hi"] == pytest.approx(0.4, abs=1e-9)

    def test_invisible_space_of_sigma3(self, capsys, fixture_dir, tmp_path):
        suite = tmp_path / "suite.json"
        sigma3 = json.loads((fixture_dir / "sigma3.json").read_text())
        suite.write_text(json.dumps([sigma3]))
        doc = run_json(capsys, "qstate", "invisible", "--suite", str(suite))
        assert len(doc["invisible_basis"]) == 2

    def test_reconstruct_and_sample(self, capsys, tmp_path):
        record = tmp_path / "record.json"
        record.write_text(
            json.dumps(
                {
                    "observables": [[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]],
                    "values": [0.6],
                }
            )
        )
        doc = run_json(capsys, "qstate", "reconstruct", "--record", str(record))
        assert doc["physical"] is True
        assert doc["rho"][0][0][0] == pytest.approx(0.8)
        assert doc["rho"][0][0][1] == 0.0
        doc = run_json(
            capsys, "qstate", "sample", "--record", str(record), "--count", "5", "--seed", "1"
        )
        assert len(doc["samples"]) == 5

    def test_compare(self, capsys, fixture_dir, tmp_path):
        s3 = json.loads((fixture_dir / "sigma3.json").read_text())
        s1 = json.loads((fixture_dir / "sigma1.json").read_text())
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(json.dumps([s3]))
        b.write_text(json.dumps([s1]))
        doc = run_json(capsys, "qstate", "compare", "--suite-a", str(a), "--suite-b", str(b))
        assert doc["report"]["dim_a"] == 2
        assert doc["report"]["dim_intersection"] == 1


class TestContracts:
    def test_missing_file_exits_2(self, capsys):
        code, _, err = run(capsys, "body", "invisible", "--input", "/nonexistent.csv")
        assert code == 2
        assert "error" in json.loads(err)

    def test_malformed_csv_exits_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.csv"
        bad.write_text("mass,x,y,z\nnot,a,number,row\n")
        code, _, _ = run(capsys, "body", "invisible", "--input", str(bad))
        assert code == 2

    def test_precondition_violation_exits_1(self, capsys, fixture_dir):
        # a cube is not an invisible direction
        code, _, err = run(
            capsys,
            "body",
            "family",
            "--input",
            str(fixture_dir / "minimal_base.csv"),
            "--invisible",
            str(fixture_dir / "cube.csv"),
        )
        assert code == 1
        assert json.loads(err)["error"] == "PreconditionError"

    def test_infeasible_record_exits_1(self, capsys, tmp_path):
        record = tmp_path / "record.json"
        s3 = [[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]
        record.write_text(json.dumps({"observables": [s3, s3], "values": [0.2, 0.5]}))
        code, _, err = run(capsys, "qstate", "reconstruct", "--record", str(record))
        assert code == 1
        assert json.loads(err)["error"] == "InfeasibleRecordError"

    def test_unknown_subcommand_exits_2(self, capsys):
        assert main(["metamer", "frobnicate"]) == 2
        capsys.readouterr()

    def test_byte_identical_reruns(self, capsys, tmp_path):
        record = tmp_path / "record.json"
        record.write_text(
            json.dumps(
                {"observables": [[[[1, 0], [0, 0]], [[0, 0], [-1, 0]]]], "values": [0.6]}
            )
        )
        args = ["qstate", "sample", "--record", str(record), "--count", "3", "--seed", "9"]
        _, out1, _ = run(capsys, *args)
        _, out2, _ = run(capsys, *args)
        assert out1 == out2

    def test_fixture_files_byte_identical(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        for dest in (a, b):
            assert main(["fixtures", "leds", "--dest", str(dest)]) == 0
            assert main(["fixtures", "pauli", "--dest", str(dest)]) == 0
        capsys.readouterr()
        assert (a / "leds.csv").read_bytes() == (b / "leds.csv").read_bytes()
        assert (a / "sigma2.json").read_bytes() == (b / "sigma2.json").read_bytes()

    def test_output_file_flag(self, capsys, tmp_path):
        out = tmp_path / "report.json"
        code, stdout, _ = run(capsys, "metamer", "matrix", "--output", str(out))
        assert code == 0
        assert stdout == ""
        doc = json.loads(out.read_text())
        assert np.array(doc["response_matrix"]).shape == (3, 4)

    def test_minimal_body_fixture_contents(self, capsys, fixture_dir):
        body = serialize.read_body_csv(fixture_dir / "minimal_body.csv")
        np.testing.assert_array_equal(body.masses, [1.0, 0.5, -1.0, -0.5])
        np.testing.assert_array_equal(body.positions[:, 2], [1.0, -2.0, -1.0, 2.0])
