import json
import subprocess
import sys

import numpy as np
import pytest

from distval import Dataset, InputError
from distval.cli import VendorManifest, ingest, main, write_dataset_csv


def write_csv(path, rows):
    path.write_text("\n".join(",".join(str(c) for c in row) for row in rows) + "\n")


@pytest.fixture
def vendor_files(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    ref = tmp_path / "ref.csv"
    rng = np.random.default_rng(1)
    write_csv(a, rng.normal(0.0, 1.0, size=(40, 2)).tolist())
    write_csv(b, rng.normal(3.0, 1.0, size=(50, 2)).tolist())
    write_csv(ref, rng.normal(0.0, 1.0, size=(60, 2)).tolist())
    return tmp_path, a, b, ref


def test_ingest_basic(tmp_path):
    f = tmp_path / "v.csv"
    write_csv(f, [[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]])
    (d,) = ingest(VendorManifest(entries=[("v", str(f))], dim=3))
    assert d.dim == 3 and len(d) == 2
    assert d.points[1, 2] == 6.0  # row order preserved


def test_ingest_header_flag(tmp_path):
    f = tmp_path / "v.csv"
    f.write_text("x,y\n1.0,2.0\n")
    (d,) = ingest(VendorManifest(entries=[("v", str(f))], dim=2, has_header=True))
    assert len(d) == 1


def test_ingest_names_error_location(tmp_path):
    f = tmp_path / "v.csv"
    f.write_text("1.0,2.0\n3.0,oops\n")
    with pytest.raises(InputError, match=rf"{f}:2:2"):
        ingest(VendorManifest(entries=[("v", str(f))], dim=2))


def test_ingest_rejects_non_finite(tmp_path):
    f = tmp_path / "v.csv"
    f.write_text("1.0,nan\n")
    with pytest.raises(InputError, match=rf"{f}:1:2"):
        ingest(VendorManifest(entries=[("v", str(f))], dim=2))


def test_ingest_dimension_mismatch_names_vendor(tmp_path):
    f = tmp_path / "v.csv"
    write_csv(f, [[1.0, 2.0]])
    with pytest.raises(InputError, match="vend_x"):
        ingest(VendorManifest(entries=[("vend_x", str(f))], dim=3))


def test_ingest_empty_file(tmp_path):
    f = tmp_path / "v.csv"
    f.write_text("")
    with pytest.raises(InputError, match="no data rows"):
        ingest(VendorManifest(entries=[("v", str(f))], dim=1))


def test_ingest_missing_file(tmp_path):
    with pytest.raises(InputError, match="not found"):
        ingest(VendorManifest(entries=[("v", str(tmp_path / "nope.csv"))], dim=1))


def test_manifest_duplicate_ids(tmp_path):
    with pytest.raises(InputError):
        VendorManifest(entries=[("v", "x"), ("v", "y")], dim=1)


def test_csv_round_trip(tmp_path):
    rng = np.random.default_rng(5)
    d = Dataset("r", rng.normal(size=(25, 3)))
    out = tmp_path / "out.csv"
    write_dataset_csv(d, str(out))
    (back,) = ingest(VendorManifest(entries=[("r", str(out))], dim=3))
    assert np.array_equal(back.points, d.points)  # repr round-trips floats


def _config(tmp_path, vendor_files, **overrides):
    _, a, b, ref = vendor_files
    cfg = {
        "manifest": {
            "dim": 2,
            "vendors": [{"id": "a", "path": str(a)}, {"id": "b", "path": str(b)}],
            "ground_truth": str(ref),
        },
        "kernel": {"sigma": 1.0},
        "reference": {"kind": "ground_truth"},
    }
    cfg.update(overrides)
    p = tmp_path / "run.json"
    p.write_text(json.dumps(cfg))
    return p


def test_cmd_rank_reference_vendor_first(tmp_path, vendor_files, capsys):
    # vendor "a" is statistically identical to the reference population;
    # sharing the reference file makes it literally equal
    _, a, b, ref = vendor_files
    cfg = _config(
        tmp_path,
        vendor_files,
        manifest={
            "dim": 2,
            "vendors": [{"id": "a", "path": str(ref)}, {"id": "b", "path": str(b)}],
            "ground_truth": str(ref),
        },
    )
    rc = main(["rank", "--config", str(cfg)])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["result"][0]["id"] == "a"
    assert out["result"][0]["value"] == 0.0
    assert out["resolved_config"]["kernel"]["sigma"] == 1.0


def test_cmd_value_json(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files)
    rc = main(["value", "--config", str(cfg)])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    vals = {r["id"]: r["value"] for r in out["result"]}
    assert vals["a"] > vals["b"]  # b is centred far from the reference
    assert all(v <= 0 for v in vals.values())


def test_cmd_value_uniform_reference_needs_seed(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files, reference={"kind": "uniform"})
    rc = main(["value", "--config", str(cfg)])
    assert rc == 1
    assert "--seed" in capsys.readouterr().err
    rc = main(["value", "--config", str(cfg), "--seed", "3"])
    assert rc == 0


def test_cmd_value_csv_format(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files)
    rc = main(["value", "--config", str(cfg), "--format", "csv"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert rc == 0
    assert lines[0] == "id,value"
    assert len(lines) == 3


def test_cmd_compare_zero_bias_confidence(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files, compare={"left": "a", "right": "b"})
    rc = main(["compare", "--config", str(cfg), "--eps-bias", "0"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["result"]["delta"] == 2.0
    assert out["result"]["confidence"] == 0.0


def test_cmd_compare_concludes_on_separated_vendors(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files, compare={"left": "a", "right": "b"})
    rc = main(["compare", "--config", str(cfg), "--eps-bias", "0.1"])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    report = out["result"]
    assert report["observed_gap"] > 0
    assert report["verdict"] in ("Conclude", "Inconclusive")


def test_cmd_compare_requires_eps_bias(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files, compare={"left": "a", "right": "b"})
    rc = main(["compare", "--config", str(cfg)])
    assert rc == 1
    assert "eps_bias" in capsys.readouterr().err


def test_cmd_experiment_requires_seed(tmp_path, capsys):
    p = tmp_path / "e.json"
    p.write_text(json.dumps({"experiment": {"name": "game_verify", "n": 2, "trials": 2}}))
    assert main(["experiment", "--config", str(p)]) == 1
    capsys.readouterr()
    assert main(["experiment", "--config", str(p), "--seed", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["aggregates"]["pass_rate"]["mean"] == 1.0


def test_cmd_experiment_csv_out(tmp_path, capsys):
    p = tmp_path / "e.json"
    p.write_text(
        json.dumps(
            {
                "experiment": {
                    "name": "correlation",
                    "n": 5,
                    "trials": 3,
                    "extra": {"support_max": 10, "eps_max": 0.5},
                }
            }
        )
    )
    out = tmp_path / "rows.csv"
    rc = main(
        ["experiment", "--config", str(p), "--seed", "99", "--format", "csv", "--out", str(out)]
    )
    assert rc == 0
    header = out.read_text().splitlines()[0]
    assert header.startswith("trial,")


def test_cmd_verify_game_explicit_distances(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"game": {"distances": [0.2, 0.6]}}))
    rc = main(["verify-game", "--config", str(p)])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["certified"] is True


def test_cmd_verify_game_random_needs_seed(tmp_path, capsys):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"game": {"n_values": [2, 3], "trials": 5}}))
    assert main(["verify-game", "--config", str(p)]) == 1
    assert main(["verify-game", "--config", str(p), "--seed", "6"]) == 0


def test_cmd_verify_game_failure_exits_2(tmp_path, capsys, monkeypatch):
    import distval.cli as cli_mod

    class FakeReport:
        certified = False

        def to_json(self):
            return "{}"

    monkeypatch.setattr(cli_mod, "verify_minmax", lambda g: FakeReport())
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"game": {"distances": [0.2, 0.6]}}))
    assert main(["verify-game", "--config", str(p)]) == 2


def test_unknown_flag_is_input_error(capsys):
    assert main(["value", "--nope"]) == 1


def test_bad_config_json(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert main(["value", "--config", str(p)]) == 1


def test_sigma_auto_resolves_from_data(tmp_path, vendor_files, capsys):
    cfg = _config(tmp_path, vendor_files, kernel={"sigma": "auto"})
    rc = main(["value", "--config", str(cfg)])
    out = json.loads(capsys.readouterr().out)
    assert rc == 0
    assert out["resolved_config"]["kernel"]["sigma"] > 0


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "distval.cli", "verify-game", "--seed", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["certified"] is True
