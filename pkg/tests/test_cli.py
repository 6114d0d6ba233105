"""Command-line interface: CSV/JSON contracts, exit codes, manifests."""

import json
import math

import pytest

from spintransfer.chain import load_chain
from spintransfer.cli import CSV_HEADER, main
from spintransfer.excitation import transfer_amplitude
from spintransfer.fidelity import fidelity_report

SQRT2 = math.sqrt(2.0)


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPreset:
    def test_writes_valid_chain_file(self, tmp_path, capsys):
        out = tmp_path / "chain.json"
        code, _, err = _run(
            capsys, "preset", "sec4-three-spin-center", "--J", "0.6666666666666666",
            "--B", "1.0", "--out", str(out),
        )
        assert code == 0
        spec = load_chain(out)
        assert spec.sites[1].spin.s == 1.0
        assert spec.sites[1].field == 1.0
        assert spec.couplings == (0.6666666666666666, 0.6666666666666666)
        assert '"command": "preset"' in err

    def test_stdout_when_no_out(self, capsys):
        code, out, _ = _run(capsys, "preset", "sec2-two-spin", "--J", "1", "--B", "0")
        assert code == 0
        raw = json.loads(out)
        assert raw["sites"][0]["spin"] == "one"
        assert raw["sites"][0]["field"] == 0.0

    def test_unknown_name_fails(self, capsys):
        code, _, err = _run(capsys, "preset", "bogus", "--J", "1", "--B", "0")
        assert code == 2
        assert "bogus" in err


class TestSimulate:
    def test_single_step_row(self, capsys):
        code, out, _ = _run(
            capsys, "simulate", "--preset", "sec2-two-spin", "--J", "1", "--B", "0",
            "--t-max", "5.0", "--steps", "1",
        )
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2
        row = [float(x) for x in lines[1].split(",")]
        assert row[0] == 0.0
        assert row[1] == row[2] == 0.0  # f = 0 at t = 0
        assert row[5] == 0.5

    def test_values_round_trip_and_match_engine(self, tmp_path, capsys):
        out_path = tmp_path / "sweep.csv"
        code, _, _ = _run(
            capsys, "simulate", "--preset", "sec2-two-spin", "--J", "1", "--B", "0",
            "--t-max", "4.5", "--steps", "1000", "--out", str(out_path),
        )
        assert code == 0
        lines = out_path.read_text().strip().split("\n")
        assert lines[0] == CSV_HEADER
        assert len(lines) == 1001

        from spintransfer.chain import preset as make_preset
        spec = make_preset("sec2-two-spin", 1.0, 0.0)
        t_c = math.pi / SQRT2
        best = min(lines[1:], key=lambda ln: abs(float(ln.split(",")[0]) - t_c))
        row = [float(x) for x in best.split(",")]
        assert abs(row[3] - 1.0) <= 1e-6       # abs_f at the nearest grid point
        assert abs(row[5] - 2.0 / 3.0) <= 1e-6  # fbar

        # 17 significant digits round-trip to the exact in-memory doubles
        record = transfer_amplitude(spec, row[0])
        rep = fidelity_report(record.t, record.f, record.phase_degenerate)
        assert row[1] == rep.f.real
        assert row[2] == rep.f.imag
        assert row[3] == rep.abs_f
        assert row[4] == rep.gamma
        assert row[5] == rep.fbar
        assert row[6] == rep.fbar_corrected
        assert row[7] == rep.correction_phase

    def test_csv_is_locale_independent(self, capsys):
        code, out, _ = _run(
            capsys, "simulate", "--preset", "sec3-two-spin", "--J", "1", "--B", "0.5",
            "--t-max", "2.0", "--steps", "5",
        )
        assert code == 0
        assert ";" not in out
        assert "\r" not in out

    def test_malformed_json_reports_offset(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{"sites": [}', encoding="utf-8")
        code, _, err = _run(capsys, "simulate", "--chain", str(bad), "--t-max", "1.0")
        assert code == 2
        assert str(bad) in err
        assert "offset" in err

    def test_validation_error_forwarded(self, tmp_path, capsys):
        bad = tmp_path / "short.json"
        bad.write_text('{"sites": [{"spin": "half", "field": 0.0}], "couplings": []}')
        code, _, err = _run(capsys, "simulate", "--chain", str(bad), "--t-max", "1.0")
        assert code == 2
        assert "2 sites" in err

    def test_missing_chain_source(self, capsys):
        code, _, err = _run(capsys, "simulate", "--t-max", "1.0")
        assert code == 2
        assert "chain" in err


class TestOptimize:
    def test_plain_json_result(self, capsys):
        code, out, _ = _run(
            capsys, "optimize", "--preset", "sec2-two-spin", "--J", "1", "--B", "0",
            "--t-max", "2.8",
        )
        assert code == 0
        res = json.loads(out)
        assert abs(res["fbar"] - 2.0 / 3.0) <= 1e-9
        assert abs(res["best_t"] - math.pi / SQRT2) <= 1e-8
        assert res["best_field"] is None
        assert res["evaluations"] > 0

    def test_corrected_flag(self, capsys):
        code, out, _ = _run(
            capsys, "optimize", "--preset", "sec3-three-spin-center",
            "--J", str(2 * SQRT2 / 3), "--B", "1.0", "--t-max", "25", "--corrected",
        )
        assert code == 0
        res = json.loads(out)
        assert abs(res["fbar_corrected"] - 0.9678) <= 5e-4

    def test_tune_field(self, capsys):
        code, out, _ = _run(
            capsys, "optimize", "--preset", "sec2-three-spin-center", "--J", "1",
            "--B", "0", "--t-max", "3.8", "--tune-field", "0", "3",
        )
        assert code == 0
        res = json.loads(out)
        assert abs(res["fbar"] - 1.0) <= 1e-5
        # any field of the (2l+1) pi / t_c family is an exact tuning here
        assert min(abs(res["best_field"] - b) for b in (1.0, 3.0)) <= 1e-3

    def test_zero_coupling_chain(self, tmp_path, capsys):
        chain = tmp_path / "dead.json"
        chain.write_text(json.dumps({
            "sites": [{"spin": "half", "field": 0.0}, {"spin": "half", "field": 0.0}],
            "couplings": [0.0],
        }))
        code, out, _ = _run(capsys, "optimize", "--chain", str(chain), "--t-max", "5")
        assert code == 0
        res = json.loads(out)
        assert res["fbar"] == 0.5
        assert res["best_t"] == 0.0


class TestVerify:
    def test_subset_passes(self, tmp_path, capsys):
        report = tmp_path / "report.json"
        code, out, _ = _run(capsys, "verify", "--only", "spectrum", "--out", str(report))
        assert code == 0
        assert "PASS  spectrum-sec2-two-spin" in out
        payload = json.loads(report.read_text())
        assert payload["passed"] is True
        names = {c["name"] for c in payload["checks"]}
        assert names == {f"spectrum-{n}" for n in (
            "sec2-two-spin", "sec2-three-spin-center", "sec3-two-spin",
            "sec3-three-spin-center", "sec4-three-spin-center",
        )}
        for check in payload["checks"]:
            assert check["tolerance"] == 1e-12
            assert check["measured"] <= 1e-12

    def test_injected_fault_is_named(self, capsys, monkeypatch):
        # break the hopping rule: pretend every bond couples like spin-1/2
        import spintransfer.excitation as excitation

        monkeypatch.setattr(excitation, "_hopping_scale", lambda s1, s2: 0.5)
        code, out, _ = _run(capsys, "verify", "--only", "spectrum")
        assert code == 1
        assert "FAIL  spectrum-sec2-two-spin" in out
        # the pure spin-1/2 system is untouched by this fault
        assert "PASS  spectrum-sec3-two-spin" in out

    def test_unmatched_filter(self, capsys):
        code, _, err = _run(capsys, "verify", "--only", "nonexistent-check")
        assert code == 2
        assert "no checks match" in err


class TestManifest:
    def test_sidecar_file(self, tmp_path, capsys):
        manifest = tmp_path / "run.json"
        out = tmp_path / "out.csv"
        code, _, err = _run(
            capsys, "simulate", "--preset", "sec2-two-spin", "--J", "1", "--B", "0",
            "--t-max", "1.0", "--steps", "3", "--out", str(out),
            "--manifest", str(manifest),
        )
        assert code == 0
        assert err == ""
        payload = json.loads(manifest.read_text())
        assert payload["command"] == "simulate"
        assert payload["parameters"]["steps"] == 3
        assert len(payload["input_digest"]) == 64
        assert payload["duration_s"] >= 0.0
        assert payload["version"]

    def test_stderr_by_default(self, capsys):
        code, _, err = _run(
            capsys, "optimize", "--preset", "sec2-two-spin", "--J", "1", "--B", "0",
            "--t-max", "2.8",
        )
        assert code == 0
        payload = json.loads(err.strip().split("\n")[-1])
        assert payload["command"] == "optimize"


def test_version_flag(capsys):
    code = main(["--version"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip()
