"""Command line front end: formats, determinism, exit codes, logging."""

import json
import math

import pytest

from nkernel.cli import main


def _run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


class TestKernelCommand:
    def test_unit_kernel_at_origin(self, capsys):
        rc, out, err = _run(
            capsys, ["kernel", "--alpha", "2", "--n", "1", "--z", "0,0", "--w", "0,0"]
        )
        assert rc == 0
        assert out == '{"log_scale": 0, "re": 0.31830988618379069, "im": 0}\n'
        assert err == ""

    def test_value_round_trips_through_text(self, capsys):
        rc, out, _ = _run(
            capsys, ["kernel", "--alpha", "2", "--n", "1", "--z", "0,0", "--w", "0,0"]
        )
        assert json.loads(out)["re"] == 1.0 / math.pi

    def test_extreme_magnitude_keeps_log_split(self, capsys):
        # z = w = 2 sits far outside the support: the section saturates at
        # its last term and the weight wins by e^(-1.6 n), far below float
        # range, so the log split must survive in the output
        rc, out, _ = _run(
            capsys,
            ["kernel", "--alpha", "2", "--n", "400", "--z", "2,0", "--w", "2,0"],
        )
        assert rc == 0
        data = json.loads(out)
        assert data["log_scale"] < -500.0
        assert 1.0 <= math.hypot(data["re"], data["im"]) <= math.e

    def test_asymptotic_variant_runs(self, capsys):
        rc, out, _ = _run(
            capsys,
            [
                "kernel", "--alpha", "2", "--n", "400", "--delta", "1",
                "--z", "0.5,0.1", "--w", "0.5,-0.1", "--asymptotic",
            ],
        )
        assert rc == 0
        data = json.loads(out)
        assert math.isfinite(data["re"]) and math.isfinite(data["im"])

    def test_reruns_are_byte_identical(self, capsys):
        argv = ["kernel", "--alpha", "3", "--n", "57", "--z", "0.3,0.2", "--w", "0.1,-0.4"]
        _, first, _ = _run(capsys, argv)
        _, second, _ = _run(capsys, argv)
        assert first == second


class TestXstarCommand:
    def test_frozen_unit_zeta_line(self, capsys):
        rc, out, _ = _run(
            capsys, ["xstar", "--alpha", "2", "--delta", "1", "--zeta-abs", "1", "--n", "1000"]
        )
        assert rc == 0
        assert out == (
            '{"xstar_root": 1000.4999583333386, '
            '"xstar_asymptotic": 999.5, "residual": 0}\n'
        )

    def test_inadmissible_context_is_a_clean_error(self, capsys):
        rc, out, err = _run(
            capsys, ["xstar", "--alpha", "2", "--delta", "1", "--zeta-abs", "0.5", "--n", "10"]
        )
        assert rc == 3
        assert out == ""
        assert err.startswith("error: ")


class TestEmCommand:
    def test_fields_and_magnitudes(self, capsys):
        rc, out, _ = _run(
            capsys,
            ["em", "--alpha", "2", "--delta", "1", "--zeta", "0.5,0", "--n", "200"],
        )
        assert rc == 0
        data = json.loads(out)
        assert abs(complex(data["r1_hat"]["re"], data["r1_hat"]["im"])) <= 1e-12
        assert abs(complex(data["r2_hat"]["re"], data["r2_hat"]["im"])) <= 5.0 / math.sqrt(200)
        assert 0.0 <= data["recombination_residual"] <= 1e-9


class TestErrorScalingCommand:
    def test_csv_rows_and_slope_footer(self, capsys):
        rc, out, _ = _run(
            capsys,
            ["error-scaling", "--alpha", "2", "--zeta", "0.25,0", "--n-list", "100,200,400"],
        )
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "N,abs_E"
        assert len(lines) == 5
        for line, n in zip(lines[1:4], (100, 200, 400)):
            ns, es = line.split(",")
            assert int(ns) == n
            assert math.isfinite(float(es)) and float(es) >= 0.0
        footer = json.loads(lines[4])
        assert "slope" in footer
        assert footer["slope"] is None or math.isfinite(footer["slope"])


class TestCorrelateCommand:
    def test_bulk_two_point(self, capsys):
        rc, out, _ = _run(
            capsys,
            ["correlate", "--alpha", "1", "--n", "1600", "--r", "0.4,0", "--offsets", "0,0;1,0"],
        )
        assert rc == 0
        data = json.loads(out)
        want = (1.0 - math.exp(-1.0)) / math.pi**2
        assert abs(data["predicted"] - want) <= 1e-12
        assert abs(data["measured"] - data["predicted"]) <= 0.05
        assert 0.0 <= data["gauge_residual"] <= 1e-10

    def test_gauge_below_gate_is_null(self, capsys):
        rc, out, _ = _run(
            capsys,
            ["correlate", "--alpha", "2", "--n", "5", "--r", "0.4,0", "--offsets", "0,0;1,0"],
        )
        assert rc == 0
        data = json.loads(out)
        assert data["gauge_residual"] is None
        assert math.isfinite(data["measured"])


class TestSampleCommand:
    def test_histogram_accounting(self, capsys):
        rc, out, _ = _run(
            capsys,
            [
                "sample", "--alpha", "2", "--n", "50", "--trials", "3",
                "--seed", "9", "--bins", "6",
            ],
        )
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "bin_lo,bin_hi,count,predicted"
        assert len(lines) == 7
        counts = []
        predicted = []
        prev_hi = 0.0
        for line in lines[1:]:
            lo, hi, cnt, pred = line.split(",")
            assert float(lo) == prev_hi
            prev_hi = float(hi)
            counts.append(int(cnt))
            predicted.append(float(pred))
        assert abs(prev_hi - 1.2) <= 1e-15
        assert sum(counts) <= 150
        assert abs(sum(predicted) - 150.0) <= 1e-9 * 150.0

    def test_seed_shift_changes_draws(self, capsys):
        argv = ["sample", "--alpha", "2", "--n", "50", "--trials", "1", "--bins", "6"]
        _, out_a, _ = _run(capsys, argv + ["--seed", "1"])
        _, out_b, _ = _run(capsys, argv + ["--seed", "2"])
        assert out_a != out_b


class TestKcurveCommand:
    def test_grid_and_flat_limit(self, capsys):
        rc, out, _ = _run(capsys, ["kcurve", "--a", "0.999", "--tau-steps", "5"])
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "tau,K"
        assert len(lines) == 6
        taus = [float(line.split(",")[0]) for line in lines[1:]]
        ks = [float(line.split(",")[1]) for line in lines[1:]]
        assert taus[0] == 0.0
        assert abs(taus[-1] - 2.0 * math.pi) <= 1e-15
        assert all(abs(k - 1.0 / math.e) <= 1e-3 for k in ks)
        # tau = pi sits exactly at 1/e: the angular factor vanishes there
        assert abs(ks[2] - 1.0 / math.e) <= 1e-14


class TestExitCodesAndLogging:
    def test_missing_command_is_usage_error(self, capsys):
        assert main([]) == 2

    def test_unknown_command_is_usage_error(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_malformed_complex_flag_is_usage_error(self, capsys):
        rc = main(["kernel", "--alpha", "2", "--n", "1", "--z", "nope", "--w", "0,0"])
        assert rc == 2

    def test_domain_error_exits_three(self, capsys):
        rc, out, err = _run(
            capsys, ["kernel", "--alpha", "-1", "--n", "1", "--z", "0,0", "--w", "0,0"]
        )
        assert rc == 3
        assert out == ""
        assert err.startswith("error: ")

    def test_debug_log_goes_to_stderr_only(self, capsys, monkeypatch):
        argv = ["kernel", "--alpha", "2", "--n", "1", "--z", "0,0", "--w", "0,0"]
        monkeypatch.delenv("NK_LOG", raising=False)
        _, quiet_out, quiet_err = _run(capsys, argv)
        assert quiet_err == ""
        monkeypatch.setenv("NK_LOG", "debug")
        rc, out, err = _run(capsys, argv)
        assert rc == 0
        assert out == quiet_out
        assert "DEBUG" in err

    def test_unrecognized_log_level_warns_and_runs(self, capsys, monkeypatch):
        monkeypatch.setenv("NK_LOG", "verbose")
        rc, out, err = _run(
            capsys, ["kernel", "--alpha", "2", "--n", "1", "--z", "0,0", "--w", "0,0"]
        )
        assert rc == 0
        assert out == '{"log_scale": 0, "re": 0.31830988618379069, "im": 0}\n'
        assert err.startswith("warning: ")


class TestDensityCommand:
    def test_profile_against_flat_limit(self, capsys):
        rc, out, _ = _run(
            capsys,
            ["density", "--alpha", "2", "--n", "40", "--rmax", "1.2", "--points", "6"],
        )
        assert rc == 0
        lines = out.strip().split("\n")
        assert lines[0] == "r,exact_density,limit_density"
        assert len(lines) == 7
        for i, line in enumerate(lines[1:]):
            r, exact, limit = (float(v) for v in line.split(","))
            assert abs(r - 1.2 * (i + 1) / 6.0) <= 1e-16
            assert exact >= 0.0
            if r < 1.0:
                assert abs(limit - 1.0 / math.pi) <= 1e-15
            elif r > 1.0:
                assert limit == 0.0
