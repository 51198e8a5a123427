"""Command-line interface: verbs, exit codes, and artifact writing."""

import numpy as np
import pytest

from curvmhd import dumpio
from curvmhd.cli import EXIT_CONFIG, EXIT_NAN, EXIT_OK, main
from curvmhd.problems import register_problems


def _run_argv(out_dir, *extra):
    return ["run", "--problem", "alfven", "--nx", "16", "--ny", "16",
            "--tfinal", "0.01", "--out", str(out_dir), *extra]


def test_run_ok_exit_code_and_final_dump(tmp_path, capsys):
    assert main(_run_argv(tmp_path)) == EXIT_OK
    out = capsys.readouterr().out
    assert "alfven/default: ok" in out
    dumps = sorted(tmp_path.glob("*.dump"))
    assert len(dumps) == 1
    header, fields = dumpio.read_dump(dumps[0])
    assert header["problem"] == "alfven/default"
    assert np.all(np.isfinite(fields["rho"]))


def test_run_dump_every_writes_intermediate_files(tmp_path):
    assert main(_run_argv(tmp_path, "--dump-every", "1",
                          "--tfinal", "0.05")) == EXIT_OK
    dumps = sorted(tmp_path.glob("*.dump"))
    assert len(dumps) >= 2  # intermediate snapshots plus the final state
    steps = [dumpio.read_dump(p)[0]["step"] for p in dumps]
    assert steps == sorted(steps)


def test_run_aborted_state_returns_exit_nan(tmp_path, capsys):
    argv = ["run", "--problem", "blast", "--nx", "16", "--ny", "16",
            "--cfl", "20.0", "--tfinal", "0.01", "--out", str(tmp_path)]
    assert main(argv) == EXIT_NAN
    out = capsys.readouterr().out
    assert ": ok" not in out


def test_unknown_problem_is_config_error(tmp_path, capsys):
    assert main(_run_argv(tmp_path, "--problem", "nosuch")) == EXIT_CONFIG
    assert "error:" in capsys.readouterr().err


def test_unknown_variant_is_config_error(tmp_path, capsys):
    argv = _run_argv(tmp_path)
    argv[argv.index("alfven")] = "alfven/nosuch"
    assert main(argv) == EXIT_CONFIG
    assert "error:" in capsys.readouterr().err


def test_bad_flux_choice_rejected_by_parser(tmp_path):
    with pytest.raises(SystemExit):
        main(_run_argv(tmp_path, "--flux", "roe"))


def test_list_problems_covers_registry(capsys):
    assert main(["list-problems"]) == EXIT_OK
    out = capsys.readouterr().out
    for name in register_problems():
        assert name in out


def test_converge_prints_order_table(capsys):
    argv = ["converge", "--problem", "alfven", "--sizes", "16", "32",
            "--tfinal", "0.05"]
    assert main(argv) == EXIT_OK
    out = capsys.readouterr().out
    assert "16" in out and "32" in out
    assert "err_u" in out or "u" in out


def test_converge_out_writes_refinement_dumps(tmp_path, capsys):
    argv = ["converge", "--problem", "alfven", "--sizes", "16", "32",
            "--tfinal", "0.05", "--out", str(tmp_path)]
    assert main(argv) == EXIT_OK
    paths = sorted(tmp_path.glob("alfven_*.dump"))
    assert [p.name for p in paths] == ["alfven_0016.dump",
                                       "alfven_0032.dump"]
    header, _ = dumpio.read_dump(paths[0])
    assert "err_B" in header


def test_inspect_dump_prints_header(tmp_path, capsys):
    assert main(_run_argv(tmp_path)) == EXIT_OK
    dump = sorted(tmp_path.glob("*.dump"))[0]
    capsys.readouterr()
    assert main(["inspect-dump", str(dump)]) == EXIT_OK
    out = capsys.readouterr().out
    assert "alfven" in out and "rho" in out


def test_inspect_missing_file_is_config_error(tmp_path, capsys):
    missing = tmp_path / "nope.dump"
    assert main(["inspect-dump", str(missing)]) == EXIT_CONFIG
    assert "error:" in capsys.readouterr().err
