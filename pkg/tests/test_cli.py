import json
import subprocess
import sys

import pytest

from gl3bethe.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_scalar_both_reports_all_keys(capsys):
    code, out, _ = run(capsys, "scalar", "--a", "1", "--b", "1", "--N", "2", "--seed", "4")
    rep = json.loads(out)
    assert code == 0
    for key in ("direct", "kernel", "normalization", "pass", "residue_tree_nodes", "elapsed_ms"):
        assert key in rep
    assert rep["pass"] is True


def test_scalar_direct_only(capsys):
    code, out, _ = run(capsys, "scalar", "--method", "direct", "--a", "1")
    rep = json.loads(out)
    assert code == 0 and rep["kernel"] is None and rep["pass"] is None


def test_scalar_explicit_parameters(capsys):
    code, out, _ = run(
        capsys, "scalar", "--q", "3", "--xi", "2", "--a", "1", "--b", "0", "--t", "-7", "--tau", "5"
    )
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["params"]["t"] == ["-7/1"]


def test_output_is_deterministic(capsys):
    argv = ("--seed", "11", "--no-timing", "scalar", "--a", "2", "--b", "1", "--N", "2")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "izergin", "--n", "3", "--seed", "2", "--backend", "float")
    assert code == 0 and json.loads(out)["pass"]


def test_verify_single_suite(capsys, tmp_path):
    dest = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--suite", "yforms", "--count", "2", "--json-out", str(dest))
    assert code == 0
    assert json.loads(dest.read_text()) == json.loads(out)


def test_config_file_with_flags_winning(capsys, tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text('seed = 3\nbackend = "float"\nn = 2\n')
    _, out, _ = run(capsys, "--config", str(cfg), "izergin", "--n", "1")
    rep = json.loads(out)
    assert len(rep["t"]) == 1
    assert isinstance(rep["q"], list)  # float scalars serialize as [re, im]


@pytest.mark.parametrize(
    "argv, name",
    [
        (["scalar", "--q", "1", "--xi", "2"], "SingularParameters"),
        (["scalar", "--q", "3", "--xi", "2", "--t", "5", "--tau", "5"], "ParameterCollision"),
        (["kernels", "--kind", "KF", "--a", "4"], "TooManyVariables"),
        (["frobnicate"], "UsageError"),
        (["scalar", "--t", "1/0"], "ConfigError"),
    ],
)
def test_usage_errors_exit_two_with_name(capsys, argv, name):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert name in err


def test_unknown_config_key(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"colour": "blue"}))
    code, _, err = run(capsys, "--config", str(cfg), "verify")
    assert code == 2 and "ConfigError" in err


def test_malformed_config(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    code, _, err = run(capsys, "--config", str(cfg), "verify")
    assert code == 2 and "ConfigError" in err


def test_failed_check_exits_one(capsys, monkeypatch):
    import gl3bethe.cli as cli
    from gl3bethe.suites import Check

    monkeypatch.setitem(cli.SUITES, "yforms", lambda sampler, **_: [Check("broken", 1, False, 0)])
    code, out, err = run(capsys, "verify", "--suite", "yforms")
    assert code == 1 and json.loads(out)["pass"] is False
    assert "check failed" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gl3bethe", "kernels", "--kind", "Y", "--a", "1", "--q", "3", "--t", "4", "--x", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "4/3"
