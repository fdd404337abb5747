import json
import subprocess
import sys
from pathlib import Path

import pytest

from nctorus import HermiticityError, ParseError, parse_element
from nctorus.cli import emit_report, load_config, run

REPO = Path(__file__).resolve().parent.parent
BLOCK_CFG = REPO / "demos" / "torus3-block.cfg"
BLOCK_U1_CFG = REPO / "demos" / "torus3-block-u1.cfg"


def write_cfg(tmp_path, body, name="problem.cfg"):
    path = tmp_path / name
    path.write_text(body, encoding="utf-8")
    return path


# -- loading --------------------------------------------------------------------


def test_load_shipped_config():
    config = load_config(BLOCK_CFG)
    assert config.command == "build-lc"
    assert config.calculus.n == 3
    assert not config.calculus.algebra.commutative
    alg = config.calculus.algebra
    assert config.upper[1][2] == alg.gen(2)
    assert config.upper[2][1] == alg.gen(2, -1)
    assert config.params.X[0][0] == alg.gen(1) + alg.gen(1, -1)
    assert config.lower is None


def test_load_reports_parse_error_position(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = U1 +\n\n[run]\ncommand = build-lc\n",
    )
    with pytest.raises(ParseError) as info:
        load_config(path)
    assert info.value.line == 5


def test_load_rejects_non_hermitian_param(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.2 = 1\nh.3.3 = 1\n\n"
        "[params]\nX.1.1 = i\n\n[run]\ncommand = build-lc\n",
    )
    with pytest.raises(HermiticityError):
        load_config(path)


def test_load_rejects_bad_index(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.4.1 = 1\n\n[run]\ncommand = build-lc\n",
    )
    with pytest.raises(IndexError):
        load_config(path)


def test_load_rejects_unknown_command(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.2 = 1\nh.3.3 = 1\n\n"
        "[run]\ncommand = frobnicate\n",
    )
    with pytest.raises(ParseError):
        load_config(path)


def test_load_rejects_bad_antihermitian(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.2 = 1\nh.3.3 = 1\n\n"
        "[params]\nA.1.1.1 = 1\n\n[run]\ncommand = build-lc\n",
    )
    with pytest.raises(HermiticityError):
        load_config(path)


# -- running ----------------------------------------------------------------------


def test_run_build_lc_block():
    config = load_config(BLOCK_CFG)
    report = run(config)
    assert report.status == "ok"
    assert report.weak_symmetry["holds"] is True
    assert report.verification["pass"] is True
    alg = config.calculus.algebra
    gamma_111 = parse_element(alg, report.gamma[0][0][0])
    assert gamma_111 == alg.i() * (alg.gen(1) + alg.gen(1, -1))
    assert report.gamma[1][1][1] == "i"


def test_run_not_weakly_symmetric():
    config = load_config(BLOCK_U1_CFG)
    report = run(config)
    assert report.status == "not_weakly_symmetric"
    assert report.weak_symmetry["holds"] is False
    assert report.weak_symmetry["drho"]["1,2,3"] == "i*U1^-1 + i*U1"
    assert report.gamma is None


def test_run_check_weak_symmetry(tmp_path):
    config = load_config(BLOCK_CFG)
    config.command = "check-weak-symmetry"
    report = run(config)
    assert report.status == "ok"
    assert report.gamma is None
    assert report.f is None


def test_run_verify_given(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.3 = U2\nh.3.2 = adj(U2)\n\n"
        "[connection]\ngamma.2.2.2 = i\n\n[run]\ncommand = verify-given\n",
    )
    report = run(load_config(path))
    assert report.status == "ok"
    assert report.verification["pass"] is True


def test_run_verify_given_failing(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.3 = U2\nh.3.2 = adj(U2)\n\n"
        "[connection]\ngamma.1.1.1 = 0\n\n[run]\ncommand = verify-given\n",
    )
    report = run(load_config(path))
    assert report.status == "verification_failed"
    assert report.verification["pass"] is False


def test_run_explicit_lower(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.3 = U2\nh.3.2 = adj(U2)\n"
        "hinv.1.1 = 1\nhinv.2.3 = U2\nhinv.3.2 = U2^-1\n\n[run]\ncommand = build-lc\n",
    )
    report = run(load_config(path))
    assert report.status == "ok"


def test_run_bad_lower_is_error(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.3 = U2\nh.3.2 = adj(U2)\n"
        "hinv.1.1 = 1\nhinv.2.3 = U1\nhinv.3.2 = U1^-1\n\n[run]\ncommand = build-lc\n",
    )
    report = run(load_config(path))
    assert report.status == "error"
    assert "NotInverse" in report.error


# -- emission -----------------------------------------------------------------------


def test_emit_json_deterministic():
    config = load_config(BLOCK_CFG)
    first = emit_report(run(config), "json")
    second = emit_report(run(load_config(BLOCK_CFG)), "json")
    assert first == second
    payload = json.loads(first)
    assert payload["schema"] == 1
    assert payload["status"] == "ok"


def test_emit_gamma_strings_reparse():
    from nctorus import HermitianMetric, build_levi_civita

    config = load_config(BLOCK_CFG)
    report = run(config)
    alg = config.calculus.algebra
    metric = HermitianMetric(config.calculus, config.upper, config.lower)
    conn = build_levi_civita(metric, config.params)
    for a in range(3):
        for i in range(3):
            for j in range(3):
                assert parse_element(alg, report.gamma[a][i][j]) == conn.gamma[a][i][j]


def test_emit_text_format():
    config = load_config(BLOCK_CFG)
    text = emit_report(run(config), "text")
    assert "status = ok" in text
    assert "gamma[2][2][2] = i" in text
    assert text == emit_report(run(load_config(BLOCK_CFG)), "text")
    with pytest.raises(ValueError):
        emit_report(run(config), "yaml")


def test_run_check_weak_symmetry_diagonal(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 2\nh.2.2 = 1/3\nh.3.3 = 1\n\n"
        "[run]\ncommand = check-weak-symmetry\n",
    )
    report = run(load_config(path))
    assert report.status == "ok"
    assert report.weak_symmetry["holds"] is True
    assert report.weak_symmetry["drho"]["1,2,3"] == "0"


def test_run_with_structure_constants(tmp_path):
    # Heisenberg bracket [d1, d2] = d3 with the identity metric builds and
    # verifies end to end through the config front end
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[lie]\nc.3.1.2 = 1\n\n"
        "[metric]\nh.1.1 = 1\nh.2.2 = 1\nh.3.3 = 1\n\n[run]\ncommand = build-lc\n",
    )
    report = run(load_config(path))
    assert report.status == "ok"
    assert report.verification["pass"] is True
    flattened = [s for plane in report.gamma for row in plane for s in row]
    assert any(s != "0" for s in flattened)


def test_run_rank_mismatch_is_error(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nN = 2\nh.1.1 = 1\nh.2.2 = 1\n\n"
        "[run]\ncommand = build-lc\n",
    )
    report = run(load_config(path))
    assert report.status == "error"


def test_run_with_valid_antihermitian_param(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[metric]\nh.1.1 = 1\nh.2.3 = U2\nh.3.2 = adj(U2)\n\n"
        "[params]\nA.1.1.1 = i\n\n[run]\ncommand = build-lc\n",
    )
    report = run(load_config(path))
    assert report.status == "ok"
    assert report.gamma[0][0][0] == "i"
    assert report.verification["pass"] is True


def test_load_rejects_non_jacobi_lie_section(tmp_path):
    path = write_cfg(
        tmp_path,
        "[algebra]\nn = 3\n\n[lie]\nc.1.1.2 = 1\nc.2.1.3 = 1\n\n"
        "[metric]\nh.1.1 = 1\nh.2.2 = 1\nh.3.3 = 1\n\n[run]\ncommand = build-lc\n",
    )
    with pytest.raises(ParseError):
        load_config(path)


# -- process-level behaviour ------------------------------------------------------------


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "nctorus", *args],
        capture_output=True,
        text=True,
        cwd=REPO,
    )


def test_cli_exit_codes():
    ok = run_cli("--config", str(BLOCK_CFG))
    assert ok.returncode == 0
    bad = run_cli("--config", str(BLOCK_U1_CFG))
    assert bad.returncode == 2
    missing = run_cli("--config", "no-such-file.cfg")
    assert missing.returncode == 1


def test_cli_params_zero_override():
    out = run_cli("--config", str(BLOCK_CFG), "--params-zero")
    assert out.returncode == 0
    payload = json.loads(out.stdout)
    assert payload["gamma"][0][0][0] == "0"
    assert payload["gamma"][1][1][1] == "i"


def test_cli_out_file(tmp_path):
    target = tmp_path / "report.json"
    out = run_cli("--config", str(BLOCK_CFG), "--out", str(target))
    assert out.returncode == 0
    assert json.loads(target.read_text())["status"] == "ok"


def test_cli_command_override():
    out = run_cli("--config", str(BLOCK_CFG), "--command", "check-weak-symmetry")
    payload = json.loads(out.stdout)
    assert payload["command"] == "check-weak-symmetry"
    assert "gamma" not in payload
