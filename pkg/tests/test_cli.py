import json
import subprocess
import sys

import pytest

from reesalg.cli import EXIT_FAIL, EXIT_INVALID, EXIT_LIMIT, EXIT_OK, golden_path, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_params_text(capsys):
    code, out, _ = run(capsys, "params", "--m0", "4", "--d", "1")
    assert code == EXIT_OK
    assert out.startswith("m0=4 d=1 a=1 b=1 m=(4, 5, 6, 7)")
    assert out.count("\n  ") == 6


def test_params_json(capsys):
    code, out, _ = run(capsys, "params", "--m0", "9", "--d", "2", "--format", "json")
    d = json.loads(out)
    assert code == EXIT_OK
    assert d["schema"] == "rees-report/1"
    assert (d["params"]["a"], d["params"]["b"], d["params"]["m"]) == (2, 3, [9, 11, 13, 15])


@pytest.mark.parametrize("argv", [
    ["params", "--m0", "6", "--d", "2"],
    ["params", "--m0", "3", "--d", "1"],
    ["params", "--m0", "4", "--d", "0"],
])
def test_invalid_params_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_INVALID and "error" in err


@pytest.mark.parametrize("argv", [
    ["params", "--m0", "4", "--d", "1", "--bogus"],
    ["verify", "--m0", "4", "--d", "1", "--target", "nope"],
    ["smooth", "--m0", "4"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_INVALID


def test_verify_single_target_passes(capsys):
    code, out, _ = run(capsys, "verify", "--m0", "4", "--d", "1", "--target", "e-basis")
    assert code == EXIT_OK
    assert out.startswith("PASS e-basis m0=4 d=1 b=1")


def test_verify_failing_target_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "--m0", "6", "--d", "1", "--target", "e3-basis")
    assert code == EXIT_FAIL
    assert "lm: +X1^2*F[1,2]" in out


def test_verify_all_json_array(capsys):
    code, out, _ = run(capsys, "verify", "--m0", "4", "--d", "1", "--target", "all", "--format", "json")
    payload = json.loads(out)
    assert isinstance(payload, list) and len(payload) == 8
    assert all(r["schema"] == "rees-report/1" for r in payload)
    assert code == (EXIT_OK if all(r["pass"] for r in payload) else EXIT_FAIL)


def test_json_byte_identical_across_processes():
    argv = [sys.executable, "-m", "reesalg.cli", "verify", "--m0", "5", "--d", "1",
            "--target", "all", "--format", "json", "--seed", "2"]
    a = subprocess.run(argv, capture_output=True, check=False).stdout
    b = subprocess.run(argv, capture_output=True, check=False).stdout
    assert a and a == b


def test_resource_limit_exit_3(capsys):
    code, _, err = run(capsys, "verify", "--m0", "7", "--d", "2", "--target", "q-minimal", "--max-steps", "5")
    assert code == EXIT_LIMIT and "resource limit" in err


@pytest.mark.parametrize("mp,expect,code", [
    ((7, 2), "not_regular", EXIT_OK),
    ((6, 1), "not_regular", EXIT_OK),
    ((9, 2), "regular", EXIT_FAIL),
    ((4, 1), "regular", EXIT_OK),
])
def test_smooth_exit_codes(capsys, mp, expect, code):
    got, out, _ = run(capsys, "smooth", "--m0", str(mp[0]), "--d", str(mp[1]), "--expect", expect)
    assert got == code
    assert out.startswith("b=")


def test_smooth_json(capsys):
    _, out, _ = run(capsys, "smooth", "--m0", "9", "--d", "2", "--format", "json")
    d = json.loads(out)
    assert (d["b"], d["rank"], d["codim"], d["verdict"]) == (3, 0, 3, "not_regular")


def test_golden_write_then_match(capsys, tmp_path):
    argv = ("verify", "--m0", "5", "--d", "1", "--target", "e-basis", "--golden-dir", str(tmp_path), "--format", "json")
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK and json.loads(out)[-1]["details"]["status"] == "written"
    assert golden_path(tmp_path, 5, 1).read_text().count("\n") == 10
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK and json.loads(out)[-1]["details"]["status"] == "match"


def test_golden_shuffle_seed_gives_same_file(capsys, tmp_path):
    run(capsys, "verify", "--m0", "6", "--d", "1", "--target", "patil-gb", "--golden-dir", str(tmp_path))
    code, _, _ = run(capsys, "verify", "--m0", "6", "--d", "1", "--target", "patil-gb",
                     "--golden-dir", str(tmp_path), "--seed", "7")
    assert code == EXIT_OK


@pytest.fixture
def corrupted_golden(tmp_path):
    """A golden file whose first basis element has a flipped coefficient sign."""
    main(["verify", "--m0", "4", "--d", "1", "--target", "patil-gb", "--golden-dir", str(tmp_path)])
    path = golden_path(tmp_path, 4, 1)
    lines = path.read_text().splitlines()
    lines[0] = lines[0].replace(" - ", " + ", 1) if " - " in lines[0] else lines[0].replace(" + ", " - ", 1)
    path.write_text("\n".join(lines) + "\n")
    return tmp_path


def test_corrupted_golden_exit_1(capsys, corrupted_golden):
    capsys.readouterr()
    code, out, _ = run(capsys, "verify", "--m0", "4", "--d", "1", "--target", "patil-gb",
                       "--golden-dir", str(corrupted_golden), "--format", "json")
    golden = json.loads(out)[-1]
    assert code == EXIT_FAIL
    assert golden["details"]["status"] == "mismatch"
    assert len(golden["details"]["missing"]) == len(golden["details"]["unexpected"]) == 1
