import json

import pytest

from oqcompact.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dims_text(capsys):
    code, out, _ = run(capsys, "dims", "--presentation", "ALT_FULL", "--degree", "4")
    assert code == 0
    assert out.strip() == "1 3 8 18 38"


def test_dims_json_is_sorted(capsys):
    code, out, _ = run(capsys, "dims", "--degree", "3", "--format", "json", "--no-timings")
    data = json.loads(out)
    assert code == 0 and data["dims"] == [1, 3, 8, 18] and data["pbw"] == data["dims"]
    assert list(data) == sorted(data)


def test_equal(capsys):
    code, out, _ = run(capsys, "equal", "W[1]*W[0]", "W[0]*W[1] + (G[1]-Gt[1])/(q+q^-1)",
                       "--presentation", "ALT_FULL", "--degree", "4")
    assert code == 0 and out.strip() == "equal"
    code, out, _ = run(capsys, "equal", "W[1]*W[0]", "W[0]*W[1]")
    assert code == 1 and out.startswith("not equal")


def test_normalize(capsys):
    code, out, _ = run(capsys, "normalize", "W[1]*W[0]")
    assert code == 0
    assert out.strip() == "W[0]*W[1] - q/(q^2 + 1)*Gt[1] + q/(q^2 + 1)*G[1]"
    code, out, _ = run(capsys, "normalize", "W[0]*W[1]*W[0]*W[0]*W[1]", "--presentation", "OQ_DG", "--format", "json")
    assert code == 0 and json.loads(out)["D"] == 5


def test_normalize_reads_stdin(capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("W[0] - W[0]"))
    code, out, _ = run(capsys, "normalize", "-")
    assert code == 0 and out.strip() == "0"


def test_element(capsys):
    code, out, _ = run(capsys, "element", "Bd[1]")
    assert code == 0 and out.strip() == "q^-2*W[1]*W[0] - W[0]*W[1]"
    code, out, _ = run(capsys, "element", "wclosed[WWalt_minus,0]")
    assert out.strip() == "W[0]"
    code, out, _ = run(capsys, "element", "G[1]", "--format", "json")
    assert json.loads(out)["alphabet"] == "ESS"


@pytest.mark.parametrize("argv", [
    ["normalize", "W[1]*"],
    ["dims", "--presentation", "NOPE"],
    ["normalize", "W[-2]", "--degree", "2"],
    ["verify", "--checks", "check_nothing"],
    ["element", "wclosed[nope,1]"],
    ["dims", "--degree", "-1"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_resource_limit_exit_three(capsys):
    from oqcompact import verify

    verify.clear_cache()  # a cached build would bypass the limit
    try:
        code, _, err = run(capsys, "dims", "--degree", "8", "--max-rows", "30")
    finally:
        verify.set_build_limits()
    assert code == 3 and "limit" in err


def test_verify_json_all_pass(capsys):
    code, out, _ = run(capsys, "verify", "--degree", "6", "--format", "json", "--no-timings")
    data = json.loads(out)
    assert code == 0
    assert all(r["status"] == "pass" for r in data)
    assert all(r["millis"] == 0 for r in data)


def test_verify_text_and_figures(capsys, tmp_path):
    code, out, err = run(capsys, "verify", "--degree", "4", "--checks", "check_pbw_dims,check_dims_match",
                         "--figures", str(tmp_path))
    assert code == 0 and "2/2 checks passed" in out
    assert (tmp_path / "suite_timings.png").stat().st_size > 0
    assert (tmp_path / "suite_dims.png").stat().st_size > 0


def test_dims_figure(capsys, tmp_path):
    code, _, _ = run(capsys, "dims", "--degree", "4", "--presentation", "OQ_DG", "--figures", str(tmp_path))
    assert code == 0
    assert (tmp_path / "dims_OQ_DG_D4.png").exists()


def test_verify_mutate(capsys):
    code, out, _ = run(capsys, "verify", "--mutate", "--degree", "4", "--checks", "check_wwalt,check_nnot")
    assert code == 0
    assert "0/2 checks passed" in out


def test_threads_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("OQCOMPACT_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--degree", "4", "--checks", "check_pbw_dims,check_qdg_in_O")
    assert code == 0
