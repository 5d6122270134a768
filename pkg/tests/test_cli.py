import json

import pytest

from multigme import catalog
from multigme.cli import (
    EXIT_MISMATCH,
    EXIT_NONCONVERGENCE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_USAGE,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("dims, text", [(["2"] * 5, "1.2247"), (["4"] * 4, "1.3229"), (["2"], "0.0000")])
def test_bound(capsys, dims, text):
    code, out, _ = run(capsys, "bound", *dims)
    assert code == EXIT_OK and out.strip() == text


@pytest.mark.parametrize("dims", [["x"], ["0", "2"], ["-3"]])
def test_bound_malformed(capsys, dims):
    code, _, err = run(capsys, "bound", *dims)
    assert code == EXIT_USAGE and err.startswith("error[usage]:")


def test_compute_w3(capsys, tmp_path):
    path = tmp_path / "w3.json"
    code, out, _ = run(capsys, "compute", "w3", "--json", str(path))
    assert code == EXIT_OK
    assert "GME         0.8165" in out and "bound       1.0000" in out
    rec = json.loads(path.read_text())
    assert rec["version"] == "1"
    assert rec["config"] == {"alpha": 1.0, "tol": 1e-10, "max_iters": 5000, "restarts": 64, "seed": 0, "symmetric_mode": False}
    assert rec["result"]["gme"] == pytest.approx(0.8165, abs=1e-3)
    assert rec["expected"]["pass"] is True


def test_compute_ame5_flags(capsys):
    code, out, _ = run(capsys, "compute", "ame5", "--restarts", "128", "--seed", "7")
    assert code == EXIT_OK and "GME         1.1291" in out


def test_compute_symmetric(capsys):
    code, out, _ = run(capsys, "compute", "dicke_qutrit", "--symmetric")
    assert code == EXIT_OK and "GME         1.0282" in out
    code, _, err = run(capsys, "compute", "cluster4", "--symmetric")
    assert code == EXIT_USAGE and "symmetric" in err


def test_compute_file_errors(capsys, tmp_path):
    zero = tmp_path / "zero_state.ket"
    zero.write_text("|00> - |00>\n")
    code, _, err = run(capsys, "compute", str(zero))
    assert code == EXIT_PARSE and err.startswith("error[parse]:")
    for bad in ["|00> + |000>", "dims: 2 2\n|03>", "|00> +"]:
        f = tmp_path / "bad.ket"
        f.write_text(bad)
        code, _, err = run(capsys, "compute", str(f))
        assert code == EXIT_PARSE, bad
        assert len(err.strip().splitlines()) == 1


def test_compute_unknown_and_external(capsys):
    code, _, err = run(capsys, "compute", "no-such-state")
    assert code == EXIT_USAGE and err.startswith("error[usage]:")
    code, _, err = run(capsys, "compute", "qubit6_ac13")
    assert code == EXIT_USAGE and "no amplitudes" in err


def test_compute_nonconvergence(capsys):
    code, _, err = run(capsys, "compute", "ame5", "--max-iters", "2", "--restarts", "2")
    assert code in (EXIT_NONCONVERGENCE, EXIT_MISMATCH)
    assert err.startswith("error[")


def test_compute_nonconvergence_only(capsys, tmp_path):
    # a state whose value is not checked against a catalog expectation
    f = tmp_path / "s.ket"
    f.write_text(catalog.ame5().ket_text())
    code, _, err = run(capsys, "compute", str(f), "--max-iters", "2", "--restarts", "2")
    assert code == EXIT_NONCONVERGENCE and err.startswith("error[convergence]:")


def test_compute_rescale_note(capsys, tmp_path):
    f = tmp_path / "ghz.ket"
    f.write_text("|00>+|11>\n")
    code, out, err = run(capsys, "compute", str(f))
    assert code == EXIT_OK and "rescaled" in err and "GME         0.7654" in out


def test_bad_flags(capsys):
    code, _, err = run(capsys, "compute", "w3", "--restarts", "0")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "reproduce", "IV")
    assert code == EXIT_USAGE and err.startswith("error[usage]:")
    code, _, _ = run(capsys)
    assert code == EXIT_USAGE


def test_reproduce_tables(capsys):
    code, out, _ = run(capsys, "reproduce", "II")
    assert code == EXIT_OK
    for frag in ["4-qubit", "1.1371", "1.0282", "4-qutrit", "1.2709", "1.1547", "4-ququart", "1.3229", "1.2247"]:
        assert frag in out
    assert out.count("PASS") == 3

    code, out, _ = run(capsys, "reproduce", "III")
    assert code == EXIT_OK and out.count("PASS") == 4
    assert "2x2x4" in out

    code, out, _ = run(capsys, "reproduce", "I")
    assert code == EXIT_OK
    line = next(l for l in out.splitlines() if "6-qubit" in l)
    assert "SKIPPED" in line


def test_reproduce_mismatch_exit(capsys):
    # a single start with two sweeps cannot reach the reported values
    code, _, err = run(capsys, "reproduce", "II", "--restarts", "1", "--max-iters", "2")
    assert code == EXIT_MISMATCH and err.startswith("error[mismatch]:")


def test_catalog_list_and_show(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == EXIT_OK and len(out.strip().splitlines()) >= 13
    assert all("Example" in line for line in out.strip().splitlines())
    code, out, _ = run(capsys, "catalog", "show", "het224")
    body = [l for l in out.splitlines() if "|" in l]
    assert code == EXIT_OK and len(body) == 4
    for ket in ["|000>", "|011>", "|102>", "|113>"]:
        assert ket in out
    code, _, err = run(capsys, "catalog", "show", "nope")
    assert code == EXIT_USAGE
    code, _, err = run(capsys, "catalog", "show")
    assert code == EXIT_USAGE


def test_catalog_export_then_compute(capsys, tmp_path):
    f = tmp_path / "w3.ket"
    code, _, _ = run(capsys, "catalog", "export", "w3", "-o", str(f))
    assert code == EXIT_OK
    code, out, _ = run(capsys, "compute", str(f))
    assert code == EXIT_OK and "GME         0.8165" in out


def test_json_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "compute", "cluster4", "--seed", "3", "--json", str(a))
    run(capsys, "compute", "cluster4", "--seed", "3", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
