import json
import subprocess
import sys
from fractions import Fraction

import pytest

from betajacobi.cli import main
from betajacobi.reproduce import TABLE_IDS, cell_passes, load_published, published_cells, run_reproduce


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_eval_table_three_cell(capsys):
    status, out, _ = run(
        capsys, "eval", "--n", "10", "--alpha", "1/3", "--beta", "1000", "--x", "1",
        "--method", "b", "--kmax", "5", "--compare-oracle",
    )
    assert status == 0
    report = json.loads(out)
    assert list(report) == ["params", "method", "kmax", "value", "oracle", "rel_error"]
    err = float(report["rel_error"])
    assert 0.60e-16 <= err <= 0.60e-14


def test_eval_degree_zero(capsys):
    status, out, _ = run(capsys, "eval", "--n", "0", "--alpha", "1/3", "--beta", "7", "--x", "1", "--method", "finite")
    assert status == 0
    assert Fraction(json.loads(out)["value"]) == 1


def test_finite_equals_oracle(capsys):
    common = ["--n", "6", "--alpha", "1/3", "--beta", "20", "--digits", "40"]
    _, out1, _ = run(capsys, "eval", *common, "--x", "3/2", "--method", "finite")
    # b = 26, z = 1 - 3/26 = 23/26
    _, out2, _ = run(capsys, "eval", *common, "--z", "23/26", "--method", "oracle")
    assert json.loads(out1)["value"] == json.loads(out2)["value"]
    _, out3, _ = run(capsys, "oracle", *common, "--z", "23/26")
    assert json.loads(out3)["value"] == json.loads(out2)["value"]


def test_argument_scaling(capsys):
    common = ["--n", "4", "--alpha", "1/3", "--beta", "50", "--x", "1", "--method", "oracle"]
    _, a, _ = run(capsys, "eval", *common, "--argument-scaling", "beta")
    _, b, _ = run(capsys, "eval", *common, "--argument-scaling", "b")
    assert json.loads(a)["value"] != json.loads(b)["value"]
    _, c, _ = run(capsys, "eval", *common[:-2], "--method", "b", "--kmax", "4", "--compare-oracle")
    assert json.loads(c)["oracle"] == json.loads(b)["value"]


def test_output_is_deterministic(capsys):
    argv = ["zeros", "--n", "5", "--alpha", "1/3", "--beta", "100", "--terms", "3", "--compare-oracle"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b


def test_zeros_json(capsys):
    status, out, _ = run(
        capsys, "zeros", "--n", "5", "--alpha", "1/3", "--beta", "100", "--method", "delta", "--terms", "3",
        "--compare-oracle",
    )
    assert status == 0
    rows = json.loads(out)
    assert [r["k"] for r in rows] == [1, 2, 3, 4, 5]
    assert list(rows[0]) == ["k", "z", "x", "oracle_z", "rel_error"]
    published = [0.37e-5, 0.41e-6, 0.41e-7, 0.27e-8, 0.61e-10]
    for row, pub in zip(rows, published):
        assert pub / 10 <= float(row["rel_error"]) <= pub * 10


def test_zeros_oracle_degree_one(capsys):
    _, out, _ = run(capsys, "zeros", "--n", "1", "--alpha", "1/3", "--beta", "100", "--method", "oracle")
    (row,) = json.loads(out)
    assert abs(float(row["z"]) - 299 / 307) < 1e-15


def test_zeros_delta_beats_epsilon(capsys):
    common = ["zeros", "--n", "5", "--alpha", "1/3", "--beta", "100", "--terms", "3", "--compare-oracle"]
    _, e, _ = run(capsys, *common, "--method", "epsilon")
    _, d, _ = run(capsys, *common, "--method", "delta")
    for re, rd in zip(json.loads(e), json.loads(d)):
        assert float(rd["rel_error"]) < float(re["rel_error"])


def test_laguerre_zeros_csv(capsys):
    status, out, _ = run(capsys, "laguerre-zeros", "--n", "2", "--alpha", "0", "--format", "csv")
    assert status == 0
    lines = out.strip().splitlines()
    assert lines[0] == "k,x,lo,hi"
    assert len(lines) == 3


def test_text_format(capsys):
    _, out, _ = run(capsys, "oracle", "--n", "3", "--alpha", "1/3", "--beta", "10", "--format", "text")
    lines = out.strip().splitlines()
    assert lines[0].split() == ["k", "z", "lo", "hi"]
    assert len(lines) == 4


@pytest.mark.parametrize(
    "argv",
    [
        ["eval", "--n", "3", "--alpha", "0.5", "--beta", "10", "--x", "1"],
        ["eval", "--n", "3", "--alpha", "-1", "--beta", "10", "--x", "1"],
        ["eval", "--n", "3", "--alpha", "1", "--beta", "10", "--x", "1", "--kmax", "-1"],
        ["eval", "--n", "3", "--alpha", "1", "--beta", "10", "--x", "1", "--digits", "8"],
        ["eval", "--n", "3", "--alpha", "1", "--beta", "10"],
        ["eval", "--n", "3", "--alpha", "1", "--beta", "10", "--x", "20", "--method", "beta"],
        ["zeros", "--n", "0", "--alpha", "1", "--beta", "10"],
    ],
)
def test_bad_input_exits_nonzero(capsys, argv):
    status, out, err = run(capsys, *argv)
    assert status == 2
    assert out == ""
    assert "error" in err


def test_reproduce_exit_status(capsys):
    status, out, _ = run(capsys, "reproduce", "--table", "T1")
    assert status == 0
    assert out.splitlines()[0].split()[:3] == ["table", "coords", "published"]
    status, _, _ = run(capsys, "reproduce", "--table", "T2", "--format", "json")
    assert status == 1  # two 5-term cells disagree with the published column


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "betajacobi", "eval", "--n", "2", "--alpha", "0", "--beta", "9", "--x", "1",
         "--method", "finite"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "value" in json.loads(proc.stdout)


# -- published data and the comparison rule --------------------------------------


def test_published_data_complete():
    counts = {t: len(published_cells(t)) for t in TABLE_IDS}
    assert counts == {"T1": 20, "T2": 25, "T3": 20, "T4": 25, "R2": 5, "R3": 4, "S31": 4}
    for cell in load_published()["cells"]:
        assert Fraction(cell["value"]) > 0
        assert cell["source"]


def test_cell_rule():
    assert cell_passes(Fraction(3, 10**6), Fraction(1, 10**6), 32)
    assert not cell_passes(Fraction(11, 10**6), Fraction(1, 10**6), 32)
    assert not cell_passes(Fraction(1, 10**8), Fraction(11, 10**7), 32)
    # both under the floor 10^(2 - digits)
    assert cell_passes(Fraction(1, 10**40), Fraction(5, 10**17), 16)
    assert not cell_passes(Fraction(1, 10**40), Fraction(5, 10**17), 32)


def test_unknown_table():
    with pytest.raises(ValueError):
        run_reproduce("T9")


def test_parallel_matches_serial():
    a = run_reproduce("T3", jobs=1)
    b = run_reproduce("T3", jobs=2)
    assert [c.computed for c in a.cells] == [c.computed for c in b.cells]
