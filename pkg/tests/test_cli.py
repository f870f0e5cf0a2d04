import csv
import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ndfourier.cli import main, parse_rational, UsageError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def rows(text):
    return list(csv.reader(io.StringIO(text)))


def test_map_examples(capsys):
    code, out, _ = run(capsys, "map", "--bijection", "ternary-line:minus", "--inverse", "1/2")
    assert code == 0 and rows(out)[1][:2] == ["1/2", "1/3"]
    code, out, _ = run(capsys, "map", "--bijection", "quaternary:plus", "--inverse", "1")
    assert rows(out)[1][1] == "2"
    code, out, _ = run(capsys, "map", "--bijection", "identity", "--forward", "7")
    assert rows(out)[1][1] == "7"
    assert "\r" not in out


def test_map_flags_points_outside_the_set(capsys):
    code, out, _ = run(capsys, "map", "--forward", "1/3", "1/2")
    assert code == 2
    table = rows(out)
    assert table[0] == ["input", "output", "decimal_20", "status"]
    assert table[1][3] == "ok" and table[2][3] == "not-in-cantor-set"


@pytest.mark.parametrize(
    "argv",
    [
        ["map", "--forward", "0.5"],
        ["map", "--forward", "abc"],
        ["map", "--bijection", "nope", "--forward", "1"],
        ["map", "--forward", "1/0"],
        ["map", "--precision-bits", "4", "--forward", "1"],
        ["spectrum", "--bijection", "fechner:a=1,b=0", "--terms", "3"],
        ["figures", "--which", "fig7"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    assert run(capsys, *argv)[0] == 1


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["map"])
    assert exc.value.code == 1


def test_decimal_input_flag(capsys):
    code, out, _ = run(capsys, "map", "--decimal-input", "--bijection", "identity", "--forward", "0.1")
    assert code == 0 and rows(out)[1][1] == "1/10"
    assert parse_rational("-3/9") == parse_rational("-1/3")
    with pytest.raises(UsageError):
        parse_rational("1e-3")


def test_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--bijection", "quaternary:plus", "--terms", "5")
    assert rows(out) == [["n", "n_prime"], ["1", "2"], ["2", "8"], ["3", "10"], ["4", "32"], ["5", "34"]]
    code, out, _ = run(capsys, "spectrum", "--bijection", "quaternary:plus", "--terms", "2", "--format", "json")
    assert json.loads(out)["rows"][1] == {"n": 2, "n_prime": "8"}


def test_analyze_then_reconstruct(tmp_path, capsys):
    coeffs = tmp_path / "c.json"
    assert run(capsys, "analyze", "--signal", "sawtooth", "--terms", "30", "--output", str(coeffs))[0] == 0
    doc = json.loads(coeffs.read_text())
    assert doc["schema_version"] == 1 and doc["n_max"] == 30
    out_file = tmp_path / "r.csv"
    code, _, _ = run(capsys, "reconstruct", "--coefficients", str(coeffs), "--terms", "5", "--samples", "5",
                     "--output", str(out_file))
    assert code == 0
    table = rows(out_file.read_text())
    assert table[0] == ["x", "y", "coordinate_system"]
    assert [r[2] for r in table[1:]] == ["lower"] * 5 + ["upper"] * 5
    assert table[3][0] == "0" and abs(float(Fraction(table[3][1]))) < 1e-10


def test_reconstruct_file_errors(tmp_path, capsys):
    assert run(capsys, "reconstruct", "--coefficients", str(tmp_path / "missing.json"), "--terms", "1")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "reconstruct", "--coefficients", str(bad), "--terms", "1")[0] == 3
    bad.write_text(json.dumps({"schema_version": 1, "context": "identity"}))
    assert run(capsys, "reconstruct", "--coefficients", str(bad), "--terms", "1")[0] == 3


def test_quadrature_failure_exit_4(capsys):
    code, _, err = run(capsys, "analyze", "--terms", "2", "--quadrature", "1x2", "--quad-tol", "1e-300")
    assert code == 4 and "quadrature" in err


def test_figures_single_and_all(tmp_path, capsys):
    code, out, _ = run(capsys, "figures", "--which", "fig1-upper", "--samples", "5")
    assert rows(out)[1:] == [["-1", "-1", "upper"], ["-1/2", "-2/3", "upper"], ["0", "0", "upper"],
                             ["1/2", "1/3", "upper"], ["1", "1", "upper"]]
    assert run(capsys, "figures", "--which", "all", "--samples", "5", "--output", str(tmp_path))[0] == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig1-lower.csv", "fig1-upper.csv", "fig2-lower.csv", "fig2-upper.csv",
                     "fig3-30.csv", "fig3-5.csv"]
    assert run(capsys, "figures", "--which", "all")[0] == 1


def test_figures_json_decimal(capsys):
    code, out, _ = run(capsys, "figures", "--which", "fig2-upper", "--samples", "3", "--format", "json",
                       "--values", "decimal", "--display-digits", "6")
    doc = json.loads(out)
    assert doc["display_digits"] == 6 and doc["points"][0] == {"x": "-1", "y": "0", "coordinate_system": "lower"}


def test_outputs_are_deterministic(capsys):
    a = run(capsys, "figures", "--which", "fig3-5", "--samples", "7")[1]
    b = run(capsys, "figures", "--which", "fig3-5", "--samples", "7")[1]
    assert a == b


def test_selftest_default_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 9 and all(line.startswith("PASS") for line in lines)
    assert "max deviation" in lines[0]


def test_selftest_low_precision_fails(capsys):
    code, out, _ = run(capsys, "selftest", "--precision-bits", "16")
    assert code == 5
    assert "FAIL trig-identity" in out


def test_selftest_fechner_json(capsys):
    code, out, _ = run(capsys, "selftest", "--bijection", "fechner:a=1,b=1/2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    neg = next(s for s in doc["suites"] if s["name"] == "negative-element")
    assert 0 < neg["max_deviation"] <= neg["tolerance"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ndfourier", "map", "--inverse", "1/2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "1/2,1/3" in proc.stdout
