"""CLI: output formats, determinism, and exit codes."""

import io
import json
import math

from gammacm.cli import run


def invoke(argv):
    out = io.StringIO()
    code = run(argv, out=out)
    return code, out.getvalue()


def test_loggamma_eval():
    code, text = invoke(["eval", "loggamma", "--x", "6", "--tol", "1e-12"])
    assert code == 0
    header, row = text.strip().splitlines()
    assert header == "x,lower,upper,midpoint,width,n_used"
    fields = dict(zip(header.split(","), row.split(",")))
    assert abs(float(fields["midpoint"]) - math.log(120.0)) < 5e-13
    assert float(fields["width"]) <= 1e-12


def test_loggamma_json_format():
    code, text = invoke(["--format", "json", "eval", "loggamma", "--x", "2.5"])
    assert code == 0
    payload = json.loads(text)
    assert payload[0]["lower"] <= math.lgamma(2.5) <= payload[0]["upper"]


def test_bernoulli_table_csv():
    code, text = invoke(["table", "bernoulli", "--max", "8"])
    assert code == 0
    lines = text.strip().splitlines()
    assert lines[0] == "index,numerator,denominator"
    assert "4,-1,30" in lines
    assert len(lines) == 10


def test_double_bernoulli_table():
    code, text = invoke(["table", "bernoulli", "--max", "2", "--double"])
    assert code == 0
    rows = text.strip().splitlines()[1:]
    assert rows[0] == "0,1,1"
    assert rows[1] == "1,-1,1"


def test_vkernel_reps_agree():
    values = []
    for rep in ("series", "recursion", "integral"):
        code, text = invoke(["eval", "vkernel", "--n", "1", "--t", "1.0",
                             "--rep", rep])
        assert code == 0
        values.append(float(text.strip().splitlines()[1].split(",")[-1]))
    assert max(values) - min(values) < 1e-10
    assert abs(values[0] - 0.0013566264) < 1e-9


def test_remainder_families():
    for family in ("euler", "barnesg", "gamma2"):
        code, text = invoke(["eval", "remainder", "--family", family,
                             "--n", "2", "--x", "3.0"])
        assert code == 0
        value = float(text.strip().splitlines()[1].split(",")[-1])
        assert math.isfinite(value)


def test_verify_cm_pass_exit_zero():
    code, text = invoke(["verify", "cm", "--fixture", "rn", "--n", "2",
                         "--order", "2"])
    assert code == 0
    assert "verdict=True" in text


def test_verify_cm_json():
    code, text = invoke(["--format", "json", "verify", "cm", "--fixture", "fn",
                         "--n", "1", "--order", "0", "--max-diff", "6"])
    assert code == 0
    assert json.loads(text)["verdict"] == "pass"


def test_verify_kernels():
    code, text = invoke(["verify", "kernels", "--n", "2"])
    assert code == 0
    assert text.count("verdict=True") == 3


def test_usage_errors_exit_two():
    assert invoke(["eval", "loggamma"])[0] == 2           # missing --x
    assert invoke(["bogus"])[0] == 2                      # unknown subcommand
    assert invoke(["eval", "loggamma", "--x", "-3"])[0] == 2  # domain error


def test_byte_identical_output():
    args = ["verify", "cm", "--fixture", "pn", "--n", "2", "--order", "1"]
    assert invoke(args) == invoke(args)
    args = ["--format", "json", "eval", "loggamma2", "--w", "3", "--M", "4"]
    assert invoke(args) == invoke(args)
