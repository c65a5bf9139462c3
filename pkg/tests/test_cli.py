import io
import json
import subprocess
import sys

import jsonschema
import pytest

from fdmod import RingContext, parse_operator, parse_operator_expr, parse_poly
from fdmod.cli import REPORT_SCHEMA, main

FOUR = ["-v", "x1,x2,x3,x4", "-f", "x1^2+x2^2+x3^2+x4^2"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def run_json(*argv):
    code, out, err = run(*argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return code, doc, err


# chain


@pytest.mark.parametrize(
    "argv, stable, gens",
    [
        (["-p", "2", "-v", "x,y", "-f", "x^2*y + x*y^2"], 1, ["x", "y"]),
        (["-p", "5", *FOUR], 1, ["1"]),
        (["-p", "2", "-v", "x", "-f", "x"], 1, ["1"]),
    ],
)
def test_chain_examples(argv, stable, gens):
    code, doc, err = run_json("chain", *argv)
    assert code == 0 and err == ""
    assert doc["command"] == "chain"
    assert doc["chain"]["stabilized_at"] == stable
    assert doc["chain"]["levels"][0]["groebner"] == gens
    assert doc["chain"]["degrees_ok"] is True


def test_chain_text_matches_json():
    argv = ["chain", "-p", "2", "-v", "x,y", "-f", "x*y^3 + x^3"]
    code, text, _ = run(*argv)
    _, doc, _ = run_json(*argv)
    assert code == 0
    lines = text.splitlines()
    for lv in doc["chain"]["levels"]:
        assert any(line.startswith(f"I_{lv['s']} = ({', '.join(lv['groebner'])})") for line in lines)
        assert any(f"max coordinate degree {lv['max_gen_degree']}" in line for line in lines)
    assert f"stabilized at {doc['chain']['stabilized_at']} (cap {doc['chain']['cap']})" in lines


def test_chain_cap_exhausted():
    code, doc, err = run_json("chain", "-p", "2", "-v", "x,y", "-f", "x*y^3 + x^3", "--max-level", "2")
    assert code == 3
    assert doc["chain"]["stabilized_at"] is None and doc["chain"]["cap"] == 2
    assert "did not stabilize" in err


def test_chain_lex_order():
    code, doc, _ = run_json("chain", "-p", "3", "-v", "x,y", "-f", "x^2 + y^3 + x*y", "--order", "lex")
    assert code == 0 and doc["context"]["order"] == "lex"


# operator


def test_operator_four_squares():
    code, doc, _ = run_json("operator", "-p", "5", *FOUR)
    assert code == 0
    assert doc["operator"] == {"normal_form": "4 * D[2,2,2,2]", "level": 1, "verified": True, "max_coeff_degree": 0}


def test_operator_x():
    code, text, _ = run("operator", "-p", "2", "-v", "x", "-f", "x")
    assert code == 0
    assert "operator: D[1]" in text.splitlines()
    assert "verified: true" in text.splitlines()


def test_operator_witness():
    code, doc, _ = run_json("operator", "-p", "2", "-v", "x", "-f", "x", "--power", "2")
    assert code == 0
    assert doc["witness"] == {"expr": "compose(twist(D[1]), D[1])", "target_power": 4, "verified": True}


def test_operator_text_matches_json():
    argv = ["operator", "-p", "3", "-v", "x,y", "-f", "x^2*y + y^2", "--power", "2"]
    _, text, _ = run(*argv)
    _, doc, _ = run_json(*argv)
    lines = text.splitlines()
    assert f"operator: {doc['operator']['normal_form']}" in lines
    assert f"level: {doc['operator']['level']}" in lines
    assert f"witness: {doc['witness']['expr']}" in lines
    assert f"target power: {doc['witness']['target_power']}" in lines


def test_operator_cap_exhausted():
    code, doc, _ = run_json("operator", "-p", "2", "-v", "x,y", "-f", "x*y^3 + x^3", "--max-level", "2")
    assert code == 3 and "operator" not in doc


def test_report_strings_parse_back():
    code, doc, _ = run_json("operator", "-p", "3", "-v", "x,y,z", "-f", "x^2*y + y^2*z + z^3", "--power", "2")
    ctx = RingContext(3, ("x", "y", "z"))
    for lv in doc["chain"]["levels"]:
        for g in lv["groebner"]:
            assert str(parse_poly(g, ctx)) == g
    assert str(parse_operator(doc["operator"]["normal_form"], ctx)) == doc["operator"]["normal_form"]
    assert str(parse_operator_expr(doc["witness"]["expr"], ctx)) == doc["witness"]["expr"]


def test_reports_are_deterministic():
    argv = ["operator", "-p", "3", "-v", "x,y", "-f", "x^3 + x*y^2 + y", "--json"]
    assert run(*argv) == run(*argv)


# verify


@pytest.mark.parametrize(
    "op, f, n, code",
    [("D[1]", "x", "1", 0), ("x^2 * D[3]", "x", "2", 0), ("D[1]", "x^2", "1", 1)],
)
def test_verify_examples(op, f, n, code):
    got, doc, _ = run_json("verify", "-p", "2", "-v", "x", "-f", f, "--op", op, "-N", n)
    assert got == code
    assert doc["operator"]["verified"] is (code == 0)


def test_verify_default_level_and_text():
    code, text, _ = run("verify", "-p", "2", "-v", "x", "-f", "x", "--op", "x^2 * D[3]")
    assert code == 0 and "level: 2" in text.splitlines()


def test_verify_level_too_small():
    code, _, err = run("verify", "-p", "2", "-v", "x", "-f", "x", "--op", "x^2 * D[3]", "-N", "1")
    assert code == 1 and "exceeds" in err


def test_verify_round_trip_of_operator_output():
    for argv in (["-p", "3", "-v", "x,y", "-f", "x^2*y + y^2"], ["-p", "2", "-v", "x,y", "-f", "x*y^3 + x^3"]):
        _, doc, _ = run_json("operator", *argv)
        op = doc["operator"]
        code, _, _ = run("verify", *argv, "--op", op["normal_form"], "-N", str(op["level"]))
        assert code == 0


# root


def test_root_examples():
    _, doc, _ = run_json("root", "-p", "2", "-v", "x,y", "-s", "1", "-g", "x^2*y + x*y^2")
    assert doc["root"] == {"level": 1, "coordinates": {"y": "x", "x": "y"}, "groebner": ["x", "y"]}
    _, doc, _ = run_json("root", "-p", "2", "-v", "x", "-s", "1", "-g", "x^2")
    assert doc["root"]["coordinates"] == {"1": "x"} and doc["root"]["groebner"] == ["x"]
    _, doc, _ = run_json("root", "-p", "2", "-v", "x", "-s", "1", "-g", "x")
    assert doc["root"]["groebner"] == ["1"]


def test_root_text():
    code, text, _ = run("root", "-p", "2", "-v", "x,y", "-g", "x^2*y + x*y^2")
    assert code == 0
    assert text.splitlines()[-1] == "I_1 = (x, y)"
    assert "  y -> x" in text.splitlines()


# hidden oracle flag


def test_oracle_cross_check():
    code, doc, err = run_json("chain", "-p", "3", "-v", "x,y", "-f", "x^2*y + y^3", "--oracle")
    assert code == 0 and "oracle: ok" in err
    code, _, err = run("root", "-p", "2", "-v", "x,y", "-g", "x^2*y + x*y^2", "--oracle")
    assert code == 0 and "oracle: ok" in err
    code, _, _ = run("verify", "-p", "2", "-v", "x", "-f", "x", "--op", "D[1]", "--oracle")
    assert code == 0


def test_oracle_flag_hidden_from_help(capsys):
    with pytest.raises(SystemExit) as info:
        main(["chain", "--help"])
    assert info.value.code == 0
    assert "--oracle" not in capsys.readouterr().out


# errors


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["chain", "-p", "4", "-v", "x", "-f", "x"], "prime"),
        (["chain", "-p", "2", "-v", "x", "-f", "x+"], "position 2"),
        (["chain", "-p", "2", "-v", "x", "-f", "y"], "unknown variable"),
        (["chain", "-p", "2", "-v", "x,x", "-f", "x"], "duplicate"),
        (["chain", "-p", "2", "-v", "x", "-f", "3"], "non-constant"),
        (["chain", "-p", "2", "-v", "x"], "required"),
        (["chain", "-p", "2", "-v", "x", "-f", "x", "--max-level", "0"], "positive"),
        (["chain", "-p", "2", "-v", "x", "-f", "x", "--order", "revlex"], "invalid choice"),
        (["frobnicate"], "invalid choice"),
        ([], "required"),
        (["verify", "-p", "2", "-v", "x", "-f", "x", "--op", "D[1"], "position"),
        (["verify", "-p", "2", "-v", "x", "-f", "x", "--op", "twist(D[1])"], "twist"),
        (["root", "-p", "2", "-v", "x", "-g", "x^99999999999"], "exponent"),
    ],
)
def test_usage_errors_exit_2(argv, fragment):
    code, out, err = run(*argv)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_console_script_subprocess():
    proc = subprocess.run(
        [sys.executable, "-m", "fdmod", "operator", "-p", "5", *FOUR, "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["operator"]["normal_form"] == "4 * D[2,2,2,2]"
    bad = subprocess.run([sys.executable, "-m", "fdmod", "chain", "-p", "6", "-v", "x", "-f", "x"],
                         capture_output=True, text=True, check=False)
    assert bad.returncode == 2 and bad.stdout == "" and "prime" in bad.stderr
