"""Expression parser and command-line interface."""

import json
import subprocess
import sys

import pytest

from corpus import CORPUS, round_trip
from toroidal_va import ParseError, RingSpec, ToroidalElement
from toroidal_va.cli import main
from toroidal_va.lie import preset
from toroidal_va.parse import parse_element

SL2 = preset("sl2")


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_corpus_size():
    assert len(CORPUS) == 50


@pytest.mark.parametrize("kind,ring,text", CORPUS)
def test_round_trip(kind, ring, text):
    assert round_trip(kind, ring, text)


def test_parse_examples():
    R = RingSpec.parse("laurent:x,t;t=t")
    assert parse_element("J[e]*x^2*t^-1", R, SL2) == ToroidalElement.generator(SL2, R, 0, (2, -1))
    T01 = RingSpec.parse("laurent:t0,t1")
    assert str(parse_element("t0^2*k1", T01)) == "t0^2*t1^-1*dt1"
    assert parse_element("d(t^3) - 3*t^2*dt", RingSpec.parse("laurent:t"), kind="form").is_zero()


@pytest.mark.parametrize(
    "text,ring,fragment,column",
    [
        ("t^2 + y", "laurent:t", "unknown", 7),
        ("u^-1", "poly:u", "negative", 1),
        ("k0", "poly:u", "invertible", 1),
        ("2*t +", "laurent:t", "", 6),
        ("J[q]*t", "laurent:t", "q", 3),
        ("dt*dt", "laurent:t", "at most one", 1),
    ],
)
def test_parse_errors_carry_positions(text, ring, fragment, column):
    with pytest.raises(ParseError) as info:
        parse_element(text, RingSpec.parse(ring), SL2)
    err = info.value
    assert fragment in str(err)
    assert err.line == 1
    assert err.column == column


def test_multiline_error_position():
    with pytest.raises(ParseError) as info:
        parse_element("t^2 +\n  3*y", RingSpec.parse("laurent:t"))
    assert info.value.line == 2


def test_cli_examples(capsys):
    assert run(["nf", "--ring", "laurent:t", "--expr", "t^3*dt"], capsys)[:2] == (0, "0\n")
    assert run(["character", "--lie", "sl2", "--max-weight", "4", "--json"], capsys)[:2] == (0, "[1,3,9,22,51]\n")
    assert run(["verify", "jacobi", "--ring", "laurent:t0,t1", "--lie", "sl2", "--bound", "1"], capsys)[0] == 0


def test_cli_commands(capsys):
    code, out, _ = run(["bracket", "--a", "J[e]*t", "--b", "J[f]*t^-1"], capsys)
    assert code == 0 and out.strip() == "J[h] - t^-1*dt"
    code, out, _ = run(["act", "--modes", "J[e;u=1](1) J[f;u=1](-1)"], capsys)
    assert code == 0 and out.strip() == "-(t^-1*dt)|0>"
    code, out, _ = run(["dim", "--ring", "laurent:t0,t1", "--box", "0:1", "--json"], capsys)
    assert code == 0
    assert [row["dim"] for row in json.loads(out)] == [2, 1, 1, 1]
    code, out, _ = run(["validate", "lie", "--preset", "sl3"], capsys)
    assert code == 0 and "PASS" in out
    code, _, _ = run(["validate", "hom", "--source", "laurent:x", "--target", "laurent:y", "--hom", "x -> y + 1"], capsys)
    assert code == 1
    code, out, _ = run(["ope", "--ring", "laurent:x,t;t=t", "--f1", "J[e;u=x]", "--f2", "J[f;u=x^-1]", "--max-weight", "1"], capsys)
    assert code == 0 and "Kom[w=x^-1*dx]" in out
    code, _, _ = run(["ope", "--f1", "J[e]", "--f2", "J[f]", "--max-weight", "1", "--convention", "opposite"], capsys)
    assert code == 1


def test_cli_verify_suites(capsys):
    for argv in (
        ["verify", "cocycle", "--bound", "1"],
        ["verify", "h0", "--bound", "1"],
        ["verify", "module", "--bound", "2"],
        ["verify", "locality", "--bound", "2"],
        ["verify", "translation", "--bound", "2"],
        ["verify", "vacuum", "--ring", "laurent:x,t;t=t", "--bound", "2"],
        ["verify", "functor", "--ring", "laurent:x,t;t=t", "--target", "laurent:y,t;t=t", "--hom", "x -> y^2; t -> t", "--bound", "1"],
        ["verify", "sugawara", "--bound", "1", "--level", "1"],
    ):
        code, out, err = run(argv, capsys)
        assert code == 0, (argv, out, err)
        assert "time:" in err


def test_cli_error_codes(capsys):
    assert run(["nf", "--ring", "laurent:t", "--expr", "t^^2"], capsys)[0] == 2
    assert run(["verify", "sugawara", "--level", "-2", "--bound", "1"], capsys)[0] == 2
    assert run(["character", "--lie", "nosuch"], capsys)[0] == 2
    assert run(["act", "--ring", "laurent:x", "--modes", "J[e](0)"], capsys)[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["verify", "nosuchsuite"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main([])
    assert info.value.code == 2


def test_cli_json_is_byte_stable():
    argv = [sys.executable, "-m", "toroidal_va", "verify", "cocycle", "--bound", "1", "--json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second
    payload = json.loads(first)
    assert payload["passed"] is True
    assert first.decode().strip() == json.dumps(payload, sort_keys=True, separators=(",", ":"))
