import json
from fractions import Fraction

import pytest

from src.cli import HANDLERS, VERBS, main, parse_command, parse_multiset, run
from src.config import Settings
from src.errors import DomainError, ParseError
from src.scalars import ExactComplex

SETTINGS = Settings()


def run_argv(*argv: str):
    return run(parse_command(list(argv), SETTINGS))


@pytest.mark.parametrize("argv, expected", [
    (("ap", "spehcs(2,1,1/4) x chi(3,0,1)"), "5^2 1"),
    (("ap", "triv"), "()"),
    (("depth", "chi(5,0,0)"), "1"),
    (("depth", "chi(2,3,0)", "--field", "C"), "1"),
    (("adduce", "spehcs(2,k=3,s=1/4)"), "spehcs(1,3,1/4)"),
    (("igeq", "speh(2,2)"), "chi(2,1,1) x chi(2,0,-1)"),
    (("derive", "chi(3,0,0) x chi(1,1,0)", "--order", "2"), "chi(2,0,0)"),
    (("derive", "chi(2,0,0) x chi(1,0,0)", "--order", "3"), "0"),
    (("derive", "chi(2,0,0) x chi(1,0,0)", "--lambda", "2,1"), "triv"),
    (("whittaker", "speh(2,1)", "--lambda", "2,2"), "one"),
    (("whittaker", "speh(2,3)", "--lambda", "3,1"), "zero"),
    (("whittaker", "speh(2,1)", "--lambda", "1,1,2"), "unknown"),
    (("jordan", "--lambda", "2,1"), "0 1 0\n0 0 0\n0 0 0"),
    (("psi-lambda", "--lambda", "3"), "0 0 0\n1 0 0\n0 1 0\ndepth 3"),
    (("infchar", "1, 1, 2", "--order", "1"), "{3/2, 3/2}\n{3/2, 5/2}"),
])
def test_text_output(argv, expected):
    assert run_argv(*argv) == (0, expected)


def test_speh_presentations_output():
    status, output = run_argv("speh", "2", "1")
    assert status == 0
    quotient, submodule = output.split("\n")
    assert quotient == "quotient of chi(2,0,-1/2) x chi(2,0,1/2)"
    assert submodule.startswith("submodule of chi(2,")


def test_undetermined_derivative_exits_with_domain_status():
    status, output = run_argv("derive", "chi(2,0,0) x chi(1,0,0)", "--order", "1")
    assert status == 3
    assert output.startswith("error: ")


def test_validate_reports_without_failing():
    status, output = run_argv("validate", "stein(2,1/2)")
    assert status == 0
    assert "valid: false" in output
    assert "(0,1/2)" in output


@pytest.mark.parametrize("argv", [
    ("ap", "chi(3,0"),
    ("frobnicate",),
    ("whittaker", "speh(2,1)"),
    ("derive", "chi(1,0,0)"),
    ("jordan",),
    ("bigrade", "--n", "3"),
    ("infchar", "1, 2"),
    ("ap", "chi(1,0,0)", "--field", "Q"),
    ("speh", "2", "x"),
])
def test_parse_errors(argv):
    with pytest.raises(ParseError):
        parse_command(list(argv), SETTINGS)


def test_invalid_expression_is_a_domain_error_at_parse_time():
    with pytest.raises(DomainError, match="0,1/2"):
        parse_command(["ap", "stein(2, 1/2)"], SETTINGS)


def test_main_exit_statuses(capsys):
    assert main(["depth", "speh(2,1)"]) == 0
    assert capsys.readouterr().out.strip() == "2"

    assert main(["ap", "chi(3,0"]) == 2
    assert capsys.readouterr().err.startswith("error: ")

    assert main(["ap", "stein(2, 1/2)"]) == 3
    assert "(0,1/2)" in capsys.readouterr().err


def test_json_output_is_canonical():
    status, first = run_argv("ap", "speh(2,1) x chi(1,0,0)", "--json")
    _, second = run_argv("ap", "speh(2,1) x chi(1,0,0)", "--json")
    assert status == 0
    assert first == second
    payload = json.loads(first)
    assert sorted(payload) == ["input", "provenance", "result", "verb"]
    assert payload["verb"] == "ap"
    assert payload["result"] == "3 2"
    assert payload["input"] == {"expression": "speh(2,1) x chi(1,0,0)", "field": "R"}
    assert first == json.dumps(payload, sort_keys=True, ensure_ascii=False)


def test_json_whittaker_carries_the_reason():
    _, output = run_argv("whittaker", "speh(2,1)", "--lambda", "1,1,2", "--json")
    payload = json.loads(output)
    assert payload["result"]["verdict"] == "unknown"
    assert "step 1" in payload["result"]["reason"]
    assert payload["input"]["lambda"] == "1,1,2"


def test_jordan_reads_a_matrix_file(tmp_path):
    path = tmp_path / "nilpotent.txt"
    path.write_text("# J_2 + J_1\n0 1 0\n0 0 0\n0 0 0\n", encoding="utf-8")
    assert run_argv("jordan", "--matrix", str(path)) == (0, "2 1")
    with pytest.raises(ParseError, match="cannot read"):
        parse_command(["jordan", "--matrix", str(tmp_path / "missing.txt")], SETTINGS)


def test_jordan_rejects_non_nilpotent_matrix(tmp_path):
    path = tmp_path / "identity.txt"
    path.write_text("1 0\n0 1\n", encoding="utf-8")
    status, output = run_argv("jordan", "--matrix", str(path))
    assert status == 3
    assert "not nilpotent" in output


@pytest.mark.parametrize("argv", [
    ("bigrade", "--n", "3", "--d", "2"),
    ("verify-linalg", "--n", "3", "--d", "2", "--trials", "3"),
    ("verify-linalg", "--n", "3", "--trials", "2"),
    ("verify-filtrations", "--n", "4", "--trials", "5", "--seed", "3"),
    ("verify-keylemma-premises", "--n", "3"),
    ("ad-identity", "--order", "3"),
])
def test_verifiers_pass(argv):
    status, output = run_argv(*argv)
    assert status == 0
    assert "passed: true" in output
    assert "passed: false" not in output


def test_bigrade_json_lists_blocks():
    _, output = run_argv("bigrade", "--n", "3", "--d", "2", "--json")
    payload = json.loads(output)
    assert payload["result"]["blocks"]["1,0"] == [[2, 3]]
    assert payload["result"]["x"] == [0, 0, 1]
    assert payload["input"]["variant"] == "shifted"
    assert payload["result"]["stabilizer"] == {"monomials": [[1, 2], [1, 1]], "dim": 3}


def test_bigrade_unshifted_literal_fails_its_check():
    status, output = run_argv("bigrade", "--n", "4", "--d", "2", "--variant", "unshifted", "--bracket", "literal")
    assert status == 0
    assert "passed: false" in output


def test_ad_identity_rejects_zero():
    assert run_argv("ad-identity", "--order", "0")[0] == 3


def test_catalogue_listing():
    status, output = run_argv("catalogue")
    lines = output.split("\n")
    assert status == 0
    assert len(lines) == 128
    assert "speh(2,1)\t2^2\t2" in lines
    assert len(run_argv("catalogue", "--field", "C")[1].split("\n")) == 64


def test_every_verb_has_a_handler():
    assert set(HANDLERS) == set(VERBS)


def test_parse_multiset():
    multiset = parse_multiset("(1/2, -1/2, i)")
    assert multiset.elements == (
        ExactComplex.of(Fraction(-1, 2)),
        ExactComplex.of(0, 1),
        ExactComplex.of(Fraction(1, 2)),
    )
    with pytest.raises(ParseError):
        parse_multiset("1/2,")


def test_seeded_verifier_json_is_byte_stable():
    argv = ("verify-filtrations", "--n", "5", "--trials", "20", "--seed", "7", "--json")
    status, first = run_argv(*argv)
    _, second = run_argv(*argv)
    assert status == 0
    assert first.encode("utf-8") == second.encode("utf-8")
    assert json.loads(first)["input"]["seed"] == 7


@pytest.mark.parametrize("verb", ["verify-linalg", "verify-keylemma-premises"])
@pytest.mark.parametrize("n", ["0", "-2"])
def test_verifiers_reject_empty_sizes(verb, n):
    status, output = run_argv(verb, "--n", n)
    assert status == 3
    assert "at least 1" in output


def test_help_exits_only_on_the_command_line(capsys):
    with pytest.raises(SystemExit) as excinfo:
        parse_command(["ap", "--help"], SETTINGS)
    assert excinfo.value.code == 0
    assert "expression" in capsys.readouterr().out
    with pytest.raises(ParseError):
        parse_command(["ap", "--help"], SETTINGS, interactive=False)
    with pytest.raises(ParseError):
        parse_command(["--help"], SETTINGS, interactive=False)


def test_matrix_text_replaces_the_file_option(tmp_path):
    command = parse_command(["jordan"], SETTINGS, interactive=False, matrix_text="0 1\n0 0\n")
    assert run(command) == (0, "2")
    path = tmp_path / "nilpotent.txt"
    path.write_text("0 1\n0 0\n", encoding="utf-8")
    with pytest.raises(ParseError, match="matrix text"):
        parse_command(["jordan", "--matrix", str(path)], SETTINGS, interactive=False)
    with pytest.raises(ParseError, match="either"):
        parse_command(["jordan", "--matrix", str(path)], SETTINGS, matrix_text="0")
    with pytest.raises(ParseError):
        parse_command(["ap", "triv"], SETTINGS, matrix_text="0")
