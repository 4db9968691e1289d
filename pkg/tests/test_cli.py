import json

import pytest

from regaut import cli, fixtures


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_fig1_not_universal(capsys):
    code, out, _ = run(capsys, "check-universal", "fig1-gura")
    assert code == cli.REFUTED
    assert "witness: ε" in out


@pytest.mark.parametrize("argv", [["--json", "check-universal", "fig1-gura"],
                                  ["check-universal", "fig1-gura", "--json"]])
def test_json_either_position(capsys, argv):
    code, out, _ = run(capsys, *argv)
    doc = json.loads(out)
    assert code == 1
    assert doc["verdict"] == "not-universal" and doc["witness"] == ""
    assert doc["reason"] == "RejectedWord"


def test_exact_universal(capsys):
    code, out, _ = run(capsys, "--json", "check-universal", "lemma44-k2")
    doc = json.loads(out)
    assert code == cli.HOLDS and doc["verdict"] == "universal"
    assert doc["stats"]["max_same_location"] == 2


def test_bounded_universal(capsys):
    code, out, _ = run(capsys, "--json", "check-universal", "sec5-2ura-order", "--oracle-len", "3")
    assert code == cli.BOUNDED
    assert json.loads(out)["verdict"] == "universal-up-to-bound"


def test_containment(capsys):
    assert run(capsys, "check-containment", "fig1-gura", "fig1-gura")[0] == cli.HOLDS
    code, out, _ = run(capsys, "--json", "check-containment", "second-to-last", "fig1-gura")
    assert code == cli.REFUTED and json.loads(out)["witness"] == "a:0 a:0 a:0"
    code, out, _ = run(capsys, "--json", "check-containment", "fig1-gura", "accept-all-nat",
                       "--mode", "bounded", "--depth", "3")
    assert code == cli.BOUNDED and json.loads(out)["depth"] == 3


def test_run(capsys):
    code, out, _ = run(capsys, "run", "fig1-gura", "--word", "1 2 3", "--count-runs")
    assert code == 0 and out.split() == ["accept", "runs:", "1"]
    assert run(capsys, "run", "fig1-gura", "--word", "1 2 1")[0] == cli.REFUTED


def test_unambiguous(capsys):
    assert run(capsys, "check-unambiguous", "lemma44-k2")[0] == cli.HOLDS
    assert run(capsys, "check-unambiguous", "fig1-gura", "--oracle-len", "3")[0] == cli.BOUNDED


def test_make_clean_output(capsys, tmp_path):
    target = tmp_path / "clean.ra"
    assert run(capsys, "make-clean", "lemma44-k2", "-o", str(target))[0] == 0
    assert run(capsys, "check-universal", str(target))[0] == cli.HOLDS


def test_validate(capsys, tmp_path):
    bad = tmp_path / "bad.ra"
    bad.write_text(fixtures.fixture_text("fig1-gura").replace("kind gra", "kind ra"))
    code, out, _ = run(capsys, "--json", "validate", str(bad))
    assert code == cli.REFUTED and json.loads(out)["verdict"] == "invalid"
    assert run(capsys, "validate", "fig1-gura")[0] == cli.HOLDS
    # syntax errors are input errors, not validation verdicts
    bad.write_text(fixtures.fixture_text("fig1-gura").replace("locations l0 l1 l2", "locations l0 l1"))
    assert run(capsys, "validate", str(bad))[0] == cli.ERROR


def test_oracle_commands(capsys):
    assert run(capsys, "oracle", "universal", "fig1-gura", "--max-len", "2")[0] == cli.REFUTED
    assert run(capsys, "oracle", "ambiguous", "fig1-gura", "--max-len", "2")[0] == cli.BOUNDED
    code, out, _ = run(capsys, "oracle", "contained", "accept-all-nat", "fig1-gura")
    assert code == cli.REFUTED
    code, out, _ = run(capsys, "--json", "oracle", "reachable", "lemma44-k2", "--max-len", "2")
    assert code == 0 and json.loads(out)["configs"]


def test_fixtures_command(capsys):
    code, out, _ = run(capsys, "fixtures", "list")
    assert code == 0 and "fig1-gura" in out.split() and "sec6-example-config" in out.split()
    code, out, _ = run(capsys, "fixtures", "emit", "sec6-example-config")
    assert out.strip() == "{l1: {0,1}, l2: co{1,2}, l3: co{0,1}}"


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["check-universal"],
    ["check-universal", "no-such-file.ra"],
    ["run", "fig1-gura", "--word", "x"],
    ["fixtures", "emit", "nope"],
    ["check-containment", "fig1-gura", "lemma44-k2"],
])
def test_errors_exit_3(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == cli.ERROR and err


def test_parse_error_shows_location(capsys, tmp_path):
    bad = tmp_path / "bad.ra"
    bad.write_text("automaton x\ndomain nat-eq\nalphabet a\nregisters r\ninit p\nedge p a \"r=\" q\n")
    code, _, err = run(capsys, "check-universal", str(bad))
    assert code == cli.ERROR and f"{bad}:6:" in err
