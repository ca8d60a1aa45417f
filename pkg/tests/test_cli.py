import json

import pytest

from crossint.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_INVALID, EXIT_OK, main
from crossint.constructions import named


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out.splitlines()


def records(lines):
    return [json.loads(ln) for ln in lines if ln.startswith("{")]


def test_header_echoes_config(capsys):
    code, lines = run(capsys, "stirling", "--n", "9", "--k", "2")
    assert code == EXIT_OK
    head = records(lines)[0]["header"]
    assert head["version"].startswith("crossint ")
    assert head["config"]["n"] == 9 and head["config"]["command"] == "stirling"
    assert records(lines)[1]["S"] == "255"


def test_stirling_check(capsys):
    code, lines = run(capsys, "stirling", "--n", "12", "--check")
    assert code == EXIT_OK


def test_threshold(capsys):
    code, lines = run(capsys, "threshold", "--k", "3", "--t", "1", "--kind", "2L")
    row = records(lines)[1]
    assert row["min_n"] == 20 and row["inequality"] == "2^(n-4) >= 6^6"
    code, _ = run(capsys, "threshold", "--k", "2", "--t", "1", "--kind", "L")
    assert code == EXIT_INVALID


def test_sizes_csv_row(capsys):
    code, lines = run(capsys, "sizes", "--n", "20", "--k", "3", "--l", "3", "--t", "1")
    assert code == EXIT_OK
    header = lines[1].split(",")
    row = dict(zip(header, lines[2].split(",")))
    assert row["r1"] == "524288" and row["r2"] == "524285"


def test_enumerate_budget_refusal(capsys):
    code, lines = run(capsys, "enumerate", "--n", "30", "--k", "5")
    assert code == EXIT_BUDGET
    assert records(lines)[-1]["count"] == "7713000216608565075"


def test_enumerate_small(capsys):
    code, lines = run(capsys, "enumerate", "--n", "5", "--k", "2")
    assert code == EXIT_OK
    assert sum(1 for ln in lines if ln.startswith("{") and "|" in ln) == 15


def test_tau_from_file(capsys, tmp_path):
    path = tmp_path / "d.txt"
    named("D", 6, 3, 1).write(path)
    code, lines = run(capsys, "tau", "--family", str(path), "--t", "1", "--witnesses")
    assert code == EXIT_OK
    rec = records(lines)[1]
    assert rec["tau"] == 2 and "{1|2}" in rec["witnesses"]


def test_construct_and_roundtrip(capsys, tmp_path):
    out = tmp_path / "c.txt"
    code, _ = run(capsys, "construct", "--kind", "C", "--n", "6", "--k", "3", "--t", "1", "--out", str(out))
    assert code == EXIT_OK
    text = out.read_text()
    assert "{1|2|3,4,5,6}" in text
    code, lines = run(capsys, "construct", "--kind", "D", "--n", "6", "--k", "3", "--t", "1", "--mode", "size")
    assert code == EXIT_OK and "29" in "\n".join(lines)


def test_audit_subcommand(capsys):
    code, lines = run(capsys, "audit", "--lemma", "log-concavity")
    assert code == EXIT_OK
    totals = [r for r in records(lines) if "totals" in r]
    assert totals and totals[-1]["totals"]["log-concavity"]["fail"] == 0
    code, _ = run(capsys, "audit", "--lemma", "nonsense")
    assert code == EXIT_INVALID


def test_search_exhaustive(capsys):
    code, lines = run(capsys, "search", "--n", "6", "--k", "3", "--l", "2", "--t", "1", "--mode", "exhaustive")
    assert code == EXIT_OK
    res = records(lines)[-1]
    assert res["best_product"] == "15" and res["exhaustive"] is True


def test_search_seeded_is_worker_independent(capsys):
    base = ["search", "--n", "6", "--k", "3", "--l", "3", "--t", "1", "--mode", "seeded", "--n-random", "100"]
    _, one = run(capsys, *base, "--workers", "1")
    _, two = run(capsys, *base, "--workers", "2")
    assert one == two


def test_search_tuple(capsys):
    code, lines = run(capsys, "search", "--n", "6", "--t", "1", "--r", "3", "--ks", "3,3,3",
                      "--nontrivial", "--gen-max", "2", "--n-random", "60")
    assert code == EXIT_OK
    assert int(records(lines)[-1]["best_product"]) > 0


def test_verify(capsys):
    code, lines = run(capsys, "verify", "--theorem", "P2.8", "--params", "n=6", "t=1", "ks=3")
    assert code == EXIT_OK
    assert records(lines)[-1]["status"] == "pass"
    code, _ = run(capsys, "verify", "--theorem", "1.5", "--params", "n=20", "t=1", "ks=3,3")
    assert code == EXIT_INVALID


def test_compare_regimes(capsys):
    code, lines = run(capsys, "compare-regimes", "--t", "2", "--n", "30")
    assert code == EXIT_OK
    assert records(lines)[-1]["status"] == "pass"


def test_invalid_inputs(capsys):
    with pytest.raises(SystemExit) as err:
        main(["stirling", "--n", "abc"])
    assert err.value.code == EXIT_INVALID
    assert main(["enumerate", "--n", "5", "--k", "2", "--budget", "0"]) == EXIT_INVALID
    capsys.readouterr()


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INVALID}) == 4
