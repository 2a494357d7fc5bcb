import json
from fractions import Fraction

import pytest

from opdyn import cli
from opdyn.network import generate, write_network
from opdyn.signals import bernoulli_delta, write_signal_model


def run_json(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_degroot_exact(capsys):
    code, rec = run_json(capsys, ["degroot", "--graph", "cycle:3", "--delta", "1/10"])
    assert code == 0
    # three agents, equal weights: learn iff at least two signals match
    assert Fraction(rec["p_w"]) == Fraction(81, 125)


def test_degroot_cheater(capsys):
    code, rec = run_json(capsys, ["degroot", "--graph", "chain:3", "--cheater", "0=1"])
    assert code == 0
    assert all(Fraction(v) == 1 for v in rec["limits_exact"].values())


def test_voter_exact(capsys):
    code, rec = run_json(capsys, ["voter", "--graph", "chain:3", "--exact"])
    assert code == 0
    assert [Fraction(a) for a in rec["alpha"]] == [Fraction(2, 7), Fraction(3, 7), Fraction(2, 7)]
    assert Fraction(rec["p_consensus_one_by_state"]["100"]) == Fraction(2, 7)
    assert Fraction(rec["p_consensus_one_by_state"]["111"]) == 1


def test_cascade_exact(capsys):
    code, rec = run_json(capsys, ["cascade", "--signal", "bernoulli:1/6", "--n", "4"])
    assert code == 0
    assert Fraction(rec["p_correct"][0]) == Fraction(2, 3)
    assert Fraction(rec["p_cascaded_by"][1]) == Fraction(1, 2)


def test_bayes_chain_tie(capsys):
    code, rec = run_json(capsys, ["bayes", "--scenario", "chain-tie:4"])
    assert code == 0
    assert rec["sticks_to_own_signal"] is True
    assert Fraction(rec["p_some_wrong"]) >= Fraction(rec["p_adjacent_wrong"])


def test_bayes_exact_graph(capsys):
    code, rec = run_json(capsys, ["bayes", "--graph", "cycle:3",
                                  "--signal", "bernoulli:1/6",
                                  "--utility", "continuous"])
    assert code == 0
    assert rec["stabilized"] and rec["agreement"] and rec["full_information"]


def test_majority_lyapunov(capsys):
    code, rec = run_json(capsys, ["majority", "--graph", "cycle:5",
                                  "--delta", "3/10", "--emit-lyapunov"])
    assert code == 0
    series = rec["lyapunov_series"]
    # L never increases and each drop equals -J exactly
    for a, b in zip(series, series[1:]):
        assert Fraction(b["L"]) - Fraction(a["L"]) == -Fraction(b["J"])
        assert Fraction(b["J"]) >= 0


def test_graph_and_signal_files(tmp_path, capsys):
    gpath = tmp_path / "net.txt"
    write_network(generate("cycle", 3), str(gpath))
    spath = tmp_path / "sig.txt"
    write_signal_model(bernoulli_delta(Fraction(1, 6)), str(spath))
    code, rec = run_json(capsys, ["cascade", "--signal", f"file:{spath}", "--n", "3"])
    assert code == 0
    assert Fraction(rec["p_correct"][0]) == Fraction(2, 3)
    code, rec = run_json(capsys, ["degroot", "--graph", str(gpath)])
    assert code == 0
    assert Fraction(rec["p_w"]) == Fraction(81, 125)


def test_accept_single(capsys):
    code = cli.main(["accept", "--only", "three-bit-map"])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("PASS three-bit-map")


def test_bad_signal_spec():
    with pytest.raises(SystemExit):
        cli.main(["cascade", "--signal", "weird:1"])
