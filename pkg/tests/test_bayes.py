from fractions import Fraction

import pytest

from opdyn import bayes
from opdyn.network import from_pairs, generate
from opdyn.signals import bernoulli_delta, xor_pair

DELTA = Fraction(1, 6)


def space_for(n, delta=DELTA):
    return bayes.build_profile_space(bernoulli_delta(delta), n)


def test_profile_space_weights():
    sp = space_for(3)
    assert sum(w for (_s, _p, w) in sp.entries) == 1
    assert sp.m == 8
    # pooled posterior for an all-ones profile: odds (2/3)^3 : (1/3)^3 = 8 : 1
    assert sp.full_posterior((1, 1, 1)) == Fraction(8, 9)


def test_round_zero_belief_is_private():
    net = generate("chain", 2)
    sp = space_for(2)
    res = bayes.run_exact(net, sp, horizon=1, utility="continuous")
    for e, (_s, prof, _w) in enumerate(sp.entries):
        for i in range(2):
            expected = Fraction(2, 3) if prof[i] == 1 else Fraction(1, 3)
            assert res.beliefs[0][i][e] == expected


def test_pair_reaches_pooled_posterior():
    net = generate("chain", 2)
    sp = space_for(2)
    res = bayes.run_exact(net, sp, horizon=20, utility="continuous")
    assert res.stabilized
    assert bayes.full_information_check(res)["full_learning"]


def test_martingale_and_refinement():
    net = generate("chain", 3)
    sp = space_for(3)
    res = bayes.run_exact(net, sp, horizon=30, utility="continuous")
    assert bayes.martingale_residuals(res) == []
    assert bayes.refinement_violations(res) == []


def test_expected_utility_nondecreasing():
    net = generate("cycle", 4)
    sp = space_for(4)
    for utility in ("continuous", "discrete"):
        res = bayes.run_exact(net, sp, horizon=70, utility=utility)
        for i in range(4):
            utils = [bayes.expected_utility(res, i, t) for t in range(res.rounds)]
            assert all(a <= b for a, b in zip(utils, utils[1:]))


def test_fixation_bounds_square():
    net = from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    sp = space_for(4)
    res = bayes.run_exact(net, sp, horizon=sp.m * 4 + 1, utility="discrete")
    stats = bayes.fixation_stats(res)
    assert stats["bound_ok"]
    assert stats["m"] == 16


def test_xor_pair_never_learns():
    net = generate("chain", 2)
    sp = bayes.build_profile_space(xor_pair(), 2)
    res = bayes.run_exact(net, sp, horizon=10, utility="continuous")
    half = Fraction(1, 2)
    assert all(b == half for t in range(res.rounds) for i in range(2) for b in res.beliefs[t][i])
    assert not bayes.full_information_check(res)["full_learning"]


def test_locality():
    net = generate("chain", 5)
    sp = space_for(5)
    for t in (0, 1, 2):
        assert bayes.locality_check(net, sp, t)["local"]


def test_senate_error_independent_of_n():
    a = bayes.senate_scenario(8, 5, DELTA)
    b = bayes.senate_scenario(30, 5, DELTA)
    assert a["verdict_error"] == b["verdict_error"]
    assert a["all_follow_verdict"] and b["all_follow_verdict"]
    # majority of 5 bits at p = 2/3: P(Bin(5, 2/3) <= 2) = 17/81
    assert a["verdict_error"] == Fraction(17, 81)


def test_chain_tie_keeps_own_signal():
    out = bayes.chain_tie_to_self(4, DELTA)
    assert out["claim_ok"]
    assert out["p_some_wrong"] >= out["p_adjacent_wrong"] > Fraction(5, 100)


def test_chain_without_tie_rule_differs():
    # with ties broken to 1 instead, some equal-signal-neighbor agent moves
    net = generate("chain", 4)
    sp = space_for(4)
    res = bayes.run_exact(net, sp, horizon=20, utility="discrete", tie_rule="choose_one")
    moved = False
    for e, (_s, prof, _w) in enumerate(sp.entries):
        for i in range(4):
            if any(res.actions[t][i][e] != prof[i] for t in range(res.rounds)):
                nbrs = [j for j in (i - 1, i + 1) if 0 <= j < 4]
                if any(prof[j] == prof[i] for j in nbrs):
                    moved = True
    assert moved


def test_bad_arguments():
    net = generate("chain", 2)
    sp = space_for(2)
    with pytest.raises(ValueError):
        bayes.run_exact(net, sp, horizon=0)
    with pytest.raises(ValueError):
        bayes.run_exact(net, sp, horizon=3, utility="quadratic")
    with pytest.raises(ValueError):
        bayes.senate_scenario(4, 5, DELTA)
    with pytest.raises(ValueError):
        bayes.senate_scenario(10, 4, DELTA)
