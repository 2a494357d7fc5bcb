from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opdyn import majority
from opdyn.network import generate
from opdyn.signals import trial_rng


def test_even_closed_neighborhood_rejected():
    with pytest.raises(ValueError):
        majority.step(generate("chain", 4), (1, 1, -1, -1))


def test_step_cycle5_oracle():
    net = generate("cycle", 5)
    # closed neighborhoods of size 3: plain local majority
    assert majority.step(net, (1, 1, -1, -1, -1)) == (1, 1, -1, -1, -1)
    assert majority.step(net, (1, -1, 1, -1, 1)) == (1, 1, -1, 1, 1)


def test_all_ones_fixed():
    net = generate("cycle", 7)
    assert majority.step(net, (1,) * 7) == (1,) * 7


def test_run_to_cycle_period_two_example():
    net = generate("cycle", 6)
    lc = majority.run_to_cycle(net, (1, -1, 1, -1, 1, -1))
    assert lc.period in (1, 2)
    assert lc.entry_time <= len(net.undirected_edge_list())
    # the two phases map to each other
    assert majority.step(net, lc.config_even) == lc.config_odd
    assert majority.step(net, lc.config_odd) == lc.config_even


def test_step_many_matches_step():
    net = generate("cycle", 6)
    configs = majority.all_spin_configs(6)
    batch = majority.step_many(net, configs)
    for k in range(0, 64, 7):
        assert tuple(batch[k]) == majority.step(net, tuple(configs[k]))


@settings(max_examples=25, deadline=None)
@given(bits=st.integers(0, 2 ** 7 - 1))
def test_lyapunov_identity_cycle7(bits):
    net = generate("cycle", 7)
    traj = [tuple(1 if (bits >> i) & 1 else -1 for i in range(7))]
    for _ in range(9):
        traj.append(majority.step(net, traj[-1]))
    for t in range(1, 8):
        l_prev = majority.lyapunov(net, traj[t - 1], traj[t])
        l_cur = majority.lyapunov(net, traj[t], traj[t + 1])
        j_t = majority.j_functional(net, traj[t - 1], traj[t], traj[t + 1])
        assert l_cur - l_prev == -j_t
        assert j_t >= 0


def test_retention_exact_vs_monte_carlo():
    net = generate("cycle", 5)
    delta = Fraction(3, 10)
    exact = majority.retention_error(net, delta, mode="exact")
    mc = majority.retention_error(net, delta, mode="monte_carlo",
                                  trials=20000, rng=trial_rng(5, 0))
    # the MC surrogate (majority vote) can only do worse than the MAP
    assert mc >= float(exact) - 0.02


def test_retention_beats_single_signal():
    # keeping the network's limit actions beats throwing away all but one bit
    net = generate("cycle", 5)
    delta = Fraction(3, 10)
    assert majority.retention_error(net, delta, mode="exact") < Fraction(1, 2) - delta


def test_map_rule_is_odd_cycle5():
    rule = majority.map_rule(generate("cycle", 5), Fraction(3, 10))
    for prof, g in rule.items():
        neg = tuple(-v for v in prof)
        assert neg in rule and rule[neg] == -g


def test_influence_dictator_and_parity():
    dictator = lambda x: x[0]
    assert majority.influence(dictator, 3, 0, Fraction(1, 10)) == 1
    assert majority.influence(dictator, 3, 1, Fraction(1, 10)) == 0
    parity = lambda x: x[0] * x[1] * x[2]
    for i in range(3):
        assert majority.influence(parity, 3, i, Fraction(1, 10)) == 1


def test_influence_mc_agrees():
    maj3 = lambda x: 1 if sum(x) > 0 else -1
    exact = majority.influence(maj3, 3, 0, Fraction(1, 5))
    mc = majority.influence(maj3, 3, 0, Fraction(1, 5), mode="monte_carlo",
                            trials=20000, rng=trial_rng(9, 0))
    assert abs(mc - float(exact)) < 0.02


def test_russo_three_bit_closed_form():
    maj3 = lambda x: 1 if sum(x) > 0 else -1
    d = Fraction(1, 10)
    total = sum(majority.influence(maj3, 3, i, d) for i in range(3))
    q = Fraction(1, 2) + d
    assert total == 6 * q * (1 - q)
    assert majority.russo_residual(maj3, 3, d) <= Fraction(1, 10 ** 6)


def test_success_probability_majority():
    maj3 = lambda x: 1 if sum(x) > 0 else -1
    d = Fraction(1, 4)
    p = Fraction(1, 2) + d
    assert majority.success_probability(maj3, 3, d) == p ** 3 + 3 * p ** 2 * (1 - p)
