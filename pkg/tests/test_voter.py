from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opdyn import voter
from opdyn.network import generate, stationary_distribution
from opdyn.signals import trial_rng


def test_two_node_one_step_distribution():
    net = generate("chain", 2)
    dist = voter.one_step_distribution(net, (0, 1))
    assert dist == {(0, 0): Fraction(1, 4), (0, 1): Fraction(1, 4),
                    (1, 0): Fraction(1, 4), (1, 1): Fraction(1, 4)}


def test_unanimity_absorbs():
    net = generate("cycle", 4)
    dist = voter.one_step_distribution(net, (1, 1, 1, 1))
    assert dist == {(1, 1, 1, 1): Fraction(1)}


def test_absorption_equals_alpha_mass_path3():
    net = generate("chain", 3)
    h = voter.absorption_probabilities(net)
    # alpha = (2/7, 3/7, 2/7); state ints are little-endian bit vectors
    assert h[0b001] == Fraction(2, 7)
    assert h[0b010] == Fraction(3, 7)
    assert h[0b011] == Fraction(5, 7)
    assert h[0b111] == 1 and h[0] == 0


def test_exact_consensus_probability():
    net = generate("cycle", 5)
    alpha = stationary_distribution(net).alpha
    signals = (1, 0, 1, 1, 0)
    assert voter.exact_consensus_probability(net, signals) == \
        sum(a for a, s in zip(alpha, signals) if s == 1)


def test_martingale_residual_zero():
    net = generate("star", 4)
    for bits in range(16):
        acts = tuple((bits >> i) & 1 for i in range(4))
        assert voter.martingale_residual(net, acts) == 0


def test_run_to_consensus_unanimous_start():
    net = generate("cycle", 5)
    value, t = voter.run_to_consensus(net, (1,) * 5, trial_rng(0, 0))
    assert (value, t) == (1, 0)


def test_mc_consensus_matches_exact_small():
    net = generate("cycle", 5)
    delta = Fraction(1, 5)
    out = voter.mc_consensus(net, delta, trials=20000, seed=11)
    p_hat = out["matches"] / out["trials"]
    assert abs(p_hat - (0.5 + float(delta))) < 0.02
    assert out["times"].min() >= 0


def test_strong_voter_strict_majority_deterministic_outcome():
    net = generate("cycle", 5)
    signals = (1, 1, 1, 0, 0)
    for trial in range(50):
        value, _ = voter.run_strong_voter(net, signals, trial_rng(3, trial))
        assert value == 1


def test_strong_voter_step_protocol():
    net = generate("chain", 2)

    class FixedRng:
        def __init__(self, vals):
            self.vals = list(vals)

        def integers(self, lo, hi, size=None):
            return self.vals.pop(0)

    # strong-strong disagreement demotes both, no swap
    st0 = voter.initial_strong_state((0, 1))
    st1 = voter.strong_voter_step(net, st0, FixedRng([0, 0]))
    assert st1.opinions == (0, 1) and st1.strengths == (0, 0)
    # then weak-weak disagreement lands on a common coin value, no swap
    st2 = voter.strong_voter_step(net, st1, FixedRng([0, 1, 0]))
    assert st2.opinions == (1, 1) and st2.strengths == (0, 0)


def test_strong_voter_strong_beats_weak():
    net = generate("chain", 2)

    class FixedRng:
        def __init__(self, vals):
            self.vals = list(vals)

        def integers(self, lo, hi, size=None):
            return self.vals.pop(0)

    st0 = voter.StrongVoterState(opinions=(0, 1), strengths=(1, 0))
    st1 = voter.strong_voter_step(net, st0, FixedRng([0, 0]))
    assert st1.opinions == (0, 0)
    assert st1.strengths == (1, 0)


@settings(max_examples=10, deadline=None)
@given(bits=st.integers(1, 30))
def test_absorption_certificate_holds(bits):
    # the exact solver self-certifies; spot-check the one-step identity here
    net = generate("cycle", 5)
    h = voter.absorption_probabilities(net)
    acts = tuple((bits >> i) & 1 for i in range(5))
    dist = voter.one_step_distribution(net, acts)
    s = sum((1 << i) for i, a in enumerate(acts) if a)
    expected = sum(p * h[sum((1 << i) for i, a in enumerate(nxt) if a)]
                   for nxt, p in dist.items())
    assert expected == h[s]


def test_absorption_size_cap():
    with pytest.raises(ValueError):
        voter.absorption_probabilities(generate("cycle", 13))
