from fractions import Fraction

import numpy as np

from opdyn import cascade
from opdyn.signals import GaussianLLR, bernoulli_delta

MODEL = bernoulli_delta(Fraction(1, 6))  # P(signal = S) = 2/3


def test_first_agent_follows_signal():
    # at an even public ratio the signal decides
    assert cascade.agent_decision(Fraction(1), cascade.private_ratio(MODEL, 1)) == 1
    assert cascade.agent_decision(Fraction(1), cascade.private_ratio(MODEL, 0)) == 0


def test_observer_update_is_bayes():
    lx = cascade.observer_update(MODEL, Fraction(1), 1)
    # agent followed its signal, so the action carries one signal's ratio
    assert lx == Fraction(1, 2)
    assert cascade.observer_update(MODEL, Fraction(1), 0) == Fraction(2)


def test_cascade_states():
    assert cascade.in_cascade(MODEL, Fraction(1, 2))   # both signals say 1
    assert cascade.in_cascade(MODEL, Fraction(4))      # both say 0
    assert not cascade.in_cascade(MODEL, Fraction(1))
    assert not cascade.in_cascade(MODEL, Fraction(2))


def test_exact_series_oracle():
    out = cascade.run_exact(MODEL, 6)
    assert out.p_correct[0] == Fraction(2, 3)
    assert out.p_cascaded_by[0] == 0
    assert out.p_cascaded_by[1] == Fraction(1, 2)
    # accuracy never falls below the single-signal baseline
    assert all(p >= Fraction(2, 3) for p in out.p_correct)
    assert out.limit_wrong > 0


def test_sampled_matches_exact():
    exact = cascade.run_exact(MODEL, 8)
    correct, cascaded = cascade.run_sampled(MODEL, 8, trials=4000, seed=123)
    assert abs(correct[-1] - float(exact.p_correct[-1])) < 0.03
    assert abs(cascaded[-1] - float(exact.p_cascaded_by[-1])) < 0.03


def test_observer_copies_last_action():
    assert cascade.observer_action(Fraction(1, 2)) == 1
    assert cascade.observer_action(Fraction(1)) == 1     # indifference goes to 1
    assert cascade.observer_action(Fraction(4)) == 0
    # run_exact asserts the copy claim internally on every transition
    cascade.run_exact(MODEL, 10)


def test_gaussian_keeps_learning():
    p = cascade.gaussian_run(GaussianLLR(1.0), 40, trials=20000, seed=5)
    assert p[-1] > p[0] + 0.05
    assert p[-1] > 0.85
