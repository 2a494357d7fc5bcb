"""Sequential decisions with public actions: herding and information cascades.

Agents act once, in order. Agent i sees all earlier actions and its own
private signal, and plays 1 iff the posterior likelihood ratio
L_i = Lx_i * P_i of S=0 against S=1 is <= 1 (ties go to 1), where Lx_i is
the public ratio carried by the action history and P_i the private signal's
ratio. An outside observer tracks Lx exactly; a cascade has started once
the next agent's decision no longer depends on its signal.

Finite signal models run in exact rational arithmetic, merging observer
states that share the same public ratio. Gaussian signals (unbounded
ratios) run as vectorized Monte Carlo in the log domain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import erf, exp, log, sqrt

import numpy as np

from .signals import FiniteModel, GaussianLLR, sample_world, trial_rng

ONE = Fraction(1)


def private_ratio(model: FiniteModel, k) -> Fraction:
    """P(psi = x | S=0) / P(psi = x | S=1) for alphabet index k."""
    return model.mu0[k] / model.mu1[k]


def agent_decision(public_ratio, priv_ratio):
    """Action given the public and private likelihood ratios (tie -> 1)."""
    return 1 if public_ratio * priv_ratio <= 1 else 0


def action_distribution(model: FiniteModel, public_ratio):
    """P(A=1 | S=s, public ratio), exact, for s = 0 and 1."""
    p1 = [Fraction(0), Fraction(0)]
    for k in range(len(model.alphabet)):
        if agent_decision(public_ratio, private_ratio(model, k)) == 1:
            p1[0] += model.mu0[k]
            p1[1] += model.mu1[k]
    return p1[0], p1[1]


def observer_update(model: FiniteModel, public_ratio, action):
    """Bayes update of the public ratio after seeing one action."""
    a0, a1 = action_distribution(model, public_ratio)
    if action == 1:
        if a1 == 0:
            raise ZeroDivisionError("impossible action under S=1")
        return public_ratio * a0 / a1
    if a1 == 1:
        raise ZeroDivisionError("impossible action under S=0")
    return public_ratio * (1 - a0) / (1 - a1)


def observer_action(public_ratio):
    """The outside observer's best guess of S from the public ratio alone.

    Equals the most recent agent's action: that action is a function of the
    history the observer has already seen plus a signal whose effect the
    observer integrates out, and the Bayes update moves the ratio to the
    side the action indicated (ties to 1).
    """
    return 1 if public_ratio <= 1 else 0


def in_cascade(model: FiniteModel, public_ratio):
    """True iff the next decision is the same for every signal in the support."""
    decisions = {agent_decision(public_ratio, private_ratio(model, k))
                 for k in range(len(model.alphabet))}
    return len(decisions) == 1


@dataclass
class CascadeExact:
    """Exact per-position summary of the sequential model."""

    p_correct: list        # P(A_i = S) per position, Fraction
    p_cascaded_by: list    # P(a cascade is active when agent i moves)
    p_wrong_cascade: list  # P(cascade active and its action != S) per position
    limit_wrong: Fraction  # wrong-cascade mass at the end of the sequence


def run_exact(model: FiniteModel, n) -> CascadeExact:
    """Exact forward pass, merging observer states by their public ratio.

    State: public ratio -> (weight | S=0, weight | S=1), with prior 1/2 each.
    """
    states = {ONE: (Fraction(1, 2), Fraction(1, 2))}
    p_correct, p_cascaded, p_wrong = [], [], []
    for _i in range(n):
        casc = Fraction(0)
        wrong = Fraction(0)
        correct = Fraction(0)
        nxt = {}
        for lx, (w0, w1) in states.items():
            if in_cascade(model, lx):
                casc += w0 + w1
                a = agent_decision(lx, private_ratio(model, 0))
                wrong += w0 if a == 1 else w1
            a0, a1 = action_distribution(model, lx)
            correct += w1 * a1 + w0 * (1 - a0)
            for action, m0, m1 in ((1, a0, a1), (0, 1 - a0, 1 - a1)):
                if m0 == 0 and m1 == 0:
                    continue
                if m0 == 0 or m1 == 0:
                    # one-sided action probabilities would make an action
                    # reveal S outright; impossible with a common support
                    raise AssertionError("signal support must not separate states")
                new_lx = lx * m0 / m1
                if observer_action(new_lx) != action:
                    raise AssertionError("observer must copy the last action")
                c0, c1 = nxt.get(new_lx, (Fraction(0), Fraction(0)))
                nxt[new_lx] = (c0 + w0 * m0, c1 + w1 * m1)
        p_correct.append(correct)
        p_cascaded.append(casc)
        p_wrong.append(wrong)
        states = nxt
    # terminal wrong-cascade mass
    limit_wrong = Fraction(0)
    for lx, (w0, w1) in states.items():
        if in_cascade(model, lx):
            a = agent_decision(lx, private_ratio(model, 0))
            limit_wrong += w0 if a == 1 else w1
    return CascadeExact(p_correct=p_correct, p_cascaded_by=p_cascaded,
                        p_wrong_cascade=p_wrong, limit_wrong=limit_wrong)


def run_sampled(model: FiniteModel, n, trials, seed):
    """Seeded Monte Carlo counterpart of run_exact (sanity cross-check)."""
    correct = np.zeros(n, dtype=np.int64)
    cascaded = np.zeros(n, dtype=np.int64)
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        world = sample_world(model, n, rng)
        lx = ONE
        for i in range(n):
            if in_cascade(model, lx):
                cascaded[i] += 1
            a = agent_decision(lx, private_ratio(model, model.index(world.signals[i])))
            if a == world.s:
                correct[i] += 1
            lx = observer_update(model, lx, a)
            if observer_action(lx) != a:
                raise AssertionError("observer must copy the last action")
    return correct / trials, cascaded / trials


# -- Gaussian (unbounded ratios) --------------------------------------------

def _phi(x):
    return 0.5 * (1.0 + erf(x / sqrt(2.0)))


def gaussian_run(model: GaussianLLR, n, trials, seed):
    """Vectorized sequential run with N(+-1, sigma^2) signals, log domain.

    Private log-ratio of S=0 vs S=1 for observation y is -2y/sigma^2. The
    action is a threshold rule in y, so the observer's update only needs
    Phi at the moving threshold. Returns per-position P(A_i = S) and the
    fraction of runs whose last decision ignored the signal support
    (always 0: Gaussian support is unbounded, no cascade ever starts).
    """
    sigma2 = float(model.sigma2)
    sigma = sqrt(sigma2)
    base = trial_rng(seed, 0)
    s = base.integers(0, 2, size=trials)
    mean = np.where(s == 1, 1.0, -1.0)
    log_lx = np.zeros(trials)
    p_correct = np.zeros(n)
    for i in range(n):
        y = mean * 1.0 + trial_rng(seed, 1, agent=i).normal(0.0, sigma, size=trials)
        # action 1 iff log Lx - 2y/sigma^2 <= 0, i.e. y >= sigma^2 log Lx / 2
        thresh = sigma2 * log_lx / 2.0
        act = (y >= thresh).astype(np.int64)
        p_correct[i] = np.mean(act == s)
        # observer: P(A=1 | S=s') = 1 - Phi((thresh - m(s'))/sigma)
        z1 = (thresh - 1.0) / sigma
        z0 = (thresh + 1.0) / sigma
        pa1_s1 = 1.0 - _ndtr(z1)
        pa1_s0 = 1.0 - _ndtr(z0)
        with np.errstate(divide="ignore"):
            upd1 = np.log(pa1_s0) - np.log(pa1_s1)
            upd0 = np.log1p(-pa1_s0) - np.log1p(-pa1_s1)
        log_lx = log_lx + np.where(act == 1, upd1, upd0)
    return p_correct


def _ndtr(z):
    z = np.asarray(z, dtype=float)
    return 0.5 * (1.0 + np.vectorize(erf)(z / sqrt(2.0)))
