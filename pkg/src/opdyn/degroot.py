"""DeGroot repeated-averaging dynamics.

Actions live in [0, 1]; each round every agent replaces its action by
the weighted average of its neighborhood. On a strongly connected
row-stochastic network with self-loops all actions converge to the common
limit sum_i alpha_i * psi_i, alpha the stationary distribution of the
weight matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .network import Network, mixing_tv, stationary_distribution, validate
from .harness_util import wilson_interval

EXACT_ENUM_MAX_N = 20


@dataclass(frozen=True)
class DeGrootState:
    actions: tuple
    t: int = 0


def step(net: Network, state: DeGrootState) -> DeGrootState:
    """One exact averaging round (Fractions stay Fractions)."""
    if len(state.actions) != net.n:
        raise ValueError("action vector dimension mismatch")
    nxt = []
    for i in range(net.n):
        nxt.append(sum(w * state.actions[j] for j, w in net.out_neighbors(i).items()))
    return DeGrootState(actions=tuple(nxt), t=state.t + 1)


def run(net: Network, initial, rounds: int) -> DeGrootState:
    st = DeGrootState(actions=tuple(initial), t=0)
    for _ in range(rounds):
        st = step(net, st)
    return st


def limit(net: Network, initial):
    """The closed-form limit sum_i alpha_i * initial_i.

    Holds for any real starting actions, not just signal vectors.
    """
    alpha = stationary_distribution(net).alpha
    return sum(a * x for a, x in zip(alpha, initial))


def rounding(x):
    """Round-to-nearest with the half point kept as the special value 1/2."""
    if x * 2 == 1:
        return Fraction(1, 2)
    return 1 if x > Fraction(1, 2) else 0


@dataclass
class LearningEstimate:
    p: object          # success probability (Fraction in exact mode)
    tie_mass: object   # probability of landing exactly on 1/2
    exact: bool
    trials: int = 0
    ci: tuple = None   # Wilson 95% interval in MC mode


def learning_probability(net: Network, delta, mode="exact_enumeration",
                         trials=10000, rng=None) -> LearningEstimate:
    """p_w(delta) = P(round(A_infinity) = S) under Bernoulli(delta) signals.

    Exact mode enumerates the 2^n signal vectors with rational weights
    (n <= 20); exact ties A_infinity = 1/2 are reported separately and count
    as neither success nor failure. Monte Carlo mode samples signal vectors
    and carries a Wilson interval.
    """
    delta = Fraction(delta)
    if not 0 < delta < Fraction(1, 2):
        raise ValueError("delta must lie in (0, 1/2)")
    alpha = stationary_distribution(net).alpha
    n = net.n
    if mode == "exact_enumeration":
        if n > EXACT_ENUM_MAX_N:
            raise ValueError(f"exact enumeration capped at n={EXACT_ENUM_MAX_N}")
        # by symmetry P(success | S=1) = P(success | S=0); condition on S=1
        half = Fraction(1, 2)
        p_hit = half + delta
        p_miss = half - delta
        succ = Fraction(0)
        tie = Fraction(0)
        for psi in product((0, 1), repeat=n):
            k = sum(psi)
            w = p_hit ** k * p_miss ** (n - k)
            a_inf = sum(a * x for a, x in zip(alpha, psi))
            r = rounding(a_inf)
            if r == 1:
                succ += w
            elif r == Fraction(1, 2):
                tie += w
        return LearningEstimate(p=succ, tie_mass=tie, exact=True)
    if mode == "monte_carlo":
        if rng is None:
            raise ValueError("monte_carlo mode needs an rng")
        af = np.array([float(a) for a in alpha])
        d = float(delta)
        wins = 0
        ties = 0
        for _ in range(trials):
            s = int(rng.integers(0, 2))
            psi = (rng.random(n) < (0.5 + d)).astype(float)
            if s == 0:
                psi = 1.0 - psi
            a_inf = float(af @ psi)
            if a_inf == 0.5:
                ties += 1
            elif (a_inf > 0.5) == (s == 1):
                wins += 1
        lo, hi = wilson_interval(wins, trials)
        return LearningEstimate(p=wins / trials, tie_mass=ties / trials,
                                exact=False, trials=trials, ci=(lo, hi))
    raise ValueError(f"unknown mode {mode!r}")


def hoeffding_success_bound(alpha, delta):
    """Tail lower bound 1 - exp(-2 delta^2 / sum_i alpha_i^2) on p_w(delta).

    Derived from Hoeffding's inequality for the weighted signal average;
    covers the tie case since A = 1/2 already deviates by delta.
    """
    s2 = float(sum(Fraction(a) * Fraction(a) for a in alpha)) if not isinstance(alpha[0], float) \
        else float(sum(a * a for a in alpha))
    return 1.0 - math.exp(-2.0 * float(delta) ** 2 / s2)


def convergence_round(net: Network, tv_threshold=1e-9, cap=100000):
    """Smallest t with max_i mixing_tv(i, t) <= threshold, by doubling search.

    Equivalent to probing mixing_tv from every start, but shares one matrix
    power (and one stationary solve) per probed t.
    """
    alpha = stationary_distribution(net).as_floats()
    P = net.weight_matrix()

    def worst(t):
        Pt = np.linalg.matrix_power(P, t)
        return 0.5 * float(np.abs(Pt - alpha[None, :]).sum(axis=1).max())

    t = 1
    while t <= cap:
        if worst(t) <= tv_threshold:
            break
        t *= 2
    else:
        raise RuntimeError("no round reached the mixing threshold within cap")
    lo, hi = t // 2, t
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if worst(mid) <= tv_threshold:
            hi = mid
        else:
            lo = mid
    return hi


# -- cheaters ----------------------------------------------------------------

def run_with_cheaters(net: Network, signals, cheaters: dict, horizon=10000, tol=1e-12):
    """Iterate averaging with some agents pinned to fixed actions.

    Returns the action vector once successive rounds differ by at most tol
    (floats) or the horizon ends. Cheater coordinates never move.
    """
    if not cheaters:
        raise ValueError("no cheaters given; use run()")
    if len(cheaters) >= net.n:
        raise ValueError("at least one honest agent required")
    for c, v in cheaters.items():
        if not 0 <= float(v) <= 1:
            raise ValueError(f"cheater value {v} outside [0, 1]")
    x = [float(cheaters.get(i, signals[i])) for i in range(net.n)]
    P = net.weight_matrix()
    x = np.array(x)
    fixed = np.array([i in cheaters for i in range(net.n)])
    vals = np.array([float(cheaters.get(i, 0.0)) for i in range(net.n)])
    for _ in range(horizon):
        nxt = P @ x
        nxt[fixed] = vals[fixed]
        if np.max(np.abs(nxt - x)) <= tol:
            x = nxt
            break
        x = nxt
    return tuple(x)


def cheater_limit_exact(net: Network, cheaters: dict):
    """Independent oracle: honest limits via absorbing-chain hitting probabilities.

    Returns a matrix h[i][c] = P(walk from i is absorbed at cheater c), so the
    limit of honest agent i is sum_c h[i][c] * value(c). Exact rational solve.
    """
    from .network import _solve_rational
    n = net.n
    cs = sorted(cheaters)
    honest = [i for i in range(n) if i not in cheaters]
    P = net.weight_matrix(exact=True)
    out = {}
    for c in cs:
        # h(c) = 1, h(other cheater) = 0, h(i) = sum_j P[i][j] h(j)
        A = []
        b = []
        for i in honest:
            row = [P[i][j] - (1 if i == j else 0) for j in honest]
            A.append(row)
            b.append(-sum(P[i][j] for j in [c]))
        sol = _solve_rational(A, b)
        for k, i in enumerate(honest):
            out.setdefault(i, {})[c] = sol[k]
    return out
