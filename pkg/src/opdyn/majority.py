"""Deterministic majority dynamics on +-1 spins.

Each round every agent adopts the sign of the sum of its closed neighborhood
(which includes itself; closed neighborhoods must have odd size so the sum is
never zero). On a finite undirected graph the trajectory enters a cycle of
period at most two within |E| rounds; the integer Lyapunov functional
L_t = sum_{(i,j) in E} (A^i_{t+1} - A^j_t)^2 certifies this step by step.

Also here: retention-of-information experiments (exact MAP over limit-action
profiles) and the influence / Russo machinery for monotone boolean functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .network import Network

EXACT_RETENTION_MAX_N = 16
EXACT_INFLUENCE_MAX_N = 14


def _check_odd_neighborhoods(net: Network):
    if net.directed:
        raise ValueError("majority dynamics runs on undirected networks")
    for i in range(net.n):
        if len(net.out_neighbors(i)) % 2 == 0:
            raise ValueError(
                f"closed neighborhood of {i} has even size; ties are rejected, not resolved"
            )


def _neighbor_matrix(net: Network):
    """0/1 matrix M with M[i, j] = 1 iff j in N(i); weights are ignored."""
    M = np.zeros((net.n, net.n), dtype=np.int64)
    for i in range(net.n):
        for j in net.out_neighbors(i):
            M[i, j] = 1
    return M


def step(net: Network, config) -> tuple:
    """A^i_{t+1} = sgn sum_{j in N(i)} A^j_t."""
    _check_odd_neighborhoods(net)
    M = _neighbor_matrix(net)
    a = np.asarray(config, dtype=np.int64)
    if a.shape != (net.n,) or not np.all(np.abs(a) == 1):
        raise ValueError("config must be a +-1 vector of length n")
    s = M @ a
    if np.any(s == 0):
        raise ArithmeticError("neighborhood sum hit zero despite odd-size check")
    return tuple(np.sign(s).astype(int))


def step_many(net: Network, configs: np.ndarray) -> np.ndarray:
    """Vectorized step over a batch of configs (rows)."""
    _check_odd_neighborhoods(net)
    M = _neighbor_matrix(net)
    s = configs @ M.T
    if np.any(s == 0):
        raise ArithmeticError("neighborhood sum hit zero despite odd-size check")
    return np.sign(s).astype(np.int64)


@dataclass(frozen=True)
class LimitCycle:
    config_even: tuple
    config_odd: tuple
    entry_time: int
    period: int


def run_to_cycle(net: Network, config) -> LimitCycle:
    """Iterate until the state repeats two rounds back; always within |E| rounds."""
    edge_count = len(net.undirected_edge_list())
    prev = None
    cur = tuple(int(x) for x in config)
    traj = [cur]
    for t in range(edge_count + 2):
        nxt = step(net, cur)
        traj.append(nxt)
        if prev is not None and nxt == prev:
            entry = t - 1
            even, odd = (traj[entry], traj[entry + 1]) if entry % 2 == 0 else (traj[entry + 1], traj[entry])
            return LimitCycle(config_even=even, config_odd=odd,
                              entry_time=entry, period=1 if nxt == cur else 2)
        prev, cur = cur, nxt
    raise AssertionError("no period-two cycle within |E| rounds; majority invariant broken")


def limit_actions(net: Network, config) -> tuple:
    """A^i_infinity = lim A^i_{2t}: the even-phase configuration of the cycle."""
    return run_to_cycle(net, config).config_even


def lyapunov(net: Network, config_t, config_tplus1) -> int:
    """L_t = 1/2 sum over ordered neighbor pairs of (A^i_{t+1} - A^j_t)^2.

    The symmetric-directed edge set counts each undirected edge in both
    orientations and each self-loop once; halving keeps the value an integer
    (every square is 0 or 4, paired across orientations) and makes the exact
    decrement identity L_t - L_{t-1} = -J_t come out with J as defined below.
    """
    total = 0
    for i in range(net.n):
        for j in net.out_neighbors(i):
            total += (config_tplus1[i] - config_t[j]) ** 2
    if total % 2:
        raise AssertionError("ordered-pair Lyapunov sum should be even")
    return total // 2


def j_functional(net: Network, prev, cur, nxt) -> int:
    """J_t = sum_i (A^i_{t+1} - A^i_{t-1}) * sum_{j in N(i)} A^j_t."""
    M = _neighbor_matrix(net)
    s = M @ np.asarray(cur, dtype=np.int64)
    return int(sum((nxt[i] - prev[i]) * s[i] for i in range(net.n)))


# -- retention of information ------------------------------------------------

def _signal_weight_tables(n, delta):
    """Per-count exact probabilities: weight of a +-1 vector with k matches of S."""
    delta = Fraction(delta)
    p = Fraction(1, 2) + delta
    q = Fraction(1, 2) - delta
    return [p ** k * q ** (n - k) for k in range(n + 1)]


def all_spin_configs(n) -> np.ndarray:
    out = np.array(list(product((-1, 1), repeat=n)), dtype=np.int64)
    return out


def limit_profiles(net: Network, configs: np.ndarray) -> np.ndarray:
    """Even-phase limit configuration per row, vectorized.

    Runs 2 * (|E| + 1) rounds so every trajectory is inside its cycle, then
    one more pair of rounds to land on the even phase of the original clock.
    """
    edge_count = len(net.undirected_edge_list())
    t_stop = 2 * (edge_count + 1)
    cur = configs.copy()
    for _ in range(t_stop):
        cur = step_many(net, cur)
    return cur


def retention_error(net: Network, delta, mode="exact", trials=10000, rng=None):
    """iota(G, delta) = P(MAP estimate of S from the limit actions != S).

    Exact mode enumerates all 2^n +-1 signal vectors (n <= 16), pushes each
    through the dynamics, pools the exact joint weights of (limit profile, S)
    and sums the losing mass. Monte Carlo mode lower-bounds performance with
    the majority-of-limit-actions estimator (odd n) and returns its error rate.
    """
    n = net.n
    if mode == "exact":
        if n > EXACT_RETENTION_MAX_N:
            raise ValueError(f"exact retention capped at n={EXACT_RETENTION_MAX_N}")
        wt = _signal_weight_tables(n, delta)
        configs = all_spin_configs(n)
        limits = limit_profiles(net, configs)
        half = Fraction(1, 2)
        joint = {}
        plus = (configs == 1).sum(axis=1)
        for row in range(configs.shape[0]):
            prof = tuple(int(x) for x in limits[row])
            k_plus = int(plus[row])
            w1 = half * wt[k_plus]           # S = +1: matches = #(+1 signals)
            w0 = half * wt[n - k_plus]       # S = -1
            acc = joint.setdefault(prof, [Fraction(0), Fraction(0)])
            acc[0] += w0
            acc[1] += w1
        return sum(min(w0, w1) for (w0, w1) in joint.values())
    if mode == "monte_carlo":
        if rng is None:
            raise ValueError("monte_carlo mode needs an rng")
        if n % 2 == 0:
            raise ValueError("majority-vote surrogate needs odd n")
        d = float(delta)
        ss = rng.integers(0, 2, size=trials) * 2 - 1
        flips = (rng.random((trials, n)) < (0.5 + d)) * 2 - 1
        configs = (flips * ss[:, None]).astype(np.int64)
        limits = limit_profiles(net, configs)
        guesses = np.sign(limits.sum(axis=1))
        return float(np.mean(guesses != ss))
    raise ValueError(f"unknown mode {mode!r}")


def _symmetric_tiebreak(prof):
    """Deterministic odd tie-break: profile-sum sign, then first coordinate."""
    s = sum(prof)
    if s:
        return 1 if s > 0 else -1
    return prof[0]


def map_rule(net: Network, delta):
    """The exact MAP guess per limit-action profile (exact mode internals).

    Exact posterior ties (possible on even-size networks by symmetry) are
    broken by a sign-symmetric rule so the map stays odd; either choice has
    the same error mass.
    """
    n = net.n
    wt = _signal_weight_tables(n, delta)
    configs = all_spin_configs(n)
    limits = limit_profiles(net, configs)
    half = Fraction(1, 2)
    joint = {}
    plus = (configs == 1).sum(axis=1)
    for row in range(configs.shape[0]):
        prof = tuple(int(x) for x in limits[row])
        acc = joint.setdefault(prof, [Fraction(0), Fraction(0)])
        acc[0] += half * wt[n - int(plus[row])]
        acc[1] += half * wt[int(plus[row])]
    return {prof: (_symmetric_tiebreak(prof) if w1 == w0 else (1 if w1 > w0 else -1))
            for prof, (w0, w1) in joint.items()}


def signals_to_vote_table(net: Network) -> np.ndarray:
    """f(psi) = sgn sum_i A^i_infinity as a lookup over all 2^n signal vectors.

    Row order matches all_spin_configs(n). Odd n only.
    """
    if net.n % 2 == 0:
        raise ValueError("majority-vote map needs odd n")
    configs = all_spin_configs(net.n)
    limits = limit_profiles(net, configs)
    return np.sign(limits.sum(axis=1)).astype(np.int64)


# -- influences and Russo's formula ------------------------------------------

def _weights_for_delta(configs: np.ndarray, delta):
    """Exact P_delta weight per row: bits are +1 w.p. 1/2 + delta, independent."""
    n = configs.shape[1]
    delta = Fraction(delta)
    p = Fraction(1, 2) + delta
    q = Fraction(1, 2) - delta
    plus = (configs == 1).sum(axis=1)
    table = [p ** k * q ** (n - k) for k in range(n + 1)]
    return [table[int(k)] for k in plus]


def influence(f, n, i, delta, mode="exact", trials=100000, rng=None):
    """I_i = P_delta(f flips when bit i flips): the pivotal probability.

    f maps a +-1 tuple to +-1. Exact mode enumerates the 2^n cube (n <= 14).
    """
    if mode == "exact":
        if n > EXACT_INFLUENCE_MAX_N:
            raise ValueError(f"exact influence capped at n={EXACT_INFLUENCE_MAX_N}")
        configs = all_spin_configs(n)
        w = _weights_for_delta(configs, delta)
        total = Fraction(0)
        for row, wt in zip(configs, w):
            x = tuple(int(v) for v in row)
            y = x[:i] + (-x[i],) + x[i + 1:]
            if f(x) != f(y):
                total += wt
        return total
    if mode == "monte_carlo":
        if rng is None:
            raise ValueError("monte_carlo mode needs an rng")
        d = float(delta)
        hits = 0
        for _ in range(trials):
            x = tuple(1 if u < 0.5 + d else -1 for u in rng.random(n))
            y = x[:i] + (-x[i],) + x[i + 1:]
            hits += f(x) != f(y)
        return hits / trials
    raise ValueError(f"unknown mode {mode!r}")


def success_probability(f, n, delta):
    """Exact P_delta(f(X) = +1)."""
    configs = all_spin_configs(n)
    w = _weights_for_delta(configs, delta)
    return sum(wt for row, wt in zip(configs, w) if f(tuple(int(v) for v in row)) == 1)


def russo_residual(f, n, delta, h=Fraction(1, 10000)):
    """|central difference of P_delta(f=+1) - sum_i I_i^delta| at the given delta.

    Both sides exact rationals; the residual is the finite-difference error
    only, O(h^2) for the polynomial P_delta.
    """
    delta = Fraction(delta)
    h = Fraction(h)
    deriv = (success_probability(f, n, delta + h) - success_probability(f, n, delta - h)) / (2 * h)
    total_inf = sum(influence(f, n, i, delta) for i in range(n))
    return abs(deriv - total_inf)
