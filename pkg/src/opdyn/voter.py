"""The randomized voter model and its strong/weak two-bit variant.

Base model: synchronous rounds; each agent independently adopts the previous
action of a neighbor chosen with its row weights. Unanimity states are the
only absorbing states on a connected stochastic network, and the chance of
absorbing at all-ones given the signals equals sum_i alpha_i * psi_i.

Variant: asynchronous edge updates with (opinion, strength) pairs; strong
opinions beat weak ones, equal-strength disagreements demote or randomize,
and the pair swaps position with probability 1/2. The consensus opinion is
the strict signal majority whenever one exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .network import Network, stationary_distribution, validate

EXACT_SOLVE_MAX_N = 12


@dataclass(frozen=True)
class VoterState:
    actions: tuple
    t: int = 0


def step(net: Network, state: VoterState, rng) -> VoterState:
    """Synchronous round: every agent redraws from its neighborhood."""
    acts = state.actions
    nxt = []
    for i in range(net.n):
        nb = net.out_neighbors(i)
        js = list(nb)
        ws = np.array([float(nb[j]) for j in js])
        pick = js[int(rng.choice(len(js), p=ws / ws.sum()))]
        nxt.append(acts[pick])
    return VoterState(actions=tuple(nxt), t=state.t + 1)


def _step_vectorized(cum, choice_idx, acts, rng):
    u = rng.random(len(choice_idx))
    picks = []
    for i, (c, js) in enumerate(zip(cum, choice_idx)):
        picks.append(js[int(np.searchsorted(c, u[i], side="right"))])
    return tuple(acts[p] for p in picks)


def run_to_consensus(net: Network, signals, rng, step_cap=None):
    """Play rounds until unanimity; returns (value, T) or raises on timeout.

    Default cap is 100 * 2 d n^2, a hundredfold of the expected-absorption
    bound for uniform undirected weighting.
    """
    n = net.n
    if step_cap is None:
        d = max(len(net.out_neighbors(i)) for i in range(n))
        step_cap = 100 * 2 * d * n * n
    # precompute cumulative rows for speed
    cum = []
    choice_idx = []
    for i in range(n):
        nb = net.out_neighbors(i)
        js = list(nb)
        ws = np.array([float(nb[j]) for j in js], dtype=float)
        cum.append(np.cumsum(ws / ws.sum()))
        choice_idx.append(js)
    acts = tuple(signals)
    for t in range(step_cap + 1):
        if all(a == acts[0] for a in acts):
            return acts[0], t
        acts = _step_vectorized(cum, choice_idx, acts, rng)
    raise TimeoutError(f"no consensus within {step_cap} rounds")


def mc_consensus(net: Network, delta, trials, seed, step_cap=None):
    """Trial-vectorized Monte Carlo of the base model under Bernoulli signals.

    Draws S uniform and psi_i = S with probability 1/2 + delta per trial,
    runs synchronous rounds until unanimity, and returns a dict with the
    count of trials whose consensus matched S and the absorption times.
    """
    n = net.n
    if step_cap is None:
        d = max(len(net.out_neighbors(i)) for i in range(n))
        step_cap = 100 * 2 * d * n * n
    cum = []
    choice_idx = []
    for i in range(n):
        nb = net.out_neighbors(i)
        js = np.array(sorted(nb), dtype=np.int64)
        ws = np.array([float(nb[j]) for j in js], dtype=float)
        cum.append(np.cumsum(ws / ws.sum()))
        choice_idx.append(js)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    s = rng.integers(0, 2, size=trials).astype(np.int8)
    match = rng.random((trials, n)) < 0.5 + float(delta)
    state = np.where(match, s[:, None], 1 - s[:, None]).astype(np.int8)

    active = np.arange(trials)
    times = np.zeros(trials, dtype=np.int64)
    value = np.zeros(trials, dtype=np.int8)
    for t in range(step_cap + 1):
        done = (state == state[:, :1]).all(axis=1)
        if done.any():
            idx = active[done]
            value[idx] = state[done, 0]
            times[idx] = t
            active = active[~done]
            state = state[~done]
        if len(active) == 0:
            break
        m = len(active)
        u = rng.random((m, n))
        nxt = np.empty_like(state)
        for i in range(n):
            picks = choice_idx[i][np.searchsorted(cum[i], u[:, i], side="right")]
            nxt[:, i] = state[np.arange(m), picks]
        state = nxt
    else:
        raise TimeoutError(f"{len(active)} trials unabsorbed after {step_cap} rounds")
    return {"matches": int((value == s).sum()), "trials": trials,
            "times": times, "s": s, "value": value}


# -- exact absorption analysis ----------------------------------------------

def _state_bits(s, n):
    return tuple((s >> i) & 1 for i in range(n))


def _adopt_probs(net: Network, acts):
    """q_i = P(agent i's next action is 1 | current actions), exact."""
    qs = []
    for i in range(net.n):
        q = Fraction(0)
        for j, w in net.out_neighbors(i).items():
            if acts[j] == 1:
                q += Fraction(w)
        qs.append(q)
    return qs


def _expected_over_next(qs, table):
    """E[table(next state)] given per-agent adoption probabilities, exact.

    table is a dict state_int -> Fraction over all 2^n states; contracts one
    agent at a time, so the cost is O(2^n) Fraction ops rather than 4^n.
    """
    n = len(qs)
    cur = [table[s] for s in range(1 << n)]
    for i in range(n - 1, -1, -1):
        bit = 1 << i
        cur = [(1 - qs[i]) * cur[s] + qs[i] * cur[s | bit] for s in range(bit)]
    return cur[0]


def absorption_probabilities(net: Network, verify_tol=10 ** -9):
    """P(absorb at all-ones | start state) for every state, exact rationals.

    Solves the 2^n-state first-step system numerically, reconstructs small
    rationals, then certifies the candidate exactly: for every transient
    state s, E[h(next) | s] (computed by exact contraction of the one-step
    product measure) must equal h(s), with h = 0 and 1 at the two absorbing
    states. Since absorption is almost sure, the system has a unique
    solution, so the certificate is a proof. Raises if certification fails.
    """
    n = net.n
    if n > EXACT_SOLVE_MAX_N:
        raise ValueError(f"exact absorption solve capped at n={EXACT_SOLVE_MAX_N}")
    rep = validate(net, require_stochastic=True)
    if not rep.ok:
        raise ValueError(f"network fails stochastic validation: {rep}")
    ns = 1 << n
    all_ones = ns - 1
    qs_per_state = [_adopt_probs(net, _state_bits(s, n)) for s in range(ns)]

    # float solve of (I - Q) h = r over transient states
    transient = [s for s in range(ns) if s not in (0, all_ones)]
    idx = {s: k for k, s in enumerate(transient)}
    m = len(transient)
    A = np.eye(m)
    b = np.zeros(m)
    transient_cols = np.array(transient)
    for s in transient:
        qf = np.array([float(q) for q in qs_per_state[s]])
        # row of transition probabilities: build by appending one agent at a time
        row = np.ones(1)
        for i in range(n):
            row = np.concatenate([row * (1.0 - qf[i]), row * qf[i]])
        b[idx[s]] += row[all_ones]
        A[idx[s], :] -= row[transient_cols]
    hf = np.linalg.solve(A, b)

    # rational reconstruction + exact certificate; denominators <= 1e6 are
    # uniquely determined by a float within ~1e-12 of the truth
    h = {0: Fraction(0), all_ones: Fraction(1)}
    for s in transient:
        h[s] = Fraction(float(hf[idx[s]])).limit_denominator(10 ** 6)
    for s in transient:
        expected = _expected_over_next(qs_per_state[s], h)
        if expected != h[s]:
            raise ArithmeticError(
                f"rational certification failed at state {s}: drift {float(expected - h[s])}"
            )
    return h


def exact_consensus_probability(net: Network, signals):
    """Exact rational P(consensus = 1 | signals) from the absorption solve."""
    h = absorption_probabilities(net)
    s = sum((1 << i) for i, a in enumerate(signals) if a == 1)
    return h[s]


def one_step_distribution(net: Network, acts):
    """Exact distribution over next states from the given actions."""
    qs = _adopt_probs(net, acts)
    n = net.n
    out = {}
    for s2 in range(1 << n):
        p = Fraction(1)
        for i in range(n):
            p *= qs[i] if (s2 >> i) & 1 else 1 - qs[i]
        if p != 0:
            out[_state_bits(s2, n)] = p
    return out


def martingale_residual(net: Network, acts):
    """E[X_{t+1} | state] - X_t for X = sum_i |N(i)| A_i, exact closed form.

    Requires uniform weighting w(i, j) = 1/|N(i)| on an undirected network;
    the residual is then identically zero.
    """
    if net.directed:
        raise ValueError("martingale requires an undirected network")
    degs = []
    for i in range(net.n):
        nb = net.out_neighbors(i)
        d = len(nb)
        if any(w != Fraction(1, d) for w in nb.values()):
            raise ValueError("martingale requires uniform weighting 1/|N(i)|")
        degs.append(d)
    x_now = sum(d * a for d, a in zip(degs, (Fraction(a) for a in acts)))
    x_next = Fraction(0)
    for i in range(net.n):
        nb = net.out_neighbors(i)
        e_i = sum(Fraction(w) * acts[j] for j, w in nb.items())
        x_next += degs[i] * e_i
    return x_next - x_now


# -- strong/weak variant -----------------------------------------------------

@dataclass(frozen=True)
class StrongVoterState:
    opinions: tuple   # in {0, 1}
    strengths: tuple  # in {0, 1}; 1 = strong
    t: int = 0


def initial_strong_state(signals) -> StrongVoterState:
    return StrongVoterState(opinions=tuple(signals), strengths=(1,) * len(signals), t=0)


def strong_voter_step(net: Network, state: StrongVoterState, rng) -> StrongVoterState:
    """One asynchronous update on a uniformly random edge.

    Strong-vs-strong disagreement: both keep opinions, both go weak.
    Strong-vs-weak: the weak side adopts the strong opinion, strengths keep.
    Weak-vs-weak disagreement: both adopt one common fair-coin opinion.
    Equal opinions: no change. Afterwards the two endpoints swap their whole
    (opinion, strength) pairs with probability 1/2.
    """
    if net.directed:
        raise ValueError("strong voter runs on undirected networks")
    pairs = [e for e in net.undirected_edge_list() if e[0] != e[1]]
    i, j = pairs[int(rng.integers(0, len(pairs)))]
    ops = list(state.opinions)
    sts = list(state.strengths)
    ai, aj = ops[i], ops[j]
    wi, wj = sts[i], sts[j]
    if ai != aj:
        if wi == 1 and wj == 1:
            wi, wj = 0, 0
        elif wi == 1 and wj == 0:
            aj = ai
        elif wj == 1 and wi == 0:
            ai = aj
        else:
            common = int(rng.integers(0, 2))
            ai = aj = common
            wi = wj = 0
    if rng.integers(0, 2) == 1:
        ai, aj = aj, ai
        wi, wj = wj, wi
    ops[i], ops[j] = ai, aj
    sts[i], sts[j] = wi, wj
    return StrongVoterState(opinions=tuple(ops), strengths=tuple(sts), t=state.t + 1)


def run_strong_voter(net: Network, signals, rng, step_cap=None):
    """Run edge updates until all opinions agree; returns (opinion, T).

    Same protocol as strong_voter_step, inlined with batched randomness so ten
    thousand trials stay cheap.
    """
    n = net.n
    if step_cap is None:
        step_cap = 2000 * n * n
    if net.directed:
        raise ValueError("strong voter runs on undirected networks")
    pairs = [e for e in net.undirected_edge_list() if e[0] != e[1]]
    ops = list(signals)
    sts = [1] * n
    ones = sum(ops)
    batch = 1024
    t = 0
    while t <= step_cap:
        edge_draws = rng.integers(0, len(pairs), size=batch)
        coin_draws = rng.integers(0, 2, size=batch)
        swap_draws = rng.integers(0, 2, size=batch)
        for k in range(batch):
            if ones == 0 or ones == n:
                return ops[0], t
            i, j = pairs[edge_draws[k]]
            ai, aj = ops[i], ops[j]
            wi, wj = sts[i], sts[j]
            if ai != aj:
                if wi and wj:
                    wi = wj = 0
                elif wi:
                    ones += ai - aj
                    aj = ai
                elif wj:
                    ones += aj - ai
                    ai = aj
                else:
                    common = int(coin_draws[k])
                    ones += 2 * common - (ai + aj)
                    ai = aj = common
                    wi = wj = 0
            if swap_draws[k]:
                ai, aj = aj, ai
                wi, wj = wj, wi
            ops[i], ops[j] = ai, aj
            sts[i], sts[j] = wi, wj
            t += 1
    if ones == 0 or ones == n:
        return ops[0], t
    raise TimeoutError(f"no opinion consensus within {step_cap} edge updates")
