"""Exact Bayesian repeated-action dynamics over finite probability spaces.

Everything here is forward induction over an explicit weighted list of
(S, signal profile) atoms with exact rational weights. An agent's knowledge
at round t is the cell of atoms consistent with what it has seen (its own
signal plus neighbors' earlier actions); its belief is the S=1 weight share
of that cell, its action the utility-maximizing response. Beliefs and
weights stay Fractions throughout: exact indifference (belief 1/2) is
load-bearing for the discrete-action results and must not be a float
accident.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb

from .network import Network, ball
from .signals import FiniteModel, JointTable

PROFILE_SPACE_CAP = 10 ** 6


@dataclass(frozen=True)
class ProfileSpace:
    """Weighted enumeration of (S, signal profile) pairs; the oracle backbone."""

    n: int
    entries: tuple  # (s, profile, weight)

    @property
    def m(self):
        """Number of distinct signal profiles (the M in the round bound)."""
        return len({prof for (_s, prof, _w) in self.entries})

    def full_posterior(self, profile):
        """P(S=1 | the whole signal profile), exact."""
        w1 = sum(w for (s, p, w) in self.entries if p == profile and s == 1)
        w0 = sum(w for (s, p, w) in self.entries if p == profile and s == 0)
        return w1 / (w0 + w1)


def build_profile_space(model, n, joint_table=None) -> ProfileSpace:
    """Enumerate the measure 1/2 d0 x mu0^n + 1/2 d1 x mu1^n (or a joint table)."""
    if joint_table is not None:
        if joint_table.n != n:
            raise ValueError("joint table size mismatch")
        return ProfileSpace(n=n, entries=joint_table.entries)
    if isinstance(model, JointTable):
        return build_profile_space(None, n, joint_table=model)
    if not isinstance(model, FiniteModel):
        raise TypeError("profile spaces need a finite signal model")
    if len(model.alphabet) ** n > PROFILE_SPACE_CAP:
        raise ValueError("profile space too large to enumerate")
    half = Fraction(1, 2)
    entries = []
    for s in (0, 1):
        mu = model.mu1 if s == 1 else model.mu0
        for prof in product(range(len(model.alphabet)), repeat=n):
            w = half
            for k in prof:
                w *= mu[k]
            entries.append((s, tuple(model.alphabet[k] for k in prof), w))
    total = sum(w for (_s, _p, w) in entries)
    if total != 1:
        raise AssertionError("profile weights must sum to 1")
    return ProfileSpace(n=n, entries=tuple(entries))


@dataclass
class BayesResult:
    space: ProfileSpace
    net: Network
    utility: str
    tie_rule: str
    beliefs: list          # beliefs[t][i][e] (Fraction)
    actions: list          # actions[t][i][e]
    partitions: list       # partitions[t][i][e] = cell id of entry e for agent i at round t
    rounds: int
    stabilized: bool

    def limit_actions(self, e):
        return tuple(self.actions[-1][i][e] for i in range(self.net.n))

    def limit_beliefs(self, e):
        return tuple(self.beliefs[-1][i][e] for i in range(self.net.n))

    def change_counts(self):
        """per entry, per agent: number of rounds t with A_{t+1} != A_t."""
        n = self.net.n
        E = len(self.space.entries)
        out = [[0] * n for _ in range(E)]
        for t in range(1, self.rounds):
            for i in range(n):
                for e in range(E):
                    if self.actions[t][i][e] != self.actions[t - 1][i][e]:
                        out[e][i] += 1
        return out

    def fixation_rounds(self):
        """per entry: first round from which no agent's action ever changes."""
        n = self.net.n
        E = len(self.space.entries)
        out = []
        for e in range(E):
            fix = 0
            for t in range(1, self.rounds):
                if any(self.actions[t][i][e] != self.actions[t - 1][i][e] for i in range(n)):
                    fix = t
            out.append(fix)
        return out


def _cells_from_keys(keys):
    """Map history keys to small ids; entries sharing a key share a cell."""
    ids = {}
    out = []
    for k in keys:
        if k not in ids:
            ids[k] = len(ids)
        out.append(ids[k])
    return out


def run_exact(net: Network, space: ProfileSpace, horizon: int,
              utility="continuous", tie_rule="choose_one") -> BayesResult:
    """Forward induction: per round, per agent, per atom, exact beliefs/actions.

    utility 'continuous' plays the belief itself; 'discrete' plays its
    rounding, with ties broken by tie_rule: 'choose_one' picks action 1 (the
    sequential-model convention), 'own_signal' defers to the agent's signal
    (signals must then be 0/1-valued). Stops early once every agent's
    knowledge partition stops refining, after which all rounds repeat.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    if utility not in ("continuous", "discrete"):
        raise ValueError(f"unknown utility {utility!r}")
    if tie_rule not in ("choose_one", "own_signal"):
        raise ValueError(f"unknown tie rule {tie_rule!r}")
    n = net.n
    entries = space.entries
    E = len(entries)
    weights = [w for (_s, _p, w) in entries]
    states = [s for (s, _p, _w) in entries]
    nbrs = [sorted(net.out_neighbors(i)) for i in range(n)]

    keys = [[(entries[e][1][i],) for e in range(E)] for i in range(n)]
    half = Fraction(1, 2)
    beliefs, actions, partitions = [], [], []
    stabilized = False
    for t in range(horizon):
        part_t = [_cells_from_keys(keys[i]) for i in range(n)]
        bel_t, act_t = [], []
        for i in range(n):
            cell_w = {}
            cell_w1 = {}
            for e in range(E):
                c = part_t[i][e]
                cell_w[c] = cell_w.get(c, Fraction(0)) + weights[e]
                if states[e] == 1:
                    cell_w1[c] = cell_w1.get(c, Fraction(0)) + weights[e]
            bel_i = []
            act_i = []
            for e in range(E):
                c = part_t[i][e]
                b = cell_w1.get(c, Fraction(0)) / cell_w[c]
                bel_i.append(b)
                if utility == "continuous":
                    act_i.append(b)
                elif b > half:
                    act_i.append(1)
                elif b < half:
                    act_i.append(0)
                elif tie_rule == "choose_one":
                    act_i.append(1)
                else:
                    sig = entries[e][1][i]
                    if sig not in (0, 1):
                        raise ValueError("own_signal tie rule needs 0/1 signals")
                    act_i.append(sig)
            bel_t.append(bel_i)
            act_t.append(act_i)
        beliefs.append(bel_t)
        actions.append(act_t)
        partitions.append(part_t)
        # observe: append this round's neighbor actions to every agent's history
        for i in range(n):
            for e in range(E):
                keys[i][e] = keys[i][e] + tuple(act_t[j][e] for j in nbrs[i])
        if t >= 1 and all(partitions[-1][i] == partitions[-2][i] for i in range(n)):
            # partitions can no longer refine; every later round repeats this one
            stabilized = True
            break
    return BayesResult(space=space, net=net, utility=utility, tie_rule=tie_rule,
                       beliefs=beliefs, actions=actions, partitions=partitions,
                       rounds=len(actions), stabilized=stabilized)


# -- checks over a result ----------------------------------------------------

def fixation_stats(res: BayesResult):
    """Fixation round and per-agent change counts, with the M*n certificate.

    Requires the run to have stabilized (else the horizon cannot certify).
    Returns dict with 'fixation' (per entry), 'changes' (per entry x agent),
    'bound_ok' for fixation <= M*n and changes <= M everywhere.
    """
    if not res.stabilized:
        raise ValueError("run did not stabilize; raise the horizon to certify fixation")
    m = res.space.m
    n = res.net.n
    fix = res.fixation_rounds()
    changes = res.change_counts()
    bound_ok = (all(f <= m * n for f in fix)
                and all(c <= m for row in changes for c in row))
    return {"fixation": fix, "changes": changes, "m": m, "bound": m * n, "bound_ok": bound_ok}


def expected_utility(res: BayesResult, agent, t=None):
    """Exact E[u(S, A^i_t)] over the whole space (default: limit round)."""
    t = res.rounds - 1 if t is None else t
    total = Fraction(0)
    for e, (s, _p, w) in enumerate(res.space.entries):
        a = res.actions[t][agent][e]
        if res.utility == "discrete":
            total += w * (1 if a == s else 0)
        else:
            total += w * (1 - (a - s) ** 2)
    return total


def agreement_check(res: BayesResult):
    """Continuous: limit beliefs equal across agents on every atom.
    Discrete: limit expected utilities equal across agents (exact).
    Returns dict with 'agree' and the offending atoms/values if any.
    """
    n = res.net.n
    if res.utility == "continuous":
        bad = []
        for e in range(len(res.space.entries)):
            lb = res.limit_beliefs(e)
            if any(b != lb[0] for b in lb):
                bad.append((e, lb))
        return {"agree": not bad, "disagreements": bad}
    utils = [expected_utility(res, i) for i in range(n)]
    return {"agree": all(u == utils[0] for u in utils), "utilities": utils}


def full_information_check(res: BayesResult):
    """Common limit belief == P(S=1 | all signals), atom by atom, exact.

    Fails by design for non-product spaces (the XOR pair): agreement at 1/2
    does not recover the pooled posterior there.
    """
    bad = []
    for e, (_s, prof, _w) in enumerate(res.space.entries):
        lb = res.limit_beliefs(e)
        pooled = res.space.full_posterior(prof)
        if any(b != pooled for b in lb):
            bad.append((e, lb, pooled))
    return {"full_learning": not bad, "failures": bad}


def martingale_residuals(res: BayesResult):
    """Exact tower check: within each cell at round t, the weight-average of
    the round-(t+1) beliefs equals the round-t belief. Returns the list of
    nonzero residuals (should be empty)."""
    bad = []
    E = len(res.space.entries)
    weights = [w for (_s, _p, w) in res.space.entries]
    for t in range(res.rounds - 1):
        for i in range(res.net.n):
            cells = {}
            for e in range(E):
                cells.setdefault(res.partitions[t][i][e], []).append(e)
            for c, es in cells.items():
                tot = sum(weights[e] for e in es)
                avg_next = sum(weights[e] * res.beliefs[t + 1][i][e] for e in es) / tot
                cur = res.beliefs[t][i][es[0]]
                if avg_next != cur:
                    bad.append((t, i, c, cur, avg_next))
    return bad


def refinement_violations(res: BayesResult):
    """Partition at t+1 must refine partition at t, per agent."""
    bad = []
    for t in range(res.rounds - 1):
        for i in range(res.net.n):
            mapping = {}
            for e in range(len(res.space.entries)):
                fine = res.partitions[t + 1][i][e]
                coarse = res.partitions[t][i][e]
                if fine in mapping and mapping[fine] != coarse:
                    bad.append((t, i, fine))
                mapping[fine] = coarse
    return bad


def locality_check(net: Network, space: ProfileSpace, t: int,
                   utility="discrete", tie_rule="choose_one"):
    """Round-t actions depend on signals only through the radius-t ball.

    Groups atoms by the profile restricted to ball(net, i, t) and verifies
    agent i's round-t action is constant on each group, for every i.
    """
    res = run_exact(net, space, horizon=t + 1, utility=utility, tie_rule=tie_rule)
    tt = min(t, res.rounds - 1)
    bad = []
    for i in range(net.n):
        _sub, verts = ball(net, i, t)
        groups = {}
        for e, (_s, prof, _w) in enumerate(space.entries):
            key = tuple(prof[v] for v in verts)
            groups.setdefault(key, set()).add(res.actions[tt][i][e])
        for key, acts in groups.items():
            if len(acts) > 1:
                bad.append((i, key, acts))
    return {"local": not bad, "violations": bad}


# -- named scenarios ---------------------------------------------------------

def _binomial_mass(k, j, p):
    """P(j of k independent bits equal S), exact."""
    return comb(k, j) * p ** j * (1 - p) ** (k - j)


def senate_scenario(n, senate_size, delta):
    """First `senate_size` agents pool their signals into a majority verdict;
    everyone then knows only (own signal, verdict).

    Verifies that every agent's best reply equals the verdict, and returns
    the exact verdict error P(A_S != S), which is the k-signal majority
    error and carries no n dependence. Exact rational arithmetic via
    binomial sums; n only bounds the agent count checked.
    """
    k = senate_size
    if k % 2 == 0:
        raise ValueError("senate size must be odd (no verdict ties)")
    if not n > k:
        raise ValueError("need more agents than senators")
    delta = Fraction(delta)
    p = Fraction(1, 2) + delta
    q = 1 - p
    half = Fraction(1, 2)

    # verdict error: majority of k bits each matching S w.p. p
    err = sum(_binomial_mass(k, j, p) for j in range(0, (k + 1) // 2))
    # P(verdict matches S on j matches): verdict = S iff > k/2 matches
    # joint law of (own signal, verdict) given S, for a NON-senator:
    #   independent: P(psi = S) = p; P(A_S = S) = 1 - err
    p_as_correct = 1 - err

    agree = True
    details = {}
    need = (k + 1) // 2
    # only the agreement bit m = 1{psi_i = A_S} is observable; the agent
    # follows the verdict iff P(obs | S = verdict) >= P(obs | S != verdict)
    for m in (0, 1):
        # non-senator: psi_i independent of the verdict given S
        w_follow = (p if m else q) * p_as_correct
        w_deviate = (q if m else p) * err
        if w_follow < w_deviate:
            agree = False
        details[("non-senator", m)] = (w_follow, w_deviate)

    def _majority_matches(own_match):
        """P(verdict = S | own bit matches S or not), over the other k-1 bits."""
        return sum(_binomial_mass(k - 1, j, p)
                   for j in range(k) if j + own_match >= need)

    for m in (0, 1):
        # senator: the verdict includes the senator's own bit
        w_follow = (p if m else q) * _majority_matches(1 if m else 0)
        w_deviate = (q if m else p) * (1 - _majority_matches(0 if m else 1))
        if w_follow < w_deviate:
            agree = False
        details[("senator", m)] = (w_follow, w_deviate)
    return {"verdict_error": err, "all_follow_verdict": agree,
            "n": n, "k": k, "details": details}


def chain_tie_to_self(n, delta, horizon=None):
    """The non-learning chain: binary signals, tie-breaking to the own signal.

    Runs the exact engine on the undirected chain and checks, atom by atom,
    that every agent with an equal-signal neighbor repeats its own signal in
    every round, and computes the exact probability that some agent fixes on
    the wrong action, plus the adjacent-wrong-pair lower bound.
    """
    from .network import generate
    from .signals import bernoulli_delta
    net = generate("chain", n)
    model = bernoulli_delta(delta)
    space = build_profile_space(model, n)
    m = space.m
    horizon = horizon or (m * n + 1)
    res = run_exact(net, space, horizon=horizon, utility="discrete", tie_rule="own_signal")
    if not res.stabilized:
        raise RuntimeError("chain run did not stabilize within the horizon")

    claim_ok = True
    p_some_wrong = Fraction(0)
    p_adjacent_wrong = Fraction(0)
    for e, (s, prof, w) in enumerate(space.entries):
        lim = res.limit_actions(e)
        for i in range(n):
            has_equal_neighbor = any(
                prof[j] == prof[i] for j in (i - 1, i + 1) if 0 <= j < n
            )
            if has_equal_neighbor:
                if any(res.actions[t][i][e] != prof[i] for t in range(res.rounds)):
                    claim_ok = False
        if any(a != s for a in lim):
            p_some_wrong += w
        if any(prof[i] != s and prof[i + 1] != s for i in range(n - 1)):
            p_adjacent_wrong += w
    return {"claim_ok": claim_ok, "p_some_wrong": p_some_wrong,
            "p_adjacent_wrong": p_adjacent_wrong, "rounds": res.rounds}
